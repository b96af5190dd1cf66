//! Dirichlet characters: enumeration, conductors, products and conjugates.
//!
//! A character mod q is stored as one exponent per cyclic component of the
//! unit group (Z/qZ)*, so values are exact roots of unity and all structural
//! predicates (primitivity, reality, conductor) are integer computations.
//!
//! The stable ordering used everywhere (CLI addressing included) enumerates
//! exponent tuples lexicographically, most significant first, over components
//! sorted by prime; index 0 is always the principal character.

use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

/// Largest modulus accepted by the enumeration API.
pub const MAX_MODULUS: u64 = 10_000;

#[derive(Debug, Error)]
pub enum CharacterError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus {0} exceeds the supported budget {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("character index {index} out of range for modulus {modulus} (phi = {phi})")]
    IndexOutOfRange { modulus: u64, index: u64, phi: u64 },
    #[error("operation requires a primitive character, got modulus {modulus} conductor {conductor}")]
    NotPrimitive { modulus: u64, conductor: u64 },
}

/// A character value: zero on non-units, otherwise an exact root of unity
/// e^{2πi num/den} with the fraction reduced and 0 <= num < den.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root { num: u32, den: u32 },
}

impl CharValue {
    pub const ONE: CharValue = CharValue::Root { num: 0, den: 1 };

    pub fn root(num: u64, den: u64) -> Self {
        debug_assert!(den > 0);
        let num = num % den;
        let g = gcd(num, den);
        CharValue::Root {
            num: (num / g) as u32,
            den: (den / g) as u32,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn conj(&self) -> Self {
        match *self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => CharValue::root((den - num) as u64 % den as u64, den as u64),
        }
    }

    pub fn mul(&self, other: &CharValue) -> Self {
        match (*self, *other) {
            (CharValue::Zero, _) | (_, CharValue::Zero) => CharValue::Zero,
            (CharValue::Root { num: a, den: p }, CharValue::Root { num: b, den: q }) => {
                let den = lcm(p as u64, q as u64);
                let num = (a as u64 * (den / p as u64) + b as u64 * (den / q as u64)) % den;
                CharValue::root(num, den)
            }
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match *self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::Root { num, den } => {
                Complex64::from_polar(1.0, std::f64::consts::TAU * num as f64 / den as f64)
            }
        }
    }

    /// True for the values ±1 (together with Zero these characterize real characters).
    pub fn is_real(&self) -> bool {
        match *self {
            CharValue::Zero => true,
            CharValue::Root { num, den } => den == 1 || (den == 2 && num == 1),
        }
    }
}

/// One cyclic component of a unit group, with its discrete-log table.
#[derive(Debug)]
struct Component {
    prime: u64,
    /// p^k, the prime-power block this component lives in.
    prime_power: u64,
    /// k, the exponent of the block.
    power: u32,
    /// A residue mod `prime_power` generating this component.
    generator: u64,
    order: u32,
    /// Maps residue mod prime_power to the exponent on this component;
    /// u32::MAX marks non-units.
    dlog: Vec<u32>,
    /// True for the order-2 sign component of 2^k, k >= 3.
    is_sign_part: bool,
}

#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    components: Vec<Component>,
    phi: u64,
}

impl UnitGroup {
    fn build(q: u64) -> Arc<UnitGroup> {
        let mut components = Vec::new();
        let mut phi = 1u64;
        for (p, k) in factorize(q) {
            let pk = p.pow(k);
            if p == 2 {
                match k {
                    1 => {}
                    2 => {
                        components.push(Component {
                            prime: 2,
                            prime_power: 4,
                            power: 2,
                            generator: 3,
                            order: 2,
                            dlog: dlog_table_cyclic(4, 3, 2),
                            is_sign_part: false,
                        });
                        phi *= 2;
                    }
                    _ => {
                        let (sign, five) = dlog_table_two_power(pk, k);
                        components.push(Component {
                            prime: 2,
                            prime_power: pk,
                            power: k,
                            generator: pk - 1,
                            order: 2,
                            dlog: sign,
                            is_sign_part: true,
                        });
                        let order = pk / 4;
                        components.push(Component {
                            prime: 2,
                            prime_power: pk,
                            power: k,
                            generator: 5,
                            order: order as u32,
                            dlog: five,
                            is_sign_part: false,
                        });
                        phi *= pk / 2;
                    }
                }
            } else {
                let g = primitive_root_prime_power(p, k);
                let order = (pk / p * (p - 1)) as u32;
                components.push(Component {
                    prime: p,
                    prime_power: pk,
                    power: k,
                    generator: g,
                    order,
                    dlog: dlog_table_cyclic(pk, g, order),
                    is_sign_part: false,
                });
                phi *= order as u64;
            }
        }
        Arc::new(UnitGroup {
            modulus: q,
            components,
            phi,
        })
    }
}

fn dlog_table_cyclic(pk: u64, g: u64, order: u32) -> Vec<u32> {
    let mut table = vec![u32::MAX; pk as usize];
    let mut x = 1u64;
    for e in 0..order {
        table[x as usize] = e;
        x = x * g % pk;
    }
    table
}

/// For 2^k (k >= 3): a = (-1)^s 5^e; returns the s-table and the e-table.
fn dlog_table_two_power(pk: u64, _k: u32) -> (Vec<u32>, Vec<u32>) {
    let mut sign = vec![u32::MAX; pk as usize];
    let mut five = vec![u32::MAX; pk as usize];
    let half_order = pk / 4;
    let mut x = 1u64;
    for e in 0..half_order {
        sign[x as usize] = 0;
        five[x as usize] = e as u32;
        let neg = pk - x;
        sign[neg as usize] = 1;
        five[neg as usize] = e as u32;
        x = x * 5 % pk;
    }
    (sign, five)
}

fn primitive_root_prime_power(p: u64, k: u32) -> u64 {
    let g = primitive_root_prime(p);
    if k == 1 {
        return g;
    }
    // g stays primitive mod p^2 (hence all p^k) unless g^{p-1} = 1 mod p^2.
    let p2 = p * p;
    if mod_pow(g, p - 1, p2) == 1 {
        g + p
    } else {
        g
    }
}

fn primitive_root_prime(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let factors = factorize(phi);
    'candidates: for g in 2..p {
        for &(f, _) in &factors {
            if mod_pow(g, phi / f, p) == 1 {
                continue 'candidates;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut bb = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % m;
        }
        bb = bb * bb % m;
        e >>= 1;
    }
    acc as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A Dirichlet character mod q, with exact arithmetic on its values.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u32>,
    conductor: u64,
    index: u64,
}

impl std::fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chi({},{})", self.modulus(), self.index)
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    fn from_exponents(group: Arc<UnitGroup>, exponents: Vec<u32>) -> Self {
        let conductor = conductor_of(&group, &exponents);
        let mut index = 0u64;
        for (c, &e) in group.components.iter().zip(&exponents) {
            index = index * c.order as u64 + e as u64;
        }
        Self {
            group,
            exponents,
            conductor,
            index,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Position in the stable lexicographic ordering; 0 is principal.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.group.modulus
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_real(&self) -> bool {
        self.group
            .components
            .iter()
            .zip(&self.exponents)
            .all(|(c, &e)| (2 * e) % c.order == 0)
    }

    /// χ(-1) = +1 (even) or -1 (odd).
    pub fn is_even(&self) -> bool {
        if self.group.modulus <= 2 {
            return true;
        }
        self.value(self.group.modulus as i64 - 1) == CharValue::ONE
    }

    pub fn value(&self, a: i64) -> CharValue {
        let q = self.group.modulus;
        let a = a.rem_euclid(q as i64) as u64;
        if q == 1 {
            return CharValue::ONE;
        }
        if gcd(a, q) != 1 {
            return CharValue::Zero;
        }
        // Accumulate Σ e_i · dlog_i(a) / order_i as an exact fraction.
        let mut num = 0u64;
        let mut den = 1u64;
        for (c, &e) in self.group.components.iter().zip(&self.exponents) {
            if e == 0 {
                continue;
            }
            let r = (a % c.prime_power) as usize;
            let l = c.dlog[r] as u64;
            let d = c.order as u64;
            let nden = lcm(den, d);
            num = num * (nden / den) + (e as u64 * l % d) * (nden / d);
            den = nden;
            num %= den;
        }
        CharValue::root(num, den)
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let exps = self
            .group
            .components
            .iter()
            .zip(&self.exponents)
            .map(|(c, &e)| if e == 0 { 0 } else { c.order - e })
            .collect();
        DirichletCharacter::from_exponents(self.group.clone(), exps)
    }

    /// "chi(q,i)" — the CLI addressing convention.
    pub fn label(&self) -> String {
        format!("chi({},{})", self.modulus(), self.index())
    }

    /// Gauss-sum root number ε(χ) = τ(χ) / (i^a √q); unit modulus for
    /// primitive characters.
    pub fn root_number(&self) -> Complex64 {
        let q = self.modulus();
        let mut tau = Complex64::new(0.0, 0.0);
        for n in 1..q.max(2) {
            let v = self.value(n as i64);
            if !v.is_zero() {
                tau += v.to_complex()
                    * Complex64::from_polar(1.0, std::f64::consts::TAU * n as f64 / q as f64);
            }
        }
        if q == 1 {
            tau = Complex64::new(1.0, 0.0);
        }
        let a = if self.is_even() { 0 } else { 1 };
        let denom = if a == 0 {
            Complex64::new((q as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (q as f64).sqrt())
        };
        tau / denom
    }
}

fn conductor_of(group: &UnitGroup, exponents: &[u32]) -> u64 {
    let mut f = 1u64;
    let mut i = 0;
    while i < group.components.len() {
        let c = &group.components[i];
        if c.is_sign_part {
            // 2^k, k >= 3: sign exponent s here, power exponent on the next slot.
            let s = exponents[i];
            let e = exponents[i + 1];
            let k = c.power;
            if e == 0 {
                if s == 1 {
                    f *= 4;
                }
            } else {
                let v = e.trailing_zeros();
                f *= 1u64 << (k - v);
            }
            i += 2;
            continue;
        }
        let e = exponents[i];
        if e != 0 {
            if c.prime == 2 {
                // mod 4 component
                f *= 4;
            } else {
                // order = p^{k-1}(p-1); p-adic valuation of e bounded by k-1.
                let mut v = 0u32;
                let mut e64 = e as u64;
                while e64 % c.prime == 0 && v < c.power - 1 {
                    e64 /= c.prime;
                    v += 1;
                }
                let j = c.power - v;
                f *= c.prime.pow(j);
            }
        }
        i += 1;
    }
    f
}

/// All φ(q) characters mod q in the stable ordering.
pub fn characters_mod(q: u64) -> Result<Vec<DirichletCharacter>, CharacterError> {
    if q == 0 {
        return Err(CharacterError::ZeroModulus);
    }
    if q > MAX_MODULUS {
        return Err(CharacterError::ModulusTooLarge(q));
    }
    let group = UnitGroup::build(q);
    let orders: Vec<u32> = group.components.iter().map(|c| c.order).collect();
    let mut out = Vec::with_capacity(group.phi as usize);
    let mut exps = vec![0u32; orders.len()];
    loop {
        out.push(DirichletCharacter::from_exponents(group.clone(), exps.clone()));
        // mixed-radix increment, last component fastest
        let mut i = orders.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// The character (q, index) in the stable ordering.
pub fn character(q: u64, index: u64) -> Result<DirichletCharacter, CharacterError> {
    if q == 0 {
        return Err(CharacterError::ZeroModulus);
    }
    if q > MAX_MODULUS {
        return Err(CharacterError::ModulusTooLarge(q));
    }
    let group = UnitGroup::build(q);
    if index >= group.phi {
        return Err(CharacterError::IndexOutOfRange {
            modulus: q,
            index,
            phi: group.phi,
        });
    }
    let mut exps = vec![0u32; group.components.len()];
    let mut rem = index;
    for i in (0..group.components.len()).rev() {
        let d = group.components[i].order as u64;
        exps[i] = (rem % d) as u32;
        rem /= d;
    }
    Ok(DirichletCharacter::from_exponents(group, exps))
}

/// The primitive character inducing χ₁ · conj(χ₂); both inputs must be
/// primitive. For coprime conductors the result has conductor f₁·f₂.
pub fn mul_conj(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
) -> Result<DirichletCharacter, CharacterError> {
    for chi in [chi1, chi2] {
        if !chi.is_primitive() {
            return Err(CharacterError::NotPrimitive {
                modulus: chi.modulus(),
                conductor: chi.conductor(),
            });
        }
    }
    let m = lcm(chi1.modulus(), chi2.modulus());
    let group = UnitGroup::build(m);
    // Read off the product character's exponent on each component by
    // evaluating at a CRT lift of the component generator.
    let mut exps = Vec::with_capacity(group.components.len());
    for c in &group.components {
        let lift = crt_lift_generator(&group, c, m);
        let v = chi1.value(lift as i64).mul(&chi2.value(lift as i64).conj());
        exps.push(root_to_exponent(v, c.order));
    }
    let eta = DirichletCharacter::from_exponents(group, exps);
    Ok(primitive_inducing(&eta, m))
}

/// Integer congruent to the component generator on its own prime-power block
/// and to 1 on every other block.
fn crt_lift_generator(group: &UnitGroup, target: &Component, m: u64) -> u64 {
    let mut x = 0u64;
    let mut modulus = 1u64;
    let mut seen = std::collections::HashSet::new();
    for c in &group.components {
        if !seen.insert(c.prime_power) {
            continue; // the two 2^k components share a block
        }
        let r = if c.prime_power == target.prime_power {
            target.generator % c.prime_power
        } else {
            1
        };
        x = crt_pair(x, modulus, r, c.prime_power);
        modulus *= c.prime_power;
    }
    // Blocks with trivial unit group (2^1) don't appear as components.
    if m % 2 == 0 && modulus % 2 != 0 {
        x = crt_pair(x, modulus, 1, 2);
    }
    x.max(1)
}

fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    // x = a mod m, x = b mod n with gcd(m,n) = 1
    if m == 1 {
        return b % n;
    }
    let (mut x, mn) = (a as u128, (m as u128) * (n as u128));
    let step = m as u128;
    while x % (n as u128) != (b as u128) % (n as u128) {
        x += step;
    }
    debug_assert!(x < mn);
    x as u64
}

fn root_to_exponent(v: CharValue, order: u32) -> u32 {
    match v {
        CharValue::Zero => unreachable!("generator is a unit"),
        CharValue::Root { num, den } => {
            debug_assert_eq!(order % den, 0, "value order must divide component order");
            num * (order / den)
        }
    }
}

/// Reduces a (possibly imprimitive) character to the primitive one inducing it.
fn primitive_inducing(eta: &DirichletCharacter, m: u64) -> DirichletCharacter {
    let f = eta.conductor();
    if f == m {
        return eta.clone();
    }
    let fgroup = UnitGroup::build(f);
    let mut exps = Vec::with_capacity(fgroup.components.len());
    for c in &fgroup.components {
        let g = crt_lift_generator(&fgroup, c, f);
        // Lift to a residue class mod f that is coprime to m.
        let mut a = g;
        while gcd(a, m) != 1 {
            a += f;
        }
        exps.push(root_to_exponent(eta.value(a as i64), c.order));
    }
    DirichletCharacter::from_exponents(fgroup, exps)
}
