//! Formal product algebra on degree-1 Euler factors and its deficit-line
//! predictions.
//!
//! Local rule: factors at distinct primes annihilate to the unit; at a shared
//! prime, coefficients multiply and pick up p^{-1/2} (the half shift), and
//! exponents multiply. Folding the rule over two Euler products collapses to
//! a closed form — an L-function of the reduced product character at the
//! shifted argument, times finitely many leftover local factors — and the
//! closed form names the locations where the delta statistic of the mated
//! zero sequences runs a deficit.

use num_complex::Complex64;
use thiserror::Error;

use crate::characters::{mul_conj, CharValue, CharacterError, DirichletCharacter};

const TWO_PI: f64 = std::f64::consts::TAU;

#[derive(Debug, Error)]
pub enum EneError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("finite factor set has more than one factor at prime {0}")]
    DuplicatePrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("local factor exponent must be +1 or -1, got {0}")]
    BadExponent(i8),
    #[error("local factor coefficient must satisfy |c| <= 1, got modulus {0}")]
    BadCoefficient(f64),
}

/// A degree-1 local factor (1 - c·p^{-s})^e.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFactor {
    pub prime: u64,
    pub coefficient: Complex64,
    pub exponent: i8,
}

impl LocalFactor {
    pub fn new(prime: u64, coefficient: Complex64, exponent: i8) -> Result<Self, EneError> {
        if !is_prime(prime) {
            return Err(EneError::NotPrime(prime));
        }
        if exponent != 1 && exponent != -1 {
            return Err(EneError::BadExponent(exponent));
        }
        if coefficient.norm() > 1.0 + 1e-9 {
            return Err(EneError::BadCoefficient(coefficient.norm()));
        }
        Ok(Self {
            prime,
            coefficient,
            exponent,
        })
    }

    /// The factor (1 - p^{-s}) whose zeros form the arithmetic comb
    /// 2πk/log p.
    pub fn unit_coefficient(prime: u64) -> Result<Self, EneError> {
        Self::new(prime, Complex64::new(1.0, 0.0), 1)
    }
}

/// (1-a·p^{-s})^e ⋆ (1-b·q^{-s})^f: the unit when p ≠ q, otherwise the factor
/// (1 - a·b·p^{-1/2}·p^{-s})^{e·f}.
pub fn ene_local(f: &LocalFactor, g: &LocalFactor) -> Option<LocalFactor> {
    if f.prime != g.prime {
        return None;
    }
    let p = f.prime as f64;
    Some(LocalFactor {
        prime: f.prime,
        coefficient: f.coefficient * g.coefficient * p.powf(-0.5),
        exponent: f.exponent * g.exponent,
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A formal Euler product over all primes: zeta, an L-function of a primitive
/// character, or a finite set of local factors. `half_shift` counts applied
/// argument shifts in units of 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerProductSymbol {
    kind: SymbolKind,
    half_shift: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolKind {
    Zeta,
    LFunction(DirichletCharacter),
    FiniteFactors(Vec<LocalFactor>),
}

impl EulerProductSymbol {
    pub fn zeta() -> Self {
        Self {
            kind: SymbolKind::Zeta,
            half_shift: 0,
        }
    }

    pub fn l_function(chi: DirichletCharacter) -> Result<Self, EneError> {
        if !chi.is_primitive() {
            return Err(CharacterError::NotPrimitive {
                modulus: chi.modulus(),
                conductor: chi.conductor(),
            }
            .into());
        }
        if chi.modulus() == 1 {
            return Ok(Self::zeta());
        }
        Ok(Self {
            kind: SymbolKind::LFunction(chi),
            half_shift: 0,
        })
    }

    pub fn finite_factors(factors: Vec<LocalFactor>) -> Result<Self, EneError> {
        let mut seen = std::collections::HashSet::new();
        for f in &factors {
            if !seen.insert(f.prime) {
                return Err(EneError::DuplicatePrime(f.prime));
            }
        }
        Ok(Self {
            kind: SymbolKind::FiniteFactors(factors),
            half_shift: 0,
        })
    }

    /// The single Euler factor (1 - p^{-s}).
    pub fn euler_factor(prime: u64) -> Result<Self, EneError> {
        Self::finite_factors(vec![LocalFactor::unit_coefficient(prime)?])
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    pub fn half_shift(&self) -> i32 {
        self.half_shift
    }

    /// Real-conjugate: zeta is fixed, characters conjugate, coefficients
    /// conjugate.
    pub fn conj(&self) -> Self {
        let kind = match &self.kind {
            SymbolKind::Zeta => SymbolKind::Zeta,
            SymbolKind::LFunction(chi) => SymbolKind::LFunction(chi.conjugate()),
            SymbolKind::FiniteFactors(fs) => SymbolKind::FiniteFactors(
                fs.iter()
                    .map(|f| LocalFactor {
                        prime: f.prime,
                        coefficient: f.coefficient.conj(),
                        exponent: f.exponent,
                    })
                    .collect(),
            ),
        };
        Self {
            kind,
            half_shift: self.half_shift,
        }
    }

    pub fn display_name(&self) -> String {
        match &self.kind {
            SymbolKind::Zeta => "zeta".to_string(),
            SymbolKind::LFunction(chi) => format!("L[{}]", chi.label()),
            SymbolKind::FiniteFactors(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|f| {
                        render_factor(f.prime, ExactCoeff::Numeric(f.coefficient), f.exponent.into(), 0)
                    })
                    .collect();
                parts.join(" * ")
            }
        }
    }
}

/// Coefficient of a leftover factor in a closed form: exact root of unity
/// when the algebra stayed in character arithmetic, numeric otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactCoeff {
    Root(CharValue),
    Numeric(Complex64),
}

impl ExactCoeff {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            ExactCoeff::Root(v) => v.to_complex(),
            ExactCoeff::Numeric(c) => *c,
        }
    }

    fn is_one(&self) -> bool {
        match self {
            ExactCoeff::Root(v) => *v == CharValue::ONE,
            ExactCoeff::Numeric(c) => (c - Complex64::new(1.0, 0.0)).norm() < 1e-12,
        }
    }
}

/// A leftover local factor of a closed form, at the shifted argument:
/// (1 - c·p^{-1/2-s})^e with c recorded exactly where possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedFactor {
    pub prime: u64,
    pub coefficient: ExactCoeff,
    pub exponent: i32,
}

/// The base L-part of a closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum LBase {
    Zeta,
    LFunction(DirichletCharacter),
}

/// Closed form of an ene product: an optional L-part with an integer
/// exponent, leftover finite factors, and the accumulated half shift.
#[derive(Debug, Clone, PartialEq)]
pub struct EneProduct {
    pub l_part: Option<(LBase, i32)>,
    pub factors: Vec<ShiftedFactor>,
    /// Argument shift in halves; the worked products here always end at 1,
    /// i.e. functions of s + 1/2.
    pub half_shift: i32,
}

impl EneProduct {
    /// Stable textual rendering, e.g.
    /// `zeta(s+1/2)^-1 * (1 - 3^(-1/2-s))^-1`.
    pub fn render(&self) -> String {
        let arg = match self.half_shift {
            0 => "s".to_string(),
            1 => "s+1/2".to_string(),
            n => format!("s+{n}/2"),
        };
        let mut parts: Vec<String> = Vec::new();
        if let Some((base, e)) = &self.l_part {
            let name = match base {
                LBase::Zeta => format!("zeta({arg})"),
                LBase::LFunction(chi) => format!("L[{}]({arg})", chi.label()),
            };
            parts.push(if *e == 1 { name } else { format!("{name}^{e}") });
        }
        for f in &self.factors {
            parts.push(render_factor(f.prime, f.coefficient, f.exponent, self.half_shift));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" * ")
        }
    }
}

fn render_factor(prime: u64, coeff: ExactCoeff, exponent: i32, half_shift: i32) -> String {
    let arg = match half_shift {
        0 => "(-s)".to_string(),
        1 => "(-1/2-s)".to_string(),
        n => format!("(-{n}/2-s)"),
    };
    let c = if coeff.is_one() {
        String::new()
    } else {
        match coeff {
            ExactCoeff::Root(CharValue::Root { num, den }) => format!("e(2pi i {num}/{den})*"),
            ExactCoeff::Root(CharValue::Zero) => "0*".to_string(),
            ExactCoeff::Numeric(v) => format!("({:.6}{:+.6}i)*", v.re, v.im),
        }
    };
    let body = format!("(1 - {c}{prime}^{arg})");
    if exponent == 1 {
        body
    } else {
        format!("{body}^{exponent}")
    }
}

/// Factorwise ene product F ⋆ G of two symbols (G already conjugated by the
/// caller where the statistics demand it). The result carries an explicit
/// +1/2 shift.
pub fn ene_euler(
    f: &EulerProductSymbol,
    g: &EulerProductSymbol,
) -> Result<EneProduct, EneError> {
    let shift = f.half_shift + g.half_shift + 1;
    use SymbolKind::*;
    let product = match (&f.kind, &g.kind) {
        (Zeta, Zeta) => full_product(None, None, shift)?,
        (Zeta, LFunction(chi)) | (LFunction(chi), Zeta) => {
            full_product(Some(chi), None, shift)?
        }
        (LFunction(a), LFunction(b)) => full_product(Some(a), Some(b), shift)?,
        (FiniteFactors(fs), Zeta) | (Zeta, FiniteFactors(fs)) => {
            // Zeta's local factor at p is (1 - p^{-s})^{-1}.
            let factors = fs
                .iter()
                .map(|lf| {
                    let zeta_local = LocalFactor {
                        prime: lf.prime,
                        coefficient: Complex64::new(1.0, 0.0),
                        exponent: -1,
                    };
                    let h = ene_local(lf, &zeta_local).expect("same prime");
                    shifted_numeric(h)
                })
                .collect();
            EneProduct {
                l_part: None,
                factors,
                half_shift: shift,
            }
        }
        (FiniteFactors(fs), LFunction(chi)) | (LFunction(chi), FiniteFactors(fs)) => {
            let factors = fs
                .iter()
                .filter_map(|lf| {
                    let v = chi.value(lf.prime as i64);
                    if v.is_zero() {
                        // χ(p) = 0: the L-function has no factor at p; the
                        // ene against the empty factor is the unit.
                        return None;
                    }
                    let chi_local = LocalFactor {
                        prime: lf.prime,
                        coefficient: v.to_complex(),
                        exponent: -1,
                    };
                    Some(shifted_numeric(ene_local(lf, &chi_local).expect("same prime")))
                })
                .collect();
            EneProduct {
                l_part: None,
                factors,
                half_shift: shift,
            }
        }
        (FiniteFactors(fa), FiniteFactors(fb)) => {
            let mut factors = Vec::new();
            for a in fa {
                for b in fb {
                    if let Some(h) = ene_local(a, b) {
                        factors.push(shifted_numeric(h));
                    }
                }
            }
            EneProduct {
                l_part: None,
                factors,
                half_shift: shift,
            }
        }
    };
    Ok(product)
}

/// The p^{-1/2} of the local rule is the rendered argument shift; the
/// remaining numeric content is the plain coefficient product.
fn shifted_numeric(h: LocalFactor) -> ShiftedFactor {
    let p = h.prime as f64;
    ShiftedFactor {
        prime: h.prime,
        coefficient: ExactCoeff::Numeric(h.coefficient * p.powf(0.5)),
        exponent: h.exponent as i32,
    }
}

/// Product of two full Euler products (zeta counts as the trivial character):
/// ∏_p (1 - (χ₁χ₂)(p) p^{-1/2-s}) recognized as L of the primitive reduction,
/// inverted, times leftover factors at primes dividing the common modulus.
fn full_product(
    a: Option<&DirichletCharacter>,
    b: Option<&DirichletCharacter>,
    shift: i32,
) -> Result<EneProduct, EneError> {
    let trivial = crate::characters::character(1, 0)?;
    let chi1 = a.cloned().unwrap_or_else(|| trivial.clone());
    let chi2 = b.cloned().unwrap_or_else(|| trivial.clone());
    // mul_conj reduces χ₁·conj(χ₂); feed it the conjugate to get χ₁·χ₂.
    let psi = mul_conj(&chi1, &chi2.conjugate())?;
    let modulus = lcm(chi1.modulus(), chi2.modulus());

    let mut factors = Vec::new();
    for p in prime_divisors(modulus) {
        if psi.conductor() % p == 0 {
            continue; // ψ(p) = 0: no leftover factor
        }
        let v = psi.value(p as i64);
        debug_assert!(!v.is_zero());
        factors.push(ShiftedFactor {
            prime: p,
            coefficient: ExactCoeff::Root(v),
            exponent: -1,
        });
    }
    let base = if psi.modulus() == 1 {
        LBase::Zeta
    } else {
        LBase::LFunction(psi)
    };
    Ok(EneProduct {
        l_part: Some((base, -1)),
        factors,
        half_shift: shift,
    })
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a.max(b).max(1);
    }
    let mut x = a;
    let mut y = b;
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x * b
}

// ---------------------------------------------------------------------------
// predictions

/// Whether a predicted deficit line is the leading effect or a lower-order
/// arithmetic comb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineOrder {
    Primary,
    Secondary,
}

/// A predicted deficit line family.
#[derive(Debug, Clone, PartialEq)]
pub enum PredictedLine {
    /// Deficits at the critical-line ordinates of this function's zeros.
    LFunctionZeros { base: LBase, order: LineOrder },
    /// Deficits at the arithmetic comb k·2π/log p, k = 1, 2, ….
    HarmonicComb {
        prime: u64,
        /// 2π/log p, exact to machine precision.
        fundamental: f64,
        order: LineOrder,
    },
    /// Atomic mass at delta 0 (symmetric mating only).
    AtomAtZero,
}

/// The predicted deficit spectrum for the mating of two zero sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct SpikePrediction {
    pub closed_form: EneProduct,
    pub lines: Vec<PredictedLine>,
}

impl SpikePrediction {
    pub fn has_atom(&self) -> bool {
        self.lines.iter().any(|l| matches!(l, PredictedLine::AtomAtZero))
    }

    pub fn combs(&self) -> Vec<(u64, f64)> {
        self.lines
            .iter()
            .filter_map(|l| match l {
                PredictedLine::HarmonicComb {
                    prime, fundamental, ..
                } => Some((*prime, *fundamental)),
                _ => None,
            })
            .collect()
    }

    pub fn primary_zeros(&self) -> Option<&LBase> {
        self.lines.iter().find_map(|l| match l {
            PredictedLine::LFunctionZeros {
                base,
                order: LineOrder::Primary,
            } => Some(base),
            _ => None,
        })
    }
}

/// Predicted deficit lines for the delta statistic that mates the zeros of
/// `spec_a` with the zeros of `spec_b`: the closed form of
/// `ene_euler(spec_a, conj(spec_b))` read off as line locations. The atom at
/// 0 appears exactly when `spec_b` is the conjugate of `spec_a` (symmetric
/// mating).
pub fn predict_deltas(
    spec_a: &EulerProductSymbol,
    spec_b: &EulerProductSymbol,
) -> Result<SpikePrediction, EneError> {
    let closed = ene_euler(spec_a, &spec_b.conj())?;
    let mut lines = Vec::new();
    if let Some((base, _)) = &closed.l_part {
        lines.push(PredictedLine::LFunctionZeros {
            base: base.clone(),
            order: LineOrder::Primary,
        });
    }
    for f in &closed.factors {
        lines.push(PredictedLine::HarmonicComb {
            prime: f.prime,
            fundamental: TWO_PI / (f.prime as f64).ln(),
            order: LineOrder::Secondary,
        });
    }
    if spec_b.conj() == *spec_a {
        lines.push(PredictedLine::AtomAtZero);
    }
    Ok(SpikePrediction {
        closed_form: closed,
        lines,
    })
}
