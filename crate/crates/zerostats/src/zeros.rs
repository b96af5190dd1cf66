//! Zero engines for zeta and Dirichlet L-functions on the critical line.
//!
//! Both engines share one scanning strategy: walk the Gram grid of the
//! rotated function's phase, delimit blocks by "good" Gram points (where the
//! sign of the rotated value matches the grid parity), and require each block
//! to surrender as many sign changes as it has Gram intervals, subdividing
//! adaptively when a block violates the one-zero-per-interval heuristic.
//! A block that refuses to yield its expected count is a hard error carrying
//! the offending interval; zeros are never silently skipped.
//!
//! Completeness is anchored by an exhaustive fine scan below the first good
//! Gram point; from there on, the cumulative count at every good Gram point
//! is pinned to the phase increment, so a missed zero cannot pass unnoticed.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::characters::{CharacterError, DirichletCharacter};
use crate::hardy::{hardy_z_checked, HardyError, ZFunctionConfig};
use crate::sequence::{SequenceError, Source, ZeroSequence};
use crate::special::{hurwitz_zeta, ln_gamma};
use crate::theta::{theta_deriv, theta_unchecked, ThetaError};

const PI: f64 = std::f64::consts::PI;

/// Compute budget: zeros beyond this are ingested, not computed.
pub const MAX_COMPUTED_ZEROS: usize = 2_000_000;

/// L-function evaluation refuses conductors above this.
pub const MAX_LFUNC_CONDUCTOR: u64 = 100;

const MAX_BLOCK_INTERVALS: usize = 64;
const MAX_BLOCK_POINTS: usize = 1 << 14;

#[derive(Debug, Error)]
pub enum ZeroError {
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Hardy(#[from] HardyError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("requested {requested} zeros, compute budget is {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error("conductor {0} exceeds the L-function budget {MAX_LFUNC_CONDUCTOR}")]
    ConductorBudget(u64),
    #[error("negative branch requested for a real character (its zeros mirror the positive branch)")]
    RealCharacterNegativeBranch,
    #[error(
        "bracketing failure on [{lo}, {hi}]: expected {expected} sign changes, found {found} \
         at maximum subdivision depth"
    )]
    BracketingFailure {
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },
    #[error("zero count drifted from the phase count near t = {at}: found {found}, expected {expected}")]
    CountMismatch { at: f64, found: usize, expected: usize },
}

/// A real rotated function on the critical line whose sign changes are zeros,
/// together with the continuous phase that drives its Gram grid.
trait CriticalLine: Sync {
    fn z(&self, t: f64) -> f64;
    /// Continuous phase Θ(t); Gram points solve Θ = mπ.
    fn phase(&self, t: f64) -> f64;
    /// Lower end of the exhaustive fine-scan region.
    fn scan_floor(&self) -> f64;
    /// Above this the phase is monotone increasing and the Gram grid is used.
    fn gram_floor(&self) -> f64;

    fn phase_deriv(&self, t: f64) -> f64 {
        let h = 1e-5 * t.abs().max(1.0);
        (self.phase(t + h) - self.phase(t - h)) / (2.0 * h)
    }
}

// ---------------------------------------------------------------------------
// zeta

struct ZetaLine {
    cfg: ZFunctionConfig,
}

impl CriticalLine for ZetaLine {
    fn z(&self, t: f64) -> f64 {
        hardy_z_checked(t, &self.cfg)
            .expect("scanner stays above the Z validity floor")
            .value
    }
    fn phase(&self, t: f64) -> f64 {
        theta_unchecked(t)
    }
    fn scan_floor(&self) -> f64 {
        1.5
    }
    fn gram_floor(&self) -> f64 {
        9.0 // just below the m = -1 Gram point
    }
    fn phase_deriv(&self, t: f64) -> f64 {
        theta_deriv(t)
    }
}

/// First `n` ordinates of zeta zeros, each refined to the configured
/// tolerance. The cumulative count is pinned to the smoothed zero count at
/// every good Gram point, so no zero can be missed within the scanned range.
pub fn find_riemann_zeros(n: usize, cfg: &ZFunctionConfig) -> Result<ZeroSequence, ZeroError> {
    cfg.validate()?;
    if n > MAX_COMPUTED_ZEROS {
        return Err(ZeroError::BudgetExceeded {
            requested: n,
            budget: MAX_COMPUTED_ZEROS,
        });
    }
    let line = ZetaLine { cfg: *cfg };
    let ordinates = scan_zeros_parallel(&line, n, cfg)?;
    ZeroSequence::new(
        ordinates,
        false,
        Source::Computed(format!(
            "zeta critical-line scan, n={n}, tol={:e}",
            cfg.refine_tolerance
        )),
    )
    .map_err(Into::into)
}

/// All zeta ordinates strictly below `t_max`.
pub fn find_riemann_zeros_below(t_max: f64, cfg: &ZFunctionConfig) -> Result<ZeroSequence, ZeroError> {
    cfg.validate()?;
    let expected = if t_max > 6.0 {
        (theta_unchecked(t_max) / PI + 1.0).ceil().max(0.0) as usize + 2
    } else {
        0
    };
    if expected == 0 {
        return Ok(ZeroSequence::new(Vec::new(), false, Source::Computed("zeta scan, empty range".into()))?);
    }
    let seq = find_riemann_zeros(expected, cfg)?;
    Ok(seq.truncated_below(t_max))
}

// ---------------------------------------------------------------------------
// Dirichlet L-functions

/// Rotated L-function evaluator for a primitive character.
pub struct LFunction {
    chi: DirichletCharacter,
    /// Nonzero residue coefficients (r/q, χ(r)).
    coeffs: Vec<(f64, Complex64)>,
    q: f64,
    parity: f64,
    /// Half the root-number argument; subtracting it makes the rotation real.
    phase_shift: f64,
    log_q_pi: f64,
}

impl LFunction {
    pub fn new(chi: &DirichletCharacter) -> Result<Self, ZeroError> {
        if !chi.is_primitive() {
            return Err(CharacterError::NotPrimitive {
                modulus: chi.modulus(),
                conductor: chi.conductor(),
            }
            .into());
        }
        if chi.conductor() > MAX_LFUNC_CONDUCTOR {
            return Err(ZeroError::ConductorBudget(chi.conductor()));
        }
        let q = chi.modulus();
        let mut coeffs = Vec::new();
        for r in 1..=q {
            let v = chi.value(r as i64);
            if !v.is_zero() {
                coeffs.push((r as f64 / q as f64, v.to_complex()));
            }
        }
        let eps = chi.root_number();
        debug_assert!((eps.norm() - 1.0).abs() < 1e-8);
        Ok(Self {
            chi: chi.clone(),
            coeffs,
            q: q as f64,
            parity: if chi.is_even() { 0.0 } else { 1.0 },
            phase_shift: eps.arg() / 2.0,
            log_q_pi: (q as f64 / PI).ln(),
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    /// L(1/2 + it, χ) through the Hurwitz decomposition.
    pub fn l_value(&self, t: f64) -> Complex64 {
        let s = Complex64::new(0.5, t);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, c) in &self.coeffs {
            acc += c * hurwitz_zeta(s, x);
        }
        (-s * self.q.ln()).exp() * acc
    }

    /// Phase of the completed L-function along the critical line
    /// (gamma factor plus conductor term), without the root-number shift.
    pub fn completed_phase(&self, t: f64) -> f64 {
        let z = Complex64::new((0.5 + self.parity) / 2.0, t / 2.0);
        ln_gamma(z).im + 0.5 * t * self.log_q_pi
    }

    /// The real rotated value whose sign changes mark the zeros.
    pub fn z(&self, t: f64) -> f64 {
        let rot = Complex64::from_polar(1.0, self.completed_phase(t) - self.phase_shift);
        (rot * self.l_value(t)).re
    }
}

/// Real rotated L-value at 1/2 + it. Even in t only when χ is real.
pub fn lfunc_z(chi: &DirichletCharacter, t: f64, cfg: &ZFunctionConfig) -> Result<f64, ZeroError> {
    cfg.validate()?;
    Ok(LFunction::new(chi)?.z(t))
}

/// Expected number of branch zeros in (t1, t2] from the phase increment of
/// the completed L-function; exact at good Gram points, off by the usual
/// bounded fluctuation elsewhere.
pub fn lfunc_expected_count(
    chi: &DirichletCharacter,
    t1: f64,
    t2: f64,
) -> Result<f64, ZeroError> {
    let lf = LFunction::new(chi)?;
    Ok((lf.completed_phase(t2) - lf.completed_phase(t1)) / PI)
}

struct LFuncLine {
    lf: LFunction,
    /// -1.0 scans the negative ordinate branch (as a function of |t|).
    direction: f64,
}

impl CriticalLine for LFuncLine {
    fn z(&self, t: f64) -> f64 {
        self.lf.z(self.direction * t)
    }
    fn phase(&self, t: f64) -> f64 {
        // Θ(t) - φ on the positive branch; the reflected branch uses
        // -Θ(-t) + ... which reduces to Θ(t) + φ since Θ is odd.
        self.lf.completed_phase(t) - self.direction * self.lf.phase_shift
    }
    fn scan_floor(&self) -> f64 {
        1e-3
    }
    fn gram_floor(&self) -> f64 {
        // phase derivative ~ (1/2) log(q t / 2π); safely monotone above this
        (4.0 * PI / self.lf.q).max(3.0)
    }
}

/// Zeros of L(s, χ) as a ZeroSequence: `n_pos` positive and `n_neg` negative
/// ordinates, ascending, zero at t = 0 excluded. Real characters have
/// mirror-symmetric zeros, so their negative branch must not be requested.
pub fn find_dirichlet_zeros(
    chi: &DirichletCharacter,
    n_pos: usize,
    n_neg: usize,
    cfg: &ZFunctionConfig,
) -> Result<ZeroSequence, ZeroError> {
    cfg.validate()?;
    if n_pos.max(n_neg) > MAX_COMPUTED_ZEROS {
        return Err(ZeroError::BudgetExceeded {
            requested: n_pos.max(n_neg),
            budget: MAX_COMPUTED_ZEROS,
        });
    }
    if chi.modulus() == 1 {
        // L for the trivial character is zeta itself.
        if n_neg != 0 {
            return Err(ZeroError::RealCharacterNegativeBranch);
        }
        return find_riemann_zeros(n_pos, cfg);
    }
    if chi.is_real() && n_neg != 0 {
        return Err(ZeroError::RealCharacterNegativeBranch);
    }

    let pos = if n_pos > 0 {
        let line = LFuncLine {
            lf: LFunction::new(chi)?,
            direction: 1.0,
        };
        scan_zeros_parallel(&line, n_pos, cfg)?
    } else {
        LFunction::new(chi)?; // still validate the character
        Vec::new()
    };
    let neg = if n_neg > 0 {
        let line = LFuncLine {
            lf: LFunction::new(chi)?,
            direction: -1.0,
        };
        scan_zeros_parallel(&line, n_neg, cfg)?
    } else {
        Vec::new()
    };

    let mut ordinates: Vec<f64> = neg.iter().rev().map(|&t| -t).collect();
    ordinates.extend_from_slice(&pos);
    let signed = !chi.is_real();
    ZeroSequence::new(
        ordinates,
        signed,
        Source::Computed(format!(
            "L-function critical-line scan, {}, n_pos={n_pos}, n_neg={n_neg}, tol={:e}",
            chi.label(),
            cfg.refine_tolerance
        )),
    )
    .map_err(Into::into)
}

// ---------------------------------------------------------------------------
// scanning machinery

/// Solves phase(t) = target on the monotone branch, t >= floor_t.
fn solve_phase(line: &impl CriticalLine, target: f64, floor_t: f64, guess: f64) -> f64 {
    let mut lo = floor_t;
    let mut hi = guess.max(floor_t + 0.5);
    while line.phase(hi) < target {
        lo = hi;
        hi = hi * 1.5 + 1.0;
    }
    if line.phase(lo) > target {
        lo = floor_t;
    }
    // Newton with bisection safeguard.
    let mut t = 0.5 * (lo + hi);
    for _ in 0..80 {
        let f = line.phase(t) - target;
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let d = line.phase_deriv(t);
        let next = if d > 0.0 { t - f / d } else { f64::NAN };
        t = if next.is_finite() && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-12 * t.max(1.0) {
            break;
        }
    }
    t
}

/// Brent root refinement on a bracketing interval.
fn brent_refine(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64, tol: f64) -> f64 {
    debug_assert!(fa * fb <= 0.0);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else if xm > 0.0 {
            tol1
        } else {
            -tol1
        };
        fb = f(b);
    }
    b
}

/// Sign changes of `line.z` on a fixed grid; refines each bracket.
fn collect_on_grid(
    line: &impl CriticalLine,
    grid: &[(f64, f64)],
    tol: f64,
) -> Vec<f64> {
    let mut zeros = Vec::new();
    for w in grid.windows(2) {
        let (a, fa) = w[0];
        let (b, fb) = w[1];
        if fa == 0.0 {
            zeros.push(a);
        } else if fa * fb < 0.0 {
            zeros.push(brent_refine(&|t| line.z(t), a, b, fa, fb, tol));
        }
    }
    if let Some(&(b, fb)) = grid.last() {
        if fb == 0.0 {
            zeros.push(b);
        }
    }
    zeros
}

/// Exhaustive scan of (floor, hi]; the anchor for all later counting.
fn fine_scan(line: &impl CriticalLine, hi: f64, tol: f64) -> Result<Vec<f64>, ZeroError> {
    let lo = line.scan_floor();
    let mut step = 0.05f64;
    for attempt in 0..3 {
        let n = ((hi - lo) / step).ceil() as usize + 1;
        let mut grid = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let t = (lo + i as f64 * step).min(hi);
            grid.push((t, line.z(t)));
            if t >= hi {
                break;
            }
        }
        let zeros = collect_on_grid(line, &grid, tol);
        let expected = (line.phase(hi) - line.phase(lo)) / PI;
        // The phase difference carries an O(1) fluctuation plus an unknown
        // branch constant; the fine grid is the authority, the phase a guard.
        if (zeros.len() as f64 - expected).abs() <= 1.75 || attempt == 2 {
            return Ok(zeros);
        }
        step /= 4.0;
    }
    unreachable!()
}

/// Is `(-1)^m z(g_m) > 0`?
fn is_good(parity_m: i64, z_value: f64) -> bool {
    if parity_m.rem_euclid(2) == 0 {
        z_value > 0.0
    } else {
        z_value < 0.0
    }
}

struct GramWalk<'a, L: CriticalLine> {
    line: &'a L,
    floor: f64,
    /// Last computed Gram point (index, t).
    prev: (i64, f64),
}

impl<'a, L: CriticalLine> GramWalk<'a, L> {
    fn start(line: &'a L, m: i64) -> Self {
        let floor = line.gram_floor();
        let t = solve_phase(line, m as f64 * PI, floor, floor + 1.0);
        Self {
            line,
            floor,
            prev: (m, t),
        }
    }

    fn current(&self) -> (i64, f64) {
        self.prev
    }

    fn advance(&mut self) -> (i64, f64) {
        let (m, t) = self.prev;
        let d = self.line.phase_deriv(t).max(1e-3);
        let guess = t + PI / d;
        let next = solve_phase(self.line, (m + 1) as f64 * PI, self.floor.max(t), guess);
        self.prev = (m + 1, next);
        self.prev
    }
}

/// Scans one run of Gram blocks from the good point `start` (inclusive
/// anchor) until `count_target` zeros have been collected and the run ends on
/// a good Gram point. Returns the zeros and the final good (index, t).
fn scan_blocks(
    line: &impl CriticalLine,
    start: (i64, f64),
    count_target: usize,
    stop_index: Option<i64>,
    tol: f64,
) -> Result<(Vec<f64>, (i64, f64)), ZeroError> {
    let mut zeros: Vec<f64> = Vec::new();
    let mut walk = GramWalk {
        line,
        floor: line.gram_floor(),
        prev: start,
    };
    let mut block_lo = start;
    let mut block_points: Vec<(f64, f64)> = vec![(start.1, line.z(start.1))];

    loop {
        let (m, t) = walk.advance();
        let z = line.z(t);
        block_points.push((t, z));
        if !is_good(m, z) {
            if block_points.len() > MAX_BLOCK_INTERVALS {
                return Err(ZeroError::BracketingFailure {
                    lo: block_lo.1,
                    hi: t,
                    expected: block_points.len() - 1,
                    found: count_sign_changes(&block_points),
                });
            }
            continue;
        }
        // Good Gram point closes the block.
        let expected = (m - block_lo.0) as usize;
        let found = resolve_block(line, &mut block_points, expected)?;
        zeros.extend(collect_on_grid(line, &block_points, tol));
        debug_assert_eq!(found, count_sign_changes(&block_points));
        let done_count = zeros.len() >= count_target;
        let done_index = stop_index.is_some_and(|s| m >= s);
        if done_count || done_index {
            return Ok((zeros, (m, t)));
        }
        block_lo = (m, t);
        block_points = vec![(t, z)];
    }
}

fn count_sign_changes(points: &[(f64, f64)]) -> usize {
    points
        .windows(2)
        .filter(|w| w[0].1 * w[1].1 < 0.0 || w[0].1 == 0.0)
        .count()
}

/// Subdivides the block grid until it shows at least `expected` sign changes.
fn resolve_block(
    line: &impl CriticalLine,
    points: &mut Vec<(f64, f64)>,
    expected: usize,
) -> Result<usize, ZeroError> {
    loop {
        let found = count_sign_changes(points);
        if found >= expected {
            return Ok(found);
        }
        if points.len() * 2 > MAX_BLOCK_POINTS {
            return Err(ZeroError::BracketingFailure {
                lo: points.first().unwrap().0,
                hi: points.last().unwrap().0,
                expected,
                found,
            });
        }
        let mut refined = Vec::with_capacity(points.len() * 2);
        for w in points.windows(2) {
            let mid = 0.5 * (w[0].0 + w[1].0);
            refined.push(w[0]);
            refined.push((mid, line.z(mid)));
        }
        refined.push(*points.last().unwrap());
        *points = refined;
    }
}

/// Walks forward from Gram index `m` to the first good Gram point.
fn first_good_from(line: &impl CriticalLine, m: i64) -> Result<(i64, f64), ZeroError> {
    let mut walk = GramWalk::start(line, m);
    for _ in 0..10_000 {
        let (i, t) = walk.current();
        if is_good(i, line.z(t)) {
            return Ok((i, t));
        }
        walk.advance();
    }
    let (i, t) = walk.current();
    Err(ZeroError::CountMismatch {
        at: t,
        found: 0,
        expected: i as usize,
    })
}

/// Smallest Gram index whose point lies at or above the gram floor.
fn base_gram_index(line: &impl CriticalLine) -> i64 {
    let floor = line.gram_floor();
    (line.phase(floor) / PI).ceil() as i64
}

/// Sequential scan: fine region anchor, then Gram blocks until `n` zeros.
fn scan_zeros_sequential(
    line: &impl CriticalLine,
    n: usize,
    cfg: &ZFunctionConfig,
) -> Result<Vec<f64>, ZeroError> {
    let tol = cfg.refine_tolerance;
    let anchor = first_good_from(line, base_gram_index(line))?;
    let mut zeros = fine_scan(line, anchor.1, tol)?;
    if zeros.len() < n {
        let (more, _) = scan_blocks(line, anchor, n - zeros.len(), None, tol)?;
        zeros.extend(more);
    }
    zeros.truncate(n);
    Ok(zeros)
}

/// Parallel scan over segments of the Gram grid. Each segment starts and ends
/// at a good Gram point, which makes the concatenation identical to the
/// sequential scan regardless of the partitioning.
fn scan_zeros_parallel(
    line: &impl CriticalLine,
    n: usize,
    cfg: &ZFunctionConfig,
) -> Result<Vec<f64>, ZeroError> {
    let threads = rayon::current_num_threads();
    if n < 2_000 || threads < 2 {
        return scan_zeros_sequential(line, n, cfg);
    }
    let tol = cfg.refine_tolerance;
    let base = base_gram_index(line);
    let anchor = first_good_from(line, base)?;
    let mut zeros = fine_scan(line, anchor.1, tol)?;
    let fine_count = zeros.len();
    if fine_count >= n {
        zeros.truncate(n);
        return Ok(zeros);
    }
    // Zeros track Gram indices one-for-one on average; segment the remaining
    // index range with a safety margin on the last segment.
    let remaining = n - fine_count;
    let segments = (threads * 3).min(remaining / 500 + 1);
    let seg_len = (remaining / segments + 1) as i64;
    let bounds: Vec<i64> = (0..segments as i64)
        .map(|k| anchor.0 + k * seg_len)
        .collect();

    let parts: Vec<Result<(Vec<f64>, (i64, f64)), ZeroError>> = bounds
        .par_iter()
        .enumerate()
        .map(|(k, &b)| {
            let start = if k == 0 {
                anchor
            } else {
                first_good_from(line, b)?
            };
            let stop = if k + 1 < bounds.len() {
                // Scan to the next segment's first good point.
                let next = first_good_from(line, bounds[k + 1])?;
                let (zs, end) = scan_blocks(line, start, usize::MAX, Some(next.0), tol)?;
                debug_assert_eq!(end.0, next.0);
                return Ok((zs, end));
            } else {
                let (zs, end) = scan_blocks(line, start, remaining, None, tol)?;
                Ok((zs, end))
            };
            stop
        })
        .collect();

    let mut last_end = anchor;
    for part in parts {
        let (zs, end) = part?;
        zeros.extend(zs);
        last_end = end;
    }
    // Keep scanning if the margin was short.
    while zeros.len() < n {
        let (more, end) = scan_blocks(line, last_end, n - zeros.len(), None, tol)?;
        zeros.extend(more);
        last_end = end;
    }
    // The cumulative count at the closing good Gram point must match the
    // phase increment exactly; anything else means a scanning defect.
    let expected_total = fine_count as i64 + (last_end.0 - anchor.0);
    if zeros.len() as i64 != expected_total {
        return Err(ZeroError::CountMismatch {
            at: last_end.1,
            found: zeros.len(),
            expected: expected_total.max(0) as usize,
        });
    }
    zeros.truncate(n);
    Ok(zeros)
}
