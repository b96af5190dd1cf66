//! The Hardy Z-function Z(t) = e^{iθ(t)} ζ(1/2 + it).
//!
//! Two evaluation paths share the sign conventions:
//!
//! * below [`RS_SWITCH`], Euler–Maclaurin summation of ζ(1/2 + it) rotated by
//!   e^{iθ(t)} — essentially exact, O(t) per call;
//! * above it, the Riemann–Siegel main sum with up to four remainder
//!   correction terms — O(√t) per call, error far below bin resolution for
//!   every height this crate computes.
//!
//! The remainder coefficients are polynomials in derivatives of the entire
//! function F(z) = cos(π(z²/2 + 3/8))/cos(πz); its Taylor coefficients are
//! obtained once by a contour integral on |z| = 2, which avoids the unstable
//! power-series division.

use num_complex::Complex64;
use std::sync::LazyLock;
use thiserror::Error;

use crate::special::hurwitz_zeta;
use crate::theta::{theta_unchecked, THETA_MIN_T};

const PI: f64 = std::f64::consts::PI;
const TWO_PI: f64 = std::f64::consts::TAU;

/// Crossover between the Euler–Maclaurin and Riemann–Siegel paths.
pub const RS_SWITCH: f64 = 400.0;

/// Degree of the Taylor model for F; the ninth derivative is still accurate
/// to ~1e-12 on [-1, 1] at this degree.
const F_DEGREE: usize = 88;

/// Highest derivative of F needed (for the C₃ correction term).
const F_MAX_DERIV: usize = 9;

#[derive(Debug, Error)]
pub enum HardyError {
    #[error("|t| = {0} is below the validity threshold {THETA_MIN_T} of the Z evaluator")]
    BelowValidity(f64),
}

/// Evaluator configuration shared by the zeta and L-function engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZFunctionConfig {
    /// Number of Riemann–Siegel remainder correction terms (clamped to 1..=4).
    pub term_budget: usize,
    /// Root localization tolerance in ordinate units.
    pub refine_tolerance: f64,
}

impl Default for ZFunctionConfig {
    fn default() -> Self {
        Self {
            term_budget: 4,
            refine_tolerance: 1e-9,
        }
    }
}

impl ZFunctionConfig {
    pub fn validate(&self) -> Result<(), crate::zeros::ZeroError> {
        if self.term_budget < 1 {
            return Err(crate::zeros::ZeroError::BadConfig(
                "term_budget must be >= 1".into(),
            ));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(crate::zeros::ZeroError::BadConfig(
                "refine_tolerance must be > 0".into(),
            ));
        }
        Ok(())
    }
}

/// A Z evaluation together with an estimate of the evaluator's own error.
#[derive(Debug, Clone, Copy)]
pub struct ZEval {
    pub value: f64,
    /// Rough bound on the evaluation error; a precision warning is warranted
    /// when this exceeds the configured refine tolerance.
    pub precision_estimate: f64,
}

/// Z(t), checked. Even in t by construction: both paths evaluate at |t|.
pub fn hardy_z_checked(t: f64, cfg: &ZFunctionConfig) -> Result<ZEval, HardyError> {
    let ta = t.abs();
    if !(ta >= THETA_MIN_T) {
        return Err(HardyError::BelowValidity(ta));
    }
    if ta <= RS_SWITCH {
        let z = hurwitz_zeta(Complex64::new(0.5, ta), 1.0);
        let theta = theta_unchecked(ta);
        let rot = Complex64::new(0.0, theta).exp();
        Ok(ZEval {
            value: (rot * z).re,
            precision_estimate: 1e-12,
        })
    } else {
        Ok(riemann_siegel(ta, cfg.term_budget.clamp(1, 4)))
    }
}

/// Z(t) with the default configuration; panics below the validity threshold.
pub fn hardy_z(t: f64, cfg: &ZFunctionConfig) -> f64 {
    hardy_z_checked(t, cfg).expect("t below Z validity threshold").value
}

fn riemann_siegel(t: f64, corrections: usize) -> ZEval {
    let tau = (t / TWO_PI).sqrt();
    let m = tau.floor() as usize;
    let theta = theta_unchecked(t);

    let mut sum = 0.0;
    for n in 1..=m {
        let ln_n = LN_TABLE.ln(n);
        sum += LN_TABLE.inv_sqrt(n) * (theta - t * ln_n).cos();
    }
    let z = 2.0 * (tau - m as f64) - 1.0;
    let inv_tau = 1.0 / tau;
    let mut rem = 0.0;
    let mut scale = 1.0;
    for j in 0..corrections {
        rem += remainder_coefficient(j, z) * scale;
        scale *= inv_tau;
    }
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    let value = 2.0 * sum + sign * tau.powf(-0.5) * rem;
    // Next-term heuristic: coefficient magnitudes are O(1), O(0.1), ...
    let precision_estimate = tau.powf(-0.5) * scale * 0.2;
    ZEval {
        value,
        precision_estimate,
    }
}

/// C_j(z) for j = 0..=3 in terms of derivatives of F.
fn remainder_coefficient(j: usize, z: f64) -> f64 {
    let f = &*F_MODEL;
    const PI2: f64 = PI * PI;
    match j {
        0 => f.deriv(0, z),
        1 => -f.deriv(3, z) / (12.0 * PI2),
        2 => f.deriv(2, z) / (16.0 * PI2) + f.deriv(6, z) / (288.0 * PI2 * PI2),
        3 => {
            -f.deriv(1, z) / (32.0 * PI2)
                - f.deriv(5, z) / (120.0 * PI2 * PI2)
                - f.deriv(9, z) / (10368.0 * PI2 * PI2 * PI2)
        }
        _ => unreachable!("at most four correction terms are supported"),
    }
}

/// Cached ln n and 1/√n for the main sum (n stays below ~√(t_max/2π)).
struct MainSumTable {
    ln: Vec<f64>,
    inv_sqrt: Vec<f64>,
}

impl MainSumTable {
    fn with_capacity(n: usize) -> Self {
        let ln = (0..=n).map(|k| (k.max(1) as f64).ln()).collect();
        let inv_sqrt = (0..=n).map(|k| 1.0 / (k.max(1) as f64).sqrt()).collect();
        Self { ln, inv_sqrt }
    }

    #[inline]
    fn ln(&self, n: usize) -> f64 {
        if n < self.ln.len() {
            self.ln[n]
        } else {
            (n as f64).ln()
        }
    }

    #[inline]
    fn inv_sqrt(&self, n: usize) -> f64 {
        if n < self.inv_sqrt.len() {
            self.inv_sqrt[n]
        } else {
            1.0 / (n as f64).sqrt()
        }
    }
}

static LN_TABLE: LazyLock<MainSumTable> = LazyLock::new(|| MainSumTable::with_capacity(4096));

/// Taylor model of F about 0 together with its derivative polynomials.
struct FModel {
    /// derivs[k][i] is the coefficient of z^i in F^{(k)}.
    derivs: Vec<Vec<f64>>,
}

impl FModel {
    fn build() -> Self {
        // c_n = (1/(2π R^n)) ∫ F(R e^{iθ}) e^{-inθ} dθ on |z| = R = 2, where
        // F is entire; trapezoid quadrature is spectrally accurate here.
        const R: f64 = 2.0;
        const NODES: usize = 1024;
        let mut samples = Vec::with_capacity(NODES);
        for k in 0..NODES {
            let ang = TWO_PI * k as f64 / NODES as f64;
            let zc = Complex64::from_polar(R, ang);
            let num = (PI * (zc * zc / 2.0 + 0.375)).cos();
            let den = (PI * zc).cos();
            samples.push(num / den);
        }
        let mut coeffs = vec![0.0f64; F_DEGREE + 1];
        for (n, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, s) in samples.iter().enumerate() {
                let ang = TWO_PI * (k * n % NODES) as f64 / NODES as f64;
                acc += s * Complex64::from_polar(1.0, -ang);
            }
            *c = acc.re / (NODES as f64 * R.powi(n as i32));
        }
        let mut derivs = Vec::with_capacity(F_MAX_DERIV + 1);
        derivs.push(coeffs);
        for k in 0..F_MAX_DERIV {
            let prev = &derivs[k];
            let next: Vec<f64> = (1..prev.len()).map(|i| prev[i] * i as f64).collect();
            derivs.push(next);
        }
        Self { derivs }
    }

    #[inline]
    fn deriv(&self, k: usize, z: f64) -> f64 {
        let poly = &self.derivs[k];
        let mut acc = 0.0;
        for &c in poly.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

static F_MODEL: LazyLock<FModel> = LazyLock::new(FModel::build);

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: ZFunctionConfig = ZFunctionConfig {
        term_budget: 4,
        refine_tolerance: 1e-9,
    };

    // Oracle values computed with an independent multiprecision library.
    #[test]
    fn z_reference_values() {
        assert!((hardy_z(20.0, &CFG) - 1.1478424121851973).abs() < 1e-10);
        assert!((hardy_z(100.0, &CFG) - 2.6926970566644635).abs() < 1e-10);
        assert!((hardy_z(1000.5, &CFG) - 2.5492611355555556).abs() < 1e-7);
        assert!((hardy_z(5000.25, &CFG) - 0.0521005439143593).abs() < 1e-8);
        assert!((hardy_z(74920.5, &CFG) - 3.3329338672158618).abs() < 1e-8);
    }

    #[test]
    fn z_sign_change_at_first_zero() {
        assert!(hardy_z(14.13, &CFG) < 0.0);
        assert!(hardy_z(14.14, &CFG) > 0.0);
    }

    #[test]
    fn z_is_even_by_shared_code_path() {
        for &t in &[1.5, 14.2, 333.3, 1234.5] {
            assert_eq!(hardy_z(t, &CFG), hardy_z(-t, &CFG));
        }
    }

    #[test]
    fn z_rejects_below_validity() {
        assert!(hardy_z_checked(0.5, &CFG).is_err());
    }

    #[test]
    fn correction_order_improves_accuracy_across_the_switch() {
        // Compare RS against the Euler–Maclaurin path a hair under the switch.
        let t = 399.5;
        let em = {
            let z = hurwitz_zeta(Complex64::new(0.5, t), 1.0);
            (Complex64::new(0.0, theta_unchecked(t)).exp() * z).re
        };
        let mut last = f64::INFINITY;
        for terms in 1..=4 {
            let rs = riemann_siegel(t, terms);
            let err = (rs.value - em).abs();
            assert!(
                err < last * 0.9 || err < 1e-9,
                "terms={terms}: err {err} did not improve on {last}"
            );
            last = err;
        }
        assert!(last < 5e-8, "four-term RS error too large: {last}");
    }

    #[test]
    fn f_model_matches_taylor_oracle() {
        let f = &*F_MODEL;
        // Leading Taylor coefficients of F, from the multiprecision oracle.
        let expect = [
            (0, 0.38268343236508977),
            (2, 0.43724046807752045),
            (4, 0.13237657548034352),
            (6, -0.013605026047674189),
            (8, -0.013567621970103581),
        ];
        for (i, c) in expect {
            assert!(
                (f.derivs[0][i] - c).abs() < 1e-12,
                "coefficient {i}: {} vs {c}",
                f.derivs[0][i]
            );
        }
        // Spot values including the removable singularity at z = 1/2,
        // where the limit is 1/2.
        assert!((f.deriv(0, 0.3) - 0.42309650709152265).abs() < 1e-12);
        assert!((f.deriv(3, 0.3) - 0.89770571417333453).abs() < 1e-10);
        assert!((f.deriv(0, 0.5) - 0.5).abs() < 1e-12);
        assert!((f.deriv(9, 0.97) - 45305.717489819289).abs() < 1e-4 * 45305.7);
    }
}

