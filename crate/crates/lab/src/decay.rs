//! Log–log fits of `|J(λ)|` against the predicted rate `λ^{−1/h} (log λ)^ν`.

use rayon::prelude::*;
use serde::Serialize;

use restrikt_core::FloatPolynomial;

use crate::surface::{evaluate, Amplitude, QuadratureConfig, QuadratureError, SurfaceIntegral};
use crate::Verdict;

/// Number of top grid points used in the fit.
pub const FIT_POINTS: usize = 6;
pub const MIN_SAMPLES: usize = 8;
pub const MIN_R2: f64 = 0.98;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub lambdas: Vec<f64>,
    pub values: Vec<f64>,
    /// Least-squares slope of `log|J|` on `log λ` over the fit window.
    pub slope: f64,
    /// Same, after subtracting `ν · log log λ`.
    pub log_corrected_slope: f64,
    pub nu: u8,
    /// Of the corrected fit.
    pub r2: f64,
}

/// `(slope, intercept, r²)` of the least-squares line through `(x, y)`.
pub fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, my - slope * mx, r2)
}

/// Fits the top [`FIT_POINTS`] samples; `None` with fewer than
/// [`MIN_SAMPLES`] samples.
pub fn decay_exponent_fit(lambdas: &[f64], values: &[f64], nu: u8) -> Option<DecayFit> {
    if lambdas.len() < MIN_SAMPLES || lambdas.len() != values.len() {
        return None;
    }
    let start = lambdas.len() - FIT_POINTS;
    let x: Vec<f64> = lambdas[start..].iter().map(|l| l.ln()).collect();
    let y: Vec<f64> = values[start..].iter().map(|v| v.ln()).collect();
    let (slope, _, _) = least_squares(&x, &y);
    let yc: Vec<f64> = y
        .iter()
        .zip(&x)
        .map(|(v, l)| v - f64::from(nu) * l.ln())
        .collect();
    let (log_corrected_slope, _, r2) = least_squares(&x, &yc);
    Some(DecayFit {
        lambdas: lambdas.to_vec(),
        values: values.to_vec(),
        slope,
        log_corrected_slope,
        nu,
        r2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayVerdict {
    pub verdict: Verdict,
    pub expected_slope: f64,
    pub deviation: f64,
    pub reason: Option<String>,
}

impl DecayFit {
    /// PASS iff the corrected slope is within `tol` of `−1/h`; a fit with
    /// `r² <` [`MIN_R2`] is inconclusive.
    pub fn compare_to(&self, h: f64, tol: f64) -> DecayVerdict {
        let expected_slope = -1.0 / h;
        let deviation = (self.log_corrected_slope - expected_slope).abs();
        let (verdict, reason) = if self.r2 < MIN_R2 {
            (
                Verdict::Inconclusive,
                Some(format!("PoorFit: r2 = {:.4}", self.r2)),
            )
        } else if deviation <= tol {
            (Verdict::Pass, None)
        } else {
            (Verdict::Fail, None)
        };
        DecayVerdict {
            verdict,
            expected_slope,
            deviation,
            reason,
        }
    }
}

/// How a phase is fed to the quadrature.
#[derive(Clone, Debug, PartialEq)]
pub struct PreparedPhase {
    pub phase: FloatPolynomial,
    pub amplitude: Amplitude,
    /// Whether the variables were exchanged to reach the closed-form path.
    pub swapped: bool,
}

/// Picks the closed-form inner integral whenever some variable appears at
/// most quadratically; the decay rate does not depend on the amplitude.
pub fn prepare_phase(phi: &FloatPolynomial) -> PreparedPhase {
    let quadratic = |p: &FloatPolynomial| p.degree_in_x2().is_none_or(|d| d <= 2);
    if quadratic(phi) {
        PreparedPhase {
            phase: phi.clone(),
            amplitude: Amplitude::default(),
            swapped: false,
        }
    } else if quadratic(&phi.swap_variables()) {
        PreparedPhase {
            phase: phi.swap_variables(),
            amplitude: Amplitude::default(),
            swapped: true,
        }
    } else {
        PreparedPhase {
            phase: phi.clone(),
            amplitude: Amplitude::TensorBump,
            swapped: false,
        }
    }
}

/// `J(2^k · (0, 0, 1))` for each `k`, in parallel; results keep grid order.
pub fn decay_sweep(
    prepared: &PreparedPhase,
    exponents: &[i32],
    config: &QuadratureConfig,
) -> Vec<Result<SurfaceIntegral, QuadratureError>> {
    exponents
        .par_iter()
        .map(|&k| {
            evaluate(
                &prepared.phase,
                prepared.amplitude,
                2f64.powi(k),
                [0.0, 0.0, 1.0],
                config,
            )
        })
        .collect()
}
