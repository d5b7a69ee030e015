//! One-dimensional oscillatory integrals `∫_I e^{iλf(s)} g(s) ds` and the
//! van der Corput statistic `sup_λ λ^{1/M} |∫|`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use restrikt_core::UnivariatePolynomial;

use crate::quadrature::{integrate_panels, GaussLegendre, PanelConfig};
use crate::surface::bump;
use crate::Verdict;

type Poly1 = UnivariatePolynomial<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Amplitude1d {
    One,
    Bump { center: f64, radius: f64 },
}

impl Amplitude1d {
    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            Amplitude1d::One => 1.0,
            Amplitude1d::Bump { center, radius } => bump(s - center, radius),
        }
    }

    /// `‖g‖_∞ + ‖g'‖_{L¹}`, over any interval containing the support.
    pub fn norm(&self) -> f64 {
        match self {
            Amplitude1d::One => 1.0,
            // Rises from 0 to 1 and falls back.
            Amplitude1d::Bump { .. } => 3.0,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VdcError {
    #[error("|f^({order})| drops to {min} < 1 on the sample grid")]
    HypothesisUnverified { order: usize, min: f64 },
    #[error("empty interval")]
    EmptyInterval,
}

/// `∫_a^b e^{iλf(s)} g(s) ds`.
pub fn oscillatory_integral_1d(
    f: &Poly1,
    g: Amplitude1d,
    interval: (f64, f64),
    lambda: f64,
) -> Complex64 {
    let df = f.derivative();
    let rule = GaussLegendre::<f64>::new(12);
    let config = PanelConfig {
        initial_panels: 16,
        ..PanelConfig::default()
    };
    let (a, b) = match g {
        Amplitude1d::One => interval,
        Amplitude1d::Bump { center, radius } => (
            interval.0.max(center - radius),
            interval.1.min(center + radius),
        ),
    };
    if a >= b {
        return Complex64::new(0.0, 0.0);
    }
    integrate_panels(
        &rule,
        |s| {
            let w = g.eval(s);
            if w == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar(w, lambda * f.eval_f(s))
            }
        },
        |s| lambda * df.eval_f(s).abs(),
        a,
        b,
        &config,
    )
    .value
}

/// `5·2^{M−1} − 2`, the constant in `|∫_a^b e^{iλf}| ≤ c_M λ^{−1/M}` when
/// `|f^{(M)}| ≥ 1` (and `f'` monotone for `M = 1`).
pub fn vdc_constant(order: usize) -> f64 {
    5.0 * 2f64.powi(order as i32 - 1) - 2.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VdcReport {
    pub order: usize,
    pub lambdas: Vec<f64>,
    /// `λ^{1/M} |∫|` per λ.
    pub scaled: Vec<f64>,
    pub statistic: f64,
    pub bound: f64,
    pub verdict: Verdict,
}

pub fn van_der_corput_check(
    f: &Poly1,
    order: usize,
    g: Amplitude1d,
    interval: (f64, f64),
    lambdas: &[f64],
) -> Result<VdcReport, VdcError> {
    let (a, b) = interval;
    if a >= b {
        return Err(VdcError::EmptyInterval);
    }
    let dm = f.nth_derivative(order);
    let min = (0..=1000)
        .map(|k| dm.eval_f(a + (b - a) * k as f64 / 1000.0).abs())
        .fold(f64::INFINITY, f64::min);
    if min < 1.0 {
        return Err(VdcError::HypothesisUnverified { order, min });
    }
    let scaled: Vec<f64> = lambdas
        .par_iter()
        .map(|&l| l.powf(1.0 / order as f64) * oscillatory_integral_1d(f, g, interval, l).norm())
        .collect();
    let statistic = scaled.iter().copied().fold(0.0, f64::max);
    let bound = vdc_constant(order) * g.norm();
    Ok(VdcReport {
        order,
        lambdas: lambdas.to_vec(),
        statistic,
        bound,
        verdict: if statistic <= bound {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        scaled,
    })
}
