//! Scaling collapse of `J(λ, u) = ∫ e^{iλ(b(t)t³ − ut)} a(t) dt`: at fixed
//! `v = λ^{2/3} u`, `λ^{1/3} J` converges as `λ → ∞`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use restrikt_core::UnivariatePolynomial;

use crate::vdc::{oscillatory_integral_1d, Amplitude1d};
use crate::Verdict;

type Poly1 = UnivariatePolynomial<f64>;

/// Number of top grid points whose successive differences must decrease.
pub const TREND_POINTS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AiryError {
    #[error("b vanishes on the support of the amplitude (min |b| = {0})")]
    DegenerateB(f64),
}

/// `λ^{1/3} J(λ, v λ^{−2/3})` with `a` the bump of radius `radius`.
pub fn scaled_airy_integral(b: &Poly1, radius: f64, lambda: f64, v: f64) -> Complex64 {
    let u = v * lambda.powf(-2.0 / 3.0);
    let mut phase = b.mul(&Poly1::monomial(1.0, 3));
    phase = phase.sub(&Poly1::monomial(u, 1));
    let g = Amplitude1d::Bump {
        center: 0.0,
        radius,
    };
    lambda.cbrt() * oscillatory_integral_1d(&phase, g, (-radius, radius), lambda)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollapseRow {
    pub v: f64,
    /// `|λ^{1/3}J|` per λ.
    pub values: Vec<f64>,
    /// `|G(λ_{k+1}) − G(λ_k)|` for consecutive grid points.
    pub spreads: Vec<f64>,
    /// Whether the last `TREND_POINTS − 1` spreads strictly decrease.
    pub decreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AiryReport {
    pub lambdas: Vec<f64>,
    pub rows: Vec<CollapseRow>,
    /// Largest final spread over the `v` grid.
    pub max_deviation: f64,
    pub verdict: Verdict,
}

pub fn airy_collapse_check(
    b: &Poly1,
    radius: f64,
    lambdas: &[f64],
    v_grid: &[f64],
) -> Result<AiryReport, AiryError> {
    let min_b = (0..=200)
        .map(|k| b.eval_f(-radius + 2.0 * radius * k as f64 / 200.0).abs())
        .fold(f64::INFINITY, f64::min);
    if min_b == 0.0 || !min_b.is_finite() {
        return Err(AiryError::DegenerateB(min_b));
    }
    let rows: Vec<CollapseRow> = v_grid
        .iter()
        .map(|&v| {
            let g: Vec<Complex64> = lambdas
                .par_iter()
                .map(|&l| scaled_airy_integral(b, radius, l, v))
                .collect();
            let spreads: Vec<f64> = g.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
            let tail = &spreads[spreads.len().saturating_sub(TREND_POINTS - 1)..];
            CollapseRow {
                v,
                values: g.iter().map(|z| z.norm()).collect(),
                decreasing: tail.windows(2).all(|w| w[1] < w[0]),
                spreads,
            }
        })
        .collect();
    let max_deviation = rows
        .iter()
        .filter_map(|r| r.spreads.last().copied())
        .fold(0.0, f64::max);
    let well_posed = lambdas.len() >= TREND_POINTS;
    let verdict = if !well_posed {
        Verdict::Inconclusive
    } else if rows.iter().all(|r| r.decreasing) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(AiryReport {
        lambdas: lambdas.to_vec(),
        rows,
        max_deviation,
        verdict,
    })
}

/// `∫_ℝ e^{it³} dt = (2/3) Γ(1/3) cos(π/6)`.
pub fn airy_limit() -> f64 {
    // Γ(1/3)
    let gamma_third = 2.678_938_534_707_747_6;
    2.0 / 3.0 * gamma_third * (std::f64::consts::PI / 6.0).cos()
}
