//! `J(ξ) = ∫ e^{i(ξ1 x1 + ξ2 x2 + ξ3 φ(x))} η(x) dx` for polynomial phases.
//!
//! When the total phase is at most quadratic in `x2` and `η` is a bump in
//! `x1` times a Gaussian in `x2`, the `x2`-integral is done in closed form
//! and only the outer integral is numerical. Everything else goes through
//! tensor panels on `[-ρ, ρ]²`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use restrikt_core::{FloatPolynomial, LatticePoint, UnivariatePolynomial};

use crate::quadrature::{integrate_panels, GaussLegendre, PanelConfig};

type Poly1 = UnivariatePolynomial<f64>;

/// `exp(1 − 1/(1 − (x/ρ)²))` on `|x| < ρ`, zero outside; `bump(0) = 1`.
pub fn bump(x: f64, rho: f64) -> f64 {
    let r = (x / rho) * (x / rho);
    if r >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r)).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Amplitude {
    /// `bump(x1) · exp(−x2²/σ²)`.
    BumpGaussian { sigma: f64 },
    /// `bump(x1) · bump(x2)`.
    TensorBump,
}

impl Amplitude {
    pub fn eval(&self, x1: f64, x2: f64, rho: f64) -> f64 {
        match *self {
            Amplitude::BumpGaussian { sigma } => {
                bump(x1, rho) * (-(x2 / sigma) * (x2 / sigma)).exp()
            }
            Amplitude::TensorBump => bump(x1, rho) * bump(x2, rho),
        }
    }
}

impl Default for Amplitude {
    fn default() -> Self {
        Amplitude::BumpGaussian { sigma: 0.25 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub panel_phase_budget: f64,
    pub max_subdivisions: u32,
    pub max_panels: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// The amplitude is supported in `[-ρ, ρ]` in `x1` (and in `x2` for the
    /// tensor bump).
    pub rho: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            panel_phase_budget: std::f64::consts::FRAC_PI_2,
            max_subdivisions: 40,
            max_panels: 4_000_000,
            abs_tol: 1e-10,
            rel_tol: 1e-6,
            rho: 0.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    ClosedFormInner,
    TensorPanels,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfaceIntegral {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// `|J(budget) − J(budget/2)|`.
    pub error_estimate: f64,
    pub panels: usize,
    pub method: Method,
    pub cap_hit: bool,
    pub converged: bool,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum QuadratureError {
    #[error("subdivision cap hit (value {value}, error estimate {error_estimate})")]
    SubdivisionCapHit {
        value: Complex64,
        error_estimate: f64,
    },
    #[error("lambda must be finite and non-negative")]
    InvalidLambda,
}

/// `d1 x1 + d2 x2 + d3 φ`.
pub fn total_phase(phi: &FloatPolynomial, xi_dir: [f64; 3]) -> FloatPolynomial {
    let mut p = phi.scale(&xi_dir[2]);
    p.add_term(LatticePoint::new(1, 0), xi_dir[0]);
    p.add_term(LatticePoint::new(0, 1), xi_dir[1]);
    p
}

/// Evaluates `J(λ·xi_dir)`; fails with the value attached if the panel cap
/// was hit.
pub fn oscillatory_surface_integral(
    phi: &FloatPolynomial,
    amplitude: Amplitude,
    lambda: f64,
    xi_dir: [f64; 3],
    config: &QuadratureConfig,
) -> Result<SurfaceIntegral, QuadratureError> {
    let r = evaluate(phi, amplitude, lambda, xi_dir, config)?;
    if r.cap_hit {
        return Err(QuadratureError::SubdivisionCapHit {
            value: r.value,
            error_estimate: r.error_estimate,
        });
    }
    Ok(r)
}

/// Like [`oscillatory_surface_integral`], but returns capped results with
/// `cap_hit` set instead of failing.
pub fn evaluate(
    phi: &FloatPolynomial,
    amplitude: Amplitude,
    lambda: f64,
    xi_dir: [f64; 3],
    config: &QuadratureConfig,
) -> Result<SurfaceIntegral, QuadratureError> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(QuadratureError::InvalidLambda);
    }
    let phase = total_phase(phi, xi_dir);
    let closed_form = matches!(amplitude, Amplitude::BumpGaussian { .. })
        && phase.degree_in_x2().is_none_or(|d| d <= 2);
    let run = |budget: f64| match (closed_form, amplitude) {
        (true, Amplitude::BumpGaussian { sigma }) => {
            closed_form_inner(&phase, sigma, lambda, budget, config)
        }
        _ => tensor_panels(&phase, amplitude, lambda, budget, config),
    };
    let (coarse, _, cap1) = run(config.panel_phase_budget);
    let (fine, panels, cap2) = run(config.panel_phase_budget / 2.0);
    let error_estimate = (fine - coarse).norm();
    Ok(SurfaceIntegral {
        value: fine,
        error_estimate,
        panels,
        method: if closed_form {
            Method::ClosedFormInner
        } else {
            Method::TensorPanels
        },
        cap_hit: cap1 || cap2,
        converged: error_estimate <= config.abs_tol + config.rel_tol * fine.norm(),
    })
}

fn x2_coefficients(phase: &FloatPolynomial) -> [Poly1; 3] {
    let mut cs = phase.coefficients_in_x2();
    cs.resize(3, Poly1::zero());
    [cs[0].clone(), cs[1].clone(), cs[2].clone()]
}

/// With `P = a x2² + b x2 + c` and weight `exp(−x2²/σ²)`,
/// `∫ e^{iλP} dx2 = sqrt(π/D) · exp(iλc − λ²b²/(4D))`, `D = σ⁻² − iλa`.
fn closed_form_inner(
    phase: &FloatPolynomial,
    sigma: f64,
    lambda: f64,
    budget: f64,
    config: &QuadratureConfig,
) -> (Complex64, usize, bool) {
    let [c, b, a] = x2_coefficients(phase);
    let (da, db, dc) = (a.derivative(), b.derivative(), c.derivative());
    let i = Complex64::i();
    let s2 = 1.0 / (sigma * sigma);
    let pi = std::f64::consts::PI;
    let rho = config.rho;
    let f = |x: f64| {
        let w = bump(x, rho);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let d = Complex64::new(s2, -lambda * a.eval_f(x));
        let bx = lambda * b.eval_f(x);
        let e = i * lambda * c.eval_f(x) - bx * bx / (4.0 * d);
        (Complex64::new(pi, 0.0) / d).sqrt() * e.exp() * w
    };
    let rate = |x: f64| {
        let d = Complex64::new(s2, -lambda * a.eval_f(x));
        let dd = Complex64::new(0.0, -lambda * da.eval_f(x));
        let bx = lambda * b.eval_f(x);
        let dbx = lambda * db.eval_f(x);
        let de = i * lambda * dc.eval_f(x) - (2.0 * bx * dbx * d - bx * bx * dd) / (4.0 * d * d);
        de.norm() + dd.norm() / (2.0 * d.norm())
    };
    let rule = GaussLegendre::<f64>::new(12);
    let panel = PanelConfig {
        panel_phase_budget: budget,
        max_subdivisions: config.max_subdivisions,
        max_panels: config.max_panels,
        initial_panels: 256,
    };
    let r = integrate_panels(&rule, f, rate, -rho, rho, &panel);
    (r.value, r.panels, r.cap_hit)
}

fn tensor_panels(
    phase: &FloatPolynomial,
    amplitude: Amplitude,
    lambda: f64,
    budget: f64,
    config: &QuadratureConfig,
) -> (Complex64, usize, bool) {
    let rho = config.rho;
    let y_extent = match amplitude {
        // exp(−64) is below the tolerances in use.
        Amplitude::BumpGaussian { sigma } => 8.0 * sigma,
        Amplitude::TensorBump => rho,
    };
    let d1 = phase_derivative(phase, 0);
    let d2 = phase_derivative(phase, 1);
    let rule = GaussLegendre::<f64>::new(12);
    let rate = |x1: f64, x2: f64| lambda * d1.eval_f64(x1, x2).hypot(d2.eval_f64(x1, x2));
    let mut stack = Vec::new();
    let n0 = 16;
    let (hx, hy) = (2.0 * rho / n0 as f64, 2.0 * y_extent / n0 as f64);
    for i in (0..n0).rev() {
        for j in (0..n0).rev() {
            let x0 = -rho + hx * i as f64;
            let y0 = -y_extent + hy * j as f64;
            stack.push((x0, x0 + hx, y0, y0 + hy, 0u32));
        }
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut panels = 0;
    let mut cap_hit = false;
    while let Some((xa, xb, ya, yb, depth)) = stack.pop() {
        let (xm, ym) = ((xa + xb) / 2.0, (ya + yb) / 2.0);
        let size = (xb - xa).max(yb - ya);
        let peak = [(xa, ya), (xa, yb), (xb, ya), (xb, yb), (xm, ym)]
            .iter()
            .map(|&(x, y)| rate(x, y))
            .fold(0.0, f64::max);
        let variation = peak * size;
        let can_split = depth < config.max_subdivisions && panels + stack.len() < config.max_panels;
        if variation > budget && can_split {
            stack.push((xm, xb, ym, yb, depth + 1));
            stack.push((xa, xm, ym, yb, depth + 1));
            stack.push((xm, xb, ya, ym, depth + 1));
            stack.push((xa, xm, ya, ym, depth + 1));
            continue;
        }
        cap_hit |= variation > budget;
        let inner = |x1: f64| {
            rule.integrate_complex(
                |x2| {
                    let w = amplitude.eval(x1, x2, rho);
                    if w == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::from_polar(w, lambda * phase.eval_f64(x1, x2))
                    }
                },
                ya,
                yb,
            )
        };
        value += rule.integrate_complex(inner, xa, xb);
        panels += 1;
    }
    (value, panels, cap_hit)
}

/// `∂P/∂x1` (`var = 0`) or `∂P/∂x2` (`var = 1`).
fn phase_derivative(p: &FloatPolynomial, var: u8) -> FloatPolynomial {
    FloatPolynomial::from_terms(p.terms().filter_map(|(t, &c)| {
        let e = if var == 0 { t.t1 } else { t.t2 };
        (e > 0).then(|| {
            let pt = if var == 0 {
                LatticePoint::new(t.t1 - 1, t.t2)
            } else {
                LatticePoint::new(t.t1, t.t2 - 1)
            };
            (pt, c * e as f64)
        })
    }))
}

/// `∫ bump(x, ρ) dx`, by the same panel rule.
pub fn bump_mass(rho: f64) -> f64 {
    let rule = GaussLegendre::<f64>::new(12);
    let n = 64;
    let h = 2.0 * rho / n as f64;
    (0..n)
        .map(|k| {
            rule.integrate(
                |x| bump(x, rho),
                -rho + h * k as f64,
                -rho + h * (k + 1) as f64,
            )
        })
        .sum()
}

/// `∫ η dx` for the given amplitude.
pub fn amplitude_mass(amplitude: Amplitude, rho: f64) -> f64 {
    match amplitude {
        Amplitude::BumpGaussian { sigma } => bump_mass(rho) * sigma * std::f64::consts::PI.sqrt(),
        Amplitude::TensorBump => bump_mass(rho).powi(2),
    }
}
