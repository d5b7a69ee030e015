//! Gauss–Legendre rules and phase-budgeted adaptive panel integration.

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use serde::Serialize;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre<F> {
    nodes: Vec<F>,
    weights: Vec<F>,
}

fn cast<F: Float>(x: f64) -> F {
    F::from(x).expect("representable constant")
}

impl<F: Float + FloatConst> GaussLegendre<F> {
    /// Nodes by Newton iteration on `P_n` from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![F::zero(); n];
        let mut weights = vec![F::zero(); n];
        let nf = cast::<F>(n as f64);
        let eps = F::epsilon() * cast(4.0);
        for i in 0..n.div_ceil(2) {
            let k = cast::<F>(i as f64);
            let mut x = (F::PI() * (k + cast(0.75)) / (nf + cast(0.5))).cos();
            let mut dp = F::one();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= eps {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != F::zero() {
                dp = d;
            }
            let w = cast::<F>(2.0) / ((F::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = F::zero();
        }
        Self { nodes, weights }
    }
}

impl<F: Float> GaussLegendre<F> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[F] {
        &self.nodes
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(F) -> F, a: F, b: F) -> F {
        let half = (b - a) / cast(2.0);
        let mid = (a + b) / cast(2.0);
        let sum = self
            .nodes
            .iter()
            .zip(&self.weights)
            .fold(F::zero(), |acc, (&x, &w)| acc + w * f(mid + half * x));
        sum * half
    }

    pub fn integrate_complex(&self, f: impl Fn(F) -> Complex<F>, a: F, b: F) -> Complex<F> {
        let half = (b - a) / cast(2.0);
        let mid = (a + b) / cast(2.0);
        let sum = self
            .nodes
            .iter()
            .zip(&self.weights)
            .fold(Complex::new(F::zero(), F::zero()), |acc, (&x, &w)| {
                acc + f(mid + half * x) * w
            });
        sum * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre<F: Float>(n: usize, x: F) -> (F, F) {
    let mut p0 = F::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = cast::<F>(k as f64);
        let p2 = ((kf + kf - F::one()) * x * p1 - (kf - F::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (F::one(), F::zero());
    }
    let nf = cast::<F>(n as f64);
    (p1, nf * (x * p1 - p0) / (x * x - F::one()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PanelConfig<F> {
    /// Largest allowed phase change across one panel, in radians.
    pub panel_phase_budget: F,
    /// Bisection depth limit below the initial panels.
    pub max_subdivisions: u32,
    /// Total panel limit.
    pub max_panels: usize,
    pub initial_panels: usize,
}

impl Default for PanelConfig<f64> {
    fn default() -> Self {
        Self {
            panel_phase_budget: std::f64::consts::FRAC_PI_2,
            max_subdivisions: 40,
            max_panels: 4_000_000,
            initial_panels: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PanelIntegral<F> {
    pub value: Complex<F>,
    pub panels: usize,
    pub cap_hit: bool,
}

/// Integrates `f` over `[a, b]`, bisecting panels until
/// `rate(x) · width ≤ budget` at both ends and the midpoint.
pub fn integrate_panels<F: Float>(
    rule: &GaussLegendre<F>,
    f: impl Fn(F) -> Complex<F>,
    rate: impl Fn(F) -> F,
    a: F,
    b: F,
    config: &PanelConfig<F>,
) -> PanelIntegral<F> {
    let n0 = config.initial_panels.max(1);
    let width = (b - a) / cast(n0 as f64);
    let mut stack: Vec<(F, F, u32)> = (0..n0)
        .rev()
        .map(|i| {
            let lo = a + width * cast(i as f64);
            (lo, if i + 1 == n0 { b } else { lo + width }, 0)
        })
        .collect();
    let mut value = Complex::new(F::zero(), F::zero());
    let mut panels = 0;
    let mut cap_hit = false;
    while let Some((lo, hi, depth)) = stack.pop() {
        let w = hi - lo;
        let mid = (lo + hi) / cast(2.0);
        let variation = rate(lo).max(rate(mid)).max(rate(hi)) * w;
        let can_split = depth < config.max_subdivisions && panels + stack.len() < config.max_panels;
        if variation > config.panel_phase_budget && can_split {
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
            continue;
        }
        if variation > config.panel_phase_budget {
            cap_hit = true;
        }
        value = value + rule.integrate_complex(&f, lo, hi);
        panels += 1;
    }
    PanelIntegral {
        value,
        panels,
        cap_hit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_low_degree() {
        let rule = GaussLegendre::<f64>::new(12);
        for k in 0..24 {
            let got = rule.integrate(|x| x.powi(k), -1.0, 1.0);
            let want = if k % 2 == 0 {
                2.0 / (k as f64 + 1.0)
            } else {
                0.0
            };
            assert!((got - want).abs() < 1e-14, "x^{k}: {got} vs {want}");
        }
        let sum: f64 = rule.weights().iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn generic_over_precision() {
        let rule = GaussLegendre::<f32>::new(8);
        let got = rule.integrate(|x| x.exp(), 0.0, 1.0);
        assert!((got - (std::f32::consts::E - 1.0)).abs() < 1e-5);
    }
}
