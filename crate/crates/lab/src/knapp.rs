//! Knapp boxes `D_ε = {|x1| ≤ ε^{κ̃1}, |x2 − ψ(x1)| ≤ ε^{κ̃2}}`: the phase
//! must stay `O(ε)` on them for the scaling argument to apply.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use restrikt_core::analysis::Analysis;
use restrikt_core::conditions::{knapp_exponent_comparison, ExponentPair};
use restrikt_core::newton::Weight;
use restrikt_core::rational::to_f64;
use restrikt_core::Rational;

use crate::Verdict;

pub const DEFAULT_GRID: usize = 201;
/// `|x1| ≤ ε^δ` for weights with `κ̃1 = 0`.
pub const HORIZONTAL_DELTA: f64 = 0.01;
pub const DEFAULT_BOUND: f64 = 10.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnappError {
    #[error("weight {0} does not support the augmented polyhedron")]
    WeightNotSupporting(Box<Weight>),
    #[error("Knapp boxes are only defined for non-adapted phases")]
    AdaptedInput,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentCheck {
    pub q: ExponentPair,
    /// `(1+m)κ̃1 x + y` against `(κ̃1+κ̃2)/2`.
    #[serde(serialize_with = "ser_ordering")]
    pub order: Ordering,
}

fn ser_ordering<S: serde::Serializer>(o: &Ordering, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "Less",
        Ordering::Equal => "Equal",
        Ordering::Greater => "Greater",
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnappReport {
    pub weight: Weight,
    pub eps_grid: Vec<f64>,
    pub sup_phi_over_eps: Vec<f64>,
    pub max_ratio: f64,
    pub exponent_check: Option<ExponentCheck>,
    pub verdict: Verdict,
}

/// Samples `D_ε` on a `grid × grid` lattice for each `ε = 2^k`.
pub fn knapp_box_check(
    analysis: &Analysis,
    weight: &Weight,
    eps_exponents: &[i32],
    grid: usize,
    q: Option<&ExponentPair>,
) -> Result<KnappReport, KnappError> {
    let aug = analysis
        .augmented
        .as_ref()
        .ok_or(KnappError::AdaptedInput)?;
    let (k1, k2) = weight
        .finite()
        .ok_or_else(|| KnappError::WeightNotSupporting(Box::new(weight.clone())))?;
    if !aug.supports(k1, k2) {
        return Err(KnappError::WeightNotSupporting(Box::new(weight.clone())));
    }
    let phi = analysis.working.to_f64();
    let psi = analysis.psi().psi().to_f64();
    let e1 = if k1 == &Rational::from_integer(0.into()) {
        HORIZONTAL_DELTA
    } else {
        to_f64(k1)
    };
    let e2 = to_f64(k2);
    let grid = grid.max(2);
    let eps_grid: Vec<f64> = eps_exponents.iter().map(|&k| 2f64.powi(k)).collect();
    let sup_phi_over_eps: Vec<f64> = eps_grid
        .par_iter()
        .map(|&eps| {
            let (r1, r2) = (eps.powf(e1), eps.powf(e2));
            let mut sup = 0f64;
            for i in 0..grid {
                let y1 = -r1 + 2.0 * r1 * i as f64 / (grid - 1) as f64;
                let shift = psi.eval_f(y1);
                for j in 0..grid {
                    let y2 = -r2 + 2.0 * r2 * j as f64 / (grid - 1) as f64;
                    sup = sup.max(phi.eval_f64(y1, y2 + shift).abs());
                }
            }
            sup / eps
        })
        .collect();
    let max_ratio = sup_phi_over_eps.iter().copied().fold(0.0, f64::max);
    let exponent_check = q.map(|q| ExponentCheck {
        q: q.clone(),
        order: knapp_exponent_comparison(aug.m(), k1, k2, q),
    });
    Ok(KnappReport {
        weight: weight.clone(),
        eps_grid,
        verdict: if max_ratio <= DEFAULT_BOUND {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        sup_phi_over_eps,
        max_ratio,
        exponent_check,
    })
}

/// `κ` and every finite edge weight of the augmented polyhedron.
pub fn knapp_weights(analysis: &Analysis) -> Vec<Weight> {
    let Some(aug) = &analysis.augmented else {
        return Vec::new();
    };
    let (k1, k2) = aug.kappa();
    let mut out = vec![Weight::new(k1.clone(), k2.clone())];
    out.extend(
        aug.edge_weights()
            .into_iter()
            .filter(|(_, w)| w.finite().is_some())
            .map(|(_, w)| w),
    );
    out
}
