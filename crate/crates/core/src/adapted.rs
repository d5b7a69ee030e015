//! Adaptedness, Varchenko's shear iterations and the heights `h`, `h_lin`, `ν`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::newton::{
    canonical_orientation, FaceKind, NewtonError, NewtonPolyhedron, PrincipalFaceInfo,
};
use crate::poly::{apply_shear, check_origin_conditions, OriginViolation, ShearMap};
use crate::rational::{serde_q, ExtRational, Rational};
use crate::roots::{real_roots, RealRoot};
use crate::{Polynomial, Univariate};

pub const DEFAULT_MAX_ITER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum AdaptednessReason {
    PrincipalFaceVertex,
    PrincipalFaceUnbounded,
    NonIntegerM,
    NoExcessRoot,
    ExcessRootFound {
        #[serde(serialize_with = "serde_q::ser")]
        c: Rational,
        multiplicity: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdaptednessReport {
    pub adapted: bool,
    pub reason: AdaptednessReason,
    pub principal: PrincipalFaceInfo,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdaptedError {
    #[error(transparent)]
    Origin(#[from] OriginViolation),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error("phase is not in canonical orientation (principal weight has k2 < k1)")]
    NotCanonicallyOriented,
    #[error("shear step requested on an adapted phase")]
    CalledOnAdapted,
    #[error("excess root of multiplicity {multiplicity} is irrational, in ({}, {}]", .bracket.0, .bracket.1)]
    IrrationalRootEncountered {
        bracket: Box<(Rational, Rational)>,
        multiplicity: usize,
    },
    #[error("no adapted coordinates after {} shear steps", .0.steps.len())]
    IterationCapReached(Box<VarchenkoTrace>),
}

/// `φ_pr(1, s)`: the principal part restricted to `x1 = 1`.
fn principal_restriction(principal: &Polynomial) -> Univariate {
    let mut coeffs = vec![Rational::zero(); principal.degree_in_x2().unwrap_or(0) as usize + 1];
    for (pt, c) in principal.terms() {
        coeffs[pt.t2 as usize] += c;
    }
    Univariate::new(coeffs)
}

fn test_oriented(p: &Polynomial) -> Result<AdaptednessReport, AdaptedError> {
    let np = NewtonPolyhedron::of(p)?;
    let principal = np.principal_face();
    let verdict = |adapted, reason| AdaptednessReport {
        adapted,
        reason,
        principal: principal.clone(),
    };
    match principal.face.kind {
        FaceKind::Vertex => return Ok(verdict(true, AdaptednessReason::PrincipalFaceVertex)),
        FaceKind::UnboundedVerticalEdge | FaceKind::UnboundedHorizontalEdge => {
            return Ok(verdict(true, AdaptednessReason::PrincipalFaceUnbounded))
        }
        FaceKind::CompactEdge => {}
    }
    if principal.integer_m().is_none() {
        return Ok(verdict(true, AdaptednessReason::NonIntegerM));
    }
    let face = &principal.face;
    let phi_pr = p.restrict(|t| face.contains(t));
    let d = &principal.d;
    // With m an integer, φ_pr(-1, s) has the roots (-1)^m c of φ_pr(1, s) with
    // the same multiplicities, so one restriction suffices.
    for (root, k) in real_roots(&principal_restriction(&phi_pr)) {
        if Rational::from_integer(k.into()) <= *d {
            continue;
        }
        match root {
            RealRoot::Rational(c) if c.is_zero() => continue,
            RealRoot::Rational(c) => {
                return Ok(verdict(
                    false,
                    AdaptednessReason::ExcessRootFound { c, multiplicity: k },
                ))
            }
            RealRoot::Irrational { lower, upper } => {
                return Err(AdaptedError::IrrationalRootEncountered {
                    bracket: Box::new((lower, upper)),
                    multiplicity: k,
                })
            }
        }
    }
    Ok(verdict(true, AdaptednessReason::NoExcessRoot))
}

/// Adaptedness of a phase already in canonical orientation.
pub fn adaptedness_test(p: &Polynomial) -> Result<AdaptednessReport, AdaptedError> {
    check_origin_conditions(p)?;
    let principal = NewtonPolyhedron::of(p)?.principal_face();
    if principal.kappa.k2 < principal.kappa.k1 {
        return Err(AdaptedError::NotCanonicallyOriented);
    }
    test_oriented(p)
}

/// The next shear increment `c·x1^m` for a non-adapted phase.
pub fn varchenko_step(p: &Polynomial) -> Result<(Rational, u32), AdaptedError> {
    let report = adaptedness_test(p)?;
    step_from(&report)
}

fn step_from(report: &AdaptednessReport) -> Result<(Rational, u32), AdaptedError> {
    match &report.reason {
        AdaptednessReason::ExcessRootFound { c, .. } => {
            Ok((c.clone(), report.principal.integer_m().expect("integer m")))
        }
        _ => Err(AdaptedError::CalledOnAdapted),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarchenkoStep {
    #[serde(serialize_with = "serde_q::ser")]
    pub coefficient: Rational,
    pub exponent: u32,
    pub increment: ShearMap,
    pub polyhedron: NewtonPolyhedron,
    #[serde(serialize_with = "serde_q::ser")]
    pub d: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarchenkoTrace {
    /// Whether the variables were swapped before shearing.
    pub swapped: bool,
    /// The oriented phase the shears act on.
    pub oriented: Polynomial,
    pub steps: Vec<VarchenkoStep>,
    pub psi: ShearMap,
    pub phi_a: Polynomial,
    pub report: AdaptednessReport,
}

/// Orients `p`, then shears by `c·x1^m` until the adaptedness test passes.
pub fn to_adapted(p: &Polynomial, max_iter: usize) -> Result<VarchenkoTrace, AdaptedError> {
    check_origin_conditions(p)?;
    let (oriented, swapped) = canonical_orientation(p)?;
    let mut trace = VarchenkoTrace {
        swapped,
        phi_a: oriented.clone(),
        report: test_oriented(&oriented)?,
        oriented,
        steps: Vec::new(),
        psi: ShearMap::identity(),
    };
    loop {
        if trace.report.adapted {
            return Ok(trace);
        }
        if trace.steps.len() >= max_iter {
            return Err(AdaptedError::IterationCapReached(Box::new(trace)));
        }
        let (c, m) = step_from(&trace.report)?;
        let increment = ShearMap::monomial(c.clone(), m);
        trace.phi_a = apply_shear(&trace.phi_a, &increment);
        trace.psi = trace.psi.compose_increment(&increment);
        let polyhedron = NewtonPolyhedron::of(&trace.phi_a)?;
        let d = polyhedron.principal_face().d;
        trace.steps.push(VarchenkoStep {
            coefficient: c,
            exponent: m,
            increment,
            polyhedron,
            d,
        });
        trace.report = test_oriented(&trace.phi_a)?;
    }
}

/// `h(φ) = d(φᵃ)`.
pub fn height(p: &Polynomial) -> Result<Rational, AdaptedError> {
    let trace = to_adapted(p, DEFAULT_MAX_ITER)?;
    Ok(NewtonPolyhedron::of(&trace.phi_a)?.principal_face().d)
}

/// A linear change of coordinates realizing `h_lin`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LinearChange {
    Identity,
    Swap,
    /// `x2 ↦ x2 + c·x1`.
    ShearX2 {
        #[serde(serialize_with = "serde_q::ser")]
        c: Rational,
    },
    /// `x1 ↦ x1 + c·x2`.
    ShearX1 {
        #[serde(serialize_with = "serde_q::ser")]
        c: Rational,
    },
}

impl LinearChange {
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        match self {
            LinearChange::Identity => p.clone(),
            LinearChange::Swap => p.swap_variables(),
            LinearChange::ShearX2 { c } => apply_shear(p, &ShearMap::monomial(c.clone(), 1)),
            LinearChange::ShearX1 { c } => {
                apply_shear(&p.swap_variables(), &ShearMap::monomial(c.clone(), 1)).swap_variables()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearHeight {
    #[serde(serialize_with = "serde_q::ser")]
    pub h_lin: Rational,
    pub change: LinearChange,
}

/// Candidate linear changes: identity, swap, and shears along the rational
/// roots of the homogeneous part on the edge with `κ1 = κ2`.
pub fn linear_candidates(p: &Polynomial) -> Result<Vec<LinearChange>, AdaptedError> {
    let np = NewtonPolyhedron::of(p)?;
    let mut out = vec![LinearChange::Identity, LinearChange::Swap];
    let n = np.n();
    for l in 1..=n {
        let w = np.weight(l);
        if w.k1 != w.k2 {
            continue;
        }
        let face = np.edge_face(l);
        let part = p.restrict(|t| face.contains(t));
        // Irrational roots come in conjugate pairs of equal multiplicity, at
        // most half the degree, and so cannot raise d.
        for (root, _) in real_roots(&principal_restriction(&part)) {
            if let Some(c) = root.rational().filter(|c| !c.is_zero()) {
                out.push(LinearChange::ShearX2 { c: c.clone() });
                out.push(LinearChange::ShearX1 { c: c.recip() });
            }
        }
    }
    Ok(out)
}

pub fn linear_height(p: &Polynomial) -> Result<LinearHeight, AdaptedError> {
    check_origin_conditions(p)?;
    let mut best: Option<LinearHeight> = None;
    for change in linear_candidates(p)? {
        let d = NewtonPolyhedron::of(&change.apply(p))?.principal_face().d;
        if best.as_ref().is_none_or(|b| d > b.h_lin) {
            best = Some(LinearHeight { h_lin: d, change });
        }
    }
    Ok(best.expect("identity is always a candidate"))
}

/// `ν = 1` iff `h ≥ 2` and the computed `φᵃ` has a vertex as principal face.
/// Only the computed adapted system is inspected.
pub fn varchenko_exponent(p: &Polynomial) -> Result<u8, AdaptedError> {
    let trace = to_adapted(p, DEFAULT_MAX_ITER)?;
    Ok(nu_of(&trace.report.principal))
}

pub(crate) fn nu_of(principal_a: &PrincipalFaceInfo) -> u8 {
    let two = Rational::from_integer(2.into());
    u8::from(principal_a.d >= two && principal_a.face.is_vertex())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Heights {
    #[serde(serialize_with = "serde_q::ser")]
    pub d: Rational,
    #[serde(serialize_with = "serde_q::ser")]
    pub h: Rational,
    #[serde(serialize_with = "serde_q::ser")]
    pub h_lin: Rational,
    pub nu: u8,
    pub m: ExtRational,
}

impl Heights {
    pub fn h_lin_below_two(&self) -> bool {
        self.h_lin < Rational::from_integer(2.into())
    }

    pub fn h_is_one(&self) -> bool {
        self.h.is_one()
    }
}
