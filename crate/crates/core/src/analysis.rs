//! The full invariant pipeline: linear adaptation, orientation, Varchenko
//! shears, heights and the augmented polyhedron.

use serde::Serialize;
use thiserror::Error;

use crate::adapted::{
    linear_height, nu_of, to_adapted, AdaptedError, AdaptednessReport, Heights, LinearHeight,
    VarchenkoTrace, DEFAULT_MAX_ITER,
};
use crate::augmented::{build_augmented, AugmentedError, AugmentedPolyhedron, KFunction};
use crate::classify::{classify, critical_exponent, ClassKind, ClassifyError, SingularityClass};
use crate::conditions::{admissible_polygon, AdmissiblePolygon, ConditionsError, ExponentPair};
use crate::newton::{NewtonError, NewtonPolyhedron, PrincipalFaceInfo};
use crate::poly::{check_origin_conditions, ShearMap};
use crate::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Adapted(#[from] AdaptedError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Augmented(#[from] AugmentedError),
}

impl AnalysisError {
    /// Short machine-readable name of the failure.
    pub fn kind(&self) -> &'static str {
        match self {
            AnalysisError::Adapted(AdaptedError::Origin(v)) => v.kind(),
            AnalysisError::Adapted(AdaptedError::IrrationalRootEncountered { .. }) => {
                "IrrationalRootEncountered"
            }
            AnalysisError::Adapted(AdaptedError::IterationCapReached(_)) => "IterationCapReached",
            AnalysisError::Adapted(_) => "AdaptedError",
            AnalysisError::Newton(_) => "EmptySupport",
            AnalysisError::Augmented(_) => "AugmentedError",
        }
    }
}

/// Everything computed for one phase.
///
/// `working` is the input after the linear change realizing `h_lin` and the
/// canonical orientation; the shears of `trace` act on it.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub input: Polynomial,
    pub linear: LinearHeight,
    pub working: Polynomial,
    pub swapped: bool,
    pub polyhedron: NewtonPolyhedron,
    pub principal: PrincipalFaceInfo,
    pub trace: VarchenkoTrace,
    pub polyhedron_a: NewtonPolyhedron,
    pub principal_a: PrincipalFaceInfo,
    pub heights: Heights,
    pub augmented: Option<AugmentedPolyhedron>,
}

impl Analysis {
    /// Whether the working coordinates are adapted.
    pub fn adapted(&self) -> bool {
        self.trace.steps.is_empty()
    }

    pub fn psi(&self) -> &ShearMap {
        &self.trace.psi
    }

    pub fn phi_a(&self) -> &Polynomial {
        &self.trace.phi_a
    }

    pub fn adaptedness(&self) -> &AdaptednessReport {
        &self.trace.report
    }

    /// Whether `φᵃ` has no pure `y1` term.
    pub fn b0_vanishes(&self) -> bool {
        !self.phi_a().terms().any(|(t, _)| t.t2 == 0)
    }
}

pub fn analyze(p: &Polynomial) -> Result<Analysis, AnalysisError> {
    analyze_with(p, DEFAULT_MAX_ITER)
}

pub fn analyze_with(p: &Polynomial, max_iter: usize) -> Result<Analysis, AnalysisError> {
    check_origin_conditions(p).map_err(AdaptedError::from)?;
    let d = NewtonPolyhedron::of(p)?.principal_face().d;
    let linear = linear_height(p)?;
    let trace = to_adapted(&linear.change.apply(p), max_iter)?;
    let working = trace.oriented.clone();
    let polyhedron = NewtonPolyhedron::of(&working)?;
    let principal = polyhedron.principal_face();
    let polyhedron_a = NewtonPolyhedron::of(&trace.phi_a)?;
    let principal_a = polyhedron_a.principal_face();
    let heights = Heights {
        d,
        h: principal_a.d.clone(),
        h_lin: linear.h_lin.clone(),
        nu: nu_of(&principal_a),
        m: principal.m.clone(),
    };
    let augmented = if trace.steps.is_empty() {
        None
    } else {
        Some(build_augmented(&polyhedron_a, &principal.kappa)?)
    };
    Ok(Analysis {
        input: p.clone(),
        swapped: trace.swapped,
        linear,
        working,
        polyhedron,
        principal,
        trace,
        polyhedron_a,
        principal_a,
        heights,
        augmented,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Polyhedra<'a> {
    pub phi: &'a NewtonPolyhedron,
    pub phi_a: &'a NewtonPolyhedron,
    pub augmented: Option<&'a AugmentedPolyhedron>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub b0_identically_zero: bool,
    pub h_lin_below_two: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ClassOutcome {
    Class(SingularityClass),
    Error { error: String },
}

/// The serializable summary of an [`Analysis`].
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport<'a> {
    pub input: String,
    pub linear_change: &'a LinearHeight,
    pub working: String,
    pub swapped: bool,
    pub adapted: bool,
    /// The adaptedness test that stopped the shears, on `φᵃ`.
    pub phi_a_adaptedness: &'a AdaptednessReport,
    pub psi: &'a ShearMap,
    pub phi_a: String,
    pub heights: &'a Heights,
    pub polyhedra: Polyhedra<'a>,
    pub k_function: Option<KFunction>,
    pub polygon: Option<AdmissiblePolygon>,
    pub polygon_error: Option<String>,
    pub class: ClassOutcome,
    /// `A4`, `D7`, `A∞`, ...
    pub class_name: Option<String>,
    pub critical_exponent: Option<ExponentPair>,
    pub hypotheses: Hypotheses,
    pub version: &'static str,
}

impl Analysis {
    pub fn report(&self) -> AnalysisReport<'_> {
        let polygon: Result<AdmissiblePolygon, ConditionsError> = admissible_polygon(self);
        let class: Result<SingularityClass, ClassifyError> = classify(self);
        AnalysisReport {
            input: self.input.to_string(),
            linear_change: &self.linear,
            working: self.working.to_string(),
            swapped: self.swapped,
            adapted: self.adapted(),
            phi_a_adaptedness: self.adaptedness(),
            psi: self.psi(),
            phi_a: self.phi_a().to_string(),
            heights: &self.heights,
            polyhedra: Polyhedra {
                phi: &self.polyhedron,
                phi_a: &self.polyhedron_a,
                augmented: self.augmented.as_ref(),
            },
            k_function: self.augmented.as_ref().map(AugmentedPolyhedron::k_function),
            polygon_error: polygon.as_ref().err().map(ToString::to_string),
            polygon: polygon.ok(),
            critical_exponent: class.as_ref().ok().and_then(critical_exponent),
            class_name: class
                .as_ref()
                .ok()
                .filter(|c| c.kind != ClassKind::NotApplicable)
                .map(SingularityClass::name),
            class: match class {
                Ok(c) => ClassOutcome::Class(c),
                Err(e) => ClassOutcome::Error {
                    error: e.to_string(),
                },
            },
            hypotheses: Hypotheses {
                b0_identically_zero: self.b0_vanishes(),
                h_lin_below_two: self.heights.h_lin_below_two(),
            },
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}
