//! Floating-point checks of the decay laws behind the restriction exponents:
//! oscillatory surface integrals, van der Corput and Airy scaling, and
//! Knapp boxes.
//!
//! The quadrature is generic over the float type; [`GaussLegendre64`] is the
//! rule used by the checks.

pub mod airy;
pub mod decay;
pub mod knapp;
pub mod quadrature;
pub mod surface;
pub mod vdc;

use serde::Serialize;

pub use quadrature::{GaussLegendre, PanelConfig};
pub use surface::{oscillatory_surface_integral, Amplitude, QuadratureConfig, SurfaceIntegral};

pub type GaussLegendre64 = GaussLegendre<f64>;
pub type PanelConfig64 = PanelConfig<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}
