//! Limit cycles of a quartic Hamiltonian system under a degree-`n`
//! polynomial perturbation.
//!
//! The unperturbed system `H(x, y) = −(ax⁴ + by⁴) + 2abx²y² + 2(x² + y²)`
//! has four families of closed orbits. Their detection functions λ_j(h)
//! locate the energies where orbits survive the perturbation as limit
//! cycles; [`cycles`] counts them and [`ode`] checks predictions against
//! direct integration.

// negated comparisons are deliberate: NaN must fail them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cycles;
pub mod detection;
pub mod error;
pub mod hamiltonian;
pub mod io;
pub mod ode;
pub mod params;
pub mod poly;
pub mod quadrature;
mod roots;

pub use detection::{
    abelian_integral, detection_curve, divergence, lambda_j, DetectionCurve, DetectionSample,
    Detector,
};
pub use error::{Error, Result};
pub use hamiltonian::{Family, Hamiltonian, Orientation, PointKind, SingularPoint};
pub use params::SystemParams;
