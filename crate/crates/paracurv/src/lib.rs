//! Symbolic/numeric curvature engine for pseudo-Riemannian 3-manifolds
//! carrying an almost paracontact metric structure.
//!
//! The crate parses closed-form metric and structure components on a
//! coordinate chart, builds the full curvature stack (Christoffel symbols,
//! Riemann, Ricci, scalar, concircular and projective tensors) symbolically,
//! validates the structure axioms, extracts the structure functions α and β,
//! classifies the manifold, and machine-checks a family of curvature
//! identities by deterministic sampling.

pub mod chart;
pub mod check;
pub mod curvature;
pub mod expr;
pub mod fields;
pub mod manifest;
pub mod paracontact;
pub mod pipeline;
pub mod theorems;

#[cfg(test)]
pub(crate) mod testutil;

pub use chart::Chart;
pub use check::CheckReport;
pub use curvature::CurvatureCache;
pub use expr::{parse, Expr};
pub use fields::{lie_bracket, GeomError, MetricField, TensorField, VectorField};
pub use paracontact::{Classification, ParacontactStructure, StructureFunctions};
pub use theorems::{TheoremReport, Verdict};
