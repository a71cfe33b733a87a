//! Left-invariant Riemannian geometry: Ricci curvature from structure
//! constants, the mean-curvature element and nilsoliton certificates.

mod ricci;
mod soliton;

pub use ricci::{
    mean_curvature_element, ricci_left_invariant, CurvatureReport, LabelChecks, MetricData, SolitonFit, MAX_CONDITION,
};
pub use soliton::nilsoliton_certificate;
