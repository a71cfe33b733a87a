//! Weighted volume calculus: parabolic gauge groups `Q_W`, the weighted
//! trace and determinant, lower-triangular gauge fixing and the densities
//! `v_W`, `v_N` and `v_{β⁺}`.

mod density;
mod inner_product;
mod label;
mod parabolic;
mod weights;

pub use density::{
    equivariance_check, gauge_lower_triangular, orbit_density_vn, v_label, v_weighted, weighted_volume,
    EquivarianceCheck, TriangularGauge, WeightedVolume,
};
pub use inner_product::{InnerProductData, InnerProductJson};
pub use label::{beta_plus_from_beta, StratumJson, StratumLabel, WeightsJson};
pub use parabolic::{det_weighted, in_lie_algebra_q, parabolic_membership, tr_weighted, ParabolicMembership};
pub use weights::WeightVector;
