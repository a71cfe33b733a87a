//! Numerical Lie theory for homogeneous geometry.

pub mod error;
pub mod geometry;
pub mod liealg;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod semisimple;
pub mod subspace;
pub mod volume;

pub use error::{OrbitError, Result};
pub use scalar::Scalar;

/// Double-precision aliases.
pub type LieAlgebra = liealg::LieAlgebraData<f64>;
pub type LinearMap = liealg::LinearMapData<f64>;
pub type Cartan = semisimple::CartanData<f64>;
pub type Iwasawa = semisimple::IwasawaData<f64>;
pub type InnerProduct = volume::InnerProductData<f64>;
pub type Weights = volume::WeightVector<f64>;
pub type Label = volume::StratumLabel<f64>;
pub type Metric = geometry::MetricData<f64>;
pub type Curvature = geometry::CurvatureReport<f64>;
pub type SubspaceF64 = subspace::Subspace<f64>;
