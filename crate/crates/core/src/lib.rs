//! Spectral, index and stability computations for conical associative and
//! special Lagrangian submanifolds, with G2 linear algebra and model geometries.

pub mod error;
pub mod fredholm;
pub mod g2;
pub mod geometry;
pub mod indicial;
pub mod linalg;
pub mod scalar;
pub mod spectrum;
pub mod stability;

pub use error::{Error, Result};
pub use scalar::{Rational, Real};

/// Double precision instantiations of the generic types.
pub type Vec7f = g2::Vec7<f64>;
pub type Spectrumf = spectrum::Spectrum<f64>;
pub type TorusMetricf = spectrum::TorusMetric<f64>;
pub type SurfaceMesh = spectrum::TriMesh<f64, 3>;
pub type Windowf = indicial::Window<f64>;
pub type SLCone = indicial::SLConeSpec<f64>;
pub type KernelTablef = indicial::KernelTable<f64>;
pub type Cone = stability::ConeData<f64>;
pub type Operator = fredholm::OperatorSpec<f64>;
pub type LawlorParamsf = geometry::LawlorParams<f64>;
pub type LawlorAnglesf = geometry::LawlorAngles<f64>;
