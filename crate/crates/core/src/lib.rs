//! Anti-adjacency spectra of graphs and mixed extensions of stars.
//!
//! Numeric kernels are generic over [`scalar::Real`], exact kernels over
//! [`scalar::ExactInt`]; the aliases below fix the usual choices.

pub mod canon;
pub mod characterize;
pub mod error;
pub mod extension;
pub mod graph;
pub mod graph6;
pub mod hlindex;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use extension::{mixed_extension, normalize, param_contains, recognize_star_extension, star_extension, ExtensionType, StarGrid, StarParams};
pub use graph::{contains_induced, distances, ecc_profile, induced_subgraph, Distance, DistanceMatrix, EccProfile, Graph};
pub use graph6::{parse_graph6, to_graph6};
pub use spectral::{Poly, Spectrum, SymMatrix};

/// Characteristic polynomials with arbitrary-precision integer coefficients.
pub type ExactPoly = Poly<num_bigint::BigInt>;
/// Polynomials used for exact root counting.
pub type RationalPoly = Poly<num_rational::BigRational>;
pub type IntMatrix = SymMatrix<i64>;
pub type RealMatrix = SymMatrix<f64>;
pub type RealSpectrum = Spectrum<f64>;
