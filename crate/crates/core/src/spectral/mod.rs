//! Anti-adjacency matrices, numeric and exact spectra.

pub mod closed_form;
pub mod eigen;
pub mod matrix;
pub mod poly;
pub mod sturm;

pub use closed_form::{
    closed_form_spectrum, join_char_poly, join_core, star_char_poly, star_core, tabled_blocks, tabled_zero_case, Block,
    BlockKind, Claim, ClosedForm, Discrepancy, ExactPoly, FactoredPoly,
};
pub use eigen::{eigenvalues, interlaces, jacobi_eigenvalues, spectrum_with, Spectrum, EIGEN_TOLERANCE, GROUP_TOLERANCE};
pub use matrix::{
    adjacency, anti_adjacency, bareiss_rank, char_poly_exact, exact_nullity, submatrix_conditions, IntMatrix, SymMatrix,
    MAX_EXACT_ORDER,
};
pub use poly::Poly;
pub use sturm::{count_roots, count_roots_open, isolate_roots, positive_root_count, refine_root, Bound, RationalPoly, SturmChain};
