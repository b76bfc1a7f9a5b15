//! States, channels and distance measures for small quantum systems.
//!
//! All logarithms are base 2. Bipartite spaces are ordered with the first
//! named system as the most significant index, e.g. `R ⊗ A` for a
//! purification and `B ⊗ E` for an isometric extension.

mod channel;
pub mod linalg;
mod metrics;
mod state;

pub use channel::{KrausChannel, COMPLETENESS_TOL};
pub use linalg::{CMatrix, Keep};
pub use metrics::{
    generalized_fidelity, purified_distance, purify, spectrum_entropy, trace_distance,
    von_neumann_entropy, EIGEN_CLAMP,
};
pub use state::{
    matrix_from_pairs, matrix_to_pairs, DensityMatrix, PureState, HERMITIAN_TOL,
    NORMALISATION_TOL, PSD_TOL, TRACE_TOL,
};
