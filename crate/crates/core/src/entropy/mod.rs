//! Classical and small-dimension quantum entropies, in bits.

mod classical;
mod distribution;
mod quantum;
mod smooth;
mod uncertainty;

pub use classical::{
    conditional_entropy, conditional_min_entropy_classical, guessing_probability, max_entropy, min_entropy,
    mutual_information, relative_entropy, shannon_entropy, surprisal,
};
pub use distribution::{DiscreteDistribution, JointDistribution, NORMALISATION_TOL};
pub use quantum::{quantum_conditional_max_entropy, quantum_conditional_min_entropy, BlochSearch};
pub use smooth::{gallagher_bound, smooth_max_entropy_classical, smooth_min_entropy_classical};
pub use uncertainty::{eur_overlap, MeasurementFamily, Overlap};
