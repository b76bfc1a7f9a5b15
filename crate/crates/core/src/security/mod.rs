//! Finite-key security bounds: privacy-amplification failure, the `ν*`
//! root, key-length and rate formulas and a rate optimiser.

mod bounds;
mod optimize;
mod toy;

pub use bounds::{
    asymptotic_rate, binary_entropy, epsilon_pa, finite_size_correction, log2_epsilon_pa, log2_tail,
    max_key_length, security_parameter_bound, sifted_key_rate_finite, solve_nu_star, tail_deviation,
    uncertainty_entropy_bound, DeltaTerm, NuStar, RateParams, SecurityBudget,
};
pub(crate) use bounds::h;
pub use optimize::{hash_bits, optimize_rate, LeakModel, RateOptions, RateReport};
pub use toy::{secrecy_distance_toy, TOY_MAX_DIM};
