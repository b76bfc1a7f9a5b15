//! BB84 prepare-and-measure protocol with Cascade reconciliation and
//! Toeplitz privacy amplification.

pub mod bits;
mod cascade;
mod config;
mod run;
mod signals;
mod sifting;
mod toeplitz;

pub use cascade::{reconcile_cascade, Reconciliation};
pub use config::{ChannelModel, Epsilons, ProtocolConfig};
pub use run::{run_protocol, Flags, ProtocolRun};
pub use signals::{bb84_state, measure, prepare_states, transmit, Measurement, Preparation};
pub use sifting::{estimate_parameters, sift, Estimate, Flag};
pub use toeplitz::{privacy_amplification, seed_len, verify_hash, HashCheck, ToeplitzHash};
