//! Input schema of the `entropy` subcommand.
//!
//! Exactly one of `distribution`, `joint` or `state` must be present:
//!
//! ```json
//! { "distribution": [0.5, 0.5], "smoothing": 0.01 }
//! { "joint": [[0.4, 0.1], [0.1, 0.4]] }
//! { "state": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]], "dims": [2, 1] }
//! ```
//!
//! Joint rows are indexed by `x`, columns by `y`. States are nested rows of
//! `[re, im]` pairs; `dims` splits them as `A ⊗ B`.

use serde::Deserialize;

use qkd_core::entropy::{
    conditional_entropy, conditional_min_entropy_classical, guessing_probability, max_entropy, min_entropy,
    mutual_information, quantum_conditional_max_entropy, quantum_conditional_min_entropy, shannon_entropy,
    smooth_max_entropy_classical, smooth_min_entropy_classical, BlochSearch, DiscreteDistribution, JointDistribution,
};
use qkd_core::quantum::{von_neumann_entropy, DensityMatrix, Keep};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyInput {
    distribution: Option<Vec<f64>>,
    joint: Option<Vec<Vec<f64>>>,
    state: Option<DensityMatrix>,
    dims: Option<[usize; 2]>,
    /// Smoothing parameter for the smooth entropies of a distribution.
    smoothing: Option<f64>,
}

fn bad(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

type Table = Vec<(String, f64)>;

impl EntropyInput {
    pub fn evaluate(self) -> Result<Table, CliError> {
        let given = [self.distribution.is_some(), self.joint.is_some(), self.state.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(bad("exactly one of `distribution`, `joint` or `state` is required"));
        }
        if self.dims.is_some() && self.state.is_none() {
            return Err(bad("`dims` only applies to `state`"));
        }
        if self.smoothing.is_some() && self.distribution.is_none() {
            return Err(bad("`smoothing` only applies to `distribution`"));
        }
        if let Some(p) = self.distribution {
            distribution(DiscreteDistribution::new(p).map_err(bad)?, self.smoothing)
        } else if let Some(rows) = self.joint {
            joint(&JointDistribution::new(rows).map_err(bad)?)
        } else {
            state(&self.state.expect("checked above"), self.dims)
        }
    }
}

fn distribution(p: DiscreteDistribution, smoothing: Option<f64>) -> Result<Table, CliError> {
    let mut t = vec![
        ("H".to_string(), shannon_entropy(&p).map_err(bad)?),
        ("H_min".to_string(), min_entropy(&p).map_err(bad)?),
        ("H_max".to_string(), max_entropy(&p).map_err(bad)?),
    ];
    if let Some(eps) = smoothing {
        t.push((format!("H_min^{eps}"), smooth_min_entropy_classical(&p, eps).map_err(bad)?));
        t.push((format!("H_max^{eps}"), smooth_max_entropy_classical(&p, eps).map_err(bad)?));
    }
    Ok(t)
}

fn joint(j: &JointDistribution) -> Result<Table, CliError> {
    Ok(vec![
        ("H(X)".into(), shannon_entropy(&j.marginal_x()).map_err(bad)?),
        ("H(Y)".into(), shannon_entropy(&j.marginal_y()).map_err(bad)?),
        ("H(XY)".into(), shannon_entropy(&j.flattened()).map_err(bad)?),
        ("H(X|Y)".into(), conditional_entropy(j).map_err(bad)?),
        ("I(X:Y)".into(), mutual_information(j).map_err(bad)?),
        ("H_min(X|Y)".into(), conditional_min_entropy_classical(j).map_err(bad)?),
        ("P_guess(X|Y)".into(), guessing_probability(j)),
    ])
}

fn state(rho: &DensityMatrix, dims: Option<[usize; 2]>) -> Result<Table, CliError> {
    let s = von_neumann_entropy(rho).map_err(bad)?;
    let mut t = vec![("S(AB)".to_string(), s)];
    let Some([da, db]) = dims else {
        return Ok(t);
    };
    if da * db != rho.dim() {
        return Err(bad(format!("dims {da}×{db} do not match a {0}×{0} state", rho.dim())));
    }
    let sa = von_neumann_entropy(&rho.partial_trace(da, db, Keep::First).map_err(bad)?).map_err(bad)?;
    let sb = von_neumann_entropy(&rho.partial_trace(da, db, Keep::Second).map_err(bad)?).map_err(bad)?;
    t.extend([
        ("S(A)".to_string(), sa),
        ("S(B)".to_string(), sb),
        ("S(A|B)".to_string(), s - sb),
        ("I(A:B)".to_string(), sa + sb - s),
    ]);
    // the conditional min/max-entropy search covers qubit (or trivial) B
    if db <= 2 {
        let opts = BlochSearch::default();
        t.push((
            "H_min(A|B)".into(),
            quantum_conditional_min_entropy(rho, da, db, &opts).map_err(bad)?,
        ));
        t.push((
            "H_max(A|B)".into(),
            quantum_conditional_max_entropy(rho, da, db, &opts).map_err(bad)?,
        ));
    }
    Ok(t)
}
