use num_rational::BigRational;

use super::{integer, ratio};
use crate::dimensions::{Cone, DimTable};
use crate::error::{Error, Result};
use crate::graph::{GradedGraph, GraphPath, Label, VertexId};

/// The finite-`n` values `dim(d) · dim(d; s_n) / dim(s_n)` along a path `s`.
/// Only finite-horizon values are reported; nothing here claims a limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErgodicEstimate {
    pub target: VertexId,
    /// `(n, value)` for `n = level(d) ..= horizon`.
    pub values: Vec<(usize, BigRational)>,
}

impl ErgodicEstimate {
    pub fn last(&self) -> Option<&BigRational> {
        self.values.last().map(|(_, v)| v)
    }

    pub fn at(&self, n: usize) -> Option<&BigRational> {
        let first = self.values.first()?.0;
        self.values.get(n.checked_sub(first)?).map(|(_, v)| v)
    }
}

pub fn ergodic_estimate<L: Label>(
    graph: &GradedGraph<L>,
    dims: &DimTable,
    target: VertexId,
    path: &GraphPath,
    horizon: usize,
) -> Result<ErgodicEstimate> {
    if !graph.contains(target) {
        return Err(Error::UnknownVertex(target));
    }
    if horizon < target.level {
        return Err(Error::domain(format!(
            "horizon {horizon} is below the target level {}",
            target.level
        )));
    }
    let cone = Cone::new(graph, target, horizon)?;
    ergodic_estimate_with_cone(&cone, dims, path, horizon)
}

/// Same as [`ergodic_estimate`] with a precomputed cone above the target,
/// for reuse across many paths.
pub fn ergodic_estimate_with_cone(
    cone: &Cone,
    dims: &DimTable,
    path: &GraphPath,
    horizon: usize,
) -> Result<ErgodicEstimate> {
    let target = cone.source();
    if horizon < target.level {
        return Err(Error::domain(format!(
            "horizon {horizon} is below the target level {}",
            target.level
        )));
    }
    for available in [path.len(), dims.top_level(), cone.top_level()] {
        if available < horizon {
            return Err(Error::Horizon { requested: horizon, available });
        }
    }
    let prefactor = integer(dims.get(target));
    let values = (target.level..=horizon)
        .map(|n| {
            let s = path.at(n).expect("path reaches the horizon");
            (n, &prefactor * ratio(cone.get(s), dims.get(s)))
        })
        .collect();
    Ok(ErgodicEstimate { target, values })
}
