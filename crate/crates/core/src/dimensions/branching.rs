use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::DimTable;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{GradedGraph, Label};

/// The sequence `a_1, a_2, ...` with `a_l = [dim A_l / dim A_{l-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingRatios {
    // values[l - 1] = a_l
    values: Vec<u64>,
    // homogeneous[l]: Σ_{λ↗ν} dim ν = a_{l+1} dim λ for every λ on level l
    homogeneous: Vec<bool>,
    family: Option<Family>,
}

impl BranchingRatios {
    /// The closed-form sequence of a built-in family, `a_1 ..= a_len`.
    pub fn from_family(family: Family, len: usize) -> Self {
        BranchingRatios {
            values: (1..=len).map(|l| family.branching_ratio(l)).collect(),
            homogeneous: Vec::new(),
            family: Some(family),
        }
    }

    /// A user-supplied sequence, `values[0] = a_1`.
    pub fn from_values(values: Vec<u64>) -> Self {
        BranchingRatios { values, homogeneous: Vec::new(), family: None }
    }

    /// `a_l`, for `1 <= l <= len()`.
    pub fn get(&self, l: usize) -> Option<u64> {
        l.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Per-level homogeneity verdicts; empty unless measured from a graph.
    pub fn homogeneity(&self) -> &[bool] {
        &self.homogeneous
    }

    pub fn all_homogeneous(&self) -> bool {
        self.homogeneous.iter().all(|&h| h)
    }

    /// The built-in family whose closed form this sequence follows, if any.
    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// The sequence continued to `a_len`, using the closed form when the
    /// measured prefix is too short.
    pub fn extended_to(&self, len: usize) -> Result<Self> {
        if len <= self.values.len() {
            return Ok(self.clone());
        }
        let Some(family) = self.family else {
            return Err(Error::InsufficientRatios { needed: len, available: self.values.len() });
        };
        let mut out = self.clone();
        out.values.extend((self.values.len() + 1..=len).map(|l| family.branching_ratio(l)));
        Ok(out)
    }
}

/// Measures `a_l` for `l = 1..=n` from `Σ dim(λ)²` on each level, and checks
/// the induction identity `Σ_{λ↗ν} dim ν = a_{l+1} dim λ` on levels `0..n`.
///
/// A non-integer ratio of consecutive algebra dimensions marks the lower
/// level inhomogeneous. When the graph names a built-in family and every
/// measured value agrees with its closed form, the family is attached so the
/// sequence can be extended past `n`.
pub fn branching_ratios<L: Label>(
    graph: &GradedGraph<L>,
    dims: &DimTable,
    n: usize,
) -> Result<BranchingRatios> {
    graph.check_level(n)?;
    if dims.top_level() < n {
        return Err(Error::Horizon { requested: n, available: dims.top_level() });
    }
    let algebra: Vec<BigUint> = (0..=n).map(|k| dims.sum_of_squares(k)).collect();
    let mut values = Vec::with_capacity(n);
    let mut exact = Vec::with_capacity(n);
    for l in 1..=n {
        let (q, r) = algebra[l].div_rem(&algebra[l - 1]);
        let q = q
            .to_u64()
            .ok_or_else(|| Error::domain(format!("a_{l} does not fit in 64 bits")))?;
        values.push(q);
        exact.push(r.is_zero());
    }

    let mut homogeneous = Vec::with_capacity(n);
    for l in 0..n {
        let a = BigUint::from(values[l]);
        let ok = exact[l]
            && graph.vertices(l).all(|v| {
                let induced: BigUint = graph.up(v).map(|w| dims.get(w)).sum();
                induced == &a * dims.get(v)
            });
        homogeneous.push(ok);
    }

    let family = graph
        .family()
        .parse::<Family>()
        .ok()
        .filter(|f| values.iter().enumerate().all(|(i, &a)| f.branching_ratio(i + 1) == a));
    Ok(BranchingRatios { values, homogeneous, family })
}
