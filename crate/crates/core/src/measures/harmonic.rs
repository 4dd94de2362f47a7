use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{integer, ratio};
use crate::dimensions::DimTable;
use crate::error::{Error, Result};
use crate::graph::{GradedGraph, Label, VertexId};

/// A candidate central measure given by `φ(v)` on every vertex through some
/// level; the cylinder of `v` has measure `φ(v) · dim(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicAssignment {
    levels: Vec<Vec<BigRational>>,
}

impl HarmonicAssignment {
    pub fn from_levels(levels: Vec<Vec<BigRational>>) -> Self {
        HarmonicAssignment { levels }
    }

    pub fn from_fn<L: Label>(
        graph: &GradedGraph<L>,
        n: usize,
        mut phi: impl FnMut(VertexId) -> BigRational,
    ) -> Result<Self> {
        graph.check_level(n)?;
        let levels = (0..=n).map(|k| graph.vertices(k).map(&mut phi).collect()).collect();
        Ok(HarmonicAssignment { levels })
    }

    pub fn constant<L: Label>(graph: &GradedGraph<L>, n: usize, value: BigRational) -> Result<Self> {
        Self::from_fn(graph, n, |_| value.clone())
    }

    /// `φ(v) = dim(v) / Σ_{|w|=|v|} dim(w)²`, the normalised regular trace of
    /// each algebra in the tower. On the Young graph this is the Plancherel
    /// measure, `φ(λ) = dim λ / |λ|!`.
    pub fn plancherel<L: Label>(graph: &GradedGraph<L>, dims: &DimTable, n: usize) -> Result<Self> {
        if dims.top_level() < n {
            return Err(Error::Horizon { requested: n, available: dims.top_level() });
        }
        let totals: Vec<_> = (0..=n).map(|k| dims.sum_of_squares(k)).collect();
        Self::from_fn(graph, n, |v| ratio(dims.get(v), &totals[v.level]))
    }

    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn get(&self, v: VertexId) -> &BigRational {
        &self.levels[v.level][v.index]
    }

    pub fn level(&self, k: usize) -> &[BigRational] {
        &self.levels[k]
    }

    /// `μ(C_v) = φ(v) · dim(v)`.
    pub fn cylinder(&self, v: VertexId, dims: &DimTable) -> BigRational {
        self.get(v) * integer(dims.get(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HarmonicViolation {
    RootNotOne(BigRational),
    Negative { vertex: VertexId, label: String, value: BigRational },
    NotHarmonic { vertex: VertexId, label: String, value: BigRational, upper_sum: BigRational },
    LevelTotal { level: usize, total: BigRational },
}

impl HarmonicViolation {
    pub fn level(&self) -> usize {
        match self {
            HarmonicViolation::RootNotOne(_) => 0,
            HarmonicViolation::Negative { vertex, .. }
            | HarmonicViolation::NotHarmonic { vertex, .. } => vertex.level,
            HarmonicViolation::LevelTotal { level, .. } => *level,
        }
    }
}

impl fmt::Display for HarmonicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarmonicViolation::RootNotOne(v) => write!(f, "φ(root) = {v}, expected 1"),
            HarmonicViolation::Negative { label, value, .. } => {
                write!(f, "φ{label} = {value} is negative")
            }
            HarmonicViolation::NotHarmonic { label, value, upper_sum, .. } => {
                write!(f, "φ{label} = {value} but its upper neighbours sum to {upper_sum}")
            }
            HarmonicViolation::LevelTotal { level, total } => {
                write!(f, "cylinder measures on level {level} sum to {total}, expected 1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicityReport {
    pub levels_checked: usize,
    pub violation: Option<HarmonicViolation>,
}

impl HarmonicityReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks, level by level through `n`, that `φ(root) = 1`, `φ >= 0`, each
/// level's cylinder measures sum to 1, and `φ(v) = Σ_{v↗w} φ(w)` below `n`.
/// Stops at the first violation.
pub fn check_harmonicity<L: Label>(
    graph: &GradedGraph<L>,
    dims: &DimTable,
    phi: &HarmonicAssignment,
    n: usize,
) -> Result<HarmonicityReport> {
    for available in [graph.top_level(), dims.top_level(), phi.top_level()] {
        if available < n {
            return Err(Error::Horizon { requested: n, available });
        }
    }
    let report = |levels_checked, violation| Ok(HarmonicityReport { levels_checked, violation });
    let root = phi.get(VertexId::ROOT);
    if !root.is_one() {
        return report(0, Some(HarmonicViolation::RootNotOne(root.clone())));
    }
    for k in 0..=n {
        let mut total = BigRational::zero();
        for v in graph.vertices(k) {
            let value = phi.get(v);
            if value.is_negative() {
                let label = graph.label(v).to_string();
                return report(k, Some(HarmonicViolation::Negative { vertex: v, label, value: value.clone() }));
            }
            total += phi.cylinder(v, dims);
        }
        if !total.is_one() {
            return report(k, Some(HarmonicViolation::LevelTotal { level: k, total }));
        }
        if k == n {
            break;
        }
        for v in graph.vertices(k) {
            let upper_sum: BigRational = graph.up(v).map(|w| phi.get(w)).sum();
            if upper_sum != *phi.get(v) {
                return report(
                    k,
                    Some(HarmonicViolation::NotHarmonic {
                        vertex: v,
                        label: graph.label(v).to_string(),
                        value: phi.get(v).clone(),
                        upper_sum,
                    }),
                );
            }
        }
    }
    report(n + 1, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimensions::dims_up_to;
    use crate::family::{chain, young};
    use num_bigint::BigInt;

    fn factorial(n: usize) -> BigInt {
        (1..=n).map(BigInt::from).product()
    }

    #[test]
    fn plancherel_on_young() {
        let g = young(8);
        let dims = dims_up_to(&g, 8).unwrap();
        let phi = HarmonicAssignment::plancherel(&g, &dims, 8).unwrap();
        for k in 0..=8 {
            for v in g.vertices(k) {
                let expected = BigRational::new(BigInt::from(dims.get(v).clone()), factorial(k));
                assert_eq!(phi.get(v), &expected);
            }
        }
        let report = check_harmonicity(&g, &dims, &phi, 8).unwrap();
        assert!(report.is_ok(), "{:?}", report.violation);
    }

    #[test]
    fn constant_one_on_chain() {
        let g = chain(8);
        let dims = dims_up_to(&g, 8).unwrap();
        let phi = HarmonicAssignment::constant(&g, 8, BigRational::one()).unwrap();
        assert!(check_harmonicity(&g, &dims, &phi, 8).unwrap().is_ok());
    }

    #[test]
    fn constant_one_on_young_fails_at_level_one() {
        let g = young(8);
        let dims = dims_up_to(&g, 8).unwrap();
        let phi = HarmonicAssignment::constant(&g, 8, BigRational::one()).unwrap();
        let violation = check_harmonicity(&g, &dims, &phi, 8).unwrap().violation.unwrap();
        assert!(matches!(violation, HarmonicViolation::NotHarmonic { .. }));
        assert_eq!(violation.level(), 1);
    }

    #[test]
    fn root_must_be_one() {
        let g = chain(2);
        let dims = dims_up_to(&g, 2).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let phi = HarmonicAssignment::constant(&g, 2, half).unwrap();
        assert!(matches!(
            check_harmonicity(&g, &dims, &phi, 2).unwrap().violation,
            Some(HarmonicViolation::RootNotOne(_))
        ));
    }
}
