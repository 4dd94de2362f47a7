//! Exact path counting on graded graphs and the multiplier table of a
//! pascalized graph.
//!
//! All counts are [`BigUint`] and all ratios [`BigRational`]; nothing here
//! goes through floating point.

mod branching;
mod criterion;
mod mtable;
mod multiplicativity;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{GradedGraph, Label, VertexId};

pub use branching::{branching_ratios, BranchingRatios};
pub use criterion::{vanishing_criterion, Criterion, Verdict, VerdictBasis};
pub use mtable::{check_ratio_chains, m_table, max_shift_ratio, ratio_chains, ChainReport, MTable};
pub use multiplicativity::{
    observed_max_shift_ratio, verify_multiplicativity, MultiplicativityFailure,
    MultiplicativityReport,
};

/// `dim(v)`, the number of root-to-`v` paths, for every vertex through some level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    levels: Vec<Vec<BigUint>>,
}

impl DimTable {
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn get(&self, v: VertexId) -> &BigUint {
        &self.levels[v.level][v.index]
    }

    pub fn level(&self, k: usize) -> &[BigUint] {
        &self.levels[k]
    }

    /// `Σ dim(v)²` over level `k`: the dimension of the `k`-th algebra.
    pub fn sum_of_squares(&self, k: usize) -> BigUint {
        self.levels[k].iter().map(|d| d * d).sum()
    }

    /// Number of root paths of length `k`.
    pub fn path_count(&self, k: usize) -> BigUint {
        self.levels[k].iter().sum()
    }
}

/// Computes `dim(v)` through level `n` by summing over lower neighbours.
pub fn dims_up_to<L: Label>(graph: &GradedGraph<L>, n: usize) -> Result<DimTable> {
    graph.check_level(n)?;
    let mut levels: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    levels.push(vec![BigUint::from(1u32)]);
    for k in 1..=n {
        let prev = &levels[k - 1];
        let row = graph
            .vertices(k)
            .map(|w| graph.down(w).map(|v| &prev[v.index]).sum())
            .collect();
        levels.push(row);
    }
    Ok(DimTable { levels })
}

/// Path counts `dim(source; w)` for every `w` above `source`, up to a top level.
#[derive(Clone, Debug)]
pub struct Cone {
    source: VertexId,
    levels: Vec<Vec<BigUint>>,
    zero: BigUint,
}

impl Cone {
    pub fn new<L: Label>(graph: &GradedGraph<L>, source: VertexId, top: usize) -> Result<Self> {
        if !graph.contains(source) {
            return Err(Error::UnknownVertex(source));
        }
        graph.check_level(top)?;
        if top < source.level {
            return Err(Error::domain(format!(
                "cone top {top} lies below the source level {}",
                source.level
            )));
        }
        let mut first = vec![BigUint::zero(); graph.level_size(source.level)];
        first[source.index] = BigUint::from(1u32);
        let mut levels = vec![first];
        for k in source.level + 1..=top {
            let prev = levels.last().expect("cone has a first level");
            let row = graph
                .vertices(k)
                .map(|w| {
                    let mut acc = BigUint::zero();
                    for v in graph.down(w) {
                        let x = &prev[v.index];
                        if !x.is_zero() {
                            acc += x;
                        }
                    }
                    acc
                })
                .collect();
            levels.push(row);
        }
        Ok(Cone { source, levels, zero: BigUint::zero() })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn top_level(&self) -> usize {
        self.source.level + self.levels.len() - 1
    }

    /// `dim(source; w)`; zero below the source level.
    pub fn get(&self, w: VertexId) -> &BigUint {
        if w.level < self.source.level {
            return &self.zero;
        }
        self.levels
            .get(w.level - self.source.level)
            .and_then(|row| row.get(w.index))
            .unwrap_or(&self.zero)
    }
}

/// Number of paths from `v` up to `w`.
pub fn dim_between<L: Label>(graph: &GradedGraph<L>, v: VertexId, w: VertexId) -> Result<BigUint> {
    if !graph.contains(w) {
        return Err(Error::UnknownVertex(w));
    }
    if v.level > w.level {
        return Err(Error::domain(format!("{v} lies above {w}")));
    }
    Ok(Cone::new(graph, v, w.level)?.get(w).clone())
}

/// Memoised cones, one per source vertex, each built to the graph's top level.
#[derive(Debug)]
pub struct ConeCache<'g, L> {
    graph: &'g GradedGraph<L>,
    cones: HashMap<VertexId, Cone>,
}

impl<'g, L: Label> ConeCache<'g, L> {
    pub fn new(graph: &'g GradedGraph<L>) -> Self {
        ConeCache { graph, cones: HashMap::new() }
    }

    pub fn cone(&mut self, source: VertexId) -> Result<&Cone> {
        if !self.cones.contains_key(&source) {
            let cone = Cone::new(self.graph, source, self.graph.top_level())?;
            self.cones.insert(source, cone);
        }
        Ok(&self.cones[&source])
    }

    pub fn between(&mut self, v: VertexId, w: VertexId) -> Result<BigUint> {
        if !self.graph.contains(w) {
            return Err(Error::UnknownVertex(w));
        }
        if v.level > w.level {
            return Err(Error::domain(format!("{v} lies above {w}")));
        }
        Ok(self.cone(v)?.get(w).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{chain, young};
    use crate::partition::Partition;
    use crate::pascalize::pascalize;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn chain_dims_are_one() {
        let dims = dims_up_to(&chain(10), 10).unwrap();
        for k in 0..=10 {
            assert_eq!(dims.level(k), &[BigUint::from(1u32)]);
        }
    }

    #[test]
    fn young_hook_shape() {
        let g = young(3);
        let dims = dims_up_to(&g, 3).unwrap();
        assert_eq!(dims.get(g.find(3, &p(&[2, 1])).unwrap()), &BigUint::from(2u32));
    }

    #[test]
    fn pascal_young_four_empty() {
        let pg = pascalize(&young(4), 4).unwrap();
        let dims = dims_up_to(pg.graph(), 4).unwrap();
        let v = pg.lift(4, VertexId::ROOT).unwrap();
        assert_eq!(dims.get(v), &BigUint::from(3u32));
    }

    #[test]
    fn between_examples() {
        let pg = pascalize(&chain(6), 6).unwrap();
        let g = pg.graph();
        let from = pg.lift(2, VertexId::ROOT).unwrap();
        let to = pg.lift(6, VertexId::ROOT).unwrap();
        assert_eq!(dim_between(g, from, to).unwrap(), BigUint::from(2u32));
        assert_eq!(dim_between(g, to, to).unwrap(), BigUint::from(1u32));
        assert!(dim_between(g, to, from).is_err());

        let pg = pascalize(&young(4), 4).unwrap();
        let from = pg.lift(2, VertexId::ROOT).unwrap();
        let to = pg.lift(4, VertexId::ROOT).unwrap();
        assert_eq!(dim_between(pg.graph(), from, to).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn cache_matches_direct() {
        let pg = pascalize(&young(6), 6).unwrap();
        let g = pg.graph();
        let mut cache = ConeCache::new(g);
        for v in g.vertices(2) {
            for w in g.vertices(6) {
                assert_eq!(cache.between(v, w).unwrap(), dim_between(g, v, w).unwrap());
            }
        }
    }

    #[test]
    fn horizon_checked() {
        assert!(matches!(dims_up_to(&young(3), 4), Err(Error::Horizon { .. })));
    }
}
