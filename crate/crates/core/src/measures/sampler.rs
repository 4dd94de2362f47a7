//! Seeded random paths grown with probability proportional to `dim`.
//!
//! The generator is SplitMix64: 64 bits of state, seeded directly with the
//! user seed. Independent streams come from [`child_seeds`], which draws the
//! seed of each stream from a parent SplitMix64.

use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::One;
use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::ratio;
use crate::dimensions::DimTable;
use crate::error::{Error, Result};
use crate::graph::{GradedGraph, GraphPath, Label, VertexId};
use crate::partition::Partition;

pub const DEFAULT_SEED: u64 = 20_060_101;

/// Seeds for `count` independent streams derived from `seed`.
pub fn child_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut parent = SplitMix64::seed_from_u64(seed);
    (0..count).map(|_| parent.next_u64()).collect()
}

/// Grows a path to level `n`, stepping from `v` to an upper neighbour `w`
/// with probability `dim(w) / Σ_{v↗w'} dim(w')`.
pub fn sample_path<L: Label>(
    graph: &GradedGraph<L>,
    dims: &DimTable,
    n: usize,
    seed: u64,
) -> Result<GraphPath> {
    check_horizon(graph, dims, n)?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut path = vec![VertexId::ROOT];
    for _ in 0..n {
        let v = *path.last().expect("path starts at the root");
        let total: BigUint = graph.up(v).map(|w| dims.get(w)).sum();
        path.push(choose(graph, dims, v, &total, &mut rng));
    }
    Ok(GraphPath::new_unchecked(path))
}

/// Exact Plancherel transition probabilities out of `λ`:
/// `P(λ → Λ) = dim Λ / ((|λ| + 1) · dim λ)`. Fails if they do not sum to 1,
/// which happens exactly when the graph is not the Young graph at `λ`.
pub fn plancherel_transitions(
    young: &GradedGraph<Partition>,
    dims: &DimTable,
    v: VertexId,
) -> Result<Vec<(VertexId, BigRational)>> {
    let den = BigUint::from(v.level + 1) * dims.get(v);
    let out: Vec<_> = young.up(v).map(|w| (w, ratio(dims.get(w), &den))).collect();
    let sum: BigRational = out.iter().map(|(_, p)| p).sum();
    if !sum.is_one() {
        return Err(Error::NotPlancherel { vertex: young.label(v).to_string(), sum: sum.to_string() });
    }
    Ok(out)
}

/// A path of the Plancherel growth process on the Young graph, up to level `n`.
pub fn plancherel_sample_path(
    young: &GradedGraph<Partition>,
    dims: &DimTable,
    n: usize,
    seed: u64,
) -> Result<GraphPath> {
    check_horizon(young, dims, n)?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut path = vec![VertexId::ROOT];
    for _ in 0..n {
        let v = *path.last().expect("path starts at the root");
        let den = BigUint::from(v.level + 1) * dims.get(v);
        let total: BigUint = young.up(v).map(|w| dims.get(w)).sum();
        if total != den {
            let sum = ratio(&total, &den).to_string();
            return Err(Error::NotPlancherel { vertex: young.label(v).to_string(), sum });
        }
        path.push(choose(young, dims, v, &den, &mut rng));
    }
    Ok(GraphPath::new_unchecked(path))
}

fn check_horizon<L: Label>(graph: &GradedGraph<L>, dims: &DimTable, n: usize) -> Result<()> {
    graph.check_level(n)?;
    if dims.top_level() < n {
        return Err(Error::Horizon { requested: n, available: dims.top_level() });
    }
    Ok(())
}

/// Picks an upper neighbour of `v` with weight `dim(w)`, where `total` is
/// the sum of those weights.
fn choose<L: Label>(
    graph: &GradedGraph<L>,
    dims: &DimTable,
    v: VertexId,
    total: &BigUint,
    rng: &mut SplitMix64,
) -> VertexId {
    let mut r = rng.gen_biguint_below(total);
    for w in graph.up(v) {
        let weight = dims.get(w);
        if r < *weight {
            return w;
        }
        r -= weight;
    }
    unreachable!("draw below the total weight always lands on a neighbour")
}
