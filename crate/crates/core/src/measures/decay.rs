use num_bigint::BigUint;
use num_rational::BigRational;

use super::{ergodic_estimate_with_cone, integer};
use crate::dimensions::{max_shift_ratio, Cone, DimTable, MTable};
use crate::error::{Error, Result};
use crate::graph::{GraphPath, Label, VertexId};
use crate::pascalize::PascalizedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecayRow {
    pub level: usize,
    /// `dim(n₀, λ) · max_{|μ|<n} dim(n-2, μ) / dim(n, μ)`.
    pub bound: BigRational,
    /// Ergodic value along the supplied path, if one was given.
    pub estimate: Option<BigRational>,
}

/// Upper bounds on the cylinder measure of an off-diagonal vertex `(n₀, λ)`
/// of Π(Γ), one per level `n = n₀+1 ..= horizon`.
///
/// The bound at level `n` uses the largest shift ratio on that level, which
/// is the same for the two levels `2j+1` and `2j+2`; [`Self::distinct_bounds`]
/// collapses those repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecayReport {
    pub target: VertexId,
    pub label: String,
    pub prefactor: BigUint,
    pub rows: Vec<DecayRow>,
}

impl DecayReport {
    pub fn distinct_bounds(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = Vec::new();
        for row in &self.rows {
            if out.last() != Some(&row.bound) {
                out.push(row.bound.clone());
            }
        }
        out
    }

    pub fn bounds_strictly_decreasing(&self) -> bool {
        self.distinct_bounds().windows(2).all(|w| w[1] < w[0])
    }

    /// Level of the first row whose estimate exceeds its bound.
    pub fn first_bound_violation(&self) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.estimate.as_ref().is_some_and(|e| *e > r.bound))
            .map(|r| r.level)
    }
}

pub fn cylinder_decay_report<L: Label>(
    pg: &PascalizedGraph<L>,
    dims: &DimTable,
    mt: &MTable,
    target: VertexId,
    horizon: usize,
    path: Option<&GraphPath>,
) -> Result<DecayReport> {
    let graph = pg.graph();
    if !graph.contains(target) {
        return Err(Error::UnknownVertex(target));
    }
    if pg.is_diagonal(target) {
        return Err(Error::DiagonalVertex(graph.label(target).to_string()));
    }
    if horizon <= target.level {
        return Err(Error::domain(format!(
            "horizon {horizon} must exceed the target level {}",
            target.level
        )));
    }
    let prefactor = dims.get(target).clone();
    let scale = integer(&prefactor);

    let estimates = match path {
        Some(path) => {
            let cone = Cone::new(graph, target, horizon)?;
            Some(ergodic_estimate_with_cone(&cone, dims, path, horizon)?)
        }
        None => None,
    };

    let rows = (target.level + 1..=horizon)
        .map(|n| {
            Ok(DecayRow {
                level: n,
                bound: &scale * max_shift_ratio(mt, n)?,
                estimate: estimates.as_ref().and_then(|e| e.at(n).cloned()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecayReport { target, label: graph.label(target).to_string(), prefactor, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimensions::{dims_up_to, m_table, BranchingRatios};
    use crate::family::{chain, young, Family};
    use crate::pascalize::pascalize;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn young_two_empty() {
        let pg = pascalize(&young(20), 20).unwrap();
        let dims = dims_up_to(pg.graph(), 20).unwrap();
        let mt = m_table(&BranchingRatios::from_family(Family::Young, 21), 21).unwrap();
        let target = pg.lift(2, VertexId::ROOT).unwrap();
        let report = cylinder_decay_report(&pg, &dims, &mt, target, 20, None).unwrap();
        let bounds = report.distinct_bounds();
        assert_eq!(&bounds[..2], &[q(1, 3), q(1, 5)]);
        assert!(report.bounds_strictly_decreasing());
        assert_eq!(report.rows.len(), 18);
    }

    #[test]
    fn young_three_one_prefactor() {
        let base = young(8);
        let pg = pascalize(&base, 8).unwrap();
        let dims = dims_up_to(pg.graph(), 8).unwrap();
        let mt = m_table(&BranchingRatios::from_family(Family::Young, 9), 9).unwrap();
        let one = base.find(1, &crate::Partition::new(vec![1]).unwrap()).unwrap();
        let target = pg.lift(3, one).unwrap();
        let report = cylinder_decay_report(&pg, &dims, &mt, target, 8, None).unwrap();
        assert_eq!(report.prefactor, BigUint::from(3u32));
        assert!(report.bounds_strictly_decreasing());
    }

    #[test]
    fn chain_does_not_vanish() {
        let pg = pascalize(&chain(50), 50).unwrap();
        let dims = dims_up_to(pg.graph(), 50).unwrap();
        let mt = m_table(&BranchingRatios::from_family(Family::Chain, 51), 51).unwrap();
        let target = pg.lift(2, VertexId::ROOT).unwrap();
        let report = cylinder_decay_report(&pg, &dims, &mt, target, 50, None).unwrap();
        assert!(report.bounds_strictly_decreasing());
        let last = report.rows.last().unwrap().bound.clone();
        assert!(last > q(1, 4) && last < q(27, 100), "{last}");
    }

    #[test]
    fn diagonal_target_rejected() {
        let pg = pascalize(&young(4), 4).unwrap();
        let dims = dims_up_to(pg.graph(), 4).unwrap();
        let mt = m_table(&BranchingRatios::from_family(Family::Young, 5), 5).unwrap();
        let target = VertexId::new(2, 0);
        assert!(pg.is_diagonal(target));
        assert!(matches!(
            cylinder_decay_report(&pg, &dims, &mt, target, 4, None),
            Err(Error::DiagonalVertex(_))
        ));
    }
}
