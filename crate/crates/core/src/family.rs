//! The built-in branching graphs: the chain ℤ₊, the Young graph, the walled
//! Young graph (branching of `S_⌈n/2⌉ × S_⌊n/2⌋`) and the doubled Young graph
//! (each Young level repeated twice).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::GradedGraph;
use crate::partition::{Partition, PartitionPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Chain,
    Young,
    WalledYoung,
    DoubledYoung,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::Chain, Family::Young, Family::WalledYoung, Family::DoubledYoung];

    pub fn name(self) -> &'static str {
        match self {
            Family::Chain => "chain",
            Family::Young => "young",
            Family::WalledYoung => "walled_young",
            Family::DoubledYoung => "doubled_young",
        }
    }

    /// Closed form of `a_l = [dim A_l / dim A_{l-1}]` for the algebra tower
    /// behind the family, `l >= 1`.
    pub fn branching_ratio(self, l: usize) -> u64 {
        assert!(l >= 1, "branching ratios are indexed from 1");
        let l = l as u64;
        match self {
            Family::Chain => 1,
            Family::Young => l,
            Family::WalledYoung => l.div_ceil(2),
            Family::DoubledYoung if l.is_multiple_of(2) => l / 2,
            Family::DoubledYoung => 1,
        }
    }

    /// Whether the closed-form ratio sequence is unbounded.
    pub fn ratios_unbounded(self) -> bool {
        !matches!(self, Family::Chain)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "chain" => Ok(Family::Chain),
            "young" => Ok(Family::Young),
            "walled_young" | "walled" => Ok(Family::WalledYoung),
            "doubled_young" | "doubled" => Ok(Family::DoubledYoung),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A built-in family graph with its concrete label type.
#[derive(Clone, Debug)]
pub enum FamilyGraph {
    Chain(GradedGraph<u32>),
    Young(GradedGraph<Partition>),
    WalledYoung(GradedGraph<PartitionPair>),
    DoubledYoung(GradedGraph<Partition>),
}

pub fn build_family(family: Family, max_level: usize) -> FamilyGraph {
    match family {
        Family::Chain => FamilyGraph::Chain(chain(max_level)),
        Family::Young => FamilyGraph::Young(young(max_level)),
        Family::WalledYoung => FamilyGraph::WalledYoung(walled_young(max_level)),
        Family::DoubledYoung => FamilyGraph::DoubledYoung(doubled_young(max_level)),
    }
}

/// Levels `{0}, {1}, ..., {max_level}` with edges `n -> n+1`.
pub fn chain(max_level: usize) -> GradedGraph<u32> {
    let levels = (0..=max_level as u32).map(|n| vec![n]).collect();
    let boundaries = vec![vec![(0, 0)]; max_level];
    GradedGraph::assemble(Family::Chain.name(), levels, boundaries)
}

/// Partitions of `n` on level `n`, single-box additions as edges.
pub fn young(max_level: usize) -> GradedGraph<Partition> {
    let mut levels = vec![vec![Partition::empty()]];
    let mut boundaries = Vec::with_capacity(max_level);
    for k in 0..max_level {
        let (next, edges) = grow(&levels[k], |p| p.with_box_added());
        levels.push(next);
        boundaries.push(edges);
    }
    GradedGraph::assemble(Family::Young.name(), levels, boundaries)
}

/// Pairs of partitions; the step from level `2j` to `2j+1` adds a box to the
/// first partition and the step from `2j+1` to `2j+2` adds one to the second.
pub fn walled_young(max_level: usize) -> GradedGraph<PartitionPair> {
    let mut levels = vec![vec![PartitionPair::default()]];
    let mut boundaries = Vec::with_capacity(max_level);
    for k in 0..max_level {
        let grow_left = k % 2 == 0;
        let (next, edges) = grow(&levels[k], |PartitionPair(left, right)| {
            if grow_left {
                left.with_box_added().into_iter().map(|l| PartitionPair(l, right.clone())).collect()
            } else {
                right.with_box_added().into_iter().map(|r| PartitionPair(left.clone(), r)).collect()
            }
        });
        levels.push(next);
        boundaries.push(edges);
    }
    GradedGraph::assemble(Family::WalledYoung.name(), levels, boundaries)
}

/// Young levels repeated twice: level `2i` and `2i+1` both hold the partitions
/// of `i`. The step `2i -> 2i+1` joins each partition to its copy; the step
/// `2i+1 -> 2i+2` adds a box.
pub fn doubled_young(max_level: usize) -> GradedGraph<Partition> {
    let mut levels = vec![vec![Partition::empty()]];
    let mut boundaries = Vec::with_capacity(max_level);
    for k in 0..max_level {
        let (next, edges) = if k % 2 == 0 {
            let copy = levels[k].clone();
            let edges = (0..copy.len()).map(|i| (i, i)).collect();
            (copy, edges)
        } else {
            grow(&levels[k], |p| p.with_box_added())
        };
        levels.push(next);
        boundaries.push(edges);
    }
    GradedGraph::assemble(Family::DoubledYoung.name(), levels, boundaries)
}

/// Builds the next level from `successors`, ordered in descending
/// lexicographic order, together with the boundary edges.
fn grow<L, F>(current: &[L], successors: F) -> (Vec<L>, Vec<(usize, usize)>)
where
    L: Clone + Ord + std::hash::Hash,
    F: Fn(&L) -> Vec<L>,
{
    let per_vertex: Vec<Vec<L>> = current.iter().map(&successors).collect();
    let distinct: BTreeSet<&L> = per_vertex.iter().flatten().collect();
    let next: Vec<L> = distinct.into_iter().rev().cloned().collect();
    let position: std::collections::HashMap<&L, usize> =
        next.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut edges = Vec::new();
    for (i, succ) in per_vertex.iter().enumerate() {
        for s in succ {
            edges.push((i, position[s]));
        }
    }
    (next, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Direction, VertexId};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn chain_levels() {
        let g = chain(5);
        assert_eq!(g.top_level(), 5);
        for k in 0..5 {
            assert_eq!(g.level(k), &[k as u32]);
            assert_eq!(g.up(VertexId::new(k, 0)).collect::<Vec<_>>(), vec![VertexId::new(k + 1, 0)]);
        }
        let three = g.find(3, &3).unwrap();
        let up = g.neighbors(three, Direction::Up).unwrap();
        assert_eq!(g.label(up[0]), &4);
    }

    #[test]
    fn young_level_three() {
        let g = young(3);
        assert_eq!(g.level(3), &[p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn young_neighbors_of_21() {
        let g = young(4);
        let v = g.find(3, &p(&[2, 1])).unwrap();
        let labels = |vs: Vec<VertexId>| vs.into_iter().map(|w| g.label(w).clone()).collect::<BTreeSet<_>>();
        assert_eq!(
            labels(g.neighbors(v, Direction::Up).unwrap()),
            [p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])].into_iter().collect()
        );
        assert_eq!(
            labels(g.neighbors(v, Direction::Down).unwrap()),
            [p(&[2]), p(&[1, 1])].into_iter().collect()
        );
    }

    #[test]
    fn walled_level_three() {
        let g = walled_young(3);
        let expected: BTreeSet<_> = [
            PartitionPair(p(&[2]), p(&[1])),
            PartitionPair(p(&[1, 1]), p(&[1])),
        ]
        .into_iter()
        .collect();
        assert_eq!(g.level(3).iter().cloned().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn doubled_levels() {
        let g = doubled_young(3);
        assert_eq!(g.level(2), &[p(&[1])]);
        assert_eq!(g.level(3), &[p(&[1])]);
        assert_eq!(g.level(1), &[Partition::empty()]);
    }

    #[test]
    fn families_validate() {
        assert!(chain(6).validate().is_ok());
        assert!(young(6).validate().is_ok());
        assert!(walled_young(6).validate().is_ok());
        assert!(doubled_young(6).validate().is_ok());
    }

    #[test]
    fn closed_form_ratios() {
        let take = |f: Family| (1..=8).map(|l| f.branching_ratio(l)).collect::<Vec<_>>();
        assert_eq!(take(Family::Chain), vec![1; 8]);
        assert_eq!(take(Family::Young), vec![1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(take(Family::WalledYoung), vec![1, 1, 2, 2, 3, 3, 4, 4]);
        assert_eq!(take(Family::DoubledYoung), vec![1, 1, 1, 2, 1, 3, 1, 4]);
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("pascal".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }
}
