//! The pascalized graph Π(Γ).
//!
//! Level `k` of Π(Γ) holds a copy of every base level `i <= k` with
//! `k - i` even, and `(k, λ) -> (k+1, ν)` is an edge exactly when `λ` and `ν`
//! are adjacent in Γ, in either direction. A path in Π(Γ) is therefore the
//! same thing as a nearest-neighbour walk on Γ started at the root.
//!
//! Within a level, vertices are grouped by base level, highest first, so the
//! diagonal copy of Γ_k always occupies indices `0..|Γ_k|`.

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::error::{Error, Result};
use crate::graph::{GradedGraph, GraphPath, Label, VertexId};

/// Label of a Π(Γ) vertex: the Π level, the base level and the base label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PascalLabel<L> {
    pub level: usize,
    pub base_level: usize,
    pub base: L,
}

impl<L> PascalLabel<L> {
    /// True for the embedded copy of Γ, i.e. `|λ| = k`.
    pub fn is_diagonal(&self) -> bool {
        self.level == self.base_level
    }
}

impl<L: Serialize> Serialize for PascalLabel<L> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.level)?;
        t.serialize_element(&self.base)?;
        t.end()
    }
}

impl<L: fmt::Display> fmt::Display for PascalLabel<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.base)
    }
}

impl<L: fmt::Debug> fmt::Debug for PascalLabel<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{:?})", self.level, self.base)
    }
}

/// A nearest-neighbour walk on a base graph, starting at its root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTrajectory(Vec<VertexId>);

impl WalkTrajectory {
    pub fn new(steps: Vec<VertexId>) -> Self {
        WalkTrajectory(steps)
    }

    pub fn steps(&self) -> &[VertexId] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct PascalizedGraph<L> {
    graph: GradedGraph<PascalLabel<L>>,
    base: Arc<GradedGraph<L>>,
    // block_starts[k][b]: first index on Π level k of base level k - 2b
    block_starts: Vec<Vec<usize>>,
}

impl<L: Label> PascalizedGraph<L> {
    /// Builds Π(base) through `max_level`.
    pub fn new(base: &GradedGraph<L>, max_level: usize) -> Result<Self> {
        let base = Arc::new(base.truncated(max_level)?);
        Ok(Self::from_arc(base, max_level))
    }

    fn from_arc(base: Arc<GradedGraph<L>>, max_level: usize) -> Self {
        let block_starts: Vec<Vec<usize>> = (0..=max_level)
            .map(|k| {
                let mut starts = Vec::with_capacity(k / 2 + 1);
                let mut acc = 0;
                for i in (k % 2..=k).rev().step_by(2) {
                    starts.push(acc);
                    acc += base.level_size(i);
                }
                starts
            })
            .collect();

        let levels: Vec<Vec<PascalLabel<L>>> = (0..=max_level)
            .map(|k| {
                (k % 2..=k)
                    .rev()
                    .step_by(2)
                    .flat_map(|i| {
                        base.level(i).iter().map(move |l| PascalLabel {
                            level: k,
                            base_level: i,
                            base: l.clone(),
                        })
                    })
                    .collect()
            })
            .collect();

        let position = |k: usize, b: VertexId| block_starts[k][(k - b.level) / 2] + b.index;
        let mut boundaries = Vec::with_capacity(max_level);
        for k in 0..max_level {
            let mut edges = Vec::new();
            for i in (k % 2..=k).rev().step_by(2) {
                for u in base.vertices(i) {
                    let from = position(k, u);
                    for w in base.up(u).chain(base.down(u)) {
                        edges.push((from, position(k + 1, w)));
                    }
                }
            }
            boundaries.push(edges);
        }
        let family = format!("pascalized_{}", base.family());
        let graph = GradedGraph::assemble(family, levels, boundaries);
        PascalizedGraph { graph, base, block_starts }
    }

    pub fn graph(&self) -> &GradedGraph<PascalLabel<L>> {
        &self.graph
    }

    pub fn base(&self) -> &GradedGraph<L> {
        &self.base
    }

    pub fn top_level(&self) -> usize {
        self.graph.top_level()
    }

    /// The base vertex λ of `(k, λ)`.
    pub fn base_vertex(&self, v: VertexId) -> VertexId {
        let starts = &self.block_starts[v.level];
        let block = starts.partition_point(|&s| s <= v.index) - 1;
        VertexId::new(v.level - 2 * block, v.index - starts[block])
    }

    /// The Π vertex `(k, λ)` for base vertex `λ`, if it exists on level `k`.
    pub fn lift(&self, k: usize, base: VertexId) -> Option<VertexId> {
        if k > self.top_level() || base.level > k || !(k - base.level).is_multiple_of(2) {
            return None;
        }
        if !self.base.contains(base) {
            return None;
        }
        Some(VertexId::new(k, self.block_starts[k][(k - base.level) / 2] + base.index))
    }

    pub fn is_diagonal(&self, v: VertexId) -> bool {
        self.graph.label(v).is_diagonal()
    }

    /// Number of diagonal vertices on level `k`, which come first.
    pub fn diagonal_len(&self, k: usize) -> usize {
        self.base.level_size(k)
    }

    /// Reads off the base walk traced by a Π path.
    pub fn walk_of_path(&self, path: &GraphPath) -> WalkTrajectory {
        WalkTrajectory(path.vertices().iter().map(|&v| self.base_vertex(v)).collect())
    }

    /// The unique Π path whose base labels follow `walk`.
    pub fn path_of_walk(&self, walk: &WalkTrajectory) -> Result<GraphPath> {
        let steps = walk.steps();
        let Some(&first) = steps.first() else {
            return Err(Error::InvalidWalk { step: 0, reason: "empty walk".into() });
        };
        if first != VertexId::ROOT {
            return Err(Error::InvalidWalk { step: 0, reason: format!("{first} is not the root") });
        }
        if steps.len() - 1 > self.top_level() {
            return Err(Error::Horizon { requested: steps.len() - 1, available: self.top_level() });
        }
        let mut out = Vec::with_capacity(steps.len());
        for (k, &x) in steps.iter().enumerate() {
            if k > 0 {
                let prev = steps[k - 1];
                let adjacent = self.base.contains(x)
                    && (self.base.up(prev).any(|w| w == x) || self.base.down(prev).any(|w| w == x));
                if !adjacent {
                    return Err(Error::InvalidWalk {
                        step: k,
                        reason: format!("{prev} and {x} are not adjacent in the base graph"),
                    });
                }
            }
            out.push(self.lift(k, x).expect("parity of an adjacent walk matches the level"));
        }
        Ok(GraphPath::new_unchecked(out))
    }

    /// Copy with one Π edge removed; see [`GradedGraph::without_edge`].
    pub fn without_edge(&self, lower: VertexId, upper: VertexId) -> Result<Self> {
        Ok(PascalizedGraph {
            graph: self.graph.without_edge(lower, upper)?,
            base: Arc::clone(&self.base),
            block_starts: self.block_starts.clone(),
        })
    }
}

/// Builds Π(base) through `max_level`.
pub fn pascalize<L: Label>(base: &GradedGraph<L>, max_level: usize) -> Result<PascalizedGraph<L>> {
    PascalizedGraph::new(base, max_level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{chain, young};
    use crate::partition::Partition;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn labels<L: Label>(pg: &PascalizedGraph<L>, k: usize) -> Vec<(usize, L)> {
        pg.graph().level(k).iter().map(|l| (l.level, l.base.clone())).collect()
    }

    #[test]
    fn half_pascal_levels() {
        let pg = pascalize(&chain(4), 4).unwrap();
        assert_eq!(labels(&pg, 4), vec![(4, 4), (4, 2), (4, 0)]);
        assert_eq!(labels(&pg, 3), vec![(3, 3), (3, 1)]);
    }

    #[test]
    fn young_level_two() {
        let pg = pascalize(&young(2), 2).unwrap();
        assert_eq!(labels(&pg, 2), vec![(2, p(&[2])), (2, p(&[1, 1])), (2, Partition::empty())]);
    }

    #[test]
    fn up_from_two_empty() {
        let base = young(3);
        let pg = pascalize(&base, 3).unwrap();
        let v = pg.lift(2, VertexId::ROOT).unwrap();
        let up: Vec<_> = pg.graph().up(v).map(|w| pg.graph().label(w).clone()).collect();
        assert_eq!(up, vec![PascalLabel { level: 3, base_level: 1, base: p(&[1]) }]);
    }

    #[test]
    fn horizon_error() {
        assert!(matches!(pascalize(&young(3), 5), Err(Error::Horizon { .. })));
    }

    #[test]
    fn walks_and_paths() {
        let base = chain(4);
        let pg = pascalize(&base, 4).unwrap();
        let walk = WalkTrajectory::new(
            [0, 1, 0, 1].iter().map(|&l| VertexId::new(l, 0)).collect(),
        );
        let path = pg.path_of_walk(&walk).unwrap();
        let got: Vec<_> = path
            .vertices()
            .iter()
            .map(|&v| {
                let l = pg.graph().label(v);
                (l.level, l.base)
            })
            .collect();
        assert_eq!(got, vec![(0, 0), (1, 1), (2, 0), (3, 1)]);
        assert_eq!(pg.walk_of_path(&path), walk);

        let jump = WalkTrajectory::new(vec![VertexId::ROOT, VertexId::new(2, 0)]);
        assert!(matches!(pg.path_of_walk(&jump), Err(Error::InvalidWalk { step: 1, .. })));
    }

    #[test]
    fn young_walk_round_trip() {
        let base = young(3);
        let pg = pascalize(&base, 3).unwrap();
        let one = base.find(1, &p(&[1])).unwrap();
        let two = base.find(2, &p(&[2])).unwrap();
        let walk = WalkTrajectory::new(vec![VertexId::ROOT, one, two, one]);
        let path = pg.path_of_walk(&walk).unwrap();
        assert!(GraphPath::new(pg.graph(), path.vertices().to_vec()).is_ok());
        assert_eq!(pg.walk_of_path(&path), walk);

        let diagonal = WalkTrajectory::new(vec![VertexId::ROOT, one, two]);
        let path = pg.path_of_walk(&diagonal).unwrap();
        assert!(path.vertices().iter().all(|&v| pg.is_diagonal(v)));
    }

    #[test]
    fn json_label() {
        let pg = pascalize(&young(2), 2).unwrap();
        let v = pg.lift(2, VertexId::ROOT).unwrap();
        assert_eq!(serde_json::to_string(pg.graph().label(v)).unwrap(), "[2,[]]");
    }
}
