//! Graded graphs with a single root, stored level by level.
//!
//! Vertices are addressed by [`VertexId`] (level plus position within the
//! level). Edges only join consecutive levels and are kept in compressed
//! adjacency form in both directions, so a constructed [`GradedGraph`] is
//! immutable and cheap to share between threads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a vertex: its level and its index within that level.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct VertexId {
    pub level: usize,
    pub index: usize,
}

impl VertexId {
    pub const ROOT: VertexId = VertexId { level: 0, index: 0 };

    pub fn new(level: usize, index: usize) -> Self {
        VertexId { level, index }
    }
}

impl From<[usize; 2]> for VertexId {
    fn from([level, index]: [usize; 2]) -> Self {
        VertexId { level, index }
    }
}

impl From<VertexId> for [usize; 2] {
    fn from(v: VertexId) -> Self {
        [v.level, v.index]
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.level, self.index)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Anything usable as a vertex label.
pub trait Label: Clone + Eq + Hash + fmt::Debug + fmt::Display + Serialize + Send + Sync {}

impl<T> Label for T where T: Clone + Eq + Hash + fmt::Debug + fmt::Display + Serialize + Send + Sync {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Compressed adjacency lists for one side of one level boundary.
#[derive(Clone, Debug, Default)]
struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Adjacency {
    fn build(sources: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Self {
        let mut lists = vec![Vec::new(); sources];
        for (s, t) in pairs {
            lists[s].push(t as u32);
        }
        let mut offsets = Vec::with_capacity(sources + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut list in lists {
            list.sort_unstable();
            list.dedup();
            targets.extend(list);
            offsets.push(targets.len() as u32);
        }
        Adjacency { offsets, targets }
    }

    fn of(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    fn len(&self) -> usize {
        self.targets.len()
    }
}

/// A graded graph built through `top_level()`.
#[derive(Clone, Debug)]
pub struct GradedGraph<L> {
    family: String,
    levels: Vec<Vec<L>>,
    lookup: Vec<HashMap<L, usize>>,
    // up[k]: level-k vertex -> its neighbours on level k+1
    up: Vec<Adjacency>,
    // down[k]: level-(k+1) vertex -> its neighbours on level k
    down: Vec<Adjacency>,
}

impl<L: Label> GradedGraph<L> {
    /// Assembles a graph from per-level labels and per-boundary edge lists
    /// `(lower index, upper index)`. Callers guarantee the result is a valid
    /// graded graph; untrusted input goes through [`GradedGraph::from_raw`].
    pub(crate) fn assemble(
        family: impl Into<String>,
        levels: Vec<Vec<L>>,
        boundaries: Vec<Vec<(usize, usize)>>,
    ) -> Self {
        debug_assert_eq!(boundaries.len() + 1, levels.len());
        let lookup = levels
            .iter()
            .map(|labels| labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect())
            .collect();
        let mut up = Vec::with_capacity(boundaries.len());
        let mut down = Vec::with_capacity(boundaries.len());
        for (k, edges) in boundaries.iter().enumerate() {
            up.push(Adjacency::build(levels[k].len(), edges.iter().copied()));
            down.push(Adjacency::build(
                levels[k + 1].len(),
                edges.iter().map(|&(lo, hi)| (hi, lo)),
            ));
        }
        GradedGraph { family: family.into(), levels, lookup, up, down }
    }

    /// Builds a graph from loosely structured input, rejecting it if any
    /// invariant fails.
    pub fn from_raw(raw: RawGraph<L>) -> Result<Self> {
        let report = validate(&raw);
        if !report.is_ok() {
            return Err(Error::InvalidGraph(report.to_string()));
        }
        let mut boundaries = vec![Vec::new(); raw.levels.len().saturating_sub(1)];
        for (lo, hi) in raw.edges {
            boundaries[lo.level].push((lo.index, hi.index));
        }
        Ok(Self::assemble(raw.family, raw.levels, boundaries))
    }

    pub fn to_raw(&self) -> RawGraph<L> {
        let mut edges = Vec::new();
        for k in 0..self.up.len() {
            for i in 0..self.levels[k].len() {
                for &j in self.up[k].of(i) {
                    edges.push((VertexId::new(k, i), VertexId::new(k + 1, j as usize)));
                }
            }
        }
        RawGraph { family: self.family.clone(), levels: self.levels.clone(), edges }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.to_raw())
    }

    /// Copy of the graph restricted to levels `0..=max_level`.
    pub fn truncated(&self, max_level: usize) -> Result<Self> {
        self.check_level(max_level)?;
        Ok(GradedGraph {
            family: self.family.clone(),
            levels: self.levels[..=max_level].to_vec(),
            lookup: self.lookup[..=max_level].to_vec(),
            up: self.up[..max_level].to_vec(),
            down: self.down[..max_level].to_vec(),
        })
    }

    /// Copy of the graph with one edge deleted. The result may violate the
    /// graph invariants; it exists to probe checks that should notice.
    pub fn without_edge(&self, lower: VertexId, upper: VertexId) -> Result<Self> {
        if !self.has_edge(lower, upper)? {
            return Err(Error::domain(format!("no edge {lower} -> {upper}")));
        }
        let mut raw_boundaries: Vec<Vec<(usize, usize)>> = Vec::with_capacity(self.up.len());
        for k in 0..self.up.len() {
            let mut edges = Vec::with_capacity(self.up[k].len());
            for i in 0..self.levels[k].len() {
                for &j in self.up[k].of(i) {
                    if (VertexId::new(k, i), VertexId::new(k + 1, j as usize)) != (lower, upper) {
                        edges.push((i, j as usize));
                    }
                }
            }
            raw_boundaries.push(edges);
        }
        Ok(Self::assemble(self.family.clone(), self.levels.clone(), raw_boundaries))
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    /// Highest constructed level.
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[L] {
        &self.levels[k]
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.levels[k].len()
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self, k: usize) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.levels[k].len()).map(move |i| VertexId::new(k, i))
    }

    pub fn label(&self, v: VertexId) -> &L {
        &self.levels[v.level][v.index]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.level < self.levels.len() && v.index < self.levels[v.level].len()
    }

    pub fn find(&self, level: usize, label: &L) -> Option<VertexId> {
        self.lookup.get(level)?.get(label).map(|&i| VertexId::new(level, i))
    }

    /// Finds the unique vertex whose JSON label equals `label`, optionally
    /// restricted to one level.
    pub fn find_json(&self, label: &serde_json::Value, level: Option<usize>) -> Result<VertexId> {
        let levels = match level {
            Some(k) => {
                self.check_level(k)?;
                k..=k
            }
            None => 0..=self.top_level(),
        };
        let mut hits = Vec::new();
        for k in levels {
            for (i, l) in self.levels[k].iter().enumerate() {
                if serde_json::to_value(l)? == *label {
                    hits.push(VertexId::new(k, i));
                }
            }
        }
        match hits.len() {
            0 => Err(Error::UnknownLabel(label.to_string())),
            1 => Ok(hits[0]),
            count => Err(Error::AmbiguousLabel { label: label.to_string(), count }),
        }
    }

    /// Upper neighbours of `v`; empty on the top level.
    pub fn up(&self, v: VertexId) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        let list = self.up.get(v.level).map(|a| a.of(v.index)).unwrap_or(&[]);
        list.iter().map(move |&j| VertexId::new(v.level + 1, j as usize))
    }

    /// Lower neighbours of `v`; empty for the root.
    pub fn down(&self, v: VertexId) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        let list = match v.level {
            0 => &[][..],
            k => self.down[k - 1].of(v.index),
        };
        list.iter().map(move |&j| VertexId::new(v.level - 1, j as usize))
    }

    /// Checked neighbour query.
    pub fn neighbors(&self, v: VertexId, direction: Direction) -> Result<Vec<VertexId>> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        match direction {
            Direction::Up => {
                self.check_level(v.level + 1)?;
                Ok(self.up(v).collect())
            }
            Direction::Down => Ok(self.down(v).collect()),
        }
    }

    pub fn has_edge(&self, lower: VertexId, upper: VertexId) -> Result<bool> {
        for v in [lower, upper] {
            if !self.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(upper.level == lower.level + 1
            && self.up[lower.level].of(lower.index).binary_search(&(upper.index as u32)).is_ok())
    }

    /// Number of edges between level `k` and level `k + 1`.
    pub fn edge_count(&self, k: usize) -> usize {
        self.up[k].len()
    }

    pub(crate) fn check_level(&self, k: usize) -> Result<()> {
        if k > self.top_level() {
            Err(Error::Horizon { requested: k, available: self.top_level() })
        } else {
            Ok(())
        }
    }
}

/// Unchecked graph data as read from or written to JSON.
///
/// Edges are `[[level, index], [level, index]]` pairs, lower endpoint first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawGraph<L> {
    pub family: String,
    pub levels: Vec<Vec<L>>,
    pub edges: Vec<(VertexId, VertexId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoLevels,
    RootCount(usize),
    EmptyLevel(usize),
    DuplicateLabel { level: usize, label: String },
    UnknownEndpoint(VertexId),
    LevelSkip { lower: VertexId, upper: VertexId },
    DuplicateEdge { lower: VertexId, upper: VertexId },
    NoUpperNeighbor(VertexId),
    NoLowerNeighbor(VertexId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoLevels => write!(f, "graph has no levels"),
            Violation::RootCount(n) => write!(f, "level 0 has {n} vertices, expected exactly 1"),
            Violation::EmptyLevel(k) => write!(f, "level {k} is empty"),
            Violation::DuplicateLabel { level, label } => {
                write!(f, "label {label} appears twice on level {level}")
            }
            Violation::UnknownEndpoint(v) => write!(f, "edge endpoint {v} does not exist"),
            Violation::LevelSkip { lower, upper } => {
                write!(f, "grading violated: edge {lower} -> {upper} does not join consecutive levels")
            }
            Violation::DuplicateEdge { lower, upper } => {
                write!(f, "edge {lower} -> {upper} is repeated")
            }
            Violation::NoUpperNeighbor(v) => write!(f, "dangling vertex {v}: no upper neighbour"),
            Violation::NoLowerNeighbor(v) => write!(f, "dangling vertex {v}: no lower neighbour"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every graded-graph invariant and lists all violations found.
pub fn validate<L: Label>(raw: &RawGraph<L>) -> ValidationReport {
    let mut violations = Vec::new();
    if raw.levels.is_empty() {
        violations.push(Violation::NoLevels);
        return ValidationReport { violations };
    }
    if raw.levels[0].len() != 1 {
        violations.push(Violation::RootCount(raw.levels[0].len()));
    }
    for (k, labels) in raw.levels.iter().enumerate().skip(1) {
        if labels.is_empty() {
            violations.push(Violation::EmptyLevel(k));
        }
    }
    for (k, labels) in raw.levels.iter().enumerate() {
        let mut seen = std::collections::HashSet::new();
        for l in labels {
            if !seen.insert(l) {
                violations.push(Violation::DuplicateLabel { level: k, label: l.to_string() });
            }
        }
    }

    let exists = |v: VertexId| v.level < raw.levels.len() && v.index < raw.levels[v.level].len();
    let mut has_up = BTreeSet::new();
    let mut has_down = BTreeSet::new();
    let mut seen_edges = BTreeSet::new();
    for &(lower, upper) in &raw.edges {
        let mut endpoints_ok = true;
        for v in [lower, upper] {
            if !exists(v) {
                violations.push(Violation::UnknownEndpoint(v));
                endpoints_ok = false;
            }
        }
        if !endpoints_ok {
            continue;
        }
        if upper.level != lower.level + 1 {
            violations.push(Violation::LevelSkip { lower, upper });
            continue;
        }
        if !seen_edges.insert((lower, upper)) {
            violations.push(Violation::DuplicateEdge { lower, upper });
        }
        has_up.insert(lower);
        has_down.insert(upper);
    }

    let top = raw.levels.len() - 1;
    for (k, labels) in raw.levels.iter().enumerate() {
        for i in 0..labels.len() {
            let v = VertexId::new(k, i);
            if k < top && !has_up.contains(&v) {
                violations.push(Violation::NoUpperNeighbor(v));
            }
            if k > 0 && !has_down.contains(&v) {
                violations.push(Violation::NoLowerNeighbor(v));
            }
        }
    }
    ValidationReport { violations }
}

/// A root-to-vertex path `v0 -> v1 -> ... -> vn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GraphPath(Vec<VertexId>);

impl GraphPath {
    /// Checks that `vertices` starts at the root and follows edges of `graph`.
    pub fn new<L: Label>(graph: &GradedGraph<L>, vertices: Vec<VertexId>) -> Result<Self> {
        let Some(&first) = vertices.first() else {
            return Err(Error::InvalidPath { step: 0, reason: "empty path".into() });
        };
        if first != VertexId::ROOT || !graph.contains(first) {
            return Err(Error::InvalidPath { step: 0, reason: format!("{first} is not the root") });
        }
        for (step, pair) in vertices.windows(2).enumerate() {
            let ok = graph.contains(pair[1]) && graph.has_edge(pair[0], pair[1])?;
            if !ok {
                return Err(Error::InvalidPath {
                    step: step + 1,
                    reason: format!("no edge {} -> {}", pair[0], pair[1]),
                });
            }
        }
        Ok(GraphPath(vertices))
    }

    pub(crate) fn new_unchecked(vertices: Vec<VertexId>) -> Self {
        GraphPath(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Level of the last vertex.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }

    /// Vertex at level `n`.
    pub fn at(&self, n: usize) -> Option<VertexId> {
        self.0.get(n).copied()
    }
}
