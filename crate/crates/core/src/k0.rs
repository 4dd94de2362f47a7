//! Infinitesimal vertices of a pascalized graph and the finite-level form of
//! the statement that quotienting K₀(Π(Γ)) by them leaves K₀(Γ).
//!
//! K₀ is handled only through the level embedding matrices; deleting the
//! rows and columns of infinitesimal vertices from Π(Γ)'s matrices must
//! leave Γ's matrices, under the identification `(k, λ) ↔ λ` for `|λ| = k`.

use std::collections::BTreeSet;
use std::fmt;

use crate::dimensions::{Criterion, Verdict};
use crate::error::Result;
use crate::graph::{GradedGraph, Label, VertexId};
use crate::pascalize::PascalizedGraph;

/// 0/1 incidence matrix of the edges between level `k` (rows) and `k + 1`
/// (columns).
#[derive(Clone, PartialEq, Eq)]
pub struct LevelEmbeddingMatrix {
    pub level: usize,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl LevelEmbeddingMatrix {
    pub fn of<L: Label>(graph: &GradedGraph<L>, k: usize) -> Result<Self> {
        graph.check_level(k + 1)?;
        let rows = graph.level_size(k);
        let cols = graph.level_size(k + 1);
        let mut entries = vec![0u8; rows * cols];
        for v in graph.vertices(k) {
            for w in graph.up(v) {
                entries[v.index * cols + w.index] = 1;
            }
        }
        Ok(LevelEmbeddingMatrix { level: k, rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols + col]
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c)))
            .collect();
        LevelEmbeddingMatrix { level: self.level, rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn has_zero_row_or_column(&self) -> bool {
        let zero_row = (0..self.rows).any(|r| (0..self.cols).all(|c| self.get(r, c) == 0));
        let zero_col = (0..self.cols).any(|c| (0..self.rows).all(|r| self.get(r, c) == 0));
        zero_row || zero_col
    }
}

impl fmt::Debug for LevelEmbeddingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "level {} ({}x{})", self.level, self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalSet {
    pub vertices: BTreeSet<VertexId>,
    /// False when the criterion fails and nothing can be said from it.
    pub determined: bool,
}

impl InfinitesimalSet {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Off-diagonal vertices through level `n` when the vanishing criterion holds;
/// otherwise an empty, undetermined set.
pub fn infinitesimal_vertices<L: Label>(
    pg: &PascalizedGraph<L>,
    criterion: &Criterion,
    n: usize,
) -> Result<InfinitesimalSet> {
    pg.graph().check_level(n)?;
    if criterion.verdict != Verdict::Vanishes {
        return Ok(InfinitesimalSet { vertices: BTreeSet::new(), determined: false });
    }
    let vertices = (0..=n)
        .flat_map(|k| pg.graph().vertices(k))
        .filter(|&v| !pg.is_diagonal(v))
        .collect();
    Ok(InfinitesimalSet { vertices, determined: true })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Report {
    pub boundaries_checked: usize,
    /// First boundary `k -> k+1` where the reduced matrix differs, with the reason.
    pub failure: Option<(usize, String)>,
}

impl K0Report {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// For every boundary `k < n`, deletes infinitesimal rows and columns from
/// Π(Γ)'s embedding matrix and compares what is left with Γ's matrix.
pub fn k0_quotient_check<L: Label>(
    pg: &PascalizedGraph<L>,
    base: &GradedGraph<L>,
    inf: &InfinitesimalSet,
    n: usize,
) -> Result<K0Report> {
    pg.graph().check_level(n)?;
    base.check_level(n)?;
    let mut report = K0Report { boundaries_checked: 0, failure: None };
    for k in 0..n {
        report.boundaries_checked += 1;
        if let Some(why) = compare_boundary(pg, base, inf, k)? {
            report.failure = Some((k, why));
            break;
        }
    }
    Ok(report)
}

fn compare_boundary<L: Label>(
    pg: &PascalizedGraph<L>,
    base: &GradedGraph<L>,
    inf: &InfinitesimalSet,
    k: usize,
) -> Result<Option<String>> {
    // surviving Π vertices, reordered to match the base level they stand for
    let survivors = |level: usize| -> std::result::Result<Vec<usize>, String> {
        let mut slots = vec![None; base.level_size(level)];
        for v in pg.graph().vertices(level).filter(|&v| !inf.contains(v)) {
            let label = pg.graph().label(v);
            if !label.is_diagonal() {
                return Err(format!("{label} survives but is off the diagonal"));
            }
            let Some(b) = base.find(level, &label.base) else {
                return Err(format!("{label} has no counterpart in the base graph"));
            };
            slots[b.index] = Some(v.index);
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| format!("base vertex {} has no survivor", base.label(VertexId::new(level, i)))))
            .collect()
    };
    let (rows, cols) = match (survivors(k), survivors(k + 1)) {
        (Ok(r), Ok(c)) => (r, c),
        (Err(why), _) | (_, Err(why)) => return Ok(Some(why)),
    };
    let reduced = LevelEmbeddingMatrix::of(pg.graph(), k)?.select(&rows, &cols);
    let expected = LevelEmbeddingMatrix::of(base, k)?;
    if reduced == expected {
        return Ok(None);
    }
    for r in 0..expected.rows() {
        for c in 0..expected.cols() {
            if reduced.get(r, c) != expected.get(r, c) {
                return Ok(Some(format!(
                    "entry {} -> {} is {} after reduction but {} in the base graph",
                    base.label(VertexId::new(k, r)),
                    base.label(VertexId::new(k + 1, c)),
                    reduced.get(r, c),
                    expected.get(r, c)
                )));
            }
        }
    }
    unreachable!("matrices of equal shape differ in some entry")
}
