use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::{check_harmonicity, HarmonicAssignment};
use crate::dimensions::{dims_up_to, Criterion, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Label, VertexId};
use crate::pascalize::PascalizedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcentrationReport {
    pub diagonal_checked: usize,
    pub off_diagonal_checked: usize,
    /// First vertex where the lifted measure fails, with the reason.
    pub failure: Option<(VertexId, String)>,
}

impl ConcentrationReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Puts `φ` on the diagonal copy of Γ inside Π(Γ) and zero elsewhere.
pub fn lift_to_pascalized<L: Label>(
    pg: &PascalizedGraph<L>,
    phi: &HarmonicAssignment,
    n: usize,
) -> Result<HarmonicAssignment> {
    if phi.top_level() < n {
        return Err(Error::Horizon { requested: n, available: phi.top_level() });
    }
    HarmonicAssignment::from_fn(pg.graph(), n, |v| {
        if pg.is_diagonal(v) { phi.get(pg.base_vertex(v)).clone() } else { BigRational::zero() }
    })
}

/// Lifts a central measure of Γ to Π(Γ) and checks, through level `n`, that
/// the lift is harmonic on Π(Γ) with all of its mass on the diagonal: the
/// diagonal successors of `(k, λ)` are exactly the `(k+1, Λ)` with `λ↗Λ`, the
/// off-diagonal successors carry zero, and the full harmonicity check passes.
///
/// Refuses to run when the vanishing criterion fails for the base family.
pub fn concentration_check<L: Label>(
    pg: &PascalizedGraph<L>,
    phi: &HarmonicAssignment,
    criterion: &Criterion,
    n: usize,
) -> Result<ConcentrationReport> {
    if criterion.verdict != Verdict::Vanishes {
        return Err(Error::CriterionNotSatisfied(format!(
            "verdict {} ({}); off-diagonal cylinders may carry mass",
            criterion.verdict, criterion.basis
        )));
    }
    pg.graph().check_level(n)?;
    let lifted = lift_to_pascalized(pg, phi, n)?;
    let graph = pg.graph();
    let base = pg.base();
    let mut report = ConcentrationReport { diagonal_checked: 0, off_diagonal_checked: 0, failure: None };
    let fail = |v: VertexId, why: String| Some((v, format!("{}: {why}", graph.label(v))));

    'levels: for k in 0..n {
        for v in graph.vertices(k) {
            let (diagonal_up, off_up): (Vec<_>, Vec<_>) = graph.up(v).partition(|&w| pg.is_diagonal(w));
            let off_mass: BigRational = off_up.iter().map(|&w| lifted.get(w)).sum();
            if !off_mass.is_zero() {
                report.failure = fail(v, format!("off-diagonal successors carry {off_mass}"));
                break 'levels;
            }
            if pg.is_diagonal(v) {
                report.diagonal_checked += 1;
                let expected: BTreeSet<_> = base.up(pg.base_vertex(v)).collect();
                let actual: BTreeSet<_> = diagonal_up.iter().map(|&w| pg.base_vertex(w)).collect();
                if expected != actual {
                    report.failure = fail(v, "diagonal successors differ from base successors".into());
                    break 'levels;
                }
            } else {
                report.off_diagonal_checked += 1;
                if !diagonal_up.is_empty() {
                    report.failure = fail(v, "off-diagonal vertex reaches the diagonal".into());
                    break 'levels;
                }
            }
            let diagonal_mass: BigRational = diagonal_up.iter().map(|&w| lifted.get(w)).sum();
            if diagonal_mass != *lifted.get(v) {
                report.failure =
                    fail(v, format!("value {} but successors sum to {diagonal_mass}", lifted.get(v)));
                break 'levels;
            }
        }
    }
    if report.failure.is_none() {
        let dims = dims_up_to(graph, n)?;
        if let Some(violation) = check_harmonicity(graph, &dims, &lifted, n)?.violation {
            report.failure = Some((VertexId::ROOT, violation.to_string()));
        }
    }
    Ok(report)
}
