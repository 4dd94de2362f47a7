use std::fmt;

use num_rational::BigRational;

use super::{m_table, BranchingRatios};
use crate::error::{Error, Result};
use crate::family::Family;

/// Limit behaviour of `max_{|λ|<n} dim(n-2, λ) / dim(n, λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The limit is 0: off-diagonal cylinders are null for every central measure.
    Vanishes,
    /// The limit is positive.
    PositiveLimit,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Vanishes => "vanishes",
            Verdict::PositiveLimit => "positive_limit",
        })
    }
}

/// Where the verdict comes from. A finite prefix cannot decide whether
/// `sup a_l` is infinite, so unknown sequences only get a heuristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictBasis {
    /// Closed-form `a_l` of a built-in family.
    ClosedForm(Family),
    /// `a_l` set a new running maximum `records` times within the horizon;
    /// three or more records count as unbounded growth.
    GrowthHeuristic { records: usize },
}

impl fmt::Display for VerdictBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictBasis::ClosedForm(family) => write!(f, "closed form ({family})"),
            VerdictBasis::GrowthHeuristic { records } => {
                write!(f, "growth heuristic ({records} new maxima)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub verdict: Verdict,
    pub basis: VerdictBasis,
    /// `m_j = M(2j, 0) / M(2j+2, 0)` for `j = 0..=horizon`.
    pub ratios: Vec<BigRational>,
}

impl Criterion {
    pub fn is_heuristic(&self) -> bool {
        matches!(self.basis, VerdictBasis::GrowthHeuristic { .. })
    }

    /// Index of the first `j` with `m_{j+1} >= m_j`, if any.
    pub fn first_non_decrease(&self) -> Option<usize> {
        self.ratios.windows(2).position(|w| w[1] >= w[0])
    }
}

const RECORDS_FOR_UNBOUNDED: usize = 3;

/// Decides whether the shift ratio tends to zero, i.e. whether `sup a_l`
/// is infinite, and reports the ratio sequence `m_0 ..= m_horizon`.
pub fn vanishing_criterion(a: &BranchingRatios, horizon: usize) -> Result<Criterion> {
    if horizon < 4 {
        return Err(Error::domain(format!("criterion horizon must be at least 4, got {horizon}")));
    }
    let top = 2 * horizon + 2;
    let a = a.extended_to(top - 1)?;
    let mt = m_table(&a, top)?;
    let ratios = (0..=horizon).map(|j| mt.m_ratio(j).expect("inside the table")).collect();

    let (verdict, basis) = match a.family() {
        Some(family) => {
            let verdict =
                if family.ratios_unbounded() { Verdict::Vanishes } else { Verdict::PositiveLimit };
            (verdict, VerdictBasis::ClosedForm(family))
        }
        None => {
            let records = new_maxima(&a.values()[..top - 1]);
            let verdict = if records >= RECORDS_FOR_UNBOUNDED {
                Verdict::Vanishes
            } else {
                Verdict::PositiveLimit
            };
            (verdict, VerdictBasis::GrowthHeuristic { records })
        }
    };
    Ok(Criterion { verdict, basis, ratios })
}

/// Number of positions after the first where the sequence exceeds every
/// earlier value.
fn new_maxima(values: &[u64]) -> usize {
    let mut iter = values.iter();
    let Some(&first) = iter.next() else { return 0 };
    let mut best = first;
    let mut records = 0;
    for &v in iter {
        if v > best {
            best = v;
            records += 1;
        }
    }
    records
}
