use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::{DimTable, MTable};
use crate::error::{Error, Result};
use crate::graph::{Label, VertexId};
use crate::pascalize::PascalizedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityFailure {
    pub vertex: VertexId,
    pub label: String,
    pub actual: BigUint,
    pub expected: BigUint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicativityReport {
    pub checked: usize,
    pub failures: Vec<MultiplicativityFailure>,
}

impl MultiplicativityReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `dim(n, λ)` in Π(Γ) with `M(n, |λ|) · dim λ` for every vertex
/// through level `n`.
pub fn verify_multiplicativity<L: Label>(
    pg: &PascalizedGraph<L>,
    dims: &DimTable,
    base_dims: &DimTable,
    mt: &MTable,
    n: usize,
) -> Result<MultiplicativityReport> {
    for available in [pg.top_level(), dims.top_level(), base_dims.top_level(), mt.top_level()] {
        if available < n {
            return Err(Error::Horizon { requested: n, available });
        }
    }
    let mut report = MultiplicativityReport::default();
    for k in 0..=n {
        for v in pg.graph().vertices(k) {
            let base = pg.base_vertex(v);
            let m = mt.get(k, base.level).expect("Π vertices have matching parity");
            let expected = m * base_dims.get(base);
            let actual = dims.get(v);
            report.checked += 1;
            if *actual != expected {
                report.failures.push(MultiplicativityFailure {
                    vertex: v,
                    label: pg.graph().label(v).to_string(),
                    actual: actual.clone(),
                    expected,
                });
            }
        }
    }
    Ok(report)
}

/// `max dim(n-2, λ) / dim(n, λ)` over the off-diagonal vertices of level `n`,
/// computed directly from path counts.
pub fn observed_max_shift_ratio<L: Label>(
    pg: &PascalizedGraph<L>,
    dims: &DimTable,
    n: usize,
) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::domain(format!("shift ratio needs n >= 2, got {n}")));
    }
    if dims.top_level() < n {
        return Err(Error::Horizon { requested: n, available: dims.top_level() });
    }
    pg.graph()
        .vertices(n)
        .filter(|&v| !pg.is_diagonal(v))
        .map(|v| {
            let lower = pg.lift(n - 2, pg.base_vertex(v)).expect("off-diagonal vertex shifts down");
            BigRational::new(BigInt::from(dims.get(lower).clone()), BigInt::from(dims.get(v).clone()))
        })
        .max()
        .ok_or_else(|| Error::domain(format!("level {n} has no off-diagonal vertices")))
}
