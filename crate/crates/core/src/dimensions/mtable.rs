use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::BranchingRatios;
use crate::error::{Error, Result};

/// The multipliers `M(n, l)` with `dim(n, λ) = M(n, |λ|) · dim λ` on a
/// pascalized graph with homogeneous branching.
///
/// Built from
///
/// ```text
/// M(n, n) = 1
/// M(n, 0) = a_1 · M(n-1, 1)
/// M(n, l) = M(n-1, l-1) + a_{l+1} · M(n-1, l+1)      0 < l < n
/// ```
///
/// and defined only for `l <= n` with `n - l` even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MTable {
    rows: Vec<Vec<BigUint>>,
}

impl MTable {
    pub fn top_level(&self) -> usize {
        self.rows.len() - 1
    }

    /// `M(n, l)`, or `None` outside the triangle or for mismatched parity.
    pub fn get(&self, n: usize, l: usize) -> Option<&BigUint> {
        if l > n || !(n - l).is_multiple_of(2) {
            return None;
        }
        self.rows.get(n).map(|row| &row[l])
    }

    /// Overwrites one entry. Intended for fault-injection checks.
    pub fn set(&mut self, n: usize, l: usize, value: BigUint) -> Result<()> {
        if self.get(n, l).is_none() {
            return Err(Error::domain(format!("M({n},{l}) is not a table entry")));
        }
        self.rows[n][l] = value;
        Ok(())
    }

    /// `M(n1, l) / M(n2, l)` as an exact rational.
    pub fn ratio(&self, (n1, l1): (usize, usize), (n2, l2): (usize, usize)) -> Option<BigRational> {
        let num = self.get(n1, l1)?;
        let den = self.get(n2, l2)?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone())))
    }

    /// `m_j = M(2j, 0) / M(2j+2, 0)`.
    pub fn m_ratio(&self, j: usize) -> Option<BigRational> {
        self.ratio((2 * j, 0), (2 * j + 2, 0))
    }
}

/// Builds `M(n, l)` for all levels through `n`. Needs `a_1 ..= a_{n-1}`.
pub fn m_table(a: &BranchingRatios, n: usize) -> Result<MTable> {
    let needed = n.saturating_sub(1);
    if a.len() < needed {
        return Err(Error::InsufficientRatios { needed, available: a.len() });
    }
    let ratio = |l: usize| BigUint::from(a.get(l).expect("checked length"));
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for level in 0..=n {
        let mut row = vec![BigUint::zero(); level + 1];
        row[level] = BigUint::from(1u32);
        for l in (level % 2..level).step_by(2) {
            let prev = &rows[level - 1];
            let mut value = ratio(l + 1) * &prev[l + 1];
            if l > 0 {
                value += &prev[l - 1];
            }
            row[l] = value;
        }
        rows.push(row);
    }
    Ok(MTable { rows })
}

/// `max_{|λ|<n} dim(n-2, λ) / dim(n, λ)`, read off the table as
/// `M(n-2+ε, 0) / M(n+ε, 0)` with `ε = n mod 2`.
pub fn max_shift_ratio(mt: &MTable, n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::domain(format!("shift ratio needs n >= 2, got {n}")));
    }
    let eps = n % 2;
    if n + eps > mt.top_level() {
        return Err(Error::Horizon { requested: n + eps, available: mt.top_level() });
    }
    Ok(mt.ratio((n - 2 + eps, 0), (n + eps, 0)).expect("entries inside the table"))
}

/// The two interleaved ratio chains at index `n >= 2`:
///
/// ```text
/// M(2n-2,0)/M(2n,0) = M(2n-3,1)/M(2n-1,1) > M(2n-2,2)/M(2n,2) > M(2n-3,3)/M(2n-1,3) > ...
/// M(2n-2,0)/M(2n,0) > M(2n-1,1)/M(2n+1,1) > M(2n-2,2)/M(2n,2) > M(2n-1,3)/M(2n+1,3) > ...
/// ```
///
/// Each chain runs while the numerator entry exists.
pub fn ratio_chains(mt: &MTable, n: usize) -> Result<[Vec<BigRational>; 2]> {
    if n < 2 {
        return Err(Error::domain(format!("ratio chains need n >= 2, got {n}")));
    }
    if 2 * n + 1 > mt.top_level() {
        return Err(Error::Horizon { requested: 2 * n + 1, available: mt.top_level() });
    }
    let chain = |odd_level: usize| -> Vec<BigRational> {
        (0..)
            .map_while(|j: usize| {
                let num = if j.is_multiple_of(2) { 2 * n - 2 } else { odd_level };
                (j <= num).then(|| mt.ratio((num, j), (num + 2, j)).expect("entries exist"))
            })
            .collect()
    };
    Ok([chain(2 * n - 3), chain(2 * n - 1)])
}

/// Outcome of checking both ratio chains at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub n: usize,
    pub chains: [Vec<BigRational>; 2],
    /// `(chain, position)` of the first relation that fails.
    pub violation: Option<(usize, usize)>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the equality and strict inequalities of [`ratio_chains`].
pub fn check_ratio_chains(mt: &MTable, n: usize) -> Result<ChainReport> {
    let chains = ratio_chains(mt, n)?;
    let mut violation = None;
    'outer: for (c, chain) in chains.iter().enumerate() {
        for (i, pair) in chain.windows(2).enumerate() {
            let ok = if c == 0 && i == 0 { pair[0] == pair[1] } else { pair[0] > pair[1] };
            if !ok {
                violation = Some((c, i));
                break 'outer;
            }
        }
    }
    Ok(ChainReport { n, chains, violation })
}
