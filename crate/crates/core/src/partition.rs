//! Integer partitions and pairs of partitions, the vertex labels of the
//! Young-type families.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// A partition stored as its weakly decreasing list of positive parts.
///
/// The empty partition has no parts. Ordering is lexicographic on the parts,
/// so `(1,1,1) < (2,1) < (3)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(Error::InvalidPartition(parts))
        }
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partitions obtained by adding one box, in row order.
    pub fn with_box_added(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for row in 0..=self.0.len() {
            let current = self.0.get(row).copied().unwrap_or(0);
            if row == 0 || self.0[row - 1] > current {
                let mut parts = self.0.clone();
                if row == parts.len() {
                    parts.push(1);
                } else {
                    parts[row] += 1;
                }
                out.push(Partition(parts));
            }
        }
        out
    }

    /// Partitions obtained by removing one box, in row order.
    pub fn with_box_removed(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for row in 0..self.0.len() {
            let next = self.0.get(row + 1).copied().unwrap_or(0);
            if self.0[row] > next {
                let mut parts = self.0.clone();
                parts[row] -= 1;
                if parts[row] == 0 {
                    parts.pop();
                }
                out.push(Partition(parts));
            }
        }
        out
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// A vertex of the walled Young graph: one partition on each side of the wall.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionPair(pub Partition, pub Partition);

impl PartitionPair {
    pub fn size(&self) -> usize {
        self.0.size() + self.1.size()
    }
}

impl fmt::Debug for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// All partitions of `n`, by plain recursion on the largest part. Kept
/// separate from the box-adding construction so it can serve as a check on it.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_malformed_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn box_moves() {
        assert_eq!(p(&[2, 1]).with_box_added(), vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]);
        assert_eq!(p(&[2, 1]).with_box_removed(), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(Partition::empty().with_box_added(), vec![p(&[1])]);
        assert!(Partition::empty().with_box_removed().is_empty());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        let pair = PartitionPair(p(&[2]), Partition::empty());
        assert_eq!(serde_json::to_string(&pair).unwrap(), "[[2],[]]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
