//! Integer partitions.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition stored as a weakly decreasing list of positive parts.
///
/// The derived order is lexicographic on the parts, so `(1,1) < (2)`.
/// [`partitions_of`] lists partitions in the reverse of that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Build from arbitrary parts. Zeros are dropped and parts are sorted.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// Product of factorials of the part multiplicities.
    pub fn aut(&self) -> u64 {
        let mut out = 1u64;
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            for f in 1..=(j - i) as u64 {
                out *= f;
            }
            i = j;
        }
        out
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let m = self.0.first().copied().unwrap_or(0);
        let parts = (1..=m).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect();
        Partition(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// p(n) for integer n, with p(n) = 0 for n < 0.
pub fn partition_count(n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let want = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(partition_count(n as i64), w);
            assert_eq!(partitions_of(n as u32).len() as u64, w);
        }
        assert_eq!(partition_count(-1), 0);
        assert_eq!(partition_count(16), 231);
    }

    #[test]
    fn order_of_four() {
        let got: Vec<Vec<u32>> = partitions_of(4).into_iter().map(|p| p.0).collect();
        assert_eq!(got, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn conjugate_and_aut() {
        let p = Partition::new(vec![3, 1, 1]);
        assert_eq!(p.conjugate(), Partition::new(vec![3, 1, 1]));
        assert_eq!(Partition::new(vec![4, 2]).conjugate(), Partition::new(vec![2, 2, 1, 1]));
        assert_eq!(Partition::new(vec![2, 1, 1, 1]).aut(), 6);
    }
}
