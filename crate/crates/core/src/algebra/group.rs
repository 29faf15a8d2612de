//! Finitely generated abelian groups in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::matrix::{hermite_normal_form, smith_diagonal, IntMatrix};

/// `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `1 < d1 | d2 | ... | dk`,
/// optionally with the primes in `inverted_primes` inverted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FGAbGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<u64>,
    pub inverted_primes: Vec<u64>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl FGAbGroup {
    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FGAbGroup { free_rank: rank, invariant_factors: Vec::new(), inverted_primes: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, &[order], &[])
    }

    /// Normalize an arbitrary list of cyclic orders. An order of 0 counts as a free summand.
    pub fn new(free_rank: usize, cyclic_orders: &[u64], inverted_primes: &[u64]) -> Self {
        let mut inv: Vec<u64> = inverted_primes.iter().copied().filter(|&p| p > 1).collect();
        inv.sort_unstable();
        inv.dedup();
        let mut free = free_rank;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in cyclic_orders {
            if d == 0 {
                free += 1;
                continue;
            }
            for (p, e) in factor(d) {
                if inv.contains(&p) {
                    continue;
                }
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            let off = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                factors[off + i] *= q;
            }
        }
        FGAbGroup { free_rank: free, invariant_factors: factors, inverted_primes: inv }
    }

    pub fn with_inverted(&self, primes: &[u64]) -> Self {
        let mut inv = self.inverted_primes.clone();
        inv.extend_from_slice(primes);
        Self::new(self.free_rank, &self.invariant_factors, &inv)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn direct_sum(&self, other: &FGAbGroup) -> Self {
        let mut f = self.invariant_factors.clone();
        f.extend_from_slice(&other.invariant_factors);
        let mut inv = self.inverted_primes.clone();
        inv.extend_from_slice(&other.inverted_primes);
        Self::new(self.free_rank + other.free_rank, &f, &inv)
    }

    /// Direct sum of `k` copies.
    pub fn power(&self, k: usize) -> Self {
        let mut f = Vec::new();
        for _ in 0..k {
            f.extend_from_slice(&self.invariant_factors);
        }
        Self::new(self.free_rank * k, &f, &self.inverted_primes)
    }

    /// The p-primary part of the torsion subgroup.
    pub fn primary_torsion(&self, p: u64) -> Self {
        let f: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|&d| {
                let mut q = 1;
                let mut d = d;
                while d % p == 0 {
                    d /= p;
                    q *= p;
                }
                q
            })
            .collect();
        Self::new(0, &f, &self.inverted_primes)
    }

    pub fn torsion_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Elementary divisors as `(prime power, multiplicity)` pairs, for display.
    fn cyclic_summands(&self) -> Vec<(u64, usize)> {
        let mut counts: BTreeMap<(u64, u32), usize> = BTreeMap::new();
        for &d in &self.invariant_factors {
            for (p, e) in factor(d) {
                *counts.entry((p, e)).or_default() += 1;
            }
        }
        counts.into_iter().map(|((p, e), m)| (p.pow(e), m)).collect()
    }
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (q, m) in self.cyclic_summands() {
            if m == 1 {
                parts.push(format!("Z/{q}"));
            } else {
                parts.push(format!("(Z/{q})^{m}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" ⊕ "))?;
        }
        if !self.inverted_primes.is_empty() {
            let ps: Vec<String> = self.inverted_primes.iter().map(u64::to_string).collect();
            write!(f, " [1/{}]", ps.join(","))?;
        }
        Ok(())
    }
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("invariant factor does not fit in u64")
}

/// `Z^rows / im(m)`, with the given primes inverted.
pub fn cokernel(m: &IntMatrix, inverted_primes: &[u64]) -> FGAbGroup {
    let diag = smith_diagonal(m);
    let free = m.rows() - diag.len();
    let orders: Vec<u64> = diag.iter().filter(|d| !d.is_one()).map(to_u64).collect();
    FGAbGroup::new(free, &orders, inverted_primes)
}

/// Isomorphism type of the subgroup of `Z^g / span(relations)` generated by `gens`.
pub fn subgroup_type(gens: &IntMatrix, relations: &IntMatrix) -> FGAbGroup {
    assert_eq!(gens.rows(), relations.rows());
    let both = gens.hcat(relations);
    let h = hermite_normal_form(&both);
    let rank = h.rank();
    let mut rel_coords = IntMatrix::zeros(rank, relations.cols());
    for j in 0..relations.cols() {
        let c = h.solve_basis(&relations.col(j)).expect("relation lies in the span it was added to");
        for (i, v) in c.into_iter().enumerate() {
            rel_coords[(i, j)] = v;
        }
    }
    cokernel(&rel_coords, &[])
}

/// Quotient of `Z^g / span(relations)` by the image of `gens`.
pub fn quotient_type(gens: &IntMatrix, relations: &IntMatrix) -> FGAbGroup {
    cokernel(&relations.hcat(gens), &[])
}

/// `true` when every entry is zero or the matrix has no columns.
pub fn is_trivial_map(m: &IntMatrix) -> bool {
    m.is_zero() || m.cols() == 0
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    hermite_normal_form(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let g = FGAbGroup::new(1, &[2, 3, 4], &[]);
        assert_eq!(g.invariant_factors, vec![2, 12]);
        assert_eq!(g.to_string(), "Z ⊕ Z/2 ⊕ Z/4 ⊕ Z/3");
        let h = FGAbGroup::new(0, &[6, 9], &[3]);
        assert_eq!(h.invariant_factors, vec![2]);
        assert_eq!(FGAbGroup::new(0, &[2, 2], &[]).to_string(), "(Z/2)^2");
        assert_eq!(FGAbGroup::zero().to_string(), "0");
    }

    #[test]
    fn cokernel_and_subgroup() {
        let m = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 0], vec![0, 3]]);
        assert_eq!(cokernel(&m, &[]), FGAbGroup::new(1, &[6], &[]));
        assert_eq!(cokernel(&m, &[3]), FGAbGroup::new(1, &[2], &[3]));
        // subgroup of Z/4 generated by 2
        let rel = IntMatrix::from_rows(&[vec![4i64]]);
        let gen = IntMatrix::from_rows(&[vec![2i64]]);
        assert_eq!(subgroup_type(&gen, &rel), FGAbGroup::cyclic(2));
        assert_eq!(quotient_type(&gen, &rel), FGAbGroup::cyclic(2));
    }

    #[test]
    fn cokernel_with_divisible_pivots() {
        let m = IntMatrix::from_rows(&[vec![1i64, 0, 0], vec![0, 1, 0], vec![0, 1, 2], vec![-1, -2, -2]]);
        assert_eq!(cokernel(&m, &[]), FGAbGroup::new(1, &[2], &[]));
    }

    #[test]
    fn json_shape() {
        let g = FGAbGroup::new(2, &[2], &[5]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":2,"invariant_factors":[2],"inverted_primes":[5]}"#);
    }
}
