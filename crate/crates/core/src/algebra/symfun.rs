//! Change of basis between elementary and monomial symmetric functions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::{hermite_normal_form, IntMatrix};
use super::partition::{partitions_of, Partition};

/// Number of 0-1 matrices with row sums `rows` and column sums `cols`.
pub fn zero_one_count(rows: &[u32], cols: &[u32]) -> BigInt {
    let mut state: Vec<u32> = cols.iter().copied().filter(|&c| c > 0).collect();
    state.sort_unstable();
    let mut memo = HashMap::new();
    count(rows, state, &mut memo)
}

fn count(rows: &[u32], state: Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), BigInt>) -> BigInt {
    let Some((&r, rest)) = rows.split_first() else {
        return if state.is_empty() { BigInt::from(1) } else { BigInt::zero() };
    };
    let key = (rows.len(), state.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // group equal remaining values
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &v in &state {
        match groups.last_mut() {
            Some((w, c)) if *w == v => *c += 1,
            _ => groups.push((v, 1)),
        }
    }
    let mut total = BigInt::zero();
    let mut take = vec![0usize; groups.len()];
    choose(&groups, 0, r as usize, &mut take, &mut |take| {
        let mut weight = BigInt::from(1);
        let mut next = Vec::with_capacity(state.len());
        for ((v, c), &t) in groups.iter().zip(take.iter()) {
            weight *= binom(*c, t);
            for _ in 0..t {
                if *v > 1 {
                    next.push(v - 1);
                }
            }
            for _ in t..*c {
                next.push(*v);
            }
        }
        next.sort_unstable();
        total += weight * count(rest, next, memo);
    });
    memo.insert(key, total.clone());
    total
}

fn choose(groups: &[(u32, usize)], i: usize, left: usize, take: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == groups.len() {
        if left == 0 {
            f(take);
        }
        return;
    }
    for t in 0..=groups[i].1.min(left) {
        take[i] = t;
        choose(groups, i + 1, left - t, take, f);
    }
    take[i] = 0;
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut out = BigInt::from(1);
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Matrix `E` with `e_λ = Σ_μ E[λ][μ] m_μ`, indexed by [`partitions_of`] order.
pub fn elementary_to_monomial(n: u32) -> IntMatrix {
    let ps = partitions_of(n);
    let mut m = IntMatrix::zeros(ps.len(), ps.len());
    for (i, l) in ps.iter().enumerate() {
        for (j, mu) in ps.iter().enumerate() {
            m[(i, j)] = zero_one_count(l.parts(), mu.parts());
        }
    }
    m
}

/// Integer inverse of [`elementary_to_monomial`]: `m_μ = Σ_λ F[μ][λ] e_λ`.
pub fn monomial_to_elementary(n: u32) -> IntMatrix {
    let e = elementary_to_monomial(n);
    integer_inverse(&e).expect("elementary-to-monomial matrix is unimodular")
}

/// Inverse of a unimodular matrix.
pub fn integer_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.rows();
    let h = hermite_normal_form(m);
    if h.rank() != n {
        return None;
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::from(1);
        cols.push(h.solve(&e)?);
    }
    Some(IntMatrix::from_cols(n, &cols))
}

/// Index of each partition of `n` in [`partitions_of`] order.
pub fn partition_index(n: u32) -> HashMap<Partition, usize> {
    partitions_of(n).into_iter().enumerate().map(|(i, p)| (p, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two() {
        // e2 = m11, e11 = m2 + 2 m11; order is (2), (1,1)
        let e = elementary_to_monomial(2);
        assert_eq!(e, IntMatrix::from_rows(&[vec![0i64, 1], vec![1, 2]]));
        let f = monomial_to_elementary(2);
        // m2 = e1^2 - 2 e2, m11 = e2
        assert_eq!(f, IntMatrix::from_rows(&[vec![-2i64, 1], vec![1, 0]]));
    }

    #[test]
    fn inverse_in_degree_six() {
        let e = elementary_to_monomial(6);
        let f = monomial_to_elementary(6);
        assert_eq!(e.mul(&f), IntMatrix::identity(e.rows()));
    }
}
