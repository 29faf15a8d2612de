//! Cohomology operations acting on `π_* MU`.
//!
//! An operation with characteristic class `P` sends `[M]` to the pushforward of
//! `P(ν_M)`. In Hurewicz coordinates this is
//! `∫_M P(exp t_1, exp t_2, ...) · Π_i B(t_i)` with `B(t) = exp(t)/t` and
//! `t_i` the additive Chern roots of the normal bundle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::symfun::elementary_to_monomial;
use crate::algebra::{partitions_of, IntMatrix, Partition};
use crate::bpoly::BPoly;
use crate::error::{Error, Result};
use crate::fgl::FglContext;
use crate::mu::MuClass;
use crate::poly::GradedPoly;

#[derive(Clone, Debug)]
enum Repr {
    /// `G(t_1 + t_2 + ...)` with coefficients `G_k`.
    Additive(Vec<BPoly>),
    /// `m_ω` of the MU-Chern roots.
    Monomial(Partition),
    /// `Σ p_λ c^λ` in MU-Chern classes.
    Chern(Vec<(Partition, BPoly)>),
}

#[derive(Clone, Debug)]
pub struct CohOperation {
    pub name: String,
    /// Degree drop.
    pub shift: u32,
    repr: Repr,
}

/// `∂`: the class `c1(det γ^∨)`.
pub fn boundary_partial(fgl: &FglContext) -> CohOperation {
    CohOperation { name: "partial".into(), shift: 1, repr: Repr::Additive(fgl.determinant_series(true)) }
}

/// `Δ`: the class `c1(det γ) · c1(det γ^∨)`.
pub fn delta_op(fgl: &FglContext) -> CohOperation {
    CohOperation { name: "delta".into(), shift: 2, repr: Repr::Additive(fgl.determinant_product_series()) }
}

/// Landweber-Novikov operation `s_ω`.
pub fn landweber_novikov(omega: &Partition) -> Result<CohOperation> {
    if omega.is_empty() {
        return Err(Error::InvalidArgument("empty partition".into()));
    }
    Ok(CohOperation { name: format!("s{omega}"), shift: omega.weight(), repr: Repr::Monomial(omega.clone()) })
}

/// Operation given by a characteristic class in the MU-Chern classes `cs` of
/// `fgl`'s ring, with coefficients in `Z[b]`.
pub fn from_chern_class(fgl: &FglContext, class: &GradedPoly, shift: u32) -> Result<CohOperation> {
    let cs = fgl.chern_vars();
    let bs = fgl.b_vars();
    let mut groups: BTreeMap<Partition, GradedPoly> = BTreeMap::new();
    for (m, c) in class.terms() {
        let mut parts = Vec::new();
        let mut rest = m.clone();
        for (v, e) in m.pairs() {
            if let Some(i) = cs.iter().position(|&x| x == v) {
                parts.extend(std::iter::repeat_n(i as u32 + 1, e as usize));
                rest = rest.without(v);
            }
        }
        let entry = groups.entry(Partition::new(parts)).or_insert_with(|| GradedPoly::zero(fgl.ring()));
        *entry = &*entry + &GradedPoly::term(fgl.ring(), rest, c.clone());
    }
    let mut terms = Vec::new();
    for (l, p) in groups {
        terms.push((l, BPoly::from_graded(&p, bs)?));
    }
    Ok(CohOperation { name: "class".into(), shift, repr: Repr::Chern(terms) })
}

impl CohOperation {
    /// Apply to a class; the result has degree `x.degree - shift`.
    pub fn apply(&self, x: &MuClass) -> Result<MuClass> {
        if x.degree < self.shift {
            return Err(Error::DegreeOutOfRange { degree: x.degree as i64 - self.shift as i64, min: 0, max: i64::MAX });
        }
        let n = x.degree;
        let h = match &self.repr {
            Repr::Additive(g) => apply_additive(g, self.shift, &x.hurewicz, n),
            Repr::Monomial(w) => apply_monomial(w, &x.hurewicz, n),
            Repr::Chern(terms) => {
                let mut out = BPoly::zero();
                for (lambda, coef) in terms {
                    let k = lambda.weight();
                    if k > n {
                        continue;
                    }
                    let e = elementary_to_monomial(k);
                    let ps = partitions_of(k);
                    let row = ps.iter().position(|p| p == lambda).expect("partition of k");
                    for (j, mu) in ps.iter().enumerate() {
                        let a = &e[(row, j)];
                        if a.is_zero() {
                            continue;
                        }
                        let s = apply_monomial(mu, &x.hurewicz, n);
                        out = out.add(&coef.mul(&s).scale(a));
                    }
                }
                // keep only the homogeneous part of the expected weight
                let mut h = BPoly::zero();
                for (m, c) in out.terms() {
                    if m.weight() == n - self.shift {
                        h.add_term(m.clone(), c.clone());
                    }
                }
                h
            }
        };
        MuClass::new(n - self.shift, h, format!("{}({})", self.name, x.label))
    }

    /// Matrix in Hurewicz coordinates from degree `n` to degree `n - shift`.
    pub fn hurewicz_matrix(&self, n: u32) -> Result<IntMatrix> {
        let src = partitions_of(n);
        let tgt_deg = n.checked_sub(self.shift).ok_or(Error::DegreeOutOfRange {
            degree: n as i64,
            min: self.shift as i64,
            max: i64::MAX,
        })?;
        let tgt = partitions_of(tgt_deg);
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for (j, mu) in src.iter().enumerate() {
            let x = MuClass::new(n, BPoly::monomial(mu.clone(), BigInt::from(1)), "")?;
            let y = self.apply(&x)?;
            for (i, p) in tgt.iter().enumerate() {
                m[(i, j)] = y.hurewicz.coeff(p);
            }
        }
        Ok(m)
    }
}

/// `Σ_k G_k · k! [s^k] h(b_j -> Σ_i b_{j-i} s^i / i!)`.
fn apply_additive(g: &[BPoly], shift: u32, h: &BPoly, n: u32) -> BPoly {
    let mut by_k: Vec<BPoly> = vec![BPoly::zero(); n as usize + 1];
    for (m, c) in h.terms() {
        shift_parts(m.parts(), 0, Vec::new(), 0, &BigInt::from(1), c, &mut by_k);
    }
    let mut out = BPoly::zero();
    for (k, d) in by_k.iter().enumerate() {
        if k < shift as usize || d.is_zero() {
            continue;
        }
        if let Some(gk) = g.get(k) {
            out = out.add(&gk.mul(d));
        }
    }
    out
}

/// Expand one monomial: each part `l` becomes `b_{l-i}` with weight `s^i`;
/// the coefficient of `s^k` carries the multinomial `k! / Π i!`.
fn shift_parts(parts: &[u32], idx: usize, kept: Vec<u32>, k: usize, denom: &BigInt, coef: &BigInt, out: &mut [BPoly]) {
    if idx == parts.len() {
        let multinomial = factorial(k) / denom;
        out[k].add_term(Partition::new(kept), coef * multinomial);
        return;
    }
    let l = parts[idx];
    for i in 0..=l {
        let mut next = kept.clone();
        if l > i {
            next.push(l - i);
        }
        shift_parts(parts, idx + 1, next, k + i as usize, &(denom * factorial(i as usize)), coef, out);
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |a, b| a * BigInt::from(b))
}

/// Coefficients `[t^m] B(t)^(j+1)` as elements of `Z[b]`.
fn b_power_coefficients(j: u32, top: u32) -> Vec<BPoly> {
    let base: Vec<BPoly> = (0..=top).map(|m| if m == 0 { BPoly::one() } else { BPoly::b(m) }).collect();
    let mut acc = base.clone();
    for _ in 0..j {
        let mut next = vec![BPoly::zero(); top as usize + 1];
        for (a, pa) in acc.iter().enumerate() {
            for (b, pb) in base.iter().enumerate() {
                if a + b <= top as usize {
                    next[a + b] = next[a + b].add(&pa.mul(pb));
                }
            }
        }
        acc = next;
    }
    acc
}

/// `s_ω(x)`: coefficient of `z^ω` in `h(b_l -> Σ_j z_j [t^(l-j)] B(t)^(j+1))`.
fn apply_monomial(omega: &Partition, h: &BPoly, n: u32) -> BPoly {
    let mut table: BTreeMap<u32, Vec<BPoly>> = BTreeMap::new();
    table.insert(0, b_power_coefficients(0, n));
    for &j in omega.parts() {
        table.entry(j).or_insert_with(|| b_power_coefficients(j, n));
    }
    let mut out = BPoly::zero();
    for (m, c) in h.terms() {
        let mut need: Vec<u32> = omega.parts().to_vec();
        let acc = BPoly::int(1).scale(c);
        assign(m.parts(), 0, &mut need, acc, &table, &mut out);
    }
    out
}

fn assign(
    parts: &[u32],
    idx: usize,
    need: &mut Vec<u32>,
    acc: BPoly,
    table: &BTreeMap<u32, Vec<BPoly>>,
    out: &mut BPoly,
) {
    if acc.is_zero() {
        return;
    }
    let left: u32 = parts[idx..].iter().sum();
    let needed: u32 = need.iter().sum();
    if needed > left {
        return;
    }
    if idx == parts.len() {
        if need.is_empty() {
            *out = out.add(&acc);
        }
        return;
    }
    let l = parts[idx];
    // z_0 = 1
    assign(parts, idx + 1, need, acc.mul(&table[&0][l as usize]), table, out);
    let mut tried = Vec::new();
    for pos in 0..need.len() {
        let j = need[pos];
        if j > l || tried.contains(&j) {
            continue;
        }
        tried.push(j);
        need.remove(pos);
        let next = acc.mul(&table[&j][(l - j) as usize]);
        assign(parts, idx + 1, need, next, table, out);
        need.insert(pos, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mu::cpn_class;

    fn fgl() -> FglContext {
        FglContext::new(6, 0).unwrap()
    }

    #[test]
    fn anchors() {
        let f = fgl();
        let d = boundary_partial(&f);
        let delta = delta_op(&f);
        let cp1 = cpn_class(&f, 1).unwrap();
        assert_eq!(d.apply(&cp1).unwrap().hurewicz, BPoly::int(2));
        let sq = cp1.multiply(&cp1);
        assert!(d.apply(&sq).unwrap().is_zero());
        assert_eq!(delta.apply(&sq).unwrap().hurewicz, BPoly::int(-8));
        assert!(!delta.apply(&cpn_class(&f, 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn top_landweber_novikov_is_raw_s_number() {
        let f = fgl();
        for n in 1..=5 {
            let op = landweber_novikov(&Partition::new(vec![n])).unwrap();
            let cp = cpn_class(&f, n).unwrap();
            let v = op.apply(&cp).unwrap();
            assert_eq!(v.hurewicz, BPoly::int(-(n as i64 + 1)));
            assert_eq!(v.hurewicz.coeff(&Partition::empty()), -cp.s_number());
        }
    }

    #[test]
    fn chern_class_route_matches_additive_route() {
        let k = 4;
        let f = FglContext::new(k as u32, k).unwrap();
        let det = f.c1_determinant_class(k, false).unwrap();
        let dual = f.c1_determinant_class(k, true).unwrap();
        let via_class = from_chern_class(&f, &dual, 1).unwrap();
        let via_class_delta = from_chern_class(&f, &(&det * &dual), 2).unwrap();
        let fast = boundary_partial(&f);
        let fast_delta = delta_op(&f);
        for n in 1..=k as u32 {
            for mu in partitions_of(n) {
                let x = MuClass::new(n, BPoly::monomial(mu, BigInt::from(1)), "").unwrap();
                assert_eq!(via_class.apply(&x).unwrap().hurewicz, fast.apply(&x).unwrap().hurewicz);
                if n >= 2 {
                    assert_eq!(via_class_delta.apply(&x).unwrap().hurewicz, fast_delta.apply(&x).unwrap().hurewicz);
                }
            }
        }
    }
}
