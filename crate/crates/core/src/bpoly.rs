//! Integer polynomials in the Hurewicz generators `b1, b2, ...`.
//!
//! A monomial `b_{i1} b_{i2} ...` is stored as the partition `(i1, i2, ...)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Partition;
use crate::error::{Error, Result};
use crate::poly::GradedPoly;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BPoly(BTreeMap<Partition, BigInt>);

impl BPoly {
    pub fn zero() -> Self {
        BPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), BigInt::one())
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(Partition::empty(), BigInt::from(c))
    }

    pub fn monomial(m: Partition, c: BigInt) -> Self {
        let mut p = BPoly::zero();
        p.add_term(m, c);
        p
    }

    /// The generator `b_i`.
    pub fn b(i: u32) -> Self {
        Self::monomial(Partition::new(vec![i]), BigInt::one())
    }

    pub fn add_term(&mut self, m: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &Partition) -> BigInt {
        self.0.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight of a homogeneous polynomial; `None` for zero or mixed weights.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.0.keys().map(Partition::weight);
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    pub fn add(&self, other: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BPoly) -> BPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> BPoly {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    pub fn mul(&self, other: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for (m, c) in &self.0 {
            for (m2, c2) in &other.0 {
                out.add_term(m.union(m2), c * c2);
            }
        }
        out
    }

    /// Convert a polynomial in the variables `bvars[i] = b_{i+1}` with integer coefficients.
    pub fn from_graded(p: &GradedPoly, bvars: &[usize]) -> Result<BPoly> {
        let mut out = BPoly::zero();
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return Err(Error::InvalidArgument(format!("non-integral coefficient {c}")));
            }
            let mut parts = Vec::new();
            for (v, e) in m.pairs() {
                let i = bvars
                    .iter()
                    .position(|&b| b == v)
                    .ok_or_else(|| Error::InvalidArgument("term outside Z[b]".into()))?;
                parts.extend(std::iter::repeat_n(i as u32 + 1, e as usize));
            }
            out.add_term(Partition::new(parts), c.to_integer());
        }
        Ok(out)
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // coarsest monomials first
        for (i, (m, c)) in self.0.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut vars = Vec::new();
            let parts = m.parts();
            let mut j = 0;
            while j < parts.len() {
                let mut k = j;
                while k < parts.len() && parts[k] == parts[j] {
                    k += 1;
                }
                if k - j == 1 {
                    vars.push(format!("b{}", parts[j]));
                } else {
                    vars.push(format!("b{}^{}", parts[j], k - j));
                }
                j = k;
            }
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_display() {
        let p = BPoly::b(1).scale(&BigInt::from(-2));
        let sq = p.mul(&p);
        assert_eq!(sq.to_string(), "4*b1^2");
        let q = BPoly::b(2).scale(&BigInt::from(-3)).add(&BPoly::b(1).mul(&BPoly::b(1)).scale(&BigInt::from(6)));
        assert_eq!(q.to_string(), "-3*b2 + 6*b1^2");
        assert_eq!(q.weight(), Some(2));
    }
}
