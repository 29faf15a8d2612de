//! The universal formal group law in Hurewicz coordinates.
//!
//! `exp(x) = x + b1 x^2 + b2 x^3 + ...`, `log` is its compositional inverse,
//! `F(x, y) = exp(log x + log y)` and `χ(x) = exp(-log x)`.

use std::sync::Arc;

use crate::bpoly::BPoly;
use crate::error::{Error, Result};
use crate::poly::{GradedPoly, PolyRing};

pub struct FglContext {
    n: u32,
    roots: usize,
    ring: Arc<PolyRing>,
    b: Vec<usize>,
    x: usize,
    y: usize,
    xs: Vec<usize>,
    cs: Vec<usize>,
    exp: GradedPoly,
    log: GradedPoly,
    inv: GradedPoly,
}

impl FglContext {
    /// Series are kept through `x^(n+1)`; `roots` Chern roots are available
    /// for formal sums and determinant classes.
    pub fn new(n: u32, roots: usize) -> Result<FglContext> {
        if n == 0 {
            return Err(Error::InvalidArgument("truncation order must be positive".into()));
        }
        let mut names: Vec<(String, u32)> = (1..=n).map(|i| (format!("b{i}"), i)).collect();
        names.push(("x".into(), 1));
        names.push(("y".into(), 1));
        for i in 1..=roots {
            names.push((format!("x{i}"), 1));
        }
        for i in 1..=roots {
            names.push((format!("c{i}"), i as u32));
        }
        let refs: Vec<(&str, u32)> = names.iter().map(|(s, w)| (s.as_str(), *w)).collect();
        let ring = PolyRing::new(&refs, 2 * n + 1)?;
        let b: Vec<usize> = (0..n as usize).collect();
        let x = n as usize;
        let y = x + 1;
        let xs: Vec<usize> = (y + 1..y + 1 + roots).collect();
        let cs: Vec<usize> = (y + 1 + roots..y + 1 + 2 * roots).collect();

        let xv = GradedPoly::var(&ring, x);
        let mut exp = xv.clone();
        for (i, &bi) in b.iter().enumerate() {
            exp = &exp + &(&GradedPoly::var(&ring, bi) * &xv.pow(i as u32 + 2));
        }
        let log = exp.invert_series_compositional(x)?;
        let inv = exp.compose_series(x, &-&log)?;
        Ok(FglContext { n, roots, ring, b, x, y, xs, cs, exp, log, inv })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn root_vars(&self) -> &[usize] {
        &self.xs
    }

    pub fn chern_vars(&self) -> &[usize] {
        &self.cs
    }

    pub fn b_vars(&self) -> &[usize] {
        &self.b
    }

    pub fn exp(&self) -> &GradedPoly {
        &self.exp
    }

    pub fn log(&self) -> &GradedPoly {
        &self.log
    }

    /// `χ(x)` with `F(x, χ(x)) = 0`.
    pub fn formal_inverse(&self) -> &GradedPoly {
        &self.inv
    }

    fn in_var(&self, series: &GradedPoly, v: usize) -> GradedPoly {
        series.swap_vars(self.x, v)
    }

    /// `F(x, y)`.
    pub fn formal_group(&self) -> GradedPoly {
        let s = &self.log + &self.in_var(&self.log, self.y);
        self.exp.substitute(self.x, &s).expect("same ring")
    }

    /// `F(x1, F(x2, ... xk))`, computed as `exp(log x1 + ... + log xk)`.
    pub fn formal_sum(&self, k: usize) -> Result<GradedPoly> {
        if k == 0 || k > self.roots {
            return Err(Error::InvalidArgument(format!("formal sum of {k} roots needs 1..={} roots", self.roots)));
        }
        let mut s = GradedPoly::zero(&self.ring);
        for &xi in &self.xs[..k] {
            s = &s + &self.in_var(&self.log, xi);
        }
        self.exp.substitute(self.x, &s)
    }

    /// First Chern class of the determinant of a rank-`k` bundle, or of its
    /// dual, written in the Chern classes `c1..ck`.
    pub fn c1_determinant_class(&self, k: usize, dual: bool) -> Result<GradedPoly> {
        let mut s = self.formal_sum(k)?;
        if dual {
            s = self.inv.substitute(self.x, &s)?;
        }
        s.elementary_symmetric_rewrite(&self.xs[..k], &self.cs[..k])
    }

    /// Coefficient of `x^(n+1)` in `log x`, an element of `Z[b]`.
    pub fn log_coefficient(&self, n: u32) -> Result<BPoly> {
        if n > self.n {
            return Err(Error::DegreeOutOfRange { degree: n as i64, min: 0, max: self.n as i64 });
        }
        BPoly::from_graded(&self.log.coeff_of_power(self.x, n + 1), &self.b)
    }

    fn series_coefficients(&self, s: &GradedPoly) -> Vec<BPoly> {
        (0..=self.n + 1)
            .map(|k| BPoly::from_graded(&s.coeff_of_power(self.x, k), &self.b).expect("integral series"))
            .collect()
    }

    /// Coefficients `G_k` of `G(v) = exp(-v)` or `exp(v)`.
    ///
    /// `G(e1)` of the additive Chern roots is the determinant class
    /// (dual when `dual` is set) of a bundle.
    pub fn determinant_series(&self, dual: bool) -> Vec<BPoly> {
        self.series_coefficients(&self.signed_exp(dual))
    }

    /// Coefficients of `exp(v) * exp(-v)`.
    pub fn determinant_product_series(&self) -> Vec<BPoly> {
        let p = &self.signed_exp(false) * &self.signed_exp(true);
        self.series_coefficients(&p)
    }

    fn signed_exp(&self, neg: bool) -> GradedPoly {
        if neg {
            let mx = -&GradedPoly::var(&self.ring, self.x);
            self.exp.substitute(self.x, &mx).expect("same ring")
        } else {
            self.exp.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Mono;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn low_order_coefficients() {
        let f = FglContext::new(4, 2).unwrap();
        let (x, y, b1) = (f.x(), f.y(), f.b_vars()[0]);
        let fg = f.formal_group();
        assert_eq!(fg.coeff(&Mono::var(x, 1)), q(1));
        assert_eq!(fg.coeff(&Mono::from_pairs(&[(x, 1), (y, 1)])), q(0));
        assert_eq!(fg.coeff(&Mono::from_pairs(&[(b1, 1), (x, 1), (y, 1)])), q(2));
        let chi = f.formal_inverse();
        assert_eq!(chi.coeff(&Mono::var(x, 1)), q(-1));
        assert_eq!(chi.coeff(&Mono::from_pairs(&[(b1, 1), (x, 2)])), q(2));
        assert!(fg.is_integral() && chi.is_integral() && f.log().is_integral());
    }

    #[test]
    fn group_axioms() {
        let f = FglContext::new(4, 0).unwrap();
        let fg = f.formal_group();
        let (x, y) = (f.x(), f.y());
        let chi = f.formal_inverse();
        // F(x, χ(x)) = 0
        let zero = fg.substitute(y, &chi.clone()).unwrap();
        assert!(zero.is_zero(), "F(x, chi(x)) = {zero}");
        // commutativity
        assert_eq!(fg.swap_vars(x, y), fg);
    }

    #[test]
    fn nested_sum_matches() {
        let f = FglContext::new(3, 3).unwrap();
        let fg = f.formal_group();
        let (x, y) = (f.x(), f.y());
        let xs = f.root_vars().to_vec();
        // F(x1, F(x2, x3))
        let inner = fg.swap_vars(x, xs[1]).swap_vars(y, xs[2]);
        let outer = fg.swap_vars(x, xs[0]).substitute(y, &inner).unwrap();
        assert_eq!(outer, f.formal_sum(3).unwrap());
    }

    #[test]
    fn determinant_class_two_roots() {
        let f = FglContext::new(3, 2).unwrap();
        let cls = f.c1_determinant_class(2, false).unwrap();
        let (c1, c2, b1) = (f.chern_vars()[0], f.chern_vars()[1], f.b_vars()[0]);
        assert_eq!(cls.coeff(&Mono::var(c1, 1)), q(1));
        assert_eq!(cls.coeff(&Mono::from_pairs(&[(b1, 1), (c2, 1)])), q(2));
        assert_eq!(cls.coeff(&Mono::from_pairs(&[(b1, 1), (c1, 2)])), q(0));
    }

    #[test]
    fn inverse_of_exp_is_negation() {
        let f = FglContext::new(6, 0).unwrap();
        let lhs = f.formal_inverse().substitute(f.x(), f.exp()).unwrap();
        assert_eq!(lhs, f.signed_exp(true));
    }
}
