//! Sparse weighted polynomials over the rationals, truncated above a weight bound.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Variable names, their positive weights and the truncation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    bound: u32,
}

impl PolyRing {
    pub fn new(vars: &[(&str, u32)], bound: u32) -> Result<Arc<PolyRing>> {
        if vars.iter().any(|&(_, w)| w == 0) {
            return Err(Error::InvalidArgument("generator weights must be positive".into()));
        }
        let mut names: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
        names.sort();
        names.dedup();
        if names.len() != vars.len() {
            return Err(Error::InvalidArgument("duplicate generator name".into()));
        }
        Ok(Arc::new(PolyRing {
            names: vars.iter().map(|(n, _)| n.to_string()).collect(),
            weights: vars.iter().map(|&(_, w)| w).collect(),
            bound,
        }))
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn weight(&self, var: usize) -> u32 {
        self.weights[var]
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn mono_weight(&self, m: &Mono) -> u32 {
        m.0.iter().map(|&(v, e)| self.weights[v as usize] * e as u32).sum()
    }
}

/// Monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(Vec<(u16, u16)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: usize, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(v as u16, e as u16)])
        }
    }

    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut m = Mono::one();
        for &(v, e) in pairs {
            m = m.times(&Mono::var(v, e));
        }
        m
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0.iter().find(|&&(w, _)| w as usize == v).map_or(0, |&(_, e)| e as u32)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e as u32))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// Drop variable `v`.
    pub fn without(&self, v: usize) -> Mono {
        Mono(self.0.iter().copied().filter(|&(w, _)| w as usize != v).collect())
    }

    /// Exchange variables `a` and `b`.
    pub fn swapped(&self, a: usize, b: usize) -> Mono {
        let mut pairs: Vec<(usize, u32)> = self.pairs().collect();
        for p in pairs.iter_mut() {
            if p.0 == a {
                p.0 = b;
            } else if p.0 == b {
                p.0 = a;
            }
        }
        Mono::from_pairs(&pairs)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Mono, BigRational>,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl GradedPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: BigRational) -> Self {
        Self::term(ring, Mono::one(), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, q(1))
    }

    pub fn int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, q(c))
    }

    pub fn var(ring: &Arc<PolyRing>, v: usize) -> Self {
        Self::term(ring, Mono::var(v, 1), q(1))
    }

    pub fn named(ring: &Arc<PolyRing>, name: &str) -> Self {
        let v = ring.var(name).unwrap_or_else(|| panic!("unknown generator {name}"));
        Self::var(ring, v)
    }

    pub fn term(ring: &Arc<PolyRing>, m: Mono, c: BigRational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() && ring.mono_weight(&m) <= ring.bound {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Mono::one())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn check(&self, other: &GradedPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch("operands have different weights or bounds".into()))
        }
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn try_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check(other)?;
        let bound = self.ring.bound;
        let right: Vec<(&Mono, &BigRational, u32)> =
            other.terms.iter().map(|(m, c)| (m, c, self.ring.mono_weight(m))).collect();
        let mut out = GradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let w = self.ring.mono_weight(m);
            for &(m2, c2, w2) in &right {
                if w + w2 <= bound {
                    out.add_term(m.times(m2), c * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.ring);
        }
        GradedPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> GradedPoly {
        self.scale(&q(c))
    }

    pub fn pow(&self, k: u32) -> GradedPoly {
        let mut out = GradedPoly::one(&self.ring);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Largest exponent of `v` among the terms.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coeff_of_power(&self, v: usize, k: u32) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Part of weighted degree exactly `w`.
    pub fn homogeneous_part(&self, w: u32) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if self.ring.mono_weight(m) == w {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Replace `v` by `g` everywhere.
    pub fn substitute(&self, v: usize, g: &GradedPoly) -> Result<GradedPoly> {
        self.check(g)?;
        let top = self.degree_in(v);
        let mut powers = vec![GradedPoly::one(&self.ring)];
        for k in 1..=top {
            let next = &powers[k as usize - 1] * g;
            powers.push(next);
        }
        let mut out = GradedPoly::zero(&self.ring);
        for k in 0..=top {
            let c = self.coeff_of_power(v, k);
            if !c.is_zero() {
                out = &out + &(&c * &powers[k as usize]);
            }
        }
        Ok(out)
    }

    /// `f(g)` for series `f` in `v` and `g`, both vanishing at zero.
    pub fn compose_series(&self, v: usize, g: &GradedPoly) -> Result<GradedPoly> {
        if !self.coeff_of_power(v, 0).is_zero() {
            return Err(Error::Series("outer series has a term free of the series variable".into()));
        }
        if !g.constant_term().is_zero() {
            return Err(Error::Series("inner series has a nonzero constant term".into()));
        }
        self.substitute(v, g)
    }

    /// Compositional inverse of `f = v + (higher terms)` in the variable `v`,
    /// by Lagrange inversion: `[v^n] g = (1/n) [v^(n-1)] (f/v)^(-n)`.
    pub fn invert_series_compositional(&self, v: usize) -> Result<GradedPoly> {
        if self.coeff(&Mono::var(v, 1)) != q(1) {
            return Err(Error::Series("linear coefficient is not 1".into()));
        }
        if !self.coeff_of_power(v, 0).is_zero() {
            return Err(Error::Series("series has a term free of the series variable".into()));
        }
        // f = v * b with b(0) = 1 + (terms of positive weight)
        let mut b = GradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            b.add_term(m.without(v).times(&Mono::var(v, e - 1)), c.clone());
        }
        let r = b.reciprocal()?;
        let vw = self.ring.weight(v);
        let top = self.ring.bound / vw;
        let mut out = GradedPoly::zero(&self.ring);
        let mut pw = GradedPoly::one(&self.ring);
        for n in 1..=top {
            pw = &pw * &r;
            let c = pw.coeff_of_power(v, n - 1).scale(&BigRational::new(1.into(), n.into()));
            out = &out + &(&c * &GradedPoly::term(&self.ring, Mono::var(v, n), q(1)));
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn reciprocal(&self) -> Result<GradedPoly> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::Series("constant term is not a unit".into()));
        }
        let cinv = c.recip();
        // 1/f = cinv * sum (-(f*cinv - 1))^k
        let t = &self.scale(&cinv) - &GradedPoly::one(&self.ring);
        let mt = -&t;
        let mut out = GradedPoly::one(&self.ring);
        let mut pw = GradedPoly::one(&self.ring);
        loop {
            pw = &pw * &mt;
            if pw.is_zero() {
                break;
            }
            out = &out + &pw;
        }
        Ok(out.scale(&cinv))
    }

    /// Exchange two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.swapped(a, b), c.clone());
        }
        out
    }

    /// Rewrite a polynomial symmetric in `xs` in terms of elementary
    /// symmetric functions, written with the variables `cs`.
    ///
    /// `cs[i]` stands for `e_{i+1}(xs)`; all `xs` must share one weight and
    /// `cs[i]` must carry `i+1` times that weight.
    pub fn elementary_symmetric_rewrite(&self, xs: &[usize], cs: &[usize]) -> Result<GradedPoly> {
        if xs.len() != cs.len() {
            return Err(Error::InvalidArgument("need one c-variable per x-variable".into()));
        }
        let Some(&x0) = xs.first() else {
            return Ok(self.clone());
        };
        let w = self.ring.weight(x0);
        for (i, (&x, &c)) in xs.iter().zip(cs).enumerate() {
            if self.ring.weight(x) != w || self.ring.weight(c) != w * (i as u32 + 1) {
                return Err(Error::InvalidArgument("inconsistent weights".into()));
            }
        }
        for pair in xs.windows(2) {
            if self.swap_vars(pair[0], pair[1]) != *self {
                return Err(Error::NotSymmetric(format!(
                    "not invariant under {} <-> {}",
                    self.ring.name(pair[0]),
                    self.ring.name(pair[1])
                )));
            }
        }
        let k = xs.len();
        let elem: Vec<GradedPoly> = (1..=k).map(|i| elementary(&self.ring, xs, i)).collect();
        let mut rest = self.clone();
        let mut out = GradedPoly::zero(&self.ring);
        loop {
            // leading x-exponent vector in lex order
            let lead = rest
                .terms
                .keys()
                .map(|m| xs.iter().map(|&x| m.exponent(x)).collect::<Vec<u32>>())
                .filter(|e| e.iter().any(|&a| a > 0))
                .max();
            let Some(lead) = lead else { break };
            if lead.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::NotSymmetric("leading exponent is not a partition".into()));
            }
            let mut coef = GradedPoly::zero(&self.ring);
            for (m, c) in &rest.terms {
                if xs.iter().zip(&lead).all(|(&x, &a)| m.exponent(x) == a) {
                    let mut mm = m.clone();
                    for &x in xs {
                        mm = mm.without(x);
                    }
                    coef.add_term(mm, c.clone());
                }
            }
            let mut eprod = coef.clone();
            let mut cmono = Mono::one();
            for i in 0..k {
                let next = if i + 1 < k { lead[i + 1] } else { 0 };
                let d = lead[i] - next;
                if d > 0 {
                    eprod = &eprod * &elem[i].pow(d);
                    cmono = cmono.times(&Mono::var(cs[i], d));
                }
            }
            rest = &rest - &eprod;
            out = &out + &(&coef * &GradedPoly::term(&self.ring, cmono, q(1)));
        }
        Ok(&out + &rest)
    }
}

/// `e_i` in the given variables.
pub fn elementary(ring: &Arc<PolyRing>, xs: &[usize], i: usize) -> GradedPoly {
    let mut out = GradedPoly::zero(ring);
    let n = xs.len();
    let mut idx: Vec<usize> = (0..i).collect();
    if i > n {
        return out;
    }
    loop {
        let m = Mono::from_pairs(&idx.iter().map(|&j| (xs[j], 1)).collect::<Vec<_>>());
        out.add_term(m, q(1));
        // next combination
        let mut p = i;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            if idx[p] < n - i + p {
                idx[p] += 1;
                for r in p + 1..i {
                    idx[r] = idx[r - 1] + 1;
                }
                break;
            }
        }
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(&-rhs).expect("ring mismatch")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&q(-1))
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // lower weights first
        let mut items: Vec<(&Mono, &BigRational)> = self.terms.iter().collect();
        items.sort_by_key(|(m, _)| (self.ring.mono_weight(m), std::cmp::Reverse((*m).clone())));
        for (i, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = m
                .pairs()
                .map(
                    |(v, e)| {
                        if e == 1 {
                            self.ring.name(v).to_string()
                        } else {
                            format!("{}^{}", self.ring.name(v), e)
                        }
                    },
                )
                .collect();
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

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({self})")
    }
}
