//! The complex cobordism ring through its Hurewicz image in `Z[b1, b2, ...]`.
//!
//! The coefficient of `b^ω` in the image of a manifold is the normal
//! characteristic number `m_ω(ν)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::symfun::{elementary_to_monomial, monomial_to_elementary};
use crate::algebra::{hermite_normal_form, partitions_of, smith_diagonal, Hermite, IntMatrix, Partition};
use crate::bpoly::BPoly;
use crate::error::{Error, Result};
use crate::fgl::FglContext;
use crate::poly::{GradedPoly, Mono, PolyRing};

/// A class in `π_{2n} MU`, stored by its Hurewicz image.
#[derive(Clone, PartialEq, Eq)]
pub struct MuClass {
    pub degree: u32,
    pub hurewicz: BPoly,
    pub label: String,
}

impl fmt::Debug for MuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] (deg {}) = {}", self.label, self.degree, self.hurewicz)
    }
}

impl MuClass {
    pub fn new(degree: u32, hurewicz: BPoly, label: impl Into<String>) -> Result<MuClass> {
        match hurewicz.weight() {
            Some(w) if w != degree => {
                return Err(Error::InvalidArgument(format!("weight {w} does not match degree {degree}")))
            }
            None if !hurewicz.is_zero() => return Err(Error::InvalidArgument("inhomogeneous Hurewicz image".into())),
            _ => {}
        }
        Ok(MuClass { degree, hurewicz, label: label.into() })
    }

    pub fn unit() -> MuClass {
        MuClass { degree: 0, hurewicz: BPoly::one(), label: "1".into() }
    }

    pub fn zero(degree: u32) -> MuClass {
        MuClass { degree, hurewicz: BPoly::zero(), label: "0".into() }
    }

    pub fn is_zero(&self) -> bool {
        self.hurewicz.is_zero()
    }

    pub fn multiply(&self, other: &MuClass) -> MuClass {
        MuClass {
            degree: self.degree + other.degree,
            hurewicz: self.hurewicz.mul(&other.hurewicz),
            label: format!("{}*{}", self.label, other.label),
        }
    }

    pub fn add(&self, other: &MuClass) -> Result<MuClass> {
        self.same_degree(other)?;
        Ok(MuClass {
            degree: self.degree,
            hurewicz: self.hurewicz.add(&other.hurewicz),
            label: format!("{} + {}", self.label, other.label),
        })
    }

    pub fn sub(&self, other: &MuClass) -> Result<MuClass> {
        self.same_degree(other)?;
        Ok(MuClass {
            degree: self.degree,
            hurewicz: self.hurewicz.sub(&other.hurewicz),
            label: format!("{} - {}", self.label, other.label),
        })
    }

    pub fn scale(&self, c: &BigInt) -> MuClass {
        MuClass { degree: self.degree, hurewicz: self.hurewicz.scale(c), label: format!("{c}*{}", self.label) }
    }

    pub fn relabel(mut self, label: impl Into<String>) -> MuClass {
        self.label = label.into();
        self
    }

    fn same_degree(&self, other: &MuClass) -> Result<()> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("degrees {} and {} differ", self.degree, other.degree)))
        }
    }

    /// Hurewicz coordinates in [`partitions_of`] order.
    pub fn hurewicz_vector(&self) -> Vec<BigInt> {
        partitions_of(self.degree).iter().map(|p| self.hurewicz.coeff(p)).collect()
    }

    pub fn from_hurewicz_vector(degree: u32, v: &[BigInt], label: impl Into<String>) -> MuClass {
        let mut h = BPoly::zero();
        for (p, c) in partitions_of(degree).into_iter().zip(v) {
            h.add_term(p, c.clone());
        }
        MuClass { degree, hurewicz: h, label: label.into() }
    }

    /// The s-number, normalized so that `s_n[CP^n] = n + 1`.
    pub fn s_number(&self) -> BigInt {
        if self.degree == 0 {
            return self.hurewicz.coeff(&Partition::empty());
        }
        -self.hurewicz.coeff(&Partition::new(vec![self.degree]))
    }
}

/// Linear maps between Chern-number vectors and Hurewicz coordinates in one degree.
#[derive(Clone, Debug)]
pub struct ChernTables {
    pub degree: u32,
    /// `e_λ = Σ_μ E[λ][μ] m_μ`
    pub e_to_m: IntMatrix,
    /// inverse of `e_to_m`
    pub m_to_e: IntMatrix,
    /// normal Chern numbers from tangent ones; an involution
    pub tangent_to_normal: IntMatrix,
}

impl ChernTables {
    pub fn new(n: u32) -> ChernTables {
        ChernTables {
            degree: n,
            e_to_m: elementary_to_monomial(n),
            m_to_e: monomial_to_elementary(n),
            tangent_to_normal: tangent_to_normal(n),
        }
    }

    /// Normal Chern numbers `c_ω(ν)` from Hurewicz coordinates.
    pub fn normal_numbers(&self, hurewicz: &[BigInt]) -> Vec<BigInt> {
        self.e_to_m.mul_vec(hurewicz)
    }

    /// Hurewicz coordinates from tangent Chern numbers.
    pub fn from_tangent(&self, tangent: &[BigInt]) -> Vec<BigInt> {
        let normal = self.tangent_to_normal.mul_vec(tangent);
        self.m_to_e.mul_vec(&normal)
    }

    /// Tangent Chern numbers from Hurewicz coordinates.
    pub fn to_tangent(&self, hurewicz: &[BigInt]) -> Vec<BigInt> {
        self.tangent_to_normal.mul_vec(&self.normal_numbers(hurewicz))
    }
}

/// Matrix sending tangent Chern numbers to normal ones, using `c(ν) c(T) = 1`.
fn tangent_to_normal(n: u32) -> IntMatrix {
    let ps = partitions_of(n);
    if n == 0 {
        return IntMatrix::identity(1);
    }
    let names: Vec<(String, u32)> = (1..=n).map(|i| (format!("c{i}"), i)).collect();
    let refs: Vec<(&str, u32)> = names.iter().map(|(s, w)| (s.as_str(), *w)).collect();
    let ring = PolyRing::new(&refs, n).expect("valid ring");
    let mut total = GradedPoly::one(&ring);
    for v in 0..n as usize {
        total = &total + &GradedPoly::var(&ring, v);
    }
    let inv = total.reciprocal().expect("unit constant term");
    let parts: Vec<GradedPoly> = (0..=n).map(|k| inv.homogeneous_part(k)).collect();
    let index: HashMap<Partition, usize> = ps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut m = IntMatrix::zeros(ps.len(), ps.len());
    for (i, l) in ps.iter().enumerate() {
        let mut prod = GradedPoly::one(&ring);
        for &k in l.parts() {
            prod = &prod * &parts[k as usize];
        }
        for (mono, c) in prod.homogeneous_part(n).terms() {
            let mut mu = Vec::new();
            for (v, e) in mono.pairs() {
                mu.extend(std::iter::repeat_n(v as u32 + 1, e as usize));
            }
            let j = index[&Partition::new(mu)];
            m[(i, j)] = c.to_integer();
        }
    }
    m
}

/// Tangent Chern numbers `c_λ(T)[M]` for `λ` in [`partitions_of`] order, given the
/// total tangent Chern class `c` as a polynomial in `ring` and a fundamental class
/// functional `integrate`.
pub fn tangent_numbers(n: u32, total: &GradedPoly, integrate: &dyn Fn(&GradedPoly) -> BigInt) -> Vec<BigInt> {
    let parts: Vec<GradedPoly> = (0..=n).map(|k| total.homogeneous_part(k)).collect();
    partitions_of(n)
        .iter()
        .map(|l| {
            let mut prod = GradedPoly::one(total.ring());
            for &k in l.parts() {
                prod = &prod * &parts[k as usize];
            }
            integrate(&prod)
        })
        .collect()
}

/// Hurewicz image from tangent Chern numbers (indexed by [`partitions_of`]).
pub fn chern_numbers_to_hurewicz(n: u32, tangent: &[BigInt]) -> Result<BPoly> {
    if tangent.len() != partitions_of(n).len() {
        return Err(Error::InvalidArgument("wrong number of Chern numbers".into()));
    }
    let t = ChernTables::new(n);
    Ok(MuClass::from_hurewicz_vector(n, &t.from_tangent(tangent), "").hurewicz)
}

/// Tangent Chern numbers from a Hurewicz image.
pub fn hurewicz_to_chern_numbers(x: &MuClass) -> Vec<BigInt> {
    ChernTables::new(x.degree).to_tangent(&x.hurewicz_vector())
}

/// `[CP^n] = (n+1) m_n` where `m_n` is the coefficient of `x^(n+1)` in `log x`.
pub fn cpn_class(fgl: &FglContext, n: u32) -> Result<MuClass> {
    if n == 0 {
        return Ok(MuClass::unit().relabel("CP0"));
    }
    let m = fgl.log_coefficient(n)?;
    MuClass::new(n, m.scale(&BigInt::from(n + 1)), format!("CP{n}"))
}

/// Milnor hypersurface `H(i,j) ⊂ CP^i × CP^j` of bidegree (1,1), of dimension `i + j - 1`.
pub fn milnor_hypersurface_class(i: u32, j: u32) -> Result<MuClass> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument("Milnor hypersurface needs i, j >= 1".into()));
    }
    let n = i + j - 1;
    let ring = PolyRing::new(&[("x", 1), ("y", 1)], i + j)?;
    let x = GradedPoly::var(&ring, 0);
    let y = GradedPoly::var(&ring, 1);
    let one = GradedPoly::one(&ring);
    let xy = &x + &y;
    let total = &(&(&one + &x).pow(i + 1) * &(&one + &y).pow(j + 1)) * &(&one + &xy).reciprocal()?;
    let top = Mono::from_pairs(&[(0, i), (1, j)]);
    let integrate = |p: &GradedPoly| (p * &xy).coeff(&top).to_integer();
    let t = tangent_numbers(n, &total, &integrate);
    MuClass::new(n, chern_numbers_to_hurewicz(n, &t)?, format!("H({i},{j})"))
}

/// Expected absolute s-number of a polynomial generator in degree `n`.
pub fn generator_s_target(n: u32) -> u64 {
    prime_power_base(n as u64 + 1).unwrap_or(1)
}

/// `Some(p)` when `m = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power_base(m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut r = m;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// Polynomial generators and per-degree monomial lattices.
pub struct MuBasis {
    max_degree: u32,
    fgl: Arc<FglContext>,
    generators: Vec<MuClass>,
    degrees: Vec<DegreeData>,
}

struct DegreeData {
    monomials: Vec<Partition>,
    classes: Vec<MuClass>,
    hermite: Hermite,
    tables: ChernTables,
}

impl MuBasis {
    /// Build generators `x1..xN` and the monomial bases through degree `max_degree`.
    pub fn build(max_degree: u32) -> Result<MuBasis> {
        let fgl = Arc::new(FglContext::new(max_degree.max(1), 0)?);
        Self::build_with(fgl, max_degree)
    }

    pub fn build_with(fgl: Arc<FglContext>, max_degree: u32) -> Result<MuBasis> {
        if fgl.order() < max_degree {
            return Err(Error::InvalidArgument("formal group truncated below the basis degree".into()));
        }
        let mut generators = vec![MuClass::unit()];
        for n in 1..=max_degree {
            generators.push(choose_generator(&fgl, n)?);
        }
        let mut degrees = Vec::new();
        for n in 0..=max_degree {
            let monomials = partitions_of(n);
            let classes: Vec<MuClass> = monomials
                .iter()
                .map(|w| {
                    let mut c = MuClass::unit();
                    for &k in w.parts() {
                        c = c.multiply(&generators[k as usize]);
                    }
                    c.relabel(monomial_label(w))
                })
                .collect();
            let cols: Vec<Vec<BigInt>> = classes.iter().map(MuClass::hurewicz_vector).collect();
            let m = IntMatrix::from_cols(monomials.len(), &cols);
            let hermite = hermite_normal_form(&m);
            if hermite.rank() != monomials.len() {
                return Err(Error::GeneratorSearch { degree: n, reason: "monomials are dependent".into() });
            }
            degrees.push(DegreeData { monomials, classes, hermite, tables: ChernTables::new(n) });
        }
        Ok(MuBasis { max_degree, fgl, generators, degrees })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn fgl(&self) -> &Arc<FglContext> {
        &self.fgl
    }

    /// The generator `x_n`; `x_0` is the unit.
    pub fn generator(&self, n: u32) -> &MuClass {
        &self.generators[n as usize]
    }

    fn degree(&self, n: u32) -> Result<&DegreeData> {
        self.degrees.get(n as usize).ok_or(Error::DegreeOutOfRange {
            degree: n as i64,
            min: 0,
            max: self.max_degree as i64,
        })
    }

    /// Monomial exponents `ω` of the basis `x^ω` in degree `n`.
    pub fn monomials(&self, n: u32) -> Result<&[Partition]> {
        Ok(&self.degree(n)?.monomials)
    }

    pub fn basis(&self, n: u32) -> Result<&[MuClass]> {
        Ok(&self.degree(n)?.classes)
    }

    pub fn rank(&self, n: u32) -> usize {
        self.degrees.get(n as usize).map_or(0, |d| d.monomials.len())
    }

    pub fn tables(&self, n: u32) -> Result<&ChernTables> {
        Ok(&self.degree(n)?.tables)
    }

    /// Coordinates of a class in the monomial basis; errors off the lattice.
    pub fn coordinates(&self, x: &MuClass) -> Result<Vec<BigInt>> {
        let d = self.degree(x.degree)?;
        d.hermite.solve(&x.hurewicz_vector()).ok_or_else(|| Error::NotInLattice(format!("{x:?}")))
    }

    pub fn contains(&self, x: &MuClass) -> bool {
        self.coordinates(x).is_ok()
    }

    /// The class with the given monomial coordinates.
    pub fn from_coordinates(&self, n: u32, coords: &[BigInt]) -> Result<MuClass> {
        let d = self.degree(n)?;
        let mut h = BPoly::zero();
        for (c, cls) in coords.iter().zip(&d.classes) {
            if !c.is_zero() {
                h = h.add(&cls.hurewicz.scale(c));
            }
        }
        Ok(MuClass { degree: n, hurewicz: h, label: format!("deg{n}") })
    }

    /// Normal Chern number `c_ω(ν)[x]`.
    pub fn chern_number(&self, x: &MuClass, omega: &Partition) -> Result<BigInt> {
        if omega.weight() != x.degree {
            return Err(Error::InvalidArgument(format!("{omega} does not have weight {}", x.degree)));
        }
        let t = self.tables(x.degree)?;
        let i = partitions_of(x.degree).iter().position(|p| p == omega).expect("partition of degree");
        let row = t.e_to_m.row(i);
        Ok(row.iter().zip(x.hurewicz_vector()).map(|(a, b)| a * b).sum())
    }

    /// Hermite basis of the span of all products of catalog classes in degree `n`,
    /// compared against the monomial lattice.
    pub fn catalog_span_matches(&self, n: u32) -> Result<bool> {
        let catalog: Vec<Vec<MuClass>> = (0..=n).map(|k| catalog(&self.fgl, k)).collect::<Result<_>>()?;
        let mut cols = Vec::new();
        for w in partitions_of(n) {
            let mut acc = vec![MuClass::unit()];
            for &k in w.parts() {
                let mut next = Vec::new();
                for a in &acc {
                    for c in &catalog[k as usize] {
                        next.push(a.multiply(c));
                    }
                }
                acc = next;
            }
            for x in &acc {
                match self.coordinates(x) {
                    Ok(c) => cols.push(c),
                    Err(_) => return Ok(false),
                }
            }
        }
        // equal lattices: the coordinate matrix is onto
        let r = partitions_of(n).len();
        let m = IntMatrix::from_cols(r, &cols);
        let d = smith_diagonal(&m);
        Ok(d.len() == r && d.iter().all(|x| x.is_one()))
    }

    /// CSV of generator and basis Hurewicz images.
    pub fn basis_csv(&self) -> String {
        let mut out = String::from("degree,monomial,hurewicz\n");
        for (n, d) in self.degrees.iter().enumerate() {
            for (w, c) in d.monomials.iter().zip(&d.classes) {
                out.push_str(&format!("{n},{},\"{}\"\n", monomial_label(w), c.hurewicz));
            }
        }
        out
    }

    /// CSV of normal Chern numbers of the basis classes.
    pub fn chern_csv(&self) -> String {
        let mut out = String::from("degree,monomial,omega,normal_chern_number\n");
        for (n, d) in self.degrees.iter().enumerate() {
            for (w, c) in d.monomials.iter().zip(&d.classes) {
                let nums = d.tables.normal_numbers(&c.hurewicz_vector());
                for (p, v) in partitions_of(n as u32).iter().zip(nums) {
                    out.push_str(&format!("{n},{},\"{p}\",{v}\n", monomial_label(w)));
                }
            }
        }
        out
    }
}

fn monomial_label(w: &Partition) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut out = Vec::new();
    let parts = w.parts();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        if j - i == 1 {
            out.push(format!("x{}", parts[i]));
        } else {
            out.push(format!("x{}^{}", parts[i], j - i));
        }
        i = j;
    }
    out.join("*")
}

/// Candidate indecomposables in degree `n`: `CP^n` and `H(i,j)` with `2 <= i <= j`.
pub fn catalog(fgl: &FglContext, n: u32) -> Result<Vec<MuClass>> {
    if n == 0 {
        return Ok(vec![MuClass::unit()]);
    }
    let mut out = vec![cpn_class(fgl, n)?];
    for i in 2..=n.div_ceil(2) {
        let j = n + 1 - i;
        if j >= i {
            out.push(milnor_hypersurface_class(i, j)?);
        }
    }
    Ok(out)
}

fn choose_generator(fgl: &FglContext, n: u32) -> Result<MuClass> {
    let cands = catalog(fgl, n)?;
    let target = BigInt::from(generator_s_target(n));
    if let Some(c) = cands.iter().find(|c| c.s_number().abs() == target) {
        return Ok(c.clone().relabel(format!("x{n}={}", c.label)));
    }
    let s: Vec<BigInt> = cands.iter().map(MuClass::s_number).collect();
    let coeffs = smallest_combination(&s, &target).ok_or_else(|| Error::GeneratorSearch {
        degree: n,
        reason: format!("no small combination of the catalog has s-number ±{target}"),
    })?;
    let mut cur = MuClass::zero(n);
    let mut terms = Vec::new();
    for (c, cls) in coeffs.iter().zip(&cands) {
        if *c != 0 {
            cur = cur.add(&cls.scale(&BigInt::from(*c)))?;
            terms.push(format!("{c}*{}", cls.label));
        }
    }
    Ok(cur.relabel(format!("x{n}={}", terms.join(" + "))))
}

/// Integer vector `c` with `|Σ c_i s_i| = target`, minimising `max |c_i|` and then `Σ |c_i|`.
fn smallest_combination(s: &[BigInt], target: &BigInt) -> Option<Vec<i64>> {
    const MAX_BOUND: i64 = 12;
    for bound in 1..=MAX_BOUND {
        let mut best: Option<(i64, Vec<i64>)> = None;
        let mut c = vec![-bound; s.len()];
        loop {
            if c.iter().any(|x| x.abs() == bound) {
                let v: BigInt = c.iter().zip(s).map(|(a, b)| BigInt::from(*a) * b).sum();
                if v.abs() == *target {
                    let l1: i64 = c.iter().map(|x| x.abs()).sum();
                    if best.as_ref().is_none_or(|(b, _)| l1 < *b) {
                        best = Some((l1, c.clone()));
                    }
                }
            }
            let mut i = 0;
            while i < c.len() && c[i] == bound {
                c[i] = -bound;
                i += 1;
            }
            if i == c.len() {
                break;
            }
            c[i] += 1;
        }
        if let Some((_, c)) = best {
            return Some(c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn low_projective_spaces() {
        let f = FglContext::new(4, 0).unwrap();
        assert_eq!(cpn_class(&f, 1).unwrap().hurewicz.to_string(), "-2*b1");
        assert_eq!(cpn_class(&f, 2).unwrap().hurewicz.to_string(), "-3*b2 + 6*b1^2");
        for n in 1..=4 {
            assert_eq!(cpn_class(&f, n).unwrap().s_number(), BigInt::from(n + 1));
        }
    }

    #[test]
    fn tangent_normal_involution() {
        for n in 0..=7 {
            let t = tangent_to_normal(n);
            assert_eq!(t.mul(&t), IntMatrix::identity(t.rows()));
        }
    }

    #[test]
    fn chern_round_trip_cp2() {
        // c(T) = (1+h)^3: c2 = 3, c1^2 = 9; order (2), (1,1)
        let h = chern_numbers_to_hurewicz(2, &z(&[3, 9])).unwrap();
        assert_eq!(h.to_string(), "-3*b2 + 6*b1^2");
        let x = MuClass::new(2, h, "CP2").unwrap();
        assert_eq!(hurewicz_to_chern_numbers(&x), z(&[3, 9]));
    }

    #[test]
    fn milnor_s_numbers() {
        assert_eq!(milnor_hypersurface_class(2, 2).unwrap().s_number(), BigInt::from(-6));
        assert_eq!(milnor_hypersurface_class(2, 3).unwrap().s_number(), BigInt::from(-10));
        assert_eq!(milnor_hypersurface_class(3, 3).unwrap().s_number(), BigInt::from(-20));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(generator_s_target(1), 2);
        assert_eq!(generator_s_target(2), 3);
        assert_eq!(generator_s_target(3), 2);
        assert_eq!(generator_s_target(5), 1);
        assert_eq!(generator_s_target(8), 3);
    }
}
