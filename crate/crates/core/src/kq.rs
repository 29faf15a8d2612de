//! The geometric diagonal of Hermitian K-theory as a presented `GW(k)`-algebra.
//!
//! Generators `ηη_top` (degree 1), `H` (degree 2), `β` (degree 4) and `β^{-1}`; the
//! relations are rewritten to the normal monomials `β^c`, `ηη_top·β^c` and `H·β^c`,
//! whose coefficient modules are `GW`, `GW/(2, I)` and `GW/I`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{cokernel, hermite_normal_form, kernel_lattice, subgroup_type, FGAbGroup, IntMatrix};
use crate::error::Result;
use crate::verify::{Check, Report};
use crate::witt::{witt_data, FieldDescriptor, FieldKind, WittRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    EtaEta,
    H,
    Beta,
    BetaInv,
}

impl Letter {
    pub fn degree(self) -> i64 {
        match self {
            Letter::EtaEta => 1,
            Letter::H => 2,
            Letter::Beta => 4,
            Letter::BetaInv => -4,
        }
    }
}

/// Normal monomials, with the power of `β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum KqMonomial {
    Beta(i64),
    EtaEtaBeta(i64),
    HBeta(i64),
}

impl KqMonomial {
    pub fn degree(self) -> i64 {
        match self {
            KqMonomial::Beta(c) => 4 * c,
            KqMonomial::EtaEtaBeta(c) => 4 * c + 1,
            KqMonomial::HBeta(c) => 4 * c + 2,
        }
    }

    /// The normal monomial generating degree `n`, if any.
    pub fn in_degree(n: i64) -> Option<KqMonomial> {
        let c = n.div_euclid(4);
        match n.rem_euclid(4) {
            0 => Some(KqMonomial::Beta(c)),
            1 => Some(KqMonomial::EtaEtaBeta(c)),
            2 => Some(KqMonomial::HBeta(c)),
            _ => None,
        }
    }
}

impl fmt::Display for KqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, c) = match *self {
            KqMonomial::Beta(c) => ("", c),
            KqMonomial::EtaEtaBeta(c) => ("etaeta_top", c),
            KqMonomial::HBeta(c) => ("H", c),
        };
        let beta = match c {
            0 => String::new(),
            1 => "beta".into(),
            c => format!("beta^{c}"),
        };
        match (head.is_empty(), beta.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{beta}"),
            (false, true) => write!(f, "{head}"),
            (false, false) => write!(f, "{head}*{beta}"),
        }
    }
}

/// A `GW(k)`-linear combination of normal monomials; coefficients on square-class generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KqElement(pub BTreeMap<KqMonomial, Vec<BigInt>>);

pub struct KqPresentation {
    witt: WittRing,
    connective: bool,
    annihilators: [IntMatrix; 3],
}

impl KqPresentation {
    /// `connective` drops `β^{-1}`.
    pub fn new(k: &FieldDescriptor, connective: bool) -> Result<KqPresentation> {
        let witt = witt_data(k)?;
        let g = witt.rank_of_generators();
        let gw = witt.gw_relations().clone();
        // the augmentation ideal of GW: ⟨a⟩ - ⟨1⟩
        let aug: Vec<Vec<BigInt>> = augmentation_generators(&witt);
        let twos: Vec<Vec<BigInt>> = (0..g).map(|i| unit(g, i).into_iter().map(|x| x * 2).collect()).collect();
        let mut eta_cols = aug.clone();
        eta_cols.extend(twos);
        let annihilators =
            [gw.clone(), gw.hcat(&IntMatrix::from_cols(g, &eta_cols)), gw.hcat(&IntMatrix::from_cols(g, &aug))];
        Ok(KqPresentation { witt, connective, annihilators })
    }

    pub fn witt(&self) -> &WittRing {
        &self.witt
    }

    fn annihilator(&self, m: KqMonomial) -> &IntMatrix {
        match m {
            KqMonomial::Beta(_) => &self.annihilators[0],
            KqMonomial::EtaEtaBeta(_) => &self.annihilators[1],
            KqMonomial::HBeta(_) => &self.annihilators[2],
        }
    }

    fn admissible(&self, m: KqMonomial) -> bool {
        !self.connective
            || match m {
                KqMonomial::Beta(c) | KqMonomial::EtaEtaBeta(c) | KqMonomial::HBeta(c) => c >= 0,
            }
    }

    /// Degree-`n` group of the presented ring.
    pub fn degree_group(&self, n: i64) -> FGAbGroup {
        match KqMonomial::in_degree(n) {
            Some(m) if self.admissible(m) => cokernel(self.annihilator(m), &[]),
            _ => FGAbGroup::zero(),
        }
    }

    /// Rewrite a word in the generators, with a `GW` coefficient, to normal form.
    pub fn reduce_word(&self, coeff: &[BigInt], word: &[Letter]) -> KqElement {
        let count = |l: Letter| word.iter().filter(|&&x| x == l).count() as i64;
        let (e, h) = (count(Letter::EtaEta), count(Letter::H));
        let b = count(Letter::Beta) - count(Letter::BetaInv);
        let mut out = KqElement::default();
        if self.connective && count(Letter::BetaInv) > 0 {
            return out;
        }
        // (ηη)^2 = 0 and ηη·H = 0
        if e >= 2 || (e == 1 && h >= 1) {
            return out;
        }
        // H^2 = 2h·β
        let two_h: Vec<BigInt> = self.witt.hyperbolic().into_iter().map(|x| x * 2).collect();
        let mut c = coeff.to_vec();
        for _ in 0..h / 2 {
            c = self.witt.multiply(&c, &two_h);
        }
        let m = if e == 1 {
            KqMonomial::EtaEtaBeta(b)
        } else if h % 2 == 0 {
            KqMonomial::Beta(b + h / 2)
        } else {
            KqMonomial::HBeta(b + h / 2)
        };
        out.0.insert(m, c);
        self.normalize(out)
    }

    /// Drop terms whose coefficient lies in the annihilator.
    pub fn normalize(&self, x: KqElement) -> KqElement {
        KqElement(x.0.into_iter().filter(|(m, c)| !self.coefficient_vanishes(*m, c)).collect())
    }

    fn coefficient_vanishes(&self, m: KqMonomial, c: &[BigInt]) -> bool {
        if c.iter().all(Zero::is_zero) {
            return true;
        }
        let ann = self.annihilator(m);
        ann.cols() > 0 && hermite_normal_form(ann).solve_basis(c).is_some()
    }

    pub fn add(&self, a: &KqElement, b: &KqElement) -> KqElement {
        let mut out = a.0.clone();
        for (m, c) in &b.0 {
            let e = out.entry(*m).or_insert_with(|| vec![BigInt::zero(); c.len()]);
            for (x, y) in e.iter_mut().zip(c) {
                *x += y;
            }
        }
        self.normalize(KqElement(out))
    }

    pub fn scale(&self, g: &[BigInt], a: &KqElement) -> KqElement {
        self.normalize(KqElement(a.0.iter().map(|(m, c)| (*m, self.witt.multiply(g, c))).collect()))
    }

    /// Product of two elements, via the words of their monomials.
    pub fn multiply(&self, a: &KqElement, b: &KqElement) -> KqElement {
        let mut out = KqElement::default();
        for (ma, ca) in &a.0 {
            for (mb, cb) in &b.0 {
                let mut word = monomial_word(*ma);
                word.extend(monomial_word(*mb));
                let c = self.witt.multiply(ca, cb);
                out = self.add(&out, &self.reduce_word(&c, &word));
            }
        }
        out
    }

    pub fn monomial(&self, m: KqMonomial) -> KqElement {
        let g = self.witt.rank_of_generators();
        self.normalize(KqElement([(m, unit(g, 0))].into_iter().collect()))
    }

    pub fn is_zero(&self, a: &KqElement) -> bool {
        self.normalize(a.clone()).0.is_empty()
    }
}

fn unit(g: usize, i: usize) -> Vec<BigInt> {
    (0..g).map(|j| BigInt::from(u8::from(i == j))).collect()
}

fn augmentation_generators(w: &WittRing) -> Vec<Vec<BigInt>> {
    let g = w.rank_of_generators();
    (1..g)
        .map(|i| {
            let mut v = unit(g, i);
            v[0] -= 1;
            v
        })
        .collect()
}

fn monomial_word(m: KqMonomial) -> Vec<Letter> {
    let (head, c) = match m {
        KqMonomial::Beta(c) => (None, c),
        KqMonomial::EtaEtaBeta(c) => (Some(Letter::EtaEta), c),
        KqMonomial::HBeta(c) => (Some(Letter::H), c),
    };
    let b = if c >= 0 { Letter::Beta } else { Letter::BetaInv };
    head.into_iter().chain(std::iter::repeat_n(b, c.unsigned_abs() as usize)).collect()
}

/// `π_{2n,n}(KQ)`: `GW`, `Z/2`, `Z`, `0` for `n ≡ 0, 1, 2, 3 mod 4`.
pub fn kq_diagonal(k: &FieldDescriptor, n: i64) -> Result<FGAbGroup> {
    let witt = witt_data(k)?;
    Ok(match n.rem_euclid(4) {
        0 => witt.gw,
        1 => FGAbGroup::cyclic(2),
        2 => FGAbGroup::free(1),
        _ => FGAbGroup::zero(),
    })
}

/// `π_{2n,n}(kq)`: as for KQ in degrees `n ≥ 0`, zero below.
pub fn kq_connective_diagonal(k: &FieldDescriptor, n: i64) -> Result<FGAbGroup> {
    if n < 0 {
        Ok(FGAbGroup::zero())
    } else {
        kq_diagonal(k, n)
    }
}

/// `π_{2n+1,n+1}(KQ) = W^{[-n]}`: `W(k)` for `4 | n`, else 0.
pub fn kw_diagonal(k: &FieldDescriptor, n: i64) -> Result<FGAbGroup> {
    let witt = witt_data(k)?;
    Ok(if n.rem_euclid(4) == 0 { witt.w } else { FGAbGroup::zero() })
}

fn words_of_degree(n: i64, max_len: usize, connective: bool) -> Vec<Vec<Letter>> {
    let letters: &[Letter] = if connective {
        &[Letter::EtaEta, Letter::H, Letter::Beta]
    } else {
        &[Letter::EtaEta, Letter::H, Letter::Beta, Letter::BetaInv]
    };
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Letter>, i64)> = vec![(Vec::new(), 0)];
    while let Some((w, d)) = stack.pop() {
        if d == n {
            out.push(w.clone());
        }
        if w.len() == max_len {
            continue;
        }
        // nondecreasing letters: the ring is commutative
        for &l in letters {
            if w.last().is_some_and(|&p| p > l) {
                continue;
            }
            let mut next = w.clone();
            next.push(l);
            stack.push((next, d + l.degree()));
        }
    }
    out
}

/// Check the presentation against the additive table through `max_degree`.
pub fn kq_relation_check(k: &FieldDescriptor, max_degree: i64, connective: bool) -> Result<Report> {
    let pres = KqPresentation::new(k, connective)?;
    let witt = pres.witt();
    let g = witt.rank_of_generators();
    let one = unit(g, 0);
    let mut report = Report::new(format!("kq relations {k}{}", if connective { " (connective)" } else { "" }));
    let lo = if connective { 0 } else { -max_degree };

    for n in lo..=max_degree {
        let got = pres.degree_group(n);
        let want = if connective { kq_connective_diagonal(k, n)? } else { kq_diagonal(k, n)? };
        report.push(Check::new(format!("degree {n} group"), got == want, format!("{got} vs {want}")));
    }

    // every relation, times every normal monomial, vanishes
    let eta = pres.monomial(KqMonomial::EtaEtaBeta(0));
    let hh = pres.monomial(KqMonomial::HBeta(0));
    let beta = pres.monomial(KqMonomial::Beta(1));
    let two: Vec<BigInt> = one.iter().map(|x| x * 2).collect();
    let two_h: Vec<BigInt> = witt.hyperbolic().into_iter().map(|x| x * 2).collect();
    let minus_one: Vec<BigInt> = one.iter().map(|x| -x).collect();
    let mut relations: Vec<(String, KqElement)> = vec![
        ("2*etaeta_top".into(), pres.scale(&two, &eta)),
        ("etaeta_top^2".into(), pres.multiply(&eta, &eta)),
        ("etaeta_top*H".into(), pres.multiply(&eta, &hh)),
        (
            "H^2 - 2h*beta".into(),
            pres.add(&pres.multiply(&hh, &hh), &pres.scale(&minus_one, &pres.scale(&two_h, &beta))),
        ),
    ];
    for (i, a) in augmentation_generators(witt).iter().enumerate() {
        relations.push((format!("I[{i}]*etaeta_top"), pres.scale(a, &eta)));
        relations.push((format!("I[{i}]*H"), pres.scale(a, &hh)));
    }
    for (name, r) in &relations {
        let mut ok = true;
        for n in lo..=max_degree {
            if let Some(m) = KqMonomial::in_degree(n).filter(|&m| pres.admissible(m)) {
                ok &= pres.is_zero(&pres.multiply(r, &pres.monomial(m)));
            }
        }
        report.push(Check::new(format!("relation {name} vanishes"), ok, String::new()));
    }

    // every word reduces to a multiple of the canonical generator of its degree
    let mut complete = true;
    let mut detail = String::new();
    for n in lo..=max_degree {
        for w in words_of_degree(n, 6, connective) {
            let x = pres.reduce_word(&one, &w);
            let canon = KqMonomial::in_degree(n).filter(|&m| pres.admissible(m));
            if x.0.keys().any(|m| Some(*m) != canon) {
                complete = false;
                detail = format!("{w:?} left the canonical monomial in degree {n}");
            }
        }
    }
    report.push(Check::new("words reduce to the canonical generators", complete, detail));

    // ηη·β^m has order exactly 2
    let mut order_two = true;
    for c in (lo.div_euclid(4))..=(max_degree.div_euclid(4)) {
        let m = KqMonomial::EtaEtaBeta(c);
        if !pres.admissible(m) || m.degree() > max_degree {
            continue;
        }
        let x = pres.monomial(m);
        order_two &= !pres.is_zero(&x) && pres.is_zero(&pres.scale(&two, &x));
    }
    report.push(Check::new("etaeta_top*beta^m has order 2", order_two, String::new()));

    // (8,4)-periodicity
    let periodic = (lo..=max_degree - 4).all(|n| pres.degree_group(n) == pres.degree_group(n + 4));
    report.push(Check::new("(8,4)-periodicity", periodic, String::new()));
    Ok(report)
}

/// `η_top` from the `W(k)` slot to the `Z/2` slot is rank mod 2.
pub fn eta_top_square_check(k: &FieldDescriptor) -> Result<Report> {
    let witt = witt_data(k)?;
    let g = witt.rank_of_generators();
    let mut report = Report::new(format!("eta_top square {k}"));
    let rk = witt.rank_mod2_map();
    let rel = witt.w_relations();
    let well_defined = (0..rel.cols()).all(|j| {
        let v: BigInt = (0..g).map(|i| &rk[(0, i)] * &rel[(i, j)]).sum();
        (v % 2u32).is_zero()
    });
    report.push(Check::new("rank mod 2 kills the relations of W", well_defined, String::new()));
    let surjective = (0..g).any(|i| !(&rk[(0, i)] % 2u32).is_zero());
    report.push(Check::new("rank mod 2 is onto Z/2", surjective, String::new()));
    // kernel: {v : rk(v) even} = kernel of [rk | 2], projected
    let aug = rk.hcat(&IntMatrix::from_rows(&[vec![2i64]]));
    let ker = kernel_lattice(&aug);
    let ker_cols: Vec<Vec<BigInt>> = (0..ker.cols()).map(|j| ker.col(j)[..g].to_vec()).collect();
    let kernel = subgroup_type(&IntMatrix::from_cols(g, &ker_cols), &rel);
    let ideal = witt.ideal_power(1).0;
    report.push(Check::new("kernel is I(k)", kernel == ideal, format!("{kernel} vs {ideal}")));
    let iso = kernel.is_zero();
    report.push(Check::new(
        "isomorphism exactly for a quadratically closed field",
        iso == (k.kind == FieldKind::QuadraticallyClosed),
        format!("iso = {iso}"),
    ));
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct KqRow {
    pub n: i64,
    pub generator: Option<String>,
    pub group: FGAbGroup,
}

pub fn kq_table(k: &FieldDescriptor, max_degree: i64, connective: bool) -> Result<Vec<KqRow>> {
    let pres = KqPresentation::new(k, connective)?;
    Ok((0..=max_degree)
        .map(|n| KqRow {
            n,
            generator: KqMonomial::in_degree(n).filter(|&m| pres.admissible(m)).map(|m| m.to_string()),
            group: pres.degree_group(n),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(kind: FieldKind) -> FieldDescriptor {
        FieldDescriptor::default_for(kind)
    }

    #[test]
    fn diagonal_examples() {
        let k = d(FieldKind::RealClosed);
        assert_eq!(kq_diagonal(&k, 1).unwrap(), FGAbGroup::cyclic(2));
        assert!(kq_diagonal(&k, 3).unwrap().is_zero());
        assert_eq!(kq_diagonal(&d(FieldKind::FiniteQ1), 8).unwrap(), FGAbGroup::new(1, &[2], &[]));
        assert_eq!(kw_diagonal(&k, 0).unwrap(), FGAbGroup::free(1));
        assert!(kw_diagonal(&k, 2).unwrap().is_zero());
        assert_eq!(kw_diagonal(&d(FieldKind::FiniteQ3), 4).unwrap(), FGAbGroup::cyclic(4));
    }

    #[test]
    fn relations_and_squares() {
        for k in FieldDescriptor::catalog() {
            for connective in [false, true] {
                let r = kq_relation_check(&k, 16, connective).unwrap();
                assert!(r.passed(), "{r}");
            }
            let r = eta_top_square_check(&k).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn h_squared_in_degree_four() {
        let pres = KqPresentation::new(&d(FieldKind::RealClosed), false).unwrap();
        let h = pres.monomial(KqMonomial::HBeta(0));
        let sq = pres.multiply(&h, &h);
        // 2h = 2⟨1⟩ + 2⟨-1⟩
        let c = &sq.0[&KqMonomial::Beta(1)];
        assert_eq!(c, &vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(pres.degree_group(2), FGAbGroup::free(1));
    }
}
