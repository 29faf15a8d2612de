//! Degree-wise assembly of the geometric diagonal of special linear cobordism.
//!
//! In degree `n` the group is the pullback `W(k)^p ×_{(Z/2)^p} π_{2n}(MSU)` with
//! `p = p(n/4)` when `4 | n`, and `π_{2n}(MSU)` otherwise. Since the MSU corner is
//! free in those degrees the pullback splits additively as `I(k)^p ⊕ π_{2n}(MSU)`.

use serde::Serialize;

use crate::algebra::{partition_count, partitions_of, quotient_type, FGAbGroup, IntMatrix};
use crate::cf::msu_additive;
use crate::error::{Error, Result};
use crate::verify::{Check, Report};
use crate::witt::{witt_data, FieldDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub label: String,
    pub group: FGAbGroup,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MslAnswer {
    pub field: FieldDescriptor,
    pub n: u32,
    pub group: FGAbGroup,
    pub decomposition: Vec<Summand>,
}

/// `p(n/4)` for `4 | n`, else 0.
pub fn quarter_partitions(n: u32) -> usize {
    if n.is_multiple_of(4) {
        partition_count((n / 4) as i64) as usize
    } else {
        0
    }
}

fn free_part(g: &FGAbGroup) -> FGAbGroup {
    FGAbGroup::new(g.free_rank, &[], &g.inverted_primes)
}

fn torsion_part(g: &FGAbGroup) -> FGAbGroup {
    FGAbGroup::new(0, &g.invariant_factors, &g.inverted_primes)
}

pub fn msl_diagonal(k: &FieldDescriptor, n: u32) -> Result<MslAnswer> {
    let witt = witt_data(k)?;
    let inv = k.inverted_primes();
    let p = quarter_partitions(n);
    let ideal = witt.ideal_power(1).0.power(p);
    let msu = msu_additive(n);
    let decomposition = vec![
        Summand {
            label: format!("I(k)^{p}"),
            group: ideal.with_inverted(&inv),
            source: "ideal corner of the pullback square".into(),
        },
        Summand {
            label: "msu_free".into(),
            group: free_part(&msu).with_inverted(&inv),
            source: "free part of the MSU corner".into(),
        },
        Summand {
            label: "msu_torsion".into(),
            group: torsion_part(&msu).with_inverted(&inv),
            source: "2-torsion of the MSU corner".into(),
        },
    ];
    let group = decomposition.iter().fold(FGAbGroup::zero(), |a, s| a.direct_sum(&s.group)).with_inverted(&inv);
    let raw = ideal.direct_sum(&msu);
    if group.primary_torsion(2) != raw.primary_torsion(2).with_inverted(&inv) {
        return Err(Error::Verification(format!("inverting {inv:?} changed the 2-torsion in degree {n}")));
    }
    Ok(MslAnswer { field: *k, n, group, decomposition })
}

/// `π_{2n+m, n+m}` for `m > 0`: `W(k)^{p(n/4)}`, or 0 when `4 ∤ n`.
pub fn msl_off_diagonal(k: &FieldDescriptor, n: u32, m: i64) -> Result<FGAbGroup> {
    if m <= 0 {
        return Err(Error::InvalidArgument(format!("off-diagonal index must be positive, got {m}")));
    }
    let witt = witt_data(k)?;
    Ok(witt.w.power(quarter_partitions(n)).with_inverted(&k.inverted_primes()))
}

/// The ideal `η·π_{2n-1,n-1}` in degree `n`.
pub fn i_msl(k: &FieldDescriptor, n: u32) -> Result<FGAbGroup> {
    let witt = witt_data(k)?;
    Ok(witt.ideal_power(1).0.power(quarter_partitions(n)).with_inverted(&k.inverted_primes()))
}

/// 2-primary torsion of the diagonal group in degree `n`.
pub fn msl_torsion(k: &FieldDescriptor, n: u32) -> Result<FGAbGroup> {
    let inv = k.inverted_primes();
    let t = match n % 4 {
        0 => i_msl(k, n)?.primary_torsion(2),
        1 => FGAbGroup::cyclic(2).power(partition_count(((n - 1) / 4) as i64) as usize).with_inverted(&inv),
        _ => FGAbGroup::zero().with_inverted(&inv),
    };
    let from_group = msl_diagonal(k, n)?.group.primary_torsion(2);
    if from_group != t {
        return Err(Error::Verification(format!("torsion {t} disagrees with the assembled group's {from_group}")));
    }
    Ok(t)
}

/// Relation matrix presenting a group in normal form.
fn presentation(g: &FGAbGroup) -> IntMatrix {
    let k = g.free_rank + g.invariant_factors.len();
    let mut m = IntMatrix::zeros(k, g.invariant_factors.len());
    for (j, &d) in g.invariant_factors.iter().enumerate() {
        m[(g.free_rank + j, j)] = d.into();
    }
    m
}

/// The diagonal group modulo `I_MSL`, computed from a block presentation of the decomposition.
pub fn quotient_by_i_msl(answer: &MslAnswer) -> FGAbGroup {
    let blocks: Vec<IntMatrix> = answer.decomposition.iter().map(|s| presentation(&s.group)).collect();
    let rows: usize = blocks.iter().map(IntMatrix::rows).sum();
    let cols: usize = blocks.iter().map(IntMatrix::cols).sum();
    let mut rel = IntMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in &blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                rel[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    let ideal_rows = blocks[0].rows();
    let mut gens = IntMatrix::zeros(rows, ideal_rows);
    for i in 0..ideal_rows {
        gens[(i, i)] = 1.into();
    }
    quotient_type(&gens, &rel).with_inverted(&answer.group.inverted_primes)
}

/// Localization away from 2: `Z^{p(n)-p(n-1)} ⊕ W(k)^{p(n/4)}` over `Z[1/2e]`.
pub fn away_from_two(k: &FieldDescriptor, n: u32) -> Result<(FGAbGroup, FGAbGroup)> {
    let mut inv = k.inverted_primes();
    inv.push(2);
    let lhs = msl_diagonal(k, n)?.group.with_inverted(&inv);
    let free = (partition_count(n as i64) - partition_count(n as i64 - 1)) as usize;
    let w = witt_data(k)?.w.power(quarter_partitions(n));
    let rhs = FGAbGroup::free(free).direct_sum(&w).with_inverted(&inv);
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaQuotientRow {
    pub n: u32,
    pub monomials: Vec<String>,
    pub group: FGAbGroup,
}

/// Degree pieces of `W(k)[y4, y8, ...]` with `y_{4i}` in degree `4i`.
pub fn eta_quotient_degrees(k: &FieldDescriptor, max_n: u32) -> Result<Vec<EtaQuotientRow>> {
    let w = witt_data(k)?.w.with_inverted(&k.inverted_primes());
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let monomials: Vec<String> =
            if n % 4 == 0 { partitions_of(n / 4).iter().map(y_monomial).collect() } else { Vec::new() };
        let group = w.power(monomials.len());
        rows.push(EtaQuotientRow { n, monomials, group });
    }
    Ok(rows)
}

fn y_monomial(w: &crate::algebra::Partition) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    let ps = w.parts();
    while i < ps.len() {
        let j = ps[i..].iter().take_while(|&&x| x == ps[i]).count();
        let base = format!("y{}", 4 * ps[i]);
        parts.push(if j == 1 { base } else { format!("{base}^{j}") });
        i += j;
    }
    parts.join("*")
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub n: u32,
    /// `GW(k)` kept as a symbol
    pub symbolic: String,
    pub group: FGAbGroup,
}

/// Symbolic form of the degree-`n` group with `GW(k)` unexpanded.
pub fn symbolic_label(n: u32) -> String {
    let msu = msu_additive(n);
    let p = quarter_partitions(n);
    if p == 0 {
        return msu.to_string();
    }
    // I^p ⊕ Z^r = GW^p ⊕ Z^{r-p}
    let gw = if p == 1 { "GW(k)".to_string() } else { format!("GW(k)^{p}") };
    let rest = FGAbGroup::new(msu.free_rank - p, &msu.invariant_factors, &[]);
    if rest.is_zero() {
        gw
    } else {
        format!("{gw} ⊕ {rest}")
    }
}

pub fn intro_table(k: &FieldDescriptor) -> Result<Vec<TableRow>> {
    (0..=9).map(|n| Ok(TableRow { n, symbolic: symbolic_label(n), group: msl_diagonal(k, n)?.group })).collect()
}

/// Checks tying the η-pattern to the pullback description in degree `n`.
pub fn eta_pattern_check(k: &FieldDescriptor, n: u32) -> Result<Report> {
    let witt = witt_data(k)?;
    let p = quarter_partitions(n);
    let mut report = Report::new(format!("eta pattern {k} n={n}"));
    let off: Vec<FGAbGroup> = (1..=4).map(|m| msl_off_diagonal(k, n, m)).collect::<Result<_>>()?;
    report.push(Check::new(
        "off-diagonal groups agree for m = 1..4",
        off.windows(2).all(|w| w[0] == w[1]),
        off[0].to_string(),
    ));
    // W^p / I^p is the common quotient (Z/2)^p of the two corners
    let wrel = witt.w_relations();
    let igens = witt.ideal_power(1).1;
    let wi = quotient_type(&igens, &wrel).power(p);
    report.push(Check::new("W^p / I^p = (Z/2)^p", wi == FGAbGroup::cyclic(2).power(p), wi.to_string()));
    let msu = msu_additive(n);
    report.push(Check::new(
        "MSU corner is free of rank >= p where the square is nontrivial",
        p == 0 || (msu.invariant_factors.is_empty() && msu.free_rank >= p),
        msu.to_string(),
    ));
    let diag = msl_diagonal(k, n)?.group;
    let expect_free = off[0].free_rank + msu.free_rank;
    report.push(Check::new(
        "free rank of the diagonal = free rank of W^p + free rank of MSU",
        diag.free_rank == expect_free,
        format!("{} vs {expect_free}", diag.free_rank),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::FieldKind;

    fn d(kind: FieldKind) -> FieldDescriptor {
        FieldDescriptor::default_for(kind)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(msl_diagonal(&d(FieldKind::RealClosed), 8).unwrap().group, FGAbGroup::free(9));
        let q1 = msl_diagonal(&d(FieldKind::FiniteQ1), 4).unwrap().group;
        assert_eq!(q1, FGAbGroup::new(2, &[2], &[5]));
        assert_eq!(msl_off_diagonal(&d(FieldKind::RealClosed), 4, 1).unwrap(), FGAbGroup::free(1));
        assert!(msl_off_diagonal(&d(FieldKind::RealClosed), 3, 2).unwrap().is_zero());
        assert_eq!(msl_off_diagonal(&d(FieldKind::FiniteQ3), 8, 5).unwrap(), FGAbGroup::new(0, &[4, 4], &[3]));
        assert!(msl_off_diagonal(&d(FieldKind::RealClosed), 4, 0).is_err());
        assert_eq!(i_msl(&d(FieldKind::RealClosed), 8).unwrap(), FGAbGroup::free(2));
        assert!(i_msl(&d(FieldKind::QuadraticallyClosed), 8).unwrap().is_zero());
        assert!(i_msl(&d(FieldKind::RealClosed), 6).unwrap().is_zero());
        assert_eq!(msl_torsion(&d(FieldKind::FiniteQ3), 4).unwrap(), FGAbGroup::new(0, &[2], &[3]));
        assert_eq!(msl_torsion(&d(FieldKind::RealClosed), 9).unwrap(), FGAbGroup::cyclic(2).power(2));
        assert!(msl_torsion(&d(FieldKind::RealClosed), 8).unwrap().is_zero());
    }

    #[test]
    fn eta_quotient_monomials() {
        let rows = eta_quotient_degrees(&d(FieldKind::RealClosed), 8).unwrap();
        assert_eq!(rows[8].monomials, vec!["y8".to_string(), "y4^2".to_string()]);
        assert!(rows[6].monomials.is_empty());
        assert_eq!(rows[0].monomials, vec!["1".to_string()]);
        assert_eq!(rows[0].group, FGAbGroup::free(1));
    }

    #[test]
    fn symbolic_labels() {
        let labels: Vec<String> = (0..=9).map(symbolic_label).collect();
        assert_eq!(labels[0], "GW(k)");
        assert_eq!(labels[4], "GW(k) ⊕ Z");
        assert_eq!(labels[8], "GW(k)^2 ⊕ Z^5");
        assert_eq!(labels[9], "Z^8 ⊕ (Z/2)^2");
    }

    #[test]
    fn quotient_and_eta_checks() {
        for k in FieldDescriptor::catalog() {
            for n in 0..=11 {
                let a = msl_diagonal(&k, n).unwrap();
                assert_eq!(quotient_by_i_msl(&a), msu_additive(n).with_inverted(&k.inverted_primes()));
                let (l, r) = away_from_two(&k, n).unwrap();
                assert_eq!(l, r);
                assert!(eta_pattern_check(&k, n).unwrap().passed());
            }
        }
    }
}
