//! Verification suites with per-check diagnostics.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{cokernel, partition_count, FGAbGroup, IntMatrix};
use crate::cf::{expected_homology, CfComplex};
use crate::error::{Error, Result};
use crate::forms::{descriptor_of, forms_oracle};
use crate::kq::{eta_top_square_check, kq_relation_check};
use crate::msl::{intro_table, symbolic_label};
use crate::mu::{cpn_class, MuBasis, MuClass};
use crate::witt::{fundamental_ideal_power, witt_data, FieldDescriptor};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}: {}", other.suite, c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] {} ({} checks)", self.suite, self.checks.len())?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {mark} {}", c.name)?;
            } else {
                writeln!(f, "  {mark} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Leibniz,
    CfPattern,
    Table,
    Kq,
    WittOracle,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["leibniz", "cf-pattern", "table", "kq", "witt-oracle", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "leibniz" => Suite::Leibniz,
            "cf-pattern" => Suite::CfPattern,
            "table" => Suite::Table,
            "kq" => Suite::Kq,
            "witt-oracle" => Suite::WittOracle,
            "all" => Suite::All,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }
}

/// Run a suite with truncation `max_degree`.
pub fn run_suite(suite: Suite, max_degree: u32) -> Result<Vec<Report>> {
    let needs_cf = matches!(suite, Suite::Leibniz | Suite::CfPattern | Suite::All);
    let cf = if needs_cf { Some(CfComplex::build(Arc::new(MuBasis::build(max_degree)?))?) } else { None };
    let mut out = Vec::new();
    if matches!(suite, Suite::Leibniz | Suite::All) {
        out.push(leibniz_report(cf.as_ref().expect("built"), max_degree)?);
    }
    if matches!(suite, Suite::CfPattern | Suite::All) {
        let cf = cf.as_ref().expect("built");
        out.push(cf_pattern_report(cf)?);
        out.push(subring_report(cf)?);
    }
    if matches!(suite, Suite::Table | Suite::All) {
        out.push(table_report()?);
    }
    if matches!(suite, Suite::Kq | Suite::All) {
        out.push(kq_report(16)?);
    }
    if matches!(suite, Suite::WittOracle | Suite::All) {
        out.push(witt_oracle_report(&[3, 5, 7, 9])?);
    }
    Ok(out)
}

fn hurewicz_matrices(cf: &CfComplex, max: u32) -> Result<(Vec<IntMatrix>, Vec<IntMatrix>)> {
    let mut p = vec![IntMatrix::zeros(0, 1)];
    let mut d = vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(0, 1)];
    for n in 1..=max {
        p.push(cf.partial().hurewicz_matrix(n)?);
        if n >= 2 {
            d.push(cf.delta().hurewicz_matrix(n)?);
        }
    }
    Ok((p, d))
}

fn apply(m: &[IntMatrix], shift: u32, x: &MuClass) -> MuClass {
    if x.degree < shift {
        return MuClass::zero(0);
    }
    let y = m[x.degree as usize].mul_vec(&x.hurewicz_vector());
    MuClass::from_hurewicz_vector(x.degree - shift, &y, "")
}

fn equal(a: &MuClass, b: &MuClass) -> bool {
    a.hurewicz == b.hurewicz || (a.is_zero() && b.is_zero())
}

fn sum(xs: &[MuClass]) -> MuClass {
    xs.iter().fold(MuClass::zero(0), |acc, x| {
        if acc.is_zero() {
            x.clone()
        } else if x.is_zero() {
            acc
        } else {
            acc.add(x).expect("equal degrees")
        }
    })
}

/// `∂(ab) = ∂a·b + a·∂b - [CP^1]·∂a·∂b` and `Δ(ab) = -2·∂a·∂b` for `a, b` in the Wall lattice.
pub fn leibniz_report(cf: &CfComplex, max: u32) -> Result<Report> {
    let max = max.min(cf.max_degree());
    let (pm, dm) = hurewicz_matrices(cf, max)?;
    let cp1 = cpn_class(cf.basis().fgl(), 1)?;
    let mut report = Report::new(format!("leibniz (degree <= {max})"));

    let mut pairs = 0usize;
    let mut bad_partial = Vec::new();
    let mut bad_delta = Vec::new();
    for i in 0..=max {
        let wi = cf.wall_classes(i)?;
        for j in 0..=(max - i) {
            for a in &wi {
                for b in cf.wall_classes(j)? {
                    pairs += 1;
                    let ab = a.multiply(&b);
                    let (da, db) = (apply(&pm, 1, a), apply(&pm, 1, &b));
                    let dadb = da.multiply(&db);
                    let lhs = apply(&pm, 1, &ab);
                    let rhs = sum(&[da.multiply(&b), a.multiply(&db), cp1.multiply(&dadb).scale(&BigInt::from(-1))]);
                    if !equal(&lhs, &rhs) {
                        bad_partial.push(format!("{}*{}", a.label, b.label));
                    }
                    if !equal(&apply(&dm, 2, &ab), &dadb.scale(&BigInt::from(-2))) {
                        bad_delta.push(format!("{}*{}", a.label, b.label));
                    }
                }
            }
        }
    }
    report.push(Check::new(
        "boundary law on Wall pairs",
        bad_partial.is_empty(),
        format!("{pairs} ordered pairs{}", failures_detail(&bad_partial)),
    ));
    report.push(Check::new(
        "Delta law on Wall pairs",
        bad_delta.is_empty(),
        format!("{pairs} ordered pairs{}", failures_detail(&bad_delta)),
    ));
    Ok(report)
}

/// The boundary law over all ordered pairs of monomial basis classes; returns the pair count and the failures.
pub fn boundary_law_on_basis(cf: &CfComplex, max: u32) -> Result<(usize, Vec<String>)> {
    let max = max.min(cf.max_degree());
    let (pm, _) = hurewicz_matrices(cf, max)?;
    let cp1 = cpn_class(cf.basis().fgl(), 1)?;
    let mut pairs = 0;
    let mut bad = Vec::new();
    for i in 0..=max {
        for j in 0..=(max - i) {
            for a in cf.basis().basis(i)? {
                for b in cf.basis().basis(j)? {
                    pairs += 1;
                    let (da, db) = (apply(&pm, 1, a), apply(&pm, 1, b));
                    let lhs = apply(&pm, 1, &a.multiply(b));
                    let rhs = sum(&[
                        da.multiply(b),
                        a.multiply(&db),
                        cp1.multiply(&da.multiply(&db)).scale(&BigInt::from(-1)),
                    ]);
                    if !equal(&lhs, &rhs) {
                        bad.push(format!("{}*{}", a.label, b.label));
                    }
                }
            }
        }
    }
    Ok((pairs, bad))
}

fn failures_detail(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        let shown: Vec<&str> = bad.iter().take(5).map(String::as_str).collect();
        format!(", {} failures, first: {}", bad.len(), shown.join(", "))
    }
}

/// Homology pattern, rank bookkeeping and surjectivity of `Δ`.
pub fn cf_pattern_report(cf: &CfComplex) -> Result<Report> {
    let n_max = cf.max_degree();
    let mut report = Report::new(format!("cf-pattern (N = {n_max})"));
    for n in 2..=n_max {
        let c = cokernel(cf.delta_lattice_matrix(n)?, &[]);
        report.push(Check::new(format!("coker Delta in degree {n}"), c.is_zero(), c.to_string()));
    }
    for n in 0..=n_max {
        let got = cf.w_lattice(n)?.rank();
        let want = (partition_count(n as i64) - partition_count(n as i64 - 2)) as usize;
        report.push(Check::new(format!("rank W_{n}"), got == want, format!("{got} vs {want}")));
    }
    for n in 2..=n_max {
        let dd = cf.delta_matrix(n - 1)?.mul(cf.delta_matrix(n)?);
        report.push(Check::new(format!("delta^2 = 0 from degree {n}"), dd.is_zero(), String::new()));
    }
    for n in 0..n_max {
        let row = cf.homology_row(n)?;
        let want_z = (partition_count(n as i64) - partition_count(n as i64 - 1)) as usize;
        report.push(Check::new(format!("rank Z_{n}"), row.rank_z == want_z, format!("{} vs {want_z}", row.rank_z)));
        let want = expected_homology(n);
        report.push(Check::new(
            format!("H_{n}"),
            row.h == want,
            format!("Z {} B {} H {} expected {want}", row.rank_z, row.rank_b, row.h),
        ));
    }
    Ok(report)
}

fn wall_cycle(cf: &CfComplex, x: &MuClass) -> Result<bool> {
    let coords = cf.basis().coordinates(x)?;
    let Some(w) = cf.w_lattice(x.degree)?.coordinates(&coords) else {
        return Ok(false);
    };
    if x.degree == 0 {
        return Ok(true);
    }
    Ok(cf.delta_matrix(x.degree)?.mul_vec(&w).iter().all(Zero::is_zero))
}

/// Products of cycles are cycles, and `B_n ⊆ Z_n` with the expected quotient.
pub fn subring_report(cf: &CfComplex) -> Result<Report> {
    let n_max = cf.max_degree();
    let mut report = Report::new(format!("subring (N = {n_max})"));
    let cycles: Vec<Vec<MuClass>> = (0..=n_max).map(|n| cf.cycle_classes(n)).collect::<Result<_>>()?;
    let mut pairs = 0;
    let mut bad = Vec::new();
    for i in 0..=n_max {
        for j in 0..=(n_max - i) {
            for a in &cycles[i as usize] {
                for b in &cycles[j as usize] {
                    pairs += 1;
                    if !wall_cycle(cf, &a.multiply(b))? {
                        bad.push(format!("{}*{}", a.label, b.label));
                    }
                }
            }
        }
    }
    report.push(Check::new(
        "products of cycles are cycles",
        bad.is_empty(),
        format!("{pairs} ordered pairs{}", failures_detail(&bad)),
    ));
    for n in 0..n_max {
        let b = cf.boundaries(n)?;
        let ok = n == 0 || cf.delta_matrix(n)?.mul(b).is_zero();
        report.push(Check::new(format!("B_{n} inside Z_{n}"), ok, String::new()));
    }
    Ok(report)
}

/// The table of `π_{2n,n} MSL` for `n = 0..9`, transcribed.
pub const KNOWN_TABLE: [&str; 10] =
    ["GW(k)", "Z/2", "Z", "Z", "GW(k) ⊕ Z", "Z^2 ⊕ Z/2", "Z^4", "Z^4", "GW(k)^2 ⊕ Z^5", "Z^8 ⊕ (Z/2)^2"];

/// Substitute a group for `GW(k)` in a label like `GW(k)^2 ⊕ Z^5`.
pub fn instantiate(label: &str, gw: &FGAbGroup) -> Result<FGAbGroup> {
    let bad = || Error::InvalidArgument(format!("cannot parse group label {label:?}"));
    let mut g = FGAbGroup::zero();
    for tok in label.split('⊕').map(str::trim) {
        let (base, exp) = match tok.rsplit_once('^') {
            Some((b, e)) if !b.ends_with('/') => (b.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
            _ => (tok, 1),
        };
        let base = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base);
        let piece = match base {
            "0" => FGAbGroup::zero(),
            "GW(k)" => gw.clone(),
            "Z" => FGAbGroup::free(1),
            _ => {
                let q = base.strip_prefix("Z/").ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())?;
                FGAbGroup::cyclic(q)
            }
        };
        g = g.direct_sum(&piece.power(exp));
    }
    Ok(g)
}

/// Symbolic labels against the transcribed table, and instantiation per field kind.
pub fn table_report() -> Result<Report> {
    let mut report = Report::new("table");
    for (n, want) in KNOWN_TABLE.iter().enumerate() {
        let got = symbolic_label(n as u32);
        report.push(Check::new(format!("label n={n}"), got == *want, format!("{got} vs {want}")));
    }
    for k in FieldDescriptor::catalog() {
        let gw = witt_data(&k)?.gw;
        for row in intro_table(&k)? {
            let want = instantiate(KNOWN_TABLE[row.n as usize], &gw)?.with_inverted(&k.inverted_primes());
            report.push(Check::new(
                format!("{} n={}", k.kind.short_name(), row.n),
                row.group == want,
                format!("{} vs {want}", row.group),
            ));
        }
    }
    Ok(report)
}

/// Relation checks for `KQ` and `kq`, and the `η_top` square, for every catalog kind.
pub fn kq_report(max_degree: i64) -> Result<Report> {
    let mut report = Report::new(format!("kq (degree <= {max_degree})"));
    for k in FieldDescriptor::catalog() {
        report.extend(kq_relation_check(&k, max_degree, false)?);
        report.extend(kq_relation_check(&k, max_degree, true)?);
        report.extend(eta_top_square_check(&k)?);
    }
    Ok(report)
}

/// Exhaustive classification over `F_q` against the Witt ring tables.
pub fn witt_oracle_report(qs: &[u64]) -> Result<Report> {
    let mut report = Report::new("witt-oracle");
    for &q in qs {
        let o = forms_oracle(q)?;
        let k = descriptor_of(q)?;
        let r = witt_data(&k)?;
        report.push(Check::new(format!("F_{q} GW"), o.gw == r.gw, format!("{} vs {}", o.gw, r.gw)));
        report.push(Check::new(format!("F_{q} W"), o.w == r.w, format!("{} vs {}", o.w, r.w)));
        let i2 = fundamental_ideal_power(&k, 2)?;
        report.push(Check::new(
            format!("F_{q} I^2"),
            o.i_squared == i2 && i2.is_zero(),
            format!("{} vs {i2}", o.i_squared),
        ));
        report.push(Check::new(
            format!("F_{q} anisotropic classes = |W|"),
            o.anisotropic_classes as u64 == r.w.torsion_order() && r.w.free_rank == 0,
            format!("{}", o.anisotropic_classes),
        ));
        let w_one = if q % 4 == 3 { 4 } else { 2 };
        report.push(Check::new(
            format!("F_{q} order of <1> in W"),
            o.order_of_one == w_one,
            o.order_of_one.to_string(),
        ));
        report.push(Check::new(
            format!("F_{q} rank and discriminant classify"),
            o.rank_disc_classification,
            String::new(),
        ));
        report.push(Check::new(format!("F_{q} rank 3 forms are isotropic"), o.rank_three_isotropic, String::new()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instantiate_labels() {
        let gw = FGAbGroup::new(1, &[2], &[]);
        assert_eq!(instantiate("GW(k)^2 ⊕ Z^5", &gw).unwrap(), FGAbGroup::new(7, &[2, 2], &[]));
        assert_eq!(instantiate("Z^8 ⊕ (Z/2)^2", &gw).unwrap(), FGAbGroup::new(8, &[2, 2], &[]));
        assert_eq!(instantiate("0", &gw).unwrap(), FGAbGroup::zero());
        assert!(instantiate("Q", &gw).is_err());
    }

    #[test]
    fn suite_names() {
        for s in Suite::NAMES {
            assert!(s.parse::<Suite>().is_ok());
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn report_display() {
        let mut r = Report::new("demo");
        r.push(Check::new("a", true, ""));
        r.push(Check::new("b", false, "why"));
        assert!(!r.passed());
        assert_eq!(r.to_string(), "[FAIL] demo (2 checks)\n  ok   a\n  FAIL b: why\n");
    }

    #[test]
    fn small_suites() {
        let cf = CfComplex::build(Arc::new(MuBasis::build(6).unwrap())).unwrap();
        for r in [leibniz_report(&cf, 6).unwrap(), cf_pattern_report(&cf).unwrap(), subring_report(&cf).unwrap()] {
            assert!(r.passed(), "{r}");
        }
        assert!(table_report().unwrap().passed());
        assert!(witt_oracle_report(&[3, 5]).unwrap().passed());
        // the boundary law genuinely needs the Wall hypothesis
        let (pairs, bad) = boundary_law_on_basis(&cf, 6).unwrap();
        assert_eq!(pairs, 139);
        assert_eq!(bad.len(), 79);
        let (_, low) = boundary_law_on_basis(&cf, 2).unwrap();
        assert!(low.is_empty());
    }
}
