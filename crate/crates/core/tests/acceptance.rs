//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use mslcob::algebra::{cokernel, FGAbGroup, Partition};
use mslcob::charnum::{generator_check_msu, hypersurface_class};
use mslcob::kq::kq_relation_check;
use mslcob::msl::{away_from_two, eta_quotient_degrees, msl_diagonal, msl_off_diagonal, quotient_by_i_msl};
use mslcob::verify::{boundary_law_on_basis, leibniz_report, subring_report, table_report, witt_oracle_report, Report};
use mslcob::witt::{fundamental_ideal_power, witt_data, FieldDescriptor, FieldKind};
use mslcob::{CfComplex, MuBasis};

const N: u32 = 12;

// partition numbers by the pentagonal recurrence, independent of the library
fn p(n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    let mut t = vec![0i64; n as usize + 1];
    t[0] = 1;
    for m in 1..=n as usize {
        let mut k = 1i64;
        let mut s = 0i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s += sign * t[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                s += sign * t[m - g2];
            }
            k += 1;
        }
        t[m] = s;
    }
    t[n as usize]
}

fn z2(k: usize) -> FGAbGroup {
    FGAbGroup::cyclic(2).power(k)
}

// π_{2n} MSU: free of rank p(n) - p(n-1), plus (Z/2)^{p((n-1)/4)} for n ≡ 1 mod 4
fn msu(n: u32) -> FGAbGroup {
    let free = FGAbGroup::free((p(n as i64) - p(n as i64 - 1)) as usize);
    if n % 4 == 1 {
        free.direct_sum(&z2(p(((n - 1) / 4) as i64) as usize))
    } else {
        free
    }
}

fn quarter(n: u32) -> usize {
    if n.is_multiple_of(4) {
        p((n / 4) as i64) as usize
    } else {
        0
    }
}

fn homology_pattern() -> Vec<FGAbGroup> {
    vec![z2(1), z2(0), z2(1), z2(0), z2(1), z2(0), z2(1), z2(0), z2(2), z2(0), z2(2), z2(0)]
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_report(r: &Report) -> Outcome {
    let fails: Vec<String> = r.failures().take(3).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    Outcome {
        pass: r.passed(),
        detail: if fails.is_empty() { format!("{} checks", r.checks.len()) } else { fails.join("; ") },
    }
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c1_table() -> Outcome {
    let t = Instant::now();
    let report = match table_report() {
        Ok(r) => r,
        Err(e) => return check(false, e.to_string()),
    };
    let gw_c = FGAbGroup::free(1);
    let gw_r = FGAbGroup::free(2);
    let gw_f = FGAbGroup::new(1, &[2], &[]);
    let complex = [
        FGAbGroup::free(1),
        z2(1),
        FGAbGroup::free(1),
        FGAbGroup::free(1),
        FGAbGroup::free(2),
        FGAbGroup::new(2, &[2], &[]),
        FGAbGroup::free(4),
        FGAbGroup::free(4),
        FGAbGroup::free(7),
        FGAbGroup::new(8, &[2, 2], &[]),
    ];
    let mut bad = Vec::new();
    for k in FieldDescriptor::catalog() {
        let gw = match k.kind {
            FieldKind::QuadraticallyClosed => &gw_c,
            FieldKind::RealClosed => &gw_r,
            _ => &gw_f,
        };
        for n in 0..10u32 {
            // GW(k) enters where 4 | n, with one copy per partition of n/4
            let want = if n % 4 == 0 {
                gw.power(quarter(n)).direct_sum(&FGAbGroup::free(complex[n as usize].free_rank - quarter(n)))
            } else {
                complex[n as usize].clone()
            };
            let want = want.with_inverted(&k.inverted_primes());
            match msl_diagonal(&k, n) {
                Ok(a) if a.group == want => {}
                Ok(a) => bad.push(format!("{k} n={n}: {} vs {want}", a.group)),
                Err(e) => bad.push(format!("{k} n={n}: {e}")),
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        report.passed() && bad.is_empty() && secs < 10.0,
        format!(
            "{} checks, {} mismatches, {secs:.2}s{}",
            report.checks.len(),
            bad.len(),
            bad.first().map(|b| format!(", {b}")).unwrap_or_default()
        ),
    )
}

fn c2_homology(cf: &CfComplex, built_secs: f64) -> Outcome {
    let t = Instant::now();
    let want = homology_pattern();
    let mut got = Vec::new();
    for n in 0..N {
        match cf.cf_homology(n) {
            Ok(h) => got.push(h),
            Err(e) => return check(false, e.to_string()),
        }
    }
    let secs = built_secs + t.elapsed().as_secs_f64();
    let shown: Vec<String> = got.iter().map(ToString::to_string).collect();
    check(got == want && secs < 60.0, format!("({}), {secs:.2}s", shown.join(", ")))
}

fn c3_leibniz(cf: &CfComplex) -> Outcome {
    let r = match leibniz_report(cf, N) {
        Ok(r) => r,
        Err(e) => return check(false, e.to_string()),
    };
    let details: Vec<String> = r.checks.iter().map(|c| format!("{} ({})", c.name, c.detail)).collect();
    // informational: the boundary law needs both factors in the Wall lattice
    let note = match boundary_law_on_basis(cf, N) {
        Ok((pairs, bad)) => {
            format!("; off the Wall lattice the boundary law fails on {} of {pairs} basis pairs", bad.len())
        }
        Err(e) => format!("; basis pair scan failed: {e}"),
    };
    check(r.passed(), format!("{}{note}", details.join(", ")))
}

fn c4_surjective(cf: &CfComplex) -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=N {
        match cf.delta_lattice_matrix(n) {
            Ok(m) => {
                let c = cokernel(m, &[]);
                if !c.is_zero() {
                    bad.push(format!("n={n}: {c}"));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    check(bad.is_empty(), if bad.is_empty() { "coker zero for n = 2..12".to_string() } else { bad.join("; ") })
}

fn c5_ranks(cf: &CfComplex) -> Outcome {
    let mut bad = Vec::new();
    for n in 0..N {
        let w = cf.w_lattice(n).map(|w| w.rank());
        let z = cf.homology_row(n).map(|r| r.rank_z);
        let (ww, wz) = ((p(n as i64) - p(n as i64 - 2)) as usize, (p(n as i64) - p(n as i64 - 1)) as usize);
        match (w, z) {
            (Ok(w), Ok(z)) if w == ww && z == wz => {}
            (w, z) => bad.push(format!("n={n}: W {w:?} vs {ww}, Z {z:?} vs {wz}")),
        }
    }
    check(bad.is_empty(), if bad.is_empty() { "n = 0..11".to_string() } else { bad.join("; ") })
}

fn c6_generators(basis: &MuBasis) -> Outcome {
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for n in 1..=N {
        let s = basis.generator(n).s_number();
        let m = n as u64 + 1;
        let prime = (2..=m).find(|d| m.is_multiple_of(*d)).expect("m >= 2");
        let mut r = m;
        while r.is_multiple_of(prime) {
            r /= prime;
        }
        let want = if r == 1 { prime } else { 1 };
        if s.abs() != BigInt::from(want) {
            bad.push(format!("s_{n} = {s}, want ±{want}"));
        }
        shown.push(format!("s{n}={s}"));
        match basis.catalog_span_matches(n) {
            Ok(true) => {}
            Ok(false) => bad.push(format!("catalog products do not span degree {n}")),
            Err(e) => bad.push(e.to_string()),
        }
    }
    check(bad.is_empty(), if bad.is_empty() { shown.join(" ") } else { bad.join("; ") })
}

fn c7_kq() -> Outcome {
    let mut all = Report::new("kq");
    for k in FieldDescriptor::catalog() {
        for connective in [false, true] {
            match kq_relation_check(&k, 16, connective) {
                Ok(r) => all.extend(r),
                Err(e) => return check(false, e.to_string()),
            }
        }
    }
    from_report(&all)
}

fn c8_witt_oracle() -> Outcome {
    let report = match witt_oracle_report(&[3, 5, 7]) {
        Ok(r) => r,
        Err(e) => return check(false, e.to_string()),
    };
    let mut bad = Vec::new();
    for q in [3u64, 5, 7] {
        let kind = if q % 4 == 3 { FieldKind::FiniteQ3 } else { FieldKind::FiniteQ1 };
        let k = FieldDescriptor::new(kind, q).expect("prime");
        let w = witt_data(&k).expect("catalog").w;
        let want = if q % 4 == 3 { FGAbGroup::cyclic(4) } else { z2(2) };
        if w != want.with_inverted(&k.inverted_primes()) && w != want {
            bad.push(format!("F_{q}: W = {w}"));
        }
        if !fundamental_ideal_power(&k, 2).expect("catalog").is_zero() {
            bad.push(format!("F_{q}: I^2 nonzero"));
        }
    }
    let o = from_report(&report);
    check(o.pass && bad.is_empty(), if bad.is_empty() { o.detail } else { bad.join("; ") })
}

fn c9_subring(cf: &CfComplex) -> Outcome {
    let r = match subring_report(cf) {
        Ok(r) => r,
        Err(e) => return check(false, e.to_string()),
    };
    let want = homology_pattern();
    let mut bad = Vec::new();
    for n in 0..N {
        match cf.homology_row(n) {
            Ok(row) if row.h == want[n as usize] => {}
            Ok(row) => bad.push(format!("Z_{n}/B_{n} = {}", row.h)),
            Err(e) => bad.push(e.to_string()),
        }
    }
    let o = from_report(&r);
    check(o.pass && bad.is_empty(), if bad.is_empty() { o.detail } else { bad.join("; ") })
}

fn c10_quartic(cf: &CfComplex) -> Outcome {
    let v = match hypersurface_class(3, 4) {
        Ok(v) => v,
        Err(e) => return check(false, e.to_string()),
    };
    let c2 = v.tangent_number(&Partition::new(vec![2])).cloned().unwrap_or_default();
    let verdict = generator_check_msu(&v.class, cf);
    let mut s = v.class.s_number().abs();
    let mut threes = 0;
    while !s.is_zero() && (&s % 3u32).is_zero() {
        s /= 3u32;
        threes += 1;
    }
    while !s.is_zero() && (&s % 2u32).is_zero() {
        s /= 2u32;
    }
    let shape = threes == 1 && s == BigInt::from(1);
    let pass = c2 == BigInt::from(24) && v.calabi_yau && shape && verdict.as_ref().is_ok_and(|x| x.pass);
    check(
        pass,
        format!("c2 = {c2}, CY = {}, s2 = {}, verdict {:?}", v.calabi_yau, v.class.s_number(), verdict.map(|x| x.pass)),
    )
}

fn c11_eta_quotient() -> Outcome {
    let mut bad = Vec::new();
    for k in FieldDescriptor::catalog() {
        let w = witt_data(&k).expect("catalog").w.with_inverted(&k.inverted_primes());
        let rows = match eta_quotient_degrees(&k, N) {
            Ok(r) => r,
            Err(e) => return check(false, e.to_string()),
        };
        for row in rows {
            if row.monomials.len() != quarter(row.n) {
                bad.push(format!("{k} n={}: {} monomials", row.n, row.monomials.len()));
            }
            for m in 1..=4 {
                match msl_off_diagonal(&k, row.n, m) {
                    Ok(g) if g == w.power(quarter(row.n)) => {}
                    other => bad.push(format!("{k} n={} m={m}: {other:?}", row.n)),
                }
            }
        }
    }
    check(bad.is_empty(), if bad.is_empty() { "n = 0..12, m = 1..4, four kinds".to_string() } else { bad.join("; ") })
}

fn c12_quotient() -> Outcome {
    let mut bad = Vec::new();
    for k in FieldDescriptor::catalog() {
        let inv = k.inverted_primes();
        for n in 0..N {
            match msl_diagonal(&k, n) {
                Ok(a) => {
                    let q = quotient_by_i_msl(&a);
                    if q != msu(n).with_inverted(&inv) {
                        bad.push(format!("{k} n={n}: {q} vs {}", msu(n)));
                    }
                }
                Err(e) => bad.push(e.to_string()),
            }
            let mut inv2 = inv.clone();
            inv2.push(2);
            let w = witt_data(&k).expect("catalog").w;
            let rhs = FGAbGroup::free((p(n as i64) - p(n as i64 - 1)) as usize)
                .direct_sum(&w.power(quarter(n)))
                .with_inverted(&inv2);
            match away_from_two(&k, n) {
                Ok((l, r)) if l == rhs && r == rhs => {}
                other => bad.push(format!("{k} n={n} away from 2: {other:?}")),
            }
        }
    }
    check(bad.is_empty(), if bad.is_empty() { "n = 0..11, four kinds".to_string() } else { bad.join("; ") })
}

fn main() -> ExitCode {
    let t = Instant::now();
    let built = MuBasis::build(N).and_then(|b| CfComplex::build(Arc::new(b)));
    let built_secs = t.elapsed().as_secs_f64();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "diagonal table", c1_table()));
    match &built {
        Ok(cf) => {
            results.push((2, "homology pattern", c2_homology(cf, built_secs)));
            results.push((3, "twisted Leibniz", c3_leibniz(cf)));
            results.push((4, "Delta surjective", c4_surjective(cf)));
            results.push((5, "rank bookkeeping", c5_ranks(cf)));
            results.push((6, "generator criterion", c6_generators(cf.basis())));
        }
        Err(e) => {
            for (i, name) in [
                (2, "homology pattern"),
                (3, "twisted Leibniz"),
                (4, "Delta surjective"),
                (5, "rank bookkeeping"),
                (6, "generator criterion"),
            ] {
                results.push((i, name, check(false, format!("construction failed: {e}"))));
            }
        }
    }
    results.push((7, "kq relations", c7_kq()));
    results.push((8, "Witt oracle", c8_witt_oracle()));
    match &built {
        Ok(cf) => {
            results.push((9, "cycle subring", c9_subring(cf)));
            results.push((10, "quartic surface", c10_quartic(cf)));
        }
        Err(e) => {
            results.push((9, "cycle subring", check(false, e.to_string())));
            results.push((10, "quartic surface", check(false, e.to_string())));
        }
    }
    results.push((11, "eta quotient", c11_eta_quotient()));
    results.push((12, "quotient by I_MSL", c12_quotient()));

    let mut failed = 0;
    for (i, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("{tag} criterion {i:>2} {name}: {}", o.detail);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
