//! Class expressions like `CP1^2`, `2*H(2,2) - x3` or `V(3,4)`.

use num_bigint::BigInt;

use mslcob::charnum::hypersurface_class;
use mslcob::mu::{cpn_class, milnor_hypersurface_class};
use mslcob::{MuBasis, MuClass};

use crate::Failure;

fn bad(s: &str) -> Failure {
    Failure::usage(format!("cannot parse class {s:?}"))
}

fn nums(inner: &str, s: &str) -> Result<Vec<u32>, Failure> {
    inner.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| bad(s))).collect()
}

fn atom(basis: &MuBasis, a: &str, whole: &str) -> Result<MuClass, Failure> {
    let (base, exp) = match a.rsplit_once('^') {
        Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad(whole))?),
        None => (a.trim(), 1),
    };
    let x = if let Some(n) = base.strip_prefix("CP") {
        cpn_class(basis.fgl(), n.parse().map_err(|_| bad(whole))?)?
    } else if let Some(n) = base.strip_prefix('x') {
        let n: u32 = n.parse().map_err(|_| bad(whole))?;
        if n > basis.max_degree() {
            return Err(
                mslcob::Error::DegreeOutOfRange { degree: n as i64, min: 0, max: basis.max_degree() as i64 }.into()
            );
        }
        basis.generator(n).clone()
    } else if let Some(inner) = base.strip_prefix("H(").and_then(|r| r.strip_suffix(')')) {
        match nums(inner, whole)?[..] {
            [i, j] => milnor_hypersurface_class(i, j)?,
            _ => return Err(bad(whole)),
        }
    } else if let Some(inner) = base.strip_prefix("V(").and_then(|r| r.strip_suffix(')')) {
        match nums(inner, whole)?[..] {
            [n, d] => hypersurface_class(n, d)?.class,
            _ => return Err(bad(whole)),
        }
    } else {
        return Err(bad(whole));
    };
    let mut out = MuClass::unit();
    for _ in 0..exp {
        out = out.multiply(&x);
    }
    Ok(out)
}

fn term(basis: &MuBasis, t: &str, whole: &str) -> Result<MuClass, Failure> {
    let mut scalar = BigInt::from(1);
    let mut x = MuClass::unit();
    for f in t.split('*').map(str::trim) {
        if f.is_empty() {
            return Err(bad(whole));
        }
        if let Ok(c) = f.parse::<BigInt>() {
            scalar *= c;
        } else {
            x = x.multiply(&atom(basis, f, whole)?);
        }
    }
    Ok(x.scale(&scalar))
}

/// Parse a sum of products; every term must have the same degree.
pub fn parse_class(basis: &MuBasis, s: &str) -> Result<MuClass, Failure> {
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if !cur.trim().is_empty() {
                terms.push((neg, cur.trim().to_string()));
            } else if !terms.is_empty() || ch == '+' {
                return Err(bad(s));
            }
            cur.clear();
            neg = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if cur.trim().is_empty() {
        return Err(bad(s));
    }
    terms.push((neg, cur.trim().to_string()));
    let mut total: Option<MuClass> = None;
    for (neg, t) in terms {
        let mut x = term(basis, &t, s)?;
        if neg {
            x = x.scale(&BigInt::from(-1));
        }
        total = Some(match total {
            None => x,
            Some(acc) if acc.degree == x.degree => acc.add(&x)?,
            Some(_) => return Err(Failure::usage(format!("terms of {s:?} have different degrees"))),
        });
    }
    let x = total.expect("at least one term");
    if x.degree > basis.max_degree() {
        return Err(mslcob::Error::DegreeOutOfRange {
            degree: x.degree as i64,
            min: 0,
            max: basis.max_degree() as i64,
        }
        .into());
    }
    Ok(x.relabel(s.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let b = MuBasis::build(4).unwrap();
        let sq = parse_class(&b, "CP1^2").unwrap();
        assert_eq!(sq.degree, 2);
        assert_eq!(sq.hurewicz, parse_class(&b, "CP1*CP1").unwrap().hurewicz);
        let zero = parse_class(&b, "2*CP2 - CP2 - CP2").unwrap();
        assert!(zero.is_zero());
        assert_eq!(parse_class(&b, "-x1").unwrap().hurewicz, b.generator(1).scale(&BigInt::from(-1)).hurewicz);
        assert_eq!(parse_class(&b, "V(3,4)").unwrap().degree, 2);
        assert_eq!(parse_class(&b, "H(2,2)").unwrap().degree, 3);
        for s in ["", "CP", "Q1", "CP1 + CP2", "x9", "CP5", "H(1)", "+CP1", "CP1 +"] {
            assert!(parse_class(&b, s).is_err(), "{s}");
        }
    }
}
