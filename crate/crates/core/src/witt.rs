//! Grothendieck–Witt and Witt rings for a small catalog of base fields.
//!
//! Both rings are presented on the square-class generators `⟨a⟩` of the field:
//! `GW = Z^g / R_GW` and `W = GW / (h)` with `h = ⟨1⟩ + ⟨-1⟩`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{cokernel, subgroup_type, FGAbGroup, IntMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FieldKind {
    QuadraticallyClosed,
    RealClosed,
    /// finite field with `q ≡ 1 mod 4`
    FiniteQ1,
    /// finite field with `q ≡ 3 mod 4`
    FiniteQ3,
}

impl FieldKind {
    pub const ALL: [FieldKind; 4] =
        [FieldKind::QuadraticallyClosed, FieldKind::RealClosed, FieldKind::FiniteQ1, FieldKind::FiniteQ3];

    pub fn short_name(self) -> &'static str {
        match self {
            FieldKind::QuadraticallyClosed => "c",
            FieldKind::RealClosed => "r",
            FieldKind::FiniteQ1 => "fq1",
            FieldKind::FiniteQ3 => "fq3",
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c" | "quadratically-closed" => Ok(FieldKind::QuadraticallyClosed),
            "r" | "real-closed" => Ok(FieldKind::RealClosed),
            "fq1" => Ok(FieldKind::FiniteQ1),
            "fq3" => Ok(FieldKind::FiniteQ3),
            _ => Err(Error::InvalidArgument(format!("unknown field kind '{s}' (expected c, r, fq1 or fq3)"))),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// A catalog field, with its exponential characteristic `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub exponential_characteristic: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FieldDescriptor {
    pub fn new(kind: FieldKind, e: u64) -> Result<FieldDescriptor> {
        if e == 2 {
            return Err(Error::InvalidArgument("characteristic 2 is excluded".into()));
        }
        if e != 1 && !is_prime(e) {
            return Err(Error::InvalidArgument(format!("exponential characteristic {e} is neither 1 nor a prime")));
        }
        match kind {
            FieldKind::RealClosed if e != 1 => {
                return Err(Error::InvalidArgument("a real closed field has characteristic 0".into()))
            }
            FieldKind::FiniteQ1 | FieldKind::FiniteQ3 if e == 1 => {
                return Err(Error::InvalidArgument("a finite field needs a prime characteristic".into()))
            }
            FieldKind::FiniteQ3 if e % 4 != 3 => {
                return Err(Error::InvalidArgument(format!("no power of {e} is 3 mod 4")));
            }
            _ => {}
        }
        Ok(FieldDescriptor { kind, exponential_characteristic: e })
    }

    /// Default representatives: C, R, F_5 and F_3.
    pub fn default_for(kind: FieldKind) -> FieldDescriptor {
        let e = match kind {
            FieldKind::QuadraticallyClosed | FieldKind::RealClosed => 1,
            FieldKind::FiniteQ1 => 5,
            FieldKind::FiniteQ3 => 3,
        };
        FieldDescriptor { kind, exponential_characteristic: e }
    }

    pub fn catalog() -> Vec<FieldDescriptor> {
        FieldKind::ALL.iter().map(|&k| Self::default_for(k)).collect()
    }

    /// Primes inverted in `Z[1/e]`.
    pub fn inverted_primes(&self) -> Vec<u64> {
        if self.exponential_characteristic == 1 {
            Vec::new()
        } else {
            vec![self.exponential_characteristic]
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponential_characteristic == 1 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}(e={})", self.kind, self.exponential_characteristic)
        }
    }
}

/// GW/W data on square-class generators.
#[derive(Clone, Debug, Serialize)]
pub struct WittRing {
    pub field: FieldDescriptor,
    /// labels of the square-class generators, `⟨1⟩` first
    pub generators: Vec<String>,
    /// `mult[i][j]` = index of the generator `g_i g_j`
    pub mult: Vec<Vec<usize>>,
    /// index of `⟨-1⟩`
    pub minus_one: usize,
    #[serde(skip)]
    gw_relations: IntMatrix,
    pub gw: FGAbGroup,
    pub w: FGAbGroup,
}

impl WittRing {
    pub fn rank_of_generators(&self) -> usize {
        self.generators.len()
    }

    fn unit(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.generators.len()];
        v[i] = BigInt::from(1);
        v
    }

    /// The hyperbolic plane `⟨1⟩ + ⟨-1⟩` in generator coordinates.
    pub fn hyperbolic(&self) -> Vec<BigInt> {
        let mut h = self.unit(0);
        h[self.minus_one] += 1;
        h
    }

    /// Relations presenting `GW` on the generators.
    pub fn gw_relations(&self) -> &IntMatrix {
        &self.gw_relations
    }

    /// Relations presenting `W`: those of `GW` together with `h`.
    pub fn w_relations(&self) -> IntMatrix {
        self.gw_relations.hcat(&IntMatrix::from_cols(self.generators.len(), &[self.hyperbolic()]))
    }

    /// Product of two elements in generator coordinates.
    pub fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::from(0); self.generators.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[self.mult[i][j]] += x * y;
            }
        }
        out
    }

    /// Rank homomorphism `GW -> Z` as a row matrix.
    pub fn rank_map(&self) -> IntMatrix {
        IntMatrix::from_rows(&[vec![1i64; self.generators.len()]])
    }

    /// Rank mod 2 on `W`; each generator has odd rank.
    pub fn rank_mod2_map(&self) -> IntMatrix {
        self.rank_map()
    }

    /// Additive generators of the fundamental ideal: `⟨a⟩ - ⟨1⟩` and `2⟨1⟩`.
    pub fn ideal_generators(&self) -> Vec<Vec<BigInt>> {
        let mut gens: Vec<Vec<BigInt>> = (1..self.generators.len())
            .map(|i| {
                let mut v = self.unit(i);
                v[0] -= 1;
                v
            })
            .collect();
        gens.push(self.unit(0).into_iter().map(|x| x * 2).collect());
        gens
    }

    /// Additive generators of `I^m` (`I^0 = W`).
    pub fn ideal_power_generators(&self, m: u32) -> Vec<Vec<BigInt>> {
        if m == 0 {
            return (0..self.generators.len()).map(|i| self.unit(i)).collect();
        }
        let mut cur = vec![self.unit(0)];
        let base = self.ideal_generators();
        for _ in 0..m {
            let mut next = Vec::new();
            for a in &cur {
                for b in &base {
                    next.push(self.multiply(a, b));
                }
            }
            cur = next;
        }
        cur
    }

    /// `I^m` as an abstract group, and its generators as columns in `W`.
    pub fn ideal_power(&self, m: u32) -> (FGAbGroup, IntMatrix) {
        let gens = IntMatrix::from_cols(self.generators.len(), &self.ideal_power_generators(m));
        (subgroup_type(&gens, &self.w_relations()), gens)
    }

    /// `GW ≅ I ⊕ Z` via the rank section.
    pub fn gw_split(&self) -> FGAbGroup {
        self.ideal_power(1).0.direct_sum(&FGAbGroup::free(1))
    }
}

/// Generator names, multiplication table, index of `⟨-1⟩`, relations.
type Presentation = (Vec<&'static str>, Vec<Vec<usize>>, usize, Vec<Vec<i64>>);

/// GW/W data for a catalog field.
pub fn witt_data(k: &FieldDescriptor) -> Result<WittRing> {
    let k = FieldDescriptor::new(k.kind, k.exponential_characteristic)?;
    let (generators, mult, minus_one, rel): Presentation = match k.kind {
        FieldKind::QuadraticallyClosed => (vec!["<1>"], vec![vec![0]], 0, vec![]),
        FieldKind::RealClosed => (vec!["<1>", "<-1>"], vec![vec![0, 1], vec![1, 0]], 1, vec![]),
        // ⟨1,1⟩ ≅ ⟨u,u⟩: equal rank and discriminant
        FieldKind::FiniteQ1 => (vec!["<1>", "<u>"], vec![vec![0, 1], vec![1, 0]], 0, vec![vec![2, -2]]),
        FieldKind::FiniteQ3 => (vec!["<1>", "<u>"], vec![vec![0, 1], vec![1, 0]], 1, vec![vec![2, -2]]),
    };
    let g = generators.len();
    let cols: Vec<Vec<BigInt>> = rel.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let gw_relations = IntMatrix::from_cols(g, &cols);
    let mut ring = WittRing {
        field: k,
        generators: generators.into_iter().map(String::from).collect(),
        mult,
        minus_one,
        gw_relations,
        gw: FGAbGroup::zero(),
        w: FGAbGroup::zero(),
    };
    ring.gw = cokernel(&ring.gw_relations, &[]);
    ring.w = cokernel(&ring.w_relations(), &[]);
    Ok(ring)
}

/// `I(k)^m`, with `I^0 = W`.
pub fn fundamental_ideal_power(k: &FieldDescriptor, m: u32) -> Result<FGAbGroup> {
    Ok(witt_data(k)?.ideal_power(m).0)
}

/// 2-primary torsion of `I(k)^m`.
pub fn two_primary_torsion_of_ideal(k: &FieldDescriptor, m: u32) -> Result<FGAbGroup> {
    if m == 0 {
        return Err(Error::InvalidArgument("ideal power must be at least 1".into()));
    }
    Ok(fundamental_ideal_power(k, m)?.primary_torsion(2))
}

/// One row of `witt table`.
#[derive(Clone, Debug, Serialize)]
pub struct WittTableRow {
    pub name: String,
    pub group: FGAbGroup,
}

pub fn witt_table(k: &FieldDescriptor, max_power: u32) -> Result<Vec<WittTableRow>> {
    let r = witt_data(k)?;
    let mut rows = vec![
        WittTableRow { name: "GW".into(), group: r.gw.clone() },
        WittTableRow { name: "W".into(), group: r.w.clone() },
    ];
    for m in 1..=max_power {
        rows.push(WittTableRow { name: format!("I^{m}"), group: r.ideal_power(m).0 });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(kind: FieldKind) -> FieldDescriptor {
        FieldDescriptor::default_for(kind)
    }

    #[test]
    fn catalog_groups() {
        let c = witt_data(&d(FieldKind::QuadraticallyClosed)).unwrap();
        assert_eq!((c.gw.to_string(), c.w.to_string()), ("Z".into(), "Z/2".into()));
        let r = witt_data(&d(FieldKind::RealClosed)).unwrap();
        assert_eq!((r.gw.to_string(), r.w.to_string()), ("Z^2".into(), "Z".into()));
        let q1 = witt_data(&d(FieldKind::FiniteQ1)).unwrap();
        assert_eq!((q1.gw.to_string(), q1.w.to_string()), ("Z ⊕ Z/2".into(), "(Z/2)^2".into()));
        let q3 = witt_data(&d(FieldKind::FiniteQ3)).unwrap();
        assert_eq!((q3.gw.to_string(), q3.w.to_string()), ("Z ⊕ Z/2".into(), "Z/4".into()));
    }

    #[test]
    fn ideal_powers() {
        let k = d(FieldKind::RealClosed);
        for m in 1..=4 {
            assert_eq!(fundamental_ideal_power(&k, m).unwrap(), FGAbGroup::free(1));
        }
        assert!(fundamental_ideal_power(&d(FieldKind::QuadraticallyClosed), 1).unwrap().is_zero());
        for kind in [FieldKind::FiniteQ1, FieldKind::FiniteQ3] {
            assert_eq!(fundamental_ideal_power(&d(kind), 1).unwrap(), FGAbGroup::cyclic(2));
            assert!(fundamental_ideal_power(&d(kind), 2).unwrap().is_zero());
        }
        for kind in FieldKind::ALL {
            let r = witt_data(&d(kind)).unwrap();
            assert_eq!(r.gw_split(), r.gw);
        }
        assert_eq!(two_primary_torsion_of_ideal(&d(FieldKind::FiniteQ3), 1).unwrap(), FGAbGroup::cyclic(2));
        assert!(two_primary_torsion_of_ideal(&d(FieldKind::RealClosed), 2).unwrap().is_zero());
    }

    #[test]
    fn real_ideal_is_multiples_of_powers_of_two() {
        // signature of each generator of I^m is divisible by 2^m, and 2^m itself occurs
        let r = witt_data(&d(FieldKind::RealClosed)).unwrap();
        for m in 0..=3u32 {
            let sigs: Vec<BigInt> = r.ideal_power_generators(m).iter().map(|v| &v[0] - &v[1]).collect();
            let g = sigs.iter().fold(BigInt::from(0), |a, b| num_integer::Integer::gcd(&a, b));
            assert_eq!(g, BigInt::from(1u32 << m));
        }
    }

    #[test]
    fn descriptor_validation() {
        assert!(FieldDescriptor::new(FieldKind::FiniteQ3, 5).is_err());
        assert!(FieldDescriptor::new(FieldKind::FiniteQ1, 2).is_err());
        assert!(FieldDescriptor::new(FieldKind::RealClosed, 3).is_err());
        assert!(FieldDescriptor::new(FieldKind::FiniteQ1, 9).is_err());
        assert!(FieldDescriptor::new(FieldKind::FiniteQ1, 3).is_ok());
        assert_eq!("fq3".parse::<FieldKind>().unwrap(), FieldKind::FiniteQ3);
        assert!("q".parse::<FieldKind>().is_err());
    }
}
