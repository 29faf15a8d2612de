//! Brute-force quadratic forms over small finite fields.
//!
//! Used as an independent check of the Witt ring tables: isometries of rank
//! one and two diagonal forms are found by exhaustive search over matrices.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{cokernel, hermite_normal_form, subgroup_type, FGAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::witt::{FieldDescriptor, FieldKind};

/// `F_p` or `F_{p^2} = F_p[i]/(i^2 - r)` with `r` a non-residue.
#[derive(Clone, Debug)]
pub struct FiniteField {
    pub p: u64,
    pub q: u64,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        if p == 2 || e > 2 {
            return Err(Error::InvalidArgument(format!("F_{q} is not supported")));
        }
        let n = q as usize;
        let pu = p as usize;
        let (add, mul) = if e == 1 {
            let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
            let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
            (add, mul)
        } else {
            let r = (1..pu).find(|&r| !(1..pu).any(|x| x * x % pu == r)).expect("odd prime has a non-residue");
            let split = |x: usize| (x % pu, x / pu);
            let join = |a: usize, b: usize| a % pu + pu * (b % pu);
            let add = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let ((a, b), (c, d)) = (split(x), split(y));
                            join(a + c, b + d)
                        })
                        .collect()
                })
                .collect();
            let mul = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let ((a, b), (c, d)) = (split(x), split(y));
                            join(a * c + r * b * d, a * d + b * c)
                        })
                        .collect()
                })
                .collect();
            (add, mul)
        };
        Ok(FiniteField { p, q, add, mul })
    }

    pub fn size(&self) -> usize {
        self.q as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size()).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn one(&self) -> usize {
        1
    }

    pub fn units(&self) -> std::ops::Range<usize> {
        1..self.size()
    }

    pub fn is_square(&self, a: usize) -> bool {
        (0..self.size()).any(|x| self.mul(x, x) == a)
    }

    /// Value of the diagonal form `Σ a_i x_i^2`.
    pub fn eval(&self, diag: &[usize], v: &[usize]) -> usize {
        diag.iter().zip(v).fold(0, |s, (&a, &x)| self.add(s, self.mul(a, self.mul(x, x))))
    }

    /// Number of nonzero `v` with `Q(v) = 0`.
    pub fn isotropic_count(&self, diag: &[usize]) -> usize {
        let q = self.size();
        let total = q.pow(diag.len() as u32);
        let mut v = vec![0; diag.len()];
        let mut count = 0;
        for idx in 1..total {
            let mut r = idx;
            for x in v.iter_mut() {
                *x = r % q;
                r /= q;
            }
            if self.eval(diag, &v) == 0 {
                count += 1;
            }
        }
        count
    }

    /// All `(c, d)` with `⟨a, b⟩ ≅ ⟨c, d⟩`, from `M^T diag(a,b) M` over all 2×2 matrices.
    pub fn rank_two_isometric(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        let q = self.size();
        let mut out = Vec::new();
        for m in 0..q.pow(4) {
            let (m00, m01, m10, m11) = (m % q, (m / q) % q, (m / q / q) % q, m / q / q / q);
            // entries of M^T A M
            let e = |x: usize, y: usize, z: usize, w: usize| {
                self.add(self.mul(a, self.mul(x, z)), self.mul(b, self.mul(y, w)))
            };
            let c = e(m00, m10, m00, m10);
            let off = e(m00, m10, m01, m11);
            let d = e(m01, m11, m01, m11);
            if off == 0 && c != 0 && d != 0 && !out.contains(&(c, d)) {
                out.push((c, d));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Basis of the lattice spanned by `vs`, added a few at a time.
fn span_basis(g: usize, vs: &[Vec<BigInt>]) -> IntMatrix {
    let mut b = IntMatrix::zeros(g, 0);
    for chunk in vs.chunks(4 * g.max(1)) {
        let m = b.hcat(&IntMatrix::from_cols(g, chunk));
        b = hermite_normal_form(&m).basis();
    }
    b
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut e = 0;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// What the exhaustive search finds.
#[derive(Clone, Debug, Serialize)]
pub struct FormsOracle {
    pub q: u64,
    pub gw: FGAbGroup,
    pub w: FGAbGroup,
    pub i_squared: FGAbGroup,
    /// isometry classes of anisotropic forms, the zero form included
    pub anisotropic_classes: usize,
    /// order of `⟨1⟩` in `W`
    pub order_of_one: u64,
    /// rank 2 isometry classes agree with discriminant classes
    pub rank_disc_classification: bool,
    /// every rank 3 diagonal form is isotropic
    pub rank_three_isotropic: bool,
}

/// Classify forms over `F_q` from scratch.
pub fn forms_oracle(q: u64) -> Result<FormsOracle> {
    let f = FiniteField::new(q)?;
    let units: Vec<usize> = f.units().collect();
    let g = units.len();
    let idx = |a: usize| a - 1;
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    let basis_vec = |terms: &[(usize, i64)]| {
        let mut v = vec![BigInt::from(0); g];
        for &(a, c) in terms {
            v[idx(a)] += c;
        }
        v
    };
    for &a in &units {
        for &x in &units {
            let b = f.mul(a, f.mul(x, x));
            if b != a {
                rels.push(basis_vec(&[(a, 1), (b, -1)]));
            }
        }
    }
    let mut iso: Vec<Vec<(usize, usize)>> = Vec::new();
    for &a in &units {
        for &b in &units {
            let cls = f.rank_two_isometric(a, b);
            for &(c, d) in &cls {
                rels.push(basis_vec(&[(a, 1), (b, 1), (c, -1), (d, -1)]));
            }
            iso.push(cls);
        }
    }
    let rel_m = span_basis(g, &rels);
    let gw = cokernel(&rel_m, &[]);

    let minus_one = f.neg(f.one());
    let hyper = basis_vec(&[(f.one(), 1), (minus_one, 1)]);
    let w_rel = rel_m.hcat(&IntMatrix::from_cols(g, &[hyper]));
    let w = cokernel(&w_rel, &[]);

    // I is spanned by ⟨a⟩ - ⟨1⟩ and 2⟨1⟩; products are tensor products of diagonal forms
    let mut ideal = Vec::new();
    for &a in &units {
        if a != f.one() {
            ideal.push(vec![(a, 1), (f.one(), -1)]);
        }
    }
    ideal.push(vec![(f.one(), 2)]);
    let mut prods = Vec::new();
    for x in &ideal {
        for y in &ideal {
            let mut terms = Vec::new();
            for &(a, c) in x {
                for &(b, d) in y {
                    terms.push((f.mul(a, b), c * d));
                }
            }
            prods.push(basis_vec(&terms));
        }
    }
    let i_squared = subgroup_type(&span_basis(g, &prods), &w_rel);

    let mut aniso: Vec<Vec<usize>> = vec![vec![]];
    let mut rank_one: Vec<usize> = Vec::new();
    for &a in &units {
        if !rank_one.iter().any(|&b| f.is_square(f.mul(a, b))) {
            rank_one.push(a);
            aniso.push(vec![a]);
        }
    }
    let mut rank_two: Vec<(usize, usize)> = Vec::new();
    for &a in &units {
        for &b in &units {
            if f.isotropic_count(&[a, b]) == 0
                && !rank_two.iter().any(|&(c, d)| iso[(a - 1) * g + (b - 1)].contains(&(c, d)))
            {
                rank_two.push((a, b));
                aniso.push(vec![a, b]);
            }
        }
    }
    let rank_three_isotropic =
        units.iter().all(|&a| units.iter().all(|&b| units.iter().all(|&c| f.isotropic_count(&[a, b, c]) > 0)));

    let one_one = f.isotropic_count(&[f.one(), f.one()]) > 0;
    // ⟨1,1⟩ is hyperbolic exactly when isotropic; rank 4 multiples of ⟨1⟩ then vanish
    let order_of_one = if one_one { 2 } else { 4 };

    let mut rank_disc_classification = true;
    for &a in &units {
        for &b in &units {
            let cls = &iso[(a - 1) * g + (b - 1)];
            for &c in &units {
                for &d in &units {
                    let same = cls.contains(&(c, d));
                    let disc = f.is_square(f.mul(f.mul(a, b), f.mul(c, d)));
                    if same != disc {
                        rank_disc_classification = false;
                    }
                }
            }
        }
    }

    Ok(FormsOracle {
        q,
        gw,
        w,
        i_squared,
        anisotropic_classes: aniso.len(),
        order_of_one,
        rank_disc_classification,
        rank_three_isotropic,
    })
}

/// Catalog descriptor of `F_q`.
pub fn descriptor_of(q: u64) -> Result<FieldDescriptor> {
    let (p, _) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    let kind = if q % 4 == 1 { FieldKind::FiniteQ1 } else { FieldKind::FiniteQ3 };
    FieldDescriptor::new(kind, p)
}
