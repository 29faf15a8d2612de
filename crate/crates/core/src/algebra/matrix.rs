//! Dense integer matrices, Smith and Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    /// Build from columns, each of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        s += &self[(i, j)] * x;
                    }
                }
                s
            })
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = idx.iter().map(|&j| self.col(j)).collect();
        Self::from_cols(self.rows, &cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    fn neg_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }

    /// Replace columns a, b by (p*a + q*b, r*a + s*b).
    fn mix_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = p * &x + q * &y;
            self[(i, b)] = r * &x + s * &y;
        }
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

/// Extended gcd with g >= 0: a*x + b*y = g.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Result of [`smith_normal_form`]: `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows.min(self.d.cols);
        (0..k).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let d = smith_reduce(m, Some((&mut u, &mut v)));
    Smith { u, v, d }
}

/// Diagonal of the Smith normal form, without transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let d = smith_reduce(m, None);
    let k = d.rows.min(d.cols);
    (0..k).map(|i| d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
}

/// `x` rounded to the nearest multiple of `p`, as a quotient.
fn nearest_quotient(x: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(p);
    // x = q*p + r with r between 0 and p; q + 1 leaves r - p
    if (&r * 2u32).abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

fn smith_reduce(m: &IntMatrix, mut uv: Option<(&mut IntMatrix, &mut IntMatrix)>) -> IntMatrix {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        if let Some((u, v)) = uv.as_mut() {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            for i in t + 1..r {
                if !d[(i, t)].is_zero() {
                    let q = -nearest_quotient(&d[(i, t)], &d[(t, t)]);
                    d.add_row(i, t, &q);
                    if let Some((u, _)) = uv.as_mut() {
                        u.add_row(i, t, &q);
                    }
                }
            }
            for j in t + 1..c {
                if !d[(t, j)].is_zero() {
                    let q = -nearest_quotient(&d[(t, j)], &d[(t, t)]);
                    d.add_col(j, t, &q);
                    if let Some((_, v)) = uv.as_mut() {
                        v.add_col(j, t, &q);
                    }
                }
            }
            // a remainder left in the pivot row or column becomes the new pivot
            let in_col = (t + 1..r).filter(|&i| !d[(i, t)].is_zero()).min_by_key(|&i| d[(i, t)].abs());
            let in_row = (t + 1..c).filter(|&j| !d[(t, j)].is_zero()).min_by_key(|&j| d[(t, j)].abs());
            match (in_col, in_row) {
                (Some(i), Some(j)) if d[(t, j)].abs() < d[(i, t)].abs() => {
                    d.swap_cols(t, j);
                    if let Some((_, v)) = uv.as_mut() {
                        v.swap_cols(t, j);
                    }
                    continue;
                }
                (Some(i), _) => {
                    d.swap_rows(t, i);
                    if let Some((u, _)) = uv.as_mut() {
                        u.swap_rows(t, i);
                    }
                    continue;
                }
                (None, Some(j)) => {
                    d.swap_cols(t, j);
                    if let Some((_, v)) = uv.as_mut() {
                        v.swap_cols(t, j);
                    }
                    continue;
                }
                (None, None) => {}
            }
            // divisibility of the trailing block
            let p = d[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    if let Some((u, _)) = uv.as_mut() {
                        u.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.neg_row(t);
            if let Some((u, _)) = uv.as_mut() {
                u.neg_row(t);
            }
        }
    }
    d
}

/// Column-style Hermite normal form: `m * v = h` with `v` unimodular.
///
/// The first `rank` columns of `h` are in echelon form with positive pivots
/// at rows `pivots[k]`, entries left of each pivot reduced modulo it. The
/// remaining columns are zero, so the matching columns of `v` span the kernel.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the column lattice, as an `rows x rank` matrix.
    pub fn basis(&self) -> IntMatrix {
        self.h.select_cols(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// Coordinates of `x` with respect to [`Hermite::basis`], if `x` lies in the lattice.
    pub fn solve_basis(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = x.to_vec();
        let mut out = vec![BigInt::zero(); self.rank()];
        for (k, &row) in self.pivots.iter().enumerate() {
            let piv = &self.h[(row, k)];
            if rest[row].is_zero() {
                continue;
            }
            let (q, r) = rest[row].div_rem(piv);
            if !r.is_zero() {
                return None;
            }
            for (i, e) in rest.iter_mut().enumerate() {
                let hk = &self.h[(i, k)];
                if !hk.is_zero() {
                    *e -= hk * &q;
                }
            }
            out[k] = q;
        }
        rest.iter().all(|e| e.is_zero()).then_some(out)
    }

    /// Coefficients `c` with `m * c = x`, if any.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let b = self.solve_basis(x)?;
        let mut full = b;
        full.resize(self.v.cols, BigInt::zero());
        Some(self.v.mul_vec(&full))
    }

    /// Kernel basis of the original matrix, as columns.
    pub fn kernel(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.rank()..self.v.cols).collect();
        self.v.select_cols(&idx)
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let (r, c) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut v = IntMatrix::identity(c);
    let mut pivots = Vec::new();
    let mut k = 0;
    for row in 0..r {
        if k == c {
            break;
        }
        // gather the gcd of h[row, k..] into column k
        for j in k + 1..c {
            if h[(row, j)].is_zero() {
                continue;
            }
            let (g, x, y) = xgcd(&h[(row, k)], &h[(row, j)]);
            let a = h[(row, k)].clone() / &g;
            let b = h[(row, j)].clone() / &g;
            let nb = -&b;
            h.mix_cols(k, j, &x, &y, &nb, &a);
            v.mix_cols(k, j, &x, &y, &nb, &a);
        }
        if h[(row, k)].is_zero() {
            continue;
        }
        if h[(row, k)].is_negative() {
            h.neg_col(k);
            v.neg_col(k);
        }
        let piv = h[(row, k)].clone();
        for j in 0..k {
            let q = h[(row, j)].div_floor(&piv);
            if !q.is_zero() {
                let nq = -q;
                h.add_col(j, k, &nq);
                v.add_col(j, k, &nq);
            }
        }
        pivots.push(row);
        k += 1;
    }
    Hermite { h, v, pivots }
}

/// Saturated basis of the integer kernel of `m`, as columns.
/// A lattice given by a basis of columns, with exact coordinate solving.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    basis: IntMatrix,
    rows: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

impl LatticeBasis {
    /// `basis` must have linearly independent columns.
    pub fn new(basis: IntMatrix) -> Option<LatticeBasis> {
        let (rows, _) = rational_rref(&basis.transpose());
        if rows.len() != basis.cols {
            return None;
        }
        let r = rows.len();
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let mut row: Vec<BigRational> =
                    (0..r).map(|j| BigRational::from_integer(basis[(i, j)].clone())).collect();
                row.extend((0..r).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for col in 0..r {
            let p = (col..r).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, p);
            let inv = a[col][col].recip();
            for e in a[col].iter_mut() {
                *e *= &inv;
            }
            let prow = a[col].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (e, pe) in row.iter_mut().zip(&prow) {
                    if !pe.is_zero() {
                        *e -= &f * pe;
                    }
                }
            }
        }
        let inverse = a.into_iter().map(|row| row[r..].to_vec()).collect();
        Some(LatticeBasis { basis, rows, inverse })
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    /// Integer coordinates of `x`, if it lies in the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let xs: Vec<BigRational> = self.rows.iter().map(|&i| BigRational::from_integer(x[i].clone())).collect();
        let mut out = Vec::with_capacity(self.rank());
        for row in &self.inverse {
            let mut acc = BigRational::zero();
            for (a, b) in row.iter().zip(&xs) {
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            if !acc.is_integer() {
                return None;
            }
            out.push(acc.to_integer());
        }
        (self.basis.mul_vec(&out) == x).then_some(out)
    }
}

/// Basis of the integer kernel `{v : m v = 0}`.
///
/// The rational kernel is parametrised by the free columns of the reduced row
/// echelon form; integrality of the pivot coordinates is a congruence modulo the
/// common denominator, solved by a lattice Hermite form kept reduced mod that
/// denominator.
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let (pivots, rref) = rational_rref(m);
    let c = m.cols;
    let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
    let k = free.len();
    if k == 0 {
        return IntMatrix::zeros(c, 0);
    }
    let mut d = BigInt::one();
    for row in &rref {
        for &f in &free {
            d = d.lcm(row[f].denom());
        }
    }
    let congruences: Vec<Vec<BigInt>> = rref
        .iter()
        .map(|row| free.iter().map(|&f| (&row[f] * BigRational::from_integer(d.clone())).to_integer()).collect())
        .collect();
    let t = congruence_lattice(&congruences, k, &d);
    let mut out = IntMatrix::zeros(c, k);
    for j in 0..k {
        for (a, &f) in free.iter().enumerate() {
            out[(f, j)] = t[(a, j)].clone();
        }
        for (row, &p) in rref.iter().zip(&pivots) {
            let mut acc = BigRational::zero();
            for (a, &f) in free.iter().enumerate() {
                if !row[f].is_zero() && !t[(a, j)].is_zero() {
                    acc += &row[f] * BigRational::from_integer(t[(a, j)].clone());
                }
            }
            debug_assert!(acc.is_integer());
            out[(p, j)] = -acc.to_integer();
        }
    }
    out
}

/// Reduced row echelon form over `Q`: pivot columns and the nonzero rows.
fn rational_rref(m: &IntMatrix) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let mut a: Vec<Vec<BigRational>> =
        (0..m.rows).map(|i| (0..m.cols).map(|j| BigRational::from_integer(m[(i, j)].clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for e in a[r].iter_mut() {
            if !e.is_zero() {
                *e *= &inv;
            }
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (e, pe) in row.iter_mut().zip(&prow) {
                if !pe.is_zero() {
                    *e -= &f * pe;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (pivots, a)
}

/// Lower triangular Hermite basis of `{t in Z^k : a t ≡ 0 mod d for each row a}`.
fn congruence_lattice(rows: &[Vec<BigInt>], k: usize, d: &BigInt) -> IntMatrix {
    let mut basis: Vec<Vec<BigInt>> =
        (0..k).map(|j| (0..k).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    if d.is_one() {
        return IntMatrix::from_cols(k, &basis);
    }
    for a in rows {
        let dot = |v: &Vec<BigInt>| -> BigInt { a.iter().zip(v).map(|(x, y)| x * y).sum::<BigInt>().mod_floor(d) };
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
        for v in basis.drain(..) {
            let w = dot(&v);
            if w.is_zero() {
                gens.push(v);
                continue;
            }
            match acc.take() {
                None => acc = Some((v, w)),
                Some((p, pw)) => {
                    let (g, x, y) = xgcd(&pw, &w);
                    let np: Vec<BigInt> = p.iter().zip(&v).map(|(s, t)| &x * s + &y * t).collect();
                    let (ca, cb) = (-(&w / &g), &pw / &g);
                    let rest: Vec<BigInt> = p.iter().zip(&v).map(|(s, t)| &ca * s + &cb * t).collect();
                    gens.push(rest);
                    acc = Some((np, g));
                }
            }
        }
        if let Some((p, pw)) = acc {
            let f = d / pw.gcd(d);
            gens.push(p.iter().map(|e| e * &f).collect());
        }
        basis = hermite_mod(gens, k, d);
    }
    IntMatrix::from_cols(k, &basis)
}

/// Lower triangular Hermite basis of the lattice spanned by `gens` and `d Z^k`.
fn hermite_mod(gens: Vec<Vec<BigInt>>, k: usize, d: &BigInt) -> Vec<Vec<BigInt>> {
    let reduce = |v: Vec<BigInt>| -> Vec<BigInt> { v.into_iter().map(|e| e.mod_floor(d)).collect() };
    let mut cols: Vec<Vec<BigInt>> = gens.into_iter().map(reduce).filter(|v| v.iter().any(|e| !e.is_zero())).collect();
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut rest = Vec::new();
        let mut piv: Option<Vec<BigInt>> = None;
        for v in cols.drain(..) {
            if v[i].is_zero() {
                rest.push(v);
                continue;
            }
            match piv.take() {
                None => piv = Some(v),
                Some(p) => {
                    let (g, x, y) = xgcd(&p[i], &v[i]);
                    let (ca, cb) = (-(&v[i] / &g), &p[i] / &g);
                    let np: Vec<BigInt> = p.iter().zip(&v).map(|(s, t)| &x * s + &y * t).collect();
                    let other: Vec<BigInt> = p.iter().zip(&v).map(|(s, t)| &ca * s + &cb * t).collect();
                    rest.push(reduce(other));
                    piv = Some(reduce(np));
                }
            }
        }
        let mut p = piv.unwrap_or_else(|| vec![BigInt::zero(); k]);
        // fold in d e_i
        let (g, u, _) = xgcd(&p[i], d);
        let left: Vec<BigInt> = p.iter().map(|e| e * (d / &g)).collect();
        p = p.iter().map(|e| e * &u).collect();
        p = reduce(p);
        p[i] = g.clone();
        for e in p.iter_mut().take(i) {
            *e = BigInt::zero();
        }
        let mut left = reduce(left);
        left[i] = BigInt::zero();
        rest.push(left);
        cols = rest.into_iter().filter(|v| v.iter().any(|e| !e.is_zero())).collect();
        out.push(p);
    }
    for i in 0..k {
        let (head, tail) = out.split_at_mut(i);
        let pi = &tail[0];
        for c in head.iter_mut() {
            let q = c[i].div_floor(&pi[i]);
            if !q.is_zero() {
                for (e, pe) in c.iter_mut().zip(pi) {
                    *e -= &q * pe;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn smith_small() {
        let m = bi(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        let d: Vec<i64> = s.diagonal().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn hermite_solve_and_kernel() {
        let m = bi(&[vec![2, 4, 6], vec![1, 3, 5]]);
        let h = hermite_normal_form(&m);
        assert_eq!(m.mul(&h.v), h.h);
        assert_eq!(h.rank(), 2);
        let k = h.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let x = vec![BigInt::from(2), BigInt::from(1)];
        let c = h.solve(&x).unwrap();
        assert_eq!(m.mul_vec(&c), x);
        assert!(h.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn determinant_small() {
        let m = bi(&[vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]);
        assert_eq!(m.determinant(), BigInt::from(-4));
    }
}
