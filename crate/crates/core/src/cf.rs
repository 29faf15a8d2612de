//! The Wall lattice `W = Ker Δ` and the complex `(W, δ = -∂)`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{cokernel, kernel_lattice, partition_count, FGAbGroup, IntMatrix, LatticeBasis};
use crate::error::{Error, Result};
use crate::mu::{MuBasis, MuClass};
use crate::operations::{boundary_partial, delta_op, CohOperation};

/// `Ker Δ ⊂ π_{2n} MU`, with basis columns in monomial coordinates.
#[derive(Clone, Debug)]
pub struct WallLattice {
    pub degree: u32,
    pub basis: IntMatrix,
    lattice: LatticeBasis,
}

impl WallLattice {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of a monomial-coordinate vector in this basis.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.lattice.solve(v)
    }
}

/// One row of the homology table.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyRow {
    pub n: u32,
    #[serde(rename = "rank_Z")]
    pub rank_z: usize,
    #[serde(rename = "rank_B")]
    pub rank_b: usize,
    #[serde(rename = "H")]
    pub h: FGAbGroup,
}

/// Which sublattice of `π_{2n} MU` is the image of `π_{2n} MSL`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ImageLattice {
    Cycles,
    Boundaries,
}

pub struct CfComplex {
    basis: Arc<MuBasis>,
    partial: CohOperation,
    delta: CohOperation,
    /// `∂: L_n -> L_{n-1}` in monomial coordinates, index n >= 1
    partial_x: Vec<IntMatrix>,
    /// `Δ: L_n -> L_{n-2}` in monomial coordinates, index n >= 2
    delta_x: Vec<IntMatrix>,
    wall: Vec<WallLattice>,
    /// `δ_n: W_n -> W_{n-1}` in Wall coordinates, index n >= 1
    dmat: Vec<IntMatrix>,
    /// cycle basis in Wall coordinates
    cycles: Vec<IntMatrix>,
}

impl CfComplex {
    pub fn build(basis: Arc<MuBasis>) -> Result<CfComplex> {
        let n_max = basis.max_degree();
        let partial = boundary_partial(basis.fgl());
        let delta = delta_op(basis.fgl());
        let mut partial_x = vec![IntMatrix::zeros(0, 1)];
        let mut delta_x = vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(0, 1)];
        for n in 1..=n_max {
            partial_x.push(lattice_matrix(&basis, &partial, n)?);
            if n >= 2 {
                delta_x.push(lattice_matrix(&basis, &delta, n)?);
            }
        }
        let mut wall = Vec::new();
        for n in 0..=n_max {
            let b = if n < 2 { IntMatrix::identity(basis.rank(n)) } else { kernel_lattice(&delta_x[n as usize]) };
            let lattice = LatticeBasis::new(b.clone())
                .ok_or_else(|| Error::Verification(format!("Wall basis in degree {n} is dependent")))?;
            wall.push(WallLattice { degree: n, basis: b, lattice });
        }
        let mut dmat = vec![IntMatrix::zeros(0, wall[0].rank())];
        for n in 1..=n_max as usize {
            let img = partial_x[n].mul(&wall[n].basis);
            let mut cols = Vec::new();
            for j in 0..img.cols() {
                let v: Vec<BigInt> = img.col(j).into_iter().map(|x| -x).collect();
                let c = wall[n - 1].coordinates(&v).ok_or_else(|| {
                    Error::NotInLattice(format!("∂ of a Wall class in degree {n} left the Wall lattice"))
                })?;
                cols.push(c);
            }
            dmat.push(IntMatrix::from_cols(wall[n - 1].rank(), &cols));
        }
        let mut cycles = vec![IntMatrix::identity(wall[0].rank())];
        for m in dmat.iter().skip(1) {
            cycles.push(kernel_lattice(m));
        }
        Ok(CfComplex { basis, partial, delta, partial_x, delta_x, wall, dmat, cycles })
    }

    pub fn max_degree(&self) -> u32 {
        self.basis.max_degree()
    }

    pub fn basis(&self) -> &Arc<MuBasis> {
        &self.basis
    }

    pub fn partial(&self) -> &CohOperation {
        &self.partial
    }

    pub fn delta(&self) -> &CohOperation {
        &self.delta
    }

    fn check(&self, n: u32, max: u32) -> Result<()> {
        if n > max {
            Err(Error::DegreeOutOfRange { degree: n as i64, min: 0, max: max as i64 })
        } else {
            Ok(())
        }
    }

    pub fn w_lattice(&self, n: u32) -> Result<&WallLattice> {
        self.check(n, self.max_degree())?;
        Ok(&self.wall[n as usize])
    }

    /// `Δ: L_n -> L_{n-2}` in monomial coordinates.
    pub fn delta_lattice_matrix(&self, n: u32) -> Result<&IntMatrix> {
        self.check(n, self.max_degree())?;
        if n < 2 {
            return Err(Error::DegreeOutOfRange { degree: n as i64, min: 2, max: self.max_degree() as i64 });
        }
        Ok(&self.delta_x[n as usize])
    }

    /// `∂: L_n -> L_{n-1}` in monomial coordinates.
    pub fn partial_lattice_matrix(&self, n: u32) -> Result<&IntMatrix> {
        self.check(n, self.max_degree())?;
        if n < 1 {
            return Err(Error::DegreeOutOfRange { degree: 0, min: 1, max: self.max_degree() as i64 });
        }
        Ok(&self.partial_x[n as usize])
    }

    /// `δ_n: W_n -> W_{n-1}` in Wall coordinates.
    pub fn delta_matrix(&self, n: u32) -> Result<&IntMatrix> {
        self.check(n, self.max_degree())?;
        if n < 1 {
            return Err(Error::DegreeOutOfRange { degree: 0, min: 1, max: self.max_degree() as i64 });
        }
        Ok(&self.dmat[n as usize])
    }

    /// Basis of `Z_n` in Wall coordinates.
    pub fn cycles(&self, n: u32) -> Result<&IntMatrix> {
        self.check(n, self.max_degree())?;
        Ok(&self.cycles[n as usize])
    }

    /// Generators of `B_n` in Wall coordinates.
    pub fn boundaries(&self, n: u32) -> Result<&IntMatrix> {
        self.check(n, self.max_degree().saturating_sub(1))?;
        Ok(&self.dmat[n as usize + 1])
    }

    /// Monomial coordinates of a Wall-coordinate vector.
    pub fn wall_to_monomial(&self, n: u32, v: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(self.w_lattice(n)?.basis.mul_vec(v))
    }

    /// Cycle classes in degree `n`.
    pub fn cycle_classes(&self, n: u32) -> Result<Vec<MuClass>> {
        let z = self.cycles(n)?;
        (0..z.cols())
            .map(|j| {
                let c = self.wall_to_monomial(n, &z.col(j))?;
                Ok(self.basis.from_coordinates(n, &c)?.relabel(format!("z{n}_{j}")))
            })
            .collect()
    }

    /// Wall basis classes in degree `n`.
    pub fn wall_classes(&self, n: u32) -> Result<Vec<MuClass>> {
        let w = self.w_lattice(n)?;
        (0..w.rank())
            .map(|j| Ok(self.basis.from_coordinates(n, &w.basis.col(j))?.relabel(format!("w{n}_{j}"))))
            .collect()
    }

    /// `H_n = Z_n / B_n` for `n <= N - 1`.
    pub fn cf_homology(&self, n: u32) -> Result<FGAbGroup> {
        Ok(self.homology_row(n)?.h)
    }

    pub fn homology_row(&self, n: u32) -> Result<HomologyRow> {
        let z = self.cycles(n)?;
        let b = self.boundaries(n)?;
        let zh = LatticeBasis::new(z.clone())
            .ok_or_else(|| Error::Verification(format!("cycle basis in degree {n} is dependent")))?;
        let mut cols = Vec::new();
        for j in 0..b.cols() {
            let c = zh
                .solve(&b.col(j))
                .ok_or_else(|| Error::Verification(format!("boundary in degree {n} is not a cycle")))?;
            cols.push(c);
        }
        let rel = IntMatrix::from_cols(z.cols(), &cols);
        let rank_b = crate::algebra::group::rank(&rel);
        Ok(HomologyRow { n, rank_z: z.cols(), rank_b, h: cokernel(&rel, &[]) })
    }

    /// Which lattice `π_{2n} MSL` maps onto inside `π_{2n} MU`.
    pub fn msl_image_in_mgl(&self, n: u32) -> Result<(ImageLattice, IntMatrix)> {
        if n % 4 == 2 {
            let b = self.boundaries(n)?;
            Ok((ImageLattice::Boundaries, self.w_lattice(n)?.basis.mul(b)))
        } else {
            let z = self.cycles(n)?;
            Ok((ImageLattice::Cycles, self.w_lattice(n)?.basis.mul(z)))
        }
    }
}

/// Matrix of an operation on monomial coordinates, checking that the lattice is preserved.
fn lattice_matrix(basis: &MuBasis, op: &CohOperation, n: u32) -> Result<IntMatrix> {
    let tgt = n - op.shift;
    let hm = op.hurewicz_matrix(n)?;
    let mut cols = Vec::new();
    for x in basis.basis(n)? {
        let y = hm.mul_vec(&x.hurewicz_vector());
        let cls = MuClass::from_hurewicz_vector(tgt, &y, "");
        cols.push(basis.coordinates(&cls)?);
    }
    Ok(IntMatrix::from_cols(basis.rank(tgt), &cols))
}

/// `π_{2n} MSU` additively: `Z^{p(n) - p(n-1)}`, plus `(Z/2)^{p((n-1)/4)}` when `n ≡ 1 mod 4`.
pub fn msu_additive(n: u32) -> FGAbGroup {
    let free = (partition_count(n as i64) - partition_count(n as i64 - 1)) as usize;
    let g = FGAbGroup::free(free);
    if n % 4 == 1 {
        let t = partition_count(((n - 1) / 4) as i64) as usize;
        g.direct_sum(&FGAbGroup::cyclic(2).power(t))
    } else {
        g
    }
}

/// Expected `H_n`: `(Z/2)^{p(n/4)}` for `n ≡ 0`, `(Z/2)^{p((n-2)/4)}` for `n ≡ 2 mod 4`, else 0.
pub fn expected_homology(n: u32) -> FGAbGroup {
    match n % 4 {
        0 => FGAbGroup::cyclic(2).power(partition_count((n / 4) as i64) as usize),
        2 => FGAbGroup::cyclic(2).power(partition_count(((n - 2) / 4) as i64) as usize),
        _ => FGAbGroup::zero(),
    }
}
