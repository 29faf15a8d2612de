//! Chern numbers of hypersurfaces and products of projective spaces, and the
//! polynomial generator test for the MSU part.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{partitions_of, Partition};
use crate::cf::CfComplex;
use crate::error::{Error, Result};
use crate::fgl::FglContext;
use crate::mu::{chern_numbers_to_hurewicz, cpn_class, prime_power_base, tangent_numbers, ChernTables, MuClass};
use crate::poly::{GradedPoly, Mono, PolyRing};

#[derive(Clone, Debug, Serialize)]
pub struct VarietyClass {
    pub description: String,
    pub dimension: u32,
    /// tangent numbers `c_ω(T)[X]` in [`partitions_of`] order
    #[serde(serialize_with = "crate::ser::labelled")]
    pub tangent_numbers: Vec<(String, BigInt)>,
    /// `c_1(T) = 0` in the ambient cohomology model
    pub calabi_yau: bool,
    #[serde(skip)]
    pub class: MuClass,
}

impl VarietyClass {
    pub fn tangent_number(&self, omega: &Partition) -> Option<&BigInt> {
        let key = omega.to_string();
        self.tangent_numbers.iter().find(|(w, _)| *w == key).map(|(_, v)| v)
    }
}

fn labelled(n: u32, nums: Vec<BigInt>) -> Vec<(String, BigInt)> {
    partitions_of(n).iter().map(Partition::to_string).zip(nums).collect()
}

/// Smooth degree-`d` hypersurface in `CP^n`.
pub fn hypersurface_class(n: u32, d: u32) -> Result<VarietyClass> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("need ambient dimension and degree at least 1".into()));
    }
    let m = n - 1;
    let ring = PolyRing::new(&[("h", 1)], n)?;
    let h = GradedPoly::var(&ring, 0);
    let one = GradedPoly::one(&ring);
    let dh = h.scale_int(d as i64);
    let total = &(&one + &h).pow(n + 1) * &(&one + &dh).reciprocal()?;
    let top = Mono::var(0, m);
    let integrate = |p: &GradedPoly| p.coeff(&top).to_integer() * BigInt::from(d);
    let t = tangent_numbers(m, &total, &integrate);
    let calabi_yau = total.homogeneous_part(1).is_zero();
    let class = MuClass::new(m, chern_numbers_to_hurewicz(m, &t)?, format!("V({n},{d})"))?;
    Ok(VarietyClass {
        description: format!("degree {d} hypersurface in CP^{n}"),
        dimension: m,
        tangent_numbers: labelled(m, t),
        calabi_yau,
        class,
    })
}

/// `CP^{n_1} × ... × CP^{n_k}`.
pub fn product_projective_class(fgl: &FglContext, dims: &[u32]) -> Result<VarietyClass> {
    let m: u32 = dims.iter().sum();
    if m > fgl.order() {
        return Err(Error::DegreeOutOfRange { degree: m as i64, min: 0, max: fgl.order() as i64 });
    }
    let names: Vec<String> = (0..dims.len()).map(|i| format!("h{i}")).collect();
    let vars: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
    let ring = PolyRing::new(&vars, m)?;
    let one = GradedPoly::one(&ring);
    let mut total = one.clone();
    for (i, &k) in dims.iter().enumerate() {
        total = &total * &(&one + &GradedPoly::var(&ring, i)).pow(k + 1);
    }
    let top = Mono::from_pairs(&dims.iter().enumerate().map(|(i, &k)| (i, k)).collect::<Vec<_>>());
    let integrate = |p: &GradedPoly| p.coeff(&top).to_integer();
    let t = tangent_numbers(m, &total, &integrate);
    let mut class = MuClass::unit();
    for &k in dims {
        class = class.multiply(&cpn_class(fgl, k)?);
    }
    let label: Vec<String> = dims.iter().map(|k| format!("CP{k}")).collect();
    let label = if label.is_empty() { "pt".to_string() } else { label.join("x") };
    Ok(VarietyClass {
        description: format!("product {label}"),
        dimension: m,
        tangent_numbers: labelled(m, t),
        calabi_yau: total.homogeneous_part(1).is_zero(),
        class: class.relabel(label),
    })
}

/// Normal Chern number `c_ω(ν)[x]`.
pub fn chern_number(x: &MuClass, omega: &Partition) -> Result<BigInt> {
    if omega.weight() != x.degree {
        return Err(Error::InvalidArgument(format!("{omega} does not have weight {}", x.degree)));
    }
    let i = partitions_of(x.degree).iter().position(|p| p == omega).expect("partition of the degree");
    Ok(ChernTables::new(x.degree).normal_numbers(&x.hurewicz_vector()).swap_remove(i))
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorVerdict {
    pub degree: u32,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub s_number: BigInt,
    /// `p` when `n+1` is a power of the odd prime `p`, else 1
    pub odd_part: u64,
    pub pass: bool,
}

/// `s = ±p·2^j` when `n+1` is a power of an odd prime `p`, `s = ±2^j` otherwise.
pub fn msu_s_number_ok(n: u32, s: &BigInt) -> (u64, bool) {
    let odd = match prime_power_base(n as u64 + 1) {
        Some(p) if p != 2 => p,
        _ => 1,
    };
    if s.is_zero() {
        return (odd, false);
    }
    let mut r = s.abs();
    let two = BigInt::from(2);
    while r.is_even() {
        r /= &two;
    }
    (odd, r == BigInt::from(odd) || (odd == 1 && r.is_one()))
}

/// Generator test for a class of the cycle lattice `Z_n`.
pub fn generator_check_msu(x: &MuClass, cf: &CfComplex) -> Result<GeneratorVerdict> {
    let n = x.degree;
    if n < 2 {
        return Err(Error::InvalidArgument("generator test needs degree at least 2".into()));
    }
    let coords = cf.basis().coordinates(x)?;
    let w = cf
        .w_lattice(n)?
        .coordinates(&coords)
        .ok_or_else(|| Error::NotACycle(format!("{} is not in Ker Δ", x.label)))?;
    let dx = cf.delta_matrix(n)?.mul_vec(&w);
    if dx.iter().any(|v| !v.is_zero()) {
        return Err(Error::NotACycle(format!("{} has nonzero boundary", x.label)));
    }
    let s = x.s_number();
    let (odd_part, pass) = msu_s_number_ok(n, &s);
    Ok(GeneratorVerdict { degree: n, s_number: s, odd_part, pass })
}
