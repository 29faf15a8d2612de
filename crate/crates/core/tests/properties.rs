use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use mslcob::algebra::{
    cokernel, hermite_normal_form, kernel_lattice, partition_count, partitions_of, smith_diagonal, smith_normal_form,
    FGAbGroup, IntMatrix,
};
use mslcob::mu::{chern_numbers_to_hurewicz, ChernTables};
use mslcob::poly::PolyRing;
use mslcob::{CfComplex, GradedPoly, MuBasis, MuClass};

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r).prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn det_is_unit(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

fn complex() -> &'static CfComplex {
    static CF: OnceLock<CfComplex> = OnceLock::new();
    CF.get_or_init(|| CfComplex::build(Arc::new(MuBasis::build(6).unwrap())).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_factorization(m in matrix(5, 5, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(det_is_unit(&s.u) && det_is_unit(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| x.is_positive()));
        prop_assert!(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(smith_diagonal(&m), diag);
    }

    #[test]
    fn hermite_form_spans_the_same_lattice(m in matrix(5, 6, 9), coeffs in prop::collection::vec(-5i64..=5, 6)) {
        let h = hermite_normal_form(&m);
        prop_assert_eq!(m.mul(&h.v), h.h.clone());
        prop_assert!(det_is_unit(&h.v));
        let c: Vec<BigInt> = coeffs.iter().take(m.cols()).map(|&x| x.into()).chain(std::iter::repeat(BigInt::zero())).take(m.cols()).collect();
        let x = m.mul_vec(&c);
        let sol = h.solve(&x).expect("lattice vector");
        prop_assert_eq!(m.mul_vec(&sol), x);
    }

    #[test]
    fn kernel_lattice_is_saturated(m in matrix(4, 6, 6)) {
        let k = kernel_lattice(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols(), m.cols() - hermite_normal_form(&m).rank());
        // the kernel is a direct summand: its cokernel is free
        if k.cols() > 0 {
            prop_assert!(cokernel(&k, &[]).invariant_factors.is_empty());
        }
    }

    #[test]
    fn group_normal_form(free in 0usize..3, orders in prop::collection::vec(1u64..40, 0..5)) {
        let g = FGAbGroup::new(free, &orders, &[]);
        let again = FGAbGroup::new(g.free_rank, &g.invariant_factors, &[]);
        prop_assert_eq!(&again, &g);
        prop_assert_eq!(g.torsion_order(), orders.iter().product::<u64>());
        prop_assert!(g.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0));
        // cokernel of the diagonal presentation
        let k = free + orders.len();
        let mut rel = IntMatrix::zeros(k, orders.len());
        for (j, &d) in orders.iter().enumerate() {
            rel[(free + j, j)] = d.into();
        }
        prop_assert_eq!(cokernel(&rel, &[]), g);
    }

    #[test]
    fn chern_number_round_trip(n in 1u32..7, seed in prop::collection::vec(-20i64..=20, 11)) {
        let t = ChernTables::new(n);
        let h: Vec<BigInt> = seed.iter().cycle().take(partitions_of(n).len()).map(|&x| x.into()).collect();
        let tangent = t.to_tangent(&h);
        prop_assert_eq!(t.from_tangent(&tangent), h.clone());
        let back = chern_numbers_to_hurewicz(n, &tangent).unwrap();
        prop_assert_eq!(MuClass::from_hurewicz_vector(n, &h, "").hurewicz, back);
    }

    #[test]
    fn products_are_commutative_and_associative(i in 0u32..3, j in 0u32..3, k in 0u32..3, a in 0usize..3, b in 0usize..3, c in 0usize..3) {
        let basis = complex().basis();
        let pick = |n: u32, idx: usize| {
            let v = basis.basis(n).unwrap();
            v[idx % v.len()].clone()
        };
        let (x, y, z) = (pick(i, a), pick(j, b), pick(k, c));
        prop_assert_eq!(x.multiply(&y).hurewicz, y.multiply(&x).hurewicz);
        prop_assert_eq!(x.multiply(&y).multiply(&z).hurewicz, x.multiply(&y.multiply(&z)).hurewicz);
        prop_assert!(basis.contains(&x.multiply(&y)));
    }

    #[test]
    fn differential_squares_to_zero(n in 2u32..7, seed in prop::collection::vec(-9i64..=9, 11)) {
        let cf = complex();
        let w = cf.w_lattice(n).unwrap().rank();
        let v: Vec<BigInt> = seed.iter().cycle().take(w).map(|&x| x.into()).collect();
        let once = cf.delta_matrix(n).unwrap().mul_vec(&v);
        let twice = cf.delta_matrix(n - 1).unwrap().mul_vec(&once);
        prop_assert!(twice.iter().all(Zero::is_zero));
    }

    #[test]
    fn series_reciprocal(coeffs in prop::collection::vec(-6i64..=6, 5)) {
        let ring = PolyRing::new(&[("t", 1)], 5).unwrap();
        let t = GradedPoly::var(&ring, 0);
        let mut f = GradedPoly::one(&ring);
        let mut tk = t.clone();
        for &c in &coeffs {
            f = &f + &tk.scale_int(c);
            tk = &tk * &t;
        }
        let g = f.reciprocal().unwrap();
        prop_assert_eq!(&f * &g, GradedPoly::one(&ring));
        prop_assert!(g.is_integral());
    }
}

#[test]
fn partition_counts_agree() {
    for n in 0..=20 {
        assert_eq!(partitions_of(n).len() as u64, partition_count(n as i64));
        for p in partitions_of(n) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.weight(), n);
        }
    }
}
