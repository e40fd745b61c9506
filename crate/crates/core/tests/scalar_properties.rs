use hochkit_core::linalg::{nullspace, rank, rref, solve, SparseMatrix};
use hochkit_core::scalars::{parse_scalar, CycScalar};
use num_complex::Complex64;
use proptest::prelude::*;

/// A random element of Q(ζ_n) as a small integer combination of powers of ζ_n.
fn cyc(order: u32) -> impl Strategy<Value = CycScalar> {
    (prop::collection::vec(-4i64..=4, order as usize), 1i64..=3).prop_map(move |(cs, den)| {
        cs.iter()
            .enumerate()
            .map(|(k, &c)| &CycScalar::root_of_unity(order, k as i64) * &CycScalar::ratio(c, den))
            .sum()
    })
}

fn any_cyc() -> impl Strategy<Value = CycScalar> {
    prop_oneof![cyc(1), cyc(3), cyc(4), cyc(5), cyc(6), cyc(12)]
}

fn complex(x: &CycScalar) -> Complex64 {
    let (re, im) = x.to_complex();
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-8 * (1.0 + a.norm() + b.norm())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = SparseMatrix> {
    prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], cols), rows).prop_map(
        move |data| {
            let refs: Vec<&[i64]> = data.iter().map(Vec::as_slice).collect();
            if rows == 0 {
                SparseMatrix::zeros(0, cols)
            } else {
                SparseMatrix::from_ints(&refs)
            }
        },
    )
}

proptest! {
    #[test]
    fn field_axioms(a in any_cyc(), b in any_cyc(), c in any_cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &CycScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CycScalar::one());
        }
    }

    #[test]
    fn conjugation(a in any_cyc(), b in any_cyc()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!(close(complex(&a.conj()), complex(&a).conj()));
    }

    #[test]
    fn complex_embedding_is_a_homomorphism(a in any_cyc(), b in any_cyc()) {
        prop_assert!(close(complex(&(&a * &b)), complex(&a) * complex(&b)));
        prop_assert!(close(complex(&(&a + &b)), complex(&a) + complex(&b)));
    }

    #[test]
    fn display_parse_round_trip(a in any_cyc()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rank_of_transpose(m in matrix(5, 7)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rref_is_idempotent(m in matrix(6, 5)) {
        let r = rref(&m);
        let again = rref(&SparseMatrix::from_sparse_rows(m.cols(), r.rows.clone()));
        prop_assert_eq!(again.rows, r.rows);
        prop_assert_eq!(again.pivots, r.pivots);
    }

    #[test]
    fn rank_nullity(m in matrix(4, 6)) {
        let n = nullspace(&m);
        prop_assert_eq!(n.dim() + rank(&m), m.cols());
        for v in n.dense_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(CycScalar::is_zero));
        }
    }

    #[test]
    fn solve_reproduces_consistent_rhs(m in matrix(5, 4), x in prop::collection::vec(-3i64..=3, 4)) {
        let x: Vec<CycScalar> = x.into_iter().map(CycScalar::from_int).collect();
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn axpy_stays_zero_free(a in matrix(4, 4), b in matrix(4, 4), f in -2i64..=2) {
        let f = CycScalar::from_int(f);
        let sum = a.axpy(&f, &b);
        prop_assert!(sum.triplets().all(|(_, _, v)| !v.is_zero()));
        prop_assert_eq!(sum, a.add(&b.scale(&f)));
    }
}
