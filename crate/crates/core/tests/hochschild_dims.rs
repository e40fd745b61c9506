use hochkit_core::algebra::{matrix_algebra, truncated_poly, Algebra};
use hochkit_core::fixtures::fixture;
use hochkit_core::hochschild::{Chain, Cochain, Hochschild, HochschildConfig, HochschildError};
use hochkit_core::linalg::{homology_dim, rank, SparseMatrix};
use hochkit_core::scalars::CycScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Multiplication by c·x^e on K[x]/(x^k), in the monomial basis.
fn times_monomial(k: usize, c: i64, e: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(k, k, (0..k).filter(|i| i + e < k).map(|i| (i + e, i, CycScalar::from_int(c))))
}

/// Dims from the 2-periodic resolution of K[x]/(x^k) over its enveloping algebra,
/// …→ A^e --u--> A^e --v--> A^e → A with u = x⊗1 − 1⊗x and v = Σ x^i ⊗ x^{k−1−i}.
/// Applying A ⊗_{A^e} − (or Hom(−, A)) turns u into 0 and v into k·x^{k−1}.
fn periodic_oracle(k: usize, maxdeg: usize) -> Vec<usize> {
    let zero = SparseMatrix::zeros(k, k);
    let v = times_monomial(k, k as i64, k - 1);
    // map between degrees n and n + 1 (same shape in both variances: the matrices are symmetric in role)
    let map = |n: usize| if n.is_multiple_of(2) { &zero } else { &v };
    (0..=maxdeg)
        .map(|n| {
            let below = if n == 0 { 0 } else { rank(map(n - 1)) };
            homology_dim(k, below, rank(map(n)))
        })
        .collect()
}

fn hh(a: &Algebra, normalized: bool, maxdeg: usize) -> (Vec<usize>, Vec<usize>) {
    let h = Hochschild::new(a, normalized, HochschildConfig::default());
    (h.homology_dims(maxdeg).unwrap().dims, h.cohomology_dims(maxdeg).unwrap().dims)
}

#[test]
fn truncated_polynomials_match_periodic_resolution() {
    for (k, maxdeg) in [(2, 4), (3, 3)] {
        let a = truncated_poly(k).unwrap();
        let oracle = periodic_oracle(k, maxdeg);
        let (ho, co) = hh(&a, true, maxdeg);
        assert_eq!(ho, oracle, "homology of trunc:{k}");
        assert_eq!(co, oracle, "cohomology of trunc:{k}");
    }
    assert_eq!(periodic_oracle(2, 4), vec![2, 1, 1, 1, 1]);
}

#[test]
fn normalized_and_unnormalized_agree() {
    for name in ["dual", "zn:2"] {
        let f = fixture(name).unwrap();
        assert_eq!(hh(&f.algebra, true, 3), hh(&f.algebra, false, 3), "{name}");
    }
}

#[test]
fn semisimple_fixtures_are_separable() {
    for name in ["zn:2", "zn:3", "zn:4", "zn:5", "zn:6", "s3", "mat:2"] {
        let f = fixture(name).unwrap();
        let blocks = match &f.group {
            Some(g) => g.conjugacy_classes().len(),
            None => f.simples.len(),
        };
        let (ho, co) = hh(&f.algebra, true, 3);
        assert_eq!(ho, vec![blocks, 0, 0, 0], "{name}");
        assert_eq!(co, vec![blocks, 0, 0, 0], "{name}");
    }
}

#[test]
fn guards() {
    let a = matrix_algebra(2).unwrap();
    let small = HochschildConfig { degree_cap: 2, size_guard: 1_000 };
    let h = Hochschild::new(&a, true, small);
    assert!(matches!(h.homology_dims(3), Err(HochschildError::DegreeCapExceeded { requested: 3, cap: 2 })));
    let r = h.homology_dims(2).unwrap();
    assert_eq!(r.dims.len(), 3);
    let tight = Hochschild::new(&a, true, HochschildConfig { degree_cap: 8, size_guard: 200 });
    let r = tight.homology_dims(3).unwrap();
    assert!(r.top_incomplete);
}

fn random_values(len: usize, rng: &mut ChaCha8Rng) -> Vec<CycScalar> {
    (0..len).map(|_| CycScalar::from_int(rng.gen_range(-2..=2))).collect()
}

fn cochain(h: &Hochschild, p: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let len = h.space_dim(p).unwrap();
    Cochain { degree: p, values: random_values(len, rng) }
}

fn add(a: &[CycScalar], b: &[CycScalar], sign: i64) -> Vec<CycScalar> {
    a.iter().zip(b).map(|(x, y)| x + &(y * &CycScalar::from_int(sign))).collect()
}

#[test]
fn cup_leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = fixture("dual").unwrap().algebra;
    let h = Hochschild::normalized(&a);
    for (p, q) in [(0, 1), (1, 1), (1, 2), (2, 1)] {
        let f = cochain(&h, p, &mut rng);
        let g = cochain(&h, q, &mut rng);
        let lhs = h.apply_coboundary(&h.cup_chain_level(&f, &g).unwrap()).unwrap();
        let df_g = h.cup_chain_level(&h.apply_coboundary(&f).unwrap(), &g).unwrap();
        let f_dg = h.cup_chain_level(&f, &h.apply_coboundary(&g).unwrap()).unwrap();
        let sign = if p % 2 == 0 { 1 } else { -1 };
        assert_eq!(lhs.values, add(&df_g.values, &f_dg.values, sign), "p={p} q={q}");
    }
}

#[test]
fn cap_leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in [fixture("dual").unwrap().algebra, fixture("zn:2").unwrap().algebra] {
        let h = Hochschild::new(&a, false, HochschildConfig::default());
        for (p, n) in [(0, 1), (1, 2), (1, 3), (2, 3)] {
            let f = cochain(&h, p, &mut rng);
            let z = Chain { degree: n, values: random_values(h.space_dim(n).unwrap(), &mut rng) };
            let lhs = h.apply_boundary(&h.cap_chain_level(&f, &z).unwrap()).unwrap();
            let f_bz = h.cap_chain_level(&f, &h.apply_boundary(&z).unwrap()).unwrap();
            let df_z = h.cap_chain_level(&h.apply_coboundary(&f).unwrap(), &z).unwrap();
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let rhs: Vec<CycScalar> =
                add(&f_bz.values, &df_z.values, -1).iter().map(|x| x * &CycScalar::from_int(sign)).collect();
            assert_eq!(lhs.values, rhs, "{} p={p} n={n}", a.name());
        }
    }
}

#[test]
fn cup_of_cocycles_is_a_cocycle() {
    let a = fixture("dual").unwrap().algebra;
    let h = Hochschild::normalized(&a);
    let complex = h.cochain_complex(2).unwrap();
    let z1 = hochkit_core::linalg::nullspace(complex.map(1)).dense_basis();
    let f = Cochain { degree: 1, values: z1[0].clone() };
    let square = h.cup_product(&f, &f).unwrap();
    assert!(h.is_cocycle(&square).unwrap());
    let not = Cochain { degree: 1, values: vec![CycScalar::one(), CycScalar::zero()] };
    if !h.is_cocycle(&not).unwrap() {
        assert_eq!(h.cup_product(&not, &f).unwrap_err(), HochschildError::NotACocycle(1));
    }
}
