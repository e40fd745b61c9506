use std::sync::Arc;

use super::chern::{chern, mukai_pairing};
use super::transfer::Transfer;
use super::{require_semisimple, same, MukaiClass, MukaiError};
use crate::algebra::{matrix_algebra, tensor, Algebra};
use crate::hochschild::{Hochschild, HochschildConfig};
use crate::linalg::{rank, solve, sparse_from_dense, SparseMatrix};
use crate::modules::{apply_kernel, Bimodule, ModuleRep};
use crate::report::CheckRecord;
use crate::scalars::{format_vector, CycScalar};

/// The row-space kernel P = Kⁿ ⊗ A from A to B = M_n ⊗ A:
/// e_ij ⊗ a acts on the left by E_ij ⊗ L_a, A on the right by I ⊗ R_a.
pub fn morita_kernel(a: &Arc<Algebra>, n: usize) -> Result<(Arc<Algebra>, Bimodule), MukaiError> {
    let mat = matrix_algebra(n).map_err(|e| MukaiError::ShapeMismatch(e.to_string()))?;
    let b = Arc::new(tensor(&mat, a));
    let d = a.dim();
    let left_a: Vec<SparseMatrix> = (0..d).map(|k| a.left_mult_matrix(&a.basis_element(k))).collect();
    let mut left = Vec::with_capacity(n * n * d);
    for x in 0..n * n {
        let unit = SparseMatrix::from_triplets(n, n, vec![(x / n, x % n, CycScalar::one())]);
        left.extend(left_a.iter().map(|l| unit.kron(l)));
    }
    let id = SparseMatrix::identity(n);
    let right = (0..d).map(|k| id.kron(&a.right_mult_matrix(&a.basis_element(k)))).collect();
    let kernel = Bimodule::new(a.clone(), b.clone(), left, right)?;
    Ok((b, kernel))
}

fn flatten(m: &SparseMatrix) -> Vec<(usize, CycScalar)> {
    let c = m.cols();
    let mut v: Vec<(usize, CycScalar)> = m.triplets().map(|(r, k, x)| (r * c + k, x.clone())).collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    v
}

/// The central w of the target with w·p = p·z on the kernel; this is the
/// induced isomorphism on HH⁰ for an invertible kernel.
pub fn transport_central(kernel: &Bimodule, z: &MukaiClass) -> Result<MukaiClass, MukaiError> {
    same(z.algebra(), kernel.source())?;
    let target = kernel.target();
    let basis = MukaiClass::basis(target);
    let columns: Vec<_> =
        basis.iter().map(|w| flatten(&kernel.act_left(&sparse_from_dense(w.coords())))).collect();
    let dim = kernel.dim() * kernel.dim();
    let system = SparseMatrix::from_sparse_columns(dim, &columns);
    let rhs = crate::linalg::dense_from_sparse(&flatten(&kernel.act_right(&sparse_from_dense(z.coords()))), dim);
    let c = solve(&system, &rhs).map_err(|_| MukaiError::NoTransport)?;
    Ok(MukaiClass::linear_combination(target, &basis, &c))
}

/// HH₀ bijection, pairing isometry, compatibility with central multiplication
/// and with Chern characters of simples, for A against M_n ⊗ A.
pub fn morita_isometry_check(
    a: &Arc<Algebra>,
    simples: &[ModuleRep],
    n: usize,
) -> Result<Vec<CheckRecord>, MukaiError> {
    require_semisimple(a)?;
    let (b, kernel) = morita_kernel(a, n)?;
    let t = Transfer::new(&kernel, simples)?;
    let basis = MukaiClass::basis(a);
    let images = basis.iter().map(|v| t.pushforward(v)).collect::<Result<Vec<_>, _>>()?;
    let label = format!("{} vs {}", a.name(), b.name());
    let mut out = Vec::new();

    let cols: Vec<_> = images.iter().map(|w| sparse_from_dense(&w.center_coordinates())).collect();
    let target_dim = b.center().dim();
    let r = rank(&SparseMatrix::from_sparse_columns(target_dim, &cols));
    out.push(CheckRecord::new(
        "Φ_* bijective on HH₀",
        "Thm 8 Morita",
        label.clone(),
        format!("rank {r} of {}", basis.len()),
        format!("dim Z = {target_dim}"),
        r == basis.len() && r == target_dim,
    ));

    for (i, v) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            out.push(CheckRecord::equal(
                "⟨Φ_* v, Φ_* w⟩ = ⟨v, w⟩",
                "Cor 7.3 isometry",
                format!("{label}: z{i}, z{j}"),
                &mukai_pairing(&images[i], &images[j])?,
                &mukai_pairing(v, w)?,
            ));
        }
    }

    for (i, z) in basis.iter().enumerate() {
        let w = transport_central(&kernel, z)?;
        for (j, v) in basis.iter().enumerate() {
            out.push(CheckRecord::equal(
                "Φ_*(z·v) = w(z)·Φ_* v",
                "Thm 8 Morita",
                format!("{label}: z{i} acting on z{j}, w = {}", format_vector(w.coords())),
                &t.pushforward(&z.mul(v)?)?,
                &w.mul(&images[j])?,
            ));
        }
    }

    for (s, image) in simples.iter().zip(t.images()) {
        out.push(CheckRecord::equal(
            "Φ_* ch(S) = ch(Φ S)",
            "Thm 7.1 ch commutes",
            format!("{label}: simple of dim {}", s.dim()),
            &t.pushforward(&chern(s)?)?,
            &chern(&apply_kernel(&kernel, s)?)?,
        ));
        debug_assert_eq!(image.dim(), n * s.dim());
    }
    Ok(out)
}

/// Hochschild homology dims of A and M_n ⊗ A agree in degrees 0..=maxdeg.
pub fn morita_hh_check(
    a: &Algebra,
    n: usize,
    maxdeg: usize,
    config: &HochschildConfig,
) -> Result<CheckRecord, MukaiError> {
    let mat = matrix_algebra(n).map_err(|e| MukaiError::ShapeMismatch(e.to_string()))?;
    let b = tensor(&mat, a);
    let ha = Hochschild::new(a, true, config.clone()).homology_dims(maxdeg)?;
    let hb = Hochschild::new(&b, true, config.clone()).homology_dims(maxdeg)?;
    let complete = !ha.top_incomplete && !hb.top_incomplete;
    Ok(CheckRecord::new(
        "dim HH_i(A) = dim HH_i(M_n ⊗ A)",
        "Thm 8 Morita",
        format!("{} vs {}, degrees 0..={maxdeg}", a.name(), b.name()),
        format!("{:?}", ha.dims),
        format!("{:?}{}", hb.dims, if complete { "" } else { " (truncated)" }),
        complete && ha.dims == hb.dims,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::report::all_pass;

    #[test]
    fn field_and_z2() {
        for name in ["field", "zn:2"] {
            let f = fixture(name).unwrap();
            let r = morita_isometry_check(&f.algebra, &f.simple_modules(), 2).unwrap();
            assert!(all_pass(&r), "{r:?}");
        }
    }

    #[test]
    fn transport_of_unit_is_unit() {
        let f = fixture("zn:2").unwrap();
        let (b, k) = morita_kernel(&f.algebra, 2).unwrap();
        let one = MukaiClass::new(f.algebra.clone(), f.algebra.unit().clone()).unwrap();
        assert_eq!(transport_central(&k, &one).unwrap().coords(), b.unit().as_slice());
    }

    #[test]
    fn hh_dims_small() {
        let f = fixture("zn:2").unwrap();
        let r = morita_hh_check(&f.algebra, 2, 2, &HochschildConfig::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, "[2, 0, 0]");
    }
}
