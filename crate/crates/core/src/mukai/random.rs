use std::sync::Arc;

use rand::Rng;

use super::MukaiClass;
use crate::algebra::Algebra;
use crate::linalg::SparseMatrix;
use crate::modules::{hom_space, ModuleError, ModuleRep};
use crate::scalars::CycScalar;

fn small<R: Rng>(rng: &mut R) -> CycScalar {
    CycScalar::from_int(rng.gen_range(-3..=3))
}

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> SparseMatrix {
    let dense: Vec<Vec<CycScalar>> = (0..rows).map(|_| (0..cols).map(|_| small(rng)).collect()).collect();
    if rows == 0 {
        return SparseMatrix::zeros(0, cols);
    }
    SparseMatrix::from_dense(&dense)
}

/// A random small-integer combination of the center basis.
pub fn random_central<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> MukaiClass {
    let basis = MukaiClass::basis(a);
    let coeffs: Vec<CycScalar> = basis.iter().map(|_| small(rng)).collect();
    MukaiClass::linear_combination(a, &basis, &coeffs)
}

/// A random small-integer combination of a basis of End_A(M).
pub fn random_endomorphism<R: Rng>(m: &ModuleRep, rng: &mut R) -> Result<SparseMatrix, ModuleError> {
    let h = hom_space(m, m)?;
    let coeffs: Vec<CycScalar> = (0..h.dim()).map(|_| small(rng)).collect();
    Ok(h.combine(&coeffs))
}

/// A direct sum of 1 to `max_terms` modules drawn from `pool`.
pub fn random_sum_of<R: Rng>(pool: &[ModuleRep], max_terms: usize, rng: &mut R) -> Result<ModuleRep, ModuleError> {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut out = pool[rng.gen_range(0..pool.len())].clone();
    for _ in 1..terms {
        out = out.direct_sum(&pool[rng.gen_range(0..pool.len())])?;
    }
    Ok(out)
}
