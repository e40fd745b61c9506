use super::{same_algebra, ModuleError, ModuleRep};
use crate::linalg::{nullspace, SparseMatrix, SparseVec, Subspace};
use crate::scalars::CycScalar;

/// A basis of Hom_A(M, N). Maps are (dim N × dim M) matrices, vectorized
/// row-major as T[r][c] ↦ r · dim M + c.
#[derive(Clone, Debug)]
pub struct HomBasis {
    source_dim: usize,
    target_dim: usize,
    space: Subspace,
    basis: Vec<SparseMatrix>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseMatrix] {
        &self.basis
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    fn vectorize(&self, t: &SparseMatrix) -> SparseVec {
        t.triplets().map(|(r, c, v)| (r * self.source_dim + c, v.clone())).collect()
    }

    pub fn contains(&self, t: &SparseMatrix) -> bool {
        t.rows() == self.target_dim && t.cols() == self.source_dim && self.space.contains(&self.vectorize(t))
    }

    /// Coordinates of an intertwiner in [`HomBasis::basis`], or `None` if `t` is not one.
    pub fn coordinates(&self, t: &SparseMatrix) -> Option<Vec<CycScalar>> {
        if t.rows() != self.target_dim || t.cols() != self.source_dim {
            return None;
        }
        self.space.coordinates(&self.vectorize(t))
    }

    /// Σ c_k T_k.
    pub fn combine(&self, coords: &[CycScalar]) -> SparseMatrix {
        let v = self.space.combine(coords);
        let m = self.source_dim;
        SparseMatrix::from_triplets(self.target_dim, m, v.into_iter().map(|(i, c)| (i / m, i % m, c)))
    }
}

/// Hom_A(M, N) as the nullspace of T ↦ T ρ_M(g) − ρ_N(g) T over generators g.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<HomBasis, ModuleError> {
    same_algebra(m.algebra(), n.algebra())?;
    let (dm, dn) = (m.dim(), n.dim());
    let mut blocks: Vec<SparseMatrix> = Vec::new();
    let im = SparseMatrix::identity(dm);
    let inn = SparseMatrix::identity(dn);
    for (gm, gn) in m.generator_actions().iter().zip(n.generator_actions()) {
        // vec(T ρ) = (I ⊗ ρᵀ) vec T and vec(ρ' T) = (ρ' ⊗ I) vec T, row-major
        blocks.push(inn.kron(&gm.transpose()).sub(&gn.kron(&im)));
    }
    let mut rows = Vec::new();
    for b in blocks {
        rows.extend(b.into_rows());
    }
    let system = SparseMatrix::from_sparse_rows(dm * dn, rows);
    let space = nullspace(&system);
    let basis = space
        .basis()
        .iter()
        .map(|v| SparseMatrix::from_triplets(dn, dm, v.iter().map(|(i, c)| (i / dm, i % dm, c.clone()))))
        .collect();
    Ok(HomBasis { source_dim: dm, target_dim: dn, space, basis })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::group_algebra;

    #[test]
    fn regular_module_endomorphisms() {
        let a = Arc::new(group_algebra(vec![vec![0, 1], vec![1, 0]]).unwrap());
        let m = ModuleRep::regular(a.clone());
        let h = hom_space(&m, &m).unwrap();
        assert_eq!(h.dim(), 2);
        for t in h.basis() {
            assert!(m.is_endomorphism(t));
        }
        let triv = ModuleRep::new(a.clone(), vec![SparseMatrix::identity(1); 2]).unwrap();
        let sign = ModuleRep::new(a, vec![SparseMatrix::identity(1), SparseMatrix::from_ints(&[&[-1]])]).unwrap();
        assert_eq!(hom_space(&triv, &sign).unwrap().dim(), 0);
        assert_eq!(hom_space(&triv, &m).unwrap().dim(), 1);
        let h = hom_space(&m, &triv).unwrap();
        let t = h.basis()[0].scale(&CycScalar::from_int(3));
        assert_eq!(h.combine(&h.coordinates(&t).unwrap()), t);
    }
}
