use crate::scalars::CycScalar;

use super::echelon::Echelon;
use super::sparse::{axpy, dense_from_sparse, SparseMatrix, SparseVec};

/// A linear subspace of K^n stored by its reduced row echelon basis, which
/// is unique per subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_vectors(ambient_dim, (0..ambient_dim).map(|i| vec![(i, CycScalar::one())]).collect())
    }

    /// Span of arbitrary (possibly dependent) sparse vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<SparseVec>) -> Self {
        let mut ech = Echelon::new(ambient_dim);
        let mut vectors = vectors;
        vectors.sort_by_key(Vec::len);
        for v in vectors {
            if !v.is_empty() {
                ech.insert(v);
            }
        }
        let (basis, pivots) = ech.into_reduced();
        Subspace { ambient_dim, basis, pivots }
    }

    pub fn from_dense_vectors(ambient_dim: usize, vectors: &[Vec<CycScalar>]) -> Self {
        Self::from_vectors(ambient_dim, vectors.iter().map(|v| super::sparse::sparse_from_dense(v)).collect())
    }

    /// Column space of `m`.
    pub fn column_space(m: &SparseMatrix) -> Self {
        Self::from_vectors(m.rows(), m.transpose().into_rows())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn dense_basis(&self) -> Vec<Vec<CycScalar>> {
        self.basis.iter().map(|b| dense_from_sparse(b, self.ambient_dim)).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Removes the component along the basis, leaving zeros at all pivots.
    pub fn reduce(&self, v: &[(usize, CycScalar)]) -> SparseVec {
        let mut v = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if let Ok(idx) = v.binary_search_by_key(&p, |(i, _)| *i) {
                let f = -&v[idx].1;
                v = axpy(&v, &f, b);
            }
        }
        v
    }

    pub fn contains(&self, v: &[(usize, CycScalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` lies outside.
    pub fn coordinates(&self, v: &[(usize, CycScalar)]) -> Option<Vec<CycScalar>> {
        if !self.contains(v) {
            return None;
        }
        let dense = dense_from_sparse(v, self.ambient_dim);
        Some(self.pivots.iter().map(|&p| dense[p].clone()).collect())
    }

    /// Σ c_i b_i.
    pub fn combine(&self, coords: &[CycScalar]) -> SparseVec {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        let mut acc = Vec::new();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = axpy(&acc, c, b);
            }
        }
        acc
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::from_vectors(self.ambient_dim, all)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::from_dense_vectors(
            3,
            &[
                vec![CycScalar::from_int(1), CycScalar::from_int(2), CycScalar::from_int(0)],
                vec![CycScalar::from_int(0), CycScalar::from_int(1), CycScalar::from_int(1)],
            ],
        );
        let b = Subspace::from_dense_vectors(
            3,
            &[
                vec![CycScalar::from_int(1), CycScalar::from_int(3), CycScalar::from_int(1)],
                vec![CycScalar::from_int(2), CycScalar::from_int(4), CycScalar::from_int(0)],
            ],
        );
        assert_eq!(a, b);
        // reducing an echelon basis again is a no-op
        assert_eq!(Subspace::from_vectors(3, a.basis().to_vec()), a);
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::from_dense_vectors(
            3,
            &[vec![CycScalar::from_int(1), CycScalar::from_int(1), CycScalar::from_int(1)]],
        );
        let v = vec![(0, CycScalar::from_int(4)), (1, CycScalar::from_int(4)), (2, CycScalar::from_int(4))];
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coordinates(&[(0, CycScalar::one())]).is_none());
    }
}
