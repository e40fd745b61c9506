use rayon::prelude::*;

use super::{same_algebra, ModuleError, ModuleRep};
use crate::algebra::{opposite, Algebra};
use crate::linalg::{cokernel_projector, Cokernel, SparseMatrix, SparseVec};

/// M ⊗_A N realized as a complement of the relation space
/// span{ m·a ⊗ n − m ⊗ a·n } inside M ⊗ N (coordinates m · dim N + n).
#[derive(Clone, Debug)]
pub struct TensorQuotient {
    m_dim: usize,
    n_dim: usize,
    relations: SparseMatrix,
    cokernel: Cokernel,
    section: SparseMatrix,
}

/// `right_on_m[i]` is m ↦ m·e_i, `left_on_n[i]` is n ↦ e_i·n.
/// Relations are only imposed for the algebra generators, which suffices.
pub fn tensor_quotient(middle: &Algebra, right_on_m: &[SparseMatrix], left_on_n: &[SparseMatrix]) -> TensorQuotient {
    let m_dim = right_on_m.first().map_or(0, SparseMatrix::rows);
    let n_dim = left_on_n.first().map_or(0, SparseMatrix::rows);
    let im = SparseMatrix::identity(m_dim);
    let inn = SparseMatrix::identity(n_dim);
    let combine = |mats: &[SparseMatrix], dim: usize, g: &[(usize, crate::scalars::CycScalar)]| {
        let mut out = SparseMatrix::zeros(dim, dim);
        for (i, c) in g {
            out = out.axpy(c, &mats[*i]);
        }
        out
    };
    // rows of Relᵀ, one block per generator
    let mut rows = Vec::new();
    for g in middle.generators() {
        let r = combine(right_on_m, m_dim, g);
        let l = combine(left_on_n, n_dim, g);
        let block = r.kron(&inn).sub(&im.kron(&l));
        rows.extend(block.transpose().into_rows());
    }
    let relations = SparseMatrix::from_sparse_rows(m_dim * n_dim, rows).transpose();
    let cokernel = cokernel_projector(&relations);
    let section = cokernel.section();
    TensorQuotient { m_dim, n_dim, relations, cokernel, section }
}

impl TensorQuotient {
    pub fn dim(&self) -> usize {
        self.cokernel.dim()
    }

    pub fn factor_dims(&self) -> (usize, usize) {
        (self.m_dim, self.n_dim)
    }

    /// M ⊗ N → M ⊗_A N.
    pub fn projection(&self) -> &SparseMatrix {
        &self.cokernel.projection
    }

    /// A linear section M ⊗_A N → M ⊗ N of the projection.
    pub fn section(&self) -> &SparseMatrix {
        &self.section
    }

    /// Induced operator π X s, after checking that X preserves the relations.
    pub fn descend(&self, op: &SparseMatrix) -> Result<SparseMatrix, ModuleError> {
        if !self.cokernel.projection.matmul(&op.matmul(&self.relations)).is_zero() {
            return Err(ModuleError::DescentFails);
        }
        Ok(self.descend_unchecked(op))
    }

    fn descend_unchecked(&self, op: &SparseMatrix) -> SparseMatrix {
        self.cokernel.projection.matmul(&op.matmul(&self.section))
    }

    /// X ⊗ I on the quotient.
    pub fn descend_left(&self, x: &SparseMatrix) -> Result<SparseMatrix, ModuleError> {
        self.descend(&x.kron(&SparseMatrix::identity(self.n_dim)))
    }

    /// I ⊗ Y on the quotient.
    pub fn descend_right(&self, y: &SparseMatrix) -> Result<SparseMatrix, ModuleError> {
        self.descend(&SparseMatrix::identity(self.m_dim).kron(y))
    }

    /// `descend_left` for an algebra action on M given on every basis element.
    /// Only the combinations named by `generators` are checked against the relations.
    pub fn descend_left_action(
        &self,
        generators: &[SparseVec],
        action: &[SparseMatrix],
    ) -> Result<Vec<SparseMatrix>, ModuleError> {
        let id = SparseMatrix::identity(self.n_dim);
        self.descend_action(generators, action, |x| x.kron(&id))
    }

    /// `descend_right` for an action on N, as in [`TensorQuotient::descend_left_action`].
    pub fn descend_right_action(
        &self,
        generators: &[SparseVec],
        action: &[SparseMatrix],
    ) -> Result<Vec<SparseMatrix>, ModuleError> {
        let id = SparseMatrix::identity(self.m_dim);
        self.descend_action(generators, action, |y| id.kron(y))
    }

    fn descend_action(
        &self,
        generators: &[SparseVec],
        action: &[SparseMatrix],
        lift: impl Fn(&SparseMatrix) -> SparseMatrix + Sync,
    ) -> Result<Vec<SparseMatrix>, ModuleError> {
        let dim = action.first().map_or(0, SparseMatrix::rows);
        for g in generators {
            let mut x = SparseMatrix::zeros(dim, dim);
            for (i, c) in g {
                x = x.axpy(c, &action[*i]);
            }
            self.descend(&lift(&x))?;
        }
        Ok(action.par_iter().map(|x| self.descend_unchecked(&lift(x))).collect())
    }
}

/// M ⊗_A N for M a right A-module (a left module over A^op) and N a left A-module.
pub fn tensor_over(m: &ModuleRep, n: &ModuleRep) -> Result<TensorQuotient, ModuleError> {
    same_algebra(m.algebra(), &opposite(n.algebra()))?;
    Ok(tensor_quotient(n.algebra(), m.actions(), n.actions()))
}
