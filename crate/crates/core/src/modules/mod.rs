//! Finite-dimensional modules and bimodules ("kernels"), Hom spaces, tensor
//! products over an algebra, convolution and Ext.
//!
//! Kernel convention: a [`Bimodule`] from A to B carries a left B-action and a
//! right A-action, and acts on left A-modules by M ↦ K ⊗_A M. Convolution of
//! K: A → B with L: B → C is L ⊗_B K: A → C.

mod bimodule;
mod ext;
mod hom;
mod kernel;
mod tensor;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{opposite, Algebra};
use crate::hochschild::HochschildError;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalars::CycScalar;

pub use bimodule::Bimodule;
pub use ext::{ext_dims, ext_dims_with};
pub use hom::{hom_space, HomBasis};
pub use kernel::{apply_kernel, convolve, dual_kernel};
pub use tensor::{tensor_over, tensor_quotient, TensorQuotient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("expected {expected} action matrices, found {found}")]
    ActionCount { expected: usize, found: usize },
    #[error("action matrix {index} is {rows}x{cols}, expected {dim}x{dim}")]
    ShapeMismatch { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("the unit does not act as the identity")]
    UnitActsNontrivially,
    #[error("action is not multiplicative at (e{0}, e{1})")]
    NotMultiplicative(usize, usize),
    #[error("left and right actions do not commute")]
    ActionsDoNotCommute,
    #[error("AlgebraMismatch: {0}")]
    AlgebraMismatch(String),
    #[error("MiddleNotSemisimple: underived tensor over {0} would not compute the derived convolution")]
    MiddleNotSemisimple(String),
    #[error("MissingSerreData: {0} has no symmetric Frobenius data")]
    MissingSerreData(String),
    #[error("operator does not descend to the tensor quotient")]
    DescentFails,
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

/// A left module over an algebra: one matrix per basis element.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<SparseMatrix>,
}

impl ModuleRep {
    /// Builds and validates a module from the action of every basis element.
    pub fn new(algebra: Arc<Algebra>, action: Vec<SparseMatrix>) -> Result<Self, ModuleError> {
        let m = Self::from_parts(algebra, action)?;
        m.validate()?;
        Ok(m)
    }

    /// Shape checks only.
    pub fn from_parts(algebra: Arc<Algebra>, action: Vec<SparseMatrix>) -> Result<Self, ModuleError> {
        if action.len() != algebra.dim() {
            return Err(ModuleError::ActionCount { expected: algebra.dim(), found: action.len() });
        }
        let dim = action.first().map_or(0, SparseMatrix::rows);
        for (index, a) in action.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(ModuleError::ShapeMismatch { index, rows: a.rows(), cols: a.cols(), dim });
            }
        }
        Ok(ModuleRep { algebra, dim, action })
    }

    /// Unit acts as the identity and ρ(e_i)ρ(e_j) = Σ c_ij^k ρ(e_k).
    pub fn validate(&self) -> Result<(), ModuleError> {
        if self.act(self.algebra.unit()) != SparseMatrix::identity(self.dim) {
            return Err(ModuleError::UnitActsNontrivially);
        }
        let d = self.algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].matmul(&self.action[j]);
                if lhs != self.act_sparse(self.algebra.product(i, j)) {
                    return Err(ModuleError::NotMultiplicative(i, j));
                }
            }
        }
        Ok(())
    }

    /// A with left multiplication.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.left_mult_matrix(&algebra.basis_element(i))).collect();
        ModuleRep { dim: algebra.dim(), algebra, action }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let action = vec![SparseMatrix::zeros(0, 0); algebra.dim()];
        ModuleRep { algebra, dim: 0, action }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &SparseMatrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.action
    }

    /// ρ(x) for a dense element x.
    pub fn act(&self, x: &[CycScalar]) -> SparseMatrix {
        let sparse: SparseVec =
            x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        self.act_sparse(&sparse)
    }

    pub fn act_sparse(&self, x: &[(usize, CycScalar)]) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim, self.dim);
        for (i, c) in x {
            out = out.axpy(c, &self.action[*i]);
        }
        out
    }

    /// Images of the algebra's generators; enough to test A-linearity.
    pub fn generator_actions(&self) -> Vec<SparseMatrix> {
        self.algebra.generators().iter().map(|g| self.act_sparse(g)).collect()
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep, ModuleError> {
        same_algebra(&self.algebra, &other.algebra)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(ModuleRep { algebra: self.algebra.clone(), dim: self.dim + other.dim, action })
    }

    /// M^{⊕k}.
    pub fn power(&self, k: usize) -> ModuleRep {
        let mut out = ModuleRep::zero(self.algebra.clone());
        for _ in 0..k {
            out = out.direct_sum(self).expect("same algebra");
        }
        out
    }

    /// The linear dual M* = Hom(M, K), a left module over A^op via ρ(a)^T.
    pub fn dual(&self) -> ModuleRep {
        let action = self.action.iter().map(SparseMatrix::transpose).collect();
        ModuleRep { algebra: Arc::new(opposite(&self.algebra)), dim: self.dim, action }
    }

    /// Whether `t` (dim × dim) commutes with the action.
    pub fn is_endomorphism(&self, t: &SparseMatrix) -> bool {
        t.rows() == self.dim
            && t.cols() == self.dim
            && self.generator_actions().iter().all(|g| g.matmul(t) == t.matmul(g))
    }

    /// Transports the module along an isomorphism of algebras with identical structure constants.
    pub fn rebase(&self, algebra: Arc<Algebra>) -> Result<ModuleRep, ModuleError> {
        same_algebra(&self.algebra, &algebra)?;
        Ok(ModuleRep { algebra, dim: self.dim, action: self.action.clone() })
    }
}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> Result<(), ModuleError> {
    if a.same_structure(b) {
        Ok(())
    } else {
        Err(ModuleError::AlgebraMismatch(format!("{} vs {}", a.name(), b.name())))
    }
}
