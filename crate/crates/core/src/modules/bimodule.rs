use std::sync::Arc;

use super::{same_algebra, ModuleError, ModuleRep};
use crate::algebra::{opposite, tensor, Algebra};
use crate::linalg::SparseMatrix;
use crate::scalars::CycScalar;

/// A kernel from `source` to `target`: a vector space with a left
/// target-action and a commuting right source-action.
#[derive(Clone, Debug)]
pub struct Bimodule {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    dim: usize,
    /// One matrix per target basis element.
    left: Vec<SparseMatrix>,
    /// One matrix per source basis element, for m ↦ m·a.
    right: Vec<SparseMatrix>,
}

fn act(mats: &[SparseMatrix], dim: usize, x: &[(usize, CycScalar)]) -> SparseMatrix {
    let mut out = SparseMatrix::zeros(dim, dim);
    for (i, c) in x {
        out = out.axpy(c, &mats[*i]);
    }
    out
}

impl Bimodule {
    pub fn new(
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        left: Vec<SparseMatrix>,
        right: Vec<SparseMatrix>,
    ) -> Result<Self, ModuleError> {
        let b = Self::from_parts(source, target, left, right)?;
        b.validate()?;
        Ok(b)
    }

    /// Shape checks only.
    pub fn from_parts(
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        left: Vec<SparseMatrix>,
        right: Vec<SparseMatrix>,
    ) -> Result<Self, ModuleError> {
        if left.len() != target.dim() {
            return Err(ModuleError::ActionCount { expected: target.dim(), found: left.len() });
        }
        if right.len() != source.dim() {
            return Err(ModuleError::ActionCount { expected: source.dim(), found: right.len() });
        }
        let dim = left.first().map_or(0, SparseMatrix::rows);
        for (index, a) in left.iter().chain(&right).enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(ModuleError::ShapeMismatch { index, rows: a.rows(), cols: a.cols(), dim });
            }
        }
        Ok(Bimodule { source, target, dim, left, right })
    }

    pub fn validate(&self) -> Result<(), ModuleError> {
        self.target_module().validate()?;
        self.source_dual_module().validate()?;
        let lg: Vec<SparseMatrix> = self.target.generators().iter().map(|g| self.act_left(g)).collect();
        let rg: Vec<SparseMatrix> = self.source.generators().iter().map(|g| self.act_right(g)).collect();
        for l in &lg {
            for r in &rg {
                if l.matmul(r) != r.matmul(l) {
                    return Err(ModuleError::ActionsDoNotCommute);
                }
            }
        }
        Ok(())
    }

    /// A as a kernel from A to A: the identity functor.
    pub fn regular(a: Arc<Algebra>) -> Self {
        let left = (0..a.dim()).map(|i| a.left_mult_matrix(&a.basis_element(i))).collect();
        let right = (0..a.dim()).map(|i| a.right_mult_matrix(&a.basis_element(i))).collect();
        Bimodule { dim: a.dim(), source: a.clone(), target: a, left, right }
    }

    /// W ⊗ V* for V over the source and W over the target; sends M to
    /// W ⊗ Hom_A(V, M) when the source is semisimple.
    /// Coordinates are indexed w · dim V + v.
    pub fn outer(v: &ModuleRep, w: &ModuleRep) -> Self {
        let iv = SparseMatrix::identity(v.dim());
        let iw = SparseMatrix::identity(w.dim());
        let left = w.actions().iter().map(|b| b.kron(&iv)).collect();
        let right = v.actions().iter().map(|a| iw.kron(&a.transpose())).collect();
        Bimodule {
            source: v.algebra().clone(),
            target: w.algebra().clone(),
            dim: v.dim() * w.dim(),
            left,
            right,
        }
    }

    /// K1 ⊠ K2 from tensor(A1, A2) to tensor(B1, B2), coordinates k1 · dim K2 + k2.
    pub fn boxtimes(k1: &Bimodule, k2: &Bimodule) -> Self {
        let source = Arc::new(tensor(&k1.source, &k2.source));
        let target = Arc::new(tensor(&k1.target, &k2.target));
        Self::boxtimes_over(k1, k2, source, target).expect("tensor algebras match by construction")
    }

    /// As [`Bimodule::boxtimes`] but over supplied algebras with the tensor structure.
    pub fn boxtimes_over(
        k1: &Bimodule,
        k2: &Bimodule,
        source: Arc<Algebra>,
        target: Arc<Algebra>,
    ) -> Result<Self, ModuleError> {
        if source.dim() != k1.source.dim() * k2.source.dim() || target.dim() != k1.target.dim() * k2.target.dim() {
            return Err(ModuleError::AlgebraMismatch("boxtimes over algebras of the wrong size".into()));
        }
        let left = k1.left.iter().flat_map(|x| k2.left.iter().map(move |y| x.kron(y))).collect();
        let right = k1.right.iter().flat_map(|x| k2.right.iter().map(move |y| x.kron(y))).collect();
        Ok(Bimodule { source, target, dim: k1.dim * k2.dim, left, right })
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule, ModuleError> {
        same_algebra(&self.source, &other.source)?;
        same_algebra(&self.target, &other.target)?;
        Ok(Bimodule {
            source: self.source.clone(),
            target: self.target.clone(),
            dim: self.dim + other.dim,
            left: self.left.iter().zip(&other.left).map(|(a, b)| a.direct_sum(b)).collect(),
            right: self.right.iter().zip(&other.right).map(|(a, b)| a.direct_sum(b)).collect(),
        })
    }

    /// Swaps in algebras with the same structure constants.
    pub fn rebase(&self, source: Arc<Algebra>, target: Arc<Algebra>) -> Result<Bimodule, ModuleError> {
        same_algebra(&self.source, &source)?;
        same_algebra(&self.target, &target)?;
        Ok(Bimodule { source, target, ..self.clone() })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_actions(&self) -> &[SparseMatrix] {
        &self.left
    }

    pub fn right_actions(&self) -> &[SparseMatrix] {
        &self.right
    }

    pub fn act_left(&self, x: &[(usize, CycScalar)]) -> SparseMatrix {
        act(&self.left, self.dim, x)
    }

    pub fn act_right(&self, x: &[(usize, CycScalar)]) -> SparseMatrix {
        act(&self.right, self.dim, x)
    }

    /// The underlying left module over the target.
    pub fn target_module(&self) -> ModuleRep {
        ModuleRep::from_parts(self.target.clone(), self.left.clone()).expect("shapes checked")
    }

    /// The right source-action as a left module over the opposite algebra.
    pub fn source_dual_module(&self) -> ModuleRep {
        ModuleRep::from_parts(Arc::new(opposite(&self.source)), self.right.clone()).expect("shapes checked")
    }

    /// The same data as a left module over tensor(target, op(source)):
    /// e_b ⊗ e_a acts by L_b R_a.
    pub fn to_module(&self) -> ModuleRep {
        let algebra = Arc::new(tensor(&self.target, &opposite(&self.source)));
        let action = self.left.iter().flat_map(|l| self.right.iter().map(move |r| l.matmul(r))).collect();
        ModuleRep::from_parts(algebra, action).expect("shapes checked")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group_algebra;

    fn cyclic(n: usize) -> Arc<Algebra> {
        Arc::new(group_algebra((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).unwrap())
    }

    #[test]
    fn regular_and_outer_validate() {
        let a = cyclic(2);
        let b = cyclic(3);
        Bimodule::regular(a.clone()).validate().unwrap();
        let v = ModuleRep::regular(a);
        let w = ModuleRep::regular(b);
        let k = Bimodule::outer(&v, &w);
        k.validate().unwrap();
        assert_eq!(k.dim(), 6);
        k.to_module().validate().unwrap();
    }

    #[test]
    fn boxtimes_dims() {
        let a = cyclic(2);
        let k = Bimodule::boxtimes(&Bimodule::regular(a.clone()), &Bimodule::regular(a));
        k.validate().unwrap();
        assert_eq!(k.dim(), 4);
        assert_eq!(k.source().dim(), 4);
    }

    #[test]
    fn noncommuting_actions_rejected() {
        let a = cyclic(2);
        // left and right both the swap, but right twisted by a non-commuting change of basis
        let swap = SparseMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let flip = SparseMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        let id = SparseMatrix::identity(2);
        let k = Bimodule::new(a.clone(), a, vec![id.clone(), swap], vec![id, flip]);
        assert_eq!(k.unwrap_err(), ModuleError::ActionsDoNotCommute);
    }
}
