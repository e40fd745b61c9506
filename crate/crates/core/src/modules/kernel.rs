use super::{same_algebra, Bimodule, ModuleError, ModuleRep};
use super::tensor::tensor_quotient;
use crate::algebra::Algebra;

fn require_semisimple(a: &Algebra) -> Result<(), ModuleError> {
    if a.is_semisimple() {
        Ok(())
    } else {
        Err(ModuleError::MiddleNotSemisimple(a.name().to_string()))
    }
}

/// L ∘ K = L ⊗_B K for K: A → B and L: B → C.
pub fn convolve(k: &Bimodule, l: &Bimodule) -> Result<Bimodule, ModuleError> {
    same_algebra(k.target(), l.source())?;
    require_semisimple(k.target())?;
    let q = tensor_quotient(k.target(), l.right_actions(), k.left_actions());
    let left = q.descend_left_action(l.target().generators(), l.left_actions())?;
    let right = q.descend_right_action(k.source().generators(), k.right_actions())?;
    Bimodule::from_parts(k.source().clone(), l.target().clone(), left, right)
}

/// K ⊗_A M for K: A → B, a left B-module.
pub fn apply_kernel(k: &Bimodule, m: &ModuleRep) -> Result<ModuleRep, ModuleError> {
    same_algebra(k.source(), m.algebra())?;
    require_semisimple(k.source())?;
    let q = tensor_quotient(k.source(), k.right_actions(), m.actions());
    let action = q.descend_left_action(k.target().generators(), k.left_actions())?;
    ModuleRep::from_parts(k.target().clone(), action)
}

/// The linear dual of the underlying space of K, as a kernel from B back to A:
/// (a·f·b)(x) = f(b·x·a). With trivial Serre twists this is both adjoint kernels.
pub fn dual_kernel(k: &Bimodule) -> Result<Bimodule, ModuleError> {
    for a in [k.source(), k.target()] {
        match a.serre() {
            Some(s) if s.nakayama_identity => {}
            _ => return Err(ModuleError::MissingSerreData(a.name().to_string())),
        }
    }
    let left = k.right_actions().iter().map(|r| r.transpose()).collect();
    let right = k.left_actions().iter().map(|l| l.transpose()).collect();
    Bimodule::from_parts(k.target().clone(), k.source().clone(), left, right)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{group_algebra, truncated_poly};
    use crate::linalg::SparseMatrix;
    use crate::modules::hom_space;

    fn cyclic(n: usize) -> Arc<Algebra> {
        Arc::new(group_algebra((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).unwrap())
    }

    #[test]
    fn regular_kernel_is_identity() {
        let a = cyclic(3);
        let reg = Bimodule::regular(a.clone());
        let m = ModuleRep::regular(a.clone());
        let out = apply_kernel(&reg, &m).unwrap();
        out.validate().unwrap();
        assert_eq!(out.dim(), 3);
        assert_eq!(hom_space(&out, &m).unwrap().dim(), 3);
        let twice = convolve(&reg, &reg).unwrap();
        twice.validate().unwrap();
        assert_eq!(twice.dim(), 3);
    }

    #[test]
    fn guards() {
        let d = Arc::new(truncated_poly(2).unwrap());
        let reg = Bimodule::regular(d.clone());
        assert!(matches!(convolve(&reg, &reg), Err(ModuleError::MiddleNotSemisimple(_))));
        assert!(matches!(dual_kernel(&reg), Err(ModuleError::MissingSerreData(_))));
        let m = ModuleRep::new(d, vec![SparseMatrix::identity(1), SparseMatrix::zeros(1, 1)]).unwrap();
        assert!(matches!(apply_kernel(&reg, &m), Err(ModuleError::MiddleNotSemisimple(_))));
    }

    #[test]
    fn dual_of_regular() {
        let a = cyclic(2);
        let d = dual_kernel(&Bimodule::regular(a)).unwrap();
        d.validate().unwrap();
        assert_eq!(d.dim(), 2);
    }
}
