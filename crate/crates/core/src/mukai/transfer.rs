use std::sync::Arc;

use super::chern::{center_solve, chern};
use super::{require_semisimple, same, MukaiClass, MukaiError};
use crate::algebra::Algebra;
use crate::linalg::{rank, solve, SparseMatrix};
use crate::modules::{hom_space, tensor_quotient, Bimodule, ModuleRep};
use crate::scalars::{format_vector, CycScalar};

/// Precomputed data for pushing HH₀ classes along a kernel K: A → B.
///
/// `simples` must be simple A-modules whose Chern characters span Z(A).
#[derive(Clone, Debug)]
pub struct Transfer {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    /// Columns: center coordinates of ch(S).
    expansion: SparseMatrix,
    image_ch: Vec<MukaiClass>,
    /// Per (S, μ ∈ End(S)): image module index and Φ(μ) = I ⊗ μ on K ⊗_A S.
    pushed: Vec<(usize, SparseMatrix)>,
    images: Vec<ModuleRep>,
    /// Rows indexed like `pushed`: tr(ρ_S(z_i) μ) over the center basis z_i of A.
    adjoint_system: SparseMatrix,
    /// Φ†ν_j for the center basis ν_j of B.
    adjoint_basis: Vec<MukaiClass>,
}

impl Transfer {
    pub fn new(kernel: &Bimodule, simples: &[ModuleRep]) -> Result<Self, MukaiError> {
        let source = kernel.source().clone();
        let target = kernel.target().clone();
        require_semisimple(&source)?;
        require_semisimple(&target)?;
        let center = source.center_basis();
        let mut expansion_cols = Vec::new();
        let mut image_ch = Vec::new();
        let mut pushed = Vec::new();
        let mut images = Vec::new();
        let mut rows = Vec::new();
        for s in simples {
            same(s.algebra(), &source)?;
            expansion_cols.push(crate::linalg::sparse_from_dense(&chern(s)?.center_coordinates()));
            let q = tensor_quotient(&source, kernel.right_actions(), s.actions());
            let left = q.descend_left_action(target.generators(), kernel.left_actions())?;
            let image = ModuleRep::from_parts(target.clone(), left)?;
            image_ch.push(chern(&image)?);
            let ends = hom_space(s, s)?;
            for mu in ends.basis() {
                rows.push(center.iter().map(|z| s.act(z).matmul(mu).trace()).collect::<Vec<_>>());
                pushed.push((images.len(), q.descend_right(mu)?));
            }
            images.push(image);
        }
        let expansion = SparseMatrix::from_sparse_columns(center.len(), &expansion_cols);
        if rank(&expansion) != center.len() {
            return Err(MukaiError::SimplesDoNotSpan(source.name().to_string()));
        }
        let adjoint_system = if rows.is_empty() {
            SparseMatrix::zeros(0, center.len())
        } else {
            SparseMatrix::from_dense(&rows)
        };
        if rank(&adjoint_system) != center.len() {
            return Err(MukaiError::SingularGram(source.name().to_string()));
        }
        let mut t = Transfer {
            source,
            target: target.clone(),
            expansion,
            image_ch,
            pushed,
            images,
            adjoint_system,
            adjoint_basis: Vec::new(),
        };
        t.adjoint_basis =
            MukaiClass::basis(&target).iter().map(|nu| t.adjoint_transfer(nu)).collect::<Result<_, _>>()?;
        Ok(t)
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    /// K ⊗_A S for each supplied simple S.
    pub fn images(&self) -> &[ModuleRep] {
        &self.images
    }

    /// Expand v in {ch S}, then send ch S ↦ ch(K ⊗_A S).
    pub fn route_a(&self, v: &MukaiClass) -> Result<MukaiClass, MukaiError> {
        same(v.algebra(), &self.source)?;
        let a = solve(&self.expansion, &v.center_coordinates())
            .map_err(|_| MukaiError::SimplesDoNotSpan(self.source.name().to_string()))?;
        Ok(MukaiClass::linear_combination(&self.target, &self.image_ch, &a))
    }

    /// Φ†ν ∈ Z(A): tr(ρ_S(Φ†ν) μ) = tr(ρ_{ΦS}(ν) Φ(μ)) for every S and μ ∈ End(S).
    pub fn adjoint_transfer(&self, nu: &MukaiClass) -> Result<MukaiClass, MukaiError> {
        same(nu.algebra(), &self.target)?;
        let rhs: Vec<CycScalar> = self
            .pushed
            .iter()
            .map(|(i, phi_mu)| self.images[*i].act(nu.coords()).matmul(phi_mu).trace())
            .collect();
        let c = solve(&self.adjoint_system, &rhs)
            .map_err(|_| MukaiError::SingularGram(self.source.name().to_string()))?;
        Ok(MukaiClass::linear_combination(&self.source, &MukaiClass::basis(&self.source), &c))
    }

    /// The unique w ∈ Z(B) with χ_B(ν·w) = χ_A(Φ†ν · v) for all central ν.
    pub fn route_b(&self, v: &MukaiClass) -> Result<MukaiClass, MukaiError> {
        same(v.algebra(), &self.source)?;
        center_solve(&self.target, |j, _| Ok(self.source.regular_trace(self.adjoint_basis[j].mul(v)?.coords())))
    }

    /// Φ_* v by both routes; they must agree.
    pub fn pushforward(&self, v: &MukaiClass) -> Result<MukaiClass, MukaiError> {
        let a = self.route_a(v)?;
        let b = self.route_b(v)?;
        if a != b {
            return Err(MukaiError::RoutesDisagree {
                route_a: format_vector(a.coords()),
                route_b: format_vector(b.coords()),
            });
        }
        Ok(a)
    }
}

pub fn pushforward(kernel: &Bimodule, v: &MukaiClass, simples: &[ModuleRep]) -> Result<MukaiClass, MukaiError> {
    Transfer::new(kernel, simples)?.pushforward(v)
}

pub fn adjoint_transfer(
    kernel: &Bimodule,
    nu: &MukaiClass,
    simples: &[ModuleRep],
) -> Result<MukaiClass, MukaiError> {
    Transfer::new(kernel, simples)?.adjoint_transfer(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn regular_kernel_is_identity() {
        let f = fixture("s3").unwrap();
        let t = Transfer::new(&Bimodule::regular(f.algebra.clone()), &f.simple_modules()).unwrap();
        for v in MukaiClass::basis(&f.algebra) {
            assert_eq!(t.pushforward(&v).unwrap(), v);
            assert_eq!(t.adjoint_transfer(&v).unwrap(), v);
        }
        assert!(t.adjoint_transfer(&MukaiClass::zero(f.algebra.clone())).unwrap().is_zero());
    }

    #[test]
    fn collapse_to_field() {
        // K = k ⊗ V* sends M to Hom(V, M); here V is the trivial module of Z/3
        let f = fixture("zn:3").unwrap();
        let k = fixture("field").unwrap();
        let kernel = Bimodule::outer(f.simple("chi0").unwrap(), &k.simples[0].module);
        let t = Transfer::new(&kernel, &f.simple_modules()).unwrap();
        let reg = chern(&f.regular_module()).unwrap();
        assert_eq!(t.pushforward(&reg).unwrap().coords(), &[CycScalar::one()]);
    }

    #[test]
    fn missing_simples_detected() {
        let f = fixture("zn:2").unwrap();
        let err = Transfer::new(&Bimodule::regular(f.algebra.clone()), &f.simple_modules()[..1]).unwrap_err();
        assert!(matches!(err, MukaiError::SimplesDoNotSpan(_)));
    }
}
