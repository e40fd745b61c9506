//! Traces, Chern characters, the Mukai pairing on HH₀ = Z(A) and
//! pushforwards along kernels, with verifiers for the identities relating them.
//!
//! Tr on End(M) is the matrix trace; Tr on bimodule endomorphisms of A is the
//! regular trace. Only symmetric algebras are supported, so the Serre twist τ
//! is the identity.

mod chern;
mod morita;
mod random;
mod traces;
mod transfer;
mod verify;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, Element};
use crate::hochschild::HochschildError;
use crate::modules::ModuleError;
use crate::scalars::{format_vector, CycScalar};

pub use chern::{
    chern, chern_additivity_check, hochschild_trace, iota_solve, mukai_pairing, pairing_report, tau, todd,
    todd_hrr_check, PairingReport,
};
pub use morita::{morita_hh_check, morita_isometry_check, morita_kernel, transport_central};
pub use random::{random_central, random_endomorphism, random_matrix, random_sum_of};
pub use traces::{
    generalized_trace, serre_trace, split_triple, trace_triangle_check, trace_triangle_defect, SplitShape,
};
pub use transfer::{adjoint_transfer, pushforward, Transfer};
pub use verify::{adjointness_check, cardy_check, chern_commutes_check, functoriality_check, hrr_check};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MukaiError {
    #[error("map is not an intertwiner")]
    NotIntertwiner,
    #[error("algebra `{0}` carries no symmetric Frobenius data")]
    MissingSerreData(String),
    #[error("algebra `{0}` is not semisimple")]
    NotSemisimple(String),
    #[error("pairing on the center of `{0}` is singular")]
    SingularGram(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("element is not central")]
    NotCentral,
    #[error("pushforward routes disagree: route A {route_a}, route B {route_b}")]
    RoutesDisagree { route_a: String, route_b: String },
    #[error("augmentation module must be 1-dimensional, found dimension {0}")]
    AugmentationNot1Dim(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("endomorphism does not preserve the subobject")]
    NotSplit,
    #[error("no central element of the target matches the right action")]
    NoTransport,
    #[error("Chern characters of the supplied simples of `{0}` do not span the center")]
    SimplesDoNotSpan(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

/// An element of HH₀(A) = Z(A).
#[derive(Clone, Debug)]
pub struct MukaiClass {
    algebra: Arc<Algebra>,
    coords: Element,
}

impl PartialEq for MukaiClass {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_structure(&other.algebra) && self.coords == other.coords
    }
}

impl std::fmt::Display for MukaiClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_vector(&self.coords))
    }
}

pub(crate) fn require_serre(a: &Algebra) -> Result<(), MukaiError> {
    match a.serre() {
        Some(s) if s.nakayama_identity => Ok(()),
        _ => Err(MukaiError::MissingSerreData(a.name().to_string())),
    }
}

pub(crate) fn require_semisimple(a: &Algebra) -> Result<(), MukaiError> {
    require_serre(a)?;
    if a.is_semisimple() {
        Ok(())
    } else {
        Err(MukaiError::NotSemisimple(a.name().to_string()))
    }
}

fn same(a: &Algebra, b: &Algebra) -> Result<(), MukaiError> {
    if a.same_structure(b) {
        Ok(())
    } else {
        Err(MukaiError::AlgebraMismatch(format!("`{}` vs `{}`", a.name(), b.name())))
    }
}

impl MukaiClass {
    pub fn new(algebra: Arc<Algebra>, coords: Element) -> Result<Self, MukaiError> {
        require_serre(&algebra)?;
        if coords.len() != algebra.dim() {
            return Err(MukaiError::ShapeMismatch(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        if !algebra.is_central(&coords) {
            return Err(MukaiError::NotCentral);
        }
        Ok(MukaiClass { algebra, coords })
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra>, coords: Element) -> Self {
        MukaiClass { algebra, coords }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let coords = algebra.zero_element();
        MukaiClass { algebra, coords }
    }

    /// The center basis of `algebra`, as classes.
    pub fn basis(algebra: &Arc<Algebra>) -> Vec<MukaiClass> {
        algebra.center_basis().into_iter().map(|c| MukaiClass::from_parts(algebra.clone(), c)).collect()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[CycScalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycScalar::is_zero)
    }

    pub fn add(&self, other: &MukaiClass) -> Result<MukaiClass, MukaiError> {
        same(&self.algebra, &other.algebra)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(MukaiClass { algebra: self.algebra.clone(), coords })
    }

    pub fn scale(&self, c: &CycScalar) -> MukaiClass {
        MukaiClass { algebra: self.algebra.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Product in Z(A).
    pub fn mul(&self, other: &MukaiClass) -> Result<MukaiClass, MukaiError> {
        same(&self.algebra, &other.algebra)?;
        Ok(MukaiClass { algebra: self.algebra.clone(), coords: self.algebra.mul(&self.coords, &other.coords) })
    }

    /// Coordinates in [`MukaiClass::basis`].
    pub fn center_coordinates(&self) -> Vec<CycScalar> {
        let v = crate::linalg::sparse_from_dense(&self.coords);
        self.algebra.center().coordinates(&v).expect("classes are central")
    }

    fn linear_combination(algebra: &Arc<Algebra>, classes: &[MukaiClass], coeffs: &[CycScalar]) -> MukaiClass {
        let mut coords = algebra.zero_element();
        for (c, k) in classes.iter().zip(coeffs) {
            if k.is_zero() {
                continue;
            }
            for (x, y) in coords.iter_mut().zip(&c.coords) {
                *x = &*x + &(y * k);
            }
        }
        MukaiClass { algebra: algebra.clone(), coords }
    }
}
