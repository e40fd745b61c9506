use std::sync::Arc;

use super::{require_semisimple, require_serre, same, MukaiClass, MukaiError};
use crate::algebra::{Algebra, Element};
use crate::linalg::{rank, solve, SparseMatrix};
use crate::modules::{hom_space, ModuleRep};
use crate::report::CheckRecord;
use crate::scalars::CycScalar;

/// Tr on bimodule endomorphisms given by central multiplication: χ_reg(z).
pub fn hochschild_trace(a: &Algebra, z: &[CycScalar]) -> Result<CycScalar, MukaiError> {
    require_serre(a)?;
    Ok(a.regular_trace(z))
}

/// The unique z ∈ Z(A) with χ_reg(z·f_j) = rhs(j, f_j) for the center basis f_j.
pub(crate) fn center_solve(
    a: &Arc<Algebra>,
    rhs: impl Fn(usize, &Element) -> Result<CycScalar, MukaiError>,
) -> Result<MukaiClass, MukaiError> {
    require_serre(a)?;
    let basis = a.center_basis();
    let n = basis.len();
    let mut gram = vec![vec![CycScalar::zero(); n]; n];
    for j in 0..n {
        for i in j..n {
            let v = a.regular_trace(&a.mul(&basis[j], &basis[i]));
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    let gram = SparseMatrix::from_dense(&gram);
    if rank(&gram) != n {
        return Err(MukaiError::SingularGram(a.name().to_string()));
    }
    let b = basis.iter().enumerate().map(|(j, f)| rhs(j, f)).collect::<Result<Vec<_>, _>>()?;
    let c = solve(&gram, &b).map_err(|_| MukaiError::SingularGram(a.name().to_string()))?;
    let classes: Vec<MukaiClass> = basis.into_iter().map(|z| MukaiClass::from_parts(a.clone(), z)).collect();
    Ok(MukaiClass::linear_combination(a, &classes, &c))
}

/// ch(M): χ_reg(ch(M)·f) = tr(f|_M) for all central f.
pub fn chern(m: &ModuleRep) -> Result<MukaiClass, MukaiError> {
    require_semisimple(m.algebra())?;
    center_solve(m.algebra(), |_, f| Ok(m.act(f).trace()))
}

/// ι^M(e): χ_reg(ι·f) = tr(f|_M ∘ e) for all central f.
pub fn iota_solve(m: &ModuleRep, e: &SparseMatrix) -> Result<MukaiClass, MukaiError> {
    if !m.is_endomorphism(e) {
        return Err(MukaiError::NotIntertwiner);
    }
    require_semisimple(m.algebra())?;
    center_solve(m.algebra(), |_, f| Ok(m.act(f).matmul(e).trace()))
}

/// The Serre twist acting on HH₀; the identity for symmetric algebras.
pub fn tau(v: &MukaiClass) -> MukaiClass {
    v.clone()
}

/// ⟨v, w⟩ = Tr(τ(v) ∘ w) = χ_reg(τ(v)·w).
pub fn mukai_pairing(v: &MukaiClass, w: &MukaiClass) -> Result<CycScalar, MukaiError> {
    let product = tau(v).mul(w)?;
    hochschild_trace(v.algebra(), product.coords())
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    pub left: MukaiClass,
    pub right: MukaiClass,
    pub value: CycScalar,
    pub method: &'static str,
}

pub fn pairing_report(v: &MukaiClass, w: &MukaiClass) -> Result<PairingReport, MukaiError> {
    Ok(PairingReport {
        left: v.clone(),
        right: w.clone(),
        value: mukai_pairing(v, w)?,
        method: "regular trace of τ(v)·w, τ = id",
    })
}

pub fn chern_additivity_check(m: &ModuleRep, n: &ModuleRep) -> Result<CheckRecord, MukaiError> {
    let sum = m.direct_sum(n)?;
    let lhs = chern(&sum)?;
    let rhs = chern(m)?.add(&chern(n)?)?;
    Ok(CheckRecord::equal(
        "ch(M ⊕ N) = ch M + ch N",
        "Prop 6 ch additivity",
        format!("dims {} + {}", m.dim(), n.dim()),
        &lhs,
        &rhs,
    ))
}

/// Td = τ ch(O) for the designated 1-dimensional augmentation module O.
pub fn todd(augmentation: &ModuleRep) -> Result<MukaiClass, MukaiError> {
    if augmentation.dim() != 1 {
        return Err(MukaiError::AugmentationNot1Dim(augmentation.dim()));
    }
    Ok(tau(&chern(augmentation)?))
}

/// χ_reg(Td·ch M) = dim Hom(O, M).
pub fn todd_hrr_check(augmentation: &ModuleRep, m: &ModuleRep) -> Result<CheckRecord, MukaiError> {
    same(augmentation.algebra(), m.algebra())?;
    let td = todd(augmentation)?;
    let lhs = hochschild_trace(m.algebra(), td.mul(&chern(m)?)?.coords())?;
    let rhs = CycScalar::from_int(hom_space(augmentation, m)?.dim() as i64);
    Ok(CheckRecord::equal(
        "χ(M) = Tr(Td · ch M)",
        "Rem 7 Todd class",
        format!("{} module of dim {}", m.algebra().name(), m.dim()),
        &lhs,
        &rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn z2_closed_forms() {
        let f = fixture("zn:2").unwrap();
        let half = CycScalar::ratio(1, 2);
        let triv = chern(f.simple("chi0").unwrap()).unwrap();
        let sign = chern(f.simple("chi1").unwrap()).unwrap();
        assert_eq!(triv.coords(), &[half.clone(), half.clone()]);
        assert_eq!(sign.coords(), &[half.clone(), -half]);
        assert_eq!(mukai_pairing(&triv, &triv).unwrap(), CycScalar::one());
        assert_eq!(triv.add(&sign).unwrap().coords(), f.algebra.unit().as_slice());
        let reg = chern(&f.regular_module()).unwrap();
        assert_eq!(reg, triv.add(&sign).unwrap());
    }

    #[test]
    fn field_and_todd() {
        let k = fixture("field").unwrap();
        let m = k.simples[0].module.power(3);
        assert_eq!(chern(&m).unwrap().coords(), &[CycScalar::from_int(3)]);
        let f = fixture("zn:2").unwrap();
        let aug = f.augmentation.clone().unwrap();
        let r = todd_hrr_check(&aug, &f.regular_module()).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, "1");
        assert_eq!(todd(&f.regular_module()).unwrap_err(), MukaiError::AugmentationNot1Dim(2));
    }

    #[test]
    fn non_semisimple_rejected() {
        let d = fixture("dual").unwrap();
        assert!(matches!(chern(&d.simples[0].module), Err(MukaiError::MissingSerreData(_))));
    }

    #[test]
    fn iota_of_identity_is_chern() {
        let f = fixture("s3").unwrap();
        let m = f.simple("std").unwrap();
        let id = SparseMatrix::identity(m.dim());
        assert_eq!(iota_solve(m, &id).unwrap(), chern(m).unwrap());
        assert!(iota_solve(m, &SparseMatrix::zeros(2, 2)).unwrap().is_zero());
        assert_eq!(
            iota_solve(m, &SparseMatrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap_err(),
            MukaiError::NotIntertwiner
        );
    }
}
