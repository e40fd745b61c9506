use super::chern::{chern, iota_solve, mukai_pairing};
use super::transfer::Transfer;
use super::{same, MukaiClass, MukaiError};
use crate::linalg::SparseMatrix;
use crate::modules::{apply_kernel, convolve, dual_kernel, hom_space, Bimodule, ModuleRep};
use crate::report::CheckRecord;
use crate::scalars::CycScalar;

/// ⟨ch M, ch N⟩ = dim Hom(M, N) (all higher Ext vanish for semisimple A).
pub fn hrr_check(m: &ModuleRep, n: &ModuleRep) -> Result<CheckRecord, MukaiError> {
    same(m.algebra(), n.algebra())?;
    let lhs = mukai_pairing(&chern(m)?, &chern(n)?)?;
    let rhs = CycScalar::from_int(hom_space(m, n)?.dim() as i64);
    Ok(CheckRecord::equal(
        "⟨ch M, ch N⟩ = χ(M, N)",
        "Thm 7.4 HRR",
        format!("{}: dims {}, {}", m.algebra().name(), m.dim(), n.dim()),
        &lhs,
        &rhs,
    ))
}

/// ⟨ι^E(e), ι^F(f)⟩ = trace of T ↦ f∘T∘e on Hom(E, F).
pub fn cardy_check(
    big_e: &ModuleRep,
    big_f: &ModuleRep,
    e: &SparseMatrix,
    f: &SparseMatrix,
) -> Result<CheckRecord, MukaiError> {
    same(big_e.algebra(), big_f.algebra())?;
    let lhs = mukai_pairing(&iota_solve(big_e, e)?, &iota_solve(big_f, f)?)?;
    let hom = hom_space(big_e, big_f)?;
    let mut rhs = CycScalar::zero();
    for (k, t) in hom.basis().iter().enumerate() {
        let image = f.matmul(t).matmul(e);
        let coords = hom.coordinates(&image).ok_or(MukaiError::NotIntertwiner)?;
        rhs = &rhs + &coords[k];
    }
    Ok(CheckRecord::equal(
        "⟨ι^E(e), ι^F(f)⟩ = sTr(f∘−∘e)",
        "Thm 7.5 Cardy",
        format!("{}: dims {}, {}; Hom dim {}", big_e.algebra().name(), big_e.dim(), big_f.dim(), hom.dim()),
        &lhs,
        &rhs,
    ))
}

/// ⟨v, Φ_* w⟩_B = ⟨Ψ_* v, w⟩_A for Ψ along the dual kernel, on all center basis pairs.
pub fn adjointness_check(
    kernel: &Bimodule,
    source_simples: &[ModuleRep],
    target_simples: &[ModuleRep],
) -> Result<Vec<CheckRecord>, MukaiError> {
    let phi = Transfer::new(kernel, source_simples)?;
    let psi = Transfer::new(&dual_kernel(kernel)?, target_simples)?;
    let a_basis = MukaiClass::basis(kernel.source());
    let b_basis = MukaiClass::basis(kernel.target());
    let pushed_w = a_basis.iter().map(|w| phi.pushforward(w)).collect::<Result<Vec<_>, _>>()?;
    let pulled_v = b_basis.iter().map(|v| psi.pushforward(v)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for (i, v) in b_basis.iter().enumerate() {
        for (j, w) in a_basis.iter().enumerate() {
            let lhs = mukai_pairing(v, &pushed_w[j])?;
            let rhs = mukai_pairing(&pulled_v[i], w)?;
            out.push(CheckRecord::equal(
                "⟨v, Φ_* w⟩ = ⟨Ψ_* v, w⟩",
                "Thm 7.2 adjointness",
                format!("{} → {}: v = z{i}, w = z{j}", kernel.source().name(), kernel.target().name()),
                &lhs,
                &rhs,
            ));
        }
    }
    Ok(out)
}

/// (L ∘ K)_* = L_* ∘ K_* on the center basis of the source of K.
pub fn functoriality_check(
    k1: &Bimodule,
    k2: &Bimodule,
    source_simples: &[ModuleRep],
    middle_simples: &[ModuleRep],
) -> Result<Vec<CheckRecord>, MukaiError> {
    let composite = Transfer::new(&convolve(k1, k2)?, source_simples)?;
    let first = Transfer::new(k1, source_simples)?;
    let second = Transfer::new(k2, middle_simples)?;
    MukaiClass::basis(k1.source())
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let lhs = composite.pushforward(v)?;
            let rhs = second.pushforward(&first.pushforward(v)?)?;
            Ok(CheckRecord::equal(
                "(Φ∘Ψ)_* v = Φ_* Ψ_* v",
                "Thm 5.1 functoriality",
                format!("{} → {} → {}: v = z{i}", k1.source().name(), k1.target().name(), k2.target().name()),
                &lhs,
                &rhs,
            ))
        })
        .collect()
}

/// Φ_* ch(M) = ch(Φ M), with Φ_* evaluated by both routes.
pub fn chern_commutes_check(
    kernel: &Bimodule,
    m: &ModuleRep,
    source_simples: &[ModuleRep],
) -> Result<CheckRecord, MukaiError> {
    let t = Transfer::new(kernel, source_simples)?;
    let lhs = t.pushforward(&chern(m)?)?;
    let rhs = chern(&apply_kernel(kernel, m)?)?;
    Ok(CheckRecord::equal(
        "Φ_* ch(M) = ch(Φ M)",
        "Thm 7.1 ch commutes",
        format!("{} → {}: dim M = {}", kernel.source().name(), kernel.target().name(), m.dim()),
        &lhs,
        &rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::report::all_pass;

    #[test]
    fn hrr_on_s3_simples() {
        let f = fixture("s3").unwrap();
        for (i, a) in f.simples.iter().enumerate() {
            for (j, b) in f.simples.iter().enumerate() {
                let r = hrr_check(&a.module, &b.module).unwrap();
                assert!(r.pass, "{r:?}");
                assert_eq!(r.rhs, if i == j { "1" } else { "0" });
            }
        }
    }

    #[test]
    fn cardy_with_identities_is_hrr() {
        let f = fixture("q8").unwrap();
        let m = f.simple("std").unwrap().power(2);
        let n = f.simple("std").unwrap().direct_sum(f.simple("triv").unwrap()).unwrap();
        let c = cardy_check(&m, &n, &SparseMatrix::identity(4), &SparseMatrix::identity(3)).unwrap();
        let h = hrr_check(&m, &n).unwrap();
        assert!(c.pass && h.pass);
        assert_eq!(c.lhs, h.lhs);
        assert_eq!(c.rhs, "2");
    }

    #[test]
    fn outer_kernel_adjointness_and_functoriality() {
        let z2 = fixture("zn:2").unwrap();
        let z3 = fixture("zn:3").unwrap();
        let s3 = fixture("s3").unwrap();
        let k1 = Bimodule::outer(z2.simple("chi1").unwrap(), z3.simple("chi2").unwrap())
            .direct_sum(&Bimodule::outer(z2.simple("chi0").unwrap(), &z3.regular_module()))
            .unwrap();
        let k2 = Bimodule::outer(z3.simple("chi1").unwrap(), s3.simple("std").unwrap());
        let adj = adjointness_check(&k1, &z2.simple_modules(), &z3.simple_modules()).unwrap();
        assert_eq!(adj.len(), 6);
        assert!(all_pass(&adj));
        let fun = functoriality_check(&k1, &k2, &z2.simple_modules(), &z3.simple_modules()).unwrap();
        assert!(all_pass(&fun), "{fun:?}");
        let m = z2.regular_module();
        assert!(chern_commutes_check(&k1, &m, &z2.simple_modules()).unwrap().pass);
    }
}
