use rayon::prelude::*;

use super::{same_algebra, ModuleError, ModuleRep};
use crate::hochschild::{BarBasis, HochschildConfig, HochschildError};
use crate::linalg::{rank, SparseMatrix};
use crate::scalars::CycScalar;

/// dim Ext^i_A(M, N) for i = 0 ..= maxdeg with the default configuration.
pub fn ext_dims(m: &ModuleRep, n: &ModuleRep, maxdeg: usize) -> Result<Vec<usize>, ModuleError> {
    ext_dims_with(m, n, maxdeg, &HochschildConfig::default())
}

/// Ext from the normalized bar resolution A ⊗ Ā^{⊗i} ⊗ M → M, whose
/// Hom into N is C^i = Hom(Ā^{⊗i} ⊗ M, N) with
/// (δf)(a1 … a_{i+1}, m) = a1·f(a2 …, m) + Σ ±f(… a_j a_{j+1} …, m) + (−1)^{i+1} f(a1 … a_i, a_{i+1}·m).
pub fn ext_dims_with(
    m: &ModuleRep,
    n: &ModuleRep,
    maxdeg: usize,
    config: &HochschildConfig,
) -> Result<Vec<usize>, ModuleError> {
    same_algebra(m.algebra(), n.algebra())?;
    if maxdeg > config.degree_cap {
        return Err(HochschildError::DegreeCapExceeded { requested: maxdeg, cap: config.degree_cap }.into());
    }
    let bar = BarBasis::new(m.algebra(), true);
    let unit_block = m.dim() * n.dim();
    let space = |k: usize| -> Result<usize, ModuleError> {
        match bar.tuple_count(k).and_then(|t| t.checked_mul(unit_block)) {
            Some(s) if s <= config.size_guard => Ok(s),
            s => Err(HochschildError::SizeGuardExceeded {
                degree: k,
                size: s.unwrap_or(usize::MAX),
                limit: config.size_guard,
            }
            .into()),
        }
    };
    let dims = (0..=maxdeg + 1).map(space).collect::<Result<Vec<_>, _>>()?;
    let ranks: Vec<usize> = (0..=maxdeg)
        .into_par_iter()
        .map(|k| rank(&coboundary(&bar, m, n, k, dims[k], dims[k + 1])))
        .collect();
    Ok((0..=maxdeg)
        .map(|k| {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            crate::linalg::homology_dim(dims[k], below, ranks[k])
        })
        .collect())
}

fn coboundary(bar: &BarBasis, m: &ModuleRep, n: &ModuleRep, deg: usize, cols: usize, rows: usize) -> SparseMatrix {
    let (dm, dn) = (m.dim(), n.dim());
    let index = |tuple: usize, j: usize, k: usize| (tuple * dm + j) * dn + k;
    let m_next = bar.tuple_count(deg + 1).expect("checked");
    let minus = CycScalar::from_int(-1);
    let blocks: Vec<Vec<(usize, usize, CycScalar)>> = (0..m_next)
        .into_par_iter()
        .map(|jt| {
            let mut digits = vec![0usize; deg + 1];
            bar.decode(jt, deg + 1, &mut digits);
            let mut out = Vec::new();
            let tail = bar.encode(&digits[1..]);
            let rho_n = n.action(bar.interior(digits[0]));
            for l in 0..dm {
                for (k2, k, c) in rho_n.triplets() {
                    out.push((index(jt, l, k2), index(tail, l, k), c.clone()));
                }
            }
            let mut merged = vec![0usize; deg];
            for i in 1..=deg {
                let sign = if i % 2 == 0 { CycScalar::one() } else { minus.clone() };
                for (t, c) in bar.product(digits[i - 1], digits[i]) {
                    merged[..i - 1].copy_from_slice(&digits[..i - 1]);
                    merged[i - 1] = *t;
                    merged[i..].copy_from_slice(&digits[i + 1..]);
                    let col_tuple = bar.encode(&merged);
                    let v = &sign * c;
                    for l in 0..dm {
                        for k in 0..dn {
                            out.push((index(jt, l, k), index(col_tuple, l, k), v.clone()));
                        }
                    }
                }
            }
            let sign = if (deg + 1).is_multiple_of(2) { CycScalar::one() } else { minus.clone() };
            let head = bar.encode(&digits[..deg]);
            let rho_m = m.action(bar.interior(digits[deg]));
            for (j, l, c) in rho_m.triplets() {
                let v = &sign * c;
                for k in 0..dn {
                    out.push((index(jt, l, k), index(head, j, k), v.clone()));
                }
            }
            out
        })
        .collect();
    SparseMatrix::from_triplets(rows, cols, blocks.into_iter().flatten())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{group_algebra, truncated_poly};
    use crate::modules::hom_space;

    #[test]
    fn dual_numbers_trivial_module() {
        let a = Arc::new(truncated_poly(2).unwrap());
        let k = ModuleRep::new(a, vec![SparseMatrix::identity(1), SparseMatrix::zeros(1, 1)]).unwrap();
        assert_eq!(ext_dims(&k, &k, 4).unwrap(), vec![1; 5]);
    }

    #[test]
    fn semisimple_has_no_higher_ext() {
        let a = Arc::new(group_algebra(vec![vec![0, 1], vec![1, 0]]).unwrap());
        let reg = ModuleRep::regular(a.clone());
        let triv = ModuleRep::new(a, vec![SparseMatrix::identity(1); 2]).unwrap();
        let e = ext_dims(&reg, &triv, 3).unwrap();
        assert_eq!(e, vec![hom_space(&reg, &triv).unwrap().dim(), 0, 0, 0]);
    }

    #[test]
    fn degree_cap() {
        let a = Arc::new(truncated_poly(2).unwrap());
        let k = ModuleRep::new(a, vec![SparseMatrix::identity(1), SparseMatrix::zeros(1, 1)]).unwrap();
        assert!(matches!(
            ext_dims(&k, &k, 1000),
            Err(ModuleError::Hochschild(HochschildError::DegreeCapExceeded { .. }))
        ));
    }
}
