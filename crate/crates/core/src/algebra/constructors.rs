use num_integer::Integer;

use super::{Algebra, AlgebraError, SerreData};
use crate::linalg::{sparse_from_dense, SparseVec};
use crate::scalars::CycScalar;

/// The ground field as a one-dimensional algebra.
pub fn field() -> Algebra {
    matrix_algebra(1).expect("M_1 is valid").with_name("field")
}

/// M_n(K) with basis e_ij (index i·n + j) and Frobenius form the matrix trace.
pub fn matrix_algebra(n: usize) -> Result<Algebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::Malformed("matrix size must be at least 1".into()));
    }
    let d = n * n;
    let mut mult = vec![Vec::new(); d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // e_ij e_jl = e_il
                mult[(i * n + j) * d + (j * n + l)] = vec![(i * n + l, CycScalar::one())];
            }
        }
    }
    let mut unit = vec![CycScalar::zero(); d];
    let mut lambda = vec![CycScalar::zero(); d];
    for i in 0..n {
        unit[i * n + i] = CycScalar::one();
        lambda[i * n + i] = CycScalar::one();
    }
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1))).collect();
    let gens = (0..n.saturating_sub(1))
        .flat_map(|i| [vec![(i * n + i + 1, CycScalar::one())], vec![((i + 1) * n + i, CycScalar::one())]])
        .collect();
    Ok(Algebra::new(format!("mat:{n}"), labels, mult, unit, Some(SerreData::symmetric(lambda)), 1)?
        .with_generators(gens))
}

/// K[x]/(x^k), k ≥ 2. No Frobenius data is attached.
pub fn truncated_poly(k: usize) -> Result<Algebra, AlgebraError> {
    if k < 2 {
        return Err(AlgebraError::Malformed("truncation degree must be at least 2".into()));
    }
    let mut mult = vec![Vec::new(); k * k];
    for i in 0..k {
        for j in 0..k {
            if i + j < k {
                mult[i * k + j] = vec![(i + j, CycScalar::one())];
            }
        }
    }
    let mut unit = vec![CycScalar::zero(); k];
    unit[0] = CycScalar::one();
    let labels = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let name = if k == 2 { "dual".to_string() } else { format!("trunc:{k}") };
    Algebra::new(name, labels, mult, unit, None, 1)
}

/// A^op: e_i ∘ e_j = e_j e_i.
pub fn opposite(a: &Algebra) -> Algebra {
    let d = a.dim();
    let mut mult = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            mult.push(a.product(j, i).clone());
        }
    }
    Algebra::from_parts_unchecked(
        format!("op({})", a.name()),
        a.labels().to_vec(),
        mult,
        a.unit().clone(),
        a.serre().cloned(),
        a.field_order(),
    )
    .expect("opposite preserves shape")
    .with_generators(a.generators().to_vec())
}

/// A ⊗ B with basis (i, k) numbered i·dim B + k.
pub fn tensor(a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut mult = vec![Vec::new(); d * d];
    for i in 0..da {
        for j in 0..da {
            let pa = a.product(i, j);
            if pa.is_empty() {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    let pb = b.product(k, l);
                    if pb.is_empty() {
                        continue;
                    }
                    let mut v = Vec::with_capacity(pa.len() * pb.len());
                    for (x, cx) in pa {
                        for (y, cy) in pb {
                            v.push((x * db + y, cx * cy));
                        }
                    }
                    mult[(i * db + k) * d + (j * db + l)] = v;
                }
            }
        }
    }
    let unit: Vec<CycScalar> =
        a.unit().iter().flat_map(|x| b.unit().iter().map(move |y| x * y)).collect();
    let serre = match (a.serre(), b.serre()) {
        (Some(sa), Some(sb)) => Some(SerreData::symmetric(
            sa.trace_functional
                .iter()
                .flat_map(|x| sb.trace_functional.iter().map(move |y| x * y))
                .collect(),
        )),
        _ => None,
    };
    let labels = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    Algebra::from_parts_unchecked(
        format!("tensor({},{})", a.name(), b.name()),
        labels,
        mult,
        unit,
        serre,
        a.field_order().lcm(&b.field_order()),
    )
    .expect("tensor preserves shape")
    .with_generators(tensor_generators(a, b))
}

/// {g ⊗ 1} ∪ {1 ⊗ h} for generators g of A and h of B.
fn tensor_generators(a: &Algebra, b: &Algebra) -> Vec<SparseVec> {
    let db = b.dim();
    let embed = |x: &[(usize, CycScalar)], y: &[(usize, CycScalar)]| -> SparseVec {
        let mut v: SparseVec = x
            .iter()
            .flat_map(|(i, c)| y.iter().map(move |(k, d)| (i * db + k, c * d)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    };
    let ua = sparse_from_dense(a.unit());
    let ub = sparse_from_dense(b.unit());
    let mut gens: Vec<SparseVec> = a.generators().iter().map(|g| embed(g, &ub)).collect();
    gens.extend(b.generators().iter().map(|h| embed(&ua, h)));
    gens
}

/// A ⊗ A^op.
pub fn enveloping(a: &Algebra) -> Algebra {
    tensor(a, &opposite(a)).with_name(format!("env({})", a.name()))
}
