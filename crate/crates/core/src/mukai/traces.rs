use super::MukaiError;
use crate::linalg::SparseMatrix;
use crate::modules::ModuleRep;
use crate::report::CheckRecord;
use crate::scalars::CycScalar;

/// Tr_X on End(M): the matrix trace of an intertwiner.
pub fn serre_trace(m: &ModuleRep, f: &SparseMatrix) -> Result<CycScalar, MukaiError> {
    if !m.is_endomorphism(f) {
        return Err(MukaiError::NotIntertwiner);
    }
    Ok(f.trace())
}

/// η: K → E ⊗ E*, 1 ↦ Σ e_i ⊗ e_i*.
fn coevaluation(e_dim: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(e_dim * e_dim, 1, (0..e_dim).map(|i| (i * e_dim + i, 0, CycScalar::one())))
}

/// ε: E ⊗ E* → K, e ⊗ φ ↦ φ(e).
fn evaluation(e_dim: usize) -> SparseMatrix {
    coevaluation(e_dim).transpose()
}

/// Tr_E of μ: F ⊗ E → G ⊗ E (coordinates f · dim E + e), computed as the
/// composite (I_G ⊗ ε)(μ ⊗ I_{E*})(I_F ⊗ η).
pub fn generalized_trace(
    mu: &SparseMatrix,
    f_dim: usize,
    g_dim: usize,
    e_dim: usize,
) -> Result<SparseMatrix, MukaiError> {
    if mu.rows() != g_dim * e_dim || mu.cols() != f_dim * e_dim {
        return Err(MukaiError::ShapeMismatch(format!(
            "{}×{} is not a map {f_dim}·{e_dim} → {g_dim}·{e_dim}",
            mu.rows(),
            mu.cols()
        )));
    }
    let unit = SparseMatrix::identity(f_dim).kron(&coevaluation(e_dim));
    let middle = mu.kron(&SparseMatrix::identity(e_dim));
    let counit = SparseMatrix::identity(g_dim).kron(&evaluation(e_dim));
    Ok(counit.matmul(&middle.matmul(&unit)))
}

/// Shape of a triple assembled from 0 → E → F → G → 0 with F = E ⊕ G,
/// each tensored on the left with H (source) or H' (target).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitShape {
    pub h_source: usize,
    pub h_target: usize,
    pub e_dim: usize,
    pub g_dim: usize,
}

impl SplitShape {
    fn f_dim(&self) -> usize {
        self.e_dim + self.g_dim
    }
}

/// Restriction to H ⊗ E and the induced map on H ⊗ G, for f: H ⊗ F → H' ⊗ F
/// preserving H ⊗ E.
pub fn split_triple(f: &SparseMatrix, shape: SplitShape) -> Result<(SparseMatrix, SparseMatrix), MukaiError> {
    let fd = shape.f_dim();
    if f.rows() != shape.h_target * fd || f.cols() != shape.h_source * fd {
        return Err(MukaiError::ShapeMismatch("map does not match the split shape".into()));
    }
    let mut e = Vec::new();
    let mut g = Vec::new();
    for (r, c, v) in f.triplets() {
        let (hr, xr) = (r / fd, r % fd);
        let (hc, xc) = (c / fd, c % fd);
        match (xr < shape.e_dim, xc < shape.e_dim) {
            (true, true) => e.push((hr * shape.e_dim + xr, hc * shape.e_dim + xc, v.clone())),
            (false, false) => {
                let (xr, xc) = (xr - shape.e_dim, xc - shape.e_dim);
                g.push((hr * shape.g_dim + xr, hc * shape.g_dim + xc, v.clone()))
            }
            (false, true) => return Err(MukaiError::NotSplit),
            (true, false) => {}
        }
    }
    Ok((
        SparseMatrix::from_triplets(shape.h_target * shape.e_dim, shape.h_source * shape.e_dim, e),
        SparseMatrix::from_triplets(shape.h_target * shape.g_dim, shape.h_source * shape.g_dim, g),
    ))
}

/// Tr_E(e) − Tr_F(f) + Tr_G(g), which vanishes for a compatible triple.
pub fn trace_triangle_defect(
    e: &SparseMatrix,
    f: &SparseMatrix,
    g: &SparseMatrix,
    shape: SplitShape,
) -> Result<SparseMatrix, MukaiError> {
    let (hs, ht) = (shape.h_source, shape.h_target);
    let te = generalized_trace(e, hs, ht, shape.e_dim)?;
    let tf = generalized_trace(f, hs, ht, shape.f_dim())?;
    let tg = generalized_trace(g, hs, ht, shape.g_dim)?;
    Ok(te.sub(&tf).add(&tg))
}

pub fn trace_triangle_check(
    e: &SparseMatrix,
    f: &SparseMatrix,
    g: &SparseMatrix,
    shape: SplitShape,
) -> Result<CheckRecord, MukaiError> {
    let defect = trace_triangle_defect(e, f, g, shape)?;
    Ok(CheckRecord::new(
        "trace additivity",
        "Prop 2.5 trace additivity",
        format!("E={} G={} H={}→{}", shape.e_dim, shape.g_dim, shape.h_source, shape.h_target),
        defect.dump(),
        "0",
        defect.is_zero(),
    ))
}
