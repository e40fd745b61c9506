//! Finite-dimensional unital associative algebras given by structure constants,
//! with optional symmetric Frobenius (Serre) data.

mod constructors;
mod group;

use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

use crate::linalg::{nullspace, rank, sparse_from_dense, SparseMatrix, SparseVec, Subspace};
use crate::scalars::CycScalar;

pub use constructors::{enveloping, field, matrix_algebra, opposite, tensor, truncated_poly};
pub use group::{group_algebra, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("not associative: (e{0}·e{1})·e{2} ≠ e{0}·(e{1}·e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element e{0}")]
    UnitLawFails(usize),
    #[error("Frobenius form λ(ab) is degenerate")]
    DegenerateFrobeniusForm,
    #[error("Frobenius form is not symmetric: λ(e{0}e{1}) ≠ λ(e{1}e{0})")]
    AsymmetricFrobeniusForm(usize, usize),
    #[error("only symmetric Frobenius data (identity Nakayama twist) is supported")]
    NakayamaNotIdentity,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("malformed structure data: {0}")]
    Malformed(String),
}

/// Symmetric Frobenius data λ: A → K, housing the (trivial) Serre functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreData {
    pub trace_functional: Vec<CycScalar>,
    /// Must be `true`; only symmetric algebras are supported.
    pub nakayama_identity: bool,
}

impl SerreData {
    pub fn symmetric(trace_functional: Vec<CycScalar>) -> Self {
        SerreData { trace_functional, nakayama_identity: true }
    }
}

/// Dense coordinate vector of an algebra element.
pub type Element = Vec<CycScalar>;

#[derive(Clone, Debug, Default)]
struct Cache {
    generators: OnceLock<Vec<SparseVec>>,
    center: OnceLock<Subspace>,
    semisimple: OnceLock<bool>,
    left_traces: OnceLock<Vec<CycScalar>>,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    dim: usize,
    labels: Vec<String>,
    /// `mult[i·dim + j]` holds the coordinates of e_i·e_j.
    mult: Vec<SparseVec>,
    unit: Element,
    serre: Option<SerreData>,
    field_order: u32,
    cache: Cache,
}

impl Algebra {
    /// Builds and validates an algebra.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        mult: Vec<SparseVec>,
        unit: Element,
        serre: Option<SerreData>,
        field_order: u32,
    ) -> Result<Self, AlgebraError> {
        let a = Self::from_parts_unchecked(name, labels, mult, unit, serre, field_order)?;
        a.validate()?;
        Ok(a)
    }

    /// Shape checks only; used by constructors whose output is associative by construction.
    pub(crate) fn from_parts_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        mult: Vec<SparseVec>,
        unit: Element,
        serre: Option<SerreData>,
        field_order: u32,
    ) -> Result<Self, AlgebraError> {
        let dim = unit.len();
        if dim == 0 {
            return Err(AlgebraError::Malformed("dimension must be positive".into()));
        }
        if mult.len() != dim * dim {
            return Err(AlgebraError::Malformed(format!(
                "expected {} products, found {}",
                dim * dim,
                mult.len()
            )));
        }
        if labels.len() != dim {
            return Err(AlgebraError::Malformed("label count differs from dimension".into()));
        }
        if let Some(s) = &serre {
            if s.trace_functional.len() != dim {
                return Err(AlgebraError::Malformed("Frobenius functional has wrong length".into()));
            }
        }
        if mult.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(AlgebraError::Malformed("product coordinate out of range".into()));
        }
        let field_order = mult
            .iter()
            .flatten()
            .map(|(_, v)| v)
            .chain(unit.iter())
            .chain(serre.iter().flat_map(|s| s.trace_functional.iter()))
            .fold(field_order.max(1), |acc, v| acc.lcm(&v.order()));
        Ok(Algebra { name: name.into(), dim, labels, mult, unit, serre, field_order, cache: Cache::default() })
    }

    /// Checks associativity, the unit law and the Frobenius conditions.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        for i in 0..d {
            let e = self.basis_element(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::UnitLawFails(i));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for k in 0..d {
                    // (e_i e_j) e_k
                    let mut left = vec![CycScalar::zero(); d];
                    for (l, c) in ij {
                        for (m, c2) in self.product(*l, k) {
                            left[*m] += &(c * c2);
                        }
                    }
                    // e_i (e_j e_k)
                    let mut right = vec![CycScalar::zero(); d];
                    for (l, c) in self.product(j, k) {
                        for (m, c2) in self.product(i, *l) {
                            right[*m] += &(c * c2);
                        }
                    }
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if let Some(s) = &self.serre {
            if !s.nakayama_identity {
                return Err(AlgebraError::NakayamaNotIdentity);
            }
            let lam = |i: usize, j: usize| -> CycScalar {
                self.product(i, j).iter().map(|(k, c)| c * &s.trace_functional[*k]).sum()
            };
            let mut gram: Vec<Vec<CycScalar>> = Vec::with_capacity(d);
            for i in 0..d {
                let mut row = Vec::with_capacity(d);
                #[allow(clippy::needless_range_loop)]
                for j in 0..d {
                    let v = lam(i, j);
                    if j < i && v != gram[j][i] {
                        return Err(AlgebraError::AsymmetricFrobeniusForm(i, j));
                    }
                    row.push(v);
                }
                gram.push(row);
            }
            if rank(&SparseMatrix::from_dense(&gram)) != d {
                return Err(AlgebraError::DegenerateFrobeniusForm);
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    /// Enlarges the coefficient field to Q(ζ_lcm(current, n)).
    pub fn with_field_order(mut self, n: u32) -> Self {
        self.field_order = self.field_order.lcm(&n.max(1));
        self
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn serre(&self) -> Option<&SerreData> {
        self.serre.as_ref()
    }

    /// Coordinates of e_i·e_j.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = vec![CycScalar::zero(); self.dim];
        e[i] = CycScalar::one();
        e
    }

    pub fn zero_element(&self) -> Element {
        vec![CycScalar::zero(); self.dim]
    }

    pub fn mul(&self, x: &[CycScalar], y: &[CycScalar]) -> Element {
        let mut out = vec![CycScalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.product(i, j) {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    /// Matrix of z ↦ x·z.
    pub fn left_mult_matrix(&self, x: &[CycScalar]) -> SparseMatrix {
        let mut triplets = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.product(i, j) {
                    triplets.push((*k, j, xi * c));
                }
            }
        }
        SparseMatrix::from_triplets(self.dim, self.dim, triplets)
    }

    /// Matrix of z ↦ z·x.
    pub fn right_mult_matrix(&self, x: &[CycScalar]) -> SparseMatrix {
        let mut triplets = Vec::new();
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for (k, c) in self.product(i, j) {
                    triplets.push((*k, i, xj * c));
                }
            }
        }
        SparseMatrix::from_triplets(self.dim, self.dim, triplets)
    }

    fn left_traces(&self) -> &[CycScalar] {
        self.cache.left_traces.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    (0..self.dim)
                        .filter_map(|j| {
                            let p = self.product(i, j);
                            p.binary_search_by_key(&j, |(k, _)| *k).ok().map(|idx| p[idx].1.clone())
                        })
                        .sum()
                })
                .collect()
        })
    }

    /// Trace of left multiplication by `x` on A (the regular character).
    pub fn regular_trace(&self, x: &[CycScalar]) -> CycScalar {
        x.iter().zip(self.left_traces()).filter(|(a, _)| !a.is_zero()).map(|(a, t)| a * t).sum()
    }

    /// λ(x) for the Frobenius functional, if present.
    pub fn frobenius_value(&self, x: &[CycScalar]) -> Option<CycScalar> {
        self.serre
            .as_ref()
            .map(|s| x.iter().zip(&s.trace_functional).map(|(a, b)| a * b).sum())
    }

    /// A small set of elements generating A as an algebra.
    pub fn generators(&self) -> &[SparseVec] {
        self.cache.generators.get_or_init(|| {
            let mut gens: Vec<SparseVec> = Vec::new();
            let mut closure = Subspace::from_dense_vectors(self.dim, std::slice::from_ref(&self.unit));
            for i in 0..self.dim {
                if closure.contains(&[(i, CycScalar::one())]) {
                    continue;
                }
                gens.push(vec![(i, CycScalar::one())]);
                closure = self.subalgebra_closure(&gens);
                if closure.dim() == self.dim {
                    break;
                }
            }
            gens
        })
    }

    /// Installs a known generating set, skipping the greedy search.
    pub(crate) fn with_generators(self, gens: Vec<SparseVec>) -> Self {
        let _ = self.cache.generators.set(gens);
        self
    }

    /// x·e_j for each (j, c) in `g`, accumulated: coordinates of e_i·g.
    fn basis_times(&self, i: usize, g: &[(usize, CycScalar)]) -> SparseVec {
        let mut acc = Vec::new();
        for (j, c) in g {
            acc = crate::linalg::axpy(&acc, c, self.product(i, *j));
        }
        acc
    }

    /// Coordinates of g·e_i.
    fn times_basis(&self, g: &[(usize, CycScalar)], i: usize) -> SparseVec {
        let mut acc = Vec::new();
        for (j, c) in g {
            acc = crate::linalg::axpy(&acc, c, self.product(*j, i));
        }
        acc
    }

    fn subalgebra_closure(&self, gens: &[SparseVec]) -> Subspace {
        let mut vectors: Vec<SparseVec> = vec![sparse_from_dense(&self.unit)];
        vectors.extend(gens.iter().cloned());
        let mut span = Subspace::from_vectors(self.dim, vectors);
        loop {
            let mut grown = span.basis().to_vec();
            for b in span.basis() {
                for g in gens {
                    let mut acc = Vec::new();
                    for (i, c) in b {
                        acc = crate::linalg::axpy(&acc, c, &self.basis_times(*i, g));
                    }
                    grown.push(acc);
                }
            }
            let next = Subspace::from_vectors(self.dim, grown);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// Z(A) as a subspace of A.
    pub fn center(&self) -> &Subspace {
        self.cache.center.get_or_init(|| {
            let d = self.dim;
            let gens = self.generators();
            let mut triplets = Vec::new();
            for (block, g) in gens.iter().enumerate() {
                // row (block, k): coefficient of e_k in z·g − g·z
                for i in 0..d {
                    for (k, c) in self.basis_times(i, g) {
                        triplets.push((block * d + k, i, c));
                    }
                    for (k, c) in self.times_basis(g, i) {
                        triplets.push((block * d + k, i, -c));
                    }
                }
            }
            nullspace(&SparseMatrix::from_triplets(gens.len() * d, d, triplets))
        })
    }

    /// Basis of the center Z(A).
    pub fn center_basis(&self) -> Vec<Element> {
        self.center().dense_basis()
    }

    pub fn is_central(&self, z: &[CycScalar]) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_element(i);
            self.mul(z, &e) == self.mul(&e, z)
        })
    }

    /// The commutator subspace [A, A] = span{ e_i e_j − e_j e_i }.
    pub fn commutator_subspace(&self) -> Subspace {
        let mut vectors = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let v = crate::linalg::axpy(self.product(i, j), &CycScalar::from_int(-1), self.product(j, i));
                if !v.is_empty() {
                    vectors.push(v);
                }
            }
        }
        Subspace::from_vectors(self.dim, vectors)
    }

    /// Semisimplicity over a field of characteristic zero: the trace form
    /// (x, y) ↦ tr(L_{xy}) is non-degenerate.
    pub fn is_semisimple(&self) -> bool {
        *self.cache.semisimple.get_or_init(|| {
            let d = self.dim;
            let traces = self.left_traces();
            let gram: Vec<SparseVec> = (0..d)
                .map(|i| {
                    (0..d)
                        .filter_map(|j| {
                            let v: CycScalar =
                                self.product(i, j).iter().map(|(k, c)| c * &traces[*k]).sum();
                            (!v.is_zero()).then_some((j, v))
                        })
                        .collect()
                })
                .collect();
            rank(&SparseMatrix::from_sparse_rows(d, gram)) == d
        })
    }

    /// Same dimension, unit and structure constants.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other)
            || (self.dim == other.dim && self.unit == other.unit && self.mult == other.mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_algebra(d: usize, entries: &[((usize, usize), usize)], unit: Element) -> Result<Algebra, AlgebraError> {
        let mut mult = vec![Vec::new(); d * d];
        for &((i, j), k) in entries {
            mult[i * d + j] = vec![(k, CycScalar::one())];
        }
        Algebra::new("t", (0..d).map(|i| format!("x{i}")).collect(), mult, unit, None, 1)
    }

    #[test]
    fn missing_unit_is_reported() {
        // x·x = y, x·y = x, no unit among the basis
        let r = table_algebra(
            2,
            &[((0, 0), 1), ((0, 1), 0)],
            vec![CycScalar::one(), CycScalar::zero()],
        );
        assert!(matches!(r, Err(AlgebraError::UnitLawFails(_))));
    }

    #[test]
    fn nonassociative_table_is_reported() {
        // unit e0; e1·e1 = e2, e2·e1 = e0 but e1·e2 = e1 breaks (e1e1)e1 = e1(e1e1)
        let r = table_algebra(
            3,
            &[
                ((0, 0), 0),
                ((0, 1), 1),
                ((1, 0), 1),
                ((0, 2), 2),
                ((2, 0), 2),
                ((1, 1), 2),
                ((2, 1), 0),
                ((1, 2), 1),
            ],
            vec![CycScalar::one(), CycScalar::zero(), CycScalar::zero()],
        );
        assert!(matches!(r, Err(AlgebraError::NotAssociative(..))));
    }

    #[test]
    fn degenerate_frobenius_form() {
        let a = truncated_poly(2).unwrap();
        let bad = Algebra::new(
            "dual-bad",
            a.labels().to_vec(),
            (0..4).map(|k| a.product(k / 2, k % 2).clone()).collect(),
            a.unit().clone(),
            Some(SerreData::symmetric(vec![CycScalar::one(), CycScalar::zero()])),
            1,
        );
        assert_eq!(bad.unwrap_err(), AlgebraError::DegenerateFrobeniusForm);
        // λ(x) = 1 is a genuine symmetric Frobenius form on the dual numbers
        let good = Algebra::new(
            "dual-frob",
            a.labels().to_vec(),
            (0..4).map(|k| a.product(k / 2, k % 2).clone()).collect(),
            a.unit().clone(),
            Some(SerreData::symmetric(vec![CycScalar::zero(), CycScalar::one()])),
            1,
        );
        assert!(good.is_ok());
        assert!(!good.unwrap().is_semisimple());
    }

    #[test]
    fn matrix_algebra_facts() {
        let m1 = matrix_algebra(1).unwrap();
        assert_eq!(m1.dim(), 1);
        let m2 = matrix_algebra(2).unwrap();
        assert_eq!(m2.center().dim(), 1);
        assert_eq!(m2.commutator_subspace().dim(), 3);
        let m3 = matrix_algebra(3).unwrap();
        assert_eq!(m3.commutator_subspace().dim(), 8);
        // regular trace of e11 in M_2 is 2
        assert_eq!(m2.regular_trace(&m2.basis_element(0)), CycScalar::from_int(2));
        assert!(m3.is_semisimple());
    }

    #[test]
    fn truncated_poly_facts() {
        let t = truncated_poly(3).unwrap();
        assert_eq!(t.center().dim(), 3);
        assert_eq!(t.commutator_subspace().dim(), 0);
        assert!(t.product(1, 2).is_empty());
        assert!(!t.is_semisimple());
        assert_eq!(t.generators(), &[vec![(1, CycScalar::one())]]);
        assert!(truncated_poly(1).is_err());
    }

    #[test]
    fn tensor_and_opposite() {
        let d = truncated_poly(2).unwrap();
        let op = opposite(&d);
        assert!(op.same_structure(&d));
        let m2 = matrix_algebra(2).unwrap();
        let t = tensor(&m2, &d);
        assert_eq!(t.dim(), 8);
        t.validate().unwrap();
        let e = enveloping(&m2);
        assert_eq!(e.dim(), 16);
        e.validate().unwrap();
        assert_eq!(e.center().dim(), 1);
    }
}
