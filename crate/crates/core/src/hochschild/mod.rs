//! Hochschild chain and cochain complexes from the normalized (or plain) bar
//! construction, their homology dimensions, and cup/cap products.

mod bar;
mod complex;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Algebra, Element};
use crate::linalg::{cokernel_projector, SparseMatrix, SparseVec};
use crate::scalars::CycScalar;

pub use bar::BarBasis;
pub use complex::{ChainComplex, Grading};

pub const DEFAULT_DEGREE_CAP: usize = 64;
pub const DEFAULT_SIZE_GUARD: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildConfig {
    /// Largest degree any computation may ask for.
    pub degree_cap: usize,
    /// Largest chain space (in coordinates) that will be assembled.
    pub size_guard: usize,
}

impl Default for HochschildConfig {
    fn default() -> Self {
        HochschildConfig { degree_cap: DEFAULT_DEGREE_CAP, size_guard: DEFAULT_SIZE_GUARD }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("DegreeCapExceeded: degree {requested} is above the cap {cap}")]
    DegreeCapExceeded { requested: usize, cap: usize },
    #[error("DegreeCapExceeded: the degree-{degree} space has {size} coordinates, above the size guard {limit}")]
    SizeGuardExceeded { degree: usize, size: usize, limit: usize },
    #[error("NotACocycle: the degree-{0} cochain has nonzero coboundary")]
    NotACocycle(usize),
    #[error("NotACycle: the degree-{0} chain has nonzero boundary")]
    NotACycle(usize),
    #[error("DegreeUnderflow: cannot cap a degree-{p} cochain with a degree-{n} chain")]
    DegreeUnderflow { p: usize, n: usize },
    #[error("expected {expected} coordinates, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HHKind {
    Homology,
    Cohomology,
}

#[derive(Clone, Debug)]
pub struct HHResult {
    pub kind: HHKind,
    /// dims per degree 0 ..= truncation
    pub dims: Vec<usize>,
    pub truncation: usize,
    /// The top entry is only an upper bound: the next chain space was over the size guard.
    pub top_incomplete: bool,
    pub normalized: bool,
    /// Degree-0 classes: a complement of [A, A] for homology, a basis of Z(A) for cohomology.
    pub degree0_representatives: Vec<Element>,
}

/// A Hochschild chain in C_n = A ⊗ B^{⊗n}, B the interior factor.
/// Coordinates are indexed by a0 · m^n + (interior tuple).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub values: Vec<CycScalar>,
}

/// A Hochschild cochain in C^n = Hom(B^{⊗n}, A), indexed by (tuple) · dim A + k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<CycScalar>,
}

/// The bar-construction engine for one algebra.
#[derive(Clone, Debug)]
pub struct Hochschild<'a> {
    algebra: &'a Algebra,
    bar: BarBasis,
    config: HochschildConfig,
}

impl<'a> Hochschild<'a> {
    pub fn new(algebra: &'a Algebra, normalized: bool, config: HochschildConfig) -> Self {
        Hochschild { algebra, bar: BarBasis::new(algebra, normalized), config }
    }

    pub fn normalized(algebra: &'a Algebra) -> Self {
        Self::new(algebra, true, HochschildConfig::default())
    }

    pub fn algebra(&self) -> &Algebra {
        self.algebra
    }

    pub fn bar(&self) -> &BarBasis {
        &self.bar
    }

    pub fn is_normalized(&self) -> bool {
        self.bar.is_normalized()
    }

    /// dim C_n = dim C^n = dim A · m^n, or `None` on overflow.
    pub fn space_dim(&self, n: usize) -> Option<usize> {
        self.bar.tuple_count(n)?.checked_mul(self.algebra.dim())
    }

    fn check_degree(&self, n: usize) -> Result<(), HochschildError> {
        if n > self.config.degree_cap {
            return Err(HochschildError::DegreeCapExceeded { requested: n, cap: self.config.degree_cap });
        }
        Ok(())
    }

    fn guarded_dim(&self, n: usize) -> Result<usize, HochschildError> {
        self.check_degree(n)?;
        let limit = self.config.size_guard;
        match self.space_dim(n) {
            Some(size) if size <= limit => Ok(size),
            size => Err(HochschildError::SizeGuardExceeded { degree: n, size: size.unwrap_or(usize::MAX), limit }),
        }
    }

    /// b : C_n → C_{n−1} for n ≥ 1.
    pub fn boundary(&self, n: usize) -> Result<SparseMatrix, HochschildError> {
        assert!(n >= 1, "the boundary starts in degree 1");
        let rows = self.guarded_dim(n - 1)?;
        let cols = self.guarded_dim(n)?;
        let a = self.algebra;
        let bar = &self.bar;
        let m_tail = bar.tuple_count(n - 1).expect("guarded");
        let columns: Vec<SparseVec> = (0..cols)
            .into_par_iter()
            .map(|col| {
                let m_n = bar.tuple_count(n).expect("guarded");
                let a0 = col / m_n;
                let mut digits = vec![0usize; n];
                bar.decode(col % m_n, n, &mut digits);
                let mut triplets: Vec<(usize, CycScalar)> = Vec::new();
                // a0 a1 ⊗ a2 … an
                let tail = bar.encode(&digits[1..]);
                for (k, c) in a.product(a0, bar.interior(digits[0])) {
                    triplets.push((k * m_tail + tail, c.clone()));
                }
                // ± a0 ⊗ … a_i a_{i+1} …
                let mut merged = vec![0usize; n - 1];
                for i in 1..n {
                    let sign = if i % 2 == 0 { CycScalar::one() } else { CycScalar::from_int(-1) };
                    for (t, c) in bar.product(digits[i - 1], digits[i]) {
                        merged[..i - 1].copy_from_slice(&digits[..i - 1]);
                        merged[i - 1] = *t;
                        merged[i..].copy_from_slice(&digits[i + 1..]);
                        triplets.push((a0 * m_tail + bar.encode(&merged), &sign * c));
                    }
                }
                // (−1)^n a_n a0 ⊗ a1 … a_{n−1}
                let sign = if n.is_multiple_of(2) { CycScalar::one() } else { CycScalar::from_int(-1) };
                let head = bar.encode(&digits[..n - 1]);
                for (k, c) in a.product(bar.interior(digits[n - 1]), a0) {
                    triplets.push((k * m_tail + head, &sign * c));
                }
                collect_sparse(triplets)
            })
            .collect();
        Ok(SparseMatrix::from_sparse_columns(rows, &columns))
    }

    /// δ : C^n → C^{n+1}.
    pub fn coboundary(&self, n: usize) -> Result<SparseMatrix, HochschildError> {
        let cols = self.guarded_dim(n)?;
        let rows = self.guarded_dim(n + 1)?;
        let a = self.algebra;
        let d = a.dim();
        let bar = &self.bar;
        let m_next = bar.tuple_count(n + 1).expect("guarded");
        let minus = CycScalar::from_int(-1);
        // one block of rows per input tuple J = (a1 … a_{n+1})
        let blocks: Vec<Vec<(usize, usize, CycScalar)>> = (0..m_next)
            .into_par_iter()
            .map(|j| {
                let mut digits = vec![0usize; n + 1];
                bar.decode(j, n + 1, &mut digits);
                let mut out = Vec::new();
                // a1 · f(a2 … a_{n+1})
                let tail = bar.encode(&digits[1..]);
                let a1 = bar.interior(digits[0]);
                for k in 0..d {
                    for (k2, c) in a.product(a1, k) {
                        out.push((j * d + k2, tail * d + k, c.clone()));
                    }
                }
                // ± f(… a_i a_{i+1} …)
                let mut merged = vec![0usize; n];
                for i in 1..=n {
                    let sign = if i % 2 == 0 { CycScalar::one() } else { minus.clone() };
                    for (t, c) in bar.product(digits[i - 1], digits[i]) {
                        merged[..i - 1].copy_from_slice(&digits[..i - 1]);
                        merged[i - 1] = *t;
                        merged[i..].copy_from_slice(&digits[i + 1..]);
                        let col_tuple = bar.encode(&merged);
                        let v = &sign * c;
                        for k in 0..d {
                            out.push((j * d + k, col_tuple * d + k, v.clone()));
                        }
                    }
                }
                // (−1)^{n+1} f(a1 … an) · a_{n+1}
                let sign = if (n + 1).is_multiple_of(2) { CycScalar::one() } else { minus.clone() };
                let head = bar.encode(&digits[..n]);
                let last = bar.interior(digits[n]);
                for k in 0..d {
                    for (k2, c) in a.product(k, last) {
                        out.push((j * d + k2, head * d + k, &sign * c));
                    }
                }
                out
            })
            .collect();
        Ok(SparseMatrix::from_triplets(rows, cols, blocks.into_iter().flatten()))
    }

    /// Builds C_0 … C_top with their boundaries.
    pub fn chain_complex(&self, top: usize) -> Result<ChainComplex, HochschildError> {
        let dims = (0..=top).map(|n| self.guarded_dim(n)).collect::<Result<Vec<_>, _>>()?;
        let maps = (1..=top).map(|n| self.boundary(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(ChainComplex::new(Grading::Homological, dims, maps))
    }

    /// Builds C^0 … C^top with their coboundaries.
    pub fn cochain_complex(&self, top: usize) -> Result<ChainComplex, HochschildError> {
        let dims = (0..=top).map(|n| self.guarded_dim(n)).collect::<Result<Vec<_>, _>>()?;
        let maps = (0..top).map(|n| self.coboundary(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(ChainComplex::new(Grading::Cohomological, dims, maps))
    }

    /// Highest degree that can be assembled for a request up to `maxdeg`:
    /// `maxdeg + 1` normally, `maxdeg` when the next space is over the guard.
    fn plan(&self, maxdeg: usize) -> Result<(usize, bool), HochschildError> {
        self.check_degree(maxdeg)?;
        self.guarded_dim(maxdeg)?;
        match self.guarded_dim(maxdeg + 1) {
            Ok(_) => Ok((maxdeg + 1, false)),
            Err(HochschildError::SizeGuardExceeded { .. }) | Err(HochschildError::DegreeCapExceeded { .. }) => {
                Ok((maxdeg, true))
            }
            Err(e) => Err(e),
        }
    }

    fn dims_from(&self, complex: &ChainComplex, maxdeg: usize, incomplete: bool) -> Vec<usize> {
        let ranks = complex.ranks();
        let r = |k: isize| if k < 0 || k as usize >= ranks.len() { 0 } else { ranks[k as usize] };
        (0..=maxdeg)
            .map(|k| {
                let below = r(k as isize - 1);
                let above = if incomplete && k == maxdeg { 0 } else { r(k as isize) };
                crate::linalg::homology_dim(complex.dims()[k], below, above)
            })
            .collect()
    }

    pub fn homology_dims(&self, maxdeg: usize) -> Result<HHResult, HochschildError> {
        let (top, incomplete) = self.plan(maxdeg)?;
        let complex = self.chain_complex(top)?;
        let dims = self.dims_from(&complex, maxdeg, incomplete);
        let reps = if top >= 1 {
            let ck = cokernel_projector(complex.map(0));
            ck.free_coords.iter().map(|&k| self.algebra.basis_element(k)).collect()
        } else {
            (0..self.algebra.dim()).map(|k| self.algebra.basis_element(k)).collect()
        };
        Ok(HHResult {
            kind: HHKind::Homology,
            dims,
            truncation: maxdeg,
            top_incomplete: incomplete,
            normalized: self.is_normalized(),
            degree0_representatives: reps,
        })
    }

    pub fn cohomology_dims(&self, maxdeg: usize) -> Result<HHResult, HochschildError> {
        let (top, incomplete) = self.plan(maxdeg)?;
        let complex = self.cochain_complex(top)?;
        let dims = self.dims_from(&complex, maxdeg, incomplete);
        let reps = if top >= 1 {
            crate::linalg::nullspace(complex.map(0)).dense_basis()
        } else {
            (0..self.algebra.dim()).map(|k| self.algebra.basis_element(k)).collect()
        };
        Ok(HHResult {
            kind: HHKind::Cohomology,
            dims,
            truncation: maxdeg,
            top_incomplete: incomplete,
            normalized: self.is_normalized(),
            degree0_representatives: reps,
        })
    }

    fn check_len(&self, n: usize, len: usize) -> Result<(), HochschildError> {
        let expected = self.guarded_dim(n)?;
        if expected != len {
            return Err(HochschildError::ShapeMismatch { expected, found: len });
        }
        Ok(())
    }

    pub fn apply_boundary(&self, z: &Chain) -> Result<Chain, HochschildError> {
        self.check_len(z.degree, z.values.len())?;
        if z.degree == 0 {
            return Ok(Chain { degree: 0, values: Vec::new() });
        }
        Ok(Chain { degree: z.degree - 1, values: self.boundary(z.degree)?.mul_vec(&z.values) })
    }

    pub fn apply_coboundary(&self, f: &Cochain) -> Result<Cochain, HochschildError> {
        self.check_len(f.degree, f.values.len())?;
        Ok(Cochain { degree: f.degree + 1, values: self.coboundary(f.degree)?.mul_vec(&f.values) })
    }

    pub fn is_cocycle(&self, f: &Cochain) -> Result<bool, HochschildError> {
        Ok(self.apply_coboundary(f)?.values.iter().all(CycScalar::is_zero))
    }

    pub fn is_cycle(&self, z: &Chain) -> Result<bool, HochschildError> {
        Ok(self.apply_boundary(z)?.values.iter().all(CycScalar::is_zero))
    }

    /// (f ⌣ g)(a1 … a_{p+q}) = f(a1 … ap) · g(a_{p+1} … a_{p+q}), with no cocycle check.
    pub fn cup_chain_level(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, HochschildError> {
        self.check_len(f.degree, f.values.len())?;
        self.check_len(g.degree, g.values.len())?;
        let (p, q) = (f.degree, g.degree);
        let n = p + q;
        let d = self.algebra.dim();
        let len = self.guarded_dim(n)?;
        let mq = self.bar.tuple_count(q).expect("guarded");
        let mut values = vec![CycScalar::zero(); len];
        for j in 0..len / d {
            let (i1, i2) = (j / mq, j % mq);
            let x = &f.values[i1 * d..(i1 + 1) * d];
            let y = &g.values[i2 * d..(i2 + 1) * d];
            if x.iter().all(CycScalar::is_zero) || y.iter().all(CycScalar::is_zero) {
                continue;
            }
            let xy = self.algebra.mul(x, y);
            values[j * d..(j + 1) * d].clone_from_slice(&xy);
        }
        Ok(Cochain { degree: n, values })
    }

    pub fn cup_product(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, HochschildError> {
        for h in [f, g] {
            if !self.is_cocycle(h)? {
                return Err(HochschildError::NotACocycle(h.degree));
            }
        }
        self.cup_chain_level(f, g)
    }

    /// f ∩ (a0 ⊗ a1 … an) = a0·f(a1 … ap) ⊗ a_{p+1} … an, with no cycle checks.
    pub fn cap_chain_level(&self, f: &Cochain, z: &Chain) -> Result<Chain, HochschildError> {
        let (p, n) = (f.degree, z.degree);
        if p > n {
            return Err(HochschildError::DegreeUnderflow { p, n });
        }
        self.check_len(p, f.values.len())?;
        self.check_len(n, z.values.len())?;
        let d = self.algebra.dim();
        let m_n = self.bar.tuple_count(n).expect("guarded");
        let m_rest = self.bar.tuple_count(n - p).expect("guarded");
        let mut values = vec![CycScalar::zero(); d * m_rest];
        for (idx, c) in z.values.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a0, tuple) = (idx / m_n, idx % m_n);
            let (head, rest) = (tuple / m_rest, tuple % m_rest);
            let fx = &f.values[head * d..(head + 1) * d];
            for (k, fk) in fx.iter().enumerate() {
                if fk.is_zero() {
                    continue;
                }
                let coeff = c * fk;
                for (t, s) in self.algebra.product(a0, k) {
                    values[t * m_rest + rest] += &(&coeff * s);
                }
            }
        }
        Ok(Chain { degree: n - p, values })
    }

    pub fn cap_product(&self, f: &Cochain, z: &Chain) -> Result<Chain, HochschildError> {
        if f.degree > z.degree {
            return Err(HochschildError::DegreeUnderflow { p: f.degree, n: z.degree });
        }
        if !self.is_cocycle(f)? {
            return Err(HochschildError::NotACocycle(f.degree));
        }
        if !self.is_cycle(z)? {
            return Err(HochschildError::NotACycle(z.degree));
        }
        self.cap_chain_level(f, z)
    }

    /// The degree-0 cochain with value `x`.
    pub fn constant_cochain(&self, x: &[CycScalar]) -> Cochain {
        Cochain { degree: 0, values: x.to_vec() }
    }
}

fn collect_sparse(mut entries: Vec<(usize, CycScalar)>) -> SparseVec {
    entries.sort_unstable_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, c) in entries {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Normalized Hochschild homology dims with the default configuration.
pub fn hh_homology_dims(a: &Algebra, maxdeg: usize) -> Result<HHResult, HochschildError> {
    Hochschild::normalized(a).homology_dims(maxdeg)
}

/// Normalized Hochschild cohomology dims with the default configuration.
pub fn hh_cohomology_dims(a: &Algebra, maxdeg: usize) -> Result<HHResult, HochschildError> {
    Hochschild::normalized(a).cohomology_dims(maxdeg)
}

/// The Hochschild chain complex truncated at `maxdeg`.
pub fn bar_chain_complex(a: &Algebra, maxdeg: usize, normalized: bool) -> Result<ChainComplex, HochschildError> {
    Hochschild::new(a, normalized, HochschildConfig::default()).chain_complex(maxdeg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field, matrix_algebra, truncated_poly};

    #[test]
    fn field_complex() {
        let k = field();
        let c = bar_chain_complex(&k, 3, false).unwrap();
        assert_eq!(c.dims(), &[1, 1, 1, 1]);
        assert!(c.squares_to_zero());
        // alternating zero / identity
        assert!(c.map(0).is_zero());
        assert_eq!(c.map(1), &SparseMatrix::identity(1));
        assert_eq!(hh_homology_dims(&k, 3).unwrap().dims, vec![1, 0, 0, 0]);
        assert_eq!(hh_cohomology_dims(&k, 3).unwrap().dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers_both_routes() {
        let a = truncated_poly(2).unwrap();
        let norm = Hochschild::normalized(&a).homology_dims(4).unwrap();
        let plain = Hochschild::new(&a, false, HochschildConfig::default()).homology_dims(4).unwrap();
        assert_eq!(norm.dims, vec![2, 1, 1, 1, 1]);
        assert_eq!(plain.dims, norm.dims);
    }

    #[test]
    fn matrix_algebra_is_separable() {
        let a = matrix_algebra(2).unwrap();
        assert_eq!(hh_cohomology_dims(&a, 2).unwrap().dims, vec![1, 0, 0]);
        assert_eq!(hh_homology_dims(&a, 2).unwrap().dims, vec![1, 0, 0]);
    }

    #[test]
    fn size_guard_truncates_top() {
        let a = matrix_algebra(2).unwrap();
        let config = HochschildConfig { degree_cap: 10, size_guard: 4 * 3 };
        let h = Hochschild::new(&a, true, config);
        let r = h.homology_dims(1).unwrap();
        assert!(r.top_incomplete);
        assert_eq!(r.dims[0], 1);
        assert!(matches!(h.homology_dims(2), Err(HochschildError::SizeGuardExceeded { .. })));
        assert!(matches!(h.homology_dims(11), Err(HochschildError::DegreeCapExceeded { .. })));
    }

    #[test]
    fn underflow() {
        let a = truncated_poly(2).unwrap();
        let h = Hochschild::normalized(&a);
        let f = Cochain { degree: 1, values: vec![CycScalar::zero(); 2] };
        let z = Chain { degree: 0, values: vec![CycScalar::zero(); 2] };
        assert_eq!(h.cap_product(&f, &z), Err(HochschildError::DegreeUnderflow { p: 1, n: 0 }));
    }
}
