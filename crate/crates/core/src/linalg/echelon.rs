//! Gaussian elimination over Q(ζ_n): rank, reduced echelon form, nullspaces,
//! linear solves and cokernels.

use crate::scalars::CycScalar;

use super::sparse::{axpy, SparseMatrix, SparseVec};
use super::subspace::Subspace;
use super::LinalgError;

/// Tuning knobs for elimination. Results never depend on them.
#[derive(Clone, Debug)]
pub struct EliminationOptions {
    /// Matrices denser than this fraction are eliminated in dense storage.
    pub dense_threshold: f64,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        EliminationOptions { dense_threshold: 0.3 }
    }
}

/// Incremental row echelon form. Each stored row has leading entry 1 at its pivot.
pub(crate) struct Echelon {
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub(crate) fn new(cols: usize) -> Self {
        Echelon { pivot_row: vec![None; cols], rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Clears every pivot column from `v`.
    pub(crate) fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut pos = 0;
        while pos < v.len() {
            let c = v[pos].0;
            match self.pivot_row[c] {
                Some(p) => {
                    let f = -&v[pos].1;
                    v = axpy(&v, &f, &self.rows[p]);
                    pos = v.partition_point(|(i, _)| *i < c);
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Adds `v` to the row space; returns the pivot column if it was independent.
    pub(crate) fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let v = self.reduce(v);
        let (lead, lv) = v.first()?.clone();
        let inv = lv.inv().expect("nonzero leading entry");
        let row: SparseVec = if lv.is_one() { v } else { v.into_iter().map(|(i, x)| (i, &x * &inv)).collect() };
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        Some(lead)
    }

    /// Fully reduced rows sorted by pivot column.
    pub(crate) fn into_reduced(self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut order: Vec<(usize, usize)> =
            self.rows.iter().enumerate().map(|(k, r)| (r[0].0, k)).collect();
        order.sort_unstable();
        let pivots: Vec<usize> = order.iter().map(|(c, _)| *c).collect();
        let mut rows: Vec<SparseVec> = order.into_iter().map(|(_, k)| self.rows[k].clone()).collect();
        // clear each pivot column from all rows above it, largest pivot first
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let (above, rest) = rows.split_at_mut(k);
            let prow = &rest[0];
            for r in above.iter_mut() {
                if let Ok(idx) = r.binary_search_by_key(&c, |(i, _)| *i) {
                    let f = -&r[idx].1;
                    *r = axpy(r, &f, prow);
                }
            }
        }
        (rows, pivots)
    }
}

fn dense_rref(mut m: Vec<Vec<CycScalar>>, cols: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows = m
        .into_iter()
        .take(r)
        .map(|row| row.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    (rows, pivots)
}

fn dense_rank(mut m: Vec<Vec<CycScalar>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let prow = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank(m: &SparseMatrix) -> usize {
    rank_with(m, &EliminationOptions::default())
}

/// Rank by elimination. Sparse inputs are ordered Markowitz-style: columns by
/// ascending fill, rows by ascending length, so pivots land on sparse lines.
pub fn rank_with(m: &SparseMatrix, opts: &EliminationOptions) -> usize {
    if m.is_zero() {
        return 0;
    }
    if m.density() > opts.dense_threshold {
        return dense_rank(m.to_dense(), m.cols());
    }
    let mut counts = vec![0usize; m.cols()];
    for row in m.row_data() {
        for (c, _) in row {
            counts[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&c| counts[c]);
    let mut position = vec![0usize; m.cols()];
    for (p, &c) in order.iter().enumerate() {
        position[c] = p;
    }
    let mut rows: Vec<SparseVec> = m
        .row_data()
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut v: SparseVec = r.iter().map(|(c, x)| (position[*c], x.clone())).collect();
            v.sort_unstable_by_key(|(c, _)| *c);
            v
        })
        .collect();
    rows.sort_by_key(Vec::len);
    let mut ech = Echelon::new(m.cols());
    for v in rows {
        ech.insert(v);
        if ech.rank() == m.cols() {
            break;
        }
    }
    ech.rank()
}

/// Reduced row echelon form in natural column order.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &SparseMatrix) -> Rref {
    rref_with(m, &EliminationOptions::default())
}

pub fn rref_with(m: &SparseMatrix, opts: &EliminationOptions) -> Rref {
    let (rows, pivots) = if m.density() > opts.dense_threshold {
        dense_rref(m.to_dense(), m.cols())
    } else {
        let mut input: Vec<&SparseVec> = m.row_data().iter().filter(|r| !r.is_empty()).collect();
        input.sort_by_key(|r| r.len());
        let mut ech = Echelon::new(m.cols());
        for v in input {
            ech.insert(v.clone());
        }
        ech.into_reduced()
    };
    Rref { cols: m.cols(), rows, pivots }
}

/// Basis of `{ v : m·v = 0 }`.
pub fn nullspace(m: &SparseMatrix) -> Subspace {
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    // column f of the reduced rows, for every free f
    let mut free_entries: Vec<SparseVec> = vec![Vec::new(); m.cols()];
    for (k, row) in r.rows.iter().enumerate() {
        for (c, v) in row {
            if !is_pivot[*c] {
                free_entries[*c].push((r.pivots[k], -v));
            }
        }
    }
    let mut basis = Vec::new();
    for f in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = std::mem::take(&mut free_entries[f]);
        v.push((f, CycScalar::one()));
        v.sort_unstable_by_key(|(i, _)| *i);
        basis.push(v);
    }
    Subspace::from_vectors(m.cols(), basis)
}

/// Some `x` with `m·x = b`.
pub fn solve(m: &SparseMatrix, b: &[CycScalar]) -> Result<Vec<CycScalar>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::ShapeMismatch { expected: m.rows(), found: b.len() });
    }
    let rhs: Vec<SparseVec> = b.iter().map(|x| if x.is_zero() { vec![] } else { vec![(0, x.clone())] }).collect();
    let aug = m.hstack(&SparseMatrix::from_sparse_rows(1, rhs));
    let r = rref(&aug);
    let n = m.cols();
    if r.pivots.last() == Some(&n) {
        return Err(LinalgError::NoSolution);
    }
    let mut x = vec![CycScalar::zero(); n];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[p] = v.clone();
            }
        }
    }
    Ok(x)
}

/// Complement of a column space together with the projection that kills it.
#[derive(Clone, Debug)]
pub struct Cokernel {
    /// Standard basis vectors at the coordinates that are not pivots of the column space.
    pub complement: Subspace,
    /// `(rows − rank) × rows`; `projection · m = 0`.
    pub projection: SparseMatrix,
    /// Ambient coordinates of the complement basis, in order.
    pub free_coords: Vec<usize>,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.free_coords.len()
    }

    /// Inclusion of the complement into the ambient space (`rows × dim`).
    pub fn section(&self) -> SparseMatrix {
        let ambient = self.projection.cols();
        let triplets = self.free_coords.iter().enumerate().map(|(k, &c)| (c, k, CycScalar::one()));
        SparseMatrix::from_triplets(ambient, self.free_coords.len(), triplets)
    }
}

pub fn cokernel_projector(m: &SparseMatrix) -> Cokernel {
    let r = rref(&m.transpose());
    let ambient = m.rows();
    let mut pivot_row: Vec<Option<usize>> = vec![None; ambient];
    for (k, &p) in r.pivots.iter().enumerate() {
        pivot_row[p] = Some(k);
    }
    let free_coords: Vec<usize> = (0..ambient).filter(|&c| pivot_row[c].is_none()).collect();
    let mut slot = vec![usize::MAX; ambient];
    for (k, &c) in free_coords.iter().enumerate() {
        slot[c] = k;
    }
    let mut triplets = Vec::new();
    for i in 0..ambient {
        match pivot_row[i] {
            None => triplets.push((slot[i], i, CycScalar::one())),
            Some(k) => {
                for (c, v) in &r.rows[k] {
                    if *c != i {
                        triplets.push((slot[*c], i, -v));
                    }
                }
            }
        }
    }
    let projection = SparseMatrix::from_triplets(free_coords.len(), ambient, triplets);
    let complement = Subspace::from_vectors(
        ambient,
        free_coords.iter().map(|&c| vec![(c, CycScalar::one())]).collect(),
    );
    Cokernel { complement, projection, free_coords }
}
