use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::scalars::CycScalar;

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, CycScalar)>;

/// `a + f·b` for sorted sparse vectors.
pub fn axpy(a: &[(usize, CycScalar)], f: &CycScalar, b: &[(usize, CycScalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            if !f.is_zero() {
                out.push((b[j].0, f * &b[j].1));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_dense(v: &[CycScalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(v: &[(usize, CycScalar)], len: usize) -> Vec<CycScalar> {
    let mut out = vec![CycScalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub(crate) fn order_of<'a>(values: impl IntoIterator<Item = &'a CycScalar>) -> u32 {
    values.into_iter().fold(1u32, |acc, x| acc.lcm(&x.order()))
}

/// Row-major sparse matrix over Q(ζ_n).
///
/// Every stored entry is nonzero and its order divides `field_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field_order: u32,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, field_order: 1, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &CycScalar::one())
    }

    pub fn scalar(n: usize, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        let data = (0..n).map(|i| vec![(i, c.clone())]).collect();
        SparseMatrix { rows: n, cols: n, field_order: c.order(), data }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, CycScalar)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, CycScalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            let slot = acc[r].entry(c).or_default();
            *slot += &v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self::from_sparse_rows(cols, data)
    }

    /// Rows must already be sorted and zero-free.
    pub fn from_sparse_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        let field_order = order_of(data.iter().flatten().map(|(_, v)| v));
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(data.iter().flatten().all(|(c, v)| *c < cols && !v.is_zero()));
        SparseMatrix { rows: data.len(), cols, field_order, data }
    }

    /// Builds from sparse columns.
    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                data[*r].push((c, v.clone()));
            }
        }
        Self::from_sparse_rows(columns.len(), data)
    }

    pub fn from_dense(rows: &[Vec<CycScalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense matrix");
        Self::from_sparse_rows(cols, rows.iter().map(|r| sparse_from_dense(r)).collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<CycScalar>> =
            rows.iter().map(|r| r.iter().map(|&x| CycScalar::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, CycScalar)] {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> CycScalar {
        match self.data[r].binary_search_by_key(&c, |(i, _)| *i) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => CycScalar::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &CycScalar)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, field_order: self.field_order, data }
    }

    pub fn column(&self, c: usize) -> SparseVec {
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            if let Ok(k) = row.binary_search_by_key(&c, |(i, _)| *i) {
                out.push((r, row[k].1.clone()));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<CycScalar>> {
        self.data.iter().map(|r| dense_from_sparse(r, self.cols)).collect()
    }

    pub fn matmul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        let slot = acc.entry(*c).or_default();
                        *slot += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Self::from_sparse_rows(other.cols, data)
    }

    pub fn mul_vec(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut acc = CycScalar::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc += &(a * &v[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_sparse_vec(&self, v: &[(usize, CycScalar)]) -> SparseVec {
        let dense = dense_from_sparse(v, self.cols);
        sparse_from_dense(&self.mul_vec(&dense))
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&CycScalar::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&CycScalar::from_int(-1), other)
    }

    /// `self + f·other`.
    pub fn axpy(&self, f: &CycScalar, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, f, b)).collect();
        Self::from_sparse_rows(self.cols, data)
    }

    pub fn scale(&self, c: &CycScalar) -> SparseMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|r| r.iter().map(|(i, v)| (*i, v * c)).collect()).collect();
        Self::from_sparse_rows(self.cols, data)
    }

    pub fn trace(&self) -> CycScalar {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product; row (i_a, i_b) is numbered `i_a·rows_b + i_b`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, a) in ra {
                    for (cb, b) in rb {
                        row.push((ca * other.cols + cb, a * b));
                    }
                }
                data.push(row);
            }
        }
        Self::from_sparse_rows(self.cols * other.cols, data)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut data = self.data.clone();
        for row in &other.data {
            data.push(row.iter().map(|(c, v)| (c + self.cols, v.clone())).collect());
        }
        Self::from_sparse_rows(self.cols + other.cols, data)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                r
            })
            .collect();
        Self::from_sparse_rows(self.cols + other.cols, data)
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> SparseMatrix {
        let data = self.data[r0..r1]
            .iter()
            .map(|row| {
                row.iter().filter(|(c, _)| *c >= c0 && *c < c1).map(|(c, v)| (c - c0, v.clone())).collect()
            })
            .collect();
        Self::from_sparse_rows(c1 - c0, data)
    }

    /// Debug dump: header `rows cols field_order`, then one `(row, col, scalar)` per line.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.field_order);
        for (r, c, v) in self.triplets() {
            let _ = writeln!(out, "({r}, {c}, {v})");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities() {
        assert_eq!(SparseMatrix::identity(2).kron(&SparseMatrix::identity(3)), SparseMatrix::identity(6));
    }

    #[test]
    fn kron_with_scalar_scales() {
        let m = SparseMatrix::from_ints(&[&[1, 2], &[0, 3]]);
        let c = CycScalar::root_of_unity(3, 1);
        let one = SparseMatrix::scalar(1, &c);
        assert_eq!(one.kron(&m), m.scale(&c));
        assert_eq!(m.kron(&one), m.scale(&c));
    }

    #[test]
    fn kron_index_convention() {
        let a = SparseMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let b = SparseMatrix::from_ints(&[&[0, 0, 0], &[0, 0, 5], &[0, 0, 0]]);
        let k = a.kron(&b);
        // a[0][1]·b[1][2] sits at (0·3+1, 1·3+2)
        assert_eq!(k.get(1, 5), CycScalar::from_int(5));
        assert_eq!(k.nnz(), 1);
    }

    #[test]
    fn matmul_and_trace() {
        let a = SparseMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = SparseMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.matmul(&b), SparseMatrix::from_ints(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.trace(), CycScalar::from_int(5));
        assert_eq!(a.transpose().get(0, 1), CycScalar::from_int(3));
    }

    #[test]
    fn dump_format() {
        let m = SparseMatrix::from_ints(&[&[0, -1], &[0, 0]]);
        assert_eq!(m.dump(), "2 2 1\n(0, 1, -1)\n");
    }

    #[test]
    fn triplets_sum_duplicates() {
        let m = SparseMatrix::from_triplets(
            1,
            1,
            [(0, 0, CycScalar::from_int(1)), (0, 0, CycScalar::from_int(-1))],
        );
        assert!(m.is_zero());
    }
}
