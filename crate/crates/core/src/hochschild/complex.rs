use rayon::prelude::*;

use crate::linalg::{rank, SparseMatrix};

/// Whether differentials lower or raise degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// d_n : C_n → C_{n−1}
    Homological,
    /// d^n : C^n → C^{n+1}
    Cohomological,
}

/// Spaces C_0 … C_top and the differentials between adjacent degrees.
///
/// `maps[i]` connects degrees i and i+1 in the direction given by the grading.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    grading: Grading,
    dims: Vec<usize>,
    maps: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(grading: Grading, dims: Vec<usize>, maps: Vec<SparseMatrix>) -> Self {
        assert_eq!(maps.len() + 1, dims.len(), "one map per adjacent pair of degrees");
        for (i, m) in maps.iter().enumerate() {
            let (src, dst) = match grading {
                Grading::Homological => (dims[i + 1], dims[i]),
                Grading::Cohomological => (dims[i], dims[i + 1]),
            };
            assert_eq!((m.rows(), m.cols()), (dst, src), "differential {i} has the wrong shape");
        }
        ChainComplex { grading, dims, maps }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The differential between degrees i and i+1.
    pub fn map(&self, i: usize) -> &SparseMatrix {
        &self.maps[i]
    }

    /// Index of the first composable pair whose composite is nonzero.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (0..self.maps.len().saturating_sub(1)).find(|&i| {
            let composite = match self.grading {
                Grading::Homological => self.maps[i].matmul(&self.maps[i + 1]),
                Grading::Cohomological => self.maps[i + 1].matmul(&self.maps[i]),
            };
            !composite.is_zero()
        })
    }

    pub fn squares_to_zero(&self) -> bool {
        self.first_nonzero_square().is_none()
    }

    /// Ranks of all differentials, computed in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        self.maps.par_iter().map(rank).collect()
    }

    /// dim H at degrees 0 … top−1. The top degree is left out because one of
    /// its differentials was not built.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.top_degree())
            .map(|k| {
                let below = if k == 0 { 0 } else { ranks[k - 1] };
                crate::linalg::homology_dim(self.dims[k], below, ranks[k])
            })
            .collect()
    }
}
