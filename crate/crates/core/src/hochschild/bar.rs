use crate::algebra::Algebra;
use crate::linalg::{axpy, SparseVec};
use crate::scalars::CycScalar;

/// Interior tensor factors of the bar construction: either all of A
/// (unnormalized) or a basis of Ā = A / K·1 (normalized).
///
/// Ā is identified with the span of the basis vectors other than the pivot
/// p of the unit; the class of x is x − (x_p / u_p)·u.
#[derive(Clone, Debug)]
pub struct BarBasis {
    dim: usize,
    interior: Vec<usize>,
    slot: Vec<Option<usize>>,
    pivot: Option<(usize, Vec<CycScalar>)>,
    /// Reduced products of interior basis elements, `products[s·m + t]`.
    products: Vec<SparseVec>,
}

impl BarBasis {
    pub fn new(a: &Algebra, normalized: bool) -> Self {
        let dim = a.dim();
        let pivot = if normalized {
            let unit = a.unit();
            let p = unit.iter().position(|c| !c.is_zero()).expect("unit is nonzero");
            let up_inv = unit[p].inv().expect("nonzero pivot");
            Some((p, unit.iter().map(|u| u * &up_inv).collect()))
        } else {
            None
        };
        let interior: Vec<usize> = (0..dim).filter(|&k| pivot.as_ref().is_none_or(|(p, _)| k != *p)).collect();
        let mut slot = vec![None; dim];
        for (s, &k) in interior.iter().enumerate() {
            slot[k] = Some(s);
        }
        let mut bar = BarBasis { dim, interior, slot, pivot, products: Vec::new() };
        let m = bar.interior.len();
        let mut products = Vec::with_capacity(m * m);
        for &x in &bar.interior {
            for &y in &bar.interior {
                products.push(bar.reduce(a.product(x, y)));
            }
        }
        bar.products = products;
        bar
    }

    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    /// Number of interior basis elements.
    pub fn interior_dim(&self) -> usize {
        self.interior.len()
    }

    /// Algebra basis index of interior slot `s`.
    pub fn interior(&self, s: usize) -> usize {
        self.interior[s]
    }

    pub fn is_normalized(&self) -> bool {
        self.pivot.is_some()
    }

    /// Class in the interior factor of an algebra vector, in slot coordinates.
    pub fn reduce(&self, x: &[(usize, CycScalar)]) -> SparseVec {
        match &self.pivot {
            None => x.to_vec(),
            Some((p, ratio)) => {
                let xp = x.iter().find(|(k, _)| k == p).map(|(_, c)| c.clone());
                let mut v: SparseVec = x.iter().filter(|(k, _)| k != p).cloned().collect();
                if let Some(xp) = xp {
                    let correction: SparseVec = ratio
                        .iter()
                        .enumerate()
                        .filter(|(k, c)| k != p && !c.is_zero())
                        .map(|(k, c)| (k, c.clone()))
                        .collect();
                    v = axpy(&v, &-xp, &correction);
                }
                v.into_iter().map(|(k, c)| (self.slot[k].expect("interior index"), c)).collect()
            }
        }
    }

    /// Reduced product of interior slots `s` and `t`.
    pub fn product(&self, s: usize, t: usize) -> &SparseVec {
        &self.products[s * self.interior.len() + t]
    }

    /// m^n, or `None` on overflow.
    pub fn tuple_count(&self, n: usize) -> Option<usize> {
        self.interior.len().checked_pow(n as u32)
    }

    /// Digits of a tuple index, most significant first.
    pub fn decode(&self, mut index: usize, n: usize, out: &mut [usize]) {
        let m = self.interior.len();
        for k in (0..n).rev() {
            out[k] = index % m;
            index /= m;
        }
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        let m = self.interior.len();
        digits.iter().fold(0, |acc, &d| acc * m + d)
    }
}
