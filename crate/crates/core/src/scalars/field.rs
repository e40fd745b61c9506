//! Per-order tables for Q(ζ_n) = Q[x]/Φ_n(x).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Cached data for one cyclotomic field.
#[derive(Debug)]
pub(crate) struct CycloField {
    pub phi: usize,
    /// Φ_n, lowest degree first, monic of degree `phi`.
    pub poly: Vec<i64>,
    /// `powers[k]` is x^k mod Φ_n (length `phi`), for k < max(n, 2·phi − 1).
    pub powers: Vec<Vec<i64>>,
}

pub(crate) fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let f = field(d);
            p = poly_div_exact(&p, &f.poly);
        }
    }
    p
}

fn build(n: u32) -> CycloField {
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    debug_assert_eq!(phi, euler_phi(n));
    let count = (n as usize).max(2 * phi).max(1);
    let mut powers = Vec::with_capacity(count);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] = cur[j]
                    .checked_sub(top.checked_mul(poly[j]).expect("cyclotomic table overflow"))
                    .expect("cyclotomic table overflow");
            }
        }
    }
    CycloField { phi, poly, powers }
}

fn registry() -> &'static RwLock<HashMap<u32, Arc<CycloField>>> {
    static REG: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn field(n: u32) -> Arc<CycloField> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(f) = registry().read().expect("field registry poisoned").get(&n) {
        return f.clone();
    }
    let built = Arc::new(build(n));
    registry()
        .write()
        .expect("field registry poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(field(1).poly, vec![-1, 1]);
        assert_eq!(field(2).poly, vec![1, 1]);
        assert_eq!(field(3).poly, vec![1, 1, 1]);
        assert_eq!(field(4).poly, vec![1, 0, 1]);
        assert_eq!(field(6).poly, vec![1, -1, 1]);
        assert_eq!(field(12).poly, vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn totient() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u32 + 1), e);
        }
    }

    #[test]
    fn power_table_wraps_at_order() {
        let f = field(5);
        // x^5 = 1 in Q(ζ_5)
        let mut one = vec![0; 4];
        one[0] = 1;
        assert_eq!(f.powers[0], one);
        assert_eq!(f.powers[5], one);
    }
}
