use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{euler_phi, field};
use super::{Rational, ScalarError};

/// An element of Q(ζ_n) in the power basis 1, ζ, …, ζ^{φ(n)−1}.
///
/// Rational values are always stored with order 1, so the representation of a
/// value is unique once two operands are lifted to a common order.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycScalar { order: 1, coeffs: vec![Rational::from_integer(BigInt::from(v))] }
    }

    pub fn from_rational(q: Rational) -> Self {
        CycScalar { order: 1, coeffs: vec![q] }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        let f = field(n);
        let k = k.rem_euclid(n as i64) as usize;
        let coeffs = f.powers[k].iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        CycScalar { order: n, coeffs }.normalized()
    }

    /// Builds a value from power-basis coordinates; `coeffs` must have length φ(n).
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::BadOrder(order));
        }
        let phi = euler_phi(order);
        if coeffs.len() != phi {
            return Err(ScalarError::CoefficientCount { order, expected: phi, found: coeffs.len() });
        }
        Ok(CycScalar { order, coeffs }.normalized())
    }

    /// Order of the cyclotomic field the value is currently stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    fn normalized(mut self) -> Self {
        if self.order > 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            let c = std::mem::take(&mut self.coeffs[0]);
            return CycScalar { order: 1, coeffs: vec![c] };
        }
        self
    }

    /// Re-expresses the value in Q(ζ_target); `self.order` must divide `target`.
    pub(crate) fn lift(&self, target: u32) -> CycScalar {
        if self.order == target {
            return self.clone();
        }
        debug_assert_eq!(target % self.order, 0);
        let f = field(target);
        let step = (target / self.order) as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[(k * step) % target as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * Rational::from_integer(BigInt::from(r));
                }
            }
        }
        CycScalar { order: target, coeffs: out }
    }

    fn unify(a: &CycScalar, b: &CycScalar) -> (CycScalar, CycScalar) {
        let l = a.order.lcm(&b.order);
        (a.lift(l), b.lift(l))
    }

    pub fn add_ref(&self, other: &CycScalar) -> CycScalar {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
            return CycScalar { order: self.order, coeffs }.normalized();
        }
        if other.order == 1 {
            let mut out = self.clone();
            out.coeffs[0] += &other.coeffs[0];
            return out;
        }
        if self.order == 1 {
            let mut out = other.clone();
            out.coeffs[0] += &self.coeffs[0];
            return out;
        }
        let (a, b) = Self::unify(self, other);
        a.add_ref(&b)
    }

    pub fn sub_ref(&self, other: &CycScalar) -> CycScalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &Rational) -> CycScalar {
        if q.is_zero() {
            return CycScalar::zero();
        }
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul_ref(&self, other: &CycScalar) -> CycScalar {
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if self.order != other.order {
            let (a, b) = Self::unify(self, other);
            return a.mul_ref(&b);
        }
        let f = field(self.order);
        let phi = f.phi;
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&f.powers[k]) {
                if r != 0 {
                    *o += c * Rational::from_integer(BigInt::from(r));
                }
            }
        }
        CycScalar { order: self.order, coeffs: out }.normalized()
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<CycScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(CycScalar::from_rational(self.coeffs[0].recip()));
        }
        let f = field(self.order);
        let modulus: Vec<Rational> =
            f.poly.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        let s = poly_inverse_mod(&self.coeffs, &modulus);
        let mut coeffs = vec![Rational::zero(); f.phi];
        for (k, c) in s.into_iter().enumerate().take(f.phi) {
            coeffs[k] = c;
        }
        Ok(CycScalar { order: self.order, coeffs }.normalized())
    }

    pub fn div_ref(&self, other: &CycScalar) -> Result<CycScalar, ScalarError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Complex conjugation ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> CycScalar {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let f = field(self.order);
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&f.powers[(n - k) % n]) {
                if r != 0 {
                    *o += c * Rational::from_integer(BigInt::from(r));
                }
            }
        }
        CycScalar { order: self.order, coeffs: out }.normalized()
    }

    /// Floating-point image under ζ_n ↦ exp(2πi/n), as (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

/// Inverse of `a` modulo the monic `m` over Q. Assumes gcd(a, m) = 1.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }
    fn degree(p: &[Rational]) -> usize {
        p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
    fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let db = degree(b);
        let lead = b[db].clone();
        let mut rem = a.to_vec();
        trim(&mut rem);
        if degree(&rem) < db || rem.iter().all(Zero::is_zero) {
            return (vec![Rational::zero()], rem);
        }
        let mut quot = vec![Rational::zero(); degree(&rem) - db + 1];
        while !rem.iter().all(Zero::is_zero) && degree(&rem) >= db {
            let dr = degree(&rem);
            let c = &rem[dr] / &lead;
            for j in 0..=db {
                let t = &c * &b[j];
                rem[dr - db + j] -= t;
            }
            quot[dr - db] = c;
            trim(&mut rem);
        }
        (quot, rem)
    }
    fn mul_sub(s0: &[Rational], q: &[Rational], s1: &[Rational]) -> Vec<Rational> {
        // s0 - q * s1
        let len = s0.len().max(q.len() + s1.len() - 1);
        let mut out = vec![Rational::zero(); len];
        for (i, c) in s0.iter().enumerate() {
            out[i] += c;
        }
        for (i, x) in q.iter().enumerate() {
            for (j, y) in s1.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(&mut out);
        out
    }
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while !(degree(&r1) == 0) {
        let (q, r) = divmod(&r0, &r1);
        let s2 = mul_sub(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r1 is a nonzero constant c with s1·a ≡ c
    let c = r1[0].clone();
    debug_assert!(!c.is_zero());
    let (_, rem) = divmod(&s1, m);
    rem.into_iter().map(|x| x / &c).collect()
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.order == 1 || other.order == 1 {
            // normalized rationals never equal irrational values
            return false;
        }
        let (a, b) = Self::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        CycScalar::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        CycScalar::from_int(v)
    }
}

impl From<Rational> for CycScalar {
    fn from(q: Rational) -> Self {
        CycScalar::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $impl_fn:ident) => {
        impl $tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$impl_fn(rhs)
            }
        }
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$impl_fn(&rhs)
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$impl_fn(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
            if self.order > 1 {
                *self = std::mem::take(self).normalized();
            }
        } else {
            *self = self.add_ref(rhs);
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
            if self.order > 1 {
                *self = std::mem::take(self).normalized();
            }
        } else {
            *self = self.sub_ref(rhs);
        }
    }
}

impl std::iter::Sum for CycScalar {
    fn sum<I: Iterator<Item = CycScalar>>(iter: I) -> Self {
        let mut acc = CycScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycScalar {
    /// Canonical text form, e.g. `1/2 + 1/2*z3^1` or `-z4^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "z{}^{}", self.order, k)?;
            } else {
                write!(f, "{}*z{}^{}", fmt_rational(&abs), self.order, k)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(n, k)
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycScalar::from_int(-1));
        assert_eq!(&(&z(3, 0) + &z(3, 1)) + &z(3, 2), CycScalar::zero());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycScalar::from_int(-1));
        assert_eq!(z(2, 1), CycScalar::from_int(-1));
    }

    #[test]
    fn additive_identity() {
        let a = &z(5, 2) + &CycScalar::ratio(3, 7);
        assert_eq!(&CycScalar::zero() + &a, a);
        assert_eq!(&CycScalar::one() * &a, a);
    }

    #[test]
    fn inverses() {
        assert_eq!(CycScalar::from_int(2).inv().unwrap(), CycScalar::ratio(1, 2));
        assert_eq!(z(4, 1).inv().unwrap(), -z(4, 1));
        let one_plus = &CycScalar::one() + &z(3, 1);
        assert_eq!(one_plus.inv().unwrap(), -z(3, 1));
        let w = &CycScalar::one() + &z(5, 1);
        assert_eq!(&w * &w.inv().unwrap(), CycScalar::one());
        assert_eq!(CycScalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        let q = CycScalar::ratio(-5, 3);
        assert_eq!(q.conj(), q);
        assert_eq!(z(3, 1).conj(), z(3, 2));
        assert_eq!(z(8, 3).conj(), z(8, 5));
    }

    #[test]
    fn mixed_orders_agree_with_float_embedding() {
        let s = &z(4, 1) + &z(6, 1);
        assert_eq!(s.order(), 12);
        let (re, im) = s.to_complex();
        let t6 = std::f64::consts::PI / 3.0;
        assert!((re - t6.cos()).abs() < 1e-12);
        assert!((im - (1.0 + t6.sin())).abs() < 1e-12);
    }

    #[test]
    fn rationals_stay_order_one() {
        let v = &z(6, 1) + &z(6, 5); // 2cos(π/3) = 1
        assert!(v.is_rational());
        assert_eq!(v, CycScalar::one());
        assert_eq!(z(3, 1), z(6, 2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycScalar::zero().to_string(), "0");
        assert_eq!(CycScalar::ratio(-1, 2).to_string(), "-1/2");
        let v = &CycScalar::ratio(1, 2) + &(&CycScalar::ratio(1, 2) * &z(3, 1));
        assert_eq!(v.to_string(), "1/2 + 1/2*z3^1");
        assert_eq!((-z(4, 1)).to_string(), "-z4^1");
    }
}
