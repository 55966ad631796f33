//! Laurent polynomials over F₂ in one variable t.
//!
//! A polynomial is stored as its lowest exponent plus a packed bit vector of
//! coefficients starting at that exponent. The lowest bit is always set, so
//! the representation is canonical and the zero polynomial has no bits.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use super::gf2::Gf2;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    bits: Vec<u64>,
}

// Packed F₂[t] arithmetic on little-endian word vectors.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn degree(v: &[u64]) -> Option<usize> {
    let last = v.iter().rposition(|&w| w != 0)?;
    Some(last * 64 + 63 - v[last].leading_zeros() as usize)
}

fn trailing_zeros(v: &[u64]) -> Option<usize> {
    let first = v.iter().position(|&w| w != 0)?;
    Some(first * 64 + v[first].trailing_zeros() as usize)
}

fn bit(v: &[u64], i: usize) -> bool {
    v.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
}

fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let words = shift / 64;
    let offset = shift % 64;
    let needed = src.len() + words + 1;
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    for (k, &w) in src.iter().enumerate() {
        if offset == 0 {
            dst[k + words] ^= w;
        } else {
            dst[k + words] ^= w << offset;
            dst[k + words + 1] ^= w >> (64 - offset);
        }
    }
}

fn shr(v: &[u64], shift: usize) -> Vec<u64> {
    let words = shift / 64;
    let offset = shift % 64;
    let mut out = Vec::with_capacity(v.len().saturating_sub(words));
    for k in words..v.len() {
        let lo = v[k] >> offset;
        let hi = if offset == 0 || k + 1 >= v.len() {
            0
        } else {
            v[k + 1] << (64 - offset)
        };
        out.push(lo | hi);
    }
    trim(&mut out);
    out
}

fn clmul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() + 1];
    let Some(da) = degree(a) else { return Vec::new() };
    for i in 0..=da {
        if bit(a, i) {
            xor_shifted(&mut out, b, i);
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder in F₂[t]; `b` must be nonzero.
fn divrem(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = Vec::new();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        xor_shifted(&mut r, b, shift);
        trim(&mut r);
        if q.len() <= shift / 64 {
            q.resize(shift / 64 + 1, 0);
        }
        q[shift / 64] ^= 1 << (shift % 64);
    }
    trim(&mut q);
    (q, r)
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The unit `t^e`.
    pub fn monomial(e: i32) -> Self {
        LaurentPoly { low: e, bits: vec![1] }
    }

    /// `t`.
    pub fn t() -> Self {
        Self::monomial(1)
    }

    /// Builds `Σ t^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = i32>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p += Self::monomial(e);
        }
        p
    }

    fn from_parts(low: i32, mut bits: Vec<u64>) -> Self {
        trim(&mut bits);
        match trailing_zeros(&bits) {
            None => Self::zero(),
            Some(0) => LaurentPoly { low, bits },
            Some(tz) => LaurentPoly {
                low: low + tz as i32,
                bits: shr(&bits, tz),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    /// Units of F₂[t,t⁻¹] are exactly the monomials.
    pub fn is_unit(&self) -> bool {
        self.bits.len() == 1 && self.bits[0] == 1
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.low == 0
    }

    pub fn low_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exponent(&self) -> Option<i32> {
        degree(&self.bits).map(|d| self.low + d as i32)
    }

    /// Difference between the highest and lowest exponent; the Euclidean size
    /// used for pivoting. Zero has no width.
    pub fn width(&self) -> Option<u32> {
        degree(&self.bits).map(|d| d as u32)
    }

    pub fn exponents(&self) -> Vec<i32> {
        let Some(d) = degree(&self.bits) else { return Vec::new() };
        (0..=d)
            .filter(|&i| bit(&self.bits, i))
            .map(|i| self.low + i as i32)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Multiplication by the unit `t^e`.
    pub fn shifted(&self, e: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + e,
            bits: self.bits.clone(),
        }
    }

    /// Representative with lowest exponent zero (the associate in F₂[t] with
    /// nonzero constant term).
    pub fn normalized(&self) -> Self {
        self.shifted(-self.low)
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> Gf2 {
        Gf2(self.support_size() % 2 == 1)
    }

    /// Euclidean division: `self = q·d + r` with `r = 0` or
    /// `width(r) < width(d)`.
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (q, r) = divrem(&self.bits, &d.bits);
        (
            LaurentPoly::from_parts(self.low - d.low, q),
            LaurentPoly::from_parts(self.low, r),
        )
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn checked_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Multiplicity of (1 + t) as a factor. Zero has no such multiplicity.
    pub fn one_plus_t_multiplicity(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let f = LaurentPoly::from_exponents([0, 1]);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.checked_div(&f) {
            p = q;
            m += 1;
        }
        Some(m)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let mut bits = Vec::new();
        xor_shifted(&mut bits, &self.bits, (self.low - low) as usize);
        xor_shifted(&mut bits, &rhs.bits, (rhs.low - low) as usize);
        LaurentPoly::from_parts(low, bits)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = &*self + &rhs;
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_parts(self.low + rhs.low, clmul(&self.bits, &rhs.bits))
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<Gf2> for LaurentPoly {
    fn from(b: Gf2) -> Self {
        if b.0 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(exps: &[i32]) -> LaurentPoly {
        LaurentPoly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn canonical_form() {
        assert!(p(&[]).is_zero());
        assert!(p(&[3, 3]).is_zero());
        assert_eq!(p(&[2, 5]).low_exponent(), Some(2));
        assert_eq!(p(&[2, 5]).width(), Some(3));
        assert_eq!(p(&[-70, 80]).exponents(), vec![-70, 80]);
        assert_eq!(p(&[1, 2]).normalized(), p(&[0, 1]));
    }

    #[test]
    fn units_are_monomials() {
        assert!(p(&[-4]).is_unit());
        assert!(!p(&[0, 1]).is_unit());
        assert!(!LaurentPoly::zero().is_unit());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[0, 1]);
        assert_eq!(&a * &a, p(&[0, 2]));
        assert_eq!(&a + &p(&[1]), p(&[0]));
        assert_eq!(&p(&[-1]) * &p(&[0, 1, 65]), p(&[-1, 0, 64]));
        let big = p(&[0, 63, 64, 130]);
        assert_eq!(&(&big * &a) + &(&big * &p(&[1])), big);
    }

    #[test]
    fn euclidean_division() {
        let a = p(&[-3, 0, 2, 7]);
        let d = p(&[1, 2, 4]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.width().unwrap_or(0) < d.width().unwrap());
        assert_eq!(p(&[0, 2]).checked_div(&p(&[0, 1])), Some(p(&[0, 1])));
        assert_eq!(p(&[0]).checked_div(&p(&[0, 1])), None);
        assert_eq!(p(&[0, 3]).checked_div(&p(&[5])), Some(p(&[-5, -2])));
    }

    #[test]
    fn evaluation_and_multiplicity() {
        assert_eq!(p(&[0, 1]).eval_at_one(), Gf2(false));
        assert_eq!(p(&[0, 1, 2]).eval_at_one(), Gf2(true));
        assert_eq!(p(&[0, 2]).one_plus_t_multiplicity(), Some(2));
        assert_eq!(p(&[5]).one_plus_t_multiplicity(), Some(0));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1, 3]).to_string(), "t^-1 + 1 + t + t^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
