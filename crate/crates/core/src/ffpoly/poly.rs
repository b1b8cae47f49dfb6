use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::intpoly::IntPoly;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduces a big integer into `[0, p)`.
pub(crate) fn reduce_big(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Polynomial over `F_p`, coefficients in `[0, p)`, lowest degree first.
///
/// The zero polynomial is the empty vector. `p` must be prime and below
/// `2^63`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|a| a % p).collect();
        trim(&mut c);
        FpPoly { p, c }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i128;
        Self::new(p, coeffs.iter().map(|&a| (a as i128).rem_euclid(pi) as u64).collect())
    }

    pub fn from_intpoly(f: &IntPoly, p: u64) -> Self {
        let mut c: Vec<u64> = f.coeffs().iter().map(|a| reduce_big(a, p)).collect();
        trim(&mut c);
        FpPoly { p, c }
    }

    pub(crate) fn from_raw(p: u64, mut c: Vec<u64>) -> Self {
        trim(&mut c);
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1 % p] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        let k = k % self.p;
        FpPoly::from_raw(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        FpPoly::from_raw(self.p, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        FpPoly::from_raw(self.p, (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn neg(&self) -> Self {
        FpPoly::from_raw(self.p, self.c.iter().map(|&a| sub_mod(0, a, self.p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        if p <= u32::MAX as u64 {
            for (i, &a) in self.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.c.iter().enumerate() {
                    out[i + j] = (out[i + j] + a * b) % p;
                }
            }
        } else {
            for (i, &a) in self.c.iter().enumerate() {
                for (j, &b) in o.c.iter().enumerate() {
                    out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
                }
            }
        }
        FpPoly::from_raw(p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let dd = d.degree();
        let inv = inv_mod(d.leading(), p);
        let mut rem = self.c.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd];
            if top == 0 {
                continue;
            }
            let q = mul_mod(top, inv, p);
            quot[i] = q;
            for (j, &dc) in d.c.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(q, dc, p), p);
            }
        }
        (FpPoly::from_raw(p, quot), FpPoly::from_raw(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn mul_rem(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn pow_rem(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = FpPoly::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_rem(&b, m);
            }
            b = b.mul_rem(&b, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow_rem_big(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = FpPoly::one(self.p).rem(m);
        let b = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_rem(&acc, m);
            if e.bit(i) {
                acc = acc.mul_rem(&b, m);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FpPoly::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::from_raw(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mul_mod(a, i as u64 % p, p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = add_mod(mul_mod(acc, x, self.p), a, self.p);
        }
        acc
    }

    /// `self(x + s)`
    pub fn shift(&self, s: u64) -> Self {
        let p = self.p;
        let lin = FpPoly::new(p, vec![s % p, 1]);
        let mut acc = FpPoly::zero(p);
        for &a in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&FpPoly::from_raw(p, vec![a]));
        }
        acc
    }

    /// For `f` with `f' = 0`: the polynomial `g` with `g^p = f`.
    pub(crate) fn pth_root(&self) -> Self {
        let p = self.p as usize;
        FpPoly::from_raw(self.p, self.c.iter().step_by(p).copied().collect())
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Integer lift with coefficients in `[0, p)`.
    pub fn to_intpoly(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Integer lift with coefficients in `(-p/2, p/2]`.
    pub fn to_intpoly_symmetric(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|&a| if a > half { BigInt::from(a) - BigInt::from(self.p) } else { BigInt::from(a) })
                .collect(),
        )
    }

    /// Monic coefficient tuple `(a_1, ..., a_n)` of `x^n + a_1 x^(n-1) + ...`.
    pub fn monic_tuple(&self) -> Vec<u64> {
        debug_assert!(self.is_monic());
        let n = self.degree();
        (1..=n).map(|i| self.coeff(n - i)).collect()
    }

    /// Monic polynomial from `(a_1, ..., a_n)`.
    pub fn from_monic_tuple(p: u64, a: &[u64]) -> Self {
        let mut c: Vec<u64> = a.iter().rev().map(|&x| x % p).collect();
        c.push(1 % p);
        FpPoly::from_raw(p, c)
    }

}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[{}]({})", self.p, self)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_intpoly(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_5() {
        let a = FpPoly::from_i64(5, &[1, 0, 1]);
        let b = FpPoly::from_i64(5, &[2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(r, FpPoly::from_i64(5, &[0]));
        let (g, s, t) = a.xgcd(&FpPoly::from_i64(5, &[1, 1]));
        assert!(g.is_one());
        assert!(s.mul(&a).add(&t.mul(&FpPoly::from_i64(5, &[1, 1]))).is_one());
    }

    #[test]
    fn large_modulus_uses_wide_products() {
        let p = (1u64 << 61) - 1;
        let a = FpPoly::new(p, vec![p - 1, p - 2, 1]);
        let b = FpPoly::new(p, vec![3, p - 1]);
        let (q, r) = a.mul(&b).div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn shift_and_eval() {
        let f = FpPoly::from_i64(7, &[3, 0, 2, 1]);
        let g = f.shift(3);
        for x in 0..7 {
            assert_eq!(g.eval(x), f.eval((x + 3) % 7));
        }
    }
}
