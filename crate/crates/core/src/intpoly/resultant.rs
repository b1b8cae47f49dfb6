//! Fraction-free determinants and resultants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Integral domain with exact division, as needed by Bareiss elimination.
///
/// Operations return `None` on overflow (fixed-width types) or when a
/// division is not exact.
pub trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl ExactRing for i128 {
    fn ring_zero() -> Self {
        0
    }
    fn ring_one() -> Self {
        1
    }
    fn is_ring_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if *d == 0 || self % d != 0 {
            None
        } else {
            self.checked_div(*d)
        }
    }
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl ExactRing for IntPoly {
    fn ring_zero() -> Self {
        IntPoly::zero()
    }
    fn ring_one() -> Self {
        IntPoly::one()
    }
    fn is_ring_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        IntPoly::div_exact(self, d)
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det<T: ExactRing>(mut m: Vec<Vec<T>>) -> Option<T> {
    let n = m.len();
    if n == 0 {
        return Some(T::ring_one());
    }
    let mut negate = false;
    let mut prev = T::ring_one();
    for k in 0..n - 1 {
        if m[k][k].is_ring_zero() {
            let pivot = (k + 1..n).find(|&i| !m[i][k].is_ring_zero());
            match pivot {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Some(T::ring_zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].mul(&m[k][k])?;
                let b = m[i][k].mul(&m[k][j])?;
                m[i][j] = a.sub(&b)?.div_exact(&prev)?;
            }
            m[i][k] = T::ring_zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        Some(det)
    }
}

/// Sylvester matrix of `f` (degree `m`) and `g` (degree `n`), coefficient
/// slices lowest degree first with nonzero leading entries.
pub fn sylvester<T: ExactRing>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![T::ring_zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![T::ring_zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two polynomials given by nonempty coefficient slices with
/// nonzero leading coefficients, at least one of positive degree.
pub fn resultant_generic<T: ExactRing>(f: &[T], g: &[T]) -> Option<T> {
    bareiss_det(sylvester(f, g))
}

/// `Res(f, g)` over `Z`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::invalid("resultant of two zero polynomials"));
    }
    if f.is_zero() || g.is_zero() {
        let other = if f.is_zero() { g } else { f };
        return Ok(if other.is_constant() { BigInt::one() } else { BigInt::zero() });
    }
    let (m, n) = (f.degree(), g.degree());
    if m == 0 && n == 0 {
        return Ok(BigInt::one());
    }
    if m == 0 {
        return Ok(Pow::pow(&f.leading(), n));
    }
    if n == 0 {
        return Ok(Pow::pow(&g.leading(), m));
    }
    if let (Some(fs), Some(gs)) = (f.to_i128(), g.to_i128()) {
        if let Some(r) = resultant_generic(&fs, &gs) {
            return Ok(BigInt::from(r));
        }
    }
    Ok(resultant_generic(f.coeffs(), g.coeffs()).expect("exact Bareiss over Z"))
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    if f.degree() == 0 {
        return Err(Error::invalid("discriminant of a constant polynomial"));
    }
    let n = f.degree();
    let res = resultant(f, &f.derivative())?;
    let lc = f.leading();
    let d = ExactRing::div_exact(&res, &lc).expect("lc(f) divides Res(f, f')");
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Whether `m` is a perfect square (negative numbers are not).
pub fn is_perfect_square(m: &BigInt) -> bool {
    if m.is_negative() {
        return false;
    }
    let r = m.sqrt();
    &(&r * &r) == m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    /// Cofactor expansion, independent of Bareiss.
    fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][j] * laplace_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[1, 0, 1])).unwrap(), BigInt::from(5));
        assert_eq!(resultant(&p(&[3, 1, 4]), &p(&[1])).unwrap(), BigInt::one());
        // root-product oracle: g(i) g(-i) with g = x^2 - 1
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        assert!(resultant(&IntPoly::zero(), &IntPoly::zero()).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        assert_eq!(discriminant(&p(&[0, -1, 0, 1])).unwrap(), BigInt::from(4));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 0, 0, 1])).unwrap(), BigInt::from(50000));
        assert_eq!(discriminant(&p(&[5, 3, 1])).unwrap(), BigInt::from(9 - 20));
        assert!(discriminant(&p(&[7])).is_err());
    }

    #[test]
    fn quintic_disc_matches_sylvester_cofactor_oracle() {
        let f = p(&[-2, 0, 0, 0, 0, 1]);
        let m = sylvester(f.coeffs(), f.derivative().coeffs());
        let det = laplace_det(&m);
        // (-1)^10 * Res / lc
        assert_eq!(det, BigInt::from(50000));
        assert_eq!(BigInt::from(5).pow(5u32) * BigInt::from(2).pow(4u32), BigInt::from(50000));
    }

    #[test]
    fn i128_and_bigint_paths_agree() {
        let f = p(&[7, -3, 11, 2, -5]);
        let g = p(&[-4, 9, 1, 6]);
        let small = resultant_generic(&f.to_i128().unwrap(), &g.to_i128().unwrap()).unwrap();
        let big = resultant_generic(f.coeffs(), g.coeffs()).unwrap();
        assert_eq!(BigInt::from(small), big);
        assert_eq!(big, laplace_det(&sylvester(f.coeffs(), g.coeffs())));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 40;
        let f = p(&[big, big - 1, 3, 1]);
        let g = p(&[-big, 5, big]);
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r, laplace_det(&sylvester(f.coeffs(), g.coeffs())));
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigInt::from(81)));
        assert!(is_perfect_square(&BigInt::zero()));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(!is_perfect_square(&BigInt::from(50000)));
    }
}
