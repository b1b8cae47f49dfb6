//! The discriminant as a polynomial in the constant term, and its own
//! discriminant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::integer::is_prime_u64;
use super::poly::{IntPoly, MonicIntPoly};
use super::resultant::{discriminant, resultant_generic};
use crate::error::{Error, Result};

fn monic_with_constant(prefix: &[BigInt], t: &BigInt) -> IntPoly {
    let mut coeffs = vec![t.clone()];
    coeffs.extend(prefix.iter().rev().cloned());
    coeffs.push(BigInt::one());
    IntPoly::new(coeffs)
}

fn check_prefix(n: usize, prefix: &[BigInt]) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("degree {n} < 2")));
    }
    if prefix.len() != n - 1 {
        return Err(Error::invalid(format!("prefix has {} entries, degree {n} needs {}", prefix.len(), n - 1)));
    }
    Ok(())
}

/// Exact interpolation through `(t, values[t])` for `t = 0..len`, via
/// forward differences and the falling-factorial basis.
pub fn interpolate_integer_points(values: &[BigInt]) -> Option<IntPoly> {
    let mut diffs = values.to_vec();
    let mut out = IntPoly::zero();
    let mut falling = IntPoly::one();
    let mut factorial = BigInt::one();
    for k in 0..values.len() {
        let (q, r) = diffs[0].div_rem(&factorial);
        if !r.is_zero() {
            return None;
        }
        out = &out + &falling.scale(&q);
        falling = &falling * &IntPoly::linear_root(&BigInt::from(k));
        factorial *= BigInt::from(k + 1);
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    Some(out)
}

/// `Disc_x(x^n + a_1 x^(n-1) + ... + a_(n-1) x + t)` as a polynomial in `t`.
pub fn disc_in_an(n: usize, prefix: &[BigInt]) -> Result<IntPoly> {
    check_prefix(n, prefix)?;
    let values: Vec<BigInt> = (0..n)
        .map(|t| discriminant(&monic_with_constant(prefix, &BigInt::from(t))))
        .collect::<Result<_>>()?;
    let interpolated = interpolate_integer_points(&values).expect("integer polynomial in t");
    debug_assert!(n > 4 || interpolated == disc_in_an_symbolic(n, prefix)?);
    Ok(interpolated)
}

pub fn disc_in_an_i64(n: usize, prefix: &[i64]) -> Result<IntPoly> {
    disc_in_an(n, &prefix.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>())
}

/// Same polynomial by fraction-free elimination on the Sylvester matrix
/// with entries in `Z[t]`.
pub fn disc_in_an_symbolic(n: usize, prefix: &[BigInt]) -> Result<IntPoly> {
    check_prefix(n, prefix)?;
    let mut f: Vec<IntPoly> = vec![IntPoly::x()];
    f.extend(prefix.iter().rev().map(|a| IntPoly::constant(a.clone())));
    f.push(IntPoly::one());
    let df: Vec<IntPoly> = (1..=n).map(|i| f[i].scale(&BigInt::from(i))).collect();
    let res = resultant_generic(&f, &df).expect("exact Bareiss over Z[t]");
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -&res } else { res })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleDiscriminant {
    pub value: BigInt,
    /// Set for `n = 2`, where `Disc_x` is linear in `t` and the value is the
    /// sentinel 1.
    pub degenerate: bool,
}

/// `Disc_t(Disc_x(x^n + a_1 x^(n-1) + ... + a_(n-1) x + t))`.
pub fn double_discriminant(n: usize, prefix: &[BigInt]) -> Result<DoubleDiscriminant> {
    check_prefix(n, prefix)?;
    if n == 2 {
        return Ok(DoubleDiscriminant { value: BigInt::one(), degenerate: true });
    }
    let inner = disc_in_an(n, prefix)?;
    Ok(DoubleDiscriminant { value: discriminant(&inner)?, degenerate: false })
}

pub fn double_discriminant_i64(n: usize, prefix: &[i64]) -> Result<DoubleDiscriminant> {
    double_discriminant(n, &prefix.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>())
}

pub fn double_discriminant_symbolic(n: usize, prefix: &[BigInt]) -> Result<DoubleDiscriminant> {
    check_prefix(n, prefix)?;
    if n == 2 {
        return Ok(DoubleDiscriminant { value: BigInt::one(), degenerate: true });
    }
    let inner = disc_in_an_symbolic(n, prefix)?;
    Ok(DoubleDiscriminant { value: discriminant(&inner)?, degenerate: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop3Check {
    /// `p^2 | Disc(f + p t)` for every `t` in `0..p`.
    pub persists_mod_p2: bool,
    /// `p | (d/d a_n) Disc(f)`.
    pub partial_an_div_p: bool,
}

pub fn prop3_check(f: &MonicIntPoly, p: u64) -> Result<Prop3Check> {
    if !is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let n = f.degree();
    let a_n = f.a_i(n).clone();
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    if n == 1 {
        // Disc of a linear polynomial is 1
        return Ok(Prop3Check { persists_mod_p2: false, partial_an_div_p: true });
    }
    let mut persists = true;
    for t in 0..p {
        let shifted = f.with_constant(&a_n + &pb * BigInt::from(t));
        if !discriminant(&shifted.to_intpoly())?.mod_floor(&p2).is_zero() {
            persists = false;
            break;
        }
    }
    let inner = disc_in_an(n, &f.a()[..n - 1])?;
    let partial = inner.derivative().eval(&a_n);
    Ok(Prop3Check { persists_mod_p2: persists, partial_an_div_p: partial.mod_floor(&pb).is_zero() })
}

/// `|DD|` is nonzero somewhere in `[-r, r]^(n-1)`: first witness in
/// lexicographic order.
pub fn find_nonvanishing_dd(n: usize, r: i64) -> Result<Option<(Vec<i64>, BigInt)>> {
    let len = n.checked_sub(1).filter(|&l| l > 0).ok_or_else(|| Error::invalid("degree must be >= 2"))?;
    let side = (2 * r + 1) as usize;
    for idx in 0..side.pow(len as u32) {
        let mut rest = idx;
        let prefix: Vec<i64> = (0..len)
            .map(|_| {
                let v = (rest % side) as i64 - r;
                rest /= side;
                v
            })
            .rev()
            .collect();
        let dd = double_discriminant_i64(n, &prefix)?;
        if !dd.degenerate && !dd.value.is_zero() {
            return Ok(Some((prefix, dd.value)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_traits::Signed;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn inner_examples() {
        assert_eq!(disc_in_an_i64(3, &[0, 1]).unwrap(), IntPoly::from_i64(&[-4, 0, -27]));
        assert_eq!(disc_in_an_i64(2, &[3]).unwrap(), IntPoly::from_i64(&[9, -4]));
        assert_eq!(disc_in_an_i64(3, &[0, 0]).unwrap(), IntPoly::from_i64(&[0, 0, -27]));
        assert!(disc_in_an_i64(1, &[]).is_err());
        assert!(disc_in_an_i64(3, &[1]).is_err());
    }

    #[test]
    fn dd_examples() {
        assert_eq!(double_discriminant_i64(3, &[0, 1]).unwrap().value, BigInt::from(-432));
        assert_eq!(double_discriminant_i64(3, &[0, 0]).unwrap().value, BigInt::zero());
        let deg = double_discriminant_i64(2, &[5]).unwrap();
        assert!(deg.degenerate && deg.value.is_one());
        assert!(find_nonvanishing_dd(4, 2).unwrap().is_some());
    }

    #[test]
    fn interpolation_matches_symbolic_on_small_boxes() {
        for n in 3..=4usize {
            let side = 5usize;
            for idx in 0..side.pow(n as u32 - 1) {
                let mut rest = idx;
                let prefix: Vec<i64> = (0..n - 1)
                    .map(|_| {
                        let v = (rest % side) as i64 - 2;
                        rest /= side;
                        v
                    })
                    .collect();
                let pre = big(&prefix);
                assert_eq!(double_discriminant(n, &pre).unwrap(), double_discriminant_symbolic(n, &pre).unwrap());
            }
        }
    }

    #[test]
    fn leading_term_is_n_to_the_n() {
        for n in 2..=6usize {
            let inner = disc_in_an(n, &big(&vec![1; n - 1])).unwrap();
            assert_eq!(inner.degree(), n - 1);
            assert_eq!(inner.leading().abs(), BigInt::from(n).pow(n as u32));
        }
    }

    #[test]
    fn prop3_examples() {
        let cube = MonicIntPoly::from_i64(&[0, 0, 0]).unwrap();
        assert_eq!(prop3_check(&cube, 3).unwrap(), Prop3Check { persists_mod_p2: true, partial_an_div_p: true });
        // Disc(x^2 + 1) = -4, prime to 3
        let q = MonicIntPoly::from_i64(&[0, 1]).unwrap();
        assert!(!prop3_check(&q, 3).unwrap().persists_mod_p2);
        assert!(prop3_check(&q, 4).is_err());
    }
}
