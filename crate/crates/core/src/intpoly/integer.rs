//! Integer factorization and the diagnostics built on it.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Primes up to `limit` by a plain sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|&(_, &b)| b).map(|(i, _)| i as u64).collect()
}

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub(crate) const SHARED_BOUND: u64 = 10_000;

/// Primes up to `bound`, sieved once per distinct bound.
pub fn primes_up_to_cached(bound: u64) -> &'static [u64] {
    use std::sync::OnceLock;
    static DEFAULT: OnceLock<Vec<u64>> = OnceLock::new();
    static OTHER: OnceLock<std::sync::Mutex<std::collections::BTreeMap<u64, &'static [u64]>>> = OnceLock::new();
    if bound == SHARED_BOUND {
        return DEFAULT.get_or_init(|| primes_up_to(bound));
    }
    let mut map = OTHER.get_or_init(Default::default).lock().expect("prime cache");
    map.entry(bound).or_insert_with(|| primes_up_to(bound).leak())
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first 24 prime bases; exact below 2^64.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in primes_up_to(89).iter() {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        // Brent's cycle detection
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 0u64;
        while g == 1 {
            if power == lam {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn pollard_rho_big(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if n.is_even() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y) = (two.clone(), two.clone());
        let mut g = BigUint::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    }
}

fn split_cofactor(n: BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        push_factor(out, n);
        return;
    }
    let d = match n.to_u64() {
        Some(small) => BigUint::from(pollard_rho_u64(small)),
        None => pollard_rho_big(&n),
    };
    split_cofactor(&n / &d, out);
    split_cofactor(d, out);
}

/// Prime factorization of `|m|`, primes ascending.
pub fn factor_integer(m: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    if m.is_zero() {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut n = m.abs().to_biguint().expect("nonnegative");
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if let Some(mut small) = n.to_u64() {
        for &p in trial_primes() {
            if p * p > small {
                break;
            }
            let mut e = 0;
            while small % p == 0 {
                small /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigUint::from(p), e));
            }
        }
        n = BigUint::from(small);
    } else {
        for &p in trial_primes() {
            let bp = BigUint::from(p);
            if &bp * &bp > n {
                break;
            }
            let mut e = 0;
            loop {
                let (q, r) = n.div_rem(&bp);
                if !r.is_zero() {
                    break;
                }
                n = q;
                e += 1;
            }
            if e > 0 {
                out.push((bp, e));
            }
            if let Some(small) = n.to_u64() {
                // finish in machine words
                let rest = factor_integer(&BigInt::from(small))?;
                for (q, e) in rest {
                    for _ in 0..e {
                        push_factor(&mut out, q.clone());
                    }
                }
                n = BigUint::one();
                break;
            }
        }
    }
    split_cofactor(n, &mut out);
    out.sort();
    Ok(out)
}

/// Arithmetic facts about a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerDiagnostics {
    pub is_perfect_square: bool,
    pub is_squarefull: bool,
    pub radical: BigUint,
    pub prime_factorization: Vec<(BigUint, u32)>,
    pub omega: usize,
}

pub fn integer_diagnostics(m: &BigInt) -> Result<IntegerDiagnostics> {
    let fac = factor_integer(m)?;
    let radical = fac.iter().fold(BigUint::one(), |acc, (p, _)| acc * p);
    Ok(IntegerDiagnostics {
        is_perfect_square: !m.is_negative() && fac.iter().all(|(_, e)| e % 2 == 0),
        is_squarefull: fac.iter().all(|(_, e)| *e >= 2),
        radical,
        omega: fac.len(),
        prime_factorization: fac,
    })
}

/// Exponent of the prime `p` in `m != 0`.
pub fn valuation(m: &BigInt, p: &BigUint) -> u32 {
    let p = BigInt::from(p.clone());
    let mut m = m.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() || m.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Positive divisors of `|m| > 0`, ascending.
pub fn divisors(m: &BigInt) -> Result<Vec<BigInt>> {
    let fac = factor_integer(m)?;
    let mut out = vec![BigInt::one()];
    for (p, e) in fac {
        let p = BigInt::from(p);
        let current = out.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            out.extend(current.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: i64) -> IntegerDiagnostics {
        integer_diagnostics(&BigInt::from(m)).unwrap()
    }

    #[test]
    fn diagnostics_examples() {
        let d = diag(72);
        assert!(d.is_squarefull);
        assert_eq!(d.radical, BigUint::from(6u32));
        assert_eq!(d.omega, 2);
        let d = diag(12);
        assert!(!d.is_squarefull);
        assert_eq!(d.radical, BigUint::from(6u32));
        let d = diag(50000);
        assert!(d.is_squarefull);
        assert_eq!(d.radical, BigUint::from(10u32));
        assert_eq!(d.omega, 2);
        assert!(diag(-36).is_squarefull && !diag(-36).is_perfect_square);
        assert!(diag(1).is_squarefull && diag(1).is_perfect_square);
        assert!(integer_diagnostics(&BigInt::zero()).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..200).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, primes_up_to(199));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
        let m61 = (BigUint::one() << 61usize) - BigUint::one();
        let m89 = (BigUint::one() << 89usize) - BigUint::one();
        assert!(is_prime(&m61) && is_prime(&m89));
        assert!(!is_prime(&(&m61 * &m89)));
    }

    #[test]
    fn factors_large_semiprimes() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(998_244_353u64);
        let fac = factor_integer(&(&p * &q * &q)).unwrap();
        assert_eq!(
            fac,
            vec![(BigUint::from(1_000_003u64), 1), (BigUint::from(998_244_353u64), 2)]
        );
        let m61 = (BigInt::one() << 61usize) - BigInt::one();
        let fac = factor_integer(&(&m61 * BigInt::from(1_000_003u64) * BigInt::from(12))).unwrap();
        assert_eq!(fac.len(), 4);
        assert_eq!(fac.last().unwrap().0, m61.to_biguint().unwrap());
    }

    #[test]
    fn divisor_list() {
        let ds: Vec<i64> = divisors(&BigInt::from(-12)).unwrap().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(50000), &BigUint::from(5u32)), 5);
        assert_eq!(valuation(&BigInt::from(-50000), &BigUint::from(2u32)), 4);
        assert_eq!(valuation(&BigInt::from(7), &BigUint::from(2u32)), 0);
    }
}
