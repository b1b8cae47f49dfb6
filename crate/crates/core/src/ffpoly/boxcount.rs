//! Exact counts of monic integer polynomials in a box whose reductions
//! modulo given primes have prescribed minimal index.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::factor::squarefree_decomposition;
use super::fourier::{check_cap, index_tuple, tuple_index};
use super::poly::FpPoly;
use crate::error::{Error, Result};
use crate::intpoly::is_prime_u64;

pub const DEFAULT_BOX_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxCount {
    pub count: u64,
    /// Product of the per-prime densities of `{ind >= k_i}`.
    pub density: BigRational,
    /// `(2H+1)^n` times the density.
    pub density_prediction: f64,
    /// `count / density_prediction`; `None` when the prediction is zero.
    pub ratio: Option<f64>,
}

/// `ind(f) = n - deg rad(f)` for every monic tuple of degree `n` mod `p`.
pub fn index_table(p: u64, n: usize, cap: u64) -> Result<Vec<u8>> {
    let size = check_cap(p, n, cap)? as usize;
    Ok((0..size)
        .map(|idx| {
            let f = FpPoly::from_monic_tuple(p, &index_tuple(idx, p, n));
            let rad_degree: usize = squarefree_decomposition(&f).iter().map(|(g, _)| g.degree()).sum();
            (n - rad_degree) as u8
        })
        .collect())
}

pub fn poisson_box_count(n: usize, h: u64, conditions: &[(u64, usize)]) -> Result<BoxCount> {
    poisson_box_count_capped(n, h, conditions, DEFAULT_BOX_CAP, super::fourier::DEFAULT_CAP)
}

pub fn poisson_box_count_capped(
    n: usize,
    h: u64,
    conditions: &[(u64, usize)],
    box_cap: u64,
    table_cap: u64,
) -> Result<BoxCount> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let side = 2 * h + 1;
    let box_size = (side as f64).powi(n as i32);
    if box_size > box_cap as f64 {
        return Err(Error::ResourceLimit { what: format!("box (2*{h}+1)^{n}"), needed: box_size, cap: box_cap as f64 });
    }
    for (i, &(p, _)) in conditions.iter().enumerate() {
        if !is_prime_u64(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if conditions[..i].iter().any(|&(q, _)| q == p) {
            return Err(Error::invalid(format!("prime {p} listed twice")));
        }
    }
    let mut good: Vec<Vec<bool>> = Vec::new();
    let mut density = BigRational::one();
    for &(p, k) in conditions {
        let table = index_table(p, n, table_cap)?;
        let mask: Vec<bool> = table.iter().map(|&ind| ind as usize >= k).collect();
        let hits = mask.iter().filter(|&&b| b).count();
        density *= BigRational::new(BigInt::from(hits), BigInt::from(table.len()));
        good.push(mask);
    }
    let primes: Vec<u64> = conditions.iter().map(|&(p, _)| p).collect();
    let modulus: u64 = primes.iter().product();
    let residue_space = (modulus as f64).powi(n as i32);
    let count = if residue_space <= box_size {
        count_by_residues(n, h, &primes, &good, modulus)
    } else {
        count_directly(n, h, &primes, &good)
    };
    let pred_exact = &density * BigRational::from_integer(BigInt::from(side).pow(n as u32));
    let density_prediction = pred_exact.to_f64().unwrap_or(f64::INFINITY);
    let ratio = (!pred_exact.is_zero()).then(|| count as f64 / density_prediction);
    Ok(BoxCount { count, density, density_prediction, ratio })
}

fn admissible(tuple: &[u64], primes: &[u64], good: &[Vec<bool>]) -> bool {
    primes.iter().zip(good).all(|(&p, mask)| {
        let reduced: Vec<u64> = tuple.iter().map(|&a| a % p).collect();
        mask[tuple_index(&reduced, p)]
    })
}

/// Sum over residue tuples mod `C = prod p_i` of the indicator times the
/// number of box points in that class.
fn count_by_residues(n: usize, h: u64, primes: &[u64], good: &[Vec<bool>], modulus: u64) -> u64 {
    let side = 2 * h + 1;
    // class sizes of [-H, H] modulo C
    let mut class = vec![0u64; modulus as usize];
    for a in 0..side {
        let r = (a as i64 - h as i64).rem_euclid(modulus as i64) as usize;
        class[r] += 1;
    }
    let total = (modulus as usize).pow(n as u32);
    let mut count = 0;
    for idx in 0..total {
        let r = index_tuple(idx, modulus, n);
        let weight: u64 = r.iter().map(|&x| class[x as usize]).product();
        if weight > 0 && admissible(&r, primes, good) {
            count += weight;
        }
    }
    count
}

fn count_directly(n: usize, h: u64, primes: &[u64], good: &[Vec<bool>]) -> u64 {
    let side = 2 * h + 1;
    let total = (side as usize).pow(n as u32);
    let lcm: u64 = primes.iter().product();
    let mut count = 0;
    for idx in 0..total {
        let r: Vec<u64> = index_tuple(idx, side, n)
            .into_iter()
            .map(|a| (a as i64 - h as i64).rem_euclid(lcm as i64) as u64)
            .collect();
        if admissible(&r, primes, good) {
            count += 1;
        }
    }
    count
}
