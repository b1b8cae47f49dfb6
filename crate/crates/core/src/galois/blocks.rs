//! Exact detection of block systems. For `k | n`, the polynomial `R_k`
//! whose roots are the sums over `k`-subsets of roots has an integer factor
//! `prod_blocks (y - block sum)` exactly when the blocks are permuted by the
//! Galois group, provided `R_k` is squarefree. Candidate partitions come
//! from numerical roots; the factor is then verified by exact division.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::resolvent::tschirnhaus_by;
use crate::ffpoly::FpPoly;
use crate::intpoly::IntPoly;

/// Transforms tried after the identity when a resolvent is not squarefree.
/// Cubes are needed when block sums vanish identically, as for `g(x^3)`.
fn transforms() -> Vec<IntPoly> {
    let mut out: Vec<IntPoly> = (0..=3).map(|c| IntPoly::from_i64(&[0, c, 1])).collect();
    out.extend((0..=3).map(|c| IntPoly::from_i64(&[0, c, 1, 1])));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BlockWitness {
    pub block_size: usize,
    /// `h` with the witness found on the roots `h(x_i)`.
    pub transform: Option<IntPoly>,
    /// `prod (y - block sum)`, a factor of the subset-sum resolvent.
    pub factor: IntPoly,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Power sums `p_1..=p_m` of the roots of a monic `f`.
fn power_sums(f: &IntPoly, m: usize) -> Vec<BigInt> {
    let n = f.degree();
    // e_i with sign: f = x^n + c_1 x^(n-1) + ..., c_i = f.coeff(n - i)
    let c = |i: usize| if i <= n { f.coeff(n - i) } else { BigInt::zero() };
    let mut p = vec![BigInt::zero(); m + 1];
    p[0] = BigInt::from(n);
    for k in 1..=m {
        let mut s = -BigInt::from(k) * c(k);
        for i in 1..k {
            s -= c(i) * &p[k - i];
        }
        p[k] = s;
    }
    p
}

/// Binomial convolution of exponential-generating coefficient lists.
fn egf_mul(a: &[BigInt], b: &[BigInt], binom: &[Vec<BigInt>]) -> Vec<BigInt> {
    let m = a.len();
    (0..m).map(|d| (0..=d).map(|i| &binom[d][i] * &a[i] * &b[d - i]).sum()).collect()
}

/// Monic polynomial whose roots are the `k`-subset sums of the roots of `f`.
fn subset_sum_resolvent(f: &IntPoly, k: usize) -> IntPoly {
    let n = f.degree();
    let m = binomial(n, k);
    let p = power_sums(f, m);
    let mut binom = vec![vec![BigInt::one()]];
    for d in 1..=m {
        let prev = &binom[d - 1];
        let row = (0..=d)
            .map(|i| if i == 0 || i == d { BigInt::one() } else { &prev[i - 1] + &prev[i] })
            .collect();
        binom.push(row);
    }
    // pi_j = sum_i exp(j t x_i), with coefficient d equal to j^d p_d
    let pi: Vec<Vec<BigInt>> =
        (0..=k).map(|j| (0..=m).map(|d| BigInt::from(j).pow(d as u32) * &p[d]).collect()).collect();
    // elementary symmetric functions of exp(t x_i), by Newton's identities
    let mut e: Vec<Vec<BigInt>> = vec![(0..=m).map(|d| if d == 0 { BigInt::one() } else { BigInt::zero() }).collect()];
    for r in 1..=k {
        let mut acc = vec![BigInt::zero(); m + 1];
        for j in 1..=r {
            let term = egf_mul(&e[r - j], &pi[j], &binom);
            for (a, t) in acc.iter_mut().zip(term) {
                if j % 2 == 1 {
                    *a += t;
                } else {
                    *a -= t;
                }
            }
        }
        e.push(acc.into_iter().map(|a| a / BigInt::from(r)).collect());
    }
    let sums = &e[k];
    // power sums of the resolvent roots to its coefficients
    let mut el = vec![BigInt::one()];
    for d in 1..=m {
        let mut s = BigInt::zero();
        for i in 1..=d {
            let t = &el[d - i] * &sums[i];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        el.push(s / BigInt::from(d));
    }
    let coeffs = (0..=m).rev().map(|d| if d % 2 == 0 { el[d].clone() } else { -el[d].clone() }).collect();
    IntPoly::new(coeffs)
}

/// Squarefree over `Q`, shown by a prime where the reduction stays
/// squarefree of full degree.
fn squarefree_mod_some_prime(g: &IntPoly) -> bool {
    crate::intpoly::integer::primes_up_to_cached(crate::intpoly::integer::SHARED_BOUND)
        .iter()
        .skip(3)
        .take(40)
        .any(|&p| {
            let gp = FpPoly::from_intpoly(g, p);
            gp.degree() == g.degree() && gp.is_squarefree()
        })
}

/// Roots of a monic polynomial by Aberth's iteration.
fn complex_roots(f: &IntPoly) -> Option<Vec<Complex64>> {
    let c: Vec<f64> = f.coeffs().iter().map(|a| a.to_f64()).collect::<Option<_>>()?;
    let n = f.degree();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> =
        (0..n).map(|i| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * i as f64 / n as f64)).collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let (mut v, mut d) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        for a in c[..n].iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-14 {
            return Some(z);
        }
    }
    None
}

/// Partitions of `0..n` into blocks of size `k`, each listed with its
/// smallest element first.
fn block_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: Vec<usize>, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = rest[0];
        let others = &rest[1..];
        for combo in combinations(others, k - 1) {
            let mut block = vec![first];
            block.extend(&combo);
            let remaining = others.iter().copied().filter(|x| !combo.contains(x)).collect();
            cur.push(block);
            go(remaining, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go((0..n).collect(), k, &mut Vec::new(), &mut out);
    out
}

fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if items.len() < r {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = combinations(&items[1..], r - 1)
        .into_iter()
        .map(|mut c| {
            c.insert(0, items[0]);
            c
        })
        .collect();
    with.extend(combinations(&items[1..], r));
    with
}

/// Nearest integer polynomial to `prod (y - s_j)`, if every coefficient is
/// close to an integer.
fn rounded_product(sums: &[Complex64]) -> Option<IntPoly> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &s in sums {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * s;
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for z in c {
        let r = z.re.round();
        let tol = 1e-6 * (1.0 + r.abs());
        if (z.re - r).abs() > tol || z.im.abs() > tol || r.abs() > 1e15 {
            return None;
        }
        out.push(BigInt::from(r as i64));
    }
    Some(IntPoly::new(out))
}

/// A block system of an irreducible monic `f`, if one is found with blocks
/// of some proper size.
pub(crate) fn find_blocks(f: &IntPoly) -> Option<BlockWitness> {
    let n = f.degree();
    let sizes: Vec<usize> = (2..n).filter(|k| n % k == 0).collect();
    if sizes.is_empty() || !f.is_monic() {
        return None;
    }
    for &k in &sizes {
        let candidates = std::iter::once(None).chain(transforms().into_iter().map(Some));
        for transform in candidates {
            let g = match &transform {
                None => f.clone(),
                Some(h) => tschirnhaus_by(f, h),
            };
            let r = subset_sum_resolvent(&g, k);
            if !squarefree_mod_some_prime(&r) {
                continue;
            }
            // one squarefree resolvent decides this block size
            let roots = complex_roots(&g)?;
            for part in block_partitions(n, k) {
                let sums: Vec<Complex64> = part.iter().map(|b| b.iter().map(|&i| roots[i]).sum()).collect();
                let Some(q) = rounded_product(&sums) else { continue };
                if r.div_exact(&q).is_some() {
                    return Some(BlockWitness { block_size: k, transform, factor: q });
                }
            }
            break;
        }
    }
    None
}
