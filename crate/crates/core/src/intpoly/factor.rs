//! Factorization over `Q` by Zassenhaus: squarefree split, factor modulo a
//! good prime, Hensel lift, recombine subsets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::integer::{divisors, primes_up_to};
use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::ffpoly::factor::{distinct_degree_split, factor_mod_p};
use crate::ffpoly::FpPoly;

/// `unit * content * prod factor_i^e_i`, factors primitive with positive
/// leading coefficient, sorted by (degree, coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntFactorization {
    pub unit: i8,
    /// Positive integer content of the input.
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl IntFactorization {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(BigInt::from(self.unit) * &self.content);
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// `(degree, multiplicity)` of each factor, sorted.
    pub fn shape(&self) -> Vec<(usize, u32)> {
        let mut s: Vec<(usize, u32)> = self.factors.iter().map(|(g, e)| (g.degree(), *e)).collect();
        s.sort_unstable();
        s
    }
}

pub fn factor_over_q(f: &IntPoly) -> Result<IntFactorization> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let unit: i8 = if f.leading().is_negative() { -1 } else { 1 };
    let content = f.content();
    let g = f.primitive_part();
    let mut factors = Vec::new();
    if g.degree() > 0 {
        for (s, e) in squarefree_decomposition_z(&g) {
            for h in factor_squarefree(&s) {
                factors.push((h, e));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    Ok(IntFactorization { unit, content, factors })
}

/// Yun's algorithm on a primitive polynomial with positive leading
/// coefficient: `f = prod s_i^i` with `s_i` squarefree and coprime.
pub fn squarefree_decomposition_z(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides b");
        let c = d.div_exact(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

fn good_primes() -> &'static [u64] {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(2000).into_iter().skip(1).collect())
}

const MUSSER_PRIMES: usize = 6;

/// Irreducible factors of a squarefree primitive polynomial with positive
/// leading coefficient.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPoly::x()).expect("x divides f");
        let mut out = vec![IntPoly::x()];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let lc = f.leading();
    let full = (1u64 << n) | 1;
    let mut mask = u64::MAX;
    let mut best: Option<(usize, u64)> = None;
    let mut tried = 0;
    for &p in good_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_intpoly(f, p);
        if fp.degree() != n || !fp.is_squarefree() {
            continue;
        }
        let parts = distinct_degree_split(&fp.monic());
        let mut m: u64 = 1;
        let mut count = 0;
        for (g, d) in &parts {
            let k = g.degree() / d;
            for _ in 0..k {
                m |= m << d;
            }
            count += k;
        }
        mask &= m;
        if count == 1 || mask & ((1u64 << (n + 1)) - 1) == full {
            return vec![f.clone()];
        }
        if best.map_or(true, |(c, _)| count < c) {
            best = Some((count, p));
        }
        tried += 1;
        if tried >= MUSSER_PRIMES {
            break;
        }
    }
    let (_, p) = best.expect("some prime is good for a squarefree polynomial");
    zassenhaus(f, p)
}

fn zassenhaus(f: &IntPoly, p: u64) -> Vec<IntPoly> {
    let n = f.degree();
    let lc = f.leading();
    let fp = FpPoly::from_intpoly(f, p);
    let modular: Vec<FpPoly> = factor_mod_p(&fp).expect("nonzero").factors.into_iter().map(|(g, _)| g).collect();
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Coefficient bound for lc(f) times any monic-normalized factor.
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + BigInt::one());
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lc_inv = lc.mod_floor(&modulus).modinv(&modulus).expect("p does not divide lc");
    let monic_f: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let lifted = lift_tree(&monic_f, &modular, p, k);

    let mut remaining = f.clone();
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut progressed = false;
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let cur_lc = remaining.leading();
            let mut prod = vec![cur_lc.mod_floor(&modulus)];
            for &i in &combo {
                prod = mul_mod(&prod, &pool[i], &modulus);
            }
            let candidate = IntPoly::new(prod.iter().map(|c| symmetric(c, &modulus)).collect()).primitive_part();
            if let Some(q) = remaining.div_exact(&candidate) {
                found.push(candidate);
                remaining = q;
                for &i in combo.iter().rev() {
                    pool.remove(i);
                }
                progressed = true;
                break;
            }
            if !next_combination(&mut combo, pool.len()) {
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    if remaining.degree() > 0 {
        found.push(remaining.primitive_part());
    }
    found
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in out.iter_mut() {
        *c = c.mod_floor(m);
    }
    out
}

fn to_big(g: &FpPoly) -> Vec<BigInt> {
    g.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce_to_fp(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(p, a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect())
}

/// Lifts a monic factorization `f = prod g_i mod p` to `mod p^k` by a
/// balanced tree of two-factor lifts.
fn lift_tree(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |gs: &[FpPoly]| gs.iter().fold(FpPoly::one(p), |acc, g| acc.mul(g));
    let (a, b) = hensel_pair(f, &prod(left), &prod(right), p, k);
    let mut out = lift_tree(&a, left, p, k);
    out.extend(lift_tree(&b, right, p, k));
    out
}

/// Linear lifting of `f = a b mod p` (all monic) to `mod p^k`.
fn hensel_pair(f: &[BigInt], a0: &FpPoly, b0: &FpPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (g, s, t) = a0.xgcd(b0);
    debug_assert!(g.is_one());
    let _ = s;
    let pb = BigInt::from(p);
    let mut a = to_big(a0);
    let mut b = to_big(b0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let ab = mul_mod(&a, &b, &next);
        let len = f.len().max(ab.len());
        let e_int: Vec<BigInt> = (0..len)
            .map(|i| {
                let fi = f.get(i).cloned().unwrap_or_default();
                let abi = ab.get(i).cloned().unwrap_or_default();
                (fi - abi).mod_floor(&next) / &pj
            })
            .collect();
        let e = reduce_to_fp(&e_int, p);
        let alpha = t.mul(&e).rem(a0);
        let (beta, r) = e.sub(&b0.mul(&alpha)).div_rem(a0);
        debug_assert!(r.is_zero());
        a = add_scaled(&a, &alpha, &pj);
        b = add_scaled(&b, &beta, &pj);
        pj = next;
    }
    (a, b)
}

fn add_scaled(a: &[BigInt], delta: &FpPoly, scale: &BigInt) -> Vec<BigInt> {
    let len = a.len().max(delta.coeffs().len());
    (0..len)
        .map(|i| a.get(i).cloned().unwrap_or_default() + scale * BigInt::from(delta.coeff(i)))
        .collect()
}

/// Irreducibility over `Q` of a nonconstant polynomial.
pub fn is_irreducible_over_q(f: &IntPoly) -> Result<bool> {
    if f.degree() == 0 {
        return Ok(false);
    }
    Ok(factor_over_q(f)?.is_irreducible())
}

/// Distinct integer roots of a monic polynomial, ascending.
pub fn integer_roots(f: &IntPoly) -> Result<Vec<BigInt>> {
    if !f.is_monic() {
        return Err(Error::invalid(format!("{f} is not monic")));
    }
    let mut g = f.clone();
    let mut roots = Vec::new();
    if g.degree() > 0 && g.coeff(0).is_zero() {
        roots.push(BigInt::zero());
        while g.degree() > 0 && g.coeff(0).is_zero() {
            g = g.div_exact(&IntPoly::x()).expect("x divides");
        }
    }
    if g.degree() > 0 {
        for d in divisors(&g.coeff(0))? {
            for r in [d.clone(), -d] {
                if g.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Distinct integer roots of a monic polynomial by lifting its simple roots
/// modulo a prime where it stays squarefree. Unlike [`integer_roots`] this
/// never factors the constant term, which matters for resolvents with
/// large coefficients.
pub fn integer_roots_hensel(f: &IntPoly) -> Result<Vec<BigInt>> {
    if !f.is_monic() {
        return Err(Error::invalid(format!("{f} is not monic")));
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let g = f.gcd(&f.derivative());
    let sqf = if g.degree() == 0 { f.clone() } else { f.div_exact(&g.primitive_part()).expect("gcd divides") };
    let bound = sqf.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default() + 1u32;
    let p = super::integer::primes_up_to_cached(10_000)
        .iter()
        .copied()
        .skip(1)
        .find(|&p| FpPoly::from_intpoly(&sqf, p).is_squarefree())
        .expect("a squarefree integer polynomial stays squarefree modulo almost every prime");
    let pb = BigInt::from(p);
    let target = &bound * 2u32;
    let df = sqf.derivative();
    let mut roots = Vec::new();
    for r0 in crate::ffpoly::factor::roots(&FpPoly::from_intpoly(&sqf, p)) {
        let mut r = BigInt::from(r0);
        let mut m = pb.clone();
        while m <= target {
            m = &m * &m;
            let fr = sqf.eval(&r).mod_floor(&m);
            let dinv = sqf_inverse(&df.eval(&r), &m);
            r = (&r - fr * dinv).mod_floor(&m);
        }
        if &r * 2u32 > m {
            r -= &m;
        }
        if sqf.eval(&r).is_zero() {
            roots.push(r);
        }
    }
    roots.sort();
    Ok(roots)
}

fn sqf_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m).modinv(m).expect("simple root: derivative is a unit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::factor::degree_pattern;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn hensel_roots_match_divisor_roots() {
        for c in [vec![6, -5, -2, 1], vec![0, 0, 1], vec![-1, 0, 0, 0, 1], vec![-50000, 0, 0, 0, 0, 0, 1]] {
            let f = p(&c);
            assert_eq!(integer_roots_hensel(&f).unwrap(), integer_roots(&f).unwrap(), "{f}");
        }
        // (x - 10^12)(x + 3)^2
        let big = &(&IntPoly::linear_root(&BigInt::from(10i64.pow(12))) * &p(&[3, 1])) * &p(&[3, 1]);
        assert_eq!(integer_roots_hensel(&big).unwrap(), vec![BigInt::from(-3), BigInt::from(10i64.pow(12))]);
    }

    #[test]
    fn spec_examples() {
        let fac = factor_over_q(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let fac = factor_over_q(&p(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]);
        assert!(factor_over_q(&p(&[1, 0, 0, 0, 1])).unwrap().is_irreducible());
        assert!(factor_over_q(&IntPoly::zero()).is_err());
    }

    #[test]
    fn x4_plus_1_splits_modulo_every_prime() {
        // the recombination step is what proves irreducibility here
        for q in primes_up_to(60).into_iter().skip(1) {
            let pat = degree_pattern(&FpPoly::from_i64(q, &[1, 0, 0, 0, 1]));
            assert!(pat.parts().iter().all(|&d| d <= 2), "p={q} {pat}");
        }
        assert_eq!(zassenhaus(&p(&[1, 0, 0, 0, 1]), 3), vec![p(&[1, 0, 0, 0, 1])]);
    }

    #[test]
    fn content_unit_and_multiplicity() {
        // -6 (x - 1)^2 (x^2 + 1) x
        let f = &(&p(&[0, -6]) * &p(&[-1, 1]).pow(2)) * &p(&[1, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.unit, -1);
        assert_eq!(fac.content, BigInt::from(6));
        assert_eq!(fac.shape(), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn non_monic_factors() {
        let f = &(&p(&[1, 2]) * &p(&[-3, 0, 5])) * &p(&[7, 1, 3]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn swinnerton_dyer_style_many_modular_factors() {
        // x^4 - 10x^2 + 1 is irreducible but splits into linear or
        // quadratic factors modulo every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(factor_over_q(&f).unwrap().is_irreducible());
        let g = &f * &p(&[-2, 0, 1]);
        assert_eq!(factor_over_q(&g).unwrap().shape(), vec![(2, 1), (4, 1)]);
    }

    #[test]
    fn integer_root_search() {
        let f = &(&p(&[0, 1]) * &p(&[3, 1])) * &p(&[-2, 0, 0, 1]);
        assert_eq!(integer_roots(&f).unwrap(), vec![BigInt::from(-3), BigInt::zero()]);
    }

    /// Degree sets of factorizations modulo many primes rule out every
    /// proper factor degree.
    fn musser_proves_irreducible(g: &IntPoly) -> bool {
        let n = g.degree();
        let mut mask = u64::MAX;
        for q in primes_up_to(400) {
            let gp = FpPoly::from_intpoly(g, q);
            if gp.degree() != n || !gp.is_squarefree() {
                continue;
            }
            mask &= degree_pattern(&gp).subset_sums();
        }
        mask & ((1 << (n + 1)) - 1) == (1 << n) | 1
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn hensel_roots_agree(roots in proptest::collection::vec(-50i64..50, 1..5), extra in proptest::collection::vec(-9i64..9, 0..3)) {
            let mut f = IntPoly::one();
            for r in &roots {
                f = &f * &IntPoly::linear_root(&BigInt::from(*r));
            }
            let mut tail = extra.clone();
            tail.push(1);
            f = &f * &p(&tail);
            if f.coeff(0).is_zero() {
                return Ok(());
            }
            prop_assert_eq!(integer_roots_hensel(&f).unwrap(), integer_roots(&f).unwrap());
        }

        #[test]
        fn reassembles(a in proptest::collection::vec(-6i64..6, 1..4),
                       b in proptest::collection::vec(-6i64..6, 1..4),
                       c in proptest::collection::vec(-6i64..6, 1..3),
                       k in -3i64..4) {
            let mut fa = a.clone(); fa.push(1);
            let mut fb = b.clone(); fb.push(2);
            let f = &(&(&p(&fa) * &p(&fb)) * &p(&c)) * &p(&[k, 1]);
            prop_assume!(!f.is_zero());
            let fac = factor_over_q(&f).unwrap();
            prop_assert_eq!(fac.product(), f);
            for (g, _) in &fac.factors {
                prop_assert_eq!(g.content(), BigInt::one());
                prop_assert!(g.leading().is_positive());
                if g.degree() >= 2 && musser_proves_irreducible(g) {
                    prop_assert!(factor_over_q(g).unwrap().is_irreducible());
                }
            }
        }

        #[test]
        fn irreducible_by_degree_patterns_stays_whole(a in proptest::collection::vec(-20i64..20, 2..7)) {
            let mut c = a.clone(); c.push(1);
            let g = p(&c);
            if musser_proves_irreducible(&g) {
                prop_assert!(factor_over_q(&g).unwrap().is_irreducible());
            }
        }
    }
}
