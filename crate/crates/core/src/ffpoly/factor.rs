//! Factorization over `F_p`: squarefree split, distinct-degree split,
//! Cantor-Zassenhaus equal-degree split.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::FpPoly;
use super::splitting::Partition;
use crate::error::{Error, Result};

/// Factorization `lc * prod P_i^e_i` with monic irreducible `P_i`, sorted
/// by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpFactorization {
    pub lc: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl FpFactorization {
    pub fn product(&self, p: u64) -> FpPoly {
        let mut acc = FpPoly::new(p, vec![self.lc]);
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }
}

/// Frobenius matrix rows: `x^(i p) mod f` for `i < deg f`.
pub(crate) struct Frobenius {
    modulus: FpPoly,
    rows: Vec<FpPoly>,
}

impl Frobenius {
    pub(crate) fn new(f: &FpPoly) -> Self {
        let p = f.modulus();
        let n = f.degree();
        let xp = FpPoly::x(p).pow_rem(p, f);
        let mut rows = Vec::with_capacity(n);
        let mut cur = FpPoly::one(p).rem(f);
        for _ in 0..n {
            rows.push(cur.clone());
            cur = cur.mul_rem(&xp, f);
        }
        Frobenius { modulus: f.clone(), rows }
    }

    /// `h^p mod f` for `h` reduced mod `f`.
    pub(crate) fn apply(&self, h: &FpPoly) -> FpPoly {
        let p = self.modulus.modulus();
        let n = self.modulus.degree();
        let mut out = vec![0u64; n];
        for (i, &hi) in h.coeffs().iter().enumerate() {
            if hi == 0 {
                continue;
            }
            for (j, &r) in self.rows[i].coeffs().iter().enumerate() {
                out[j] = (out[j] + super::poly::mul_mod(hi, r, p)) % p;
            }
        }
        FpPoly::new(p, out)
    }
}

/// Squarefree decomposition of a monic polynomial: `(g_i, i)` with the
/// `g_i` squarefree, pairwise coprime, and `f = prod g_i^i`.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, e) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree() > 0 {
        for (g, e) in squarefree_decomposition(&c.monic().pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out.sort_by_key(|(_, e)| *e);
    out
}

/// Distinct-degree split of a squarefree monic polynomial: `(g_d, d)` where
/// `g_d` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree_split(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let frob = Frobenius::new(f);
    let x = FpPoly::x(p).rem(f);
    let mut h = x.clone();
    let mut rest = f.clone();
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = frob.apply(&h);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            rest = rest.div_rem(&g).0;
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest.monic(), d));
    }
    out
}

fn seed_for(f: &FpPoly) -> u64 {
    let mut h = DefaultHasher::new();
    f.modulus().hash(&mut h);
    f.coeffs().hash(&mut h);
    h.finish()
}

/// Candidate splitting element for equal-degree factorization.
fn split_candidate(a: &FpPoly, d: usize, f: &FpPoly) -> FpPoly {
    let p = f.modulus();
    if p == 2 {
        // trace map a + a^2 + ... + a^(2^(d-1))
        let mut t = a.rem(f);
        let mut acc = t.clone();
        for _ in 1..d {
            t = t.mul_rem(&t, f);
            acc = acc.add(&t);
        }
        acc
    } else {
        // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p - 1)/2)
        let frob = Frobenius::new(f);
        let mut t = a.rem(f);
        let mut norm = t.clone();
        for _ in 1..d {
            t = frob.apply(&t);
            norm = norm.mul_rem(&t, f);
        }
        norm.pow_rem((p - 1) / 2, f).sub(&FpPoly::one(p))
    }
}

fn try_split(a: &FpPoly, d: usize, f: &FpPoly) -> Option<FpPoly> {
    let g = split_candidate(a, d, f).gcd(f);
    (g.degree() > 0 && g.degree() < f.degree()).then_some(g)
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Equal-degree split of a squarefree monic product of degree-`d`
/// irreducibles.
pub fn equal_degree_split(f: &FpPoly, d: usize) -> Vec<FpPoly> {
    let n = f.degree();
    if n == d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(f));
    let mut found = None;
    for _ in 0..64 {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        if let Some(g) = try_split(&a, d, f) {
            found = Some(g);
            break;
        }
    }
    if found.is_none() {
        let space = (n as u32).checked_mul(64 - p.leading_zeros()).unwrap_or(u32::MAX);
        if space < 64 && p.pow(n as u32) <= EXHAUSTIVE_LIMIT {
            // deterministic sweep over all residues of degree < n
            let total = p.pow(n as u32);
            for idx in 1..total {
                let mut c = Vec::with_capacity(n);
                let mut k = idx;
                for _ in 0..n {
                    c.push(k % p);
                    k /= p;
                }
                if let Some(g) = try_split(&FpPoly::new(p, c), d, f) {
                    found = Some(g);
                    break;
                }
            }
        } else {
            while found.is_none() {
                let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
                found = try_split(&a, d, f);
            }
        }
    }
    let g = found.expect("equal-degree split always succeeds");
    let h = f.div_rem(&g).0.monic();
    let mut out = equal_degree_split(&g, d);
    out.extend(equal_degree_split(&h, d));
    out
}

/// Complete factorization of a nonzero polynomial into monic irreducibles.
pub fn factor_mod_p(f: &FpPoly) -> Result<FpFactorization> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let lc = f.leading();
    let monic = f.monic();
    let mut factors = Vec::new();
    for (g, e) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree_split(&g) {
            for irr in equal_degree_split(&block, d) {
                factors.push((irr, e));
            }
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())).then(ea.cmp(eb))
    });
    Ok(FpFactorization { lc, factors })
}

/// Degrees of the irreducible factors of a squarefree polynomial.
pub fn degree_pattern(f: &FpPoly) -> Partition {
    let mut parts = Vec::new();
    for (g, d) in distinct_degree_split(&f.monic()) {
        for _ in 0..g.degree() / d {
            parts.push(d as u8);
        }
    }
    Partition::new(parts)
}

pub fn is_irreducible(f: &FpPoly) -> bool {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let m = f.monic();
    if !m.is_squarefree() {
        return false;
    }
    let dds = distinct_degree_split(&m);
    dds.len() == 1 && dds[0].1 == n
}

/// Distinct roots in `F_p` of a nonzero polynomial, ascending.
pub fn roots(f: &FpPoly) -> Vec<u64> {
    let p = f.modulus();
    if f.degree() == 0 {
        return Vec::new();
    }
    if p <= 64 {
        return (0..p).filter(|&x| f.eval(x) == 0).collect();
    }
    let m = f.monic();
    let xp = FpPoly::x(p).pow_rem(p, &m);
    let g = xp.sub(&FpPoly::x(p)).gcd(&m);
    let mut out: Vec<u64> = equal_degree_split(&g, 1)
        .into_iter()
        .filter(|l| l.degree() == 1)
        .map(|l| (p - l.coeff(0)) % p)
        .collect();
    out.sort_unstable();
    out
}

/// Number of monic irreducible polynomials of degree `d` over `F_p`
/// (necklace formula).
pub fn count_irreducible(p: u64, d: u32) -> u64 {
    let mut total: i128 = 0;
    for k in 1..=d {
        if d % k == 0 {
            total += mobius(d / k) as i128 * (p as i128).pow(k);
        }
    }
    (total / d as i128) as u64
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return 0;
            }
            result = -result;
        }
        q += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// All monic irreducible polynomials of degree `d` over `F_p`, in
/// lexicographic order of `(a_1, ..., a_d)`.
pub fn irreducibles_of_degree(p: u64, d: usize) -> Vec<FpPoly> {
    let total = p.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut a = vec![0u64; d];
        let mut k = idx;
        for slot in a.iter_mut().rev() {
            *slot = k % p;
            k /= p;
        }
        let f = FpPoly::from_monic_tuple(p, &a);
        if is_irreducible(&f) {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(p, c)
    }

    #[test]
    fn factor_examples() {
        let f = factor_mod_p(&fp(5, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fp(5, &[2, 1]), 1), (fp(5, &[3, 1]), 1)]);
        let f = factor_mod_p(&fp(3, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fp(3, &[1, 0, 1]), 1)]);
        let f = factor_mod_p(&fp(3, &[0, -1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(fp(3, &[0, 1]), 1), (fp(3, &[1, 1]), 1), (fp(3, &[2, 1]), 1)]);
        assert!(factor_mod_p(&FpPoly::zero(7)).is_err());
    }

    #[test]
    fn inseparable_in_characteristic_p() {
        // (x^3 + 2)^3 * (x + 1)^2 over F_3: x^3+2 = (x+2)^3
        let f = fp(3, &[2, 0, 0, 1]).pow(3).mul(&fp(3, &[1, 1]).pow(2));
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(fac.factors, vec![(fp(3, &[1, 1]), 2), (fp(3, &[2, 1]), 9)]);
        assert_eq!(fac.product(3), f);
    }

    #[test]
    fn products_reassemble() {
        for p in [2u64, 3, 5, 7, 13] {
            for seed in 0..40i64 {
                let c: Vec<i64> = (0..7).map(|i| (seed * 31 + i * i * 7 + seed * i) % 11 - 5).collect();
                let f = fp(p, &c);
                if f.is_zero() {
                    continue;
                }
                let fac = factor_mod_p(&f).unwrap();
                assert_eq!(fac.product(p), f, "p={p} f={f}");
                for (g, _) in &fac.factors {
                    assert!(is_irreducible(g), "{g} mod {p}");
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for p in [2u64, 3, 5] {
            for d in 1..=4usize {
                assert_eq!(irreducibles_of_degree(p, d).len() as u64, count_irreducible(p, d as u32));
            }
        }
    }

    #[test]
    fn roots_large_prime() {
        let p = 1_000_003u64;
        let f = fp(p, &[-6, 11, -6, 1]).mul(&fp(p, &[1, 0, 1]));
        let r = roots(&f);
        assert!(r.starts_with(&[1, 2, 3]));
        for x in &r {
            assert_eq!(f.eval(*x), 0);
        }
    }

    #[test]
    fn patterns() {
        // x^4 + 1 splits as (2,2) mod 3
        assert_eq!(degree_pattern(&fp(3, &[1, 0, 0, 0, 1])), Partition::new(vec![2, 2]));
        assert_eq!(degree_pattern(&fp(5, &[1, 0, 1])), Partition::new(vec![1, 1]));
    }
}
