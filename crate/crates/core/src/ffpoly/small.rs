//! Allocation-free factorization patterns for monic polynomials of degree
//! at most 8 modulo primes below `2^31`, used when sampling many primes.

use super::splitting::Partition;

const CAP: usize = 16;
pub(crate) const MAX_DEGREE: usize = 8;
pub(crate) const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy)]
struct P {
    c: [u64; CAP],
    /// degree + 1, zero for the zero polynomial
    len: usize,
}

impl P {
    fn zero() -> Self {
        P { c: [0; CAP], len: 0 }
    }

    fn from_slice(s: &[u64]) -> Self {
        let mut out = P::zero();
        out.c[..s.len()].copy_from_slice(s);
        out.len = s.len();
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.len > 0 && self.c[self.len - 1] == 0 {
            self.len -= 1;
        }
    }

    fn degree(&self) -> usize {
        self.len.saturating_sub(1)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `a mod m` in place, `m` nonzero.
fn rem(a: &mut P, m: &P, p: u64) {
    if a.len < m.len {
        return;
    }
    let dm = m.len - 1;
    let inv = pow_mod(m.c[dm], p - 2, p);
    for k in (dm..a.len).rev() {
        let top = a.c[k];
        if top == 0 {
            continue;
        }
        let q = top * inv % p;
        for j in 0..=dm {
            let idx = k - dm + j;
            a.c[idx] = (a.c[idx] + (p - q) * m.c[j]) % p;
        }
    }
    a.len = dm;
    a.trim();
}

/// Below this bound a length-8 convolution of reduced residues fits in a
/// `u64` without intermediate reduction.
const LAZY_PRIME: u64 = 1 << 28;

/// `a * b mod m` for monic `m` of degree `n >= 1`, inputs reduced mod `m`.
fn mul_rem(a: &P, b: &P, m: &P, p: u64) -> P {
    let mut out = P::zero();
    if a.len == 0 || b.len == 0 {
        return out;
    }
    if p >= LAZY_PRIME {
        for i in 0..a.len {
            let ai = a.c[i];
            if ai == 0 {
                continue;
            }
            for j in 0..b.len {
                out.c[i + j] = (out.c[i + j] + ai * b.c[j]) % p;
            }
        }
        out.len = a.len + b.len - 1;
        out.trim();
        rem(&mut out, m, p);
        return out;
    }
    let n = m.len - 1;
    let mut acc = [0u64; CAP];
    for i in 0..a.len {
        let ai = a.c[i];
        if ai == 0 {
            continue;
        }
        for j in 0..b.len {
            acc[i + j] += ai * b.c[j];
        }
    }
    let top = a.len + b.len - 1;
    for k in (n..top).rev() {
        let q = acc[k] % p;
        if q == 0 {
            continue;
        }
        let nq = p - q;
        for j in 0..n {
            acc[k - n + j] += nq * m.c[j];
        }
    }
    for j in 0..n {
        out.c[j] = acc[j] % p;
    }
    out.len = n;
    out.trim();
    out
}

/// `a * x mod m` for monic `m`.
fn mul_x(a: &P, m: &P, p: u64) -> P {
    let n = m.len - 1;
    let mut out = P::zero();
    let top = if a.len == n { a.c[n - 1] } else { 0 };
    for j in (1..n).rev() {
        out.c[j] = a.c[j - 1];
    }
    if top != 0 {
        let nq = p - top;
        for j in 0..n {
            out.c[j] = (out.c[j] + nq * m.c[j]) % p;
        }
    }
    out.len = n;
    out.trim();
    out
}

fn gcd(a: &P, b: &P, p: u64) -> P {
    let (mut a, mut b) = (*a, *b);
    while b.len > 0 {
        rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn div_exact(a: &P, d: &P, p: u64) -> P {
    let dd = d.len - 1;
    let inv = pow_mod(d.c[dd], p - 2, p);
    let mut r = *a;
    let mut q = P::zero();
    if a.len < d.len {
        return q;
    }
    for k in (dd..r.len).rev() {
        let top = r.c[k];
        if top == 0 {
            continue;
        }
        let c = top * inv % p;
        q.c[k - dd] = c;
        for j in 0..=dd {
            let idx = k - dd + j;
            r.c[idx] = (r.c[idx] + (p - c) * d.c[j]) % p;
        }
    }
    q.len = a.len - dd;
    q.trim();
    q
}

fn sub_x(h: &P, p: u64) -> P {
    let mut out = *h;
    if out.len < 2 {
        out.len = 2;
    }
    out.c[1] = (out.c[1] + p - 1) % p;
    out.trim();
    out
}

/// Degree pattern of `f = x^n + ...` given low-to-high with the leading 1,
/// or `None` when `f` is not squarefree modulo `p`.
pub(crate) fn degree_pattern_small(coeffs: &[u64], p: u64) -> Option<Partition> {
    let n = coeffs.len() - 1;
    debug_assert!(n <= MAX_DEGREE && p < MAX_PRIME && coeffs[n] == 1 && p >= 2);
    let f = P::from_slice(coeffs);
    if n == 1 {
        return Some(Partition::new(vec![1]));
    }
    let mut df = P::zero();
    for i in 1..=n {
        df.c[i - 1] = coeffs[i] * (i as u64 % p) % p;
    }
    df.len = n;
    df.trim();
    if df.len == 0 || gcd(&f, &df, p).degree() > 0 {
        return None;
    }
    // Frobenius rows x^(i p) mod f
    let mut xp = P::from_slice(&[1]);
    for bit in (0..64 - p.leading_zeros()).rev() {
        xp = mul_rem(&xp, &xp, &f, p);
        if (p >> bit) & 1 == 1 {
            xp = mul_x(&xp, &f, p);
        }
    }
    let mut rows = [P::zero(); MAX_DEGREE];
    rows[0] = P::from_slice(&[1]);
    for i in 1..n {
        rows[i] = mul_rem(&rows[i - 1], &xp, &f, p);
    }
    let frob = |h: &P| -> P {
        let mut out = P::zero();
        for i in 0..h.len {
            let hi = h.c[i];
            if hi == 0 {
                continue;
            }
            for j in 0..rows[i].len {
                out.c[j] = (out.c[j] + hi * rows[i].c[j]) % p;
            }
        }
        out.len = n;
        out.trim();
        out
    };
    let mut parts = Vec::with_capacity(n);
    let mut rest = f;
    let mut h = xp;
    let mut d = 1;
    while rest.degree() >= 2 * d {
        let g = gcd(&sub_x(&h, p), &rest, p);
        let gd = g.degree();
        if gd > 0 {
            for _ in 0..gd / d {
                parts.push(d as u8);
            }
            rest = div_exact(&rest, &g, p);
        }
        d += 1;
        h = frob(&h);
    }
    if rest.degree() > 0 {
        parts.push(rest.degree() as u8);
    }
    Some(Partition::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::factor::degree_pattern;
    use crate::ffpoly::FpPoly;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_general_routine(
            a in proptest::collection::vec(0u64..1_000_000, 1..=8),
            pi in 0usize..12,
        ) {
            let p = [2u64, 3, 5, 7, 11, 13, 101, 997, 7919, 65537, 1_000_003, 2_147_483_647][pi];
            let mut c: Vec<u64> = a.iter().map(|v| v % p).collect();
            c.push(1);
            let fp = FpPoly::new(p, c.clone());
            let expected = fp.is_squarefree().then(|| degree_pattern(&fp));
            prop_assert_eq!(degree_pattern_small(&c, p), expected);
        }
    }

    #[test]
    fn known_patterns() {
        // x^4 + 1 mod 3 = (x^2 + x + 2)(x^2 + 2x + 2)
        assert_eq!(degree_pattern_small(&[1, 0, 0, 0, 1], 3), Some(Partition::new(vec![2, 2])));
        assert_eq!(degree_pattern_small(&[1, 0, 1], 2), None);
        assert_eq!(degree_pattern_small(&[2, 1], 5), Some(Partition::new(vec![1])));
    }
}
