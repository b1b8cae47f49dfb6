//! p-maximal orders by the Round 2 enlargement: replace an order by the
//! ring of multipliers of its p-radical until nothing changes. Used only to
//! settle `v_p(Disc K)` at primes that Dedekind's criterion leaves open.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::intpoly::IntPoly;

/// Primes above this bound are left unresolved.
pub(crate) const MAX_PRIME: u64 = 1 << 31;

/// An order given by rows `w[i] / den` in the power basis of `theta`.
struct Order {
    w: Vec<Vec<BigInt>>,
    den: BigInt,
}

/// `a * b mod f` on power-basis coordinate vectors, `f` monic of degree n.
fn mul_mod_f(a: &[BigInt], b: &[BigInt], f: &IntPoly) -> Vec<BigInt> {
    let n = f.degree();
    let mut prod = vec![BigInt::zero(); 2 * n - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            prod[i + j] += ai * bj;
        }
    }
    for k in (n..prod.len()).rev() {
        let top = std::mem::take(&mut prod[k]);
        if top.is_zero() {
            continue;
        }
        for j in 0..n {
            prod[k - n + j] -= &top * f.coeff(j);
        }
    }
    prod.truncate(n);
    prod
}

/// Row-style Hermite form of a full-column-rank integer matrix: `n` rows,
/// row `r` zero before column `r`, positive pivots, entries above each
/// pivot reduced.
fn hnf(mut rows: Vec<Vec<BigInt>>, n: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for col in 0..n {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let pivot = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).expect("nonempty");
            let pr = rows[pivot].clone();
            for &i in &nonzero {
                if i != pivot {
                    let q = rows[i][col].div_floor(&pr[col]);
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                }
            }
        }
        let idx = (0..rows.len()).find(|&i| !rows[i][col].is_zero())?;
        let mut row = rows.swap_remove(idx);
        if row[col].is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        for prev in out.iter_mut() {
            let q = prev[col].div_floor(&row[col]);
            if !q.is_zero() {
                for (x, y) in prev.iter_mut().zip(&row) {
                    *x -= &q * y;
                }
            }
        }
        out.push(row);
    }
    Some(out)
}

/// `y` with `y * rows = v` for a triangular `rows` from [`hnf`], if the
/// solution is integral.
fn solve(rows: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut y = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let (q, rem) = rest[r].div_rem(&row[r]);
        if !rem.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        y.push(q);
    }
    rest.iter().all(|x| x.is_zero()).then_some(y)
}

/// Left kernel of a matrix over `F_p`, rows of length `cols`.
fn left_kernel(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    // augment with the identity and row-reduce on the left block
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..rows).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let inv = |x: u64| -> u64 {
        let (mut b, mut e, mut acc) = (x % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let s = inv(a[r][c]);
        a[r].iter_mut().for_each(|x| *x = *x * s % p);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let t = a[i][c];
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x = (*x + (p - t) * y) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    a[r..].iter().map(|row| row[cols..].to_vec()).collect()
}

fn to_fp(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue")
}

impl Order {
    fn equation_order(n: usize) -> Self {
        let w = (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
        Order { w, den: BigInt::one() }
    }

    /// `T[i][k]`: coordinates of `w_i w_k` in this basis.
    fn structure(&self, f: &IntPoly) -> Option<Vec<Vec<Vec<BigInt>>>> {
        let n = f.degree();
        let scaled: Vec<Vec<BigInt>> = self.w.iter().map(|r| r.iter().map(|x| x * &self.den).collect()).collect();
        let mut t = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for k in i..n {
                let prod = mul_mod_f(&self.w[i], &self.w[k], f);
                let c = solve(&scaled, &prod)?;
                t[k][i] = c.clone();
                t[i][k] = c;
            }
        }
        Some(t)
    }

    /// `log_p [O : Z[theta]]`.
    fn index_exponent(&self, p: &BigInt) -> u32 {
        let n = self.w.len();
        let mut num = num_traits::pow(self.den.clone(), n);
        let det: BigInt = (0..n).map(|i| self.w[i][i].clone()).product();
        let mut e = 0;
        while !num.is_zero() && (&num % p).is_zero() && num != det {
            num /= p;
            e += 1;
        }
        debug_assert_eq!(num, det);
        e
    }
}

/// Multiply `x * y` in O/pO using structure constants reduced mod p.
fn mul_fp(x: &[u64], y: &[u64], t: &[Vec<Vec<u64>>], p: u64) -> Vec<u64> {
    let n = x.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for k in 0..n {
            if y[k] == 0 {
                continue;
            }
            let c = x[i] * y[k] % p;
            for (o, &s) in out.iter_mut().zip(&t[i][k]) {
                *o = (*o + c * s) % p;
            }
        }
    }
    out
}

/// One enlargement step: `None` on an internal inconsistency, `Some(None)`
/// when `O` is already p-maximal.
fn enlarge(o: &Order, f: &IntPoly, p: u64) -> Option<Option<Order>> {
    let n = f.degree();
    let pb = BigInt::from(p);
    let t = o.structure(f)?;
    let tp: Vec<Vec<Vec<u64>>> =
        t.iter().map(|row| row.iter().map(|v| v.iter().map(|x| to_fp(x, p)).collect()).collect()).collect();
    // p-radical: kernel of x -> x^q with q = p^j >= n
    let mut q = p;
    while q < n as u64 {
        q *= p;
    }
    let unit = |i: usize| -> Vec<u64> { (0..n).map(|j| u64::from(i == j)).collect() };
    let one_power: Vec<BigInt> = (0..n).map(|j| if j == 0 { o.den.clone() } else { BigInt::zero() }).collect();
    let one: Vec<u64> = solve(&o.w, &one_power)?.iter().map(|x| to_fp(x, p)).collect();
    let frob: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let (mut acc, mut base, mut e) = (one.clone(), unit(i), q);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_fp(&acc, &base, &tp, p);
                }
                base = mul_fp(&base, &base, &tp, p);
                e >>= 1;
            }
            acc
        })
        .collect();
    let radical = left_kernel(&frob, n, p);
    let mut gens: Vec<Vec<BigInt>> = radical.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    gens.extend((0..n).map(|i| (0..n).map(|j| if i == j { pb.clone() } else { BigInt::zero() }).collect()));
    let ip = hnf(gens, n)?;
    // multipliers: x with x I_p inside p I_p, read mod p
    let mut big = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n * n);
        for beta in &ip {
            let mut prod = vec![BigInt::zero(); n];
            for (l, bl) in beta.iter().enumerate() {
                if bl.is_zero() {
                    continue;
                }
                for (dst, s) in prod.iter_mut().zip(&t[i][l]) {
                    *dst += bl * s;
                }
            }
            let coords = solve(&ip, &prod)?;
            row.extend(coords.iter().map(|x| to_fp(x, p)));
        }
        big.push(row);
    }
    let kernel = left_kernel(&big, n * n, p);
    if kernel.is_empty() {
        return Some(None);
    }
    // O' = U / p with U = lifts + pO, written in the power basis
    let mut rows: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|v| {
            let mut acc = vec![BigInt::zero(); n];
            for (c, wrow) in v.iter().zip(&o.w) {
                if *c != 0 {
                    for (dst, x) in acc.iter_mut().zip(wrow) {
                        *dst += x * BigInt::from(*c);
                    }
                }
            }
            acc
        })
        .collect();
    rows.extend(o.w.iter().map(|r| r.iter().map(|x| x * &pb).collect::<Vec<_>>()));
    let mut w = hnf(rows, n)?;
    let mut den = &o.den * &pb;
    let mut g = den.clone();
    for x in w.iter().flatten() {
        g = g.gcd(x);
    }
    if !g.is_one() {
        w.iter_mut().flatten().for_each(|x| *x = &*x / &g);
        den /= &g;
    }
    Some(Some(Order { w, den }))
}

/// `v_p([O_K : Z[theta]])` for monic irreducible `f`, by enlarging
/// `Z[theta]` to its p-maximal overorder.
pub(crate) fn index_valuation(f: &IntPoly, p: u64, v_disc: u32) -> Option<u32> {
    if p >= MAX_PRIME || !f.is_monic() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut o = Order::equation_order(f.degree());
    // each step gains at least one power of p in the index
    for _ in 0..=v_disc / 2 {
        match enlarge(&o, f, p)? {
            None => return Some(o.index_exponent(&pb)),
            Some(next) => o = next,
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::discriminant;
    use crate::intpoly::integer::valuation;
    use num_bigint::BigUint;

    fn vk(coeffs: &[i64], p: u64) -> u32 {
        let f = IntPoly::from_i64(coeffs);
        let v = valuation(&discriminant(&f).unwrap(), &BigUint::from(p));
        v - 2 * index_valuation(&f, p, v).unwrap()
    }

    #[test]
    fn quadratic_orders() {
        // x^2 + 3: Z[(1 + sqrt(-3))/2], index 2
        assert_eq!(index_valuation(&IntPoly::from_i64(&[3, 0, 1]), 2, 2), Some(1));
        // x^2 - 8 = Q(sqrt 2), disc 8 = 2^3, index 2 on 2^5
        assert_eq!(vk(&[-32, 0, 1], 2), 3);
    }

    #[test]
    fn cyclotomic_fields() {
        // Phi_9 with roots scaled by 3: |Disc| = 3^9
        assert_eq!(vk(&[729, 0, 0, 27, 0, 0, 1], 3), 9);
        // Phi_8 = x^4 + 1 scaled by 2: 2^8
        assert_eq!(vk(&[16, 0, 0, 0, 1], 2), 8);
        // Phi_7: 7^5
        assert_eq!(vk(&[1, 1, 1, 1, 1, 1, 1], 7), 5);
    }

    #[test]
    fn pure_cubics() {
        // Q(cbrt 10): 10 = 1 mod 9, Disc = -3 * 10^2
        assert_eq!(vk(&[-10, 0, 0, 1], 3), 1);
        assert_eq!(vk(&[-10, 0, 0, 1], 2), 2);
        // Q(cbrt 12): Z[cbrt 12] + Z[cbrt 18], Disc = -27 * 6^2 = -972
        assert_eq!(vk(&[-12, 0, 0, 1], 2), 2);
        assert_eq!(vk(&[-12, 0, 0, 1], 3), 5);
    }
}
