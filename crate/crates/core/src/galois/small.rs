//! Machine-integer classification of monic polynomials of degree at most 4
//! with small coefficients. Decides reducibility and, for irreducible
//! input, the Galois group; anything else is left to the general path.

/// Coefficients beyond this magnitude go to the big-integer path.
pub(crate) const SMALL_LIMIT: i64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Small {
    Reducible,
    Irreducible(&'static str),
}

pub(crate) fn applicable(a: &[i64]) -> bool {
    a.len() <= 4 && a.iter().all(|c| c.abs() <= SMALL_LIMIT)
}

pub(crate) fn isqrt_exact(m: i128) -> Option<i128> {
    if m < 0 {
        return None;
    }
    let mut r = (m as f64).sqrt() as i128;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    (r * r == m).then_some(r)
}

fn is_square(m: i128) -> bool {
    isqrt_exact(m).is_some()
}

/// Positive divisors of `m != 0`, by trial division.
fn divisors(m: i64) -> Vec<i64> {
    let m = m.unsigned_abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(d as i64);
            if d * d != m {
                large.push((m / d) as i64);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `x^n + a_1 x^(n-1) + ... + a_n` at `x`.
fn eval(a: &[i128], x: i128) -> i128 {
    a.iter().fold(1i128, |acc, &c| acc * x + c)
}

fn has_integer_root(a: &[i64]) -> bool {
    let n = a.len();
    if a[n - 1] == 0 {
        return true;
    }
    let wide: Vec<i128> = a.iter().map(|&c| c as i128).collect();
    divisors(a[n - 1]).into_iter().any(|d| eval(&wide, d as i128) == 0 || eval(&wide, -(d as i128)) == 0)
}

/// Product of two monic integer quadratics, given no integer root.
fn splits_into_quadratics(a: &[i64]) -> bool {
    let [a1, a2, a3, a4] = [a[0] as i128, a[1] as i128, a[2] as i128, a[3] as i128];
    for d in divisors(a[3]) {
        for c in [d as i128, -(d as i128)] {
            let e = a4 / c;
            if e != c {
                let num = a3 - c * a1;
                let den = e - c;
                if num % den != 0 {
                    continue;
                }
                let b = num / den;
                let dd = a1 - b;
                if c + e + b * dd == a2 {
                    return true;
                }
            } else if a3 == c * a1 && is_square(a1 * a1 - 4 * (a2 - 2 * c)) {
                return true;
            }
        }
    }
    false
}

/// Discriminant of the monic cubic `y^3 + b y^2 + c y + d`.
pub(crate) fn cubic_disc(b: i128, c: i128, d: i128) -> i128 {
    18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d
}

/// Distinct integer roots of `y^3 + b y^2 + c y + d`, ascending. Real roots
/// are bracketed on the monotone pieces between the critical points and
/// found by exact integer bisection.
pub(crate) fn cubic_integer_roots(b: i128, c: i128, d: i128) -> Vec<i128> {
    let coeffs = [b, c, d];
    let f = |y: i128| eval(&coeffs, y);
    let bound = {
        let m = (b.abs() as f64).max((c.abs() as f64).sqrt()).max((d.abs() as f64 / 2.0).cbrt());
        2 * (m.ceil() as i128) + 2
    };
    let mut out = Vec::new();
    let push = |y: i128, out: &mut Vec<i128>| {
        if f(y) == 0 && !out.contains(&y) {
            out.push(y);
        }
    };
    // first nonnegative-going point in [lo, hi] for an increasing or
    // decreasing piece
    let search = |lo: i128, hi: i128, increasing: bool| -> Option<i128> {
        if lo > hi {
            return None;
        }
        let sign = |y: i128| if increasing { f(y) } else { -f(y) };
        if sign(hi) < 0 || sign(lo) > 0 {
            return None;
        }
        let (mut l, mut h) = (lo, hi);
        while l < h {
            let mid = l + (h - l) / 2;
            if sign(mid) >= 0 {
                h = mid;
            } else {
                l = mid + 1;
            }
        }
        Some(l)
    };
    let disc_deriv = b * b - 3 * c;
    if disc_deriv <= 0 {
        if let Some(y) = search(-bound, bound, true) {
            push(y, &mut out);
        }
    } else {
        let s = (disc_deriv as f64).sqrt();
        let t1 = ((-b as f64) - s) / 3.0;
        let t2 = ((-b as f64) + s) / 3.0;
        let (t1f, t2c) = (t1.floor() as i128, t2.ceil() as i128);
        for y in (t1f - 2)..=(t1f + 3) {
            push(y, &mut out);
        }
        for y in (t2c - 3)..=(t2c + 2) {
            push(y, &mut out);
        }
        let pieces = [(-bound, t1f - 2, true), (t1f + 3, t2c - 3, false), (t2c + 2, bound, true)];
        for (lo, hi, inc) in pieces {
            if let Some(y) = search(lo, hi, inc) {
                push(y, &mut out);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Quadratic with discriminant `d` splits over `Q(sqrt(delta))`.
fn splits_over(d: i128, delta: i128) -> bool {
    is_square(d) || is_square(d * delta)
}

pub(crate) fn classify_small(a: &[i64]) -> Small {
    debug_assert!(applicable(a) && !a.is_empty());
    match a.len() {
        1 => Small::Irreducible("S1"),
        2 => {
            let d = (a[0] as i128).pow(2) - 4 * a[1] as i128;
            if is_square(d) {
                Small::Reducible
            } else {
                Small::Irreducible("S2")
            }
        }
        3 => {
            if has_integer_root(a) {
                return Small::Reducible;
            }
            let disc = cubic_disc(a[0] as i128, a[1] as i128, a[2] as i128);
            Small::Irreducible(if is_square(disc) { "C3" } else { "S3" })
        }
        4 => {
            if has_integer_root(a) || splits_into_quadratics(a) {
                return Small::Reducible;
            }
            let (a1, a2, a3, a4) = (a[0] as i128, a[1] as i128, a[2] as i128, a[3] as i128);
            let (r2, r1, r0) = (-a2, a1 * a3 - 4 * a4, -(a1 * a1 * a4 - 4 * a2 * a4 + a3 * a3));
            let delta = cubic_disc(r2, r1, r0);
            let roots = cubic_integer_roots(r2, r1, r0);
            Small::Irreducible(match roots.len() {
                0 if is_square(delta) => "A4",
                0 => "S4",
                1 => {
                    let r = roots[0];
                    if splits_over(r * r - 4 * a4, delta) && splits_over(a1 * a1 - 4 * (a2 - r), delta) {
                        "C4"
                    } else {
                        "D4"
                    }
                }
                _ => "V4",
            })
        }
        _ => unreachable!("degree checked by applicable"),
    }
}
