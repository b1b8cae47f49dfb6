//! Resolvent polynomials: the cubic resolvent of a quartic and the sextic
//! resolvent of a quintic whose rational root detects solvability.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::intpoly::ddisc::interpolate_integer_points;
use crate::intpoly::{resultant, IntPoly};

/// `y^3 - a2 y^2 + (a1 a3 - 4 a4) y - (a1^2 a4 - 4 a2 a4 + a3^2)`, with
/// roots `x1 x2 + x3 x4` and its conjugates.
pub fn quartic_resolvent(a: &[BigInt]) -> IntPoly {
    let (a1, a2, a3, a4) = (&a[0], &a[1], &a[2], &a[3]);
    let c1: BigInt = a1 * a3 - a4 * BigInt::from(4);
    let c0: BigInt = -(a1 * a1 * a4 - a2 * a4 * BigInt::from(4) + a3 * a3);
    IntPoly::new(vec![c0, c1, -a2, BigInt::one()])
}

/// Coefficients `(p, q, r, s)` of `5^5 f((y - a_1)/5) = y^5 + p y^3 + q y^2 + r y + s`.
pub fn depress_quintic(a: &[BigInt]) -> [BigInt; 4] {
    let shift = IntPoly::new(vec![-&a[0], BigInt::one()]);
    let mut g = IntPoly::zero();
    let mut five_i = BigInt::one();
    for i in 0..=5 {
        let ai = if i == 0 { BigInt::one() } else { a[i - 1].clone() };
        g = &g + &shift.pow(5 - i as u32).scale(&(ai * &five_i));
        five_i *= 5;
    }
    debug_assert!(g.coeff(4).is_zero() && g.coeff(5).is_one());
    [g.coeff(3), g.coeff(2), g.coeff(1), g.coeff(0)]
}

/// The degree-6 resolvent of `y^5 + p y^3 + q y^2 + r y + s` whose roots
/// are the six conjugates of an `F20`-invariant. When it is squarefree, a
/// rational root exists exactly when the Galois group lies in `F20`.
pub fn sextic_resolvent(pqrs: &[BigInt; 4]) -> IntPoly {
    let [p, q, r, s] = pqrs;
    let t = |c: i64, ep: u32, eq: u32, er: u32, es: u32| -> BigInt {
        BigInt::from(c) * p.pow(ep) * q.pow(eq) * r.pow(er) * s.pow(es)
    };
    let sum = |terms: &[(i64, u32, u32, u32, u32)]| -> BigInt {
        terms.iter().map(|&(c, a, b, d, e)| t(c, a, b, d, e)).sum()
    };
    let c1 = sum(&[(8, 0, 0, 1, 0)]);
    let c2 = sum(&[(2, 1, 2, 0, 0), (-6, 2, 0, 1, 0), (40, 0, 0, 2, 0), (-50, 0, 1, 0, 1)]);
    let c3 = sum(&[
        (-2, 0, 4, 0, 0),
        (21, 1, 2, 1, 0),
        (-40, 2, 0, 2, 0),
        (160, 0, 0, 3, 0),
        (-15, 2, 1, 0, 1),
        (-400, 0, 1, 1, 1),
        (125, 1, 0, 0, 2),
    ]);
    let c4 = sum(&[
        (1, 2, 4, 0, 0),
        (-6, 3, 2, 1, 0),
        (-8, 0, 4, 1, 0),
        (9, 4, 0, 2, 0),
        (76, 1, 2, 2, 0),
        (-136, 2, 0, 3, 0),
        (400, 0, 0, 4, 0),
        (-50, 1, 3, 0, 1),
        (90, 2, 1, 1, 1),
        (-1400, 0, 1, 2, 1),
        (625, 0, 2, 0, 2),
        (500, 1, 0, 1, 2),
    ]);
    let c5 = sum(&[
        (-2, 1, 6, 0, 0),
        (19, 2, 4, 1, 0),
        (-51, 3, 2, 2, 0),
        (3, 0, 4, 2, 0),
        (32, 4, 0, 3, 0),
        (76, 1, 2, 3, 0),
        (-256, 2, 0, 4, 0),
        (512, 0, 0, 5, 0),
        (-31, 3, 3, 0, 1),
        (-58, 0, 5, 0, 1),
        (117, 4, 1, 1, 1),
        (105, 1, 3, 1, 1),
        (260, 2, 1, 2, 1),
        (-2400, 0, 1, 3, 1),
        (-108, 5, 0, 0, 2),
        (-325, 2, 2, 0, 2),
        (525, 3, 0, 1, 2),
        (2750, 0, 2, 1, 2),
        (-500, 1, 0, 2, 2),
        (625, 1, 1, 0, 3),
        (-3125, 0, 0, 0, 4),
    ]);
    let c6 = sum(&[
        (1, 0, 8, 0, 0),
        (-13, 1, 6, 1, 0),
        (1, 5, 2, 2, 0),
        (65, 2, 4, 2, 0),
        (-4, 6, 0, 3, 0),
        (-128, 3, 2, 3, 0),
        (17, 0, 4, 3, 0),
        (48, 4, 0, 4, 0),
        (-16, 1, 2, 4, 0),
        (-192, 2, 0, 5, 0),
        (256, 0, 0, 6, 0),
        (-4, 5, 3, 0, 1),
        (-12, 2, 5, 0, 1),
        (18, 6, 1, 1, 1),
        (12, 3, 3, 1, 1),
        (-124, 0, 5, 1, 1),
        (196, 4, 1, 2, 1),
        (590, 1, 3, 2, 1),
        (-160, 2, 1, 3, 1),
        (-1600, 0, 1, 4, 1),
        (-27, 7, 0, 0, 2),
        (-150, 4, 2, 0, 2),
        (-125, 1, 4, 0, 2),
        (-99, 5, 0, 1, 2),
        (-725, 2, 2, 1, 2),
        (1200, 3, 0, 2, 2),
        (3250, 0, 2, 2, 2),
        (-2000, 1, 0, 3, 2),
        (-1250, 1, 1, 1, 3),
        (3125, 2, 0, 0, 4),
        (-9375, 0, 0, 1, 4),
    ]);
    IntPoly::new(vec![c6, c5, c4, c3, c2, c1, BigInt::one()])
}

/// Characteristic polynomial of `x^2 + c x` modulo a monic `f`, i.e.
/// `Res_x(f(x), y - x^2 - c x)`, by interpolation in `y`.
pub fn tschirnhaus(f: &IntPoly, c: i64) -> IntPoly {
    tschirnhaus_by(f, &IntPoly::from_i64(&[0, c, 1]))
}

/// Characteristic polynomial of `h` modulo a monic `f`: the monic
/// polynomial whose roots are `h(x_i)`.
pub fn tschirnhaus_by(f: &IntPoly, h: &IntPoly) -> IntPoly {
    let n = f.degree();
    let values: Vec<BigInt> = (0..=n as i64)
        .map(|y| {
            let t = &IntPoly::from_i64(&[y]) - h;
            resultant(f, &t).expect("nonzero inputs")
        })
        .collect();
    let g = interpolate_integer_points(&values).expect("integer characteristic polynomial");
    // Res(f, y - h) = prod (y - h(x_i)) up to the sign (-1)^(n deg h)
    let g = if g.leading() < BigInt::zero() { -&g } else { g };
    debug_assert!(g.is_monic() && g.degree() == n);
    g
}
