//! The three-way split of certified primitive non-`S_n` polynomials by
//! field discriminant `D` and ramified-prime product `C`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::galois::dedekind::FieldDiscCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "CASE_I")]
    CaseI,
    #[serde(rename = "CASE_II")]
    CaseII,
    #[serde(rename = "CASE_III")]
    CaseIII,
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::CaseI => "CASE_I",
            Case::CaseII => "CASE_II",
            Case::CaseIII => "CASE_III",
            Case::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subcase {
    I,
    Ii,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseLabel {
    pub case: Case,
    /// Set only for `CASE_III` with `delta > 0`.
    pub subcase: Subcase,
    /// Product of the ramified primes above `H^(delta/2)`.
    #[serde(with = "crate::intpoly::decimal::option")]
    pub a: Option<BigUint>,
}

impl CaseLabel {
    fn not_applicable() -> Self {
        CaseLabel { case: Case::NotApplicable, subcase: Subcase::None, a: None }
    }
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `x <= h^e`, exactly for integer exponents and by logarithms otherwise.
fn at_most_power(x: &BigUint, h: u64, e: f64) -> bool {
    if e.fract() == 0.0 {
        return *x <= num_traits::pow(BigUint::from(h), e as usize);
    }
    ln_big(x) <= e * (h as f64).ln()
}

/// Precedence is II, then III, then I, so the labels partition all exact
/// certificates. `A` is computed whenever the certificate is exact.
pub fn case_decompose(cert: &FieldDiscCertificate, h: u64, delta: f64) -> CaseLabel {
    if !cert.is_exact() {
        return CaseLabel::not_applicable();
    }
    let ln_h = (h as f64).ln();
    let threshold = delta / 2.0 * ln_h;
    let mut a = BigUint::one();
    for r in &cert.records {
        if r.v_p_disc_k.is_some_and(|v| v > 0) && (delta == 0.0 || ln_big(&r.p) > threshold) {
            a *= &r.p;
        }
    }
    let case = if at_most_power(&cert.d, h, 2.0 + 2.0 * delta) {
        Case::CaseII
    } else if !at_most_power(&cert.c, h, 1.0 + delta) {
        Case::CaseIII
    } else {
        Case::CaseI
    };
    let subcase = match case {
        Case::CaseIII if delta > 0.0 => {
            if a <= BigUint::from(h) {
                Subcase::I
            } else {
                Subcase::Ii
            }
        }
        _ => Subcase::None,
    };
    CaseLabel { case, subcase, a: Some(a) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::dedekind::{CertificateStatus, PrimeRecord, Resolution};
    use num_bigint::BigInt;

    /// An exact certificate with the given `(p, v_p(D))`.
    fn cert(ramified: &[(u64, u32)]) -> FieldDiscCertificate {
        let records: Vec<PrimeRecord> = ramified
            .iter()
            .map(|&(p, v)| PrimeRecord {
                p: BigUint::from(p),
                v_p_disc_f: v,
                dedekind_p_maximal: true,
                v_p_disc_k: Some(v),
                resolution: Resolution::Dedekind,
            })
            .collect();
        let d = ramified.iter().map(|&(p, v)| num_traits::pow(BigUint::from(p), v as usize)).product();
        let c = ramified.iter().map(|&(p, _)| BigUint::from(p)).product();
        FieldDiscCertificate {
            disc_f: BigInt::from(1),
            records,
            d,
            c,
            c_complete: true,
            status: CertificateStatus::Exact,
        }
    }

    #[test]
    fn base_cases() {
        let five = cert(&[(5, 1)]);
        assert_eq!(case_decompose(&five, 10, 0.0).case, Case::CaseII);
        // D = 2^4 5^5 = 50000, C = 10
        let c = cert(&[(2, 4), (5, 5)]);
        assert_eq!(c.d, BigUint::from(50000u32));
        let l = case_decompose(&c, 10, 0.0);
        assert_eq!((l.case, l.subcase), (Case::CaseI, Subcase::None));
        // C = 10 > H = 7 with D > 49
        assert_eq!(case_decompose(&c, 7, 0.0).case, Case::CaseIII);
    }

    #[test]
    fn delta_cases() {
        let c = cert(&[(2, 4), (5, 5)]);
        // 10 < 7^1.5: not Case III, although A = 10 exceeds H
        let l = case_decompose(&c, 7, 0.5);
        assert_eq!(l.case, Case::CaseI);
        assert_eq!(l.a, Some(BigUint::from(10u32)));
        // C = 21 > 7^1.5 and D = 3^2 7^3 > 7^3
        let l = case_decompose(&cert(&[(3, 2), (7, 3)]), 7, 0.5);
        assert_eq!((l.case, l.subcase), (Case::CaseIII, Subcase::Ii));
        // H = 10^4: primes 2, 3, 5, 7 sit below H^0.25 = 10, A = 89 * 97
        let big = cert(&[(2, 2), (3, 2), (5, 2), (7, 2), (89, 2), (97, 2)]);
        let l = case_decompose(&big, 10_000, 0.5);
        assert_eq!((l.case, l.subcase), (Case::CaseIII, Subcase::I));
        assert_eq!(l.a, Some(BigUint::from(89u32 * 97)));
    }

    #[test]
    fn partial_is_not_applicable() {
        let mut c = cert(&[(2, 3)]);
        c.status = CertificateStatus::Partial;
        assert_eq!(case_decompose(&c, 10, 0.0).case, Case::NotApplicable);
    }

    #[test]
    fn cases_cover_exact_certificates() {
        for h in [1u64, 2, 7, 10, 100] {
            for delta in [0.0, 0.05, 0.1] {
                for primes in [&[(2u64, 2u32)][..], &[(3, 3), (11, 2)], &[(101, 2)], &[(2, 6), (3, 4), (5, 3)]] {
                    assert_ne!(case_decompose(&cert(primes), h, delta).case, Case::NotApplicable);
                }
            }
        }
    }
}
