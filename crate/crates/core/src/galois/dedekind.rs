//! Dedekind's criterion and the field-discriminant certificate built on it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::factor::factor_mod_p;
use crate::ffpoly::FpPoly;
use crate::intpoly::factor::is_irreducible_over_q;
use crate::intpoly::{discriminant, factor_integer, IntPoly, MonicIntPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedekindRecord {
    pub p: u64,
    pub p_maximal: bool,
}

fn require_irreducible(f: &IntPoly) -> Result<()> {
    if !is_irreducible_over_q(f)? {
        return Err(Error::ContractViolation(format!("{f} is reducible over Q")));
    }
    Ok(())
}

pub fn dedekind_test(f: &MonicIntPoly, p: u64) -> Result<DedekindRecord> {
    if !crate::intpoly::is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let fz = f.to_intpoly();
    require_irreducible(&fz)?;
    Ok(DedekindRecord { p, p_maximal: dedekind_maximal(&fz, p) })
}

/// The criterion itself, for a monic `f` and prime `p`, without the
/// irreducibility check.
pub(crate) fn dedekind_maximal(f: &IntPoly, p: u64) -> bool {
    let fbar = FpPoly::from_intpoly(f, p);
    let fac = factor_mod_p(&fbar).expect("monic, nonzero mod p");
    let mut gbar = FpPoly::one(p);
    for (gi, _) in &fac.factors {
        gbar = gbar.mul(gi);
    }
    let (hbar, rem) = fbar.div_rem(&gbar);
    debug_assert!(rem.is_zero());
    let diff = f - &(&gbar.to_intpoly() * &hbar.to_intpoly());
    let pb = BigInt::from(p);
    let m = IntPoly::new(
        diff.coeffs()
            .iter()
            .map(|c| {
                debug_assert!((c % &pb).is_zero());
                c / &pb
            })
            .collect(),
    );
    let mbar = FpPoly::from_intpoly(&m, p);
    mbar.gcd(&gbar).gcd(&hbar).degree() == 0
}

/// How `v_p(Disc K)` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// `v_p(Disc f) = 1`, so `p` cannot divide the index.
    SimpleFactor,
    /// Dedekind passed: `Z[x]/(f)` is maximal at `p`.
    Dedekind,
    /// Dedekind failed with `v_p(Disc f) <= 3`; the index contributes at
    /// least 2 and the parity of the exponent is preserved, leaving one value.
    IndexParity,
    /// Index computed by enlarging `Z[theta]` to its p-maximal overorder.
    MaximalOrder,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    #[serde(with = "crate::intpoly::decimal")]
    pub p: BigUint,
    pub v_p_disc_f: u32,
    pub dedekind_p_maximal: bool,
    pub v_p_disc_k: Option<u32>,
    pub resolution: Resolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Exact,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDiscCertificate {
    #[serde(with = "crate::intpoly::decimal")]
    pub disc_f: BigInt,
    pub records: Vec<PrimeRecord>,
    /// `|Disc K|` when exact; otherwise a lower bound using the smallest
    /// exponent of the right parity at each unresolved prime.
    #[serde(with = "crate::intpoly::decimal")]
    pub d: BigUint,
    /// Product of the primes known to ramify.
    #[serde(with = "crate::intpoly::decimal")]
    pub c: BigUint,
    /// No unresolved prime could still be ramified.
    pub c_complete: bool,
    pub status: CertificateStatus,
}

impl FieldDiscCertificate {
    pub fn is_exact(&self) -> bool {
        self.status == CertificateStatus::Exact
    }

    pub fn d_is_squarefull(&self) -> bool {
        self.records.iter().all(|r| match r.v_p_disc_k {
            Some(v) => v == 0 || v >= 2,
            None => true,
        })
    }

    pub fn unresolved_primes(&self) -> Vec<&BigUint> {
        self.records.iter().filter(|r| r.v_p_disc_k.is_none()).map(|r| &r.p).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateOptions {
    /// Resolve non-maximal primes with `v_p(Disc f) <= 3` by the index
    /// parity argument. Off means Dedekind alone.
    pub index_parity: bool,
    /// Settle the remaining primes by computing the p-maximal order.
    pub maximal_order: bool,
}

impl CertificateOptions {
    pub fn dedekind_only() -> Self {
        CertificateOptions { index_parity: false, maximal_order: false }
    }
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions { index_parity: true, maximal_order: true }
    }
}

pub fn field_disc_certificate(f: &MonicIntPoly) -> Result<FieldDiscCertificate> {
    field_disc_certificate_with(f, CertificateOptions::default())
}

pub fn field_disc_certificate_with(f: &MonicIntPoly, opts: CertificateOptions) -> Result<FieldDiscCertificate> {
    let fz = f.to_intpoly();
    require_irreducible(&fz)?;
    certificate_unchecked(&fz, opts)
}

/// Certificate for a monic polynomial already known to be irreducible.
pub(crate) fn certificate_unchecked(f: &IntPoly, opts: CertificateOptions) -> Result<FieldDiscCertificate> {
    if f.degree() == 1 {
        return Ok(FieldDiscCertificate {
            disc_f: BigInt::one(),
            records: Vec::new(),
            d: BigUint::one(),
            c: BigUint::one(),
            c_complete: true,
            status: CertificateStatus::Exact,
        });
    }
    let disc_f = discriminant(f)?;
    let mut records = Vec::new();
    let mut d = BigUint::one();
    let mut c = BigUint::one();
    let mut c_complete = true;
    for (p, v) in factor_integer(&disc_f)? {
        let (maximal, v_k, resolution) = if v == 1 {
            (true, Some(1), Resolution::SimpleFactor)
        } else {
            let small = p.to_u64();
            let maximal = small.is_some_and(|q| dedekind_maximal(f, q));
            if maximal {
                (true, Some(v), Resolution::Dedekind)
            } else if opts.index_parity && small.is_some() && v <= 3 {
                (false, Some(v - 2), Resolution::IndexParity)
            } else if let Some(i) =
                small.filter(|_| opts.maximal_order).and_then(|q| super::maximal::index_valuation(f, q, v))
            {
                (false, Some(v - 2 * i), Resolution::MaximalOrder)
            } else {
                (false, None, Resolution::Unresolved)
            }
        };
        let exponent = v_k.unwrap_or(v % 2);
        d *= num_traits::pow(p.clone(), exponent as usize);
        if exponent > 0 {
            c *= &p;
        } else if v_k.is_none() {
            c_complete = false;
        }
        records.push(PrimeRecord { p, v_p_disc_f: v, dedekind_p_maximal: maximal, v_p_disc_k: v_k, resolution });
    }
    let status = if records.iter().all(|r| r.v_p_disc_k.is_some()) {
        CertificateStatus::Exact
    } else {
        CertificateStatus::Partial
    };
    Ok(FieldDiscCertificate { disc_f, records, d, c, c_complete, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::integer::valuation;
    use proptest::prelude::*;

    fn m(a: &[i64]) -> MonicIntPoly {
        MonicIntPoly::from_i64(a).unwrap()
    }

    #[test]
    fn dedekind_examples() {
        assert!(!dedekind_test(&m(&[0, -5]), 2).unwrap().p_maximal);
        assert!(dedekind_test(&m(&[0, -5]), 5).unwrap().p_maximal);
        assert!(!dedekind_test(&m(&[0, 3]), 2).unwrap().p_maximal);
        // x^2 - 2 is Eisenstein at 2
        assert!(dedekind_test(&m(&[0, -2]), 2).unwrap().p_maximal);
        assert!(matches!(dedekind_test(&m(&[0, -1]), 2), Err(Error::ContractViolation(_))));
        assert!(dedekind_test(&m(&[0, -2]), 4).is_err());
    }

    #[test]
    fn certificate_examples() {
        let c = field_disc_certificate(&m(&[0, -5])).unwrap();
        assert_eq!((c.d.clone(), c.c.clone(), c.status), (BigUint::from(5u32), BigUint::from(5u32), CertificateStatus::Exact));
        let c = field_disc_certificate(&m(&[0, 0, 0, 0, -2])).unwrap();
        assert_eq!(c.d, BigUint::from(50000u32));
        assert_eq!(c.c, BigUint::from(10u32));
        assert!(c.is_exact() && c.records.iter().all(|r| r.dedekind_p_maximal));
        assert!(matches!(field_disc_certificate(&m(&[0, -4])), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn dedekind_only_leaves_index_primes_open() {
        let strict = CertificateOptions::dedekind_only();
        let c = field_disc_certificate_with(&m(&[0, 3]), strict).unwrap();
        assert_eq!(c.status, CertificateStatus::Partial);
        assert_eq!(c.unresolved_primes(), vec![&BigUint::from(2u32)]);
        assert_eq!(c.c, BigUint::from(3u32));
        assert!(!c.c_complete);
        // with the parity rule the same prime resolves to exponent 0
        let c = field_disc_certificate(&m(&[0, 3])).unwrap();
        assert_eq!((c.d, c.status), (BigUint::from(3u32), CertificateStatus::Exact));
    }

    #[test]
    fn quadratic_fields_match_the_closed_form() {
        // |Disc Q(sqrt d)| for squarefree d is |d| or 4|d|
        for d in -30i64..=30 {
            let sqf = d != 0 && d != 1 && (2..6i64).all(|q| d % (q * q) != 0);
            if !sqf {
                continue;
            }
            let expected = if d.rem_euclid(4) == 1 { d.unsigned_abs() } else { 4 * d.unsigned_abs() };
            let c = field_disc_certificate(&m(&[0, -d])).unwrap();
            assert!(c.is_exact(), "d = {d}");
            assert_eq!(c.d, BigUint::from(expected), "d = {d}");
        }
    }

    proptest! {
        #[test]
        fn unramified_primes_are_maximal(a in proptest::collection::vec(-6i64..=6, 2..=4)) {
            let f = m(&a).to_intpoly();
            let disc = discriminant(&f).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13] {
                if !disc.is_zero() && valuation(&disc, &BigUint::from(p)) == 0 {
                    prop_assert!(dedekind_maximal(&f, p));
                }
            }
        }

        #[test]
        fn maximal_records_are_exact(a in proptest::collection::vec(-6i64..=6, 2..=4)) {
            let f = m(&a);
            if is_irreducible_over_q(&f.to_intpoly()).unwrap() {
                let c = field_disc_certificate(&f).unwrap();
                for r in &c.records {
                    if r.dedekind_p_maximal {
                        prop_assert_eq!(r.v_p_disc_k, Some(r.v_p_disc_f));
                    }
                }
                prop_assert_eq!(c.is_exact(), c.records.iter().all(|r| r.v_p_disc_k.is_some()));
            }
        }

        #[test]
        fn scaled_roots_give_the_same_field(a in proptest::collection::vec(-5i64..=5, 2..=5), p in prop::sample::select(vec![2i64, 3])) {
            let f = m(&a);
            prop_assume!(is_irreducible_over_q(&f.to_intpoly()).unwrap());
            // p*theta generates the same field
            let scaled: Vec<i64> = a.iter().enumerate().map(|(i, c)| c * p.pow(i as u32 + 1)).collect();
            let c1 = field_disc_certificate(&f).unwrap();
            let c2 = field_disc_certificate(&m(&scaled)).unwrap();
            prop_assert!(c1.is_exact() && c2.is_exact());
            prop_assert_eq!(c1.d, c2.d);
        }
    }
}
