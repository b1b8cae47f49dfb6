//! Galois group classification for degrees 1 through 7.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::blocks::find_blocks;
use super::resolvent::{depress_quintic, quartic_resolvent, sextic_resolvent, tschirnhaus};
use super::small::{self, Small};
use super::tables::{group_table, symmetric_name};
use crate::error::{Error, Result};
use crate::ffpoly::factor::degree_pattern;
use crate::ffpoly::small as ffsmall;
use crate::ffpoly::{FpPoly, Partition, SplittingType};
use crate::intpoly::factor::integer_roots_hensel;
use crate::intpoly::integer::primes_up_to_cached;
use crate::intpoly::{discriminant, factor_over_q, is_perfect_square, IntPoly, MonicIntPoly};

pub const DEFAULT_PRIME_BOUND: u64 = 10_000;
pub const MAX_DEGREE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    Certified,
    Heuristic,
    Undecided,
}

impl Certainty {
    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::Certified => "certified",
            Certainty::Heuristic => "heuristic",
            Certainty::Undecided => "undecided",
        }
    }
}

impl std::fmt::Display for Certainty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Factorization { shape: String },
    Discriminant { value: String, square: bool },
    Resolvent { name: String, polynomial: String, integer_roots: Vec<String> },
    Tschirnhaus { shift: i64, polynomial: String },
    CycleTypes { prime_bound: u64, witnesses: Vec<(String, u64)> },
    Blocks { size: usize, transform: Option<String>, polynomial: String },
    Candidates { names: Vec<String> },
    Normalized { leading: String, monic: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisLabel {
    pub degree: usize,
    pub group_name: String,
    pub certainty: Certainty,
    pub evidence: Vec<Evidence>,
    /// Reducible, inseparable or degree-dropped input.
    pub intransitive_or_degenerate: bool,
}

impl GaloisLabel {
    pub fn is_symmetric(&self) -> bool {
        !self.intransitive_or_degenerate && self.group_name == symmetric_name(self.degree)
    }

    /// `Some(true)` for a decided non-`S_n` label, `None` when undecided.
    pub fn is_non_symmetric(&self) -> Option<bool> {
        match self.certainty {
            Certainty::Undecided => None,
            _ => Some(!self.is_symmetric()),
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.intransitive_or_degenerate
            && group_table(self.degree)
                .map(|t| t.iter().any(|e| e.name == self.group_name && e.is_primitive))
                .unwrap_or(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub prime_bound: u64,
    /// Accept a non-monic leading coefficient, classifying through the monic
    /// normalization `a_0^(n-1) f(x / a_0)`.
    pub non_monic_mode: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { prime_bound: DEFAULT_PRIME_BOUND, non_monic_mode: false }
    }
}

/// Frobenius cycle types seen at unramified primes, each with its first
/// witness prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSample {
    pub prime_bound: u64,
    pub witnesses: BTreeMap<Partition, u64>,
}

impl CycleSample {
    fn evidence(&self) -> Evidence {
        Evidence::CycleTypes {
            prime_bound: self.prime_bound,
            witnesses: self.witnesses.iter().map(|(p, &q)| (p.to_string(), q)).collect(),
        }
    }
}

fn sample_until(f: &IntPoly, prime_bound: u64, mut stop: impl FnMut(&BTreeMap<Partition, u64>) -> bool) -> CycleSample {
    let n = f.degree();
    let mut witnesses = BTreeMap::new();
    let small: Option<Vec<i64>> = (n <= ffsmall::MAX_DEGREE && f.is_monic())
        .then(|| f.coeffs().iter().map(|c| c.to_i64()).collect())
        .flatten();
    let mut residues = vec![0u64; n + 1];
    for &p in primes_up_to_cached(prime_bound) {
        let pattern = match &small {
            Some(c) if p < ffsmall::MAX_PRIME => {
                for (r, &ci) in residues.iter_mut().zip(c) {
                    *r = ci.rem_euclid(p as i64) as u64;
                }
                ffsmall::degree_pattern_small(&residues, p)
            }
            _ => {
                let fp = FpPoly::from_intpoly(f, p);
                (fp.degree() == n && fp.is_squarefree()).then(|| degree_pattern(&fp))
            }
        };
        if let Some(pat) = pattern {
            witnesses.entry(pat).or_insert(p);
            if stop(&witnesses) {
                break;
            }
        }
    }
    CycleSample { prime_bound, witnesses }
}

pub fn cycle_type_sample(f: &MonicIntPoly, prime_bound: u64) -> Result<CycleSample> {
    if prime_bound < 2 {
        return Err(Error::invalid(format!("prime bound {prime_bound} < 2")));
    }
    Ok(sample_until(&f.to_intpoly(), prime_bound, |_| false))
}

fn shape_name(fac_shape: &[(usize, u32)], separable: bool) -> String {
    let st = SplittingType::new(fac_shape.iter().map(|&(d, e)| (d as u8, e as u8)).collect())
        .expect("nonempty factorization of positive degree");
    format!("{}({st})", if separable { "red" } else { "insep" })
}

fn label(n: usize, name: &str, certainty: Certainty, evidence: Vec<Evidence>) -> GaloisLabel {
    GaloisLabel { degree: n, group_name: name.to_string(), certainty, evidence, intransitive_or_degenerate: false }
}

fn reducible_label(f: &IntPoly) -> Result<GaloisLabel> {
    let fac = factor_over_q(f)?;
    let shape = shape_name(&fac.shape(), fac.is_squarefree());
    Ok(GaloisLabel {
        degree: f.degree(),
        group_name: shape.clone(),
        certainty: Certainty::Certified,
        evidence: vec![Evidence::Factorization { shape }],
        intransitive_or_degenerate: true,
    })
}

pub fn degenerate_label(n: usize) -> GaloisLabel {
    GaloisLabel {
        degree: n,
        group_name: "degenerate".into(),
        certainty: Certainty::Certified,
        evidence: vec![Evidence::Factorization { shape: "leading coefficient 0".into() }],
        intransitive_or_degenerate: true,
    }
}

fn disc_evidence(disc: &BigInt) -> (bool, Evidence) {
    let square = is_perfect_square(disc);
    (square, Evidence::Discriminant { value: disc.to_string(), square })
}

/// Classify an integer polynomial. Monic input is required unless
/// `non_monic_mode` is set.
pub fn classify(f: &IntPoly, opts: &ClassifyOptions) -> Result<GaloisLabel> {
    let n = f.degree();
    if f.is_zero() || n == 0 || n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree { degree: n, supported: "1..=7" });
    }
    if f.is_monic() {
        return classify_monic_poly(f, opts);
    }
    if !opts.non_monic_mode {
        return Err(Error::invalid(format!("{f} is not monic; enable non-monic mode")));
    }
    let a0 = f.leading();
    let monic = monic_normalization(f);
    let mut out = classify_monic_poly(&monic, opts)?;
    out.evidence.insert(0, Evidence::Normalized { leading: a0.to_string(), monic: monic.to_string() });
    Ok(out)
}

/// `a_0^(n-1) f(x / a_0)`, monic with integer coefficients and the same
/// splitting field.
pub fn monic_normalization(f: &IntPoly) -> IntPoly {
    let n = f.degree();
    let a0 = f.leading();
    let coeffs = (0..=n)
        .map(|i| if i == n { BigInt::one() } else { f.coeff(i) * num_traits::pow(a0.clone(), n - 1 - i) })
        .collect();
    IntPoly::new(coeffs)
}

pub fn classify_monic(f: &MonicIntPoly, opts: &ClassifyOptions) -> Result<GaloisLabel> {
    classify(&f.to_intpoly(), opts)
}

/// Classification of a box point `(a_0, ..., a_n)` given from the leading
/// coefficient down. A zero `a_0` is degenerate in non-monic mode.
pub fn classify_coefficients(high_to_low: &[i64], opts: &ClassifyOptions) -> Result<GaloisLabel> {
    let n = high_to_low.len().saturating_sub(1);
    if high_to_low.first() == Some(&0) {
        if !opts.non_monic_mode {
            return Err(Error::invalid("leading coefficient 0 outside non-monic mode"));
        }
        return Ok(degenerate_label(n));
    }
    let f = IntPoly::from_i64(&high_to_low.iter().rev().copied().collect::<Vec<_>>());
    classify(&f, opts)
}

fn classify_monic_poly(f: &IntPoly, opts: &ClassifyOptions) -> Result<GaloisLabel> {
    classify_monic_inner(f, opts, true)
}

fn classify_monic_inner(f: &IntPoly, opts: &ClassifyOptions, allow_small: bool) -> Result<GaloisLabel> {
    let n = f.degree();
    let a: Vec<BigInt> = (1..=n).map(|i| f.coeff(n - i)).collect();
    let small_a: Option<Vec<i64>> = a.iter().map(|c| c.to_i64()).collect();
    if let Some(sa) = small_a.filter(|sa| allow_small && small::applicable(sa)) {
        return match small::classify_small(&sa) {
            Small::Reducible => reducible_label(f),
            Small::Irreducible(name) => Ok(small_evidence(f, &a, name)),
        };
    }
    if !factor_over_q(f)?.is_irreducible() {
        return reducible_label(f);
    }
    match n {
        1 => Ok(label(1, "S1", Certainty::Certified, Vec::new())),
        2 | 3 => {
            let (square, ev) = disc_evidence(&discriminant(f)?);
            let name = match (n, square) {
                (3, true) => "C3".to_string(),
                _ => symmetric_name(n),
            };
            Ok(label(n, &name, Certainty::Certified, vec![ev]))
        }
        4 => classify_quartic(f, &a),
        5 => classify_quintic(f, &a, opts),
        _ => classify_large(f, opts),
    }
}

/// Evidence for a fast-path decision, recomputed in big integers.
fn small_evidence(f: &IntPoly, a: &[BigInt], name: &'static str) -> GaloisLabel {
    let n = f.degree();
    let mut evidence = Vec::new();
    if n >= 2 {
        let disc = discriminant(f).expect("positive degree");
        evidence.push(disc_evidence(&disc).1);
    }
    if n == 4 {
        let r = quartic_resolvent(a);
        let roots = integer_roots_hensel(&r).expect("monic resolvent");
        evidence.push(Evidence::Resolvent {
            name: "cubic".into(),
            polynomial: r.to_string(),
            integer_roots: roots.iter().map(|x| x.to_string()).collect(),
        });
    }
    label(n, name, Certainty::Certified, evidence)
}

fn is_square_over(d: &BigInt, delta: &BigInt) -> bool {
    is_perfect_square(d) || is_perfect_square(&(d * delta))
}

fn classify_quartic(f: &IntPoly, a: &[BigInt]) -> Result<GaloisLabel> {
    let disc = discriminant(f)?;
    let (square, ev) = disc_evidence(&disc);
    let r = quartic_resolvent(a);
    let roots = integer_roots_hensel(&r)?;
    let name = match roots.len() {
        0 if square => "A4",
        0 => "S4",
        1 => {
            let root = &roots[0];
            let d1 = root * root - &a[3] * 4;
            let d2 = &a[0] * &a[0] - (&a[1] - root) * 4;
            if is_square_over(&d1, &disc) && is_square_over(&d2, &disc) {
                "C4"
            } else {
                "D4"
            }
        }
        _ => "V4",
    };
    let res = Evidence::Resolvent {
        name: "cubic".into(),
        polynomial: r.to_string(),
        integer_roots: roots.iter().map(|x| x.to_string()).collect(),
    };
    Ok(label(4, name, Certainty::Certified, vec![ev, res]))
}

fn is_squarefree_z(g: &IntPoly) -> bool {
    g.gcd(&g.derivative()).degree() == 0
}

/// Largest Tschirnhaus shift tried when the sextic resolvent is not
/// squarefree.
const MAX_SHIFT: i64 = 10;

fn classify_quintic(f: &IntPoly, a: &[BigInt], opts: &ClassifyOptions) -> Result<GaloisLabel> {
    let (square, ev) = disc_evidence(&discriminant(f)?);
    let mut evidence = vec![ev];
    let mut resolvent = None;
    let mut shifts = std::iter::once(None).chain((0..=MAX_SHIFT).map(Some));
    for shift in shifts.by_ref() {
        let (g, coeffs) = match shift {
            None => (f.clone(), a.to_vec()),
            Some(c) => {
                let g = tschirnhaus(f, c);
                if !is_squarefree_z(&g) {
                    continue;
                }
                let coeffs = (1..=5).map(|i| g.coeff(5 - i)).collect::<Vec<_>>();
                (g, coeffs)
            }
        };
        let r = sextic_resolvent(&depress_quintic(&coeffs));
        if is_squarefree_z(&r) {
            if let Some(c) = shift {
                evidence.push(Evidence::Tschirnhaus { shift: c, polynomial: g.to_string() });
            }
            resolvent = Some(r);
            break;
        }
    }
    let Some(r) = resolvent else {
        return Ok(label(5, "S5", Certainty::Undecided, evidence));
    };
    let roots = integer_roots_hensel(&r)?;
    let solvable = !roots.is_empty();
    evidence.push(Evidence::Resolvent {
        name: "sextic".into(),
        polynomial: r.to_string(),
        integer_roots: roots.iter().map(|x| x.to_string()).collect(),
    });
    let (name, certainty) = match (solvable, square) {
        (false, false) => ("S5", Certainty::Certified),
        (false, true) => ("A5", Certainty::Certified),
        (true, false) => ("F20", Certainty::Certified),
        (true, true) => {
            let target = Partition::new(vec![2, 2, 1]);
            let sample = sample_until(f, opts.prime_bound, |w| w.contains_key(&target));
            let found = sample.witnesses.contains_key(&target);
            evidence.push(sample.evidence());
            if found {
                ("D5", Certainty::Certified)
            } else {
                ("C5", Certainty::Heuristic)
            }
        }
    };
    Ok(label(5, name, certainty, evidence))
}

/// Degrees 6 and 7: cycle types decide `S_n`, a square discriminant decides
/// non-`S_n`. The group name is the smallest table entry of the right
/// parity containing every observed cycle type.
fn classify_large(f: &IntPoly, opts: &ClassifyOptions) -> Result<GaloisLabel> {
    let n = f.degree();
    let (square, ev) = disc_evidence(&discriminant(f)?);
    let long = Partition::near_full_cycle(n);
    let transposition = Partition::transposition(n);
    let sample =
        sample_until(f, opts.prime_bound, |w| !square && w.contains_key(&long) && w.contains_key(&transposition));
    let seen_sn = sample.witnesses.contains_key(&long) && sample.witnesses.contains_key(&transposition);
    let mut evidence = vec![ev, sample.evidence()];
    if seen_sn && !square {
        return Ok(label(n, &symmetric_name(n), Certainty::Certified, evidence));
    }
    let blocks = if square { None } else { find_blocks(f) };
    if let Some(w) = &blocks {
        evidence.push(Evidence::Blocks {
            size: w.block_size,
            transform: w.transform.as_ref().map(|h| h.to_string()),
            polynomial: w.factor.to_string(),
        });
    }
    let candidates: Vec<&str> = group_table(n)?
        .iter()
        .filter(|e| e.contained_in_an == square && !e.is_symmetric())
        .filter(|e| blocks.is_none() || !e.is_primitive)
        .filter(|e| sample.witnesses.keys().all(|p| e.allows(p)))
        .map(|e| e.name.as_str())
        .collect();
    evidence.push(Evidence::Candidates { names: candidates.iter().map(|s| s.to_string()).collect() });
    let certainty = if square || blocks.is_some() { Certainty::Certified } else { Certainty::Undecided };
    let name = candidates.first().map(|s| s.to_string()).unwrap_or_else(|| symmetric_name(n));
    Ok(label(n, &name, certainty, evidence))
}

/// Compact classification for census enumeration of monic polynomials:
/// `(group_name, certainty, intransitive_or_degenerate)`.
pub(crate) fn classify_key(a: &[i64], opts: &ClassifyOptions) -> Result<(String, Certainty, bool)> {
    if small::applicable(a) {
        if let Small::Irreducible(name) = small::classify_small(a) {
            return Ok((name.to_string(), Certainty::Certified, false));
        }
    }
    let mut coeffs = vec![1i64];
    coeffs.extend_from_slice(a);
    let l = classify_coefficients(&coeffs, opts)?;
    Ok((l.group_name, l.certainty, l.intransitive_or_degenerate))
}
