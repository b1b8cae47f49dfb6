//! Splitting types, cycle-type partitions, and the weight functions
//! counting prescribed divisor configurations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::factor::factor_mod_p;
use super::poly::FpPoly;
use crate::error::{Error, Result};

/// Integer partition, parts in descending order. Used for factorization
/// degree patterns and permutation cycle types.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u8>);

impl Partition {
    pub fn new(mut parts: Vec<u8>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u8] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// `(n)`
    pub fn full_cycle(n: usize) -> Self {
        Partition(vec![n as u8])
    }

    /// `(n-1, 1)`
    pub fn near_full_cycle(n: usize) -> Self {
        Partition::new(vec![(n - 1) as u8, 1])
    }

    /// `(2, 1^(n-2))`
    pub fn transposition(n: usize) -> Self {
        let mut parts = vec![1u8; n - 1];
        parts[0] = 2;
        Partition(parts)
    }

    pub fn identity(n: usize) -> Self {
        Partition(vec![1u8; n])
    }

    /// Subset sums of the parts: the degrees a rational factor could have
    /// if this is the factorization pattern modulo an unramified prime.
    pub fn subset_sums(&self) -> u64 {
        let mut mask: u64 = 1;
        for &p in &self.0 {
            mask |= mask << p;
        }
        mask
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A splitting type `(f_1^e_1 ... f_r^e_r)`: multiset of (residue degree,
/// exponent) pairs, stored sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingType {
    parts: Vec<(u8, u8)>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<(u8, u8)>) -> Result<Self> {
        if parts.iter().any(|&(f, e)| f == 0 || e == 0) {
            return Err(Error::invalid("splitting type parts need degree and exponent >= 1"));
        }
        parts.sort_unstable();
        Ok(SplittingType { parts })
    }

    pub fn parts(&self) -> &[(u8, u8)] {
        &self.parts
    }

    /// `sum e_i f_i`
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&(f, e)| f as usize * e as usize).sum()
    }

    /// `sum (e_i - 1) f_i`
    pub fn index(&self) -> usize {
        self.parts.iter().map(|&(f, e)| (e as usize - 1) * f as usize).sum()
    }

    /// Product of the residue degrees times the order of the group of
    /// permutations of the parts that fix every `(f_i, e_i)`.
    pub fn aut_count(&self) -> u64 {
        let degrees: u64 = self.parts.iter().map(|&(f, _)| f as u64).product();
        degrees * self.symmetry_order()
    }

    /// `prod_t (multiplicity of part type t)!`
    pub fn symmetry_order(&self) -> u64 {
        let mut counts: BTreeMap<(u8, u8), u64> = BTreeMap::new();
        for &part in &self.parts {
            *counts.entry(part).or_default() += 1;
        }
        counts.values().map(|&c| (1..=c).product::<u64>()).product()
    }

    /// All splitting types of total degree exactly `n`, sorted.
    pub fn all_of_degree(n: usize) -> Vec<SplittingType> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen_types(n, (1, 1), &mut cur, &mut out);
        let mut types: Vec<SplittingType> =
            out.into_iter().map(|parts| SplittingType::new(parts).expect("positive parts")).collect();
        types.sort();
        types
    }

    /// All splitting types with `1 <= degree <= n`, sorted.
    pub fn all_up_to_degree(n: usize) -> Vec<SplittingType> {
        let mut all: Vec<SplittingType> = (1..=n).flat_map(Self::all_of_degree).collect();
        all.sort();
        all
    }

    /// Splitting type read off a factorization `prod P_i^e_i`.
    pub fn from_factorization(factors: &[(FpPoly, u32)]) -> Self {
        SplittingType::new(factors.iter().map(|(g, e)| (g.degree() as u8, *e as u8)).collect())
            .expect("nonconstant factors")
    }
}

/// Nondecreasing enumeration of (f, e) pairs summing to `n` in weight `f*e`.
fn gen_types(n: usize, min: (u8, u8), cur: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for f in min.0 as usize..=n {
        let e_start = if f == min.0 as usize { min.1 as usize } else { 1 };
        for e in e_start..=n / f {
            cur.push((f as u8, e as u8));
            gen_types(n - f * e, (f as u8, e as u8), cur, out);
            cur.pop();
        }
    }
}

impl fmt::Debug for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SplittingType({self})")
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|&(d, e)| if e == 1 { d.to_string() } else { format!("{d}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for SplittingType {
    type Err = Error;

    /// Whitespace-separated `f^e` tokens; `^e` optional. Surrounding
    /// parentheses are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in body.split_whitespace() {
            let (f, e) = match tok.split_once('^') {
                Some((f, e)) => (f, e),
                None => (tok, "1"),
            };
            let f: u8 = f.parse().map_err(|_| Error::Parse(format!("bad degree in {tok:?}")))?;
            let e: u8 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            parts.push((f, e));
        }
        if parts.is_empty() {
            return Err(Error::Parse(format!("empty splitting type {s:?}")));
        }
        SplittingType::new(parts)
    }
}

/// Splitting type of a monic polynomial modulo its prime.
pub fn splitting_type(f: &FpPoly) -> Result<SplittingType> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::invalid(format!("{f} is not monic")));
    }
    if f.degree() == 0 {
        return SplittingType::new(Vec::new());
    }
    let fac = factor_mod_p(f)?;
    Ok(SplittingType::from_factorization(&fac.factors))
}

/// Index `sum (e_i - 1) deg P_i` of a monic polynomial.
pub fn index_of(f: &FpPoly) -> Result<usize> {
    Ok(splitting_type(f)?.index())
}

/// Number of tuples of distinct monic irreducibles `(P_1, ..., P_r)` with
/// `deg P_i = f_i` and `prod P_i^e_i | f`, counted up to permutations of
/// indices preserving `sigma`.
pub fn weight_w(f: &FpPoly, sigma: &SplittingType) -> Result<u64> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::invalid(format!("{f} is not monic")));
    }
    if sigma.degree() > f.degree() {
        return Ok(0);
    }
    let fac = factor_mod_p(f)?;
    let available: Vec<(usize, u32)> = fac.factors.iter().map(|(g, e)| (g.degree(), *e)).collect();
    let mut used = vec![false; available.len()];
    let ordered = count_assignments(sigma.parts(), &available, &mut used);
    Ok(ordered / sigma.symmetry_order())
}

fn count_assignments(parts: &[(u8, u8)], available: &[(usize, u32)], used: &mut [bool]) -> u64 {
    let Some((&(f, e), rest)) = parts.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (j, &(deg, mult)) in available.iter().enumerate() {
        if used[j] || deg != f as usize || mult < e as u32 {
            continue;
        }
        used[j] = true;
        total += count_assignments(rest, available, used);
        used[j] = false;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(p, c)
    }

    fn st(s: &str) -> SplittingType {
        s.parse().unwrap()
    }

    #[test]
    fn splitting_type_examples() {
        // x (x - 1)^2 mod 5
        let f = fp(5, &[0, 1]).mul(&fp(5, &[-1, 1]).pow(2));
        let t = splitting_type(&f).unwrap();
        assert_eq!(t, st("1^2 1"));
        assert_eq!((t.index(), t.aut_count()), (1, 1));

        let t = splitting_type(&fp(3, &[0, 0, 1])).unwrap();
        assert_eq!(t, st("1^2"));
        assert_eq!((t.index(), t.aut_count()), (1, 1));

        let t = splitting_type(&fp(3, &[1, 0, 1])).unwrap();
        assert_eq!(t, st("2"));
        assert_eq!((t.index(), t.aut_count()), (0, 2));

        assert!(splitting_type(&fp(5, &[1, 2])).is_err());
    }

    #[test]
    fn aut_counts() {
        assert_eq!(st("1 1").aut_count(), 2);
        assert_eq!(st("1 1 1").aut_count(), 6);
        assert_eq!(st("2 2").aut_count(), 8);
        assert_eq!(st("1^2 1^2 1").aut_count(), 2);
        assert_eq!(st("3").aut_count(), 3);
    }

    #[test]
    fn weight_examples() {
        let f = fp(5, &[0, 1]).pow(2).mul(&fp(5, &[-1, 1]));
        assert_eq!(weight_w(&f, &st("1^2")).unwrap(), 1);
        let sq_free = fp(5, &[0, 1]).mul(&fp(5, &[-1, 1])).mul(&fp(5, &[-2, 1]));
        assert_eq!(weight_w(&sq_free, &st("1^2")).unwrap(), 0);
        assert_eq!(weight_w(&sq_free, &st("1 1")).unwrap(), 3);
        assert_eq!(weight_w(&sq_free, &st("1 1 1 1")).unwrap(), 0);
    }

    #[test]
    fn enumeration_counts() {
        // degree 3: 3, 2 1, 1 1 1, 1^2 1, 1^3
        let counts: Vec<usize> = (1..=4).map(|n| SplittingType::all_of_degree(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 5, 11]);
        for n in 1..=5 {
            for t in SplittingType::all_of_degree(n) {
                assert_eq!(t.degree(), n);
                assert!(t.index() < n);
            }
        }
    }

    #[test]
    fn display_round_trip() {
        for t in SplittingType::all_up_to_degree(5) {
            assert_eq!(st(&t.to_string()), t);
        }
        assert_eq!(st("(1^2 1)"), st("1 1^2"));
        assert!("".parse::<SplittingType>().is_err());
        assert!("0^2".parse::<SplittingType>().is_err());
    }

    #[test]
    fn subset_sums_mask() {
        let m = Partition::new(vec![3, 1]).subset_sums();
        assert_eq!(m, 0b11011);
    }
}
