//! Exact weight tables `w_{p,sigma}` on monic polynomials over `F_p` and
//! their discrete Fourier transforms under the coefficient dot pairing.

use std::f64::consts::TAU;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::factor::irreducibles_of_degree;
use super::poly::FpPoly;
use super::splitting::SplittingType;
use crate::error::{Error, Result};

/// Default bound on `p^n` for table construction and the DFT.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Rounding slack allowed on floating comparisons against the Weil cap.
pub const ROUNDING_SLACK: f64 = 1e-9;

/// `w_{p,sigma}(f)` for every monic `f` of degree `n`, indexed by
/// `sum_i a_i p^(i-1)` where `f = x^n + a_1 x^(n-1) + ... + a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    pub p: u64,
    pub n: usize,
    pub values: Vec<u64>,
}

impl WeightTable {
    pub fn index_of(&self, f: &FpPoly) -> usize {
        tuple_index(&f.monic_tuple(), self.p)
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Table of `f -> w(f(x + c))`.
    pub fn translated(&self, c: u64) -> WeightTable {
        let mut values = vec![0; self.values.len()];
        for (idx, slot) in values.iter_mut().enumerate() {
            let f = FpPoly::from_monic_tuple(self.p, &index_tuple(idx, self.p, self.n));
            *slot = self.values[self.index_of(&f.shift(c))];
        }
        WeightTable { p: self.p, n: self.n, values }
    }
}

pub(crate) fn tuple_index(a: &[u64], p: u64) -> usize {
    a.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub(crate) fn index_tuple(mut idx: usize, p: u64, n: usize) -> Vec<u64> {
    let mut a = Vec::with_capacity(n);
    for _ in 0..n {
        a.push((idx % p as usize) as u64);
        idx /= p as usize;
    }
    a
}

pub(crate) fn check_cap(p: u64, n: usize, cap: u64) -> Result<u64> {
    let size = (p as f64).powi(n as i32);
    if size > cap as f64 {
        return Err(Error::ResourceLimit { what: format!("table of size {p}^{n}"), needed: size, cap: cap as f64 });
    }
    Ok(p.pow(n as u32))
}

/// Builds the table by enumerating every admissible tuple `(P_1, ..., P_r)`
/// and every cofactor `Q`, adding one to `w(P_1^e_1 ... P_r^e_r Q)`.
pub fn weight_table(p: u64, n: usize, sigma: &SplittingType, cap: u64) -> Result<WeightTable> {
    let size = check_cap(p, n, cap)? as usize;
    let d = sigma.degree();
    if d > n {
        return Err(Error::invalid(format!("splitting type {sigma} has degree {d} > {n}")));
    }
    let mut pools: Vec<Vec<FpPoly>> = Vec::new();
    for &(f, _) in sigma.parts() {
        pools.push(irreducibles_of_degree(p, f as usize));
    }
    let cofactors: Vec<FpPoly> = (0..p.pow((n - d) as u32) as usize)
        .map(|idx| FpPoly::from_monic_tuple(p, &index_tuple(idx, p, n - d)))
        .collect();
    let mut ordered = vec![0u64; size];
    let mut chosen: Vec<FpPoly> = Vec::new();
    visit_tuples(sigma.parts(), &pools, &mut chosen, &mut |m| {
        for q in &cofactors {
            ordered[tuple_index(&m.mul(q).monic_tuple(), p)] += 1;
        }
    });
    let sym = sigma.symmetry_order();
    let values = ordered.into_iter().map(|v| v / sym).collect();
    Ok(WeightTable { p, n, values })
}

fn visit_tuples(
    parts: &[(u8, u8)],
    pools: &[Vec<FpPoly>],
    chosen: &mut Vec<FpPoly>,
    emit: &mut dyn FnMut(&FpPoly),
) {
    let i = chosen.len();
    if i == parts.len() {
        let p = pools.first().and_then(|pool| pool.first()).map_or(2, FpPoly::modulus);
        let mut m = FpPoly::one(p);
        for (g, &(_, e)) in chosen.iter().zip(parts) {
            m = m.mul(&g.pow(e as u32));
        }
        emit(&m);
        return;
    }
    for g in &pools[i] {
        if chosen.contains(g) {
            continue;
        }
        chosen.push(g.clone());
        visit_tuples(parts, pools, chosen, emit);
        chosen.pop();
    }
}

/// Complex DFT `p^-n sum_f w(f) e^{2 pi i [f,g]/p}` for every `g`, same
/// indexing as the table.
pub fn dft(table: &WeightTable) -> Vec<(f64, f64)> {
    let p = table.p as usize;
    let twiddle: Vec<(f64, f64)> = (0..p).map(|k| (TAU * k as f64 / p as f64).sin_cos()).map(|(s, c)| (c, s)).collect();
    let mut data: Vec<(f64, f64)> = table.values.iter().map(|&v| (v as f64, 0.0)).collect();
    let mut line = vec![(0.0, 0.0); p];
    let mut stride = 1usize;
    for _ in 0..table.n {
        for base in 0..data.len() {
            if (base / stride) % p != 0 {
                continue;
            }
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = data[base + j * stride];
            }
            for k in 0..p {
                let mut acc = Kahan::default();
                for (j, &(re, im)) in line.iter().enumerate() {
                    let (c, s) = twiddle[(j * k) % p];
                    acc.add(re * c - im * s, re * s + im * c);
                }
                data[base + k * stride] = acc.value();
            }
        }
        stride *= p;
    }
    let scale = 1.0 / data.len() as f64;
    data.into_iter().map(|(re, im)| (re * scale, im * scale)).collect()
}

#[derive(Default)]
struct Kahan {
    re: f64,
    im: f64,
    c_re: f64,
    c_im: f64,
}

impl Kahan {
    fn add(&mut self, re: f64, im: f64) {
        let y = re - self.c_re;
        let t = self.re + y;
        self.c_re = (t - self.re) - y;
        self.re = t;
        let y = im - self.c_im;
        let t = self.im + y;
        self.c_im = (t - self.im) - y;
        self.im = t;
    }

    fn value(&self) -> (f64, f64) {
        (self.re, self.im)
    }
}

/// Magnitudes `|w^(g)|` for all `g`, index 0 first.
pub fn dft_magnitudes(table: &WeightTable) -> Vec<f64> {
    dft(table).into_iter().map(|(re, im)| re.hypot(im)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierReport {
    pub p: u64,
    pub n: usize,
    pub sigma: SplittingType,
    pub k: usize,
    pub aut: u64,
    /// `w^(0)` as a reduced fraction.
    pub what_zero_num: i64,
    pub what_zero_den: i64,
    pub max_nonzero: f64,
    pub main_term: f64,
    pub weil_cap: f64,
    /// `n^2 p^(-k-1)`
    pub error_cap: f64,
    /// The nonzero-frequency bound is only claimed for `p > n`.
    pub weil_applicable: bool,
    pub pass: bool,
}

impl FourierReport {
    pub fn what_zero(&self) -> Rational64 {
        Rational64::new(self.what_zero_num, self.what_zero_den)
    }

    /// `|w^(0) - p^-k / #Aut| p^(k+1)`, the constant realized in the
    /// main-term error.
    pub fn main_term_constant(&self) -> f64 {
        let diff = self.what_zero() - main_term_exact(self.p, self.k, self.aut);
        diff.abs().to_f64().unwrap_or(f64::INFINITY) * (self.p as f64).powi(self.k as i32 + 1)
    }

    pub const CSV_HEADER: &'static str = "p,n,sigma,k,aut,what_zero_num,what_zero_den,max_nonzero,weil_cap,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.12e},{:.12e},{}",
            self.p,
            self.n,
            self.sigma,
            self.k,
            self.aut,
            self.what_zero_num,
            self.what_zero_den,
            self.max_nonzero,
            self.weil_cap,
            self.pass
        )
    }
}

fn main_term_exact(p: u64, k: usize, aut: u64) -> Rational64 {
    Rational64::new(1, p.pow(k as u32) as i64 * aut as i64)
}

pub fn fourier_transform_w(p: u64, n: usize, sigma: &SplittingType) -> Result<FourierReport> {
    fourier_transform_w_capped(p, n, sigma, DEFAULT_CAP)
}

pub fn fourier_transform_w_capped(p: u64, n: usize, sigma: &SplittingType, cap: u64) -> Result<FourierReport> {
    if !crate::intpoly::is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let table = weight_table(p, n, sigma, cap)?;
    Ok(report_from_table(&table, sigma))
}

pub fn report_from_table(table: &WeightTable, sigma: &SplittingType) -> FourierReport {
    let (p, n) = (table.p, table.n);
    let k = sigma.index();
    let aut = sigma.aut_count();
    let size = table.values.len() as i64;
    let what_zero = Rational64::new(table.total() as i64, size);
    let mags = dft_magnitudes(table);
    let max_nonzero = mags[1..].iter().copied().fold(0.0, f64::max);
    let pf = p as f64;
    let weil_cap = (n as f64 - 1.0) * pf.powf(-(k as f64) - 0.5);
    let error_cap = (n * n) as f64 * pf.powi(-(k as i32) - 1);
    let main = main_term_exact(p, k, aut);
    let main_ok = (what_zero - main).abs().to_f64().unwrap_or(f64::INFINITY) <= error_cap;
    let weil_applicable = p > n as u64;
    let weil_ok = !weil_applicable || max_nonzero <= weil_cap + ROUNDING_SLACK;
    FourierReport {
        p,
        n,
        sigma: sigma.clone(),
        k,
        aut,
        what_zero_num: *what_zero.numer(),
        what_zero_den: *what_zero.denom(),
        max_nonzero,
        main_term: main.to_f64().unwrap_or(0.0),
        weil_cap,
        error_cap,
        weil_applicable,
        pass: main_ok && weil_ok,
    }
}

/// Reports for every splitting type of degree `<= n` and index `>= min_index`,
/// in lexicographic order of the sorted parts.
pub fn fourier_sweep(p: u64, n: usize, min_index: usize, cap: u64) -> Result<Vec<FourierReport>> {
    SplittingType::all_up_to_degree(n)
        .into_iter()
        .filter(|s| s.index() >= min_index)
        .map(|s| fourier_transform_w_capped(p, n, &s, cap))
        .collect()
}
