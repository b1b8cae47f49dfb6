//! Acceptance suite. Each test prints one PASS/FAIL line and asserts.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;

use galois_census::census::{enumerate_census, fit_exponent, CensusConfig};
use galois_census::ffpoly::{fourier_sweep, fourier_transform_w, poisson_box_count, Partition, SplittingType};
use galois_census::galois::classify::cycle_type_sample;
use galois_census::galois::tables::{group_table, lookup};
use galois_census::galois::{classify, Certainty, ClassifyOptions};
use galois_census::intpoly::ddisc::{double_discriminant_i64, find_nonvanishing_dd};
use galois_census::intpoly::{prop3_check, IntPoly, MonicIntPoly};
use galois_census::Error;
use num_bigint::BigInt;
use num_rational::BigRational;

fn verdict(id: u32, what: &str, ok: bool, detail: String) {
    println!("criterion {id} {}: {what} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} failed: {detail}");
}

/// Calls `visit(a_1, ..., a_n)` for every monic point of `[-h, h]^n`.
fn for_each_monic(n: usize, h: i64, mut visit: impl FnMut(&[i64])) {
    let mut a = vec![-h; n];
    loop {
        visit(&a);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if a[i] < h {
                a[i] += 1;
                break;
            }
            a[i] = -h;
        }
    }
}

fn is_square(d: i128) -> bool {
    if d < 0 {
        return false;
    }
    let r = (d as f64).sqrt() as i128;
    (r - 2..=r + 2).any(|s| s >= 0 && s * s == d)
}

/// Non-`S_n` count for quadratics: reducible exactly when the discriminant
/// is a square.
fn oracle_e2(h: i64) -> u64 {
    let mut count = 0;
    for_each_monic(2, h, |a| {
        if is_square((a[0] * a[0] - 4 * a[1]) as i128) {
            count += 1;
        }
    });
    count
}

/// Non-`S_3` count for cubics: an integer root, or a square discriminant.
fn oracle_e3(h: i64) -> u64 {
    let mut count = 0;
    for_each_monic(3, h, |a| {
        let (p, q, r) = (a[0] as i128, a[1] as i128, a[2] as i128);
        let f = |x: i128| ((x + p) * x + q) * x + r;
        let root = if r == 0 { true } else { (1..=r.abs()).any(|d| r % d == 0 && (f(d) == 0 || f(-d) == 0)) };
        let disc = p * p * q * q - 4 * q * q * q - 4 * p * p * p * r - 27 * r * r + 18 * p * q * r;
        if root || is_square(disc) {
            count += 1;
        }
    });
    count
}

fn census(n: usize, h: u64, shards: usize) -> galois_census::census::CensusReport {
    let mut cfg = CensusConfig::new(n, h);
    cfg.shard_count = shards;
    enumerate_census(&cfg).unwrap()
}

#[test]
fn c1_exact_counts_in_small_degree() {
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, hs) in [(2usize, vec![1u64, 5, 10, 50]), (3, vec![1, 5, 10])] {
        for h in hs {
            let got = census(n, h, 4);
            let want = if n == 2 { oracle_e2(h as i64) } else { oracle_e3(h as i64) };
            ok &= got.e_n_lower == want && got.e_n_upper == want;
            detail.push(format!("E_{n}({h})={}/{want}", got.e_n_lower));
        }
    }
    ok &= census(2, 1, 1).e_n_lower == 4;
    verdict(1, "E_2 and E_3 match the brute-force oracle", ok, detail.join(" "));
}

fn slope(n: usize, hs: &[u64]) -> f64 {
    let pts: Vec<(f64, f64)> = hs.iter().map(|&h| (h as f64, census(n, h, 8).e_n_lower as f64)).collect();
    fit_exponent(&pts).unwrap().slope
}

#[test]
fn c2_growth_exponents() {
    let s3 = slope(3, &[10, 20, 40, 80]);
    let s4 = slope(4, &[5, 10, 20]);
    let ok = (1.7..=2.3).contains(&s3) && (2.6..=3.4).contains(&s4);
    verdict(2, "fitted exponents of E_3 and E_4", ok, format!("n=3 slope {s3:.4}, n=4 slope {s4:.4}"));
}

#[test]
fn c3_field_discriminants_are_squarefull() {
    let mut ok = true;
    let mut detail = Vec::new();
    let runs = (1..=8).map(|h| (4usize, h)).chain((1..=4).map(|h| (5usize, h)));
    for (n, h) in runs {
        let r = census(n, h, 8);
        ok &= r.squarefull_exceptions == 0 && r.excluded_fraction() < 0.10;
        ok &= r.exact_certificates + r.excluded_partial == r.primitive_non_sn;
        if (n, h) == (4, 8) || (n, h) == (5, 4) {
            detail.push(format!(
                "n={n} H={h}: {} primitive non-S_n, {} exceptions, excluded {:.1}%",
                r.primitive_non_sn,
                r.squarefull_exceptions,
                100.0 * r.excluded_fraction()
            ));
        }
    }
    verdict(3, "no squarefull exceptions, excluded fraction < 10%", ok, detail.join("; "));
}

#[test]
fn c4_fourier_bounds() {
    let mut ok = true;
    let mut k_max: f64 = 0.0;
    let mut rows = 0;
    let mut worst_gap = f64::INFINITY;
    for n in [2usize, 3] {
        for p in [5u64, 7, 11] {
            for r in fourier_sweep(p, n, 1, 10_000_000).unwrap() {
                rows += 1;
                ok &= r.weil_applicable && r.max_nonzero <= r.weil_cap + 1e-9;
                worst_gap = worst_gap.min(r.weil_cap - r.max_nonzero);
                k_max = k_max.max(r.main_term_constant());
            }
        }
    }
    // a single constant for every (p, n, sigma), within the smallest n^2
    ok &= k_max <= 4.0;
    let sat = fourier_transform_w(3, 2, &"1^2".parse::<SplittingType>().unwrap()).unwrap();
    let sat_ok = (sat.max_nonzero - 3f64.powf(-1.5)).abs() < 1e-9 && (sat.what_zero_num, sat.what_zero_den) == (1, 3);
    verdict(
        4,
        "Weil-type caps and main terms of the weight transforms",
        ok && sat_ok,
        format!(
            "{rows} rows, K = {k_max:.4}, min cap slack {worst_gap:.3e}, p=3 (1^2) max {:.12}",
            sat.max_nonzero
        ),
    );
}

#[test]
fn c5_box_equidistribution() {
    let r = poisson_box_count(3, 30, &[(7, 2)]).unwrap();
    let ratio = r.ratio.unwrap();
    let mut ok = (ratio - 1.0).abs() <= 0.25;
    // side 2H+1 divisible by 7: the box tiles by periods
    for h in [3u64, 10, 24] {
        let t = poisson_box_count(3, h, &[(7, 2)]).unwrap();
        let side = BigInt::from(2 * h + 1).pow(3);
        ok &= &t.density * BigRational::from_integer(side) == BigRational::from_integer(BigInt::from(t.count));
    }
    let small = poisson_box_count(2, 5, &[(3, 1)]).unwrap();
    ok &= small.count == 41;
    verdict(
        5,
        "box counts follow the local densities",
        ok,
        format!("n=3 H=30 count {} vs {:.1}, ratio {ratio:.4}; n=2 H=5 count {}", r.count, r.density_prediction, small.count),
    );
}

#[test]
fn c6_double_discriminant() {
    let mut ok = true;
    for n in 3..=6 {
        ok &= double_discriminant_i64(n, &vec![0; n - 1]).unwrap().value == BigInt::from(0);
    }
    let v = double_discriminant_i64(3, &[0, 1]).unwrap().value;
    ok &= v == BigInt::from(-432);
    let mut witnesses = Vec::new();
    for n in 3..=6 {
        match find_nonvanishing_dd(n, 2).unwrap() {
            Some((prefix, _)) => witnesses.push(format!("n={n} {prefix:?}")),
            None => ok = false,
        }
    }
    let mut checked = 0;
    for p in [3u64, 5] {
        for n in 2..=4 {
            for_each_monic(n, p as i64, |a| {
                let f = MonicIntPoly::from_i64(a).unwrap();
                let c = prop3_check(&f, p).unwrap();
                ok &= !c.persists_mod_p2 || c.partial_an_div_p;
                checked += 1;
            });
        }
    }
    verdict(6, "double discriminant values and the mod p^2 implication", ok, format!("DD(0,1)={v}; {}; {checked} checks", witnesses.join(", ")));
}

#[test]
fn c7_tables_and_sampled_cycle_types() {
    let mut ok = true;
    for n in 1..=7 {
        for e in group_table(n).unwrap() {
            if e.is_primitive && !e.is_symmetric() && n >= 2 {
                ok &= !e.allows(&Partition::transposition(n));
            }
        }
    }
    let opts = ClassifyOptions::default();
    let mut checked = 0u64;
    let mut bad: BTreeMap<String, u64> = BTreeMap::new();
    for n in 1..=5 {
        for_each_monic(n, 3, |a| {
            let mut coeffs: Vec<i64> = a.iter().rev().copied().collect();
            coeffs.push(1);
            let f = IntPoly::from_i64(&coeffs);
            let label = classify(&f, &opts).unwrap();
            if label.certainty != Certainty::Certified || label.intransitive_or_degenerate {
                return;
            }
            let entry = lookup(n, &label.group_name).expect("table entry");
            let sample = cycle_type_sample(&MonicIntPoly::from_i64(a).unwrap(), 200).unwrap();
            checked += 1;
            if !sample.witnesses.keys().all(|t| entry.allows(t)) {
                *bad.entry(label.group_name.clone()).or_default() += 1;
            }
        });
    }
    ok &= bad.is_empty();
    verdict(7, "primitive groups lack transpositions; sampled types fit the label", ok, format!("{checked} certified labels sampled, violations {bad:?}"));
}

#[test]
fn c8_determinism_and_resumption() {
    let csvs: Vec<String> = [1, 2, 8].iter().map(|&s| census(3, 20, s).to_csv()).collect();
    let mut ok = csvs.windows(2).all(|w| w[0] == w[1]);
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = CensusConfig::new(3, 20);
    cfg.shard_count = 8;
    cfg.checkpoint = Some(dir.path().join("cp.json"));
    cfg.stop_after_shards = Some(4);
    ok &= matches!(enumerate_census(&cfg), Err(Error::Interrupted { completed: 4, total: 8 }));
    cfg.stop_after_shards = None;
    let resumed = enumerate_census(&cfg).unwrap().to_csv();
    ok &= resumed == csvs[0];
    verdict(8, "shard-count invariance and resume after interruption", ok, format!("{} byte reports", csvs[0].len()));
}

#[test]
fn c9_sextic_undecided_fraction() {
    let r = census(6, 3, 8);
    let frac = r.undecided_fraction();
    let (lo, hi) = r.e_n_interval();
    let ok = frac < 0.01 && lo <= hi && hi - lo == r.undecided && lo + r.certified_sn + r.undecided == r.total;
    verdict(9, "undecided sextics below 1% of the box", ok, format!("{} of {} undecided ({:.4}%), E_6(3) in [{lo}, {hi}]", r.undecided, r.total, 100.0 * frac));
}
