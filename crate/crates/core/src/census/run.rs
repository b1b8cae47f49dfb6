use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::cases::case_decompose;
use super::checkpoint::Checkpoint;
use super::config::{CensusConfig, Mode};
use super::counters::Counters;
use super::report::CensusReport;
use crate::error::{Error, Result};
use crate::galois::classify::{classify_key, monic_normalization};
use crate::galois::dedekind::certificate_unchecked;
use crate::galois::tables::{group_table, symmetric_name};
use crate::galois::{classify_coefficients, ClassifyOptions};
use crate::intpoly::IntPoly;

/// Per-run data shared by every shard.
struct Context {
    opts: ClassifyOptions,
    symmetric: String,
    primitive: BTreeSet<String>,
}

impl Context {
    fn new(cfg: &CensusConfig) -> Result<Self> {
        let primitive = group_table(cfg.n)?.iter().filter(|e| e.is_primitive).map(|e| e.name.clone()).collect();
        Ok(Context { opts: cfg.classify_options(), symmetric: symmetric_name(cfg.n), primitive })
    }
}

/// Prefix indices `[lo, hi)` covered by a shard.
pub fn shard_range(cfg: &CensusConfig, shard: usize) -> (u64, u64) {
    let total = (cfg.side() as u128).pow(cfg.prefix_len() as u32);
    let s = cfg.shard_count as u128;
    let lo = total * shard as u128 / s;
    let hi = total * (shard as u128 + 1) / s;
    (lo as u64, hi as u64)
}

/// Classify one box point, given from the leading coefficient down, and
/// add it to the counters.
fn tally_point(cfg: &CensusConfig, ctx: &Context, coeffs: &[i64], out: &mut Counters) -> Result<()> {
    let (name, certainty, intransitive) = match cfg.mode {
        Mode::Monic => classify_key(&coeffs[1..], &ctx.opts)?,
        Mode::NonMonic => {
            let l = classify_coefficients(coeffs, &ctx.opts)?;
            (l.group_name, l.certainty, l.intransitive_or_degenerate)
        }
    };
    out.record_label(&name, certainty, intransitive);
    let decided_primitive = certainty == crate::galois::Certainty::Certified
        && !intransitive
        && name != ctx.symmetric
        && ctx.primitive.contains(&name);
    if !decided_primitive {
        return Ok(());
    }
    out.primitive_non_sn += 1;
    let f = IntPoly::from_i64(&coeffs.iter().rev().copied().collect::<Vec<_>>());
    let monic = if f.is_monic() { f } else { monic_normalization(&f) };
    let cert = certificate_unchecked(&monic, cfg.certificate)?;
    if !cert.is_exact() {
        out.excluded_partial += 1;
        return Ok(());
    }
    out.exact_certificates += 1;
    if !cert.d_is_squarefull() {
        out.record_exception(coeffs);
    }
    out.cases.record(&case_decompose(&cert, cfg.h, cfg.delta));
    Ok(())
}

/// Counters for one shard: every coefficient vector whose prefix index lies
/// in the shard's range, in lexicographic order.
pub fn run_shard(cfg: &CensusConfig, shard: usize) -> Result<Counters> {
    let ctx = Context::new(cfg)?;
    run_shard_with(cfg, &ctx, shard)
}

fn run_shard_with(cfg: &CensusConfig, ctx: &Context, shard: usize) -> Result<Counters> {
    let side = cfg.side();
    let h = cfg.h as i64;
    let m = cfg.prefix_len();
    let dim = cfg.dimension();
    let offset = usize::from(cfg.mode == Mode::Monic);
    // coefficients from the leading one down; the monic leading 1 is fixed
    let mut coeffs = vec![1i64; dim + offset];
    let (lo, hi) = shard_range(cfg, shard);
    let mut out = Counters::default();
    for idx in lo..hi {
        let mut rest = idx;
        for pos in (0..m).rev() {
            coeffs[offset + pos] = (rest % side) as i64 - h;
            rest /= side;
        }
        for c in &mut coeffs[offset + m..] {
            *c = -h;
        }
        loop {
            tally_point(cfg, ctx, &coeffs, &mut out)?;
            // odometer over the suffix, last coefficient fastest
            let mut pos = coeffs.len();
            let mut advanced = false;
            while pos > offset + m {
                pos -= 1;
                if coeffs[pos] < h {
                    coeffs[pos] += 1;
                    advanced = true;
                    break;
                }
                coeffs[pos] = -h;
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(out)
}

/// Enumerate the whole box, resuming from and updating the configured
/// checkpoint. Stops early with [`Error::Interrupted`] when
/// `stop_after_shards` is reached.
pub fn enumerate_census(cfg: &CensusConfig) -> Result<CensusReport> {
    cfg.validate()?;
    let start = Instant::now();
    let hash = cfg.config_hash();
    let state = match &cfg.checkpoint {
        Some(p) if p.exists() => Checkpoint::load(p, &hash)?,
        _ => Checkpoint::new(hash),
    };
    let done: BTreeSet<usize> = state.completed_shard_ids.iter().copied().collect();
    if done.iter().any(|&s| s >= cfg.shard_count) {
        return Err(Error::Checkpoint("checkpoint lists shards outside this configuration".into()));
    }
    let remaining: Vec<usize> = (0..cfg.shard_count).filter(|s| !done.contains(s)).collect();
    let ctx = Context::new(cfg)?;
    let threads = cfg.resolved_threads()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let shared = Mutex::new((state, None::<Error>));
    let started = AtomicUsize::new(0);
    let failed = AtomicBool::new(false);
    pool.install(|| {
        remaining.par_iter().for_each(|&shard| {
            if failed.load(Ordering::Relaxed) {
                return;
            }
            if let Some(limit) = cfg.stop_after_shards {
                if started.fetch_add(1, Ordering::SeqCst) >= limit {
                    return;
                }
            }
            let result = run_shard_with(cfg, &ctx, shard);
            let mut guard = shared.lock().expect("aggregator lock");
            let (state, err) = &mut *guard;
            match result {
                Ok(c) => {
                    state.record(shard, &c);
                    if let Some(p) = &cfg.checkpoint {
                        if let Err(e) = state.save(p) {
                            failed.store(true, Ordering::Relaxed);
                            err.get_or_insert(e);
                        }
                    }
                }
                Err(e) => {
                    failed.store(true, Ordering::Relaxed);
                    err.get_or_insert(e);
                }
            }
        })
    });
    let (state, err) = shared.into_inner().expect("aggregator lock");
    if let Some(e) = err {
        return Err(e);
    }
    let completed = state.completed_shard_ids.len();
    if completed < cfg.shard_count {
        return Err(Error::Interrupted { completed, total: cfg.shard_count });
    }
    let mut report = CensusReport::build(cfg, &state.partial_counters)?;
    report.wall_time_secs = start.elapsed().as_secs_f64();
    report.threads = threads.unwrap_or_else(|| pool.current_num_threads());
    report.shard_digests = state.shard_digests.into_iter().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shards_cover_prefixes_once() {
        let mut cfg = CensusConfig::new(3, 2);
        for s in [1, 2, 3, 7, 30] {
            cfg.shard_count = s;
            let mut next = 0;
            for i in 0..s {
                let (lo, hi) = shard_range(&cfg, i);
                assert_eq!(lo, next);
                next = hi;
            }
            assert_eq!(next, 25);
        }
    }

    #[test]
    fn every_point_is_visited() {
        for (n, h, mode) in [(1, 2, Mode::Monic), (2, 1, Mode::Monic), (3, 2, Mode::Monic), (2, 2, Mode::NonMonic)] {
            let mut cfg = CensusConfig::new(n, h);
            cfg.mode = mode;
            cfg.shard_count = 3;
            let total: u64 = (0..3).map(|s| run_shard(&cfg, s).unwrap().total).sum();
            assert_eq!(total, cfg.box_size());
        }
    }

    #[test]
    fn quadratics_h1() {
        let report = enumerate_census(&CensusConfig::new(2, 1)).unwrap();
        assert_eq!(report.total, 9);
        // x^2, x^2 +- x, x^2 - 1 are the reducible ones
        assert_eq!(report.e_n_lower, 4);
        assert_eq!(report.e_n_upper, 4);
    }

    #[test]
    fn interrupted_runs_resume() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = CensusConfig::new(3, 3);
        cfg.shard_count = 5;
        cfg.checkpoint = Some(dir.path().join("cp.json"));
        cfg.stop_after_shards = Some(2);
        assert!(matches!(enumerate_census(&cfg), Err(Error::Interrupted { completed: 2, total: 5 })));
        cfg.stop_after_shards = None;
        let resumed = enumerate_census(&cfg).unwrap();
        let clean = enumerate_census(&CensusConfig { checkpoint: None, ..cfg.clone() }).unwrap();
        assert_eq!(resumed.to_csv(), clean.to_csv());
        // a checkpoint from another box is refused
        let other = CensusConfig { h: 4, ..cfg };
        assert!(matches!(enumerate_census(&other), Err(Error::Checkpoint(_))));
    }
}
