//! The `galois-census` command line.
//!
//! Exit codes: 0 success, 1 a checked property failed (or a runtime error),
//! 2 usage error, 3 resource limit.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::census::{enumerate_census, fit_exponent, write_atomic, CensusConfig, Mode, ReportSummary};
use crate::error::{Error, Result};
use crate::ffpoly::fourier::{fourier_transform_w_capped, DEFAULT_CAP};
use crate::ffpoly::{fourier_sweep, poisson_box_count, FourierReport, SplittingType};
use crate::galois::dedekind::{field_disc_certificate_with, CertificateOptions};
use crate::galois::tables::table_csv;
use crate::galois::{classify, ClassifyOptions, Evidence, GaloisLabel};
use crate::intpoly::ddisc::{disc_in_an_i64, double_discriminant_i64};
use crate::intpoly::{parse_poly, IntPoly, MonicIntPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "galois-census", version, about = "Galois group census of integer polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a coefficient box and tally Galois groups.
    Census(CensusArgs),
    /// Classify one polynomial.
    Classify(ClassifyArgs),
    /// Double discriminant of x^n + a_1 x^(n-1) + ... + a_(n-1) x + t.
    Dd(DdArgs),
    /// Exact Fourier transforms of the splitting-type weights mod p.
    Ftcheck(FtArgs),
    /// Count box points with prescribed index at given primes.
    Boxcount(BoxArgs),
    /// Dump the transitive group tables as CSV.
    Tables(TablesArgs),
    /// Growth series and exponent fit over several census runs.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Monic,
    NonMonic,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(short = 'n', long = "degree")]
    pub n: usize,
    #[arg(short = 'H', long = "height")]
    pub h: u64,
    #[arg(long, value_enum, default_value = "monic")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(short = 'B', long = "prime-bound", default_value_t = crate::galois::classify::DEFAULT_PRIME_BOUND)]
    pub prime_bound: u64,
    #[arg(long, default_value_t = 8)]
    pub shards: usize,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Largest box the run may enumerate.
    #[arg(long, default_value_t = crate::census::config::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Certify field discriminants by Dedekind's criterion alone.
    #[arg(long)]
    pub dedekind_only: bool,
    /// Report CSV; a `.meta` sidecar holds the run metadata.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub polynomial: String,
    #[arg(short = 'B', long = "prime-bound", default_value_t = crate::galois::classify::DEFAULT_PRIME_BOUND)]
    pub prime_bound: u64,
    /// Also certify the field discriminant.
    #[arg(long)]
    pub disc: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DdArgs {
    #[arg(short = 'n', long = "degree")]
    pub n: usize,
    /// a_1,...,a_(n-1)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub prefix: Vec<i64>,
    /// Also print Disc_x as a polynomial in t.
    #[arg(long)]
    pub inner: bool,
}

#[derive(Debug, Args)]
pub struct FtArgs {
    #[arg(short = 'p', long)]
    pub p: u64,
    #[arg(short = 'n', long = "degree")]
    pub n: usize,
    /// One splitting type such as "1^2 1"; without it every type of index
    /// at least --min-index is swept.
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub min_index: usize,
    /// Largest p^n transformed.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoxArgs {
    #[arg(short = 'n', long = "degree")]
    pub n: usize,
    #[arg(short = 'H', long = "height")]
    pub h: u64,
    /// p:k, meaning index at least k at p. Repeatable.
    #[arg(long = "cond", value_parser = parse_condition)]
    pub conditions: Vec<(u64, usize)>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// One degree; all of 1..=7 when omitted.
    #[arg(short = 'n', long = "degree")]
    pub n: Option<usize>,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Census report CSVs of one degree.
    pub inputs: Vec<PathBuf>,
    /// Run censuses instead: the degree.
    #[arg(short = 'n', long = "degree")]
    pub n: Option<usize>,
    /// Run censuses instead: the heights.
    #[arg(long, value_delimiter = ',')]
    pub heights: Vec<u64>,
    #[arg(long, default_value_t = 8)]
    pub shards: usize,
    /// Writes PREFIX.csv and PREFIX.gp.
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

fn parse_condition(s: &str) -> std::result::Result<(u64, usize), String> {
    let (p, k) = s.split_once(':').ok_or_else(|| format!("expected p:k, got {s:?}"))?;
    let p = p.trim().parse().map_err(|_| format!("bad prime in {s:?}"))?;
    let k = k.trim().parse().map_err(|_| format!("bad index in {s:?}"))?;
    Ok((p, k))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::InvalidArgument(_) | Error::Parse(_) | Error::UnsupportedDegree { .. } => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

/// Parse `args` (program name first) and execute, writing results to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Census(a) => census(a, out),
        Command::Classify(a) => classify_cmd(a, out),
        Command::Dd(a) => dd(a, out),
        Command::Ftcheck(a) => ftcheck(a, out),
        Command::Boxcount(a) => boxcount(a, out),
        Command::Tables(a) => tables(a, out),
        Command::Report(a) => report(a, out),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

pub fn census_config(a: &CensusArgs) -> CensusConfig {
    let mut cfg = CensusConfig::new(a.n, a.h);
    cfg.mode = match a.mode {
        ModeArg::Monic => Mode::Monic,
        ModeArg::NonMonic => Mode::NonMonic,
    };
    cfg.delta = a.delta;
    cfg.prime_bound = a.prime_bound;
    cfg.shard_count = a.shards;
    cfg.threads = a.threads;
    cfg.checkpoint = a.checkpoint.clone();
    cfg.budget = a.budget;
    if a.dedekind_only {
        cfg.certificate = CertificateOptions::dedekind_only();
    }
    cfg
}

fn census(a: &CensusArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = census_config(a);
    let report = enumerate_census(&cfg)?;
    match &a.output {
        Some(p) => {
            write_atomic(p, report.to_csv().as_bytes())?;
            write_atomic(&sidecar(p), report.meta_lines().as_bytes())?;
            out.write_all(report.to_text().as_bytes())?;
        }
        None => out.write_all(report.to_csv().as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn describe(e: &Evidence) -> String {
    match e {
        Evidence::Factorization { shape } => format!("factorization {shape}"),
        Evidence::Discriminant { value, square } => {
            format!("discriminant {value} ({})", if *square { "square" } else { "not a square" })
        }
        Evidence::Resolvent { name, polynomial, integer_roots } => {
            let roots = if integer_roots.is_empty() { "none".to_string() } else { integer_roots.join(" ") };
            format!("{name} resolvent {polynomial}, integer roots: {roots}")
        }
        Evidence::Tschirnhaus { shift, polynomial } => format!("transformed by shift {shift}: {polynomial}"),
        Evidence::CycleTypes { prime_bound, witnesses } => {
            let w: Vec<String> = witnesses.iter().map(|(t, p)| format!("({t})@{p}")).collect();
            format!("cycle types below {prime_bound}: {}", w.join(" "))
        }
        Evidence::Blocks { size, transform, polynomial } => match transform {
            Some(t) => format!("blocks of size {size} after substituting {t}: factor {polynomial}"),
            None => format!("blocks of size {size}: factor {polynomial}"),
        },
        Evidence::Candidates { names } => format!("candidates {}", names.join(" ")),
        Evidence::Normalized { leading, monic } => format!("leading coefficient {leading}, classified as {monic}"),
    }
}

fn label_text(f: &IntPoly, l: &GaloisLabel) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{f}");
    let _ = writeln!(s, "group: {}", l.group_name);
    let _ = writeln!(s, "certainty: {}", l.certainty);
    let _ = writeln!(s, "evidence:");
    for e in &l.evidence {
        let _ = writeln!(s, "  {}", describe(e));
    }
    s
}

fn classify_cmd(a: &ClassifyArgs, out: &mut dyn Write) -> Result<i32> {
    let f = parse_poly(&a.polynomial)?;
    let opts = ClassifyOptions { prime_bound: a.prime_bound, non_monic_mode: true };
    let label = classify(&f, &opts)?;
    let cert = if a.disc && !label.intransitive_or_degenerate {
        let monic = if f.is_monic() { f.clone() } else { crate::galois::classify::monic_normalization(&f) };
        Some(field_disc_certificate_with(&MonicIntPoly::try_from(&monic)?, CertificateOptions::default())?)
    } else {
        None
    };
    if a.json {
        let v = serde_json::json!({ "polynomial": f.to_string(), "label": label, "certificate": cert });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        return Ok(EXIT_OK);
    }
    let mut text = label_text(&f, &label);
    if let Some(c) = cert {
        let _ = writeln!(text, "field discriminant: |D| = {} ({:?})", c.d, c.status);
        let _ = writeln!(text, "ramified primes: C = {}", c.c);
        for r in &c.records {
            let vk = r.v_p_disc_k.map_or("?".to_string(), |v| v.to_string());
            let _ = writeln!(text, "  p = {}: v_p(Disc f) = {}, v_p(D) = {vk}, {:?}", r.p, r.v_p_disc_f, r.resolution);
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn dd(a: &DdArgs, out: &mut dyn Write) -> Result<i32> {
    if a.n < 2 || a.prefix.len() + 1 != a.n {
        return Err(Error::invalid(format!("--prefix needs n - 1 = {} values for n = {}", a.n.saturating_sub(1), a.n)));
    }
    if a.inner {
        writeln!(out, "Disc_x = {}", disc_in_an_i64(a.n, &a.prefix)?.to_string().replace('x', "t"))?;
    }
    let d = double_discriminant_i64(a.n, &a.prefix)?;
    if d.degenerate {
        writeln!(out, "{} (degenerate: linear in t)", d.value)?;
    } else {
        writeln!(out, "{}", d.value)?;
    }
    Ok(EXIT_OK)
}

fn ftcheck(a: &FtArgs, out: &mut dyn Write) -> Result<i32> {
    let rows: Vec<FourierReport> = match &a.sigma {
        Some(s) => {
            let sigma: SplittingType = s.parse()?;
            vec![fourier_transform_w_capped(a.p, a.n, &sigma, a.cap)?]
        }
        None => fourier_sweep(a.p, a.n, a.min_index, a.cap)?,
    };
    let mut text = format!("{}\n", FourierReport::CSV_HEADER);
    for r in &rows {
        text.push_str(&r.csv_row());
        text.push('\n');
    }
    let k = rows.iter().map(|r| r.main_term_constant()).fold(0.0, f64::max);
    let _ = writeln!(text, "# largest main-term constant K = {k:.6}");
    emit(out, a.output.as_deref(), &text)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        writeln!(out, "{failed} of {} rows violate the bounds", rows.len())?;
        return Ok(EXIT_FAILED);
    }
    Ok(EXIT_OK)
}

fn boxcount(a: &BoxArgs, out: &mut dyn Write) -> Result<i32> {
    let b = poisson_box_count(a.n, a.h, &a.conditions)?;
    writeln!(out, "count {}", b.count)?;
    writeln!(out, "density {}", b.density)?;
    writeln!(out, "prediction {:.6}", b.density_prediction)?;
    match b.ratio {
        Some(r) => writeln!(out, "ratio {r:.6}")?,
        None => writeln!(out, "ratio n/a")?,
    }
    Ok(EXIT_OK)
}

fn tables(a: &TablesArgs, out: &mut dyn Write) -> Result<i32> {
    let text = match a.n {
        Some(n) => table_csv(n)?,
        None => {
            let mut s = String::new();
            for n in 1..=7 {
                let t = table_csv(n)?;
                // one header block for the concatenation
                if n == 1 {
                    s.push_str(&t);
                } else {
                    s.extend(t.lines().skip(2).map(|l| format!("{l}\n")));
                }
            }
            s
        }
    };
    emit(out, a.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

struct SeriesRow {
    h: u64,
    total: u64,
    lower: u64,
    upper: u64,
    intransitive: u64,
}

fn report(a: &ReportArgs, out: &mut dyn Write) -> Result<i32> {
    let mut rows = Vec::new();
    let mut degree = None;
    if let Some(n) = a.n {
        if a.heights.is_empty() || !a.inputs.is_empty() {
            return Err(Error::invalid("with -n give --heights and no input files"));
        }
        for &h in &a.heights {
            let mut cfg = CensusConfig::new(n, h);
            cfg.shard_count = a.shards;
            let r = enumerate_census(&cfg)?;
            rows.push(SeriesRow { h, total: r.total, lower: r.e_n_lower, upper: r.e_n_upper, intransitive: r.intransitive });
        }
        degree = Some(n);
    } else {
        if a.inputs.is_empty() {
            return Err(Error::invalid("give census CSV files or -n with --heights"));
        }
        for path in &a.inputs {
            let s = ReportSummary::parse(&std::fs::read_to_string(path)?)?;
            let n: usize = s.get("n")?;
            if *degree.get_or_insert(n) != n {
                return Err(Error::invalid(format!("{} has degree {n}, expected {}", path.display(), degree.unwrap())));
            }
            rows.push(SeriesRow {
                h: s.get("H")?,
                total: s.get("total")?,
                lower: s.get("E_n_lower")?,
                upper: s.get("E_n_upper")?,
                intransitive: s.get("intransitive")?,
            });
        }
    }
    rows.sort_by_key(|r| r.h);
    let n = degree.expect("set above");
    let fit = fit_exponent(&rows.iter().map(|r| (r.h as f64, r.lower as f64)).collect::<Vec<_>>())?;

    let csv_path = a.output.with_extension("csv");
    let gp_path = a.output.with_extension("gp");
    let mut csv = String::from("H,total,E_n_lower,E_n_upper,intransitive\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{},{}", r.h, r.total, r.lower, r.upper, r.intransitive);
    }
    let data = csv_path.file_name().and_then(|s| s.to_str()).unwrap_or("series.csv");
    let gp = format!(
        "set datafile separator \",\"\n\
         set logscale xy\n\
         set xlabel \"H\"\n\
         set ylabel \"E_{n}(H)\"\n\
         a = {slope:.9}\n\
         b = {intercept:.9}\n\
         f(x) = exp(b) * x**a\n\
         plot \"{data}\" every ::1 using 1:3 with points pt 7 title \"E_{n} lower\", \\\n     \
         f(x) title sprintf(\"fit, slope %.3f\", a)\n",
        slope = fit.slope,
        intercept = fit.intercept,
    );
    write_atomic(&csv_path, csv.as_bytes())?;
    write_atomic(&gp_path, gp.as_bytes())?;
    writeln!(out, "n = {n}, {} points", rows.len())?;
    writeln!(out, "slope {:.6}", fit.slope)?;
    writeln!(out, "intercept {:.6}", fit.intercept)?;
    if !fit.dropped.is_empty() {
        writeln!(out, "dropped {} points with zero count", fit.dropped.len())?;
    }
    writeln!(out, "wrote {} and {}", csv_path.display(), gp_path.display())?;
    Ok(EXIT_OK)
}
