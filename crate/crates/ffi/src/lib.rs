//! C ABI over `galois_census`.
//!
//! Every fallible function returns a [`GcStatus`]; on failure the message is
//! available from [`gc_last_error_message`] on the same thread. Objects are
//! opaque handles released by their `_free` function. Strings returned as
//! `char *` are owned by the caller and released with [`gc_string_free`];
//! `const char *` results are borrowed from the handle they came from.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use galois_census::census::{enumerate_census, CensusConfig, CensusReport, Mode};
use galois_census::ffpoly::{fourier_transform_w, SplittingType};
use galois_census::galois::{classify, Certainty, ClassifyOptions, GaloisLabel};
use galois_census::intpoly::ddisc::double_discriminant_i64;
use galois_census::intpoly::{discriminant, parse_poly, IntPoly};
use galois_census::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    UnsupportedDegree = 3,
    ResourceLimit = 4,
    ContractViolation = 5,
    Checkpoint = 6,
    Interrupted = 7,
    Io = 8,
    NullPointer = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcCertainty {
    Certified = 0,
    Heuristic = 1,
    Undecided = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcMode {
    Monic = 0,
    NonMonic = 1,
}

/// Summary of one Fourier transform of a splitting-type weight.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GcFourierResult {
    pub k: u32,
    pub aut: u64,
    pub what_zero_num: i64,
    pub what_zero_den: i64,
    pub max_nonzero: f64,
    pub main_term: f64,
    pub weil_cap: f64,
    pub weil_applicable: bool,
    pub pass: bool,
}

pub struct GcPolynomial(IntPoly);

pub struct GcGaloisLabel {
    label: GaloisLabel,
    name: CString,
}

pub struct GcCensusConfig(CensusConfig);

pub struct GcCensusReport(CensusReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> GcStatus {
    match e {
        Error::InvalidArgument(_) => GcStatus::InvalidArgument,
        Error::Parse(_) => GcStatus::Parse,
        Error::UnsupportedDegree { .. } => GcStatus::UnsupportedDegree,
        Error::ResourceLimit { .. } => GcStatus::ResourceLimit,
        Error::ContractViolation(_) => GcStatus::ContractViolation,
        Error::Checkpoint(_) => GcStatus::Checkpoint,
        Error::Interrupted { .. } => GcStatus::Interrupted,
        Error::Io(_) | Error::Json(_) => GcStatus::Io,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Run `f`, recording failures and turning panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GcStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            GcStatus::NullPointer
        }
        Ok(Err(Fail::Utf8(what))) => {
            set_error(format!("{what} is not valid UTF-8"));
            GcStatus::InvalidArgument
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            GcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Utf8(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn handle_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse text such as `x^5 - 2`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_poly_parse(text: *const c_char, out: *mut *mut GcPolynomial) -> GcStatus {
    guard(|| {
        let f = parse_poly(str_arg(text, "text")?)?;
        put(out, GcPolynomial(f))
    })
}

/// Build a polynomial from `len` coefficients, constant term first.
///
/// # Safety
/// `coeffs` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_poly_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut GcPolynomial,
) -> GcStatus {
    guard(|| {
        let c = slice_arg(coeffs, len, "coeffs")?;
        put(out, GcPolynomial(IntPoly::from_i64(c)))
    })
}

/// Degree, with 0 for constants (and for a null handle).
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gc_poly_degree(poly: *const GcPolynomial) -> usize {
    poly.as_ref().map_or(0, |p| p.0.degree())
}

/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_poly_to_string(poly: *const GcPolynomial, out: *mut *mut c_char) -> GcStatus {
    guard(|| put_string(out, handle(poly, "poly")?.0.to_string()))
}

/// Discriminant as a decimal string.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_poly_discriminant(poly: *const GcPolynomial, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let d = discriminant(&handle(poly, "poly")?.0)?;
        put_string(out, d.to_string())
    })
}

/// # Safety
/// `poly` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gc_poly_free(poly: *mut GcPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Classify with Frobenius cycle types sampled below `prime_bound`
/// (0 picks the default). Non-monic input goes through its monic
/// normalization.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_classify(
    poly: *const GcPolynomial,
    prime_bound: u64,
    out: *mut *mut GcGaloisLabel,
) -> GcStatus {
    guard(|| {
        let f = &handle(poly, "poly")?.0;
        let mut opts = ClassifyOptions { non_monic_mode: true, ..ClassifyOptions::default() };
        if prime_bound > 0 {
            opts.prime_bound = prime_bound;
        }
        let label = classify(f, &opts)?;
        let name = CString::new(label.group_name.clone()).expect("no interior nul");
        put(out, GcGaloisLabel { label, name })
    })
}

/// Group name, borrowed from the label.
///
/// # Safety
/// `label` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gc_label_group_name(label: *const GcGaloisLabel) -> *const c_char {
    label.as_ref().map_or(ptr::null(), |l| l.name.as_ptr())
}

/// # Safety
/// `label` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gc_label_certainty(label: *const GcGaloisLabel) -> GcCertainty {
    match label.as_ref().map(|l| l.label.certainty) {
        Some(Certainty::Certified) => GcCertainty::Certified,
        Some(Certainty::Heuristic) => GcCertainty::Heuristic,
        _ => GcCertainty::Undecided,
    }
}

/// True for reducible, inseparable or degree-dropped input.
///
/// # Safety
/// `label` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gc_label_is_intransitive(label: *const GcGaloisLabel) -> bool {
    label.as_ref().is_some_and(|l| l.label.intransitive_or_degenerate)
}

/// The full label with its evidence, as JSON.
///
/// # Safety
/// `label` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_label_to_json(label: *const GcGaloisLabel, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let json = serde_json::to_string(&handle(label, "label")?.label).map_err(Error::from)?;
        put_string(out, json)
    })
}

/// # Safety
/// `label` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gc_label_free(label: *mut GcGaloisLabel) {
    if !label.is_null() {
        drop(Box::from_raw(label));
    }
}

/// Double discriminant for the prefix `(a_1, ..., a_(n-1))`, as a decimal
/// string.
///
/// # Safety
/// `prefix` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_double_discriminant(
    n: usize,
    prefix: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        let a = slice_arg(prefix, len, "prefix")?;
        let dd = double_discriminant_i64(n, a)?;
        put_string(out, dd.value.to_string())
    })
}

/// Fourier transform of `w_{p,sigma}` over monic polynomials of degree `n`.
///
/// # Safety
/// `sigma` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_fourier_check(
    p: u64,
    n: usize,
    sigma: *const c_char,
    out: *mut GcFourierResult,
) -> GcStatus {
    guard(|| {
        let s: SplittingType = str_arg(sigma, "sigma")?.parse()?;
        let r = fourier_transform_w(p, n, &s)?;
        let out = handle_mut(out, "out")?;
        *out = GcFourierResult {
            k: r.k as u32,
            aut: r.aut,
            what_zero_num: r.what_zero_num,
            what_zero_den: r.what_zero_den,
            max_nonzero: r.max_nonzero,
            main_term: r.main_term,
            weil_cap: r.weil_cap,
            weil_applicable: r.weil_applicable,
            pass: r.pass,
        };
        Ok(())
    })
}

/// A monic census configuration for degree `n` and height `h` with
/// default options.
#[no_mangle]
pub extern "C" fn gc_census_config_new(n: usize, h: u64) -> *mut GcCensusConfig {
    Box::into_raw(Box::new(GcCensusConfig(CensusConfig::new(n, h))))
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_census_config_set_mode(cfg: *mut GcCensusConfig, mode: GcMode) -> GcStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.0.mode = match mode {
            GcMode::Monic => Mode::Monic,
            GcMode::NonMonic => Mode::NonMonic,
        };
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_census_config_set_delta(cfg: *mut GcCensusConfig, delta: f64) -> GcStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.0.delta = delta;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_census_config_set_prime_bound(cfg: *mut GcCensusConfig, bound: u64) -> GcStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.0.prime_bound = bound;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_census_config_set_shards(cfg: *mut GcCensusConfig, shards: usize) -> GcStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.0.shard_count = shards;
        Ok(())
    })
}

/// Worker threads; 0 restores the default.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_census_config_set_threads(cfg: *mut GcCensusConfig, threads: usize) -> GcStatus {
    guard(|| {
        handle_mut(cfg, "cfg")?.0.threads = (threads > 0).then_some(threads);
        Ok(())
    })
}

/// Checkpoint file to resume from and update; null clears it.
///
/// # Safety
/// `cfg` must be a live handle; `path` nul-terminated or null.
#[no_mangle]
pub unsafe extern "C" fn gc_census_config_set_checkpoint(cfg: *mut GcCensusConfig, path: *const c_char) -> GcStatus {
    guard(|| {
        let c = handle_mut(cfg, "cfg")?;
        c.0.checkpoint = if path.is_null() { None } else { Some(PathBuf::from(str_arg(path, "path")?)) };
        Ok(())
    })
}

/// # Safety
/// `cfg` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gc_census_config_free(cfg: *mut GcCensusConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Enumerate the configured box.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_census_run(cfg: *const GcCensusConfig, out: *mut *mut GcCensusReport) -> GcStatus {
    guard(|| {
        let report = enumerate_census(&handle(cfg, "cfg")?.0)?;
        put(out, GcCensusReport(report))
    })
}

/// Headline counts of a census report.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GcCensusCounts {
    pub total: u64,
    pub certified_sn: u64,
    pub undecided: u64,
    pub e_n_lower: u64,
    pub e_n_upper: u64,
    pub intransitive: u64,
    pub primitive_non_sn: u64,
    pub excluded_partial: u64,
    pub squarefull_exceptions: u64,
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_census_report_counts(report: *const GcCensusReport, out: *mut GcCensusCounts) -> GcStatus {
    guard(|| {
        let r = &handle(report, "report")?.0;
        *handle_mut(out, "out")? = GcCensusCounts {
            total: r.total,
            certified_sn: r.certified_sn,
            undecided: r.undecided,
            e_n_lower: r.e_n_lower,
            e_n_upper: r.e_n_upper,
            intransitive: r.intransitive,
            primitive_non_sn: r.primitive_non_sn,
            excluded_partial: r.excluded_partial,
            squarefull_exceptions: r.squarefull_exceptions,
        };
        Ok(())
    })
}

/// The deterministic report CSV.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_census_report_csv(report: *const GcCensusReport, out: *mut *mut c_char) -> GcStatus {
    guard(|| put_string(out, handle(report, "report")?.0.to_csv()))
}

/// # Safety
/// `report` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn gc_census_report_free(report: *mut GcCensusReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
