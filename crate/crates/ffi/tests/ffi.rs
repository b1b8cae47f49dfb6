use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use galois_census_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gc_string_free(s);
    out
}

#[test]
fn classify_round_trip() {
    unsafe {
        let text = CString::new("x^5 - 2").unwrap();
        let mut poly = ptr::null_mut();
        assert_eq!(gc_poly_parse(text.as_ptr(), &mut poly), GcStatus::Ok);
        assert_eq!(gc_poly_degree(poly), 5);
        let mut s = ptr::null_mut();
        assert_eq!(gc_poly_discriminant(poly, &mut s), GcStatus::Ok);
        assert_eq!(take(s), "50000");
        let mut label = ptr::null_mut();
        assert_eq!(gc_classify(poly, 0, &mut label), GcStatus::Ok);
        assert_eq!(CStr::from_ptr(gc_label_group_name(label)).to_str().unwrap(), "F20");
        assert_eq!(gc_label_certainty(label), GcCertainty::Certified);
        assert!(!gc_label_is_intransitive(label));
        let mut json = ptr::null_mut();
        assert_eq!(gc_label_to_json(label, &mut json), GcStatus::Ok);
        assert!(take(json).contains("\"group_name\":\"F20\""));
        gc_label_free(label);
        gc_poly_free(poly);
    }
}

#[test]
fn from_coefficients() {
    unsafe {
        // x^2 - 1, constant term first
        let c = [-1i64, 0, 1];
        let mut poly = ptr::null_mut();
        assert_eq!(gc_poly_from_coeffs(c.as_ptr(), c.len(), &mut poly), GcStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(gc_poly_to_string(poly, &mut s), GcStatus::Ok);
        assert_eq!(take(s), "x^2 - 1");
        let mut label = ptr::null_mut();
        assert_eq!(gc_classify(poly, 100, &mut label), GcStatus::Ok);
        assert!(gc_label_is_intransitive(label));
        gc_label_free(label);
        gc_poly_free(poly);
    }
}

#[test]
fn errors_set_the_last_message() {
    unsafe {
        let bad = CString::new("x^^2").unwrap();
        let mut poly = ptr::null_mut();
        assert_eq!(gc_poly_parse(bad.as_ptr(), &mut poly), GcStatus::Parse);
        assert!(poly.is_null());
        assert!(!gc_last_error_message().is_null());
        assert_eq!(gc_poly_parse(ptr::null(), &mut poly), GcStatus::NullPointer);
        let msg = CStr::from_ptr(gc_last_error_message()).to_str().unwrap();
        assert!(msg.contains("null"), "{msg}");
        // success clears it
        let ok = CString::new("x").unwrap();
        assert_eq!(gc_poly_parse(ok.as_ptr(), &mut poly), GcStatus::Ok);
        assert!(gc_last_error_message().is_null());
        gc_poly_free(poly);
        let mut s = ptr::null_mut();
        assert_eq!(gc_double_discriminant(3, [0i64].as_ptr(), 1, &mut s), GcStatus::InvalidArgument);
    }
}

#[test]
fn double_discriminant_and_fourier() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gc_double_discriminant(3, [0i64, 1].as_ptr(), 2, &mut s), GcStatus::Ok);
        assert_eq!(take(s), "-432");
        let sigma = CString::new("1^2").unwrap();
        let mut r = GcFourierResult::default();
        assert_eq!(gc_fourier_check(3, 2, sigma.as_ptr(), &mut r), GcStatus::Ok);
        assert_eq!((r.what_zero_num, r.what_zero_den, r.k), (1, 3, 1));
        assert!((r.max_nonzero - 3f64.powf(-1.5)).abs() < 1e-9);
        assert!(r.pass);
    }
}

#[test]
fn census_through_handles() {
    unsafe {
        let cfg = gc_census_config_new(2, 1);
        assert_eq!(gc_census_config_set_shards(cfg, 3), GcStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(gc_census_run(cfg, &mut report), GcStatus::Ok);
        let mut c = GcCensusCounts::default();
        assert_eq!(gc_census_report_counts(report, &mut c), GcStatus::Ok);
        assert_eq!((c.total, c.e_n_lower, c.e_n_upper), (9, 4, 4));
        let mut csv = ptr::null_mut();
        assert_eq!(gc_census_report_csv(report, &mut csv), GcStatus::Ok);
        assert!(take(csv).starts_with("section,key,certainty,value\n"));
        gc_census_report_free(report);
        // a box past the budget
        assert_eq!(gc_census_config_set_delta(cfg, 0.0), GcStatus::Ok);
        gc_census_config_free(cfg);
        let big = gc_census_config_new(7, 50);
        assert_eq!(gc_census_run(big, &mut report), GcStatus::ResourceLimit);
        gc_census_config_free(big);
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let lib = target_dir().join("libgalois_census_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "galois_census.h"
int main(void) {
    GcPolynomial *p = NULL;
    if (gc_poly_parse("x^4 + 1", &p) != GC_STATUS_OK) return 1;
    GcGaloisLabel *l = NULL;
    if (gc_classify(p, 0, &l) != GC_STATUS_OK) return 2;
    printf("%s %d\n", gc_label_group_name(l), (int)gc_label_certainty(l));
    gc_label_free(l);
    gc_poly_free(p);
    if (gc_poly_parse("x +", &p) == GC_STATUS_OK) return 3;
    if (gc_last_error_message() == NULL) return 4;
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("t");
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "V4 0\n");
}
