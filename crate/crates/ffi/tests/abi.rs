use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use heinz_ffi::*;

fn last_error() -> String {
    let p = heinz_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn scalar_means() {
    let mut v = 0.0;
    assert_eq!(heinz_mean(4.0, 9.0, 0.5, &mut v), HeinzStatus::Ok);
    assert!((v - 6.0).abs() < 1e-14);
    assert_eq!(heinz_mean(4.0, 9.0, 0.0, &mut v), HeinzStatus::Ok);
    assert!((v - 6.5).abs() < 1e-14);
    assert_eq!(heinz_heron_mean(4.0, 9.0, 0.0, &mut v), HeinzStatus::Ok);
    assert!((v - 6.0).abs() < 1e-14);
    assert_eq!(heinz_heron_mean(4.0, 9.0, 1.0, &mut v), HeinzStatus::Ok);
    assert!((v - 6.5).abs() < 1e-14);
    assert_eq!(
        heinz_interpolator(4.0, 9.0, 0.25, 0.25, &mut v),
        HeinzStatus::Ok
    );
    let mut h = 0.0;
    heinz_mean(4.0, 9.0, 0.25, &mut h);
    assert!((v - h).abs() < 1e-12);
}

#[test]
fn domain_errors_set_message() {
    let mut v = 0.0;
    assert_eq!(heinz_mean(-1.0, 2.0, 0.3, &mut v), HeinzStatus::Domain);
    assert!(!last_error().is_empty());
    assert_eq!(
        heinz_mean(1.0, 2.0, 0.3, ptr::null_mut()),
        HeinzStatus::NullPointer
    );
    assert!(last_error().contains("result"));
}

#[test]
fn scalar_relation_by_name() {
    let name = CString::new("CORE_COMPARISON").unwrap();
    let mut o = HeinzOutcome::default();
    let s = unsafe { heinz_scalar_relation(name.as_ptr(), 2.0, 5.0, 0.0, 0.2, 0.1, &mut o) };
    assert_eq!(s, HeinzStatus::Ok);
    assert!(o.holds);

    let name = CString::new("HERON_BOUND").unwrap();
    let s = unsafe { heinz_scalar_relation(name.as_ptr(), 2.0, 5.0, 0.3, 0.0, 0.0, &mut o) };
    assert_eq!(s, HeinzStatus::Ok);
    assert!(o.holds);

    let bogus = CString::new("NO_SUCH").unwrap();
    let s = unsafe { heinz_scalar_relation(bogus.as_ptr(), 2.0, 5.0, 0.3, 0.0, 0.0, &mut o) };
    assert_eq!(s, HeinzStatus::Usage);
    let s = unsafe { heinz_scalar_relation(ptr::null(), 2.0, 5.0, 0.3, 0.0, 0.0, &mut o) };
    assert_eq!(s, HeinzStatus::NullPointer);
}

#[test]
fn boundary_pair_is_reported() {
    let name = CString::new("CORE_COMPARISON").unwrap();
    let mut o = HeinzOutcome::default();
    let s = unsafe { heinz_scalar_relation(name.as_ptr(), 2.0, 5.0, 0.0, 0.2, 0.2005, &mut o) };
    assert_eq!(s, HeinzStatus::Boundary);
}

#[test]
fn optimizer() {
    let (mut tau, mut res) = (0.0, 0.0);
    assert_eq!(heinz_tau_star(1e-12, &mut tau, &mut res), HeinzStatus::Ok);
    assert!((tau - 0.326_351_822_333_07).abs() < 1e-12);
    assert!(res.abs() < 1e-12);

    let (mut arg, mut val) = (0.0, 0.0);
    assert_eq!(
        heinz_minimize_l1(4.0, 1e-10, &mut arg, &mut val),
        HeinzStatus::Ok
    );
    assert!((arg - tau).abs() < 2e-4);
    let mut at = 0.0;
    assert_eq!(heinz_l1_error(4.0, arg, 1e-10, &mut at), HeinzStatus::Ok);
    assert!((at - val).abs() < 1e-12);
    assert_eq!(
        heinz_minimize_l1(1.0, 1e-10, &mut arg, ptr::null_mut()),
        HeinzStatus::Domain
    );
}

#[test]
fn counterexample_is_violated() {
    let (mut lhs, mut rhs, mut violated) = (0.0, 0.0, false);
    assert_eq!(
        heinz_counterexample(&mut lhs, &mut rhs, &mut violated),
        HeinzStatus::Ok
    );
    assert!(violated);
    assert!((lhs - 2.050_510_257_216_822).abs() < 1e-12);
    assert_eq!(rhs, 2.0);
}

#[test]
fn hermitian_handles() {
    let re = [2.0, 1.0, 1.0, 3.0];
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { heinz_hermitian_new(2, re.as_ptr(), ptr::null(), &mut a) },
        HeinzStatus::Ok
    );
    assert_eq!(heinz_hermitian_dim(a), 2);

    let mut ev = [0.0; 2];
    assert_eq!(
        unsafe { heinz_hermitian_eigenvalues(a, ev.as_mut_ptr(), 2) },
        HeinzStatus::Ok
    );
    let d = 5f64.sqrt();
    assert!((ev[0] - (5.0 + d) / 2.0).abs() < 1e-12);
    assert!((ev[1] - (5.0 - d) / 2.0).abs() < 1e-12);
    assert_eq!(
        unsafe { heinz_hermitian_eigenvalues(a, ev.as_mut_ptr(), 1) },
        HeinzStatus::Dimension
    );

    // A #_t A = A and the Heinz mean of A with itself is A.
    let mut g = ptr::null_mut();
    assert_eq!(heinz_geo_mean(a, a, 0.3, &mut g), HeinzStatus::Ok);
    let mut h = ptr::null_mut();
    assert_eq!(heinz_matrix_heinz(a, a, 0.3, &mut h), HeinzStatus::Ok);
    for m in [g, h] {
        let (mut r, mut i) = ([0.0; 4], [0.0; 4]);
        assert_eq!(
            unsafe { heinz_hermitian_entries(m, r.as_mut_ptr(), i.as_mut_ptr(), 4) },
            HeinzStatus::Ok
        );
        for k in 0..4 {
            assert!((r[k] - re[k]).abs() < 1e-10);
            assert!(i[k].abs() < 1e-10);
        }
    }
    unsafe {
        heinz_hermitian_free(g);
        heinz_hermitian_free(h);
        heinz_hermitian_free(a);
        heinz_hermitian_free(ptr::null_mut());
    }
}

#[test]
fn hermitian_rejects_bad_input() {
    let re = [1.0, 2.0, 0.0, 1.0];
    let mut a = ptr::null_mut();
    let s = unsafe { heinz_hermitian_new(2, re.as_ptr(), ptr::null(), &mut a) };
    assert_eq!(s, HeinzStatus::NotHermitian);
    assert!(a.is_null());

    let indefinite = [1.0, 0.0, 0.0, -1.0];
    assert_eq!(
        unsafe { heinz_hermitian_new(2, indefinite.as_ptr(), ptr::null(), &mut a) },
        HeinzStatus::Ok
    );
    let mut g = ptr::null_mut();
    assert_eq!(heinz_geo_mean(a, a, 0.5, &mut g), HeinzStatus::NotPositive);
    assert_eq!(
        heinz_geo_mean(a, ptr::null(), 0.5, &mut g),
        HeinzStatus::NullPointer
    );
    unsafe { heinz_hermitian_free(a) };
}

#[test]
fn random_pd_is_seeded() {
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        heinz_hermitian_random_pd(4, 11, 100.0, &mut a),
        HeinzStatus::Ok
    );
    assert_eq!(
        heinz_hermitian_random_pd(4, 11, 100.0, &mut b),
        HeinzStatus::Ok
    );
    let (mut ea, mut eb) = ([0.0; 4], [0.0; 4]);
    unsafe {
        heinz_hermitian_eigenvalues(a, ea.as_mut_ptr(), 4);
        heinz_hermitian_eigenvalues(b, eb.as_mut_ptr(), 4);
    }
    assert_eq!(ea, eb);
    assert!(ea[3] > 0.0);
    assert!(ea[0] / ea[3] < 100.0);
    unsafe {
        heinz_hermitian_free(a);
        heinz_hermitian_free(b);
    }
}

#[test]
fn suite_reports() {
    let mut r = ptr::null_mut();
    assert_eq!(
        heinz_run_suite(HeinzSuite::Matrix, 3, 7, 2, 3, &mut r),
        HeinzStatus::Ok
    );
    assert_eq!(heinz_report_failures(r), 0);
    assert!(heinz_report_evaluations(r) > 0);
    let json = heinz_report_json(r);
    assert!(!json.is_null());
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite"], "matrix");
    assert_eq!(v["seed"], 7);
    unsafe {
        heinz_string_free(json);
        heinz_report_free(r);
    }

    let mut s = ptr::null_mut();
    assert_eq!(
        heinz_run_suite(HeinzSuite::Scalar, 20, 7, 0, 0, &mut s),
        HeinzStatus::Ok
    );
    assert_eq!(heinz_report_evaluations(s), 20 * 13);
    unsafe { heinz_report_free(s) };

    assert_eq!(
        heinz_run_suite(HeinzSuite::Scalar, 0, 7, 0, 0, &mut s),
        HeinzStatus::Domain
    );
    assert_eq!(heinz_report_failures(ptr::null()), 0);
    assert!(heinz_report_json(ptr::null()).is_null());
}

#[test]
fn header_is_valid_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include").join("heinz.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in [
        "heinz_mean",
        "heinz_run_suite",
        "heinz_last_error",
        "HEINZ_STATUS_NOT_POSITIVE",
    ] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("cc not available, skipping syntax check");
        return;
    };
    assert!(status.success());
}
