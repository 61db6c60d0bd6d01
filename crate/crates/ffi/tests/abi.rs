use std::ffi::{CStr, CString};
use std::ptr;

use bour_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(bour_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn dot_and_wedge() {
    let x = [1.0, 2.0, 3.0, 4.0];
    let y = [0.5, -1.0, 2.0, 1.0];
    assert_eq!(unsafe { bour_minkowski_dot(x.as_ptr(), y.as_ptr()) }, 0.5 - 2.0 + 6.0 - 4.0);
    assert!(unsafe { bour_minkowski_dot(ptr::null(), y.as_ptr()) }.is_nan());
    let mut b = [0.0; 6];
    assert_eq!(unsafe { bour_wedge(x.as_ptr(), y.as_ptr(), b.as_mut_ptr()) }, BourStatus::Ok);
    assert_eq!(b, [-2.0, 0.5, -1.0, 7.0, 6.0, -5.0]);
    assert_eq!(unsafe { bour_wedge(x.as_ptr(), y.as_ptr(), ptr::null_mut()) }, BourStatus::NullPointer);
    assert!(last_error().contains("out"));
}

#[test]
fn expressions() {
    let src = CString::new("u^3 + sin(u)").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { bour_expr_parse(src.as_ptr(), &mut e) }, BourStatus::Ok);
    let mut j = [0.0; 3];
    assert_eq!(unsafe { bour_expr_eval(e, 2.0, j.as_mut_ptr()) }, BourStatus::Ok);
    assert!((j[0] - (8.0 + 2f64.sin())).abs() < 1e-15);
    assert!((j[1] - (12.0 + 2f64.cos())).abs() < 1e-14);
    assert!((j[2] - (12.0 - 2f64.sin())).abs() < 1e-14);
    unsafe { bour_expr_free(e) };

    let bad = CString::new("sin(u").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { bour_expr_parse(bad.as_ptr(), &mut e) }, BourStatus::InvalidInput);
    assert!(e.is_null());
    assert!(last_error().contains("offset 5"), "{}", last_error());

    let log = CString::new("log(u)").unwrap();
    assert_eq!(unsafe { bour_expr_parse(log.as_ptr(), &mut e) }, BourStatus::Ok);
    assert_eq!(unsafe { bour_expr_eval(e, -1.0, j.as_mut_ptr()) }, BourStatus::NumericalFailure);
    unsafe { bour_expr_free(e) };
    unsafe { bour_expr_free(ptr::null_mut()) };
}

#[test]
fn helicoid_handle() {
    let json = CString::new(r#"{"kind":"I","lambda":1,"profile":{"x":"u","z":"0","w":"0"},"domain":[1.1,3]}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { bour_helicoid_from_json(json.as_ptr(), &mut h) }, BourStatus::Ok);

    let mut p = [0.0; 4];
    assert_eq!(unsafe { bour_helicoid_position(h, 2.0, 0.0, p.as_mut_ptr()) }, BourStatus::Ok);
    assert!(p.iter().all(|c| c.is_finite()));

    let mut c = BourCurvatures::default();
    assert_eq!(unsafe { bour_helicoid_curvatures(h, 2.0, 0.3, &mut c) }, BourStatus::Ok);
    assert!(c.minimal && c.hvec_max < 1e-9 && c.w > 0.0);

    let mut g = [0.0; 6];
    assert_eq!(unsafe { bour_helicoid_gauss_map(h, 2.0, 0.3, g.as_mut_ptr()) }, BourStatus::Ok);
    let sig = [1.0, 1.0, -1.0, 1.0, -1.0, -1.0];
    let n: f64 = g.iter().zip(sig).map(|(x, s)| s * x * x).sum();
    assert!((n - 1.0).abs() < 1e-12, "{n}");
    unsafe { bour_helicoid_free(h) };

    let unknown = CString::new(r#"{"kind":"I","lambda":1,"profile":{"x":"u","z":"0","w":"0"},"domain":[1,2],"extra":1}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { bour_helicoid_from_json(unknown.as_ptr(), &mut h) }, BourStatus::InvalidInput);
    assert!(h.is_null());
    assert_eq!(unsafe { bour_helicoid_from_json(ptr::null(), &mut h) }, BourStatus::NullPointer);
}

#[test]
fn verify_pairs() {
    let good = CString::new(
        r#"{"helicoid":{"kind":"II","lambda":0.6,"profile":{"x":"3*u^2 + 2*u","y":"u/7","w":"u/2 + 1"},"domain":[0.5,2.5]},"gauge":{"b":"0.3"}}"#,
    )
    .unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { bour_verify_pair_json(good.as_ptr(), 9, 9, &mut r) }, BourStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(r) }.to_str().unwrap()).unwrap();
    assert_eq!(v["verdicts"]["isometric"], true);
    unsafe { bour_string_free(r) };

    let same = CString::new(
        r#"{"helicoid":{"kind":"III","lambda":1,"profile":{"x":"u","z":"0","w":"u"},"domain":[0.8,3]},"gauge":{"a":"1"}}"#,
    )
    .unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { bour_verify_pair_json(same.as_ptr(), 9, 9, &mut r) }, BourStatus::VerdictFailed);
    assert!(!r.is_null());
    unsafe { bour_string_free(r) };

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { bour_verify_pair_json(same.as_ptr(), 1, 9, &mut r) }, BourStatus::InvalidInput);
    assert!(r.is_null());
}

#[test]
fn errors_are_per_thread() {
    let bad = CString::new("2 $ u").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { bour_expr_parse(bad.as_ptr(), &mut e) }, BourStatus::InvalidInput);
    std::thread::spawn(|| assert!(bour_last_error().is_null())).join().unwrap();
    assert!(!bour_last_error().is_null());
}
