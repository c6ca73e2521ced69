use std::ffi::{CStr, CString};
use std::ptr;

use ridgechord_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { rc_string_free(p) };
    s
}

fn last_error() -> String {
    let p = rc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn from_facets(n: usize, facets: &[&[u32]]) -> (RcStatus, *mut RcComplex) {
    let flat: Vec<u32> = facets.iter().flat_map(|f| f.iter().copied()).collect();
    let lengths: Vec<usize> = facets.iter().map(|f| f.len()).collect();
    let mut out = ptr::null_mut();
    let st = unsafe { rc_complex_from_facets(n, flat.as_ptr(), lengths.as_ptr(), lengths.len(), &mut out) };
    (st, out)
}

fn stats(cx: *const RcComplex) -> RcStats {
    let mut s = RcStats::default();
    assert_eq!(unsafe { rc_complex_stats(cx, &mut s) }, RcStatus::Ok);
    s
}

#[test]
fn clique_complex_of_a_graph() {
    let (st, g) = from_facets(4, &[&[1, 2], &[2, 3], &[1, 3], &[1, 4]]);
    assert_eq!(st, RcStatus::Ok);
    let mut cl = ptr::null_mut();
    assert_eq!(unsafe { rc_clique_complex(g, &mut cl) }, RcStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { rc_complex_to_text(cl, &mut text) }, RcStatus::Ok);
    let text = take_string(text);
    assert!(text.contains("1 2 3") && text.contains("1 4"), "{text}");
    assert_eq!(stats(cl).facet_count, 2);
    unsafe {
        rc_complex_free(g);
        rc_complex_free(cl);
    }
}

#[test]
fn counterexample_properties() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { rc_build_delta(2, &mut d) }, RcStatus::Ok);
    let s = stats(d);
    assert_eq!((s.ground_set_size, s.dimension, s.facet_count), (12, 2, 26));

    let mut explored = 0u64;
    assert_eq!(unsafe { rc_check_ridge_chordal(d, 1_000_000, &mut explored) }, RcStatus::Refuted);
    assert!(explored >= 1);

    let mut profile = ptr::null_mut();
    assert_eq!(unsafe { rc_reduced_homology(d, &mut profile) }, RcStatus::Ok);
    let profile: serde_json::Value = serde_json::from_str(&take_string(profile)).unwrap();
    assert!(profile["groups"].as_array().unwrap().iter().all(|g| g["betti"] == 0));

    assert_eq!(unsafe { rc_find_shelling(d, 1_000_000, ptr::null_mut()) }, RcStatus::Refuted);

    let mut cl = ptr::null_mut();
    let mut a2 = ptr::null_mut();
    unsafe {
        assert_eq!(rc_clique_complex(d, &mut cl), RcStatus::Ok);
        assert_eq!(rc_alexander_dual(cl, &mut a2), RcStatus::Ok);
    }
    assert_eq!(stats(a2).facet_count, 194);
    assert_eq!(stats(a2).dimension, 8);
    unsafe {
        rc_complex_free(d);
        rc_complex_free(cl);
        rc_complex_free(a2);
    }
}

#[test]
fn shelling_and_decomposition_of_a_sphere() {
    let (_, s) = from_facets(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
    let mut order = ptr::null_mut();
    assert_eq!(unsafe { rc_find_shelling(s, 1000, &mut order) }, RcStatus::Ok);
    let order: Vec<Vec<u32>> = serde_json::from_str(&take_string(order)).unwrap();
    let flat: Vec<u32> = order.iter().flatten().copied().collect();
    let lengths: Vec<usize> = order.iter().map(Vec::len).collect();
    assert_eq!(unsafe { rc_check_shelling(s, flat.as_ptr(), lengths.as_ptr(), lengths.len()) }, RcStatus::Ok);
    // an incomplete order is not a shelling of the whole complex
    assert_eq!(unsafe { rc_check_shelling(s, flat.as_ptr(), lengths.as_ptr(), 2) }, RcStatus::Refuted);

    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { rc_check_k_decomposable(s, 0, 1000, &mut cert) }, RcStatus::Ok);
    let cert: serde_json::Value = serde_json::from_str(&take_string(cert)).unwrap();
    assert_eq!(cert["max_shed_dim"], 0);
    unsafe { rc_complex_free(s) };
}

#[test]
fn parse_round_trip_and_digest() {
    let mut c2 = ptr::null_mut();
    assert_eq!(unsafe { rc_build_c2(&mut c2) }, RcStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { rc_complex_to_text(c2, &mut text) }, RcStatus::Ok);
    let text = CString::new(take_string(text)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { rc_complex_parse(text.as_ptr(), &mut back) }, RcStatus::Ok);
    let (mut d1, mut d2) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(rc_complex_digest(c2, &mut d1), RcStatus::Ok);
        assert_eq!(rc_complex_digest(back, &mut d2), RcStatus::Ok);
    }
    assert_eq!(take_string(d1), take_string(d2));
    unsafe {
        rc_complex_free(c2);
        rc_complex_free(back);
    }
}

#[test]
fn errors_set_status_and_message() {
    let (st, cx) = from_facets(3, &[&[1, 5]]);
    assert_eq!(st, RcStatus::InvalidArgument);
    assert!(cx.is_null());
    assert!(last_error().contains('5'));

    let bad = CString::new("not a header\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rc_complex_parse(bad.as_ptr(), &mut out) }, RcStatus::ParseError);

    assert_eq!(unsafe { rc_complex_stats(ptr::null(), ptr::null_mut()) }, RcStatus::NullPointer);
    assert_eq!(unsafe { rc_build_delta(20, &mut out) }, RcStatus::LimitExceeded);
    assert_eq!(unsafe { rc_theorem_a(1, 10, ptr::null_mut()) }, RcStatus::InvalidArgument);
    unsafe {
        rc_string_free(ptr::null_mut());
        rc_complex_free(ptr::null_mut());
    }
}

#[test]
fn theorem_a_report() {
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { rc_theorem_a(2, 1_000_000, &mut report) }, RcStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(report["verdict"], "verified");
    assert_eq!(report["certificate"]["max_shed_dim"], 4);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ridgechord.h")).unwrap();
    for name in [
        "rc_last_error",
        "rc_string_free",
        "rc_complex_free",
        "rc_complex_from_facets",
        "rc_complex_parse",
        "rc_complex_to_text",
        "rc_complex_digest",
        "rc_complex_stats",
        "rc_build_c2",
        "rc_build_delta",
        "rc_clique_complex",
        "rc_alexander_dual",
        "rc_check_ridge_chordal",
        "rc_check_shelling",
        "rc_find_shelling",
        "rc_check_k_decomposable",
        "rc_reduced_homology",
        "rc_theorem_a",
        "typedef struct RcComplex RcComplex",
        "RC_STATUS_UNKNOWN = 2",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
