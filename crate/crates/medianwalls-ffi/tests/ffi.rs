//! Exercises the C entry points through the Rust side of the ABI.

use std::ffi::{CStr, CString};
use std::ptr;

use medianwalls_ffi::*;

const TRIPOD: &str = r#"{
  "points": ["o", "a", "b", "c"],
  "walls": [
    { "side_a": ["a"], "weight": { "num": 1, "den": 1 } },
    { "side_a": ["b"], "weight": { "num": 1, "den": 1 } },
    { "side_a": ["c"], "weight": { "num": 1, "den": 1 } }
  ]
}"#;

unsafe fn load(text: &str) -> *mut MwWallSpace {
    let json = CString::new(text).unwrap();
    let mut handle: *mut MwWallSpace = ptr::null_mut();
    assert_eq!(
        mw_wallspace_from_json(json.as_ptr(), &mut handle),
        MwStatus::Ok
    );
    assert!(!handle.is_null());
    handle
}

#[test]
fn roundtrip_and_distances() {
    unsafe {
        let ws = load(TRIPOD);
        assert_eq!(mw_wallspace_point_count(ws), 4);
        assert_eq!(mw_wallspace_wall_count(ws), 3);

        let mut d = -1.0;
        assert_eq!(mw_wallspace_pdist(ws, 1, 2, &mut d), MwStatus::Ok);
        assert_eq!(d, 2.0);

        let text = mw_wallspace_to_json(ws);
        assert!(!text.is_null());
        let copy = CStr::from_ptr(text).to_str().unwrap().to_owned();
        mw_string_free(text);
        let again = load(&copy);
        assert_eq!(mw_wallspace_point_count(again), 4);
        mw_wallspace_free(again);
        mw_wallspace_free(ws);
    }
}

#[test]
fn medianize_through_the_abi() {
    unsafe {
        let ws = load(TRIPOD);
        let mut median: *mut MwMedianSpace = ptr::null_mut();
        assert_eq!(mw_medianize(ws, 0, &mut median), MwStatus::Ok);
        assert_eq!(mw_median_space_len(median), 4);

        let mut center = usize::MAX;
        assert_eq!(
            mw_median_space_embedded(median, 0, &mut center),
            MwStatus::Ok
        );
        for leaf in 1..4 {
            let mut at = usize::MAX;
            assert_eq!(
                mw_median_space_embedded(median, leaf, &mut at),
                MwStatus::Ok
            );
            let mut d = 0.0;
            assert_eq!(
                mw_median_space_dist(median, center, at, &mut d),
                MwStatus::Ok
            );
            assert_eq!(d, 1.0);
        }

        let mut d = 0.0;
        assert_eq!(
            mw_median_space_dist(median, 99, 0, &mut d),
            MwStatus::InvalidInput
        );
        let message = CStr::from_ptr(mw_last_error()).to_str().unwrap();
        assert!(message.contains("out of range"));

        let text = mw_median_space_to_json(median);
        assert!(CStr::from_ptr(text).to_str().unwrap().contains("dist"));
        mw_string_free(text);
        mw_median_space_free(median);
        mw_wallspace_free(ws);
    }
}

#[test]
fn audit_report_and_errors() {
    unsafe {
        let ws = load(TRIPOD);
        let mut report: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(mw_audit_json(ws, 0, &mut report), MwStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap();
        assert!(text.contains("\"rank\": 1"));
        mw_string_free(report);
        mw_wallspace_free(ws);

        let bad = CString::new("{ not json").unwrap();
        let mut handle: *mut MwWallSpace = ptr::null_mut();
        assert_eq!(
            mw_wallspace_from_json(bad.as_ptr(), &mut handle),
            MwStatus::InvalidInput
        );
        assert!(handle.is_null());
        assert!(!CStr::from_ptr(mw_last_error()).to_bytes().is_empty());

        assert_eq!(
            mw_wallspace_from_json(ptr::null(), &mut handle),
            MwStatus::NullArgument
        );
    }
}

#[test]
fn generated_header_exists() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/medianwalls.h");
    let text = std::fs::read_to_string(header).expect("header generated at build time");
    for symbol in [
        "mw_wallspace_from_json",
        "mw_medianize",
        "mw_audit_json",
        "mw_string_free",
        "MwStatus",
    ] {
        assert!(text.contains(symbol), "header is missing {symbol}");
    }
}
