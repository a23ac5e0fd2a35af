use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use dotchain_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    dc_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = dc_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

#[test]
fn prop3_counts_through_the_abi() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(
            dc_generate_prop3(10, 2, c("1").as_ptr(), &mut set),
            DcStatus::Ok
        );
        assert_eq!(dc_pointset_len(set), 10);
        assert_eq!(dc_pointset_dim(set), 2);

        let mut out = ptr::null_mut();
        let alphas = c("1,1");
        assert_eq!(
            dc_count_chains(
                set,
                alphas.as_ptr(),
                false,
                DcCountMode::WithRepeats,
                &mut out
            ),
            DcStatus::Ok
        );
        assert_eq!(take_string(out), "90");
        assert_eq!(
            dc_count_chains(
                set,
                alphas.as_ptr(),
                false,
                DcCountMode::PairwiseDistinct,
                &mut out
            ),
            DcStatus::Ok
        );
        assert_eq!(take_string(out), "72");

        let mut pairs = 0u64;
        assert_eq!(
            dc_count_pairs_with_dot(set, c("1").as_ptr(), false, &mut pairs),
            DcStatus::Ok
        );
        assert_eq!(pairs, 18);

        let mut t = 0usize;
        assert_eq!(dc_max_flat_richness(set, 1, &mut t), DcStatus::Ok);
        assert_eq!(t, 9);
        dc_pointset_free(set);
    }
}

#[test]
fn json_round_trip() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(dc_generate_grid(4, &mut set), DcStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(dc_pointset_to_json(set, &mut text), DcStatus::Ok);
        let text = take_string(text);
        let mut back = ptr::null_mut();
        assert_eq!(
            dc_pointset_from_json(c(&text).as_ptr(), &mut back),
            DcStatus::Ok
        );
        assert_eq!(dc_pointset_len(back), 16);
        let mut again = ptr::null_mut();
        assert_eq!(dc_pointset_to_json(back, &mut again), DcStatus::Ok);
        assert_eq!(take_string(again), text);
        dc_pointset_free(set);
        dc_pointset_free(back);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(
            dc_generate_prop3(10, 2, c("1.5").as_ptr(), &mut set),
            DcStatus::MalformedScalar
        );
        assert!(last_error().contains("1.5"));
        assert!(set.is_null());

        let dup = r#"{"format_version":1,"name":"d","dim":2,"points":[["1","2"],["1","2"]],"provenance":{"generator":"external"}}"#;
        assert_eq!(
            dc_pointset_from_json(c(dup).as_ptr(), &mut set),
            DcStatus::DuplicatePoint
        );
        assert_eq!(
            dc_pointset_from_json(c("{").as_ptr(), &mut set),
            DcStatus::Parse
        );
        assert_eq!(
            dc_pointset_from_json(ptr::null(), &mut set),
            DcStatus::NullPointer
        );

        assert_eq!(dc_generate_grid(3, &mut set), DcStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(
            dc_count_chains(
                set,
                c("0,1").as_ptr(),
                false,
                DcCountMode::WithRepeats,
                &mut out
            ),
            DcStatus::ZeroAlpha
        );
        let mut r = 0usize;
        assert_eq!(dc_max_flat_richness(set, 2, &mut r), DcStatus::Unsupported);
        assert_eq!(
            dc_max_flat_richness(ptr::null(), 1, &mut r),
            DcStatus::NullPointer
        );
        assert_eq!(
            dc_max_flat_richness(set, 1, ptr::null_mut()),
            DcStatus::NullPointer
        );
        dc_pointset_free(set);

        // success clears the previous message
        assert_eq!(dc_generate_grid(2, &mut set), DcStatus::Ok);
        assert!(dc_last_error_message().is_null());
        dc_pointset_free(set);
    }
}

#[test]
fn bounds_through_the_abi() {
    unsafe {
        let mut v = 0.0f64;
        assert_eq!(
            dc_evaluate_bound(
                c("thm-main").as_ptr(),
                c(r#"{"n":8,"k":2}"#).as_ptr(),
                &mut v
            ),
            DcStatus::Ok
        );
        assert!((v - 64.0).abs() < 1e-9);
        assert_eq!(
            dc_evaluate_bound(
                c("cor-sadapt").as_ptr(),
                c(r#"{"n":1000,"k":3,"s":"2"}"#).as_ptr(),
                &mut v
            ),
            DcStatus::Ok
        );
        assert!(v > 0.0);
        assert_eq!(
            dc_evaluate_bound(c("nope").as_ptr(), c("{}").as_ptr(), &mut v),
            DcStatus::InvalidParameter
        );
        assert_eq!(
            dc_evaluate_bound(c("hinge").as_ptr(), c(r#"{"n":8,"q":1}"#).as_ptr(), &mut v),
            DcStatus::InvalidParameter
        );
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(dc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/dotchain.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "dc_count_chains",
        "dc_pointset_from_json",
        "dc_evaluate_bound",
        "DC_STATUS_DUPLICATE_POINT",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(status.success());
}
