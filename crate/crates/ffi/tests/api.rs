use std::ffi::{CStr, CString};
use std::ptr;

use cubrig_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = cubrig_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { cubrig_string_free(s) };
    out
}

#[test]
fn cube_cells_and_paths() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cubrig_complex_build(c("cube:3").as_ptr(), &mut h), CubrigStatus::Ok);
        let mut counts = vec![];
        for k in 0..=3 {
            let mut n = 0usize;
            assert_eq!(cubrig_complex_cell_count(h, k, &mut n), CubrigStatus::Ok);
            counts.push(n);
        }
        assert_eq!(counts, vec![8, 12, 6, 1]);
        let mut ok = false;
        assert_eq!(cubrig_complex_validate(h, &mut ok), CubrigStatus::Ok);
        assert!(ok);
        let mut paths = 0usize;
        assert_eq!(cubrig_complex_path_count(h, c("alpha").as_ptr(), c("omega").as_ptr(), &mut paths), CubrigStatus::Ok);
        assert_eq!(paths, 6);
        cubrig_complex_free(h);
    }
}

#[test]
fn json_roundtrip() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cubrig_complex_build(c("x").as_ptr(), &mut h), CubrigStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(cubrig_complex_to_json(h, &mut s), CubrigStatus::Ok);
        let json = take(s);
        let mut back = ptr::null_mut();
        assert_eq!(cubrig_complex_from_json(c(&json).as_ptr(), &mut back), CubrigStatus::Ok);
        let mut dim = 0usize;
        assert_eq!(cubrig_complex_dim(back, &mut dim), CubrigStatus::Ok);
        assert_eq!(dim, 2);
        let mut paths = 0usize;
        assert_eq!(cubrig_complex_path_count(back, c("00").as_ptr(), c("10").as_ptr(), &mut paths), CubrigStatus::Ok);
        assert_eq!(paths, 3);
        cubrig_complex_free(h);
        cubrig_complex_free(back);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cubrig_complex_build(c("torus:2").as_ptr(), &mut h), CubrigStatus::InvalidInput);
        assert!(h.is_null());
        assert!(last_error().contains("unknown constructor"));
        assert_eq!(cubrig_complex_build(ptr::null(), &mut h), CubrigStatus::NullArgument);
        assert_eq!(cubrig_complex_build(c("cube:40").as_ptr(), &mut h), CubrigStatus::GuardExceeded);
        assert!(last_error().contains("CUBRIG_MAX_CUBE"));

        assert_eq!(cubrig_complex_build(c("k").as_ptr(), &mut h), CubrigStatus::Ok);
        assert!(cubrig_last_error().is_null());
        let mut n = 0usize;
        assert_eq!(cubrig_complex_path_count(h, c("0").as_ptr(), c("1").as_ptr(), &mut n), CubrigStatus::LoopDetected);
        assert_eq!(cubrig_complex_dim(h, ptr::null_mut()), CubrigStatus::NullArgument);
        cubrig_complex_free(h);

        let bad = [0xffu8, 0];
        assert_eq!(cubrig_complex_build(bad.as_ptr().cast(), &mut h), CubrigStatus::InvalidUtf8);
        cubrig_complex_free(ptr::null_mut());
        cubrig_string_free(ptr::null_mut());
    }
}

#[test]
fn partition_sphere() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(cubrig_poset_partitions(2, 1, &mut p), CubrigStatus::Ok);
        let mut len = 0usize;
        assert_eq!(cubrig_poset_len(p, &mut len), CubrigStatus::Ok);
        assert_eq!(len, 12);
        let mut s = ptr::null_mut();
        assert_eq!(cubrig_poset_nerve(p, -1, &mut s), CubrigStatus::Ok);
        let mut chi = 0i64;
        assert_eq!(cubrig_sset_euler(s, &mut chi), CubrigStatus::Ok);
        // a circle
        assert_eq!(chi, 0);
        let mut point = true;
        assert_eq!(cubrig_sset_is_point(s, &mut point), CubrigStatus::Ok);
        assert!(!point);
        let mut j = ptr::null_mut();
        assert_eq!(cubrig_sset_homology_json(s, &mut j), CubrigStatus::Ok);
        let h: serde_json::Value = serde_json::from_str(&take(j)).unwrap();
        assert_eq!(h["degrees"][1]["betti"], 1);
        let mut leq = false;
        assert_eq!(cubrig_poset_leq(p, 0, 99, &mut leq), CubrigStatus::InvalidInput);
        assert_eq!(cubrig_poset_partitions(2, 7, &mut p), CubrigStatus::InvalidInput);
        cubrig_sset_free(s);
        cubrig_poset_free(p);
    }
}

#[test]
fn bruhat_dot_and_nerve() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(cubrig_poset_bruhat(3, &mut p), CubrigStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(cubrig_poset_to_dot(p, &mut d), CubrigStatus::Ok);
        let dot = take(d);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 6);
        let mut s = ptr::null_mut();
        assert_eq!(cubrig_poset_nerve(p, -1, &mut s), CubrigStatus::Ok);
        let mut point = false;
        assert_eq!(cubrig_sset_is_point(s, &mut point), CubrigStatus::Ok);
        assert!(point);
        let mut j = ptr::null_mut();
        assert_eq!(cubrig_sset_to_json(s, &mut j), CubrigStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(cubrig_sset_from_json(c(&take(j)).as_ptr(), &mut back), CubrigStatus::Ok);
        let (mut a, mut b) = (0usize, 0usize);
        for k in 0..4 {
            cubrig_sset_count(s, k, &mut a);
            cubrig_sset_count(back, k, &mut b);
            assert_eq!(a, b);
        }
        cubrig_sset_free(s);
        cubrig_sset_free(back);
        cubrig_poset_free(p);
    }
}

#[test]
fn mapping_spaces() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(cubrig_mapping_space(c("boundary:2").as_ptr(), c("alpha").as_ptr(), c("omega").as_ptr(), -1, &mut s), CubrigStatus::Ok);
        let mut n0 = 0usize;
        let mut n1 = 0usize;
        cubrig_sset_count(s, 0, &mut n0);
        cubrig_sset_count(s, 1, &mut n1);
        assert_eq!((n0, n1), (2, 0));
        cubrig_sset_free(s);

        assert_eq!(cubrig_mapping_space(c("delta:3").as_ptr(), c("0").as_ptr(), c("3").as_ptr(), -1, &mut s), CubrigStatus::Ok);
        let mut top = 0usize;
        cubrig_sset_top_dim(s, &mut top);
        cubrig_sset_count(s, 0, &mut n0);
        assert_eq!(n0, 4);
        assert!(top >= 2);
        cubrig_sset_free(s);

        assert_eq!(cubrig_mapping_space(c("k").as_ptr(), c("0").as_ptr(), c("1").as_ptr(), -1, &mut s), CubrigStatus::InvalidInput);
    }
}

#[test]
fn verify_suite_report() {
    unsafe {
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(cubrig_verify(c("psi").as_ptr(), 0, &mut passed, &mut report), CubrigStatus::Ok);
        assert!(passed);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v[0]["suite"], "psi");
        assert_eq!(cubrig_verify(c("nope").as_ptr(), 0, &mut passed, ptr::null_mut()), CubrigStatus::InvalidInput);
        let v = CStr::from_ptr(cubrig_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
