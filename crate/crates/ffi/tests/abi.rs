use bethe_bbs_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { bbs_string_free(s) };
    out
}

fn path(n: usize, text: &str) -> *mut BbsPath {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bbs_path_parse(n, c.as_ptr(), &mut p) }, BbsStatus::Ok);
    p
}

#[test]
fn evolve_and_render() {
    let p = path(3, "11 122 2 1333 1 1 4 1 1 1 1 1 1 1 1 1 1");
    assert_eq!(unsafe { bbs_path_len(p) }, 17);
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { bbs_evolve(p, 0, &mut q) }, BbsStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bbs_path_render(q, &mut s) }, BbsStatus::Ok);
    assert_eq!(take_string(s), "11 111 1 1222 3 3 3 4 1 1 1 1 1 1 1 1 1");
    let mut e = 0i64;
    assert_eq!(unsafe { bbs_row_energy(p, 2, &mut e) }, BbsStatus::Ok);
    assert_eq!(e, 5);
    assert_eq!(unsafe { bbs_verify_triple(p) }, BbsStatus::Ok);
    unsafe {
        bbs_path_free(q);
        bbs_path_free(p);
    }
}

#[test]
fn kkr_roundtrip_and_tau() {
    let json = CString::new(
        r#"{"n":3,"quantum":[1,1,1,1,1,1,1,1,1,1,1,1,1,1],"colors":[[[4,0],[3,2],[2,3]],[[3,1],[1,0]],[[1,0]]]}"#,
    )
    .unwrap();
    let mut rc = ptr::null_mut();
    assert_eq!(unsafe { bbs_rc_from_json(json.as_ptr(), &mut rc) }, BbsStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bbs_kkr_to_path(rc, &mut p) }, BbsStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bbs_path_render(p, &mut s) }, BbsStatus::Ok);
    assert_eq!(take_string(s), "11112221322433");

    let mut back = ptr::null_mut();
    assert_eq!(unsafe { bbs_kkr_from_path(p, false, &mut back) }, BbsStatus::Ok);
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { bbs_rc_to_json(back, &mut j) }, BbsStatus::Ok);
    assert_eq!(take_string(j), json.to_str().unwrap());

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { bbs_tau_table(rc, &mut t) }, BbsStatus::Ok);
    assert_eq!(unsafe { (bbs_table_len(t), bbs_table_rank(t)) }, (14, 3));
    let mut v = 0i64;
    assert_eq!(unsafe { bbs_table_get(t, 14, 4, &mut v) }, BbsStatus::Ok);
    assert_eq!(v, 19);
    assert_eq!(unsafe { bbs_table_get(t, 15, 4, &mut v) }, BbsStatus::IndexOutOfRange);
    let mut csv = ptr::null_mut();
    assert_eq!(unsafe { bbs_table_to_csv(t, &mut csv) }, BbsStatus::Ok);
    assert!(take_string(csv).ends_with("4,0,0,0,0,1,2,3,4,6,8,10,13,16,19\n"));

    let mut rho = ptr::null_mut();
    assert_eq!(unsafe { bbs_rho_table(p, &mut rho) }, BbsStatus::Ok);
    let mut en = ptr::null_mut();
    assert_eq!(unsafe { bbs_energy_table(p, true, &mut en) }, BbsStatus::Ok);
    for k in 0..=14 {
        for d in 1..=4 {
            let (mut a, mut b, mut c) = (0, 0, 0);
            unsafe {
                bbs_table_get(t, k, d, &mut a);
                bbs_table_get(rho, k, d, &mut b);
                bbs_table_get(en, k, d, &mut c);
            }
            assert_eq!((a, a), (b, c), "k={k} d={d}");
        }
    }
    unsafe {
        bbs_table_free(t);
        bbs_table_free(rho);
        bbs_table_free(en);
        bbs_rc_free(back);
        bbs_rc_free(rc);
        bbs_path_free(p);
    }
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    let bad = CString::new("1x2").unwrap();
    assert_ne!(unsafe { bbs_path_parse(2, bad.as_ptr(), &mut p) }, BbsStatus::Ok);
    assert!(p.is_null());
    assert!(!bbs_last_error().is_null());

    assert_eq!(unsafe { bbs_path_parse(2, ptr::null(), &mut p) }, BbsStatus::NullPointer);

    let q = path(1, "1112");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { bbs_evolve(q, 0, &mut r) }, BbsStatus::BoundaryCheck);
    let msg = unsafe { CStr::from_ptr(bbs_last_error()) }.to_str().unwrap();
    assert!(msg.contains("vacuum"), "{msg}");

    let nh = path(1, "2111");
    let mut rc = ptr::null_mut();
    assert_eq!(unsafe { bbs_kkr_from_path(nh, false, &mut rc) }, BbsStatus::NotHighest);
    assert_eq!(unsafe { bbs_kkr_from_path(nh, true, &mut rc) }, BbsStatus::Ok);
    let json = CString::new("{\"n\":1}").unwrap();
    let mut rc2 = ptr::null_mut();
    assert_eq!(unsafe { bbs_rc_from_json(json.as_ptr(), &mut rc2) }, BbsStatus::Parse);
    unsafe {
        bbs_rc_free(rc);
        bbs_path_free(q);
        bbs_path_free(nh);
        bbs_path_free(ptr::null_mut());
        bbs_string_free(ptr::null_mut());
    }
}
