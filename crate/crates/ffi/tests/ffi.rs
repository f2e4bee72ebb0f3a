use std::ffi::{c_char, CStr, CString};
use std::ptr;

use jacobi_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = jd_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    jd_string_free(s);
    out
}

const THETA: &str = "skeleton: empty\n1 ; vertices u v ; edges u.0-v.0 u.1-v.1 u.2-v.2\n";

#[test]
fn parse_serialize_round_trip() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(jd_parse(c(THETA).as_ptr(), &mut x), JdStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(jd_serialize(x, &mut s), JdStatus::Ok);
        let text = take(s);
        let mut y = ptr::null_mut();
        assert_eq!(jd_parse(c(&text).as_ptr(), &mut y), JdStatus::Ok);
        let mut t = ptr::null_mut();
        jd_serialize(y, &mut t);
        assert_eq!(take(t), text);
        jd_combination_free(x);
        jd_combination_free(y);
    }
}

#[test]
fn dimensions_and_normal_forms() {
    unsafe {
        let mut space = ptr::null_mut();
        assert_eq!(jd_space_new(c("empty").as_ptr(), 3, &mut space), JdStatus::Ok);
        let dims: Vec<usize> = (0..=3)
            .map(|n| {
                let mut d = 0;
                assert_eq!(jd_dim(space, n, &mut d), JdStatus::Ok);
                d
            })
            .collect();
        assert_eq!(dims, [1, 1, 2, 3]);
        let mut d = 0;
        assert_eq!(jd_dim(space, 4, &mut d), JdStatus::Domain);
        assert!(last_error().contains("cap"));

        let mut open = ptr::null_mut();
        assert_eq!(jd_space_new(c("I:x").as_ptr(), 2, &mut open), JdStatus::Ok);
        let stu = "skeleton: I:x
1 ; legs a@x:0 b@x:1 c@x:2 d@x:3 ; edges a-c b-d
-1 ; legs a@x:0 b@x:1 c@x:2 d@x:3 ; edges a-d b-c
-1 ; vertices v ; legs a@x:0 b@x:1 c@x:2 ; edges v.0-a v.1-b v.2-c";
        let mut x = ptr::null_mut();
        assert_eq!(jd_parse(c(stu).as_ptr(), &mut x), JdStatus::Ok);
        let mut nf = ptr::null_mut();
        assert_eq!(jd_normal_form(open, x, &mut nf), JdStatus::Ok);
        let mut s = ptr::null_mut();
        jd_serialize(nf, &mut s);
        assert_eq!(take(s), "skeleton: I:x\n");
        jd_combination_free(x);
        jd_combination_free(nf);
        jd_space_free(space);
        jd_space_free(open);
    }
}

#[test]
fn evaluation() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(jd_weights_new(c("so3").as_ptr(), &mut w), JdStatus::Ok);
        let mut x = ptr::null_mut();
        jd_parse(c(THETA).as_ptr(), &mut x);
        let mut v = ptr::null_mut();
        assert_eq!(jd_eval(w, x, &mut v), JdStatus::Ok);
        assert_eq!(take(v), "6");

        let mut circle = ptr::null_mut();
        jd_parse(c("skeleton: C:o\n1 ; legs a@o:0 b@o:1 ; edges a-b\n").as_ptr(), &mut circle);
        assert_eq!(jd_eval(w, circle, &mut v), JdStatus::Ok);
        assert_eq!(take(v), "-6");

        let mut open = ptr::null_mut();
        jd_parse(c("skeleton: I:x\n1 ; legs a@x:0 b@x:1 ; edges a-b\n").as_ptr(), &mut open);
        assert_eq!(jd_eval(w, open, &mut v), JdStatus::Domain);

        let mut file = ptr::null_mut();
        let data = "flavor lie\nrank 3\nB\n1 0 0\n0 1 0\n0 0 1\nT\n1 2 3 : 2\n";
        assert_eq!(jd_weights_new(c(data).as_ptr(), &mut file), JdStatus::Ok);
        assert_eq!(jd_eval(file, x, &mut v), JdStatus::Ok);
        assert_eq!(take(v), "24");
        for p in [x, circle, open] {
            jd_combination_free(p);
        }
        jd_weights_free(w);
        jd_weights_free(file);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(jd_parse(c("skeleton: I:x\n1 ; legs a@x:0 ; edges a-").as_ptr(), &mut x), JdStatus::Parse);
        assert!(last_error().contains("syntax"));
        assert!(x.is_null());
        assert_eq!(jd_parse(ptr::null(), &mut x), JdStatus::NullPointer);
        assert_eq!(jd_parse(c(THETA).as_ptr(), ptr::null_mut()), JdStatus::NullPointer);
        let bad = [0xffu8, 0xfe, 0];
        assert_eq!(jd_parse(bad.as_ptr() as *const c_char, &mut x), JdStatus::InvalidUtf8);
        let mut d = 0;
        assert_eq!(jd_dim(ptr::null(), 1, &mut d), JdStatus::NullPointer);
        let mut w = ptr::null_mut();
        assert_eq!(jd_weights_new(c("no-such-preset").as_ptr(), &mut w), JdStatus::Parse);
        assert_eq!(jd_parse(c(THETA).as_ptr(), &mut x), JdStatus::Ok);
        assert!(jd_last_error().is_null());
        jd_combination_free(x);
        jd_combination_free(ptr::null_mut());
        jd_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/jacobi.h")).unwrap();
    for name in [
        "jd_parse", "jd_serialize", "jd_space_new", "jd_dim", "jd_normal_form", "jd_weights_new", "jd_eval",
        "jd_last_error", "jd_string_free", "jd_combination_free", "jd_space_free", "jd_weights_free",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name}");
    }
    assert!(header.contains("typedef struct JdCombination JdCombination;"));
    assert!(header.contains("JD_STATUS_PANIC = 5"));
}
