use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ncsym_ffi::*;

fn owned(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ncsym_string_free(s) };
    out
}

fn quaternion(text: &str) -> *mut NcsymQuaternion {
    let c = CString::new(text).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_quaternion_parse(c.as_ptr(), &mut q) },
        NcsymStatus::Ok
    );
    q
}

fn polynomial(text: &str) -> *mut NcsymPolynomial {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_polynomial_parse(c.as_ptr(), &mut p) },
        NcsymStatus::Ok
    );
    p
}

fn show(q: *const NcsymQuaternion) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_quaternion_to_string(q, &mut s) },
        NcsymStatus::Ok
    );
    owned(s)
}

#[test]
fn quaternion_arithmetic() {
    let (i, j) = (quaternion("i"), quaternion("j"));
    let mut k = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_quaternion_mul(i, j, &mut k) },
        NcsymStatus::Ok
    );
    assert_eq!(show(k), "k");
    let mut sum = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_quaternion_add(i, j, &mut sum) },
        NcsymStatus::Ok
    );
    assert_eq!(show(sum), "i+j");
    let mut inv = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_quaternion_inverse(sum, &mut inv) },
        NcsymStatus::Ok
    );
    assert_eq!(show(inv), "-1/2i-1/2j");
    let zero = quaternion("0");
    let mut none = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_quaternion_inverse(zero, &mut none) },
        NcsymStatus::DivisionByZero
    );
    assert!(none.is_null());
    unsafe {
        for q in [i, j, k, sum, inv, zero] {
            ncsym_quaternion_free(q);
        }
    }
}

#[test]
fn polynomial_evaluation_and_division() {
    let p = polynomial("i + j*t");
    let k = quaternion("k");
    let mut v = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_polynomial_eval(p, k, false, &mut v) },
        NcsymStatus::Ok
    );
    assert_eq!(show(v), "2i");
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_polynomial_eval(p, k, true, &mut w) },
        NcsymStatus::Ok
    );
    assert_eq!(show(w), "0");

    let f = polynomial("t^2 - (i+j)*t - k");
    let i = quaternion("i");
    let (mut q, mut r) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        unsafe { ncsym_polynomial_right_divide(f, i, &mut q, &mut r) },
        NcsymStatus::Ok
    );
    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_polynomial_to_string(q, &mut text) },
        NcsymStatus::Ok
    );
    assert_eq!(owned(text), "t - j");
    assert_eq!(show(r), "0");
    unsafe {
        ncsym_polynomial_free(p);
        ncsym_polynomial_free(f);
        ncsym_polynomial_free(q);
        for h in [k, v, w, i, r] {
            ncsym_quaternion_free(h);
        }
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("t +").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_polynomial_parse(bad.as_ptr(), &mut p) },
        NcsymStatus::Parse
    );
    assert!(p.is_null());
    assert!(owned(ncsym_last_error()).contains("byte 3"));

    let gen = CString::new("X{1}").unwrap();
    assert_eq!(
        unsafe { ncsym_polynomial_parse(gen.as_ptr(), &mut p) },
        NcsymStatus::Invalid
    );
    assert_eq!(
        unsafe { ncsym_polynomial_parse(ptr::null(), &mut p) },
        NcsymStatus::NullPointer
    );
    let ok = CString::new("t").unwrap();
    assert_eq!(
        unsafe { ncsym_polynomial_parse(ok.as_ptr(), ptr::null_mut()) },
        NcsymStatus::NullPointer
    );
    // success clears the message
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_polynomial_parse(ok.as_ptr(), &mut q) },
        NcsymStatus::Ok
    );
    assert!(ncsym_last_error().is_null());
    unsafe { ncsym_polynomial_free(q) };
}

#[test]
fn normal_form_and_nogo() {
    let e = CString::new("X{1,2}*X{2}").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { ncsym_normal_form_json(e.as_ptr(), 2, &mut json) },
        NcsymStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&owned(json)).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { ncsym_nogo_run(3, 0, &mut r) }, NcsymStatus::Ok);
    let mut nonzero = false;
    assert_eq!(
        unsafe { ncsym_nogo_witness_nonzero(r, &mut nonzero) },
        NcsymStatus::Ok
    );
    assert!(nonzero);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ncsym_nogo_json(r, &mut s) }, NcsymStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&owned(s)).unwrap();
    assert_eq!(v["witness_nonzero"], true);
    assert_eq!(unsafe { ncsym_nogo_transcript(r, &mut s) }, NcsymStatus::Ok);
    assert!(owned(s).contains("Conclusion"));
    assert_eq!(
        unsafe { ncsym_nogo_witness_string(r, &mut s) },
        NcsymStatus::Ok
    );
    assert!(owned(s).starts_with("X{1} (x)"));
    unsafe { ncsym_nogo_free(r) };

    assert_eq!(
        unsafe { ncsym_nogo_run(1, 0, &mut r) },
        NcsymStatus::Invalid
    );
}

#[test]
fn header_declares_every_export() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(root.join("include/ncsym.h")).unwrap();
    let source = std::fs::read_to_string(root.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}

/// Compiles the C smoke test against the static library when a C compiler is present.
#[test]
fn c_smoke_test() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // the test binary lives in <target>/<profile>/deps
    let exe_path = std::env::current_exe().unwrap();
    let lib = exe_path
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("libncsym_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    assert!(
        lib.exists(),
        "static library not built at {}",
        lib.display()
    );
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ncsym_smoke");
    let status = Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "c smoke ok");
}
