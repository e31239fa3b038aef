use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use realgauge_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    rg_string_free(s);
    out
}

fn last_error() -> String {
    let p = rg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

struct Field(*mut RgField);

impl Field {
    fn new(names: &[&str]) -> Field {
        let cs: Vec<CString> = names.iter().map(|n| cstr(n)).collect();
        let ptrs: Vec<*const c_char> = cs.iter().map(|c| c.as_ptr()).collect();
        let mut f = ptr::null_mut();
        assert_eq!(unsafe { rg_field_new(ptrs.as_ptr(), ptrs.len(), &mut f) }, RgStatus::Ok);
        Field(f)
    }

    fn parse(&self, expr: &str) -> *mut RgElement {
        let mut e = ptr::null_mut();
        let s = cstr(expr);
        assert_eq!(unsafe { rg_element_parse(self.0, s.as_ptr(), &mut e) }, RgStatus::Ok, "{expr}");
        e
    }
}

impl Drop for Field {
    fn drop(&mut self) {
        unsafe { rg_field_free(self.0) }
    }
}

#[test]
fn element_round_trip() {
    let f = Field::new(&["x", "y"]);
    assert_eq!(unsafe { rg_field_var_count(f.0) }, 2);
    let e = f.parse("(x^2*y - x^3)/(2*x)");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(rg_element_to_string(e, &mut s), RgStatus::Ok);
        let text = take(s);
        let again = f.parse(&text);
        let mut s2 = ptr::null_mut();
        rg_element_to_string(again, &mut s2);
        assert_eq!(take(s2), text);
        rg_element_free(again);

        let mut v = ptr::null_mut();
        assert_eq!(rg_element_valuation(e, &mut v), RgStatus::Ok);
        assert_eq!(take(v), "(1, 1)");
        rg_element_free(e);
    }
}

#[test]
fn sign_follows_the_lowest_monomial() {
    let f = Field::new(&["x", "y"]);
    // val(y) = (0, 1) < (1, 0) = val(x), so y decides the sign.
    let e = f.parse("y - x");
    let mut out = 0i8;
    unsafe {
        for (signs, want) in [([1i8, 1], 1i8), ([-1, 1], 1), ([1, -1], -1), ([-1, -1], -1)] {
            assert_eq!(rg_element_sign_at(e, signs.as_ptr(), 2, &mut out), RgStatus::Ok);
            assert_eq!(out, want, "{signs:?}");
        }
        let c = f.parse("x - 1");
        rg_element_sign_at(c, [1i8, 1].as_ptr(), 2, &mut out);
        assert_eq!(out, -1);
        rg_element_free(c);
        assert_eq!(rg_element_sign_at(e, [1i8].as_ptr(), 1, &mut out), RgStatus::InvalidArgument);
        assert!(last_error().contains("1 signs for 2 variables"));
        assert_eq!(rg_element_sign_at(e, [1i8, 0].as_ptr(), 2, &mut out), RgStatus::InvalidArgument);
        rg_element_free(e);
    }
    let zero = f.parse("x - x");
    unsafe {
        rg_element_sign_at(zero, [1i8, 1].as_ptr(), 2, &mut out);
        assert_eq!(out, 0);
        let mut v = ptr::null_mut();
        rg_element_valuation(zero, &mut v);
        assert_eq!(take(v), "inf");
        rg_element_free(zero);
    }
}

#[test]
fn parse_errors_report_status_and_message() {
    let f = Field::new(&["x"]);
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(rg_element_parse(f.0, cstr("x*(").as_ptr(), &mut e), RgStatus::Syntax);
        assert!(last_error().starts_with("syntax error"));
        assert_eq!(rg_element_parse(f.0, cstr("z").as_ptr(), &mut e), RgStatus::InvalidArgument);
        assert!(last_error().contains("'z'"));
        assert_eq!(rg_element_parse(f.0, ptr::null(), &mut e), RgStatus::NullPointer);
        assert_eq!(rg_element_parse(ptr::null(), cstr("x").as_ptr(), &mut e), RgStatus::NullPointer);
        assert_eq!(rg_element_parse(f.0, cstr("x").as_ptr(), ptr::null_mut()), RgStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(rg_element_parse(f.0, bad.as_ptr().cast(), &mut e), RgStatus::InvalidUtf8);
    }
    assert!(e.is_null());
}

#[test]
fn coset_index_of_diagonal_forms() {
    let f = Field::new(&["x1", "x2", "x3", "x4"]);
    let mut index = 0usize;
    for (src, want) in [
        (vec!["1", "x1", "x2", "x3", "x4", "x1*x2*x3*x4"], 16usize),
        (vec!["1", "x1^2", "3"], 1),
        (vec!["1", "x1"], 2),
    ] {
        let es: Vec<*mut RgElement> = src.iter().map(|s| f.parse(s)).collect();
        let ptrs: Vec<*const RgElement> = es.iter().map(|e| e.cast_const()).collect();
        unsafe {
            assert_eq!(rg_coset_index(ptrs.as_ptr(), ptrs.len(), &mut index), RgStatus::Ok);
            assert_eq!(index, want, "{src:?}");
            es.into_iter().for_each(|e| rg_element_free(e));
        }
    }
    let zero = f.parse("0");
    let other = Field::new(&["x"]);
    let one = other.parse("1");
    unsafe {
        assert_eq!(rg_coset_index([zero.cast_const()].as_ptr(), 1, &mut index), RgStatus::InvalidArgument);
        let mixed = [f.parse("1").cast_const(), one.cast_const()];
        assert_eq!(rg_coset_index(mixed.as_ptr(), 2, &mut index), RgStatus::InvalidArgument);
        assert!(last_error().contains("different field"));
        assert_eq!(rg_coset_index(ptr::null(), 0, &mut index), RgStatus::InvalidArgument);
        rg_element_free(mixed[0].cast_mut());
        rg_element_free(zero);
        rg_element_free(one);
    }
}

#[test]
fn scenario_report_matches_cli_json() {
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(rg_run_scenario(cstr("bk2_example").as_ptr(), 1, 3, &mut r), RgStatus::Ok);
        assert!(rg_report_ok(r));
        let mut s = ptr::null_mut();
        assert_eq!(rg_report_json(r, &mut s), RgStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["scenario"], "bk2_example");
        assert_eq!(v["runs"][1]["analyses"]["lift"]["liftable"], serde_json::json!(["(-,+)"]));
        rg_report_free(r);

        assert_eq!(rg_run_scenario(cstr("nope").as_ptr(), 1, 3, &mut r), RgStatus::Config);
        assert!(last_error().contains("unknown scenario"));
        assert_eq!(rg_run_scenario(cstr("bk2_example").as_ptr(), 1, 0, &mut r), RgStatus::InvalidArgument);
        assert!(!rg_report_ok(ptr::null()));
    }
}

#[test]
fn config_runs_and_config_errors() {
    let good = cstr(r#"{"vars":["x"],"algebra":{"kind":"MATRIX","eKind":"BASE","form":["1","x"]},"ordering":"ALL","analyses":["lift","nil"]}"#);
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(rg_run_config(good.as_ptr(), &mut r), RgStatus::Ok);
        assert!(!rg_report_ok(r), "nil on a matrix algebra is an analysis error");
        let mut s = ptr::null_mut();
        rg_report_json(r, &mut s);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["errors"], 1);
        assert_eq!(v["runs"][0]["analyses"]["lift"]["matches"], true);
        rg_report_free(r);

        let bad = cstr(r#"{"vars":["x"],"algebra":{"kind":"MATRIX","eKind":"BASE","form":["1","x*("]},"ordering":[1]}"#);
        assert_eq!(rg_run_config(bad.as_ptr(), &mut r), RgStatus::Config);
        assert!(last_error().contains("algebra.form[1]"));
    }
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        rg_string_free(ptr::null_mut());
        rg_field_free(ptr::null_mut());
        rg_element_free(ptr::null_mut());
        rg_report_free(ptr::null_mut());
        assert_eq!(rg_field_var_count(ptr::null()), 0);
        let mut f = ptr::null_mut();
        assert_eq!(rg_field_new(ptr::null(), 0, &mut f), RgStatus::Ok);
        assert_eq!(rg_field_var_count(f), 0);
        rg_field_free(f);
        assert_eq!(rg_field_new(ptr::null(), 1, &mut f), RgStatus::NullPointer);
    }
    let v = unsafe { CStr::from_ptr(rg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn last_error_is_per_thread() {
    let f = Field::new(&["x"]);
    let mut e = ptr::null_mut();
    unsafe { rg_element_parse(f.0, cstr("(").as_ptr(), &mut e) };
    assert!(!rg_last_error_message().is_null());
    std::thread::spawn(|| assert!(rg_last_error_message().is_null())).join().unwrap();
}

/// Type-checks a C client against the generated header.
#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests").join("c_header.c"))
        .output();
    match out {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(e) => eprintln!("skipping: no C compiler ({cc}: {e})"),
    }
}
