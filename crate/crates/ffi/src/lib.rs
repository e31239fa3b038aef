//! C ABI for `realgauge`.
//!
//! Every fallible function returns an [`RgStatus`] and writes its result
//! through an out pointer. On failure the message is available from
//! [`rg_last_error_message`] on the same thread. Handles are opaque and must be
//! released with the matching `*_free` function; strings returned through
//! `char **` out pointers are released with [`rg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use realgauge::cli::{load, run_named, Report};
use realgauge::gauges::form_coset_set;
use realgauge::symfield::{parse_element, OrderingSpec, RatFunc};
use realgauge::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Config = 4,
    InvalidArgument = 5,
    NotDefinite = 6,
    Unsupported = 7,
    Math = 8,
    Panic = 9,
}

/// Variable names of `ℚ(x_1, …, x_r)`.
pub struct RgField {
    vars: Vec<String>,
}

/// An element of a field, tied to its variable names.
pub struct RgElement {
    value: RatFunc,
    vars: Vec<String>,
}

/// Result of a configuration or scenario run.
pub struct RgReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(RgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } => RgStatus::Syntax,
            Error::Config { .. } => RgStatus::Config,
            Error::UnknownVariable(_)
            | Error::LengthMismatch(..)
            | Error::DimensionMismatch { .. }
            | Error::SpecMismatch
            | Error::WrongKind(_) => RgStatus::InvalidArgument,
            Error::NotDefinite => RgStatus::NotDefinite,
            Error::UnsupportedVariant(_) => RgStatus::Unsupported,
            _ => RgStatus::Math,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RgStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(RgStatus::InvalidArgument, msg.into())
}

/// Runs `f`, converting errors and panics into a status and the last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            RgStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(RgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn rg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the field `ℚ(names[0], …, names[n-1])`. `names` may be null when `n` is 0.
///
/// # Safety
/// `names` must point to `n` valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_field_new(names: *const *const c_char, n: usize, out: *mut *mut RgField) -> RgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if names.is_null() && n > 0 {
            return Err(null("names"));
        }
        let mut vars = Vec::with_capacity(n);
        for k in 0..n {
            let name = str_arg(*names.add(k), "variable name")?;
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || name.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(invalid(format!("invalid variable name '{name}'")));
            }
            if vars.iter().any(|v| v == name) {
                return Err(invalid(format!("duplicate variable name '{name}'")));
            }
            vars.push(name.to_string());
        }
        *out = Box::into_raw(Box::new(RgField { vars }));
        Ok(())
    })
}

/// Number of variables of `field`, or 0 for null.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rg_field_var_count(field: *const RgField) -> usize {
    field.as_ref().map_or(0, |f| f.vars.len())
}

/// # Safety
/// `field` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_field_free(field: *mut RgField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Parses an expression such as `"(x - y^2)/(3*x)"` in `field`.
///
/// # Safety
/// `field` must be a live handle, `expr` a C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_element_parse(field: *const RgField, expr: *const c_char, out: *mut *mut RgElement) -> RgStatus {
    guard(|| {
        let field = ref_arg(field, "field")?;
        let expr = str_arg(expr, "expr")?;
        let out = out_arg(out, "out")?;
        let value = parse_element(expr, &field.vars)?;
        *out = Box::into_raw(Box::new(RgElement { value, vars: field.vars.clone() }));
        Ok(())
    })
}

/// Canonical text of `elem`; release with [`rg_string_free`].
///
/// # Safety
/// `elem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_element_to_string(elem: *const RgElement, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let elem = ref_arg(elem, "elem")?;
        let out = out_arg(out, "out")?;
        *out = c_string(elem.value.display_with(&elem.vars));
        Ok(())
    })
}

/// Valuation of `elem` as `"(a_1, …, a_r)"`, or `"inf"` for zero.
///
/// # Safety
/// `elem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_element_valuation(elem: *const RgElement, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let elem = ref_arg(elem, "elem")?;
        let out = out_arg(out, "out")?;
        *out = c_string(elem.value.val().display_r(elem.vars.len()));
        Ok(())
    })
}

/// Sign of `elem` (-1, 0 or 1) at the ordering given by one ±1 per variable.
///
/// # Safety
/// `signs` must point to `n` values (may be null when `n` is 0); `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_element_sign_at(elem: *const RgElement, signs: *const i8, n: usize, out: *mut i8) -> RgStatus {
    guard(|| {
        let elem = ref_arg(elem, "elem")?;
        let out = out_arg(out, "out")?;
        let p = ordering(signs, n, elem.vars.len())?;
        *out = elem.value.sign_at(&p);
        Ok(())
    })
}

unsafe fn ordering(signs: *const i8, n: usize, r: usize) -> Result<OrderingSpec, Failure> {
    if n != r {
        return Err(invalid(format!("ordering has {n} signs for {r} variables")));
    }
    if signs.is_null() && n > 0 {
        return Err(null("signs"));
    }
    let eta = if n == 0 { Vec::new() } else { std::slice::from_raw_parts(signs, n).to_vec() };
    if let Some(k) = eta.iter().position(|s| *s != 1 && *s != -1) {
        return Err(invalid(format!("signs[{k}] must be 1 or -1")));
    }
    Ok(OrderingSpec::new(eta))
}

/// # Safety
/// `elem` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_element_free(elem: *mut RgElement) {
    if !elem.is_null() {
        drop(Box::from_raw(elem));
    }
}

/// Index of the value cosets of the diagonal form `⟨elems[0], …, elems[n-1]⟩`.
/// All entries must be nonzero and belong to fields with the same variables.
///
/// # Safety
/// `elems` must point to `n` live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_coset_index(elems: *const *const RgElement, n: usize, out: *mut usize) -> RgStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if n == 0 {
            return Err(invalid("form is empty"));
        }
        if elems.is_null() {
            return Err(null("elems"));
        }
        let mut e = Vec::with_capacity(n);
        let mut vars: Option<&Vec<String>> = None;
        for k in 0..n {
            let x = ref_arg(*elems.add(k), "form entry")?;
            if x.value.is_zero() {
                return Err(invalid(format!("form entry {k} is zero")));
            }
            if vars.is_some_and(|v| *v != x.vars) {
                return Err(invalid(format!("form entry {k} belongs to a different field")));
            }
            vars = Some(&x.vars);
            e.push(x.value.clone());
        }
        *out = form_coset_set(&e).index();
        Ok(())
    })
}

/// Runs a JSON scenario configuration (the CLI's `run <config>` format).
///
/// # Safety
/// `json` must be a C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_run_config(json: *const c_char, out: *mut *mut RgReport) -> RgStatus {
    guard(|| {
        let json = str_arg(json, "json")?;
        let out = out_arg(out, "out")?;
        let sc = load(json, "config")?;
        *out = Box::into_raw(Box::new(RgReport { report: Report::from_run(&sc) }));
        Ok(())
    })
}

/// Runs a built-in scenario by name (`"bk2_example"` or `"m6_index_example"`).
///
/// # Safety
/// `name` must be a C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_run_scenario(name: *const c_char, seed: u64, samples: usize, out: *mut *mut RgReport) -> RgStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let out = out_arg(out, "out")?;
        if samples == 0 {
            return Err(invalid("samples must be positive"));
        }
        let report = run_named(name, seed, samples)?;
        *out = Box::into_raw(Box::new(RgReport { report }));
        Ok(())
    })
}

/// True when the run had no violations and no analysis errors. False for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rg_report_ok(report: *const RgReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.ok())
}

/// Report as pretty-printed JSON; release with [`rg_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_report_json(report: *const RgReport, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let report = ref_arg(report, "report")?;
        let out = out_arg(out, "out")?;
        let text = serde_json::to_string_pretty(&report.report.to_json()).map_err(|e| Failure(RgStatus::Math, e.to_string()))?;
        *out = c_string(text);
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_report_free(report: *mut RgReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
