//! C ABI for `bqtop-core`.
//!
//! Quivers are opaque `BqQuiver` handles created by [`bq_quiver_parse`] and
//! released by [`bq_quiver_free`]. Reports come back as JSON strings owned by
//! the caller and released by [`bq_string_free`]. Every call returns a
//! [`BqStatus`]; on failure [`bq_last_error`] describes the error.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bqtop_core::complex::Coefficient;
use bqtop_core::report::{self, Analysis, Config, CoverInputs};
use bqtop_core::Error;

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BqStatus {
    Ok = 0,
    /// The report was produced and one of its verdicts failed.
    VerdictFailed = 1,
    /// Syntax errors, malformed quivers, relations or maps, unknown names.
    InvalidInput = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    NotACovering = 5,
    NotGalois = 6,
    NoSemiNormedBasis = 7,
    /// The input is outside what the computation handles.
    Unsupported = 8,
    Io = 9,
    Panic = 10,
}

/// A parsed bound quiver with its path table and homotopy classes.
pub struct BqQuiver {
    analysis: Analysis,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BqStatus {
    match e {
        Error::NotACovering(_) => BqStatus::NotACovering,
        Error::NotGalois(_) => BqStatus::NotGalois,
        Error::NoSemiNormedBasis(_) => BqStatus::NoSemiNormedBasis,
        Error::TriangularRequired
        | Error::HypothesisViolated(_)
        | Error::Admissibility { .. }
        | Error::SupportTooLarge { .. }
        | Error::NotConnected
        | Error::FieldMismatch(_) => BqStatus::Unsupported,
        Error::Io(_) => BqStatus::Io,
        _ => BqStatus::InvalidInput,
    }
}

struct Failure(BqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> Outcome<BqStatus>) -> BqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == BqStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BqStatus::Panic
        }
    }
}

unsafe fn utf8<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(Failure(BqStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BqStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Outcome<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        utf8(p, what).map(Some)
    }
}

unsafe fn handle<'a>(q: *const BqQuiver, what: &str) -> Outcome<&'a Analysis> {
    q.as_ref()
        .map(|q| &q.analysis)
        .ok_or_else(|| Failure(BqStatus::NullPointer, format!("{what} is null")))
}

unsafe fn give(out: *mut *mut c_char, json: serde_json::Value, ok: bool) -> Outcome<BqStatus> {
    if out.is_null() {
        return Err(Failure(BqStatus::NullPointer, "out is null".into()));
    }
    let s = serde_json::to_string_pretty(&json).expect("reports serialize");
    *out = CString::new(s).expect("JSON has no NUL bytes").into_raw();
    Ok(if ok { BqStatus::Ok } else { BqStatus::VerdictFailed })
}

/// Version of the library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `.bq` text. `name` labels the input in reports and may be null.
///
/// # Safety
/// `text` and `name` must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bq_quiver_parse(text: *const c_char, name: *const c_char, out: *mut *mut BqQuiver) -> BqStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(BqStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let t = utf8(text, "text")?;
        let n = optional_text(name, "name")?.unwrap_or("input");
        let analysis = Analysis::from_text(n, t, Config::default())?;
        *out = Box::into_raw(Box::new(BqQuiver { analysis }));
        Ok(BqStatus::Ok)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `q` must come from [`bq_quiver_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bq_quiver_free(q: *mut BqQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes up to `cap` cell counts of ℬ (or ℬ♯ when `sharp`) into `counts`
/// and the number of dimensions into `len`.
///
/// # Safety
/// `q` must be a live handle, `counts` must hold `cap` entries (or be null
/// with `cap` zero) and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bq_cell_counts(q: *const BqQuiver, sharp: bool, counts: *mut usize, cap: usize, len: *mut usize) -> BqStatus {
    guard(|| {
        let a = handle(q, "quiver")?;
        if len.is_null() || (counts.is_null() && cap > 0) {
            return Err(Failure(BqStatus::NullPointer, "output buffer is null".into()));
        }
        let c = a.complex(sharp, None).counts();
        for (i, n) in c.iter().take(cap).enumerate() {
            *counts.add(i) = *n;
        }
        *len = c.len();
        Ok(BqStatus::Ok)
    })
}

/// Cellular (co)homology as JSON. `coefficient` is `Z`, `Q`, `Fp:<p>` or
/// `Zmod:<m>`; null means `Z`.
///
/// # Safety
/// `q` must be a live handle, `coefficient` null or NUL-terminated and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bq_homology_json(
    q: *const BqQuiver,
    coefficient: *const c_char,
    sharp: bool,
    cohomology: bool,
    out: *mut *mut c_char,
) -> BqStatus {
    guard(|| {
        let a = handle(q, "quiver")?;
        let coeff: Coefficient = optional_text(coefficient, "coefficient")?.unwrap_or("Z").parse()?;
        let name = if cohomology { "cohomology" } else { "homology" };
        give(
            out,
            report::envelope(name, a, report::homology_report(a, coeff, sharp, cohomology)),
            true,
        )
    })
}

/// Runs a report by name: `check`, `cells`, `pi1`, `simplicial`,
/// `hochschild` or `compare`. Returns `VerdictFailed` with the report
/// written when a verdict fails.
///
/// # Safety
/// `q` must be a live handle, `command` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bq_report_json(q: *const BqQuiver, command: *const c_char, out: *mut *mut c_char) -> BqStatus {
    guard(|| {
        let a = handle(q, "quiver")?;
        let cmd = utf8(command, "command")?;
        let (result, ok) = match cmd {
            "check" => (report::check_report(a), true),
            "cells" => (report::cells_report(a, false, None), true),
            "pi1" => (report::pi1_report(a, None, true, true)?, true),
            "simplicial" => report::simplicial_report(a)?,
            "hochschild" => report::hochschild_report(a, None)?,
            "compare" => report::compare_report(a)?,
            other => return Err(Failure(BqStatus::InvalidInput, format!("unknown command `{other}`"))),
        };
        give(out, report::envelope(cmd, a, result), ok)
    })
}

/// Verifies that `morphism` (a `.map` text) is a covering from `cover` to
/// `base`. `group` (a `.group` text) adds the Galois and deck checks;
/// `base_point` names the base vertex for the deck check. Both may be null.
///
/// # Safety
/// Handles must be live, strings null or NUL-terminated as documented and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bq_cover_verify_json(
    base: *const BqQuiver,
    cover: *const BqQuiver,
    morphism: *const c_char,
    group: *const c_char,
    base_point: *const c_char,
    out: *mut *mut c_char,
) -> BqStatus {
    guard(|| {
        let inputs = CoverInputs {
            base: handle(base, "base")?,
            cover: handle(cover, "cover")?,
            morphism: utf8(morphism, "morphism")?,
            group: optional_text(group, "group")?,
            base_point: optional_text(base_point, "base_point")?,
        };
        let (json, ok) = report::cover_report(&inputs)?;
        give(out, json, ok)
    })
}
