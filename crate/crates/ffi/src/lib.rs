//! C ABI over the engine: opaque problem and report handles, status codes,
//! and UTF-8 string outputs. Every entry point catches panics at the
//! boundary and reports them as a status instead of unwinding into C.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spic_core::problem::{emit_problem, parse_problem, ProblemFile};
use spic_core::report::{render_human, Report};
use spic_core::runner::{exit_status, run, RunOptions};

/// A parsed problem file. Opaque; create with `spic_problem_parse` and
/// release with `spic_problem_free`.
pub struct SpicProblem {
    inner: ProblemFile,
}

/// A finished run. Opaque; create with `spic_run` and release with
/// `spic_report_free`.
pub struct SpicReport {
    inner: Report,
}

/// Outcome of a call. Anything but `Ok` leaves a message readable through
/// `spic_last_error`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpicStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The problem text does not parse; the message names the line.
    ParseError = 3,
    /// The operation is not defined for this problem (for example,
    /// emitting a non-cyclic module model).
    Unsupported = 4,
    /// A panic was caught at the boundary.
    Panic = 5,
}

/// Run configuration; obtain defaults from `spic_options_default`.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SpicOptions {
    /// Budget for generic-sample searches per component.
    pub sample_budget: usize,
    /// Thickening bound for stabilized dimension counts.
    pub max_k: usize,
    /// Starting offset into the deterministic sample stream.
    pub seed: usize,
    /// Execute only the `verify` queries.
    pub verify_only: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let text = CString::new(msg.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// The message for the most recent non-`Ok` status on this thread, or null.
/// The pointer stays valid until the next call into this library from the
/// same thread.
#[no_mangle]
pub extern "C" fn spic_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// The default run configuration.
#[no_mangle]
pub extern "C" fn spic_options_default() -> SpicOptions {
    let opts = RunOptions::default();
    SpicOptions {
        sample_budget: opts.sample_budget,
        max_k: opts.max_k,
        seed: opts.seed,
        verify_only: opts.verify_only,
    }
}

fn guard<F: FnOnce() -> SpicStatus>(f: F) -> SpicStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(msg);
            SpicStatus::Panic
        }
    }
}

fn string_out(text: String, out: *mut *mut c_char) -> SpicStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_last_error("output contained an interior nul byte".into());
            return SpicStatus::InvalidUtf8;
        }
    };
    unsafe { *out = c.into_raw() };
    SpicStatus::Ok
}

/// Parses problem text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must point to a nul-terminated string and `out` must be a valid
/// pointer; on `Ok` the caller owns `*out` and must release it with
/// `spic_problem_free`.
#[no_mangle]
pub unsafe extern "C" fn spic_problem_parse(
    text: *const c_char,
    out: *mut *mut SpicProblem,
) -> SpicStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            set_last_error("null argument".into());
            return SpicStatus::NullArgument;
        }
        let bytes = unsafe { CStr::from_ptr(text) };
        let Ok(source) = bytes.to_str() else {
            set_last_error("problem text is not valid UTF-8".into());
            return SpicStatus::InvalidUtf8;
        };
        match parse_problem(source) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(SpicProblem { inner })) };
                SpicStatus::Ok
            }
            Err(e) => {
                set_last_error(e.to_string());
                SpicStatus::ParseError
            }
        }
    })
}

/// Releases a problem handle. A null pointer is ignored.
///
/// # Safety
/// `problem` must be null or a pointer obtained from `spic_problem_parse`
/// that has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn spic_problem_free(problem: *mut SpicProblem) {
    if !problem.is_null() {
        drop(unsafe { Box::from_raw(problem) });
    }
}

/// Writes the canonical text of the problem to `*out`; parsing that text
/// reproduces the problem.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer; on `Ok` the
/// caller owns `*out` and must release it with `spic_string_free`.
#[no_mangle]
pub unsafe extern "C" fn spic_problem_emit(
    problem: *const SpicProblem,
    out: *mut *mut c_char,
) -> SpicStatus {
    guard(|| {
        if problem.is_null() || out.is_null() {
            set_last_error("null argument".into());
            return SpicStatus::NullArgument;
        }
        match emit_problem(unsafe { &(*problem).inner }) {
            Ok(text) => string_out(text, out),
            Err(e) => {
                set_last_error(e.to_string());
                SpicStatus::Unsupported
            }
        }
    })
}

/// Runs all queries of the problem and stores a report handle in `*out`.
/// Per-query failures are recorded inside the report, not here.
///
/// # Safety
/// `problem` must be a live handle; `options` must be null (defaults) or
/// valid; `out` must be a valid pointer. On `Ok` the caller owns `*out`
/// and must release it with `spic_report_free`.
#[no_mangle]
pub unsafe extern "C" fn spic_run(
    problem: *const SpicProblem,
    options: *const SpicOptions,
    out: *mut *mut SpicReport,
) -> SpicStatus {
    guard(|| {
        if problem.is_null() || out.is_null() {
            set_last_error("null argument".into());
            return SpicStatus::NullArgument;
        }
        let opts = if options.is_null() {
            RunOptions::default()
        } else {
            let o = unsafe { &*options };
            RunOptions {
                sample_budget: o.sample_budget,
                max_k: o.max_k,
                seed: o.seed,
                verify_only: o.verify_only,
            }
        };
        let report = run(unsafe { &(*problem).inner }, &opts);
        unsafe { *out = Box::into_raw(Box::new(SpicReport { inner: report })) };
        SpicStatus::Ok
    })
}

/// Releases a report handle. A null pointer is ignored.
///
/// # Safety
/// `report` must be null or a pointer obtained from `spic_run` that has
/// not been freed already.
#[no_mangle]
pub unsafe extern "C" fn spic_report_free(report: *mut SpicReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Writes the machine-readable JSON report to `*out`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer; on `Ok` the
/// caller owns `*out` and must release it with `spic_string_free`.
#[no_mangle]
pub unsafe extern "C" fn spic_report_json(
    report: *const SpicReport,
    out: *mut *mut c_char,
) -> SpicStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            set_last_error("null argument".into());
            return SpicStatus::NullArgument;
        }
        string_out(unsafe { &(*report).inner }.to_json(), out)
    })
}

/// Writes the human-readable report to `*out`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer; on `Ok` the
/// caller owns `*out` and must release it with `spic_string_free`.
#[no_mangle]
pub unsafe extern "C" fn spic_report_human(
    report: *const SpicReport,
    out: *mut *mut c_char,
) -> SpicStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            set_last_error("null argument".into());
            return SpicStatus::NullArgument;
        }
        string_out(render_human(unsafe { &(*report).inner }), out)
    })
}

/// The process exit status the report calls for: 0 for success, 2 when a
/// verification verdict failed, 1 when any query recorded an error.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn spic_report_exit_status(report: *const SpicReport) -> c_int {
    if report.is_null() {
        return 1;
    }
    exit_status(unsafe { &(*report).inner }) as c_int
}

/// Releases a string produced by this library. A null pointer is ignored.
///
/// # Safety
/// `s` must be null or a pointer produced by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn spic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
