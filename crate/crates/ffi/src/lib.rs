//! C ABI over the `wellfound` library.
//!
//! Objects cross the boundary as opaque heap handles released by their
//! `*_free` function. Every fallible call returns a [`WfStatus`]; on failure
//! [`wf_last_error_message`] describes the most recent error on the calling
//! thread. Strings returned through out-parameters are owned by the caller
//! and released with [`wf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;
use wellfound::boolalg::{in_filter, parse_expr, FilterSpec, Polarity};
use wellfound::entail::{derivable, find_model, parse_theory, Sequent, Theory};
use wellfound::found::{classify, Boundary};
use wellfound::harness::{self, Config};
use wellfound::pred::{parse_pred, Pred, Universe};
use wellfound::seq::Alphabet;
use wellfound::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Limit = 5,
    Panic = 6,
}

/// A clause theory.
pub struct WfTheory(Theory);

/// A predicate on a truncated universe.
pub struct WfPred(Pred);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    // Interior NULs would truncate the message; drop them.
    let clean = CString::new(message.replace('\0', "")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

struct Fail(WfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => WfStatus::Parse,
            Error::Limit(_) => WfStatus::Limit,
            _ => WfStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            WfStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WfStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(WfStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(WfStatus::InvalidUtf8, e.to_string()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(null)
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', ""))
        .unwrap_or_default()
        .into_raw()
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a YAML or JSON theory document.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out_theory` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wf_theory_parse(
    source: *const c_char,
    out_theory: *mut *mut WfTheory,
) -> WfStatus {
    guard(|| {
        let slot = out(out_theory)?;
        *slot = ptr::null_mut();
        let theory = parse_theory(text(source)?)?;
        *slot = Box::into_raw(Box::new(WfTheory(theory)));
        Ok(())
    })
}

/// # Safety
/// `theory` must come from [`wf_theory_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wf_theory_free(theory: *mut WfTheory) {
    if !theory.is_null() {
        drop(Box::from_raw(theory));
    }
}

/// Number of atoms; atom `i` is bit `i` of every atom set.
///
/// # Safety
/// `theory` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wf_theory_num_atoms(
    theory: *const WfTheory,
    out_atoms: *mut usize,
) -> WfStatus {
    guard(|| {
        *out(out_atoms)? = get(theory)?.0.num_atoms();
        Ok(())
    })
}

/// Whether the empty sequent is underivable.
///
/// # Safety
/// `theory` must be a live handle; `out_consistent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wf_theory_is_consistent(
    theory: *const WfTheory,
    out_consistent: *mut bool,
) -> WfStatus {
    guard(|| {
        let t = &get(theory)?.0;
        *out(out_consistent)? = derivable(t, Sequent::default())?.is_none();
        Ok(())
    })
}

/// Searches a model. On success `*out_found` tells whether one exists and
/// `*out_truth` holds the set of true atoms.
///
/// # Safety
/// `theory` must be a live handle; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn wf_theory_find_model(
    theory: *const WfTheory,
    out_found: *mut bool,
    out_truth: *mut u64,
) -> WfStatus {
    guard(|| {
        let t = &get(theory)?.0;
        let (found, truth) = (out(out_found)?, out(out_truth)?);
        let model = find_model(t);
        *found = model.is_some();
        *truth = model.map_or(0, |m| m.truth());
        Ok(())
    })
}

/// Derivation of `antecedent ▷ succedent` as JSON, or null in
/// `*out_json` when the sequent is not derivable.
///
/// # Safety
/// `theory` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wf_theory_derivation_json(
    theory: *const WfTheory,
    antecedent: u64,
    succedent: u64,
    out_json: *mut *mut c_char,
) -> WfStatus {
    guard(|| {
        let t = &get(theory)?.0;
        let slot = out(out_json)?;
        *slot = ptr::null_mut();
        if let Some(d) = derivable(t, Sequent::new(antecedent, succedent))? {
            *slot = c_string(d.to_json(t).to_string());
        }
        Ok(())
    })
}

/// Membership of a Boolean expression over the theory's atoms in its
/// filter, or in its ideal when `ideal` is set.
///
/// # Safety
/// `theory` must be a live handle; `expr` a NUL-terminated string;
/// `out_member` writable.
#[no_mangle]
pub unsafe extern "C" fn wf_expr_in_theory_filter(
    theory: *const WfTheory,
    expr: *const c_char,
    ideal: bool,
    out_member: *mut bool,
) -> WfStatus {
    guard(|| {
        let t = &get(theory)?.0;
        let e = parse_expr(text(expr)?, t.atoms())?;
        let polarity = if ideal {
            Polarity::Ideal
        } else {
            Polarity::Filter
        };
        let spec = FilterSpec::from_theory(t, polarity)?;
        *out(out_member)? = in_filter(&spec, &e)?;
        Ok(())
    })
}

/// Parses a predicate listing, one sequence per line, on the universe of
/// sequences over `alphabet` letters of length at most `depth`.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out_pred` writable.
#[no_mangle]
pub unsafe extern "C" fn wf_pred_from_lines(
    source: *const c_char,
    alphabet: usize,
    depth: usize,
    out_pred: *mut *mut WfPred,
) -> WfStatus {
    guard(|| {
        let slot = out(out_pred)?;
        *slot = ptr::null_mut();
        let un = Universe::new(Alphabet::new(alphabet)?, depth)?;
        let p = parse_pred(text(source)?, un)?;
        *slot = Box::into_raw(Box::new(WfPred(p)));
        Ok(())
    })
}

/// # Safety
/// `pred` must come from [`wf_pred_from_lines`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wf_pred_free(pred: *mut WfPred) {
    if !pred.is_null() {
        drop(Box::from_raw(pred));
    }
}

/// Every foundedness property of the predicate as a JSON array of
/// `{property, holds, witness}` objects.
///
/// # Safety
/// `pred` must be a live handle; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn wf_pred_classify_json(
    pred: *const WfPred,
    closed_boundary: bool,
    out_json: *mut *mut c_char,
) -> WfStatus {
    guard(|| {
        let p = &get(pred)?.0;
        let slot = out(out_json)?;
        let boundary = if closed_boundary {
            Boundary::Closed
        } else {
            Boundary::Open
        };
        let reports: Vec<_> = classify(p, boundary)
            .into_iter()
            .map(|r| json!({ "property": r.property.name(), "holds": r.holds, "witness": r.witness }))
            .collect();
        *slot = c_string(serde_json::Value::Array(reports).to_string());
        Ok(())
    })
}

/// Runs a check suite (or `all`) with default sampling and reports the
/// instance and failure counts.
///
/// # Safety
/// `suite` must be a NUL-terminated string; both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn wf_check_suite(
    suite: *const c_char,
    alphabet: usize,
    depth: usize,
    closed_boundary: bool,
    out_instances: *mut usize,
    out_failures: *mut usize,
) -> WfStatus {
    guard(|| {
        let name = text(suite)?;
        let (instances, failures) = (out(out_instances)?, out(out_failures)?);
        let config = Config {
            alphabet,
            depth,
            boundary: if closed_boundary {
                Boundary::Closed
            } else {
                Boundary::Open
            },
            ..Config::default()
        };
        let records = harness::run_named(name, &config)?;
        *instances = records.len();
        *failures = records.iter().filter(|r| !r.holds).count();
        Ok(())
    })
}
