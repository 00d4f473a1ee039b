//! C ABI over the matpoly library.
//!
//! Conventions: every function returns a `matpoly_status`; results come
//! back through out-parameters. Heap objects cross the boundary as opaque
//! handles freed by their dedicated `_free` function, strings as
//! NUL-terminated UTF-8 freed by `matpoly_string_free`. On any non-OK
//! status, `matpoly_last_error` returns a message for the current thread;
//! the pointer stays valid until the next failing call on that thread.
//! Panics never unwind across the boundary: they are caught and reported
//! as `MATPOLY_ERR_PANIC`.

#![allow(non_camel_case_types)]

use matpoly::error::Error;
use matpoly::invariants::{coboundary, mobius_poly, tutte, PolyDocument};
use matpoly::matrix::Matrix;
use matpoly::matroid::Matroid;
use matpoly::reconstruct::{reconstruct_linear, reconstruct_zeta, Outcome};
use matpoly::verify::verify_matroid;
use matpoly::zeta::zeta_from_chi;
use serde_json::json;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum matpoly_status {
    MATPOLY_OK = 0,
    MATPOLY_ERR_IO = 1,
    MATPOLY_ERR_PARSE = 2,
    MATPOLY_ERR_INVALID = 3,
    MATPOLY_ERR_NOT_SIMPLE = 4,
    MATPOLY_ERR_SIZE_GUARD = 5,
    MATPOLY_ERR_INTEGRITY = 6,
    MATPOLY_ERR_NULL_ARGUMENT = 7,
    MATPOLY_ERR_PANIC = 8,
}

use matpoly_status::*;

/// Opaque matroid handle.
pub struct matpoly_matroid {
    inner: Matroid,
}

/// Parameter profile of a matroid. `d` and `dstar` are -1 when undefined
/// (rank 0 and full rank respectively).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct matpoly_params {
    pub n: u64,
    pub k: u64,
    pub d: i64,
    pub dstar: i64,
    pub simple: bool,
    pub cosimple: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NULs removed");
    });
}

fn status_of(e: &Error) -> matpoly_status {
    match e {
        Error::Io(_) => MATPOLY_ERR_IO,
        Error::Parse(_) => MATPOLY_ERR_PARSE,
        Error::Invalid(_) => MATPOLY_ERR_INVALID,
        Error::NotSimple(_) => MATPOLY_ERR_NOT_SIMPLE,
        Error::SizeGuard(_) => MATPOLY_ERR_SIZE_GUARD,
        Error::Integrity(_) => MATPOLY_ERR_INTEGRITY,
    }
}

/// Runs a fallible body, translating errors and panics into status codes.
fn boundary(f: impl FnOnce() -> Result<(), Error>) -> matpoly_status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MATPOLY_OK,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            set_error(&format!("internal panic: {msg}"));
            MATPOLY_ERR_PANIC
        }
    }
}

fn null_argument(name: &str) -> matpoly_status {
    set_error(&format!("{name} must not be NULL"));
    MATPOLY_ERR_NULL_ARGUMENT
}

/// # Safety
/// `ptr` must be a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, Error> {
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Error::Parse(format!("{name} is not valid UTF-8")))
}

fn give_string(out: *mut *mut c_char, text: String) -> Result<(), Error> {
    let c = CString::new(text.replace('\0', " ")).expect("NULs removed");
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn give_matroid(out: *mut *mut matpoly_matroid, m: Matroid) {
    let handle = Box::new(matpoly_matroid { inner: m });
    unsafe { *out = Box::into_raw(handle) };
}

/// Message for the most recent failure on this thread; empty string when
/// no failure has occurred. Valid until the next failing call here.
#[no_mangle]
pub extern "C" fn matpoly_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a matroid from a matrix file (`q k n` header) or explicit rank
/// table (`ranks n` header).
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn matpoly_matroid_from_file(
    path: *const c_char,
    out: *mut *mut matpoly_matroid,
) -> matpoly_status {
    if path.is_null() {
        return null_argument("path");
    }
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        let path = read_str(path, "path")?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{path}: {e}"))))?;
        give_matroid(out, Matroid::parse_any(&text)?);
        Ok(())
    })
}

/// Builds the column matroid of a row-major `rows x cols` matrix over the
/// prime field F_q.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn matpoly_matroid_from_matrix(
    q: u64,
    rows: usize,
    cols: usize,
    entries: *const u64,
    out: *mut *mut matpoly_matroid,
) -> matpoly_status {
    if entries.is_null() {
        return null_argument("entries");
    }
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::Invalid("rows * cols overflows".into()))?;
        let entries = std::slice::from_raw_parts(entries, len).to_vec();
        give_matroid(out, Matroid::from_matrix(Matrix::new(q, rows, cols, entries)?)?);
        Ok(())
    })
}

/// Builds the uniform matroid U(k, n).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn matpoly_matroid_uniform(
    k: usize,
    n: usize,
    out: *mut *mut matpoly_matroid,
) -> matpoly_status {
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        give_matroid(out, Matroid::uniform(k, n)?);
        Ok(())
    })
}

/// Builds the dual of an existing matroid. The input handle stays owned by
/// the caller.
///
/// # Safety
/// `m` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn matpoly_matroid_dual(
    m: *const matpoly_matroid,
    out: *mut *mut matpoly_matroid,
) -> matpoly_status {
    if m.is_null() {
        return null_argument("m");
    }
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        give_matroid(out, (*m).inner.dual());
        Ok(())
    })
}

/// Releases a matroid handle. NULL is ignored.
///
/// # Safety
/// `m` must be NULL or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn matpoly_matroid_free(m: *mut matpoly_matroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn matpoly_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Reads the (n, k, d, d*) profile and simplicity flags.
///
/// # Safety
/// `m` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn matpoly_matroid_params(
    m: *const matpoly_matroid,
    out: *mut matpoly_params,
) -> matpoly_status {
    if m.is_null() {
        return null_argument("m");
    }
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        let p = (*m).inner.params();
        *out = matpoly_params {
            n: p.n as u64,
            k: p.k as u64,
            d: p.d.map_or(-1, |d| d as i64),
            dstar: p.dstar.map_or(-1, |d| d as i64),
            simple: p.simple,
            cosimple: p.cosimple,
        };
        Ok(())
    })
}

/// Computes chi, mu, the Tutte polynomial, and (when 0 < k < n and the
/// parameters admit one) the zeta polynomial, as one JSON document:
/// `{"n", "k", "params", "chi", "mu", "tutte", "zeta"}`. Coefficients are
/// exact decimal strings. The matroid must be simple.
///
/// # Safety
/// `m` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn matpoly_invariants_json(
    m: *const matpoly_matroid,
    out: *mut *mut c_char,
) -> matpoly_status {
    if m.is_null() {
        return null_argument("m");
    }
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        let m = &(*m).inner;
        let params = m.params();
        let chi = coboundary(m)?;
        let mu = mobius_poly(m)?;
        let t = tutte(m)?;
        let zeta = match (params.d, params.dstar) {
            (Some(d), Some(dstar)) if d >= 2 && dstar >= 2 => {
                let z = zeta_from_chi(&chi, d, dstar)?;
                json!({ "r": z.r(), "d": z.d, "coeffs": z.coeff_parts() })
            }
            _ => serde_json::Value::Null,
        };
        let doc = json!({
            "n": params.n,
            "k": params.k,
            "params": params,
            "chi": chi.coeff_strings(),
            "mu": mu.coeff_strings(),
            "tutte": t.coeff_strings(),
            "zeta": zeta,
        });
        give_string(out, format!("{doc:#}"))
    })
}

/// Runs the full identity suite. `out` receives the JSON report;
/// `all_pass` (optional) is set to whether every check passed.
///
/// # Safety
/// `m` must be a live handle; `out` must be a valid pointer; `all_pass`
/// may be NULL.
#[no_mangle]
pub unsafe extern "C" fn matpoly_verify_json(
    m: *const matpoly_matroid,
    out: *mut *mut c_char,
    all_pass: *mut bool,
) -> matpoly_status {
    if m.is_null() {
        return null_argument("m");
    }
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        let report = verify_matroid(&(*m).inner);
        if !all_pass.is_null() {
            *all_pass = report.pass();
        }
        give_string(out, format!("{:#}", report.to_json()))
    })
}

/// Recovers the coboundary polynomial from a pair of Mobius polynomial
/// JSON documents (`{"n", "k", "mu": [[..]]}`). `method` is "linear",
/// "zeta", or "both"; with "both" the two answers are cross-checked. The
/// result JSON carries the reports, agreement flag, and chi when unique.
///
/// # Safety
/// The three input strings must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn matpoly_reconstruct_json(
    mu_json: *const c_char,
    mu_dual_json: *const c_char,
    method: *const c_char,
    out: *mut *mut c_char,
) -> matpoly_status {
    if mu_json.is_null() {
        return null_argument("mu_json");
    }
    if mu_dual_json.is_null() {
        return null_argument("mu_dual_json");
    }
    if method.is_null() {
        return null_argument("method");
    }
    if out.is_null() {
        return null_argument("out");
    }
    boundary(|| {
        let mu = PolyDocument::from_json(read_str(mu_json, "mu_json")?)?.mu()?;
        let mu_dual =
            PolyDocument::from_json(read_str(mu_dual_json, "mu_dual_json")?)?.mu()?;
        let method = read_str(method, "method")?;

        let mut reports = Vec::new();
        if method == "linear" || method == "both" {
            reports.push(reconstruct_linear(&mu, &mu_dual)?);
        }
        if method == "zeta" || method == "both" {
            reports.push(reconstruct_zeta(&mu, &mu_dual)?);
        }
        if reports.is_empty() {
            return Err(Error::Invalid(format!(
                "method must be \"linear\", \"zeta\", or \"both\", got {method:?}"
            )));
        }

        let chis: Vec<_> = reports
            .iter()
            .filter_map(|r| match &r.outcome {
                Outcome::Unique { chi } => Some(chi),
                Outcome::Underdetermined { .. } => None,
            })
            .collect();
        if chis.len() == 2 && chis[0] != chis[1] {
            return Err(Error::Integrity(
                "the linear and zeta reconstructions disagree".into(),
            ));
        }
        let agree = reports.len() < 2
            || (matches!(reports[0].outcome, Outcome::Unique { .. })
                == matches!(reports[1].outcome, Outcome::Unique { .. }));

        let chi_doc = chis.first().map(|chi| {
            json!({ "n": chi.n, "k": chi.k, "chi": chi.coeff_strings() })
        });
        let doc = json!({
            "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "methods_agree": agree,
            "chi": chi_doc,
        });
        give_string(out, format!("{doc:#}"))
    })
}
