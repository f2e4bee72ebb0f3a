//! C interface to `jacobi-core`.
//!
//! Every object crosses the boundary as an opaque pointer that must be
//! released with its matching `*_free` function. Functions return a
//! [`JdStatus`]; on failure [`jd_last_error`] describes what went wrong on
//! the calling thread. Strings handed out by the library are released with
//! [`jd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jacobi_core::text::{parse, parse_frame, serialize};
use jacobi_core::weights::{eval_circle, eval_closed, CircleRep, WeightData};
use jacobi_core::{Error, Frame, LinComb, QuotientSpace};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JdStatus {
    Ok = 0,
    Domain = 1,
    Parse = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// A linear combination of diagrams over one frame.
pub struct JdCombination(LinComb);

/// A quotient space with its degree cap.
pub struct JdSpace(QuotientSpace);

/// Lie-algebra-like weight data.
pub struct JdWeights(WeightData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(JdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } => JdStatus::Parse,
            _ => JdStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(JdStatus::NullPointer, format!("null pointer: {what}"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> JdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JdStatus::Ok,
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
            JdStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(JdStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn c_string(s: String) -> Result<CString, Failure> {
    CString::new(s).map_err(|_| Failure(JdStatus::Domain, "output contains a NUL byte".into()))
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn jd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse a combination from its text form.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jd_parse(input: *const c_char, out: *mut *mut JdCombination) -> JdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let x = parse(text(input, "input")?)?;
        store(out, JdCombination(x));
        Ok(())
    })
}

/// Text form of a combination. Release the result with [`jd_string_free`].
///
/// # Safety
/// `x` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jd_serialize(x: *const JdCombination, out: *mut *mut c_char) -> JdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let x = borrow(x, "combination")?;
        *out = c_string(serialize(&x.0))?.into_raw();
        Ok(())
    })
}

/// Quotient space over a frame such as `empty`, `gamma2`, `I:x C:o` or
/// `marked: g=2`, refusing degrees above `cap`.
///
/// # Safety
/// `frame` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jd_space_new(frame: *const c_char, cap: usize, out: *mut *mut JdSpace) -> JdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = parse_frame(text(frame, "frame")?)?;
        store(out, JdSpace(QuotientSpace::new(f, cap)));
        Ok(())
    })
}

/// Dimension of the degree-`degree` part of the quotient.
///
/// # Safety
/// `space` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jd_dim(space: *const JdSpace, degree: usize, out: *mut usize) -> JdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = borrow(space, "space")?.0.dim(degree)?;
        Ok(())
    })
}

/// Canonical representative of `x` in the quotient.
///
/// # Safety
/// `space` and `x` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jd_normal_form(
    space: *const JdSpace,
    x: *const JdCombination,
    out: *mut *mut JdCombination,
) -> JdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = borrow(space, "space")?;
        let x = borrow(x, "combination")?;
        let nf = s.0.normal_form(&x.0)?;
        store(out, JdCombination(nf));
        Ok(())
    })
}

/// Weight data from a preset name (`so3`, `sp2-toy`, ...) or, failing that,
/// from the data file format.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jd_weights_new(spec: *const c_char, out: *mut *mut JdWeights) -> JdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = text(spec, "weights")?;
        let w = if WeightData::preset_names().contains(&s.trim()) {
            WeightData::preset(s.trim())?
        } else {
            WeightData::parse(s)?
        };
        store(out, JdWeights(w));
        Ok(())
    })
}

/// Value of the weight system on a closed combination, or on one whose
/// skeleton is all circles (each coloured by the adjoint). The value is
/// written as text; release it with [`jd_string_free`].
///
/// # Safety
/// `w` and `x` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jd_eval(w: *const JdWeights, x: *const JdCombination, out: *mut *mut c_char) -> JdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let w = &borrow(w, "weights")?.0;
        let x = &borrow(x, "combination")?.0;
        let v = match x.frame() {
            Frame::Skeleton(s) if s.is_empty() => eval_closed(x, w)?,
            Frame::Skeleton(s) if s.all_circles() => {
                let adj = CircleRep::adjoint(w)?;
                let reps = vec![adj; s.components().len()];
                eval_circle(x, w, &reps)?
            }
            f => {
                return Err(Failure(
                    JdStatus::Domain,
                    format!("cannot evaluate a combination over `{f}`"),
                ))
            }
        };
        *out = c_string(w.ring().display(&v).to_string())?.into_raw();
        Ok(())
    })
}

/// Release a string returned by the library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, released once.
#[no_mangle]
pub unsafe extern "C" fn jd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release a combination.
///
/// # Safety
/// `x` must be NULL or a handle from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn jd_combination_free(x: *mut JdCombination) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Release a quotient space.
///
/// # Safety
/// `s` must be NULL or a handle from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn jd_space_free(s: *mut JdSpace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Release weight data.
///
/// # Safety
/// `w` must be NULL or a handle from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn jd_weights_free(w: *mut JdWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}
