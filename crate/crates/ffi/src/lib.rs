//! C interface to fhier.
//!
//! Values cross the boundary as opaque handles created by `*_parse` or
//! `*_build` functions and released with the matching `*_free`. Every call
//! returns an [`FhierStatus`]; results come back through out-pointers.
//! Strings handed out by the library are freed with [`fhier_string_free`].
//! After a failure, [`fhier_last_error`] describes it until the next call
//! on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fhier::forest::{canonical, leq_h, DegreeInvariant, Forest};
use fhier::muller::{Acceptor, UpWord};
use fhier::ordinal::CnfOrdinal;
use fhier::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FhierStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    ResourceLimit = 5,
    Unsupported = 6,
    Panic = 7,
}

/// A labeled forest.
pub struct FhierForest(Forest);

/// A Muller acceptor.
pub struct FhierAcceptor(Acceptor);

/// An ordinal below epsilon_0.
pub struct FhierOrdinal(CnfOrdinal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> FhierStatus {
    match e {
        Error::Parse(_) => FhierStatus::Parse,
        Error::ResourceLimit(_) => FhierStatus::ResourceLimit,
        Error::Unsupported(_) => FhierStatus::Unsupported,
        _ => FhierStatus::Invalid,
    }
}

enum Fail {
    Status(FhierStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> FhierStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FhierStatus::Ok,
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            FhierStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(FhierStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(FhierStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail::Status(FhierStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(FhierStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Status(FhierStatus::Invalid, "nul in output".into()))?;
    put(out, c.into_raw())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next call.
#[no_mangle]
pub extern "C" fn fhier_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fhier_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a forest in the text grammar.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_forest_parse(src: *const c_char, out: *mut *mut FhierForest) -> FhierStatus {
    guard(|| {
        let f: Forest = text(src)?.parse()?;
        put(out, boxed(FhierForest(f)))
    })
}

/// # Safety
/// `f` comes from this library and is not used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn fhier_forest_free(f: *mut FhierForest) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Text form of a forest.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_forest_to_string(f: *const FhierForest, out: *mut *mut c_char) -> FhierStatus {
    guard(|| put_string(out, get(f)?.0.to_string()))
}

/// `*out = a ≤_h b`.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_forest_leq_h(
    a: *const FhierForest,
    b: *const FhierForest,
    out: *mut bool,
) -> FhierStatus {
    guard(|| {
        let r = leq_h(&get(a)?.0, &get(b)?.0)?;
        put(out, r)
    })
}

/// Canonical representative of the class of `f`, as a new handle.
///
/// # Safety
/// `f` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_forest_canonical(f: *const FhierForest, out: *mut *mut FhierForest) -> FhierStatus {
    guard(|| {
        let c = canonical(&get(f)?.0);
        put(out, boxed(FhierForest(c)))
    })
}

/// Parses an acceptor file.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_acceptor_parse(src: *const c_char, out: *mut *mut FhierAcceptor) -> FhierStatus {
    guard(|| {
        let a: Acceptor = text(src)?.parse()?;
        put(out, boxed(FhierAcceptor(a)))
    })
}

/// # Safety
/// `a` comes from this library and is not used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn fhier_acceptor_free(a: *mut FhierAcceptor) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Acceptor in the file format.
///
/// # Safety
/// `a` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_acceptor_to_string(a: *const FhierAcceptor, out: *mut *mut c_char) -> FhierStatus {
    guard(|| put_string(out, get(a)?.0.to_string()))
}

/// Canonical acceptor over `k` colors for an invariant (a level-1 forest,
/// or a level-0 forest which is lifted first).
///
/// # Safety
/// `t` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_acceptor_build(
    t: *const FhierForest,
    k: usize,
    out: *mut *mut FhierAcceptor,
) -> FhierStatus {
    guard(|| {
        let inv = DegreeInvariant::from_any(get(t)?.0.clone())?;
        put(out, boxed(FhierAcceptor(fhier::builder::build_rho(&inv, k)?)))
    })
}

/// Color of `u·v^ω`, with the word written `u,v`.
///
/// # Safety
/// `a` is live; `word` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_acceptor_eval(
    a: *const FhierAcceptor,
    word: *const c_char,
    out: *mut u32,
) -> FhierStatus {
    guard(|| {
        let w: UpWord = text(word)?.parse()?;
        put(out, get(a)?.0.evaluate(&w)?)
    })
}

/// `*out = a ≤_CA b`, decided by the reduction game.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_acceptor_leq(
    a: *const FhierAcceptor,
    b: *const FhierAcceptor,
    out: *mut bool,
) -> FhierStatus {
    guard(|| {
        let r = fhier::games::leq_ca(&get(a)?.0, &get(b)?.0)?;
        put(out, r)
    })
}

/// Degree invariant of `a` as a new forest handle.
///
/// # Safety
/// `a` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_acceptor_degree(a: *const FhierAcceptor, out: *mut *mut FhierForest) -> FhierStatus {
    guard(|| {
        let d = fhier::classifier::degree(&get(a)?.0)?;
        put(out, boxed(FhierForest(d.into_forest())))
    })
}

/// Parses an ordinal such as `w^{1}*2 + 3`.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_ordinal_parse(src: *const c_char, out: *mut *mut FhierOrdinal) -> FhierStatus {
    guard(|| {
        let o: CnfOrdinal = text(src)?.parse()?;
        put(out, boxed(FhierOrdinal(o)))
    })
}

/// # Safety
/// `o` comes from this library and is not used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn fhier_ordinal_free(o: *mut FhierOrdinal) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// # Safety
/// `o` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_ordinal_to_string(o: *const FhierOrdinal, out: *mut *mut c_char) -> FhierStatus {
    guard(|| put_string(out, get(o)?.0.to_string()))
}

/// `*out` is -1, 0 or 1 as `a` is below, equal to or above `b`.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_ordinal_cmp(
    a: *const FhierOrdinal,
    b: *const FhierOrdinal,
    out: *mut i32,
) -> FhierStatus {
    guard(|| put(out, get(a)?.0.cmp(&get(b)?.0) as i32))
}

/// `*out = a + b` as a new handle.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_ordinal_add(
    a: *const FhierOrdinal,
    b: *const FhierOrdinal,
    out: *mut *mut FhierOrdinal,
) -> FhierStatus {
    guard(|| {
        let r = get(a)?.0.add(&get(b)?.0);
        put(out, boxed(FhierOrdinal(r)))
    })
}

/// `*out = a · b` as a new handle.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn fhier_ordinal_mul(
    a: *const FhierOrdinal,
    b: *const FhierOrdinal,
    out: *mut *mut FhierOrdinal,
) -> FhierStatus {
    guard(|| {
        let r = get(a)?.0.mul(&get(b)?.0);
        put(out, boxed(FhierOrdinal(r)))
    })
}
