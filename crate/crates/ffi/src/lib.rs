//! C interface to the `steenrod` library.
//!
//! Group elements cross the boundary as opaque `StElement` handles built
//! from (and printed to) the JSON wire form. Every fallible call returns an
//! `StStatus`; on failure `st_last_error()` describes what went wrong.
//! Strings returned through out-parameters are owned by the caller and
//! released with `st_string_free`, handles with `st_element_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use steenrod::milnor::{in_dual_span, in_j_basis, DualSymbol, Seq, SeqB};
use steenrod::verify::{self, VerifyConfig};
use steenrod::wire::{group_element_to_json, parse_group_element};
use steenrod::{Error, Filtration, GroupElement};

/// Return codes. Zero is success; everything else is an error.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// A precondition of the operation failed (mismatched elements, wrong
    /// prime or flavor, …).
    Invalid = 4,
    LimitExceeded = 5,
    Panic = 6,
}

/// `method` values for `st_invert`.
pub const ST_INVERT_RECURSIVE: i32 = 0;
pub const ST_INVERT_CLOSED: i32 = 1;
pub const ST_INVERT_SPLIT: i32 = 2;

/// `st_filtration` reports stages in half steps; these mark the ends.
pub const ST_FILTRATION_BOTTOM: i32 = -1;
pub const ST_FILTRATION_TOP: i32 = -2;

/// An element of a truncated Steenrod group.
pub struct StElement {
    inner: GroupElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> StStatus {
    match e {
        Error::Parse(_) | Error::ExponentLength { .. } | Error::UnknownPreset(_) => StStatus::Parse,
        Error::LimitExceeded { .. } => StStatus::LimitExceeded,
        _ => StStatus::Invalid,
    }
}

fn fail(status: StStatus, msg: impl Into<String>) -> StStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning library errors and panics into status codes.
fn guard<F>(f: F) -> StStatus
where
    F: FnOnce() -> Result<(), (StStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StStatus::Ok,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(StStatus::Panic, "panic inside the library"),
    }
}

fn lib_err(e: Error) -> (StStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (StStatus, String)> {
    if s.is_null() {
        return Err((StStatus::NullPointer, "string argument is null".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (StStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_elem<'a>(h: *const StElement) -> Result<&'a GroupElement, (StStatus, String)> {
    h.as_ref()
        .map(|e| &e.inner)
        .ok_or((StStatus::NullPointer, "element handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (StStatus, String)> {
    if out.is_null() {
        return Err((StStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle(out: *mut *mut StElement, g: GroupElement) -> Result<(), (StStatus, String)> {
    write_out(out, Box::into_raw(Box::new(StElement { inner: g })))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (StStatus, String)> {
    let c = CString::new(s).map_err(|e| (StStatus::Invalid, e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn read_u32s<'a>(data: *const u32, len: usize) -> Result<&'a [u32], (StStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err((StStatus::NullPointer, "array argument is null".into()));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn st_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn st_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn st_element_free(h: *mut StElement) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses one group element from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_element_from_json(json: *const c_char, out: *mut *mut StElement) -> StStatus {
    guard(|| {
        let text = read_str(json)?;
        let g = parse_group_element(text).map_err(lib_err)?;
        write_handle(out, g)
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_element_to_json(h: *const StElement, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let g = read_elem(h)?;
        let text = serde_json::to_string(&group_element_to_json(g)).map_err(|e| (StStatus::Invalid, e.to_string()))?;
        write_string(out, text)
    })
}

/// Human-readable series form, e.g. `X + (zeta1)*X^2 [base, k=1]`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_element_display(h: *const StElement, out: *mut *mut c_char) -> StStatus {
    guard(|| write_string(out, read_elem(h)?.to_string()))
}

/// `a·b = b(a(X))`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_compose(a: *const StElement, b: *const StElement, out: *mut *mut StElement) -> StStatus {
    guard(|| {
        let g = read_elem(a)?.compose(read_elem(b)?).map_err(lib_err)?;
        write_handle(out, g)
    })
}

/// `method` is one of the `ST_INVERT_*` constants.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_invert(a: *const StElement, method: i32, out: *mut *mut StElement) -> StStatus {
    guard(|| {
        let a = read_elem(a)?;
        let g = match method {
            ST_INVERT_RECURSIVE => a.invert_recursive(),
            ST_INVERT_CLOSED => a.invert_closed(),
            ST_INVERT_SPLIT => a.invert_split().map_err(lib_err)?,
            other => return Err((StStatus::Invalid, format!("unknown inversion method {other}"))),
        };
        write_handle(out, g)
    })
}

/// `(a⁻¹b⁻¹)(ab)`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_commutator(a: *const StElement, b: *const StElement, out: *mut *mut StElement) -> StStatus {
    guard(|| {
        let g = read_elem(a)?.commutator(read_elem(b)?).map_err(lib_err)?;
        write_handle(out, g)
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_rho(a: *const StElement, out: *mut *mut StElement) -> StStatus {
    guard(|| write_handle(out, read_elem(a)?.rho()))
}

/// Filtration stage in half steps (stage 1.5 is 3), or one of
/// `ST_FILTRATION_BOTTOM` / `ST_FILTRATION_TOP`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_filtration(a: *const StElement, out: *mut i32) -> StStatus {
    guard(|| {
        let v = match read_elem(a)?.filtration_level() {
            Filtration::Bottom => ST_FILTRATION_BOTTOM,
            Filtration::Top => ST_FILTRATION_TOP,
            Filtration::Stage(h) => h as i32,
        };
        write_out(out, v)
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_element_equal(a: *const StElement, b: *const StElement, out: *mut bool) -> StStatus {
    guard(|| write_out(out, read_elem(a)? == read_elem(b)?))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_is_identity(a: *const StElement, out: *mut bool) -> StStatus {
    guard(|| write_out(out, read_elem(a)?.is_identity()))
}

/// Membership of the index `(E, R)` in the monomial basis of `J<k>`
/// (`span == false`) or of its dual in the spanning set of `(A/J<k>)*`
/// (`span == true`). `e` holds `e_0, e_1, …`, `r` holds `r_1, r_2, …`.
///
/// # Safety
/// `e` and `r` must point to `e_len` and `r_len` readable values (or be
/// null with length 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_milnor_query(
    p: u32,
    k: u32,
    e: *const u32,
    e_len: usize,
    r: *const u32,
    r_len: usize,
    span: bool,
    out: *mut bool,
) -> StStatus {
    guard(|| {
        if !steenrod::algebra::is_prime(p) {
            return Err(lib_err(Error::NotPrime(p)));
        }
        let e = SeqB::new(read_u32s(e, e_len)?).map_err(lib_err)?;
        let r = Seq::new(read_u32s(r, r_len)?);
        if p == 2 && !e.is_empty() {
            return Err((StStatus::Invalid, "E must be empty for p = 2".into()));
        }
        let answer = if span {
            in_dual_span(&DualSymbol::dual_of(p, &e, &r), k)
        } else {
            in_j_basis(&e, &r, k, p)
        };
        write_out(out, answer)
    })
}

/// Runs every property suite and writes the JSON report. `ok` is set to
/// whether all suites passed.
///
/// # Safety
/// `report` and `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_verify(
    p: u32,
    k: usize,
    seed: u64,
    samples: usize,
    report: *mut *mut c_char,
    ok: *mut bool,
) -> StStatus {
    guard(|| {
        let cfg = VerifyConfig::new(p, k, seed, samples);
        let r = verify::run(&cfg, &[]).map_err(lib_err)?;
        let text = serde_json::to_string_pretty(&r).map_err(|e| (StStatus::Invalid, e.to_string()))?;
        write_out(ok, r.ok)?;
        write_string(report, text)
    })
}
