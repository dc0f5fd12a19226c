//! C ABI over `austere-core`.
//!
//! Every function returns an [`AustereStatus`]; on failure a message is
//! kept per thread and can be fetched with [`austere_last_error`]. Handles
//! are opaque and owned by the caller, who releases them with the matching
//! `_free` function. Strings returned by the library are released with
//! [`austere_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use austere_core::austere::{is_austere, BasePoint, MultiplicityMap};
use austere_core::catalog::{eval_formula, parse_bindings, parse_formula, Value};
use austere_core::classify::{imaginary_roots, real_roots};
use austere_core::involutions::{induced_involution, standard_diagram, LatticeInvolution, SatakeDiagram, SatakeLabel};
use austere_core::rational::{ratio, Rational};
use austere_core::rootcore::{Root, RootSystem};
use austere_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AustereStatus {
    Ok = 0,
    /// Malformed or inadmissible input.
    InputError = 1,
    /// An internal consistency check failed.
    StructuralError = 2,
    /// Shipped data is inconsistent.
    DataError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// Index out of range or buffer too small.
    OutOfRange = 6,
    Panic = 7,
}

/// A root system such as `E6` or `A1+B2`.
pub struct AustereRootSystem {
    rs: RootSystem,
}

/// A Satake diagram with its lattice involution.
pub struct AustereDiagram {
    diagram: SatakeDiagram,
    involution: LatticeInvolution,
}

/// A list of roots, each of the same length.
pub struct AustereRootList {
    rank: usize,
    roots: Vec<Root>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AustereStatus {
    if e.is_input_error() {
        AustereStatus::InputError
    } else if matches!(e, Error::Data(_)) {
        AustereStatus::DataError
    } else {
        AustereStatus::StructuralError
    }
}

fn guard(f: impl FnOnce() -> Result<(), (AustereStatus, String)>) -> AustereStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AustereStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AustereStatus::Panic
        }
    }
}

type FfiResult<T> = Result<T, (AustereStatus, String)>;

fn core<T>(r: austere_core::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (AustereStatus, String) {
    (AustereStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (AustereStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

/// The message of the last failed call on this thread, or null. Valid
/// until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn austere_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn austere_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn austere_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the root system named by `descriptor`, e.g. `"B3"` or `"A1+G2"`.
///
/// # Safety
/// `descriptor` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn austere_root_system_new(
    descriptor: *const c_char,
    out: *mut *mut AustereRootSystem,
) -> AustereStatus {
    guard(|| {
        let s = read_str(descriptor, "descriptor")?;
        let rs = core(RootSystem::from_str_descriptor(s))?;
        write_out(out, Box::into_raw(Box::new(AustereRootSystem { rs })), "out")
    })
}

/// # Safety
/// `rs` must come from [`austere_root_system_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn austere_root_system_free(rs: *mut AustereRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Rank of the system, 0 for null.
///
/// # Safety
/// `rs` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn austere_root_system_rank(rs: *const AustereRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.rs.rank())
}

/// Number of roots, 0 for null.
///
/// # Safety
/// `rs` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn austere_root_system_root_count(rs: *const AustereRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.rs.roots().len())
}

/// Standard Satake diagram of type `label` (e.g. `"EIII"`, `"B+B"`) at rank
/// `r` and split rank `l`, with its involution already validated.
///
/// # Safety
/// `label` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn austere_diagram_new(
    label: *const c_char,
    r: usize,
    l: usize,
    out: *mut *mut AustereDiagram,
) -> AustereStatus {
    guard(|| {
        let label: SatakeLabel = core(read_str(label, "label")?.parse())?;
        let diagram = core(standard_diagram(label, r, l))?;
        let involution = core(induced_involution(&diagram))?;
        write_out(
            out,
            Box::into_raw(Box::new(AustereDiagram { diagram, involution })),
            "out",
        )
    })
}

/// # Safety
/// `d` must come from [`austere_diagram_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn austere_diagram_free(d: *mut AustereDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// The diagram as JSON; release with [`austere_string_free`].
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn austere_diagram_json(d: *const AustereDiagram, out: *mut *mut c_char) -> AustereStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("diagram"))?;
        let s = serde_json::to_string(&d.diagram.to_json()).expect("serializable");
        write_out(out, into_c_string(s), "out")
    })
}

/// Roots fixed by the diagram involution (the real roots).
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn austere_real_roots(d: *const AustereDiagram, out: *mut *mut AustereRootList) -> AustereStatus {
    roots_of(d, out, true)
}

/// Roots negated by the diagram involution (the imaginary roots).
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn austere_imaginary_roots(
    d: *const AustereDiagram,
    out: *mut *mut AustereRootList,
) -> AustereStatus {
    roots_of(d, out, false)
}

unsafe fn roots_of(d: *const AustereDiagram, out: *mut *mut AustereRootList, real: bool) -> AustereStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("diagram"))?;
        let rs = d.diagram.rs();
        let set = if real {
            core(real_roots(rs, &d.involution))?
        } else {
            core(imaginary_roots(rs, &d.involution))?
        };
        let list = AustereRootList {
            rank: rs.rank(),
            roots: set.ordered(),
        };
        write_out(out, Box::into_raw(Box::new(list)), "out")
    })
}

/// # Safety
/// `list` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn austere_root_list_len(list: *const AustereRootList) -> usize {
    list.as_ref().map_or(0, |l| l.roots.len())
}

/// Coefficients per root, 0 for null.
///
/// # Safety
/// `list` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn austere_root_list_rank(list: *const AustereRootList) -> usize {
    list.as_ref().map_or(0, |l| l.rank)
}

/// Copies root `index` into `buf`, which holds `buf_len` integers.
///
/// # Safety
/// `list` must be a live handle; `buf` must hold `buf_len` integers.
#[no_mangle]
pub unsafe extern "C" fn austere_root_list_get(
    list: *const AustereRootList,
    index: usize,
    buf: *mut i64,
    buf_len: usize,
) -> AustereStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let root = l.roots.get(index).ok_or_else(|| {
            (
                AustereStatus::OutOfRange,
                format!("index {index} out of range for {} roots", l.roots.len()),
            )
        })?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if buf_len < l.rank {
            return Err((
                AustereStatus::OutOfRange,
                format!("buffer holds {buf_len} integers, {} needed", l.rank),
            ));
        }
        ptr::copy_nonoverlapping(root.coeffs().as_ptr(), buf, l.rank);
        Ok(())
    })
}

/// # Safety
/// `list` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn austere_root_list_free(list: *mut AustereRootList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Austere test at `X = num[i]/den[i]` in simple-root coordinates, with
/// unit multiplicities. `den` may be null for integer coordinates.
///
/// # Safety
/// `rs` must be a live handle; `num` (and `den` unless null) must hold
/// `len` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn austere_is_austere(
    rs: *const AustereRootSystem,
    num: *const i64,
    den: *const i64,
    len: usize,
    out: *mut bool,
) -> AustereStatus {
    guard(|| {
        let h = rs.as_ref().ok_or_else(|| null("root system"))?;
        if num.is_null() {
            return Err(null("num"));
        }
        let nums = std::slice::from_raw_parts(num, len);
        let dens: Vec<i64> = if den.is_null() {
            vec![1; len]
        } else {
            std::slice::from_raw_parts(den, len).to_vec()
        };
        if dens.contains(&0) {
            return Err((AustereStatus::InputError, "zero denominator".into()));
        }
        let coords: Vec<Rational> = nums.iter().zip(&dens).map(|(&n, &d)| ratio(n, d)).collect();
        let x = core(BasePoint::new(&h.rs, coords))?;
        let verdict = is_austere(&h.rs, &x, &MultiplicityMap::unit()).verdict;
        write_out(out, verdict, "out")
    })
}

/// Evaluates a catalog formula such as `"min(i+j, m+n-(i+j))"` under
/// bindings like `"n=5,m=3,i=1,j=2"`. Conditions give 1 or 0 and set
/// `is_bool`.
///
/// # Safety
/// `src` and `params` must be nul-terminated (`params` may be null);
/// `out` and `is_bool` must be writable.
#[no_mangle]
pub unsafe extern "C" fn austere_formula_eval(
    src: *const c_char,
    params: *const c_char,
    out: *mut i64,
    is_bool: *mut bool,
) -> AustereStatus {
    guard(|| {
        let f = core(parse_formula(read_str(src, "src")?))?;
        let b = if params.is_null() {
            Default::default()
        } else {
            core(parse_bindings(read_str(params, "params")?))?
        };
        let (v, flag) = match core(eval_formula(&f, &b))? {
            Value::Int(n) => (n, false),
            Value::Bool(t) => (i64::from(t), true),
        };
        write_out(out, v, "out")?;
        if !is_bool.is_null() {
            is_bool.write(flag);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Data("x".into())), AustereStatus::DataError);
        assert_eq!(status_of(&Error::Input("x".into())), AustereStatus::InputError);
        assert_eq!(status_of(&Error::Structural("x".into())), AustereStatus::StructuralError);
    }

    #[test]
    fn version_is_terminated() {
        let v = unsafe { CStr::from_ptr(austere_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
