//! C ABI over the dotchain library.
//!
//! Point sets live behind the opaque `DcPointSet` handle. Every fallible
//! function returns a `DcStatus`; on failure `dc_last_error_message` gives
//! a description, valid on the calling thread until the next call into the
//! library. Strings handed out by the library must be released with
//! `dc_string_free`, handles with `dc_pointset_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dotchain::bounds::{evaluate_bound, BoundId, BoundParams, BoundSpec};
use dotchain::constructions::{
    generate_axes2d, generate_grid, generate_lenz3d, generate_prop3, generate_random_disk,
};
use dotchain::stats::max_flat_richness;
use dotchain::{
    count_chains, count_pairs_with_dot, format, ChainType, CountMode, Error, PointSet, Scalar,
};

/// Opaque point-set handle.
pub struct DcPointSet {
    inner: PointSet,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    DimensionMismatch = 3,
    OriginInput = 4,
    SameRadialLine = 5,
    ZeroAlpha = 6,
    CoincidentPoints = 7,
    DuplicatePoint = 8,
    MalformedScalar = 9,
    DivisionByZero = 10,
    InvalidParameter = 11,
    Unsupported = 12,
    Parse = 13,
    Io = 14,
    Panic = 15,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcCountMode {
    WithRepeats = 0,
    PairwiseDistinct = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DcStatus {
    match e {
        Error::DimensionMismatch { .. } => DcStatus::DimensionMismatch,
        Error::OriginInput => DcStatus::OriginInput,
        Error::SameRadialLine => DcStatus::SameRadialLine,
        Error::ZeroAlpha { .. } => DcStatus::ZeroAlpha,
        Error::CoincidentPoints => DcStatus::CoincidentPoints,
        Error::DuplicatePoint { .. } => DcStatus::DuplicatePoint,
        Error::MalformedScalar(_) => DcStatus::MalformedScalar,
        Error::DivisionByZero => DcStatus::DivisionByZero,
        Error::InvalidParameter(_) => DcStatus::InvalidParameter,
        Error::Unsupported(_) => DcStatus::Unsupported,
        Error::Parse(_) => DcStatus::Parse,
        Error::Io(_) => DcStatus::Io,
    }
}

struct Fail(DcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Fail>;

/// Runs `f`, records any error or panic, and returns the status.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> DcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            DcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(DcStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(DcStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn set_arg<'a>(p: *const DcPointSet) -> FfiResult<&'a PointSet> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Fail(DcStatus::NullPointer, "point set handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail(DcStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

unsafe fn emit_set(out: *mut *mut DcPointSet, set: PointSet) -> FfiResult<()> {
    write_out(out, Box::into_raw(Box::new(DcPointSet { inner: set })))
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn dc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a point-set handle. Null is ignored.
///
/// # Safety
/// `set` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dc_pointset_free(set: *mut DcPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Parses a point-set file document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_pointset_from_json(
    json: *const c_char,
    out: *mut *mut DcPointSet,
) -> DcStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        emit_set(out, format::from_json(text)?)
    })
}

/// Serializes a set as a point-set file document; free with `dc_string_free`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_pointset_to_json(
    set: *const DcPointSet,
    out: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let set = set_arg(set)?;
        write_out(out, into_c_string(format::to_json(set)))
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_pointset_len(set: *const DcPointSet) -> usize {
    set.as_ref().map_or(0, |h| h.inner.len())
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_pointset_dim(set: *const DcPointSet) -> usize {
    set.as_ref().map_or(0, |h| h.inner.dim())
}

/// Staircase construction with `alpha1` given as `"p"` or `"p/q"`.
///
/// # Safety
/// `alpha1` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_generate_prop3(
    n: usize,
    k: usize,
    alpha1: *const c_char,
    out: *mut *mut DcPointSet,
) -> DcStatus {
    guard(|| {
        let a: Scalar = str_arg(alpha1, "alpha1")?.parse()?;
        emit_set(out, generate_prop3(n, k, &a)?.set)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_generate_axes2d(
    n: usize,
    k: usize,
    out: *mut *mut DcPointSet,
) -> DcStatus {
    guard(|| emit_set(out, generate_axes2d(n, k)?.set))
}

/// Three-dimensional construction for the comma-separated targets `alphas`.
///
/// # Safety
/// `alphas` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_generate_lenz3d(
    n: usize,
    alphas: *const c_char,
    out: *mut *mut DcPointSet,
) -> DcStatus {
    guard(|| {
        let chain = ChainType::parse_list(str_arg(alphas, "alphas")?, false)?;
        emit_set(out, generate_lenz3d(n, &chain)?.set)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_generate_random_disk(
    n: usize,
    seed: u64,
    denom: u64,
    out: *mut *mut DcPointSet,
) -> DcStatus {
    guard(|| emit_set(out, generate_random_disk(n, seed, denom)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_generate_grid(side: usize, out: *mut *mut DcPointSet) -> DcStatus {
    guard(|| emit_set(out, generate_grid(side)?))
}

/// Counts chains of the comma-separated type `alphas`. The count is
/// written as a decimal string; free it with `dc_string_free`.
///
/// # Safety
/// `set` must be a live handle, `alphas` a nul-terminated string, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dc_count_chains(
    set: *const DcPointSet,
    alphas: *const c_char,
    allow_zero: bool,
    mode: DcCountMode,
    out: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let set = set_arg(set)?;
        let chain = ChainType::parse_list(str_arg(alphas, "alphas")?, allow_zero)?;
        let mode = match mode {
            DcCountMode::WithRepeats => CountMode::WithRepeats,
            DcCountMode::PairwiseDistinct => CountMode::PairwiseDistinct,
        };
        let report = count_chains(set, &chain, mode)?;
        write_out(out, into_c_string(report.count.to_string()))
    })
}

/// Ordered pairs of distinct points with dot product `alpha`.
///
/// # Safety
/// `set` must be a live handle, `alpha` a nul-terminated string, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dc_count_pairs_with_dot(
    set: *const DcPointSet,
    alpha: *const c_char,
    allow_zero: bool,
    out: *mut u64,
) -> DcStatus {
    guard(|| {
        let set = set_arg(set)?;
        let a: Scalar = str_arg(alpha, "alpha")?.parse()?;
        write_out(out, count_pairs_with_dot(set, &a, allow_zero)?)
    })
}

/// Most points on one affine flat of dimension `flat_dim`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_max_flat_richness(
    set: *const DcPointSet,
    flat_dim: usize,
    out: *mut usize,
) -> DcStatus {
    guard(|| {
        let set = set_arg(set)?;
        write_out(out, max_flat_richness(set, flat_dim)?.max_points)
    })
}

fn bound_params(v: &serde_json::Value) -> FfiResult<BoundParams> {
    let bad = |m: String| Fail(DcStatus::InvalidParameter, m);
    let obj = v
        .as_object()
        .ok_or_else(|| bad("params must be a JSON object".into()))?;
    let mut p = BoundParams::default();
    for (key, val) in obj {
        let num = || {
            val.as_f64()
                .ok_or_else(|| bad(format!("{key} must be a number")))
        };
        let int = || {
            val.as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| bad(format!("{key} must be a nonnegative integer")))
        };
        let exact = || -> FfiResult<Scalar> {
            match val {
                serde_json::Value::String(s) => Ok(Scalar::parse_decimal(s)?),
                serde_json::Value::Number(n) => Ok(Scalar::parse_decimal(&n.to_string())?),
                _ => Err(bad(format!("{key} must be a number or rational string"))),
            }
        };
        match key.as_str() {
            "n" => p.n = Some(num()?),
            "k" => p.k = Some(int()?),
            "t" => p.t = Some(num()?),
            "r" => p.r = Some(num()?),
            "d" => p.d = Some(int()?),
            "s" => p.s = Some(exact()?),
            "eps" => p.eps = exact()?,
            "u2_exp" => p.u2_exp = exact()?,
            other => return Err(bad(format!("unknown bound parameter {other:?}"))),
        }
    }
    Ok(p)
}

/// Evaluates bound `id` (e.g. `"thm-main"`) with parameters given as a JSON
/// object with keys among `n, k, t, r, d, s, eps, u2_exp`.
///
/// # Safety
/// `id` and `params_json` must be nul-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_evaluate_bound(
    id: *const c_char,
    params_json: *const c_char,
    out: *mut f64,
) -> DcStatus {
    guard(|| {
        let id: BoundId = str_arg(id, "id")?.parse()?;
        let v: serde_json::Value = serde_json::from_str(str_arg(params_json, "params_json")?)
            .map_err(|e| Fail(DcStatus::Parse, e.to_string()))?;
        let value = evaluate_bound(&BoundSpec::new(id, bound_params(&v)?))?.value();
        write_out(out, value)
    })
}
