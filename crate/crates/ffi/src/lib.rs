//! C bindings for the `resolvent` library.
//!
//! Every fallible call returns an [`RsvStatus`]; on failure the message is available from
//! [`rsv_last_error`] on the same thread. Handles are opaque and must be released with their
//! matching `*_free` function. Strings returned through out-pointers are owned by the caller
//! and released with [`rsv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use resolvent::cohomology::{invariant_ext_dims, ExtOptions};
use resolvent::localzeta::density_exact;
use resolvent::nichols::{ActionMode, NicholsAlgebra};
use resolvent::qseries::{cohomology_series, global_table, local_table, TruncatedTSeries};
use resolvent::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RsvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedDegree = 3,
    BudgetExceeded = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    ComputationFailed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RsvSeriesKind {
    /// `I_d(q, t)`.
    Local = 0,
    /// `I_d(q⁻¹, qt)`.
    Global = 1,
    /// `I_d(q⁻², qt)`.
    Cohomology = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RsvAction {
    Geometric = 0,
    Standard = 1,
}

/// A truncated power series in `t` with Laurent polynomial coefficients in `q`.
pub struct RsvSeries {
    inner: TruncatedTSeries,
}

/// A Nichols algebra `B_d` together with its completed rewrite system.
pub struct RsvNichols {
    inner: NicholsAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RsvStatus {
    match e {
        Error::UnsupportedDegree(_) => RsvStatus::UnsupportedDegree,
        Error::BudgetExceeded { .. } | Error::RuleExplosion { .. } => RsvStatus::BudgetExceeded,
        Error::Precondition(_) | Error::Parse(_) | Error::IndexOutOfRange { .. } => RsvStatus::InvalidArgument,
        _ => RsvStatus::ComputationFailed,
    }
}

fn guard<F: FnOnce() -> Result<(), (RsvStatus, String)>>(f: F) -> RsvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RsvStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            RsvStatus::Panic
        }
    }
}

fn lift<T>(r: resolvent::Result<T>) -> Result<T, (RsvStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null_check<T>(p: *const T, name: &str) -> Result<(), (RsvStatus, String)> {
    if p.is_null() {
        Err((RsvStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

/// Copies `values` into `buf`, always reporting the required length through `out_len`.
unsafe fn write_slice(values: &[u64], buf: *mut u64, cap: usize, out_len: *mut usize) -> Result<(), (RsvStatus, String)> {
    null_check(out_len, "out_len")?;
    *out_len = values.len();
    if cap < values.len() {
        return Err((
            RsvStatus::BufferTooSmall,
            format!("buffer holds {cap} entries, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        null_check(buf, "buf")?;
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the next failing
/// call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn rsv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn rsv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rsv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Expands the chosen specialisation of `I_d` to `t`-order `order` (inclusive).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rsv_series_new(d: u32, kind: RsvSeriesKind, order: usize, out: *mut *mut RsvSeries) -> RsvStatus {
    guard(|| {
        null_check(out, "out")?;
        let inner = lift(match kind {
            RsvSeriesKind::Local => local_table(d, order),
            RsvSeriesKind::Global => global_table(d, order),
            RsvSeriesKind::Cohomology => cohomology_series(d, order),
        })?;
        *out = Box::into_raw(Box::new(RsvSeries { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`rsv_series_new`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rsv_series_free(h: *mut RsvSeries) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live series handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsv_series_order(h: *const RsvSeries, out: *mut usize) -> RsvStatus {
    guard(|| {
        null_check(h, "series")?;
        null_check(out, "out")?;
        *out = (*h).inner.order();
        Ok(())
    })
}

/// Writes the `t^b` coefficient as `exp:coeff;exp:coeff` pairs (empty for zero).
///
/// # Safety
/// `h` must be a live series handle and `out` a valid pointer. Free the result with
/// [`rsv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rsv_series_coeff_string(h: *const RsvSeries, b: usize, out: *mut *mut c_char) -> RsvStatus {
    guard(|| {
        null_check(h, "series")?;
        null_check(out, "out")?;
        let s = &(*h).inner;
        if b > s.order() {
            return Err((RsvStatus::InvalidArgument, format!("b={b} exceeds series order {}", s.order())));
        }
        let text = s.coeff(b).to_pairs_string();
        *out = CString::new(text).map_err(|e| (RsvStatus::ComputationFailed, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// Integer coefficient of `q^exp t^b`.
///
/// # Safety
/// `h` must be a live series handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsv_series_coeff_int(h: *const RsvSeries, b: usize, exp: i64, out: *mut i64) -> RsvStatus {
    guard(|| {
        null_check(h, "series")?;
        null_check(out, "out")?;
        let s = &(*h).inner;
        if b > s.order() {
            return Err((RsvStatus::InvalidArgument, format!("b={b} exceeds series order {}", s.order())));
        }
        *out = s
            .coeff(b)
            .int_coeff(exp)
            .ok_or((RsvStatus::Overflow, format!("coefficient of q^{exp} t^{b} is not a machine integer")))?;
        Ok(())
    })
}

/// Builds `B_d` by rewriting completion with at most `rule_cap` rules.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rsv_nichols_build(d: usize, rule_cap: usize, out: *mut *mut RsvNichols) -> RsvStatus {
    guard(|| {
        null_check(out, "out")?;
        let inner = lift(NicholsAlgebra::build(d, rule_cap))?;
        *out = Box::into_raw(Box::new(RsvNichols { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`rsv_nichols_build`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rsv_nichols_free(h: *mut RsvNichols) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Hilbert series coefficients `dim B^0, dim B^1, ...`. `out_len` receives the required
/// length even when the buffer is too small.
///
/// # Safety
/// `h` must be a live handle, `buf` must have room for `cap` entries, `out_len` valid.
#[no_mangle]
pub unsafe extern "C" fn rsv_nichols_dims(h: *const RsvNichols, buf: *mut u64, cap: usize, out_len: *mut usize) -> RsvStatus {
    guard(|| {
        null_check(h, "algebra")?;
        let dims: Vec<u64> = (*h).inner.dims().into_iter().map(|x| x as u64).collect();
        write_slice(&dims, buf, cap, out_len)
    })
}

/// Dimensions of the `S_d`-invariant part of `Ext^{a,b}` for `a = 0..=b` at internal
/// degree `b`.
///
/// # Safety
/// `h` must be a live handle, `buf` must have room for `cap` entries, `out_len` valid.
#[no_mangle]
pub unsafe extern "C" fn rsv_invariant_ext_row(
    h: *const RsvNichols,
    action: RsvAction,
    b: usize,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> RsvStatus {
    guard(|| {
        null_check(h, "algebra")?;
        let mode = match action {
            RsvAction::Geometric => ActionMode::Geometric,
            RsvAction::Standard => ActionMode::Standard,
        };
        let table = lift(invariant_ext_dims(&(*h).inner, mode, b, b, &ExtOptions::default()))?;
        let row: Vec<u64> = (0..=b as u32).map(|a| table.get(a, b as u32)).collect();
        write_slice(&row, buf, cap, out_len)
    })
}

/// Exact count of vectors in `V_d(F_p[t]/t^{b+1})` whose discriminant has valuation `b`,
/// out of `p^{dim(b+1)}`. Fails with `BudgetExceeded` when the enumeration exceeds `budget`.
///
/// # Safety
/// `out_count` and `out_total` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rsv_density_exact(
    d: u32,
    p: u32,
    b: u32,
    budget: u64,
    out_count: *mut u64,
    out_total: *mut u64,
) -> RsvStatus {
    guard(|| {
        null_check(out_count, "out_count")?;
        null_check(out_total, "out_total")?;
        let r = lift(density_exact(d, p, b, budget as u128))?;
        let narrow = |x: u128| u64::try_from(x).map_err(|_| (RsvStatus::Overflow, format!("{x} does not fit in 64 bits")));
        *out_count = narrow(r.count)?;
        *out_total = narrow(r.total)?;
        Ok(())
    })
}
