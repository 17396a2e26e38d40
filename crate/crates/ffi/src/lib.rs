//! C interface to `permtail`.
//!
//! Every fallible function returns a [`PtStatus`]; results go through out
//! pointers. On failure, [`pt_last_error_message`] describes the most recent
//! error on the calling thread. Handles are opaque and must be released with
//! their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use permtail::exact::{distribution, pmf_via_fourier, CountDistribution};
use permtail::saddle::{solve, SaddlePoint};
use permtail::sldp::{expansion_descents, expansion_major};
use permtail::{Error, Statistic};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtStatus {
    Ok = 0,
    /// `x` outside the admissible interval.
    Domain = 1,
    /// `n` above a size cap.
    Size = 2,
    Convergence = 3,
    /// Expansion order not available.
    Order = 4,
    /// Tail threshold beyond the support.
    EmptyTail = 5,
    /// Saddle point built for the other statistic.
    StatisticMismatch = 6,
    /// Expansion bracket not positive.
    NonPositiveBracket = 7,
    InvalidArgument = 8,
    Cache = 9,
    NullPointer = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtStatistic {
    Descents = 0,
    MajorIndex = 1,
}

impl From<PtStatistic> for Statistic {
    fn from(s: PtStatistic) -> Self {
        match s {
            PtStatistic::Descents => Statistic::Descents,
            PtStatistic::MajorIndex => Statistic::MajorIndex,
        }
    }
}

impl From<Statistic> for PtStatistic {
    fn from(s: Statistic) -> Self {
        match s {
            Statistic::Descents => PtStatistic::Descents,
            Statistic::MajorIndex => PtStatistic::MajorIndex,
        }
    }
}

/// Scalar summary of a solved saddle point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtSaddleInfo {
    pub statistic: PtStatistic,
    pub x: f64,
    pub t_x: f64,
    pub sigma2: f64,
    pub rate: f64,
}

/// Opaque saddle-point handle.
pub struct PtSaddle(SaddlePoint);

/// Opaque exact-distribution handle.
pub struct PtDistribution(CountDistribution);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PtStatus {
    match e {
        Error::Domain { .. } => PtStatus::Domain,
        Error::Size { .. } => PtStatus::Size,
        Error::Convergence { .. } => PtStatus::Convergence,
        Error::Order { .. } => PtStatus::Order,
        Error::EmptyTail { .. } => PtStatus::EmptyTail,
        Error::StatisticMismatch { .. } => PtStatus::StatisticMismatch,
        Error::NonPositiveBracket { .. } => PtStatus::NonPositiveBracket,
        Error::InvalidArgument(_) => PtStatus::InvalidArgument,
        Error::Cache(_) => PtStatus::Cache,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard<F>(f: F) -> PtStatus
where
    F: FnOnce() -> Result<(), (PtStatus, String)> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => PtStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            PtStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (PtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PtStatus, String) {
    (PtStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failed call on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pt_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version string has no interior NUL"),
        };
    VERSION.as_ptr()
}

/// Solves the dual equation at level `x`. On success `*out` owns a new
/// handle.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_saddle_solve(
    statistic: PtStatistic,
    x: f64,
    max_order: usize,
    out: *mut *mut PtSaddle,
) -> PtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let sp = solve(statistic.into(), x, max_order).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(PtSaddle(sp)));
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`pt_saddle_solve`] or be NULL; `out` must be
/// valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pt_saddle_info(
    handle: *const PtSaddle,
    out: *mut PtSaddleInfo,
) -> PtStatus {
    guard(|| {
        let sp = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = PtSaddleInfo {
            statistic: sp.statistic.into(),
            x: sp.x,
            t_x: sp.t_x,
            sigma2: sp.sigma2,
            rate: sp.rate,
        };
        Ok(())
    })
}

/// `k`-th derivative of the governing CGF (`L_D` or `L_M`) at `t_x`.
///
/// # Safety
/// As for [`pt_saddle_info`].
#[no_mangle]
pub unsafe extern "C" fn pt_saddle_ell(
    handle: *const PtSaddle,
    k: usize,
    out: *mut f64,
) -> PtStatus {
    guard(|| {
        let sp = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if k > sp.max_order() {
            return Err((
                PtStatus::Order,
                format!(
                    "derivative order {k} not tabulated (maximum {})",
                    sp.max_order()
                ),
            ));
        }
        *out = sp.ell(k);
        Ok(())
    })
}

/// Order-`order` approximation of the log tail probability at size `n`.
///
/// # Safety
/// As for [`pt_saddle_info`].
#[no_mangle]
pub unsafe extern "C" fn pt_saddle_log_tail(
    handle: *const PtSaddle,
    n: usize,
    order: usize,
    out: *mut f64,
) -> PtStatus {
    guard(|| {
        let sp = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let approx = match sp.statistic {
            Statistic::Descents => expansion_descents(sp, n, order),
            Statistic::MajorIndex => expansion_major(sp, n, order),
        }
        .map_err(lib_err)?;
        *out = approx.value_log;
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`pt_saddle_solve`] and not be used afterwards.
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pt_saddle_free(handle: *mut PtSaddle) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Builds the exact distribution of `statistic` on `S_n`.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_distribution_new(
    statistic: PtStatistic,
    n: usize,
    out: *mut *mut PtDistribution,
) -> PtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let d = distribution(statistic.into(), n).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(PtDistribution(d)));
        Ok(())
    })
}

/// Number of support points, or 0 for NULL.
///
/// # Safety
/// `handle` must come from [`pt_distribution_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn pt_distribution_len(handle: *const PtDistribution) -> usize {
    handle.as_ref().map_or(0, |d| d.0.counts().len())
}

/// Copies the probabilities into `buf`, which must hold
/// [`pt_distribution_len`] values.
///
/// # Safety
/// `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn pt_distribution_probabilities(
    handle: *const PtDistribution,
    buf: *mut f64,
    len: usize,
) -> PtStatus {
    guard(|| {
        let d = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let probs = d.probabilities();
        if len < probs.len() {
            return Err((
                PtStatus::BufferTooSmall,
                format!("buffer holds {len} values, {} needed", probs.len()),
            ));
        }
        ptr::copy_nonoverlapping(probs.as_ptr(), buf, probs.len());
        Ok(())
    })
}

/// Exact `log P(X ≥ ⌈n x⌉)` (descents) or `log P(X ≥ ⌈n² x⌉)` (major index).
/// `threshold` may be NULL.
///
/// # Safety
/// `handle` from [`pt_distribution_new`]; `log_value` valid for writing;
/// `threshold` NULL or valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pt_distribution_log_tail(
    handle: *const PtDistribution,
    x: f64,
    log_value: *mut f64,
    threshold: *mut i64,
) -> PtStatus {
    guard(|| {
        let d = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let log_value = log_value.as_mut().ok_or_else(|| null("log_value"))?;
        let tail = d.tail(x).map_err(lib_err)?;
        *log_value = tail.log_value;
        if let Some(t) = threshold.as_mut() {
            *t = tail.threshold;
        }
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`pt_distribution_new`] and not be used
/// afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pt_distribution_free(handle: *mut PtDistribution) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Major-index PMF by tilted Fourier inversion. Writes `n(n-1)/2 + 1`
/// values to `buf` and that count to `written`.
///
/// # Safety
/// `buf` valid for `len` writes, `written` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pt_major_pmf_fourier(
    n: usize,
    tilt: f64,
    buf: *mut f64,
    len: usize,
    written: *mut usize,
) -> PtStatus {
    guard(|| {
        let written = written.as_mut().ok_or_else(|| null("written"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let needed = Statistic::MajorIndex.support_max(n) + 1;
        if len < needed {
            return Err((
                PtStatus::BufferTooSmall,
                format!("buffer holds {len} values, {needed} needed"),
            ));
        }
        let f = pmf_via_fourier(n, tilt).map_err(lib_err)?;
        ptr::copy_nonoverlapping(f.pmf.as_ptr(), buf, f.pmf.len());
        *written = f.pmf.len();
        Ok(())
    })
}
