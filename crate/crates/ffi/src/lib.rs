//! C ABI over `orrw`.
//!
//! Conventions:
//!
//! * every fallible function returns an [`OrrwStatus`] and writes results
//!   through out-pointers; on failure the out-pointers are left untouched and
//!   [`orrw_last_error`] describes the failure on the calling thread;
//! * tables are returned as opaque handles that must be released with the
//!   matching `*_free` function (passing `NULL` is a no-op);
//! * no function unwinds across the boundary: panics map to
//!   `ORRW_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::num::NonZeroUsize;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use orrw::asymptotics;
use orrw::exact::{self, DiscreteDistribution, Horizon, RangeTable};
use orrw::montecarlo;
use orrw::series;
use orrw::walk::{self, Path, WalkState};
use orrw::{Error, Params};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrrwStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Resource = 3,
    Convergence = 4,
    Internal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> OrrwStatus {
    match err {
        Error::Domain(_) | Error::Usage(_) => OrrwStatus::Domain,
        Error::Resource { .. } => OrrwStatus::Resource,
        Error::Convergence(_) => OrrwStatus::Convergence,
        Error::Io(_) | Error::Csv(_) => OrrwStatus::Internal,
    }
}

/// Runs `f`, mapping errors and panics to a status code.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> OrrwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            OrrwStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside orrw");
            OrrwStatus::Internal
        }
    }
}

fn null() -> Error {
    Error::Domain("null pointer argument".into())
}

/// Writes `v` to `out`.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

macro_rules! checked {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return OrrwStatus::NullPointer;
        }
    };
}

/// Message for the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn orrw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn orrw_version() -> *const c_char {
    static V: OnceLock<CString> = OnceLock::new();
    V.get_or_init(|| CString::new(env!("CARGO_PKG_VERSION")).unwrap_or_default())
        .as_ptr()
}

/// Identifier of the random stream construction used by simulations.
#[no_mangle]
pub extern "C" fn orrw_rng_algorithm() -> *const c_char {
    static ID: OnceLock<CString> = OnceLock::new();
    ID.get_or_init(|| CString::new(orrw::rng::ALGORITHM_ID).unwrap_or_default())
        .as_ptr()
}

fn state(position: i64, min: i64, max: i64, steps: u64) -> Result<WalkState, Error> {
    WalkState::new(position, min, max, steps)
}

/// Next-step probabilities from the given state.
///
/// # Safety
/// `p_up` and `p_down` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_step_weights(
    position: i64,
    min: i64,
    max: i64,
    steps: u64,
    c: f64,
    p_up: *mut f64,
    p_down: *mut f64,
) -> OrrwStatus {
    checked!(p_up, p_down);
    guard(|| {
        let (u, d) = walk::step_weights(&state(position, min, max, steps)?, &Params::new(c)?);
        put(p_up, u)?;
        put(p_down, d)
    })
}

/// Compensated one-step drifts of the two position martingales.
///
/// # Safety
/// `drift_first` and `drift_second` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_martingale_drift(
    position: i64,
    min: i64,
    max: i64,
    steps: u64,
    c: f64,
    drift_first: *mut f64,
    drift_second: *mut f64,
) -> OrrwStatus {
    checked!(drift_first, drift_second);
    guard(|| {
        let (a, b) = walk::martingale_drift(&state(position, min, max, steps)?, &Params::new(c)?);
        put(drift_first, a)?;
        put(drift_second, b)
    })
}

/// Opaque simulated path.
pub struct OrrwPath(Path);

/// Samples an `n`-step path; release with [`orrw_path_free`].
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orrw_path_simulate(
    c: f64,
    n: u64,
    seed: u64,
    out: *mut *mut OrrwPath,
) -> OrrwStatus {
    checked!(out);
    guard(|| {
        let path = walk::simulate_path(&Params::new(c)?, n, seed)?;
        put(out, Box::into_raw(Box::new(OrrwPath(path))))
    })
}

/// Number of stored positions (`n + 1`); 0 for `NULL`.
///
/// # Safety
/// `path` must be null or a live handle from [`orrw_path_simulate`].
#[no_mangle]
pub unsafe extern "C" fn orrw_path_len(path: *const OrrwPath) -> usize {
    path.as_ref().map_or(0, |p| p.0.positions.len())
}

/// Copies `min(len, path length)` positions into `buf` and reports how many
/// were written.
///
/// # Safety
/// `path` must be a live handle, `buf` valid for `len` writes and `written`
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_path_positions(
    path: *const OrrwPath,
    buf: *mut i64,
    len: usize,
    written: *mut usize,
) -> OrrwStatus {
    checked!(path, buf, written);
    guard(|| {
        let src = &(*path).0.positions;
        let count = len.min(src.len());
        std::ptr::copy_nonoverlapping(src.as_ptr(), buf, count);
        put(written, count)
    })
}

/// # Safety
/// `path` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orrw_path_free(path: *mut OrrwPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Opaque exact law of `R_n`.
pub struct OrrwRangeTable(RangeTable);

/// Exact law of `R_n` with rising factorial moments up to `ell_max`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orrw_range_table_new(
    c: f64,
    n: usize,
    ell_max: usize,
    out: *mut *mut OrrwRangeTable,
) -> OrrwStatus {
    checked!(out);
    guard(|| {
        let t = exact::range_distribution(&Params::new(c)?, n, ell_max)?;
        put(out, Box::into_raw(Box::new(OrrwRangeTable(t))))
    })
}

/// Largest range value stored; `P(R_n = r)` is 0 beyond it.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orrw_range_table_max_range(table: *const OrrwRangeTable) -> i64 {
    table.as_ref().map_or(-1, |t| t.0.dist.last_value())
}

/// `P(R_n = r)`; 0 for `NULL` or out-of-support `r`.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orrw_range_table_prob(table: *const OrrwRangeTable, r: i64) -> f64 {
    table.as_ref().map_or(0.0, |t| t.0.dist.prob(r))
}

/// Mass dropped by pruning.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orrw_range_table_deficit(table: *const OrrwRangeTable) -> f64 {
    table.as_ref().map_or(f64::NAN, |t| t.0.dist.deficit)
}

/// `E[R_n (R_n + 1) ... (R_n + ell)]`.
///
/// # Safety
/// `table` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_range_table_factorial_moment(
    table: *const OrrwRangeTable,
    ell: usize,
    out: *mut f64,
) -> OrrwStatus {
    checked!(table, out);
    guard(|| {
        let table = &(*table).0;
        let m = table
            .factorial_moments
            .get(ell)
            .copied()
            .ok_or_else(|| Error::Domain(format!("ell = {ell} exceeds the table's ell_max")))?;
        put(out, m)
    })
}

/// # Safety
/// `table` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orrw_range_table_free(table: *mut OrrwRangeTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Opaque truncated law on the integers.
pub struct OrrwDistribution(DiscreteDistribution);

fn horizon(n_max: usize) -> Horizon {
    if n_max == 0 {
        Horizon::default()
    } else {
        Horizon::Fixed(n_max)
    }
}

fn boxed_dist(out: *mut *mut OrrwDistribution, d: DiscreteDistribution) -> Result<(), Error> {
    unsafe { put(out, Box::into_raw(Box::new(OrrwDistribution(d)))) }
}

/// Law of `τ_i`. `n_max = 0` selects the automatic horizon.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orrw_tau_distribution(
    i: usize,
    n_max: usize,
    out: *mut *mut OrrwDistribution,
) -> OrrwStatus {
    checked!(out);
    guard(|| {
        if i == 0 {
            return Err(Error::Domain("i must be >= 1".into()));
        }
        boxed_dist(out, exact::tau_distribution(i, horizon(n_max)))
    })
}

/// Law of `T_i`. `n_max = 0` selects the automatic horizon.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orrw_t_distribution(
    c: f64,
    i: usize,
    n_max: usize,
    out: *mut *mut OrrwDistribution,
) -> OrrwStatus {
    checked!(out);
    guard(|| {
        if i == 0 {
            return Err(Error::Domain("i must be >= 1".into()));
        }
        boxed_dist(
            out,
            exact::t_distribution(&Params::new(c)?, i, horizon(n_max)),
        )
    })
}

/// Law of `S_k`. `n_max = 0` selects the automatic horizon.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn orrw_s_k_distribution(
    c: f64,
    k: usize,
    n_max: usize,
    out: *mut *mut OrrwDistribution,
) -> OrrwStatus {
    checked!(out);
    guard(|| {
        if k == 0 {
            return Err(Error::Domain("k must be >= 1".into()));
        }
        boxed_dist(
            out,
            exact::s_k_distribution(&Params::new(c)?, k, horizon(n_max)),
        )
    })
}

/// Value carried by the first stored probability.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orrw_distribution_offset(d: *const OrrwDistribution) -> i64 {
    d.as_ref().map_or(0, |d| d.0.offset)
}

/// Number of stored probabilities.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orrw_distribution_len(d: *const OrrwDistribution) -> usize {
    d.as_ref().map_or(0, |d| d.0.probs.len())
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orrw_distribution_deficit(d: *const OrrwDistribution) -> f64 {
    d.as_ref().map_or(f64::NAN, |d| d.0.deficit)
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orrw_distribution_prob(d: *const OrrwDistribution, value: i64) -> f64 {
    d.as_ref().map_or(0.0, |d| d.0.prob(value))
}

/// Mean and variance of the stored mass.
///
/// # Safety
/// `d` must be a live handle; `mean` and `variance` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_distribution_moments(
    d: *const OrrwDistribution,
    mean: *mut f64,
    variance: *mut f64,
) -> OrrwStatus {
    checked!(d, mean, variance);
    guard(|| {
        let d = &(*d).0;
        put(mean, d.mean())?;
        put(variance, d.variance())
    })
}

/// # Safety
/// `d` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orrw_distribution_free(d: *mut OrrwDistribution) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// `d_s`, the solution of `cosh(d) = 1/s`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_d_of_s(s: f64, out: *mut f64) -> OrrwStatus {
    checked!(out);
    guard(|| put(out, series::d_of_s(s)?))
}

/// `g_x(s) = E[s^{τ_x}]`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_g(x: f64, s: f64, out: *mut f64) -> OrrwStatus {
    checked!(out);
    guard(|| put(out, series::g(x, s)?))
}

/// `G_x(s) = E[s^{T_x}]`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_big_g(x: f64, s: f64, c: f64, out: *mut f64) -> OrrwStatus {
    checked!(out);
    guard(|| put(out, series::G(x, s, &Params::new(c)?)?))
}

/// `E[s^{S_k}]`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_gen_s_k(c: f64, k: usize, s: f64, out: *mut f64) -> OrrwStatus {
    checked!(out);
    guard(|| put(out, series::gen_s_k(&Params::new(c)?, k, s)?))
}

/// `H_ℓ(s)` with automatic truncation; `k_terms` receives the number of
/// terms summed.
///
/// # Safety
/// `value` and `k_terms` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_h_ell(
    c: f64,
    ell: usize,
    s: f64,
    value: *mut f64,
    k_terms: *mut usize,
) -> OrrwStatus {
    checked!(value, k_terms);
    guard(|| {
        let p = series::h_ell(&Params::new(c)?, ell, s, None)?;
        put(value, p.value)?;
        put(k_terms, p.k_terms)
    })
}

/// `J_ℓ(c)` by quadrature.
///
/// # Safety
/// `value` and `abs_error_bound` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_j_quadrature(
    c: f64,
    ell: u32,
    value: *mut f64,
    abs_error_bound: *mut f64,
) -> OrrwStatus {
    checked!(value, abs_error_bound);
    guard(|| {
        let j = asymptotics::j_quadrature(c, ell)?;
        put(value, j.value)?;
        put(abs_error_bound, j.abs_error_bound)
    })
}

/// `J_ℓ(c)` for integer `c` and `ℓ ∈ {1, 2}` by its finite sum.
///
/// # Safety
/// `value` and `abs_error_bound` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_j_closed_form(
    c: u32,
    ell: u32,
    value: *mut f64,
    abs_error_bound: *mut f64,
) -> OrrwStatus {
    checked!(value, abs_error_bound);
    guard(|| {
        let j = asymptotics::j_closed_form(c, ell)?;
        put(value, j.value)?;
        put(abs_error_bound, j.abs_error_bound)
    })
}

/// Limit of `E[(R_n/√n)^ℓ]`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_moment_constant(c: f64, ell: u32, out: *mut f64) -> OrrwStatus {
    checked!(out);
    guard(|| put(out, asymptotics::moment_constant(c, ell)?))
}

/// Limit of `H_ℓ(s)(1 - s)^{(3+ℓ)/2}`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn orrw_k_constant(c: f64, ell: usize, out: *mut f64) -> OrrwStatus {
    checked!(out);
    guard(|| put(out, asymptotics::k_constant(c, ell)?))
}

/// Heuristic bounds on `|V[X_n/√n] - 1|` for large `n`.
///
/// # Safety
/// `lhs` and `rhs` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_variance_bounds(c: f64, lhs: *mut f64, rhs: *mut f64) -> OrrwStatus {
    checked!(lhs, rhs);
    guard(|| {
        let (l, r) = asymptotics::variance_bounds(c)?;
        put(lhs, l)?;
        put(rhs, r)
    })
}

/// Monte Carlo estimate of `E[X_n^2]/n`. `workers = 0` uses all available
/// cores; the result does not depend on it.
///
/// # Safety
/// `mean` and `stderr` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_estimate_position_variance(
    c: f64,
    n: u64,
    reps: u64,
    seed: u64,
    workers: usize,
    mean: *mut f64,
    stderr: *mut f64,
) -> OrrwStatus {
    checked!(mean, stderr);
    guard(|| {
        let workers = NonZeroUsize::new(workers).unwrap_or_else(montecarlo::default_workers);
        let e = montecarlo::estimate_position_variance(&Params::new(c)?, n, reps, seed, workers)?;
        put(mean, e.mean)?;
        put(stderr, e.stderr)
    })
}

/// Monte Carlo estimate of `E[(R_n/√n)^ℓ]` for a single `ℓ`.
///
/// # Safety
/// `mean` and `stderr` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn orrw_estimate_range_moment(
    c: f64,
    n: u64,
    reps: u64,
    ell: u32,
    seed: u64,
    workers: usize,
    mean: *mut f64,
    stderr: *mut f64,
) -> OrrwStatus {
    checked!(mean, stderr);
    guard(|| {
        if ell == 0 {
            return Err(Error::Domain("ell must be >= 1".into()));
        }
        let workers = NonZeroUsize::new(workers).unwrap_or_else(montecarlo::default_workers);
        let est =
            montecarlo::estimate_range_moments(&Params::new(c)?, n, reps, ell, seed, workers)?;
        let e = est.last().expect("ell >= 1");
        put(mean, e.mean)?;
        put(stderr, e.stderr)
    })
}
