//! Generating functions of the hitting times, evaluated at real `s ∈ (0, 1)`.
//!
//! With `d_s = arcosh(1/s)` and `w = √(1 - s²)`:
//!
//! ```text
//! g_x(s) = (e^{d} + e^{d(x-1)}) / (1 + e^{dx})  = E[s^{τ_x}]
//!        = (1 - a(d x) w) / s,              a(y) = (e^y - 1) / (e^y + 1)
//! G_x(s) = s / (1 + c - c s g_x(s)) = s / (1 + c a(d x) w)  = E[s^{T_x}]
//! E[s^{S_k}] = s Π_{i<k} G_i(s)
//! H_ℓ(s) = Σ_n s^n E[R_n ⋯ (R_n + ℓ)]
//!        = (ℓ + 1)/(1 - s) Σ_k k ⋯ (k + ℓ - 1) E[s^{S_k}]
//! ```
//!
//! `x` may be any real `>= 1`; only integer `x` is a probability statement.

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::walk::Params;

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("s must lie in (0, 1), got {s}")))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x >= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be finite and >= 1, got {x}")))
    }
}

/// `√(1 - s²)` without cancellation near `s = 1`.
#[inline]
fn co(s: f64) -> f64 {
    ((1.0 - s) * (1.0 + s)).sqrt()
}

/// `a(y) = (e^y - 1)/(e^y + 1) = tanh(y/2)`.
#[inline]
fn a(y: f64) -> f64 {
    (0.5 * y).tanh()
}

/// `1 - a(y) = 2 / (e^y + 1)`, accurate for large `y`.
#[inline]
fn one_minus_a(y: f64) -> f64 {
    let e = (-y).exp();
    2.0 * e / (1.0 + e)
}

/// `d_s = log((1 + √(1 - s²)) / s)`, the solution of `cosh(d) = 1/s`.
pub fn d_of_s(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(co(s).ln_1p() - s.ln())
}

/// `g_x(s)` in its defining exponential form.
///
/// Overflows once `d_s·x` exceeds ~700; [`g`] switches to [`g_stable`] well
/// before that.
pub fn g_direct(x: f64, s: f64) -> Result<f64> {
    check_x(x)?;
    let d = d_of_s(s)?;
    Ok((d.exp() + (d * (x - 1.0)).exp()) / (1.0 + (d * x).exp()))
}

/// `g_x(s) = (1 - a(d_s x)·w)/s`, evaluated as
/// `s/(1 + w) + w·(1 - a(d_s x))/s` so that no step cancels.
pub fn g_stable(x: f64, s: f64) -> Result<f64> {
    check_x(x)?;
    let d = d_of_s(s)?;
    let w = co(s);
    Ok(s / (1.0 + w) + w * one_minus_a(d * x) / s)
}

/// `g_x(s) = E[s^{τ_x}]`.
pub fn g(x: f64, s: f64) -> Result<f64> {
    check_x(x)?;
    let d = d_of_s(s)?;
    if s > 0.99 || x * d > 30.0 {
        g_stable(x, s)
    } else {
        g_direct(x, s)
    }
}

/// `G_x(s) = E[s^{T_x}] = s / (1 + c·a(d_s x)·√(1 - s²))`.
#[allow(non_snake_case)]
pub fn G(x: f64, s: f64, params: &Params) -> Result<f64> {
    check_x(x)?;
    let d = d_of_s(s)?;
    Ok(s / (1.0 + params.c() * a(d * x) * co(s)))
}

/// `log G_i(s)` for `i = 1..`, reusing `d_s` and `w`.
struct LogG {
    d: f64,
    w: f64,
    ln_s: f64,
    c: f64,
}

impl LogG {
    fn new(s: f64, params: &Params) -> Result<Self> {
        Ok(LogG {
            d: d_of_s(s)?,
            w: co(s),
            ln_s: s.ln(),
            c: params.c(),
        })
    }

    #[inline]
    fn at(&self, i: usize) -> f64 {
        self.ln_s - (self.c * a(self.d * i as f64) * self.w).ln_1p()
    }
}

/// `E[s^{S_k}] = s Π_{i=1}^{k-1} G_i(s)`.
pub fn gen_s_k(params: &Params, k: usize, s: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("S_k is defined for k >= 1"));
    }
    check_s(s)?;
    let lg = LogG::new(s, params)?;
    let log: f64 = (1..k).map(|i| lg.at(i)).sum();
    Ok(s * log.exp())
}

/// Evaluation of an infinite series at `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesPoint {
    pub s: f64,
    pub value: f64,
    /// Number of terms summed.
    pub k_terms: usize,
}

/// Hard cap on the number of `k` terms in [`h_ell`].
pub const MAX_K_TERMS: usize = 1 << 28;
const K_START: usize = 1 << 8;
const TAIL_REL: f64 = 1e-14;

/// Right-hand side of the `H_ℓ` identity, summed over `k <= k_max`.
///
/// With `k_max = None` the sum runs to the first `k = 2^8·2^j` whose term is
/// below `1e-14` times the partial sum, or fails past [`MAX_K_TERMS`].
pub fn h_ell(params: &Params, ell: usize, s: f64, k_max: Option<usize>) -> Result<SeriesPoint> {
    check_s(s)?;
    let lg = LogG::new(s, params)?;
    let mut log_gen = s.ln(); // log E[s^{S_1}]
    let mut sum = crate::accum::CompensatedSum::default();
    let mut checkpoint = K_START;
    let cap = k_max.unwrap_or(MAX_K_TERMS);
    let mut k = 1usize;
    loop {
        let rising: f64 = (0..ell).map(|j| (k + j) as f64).product();
        let term = rising * log_gen.exp();
        sum.add(term);
        if k_max.is_none() && k == checkpoint {
            if term <= TAIL_REL * sum.value() {
                break;
            }
            checkpoint *= 2;
        }
        if k >= cap {
            if k_max.is_none() {
                return Err(Error::Convergence(format!(
                    "H_{ell}({s}) tail still above {TAIL_REL:e} of the sum after {cap} terms"
                )));
            }
            break;
        }
        log_gen += lg.at(k);
        k += 1;
    }
    Ok(SeriesPoint {
        s,
        value: (ell as f64 + 1.0) / (1.0 - s) * sum.value(),
        k_terms: k,
    })
}

/// One row of a Tauberian scaling check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauberRow {
    pub s: f64,
    /// `H_ℓ(s)·(1 - s)^{(3 + ℓ)/2}`.
    pub scaled: f64,
    /// Its predicted limit `K_ℓ` as `s → 1`.
    pub k_constant: f64,
    pub k_terms: usize,
}

pub fn tauberian_check(params: &Params, ell: usize, s_grid: &[f64]) -> Result<Vec<TauberRow>> {
    let k_constant = asymptotics::k_constant(params.c(), ell)?;
    s_grid
        .iter()
        .map(|&s| {
            let h = h_ell(params, ell, s, None)?;
            Ok(TauberRow {
                s,
                scaled: h.value * (1.0 - s).powf((3.0 + ell as f64) / 2.0),
                k_constant,
                k_terms: h.k_terms,
            })
        })
        .collect()
}
