//! Asymptotic constants of the range.
//!
//! ```text
//! J_ℓ(c) = 2^{2c} ∫_0^∞ x^{ℓ-1} (e^x / (e^x + 1)^2)^c dx
//! E[(R_n / √n)^ℓ] → J_ℓ(c) / (2^{(ℓ-2)/2} Γ(ℓ/2))
//! H_ℓ(s) (1 - s)^{(3+ℓ)/2} → K_ℓ = (ℓ + 1) / 2^{(ℓ+1)/2} · J_{ℓ+1}(c)
//! ```

use std::f64::consts::{LN_2, PI};
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

use crate::accum::CompensatedSum;
use crate::error::{Error, Result};

const GL_NODES: usize = 32;
const TAIL_TARGET: f64 = 1e-14;
const X_MAX_CLAMP: (f64, f64) = (20.0, 2000.0);
/// Largest integer `c` accepted by [`j_closed_form`].
pub const MAX_CLOSED_FORM_C: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    ClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JValue {
    pub c: f64,
    pub ell: u32,
    pub value: f64,
    pub method: Method,
    pub abs_error_bound: f64,
}

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(GL_NODES).unwrap()))
}

/// `log` of the integrand `2^{2c} x^{ℓ-1} (e^x/(e^x+1)^2)^c` for `x > 0`,
/// using `e^x/(e^x+1)^2 = e^{-x}/(1+e^{-x})^2`.
#[inline]
fn log_integrand(x: f64, c: f64, ell: u32) -> f64 {
    let power = if ell == 1 {
        0.0
    } else {
        (ell - 1) as f64 * x.ln()
    };
    power - c * (x + 2.0 * (-x).exp().ln_1p()) + 2.0 * c * LN_2
}

/// `∫_X^∞ x^m e^{-cx} dx = e^{-cX} Σ_{j=0}^m m!/(m-j)! X^{m-j} / c^{j+1}`.
fn exp_tail(m: u32, c: f64, x: f64) -> f64 {
    let mut term_coeff = 1.0; // m!/(m-j)!
    let mut acc = 0.0;
    for j in 0..=m {
        acc += term_coeff * x.powi((m - j) as i32) / c.powi(j as i32 + 1);
        term_coeff *= (m - j) as f64;
    }
    (-c * x).exp() * acc
}

/// Panel edges `0, 1/4, 1/2, 1, 2, 4, ...` clipped at `x_max`, each split
/// into `split` equal parts.
fn panels(x_max: f64, split: usize) -> Vec<(f64, f64)> {
    let mut edges = vec![0.0];
    let mut b = 0.25;
    while b < x_max {
        edges.push(b);
        b *= 2.0;
    }
    edges.push(x_max);
    let mut out = Vec::new();
    for w in edges.windows(2) {
        let h = (w[1] - w[0]) / split as f64;
        for i in 0..split {
            out.push((w[0] + i as f64 * h, w[0] + (i + 1) as f64 * h));
        }
    }
    out
}

fn integrate(c: f64, ell: u32, x_max: f64, split: usize) -> f64 {
    let rule = rule();
    let mut acc = CompensatedSum::default();
    for (a, b) in panels(x_max, split) {
        acc.add(rule.integrate(a, b, |x| log_integrand(x, c, ell).exp()));
    }
    acc.value()
}

/// Upper end of the integration range and the tail bound beyond it.
fn cutoff(c: f64, ell: u32) -> (f64, f64) {
    let guess = (40.0 + ell as f64 * (1.0 + 40.0 / c).ln()) / c;
    let mut x_max = guess.clamp(X_MAX_CLAMP.0, X_MAX_CLAMP.1);
    let scale = (2.0 * c * LN_2).exp();
    let mut tail = scale * exp_tail(ell - 1, c, x_max);
    while tail >= TAIL_TARGET && x_max < 1e6 {
        x_max *= 1.5;
        tail = scale * exp_tail(ell - 1, c, x_max);
    }
    (x_max, tail)
}

fn check_c_ell(c: f64, ell: u32) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::domain(format!("c must be finite and > 0, got {c}")));
    }
    if ell < 1 {
        return Err(Error::domain("ell must be >= 1"));
    }
    Ok(())
}

/// `J_ℓ(c)` by composite 32-point Gauss–Legendre quadrature on dyadically
/// graded panels.
///
/// The error bound is the change under halving every panel, plus the
/// analytic tail bound, plus a few ulps of the value.
pub fn j_quadrature(c: f64, ell: u32) -> Result<JValue> {
    check_c_ell(c, ell)?;
    let (x_max, tail) = cutoff(c, ell);
    let coarse = integrate(c, ell, x_max, 1);
    let fine = integrate(c, ell, x_max, 2);
    let bound = (fine - coarse).abs() + tail + 8.0 * f64::EPSILON * fine.abs();
    Ok(JValue {
        c,
        ell,
        value: fine,
        method: Method::Quadrature,
        abs_error_bound: bound,
    })
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `Σ_{i > m} 1/(i 2^i)`, which equals `log 2 - Σ_{i=1}^{m} 1/(i 2^i)`.
fn log2_tail(m: u32) -> f64 {
    let mut acc = 0.0f64;
    let mut pow = 0.5f64.powi(m as i32 + 1);
    let mut i = m + 1;
    while pow / i as f64 > 1e-20 * acc.max(f64::MIN_POSITIVE) {
        acc += pow / i as f64;
        pow *= 0.5;
        i += 1;
    }
    acc
}

/// `J_1(c)` and `J_2(c)` for integer `c` as finite binomial sums.
///
/// `J_1(c) = Σ_{j<c} C(c-1, j) 2^{j+1} (-1)^{c-j} / (j - 2c + 1)`
///
/// `J_2(c) = 2^{2c} Σ_{j<c} C(c-1, j) (-1)^{c-j-1} / (2c-j-1) · t_{2c-j-2}`
/// with `t_m = log 2 - Σ_{i<=m} 1/(i 2^i)`, summed directly as the series
/// remainder so the small difference is not lost.
pub fn j_closed_form(c: u32, ell: u32) -> Result<JValue> {
    if c == 0 || c > MAX_CLOSED_FORM_C {
        return Err(Error::domain(format!(
            "closed form needs integer c in [1, {MAX_CLOSED_FORM_C}], got {c}"
        )));
    }
    let sign = |e: u32| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut acc = CompensatedSum::default();
    match ell {
        1 => {
            for j in 0..c {
                let denom = j as f64 - 2.0 * c as f64 + 1.0;
                acc.add(binomial(c - 1, j) * 2f64.powi(j as i32 + 1) * sign(c - j) / denom);
            }
        }
        2 => {
            // 2^{2c} · t_{2c-j-2} ~ 2^{j+2}: fold the power of two in per term.
            for j in 0..c {
                let m = 2 * c - j - 2;
                let scaled_tail = log2_tail(m) * 2f64.powi(2 * c as i32);
                acc.add(
                    binomial(c - 1, j) * sign(c - j - 1) / (2 * c - j - 1) as f64 * scaled_tail,
                );
            }
        }
        _ => {
            return Err(Error::domain(format!(
                "closed form only for ell in {{1, 2}}, got {ell}"
            )))
        }
    }
    let value = acc.value();
    // Alternating sum: rounding grows with the largest term.
    let bound = 16.0 * f64::EPSILON * binomial(c - 1, (c - 1) / 2) * 2f64.powi(c as i32 + 2);
    Ok(JValue {
        c: c as f64,
        ell,
        value,
        method: Method::ClosedForm,
        abs_error_bound: bound,
    })
}

/// `J_ℓ(c)` by the closed form when `c` is a small integer and `ℓ <= 2`,
/// otherwise by quadrature.
pub fn j_value(c: f64, ell: u32) -> Result<JValue> {
    check_c_ell(c, ell)?;
    if c.fract() == 0.0 && c <= 10.0 && ell <= 2 {
        j_closed_form(c as u32, ell)
    } else {
        j_quadrature(c, ell)
    }
}

/// `Γ(ℓ/2)` for integer `ℓ >= 1`, from `Γ(1) = 1`, `Γ(1/2) = √π` and
/// `Γ(x + 1) = x Γ(x)`.
pub fn gamma_half(ell: u32) -> f64 {
    assert!(ell >= 1);
    let (mut x, mut g) = if ell.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (0.5, PI.sqrt())
    };
    while x < ell as f64 / 2.0 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Limit of `E[(R_n/√n)^ℓ]`: `J_ℓ(c) / (2^{(ℓ-2)/2} Γ(ℓ/2))`.
pub fn moment_constant(c: f64, ell: u32) -> Result<f64> {
    let j = j_quadrature(c, ell)?;
    Ok(j.value / (2f64.powf((ell as f64 - 2.0) / 2.0) * gamma_half(ell)))
}

/// `K_ℓ = (ℓ + 1)/2^{(ℓ+1)/2} · J_{ℓ+1}(c)`.
pub fn k_constant(c: f64, ell: usize) -> Result<f64> {
    let ell1 = ell as u32 + 1;
    let j = j_quadrature(c, ell1)?;
    Ok(ell1 as f64 / 2f64.powf(ell1 as f64 / 2.0) * j.value)
}

/// Heuristic bounds on `|lim E[(X_n/√n)^2] - 1|`:
/// `(|(1-c)/2 · J_2(c)|, |(1-c) · J_2(c)|)`.
pub fn variance_bounds(c: f64) -> Result<(f64, f64)> {
    let j2 = j_value(c, 2)?.value;
    let rhs = ((1.0 - c) * j2).abs();
    Ok((0.5 * rhs, rhs))
}
