//! Laws of `τ_i`, `T_i` and `S_k` through the renewal decomposition
//!
//! ```text
//! S_k = 1 + Σ_{i<k} T_i,    T_i = 1 + Σ_{j=1}^{Y_i} (1 + τ_i^j),
//! ```
//!
//! with `Y_i` geometric on `{0, 1, ...}` with success probability
//! `1 / (1 + c)` and `τ_i` the exit time of a simple walk from `(-1, i - 1)`
//! started at 0.

use super::DiscreteDistribution;
use crate::accum::CompensatedSum;
use crate::walk::Params;

/// Automatic choice of the truncation horizon: the smallest
/// `start · 2^j <= cap` whose deficit is below `tolerance`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    pub tolerance: f64,
    pub start: usize,
    pub cap: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            tolerance: 1e-10,
            start: 1 << 10,
            cap: 1 << 22,
        }
    }
}

/// Largest value kept in a truncated law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Horizon {
    Fixed(usize),
    Auto(Truncation),
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon::Auto(Truncation::default())
    }
}

impl From<usize> for Horizon {
    fn from(n_max: usize) -> Self {
        Horizon::Fixed(n_max)
    }
}

impl Horizon {
    /// Evaluates `law` at growing horizons until its deficit is acceptable.
    /// The cap result is returned even if it misses the tolerance.
    fn resolve<T>(self, law: impl Fn(usize) -> T, deficit: impl Fn(&T) -> f64) -> T {
        match self {
            Horizon::Fixed(n_max) => law(n_max),
            Horizon::Auto(t) => {
                let mut n_max = t.start.max(1);
                loop {
                    let out = law(n_max);
                    if deficit(&out) < t.tolerance || n_max >= t.cap {
                        return out;
                    }
                    n_max = (n_max * 2).min(t.cap);
                }
            }
        }
    }
}

fn tau_law(i: usize, n_max: usize) -> DiscreteDistribution {
    if i <= 1 {
        return DiscreteDistribution::point_mass(0);
    }
    // Transient states 0..=i-2; absorbing at -1 and i-1.
    let width = i - 1;
    let mut cur = vec![0.0; width];
    let mut nxt = vec![0.0; width];
    cur[0] = 1.0;
    let mut probs = vec![0.0; n_max + 1];
    for slot in probs.iter_mut().skip(1) {
        *slot = 0.5 * (cur[0] + cur[width - 1]);
        for (x, out) in nxt.iter_mut().enumerate() {
            let left = if x >= 1 { cur[x - 1] } else { 0.0 };
            let right = if x + 1 < width { cur[x + 1] } else { 0.0 };
            *out = 0.5 * (left + right);
        }
        std::mem::swap(&mut cur, &mut nxt);
    }
    DiscreteDistribution::new(0, probs)
}

/// Law of `τ_i` on `{0, ..., n_max}`. `τ_1 = 0`, `τ_2 = 1`, and
/// `E[τ_i] = i - 1` before truncation.
pub fn tau_distribution(i: usize, horizon: impl Into<Horizon>) -> DiscreteDistribution {
    horizon
        .into()
        .resolve(|n_max| tau_law(i, n_max), |d| d.deficit)
}

fn t_law(params: &Params, i: usize, n_max: usize) -> DiscreteDistribution {
    if n_max == 0 {
        return DiscreteDistribution::new(1, Vec::new());
    }
    // Values of Σ (1 + τ) needed: 0..=n_max - 1.
    let len = n_max;
    let tau = tau_law(i, len.saturating_sub(2));
    let mut excursion = vec![0.0; len];
    for (v, p) in tau.iter() {
        let j = v as usize + 1;
        if j < len {
            excursion[j] = p;
        }
    }
    let q = params.retreat_prob();
    let mut u = vec![0.0; len];
    u[0] = 1.0;
    for m in 1..len {
        let mut acc = CompensatedSum::default();
        for j in 1..=m {
            acc.add(excursion[j] * u[m - j]);
        }
        u[m] = q * acc.value();
    }
    let extend = params.extend_prob();
    DiscreteDistribution::new(1, u.into_iter().map(|x| extend * x).collect())
}

/// Law of `T_i = S_{i+1} - S_i` on `{1, ..., n_max}`, from the
/// compound-geometric renewal recurrence
/// `u_m = [m = 0] + q Σ_j P(1 + τ_i = j) u_{m-j}`, `q = c / (1 + c)`,
/// `P(T_i = 1 + m) = u_m / (1 + c)`.
pub fn t_distribution(
    params: &Params,
    i: usize,
    horizon: impl Into<Horizon>,
) -> DiscreteDistribution {
    horizon
        .into()
        .resolve(|n_max| t_law(params, i, n_max), |d| d.deficit)
}

fn s_laws(params: &Params, k_max: usize, n_max: usize) -> Vec<DiscreteDistribution> {
    let mut out = Vec::with_capacity(k_max);
    if k_max == 0 {
        return out;
    }
    let mut s = DiscreteDistribution::new(1, vec![if n_max >= 1 { 1.0 } else { 0.0 }]);
    if n_max == 0 {
        s.probs.clear();
        s.deficit = 1.0;
    }
    out.push(s.clone());
    for i in 1..k_max {
        let t = t_law(params, i, n_max);
        s = s.convolve(&t, n_max as i64);
        out.push(s.clone());
    }
    out
}

/// Law of `S_k` on `{k, ..., n_max}` (stored from offset `k`).
pub fn s_k_distribution(
    params: &Params,
    k: usize,
    horizon: impl Into<Horizon>,
) -> DiscreteDistribution {
    assert!(k >= 1, "S_k is defined for k >= 1");
    horizon.into().resolve(
        |n_max| s_laws(params, k, n_max).pop().expect("k >= 1"),
        |d| d.deficit,
    )
}

/// Laws of `S_1, ..., S_{k_max}` on a common horizon `n_max`.
pub fn s_k_distributions(params: &Params, k_max: usize, n_max: usize) -> Vec<DiscreteDistribution> {
    s_laws(params, k_max, n_max)
}
