//! Reproducible Monte Carlo estimators.
//!
//! Replicate `r` runs on its own stream [`Stream::for_replicate`]`(seed, r)`
//! and reports its final `(R_n, X_n)`. Workers fill disjoint slices of one
//! replicate-indexed buffer, and statistics are reduced over that buffer in
//! replicate order, so results do not depend on the number of workers.

use std::num::NonZeroUsize;

use crate::accum::CompensatedSum;
use crate::asymptotics;
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::walk::{self, Params};

/// Cap on `reps · n`.
pub const MAX_WORK: u128 = 1 << 44;
/// Cap on `reps` (one buffer slot per replicate).
pub const MAX_REPS: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// `(R_n / √n)^ℓ`.
    RangeMoment,
    /// `X_n^2 / n`.
    PositionVariance,
}

impl Statistic {
    pub fn as_str(&self) -> &'static str {
        match self {
            Statistic::RangeMoment => "range_moment",
            Statistic::PositionVariance => "position_variance",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub statistic: Statistic,
    pub c: f64,
    pub n: u64,
    /// 0 for [`Statistic::PositionVariance`].
    pub ell: u32,
    pub reps: u64,
    pub seed: u64,
    pub mean: f64,
    /// `sample_std / √reps`.
    pub stderr: f64,
}

/// Final `(R_n, X_n)` of every replicate, in replicate order.
pub fn simulate_endpoints(
    params: &Params,
    n: u64,
    reps: u64,
    seed: u64,
    workers: NonZeroUsize,
) -> Result<Vec<(u64, i64)>> {
    if n == 0 {
        return Err(Error::domain("n must be >= 1"));
    }
    if reps < 2 {
        return Err(Error::domain("reps must be >= 2"));
    }
    if reps > MAX_REPS {
        return Err(Error::resource("reps", reps, MAX_REPS));
    }
    let work = reps as u128 * n as u128;
    if work > MAX_WORK {
        return Err(Error::resource("reps * n", work, MAX_WORK));
    }
    let mut out = vec![(0u64, 0i64); reps as usize];
    let chunk = out.len().div_ceil(workers.get()).max(1);
    std::thread::scope(|scope| {
        for (w, slice) in out.chunks_mut(chunk).enumerate() {
            let first = (w * chunk) as u64;
            scope.spawn(move || {
                for (i, slot) in slice.iter_mut().enumerate() {
                    let mut stream = Stream::for_replicate(seed, first + i as u64);
                    let state = walk::run(params, n, &mut stream);
                    *slot = (state.range(), state.position);
                }
            });
        }
    });
    Ok(out)
}

/// Mean and standard error of `values`, accumulated in order.
fn mean_stderr(values: impl Iterator<Item = f64> + Clone, count: usize) -> (f64, f64) {
    let n = count as f64;
    let mean = values.clone().collect::<CompensatedSum>().value() / n;
    let ss = values
        .map(|v| (v - mean) * (v - mean))
        .collect::<CompensatedSum>()
        .value();
    let var = ss / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn range_estimates(
    params: &Params,
    n: u64,
    seed: u64,
    ends: &[(u64, i64)],
    ell_max: u32,
) -> Vec<MomentEstimate> {
    let scale = (n as f64).sqrt();
    (1..=ell_max)
        .map(|ell| {
            let vals = ends
                .iter()
                .map(move |&(r, _)| (r as f64 / scale).powi(ell as i32));
            let (mean, stderr) = mean_stderr(vals, ends.len());
            MomentEstimate {
                statistic: Statistic::RangeMoment,
                c: params.c(),
                n,
                ell,
                reps: ends.len() as u64,
                seed,
                mean,
                stderr,
            }
        })
        .collect()
}

fn position_estimate(params: &Params, n: u64, seed: u64, ends: &[(u64, i64)]) -> MomentEstimate {
    let nf = n as f64;
    let vals = ends.iter().map(move |&(_, x)| (x as f64) * (x as f64) / nf);
    let (mean, stderr) = mean_stderr(vals, ends.len());
    MomentEstimate {
        statistic: Statistic::PositionVariance,
        c: params.c(),
        n,
        ell: 0,
        reps: ends.len() as u64,
        seed,
        mean,
        stderr,
    }
}

/// Estimates of `E[(R_n/√n)^ℓ]` for `ℓ = 1..=ell_max`.
pub fn estimate_range_moments(
    params: &Params,
    n: u64,
    reps: u64,
    ell_max: u32,
    seed: u64,
    workers: NonZeroUsize,
) -> Result<Vec<MomentEstimate>> {
    let ends = simulate_endpoints(params, n, reps, seed, workers)?;
    Ok(range_estimates(params, n, seed, &ends, ell_max))
}

/// Estimate of `V[X_n/√n]` through the raw second moment `E[X_n^2]/n`.
pub fn estimate_position_variance(
    params: &Params,
    n: u64,
    reps: u64,
    seed: u64,
    workers: NonZeroUsize,
) -> Result<MomentEstimate> {
    let ends = simulate_endpoints(params, n, reps, seed, workers)?;
    Ok(position_estimate(params, n, seed, &ends))
}

/// Both kinds of estimate from a single set of replicates.
pub fn estimate_all(
    params: &Params,
    n: u64,
    reps: u64,
    ell_max: u32,
    seed: u64,
    workers: NonZeroUsize,
) -> Result<(Vec<MomentEstimate>, MomentEstimate)> {
    let ends = simulate_endpoints(params, n, reps, seed, workers)?;
    Ok((
        range_estimates(params, n, seed, &ends, ell_max),
        position_estimate(params, n, seed, &ends),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Figure1Row {
    pub c: f64,
    pub n: u64,
    pub reps: u64,
    pub var_hat: f64,
    pub stderr: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Position-variance estimates across `c_grid`, each with its heuristic
/// bounds on `|V - 1|`. Every grid point uses the same master seed.
pub fn figure1_table(
    c_grid: &[f64],
    n: u64,
    reps: u64,
    seed: u64,
    workers: NonZeroUsize,
) -> Result<Vec<Figure1Row>> {
    if c_grid.is_empty() {
        return Err(Error::domain("c grid is empty"));
    }
    c_grid
        .iter()
        .map(|&c| {
            let params = Params::new(c)?;
            let est = estimate_position_variance(&params, n, reps, seed, workers)?;
            let (lhs, rhs) = asymptotics::variance_bounds(c)?;
            Ok(Figure1Row {
                c,
                n,
                reps,
                var_hat: est.mean,
                stderr: est.stderr,
                lhs,
                rhs,
            })
        })
        .collect()
}

/// Worker count from the environment (`std::thread::available_parallelism`).
pub fn default_workers() -> NonZeroUsize {
    std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}
