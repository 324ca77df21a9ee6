//! Forward DP for the range.
//!
//! The pair `(d, r) = (X_n - m_n, R_n)` is a Markov chain: the walk is at its
//! minimum iff `d = 0`, at its maximum iff `d = r`, and otherwise moves like a
//! simple symmetric walk. Row `r` of the table holds `P(d, r)` for
//! `d = 0..=r`. Rows whose total mass drops below [`PRUNE_MASS`] at the
//! edges of the occupied band are dropped and their mass is booked as
//! deficit, which keeps the work near `O(n^2)` instead of `O(n^3)`.

use super::DiscreteDistribution;
use crate::accum;
use crate::error::{Error, Result};
use crate::walk::Params;

pub const MAX_RANGE_STEPS: usize = 100_000;
pub const MAX_X_MOMENT_STEPS: usize = 300;

/// Largest number of live `(d, r)` cells the range DP will hold.
const MAX_CELLS: usize = 60_000_000;

/// Rows lighter than this at either edge of the band are pruned.
const PRUNE_MASS: f64 = 1e-22;

#[derive(Clone, Debug)]
pub struct RangeTable {
    pub n: usize,
    pub c: f64,
    /// Law of `R_n`, offset 0. The deficit is the pruned mass.
    pub dist: DiscreteDistribution,
    /// `E[R_n (R_n + 1) ... (R_n + ℓ)]` for `ℓ = 0..=ℓ_max`.
    pub factorial_moments: Vec<f64>,
}

impl RangeTable {
    /// `E[R_n^power]`.
    pub fn moment(&self, power: i32) -> f64 {
        self.dist.raw_moment(power)
    }

    /// `P(R_n >= k)`.
    pub fn tail(&self, k: i64) -> f64 {
        accum::sum(self.dist.iter().filter(|&(r, _)| r >= k).map(|(_, p)| p))
    }
}

/// Weight with which the mass at `d` moves to an inside neighbour.
#[inline]
fn inward_weight(d: usize, r: usize, retreat: f64) -> f64 {
    if d == 0 || d == r {
        retreat
    } else {
        0.5
    }
}

/// Exact law of `R_n` and its rising factorial moments up to `ell_max`.
pub fn range_distribution(params: &Params, n: usize, ell_max: usize) -> Result<RangeTable> {
    if n == 0 {
        return Err(Error::domain("range_distribution needs n >= 1"));
    }
    if n > MAX_RANGE_STEPS {
        return Err(Error::resource(
            "range steps",
            n as u64,
            MAX_RANGE_STEPS as u64,
        ));
    }
    let extend = params.extend_prob();
    let retreat = params.retreat_prob();

    // After the first step: d in {0, 1} with r = 1, each with mass 1/2.
    let mut rows: Vec<Vec<f64>> = vec![Vec::new(), vec![0.5, 0.5]];
    let mut next: Vec<Vec<f64>> = vec![Vec::new(), vec![0.0; 2]];
    let (mut lo, mut hi) = (1usize, 1usize);
    let mut pruned = 0.0;
    let mut scaled: Vec<f64> = Vec::new();

    for _ in 1..n {
        let new_hi = hi + 1;
        if rows.len() <= new_hi {
            rows.push(vec![0.0; new_hi + 1]);
            next.push(vec![0.0; new_hi + 1]);
        }
        let cells: usize = (lo..=new_hi).map(|r| r + 1).sum();
        if cells > MAX_CELLS {
            return Err(Error::resource(
                "range DP cells",
                cells as u64,
                MAX_CELLS as u64,
            ));
        }
        for r in lo..=new_hi {
            let out = &mut next[r];
            out.iter_mut().for_each(|v| *v = 0.0);
            if r <= hi {
                let row = &rows[r];
                scaled.clear();
                scaled.extend(
                    row.iter()
                        .enumerate()
                        .map(|(d, &p)| p * inward_weight(d, r, retreat)),
                );
                // Moves that stay in the range: d -> d ± 1.
                for d in 1..=r {
                    out[d] += scaled[d - 1];
                }
                for d in 0..r {
                    out[d] += scaled[d + 1];
                }
            }
            if r > lo {
                // Extensions from row r - 1: a new minimum keeps d = 0, a new
                // maximum lands on d = r.
                let below = &rows[r - 1];
                out[0] += extend * below[0];
                out[r] += extend * below[r - 1];
            }
        }
        std::mem::swap(&mut rows, &mut next);
        hi = new_hi;

        while lo < hi {
            let m = accum::sum(rows[lo].iter().copied());
            if m >= PRUNE_MASS {
                break;
            }
            pruned += m;
            rows[lo].iter_mut().for_each(|v| *v = 0.0);
            lo += 1;
        }
        while hi > lo {
            let m = accum::sum(rows[hi].iter().copied());
            if m >= PRUNE_MASS {
                break;
            }
            pruned += m;
            rows[hi].iter_mut().for_each(|v| *v = 0.0);
            hi -= 1;
        }
    }

    let mut probs = vec![0.0; hi + 1];
    for r in lo..=hi {
        probs[r] = accum::sum(rows[r].iter().copied());
    }
    let mut dist = DiscreteDistribution::new(0, probs);
    // Reported deficit is the mass actually discarded; 1 - Σ only differs
    // from it by rounding.
    if pruned > dist.deficit.abs() {
        dist.deficit = pruned;
    }
    let factorial_moments = (0..=ell_max)
        .map(|ell| {
            accum::sum(dist.iter().map(|(r, p)| {
                let rising: f64 = (0..=ell as i64).map(|j| (r + j) as f64).product();
                p * rising
            }))
        })
        .collect();
    Ok(RangeTable {
        n,
        c: params.c(),
        dist,
        factorial_moments,
    })
}

/// Exact `E[X_n^2]` from the DP on `(d, r, -m_n)`.
pub fn x_moment(params: &Params, n: usize) -> Result<f64> {
    if n > MAX_X_MOMENT_STEPS {
        return Err(Error::resource(
            "x_moment steps",
            n as u64,
            MAX_X_MOMENT_STEPS as u64,
        ));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let extend = params.extend_prob();
    let retreat = params.retreat_prob();

    // Row r is a (r + 1) x (r + 1) block indexed [j][d] with j = -m_n.
    let block = |r: usize| vec![0.0; (r + 1) * (r + 1)];
    let mut rows: Vec<Vec<f64>> = vec![Vec::new(), block(1)];
    // X_1 = +1: d = 1, j = 0.  X_1 = -1: d = 0, j = 1.
    rows[1][1] = 0.5;
    rows[1][2] = 0.5;
    let mut next: Vec<Vec<f64>> = vec![Vec::new(), block(1)];

    for t in 1..n {
        rows.push(block(t + 1));
        next.push(block(t + 1));
        for r in 1..=t + 1 {
            let w = r + 1;
            let out = &mut next[r];
            out.iter_mut().for_each(|v| *v = 0.0);
            if r <= t {
                let cur = &rows[r];
                for j in 0..=r {
                    let src = &cur[j * w..(j + 1) * w];
                    let dst = &mut out[j * w..(j + 1) * w];
                    for d in 0..=r {
                        let p = src[d] * inward_weight(d, r, retreat);
                        if d >= 1 {
                            dst[d - 1] += p;
                        }
                        if d < r {
                            dst[d + 1] += p;
                        }
                    }
                }
            }
            if r >= 2 {
                let below = &rows[r - 1];
                let wb = r;
                for j in 0..r {
                    // New maximum: d = r, j unchanged.
                    out[j * w + r] += extend * below[j * wb + (r - 1)];
                    // New minimum: d = 0, j + 1.
                    out[(j + 1) * w] += extend * below[j * wb];
                }
            }
        }
        std::mem::swap(&mut rows, &mut next);
    }

    let mut acc = accum::CompensatedSum::default();
    for (r, row) in rows.iter().enumerate().skip(1) {
        let w = r + 1;
        for j in 0..=r {
            for d in 0..=r {
                let x = d as f64 - j as f64;
                acc.add(row[j * w + d] * x * x);
            }
        }
    }
    Ok(acc.value())
}
