//! Exact laws of the range and of the hitting times.
//!
//! Three independent routes are provided and cross-checked in tests:
//!
//! * [`enumerate_paths`]: brute force over all `2^n` step sequences;
//! * [`range_distribution`] and [`x_moment`]: forward dynamic programming on
//!   the chain `(X_n - m_n, R_n)` (plus `m_n` for position moments);
//! * [`tau_distribution`], [`t_distribution`], [`s_k_distribution`]: the
//!   renewal decomposition of `S_k` into independent range-growth times `T_i`,
//!   each a compound-geometric sum of simple-walk exit times.
//!
//! All arithmetic is `f64`. Truncated laws carry their missing mass in
//! [`DiscreteDistribution::deficit`] and are never renormalised.

mod dist;
mod enumerate;
mod hitting;
mod range;

pub use dist::DiscreteDistribution;
pub use enumerate::{enumerate_paths, PathEnumeration, MAX_ENUMERATION_STEPS};
pub use hitting::{
    s_k_distribution, s_k_distributions, t_distribution, tau_distribution, Horizon, Truncation,
};
pub use range::{range_distribution, x_moment, RangeTable, MAX_RANGE_STEPS, MAX_X_MOMENT_STEPS};
