//! Once-reinforced random walk (ORRW) on ℤ.
//!
//! The walk steps to a neighbour with weight `c` if the edge to it has been
//! traversed before and weight `1` otherwise. On ℤ the visited set is always
//! the interval `[min, max]`, so the walk is driven entirely by
//! [`walk::WalkState`].
//!
//! The crate is organised around the range `R_n = max - min`:
//!
//! * [`walk`]: transition law, path simulation, hitting times and the
//!   compensated martingale drifts.
//! * [`exact`]: exact laws by brute-force enumeration, dynamic programming and
//!   compound-geometric convolution.
//! * [`series`]: closed-form generating functions of the hitting times and of
//!   the factorial range moments.
//! * [`asymptotics`]: the constants `J_ℓ(c)`, the limiting moments of
//!   `R_n / √n`, and the variance bounds for `X_n / √n`.
//! * [`montecarlo`]: reproducible parallel estimators.
//! * [`cli`]: the `orrw` command-line front-end.

pub mod accum;
pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod exact;
pub mod montecarlo;
pub mod rng;
pub mod series;
pub mod walk;

pub use error::{Error, Result};
pub use walk::Params;
