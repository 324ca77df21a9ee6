//! Transition law, path simulation, hitting times and drift checks.

use crate::error::{Error, Result};
use crate::rng::Stream;

/// Longest path [`simulate_path`] will materialise.
pub const MAX_PATH_STEPS: u64 = 10_000_000;

/// Reinforcement parameter `c > 0`.
///
/// `c > 1` makes already-traversed edges more attractive, `c < 1` pushes the
/// walk towards fresh sites, and `c = 1` is the simple symmetric walk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    c: f64,
}

impl Params {
    pub fn new(c: f64) -> Result<Self> {
        if c.is_finite() && c > 0.0 {
            Ok(Params { c })
        } else {
            Err(Error::domain(format!("c must be finite and > 0, got {c}")))
        }
    }

    /// Parameterisation by the "hunger" `γ`, with `c = e^{-γ}`.
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::domain(format!("gamma must be finite, got {gamma}")));
        }
        Self::new((-gamma).exp())
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Probability of extending the range from an endpoint, `1 / (1 + c)`.
    #[inline]
    pub fn extend_prob(&self) -> f64 {
        1.0 / (1.0 + self.c)
    }

    /// Probability of stepping back inside from an endpoint, `c / (1 + c)`.
    #[inline]
    pub fn retreat_prob(&self) -> f64 {
        self.c / (1.0 + self.c)
    }
}

/// Sufficient statistic of the walk after `steps` steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct WalkState {
    pub position: i64,
    pub min: i64,
    pub max: i64,
    pub steps: u64,
}

impl WalkState {
    pub const ORIGIN: WalkState = WalkState {
        position: 0,
        min: 0,
        max: 0,
        steps: 0,
    };

    /// Checks `min <= position <= max`, `min <= 0 <= max` and
    /// `1 <= max - min <= steps` (the lower bound once `steps >= 1`).
    pub fn new(position: i64, min: i64, max: i64, steps: u64) -> Result<Self> {
        let s = WalkState {
            position,
            min,
            max,
            steps,
        };
        if s.is_valid() {
            Ok(s)
        } else {
            Err(Error::domain(format!("inconsistent walk state {s:?}")))
        }
    }

    pub fn is_valid(&self) -> bool {
        let range = self.max - self.min;
        self.min <= self.position
            && self.position <= self.max
            && self.min <= 0
            && 0 <= self.max
            && (range as u64) <= self.steps
            && (self.steps == 0 || range >= 1)
    }

    #[inline]
    pub fn range(&self) -> u64 {
        (self.max - self.min) as u64
    }

    /// Moves by `+1` or `-1` and updates the running extrema.
    #[inline]
    pub fn advance(&mut self, up: bool) {
        self.position += if up { 1 } else { -1 };
        self.max = self.max.max(self.position);
        self.min = self.min.min(self.position);
        self.steps += 1;
    }
}

/// Probabilities of the next step going up and down.
pub fn step_weights(state: &WalkState, params: &Params) -> (f64, f64) {
    let (extend, retreat) = (params.extend_prob(), params.retreat_prob());
    if state.steps == 0 || state.min == state.max {
        // Both neighbours unvisited.
        (0.5, 0.5)
    } else if state.position == state.max {
        (extend, retreat)
    } else if state.position == state.min {
        (retreat, extend)
    } else {
        (0.5, 0.5)
    }
}

/// Draws one step from `stream` and applies it to `state`.
#[inline]
pub fn step(state: &mut WalkState, params: &Params, stream: &mut Stream) {
    let (p_up, _) = step_weights(state, params);
    let up = stream.next_f64() < p_up;
    state.advance(up);
}

/// Runs `n` steps from the origin and returns the final state.
pub fn run(params: &Params, n: u64, stream: &mut Stream) -> WalkState {
    let mut state = WalkState::ORIGIN;
    for _ in 0..n {
        step(&mut state, params, stream);
    }
    state
}

#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub params: Params,
    pub positions: Vec<i64>,
    pub seed: u64,
}

impl Path {
    pub fn steps(&self) -> usize {
        self.positions.len().saturating_sub(1)
    }

    /// Walk states after each step `0..=n`.
    pub fn states(&self) -> impl Iterator<Item = WalkState> + '_ {
        let mut state = WalkState::ORIGIN;
        let mut first = true;
        self.positions.iter().map(move |&x| {
            if first {
                first = false;
            } else {
                state.advance(x > state.position);
            }
            state
        })
    }

    pub fn final_state(&self) -> WalkState {
        self.states().last().unwrap_or(WalkState::ORIGIN)
    }
}

/// Samples an `n`-step path from stream `seed` (see [`crate::rng`]).
pub fn simulate_path(params: &Params, n: u64, seed: u64) -> Result<Path> {
    if n > MAX_PATH_STEPS {
        return Err(Error::resource("path steps", n, MAX_PATH_STEPS));
    }
    let mut stream = Stream::new(seed);
    let mut state = WalkState::ORIGIN;
    let mut positions = Vec::with_capacity(n as usize + 1);
    positions.push(0);
    for _ in 0..n {
        step(&mut state, params, &mut stream);
        positions.push(state.position);
    }
    Ok(Path {
        params: *params,
        positions,
        seed,
    })
}

/// First times `S_1 < S_2 < ... < S_K` at which the range equals `k`,
/// where `K` is the final range. `S_k` is returned at index `k - 1`.
pub fn hitting_times(positions: &[i64]) -> Vec<u64> {
    let mut out = Vec::new();
    let Some(&start) = positions.first() else {
        return out;
    };
    let (mut lo, mut hi) = (start, start);
    for (n, &x) in positions.iter().enumerate().skip(1) {
        if x > hi {
            hi = x;
        } else if x < lo {
            lo = x;
        } else {
            continue;
        }
        out.push(n as u64);
    }
    out
}

/// Compensated one-step drifts of the two martingales
///
/// * `N_n = X_n - (1-c)/(1+c) · Σ_{k<n} (1{X_k = M_k} - 1{X_k = m_k})`,
/// * `N_n = X_n² - n - 2(1-c)/(1+c) · Σ_{k<n} |X_k| 1{X_k ∈ {m_k, M_k}}`,
///
/// i.e. `E[N_{n+1} - N_n | state]`. Both vanish for every state with
/// `steps >= 1` under [`step_weights`].
pub fn martingale_drift(state: &WalkState, params: &Params) -> (f64, f64) {
    let (p_up, p_down) = step_weights(state, params);
    let c = params.c();
    let kappa = (1.0 - c) / (1.0 + c);
    let x = state.position as f64;
    let at_max = state.position == state.max;
    let at_min = state.position == state.min;

    let mean_dx = p_up - p_down;
    let indicator = (at_max as i32 - at_min as i32) as f64;
    let drift_first = mean_dx - kappa * indicator;

    // E[X_{n+1}² - X_n²] = E[2 X ΔX + 1].
    let mean_dx2 = 2.0 * x * mean_dx + 1.0;
    let boundary = if at_max || at_min { x.abs() } else { 0.0 };
    let drift_second = mean_dx2 - 1.0 - 2.0 * kappa * boundary;
    (drift_first, drift_second)
}
