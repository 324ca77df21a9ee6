use super::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::walk::{step_weights, Params, WalkState};

/// Hard cap on the brute-force horizon (`2^24` leaves).
pub const MAX_ENUMERATION_STEPS: usize = 24;

/// Exact laws at horizon `n` obtained by summing over every path.
#[derive(Clone, Debug)]
pub struct PathEnumeration {
    pub n: usize,
    /// Law of `R_n`, offset 0.
    pub range: DiscreteDistribution,
    pub x_second_moment: f64,
    /// `hitting[k - 1]` is the law of `S_k` restricted to `{k, ..., n}`;
    /// its deficit is `P(S_k > n)`.
    pub hitting: Vec<DiscreteDistribution>,
}

struct Acc {
    n: usize,
    range: Vec<f64>,
    x2: f64,
    hitting: Vec<Vec<f64>>,
}

impl Acc {
    fn visit(&mut self, state: WalkState, weight: f64, params: &Params) {
        if state.steps as usize == self.n {
            self.range[state.range() as usize] += weight;
            self.x2 += weight * (state.position * state.position) as f64;
            return;
        }
        let (p_up, p_down) = step_weights(&state, params);
        for (up, p) in [(true, p_up), (false, p_down)] {
            let mut next = state;
            next.advance(up);
            let w = weight * p;
            if next.range() > state.range() {
                self.hitting[next.range() as usize - 1][next.steps as usize] += w;
            }
            self.visit(next, w, params);
        }
    }
}

/// Enumerates all `2^n` paths, weighting each by the product of its step
/// probabilities.
pub fn enumerate_paths(params: &Params, n: usize) -> Result<PathEnumeration> {
    if n > MAX_ENUMERATION_STEPS {
        return Err(Error::resource(
            "enumeration steps",
            n as u64,
            MAX_ENUMERATION_STEPS as u64,
        ));
    }
    let mut acc = Acc {
        n,
        range: vec![0.0; n + 1],
        x2: 0.0,
        hitting: vec![vec![0.0; n + 1]; n],
    };
    acc.visit(WalkState::ORIGIN, 1.0, params);
    let hitting = acc
        .hitting
        .into_iter()
        .enumerate()
        .map(|(i, row)| DiscreteDistribution::new(i as i64 + 1, row[i + 1..].to_vec()))
        .collect();
    Ok(PathEnumeration {
        n,
        range: DiscreteDistribution::new(0, acc.range),
        x_second_moment: acc.x2,
        hitting,
    })
}
