use crate::accum::{self, CompensatedSum};

/// Probability vector over the integers `offset, offset + 1, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDistribution {
    pub offset: i64,
    pub probs: Vec<f64>,
    /// `1 - Σ probs`: the mass beyond the truncation point.
    pub deficit: f64,
}

impl DiscreteDistribution {
    pub fn new(offset: i64, probs: Vec<f64>) -> Self {
        let deficit = 1.0 - accum::sum(probs.iter().copied());
        DiscreteDistribution {
            offset,
            probs,
            deficit,
        }
    }

    pub fn point_mass(at: i64) -> Self {
        Self::new(at, vec![1.0])
    }

    pub fn total(&self) -> f64 {
        1.0 - self.deficit
    }

    /// Largest value carried by `probs`.
    pub fn last_value(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    pub fn prob(&self, value: i64) -> f64 {
        usize::try_from(value - self.offset)
            .ok()
            .and_then(|i| self.probs.get(i).copied())
            .unwrap_or(0.0)
    }

    /// `P(V <= value)` from the stored mass.
    pub fn cdf(&self, value: i64) -> f64 {
        if value < self.offset {
            return 0.0;
        }
        let end = ((value - self.offset) as usize + 1).min(self.probs.len());
        accum::sum(self.probs[..end].iter().copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.offset + i as i64, p))
    }

    /// `Σ p_v v^power` over the stored mass.
    pub fn raw_moment(&self, power: i32) -> f64 {
        accum::sum(self.iter().map(|(v, p)| p * (v as f64).powi(power)))
    }

    pub fn mean(&self) -> f64 {
        self.raw_moment(1) / self.total()
    }

    /// Variance of the stored mass, renormalised by [`total`](Self::total).
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        accum::sum(self.iter().map(|(v, p)| p * (v as f64 - mu).powi(2))) / self.total()
    }

    /// `Σ p_v s^v` over the stored mass.
    pub fn generating_function(&self, s: f64) -> f64 {
        // Horner from the top keeps tiny tail terms from being swamped.
        let mut acc = 0.0;
        for &p in self.probs.iter().rev() {
            acc = acc * s + p;
        }
        acc * s.powi(self.offset as i32)
    }

    /// Truncated convolution: the law of `V + W` restricted to values
    /// `<= max_value`.
    pub fn convolve(&self, other: &Self, max_value: i64) -> Self {
        let offset = self.offset + other.offset;
        let natural = (self.probs.len() + other.probs.len()).saturating_sub(1);
        let len = ((max_value - offset + 1).max(0) as usize).min(natural);
        let mut probs = vec![0.0; len];
        for (m, slot) in probs.iter_mut().enumerate() {
            let lo = m.saturating_sub(other.probs.len().saturating_sub(1));
            let hi = m.min(self.probs.len().saturating_sub(1));
            if lo > hi || self.probs.is_empty() {
                continue;
            }
            let mut acc = CompensatedSum::default();
            for i in lo..=hi {
                acc.add(self.probs[i] * other.probs[m - i]);
            }
            *slot = acc.value();
        }
        Self::new(offset, probs)
    }

    /// Law of `V + shift`.
    pub fn shifted(mut self, shift: i64) -> Self {
        self.offset += shift;
        self
    }
}
