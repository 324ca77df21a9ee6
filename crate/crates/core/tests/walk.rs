use std::num::NonZeroUsize;

use proptest::prelude::*;

use orrw::exact::enumerate_paths;
use orrw::montecarlo::estimate_range_moments;
use orrw::walk::{hitting_times, martingale_drift, simulate_path, step_weights, WalkState};
use orrw::Params;

fn p(c: f64) -> Params {
    Params::new(c).unwrap()
}

#[test]
fn hitting_time_examples() {
    assert_eq!(hitting_times(&[0, 1, 0, -1]), vec![1, 3]);
    assert_eq!(hitting_times(&[0, 1, 2, 3]), vec![1, 2, 3]);
    assert_eq!(hitting_times(&[0, -1, 0, 1]), vec![1, 3]);
    assert!(hitting_times(&[]).is_empty());
    assert!(hitting_times(&[0]).is_empty());
}

#[test]
fn short_paths() {
    let path = simulate_path(&p(2.0), 0, 7).unwrap();
    assert_eq!(path.positions, vec![0]);
    assert_eq!(path.final_state().range(), 0);
    for seed in 0..20 {
        assert_eq!(
            simulate_path(&p(0.3), 1, seed)
                .unwrap()
                .final_state()
                .range(),
            1
        );
    }
}

#[test]
fn drift_examples() {
    let at_max = WalkState::new(5, -2, 5, 30).unwrap();
    let (a, b) = martingale_drift(&at_max, &p(3.0));
    assert!(a.abs() < 1e-12 && b.abs() < 1e-12);
    let at_min = WalkState::new(-4, -4, 1, 9).unwrap();
    let (a, b) = martingale_drift(&at_min, &p(0.5));
    assert!(a.abs() < 1e-12 && b.abs() < 1e-12);
    let inside = WalkState::new(0, -4, 1, 9).unwrap();
    assert_eq!(martingale_drift(&inside, &p(9.0)), (0.0, 0.0));
}

#[test]
fn mean_range_at_n4_matches_enumeration() {
    let params = p(2.0);
    let exact = enumerate_paths(&params, 4).unwrap().range.mean();
    let est = &estimate_range_moments(&params, 4, 1_000_000, 1, 99, NonZeroUsize::MIN).unwrap()[0];
    // The estimate is of E[R_4 / 2].
    let (mean, stderr) = (2.0 * est.mean, 2.0 * est.stderr);
    assert!(
        (mean - exact).abs() <= 3.0 * stderr,
        "{mean} vs {exact} (se {stderr})"
    );
}

fn state_strategy() -> impl Strategy<Value = WalkState> {
    (-60i64..=0, 0i64..=60)
        .prop_filter("range >= 1", |(lo, hi)| hi > lo)
        .prop_flat_map(|(lo, hi)| (Just(lo), Just(hi), lo..=hi, 0u64..1000))
        .prop_map(|(lo, hi, x, extra)| WalkState::new(x, lo, hi, (hi - lo) as u64 + extra).unwrap())
}

proptest! {
    #[test]
    fn weights_form_a_law(state in state_strategy(), c in prop::sample::select(vec![0.1, 0.5, 1.0, 2.0, 5.0])) {
        let (up, down) = step_weights(&state, &p(c));
        prop_assert_eq!(up + down, 1.0);
        prop_assert!(up > 0.0 && up < 1.0 && down > 0.0 && down < 1.0);
        if c == 1.0 {
            prop_assert_eq!((up, down), (0.5, 0.5));
        }
    }

    #[test]
    fn drifts_vanish(state in state_strategy(), c in 0.05f64..20.0) {
        let (a, b) = martingale_drift(&state, &p(c));
        prop_assert!(a.abs() < 1e-12 && b.abs() < 1e-12);
    }

    #[test]
    fn paths_are_valid_and_reproducible(c in 0.05f64..20.0, n in 0u64..400, seed in any::<u64>()) {
        let path = simulate_path(&p(c), n, seed).unwrap();
        prop_assert_eq!(path.positions.len() as u64, n + 1);
        prop_assert_eq!(path.positions[0], 0);
        prop_assert!(path.positions.windows(2).all(|w| (w[1] - w[0]).abs() == 1));
        for s in path.states() {
            prop_assert!(s.is_valid());
            prop_assert!(s.range() <= s.steps);
            prop_assert!(s.steps == 0 || s.range() >= 1);
        }
        let again = simulate_path(&p(c), n, seed).unwrap();
        prop_assert_eq!(&path.positions, &again.positions);

        let hits = hitting_times(&path.positions);
        prop_assert_eq!(hits.len() as u64, path.final_state().range());
        prop_assert!(hits.windows(2).all(|w| w[0] < w[1]));
        if n >= 1 {
            prop_assert_eq!(hits[0], 1);
        }
        for (k, &t) in hits.iter().enumerate() {
            let before = &path.positions[..t as usize];
            let span = |ps: &[i64]| ps.iter().max().unwrap() - ps.iter().min().unwrap();
            prop_assert!(span(before) < k as i64 + 1);
            prop_assert_eq!(span(&path.positions[..=t as usize]), k as i64 + 1);
        }
    }
}
