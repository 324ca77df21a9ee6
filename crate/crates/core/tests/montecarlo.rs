use std::f64::consts::LN_2;
use std::num::NonZeroUsize;

use orrw::exact::range_distribution;
use orrw::montecarlo::{
    estimate_all, estimate_position_variance, estimate_range_moments, figure1_table,
    simulate_endpoints, Statistic, MAX_REPS,
};
use orrw::{Error, Params};

fn p(c: f64) -> Params {
    Params::new(c).unwrap()
}

fn workers(k: usize) -> NonZeroUsize {
    NonZeroUsize::new(k).unwrap()
}

#[test]
fn range_mean_matches_exact_dp() {
    let params = p(1.0);
    let n = 1000;
    let exact = range_distribution(&params, n, 0).unwrap().moment(1) / (n as f64).sqrt();
    let est = &estimate_range_moments(&params, n as u64, 100_000, 1, 5, workers(2)).unwrap()[0];
    assert!(
        (est.mean - exact).abs() <= 3.0 * est.stderr,
        "{} vs {exact}",
        est.mean
    );
}

#[test]
fn short_horizon_gates() {
    for (c, n, seed) in [(0.5, 50, 1), (2.0, 200, 2), (5.0, 17, 3)] {
        let exact = range_distribution(&p(c), n, 0).unwrap().moment(1) / (n as f64).sqrt();
        let est =
            &estimate_range_moments(&p(c), n as u64, 1_000_000, 1, seed, workers(1)).unwrap()[0];
        assert!(
            (est.mean - exact).abs() <= 4.0 * est.stderr,
            "c = {c}, n = {n}"
        );
    }
}

#[test]
fn one_step_is_degenerate() {
    let est = estimate_range_moments(&p(0.3), 1, 50, 3, 8, workers(1)).unwrap();
    for (ell, e) in est.iter().enumerate() {
        assert_eq!(e.ell as usize, ell + 1);
        assert_eq!((e.mean, e.stderr), (1.0, 0.0));
        assert_eq!(e.statistic, Statistic::RangeMoment);
    }
    let v = estimate_position_variance(&p(0.3), 1, 50, 8, workers(1)).unwrap();
    assert_eq!((v.mean, v.stderr), (1.0, 0.0));
}

#[test]
fn second_range_moment_near_limit() {
    let est = estimate_range_moments(&p(1.0), 10_000, 10_000, 2, 13, workers(2)).unwrap();
    assert!(
        (est[1].mean / (4.0 * LN_2) - 1.0).abs() < 0.05,
        "{}",
        est[1].mean
    );
}

#[test]
fn position_variance_orders_around_one() {
    let n = 10_000;
    let reps = 10_000;
    let one = estimate_position_variance(&p(1.0), n, reps, 21, workers(2)).unwrap();
    assert!((one.mean - 1.0).abs() <= 3.0 * one.stderr);
    assert_eq!(one.statistic, Statistic::PositionVariance);
    assert!(
        estimate_position_variance(&p(2.0), n, reps, 22, workers(2))
            .unwrap()
            .mean
            < 1.0
    );
    assert!(
        estimate_position_variance(&p(0.5), n, reps, 23, workers(2))
            .unwrap()
            .mean
            > 1.0
    );
}

#[test]
fn results_do_not_depend_on_workers() {
    let base = simulate_endpoints(&p(1.7), 300, 1001, 77, workers(1)).unwrap();
    for k in [2, 3, 8, 2000] {
        assert_eq!(
            simulate_endpoints(&p(1.7), 300, 1001, 77, workers(k)).unwrap(),
            base
        );
    }
    let a = estimate_all(&p(0.8), 500, 999, 4, 3, workers(1)).unwrap();
    let b = estimate_all(&p(0.8), 500, 999, 4, 3, workers(5)).unwrap();
    assert_eq!(a, b);
    let other = simulate_endpoints(&p(1.7), 300, 1001, 78, workers(1)).unwrap();
    assert_ne!(other, base);
}

#[test]
fn stderr_halves_with_four_times_the_reps() {
    let small = estimate_position_variance(&p(1.0), 100, 20_000, 4, workers(1)).unwrap();
    let large = estimate_position_variance(&p(1.0), 100, 80_000, 4, workers(1)).unwrap();
    let ratio = small.stderr / large.stderr;
    assert!((ratio / 2.0 - 1.0).abs() < 0.2, "{ratio}");
}

#[test]
fn figure1_rows() {
    let rows = figure1_table(&[1.0], 400, 4000, 9, workers(2)).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].lhs, rows[0].rhs), (0.0, 0.0));
    assert!((rows[0].var_hat - 1.0).abs() <= 4.0 * rows[0].stderr);
    let rows = figure1_table(&[0.5, 1.0, 2.0], 10_000, 10_000, 31, workers(2)).unwrap();
    assert!(rows.windows(2).all(|w| w[1].var_hat < w[0].var_hat));
    let two = rows[2];
    let dev = (two.var_hat - 1.0).abs();
    assert!(0.5 * two.lhs <= dev && dev <= 1.5 * two.rhs);
    assert!(figure1_table(&[], 10, 10, 1, workers(1)).is_err());
    assert!(figure1_table(&[-1.0], 10, 10, 1, workers(1)).is_err());
}

#[test]
fn rejects_bad_sizes() {
    assert!(matches!(
        simulate_endpoints(&p(1.0), 10, 1, 0, workers(1)),
        Err(Error::Domain(_))
    ));
    assert!(simulate_endpoints(&p(1.0), 0, 10, 0, workers(1)).is_err());
    assert!(matches!(
        simulate_endpoints(&p(1.0), 10, MAX_REPS + 1, 0, workers(1)),
        Err(Error::Resource { .. })
    ));
    assert!(matches!(
        simulate_endpoints(&p(1.0), u64::MAX / 4, 10, 0, workers(1)),
        Err(Error::Resource { .. })
    ));
}
