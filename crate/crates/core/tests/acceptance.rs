//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::f64::consts::{LN_2, PI};
use std::num::NonZeroUsize;
use std::time::{Duration, Instant};

use orrw::asymptotics::{j_closed_form, j_quadrature, k_constant, moment_constant};
use orrw::exact::{
    enumerate_paths, range_distribution, s_k_distribution, s_k_distributions, x_moment, Horizon,
    Truncation,
};
use orrw::series::{gen_s_k, h_ell};
use orrw::walk::{martingale_drift, WalkState};
use orrw::{cli, montecarlo, Params};

const FIGURE1_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 3.0];
const FIGURE1_N: u64 = 10_000;
const FIGURE1_REPS: u64 = 10_000;
const FIGURE1_SEED: u64 = cli::DEFAULT_SEED;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn p(c: f64) -> Params {
    Params::new(c).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn closed_form_constants() -> Outcome {
    let j1 = j_quadrature(1.0, 1).map_err(|e| e.to_string())?;
    let j2 = j_quadrature(1.0, 2).map_err(|e| e.to_string())?;
    let e1 = (j1.value - 2.0).abs();
    let e2 = (j2.value - 4.0 * LN_2).abs();
    check(
        e1 <= 1e-10 && e2 <= 1e-10,
        format!(
            "J_1(1) = {} (err {e1:.1e}), J_2(1) = {} (err {e2:.1e})",
            j1.value, j2.value
        ),
    )
}

fn closed_form_vs_quadrature() -> Outcome {
    let mut worst = (0.0f64, 0, 0);
    for c in 1..=10u32 {
        for ell in 1..=2 {
            let exact = j_closed_form(c, ell).map_err(|e| e.to_string())?.value;
            let quad = j_quadrature(c as f64, ell)
                .map_err(|e| e.to_string())?
                .value;
            let err = (exact - quad).abs();
            if err > worst.0 {
                worst = (err, c, ell);
            }
        }
    }
    check(
        worst.0 <= 1e-9,
        format!(
            "max |closed - quad| = {:.1e} at c = {}, ell = {}",
            worst.0, worst.1, worst.2
        ),
    )
}

fn vallois_identities() -> Outcome {
    let params = p(1.0);
    let horizon = Horizon::Auto(Truncation {
        tolerance: 1e-13,
        ..Truncation::default()
    });
    let mut worst = (0.0f64, 0);
    for k in 1..=20usize {
        let law = s_k_distribution(&params, k, horizon);
        let kf = k as f64;
        let mean = kf * (kf + 1.0) / 2.0;
        let var = (kf - 1.0) * kf * (kf + 1.0) * (kf + 2.0) / 12.0;
        let err = (law.mean() - mean).abs().max((law.variance() - var).abs());
        if err > worst.0 {
            worst = (err, k);
        }
    }
    check(
        worst.0 <= 1e-6,
        format!("max moment error {:.1e} (k = {})", worst.0, worst.1),
    )
}

fn feller_asymptotics() -> Outcome {
    let n = 10_000;
    let t = range_distribution(&p(1.0), n, 0).map_err(|e| e.to_string())?;
    let m1 = t.moment(1) / (n as f64).sqrt();
    let m2 = t.moment(2) / n as f64;
    let r1 = (m1 / (8.0 / PI).sqrt() - 1.0).abs();
    let r2 = (m2 / (4.0 * LN_2) - 1.0).abs();
    check(
        r1 <= 0.02 && r2 <= 0.02,
        format!(
            "E[R]/sqrt(n) = {m1:.5} ({:.2}%), E[R^2]/n = {m2:.5} ({:.2}%)",
            100.0 * r1,
            100.0 * r2
        ),
    )
}

fn moment_constant_c2() -> Outcome {
    let n = 10_000;
    let t = range_distribution(&p(2.0), n, 0).map_err(|e| e.to_string())?;
    let m1 = t.moment(1) / (n as f64).sqrt();
    let limit = moment_constant(2.0, 1).map_err(|e| e.to_string())?;
    let rel = (m1 / limit - 1.0).abs();
    check(
        rel <= 0.03,
        format!("E[R]/sqrt(n) = {m1:.5} vs {limit:.5} ({:.2}%)", 100.0 * rel),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for c in [0.5, 1.0, 2.0, 4.0] {
        let params = p(c);
        for n in 1..=12 {
            let brute = enumerate_paths(&params, n).map_err(|e| e.to_string())?;
            let dp = range_distribution(&params, n, 0).map_err(|e| e.to_string())?;
            for r in 0..=n as i64 {
                worst = worst.max((brute.range.prob(r) - dp.dist.prob(r)).abs());
            }
            let x2 = x_moment(&params, n).map_err(|e| e.to_string())?;
            worst = worst.max((brute.x_second_moment - x2).abs());
        }
    }
    check(worst <= 1e-12, format!("max discrepancy {worst:.1e}"))
}

fn generating_function_identity() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for c in [0.5, 1.0, 2.0] {
        let params = p(c);
        for k in 1..=15 {
            let law = s_k_distribution(&params, k, Horizon::default());
            for s in [0.3, 0.7, 0.95] {
                let closed = gen_s_k(&params, k, s).map_err(|e| e.to_string())?;
                let series = law.generating_function(s);
                worst = worst.max((closed - series).abs() - 1e-9 - law.deficit);
            }
        }
    }
    check(
        worst <= 0.0,
        format!("max excess over 1e-9 + deficit: {worst:.1e}"),
    )
}

fn h0_scaling() -> Outcome {
    let s = 1.0 - 1e-4;
    let h = h_ell(&p(1.0), 0, s, None).map_err(|e| e.to_string())?;
    let scaled = h.value * (1.0 - s).powf(1.5);
    let k0 = k_constant(1.0, 0).map_err(|e| e.to_string())?;
    let rel = (scaled / k0 - 1.0).abs();
    check(
        rel <= 0.02,
        format!(
            "H_0 (1-s)^1.5 = {scaled:.5} vs {k0:.5} ({:.2}%, {} terms)",
            100.0 * rel,
            h.k_terms
        ),
    )
}

fn martingale_drifts() -> Outcome {
    let mut worst = 0.0f64;
    let mut states = 0usize;
    for c in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let params = p(c);
        for min in -50i64..=0 {
            for max in 0i64..=50 {
                if max == min {
                    continue;
                }
                for x in min..=max {
                    let state = WalkState::new(x, min, max, (max - min) as u64).unwrap();
                    let (a, b) = martingale_drift(&state, &params);
                    worst = worst.max(a.abs()).max(b.abs());
                    states += 1;
                }
            }
        }
    }
    check(
        worst <= 1e-12,
        format!("max |drift| = {worst:.1e} over {states} states"),
    )
}

fn hitting_time_identity() -> Outcome {
    let n_max = 200;
    let mut worst = 0.0f64;
    for c in [0.5, 1.0, 2.0] {
        let params = p(c);
        let laws = s_k_distributions(&params, n_max + 1, n_max);
        for n in 1..=n_max {
            let t = range_distribution(&params, n, 0).map_err(|e| e.to_string())?;
            for k in 1..=n + 1 {
                let lhs = t.tail(k as i64);
                let rhs = laws[k - 1].cdf(n as i64);
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    check(
        worst <= 1e-10,
        format!("max |P(R_n >= k) - P(S_k <= n)| = {worst:.1e}"),
    )
}

fn figure1(workers: usize) -> Result<Vec<montecarlo::Figure1Row>, String> {
    montecarlo::figure1_table(
        &FIGURE1_GRID,
        FIGURE1_N,
        FIGURE1_REPS,
        FIGURE1_SEED,
        NonZeroUsize::new(workers).unwrap(),
    )
    .map_err(|e| e.to_string())
}

fn figure1_reproduction() -> Outcome {
    let rows = figure1(1)?;
    let decreasing = rows.windows(2).all(|w| w[1].var_hat < w[0].var_hat);
    let at = |c: f64| rows.iter().find(|r| r.c == c).unwrap();
    let one = at(1.0);
    let z = (one.var_hat - 1.0).abs() / one.stderr;
    let envelope = [0.5, 2.0].iter().all(|&c| {
        let r = at(c);
        let dev = (r.var_hat - 1.0).abs();
        (0.5 * r.lhs..=1.5 * r.rhs).contains(&dev)
    });
    let values: Vec<String> = rows.iter().map(|r| format!("{:.4}", r.var_hat)).collect();
    check(
        decreasing && z <= 3.0 && envelope,
        format!(
            "var_hat = [{}], decreasing = {decreasing}, |V(1) - 1| = {z:.2} se, envelope = {envelope}",
            values.join(", ")
        ),
    )
}

fn figure1_csv(workers: usize) -> Result<Vec<u8>, String> {
    let argv = [
        "orrw".to_string(),
        "figure1".into(),
        "--c-grid".into(),
        "0.25,0.5,1,2,3".into(),
        "--n".into(),
        FIGURE1_N.to_string(),
        "--reps".into(),
        FIGURE1_REPS.to_string(),
        "--seed".into(),
        FIGURE1_SEED.to_string(),
        "--workers".into(),
        workers.to_string(),
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    match cli::dispatch(argv, &mut out, &mut err) {
        0 => Ok(out),
        code => Err(format!("exit {code}: {}", String::from_utf8_lossy(&err))),
    }
}

fn determinism() -> Outcome {
    let a = figure1_csv(1)?;
    let b = figure1_csv(4)?;
    check(
        a == b,
        format!(
            "{} bytes with 1 worker, {} bytes with 4, identical = {}",
            a.len(),
            b.len(),
            a == b
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "closed-form constants",
            closed_form_constants,
            Duration::from_secs(1),
        ),
        (
            "closed form vs quadrature",
            closed_form_vs_quadrature,
            Duration::from_secs(5),
        ),
        (
            "S_k mean and variance at c = 1",
            vallois_identities,
            Duration::from_secs(30),
        ),
        (
            "range moments at c = 1, n = 10^4",
            feller_asymptotics,
            Duration::from_secs(60),
        ),
        (
            "range mean at c = 2, n = 10^4",
            moment_constant_c2,
            Duration::from_secs(60),
        ),
        (
            "oracle equivalence, n <= 12",
            oracle_equivalence,
            Duration::from_secs(60),
        ),
        (
            "generating function of S_k",
            generating_function_identity,
            Duration::from_secs(30),
        ),
        (
            "H_0 scaling at s = 1 - 1e-4",
            h0_scaling,
            Duration::from_secs(30),
        ),
        (
            "martingale drifts",
            martingale_drifts,
            Duration::from_secs(5),
        ),
        (
            "hitting-time identity, n <= 200",
            hitting_time_identity,
            Duration::from_secs(30),
        ),
        (
            "position variance table",
            figure1_reproduction,
            Duration::from_secs(600),
        ),
        (
            "determinism across worker counts",
            determinism,
            Duration::from_secs(1200),
        ),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) => (elapsed <= *budget, d),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.2}s / {}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs(),
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
