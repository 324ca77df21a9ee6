//! The `orrw` command-line tool.
//!
//! Every subcommand writes one CSV table: a `#` metadata line (tool version,
//! RNG algorithm, seed and the full argument list), a header row, then data.
//! Floats are printed in their shortest round-trip form, so re-reading a file
//! recovers every value bit for bit.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::exact::{self, Horizon};
use crate::montecarlo;
use crate::rng;
use crate::series;
use crate::walk::{self, Params};

/// Seed used when neither `--seed` nor `ORRW_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_190_101;
pub const SEED_ENV: &str = "ORRW_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "orrw",
    version,
    about = "Once-reinforced random walk on the integers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Reinforcement parameter c > 0.
    #[arg(
        long = "c",
        value_name = "F",
        conflicts_with = "gamma",
        allow_negative_numbers = true
    )]
    pub c: Option<f64>,
    /// Alternative parameterisation, c = exp(-gamma).
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub gamma: Option<f64>,
}

impl ParamArgs {
    fn params(&self) -> Result<Params> {
        match (self.c, self.gamma) {
            (Some(c), None) => Params::new(c),
            (None, Some(g)) => Params::from_gamma(g),
            _ => Err(Error::Usage(
                "exactly one of --c or --gamma is required".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file (default: stdout).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// Master seed (default: $ORRW_SEED, else 20190101).
    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, value_name = "U")]
    pub workers: Option<NonZeroUsize>,
}

impl SeedArgs {
    fn seed(&self) -> Result<u64> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var(SEED_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{SEED_ENV}={v} is not a u64"))),
            Err(_) => Ok(DEFAULT_SEED),
        }
    }

    fn workers(&self) -> NonZeroUsize {
        self.workers.unwrap_or_else(montecarlo::default_workers)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Quadrature,
    Closed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenFn {
    /// E[s^{S_k}]
    Sk,
    /// g_x(s) = E[s^{tau_x}], x given by --k
    G,
    /// G_x(s) = E[s^{T_x}], x given by --k
    #[value(name = "big-g")]
    BigG,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one path; one row per step.
    Simulate {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Exact law of R_n by dynamic programming.
    ExactRange {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Law of the simple-walk exit time tau_k.
    Tau {
        #[arg(long)]
        k: usize,
        /// Truncation horizon (default: automatic).
        #[arg(long)]
        nmax: Option<usize>,
        /// Print the probability mass function instead of a summary.
        #[arg(long)]
        pmf: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Law of the hitting time S_k.
    Sk {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        pmf: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Generating functions at a list of s values.
    Genfun {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<f64>,
        #[arg(long = "fn", value_enum, default_value = "sk")]
        function: GenFn,
        #[command(flatten)]
        out: Output,
    },
    /// The constants J_ell(c).
    Jconst {
        #[arg(long = "c", conflicts_with = "c_grid")]
        c: Option<f64>,
        /// Comma list of values or min:max:step ranges.
        #[arg(long = "c-grid")]
        c_grid: Option<String>,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long, value_enum, default_value = "quadrature")]
        method: MethodArg,
        #[command(flatten)]
        out: Output,
    },
    /// Exact E[(R_n/sqrt n)^l] next to its limit, l = 1..=ell.
    Moments {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Monte Carlo range moments and position variance.
    Mc {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        reps: u64,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: Output,
    },
    /// V[X_n/sqrt n] across c with its heuristic bounds.
    Figure1 {
        /// Comma list of values or min:max:step ranges.
        #[arg(long = "c-grid", default_value = "0.25:3:0.25")]
        c_grid: String,
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[arg(long, default_value_t = 10_000)]
        reps: u64,
        /// n = reps = 100000.
        #[arg(long)]
        full_scale: bool,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: Output,
    },
    /// H_ell(s)(1-s)^((3+ell)/2) against its limit K_ell.
    Tauber {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.99,0.999,0.9999")]
        s: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
}

/// Parses a comma-separated list whose items are single values or
/// `min:max:step` ranges (inclusive).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Usage(format!("bad number {s:?} in grid {spec:?}")))
    };
    let mut grid = Vec::new();
    for item in spec.split(',') {
        match item.split(':').collect::<Vec<_>>().as_slice() {
            [v] => grid.push(num(v)?),
            [lo, hi, step] => {
                let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
                if step.is_nan() || step <= 0.0 || hi < lo {
                    return Err(Error::Usage(format!(
                        "empty range {item:?} in grid {spec:?}"
                    )));
                }
                let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
                grid.extend((0..count).map(|i| lo + i as f64 * step));
            }
            _ => {
                return Err(Error::Usage(format!(
                    "grid items must be values or min:max:step, got {item:?}"
                )))
            }
        }
    }
    Ok(grid)
}

struct Table {
    meta: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(meta: String, header: &[&'static str]) -> Self {
        Table {
            meta,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write(&self, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "{}", self.meta)?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// CSV rendering of one value. Floats round-trip exactly; very small or
/// very large magnitudes switch to exponent notation.
trait Field {
    fn field(&self) -> String;
}

impl Field for f64 {
    fn field(&self) -> String {
        let m = self.abs();
        if m == 0.0 || !m.is_finite() || (1e-4..1e15).contains(&m) {
            self.to_string()
        } else {
            format!("{self:e}")
        }
    }
}

macro_rules! display_field {
    ($($t:ty),*) => {$(
        impl Field for $t {
            fn field(&self) -> String {
                self.to_string()
            }
        }
    )*};
}

display_field!(u32, u64, usize, i64, &str, String);

macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$(Field::field(&$x)),*] };
}

fn metadata(seed: Option<u64>, args: &[String]) -> String {
    let seed = seed.map_or_else(|| "-".to_string(), |s| s.to_string());
    format!(
        "# orrw {} rng={} seed={} args={}",
        env!("CARGO_PKG_VERSION"),
        rng::ALGORITHM_ID,
        seed,
        args.join(" ")
    )
}

fn run(command: Command, args: &[String]) -> Result<(Table, Option<PathBuf>)> {
    let meta = |seed: Option<u64>| metadata(seed, args);
    let out = match command {
        Command::Simulate { p, n, seed, out } => {
            let params = p.params()?;
            let seed = seed.seed()?;
            let path = walk::simulate_path(&params, n, seed)?;
            let mut t = Table::new(
                meta(Some(seed)),
                &["step", "position", "min", "max", "range"],
            );
            for s in path.states() {
                t.push(row![s.steps, s.position, s.min, s.max, s.range()]);
            }
            (t, out.out)
        }
        Command::ExactRange { p, n, out } => {
            let params = p.params()?;
            let table = exact::range_distribution(&params, n, 0)?;
            let mut t = Table::new(meta(None), &["c", "n", "r", "prob"]);
            for (r, prob) in table.dist.iter().filter(|&(_, p)| p > 0.0) {
                t.push(row![params.c(), n, r, prob]);
            }
            (t, out.out)
        }
        Command::Tau { k, nmax, pmf, out } => {
            if k == 0 {
                return Err(Error::Usage("--k must be >= 1".into()));
            }
            let horizon = nmax.map_or_else(Horizon::default, Horizon::Fixed);
            let d = exact::tau_distribution(k, horizon);
            let t = if pmf {
                let mut t = Table::new(meta(None), &["i", "m", "prob"]);
                for (m, p) in d.iter() {
                    t.push(row![k, m, p]);
                }
                t
            } else {
                let mut t = Table::new(meta(None), &["i", "nmax", "mean", "variance", "deficit"]);
                t.push(row![k, d.last_value(), d.mean(), d.variance(), d.deficit]);
                t
            };
            (t, out.out)
        }
        Command::Sk {
            p,
            k,
            nmax,
            pmf,
            out,
        } => {
            let params = p.params()?;
            if k == 0 {
                return Err(Error::Usage("--k must be >= 1".into()));
            }
            let horizon = nmax.map_or_else(Horizon::default, Horizon::Fixed);
            let d = exact::s_k_distribution(&params, k, horizon);
            let t = if pmf {
                let mut t = Table::new(meta(None), &["c", "k", "n", "prob"]);
                for (n, prob) in d.iter() {
                    t.push(row![params.c(), k, n, prob]);
                }
                t
            } else {
                let mut t = Table::new(
                    meta(None),
                    &["c", "k", "nmax", "mean", "variance", "deficit"],
                );
                t.push(row![
                    params.c(),
                    k,
                    d.last_value(),
                    d.mean(),
                    d.variance(),
                    d.deficit
                ]);
                t
            };
            (t, out.out)
        }
        Command::Genfun {
            p,
            k,
            s,
            function,
            out,
        } => {
            let header: &[&'static str] = match function {
                GenFn::Sk => &["s", "k", "value"],
                GenFn::G | GenFn::BigG => &["s", "x", "value"],
            };
            let mut t = Table::new(meta(None), header);
            for &s in &s {
                let v = match function {
                    GenFn::Sk => series::gen_s_k(&p.params()?, k, s)?,
                    GenFn::G => series::g(k as f64, s)?,
                    GenFn::BigG => series::G(k as f64, s, &p.params()?)?,
                };
                t.push(row![s, k, v]);
            }
            (t, out.out)
        }
        Command::Jconst {
            c,
            c_grid,
            ell,
            method,
            out,
        } => {
            let cs = match (c, c_grid) {
                (Some(c), None) => vec![c],
                (None, Some(g)) => parse_grid(&g)?,
                _ => {
                    return Err(Error::Usage(
                        "exactly one of --c or --c-grid is required".into(),
                    ))
                }
            };
            let mut t = Table::new(
                meta(None),
                &["c", "ell", "method", "value", "abs_error_bound"],
            );
            for c in cs {
                let j = match method {
                    MethodArg::Quadrature => asymptotics::j_quadrature(c, ell)?,
                    MethodArg::Closed => {
                        if c.fract() != 0.0 || c < 1.0 {
                            return Err(Error::domain(format!(
                                "closed form needs integer c, got {c}"
                            )));
                        }
                        asymptotics::j_closed_form(c as u32, ell)?
                    }
                };
                t.push(row![
                    j.c,
                    j.ell,
                    j.method.as_str(),
                    j.value,
                    j.abs_error_bound
                ]);
            }
            (t, out.out)
        }
        Command::Moments { p, n, ell, out } => {
            let params = p.params()?;
            let table = exact::range_distribution(&params, n, 0)?;
            let mut t = Table::new(meta(None), &["c", "n", "ell", "exact", "limit"]);
            for l in 1..=ell {
                let exact = table.moment(l as i32) / (n as f64).powf(l as f64 / 2.0);
                let limit = asymptotics::moment_constant(params.c(), l)?;
                t.push(row![params.c(), n, l, exact, limit]);
            }
            (t, out.out)
        }
        Command::Mc {
            p,
            n,
            reps,
            ell,
            seed,
            out,
        } => {
            let params = p.params()?;
            let master = seed.seed()?;
            let (ranges, pos) =
                montecarlo::estimate_all(&params, n, reps, ell, master, seed.workers())?;
            let mut t = Table::new(
                meta(Some(master)),
                &[
                    "statistic",
                    "c",
                    "n",
                    "ell",
                    "reps",
                    "seed",
                    "mean",
                    "stderr",
                ],
            );
            for e in ranges.iter().chain(std::iter::once(&pos)) {
                t.push(row![
                    e.statistic.as_str(),
                    e.c,
                    e.n,
                    e.ell,
                    e.reps,
                    e.seed,
                    e.mean,
                    e.stderr
                ]);
            }
            (t, out.out)
        }
        Command::Figure1 {
            c_grid,
            n,
            reps,
            full_scale,
            seed,
            out,
        } => {
            let (n, reps) = if full_scale {
                (100_000, 100_000)
            } else {
                (n, reps)
            };
            let master = seed.seed()?;
            let grid = parse_grid(&c_grid)?;
            let rows = montecarlo::figure1_table(&grid, n, reps, master, seed.workers())?;
            let t = figure1_csv(meta(Some(master)), &rows);
            (t, out.out)
        }
        Command::Tauber { p, ell, s, out } => {
            let params = p.params()?;
            let rows = series::tauberian_check(&params, ell, &s)?;
            let gaps: Vec<f64> = rows
                .iter()
                .map(|r| (r.scaled - r.k_constant).abs())
                .collect();
            if gaps.windows(2).any(|w| w[1] > w[0]) {
                eprintln!(
                    "warning: scaled H_{ell} is not monotonically approaching K_{ell} on this grid"
                );
            }
            let mut t = Table::new(meta(None), &["s", "ell", "scaled", "k_constant", "k_terms"]);
            for r in rows {
                t.push(row![r.s, ell, r.scaled, r.k_constant, r.k_terms]);
            }
            (t, out.out)
        }
    };
    Ok(out)
}

fn figure1_csv(meta: String, rows: &[montecarlo::Figure1Row]) -> Table {
    let mut t = Table::new(meta, &["c", "n", "reps", "var_hat", "stderr", "lhs", "rhs"]);
    for r in rows {
        t.push(row![r.c, r.n, r.reps, r.var_hat, r.stderr, r.lhs, r.rhs]);
    }
    t
}

/// Writes the position-variance table in the exact format of `orrw figure1`.
pub fn write_figure1(
    out: &mut dyn Write,
    rows: &[montecarlo::Figure1Row],
    seed: u64,
    args: &[String],
) -> Result<()> {
    figure1_csv(metadata(Some(seed), args), rows).write(out)
}

/// Runs the tool on `argv` (including the program name), writing to
/// `--out` or `stdout`. Returns the process exit status: 0 on success, 2 on
/// usage errors (including out-of-domain parameter values) and 1 on runtime
/// errors.
pub fn dispatch<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let echo = echo_args(&argv[1.min(argv.len())..]);
    let result = run(cli.command, &echo).and_then(|(table, path)| match path {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            table.write(&mut f)?;
            f.flush()?;
            Ok(())
        }
        None => table.write(stdout),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "orrw: {e}");
            match e {
                Error::Usage(_) | Error::Domain(_) => 2,
                _ => 1,
            }
        }
    }
}

/// Arguments as recorded in the metadata line. `--workers` is dropped since
/// it never changes the output.
fn echo_args(argv: &[OsString]) -> Vec<String> {
    let mut echo = Vec::with_capacity(argv.len());
    let mut skip_value = false;
    for a in argv.iter().map(|a| a.to_string_lossy().into_owned()) {
        if std::mem::take(&mut skip_value) {
            continue;
        }
        if a == "--workers" {
            skip_value = true;
        } else if !a.starts_with("--workers=") {
            echo.push(a);
        }
    }
    echo
}

pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    dispatch(argv, &mut out, &mut err)
}

/// A CSV written by this tool.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    /// The metadata line without its leading `#`.
    pub metadata: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Column `name` of every row, parsed as `f64`.
    pub fn floats(&self, name: &str) -> Result<Vec<f64>> {
        let i = self
            .column(name)
            .ok_or_else(|| Error::Usage(format!("no column {name:?}")))?;
        self.rows
            .iter()
            .map(|r| {
                r[i].parse::<f64>()
                    .map_err(|_| Error::Usage(format!("not a number: {:?}", r[i])))
            })
            .collect()
    }

    /// The argument list recorded in the metadata line.
    pub fn args(&self) -> Vec<String> {
        self.metadata
            .split_once(" args=")
            .map(|(_, a)| a.split_whitespace().map(str::to_string).collect())
            .unwrap_or_default()
    }
}

pub fn read_csv(mut input: impl BufRead) -> Result<CsvTable> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let metadata = first
        .strip_prefix('#')
        .ok_or_else(|| Error::Usage("missing '#' metadata line".into()))?
        .trim()
        .to_string();
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header = r.headers()?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|r| r.iter().map(str::to_string).collect()))
        .collect::<std::result::Result<Vec<Vec<String>>, _>>()?;
    Ok(CsvTable {
        metadata,
        header,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1").unwrap(), vec![1.0]);
        assert_eq!(parse_grid("0.5:2:0.5").unwrap(), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("0.25:3:0.25").unwrap().len(), 12);
        assert!(parse_grid("1:0:1").is_err());
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("a:2:1").is_err());
        assert_eq!(
            parse_grid("0.25, 1,2:3:0.5").unwrap(),
            vec![0.25, 1.0, 2.0, 2.5, 3.0]
        );
    }

    #[test]
    fn echo_drops_workers() {
        let argv: Vec<OsString> = ["mc", "--workers", "4", "--n", "3", "--workers=2"]
            .iter()
            .map(OsString::from)
            .collect();
        assert_eq!(echo_args(&argv), ["mc", "--n", "3"]);
    }

    #[test]
    fn metadata_records_args() {
        let m = metadata(Some(7), &["simulate".into(), "--n".into(), "3".into()]);
        assert!(m.starts_with("# orrw "));
        assert!(m.contains("seed=7"));
        assert!(m.ends_with("args=simulate --n 3"));
    }
}
