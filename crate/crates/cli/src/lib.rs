//! Command-line front end for `dn2-core`.
//!
//! Exit codes: `0` success, `1` a tolerance or identity check failed,
//! `2` usage or domain error.

pub mod record;
pub mod zexpr;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dn2_core::identities::{sweep_grid, sweep_point, ResidualReport};
use dn2_core::shen::{dn2, invariants_of, perimeter_walk, periods, phi, s2};
use dn2_core::weierstrass::wp_halfperiods;
use dn2_core::{CPoint, Modulus, PeriodMethod, PeriodPair, Route, Value};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use record::{render, Field, Format, Record};
use zexpr::ZExpr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default tolerance of `eval --route all`.
pub const ROUTE_TOL: f64 = 1e-11;
/// Default tolerance of `periods --method all`.
pub const METHOD_TOL: f64 = 1e-8;
/// Default tolerance on the imaginary part of perimeter samples.
pub const PERIMETER_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "dn2",
    version,
    about = "Evaluate the signature-four elliptic function dn2"
)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Override the tolerance used by the command's checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for pseudo-random sampling.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate dn2 at a point; on the real axis also s2 and phi.
    Eval(EvalArgs),
    /// Half-periods K and K' by one or all methods.
    Periods(PeriodsArgs),
    /// Invariants, midpoint values and half-periods of the coperiodic lattice.
    Lattice(KappaArg),
    /// Sweep the hypergeometric identities and period relations over a grid.
    Identities(IdentitiesArgs),
    /// Write dn2 samples as CSV (or JSON lines) for plotting.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct KappaArg {
    /// Modulus, 0 < kappa < 1.
    #[arg(long)]
    pub kappa: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub kappa: f64,
    /// Point, e.g. `0.37`, `0.3+0.4i`, `K`, `0.5K+iK'`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, value_enum, default_value_t = RouteArg::Sn)]
    pub route: RouteArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Sn,
    Wp,
    Phi,
    All,
}

#[derive(Debug, Args)]
pub struct PeriodsArgs {
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Elliptic)]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Integral,
    Elliptic,
    Hyper,
    All,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Grid spacing, 0 < step < 0.5.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Only print the per-identity summary rows.
    #[arg(long)]
    pub summary_only: bool,
    /// Shift the left-hand-side parameter of the hypergeometric identities.
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub perturb: f64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, value_enum)]
    pub region: Region,
    /// Number of samples (per side for `grid`).
    #[arg(long)]
    pub n: usize,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Arclength kept clear of the pole at both ends of the perimeter walk.
    #[arg(long, default_value_t = 0.05)]
    pub exclusion: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Region {
    /// `[0, 2K]` on the real axis.
    RealAxis,
    /// Counterclockwise walk `iK' -> 0 -> K -> K+iK' -> iK'`.
    Perimeter,
    /// `n × n` grid on the closed cell `[0, 2K] × [0, 2K']`.
    Grid,
    /// `n` seeded pseudo-random points in the open cell.
    Random,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dn2_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Records produced by a command plus the exit status it asks for.
#[derive(Debug)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub status: i32,
    /// Forces an encoding regardless of `--format`.
    pub format: Option<Format>,
}

impl Outcome {
    fn ok(records: Vec<Record>) -> Self {
        Outcome {
            records,
            status: EXIT_OK,
            format: None,
        }
    }

    fn checked(records: Vec<Record>, pass: bool) -> Self {
        Outcome {
            records,
            status: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
            format: None,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.tol.unwrap_or(ROUTE_TOL)),
        Command::Periods(a) => cmd_periods(a, cli.tol.unwrap_or(METHOD_TOL)),
        Command::Lattice(a) => cmd_lattice(a.kappa),
        Command::Identities(a) => cmd_identities(a, cli.tol),
        Command::Sample(a) => cmd_sample(a, cli),
    }
}

fn modulus(kappa: f64) -> Result<Modulus, CliError> {
    Ok(Modulus::new(kappa)?)
}

fn elliptic_periods(md: &Modulus) -> Result<PeriodPair, CliError> {
    Ok(periods(md, PeriodMethod::Elliptic)?)
}

fn pole_delta(a: Value<CPoint>, b: Value<CPoint>) -> f64 {
    match (a, b) {
        (Value::Finite(x), Value::Finite(y)) => (x - y).norm(),
        (Value::Pole, Value::Pole) => 0.0,
        _ => f64::INFINITY,
    }
}

pub fn cmd_eval(a: &EvalArgs, tol: f64) -> Result<Outcome, CliError> {
    let md = modulus(a.kappa)?;
    let expr = ZExpr::parse(&a.z).map_err(CliError::Usage)?;
    let p = if expr.needs_periods() {
        Some(elliptic_periods(&md)?)
    } else {
        None
    };
    let z = expr.resolve(p.as_ref());
    let real = z.im == 0.0;

    let mut r = Record::new()
        .with("kappa", a.kappa)
        .with("z_re", z.re)
        .with("z_im", z.im);
    let mut status = EXIT_OK;
    match a.route {
        RouteArg::All => {
            let routes: Vec<Route> = Route::ALL
                .into_iter()
                .filter(|&rt| real || rt != Route::Phi)
                .collect();
            let values = routes
                .iter()
                .map(|&rt| dn2(z, &md, rt))
                .collect::<Result<Vec<_>, _>>()?;
            for (rt, v) in routes.iter().zip(&values) {
                r.push_complex(&format!("dn2_{}", rt.name()), *v);
            }
            let mut worst = 0.0f64;
            for i in 0..routes.len() {
                for j in i + 1..routes.len() {
                    let d = pole_delta(values[i], values[j]);
                    worst = worst.max(d);
                    r.push(
                        format!("delta_{}_{}", routes[i].name(), routes[j].name()),
                        d,
                    );
                }
            }
            r.push("max_delta", worst);
            r.push("tol", tol);
            r.push("pass", worst <= tol);
            if worst > tol {
                status = EXIT_CHECK_FAILED;
            }
        }
        single => {
            let rt = match single {
                RouteArg::Sn => Route::Sn,
                RouteArg::Wp => Route::Wp,
                _ => Route::Phi,
            };
            r.push("route", rt.name());
            r.push_complex("dn2", dn2(z, &md, rt)?);
        }
    }
    if real {
        r.push("s2", s2(z.re, &md)?);
        r.push("phi", phi(z.re, &md)?);
    }
    Ok(Outcome {
        records: vec![r],
        status,
        format: None,
    })
}

pub fn cmd_periods(a: &PeriodsArgs, tol: f64) -> Result<Outcome, CliError> {
    let md = modulus(a.kappa)?;
    let single = |m: PeriodMethod| -> Result<Record, CliError> {
        let p = periods(&md, m)?;
        Ok(Record::new()
            .with("kappa", a.kappa)
            .with("method", m.name())
            .with("K", p.k)
            .with("K_prime", p.k_prime)
            .with("ratio", p.ratio()))
    };
    let m = match a.method {
        MethodArg::Integral => PeriodMethod::Integral,
        MethodArg::Elliptic => PeriodMethod::Elliptic,
        MethodArg::Hyper => PeriodMethod::Hyper,
        MethodArg::All => {
            let all = PeriodMethod::ALL
                .iter()
                .map(|&m| periods(&md, m))
                .collect::<Result<Vec<_>, _>>()?;
            let mut r = Record::new().with("kappa", a.kappa);
            for (m, p) in PeriodMethod::ALL.iter().zip(&all) {
                r.push(format!("K_{}", m.name()), p.k);
                r.push(format!("K_prime_{}", m.name()), p.k_prime);
                r.push(format!("ratio_{}", m.name()), p.ratio());
            }
            let spread = |f: fn(&PeriodPair) -> f64| {
                let v: Vec<f64> = all.iter().map(f).collect();
                let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
                hi - lo
            };
            let dk = spread(|p| p.k);
            let dkp = spread(|p| p.k_prime);
            r.push("max_delta_K", dk);
            r.push("max_delta_K_prime", dkp);
            r.push("tol", tol);
            let pass = dk <= tol && dkp <= tol;
            r.push("pass", pass);
            return Ok(Outcome::checked(vec![r], pass));
        }
    };
    Ok(Outcome::ok(vec![single(m)?]))
}

pub fn cmd_lattice(kappa: f64) -> Result<Outcome, CliError> {
    let md = modulus(kappa)?;
    let lat = invariants_of(&md)?;
    let hp = wp_halfperiods(&lat)?;
    let r = Record::new()
        .with("kappa", kappa)
        .with("g2", lat.g2)
        .with("g3", lat.g3)
        .with("delta", lat.delta)
        .with("e1", lat.e1)
        .with("e2", lat.e2)
        .with("e3", lat.e3)
        .with("k2", lat.m)
        .with("k", lat.m.sqrt())
        .with("K", hp.k)
        .with("K_prime", hp.k_prime);
    Ok(Outcome::ok(vec![r]))
}

fn report_record(kind: &str, r: &ResidualReport, pass: bool) -> Record {
    Record::new()
        .with("kind", kind)
        .with("identity", r.identity)
        .with("parameter", r.parameter)
        .with("lhs", r.lhs)
        .with("rhs", r.rhs)
        .with("residual", r.residual)
        .with("tol", r.tol)
        .with("pass", pass)
}

pub fn cmd_identities(a: &IdentitiesArgs, tol: Option<f64>) -> Result<Outcome, CliError> {
    let grid = sweep_grid(a.step)?;
    let per_point = grid
        .par_iter()
        .map(|&p| sweep_point(p, a.perturb))
        .collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<ResidualReport> = per_point
        .into_iter()
        .flatten()
        .map(|r| match tol {
            Some(t) => r.with_tol(t),
            None => r,
        })
        .collect();

    // Worst residual per identity, in first-seen order.
    let mut worst: Vec<ResidualReport> = Vec::new();
    for r in &reports {
        match worst.iter_mut().find(|w| w.identity == r.identity) {
            Some(w) if r.residual.abs() > w.residual.abs() => *w = *r,
            Some(_) => {}
            None => worst.push(*r),
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut records = Vec::new();
    if !a.summary_only {
        records.extend(reports.iter().map(|r| report_record("point", r, r.pass)));
    }
    records.extend(worst.iter().map(|r| {
        // The summary row passes only if every point of that identity did.
        let all_pass = reports
            .iter()
            .filter(|x| x.identity == r.identity)
            .all(|x| x.pass);
        report_record("worst", r, all_pass)
    }));
    Ok(Outcome::checked(records, pass))
}

fn sample_points(a: &SampleArgs, p: &PeriodPair, seed: u64) -> Vec<CPoint> {
    let n = a.n;
    let frac = |j: usize, n: usize| j as f64 / (n - 1) as f64;
    match a.region {
        Region::RealAxis => (0..n)
            .map(|j| CPoint::new(2.0 * p.k * frac(j, n), 0.0))
            .collect(),
        Region::Perimeter => perimeter_walk(p, n, a.exclusion),
        Region::Grid => (0..n)
            .flat_map(|j| {
                (0..n)
                    .map(move |l| CPoint::new(2.0 * p.k * frac(l, n), 2.0 * p.k_prime * frac(j, n)))
            })
            .collect(),
        Region::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let z = CPoint::new(
                    rng.gen_range(0.0..2.0 * p.k),
                    rng.gen_range(0.0..2.0 * p.k_prime),
                );
                if z.re > 0.0 && z.im > 0.0 {
                    out.push(z);
                }
            }
            out
        }
    }
}

pub fn cmd_sample(a: &SampleArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let md = modulus(a.kappa)?;
    if a.n < 2 {
        return Err(CliError::Usage(format!(
            "--n must be at least 2, got {}",
            a.n
        )));
    }
    if a.region == Region::Perimeter && !(a.exclusion >= 0.0) {
        return Err(CliError::Usage(format!(
            "--exclusion must be non-negative, got {}",
            a.exclusion
        )));
    }
    let p = elliptic_periods(&md)?;
    let points = sample_points(a, &p, cli.seed);
    let values = points
        .par_iter()
        .map(|&z| dn2(z, &md, Route::Sn))
        .collect::<Result<Vec<_>, _>>()?;

    let tol = cli.tol.unwrap_or(PERIMETER_TOL);
    let perimeter = a.region == Region::Perimeter;
    let mut rows = Vec::with_capacity(points.len());
    let (mut poles, mut max_im, mut monotone) = (0usize, 0.0f64, true);
    let mut prev: Option<f64> = None;
    for (z, v) in points.iter().zip(&values) {
        let mut r = Record::new().with("z_re", z.re).with("z_im", z.im);
        r.push_complex("dn2", *v);
        r.push("route", Route::Sn.name());
        match v {
            Value::Pole => poles += 1,
            Value::Finite(w) => max_im = max_im.max(w.im.abs()),
        }
        if perimeter {
            let step_ok = match (prev, v) {
                (None, Value::Finite(_)) => true,
                (Some(q), Value::Finite(w)) => w.re < q,
                _ => false,
            };
            monotone &= step_ok;
            prev = v.finite().map(|w| w.re);
            r.push("decreasing", step_ok);
        }
        rows.push(r);
    }

    let body_format = match cli.format {
        Format::Jsonl => Format::Jsonl,
        _ => Format::Csv,
    };
    let mut summary = Record::new()
        .with("kappa", a.kappa)
        .with("region", region_name(a.region))
        .with("rows", rows.len())
        .with("poles", poles);
    let mut pass = true;
    if perimeter {
        let real = max_im <= tol;
        pass = real && monotone;
        summary.push("max_abs_im", max_im);
        summary.push("tol", tol);
        summary.push("strictly_decreasing", monotone);
        summary.push("pass", pass);
    }
    match &a.out {
        Some(path) => {
            fs::write(path, render(&rows, body_format)).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            summary.push("out", path.display().to_string());
            Ok(Outcome::checked(vec![summary], pass))
        }
        // Without a file the samples themselves are the output.
        None => Ok(Outcome {
            format: Some(body_format),
            ..Outcome::checked(rows, pass)
        }),
    }
}

fn region_name(r: Region) -> &'static str {
    match r {
        Region::RealAxis => "real-axis",
        Region::Perimeter => "perimeter",
        Region::Grid => "grid",
        Region::Random => "random",
    }
}

/// Parses `args`, runs the command, prints its records and returns the exit
/// code. Diagnostics go to standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", render(&out.records, out.format.unwrap_or(cli.format)));
            out.status
        }
        Err(e) => {
            eprintln!("dn2: error: {e}");
            EXIT_USAGE
        }
    }
}
