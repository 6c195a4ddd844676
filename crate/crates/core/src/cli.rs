//! Command-line experiment runner. Every subcommand writes plain CSV (and
//! PGM for stability maps) into an output directory.
//!
//! Exit codes: 0 success, 2 flag or config error, 3 numerical failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::estimators::estimator_table;
use crate::euler::{reference_problems, RiemannProblem};
use crate::output::sig9;
use crate::schemes1d::{advect_square_wave, BetaSpec, PerturbationSpec, INSTABILITY_THRESHOLD};
use crate::vonneumann::{
    region_area, stability_limit_1d_numeric, stability_map_2d, DEFAULT_ANGLES, DEFAULT_GRID,
    DEFAULT_TOLERANCE,
};

pub const THREADS_ENV: &str = "WAVEBOUND_THREADS";

#[derive(Debug, Parser)]
#[command(name = "wavebound", version, about = "Wave-speed bound and stability experiments")]
pub struct Cli {
    /// Directory receiving the output files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and estimated maximal wave speeds for a list of Riemann problems.
    RiemannTable(RiemannTableArgs),
    /// Square-wave advection on the periodic unit interval.
    Advect1d(Advect1dArgs),
    /// Analytic and numerical 1D stability limits of perturbed upwind schemes.
    Stability1d(Stability1dArgs),
    /// 2D stability maps over Courant-number pairs.
    Stability2d(Stability2dArgs),
    /// beta(c) for the classical schemes and FORCE-alpha.
    BetaCurves(BetaCurvesArgs),
    /// Stability limit of FORCE-alpha as a function of alpha.
    ForceAlpha(ForceAlphaArgs),
}

#[derive(Debug, Args)]
pub struct RiemannTableArgs {
    /// Problem list; the seven built-in shock-tube problems when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Advect1dArgs {
    /// Number, scheme name (upwind, lw, lf, force, gc, ftcs) or force-alpha:<alpha>.
    #[arg(long, default_value = "1.4142135623730951")]
    pub beta: String,
    #[arg(long, default_value_t = 0.7)]
    pub c: f64,
    #[arg(long = "t-out", default_value_t = 4.0)]
    pub t_out: f64,
    #[arg(long, default_value_t = 100)]
    pub cells: usize,
}

#[derive(Debug, Args)]
pub struct Stability1dArgs {
    /// Number of perturbation samples on [0, 1].
    #[arg(long, default_value_t = 101)]
    pub eps_samples: usize,
    #[arg(long, default_value_t = 512)]
    pub c_resolution: usize,
    #[arg(long, default_value_t = DEFAULT_ANGLES)]
    pub angles: usize,
}

#[derive(Debug, Args)]
pub struct Stability2dArgs {
    /// Comma-separated beta specs.
    #[arg(long, value_delimiter = ',', default_values_t = [1.25, 1.5, 1.75, 0.75, 0.5, 0.25].map(|b| b.to_string()))]
    pub beta: Vec<String>,
    /// Comma-separated FORCE-alpha parameters, added to the beta list.
    #[arg(long, value_delimiter = ',')]
    pub force_alpha: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = DEFAULT_ANGLES)]
    pub angles: usize,
    #[arg(long, default_value_t = 1.0)]
    pub cx_max: f64,
    #[arg(long, default_value_t = 1.0)]
    pub cy_max: f64,
}

#[derive(Debug, Args)]
pub struct BetaCurvesArgs {
    /// Samples `c = k / n`, `k = 1..=n`.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2.0, 3.0])]
    pub alpha: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ForceAlphaArgs {
    #[arg(long, default_value_t = 0.5)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 91)]
    pub samples: usize,
    #[arg(long, default_value_t = 512)]
    pub c_resolution: usize,
    #[arg(long, default_value_t = DEFAULT_ANGLES)]
    pub angles: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let io = |path: &Path, source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io(&path, e))?;
    Ok(path)
}

/// Reads `WAVEBOUND_THREADS` and sizes the global rayon pool accordingly.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    // a pool already built by an earlier call in the same process is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs one parsed invocation and returns the written files.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    let dir = cli.out_dir.as_path();
    match &cli.command {
        Command::RiemannTable(a) => run_riemann_table(a, dir),
        Command::Advect1d(a) => run_advect1d(a, dir),
        Command::Stability1d(a) => run_stability1d(a, dir),
        Command::Stability2d(a) => run_stability2d(a, dir),
        Command::BetaCurves(a) => run_beta_curves(a, dir),
        Command::ForceAlpha(a) => run_force_alpha(a, dir),
    }
}

fn run_riemann_table(args: &RiemannTableArgs, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let problems = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_problem_config(&text)?
        }
        None => reference_problems(),
    };
    let table = estimator_table(problems.iter().map(|(name, rp)| (name.as_str(), rp)));
    for row in &table.rows {
        if let Err(e) = &row.exact {
            return Err(CliError::Numerical(format!("problem '{}': {e}", row.label)));
        }
    }
    Ok(vec![write_file(dir, "riemann_table.csv", &table.to_csv())?])
}

fn run_advect1d(args: &Advect1dArgs, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let beta: BetaSpec = args.beta.parse().map_err(usage)?;
    let result = advect_square_wave(args.cells, beta, args.c, args.t_out).map_err(usage)?;
    if result.max_abs() > INSTABILITY_THRESHOLD {
        eprintln!(
            "warning: max|q| = {} exceeds {INSTABILITY_THRESHOLD}, run is unstable",
            sig9(result.max_abs())
        );
    }
    Ok(vec![
        write_file(dir, "profile.csv", &result.profile_csv())?,
        write_file(dir, "norms.csv", &result.norms_csv())?,
    ])
}

fn run_stability1d(args: &Stability1dArgs, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    if args.eps_samples < 2 {
        return Err(CliError::Usage("--eps-samples must be at least 2".into()));
    }
    let mut csv = String::from("eps,c_lim_under,c_lim_over,c_lim_under_numeric,c_lim_over_numeric\n");
    for k in 0..args.eps_samples {
        let eps = k as f64 / (args.eps_samples - 1) as f64;
        let under = PerturbationSpec::new_under(eps).map_err(usage)?;
        let over = PerturbationSpec::new_over(eps).map_err(usage)?;
        let numeric = |p: PerturbationSpec| {
            stability_limit_1d_numeric(&p.into(), args.c_resolution, args.angles, DEFAULT_TOLERANCE).map_err(usage)
        };
        writeln!(
            csv,
            "{},{},{},{},{}",
            sig9(eps),
            sig9(under.stability_limit()),
            sig9(over.stability_limit()),
            sig9(numeric(under)?),
            sig9(numeric(over)?)
        )
        .unwrap();
    }
    Ok(vec![write_file(dir, "stability1d.csv", &csv)?])
}

/// File-name stem of a map, e.g. `map_beta=1.25`.
pub fn map_stem(beta: &BetaSpec) -> String {
    format!("map_{}", beta.label())
}

fn run_stability2d(args: &Stability2dArgs, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut specs = Vec::new();
    for b in &args.beta {
        specs.push(b.parse::<BetaSpec>().map_err(usage)?);
    }
    for &a in &args.force_alpha {
        let spec = BetaSpec::ForceAlpha(a);
        spec.validate().map_err(usage)?;
        specs.push(spec);
    }
    if specs.is_empty() {
        return Err(CliError::Usage("no beta values given".into()));
    }
    let mut written = Vec::new();
    let mut areas = String::from("beta,area_fraction\n");
    for spec in &specs {
        let map = stability_map_2d(spec, args.cx_max, args.cy_max, args.grid, args.angles, DEFAULT_TOLERANCE)
            .map_err(usage)?;
        let stem = map_stem(spec);
        written.push(write_file(dir, &format!("{stem}.csv"), &map.to_csv())?);
        written.push(write_file(dir, &format!("{stem}.pgm"), &map.to_pgm())?);
        let label = match spec {
            BetaSpec::Constant(b) => sig9(*b),
            other => other.label(),
        };
        writeln!(areas, "{label},{}", sig9(region_area(&map))).unwrap();
    }
    written.push(write_file(dir, "areas.csv", &areas)?);
    Ok(written)
}

fn run_beta_curves(args: &BetaCurvesArgs, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let mut specs = vec![
        BetaSpec::LaxWendroff,
        BetaSpec::Upwind,
        BetaSpec::Force,
        BetaSpec::LaxFriedrichs,
        BetaSpec::GodunovCentred,
        BetaSpec::Ftcs,
    ];
    let mut csv = String::from("c,beta_LW,beta_GU,beta_FO,beta_LF,beta_GC,beta_FTCS");
    for &a in &args.alpha {
        let spec = BetaSpec::ForceAlpha(a);
        spec.validate().map_err(usage)?;
        specs.push(spec);
        write!(csv, ",beta_FA_{}", sig9(a)).unwrap();
    }
    csv.push('\n');
    for k in 1..=args.samples {
        let c = k as f64 / args.samples as f64;
        csv.push_str(&sig9(c));
        for spec in &specs {
            csv.push(',');
            csv.push_str(&sig9(spec.beta(c)));
        }
        csv.push('\n');
    }
    Ok(vec![write_file(dir, "beta_curves.csv", &csv)?])
}

fn run_force_alpha(args: &ForceAlphaArgs, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    if args.samples < 2 || !(args.alpha_min > 0.0) || !(args.alpha_max > args.alpha_min) {
        return Err(CliError::Usage(
            "need --samples >= 2 and 0 < --alpha-min < --alpha-max".into(),
        ));
    }
    let mut csv = String::from("alpha,c_lim,c_lim_numeric\n");
    for k in 0..args.samples {
        let alpha = args.alpha_min + (args.alpha_max - args.alpha_min) * k as f64 / (args.samples - 1) as f64;
        let spec = BetaSpec::ForceAlpha(alpha);
        let numeric =
            stability_limit_1d_numeric(&spec, args.c_resolution, args.angles, DEFAULT_TOLERANCE).map_err(usage)?;
        writeln!(csv, "{},{},{}", sig9(alpha), sig9(spec.stability_limit()), sig9(numeric)).unwrap();
    }
    Ok(vec![write_file(dir, "force_alpha.csv", &csv)?])
}

const PROBLEM_KEYS: [&str; 6] = ["rho_l", "u_l", "p_l", "rho_r", "u_r", "p_r"];

#[derive(Default)]
struct ProblemBlock {
    line: usize,
    name: Option<String>,
    gamma: Option<f64>,
    values: [Option<f64>; 6],
}

/// Parses the Riemann problem list.
///
/// ```text
/// # comment
/// gamma = 1.4          (optional, default 1.4)
/// [problem]
/// name = 1             (optional, default: block index)
/// rho_l = 1.0
/// u_l = 0.0
/// p_l = 1.0
/// rho_r = 0.125
/// u_r = 0.0
/// p_r = 0.1
/// gamma = 1.4          (optional per-problem override)
/// ```
pub fn parse_problem_config(text: &str) -> Result<Vec<(String, RiemannProblem)>, CliError> {
    let mut gamma = 1.4;
    let mut blocks: Vec<ProblemBlock> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "[problem]" {
            blocks.push(ProblemBlock {
                line: lineno,
                ..Default::default()
            });
            continue;
        }
        let err = |msg: String| CliError::Config(format!("line {lineno}: {msg}"));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected 'key = value' or '[problem]', got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let number = || -> Result<f64, CliError> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(format!("'{key}' needs a finite number, got '{value}'")))
        };
        let Some(block) = blocks.last_mut() else {
            match key {
                "gamma" => gamma = number()?,
                _ => return Err(err(format!("'{key}' outside a [problem] block"))),
            }
            continue;
        };
        let slot_taken = |taken: bool| if taken { Err(err(format!("duplicate key '{key}'"))) } else { Ok(()) };
        match key {
            "name" => {
                slot_taken(block.name.is_some())?;
                block.name = Some(value.to_string());
            }
            "gamma" => {
                slot_taken(block.gamma.is_some())?;
                block.gamma = Some(number()?);
            }
            _ => {
                let k = PROBLEM_KEYS
                    .iter()
                    .position(|&k| k == key)
                    .ok_or_else(|| err(format!("unknown key '{key}'")))?;
                slot_taken(block.values[k].is_some())?;
                block.values[k] = Some(number()?);
            }
        }
    }
    if blocks.is_empty() {
        return Err(CliError::Config("no [problem] blocks".into()));
    }
    blocks
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            let mut values = [0.0; 6];
            for (k, v) in b.values.iter().enumerate() {
                values[k] = v.ok_or_else(|| {
                    CliError::Config(format!("problem at line {}: missing '{}'", b.line, PROBLEM_KEYS[k]))
                })?;
            }
            let rp = RiemannProblem::from_values(values, b.gamma.unwrap_or(gamma))
                .map_err(|e| CliError::Config(format!("problem at line {}: {e}", b.line)))?;
            Ok((b.name.unwrap_or_else(|| (i + 1).to_string()), rp))
        })
        .collect()
}

/// Writes problems in the format read by [`parse_problem_config`].
pub fn render_problem_config(problems: &[(String, RiemannProblem)]) -> String {
    let mut out = String::new();
    for (name, rp) in problems {
        let v = [rp.left.rho, rp.left.u, rp.left.p, rp.right.rho, rp.right.u, rp.right.p];
        writeln!(out, "[problem]\nname = {name}\ngamma = {:?}", rp.gamma).unwrap();
        for (k, x) in PROBLEM_KEYS.iter().zip(v) {
            writeln!(out, "{k} = {x:?}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let problems = reference_problems();
        let parsed = parse_problem_config(&render_problem_config(&problems)).unwrap();
        assert_eq!(parsed, problems);
    }

    #[test]
    fn config_errors() {
        assert!(matches!(parse_problem_config("# nothing\n"), Err(CliError::Config(_))));
        assert!(parse_problem_config("[problem]\nrho_l = 1\n").is_err());
        assert!(parse_problem_config("[problem]\nfoo = 1\n").is_err());
        assert!(parse_problem_config("rho_l = 1\n").is_err());
        let dup = "[problem]\nrho_l=1\nrho_l=1\nu_l=0\np_l=1\nrho_r=1\nu_r=0\np_r=1\n";
        assert!(parse_problem_config(dup).is_err());
        let neg = "[problem]\nrho_l=1\nu_l=0\np_l=-1\nrho_r=1\nu_r=0\np_r=1\n";
        assert!(parse_problem_config(neg).is_err());
    }

    #[test]
    fn config_defaults() {
        let text = "gamma = 1.67\n[problem]\nrho_l=1\nu_l=0\np_l=1\nrho_r=1\nu_r=0\np_r=1 # equal\n";
        let parsed = parse_problem_config(text).unwrap();
        assert_eq!(parsed[0].0, "1");
        assert_eq!(parsed[0].1.gamma, 1.67);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        assert_eq!(CliError::Config(String::new()).exit_code(), 2);
        assert_eq!(CliError::Numerical(String::new()).exit_code(), 3);
    }

    #[test]
    fn beta_spec_parsing() {
        for spec in [
            BetaSpec::Constant(1.25),
            BetaSpec::Upwind,
            BetaSpec::LaxWendroff,
            BetaSpec::LaxFriedrichs,
            BetaSpec::Force,
            BetaSpec::GodunovCentred,
            BetaSpec::Ftcs,
            BetaSpec::ForceAlpha(2.0),
        ] {
            assert_eq!(spec.label().parse::<BetaSpec>().unwrap(), spec);
        }
        assert_eq!("1.5".parse::<BetaSpec>().unwrap(), BetaSpec::Constant(1.5));
        assert_eq!("force-alpha:3".parse::<BetaSpec>().unwrap(), BetaSpec::ForceAlpha(3.0));
        assert!("-1".parse::<BetaSpec>().is_err());
        assert!("bogus".parse::<BetaSpec>().is_err());
    }
}
