//! Command-line front end: argument and config handling, and one function per subcommand that
//! renders its report as text. The binary only prints and maps [`Status`] to an exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use samoeba::convex::LatticePolytope;
use samoeba::numerics::{
    amoeba_grid, membership, order_of_component, ronkin_mc, MembershipOptions, MembershipVerdict,
    NumericsError, OrderEstimate, Verdict, DEFAULT_FD_STEP,
};
use samoeba::puiseux::{smith_sval, Exponent, PuiseuxMatrix};
use samoeba::scalar::parse_unsigned_rational;
use samoeba::support::{snewt, support, SupportSet};
use samoeba::tropical::{
    limit_experiment, strop_hypersurface, strop_member, LimitOptions, TropicalDescription,
};
use samoeba::RegularFunction;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Settings shared by all subcommands. Each can also come from the `--config` file, written as
/// `key = value` lines with the same names (underscores instead of dashes); flags win.
#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Matrix size.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Base seed. Required by the sampling commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte-Carlo sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Random restarts per membership query.
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Relative threshold below which a point is a member.
    #[arg(long, global = true)]
    pub member_rel: Option<f64>,
    /// Relative threshold above which a point is a non-member.
    #[arg(long, global = true)]
    pub nonmember_rel: Option<f64>,
    /// Iteration cap per membership restart.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Random trials used to determine supports.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Truncation order applied to Puiseux inputs, e.g. `4` or `7/2`.
    #[arg(long, global = true)]
    pub trunc: Option<String>,
    /// Lower grid bound on every axis.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    /// Upper grid bound on every axis.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    /// Grid points per axis.
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Finite-difference step for orders.
    #[arg(long, global = true)]
    pub step: Option<f64>,
    /// Margin for the scaling experiment.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Comma-separated, strictly decreasing scale factors.
    #[arg(long, global = true, value_delimiter = ',')]
    pub rhos: Option<Vec<f64>>,
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Settings {
    /// Fields set in `self` take precedence over `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            n: self.n.or(base.n),
            seed: self.seed.or(base.seed),
            samples: self.samples.or(base.samples),
            restarts: self.restarts.or(base.restarts),
            member_rel: self.member_rel.or(base.member_rel),
            nonmember_rel: self.nonmember_rel.or(base.nonmember_rel),
            max_iter: self.max_iter.or(base.max_iter),
            trials: self.trials.or(base.trials),
            trunc: self.trunc.or(base.trunc),
            lo: self.lo.or(base.lo),
            hi: self.hi.or(base.hi),
            resolution: self.resolution.or(base.resolution),
            step: self.step.or(base.step),
            epsilon: self.epsilon.or(base.epsilon),
            rhos: self.rhos.or(base.rhos),
            format: self.format.or(base.format),
            out: self.out.or(base.out),
        }
    }

    pub fn from_file(path: &Path) -> Result<Settings> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "samoeba",
    version,
    about = "Matrix amoebas and spherical tropicalization on GL_n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// File of `key = value` settings, overridden by flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Support and spherical Newton polytope of a function.
    Newton { expr: String },
    /// Membership verdicts on a grid over `[lo, hi]^n`.
    Amoeba { expr: String },
    /// Monte-Carlo Ronkin function at a point.
    Ronkin {
        expr: String,
        /// Comma-separated coordinates.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// Order of the complement component containing a point.
    Order {
        expr: String,
        /// Comma-separated coordinates of a non-member.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// Invariant-factor valuations of a Puiseux matrix given as a JSON array of rows of series
    /// strings, or `@path` to read it from a file.
    Sval { matrix: String },
    /// Closed-form limit set of the rescaled amoeba.
    Strop {
        expr: String,
        /// Optional exact point (comma-separated rationals) to test for membership.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<String>>,
    },
    /// Scaling experiment comparing rescaled amoeba grids with the limit set.
    Limit { expr: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Undecided memberships, uncertified valuations or failed order estimates.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonReport {
    pub support: SupportSet,
    pub polytope: LatticePolytope,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderReport {
    pub membership: MembershipVerdict,
    pub order: Option<OrderEstimate>,
    /// Why no order was produced, if it was not.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StropReport {
    pub description: TropicalDescription,
    pub point: Option<Vec<String>>,
    pub member: Option<bool>,
}

const DEFAULT_N: usize = 2;
const DEFAULT_SAMPLES: usize = 10_000;
const DEFAULT_TRIALS: usize = 4;
const DEFAULT_SUPPORT_SEED: u64 = 0;

/// Fully resolved settings.
struct Run {
    s: Settings,
}

impl Run {
    fn n(&self) -> Result<usize> {
        let n = self.s.n.unwrap_or(DEFAULT_N);
        if n == 0 {
            bail!("n must be positive");
        }
        Ok(n)
    }

    fn seed(&self, command: &str) -> Result<u64> {
        self.s
            .seed
            .ok_or_else(|| anyhow!("`{command}` samples randomly and needs --seed"))
    }

    fn positive(&self, name: &str, v: Option<usize>, default: usize) -> Result<usize> {
        match v.unwrap_or(default) {
            0 => bail!("{name} must be positive"),
            k => Ok(k),
        }
    }

    fn positive_f64(name: &str, v: f64) -> Result<f64> {
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            bail!("{name} must be positive and finite")
        }
    }

    fn trials(&self) -> Result<usize> {
        self.positive("trials", self.s.trials, DEFAULT_TRIALS)
    }

    fn support_seed(&self) -> u64 {
        self.s.seed.unwrap_or(DEFAULT_SUPPORT_SEED)
    }

    fn membership(&self, seed: u64) -> Result<MembershipOptions> {
        let d = MembershipOptions::default();
        let o = MembershipOptions {
            restarts: self.positive("restarts", self.s.restarts, d.restarts)?,
            member_rel: Self::positive_f64(
                "member_rel",
                self.s.member_rel.unwrap_or(d.member_rel),
            )?,
            nonmember_rel: Self::positive_f64(
                "nonmember_rel",
                self.s.nonmember_rel.unwrap_or(d.nonmember_rel),
            )?,
            max_iter: self.positive("max_iter", self.s.max_iter, d.max_iter)?,
            seed,
            ..d
        };
        if o.member_rel >= o.nonmember_rel {
            bail!("member_rel must be below nonmember_rel");
        }
        Ok(o)
    }

    fn format(&self, allowed: &[Format], default: Format) -> Result<Format> {
        let f = self.s.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("format {f:?} is not available for this command");
        }
        Ok(f)
    }

    fn function(&self, expr: &str) -> Result<RegularFunction> {
        samoeba::parse(expr, self.n()?).map_err(|e| anyhow!("{e}"))
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn parse_signed_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let r =
        parse_unsigned_rational(body).ok_or_else(|| anyhow!("not a rational number: {text:?}"))?;
    Ok(if neg { -r } else { r })
}

fn cmd_newton(run: &Run, expr: &str) -> Result<Outcome> {
    let f = run.function(expr)?;
    let (trials, seed) = (run.trials()?, run.support_seed());
    let s = support(&f, trials, seed)?;
    let polytope = snewt(&f, trials, seed)?;
    let text = match run.format(&[Format::Json, Format::Csv], Format::Json)? {
        Format::Csv => {
            let mut out = (1..=s.n)
                .map(|k| format!("m{k}"))
                .collect::<Vec<_>>()
                .join(",");
            out.push('\n');
            for p in &s.points {
                let row: Vec<String> = p.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "{}", row.join(","));
            }
            out
        }
        _ => json(&NewtonReport {
            support: s,
            polytope,
        })?,
    };
    Ok(Outcome {
        text,
        status: Status::Ok,
    })
}

fn grid_bounds(run: &Run) -> Result<(f64, f64, usize)> {
    let lo = run.s.lo.unwrap_or(-2.0);
    let hi = run.s.hi.unwrap_or(2.0);
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        bail!("need lo < hi");
    }
    let res = run.s.resolution.unwrap_or(21);
    if res < 2 {
        bail!("resolution must be at least 2");
    }
    Ok((lo, hi, res))
}

fn cmd_amoeba(run: &Run, expr: &str) -> Result<Outcome> {
    let f = run.function(expr)?;
    let opts = run.membership(run.seed("amoeba")?)?;
    let (lo, hi, res) = grid_bounds(run)?;
    let format = run.format(&[Format::Csv, Format::Json, Format::Svg], Format::Csv)?;
    let grid = amoeba_grid(&f, lo, hi, res, &opts)?;
    let text = match format {
        Format::Csv => grid.to_csv(),
        Format::Json => json(&grid)?,
        Format::Svg => grid
            .to_svg()
            .ok_or_else(|| anyhow!("SVG output needs n = 2"))?,
    };
    let status = if grid.inconclusive > 0 {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(Outcome { text, status })
}

fn cmd_ronkin(run: &Run, expr: &str, x: &[f64]) -> Result<Outcome> {
    let f = run.function(expr)?;
    let seed = run.seed("ronkin")?;
    let samples = run.positive("samples", run.s.samples, DEFAULT_SAMPLES)?;
    run.format(&[Format::Json], Format::Json)?;
    let r = ronkin_mc(&f, x, samples, seed)?;
    Ok(Outcome {
        text: json(&r)?,
        status: Status::Ok,
    })
}

fn cmd_order(run: &Run, expr: &str, x: &[f64]) -> Result<Outcome> {
    let f = run.function(expr)?;
    let seed = run.seed("order")?;
    let samples = run.positive("samples", run.s.samples, DEFAULT_SAMPLES)?;
    let step = Run::positive_f64("step", run.s.step.unwrap_or(DEFAULT_FD_STEP))?;
    run.format(&[Format::Json], Format::Json)?;
    let m = membership(&f, x, &run.membership(seed)?)?;
    let report = if m.verdict != Verdict::NonMember {
        OrderReport {
            failure: Some(format!(
                "point is not a certified non-member ({:?})",
                m.verdict
            )),
            membership: m,
            order: None,
        }
    } else {
        let polytope = snewt(&f, run.trials()?, run.support_seed())?;
        match order_of_component(&f, x, step, samples, seed, &polytope) {
            Ok(o) => {
                let failure =
                    (!o.in_polytope).then(|| "order lies outside the Newton polytope".to_string());
                OrderReport {
                    membership: m,
                    order: Some(o),
                    failure,
                }
            }
            Err(e @ NumericsError::EstimationFailure { .. }) => OrderReport {
                membership: m,
                order: None,
                failure: Some(e.to_string()),
            },
            Err(e) => return Err(e.into()),
        }
    };
    let status = if report.failure.is_some() {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(Outcome {
        text: json(&report)?,
        status,
    })
}

fn cmd_sval(run: &Run, matrix: &str) -> Result<Outcome> {
    let text = match matrix.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => matrix.to_string(),
    };
    let rows: Vec<Vec<String>> =
        serde_json::from_str(&text).context("matrix must be a JSON array of rows of strings")?;
    let mut a = PuiseuxMatrix::parse(&rows)?;
    if let Some(q) = &run.s.trunc {
        let q: Exponent = q
            .trim()
            .parse()
            .map_err(|_| anyhow!("bad truncation order {q:?}"))?;
        a = a.with_trunc(q);
    }
    run.format(&[Format::Json], Format::Json)?;
    let r = smith_sval(&a)?;
    let status = if r.certified {
        Status::Ok
    } else {
        Status::Inconclusive
    };
    Ok(Outcome {
        text: json(&r)?,
        status,
    })
}

fn cmd_strop(run: &Run, expr: &str, point: Option<&[String]>) -> Result<Outcome> {
    let f = run.function(expr)?;
    let description = strop_hypersurface(&f, run.trials()?, run.support_seed())?;
    run.format(&[Format::Json], Format::Json)?;
    let member = match point {
        Some(p) => {
            let x = p
                .iter()
                .map(|t| parse_signed_rational(t))
                .collect::<Result<Vec<_>>>()?;
            if x.len() != description.n {
                bail!(
                    "point has {} coordinates, expected {}",
                    x.len(),
                    description.n
                );
            }
            Some(strop_member(&description, &x))
        }
        None => None,
    };
    let report = StropReport {
        description,
        point: point.map(<[String]>::to_vec),
        member,
    };
    Ok(Outcome {
        text: json(&report)?,
        status: Status::Ok,
    })
}

fn cmd_limit(run: &Run, expr: &str) -> Result<Outcome> {
    let f = run.function(expr)?;
    let seed = run.seed("limit")?;
    let d = LimitOptions::default();
    let opts = LimitOptions {
        rhos: run.s.rhos.clone().unwrap_or(d.rhos),
        lo: run.s.lo.unwrap_or(d.lo),
        hi: run.s.hi.unwrap_or(d.hi),
        resolution: run.s.resolution.unwrap_or(d.resolution),
        epsilon: run.s.epsilon.unwrap_or(d.epsilon),
        support_trials: run.trials()?,
        membership: run.membership(seed)?,
    };
    let format = run.format(&[Format::Json, Format::Svg], Format::Json)?;
    let report = limit_experiment(&f, &opts)?;
    let text = match format {
        Format::Svg => report
            .to_svg(report.per_rho.len() - 1)
            .ok_or_else(|| anyhow!("SVG output needs n = 2"))?,
        _ => json(&report)?,
    };
    let status = if report.inconclusive > 0 {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(Outcome { text, status })
}

/// Runs a parsed command line and returns its rendered output. Nothing is written.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let base = match &cli.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let run = Run {
        s: cli.settings.clone().over(base),
    };
    match &cli.command {
        Command::Newton { expr } => cmd_newton(&run, expr),
        Command::Amoeba { expr } => cmd_amoeba(&run, expr),
        Command::Ronkin { expr, x } => cmd_ronkin(&run, expr, x),
        Command::Order { expr, x } => cmd_order(&run, expr, x),
        Command::Sval { matrix } => cmd_sval(&run, matrix),
        Command::Strop { expr, point } => cmd_strop(&run, expr, point.as_deref()),
        Command::Limit { expr } => cmd_limit(&run, expr),
    }
}

/// Output path after merging the config file, if any.
pub fn output_path(cli: &Cli) -> Result<Option<PathBuf>> {
    if cli.settings.out.is_some() {
        return Ok(cli.settings.out.clone());
    }
    match &cli.config {
        Some(path) => Ok(Settings::from_file(path)?.out),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome> {
        let mut full = vec!["samoeba"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full)?)
    }

    #[test]
    fn newton_examples() {
        let r: NewtonReport =
            serde_json::from_str(&run(&["newton", "a11^2 + 2*det"]).unwrap().text).unwrap();
        assert_eq!(r.support.points, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let r: NewtonReport = serde_json::from_str(&run(&["newton", "det"]).unwrap().text).unwrap();
        assert_eq!(r.support.points, vec![vec![1, 1]]);
        let r: NewtonReport =
            serde_json::from_str(&run(&["newton", "det^-1"]).unwrap().text).unwrap();
        assert_eq!(r.support.points, vec![vec![-1, -1]]);
        let csv = run(&["newton", "det", "--format", "csv"]).unwrap().text;
        assert_eq!(csv, "m1,m2\n1,1\n");
    }

    #[test]
    fn sampling_commands_need_a_seed() {
        assert!(run(&["ronkin", "det", "--x", "1,2"]).is_err());
        assert!(run(&["amoeba", "det - 1"]).is_err());
    }

    #[test]
    fn ronkin_of_det() {
        let out = run(&[
            "ronkin",
            "det",
            "--x",
            "1,2",
            "--seed",
            "3",
            "--samples",
            "200",
        ])
        .unwrap();
        let r: samoeba::numerics::RonkinEstimate = serde_json::from_str(&out.text).unwrap();
        assert!((r.mean - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sval_and_strop() {
        let out = run(&["sval", r#"[["1","t"],["t","t"]]"#]).unwrap();
        assert_eq!(out.status, Status::Ok);
        let r: samoeba::puiseux::SvalResult = serde_json::from_str(&out.text).unwrap();
        assert_eq!(
            r.factors,
            vec![Exponent::from_integer(0), Exponent::from_integer(1)]
        );

        let out = run(&["strop", "a11^2+2*det", "--point", "-3/2,7"]).unwrap();
        let r: StropReport = serde_json::from_str(&out.text).unwrap();
        assert_eq!(
            r.description.kind,
            samoeba::tropical::TropicalKind::FullSpace
        );
        assert_eq!(r.member, Some(true));
    }

    #[test]
    fn flags_override_config() {
        let dir = std::env::temp_dir().join(format!("samoeba-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = dir.join("run.conf");
        std::fs::write(&cfg, "seed = 5\nsamples = 150\nformat = \"json\"\n").unwrap();
        let cfg_s = cfg.to_str().unwrap();
        let a = run(&["ronkin", "det", "--x", "0,0", "--config", cfg_s]).unwrap();
        let r: samoeba::numerics::RonkinEstimate = serde_json::from_str(&a.text).unwrap();
        assert_eq!(r.samples, 150);
        let b = run(&[
            "ronkin",
            "det",
            "--x",
            "0,0",
            "--config",
            cfg_s,
            "--samples",
            "120",
        ])
        .unwrap();
        let r: samoeba::numerics::RonkinEstimate = serde_json::from_str(&b.text).unwrap();
        assert_eq!(r.samples, 120);
        std::fs::write(&cfg, "bogus = 1\n").unwrap();
        assert!(run(&["newton", "det", "--config", cfg_s]).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
