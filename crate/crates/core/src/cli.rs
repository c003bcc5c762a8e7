//! Command-line front end. [`run`] never prints; `main` writes the payload
//! to stdout, the diagnostics to stderr, and exits with the code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{parse_rational, AlgebraicJson, AlgebraicReal, IntPolynomial};
use crate::cayley::{measure_second_multiplicity, subdivided_aff};
use crate::error::{Error, Result};
use crate::graph::{random_connected, Graph, GraphJson, NetCertificate};
use crate::korder::{spectral_radius_order, EnumerationBudget, KOrder};
use crate::lines::{construct_optimal, n_alpha, verify_family, Alpha, LineFamily, NAlpha};
use crate::mult_bound::{certified_mult_upper, comb_fixture, default_params, k33_chain_fixture, MULT_TOL};
use crate::spectra::{adjacency_spectrum, lambda2};
use crate::switching::greedy_switch_bounded;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// JSON (or CSV for `spectrum`) destined for stdout.
    pub payload: String,
    pub diagnostics: String,
}

impl CommandResult {
    fn ok(payload: String) -> Self {
        CommandResult { exit_code: EXIT_OK, payload, diagnostics: String::new() }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "eqlines",
    version,
    about = "Equiangular lines with a fixed angle: constructions, spectral radius order, multiplicity bounds"
)]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// How the angle or the eigenvalue is given.
#[derive(Args, Debug, Clone)]
struct AngleArgs {
    /// α as p/q.
    #[arg(long)]
    alpha: Option<String>,
    /// λ as a rational.
    #[arg(long)]
    lambda: Option<String>,
    /// Integer coefficients of a polynomial vanishing at λ, constant term first, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda_minpoly: Option<String>,
    /// Lower end of an interval isolating λ.
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<String>,
    /// Upper end of an interval isolating λ.
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral radius order k(λ) with a witness graph.
    Korder {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Enumerate labeled graphs instead of isomorphism classes.
        #[arg(long)]
        no_dedup: bool,
    },
    /// Build the optimal construction in R^d.
    Construct {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    /// Check a line family (CSV or JSON) against α.
    Verify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Closed-form N_α(d).
    Nalpha {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    /// d(d+1)/2.
    Gerzon {
        #[arg(long)]
        d: u64,
    },
    /// Greedy switching of a negative graph to small degree.
    Switch {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        alpha: String,
    },
    /// Certified multiplicity upper bound.
    Multbound {
        #[arg(long)]
        graph: PathBuf,
        /// `second` or a number.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        c: Option<f64>,
    },
    /// r-net by spanning tree pruning.
    Net {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Adjacency spectrum as CSV.
    Spectrum {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Subdivided Cayley graph of Aff(F_p).
    CayleyAff {
        #[arg(long)]
        p: u64,
        #[arg(long = "L")]
        l: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second eigenvalue and its multiplicity.
    Measure {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = MULT_TOL)]
        tol: f64,
    },
    /// Test graphs: comb, k33-chain or random.
    Fixture {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.to_string();
            return if code == EXIT_OK {
                CommandResult::ok(text)
            } else {
                CommandResult { exit_code: code, payload: String::new(), diagnostics: text }
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::debug!("thread pool already configured: {e}");
        }
    }
    match dispatch(cli) {
        Ok(r) => r,
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
            CommandResult { exit_code: code, payload: String::new(), diagnostics: format!("error: {e}") }
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::from_json(&fs::read_to_string(path)?)
}

fn read_family(path: &Path) -> Result<LineFamily> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        LineFamily::from_csv(&text)
    }
}

fn parse_minpoly(s: &str) -> Result<IntPolynomial> {
    let coeffs = s
        .split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("coefficient {c:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coeffs))
}

impl AngleArgs {
    /// λ from whichever of the three forms was supplied.
    fn lambda(&self) -> Result<AlgebraicReal> {
        match (&self.alpha, &self.lambda, &self.lambda_minpoly) {
            (Some(a), None, None) => Ok(Alpha::parse(a)?.lambda()),
            (None, Some(l), None) => Ok(AlgebraicReal::from_rational(&parse_rational(l)?)),
            (None, None, Some(p)) => {
                let (lo, hi) = match (&self.lo, &self.hi) {
                    (Some(lo), Some(hi)) => (parse_rational(lo)?, parse_rational(hi)?),
                    _ => return Err(Error::InvalidArgument("--lambda-minpoly needs --lo and --hi".into())),
                };
                AlgebraicReal::new(parse_minpoly(p)?, lo, hi)
            }
            _ => Err(Error::InvalidArgument("give exactly one of --alpha, --lambda, --lambda-minpoly".into())),
        }
    }

    fn alpha(&self) -> Result<Alpha> {
        match &self.alpha {
            Some(a) if self.lambda.is_none() && self.lambda_minpoly.is_none() => Alpha::parse(a),
            _ => Alpha::from_lambda(&self.lambda()?),
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn write_or_return(out: Option<&Path>, text: String, summary: Value) -> Result<CommandResult> {
    match out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(CommandResult::ok(to_json(&summary)?))
        }
        None => Ok(CommandResult::ok(text)),
    }
}

fn dispatch(cli: Cli) -> Result<CommandResult> {
    match cli.command {
        Command::Korder { angle, nmax, no_dedup } => {
            let lam = angle.lambda()?;
            let budget = EnumerationBudget::new(nmax, !no_dedup)?;
            let lambda = json!({ "exact": AlgebraicJson::from(&lam), "float": lam.to_f64() });
            match spectral_radius_order(&lam, budget)? {
                KOrder::Found { k, witness, certificates } => Ok(CommandResult::ok(to_json(&json!({
                    "lambda": lambda,
                    "k": k,
                    "witness": GraphJson::from(&witness),
                    "certificates": certificates,
                }))?)),
                KOrder::Exceeded { n_max } => Ok(CommandResult {
                    exit_code: EXIT_BUDGET,
                    payload: to_json(&json!({ "lambda": lambda, "k": "exceeded", "n_max": n_max }))?,
                    diagnostics: format!("no witness on at most {n_max} vertices"),
                }),
            }
        }
        Command::Construct { angle, d, out, nmax } => {
            let alpha = angle.alpha()?;
            let c = construct_optimal(&alpha, d, EnumerationBudget::new(nmax, true)?)?;
            let summary = json!({
                "d": d,
                "alpha": c.family.alpha,
                "n": c.family.n(),
                "k": c.k,
                "copies": c.copies,
                "isolated": c.isolated,
                "witness": GraphJson::from(&c.witness),
                "optimality": c.optimality,
                "out": out.as_ref().map(|p| p.display().to_string()),
            });
            write_or_return(out.as_deref(), c.family.to_csv(), summary)
        }
        Command::Verify { family, alpha, tol } => {
            let mut f = read_family(&family)?;
            if let Some(a) = alpha {
                f.alpha = Alpha::parse(&a)?.value();
            }
            let report = verify_family(&f, tol);
            let code = if report.valid { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let diagnostics = report
                .ambiguous_pairs
                .iter()
                .take(20)
                .map(|(i, j, ip)| format!("pair ({i}, {j}): inner product {ip:e}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(CommandResult { exit_code: code, payload: to_json(&report)?, diagnostics })
        }
        Command::Nalpha { angle, d, nmax } => {
            let alpha = angle.alpha()?;
            let value = match n_alpha(&alpha, d, EnumerationBudget::new(nmax, true)?)? {
                NAlpha::Value(v) => json!(v),
                NAlpha::Linear => json!("linear"),
            };
            Ok(CommandResult::ok(to_json(&json!({ "alpha": alpha.value(), "d": d, "n_alpha": value }))?))
        }
        Command::Gerzon { d } => Ok(CommandResult::ok(to_json(&json!({
            "d": d,
            "bound": crate::lines::gerzon_bound(d),
        }))?)),
        Command::Switch { graph, family, alpha } => {
            let alpha = Alpha::parse(&alpha)?;
            let g = match (graph, family) {
                (Some(p), None) => read_graph(&p)?,
                (None, Some(p)) => crate::lines::negative_graph(&read_family(&p)?),
                _ => return Err(Error::InvalidArgument("give exactly one of --graph, --family".into())),
            };
            let r = greedy_switch_bounded(&g, &alpha);
            Ok(CommandResult::ok(to_json(&json!({
                "signs": r.signs,
                "max_degree_before": r.max_degree_before,
                "max_degree_after": r.max_degree_after,
            }))?))
        }
        Command::Multbound { graph, lambda, r, s, c } => {
            let g = read_graph(&graph)?;
            let lam = if lambda == "second" {
                lambda2(&g)?
            } else {
                lambda.parse::<f64>().map_err(|e| Error::Parse(format!("--lambda {lambda:?}: {e}")))?
            };
            let (r, s, c_used) = match (r, s) {
                (Some(r), Some(s)) => (r, s, None),
                _ => {
                    let p = default_params(g.n(), g.max_degree(), c)?;
                    (r.unwrap_or(p.r), s.unwrap_or(p.s), Some(p.c))
                }
            };
            let b = certified_mult_upper(&g, lam, r, s)?;
            let mut v = serde_json::to_value(&b)?;
            v["c"] = json!(c_used);
            let code = if b.sound { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok(CommandResult { exit_code: code, payload: to_json(&v)?, diagnostics: String::new() })
        }
        Command::Net { graph, r, root } => {
            let g = read_graph(&graph)?;
            let net = g.r_net_rooted(r, root)?;
            Ok(CommandResult::ok(to_json(&json!({
                "radius": net.radius,
                "members": net.members,
                "covers": net.covers(&g),
                "size_bound": NetCertificate::size_bound(g.n(), r),
            }))?))
        }
        Command::Spectrum { graph } => Ok(CommandResult::ok(adjacency_spectrum(&read_graph(&graph)?).to_csv())),
        Command::CayleyAff { p, l, out } => {
            let g = subdivided_aff(p, l)?;
            let summary = json!({ "p": p, "n": g.n(), "edges": g.edge_count(), "out": out.as_ref().map(|p| p.display().to_string()) });
            write_or_return(out.as_deref(), g.to_json(), summary)
        }
        Command::Measure { graph, tol } => {
            let m = measure_second_multiplicity(&read_graph(&graph)?, tol)?;
            Ok(CommandResult::ok(to_json(&m)?))
        }
        Command::Fixture { kind, m, n, max_degree, out } => {
            let g = match kind.as_str() {
                "comb" => comb_fixture(m)?,
                "k33-chain" | "k33_chain" => k33_chain_fixture(m)?,
                "random" => random_connected(n, max_degree, n, &mut ChaCha8Rng::seed_from_u64(cli.seed))?,
                other => return Err(Error::InvalidArgument(format!("unknown fixture kind {other:?}"))),
            };
            let summary = json!({ "kind": kind, "n": g.n(), "out": out.as_ref().map(|p| p.display().to_string()) });
            write_or_return(out.as_deref(), g.to_json(), summary)
        }
    }
}
