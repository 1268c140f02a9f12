//! Command-line front end of `hallcomb`.

pub mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::fugacity::{vertex_fugacity, VertexLabels};
use crate::hlalgebra::{oracle_product, pieri_multiply, PVector};
use crate::honeycomb::{enumerate, product_expansion, structure_constant};
use crate::partition::Partition;
use crate::polyring::TPoly;
use crate::sl4net::Report;

/// Exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
}

#[derive(Debug, Parser)]
#[command(
    name = "hallcomb",
    version,
    about = "Hall-Littlewood structure constants from honeycombs"
)]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the parallel sweeps (falls back to HALLCOMB_THREADS).
    #[arg(long, global = true, env = "HALLCOMB_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Context {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Text,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure constant c^{lambda,mu}_nu, or the whole product P^lambda P^mu.
    Compute {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: Option<String>,
    },
    /// List the honeycombs with the given boundary.
    Enumerate {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long, value_enum, default_value = "text")]
        render: Render,
        /// Directory for svg files, one per honeycomb.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pieri rule expansion of P^lambda P^(r).
    Pieri {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        r: usize,
    },
    /// Vertex fugacity of labels i/j/i'/j'/i''/j''.
    Fug { labels: String },
    /// Product P^lambda P^mu from the symmetrization formula.
    Oracle {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        /// Label bound for the sl4 sweeps.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Random tuples drawn at (k+1, n+1).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = verify::SEED)]
        seed: u64,
    },
}

/// Output of a run: the text to print and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: Status::Ok,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            status: Status::Usage,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

fn parse(text: &str, ctx: &Context) -> Result<Partition, Outcome> {
    if ctx.k == 0 || ctx.n == 0 {
        return Err(Outcome::usage("k and n must be positive"));
    }
    Partition::parse(text, ctx.k, ctx.n)
        .map_err(|e| Outcome::usage(format!("partition {text:?}: {e}")))
}

fn expansion_text(terms: &BTreeMap<Partition, TPoly>) -> String {
    let body: Vec<String> = terms.iter().map(|(p, c)| format!("{p}: {c}")).collect();
    format!("{{{}}}", body.join(", "))
}

fn expansion_json(terms: &BTreeMap<Partition, TPoly>) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|(p, c)| json!({"nu": p.nonzero_parts(), "coefficient": c.to_string()}))
            .collect(),
    )
}

fn pvector_terms(v: &PVector) -> Result<BTreeMap<Partition, TPoly>, Outcome> {
    v.to_polys().ok_or_else(|| Outcome {
        status: Status::Failed,
        stdout: String::new(),
        stderr: "non-polynomial coefficient".to_string(),
    })
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(out) | Err(out) => out,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    let json = cli.json;
    let text = match &cli.command {
        Command::Compute {
            ctx,
            lambda,
            mu,
            nu,
        } => {
            let (lam, mu) = (parse(lambda, ctx)?, parse(mu, ctx)?);
            match nu {
                Some(nu) => {
                    let nu = parse(nu, ctx)?;
                    let c = structure_constant(&lam, &mu, &nu);
                    if json {
                        json!({"lambda": lam.nonzero_parts(), "mu": mu.nonzero_parts(),
                               "nu": nu.nonzero_parts(), "coefficient": c.to_string()})
                        .to_string()
                    } else {
                        c.to_string()
                    }
                }
                None => {
                    let terms = product_expansion(&lam, &mu);
                    if json {
                        expansion_json(&terms).to_string()
                    } else {
                        expansion_text(&terms)
                    }
                }
            }
        }
        Command::Enumerate {
            ctx,
            lambda,
            mu,
            nu,
            render,
            out,
        } => {
            let (lam, mu, nu) = (parse(lambda, ctx)?, parse(mu, ctx)?, parse(nu, ctx)?);
            let grids = enumerate(&lam, &mu, Some(&nu));
            if *render == Render::Svg {
                let dir = out
                    .as_ref()
                    .ok_or_else(|| Outcome::usage("--render svg needs --out DIR"))?;
                std::fs::create_dir_all(dir)
                    .map_err(|e| Outcome::usage(format!("{}: {e}", dir.display())))?;
                for (idx, g) in grids.iter().enumerate() {
                    let path = dir.join(format!("{idx}.svg"));
                    std::fs::write(&path, g.to_svg())
                        .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
                }
            }
            if json {
                let items: Vec<Value> = grids
                    .iter()
                    .map(|g| {
                        json!({"honeycomb": g.to_text(),
                               "fugacity": g.fugacity().map(|f| f.to_string()).unwrap_or_default()})
                    })
                    .collect();
                Value::Array(items).to_string()
            } else {
                let mut s = String::new();
                for (idx, g) in grids.iter().enumerate() {
                    let fug = g.fugacity().map(|f| f.to_string()).unwrap_or_default();
                    let _ = writeln!(s, "# {idx}: {fug}\n{}", g.to_text());
                }
                let _ = write!(s, "total: {}", structure_constant(&lam, &mu, &nu));
                s
            }
        }
        Command::Pieri { ctx, lambda, r } => {
            let lam = parse(lambda, ctx)?;
            if *r == 0 || *r >= ctx.n {
                return Err(Outcome::usage(format!("r must lie in 1..{}", ctx.n)));
            }
            let terms = pvector_terms(&pieri_multiply(&PVector::unit(&lam), *r))?;
            if json {
                expansion_json(&terms).to_string()
            } else {
                expansion_text(&terms)
            }
        }
        Command::Fug { labels } => {
            let v: VertexLabels = labels
                .parse()
                .map_err(|e| Outcome::usage(format!("labels {labels:?}: {e}")))?;
            let f = vertex_fugacity(&v).map_err(|e| Outcome::usage(e.to_string()))?;
            if json {
                json!({"labels": v.to_string(), "fugacity": f.to_string()}).to_string()
            } else {
                f.to_string()
            }
        }
        Command::Oracle { ctx, lambda, mu } => {
            let (lam, mu) = (parse(lambda, ctx)?, parse(mu, ctx)?);
            let v = oracle_product(&lam, &mu).map_err(|e| Outcome::usage(e.to_string()))?;
            let terms = pvector_terms(&v)?;
            if json {
                expansion_json(&terms).to_string()
            } else {
                expansion_text(&terms)
            }
        }
        Command::Verify {
            suite,
            bound,
            k,
            n,
            samples,
            seed,
        } => return run_suite(suite, *bound, *k, *n, *samples, *seed, json),
    };
    Ok(Outcome::ok(text))
}

fn run_suite(
    suite: &str,
    bound: Option<u32>,
    k: Option<usize>,
    n: Option<usize>,
    samples: Option<usize>,
    seed: u64,
    json: bool,
) -> Result<Outcome, Outcome> {
    let kn = |d: usize| (k.unwrap_or(d), n.unwrap_or(d));
    let sl4 =
        |r: Result<Report, crate::sl4net::Sl4Error>| r.map_err(|e| Outcome::usage(e.to_string()));
    let report = match suite {
        "appendixA" => verify::appendix_a(),
        "main-example" => verify::main_example(),
        "pieri" => {
            let (k, n) = kn(5);
            verify::pieri(k.max(n))
        }
        "oracle" => {
            let (k, n) = kn(3);
            verify::oracle(k, n, samples.unwrap_or(200), seed)
        }
        "assoc" => {
            let (k, n) = kn(3);
            verify::assoc(k, n, samples.unwrap_or(500), seed)
        }
        "t0" => {
            let (k, n) = kn(3);
            verify::t_zero(k, n)
        }
        "z3" => {
            let (k, n) = kn(3);
            verify::z3(k, n)
        }
        "d6" => verify::d6(bound.unwrap_or(4) as usize),
        "sl4-dualtetra" => sl4(verify::sl4_dual_tetra(bound.unwrap_or(3)))?,
        "sl4-octa" => sl4(verify::sl4_octa(bound.unwrap_or(2)))?,
        "sl4-tetra" => sl4(verify::sl4_tetra(bound.unwrap_or(2)))?,
        "double-puzzle" => {
            let (k, n) = kn(2);
            sl4(verify::double_puzzle(k, n, 2))?
        }
        other => {
            let names: Vec<&str> = verify::SUITES.iter().map(|s| s.0).collect();
            return Err(Outcome::usage(format!(
                "unknown suite {other:?}; expected one of {}",
                names.join(", ")
            )));
        }
    };
    let stdout = if json {
        let mut v = serde_json::to_value(&report).expect("serializable");
        v["suite"] = json!(suite);
        v.to_string()
    } else {
        let mut s = format!(
            "{suite}: {} checked, {} failed",
            report.checked, report.failed
        );
        if report.secondary_failed > 0 {
            let _ = write!(s, ", {} secondary", report.secondary_failed);
        }
        for f in report
            .first_failures
            .iter()
            .chain(&report.secondary_failures)
        {
            let _ = write!(s, "\n  {f}");
        }
        s
    };
    Ok(Outcome {
        status: if report.passed() {
            Status::Ok
        } else {
            Status::Failed
        },
        stdout,
        stderr: String::new(),
    })
}
