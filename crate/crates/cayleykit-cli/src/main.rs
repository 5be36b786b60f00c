//! cayleykit: exact Ehrhart data, Cayley decompositions, Gorenstein
//! duality, and effective volume bounds for lattice polytopes.

mod generate;
mod reports;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use cayleykit::bounds::{
    cayley_bound, check_volume_bound, lz_cube_constant_expr, volume_bound_expr, BoundExpr,
    Verdict,
};
use cayleykit::cayley::{decompose_with_bounds, minimal_cayley_codim, BoundMode};
use cayleykit::ehrhart::{degree_via_interior, h_star};
use cayleykit::error::Error;
use cayleykit::gorenstein::{
    gorenstein_dual, involution_map, verify_gorenstein_cayley_bound, BoundStatus,
};
use cayleykit::io::{read_polytope_file, write_polytope_file, PolytopeDocument};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{Map, Value};

use reports::{
    certificate_to_value, decomposition_to_value, h_star_to_value, polytope_to_value,
    print_value,
};

#[derive(Parser)]
#[command(name = "cayleykit", version, about = "Lattice polytope toolkit: exact Ehrhart data, Cayley decompositions, Gorenstein duality, volume bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// h*-polynomial, degree, leading coefficient, volume, Gorenstein flag
    Hstar { file: PathBuf },
    /// Degree of the h*-polynomial, cross-checked two ways
    Degree { file: PathBuf },
    /// Normalized volume
    Volume { file: PathBuf },
    /// Cayley decomposition commands
    #[command(subcommand)]
    Cayley(CayleyCmd),
    /// Gorenstein duality commands
    #[command(subcommand)]
    Gorenstein(GorensteinCmd),
    /// Bound formula commands
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Write the default corpus of polytope documents
    Generate(GenerateArgs),
    /// Run every check over a corpus directory, reporting JSON lines
    VerifyAll(VerifyArgs),
}

#[derive(Subcommand)]
enum CayleyCmd {
    /// Run the constructive decomposition pipeline
    Decompose {
        file: PathBuf,
        /// Also run the exhaustive minimal-codimension search
        #[arg(long)]
        oracle: bool,
        /// How to treat the pipeline's proved inequalities
        #[arg(long, value_enum, default_value_t = BoundsArg::Hard)]
        assert_bounds: BoundsArg,
    },
    /// Exhaustive minimal Cayley codimension (small vertex counts only)
    Oracle {
        file: PathBuf,
        /// Vertex budget for the exhaustive search
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsArg {
    /// Error out when a proved inequality fails
    Hard,
    /// Record violations in the report instead
    Warn,
}

#[derive(Subcommand)]
enum GorensteinCmd {
    /// Dual Gorenstein polytope via cone polarity, with the double-dual map
    Dual { file: PathBuf },
    /// Check the Gorenstein codimension bound q <= 2d-1
    CheckBound {
        file: PathBuf,
        /// Vertex budget for the exhaustive search
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Evaluate the volume bound for a degree and leading coefficient
    Eval(EvalArgs),
    /// Measure a polytope against the bounds
    Check { file: PathBuf },
}

#[derive(Args)]
struct EvalArgs {
    /// h* degree
    #[arg(long)]
    d: usize,
    /// Leading h* coefficient (decimal, any size)
    #[arg(long)]
    k: String,
    /// Materialize exact decimal values (refused above the digit budget)
    #[arg(long, conflicts_with = "digits")]
    exact: bool,
    /// Report digit counts and leading digits (the default)
    #[arg(long)]
    digits: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// Output directory for the documents
    #[arg(long, default_value = "corpus")]
    out: PathBuf,
    /// Seed for the randomized families
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    dir: PathBuf,
    /// Also write the report lines to a file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings (makes reports non-deterministic)
    #[arg(long)]
    timings: bool,
    /// Vertex budget for the exhaustive searches
    #[arg(long, default_value_t = 10)]
    oracle_budget: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_doc(file: &Path) -> Result<PolytopeDocument> {
    read_polytope_file(file).with_context(|| format!("loading {}", file.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Hstar { file } => {
            let doc = read_doc(&file)?;
            let hs = h_star(&doc.polytope)?;
            print_value(&h_star_to_value(
                doc.name.as_deref(),
                doc.polytope.ambient_dim(),
                &hs,
            ));
            Ok(0)
        }
        Cmd::Degree { file } => {
            let doc = read_doc(&file)?;
            let hs = h_star(&doc.polytope)?;
            let via_interior = degree_via_interior(&doc.polytope)?;
            if hs.degree() != via_interior {
                bail!(
                    "degree disagreement: h* says {}, interior counting says {via_interior}",
                    hs.degree()
                );
            }
            let mut obj = Map::new();
            obj.insert("degree".into(), Value::from(hs.degree() as u64));
            obj.insert("codegree".into(), Value::from(hs.codegree() as u64));
            print_value(&Value::from(obj));
            Ok(0)
        }
        Cmd::Volume { file } => {
            let doc = read_doc(&file)?;
            let hs = h_star(&doc.polytope)?;
            let mut obj = Map::new();
            obj.insert(
                "normalized_volume".into(),
                cayleykit::io::coord_to_value(&hs.normalized_volume()),
            );
            print_value(&Value::from(obj));
            Ok(0)
        }
        Cmd::Cayley(cmd) => run_cayley(cmd),
        Cmd::Gorenstein(cmd) => run_gorenstein(cmd),
        Cmd::Bounds(cmd) => run_bounds(cmd),
        Cmd::Generate(args) => run_generate(args),
        Cmd::VerifyAll(args) => run_verify(args),
    }
}

fn run_cayley(cmd: CayleyCmd) -> Result<u8> {
    match cmd {
        CayleyCmd::Decompose {
            file,
            oracle,
            assert_bounds,
        } => {
            let doc = read_doc(&file)?;
            let mode = match assert_bounds {
                BoundsArg::Hard => BoundMode::Hard,
                BoundsArg::Warn => BoundMode::Warn,
            };
            let dec = decompose_with_bounds(&doc.polytope, mode)?;
            let mut value = decomposition_to_value(&dec);
            if oracle {
                let obj = value.as_object_mut().expect("decomposition is an object");
                match minimal_cayley_codim(&doc.polytope, None) {
                    Ok((q_star, _)) => {
                        obj.insert("q_oracle".into(), Value::from(q_star as u64));
                    }
                    Err(Error::BudgetExceeded { .. }) => {
                        obj.insert("q_oracle".into(), Value::Null);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            print_value(&value);
            let any_hard_violation = dec.bounds().iter().any(|c| c.hard && !c.held);
            let any_violation = dec.bounds().iter().any(|c| !c.held);
            Ok(if any_hard_violation {
                2
            } else if any_violation {
                3
            } else {
                0
            })
        }
        CayleyCmd::Oracle { file, budget } => {
            let doc = read_doc(&file)?;
            match minimal_cayley_codim(&doc.polytope, budget) {
                Ok((q_star, dec)) => {
                    let mut obj = Map::new();
                    obj.insert("q_star".into(), Value::from(q_star as u64));
                    obj.insert("s".into(), Value::from(dec.s() as u64));
                    obj.insert(
                        "factors".into(),
                        Value::from(
                            dec.factors()
                                .iter()
                                .map(polytope_to_value)
                                .collect::<Vec<_>>(),
                        ),
                    );
                    print_value(&Value::from(obj));
                    Ok(0)
                }
                Err(Error::BudgetExceeded {
                    what,
                    actual,
                    limit,
                }) => {
                    eprintln!("inconclusive: {what} needs {actual} over the budget of {limit}");
                    Ok(3)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn run_gorenstein(cmd: GorensteinCmd) -> Result<u8> {
    match cmd {
        GorensteinCmd::Dual { file } => {
            let doc = read_doc(&file)?;
            let cert = gorenstein_dual(&doc.polytope)?;
            let (_, map) = involution_map(&doc.polytope, &cert)?;
            print_value(&certificate_to_value(&cert, &map));
            Ok(0)
        }
        GorensteinCmd::CheckBound { file, budget } => {
            let doc = read_doc(&file)?;
            let report = verify_gorenstein_cayley_bound(&doc.polytope, budget)?;
            print_value(&serde_json::to_value(&report)?);
            Ok(match report.status {
                BoundStatus::Pass => 0,
                BoundStatus::Fail => 2,
                BoundStatus::Inconclusive => 3,
            })
        }
    }
}

fn bound_value_json(expr: &BoundExpr, exact: bool) -> Result<Value> {
    let mut obj = Map::new();
    if exact {
        let v = expr.exact()?;
        obj.insert("decimal".into(), Value::from(v.to_string()));
    } else {
        obj.insert(
            "digit_count".into(),
            Value::from(expr.digit_count()?.to_string()),
        );
        obj.insert(
            "leading_digits".into(),
            Value::from(expr.leading_digits(20)?),
        );
    }
    Ok(Value::from(obj))
}

fn run_bounds(cmd: BoundsCmd) -> Result<u8> {
    match cmd {
        BoundsCmd::Eval(args) => {
            let k = BigUint::from_str(args.k.trim())
                .map_err(|_| anyhow::anyhow!("--k must be a decimal integer"))?;
            let exact = args.exact;
            let mut obj = Map::new();
            obj.insert("d".into(), Value::from(args.d as u64));
            obj.insert("k".into(), Value::from(k.to_string()));
            let n = cayley_bound(args.d);
            obj.insert("N".into(), Value::from(n as u64));
            obj.insert("cayley_bound".into(), Value::from(n as u64));
            let vb = volume_bound_expr(args.d, &k)?;
            obj.insert("volume_bound".into(), bound_value_json(&vb, exact)?);
            if args.d >= 1 {
                let c = lz_cube_constant_expr(n, &k)?;
                obj.insert("C".into(), bound_value_json(&c, exact)?);
            }
            print_value(&Value::from(obj));
            Ok(0)
        }
        BoundsCmd::Check { file } => {
            let doc = read_doc(&file)?;
            let report = check_volume_bound(&doc.polytope)?;
            print_value(&serde_json::to_value(&report)?);
            let verdicts = [
                Some(report.verdicts.volume_within_bound),
                Some(report.verdicts.cayley_within_bound),
                report.verdicts.gorenstein_volume_within_bound,
            ];
            let any_fail = verdicts.iter().flatten().any(|v| *v == Verdict::Fail);
            let any_inconclusive = verdicts
                .iter()
                .flatten()
                .any(|v| *v == Verdict::Inconclusive);
            Ok(if any_fail {
                2
            } else if any_inconclusive {
                3
            } else {
                0
            })
        }
    }
}

fn run_generate(args: GenerateArgs) -> Result<u8> {
    let docs = generate::default_corpus(args.seed)?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    for doc in &docs {
        let name = doc.name.as_deref().expect("generated documents are named");
        let path = args.out.join(format!("{name}.json"));
        write_polytope_file(&path, doc)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut obj = Map::new();
    obj.insert("written".into(), Value::from(docs.len() as u64));
    obj.insert(
        "dir".into(),
        Value::from(args.out.display().to_string()),
    );
    obj.insert("seed".into(), Value::from(args.seed));
    print_value(&Value::from(obj));
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<u8> {
    let outcome = verify::run_verify_all(&args.dir, args.oracle_budget, args.timings)?;
    let text = outcome.lines.join("\n") + "\n";
    if let Some(out) = &args.out {
        std::fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
    }
    print!("{text}");
    Ok(u8::try_from(outcome.exit_code).expect("exit codes are small"))
}
