use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use antiramsey::claimcheck::{verify_beta_identity, verify_claim8, verify_region, VerifyReport};
use antiramsey::construct::{construct_forest_avoider, construct_matching};
use antiramsey::detect::{find_rainbow, find_rainbow_oracle, DetectBudget, DetectOutcome};
use antiramsey::exact::{ar_exact, ExactBudget, ExactStatus};
use antiramsey::formulas::{
    ar_linear_forest, ar_matching, classify_region, interval_bounds, interval_nonempty, ParamTriple,
};
use antiramsey::model::{read_coloring, write_coloring};
use antiramsey::search::{conjecture_probe, search_lower_bound, SearchConfig, SearchReport};
use antiramsey::{EdgeColoring, LinearForest};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "antiramsey",
    version,
    about = "Anti-Ramsey numbers of matchings and linear forests"
)]
struct Cli {
    /// Emit exactly one JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form values.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// The interval g(k,t) <= n <= f(k,t).
    Interval {
        #[arg(long)]
        k: BigInt,
        #[arg(long)]
        t: BigInt,
    },
    /// Which theorem covers (k, t, n).
    Classify(Triple),
    /// Write an extremal coloring to a file.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Look for a rainbow copy of a linear forest.
    Detect {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        forest: LinearForest,
        /// Use the plain enumeration oracle (n <= 12).
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_nodes: Option<u64>,
    },
    /// Exact AR(n, F) by complete search.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forest: LinearForest,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_nodes: Option<u64>,
        #[arg(long)]
        wall_secs: Option<f64>,
        /// Write the witness coloring here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Randomized lower bound for AR(n, F).
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forest: LinearForest,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare search bounds for kP4+tP2 and (2k+t)P2.
    Probe {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exact checks of the counting argument.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum FormulaCmd {
    /// AR(n, tP2).
    Matching {
        #[arg(long)]
        n: BigInt,
        #[arg(long)]
        t: BigInt,
    },
    /// AR(n, kP4 + tP2).
    Forest(Triple),
}

#[derive(Subcommand)]
enum ConstructCmd {
    Matching {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    Forest {
        #[command(flatten)]
        triple: Triple,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Omega(1,...,1) >= Omega(S) over all compositions.
    Claim8 {
        #[arg(long)]
        k_max: u64,
        #[arg(long)]
        t_max: u64,
        #[arg(long)]
        vprime_extra: u64,
    },
    /// mu > max{beta1, beta2} and the interval identities.
    Region {
        #[arg(long)]
        k_max: u64,
        #[arg(long)]
        t_max: u64,
    },
    /// x_bound + y_bound = beta1 as a polynomial identity.
    BetaIdentity {
        #[arg(long, default_value_t = 60)]
        max: u64,
    },
}

#[derive(Args)]
struct Triple {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    n: u64,
}

impl Triple {
    fn params(&self) -> antiramsey::Result<ParamTriple> {
        ParamTriple::new(self.k, self.t, self.n)
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    restarts: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    moves: Option<u64>,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let mut c = SearchConfig::with_seed(self.seed);
        if let Some(r) = self.restarts {
            c.restarts = r as usize;
        }
        if let Some(m) = self.moves {
            c.moves_per_restart = m as usize;
        }
        c
    }
}

/// What a command produced: a JSON document, its human rendering, and an exit code.
struct Output {
    json: Value,
    human: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, human: impl Into<String>) -> Self {
        Self {
            json,
            human: human.into(),
            code: 0,
        }
    }
}

/// A JSON number of any size.
fn big(v: &BigInt) -> Value {
    serde_json::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

fn save(coloring: &EdgeColoring, path: &Path) -> antiramsey::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_coloring(coloring, &mut out)?;
    out.flush()?;
    Ok(())
}

fn report_output(report: &VerifyReport) -> Output {
    let passed = report.passed();
    Output {
        json: json!({ "passed": passed, "rows": report.rows }),
        human: report.to_tsv().trim_end().to_owned(),
        code: if passed { 0 } else { EXIT_VERIFY },
    }
}

fn search_json(r: &SearchReport) -> Value {
    json!({
        "colors": r.certificate.colors(),
        "forest": r.certificate.forest().to_string(),
        "coloring": r.certificate.coloring().colors(),
        "stats": r.stats,
    })
}

fn run(cmd: Command) -> antiramsey::Result<Output> {
    Ok(match cmd {
        Command::Formula(FormulaCmd::Matching { n, t }) => {
            let ar = ar_matching(&n, &t)?;
            Output::ok(json!({ "ar": big(&ar) }), format!("AR({n}, {t}P2) = {ar}"))
        }
        Command::Formula(FormulaCmd::Forest(triple)) => {
            let p = triple.params()?;
            let ar = ar_linear_forest(&p)?;
            let region = classify_region(&p);
            Output::ok(
                json!({ "ar": big(&ar), "region": region.to_string() }),
                format!("AR({}, {}P4+{}P2) = {ar}  [{region}]", p.n, p.k, p.t),
            )
        }
        Command::Interval { k, t } => {
            let b = interval_bounds(&k, &t)?;
            let nonempty = interval_nonempty(&k, &t)?;
            let f = format!("{}/{}", b.f.numer(), b.f.denom());
            Output::ok(
                json!({ "g": big(&b.g), "f": f, "nonempty": nonempty }),
                format!("g = {}\nf = {f}\nnonempty = {nonempty}", b.g),
            )
        }
        Command::Classify(triple) => {
            let region = classify_region(&triple.params()?);
            Output::ok(json!({ "region": region.to_string() }), region.to_string())
        }
        Command::Construct(ConstructCmd::Matching { n, t, output }) => {
            let c = construct_matching(n, t)?;
            save(&c, &output)?;
            Output::ok(
                json!({ "n": n, "colors": c.color_count(), "file": output.display().to_string() }),
                format!("wrote {} colors on K_{n} to {}", c.color_count(), output.display()),
            )
        }
        Command::Construct(ConstructCmd::Forest { triple, output }) => {
            let c = construct_forest_avoider(&triple.params()?)?;
            save(&c, &output)?;
            Output::ok(
                json!({ "n": triple.n, "colors": c.color_count(), "file": output.display().to_string() }),
                format!(
                    "wrote {} colors on K_{} to {}",
                    c.color_count(),
                    triple.n,
                    output.display()
                ),
            )
        }
        Command::Detect {
            coloring,
            forest,
            oracle,
            max_nodes,
        } => {
            let c = read_coloring(BufReader::new(File::open(&coloring)?))?;
            let outcome = if oracle {
                match find_rainbow_oracle(&c, &forest)? {
                    Some(e) => DetectOutcome::Found(e),
                    None => DetectOutcome::Absent,
                }
            } else {
                let budget = match max_nodes {
                    Some(m) => DetectBudget::nodes(m)?,
                    None => DetectBudget::unlimited(),
                };
                find_rainbow(&c, &forest, budget)?
            };
            match outcome {
                DetectOutcome::Found(e) => Output::ok(
                    json!({ "found": true, "embedding": e }),
                    format!("rainbow {forest} found: {:?}", e.paths),
                ),
                DetectOutcome::Absent => Output::ok(json!({ "found": false }), format!("no rainbow {forest}")),
                DetectOutcome::BudgetExceeded { nodes } => Output {
                    json: json!({ "found": null, "status": "budget-exceeded", "nodes": nodes }),
                    human: format!("undecided: node budget exhausted after {nodes} nodes"),
                    code: EXIT_BUDGET,
                },
            }
        }
        Command::Exact {
            n,
            forest,
            max_nodes,
            wall_secs,
            output,
        } => {
            let mut budget = ExactBudget::default();
            if max_nodes.is_some() {
                budget.max_nodes = max_nodes;
            }
            if let Some(w) = wall_secs {
                let d = Duration::try_from_secs_f64(w)
                    .ok()
                    .filter(|d| !d.is_zero())
                    .ok_or_else(|| antiramsey::Error::Domain(format!("--wall-secs must be positive, got {w}")))?;
                budget.wall_limit = Some(d);
            }
            let r = ar_exact(n, &forest, budget)?;
            if let (Some(path), Some(w)) = (&output, &r.witness) {
                save(w, path)?;
            }
            let status = r.status.as_str();
            let label = match r.status {
                ExactStatus::Exact => "",
                ExactStatus::LowerBoundOnly => " (lower bound only)",
            };
            Output {
                json: json!({
                    "n": n,
                    "forest": forest.to_string(),
                    "value": r.value,
                    "status": status,
                    "nodes": r.nodes,
                    "witness": r.witness.as_ref().map(|w| w.colors()),
                }),
                human: format!(
                    "AR({n}, {forest}) = {}{label}\nstatus = {status}\nnodes = {}",
                    r.value, r.nodes
                ),
                code: if r.status == ExactStatus::Exact { 0 } else { EXIT_BUDGET },
            }
        }
        Command::Search {
            n,
            forest,
            search,
            output,
        } => {
            let r = search_lower_bound(n, &forest, &search.config())?;
            if let Some(path) = &output {
                save(r.certificate.coloring(), path)?;
            }
            let s = &r.stats;
            Output::ok(
                json!({
                    "best_colors": s.best_colors,
                    "restarts": s.restarts,
                    "moves_tried": s.moves_tried,
                    "moves_accepted": s.moves_accepted,
                    "stats": s,
                    "coloring": r.certificate.coloring().colors(),
                }),
                format!(
                    "AR({n}, {forest}) >= {}\nrestarts = {}\nmoves_tried = {}\nmoves_accepted = {}\nbudget_rejections = {}",
                    s.best_colors, s.restarts, s.moves_tried, s.moves_accepted, s.budget_rejections
                ),
            )
        }
        Command::Probe { triple, search } => {
            let p = conjecture_probe(
                triple.k as usize,
                triple.t as usize,
                triple.n as usize,
                &search.config(),
            )?;
            let formula = p.matching_formula.as_ref().map(big);
            let formula_text = p
                .matching_formula
                .as_ref()
                .map_or_else(|| "undefined".to_owned(), |f| f.to_string());
            Output::ok(
                json!({
                    "k": p.k,
                    "t": p.t,
                    "n": p.n,
                    "forest": search_json(&p.forest),
                    "matching": search_json(&p.matching),
                    "matching_formula": formula,
                    "flagged": p.flagged,
                }),
                format!(
                    "{} >= {}\n{} >= {}\nmatching formula = {formula_text}\nflagged = {}",
                    p.forest.certificate.forest(),
                    p.forest.certificate.colors(),
                    p.matching.certificate.forest(),
                    p.matching.certificate.colors(),
                    p.flagged
                ),
            )
        }
        Command::Verify(VerifyCmd::Claim8 {
            k_max,
            t_max,
            vprime_extra,
        }) => report_output(&verify_claim8(k_max, t_max, vprime_extra)?),
        Command::Verify(VerifyCmd::Region { k_max, t_max }) => report_output(&verify_region(k_max, t_max)?),
        Command::Verify(VerifyCmd::BetaIdentity { max }) => report_output(&verify_beta_identity(max)?),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.human);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
