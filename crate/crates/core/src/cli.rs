//! Command-line front end. Data goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success; `ocnp` uses 0 circuit neighbor, 1 not a circuit
//! neighbor, 2 already optimal, 3 optimum not unique; 4 infeasible LP;
//! 5 unbounded LP or unbounded improving circuit; 6 work budget or iteration
//! cap exceeded; 7 correspondence check failed; 64 bad command line; 65 bad
//! input data; 66 I/O failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::conformal;
use crate::ddstep::{self, AugmentOptions, StepOutcome, StepRule};
use crate::error::{Error, Result};
use crate::gen;
use crate::io::{self, circuit_json, conformal_json, rat_json, vec_json, BenchRow};
use crate::lp::{self, LpOutcome};
use crate::ocnp::{self, OcnpVerdict};
use crate::polyhedron::LpInstance;
use crate::ratlin::{self, Rat, RatVec};
use crate::reductions::{self, Digraph};
use crate::{circuits, WorkBudget};

/// Environment variable overriding the default work budget.
pub const BUDGET_ENV: &str = "CIRCUITWALK_WORK_BUDGET";

pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_UNBOUNDED: i32 = 5;
pub const EXIT_BUDGET: i32 = 6;
pub const EXIT_VERIFY_FAILED: i32 = 7;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

#[derive(Parser, Debug)]
#[command(name = "circuitwalk", version, about = "Exact circuit augmentation toolkit for linear programs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Approx,
    Steepest,
}

impl From<Mode> for StepRule {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => StepRule::Exact,
            Mode::Approx => StepRule::Approx,
            Mode::Steepest => StepRule::Steepest,
        }
    }
}

#[derive(Args, Debug)]
struct FromArg {
    /// Start point: `zeros`, a file holding one point, or the coordinates
    /// themselves as one quoted string.
    #[arg(long = "from", allow_hyphen_values = true)]
    from: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the LP; report optimum, value and uniqueness.
    Solve { file: PathBuf },
    /// List all circuits of the polyhedron in canonical order.
    Circuits { file: PathBuf },
    /// One circuit step from a start point.
    Ddstep {
        file: PathBuf,
        #[command(flatten)]
        from: FromArg,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Is the unique optimum a circuit step away from the start point?
    Ocnp {
        file: PathBuf,
        #[command(flatten)]
        from: FromArg,
    },
    /// Conformal circuit decomposition of `to - from`.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        from: FromArg,
        #[arg(long = "to", allow_hyphen_values = true)]
        to: String,
    },
    /// Repeat circuit steps until optimal.
    Augment {
        file: PathBuf,
        #[command(flatten)]
        from: FromArg,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Write the step trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_iterations: usize,
    },
    /// Turn a digraph into its perturbed circulation LP.
    Reduce {
        file: PathBuf,
        /// Output file; stdout when absent.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Maximum-cost simple directed cycle, perturbing unweighted graphs first.
    LongestCycle { file: PathBuf },
    /// Check that the deepest-descent step of the reduction picks the longest cycle.
    Verify { file: PathBuf },
    /// Exact versus approximate steps on random digraph reductions.
    Bench {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Arc probability as a rational `p/q`.
        #[arg(long, default_value = "1/2")]
        arc_prob: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

/// Parses `argv` (program name first), runs one command and returns the exit
/// code, writing to the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Same as [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let ctx = Ctx { format: cli.format, budget };
    match ctx.dispatch(cli.command) {
        Ok(Report { text, json, code }) => {
            let body = match ctx.format {
                Format::Text => text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&json).expect("json values serialize")),
            };
            if let Err(e) = out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_IO;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn budget_from_env() -> std::result::Result<WorkBudget, String> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(WorkBudget)
            .map_err(|_| format!("{BUDGET_ENV} must be a nonnegative integer, found `{v}`")),
        Err(_) => Ok(WorkBudget::default()),
    }
}

/// Exit code for an error escaping a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InfeasibleLp => EXIT_INFEASIBLE,
        Error::UnboundedLp { .. } => EXIT_UNBOUNDED,
        Error::WorkBudget { .. } | Error::IterationCap { .. } => EXIT_BUDGET,
        Error::Io(_) => EXIT_IO,
        Error::Dimension(_) | Error::NotPointed { .. } | Error::Usage(_) | Error::Parse { .. } => EXIT_DATA,
    }
}

struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

struct Ctx {
    format: Format,
    budget: WorkBudget,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn with_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn load_instance(path: &Path) -> Result<LpInstance> {
    with_file(path, io::parse_instance(&read(path)?))
}

fn load_graph(path: &Path) -> Result<Digraph> {
    with_file(path, io::parse_graph(&read(path)?))
}

/// `zeros`, a readable file, or inline coordinates.
fn load_point(spec: &str, n: usize) -> Result<RatVec> {
    let path = Path::new(spec);
    if spec.trim() != "zeros" && path.is_file() {
        with_file(path, io::parse_point(&read(path)?, n))
    } else {
        io::parse_point(spec, n)
    }
}

fn step_report(outcome: &StepOutcome, x0: &[Rat], c: &[Rat]) -> Report {
    match outcome {
        StepOutcome::Step(s) => {
            let next = s.apply(x0);
            let value = ratlin::dot(c, &next);
            Report::ok(
                format!(
                    "status: step\ncircuit: {}\nalpha: {}\nimprovement: {}\npoint: {}\nvalue: {}\n",
                    s.circuit,
                    s.alpha,
                    s.improvement,
                    ratlin::format_vec(&next),
                    value
                ),
                json!({
                    "status": "step",
                    "circuit": circuit_json(&s.circuit),
                    "alpha": rat_json(&s.alpha),
                    "improvement": rat_json(&s.improvement),
                    "point": vec_json(&next),
                    "value": rat_json(&value),
                }),
            )
        }
        StepOutcome::Optimal => Report::ok("status: optimal\n".into(), json!({"status": "optimal"})),
        StepOutcome::UnboundedImprovement(g) => Report {
            text: format!("status: unbounded-improvement\ncircuit: {g}\n"),
            json: json!({"status": "unbounded-improvement", "circuit": circuit_json(g)}),
            code: EXIT_UNBOUNDED,
        },
    }
}

impl Ctx {
    fn dispatch(&self, cmd: Command) -> Result<Report> {
        match cmd {
            Command::Solve { file } => self.solve(&file),
            Command::Circuits { file } => self.circuits(&file),
            Command::Ddstep { file, from, mode } => self.ddstep(&file, &from.from, mode.into()),
            Command::Ocnp { file, from } => self.ocnp(&file, &from.from),
            Command::Decompose { file, from, to } => self.decompose(&file, &from.from, &to),
            Command::Augment {
                file,
                from,
                mode,
                trace,
                max_iterations,
            } => self.augment(&file, &from.from, mode.into(), trace.as_deref(), max_iterations),
            Command::Reduce { file, output } => self.reduce(&file, output.as_deref()),
            Command::LongestCycle { file } => self.longest_cycle(&file),
            Command::Verify { file } => self.verify(&file),
            Command::Bench {
                nodes,
                trials,
                seed,
                arc_prob,
                output,
            } => self.bench(nodes, trials, seed, &arc_prob, output.as_deref()),
        }
    }

    fn solve(&self, file: &Path) -> Result<Report> {
        let inst = load_instance(file)?;
        let p = &inst.polyhedron;
        Ok(match lp::solve_lp(p, &inst.objective)? {
            LpOutcome::Optimal { vertex, value } => {
                let report = lp::verify_unique(p, &inst.objective, &vertex)?;
                let mut text = format!(
                    "status: optimal\nvertex: {}\nvalue: {value}\nunique: {}\n",
                    ratlin::format_vec(&vertex),
                    report.unique
                );
                if let Some(w) = &report.witness {
                    text.push_str(&format!("witness: {}\n", ratlin::format_vec(w)));
                }
                Report::ok(
                    text,
                    json!({
                        "status": "optimal",
                        "vertex": vec_json(&vertex),
                        "value": rat_json(&value),
                        "uniqueness": serde_json::to_value(&report).expect("report serializes"),
                    }),
                )
            }
            LpOutcome::Unbounded { direction } => Report {
                text: format!("unbounded\ndirection: {}\n", ratlin::format_vec(&direction)),
                json: json!({"status": "unbounded", "direction": vec_json(&direction)}),
                code: EXIT_UNBOUNDED,
            },
            LpOutcome::Infeasible => Report {
                text: "infeasible\n".into(),
                json: json!({"status": "infeasible"}),
                code: EXIT_INFEASIBLE,
            },
        })
    }

    fn circuits(&self, file: &Path) -> Result<Report> {
        let inst = load_instance(file)?;
        let all = circuits::enumerate_circuits(&inst.polyhedron, self.budget)?;
        Ok(Report::ok(
            io::format_circuits(&all),
            json!({"circuits": all.iter().map(circuit_json).collect::<Vec<_>>()}),
        ))
    }

    fn ddstep(&self, file: &Path, from: &str, rule: StepRule) -> Result<Report> {
        let inst = load_instance(file)?;
        let x0 = load_point(from, inst.polyhedron.dim())?;
        let outcome = ddstep::step(&inst.polyhedron, &inst.objective, &x0, rule, self.budget)?;
        Ok(step_report(&outcome, &x0, &inst.objective))
    }

    fn ocnp(&self, file: &Path, from: &str) -> Result<Report> {
        let inst = load_instance(file)?;
        let x0 = load_point(from, inst.polyhedron.dim())?;
        let verdict = ocnp::decide_ocnp(&inst.polyhedron, &inst.objective, &x0)?;
        let mut text = format!("verdict: {}\n", verdict.label());
        let mut doc = json!({"verdict": verdict.label()});
        match &verdict {
            OcnpVerdict::AlreadyOptimal => {}
            OcnpVerdict::CircuitNeighbor { xstar } | OcnpVerdict::NotCircuitNeighbor { xstar } => {
                text.push_str(&format!("optimum: {}\n", ratlin::format_vec(xstar)));
                doc["optimum"] = vec_json(xstar);
            }
            OcnpVerdict::NotUnique { xstar, report } => {
                text.push_str(&format!("optimum: {}\n", ratlin::format_vec(xstar)));
                if let Some(w) = &report.witness {
                    text.push_str(&format!("witness: {}\n", ratlin::format_vec(w)));
                }
                doc["optimum"] = vec_json(xstar);
                doc["uniqueness"] = serde_json::to_value(report).expect("report serializes");
            }
        }
        Ok(Report {
            text,
            json: doc,
            code: verdict.exit_code(),
        })
    }

    fn decompose(&self, file: &Path, from: &str, to: &str) -> Result<Report> {
        let inst = load_instance(file)?;
        let n = inst.polyhedron.dim();
        let x = load_point(from, n)?;
        let y = load_point(to, n)?;
        let sum = conformal::decompose(&inst.polyhedron, &ratlin::sub(&y, &x))?;
        Ok(Report::ok(io::format_conformal(&sum), json!({"terms": conformal_json(&sum)})))
    }

    fn augment(&self, file: &Path, from: &str, rule: StepRule, trace_path: Option<&Path>, cap: usize) -> Result<Report> {
        let inst = load_instance(file)?;
        let c = &inst.objective;
        let x0 = load_point(from, inst.polyhedron.dim())?;
        let opts = AugmentOptions {
            max_iterations: cap,
            budget: self.budget,
        };
        let trace = match ddstep::augment(&inst.polyhedron, c, &x0, rule, opts) {
            Ok(t) => t,
            Err(Error::IterationCap { cap, trace }) => {
                if let Some(path) = trace_path {
                    write(path, &io::format_trace_csv(&trace, c))?;
                }
                return Err(Error::IterationCap { cap, trace });
            }
            Err(e) => return Err(e),
        };
        if let Some(path) = trace_path {
            write(path, &io::format_trace_csv(&trace, c))?;
        }
        let last = trace.last();
        let value = ratlin::dot(c, last);
        Ok(Report::ok(
            format!(
                "iterations: {}\npoint: {}\nvalue: {value}\n",
                trace.steps.len(),
                ratlin::format_vec(last)
            ),
            json!({
                "rule": rule.to_string(),
                "iterations": trace.steps.len(),
                "point": vec_json(last),
                "value": rat_json(&value),
                "steps": trace.steps.iter().map(|s| json!({
                    "circuit": circuit_json(&s.circuit),
                    "alpha": rat_json(&s.alpha),
                    "improvement": rat_json(&s.improvement),
                })).collect::<Vec<_>>(),
            }),
        ))
    }

    fn reduce(&self, file: &Path, output: Option<&Path>) -> Result<Report> {
        let g = load_graph(file)?;
        let inst = reductions::build_reduction(&g)?;
        let text = io::format_instance(&inst.lp);
        let doc = json!({
            "nodes": g.nodes(),
            "arcs": inst.arc_index_map.iter().map(|&(t, h)| json!([t + 1, h + 1])).collect::<Vec<_>>(),
            "costs": vec_json(inst.graph.costs().expect("perturbed graph has costs")),
            "x0": vec_json(&inst.x0),
        });
        match output {
            Some(path) => {
                write(path, &text)?;
                Ok(Report::ok(String::new(), doc))
            }
            None => {
                let mut doc = doc;
                doc["instance"] = Value::String(text.clone());
                Ok(Report::ok(text, doc))
            }
        }
    }

    fn longest_cycle(&self, file: &Path) -> Result<Report> {
        let mut g = load_graph(file)?;
        if g.costs().is_none() {
            g = reductions::perturb_costs(&g)?;
        }
        Ok(match reductions::longest_cycle_oracle(&g, self.budget)? {
            Some((arcs, cost)) => {
                let one_based: Vec<usize> = arcs.iter().map(|a| a + 1).collect();
                let listed: Vec<String> = one_based.iter().map(|a| a.to_string()).collect();
                Report::ok(
                    format!("cycle: {}\ncost: {cost}\n", listed.join(" ")),
                    json!({"status": "cycle", "arcs": one_based, "cost": rat_json(&cost)}),
                )
            }
            None => Report::ok("no-cycle\n".into(), json!({"status": "no-cycle"})),
        })
    }

    fn verify(&self, file: &Path) -> Result<Report> {
        let g = load_graph(file)?;
        if g.costs().is_some_and(|c| c.iter().any(|x| !x.is_one())) {
            return Err(Error::usage("verify expects an unweighted or unit-cost digraph"));
        }
        let r = reductions::correspondence_report(&g, self.budget)?;
        let label = if r.holds { "holds" } else { "fails" };
        let improvement = r.step.improvement();
        let mut text = format!("correspondence: {label}\n");
        if let Some((arcs, cost)) = &r.longest {
            let listed: Vec<String> = arcs.iter().map(|a| (a + 1).to_string()).collect();
            text.push_str(&format!("cycle: {}\ncost: {cost}\n", listed.join(" ")));
        }
        if let Some(imp) = &improvement {
            text.push_str(&format!("improvement: {imp}\n"));
        }
        Ok(Report {
            text,
            json: json!({
                "correspondence": label,
                "cycle": r.longest.as_ref().map(|(a, _)| a.iter().map(|x| x + 1).collect::<Vec<_>>()),
                "cost": r.longest.as_ref().map(|(_, c)| rat_json(c)),
                "improvement": improvement.as_ref().map(rat_json),
            }),
            code: if r.holds { 0 } else { EXIT_VERIFY_FAILED },
        })
    }

    fn bench(&self, nodes: usize, trials: usize, seed: u64, arc_prob: &str, output: Option<&Path>) -> Result<Report> {
        if nodes < 2 {
            return Err(Error::usage("bench needs at least 2 nodes"));
        }
        let p = ratlin::parse_rat(arc_prob).map_err(|m| Error::usage(format!("--arc-prob: {m}")))?;
        if p < ratlin::int(0) || p > ratlin::int(1) {
            return Err(Error::usage("--arc-prob must lie in [0, 1]"));
        }
        let num: u64 = p.numer().try_into().map_err(|_| Error::usage("--arc-prob numerator too large"))?;
        let den: u64 = p.denom().try_into().map_err(|_| Error::usage("--arc-prob denominator too large"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::with_capacity(trials);
        for graph_id in 0..trials {
            let g = gen::random_digraph_with_density(&mut rng, nodes, num, den);
            rows.push(bench_row(graph_id, &g, self.budget)?);
        }
        let csv = io::format_bench_csv(&rows);
        let doc = json!({
            "rows": rows.iter().map(|r| json!({
                "graph_id": r.graph_id,
                "V": r.nodes,
                "m": r.arcs,
                "exact_improvement": rat_json(&r.exact_improvement),
                "approx_improvement": rat_json(&r.approx_improvement),
                "ratio": rat_json(&r.ratio()),
                "n_minus_rankA": r.n_minus_rank_a,
                "exact_iters": r.exact_iters,
                "approx_iters": r.approx_iters,
            })).collect::<Vec<_>>(),
        });
        match output {
            Some(path) => {
                write(path, &csv)?;
                Ok(Report::ok(String::new(), doc))
            }
            None => Ok(Report::ok(csv, doc)),
        }
    }
}

/// Exact and approximate first steps and full augmentation runs from zero on
/// the reduction of `g`.
pub fn bench_row(graph_id: usize, g: &Digraph, budget: WorkBudget) -> Result<BenchRow> {
    let mut row = BenchRow {
        graph_id,
        nodes: g.nodes(),
        arcs: g.arc_count(),
        exact_improvement: ratlin::int(0),
        approx_improvement: ratlin::int(0),
        n_minus_rank_a: 0,
        exact_iters: 0,
        approx_iters: 0,
    };
    if g.arc_count() == 0 {
        return Ok(row);
    }
    let inst = reductions::build_reduction(g)?;
    let (p, c, x0) = (&inst.lp.polyhedron, &inst.lp.objective, &inst.x0);
    let unbounded = || Error::UnboundedLp { direction: Vec::new() };
    row.exact_improvement = ddstep::exact_dd_step(p, c, x0, budget)?.improvement().ok_or_else(unbounded)?;
    row.approx_improvement = ddstep::approx_dd_step(p, c, x0)?.improvement().ok_or_else(unbounded)?;
    row.n_minus_rank_a = p.dim() - ratlin::rank(p.eq_matrix());
    let opts = AugmentOptions {
        max_iterations: 10_000,
        budget,
    };
    row.exact_iters = ddstep::augment(p, c, x0, StepRule::Exact, opts)?.steps.len();
    row.approx_iters = ddstep::augment(p, c, x0, StepRule::Approx, opts)?.steps.len();
    Ok(row)
}
