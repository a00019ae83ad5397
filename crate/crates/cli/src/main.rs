use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use induced_menger::counterexample::{self, VerificationReport, DEFAULT_ORACLE_CAP};
use induced_menger::format::{parse_instance, write_instance};
use induced_menger::minorfree::solve_minor_free;
use induced_menger::oracle::{self, OracleBudget};
use induced_menger::random::{configuration_model, random_terminals, rng_from_seed};
use induced_menger::sparsify::{degree_bound_factor, solve_bounded_degree, sparsify_full};
use induced_menger::{flow, Error, Instance, MinorFreeReport, PathSystem, SparsifyReport, VertexSet};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "induced-menger", version, about = "Pairwise anticomplete (A, B)-path packings and separators")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest vertex count the exact oracle accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Solver {
    BoundedDegree,
    MinorFree,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximum vertex-disjoint (A, B)-paths and a minimum separator.
    Flow {
        /// Instance file, or `-` for stdin.
        input: PathBuf,
    },
    /// Pairwise anticomplete (A, B)-paths.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Solver::BoundedDegree)]
        solver: Solver,
        /// Requested number of paths; a separator is reported when fewer are found.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Degree-reduction rounds; prints the kept induced subgraph and the audit.
    Sparsify { input: PathBuf },
    /// Emits the counterexample instance with `k` rows and girth at least `g`.
    GenCounterexample { k: usize, g: usize },
    /// Checks every claim about a counterexample instance file.
    Verify {
        input: PathBuf,
        /// Girth the instance was generated for (defaults to twice the row spacing).
        #[arg(long)]
        g: Option<usize>,
    },
    /// Exact maximum anticomplete packing of a small instance.
    Oracle { input: PathBuf },
    /// Random regular instances; CSV of achieved paths against the flow.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4])]
        deltas: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [24, 48])]
        sizes: Vec<usize>,
        /// Sizes of A and of B.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4])]
        terminals: Vec<usize>,
        /// Instances per parameter combination.
        #[arg(long, default_value_t = 4)]
        instances: usize,
        #[arg(long, value_enum, default_value_t = Solver::BoundedDegree)]
        solver: Solver,
    },
}

/// Failure with the process exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::VertexOutOfRange { .. }
            | Error::SelfLoop(_) => 1,
            Error::BudgetExceeded(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: 1, message }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| input_failure(format!("reading stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| input_failure(format!("reading {}: {e}", path.display())))?;
    }
    parse_instance(&text).map_err(|e| match e {
        Error::Parse { line, message } => input_failure(format!("{}:{line}: {message}", path.display())),
        other => other.into(),
    })
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

fn join(ids: impl IntoIterator<Item = usize>) -> String {
    ids.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn paths_text(paths: &PathSystem) -> String {
    paths.paths.iter().map(|p| format!("path {}\n", join(p.iter().copied()))).collect()
}

#[derive(Serialize)]
struct FlowOutput<'a> {
    schema: u32,
    paths: &'a [Vec<usize>],
    separator: &'a VertexSet,
}

fn run_flow(instance: &Instance, format: OutputFormat) -> Result<String, Failure> {
    let cert = flow::menger(&instance.graph, &instance.a, &instance.b)?;
    Ok(match format {
        OutputFormat::Json => to_json(&FlowOutput {
            schema: SCHEMA,
            paths: &cert.paths.paths,
            separator: &cert.separator.vertices,
        }),
        OutputFormat::Text => format!(
            "flow {}\n{}separator {}\n",
            cert.paths.len(),
            paths_text(&cert.paths),
            join(cert.separator.vertices.iter())
        ),
    })
}

#[derive(Serialize)]
struct BoundedDegreeOutput {
    paths: PathSystem,
    report: SparsifyReport,
}

#[derive(Serialize)]
struct MinorFreeOutput {
    paths: PathSystem,
    report: MinorFreeReport,
}

/// Minimum separator reported when fewer than the requested paths were found.
#[derive(Serialize)]
struct Impossibility {
    requested: usize,
    found: usize,
    flow: usize,
    separator: VertexSet,
}

#[derive(Serialize)]
struct SolveOutput {
    schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounded_degree: Option<BoundedDegreeOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minor_free: Option<MinorFreeOutput>,
    best: usize,
    separator: Option<Impossibility>,
}

fn run_solve(instance: &Instance, solver: Solver, k: Option<usize>, format: OutputFormat) -> Result<String, Failure> {
    let (graph, a, b) = (&instance.graph, &instance.a, &instance.b);
    let bounded_degree = match solver {
        Solver::BoundedDegree | Solver::Both => {
            let s = solve_bounded_degree(graph, a, b)?;
            Some(BoundedDegreeOutput {
                paths: s.paths,
                report: s.report,
            })
        }
        Solver::MinorFree => None,
    };
    let minor_free = match solver {
        Solver::MinorFree | Solver::Both => {
            let (paths, report) = solve_minor_free(graph, a, b)?;
            Some(MinorFreeOutput { paths, report })
        }
        Solver::BoundedDegree => None,
    };
    let best = bounded_degree
        .as_ref()
        .map(|o| o.paths.len())
        .into_iter()
        .chain(minor_free.as_ref().map(|o| o.paths.len()))
        .max()
        .unwrap_or(0);
    let flow_value = flow::flow_value(graph, a, b)?;
    let requested = k.unwrap_or(1);
    let separator = if best < requested {
        Some(Impossibility {
            requested,
            found: best,
            flow: flow_value,
            separator: flow::min_separator(graph, a, b)?.vertices,
        })
    } else {
        None
    };
    let output = SolveOutput {
        schema: SCHEMA,
        bounded_degree,
        minor_free,
        best,
        separator,
    };
    Ok(match format {
        OutputFormat::Json => to_json(&output),
        OutputFormat::Text => {
            let mut s = format!("flow {flow_value}\n");
            if let Some(o) = &output.bounded_degree {
                let factor = degree_bound_factor(o.report.delta_used).map_or("overflow".into(), |f| f.to_string());
                s += &format!(
                    "bounded-degree {} paths (guarantee {}, delta {}, factor {factor})\n",
                    o.paths.len(),
                    o.report.guarantee,
                    o.report.delta_used
                );
                s += &paths_text(&o.paths);
            }
            if let Some(o) = &output.minor_free {
                s += &format!(
                    "minor-free {} paths (t {}, bound {})\n",
                    o.paths.len(),
                    o.report.t,
                    o.report.certified_bound
                );
                s += &paths_text(&o.paths);
            }
            if let Some(imp) = &output.separator {
                s += &format!(
                    "found {} of {} requested; separator of size {}: {}\n",
                    imp.found,
                    imp.requested,
                    imp.separator.len(),
                    join(imp.separator.iter())
                );
            }
            s
        }
    })
}

#[derive(Serialize)]
struct SparsifyOutput {
    schema: u32,
    kept: VertexSet,
    edges: Vec<(usize, usize)>,
    report: SparsifyReport,
}

fn run_sparsify(instance: &Instance, format: OutputFormat) -> Result<String, Failure> {
    let (kept, report) = sparsify_full(&instance.graph, &instance.a, &instance.b)?;
    let (sub, ids) = instance.graph.induced_subgraph(&kept)?;
    Ok(match format {
        OutputFormat::Json => to_json(&SparsifyOutput {
            schema: SCHEMA,
            edges: sub.edges().map(|(u, v)| (ids.new_to_old[u], ids.new_to_old[v])).collect(),
            kept,
            report,
        }),
        OutputFormat::Text => {
            let relabeled = Instance {
                graph: sub,
                a: ids.forward(&instance.a),
                b: ids.forward(&instance.b),
            };
            format!(
                "# flow {} -> {} over {} rounds\n# kept {}\n{}",
                report.flow_initial,
                report.flow_final,
                report.rounds,
                join(kept.iter()),
                write_instance(&relabeled)
            )
        }
    })
}

fn run_gen(k: usize, g: usize) -> Result<String, Failure> {
    let inst = counterexample::generate(k, g)?;
    let text = write_instance(&Instance {
        graph: inst.graph,
        a: inst.a,
        b: inst.b,
    });
    Ok(format!("# counterexample k={k} g={g} p={}\n{text}", inst.p))
}

#[derive(Serialize)]
struct VerifyOutput {
    schema: u32,
    all_passed: bool,
    report: VerificationReport,
}

/// Recovers `k` and the row spacing from the file and checks that it is the
/// generated instance before verifying it.
/// Failed checks still print the report, with exit code 3.
fn run_verify(instance: &Instance, g: Option<usize>, oracle_cap: usize, format: OutputFormat) -> Result<(String, u8), Failure> {
    let k = instance.a.len();
    let n = instance.graph.n();
    let not_family = || input_failure("the file is not a generated counterexample instance".into());
    if k == 0 || !n.is_multiple_of(k) || (n / k) % k != 1 || n / k < 2 * k + 1 {
        return Err(not_family());
    }
    let p = (n / k - 1) / k;
    let g = g.unwrap_or(2 * p);
    let generated = counterexample::generate(k, g)?;
    if generated.p != p || generated.graph != instance.graph || generated.a != instance.a || generated.b != instance.b {
        return Err(not_family());
    }
    let report = counterexample::verify(&generated, oracle_cap)?;
    let all_passed = report.all_passed();
    let text = match format {
        OutputFormat::Json => to_json(&VerifyOutput {
            schema: SCHEMA,
            all_passed,
            report,
        }),
        OutputFormat::Text => {
            let mut s = format!("counterexample k={k} g={g} p={p}: {} vertices, {} edges\n", report.vertices, report.edges);
            for c in &report.checks {
                let status = format!("{:?}", c.status).to_lowercase();
                s += &format!("{status} {}: {}\n", c.name, c.detail);
            }
            s
        }
    };
    Ok((text, if all_passed { 0 } else { 3 }))
}

#[derive(Serialize)]
struct OracleOutput {
    schema: u32,
    flow: usize,
    packing: usize,
}

fn run_oracle(instance: &Instance, oracle_cap: usize, format: OutputFormat) -> Result<String, Failure> {
    let budget = OracleBudget {
        max_vertices: oracle_cap,
        ..OracleBudget::default()
    };
    let packing = oracle::max_anticomplete_packing(&instance.graph, &instance.a, &instance.b, &budget)?;
    let flow = flow::flow_value(&instance.graph, &instance.a, &instance.b)?;
    Ok(match format {
        OutputFormat::Json => to_json(&OracleOutput {
            schema: SCHEMA,
            flow,
            packing,
        }),
        OutputFormat::Text => format!("packing {packing}\nflow {flow}\n"),
    })
}

struct BenchRow {
    delta: usize,
    k: usize,
    n: usize,
    flow: usize,
    achieved: usize,
}

fn bench_one(seed: u64, delta: usize, n: usize, k: usize, solver: Solver) -> Result<BenchRow, Error> {
    let mut rng = rng_from_seed(seed);
    let graph = configuration_model(n, delta, &mut rng)?;
    let (a, b) = random_terminals(n, k, k, &mut rng);
    let bounded = match solver {
        Solver::MinorFree => 0,
        _ => solve_bounded_degree(&graph, &a, &b)?.paths.len(),
    };
    let minor = match solver {
        Solver::BoundedDegree => 0,
        _ => solve_minor_free(&graph, &a, &b)?.0.len(),
    };
    Ok(BenchRow {
        delta,
        k,
        n,
        flow: flow::flow_value(&graph, &a, &b)?,
        achieved: bounded.max(minor),
    })
}

fn run_bench(
    seed: u64,
    deltas: &[usize],
    sizes: &[usize],
    terminals: &[usize],
    instances: usize,
    solver: Solver,
) -> Result<String, Failure> {
    let mut jobs = Vec::new();
    for &delta in deltas {
        for &n in sizes {
            for &k in terminals {
                for _ in 0..instances {
                    jobs.push((delta, n, k));
                }
            }
        }
    }
    // Instance `i` uses seed `seed + i`; indexed collection keeps rows in instance order.
    let rows: Vec<Result<BenchRow, Error>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, &(delta, n, k))| bench_one(seed.wrapping_add(i as u64), delta, n, k, solver))
        .collect();
    let mut csv = String::from("delta,k,n,flow,achieved,ratio\n");
    for row in rows {
        let r = row?;
        let ratio = if r.flow == 0 {
            String::new()
        } else {
            format!("{:.6}", r.achieved as f64 / r.flow as f64)
        };
        csv += &format!("{},{},{},{},{},{ratio}\n", r.delta, r.k, r.n, r.flow, r.achieved);
    }
    Ok(csv)
}

/// Output text and exit code.
fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let text = match &cli.command {
        Command::Flow { input } => run_flow(&read_instance(input)?, cli.format),
        Command::Solve { input, solver, k } => run_solve(&read_instance(input)?, *solver, *k, cli.format),
        Command::Sparsify { input } => run_sparsify(&read_instance(input)?, cli.format),
        Command::GenCounterexample { k, g } => run_gen(*k, *g),
        Command::Verify { input, g } => return run_verify(&read_instance(input)?, *g, cli.oracle_cap, cli.format),
        Command::Oracle { input } => run_oracle(&read_instance(input)?, cli.oracle_cap, cli.format),
        Command::Bench {
            deltas,
            sizes,
            terminals,
            instances,
            solver,
        } => run_bench(cli.seed, deltas, sizes, terminals, *instances, *solver),
    }?;
    Ok((text, 0))
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok((text, code)) => match emit(cli.out.as_deref(), &text) {
            Ok(()) => {
                if code != 0 {
                    eprintln!("error: some checks failed");
                }
                ExitCode::from(code)
            }
            Err(e) => {
                eprintln!("error: writing output: {e}");
                ExitCode::from(1)
            }
        },
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
