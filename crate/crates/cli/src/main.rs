use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clique_algos::{build_col_to_is_reduction, build_is_to_ds_reduction, AlgoConfig};
use clique_bounds::{check_counting, check_thm1, check_thm3, check_thm6, crossover_closed_form, crossover_scan, protocol_count_loglog, BoundParams, RegimeReport, TSpec, Thm3Form};
use clique_cli::experiment::{check_against_oracle, run_algorithm};
use clique_cli::{read_file, validate_report, write_file, Algorithm, CliError, ExperimentConfig, OutputFormat};
use clique_core::{Bits, Execution, Graph};
use clique_nondet::sigma2::witness_audit;
use clique_nondet::{
    evaluate_alternation, exists_certificate, verify_certificate, GraphPredicate, Labelling, NondetError, NormalForm,
    Sigma2Universal, Toy, ToyKind, Verifier,
};
use clique_oracle::{generate, GeneratorKind, GeneratorSpec, SplitMix64};
use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "clique-lab", version, about = "Congested clique simulator, oracles and certificate tools")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Graph file: a `n m` header, then one `u v` edge per line.
    #[arg(long, global = true)]
    graph: Option<String>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Engine timeout override.
    #[arg(long, global = true)]
    max_rounds: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a TOML config, or one algorithm on `--graph`.
    Run {
        #[arg(long)]
        config: Option<String>,
        /// kds, kis, kis-via-ds, kvc, or reduce-is / reduce-col to emit the derived graph.
        #[arg(long, alias = "algo")]
        algorithm: Option<RunTarget>,
        #[arg(long)]
        parallel: bool,
    },
    /// Round-count benchmark over a schedule of sizes on G(n, p), with an exponent fit.
    Bench {
        #[arg(long)]
        algorithm: Algorithm,
        #[arg(long, value_delimiter = ',', required = true)]
        schedule: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        repetitions: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = clique_cli::config::ROUND_CONSTANT)]
        round_constant: f64,
    },
    /// Centralized exact answer.
    Oracle {
        #[arg(long)]
        problem: Problem,
    },
    /// Generate a graph file.
    Gen {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Edge probability for erdos-renyi.
        #[arg(long)]
        p: Option<f64>,
    },
    /// Build a reduction graph.
    Reduce {
        #[arg(long, value_enum, default_value_t = Reduction::IsToDs)]
        kind: Reduction,
    },
    /// Run a corpus verifier on a certificate file.
    Verify {
        #[arg(long)]
        verifier: ToyKind,
        #[arg(long)]
        cert: String,
    },
    /// Search all certificates of a corpus verifier.
    Exists {
        #[arg(long)]
        verifier: ToyKind,
        /// Label width; defaults to the verifier's own.
        #[arg(long)]
        size_bound: Option<usize>,
    },
    /// Compare a corpus verifier with its transcript normal form.
    Normalform {
        #[arg(long)]
        verifier: ToyKind,
    },
    /// Evaluate the Σ₂ game for a predicate; falls back to a witness audit past the guard.
    Game {
        #[arg(long)]
        predicate: GraphPredicate,
        /// Random first-level labellings to refute in audit mode.
        #[arg(long, default_value_t = 16)]
        audit_samples: usize,
    },
    /// Protocol-counting arithmetic.
    /// Either `--check` scans with CSV rows, or one of the subcommands.
    #[command(args_conflicts_with_subcommands = true)]
    Bounds {
        #[command(subcommand)]
        which: Option<BoundsCommand>,
        #[arg(long)]
        check: Option<Check>,
        /// `const c`, `poly a b` (a n^b) or `nlogn-frac d` (n / (d log n)).
        #[arg(long, default_value = "const 1")]
        t_spec: TSpec,
        #[arg(long, default_value_t = 1 << 16)]
        n_max: u64,
        #[arg(long, default_value_t = 4)]
        k_max: u64,
        /// With `--check thm3`, use the literally displayed round count.
        #[arg(long)]
        displayed: bool,
    },
    /// Check a JSON report's version and fields.
    Validate {
        #[arg(long)]
        report: String,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// log2 log2 of the number of (n, b, L, t)-protocols.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        t: u64,
    },
    /// Largest t below which some function has no protocol.
    Crossover {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        l: u64,
    },
    /// Scan the round-hierarchy inequality over n = 2..=n-max.
    Thm1 {
        #[arg(long, default_value = "const 1")]
        t: TSpec,
        #[arg(long, default_value_t = 1 << 16)]
        n_max: u64,
    },
    /// Scan the nondeterministic inequality over n = 2..=n-max.
    Thm3 {
        #[arg(long, default_value = "const 1")]
        t: TSpec,
        #[arg(long, default_value_t = 1 << 16)]
        n_max: u64,
        /// Use the literally displayed round count instead of the corrected one.
        #[arg(long)]
        displayed: bool,
    },
    /// Scan the alternation inequality over n = 2..=n-max and k = 0..=k-max.
    Thm6 {
        #[arg(long, default_value = "const 1")]
        t: TSpec,
        #[arg(long, default_value_t = 1 << 16)]
        n_max: u64,
        #[arg(long, default_value_t = 2)]
        k_max: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Ds,
    Is,
    Vc,
    Chrom,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ErdosRenyi,
    Path,
    Cycle,
    Star,
    Complete,
    Empty,
    Petersen,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    #[value(alias = "reduce-is")]
    IsToDs,
    #[value(alias = "reduce-col")]
    ColToIs,
}

#[derive(Clone, Copy)]
enum RunTarget {
    Algorithm(Algorithm),
    Reduce(Reduction),
}

impl std::str::FromStr for RunTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reduce-is" => Ok(RunTarget::Reduce(Reduction::IsToDs)),
            "reduce-col" => Ok(RunTarget::Reduce(Reduction::ColToIs)),
            _ => s
                .parse()
                .map(RunTarget::Algorithm)
                .map_err(|e: String| e.replace(" or kvc)", ", kvc, reduce-is or reduce-col)")),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Lemma1,
    Thm1,
    Thm3,
    Thm6,
}

/// What a command produced: text for the output sink and an exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }

    fn json(v: Value) -> Self {
        Self::ok(serde_json::to_string_pretty(&v).unwrap() + "\n")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli);
    let code = match result {
        Ok(out) => match emit(&cli.global, &out.text) {
            Ok(()) => out.code,
            Err(e) => report_error(&e),
        },
        Err(e) => report_error(&e),
    };
    ExitCode::from(code as u8)
}

fn report_error(e: &CliError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}

fn emit(g: &Global, text: &str) -> Result<(), CliError> {
    match &g.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Config(format!("missing --{flag}")))
}

fn load_graph(g: &Global) -> Result<Graph, CliError> {
    let path = need(&g.graph, "graph")?;
    Ok(Graph::parse(&read_file(&path)?)?)
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Run { config: Some(path), .. } => {
            let mut cfg = ExperimentConfig::parse(&read_file(path)?)?;
            if let Some(seed) = g.seed {
                cfg.seed = seed;
            }
            if let Some(f) = g.format {
                cfg.format = f;
            }
            if g.max_rounds.is_some() {
                cfg.max_rounds = g.max_rounds;
            }
            experiment(cfg)
        }
        Command::Run { config: None, algorithm, parallel } => {
            let algorithm = match need(algorithm, "algorithm (or --config)")? {
                RunTarget::Algorithm(a) => a,
                RunTarget::Reduce(kind) => return reduce(g, kind),
            };
            let graph = load_graph(g)?;
            let k = need(&g.k, "k")?;
            let execution = if *parallel { Execution::Parallel } else { Execution::Sequential };
            let o = run_algorithm(algorithm, &graph, k, &AlgoConfig { execution, max_rounds: g.max_rounds })?;
            let members = o.set.as_ref().map(|s| s.members.clone());
            let check = check_against_oracle(algorithm, &graph, k, members.as_deref());
            let verdict = match check {
                Some(true) => "pass",
                Some(false) => "mismatch",
                None => "unverified",
            };
            let mut out = Outcome::json(json!({
                "algorithm": algorithm.name(),
                "n": graph.n(),
                "k": k,
                "set": members,
                "rounds": o.report.rounds,
                "messages": o.report.messages,
                "total_bits": o.report.total_bits,
                "verdict": verdict,
            }));
            out.code = i32::from(check == Some(false));
            Ok(out)
        }
        Command::Bench { algorithm, schedule, repetitions, p, round_constant } => {
            let cfg = ExperimentConfig {
                algorithm: *algorithm,
                k: need(&g.k, "k")?,
                schedule: schedule.clone(),
                generator: GeneratorKind::ErdosRenyi { p: *p },
                repetitions: *repetitions,
                seed: g.seed.unwrap_or(0),
                format: g.format.unwrap_or_default(),
                round_constant: *round_constant,
                max_rounds: g.max_rounds,
            };
            experiment(cfg)
        }
        Command::Oracle { problem } => {
            let graph = load_graph(g)?;
            let k = need(&g.k, "k")?;
            let v = match problem {
                Problem::Ds => json!({ "problem": "ds", "k": k, "witness": clique_oracle::has_dominating_set(&graph, k)?.map(|s| s.members) }),
                Problem::Is => json!({ "problem": "is", "k": k, "witness": clique_oracle::has_independent_set(&graph, k)?.map(|s| s.members) }),
                Problem::Vc => json!({ "problem": "vc", "k": k, "witness": clique_oracle::has_vertex_cover(&graph, k)?.map(|s| s.members) }),
                Problem::Chrom => json!({ "problem": "chrom", "k": k, "colourable": clique_oracle::chromatic_number_at_most(&graph, k)? }),
            };
            Ok(Outcome::json(v))
        }
        Command::Gen { kind, n, p } => {
            let kind = match kind {
                Kind::ErdosRenyi => GeneratorKind::ErdosRenyi { p: need(p, "p")? },
                Kind::Path => GeneratorKind::Path,
                Kind::Cycle => GeneratorKind::Cycle,
                Kind::Star => GeneratorKind::Star,
                Kind::Complete => GeneratorKind::Complete,
                Kind::Empty => GeneratorKind::Empty,
                Kind::Petersen => GeneratorKind::Petersen,
            };
            let graph = generate(&GeneratorSpec::new(kind, *n, g.seed.unwrap_or(0)))?;
            Ok(Outcome::ok(graph.to_text()))
        }
        Command::Reduce { kind } => reduce(g, *kind),
        Command::Verify { verifier, cert } => {
            let graph = load_graph(g)?;
            let v = Toy::new(*verifier);
            let width = v.label_bits(graph.n());
            let z = Labelling::parse(&read_file(cert)?, graph.n(), width)?;
            let verdict = verify_certificate(&v, &graph, &z)?;
            Ok(Outcome::json(json!({
                "verifier": verifier.name(),
                "accepted": verdict.accepted,
                "rounds": verdict.report.rounds,
                "total_bits": verdict.report.total_bits,
            })))
        }
        Command::Exists { verifier, size_bound } => {
            let graph = load_graph(g)?;
            let v = Toy::new(*verifier);
            let bound = size_bound.unwrap_or_else(|| v.label_bits(graph.n()));
            let found = exists_certificate(&v, &graph, bound)?;
            Ok(Outcome::json(json!({
                "verifier": verifier.name(),
                "size_bound": bound,
                "accepted": found.is_some(),
                "certificate": found.map(|z| z.to_text()),
            })))
        }
        Command::Normalform { verifier } => {
            let graph = load_graph(g)?;
            let n = graph.n();
            let a = Toy::new(*verifier);
            let a_side = exists_certificate(&a, &graph, a.label_bits(n))?.is_some();
            let nf = NormalForm::new(a);
            let found = nf.find_certificate(&graph)?;
            let confirmed = match &found {
                Some(z) => verify_certificate(&nf, &graph, z)?.accepted,
                None => true,
            };
            let b_side = found.is_some();
            let mut out = Outcome::json(json!({
                "verifier": verifier.name(),
                "rounds": a.rounds(n),
                "label_bits": nf.label_bits(n),
                "exists_a": a_side,
                "exists_normal_form": b_side,
                "equivalent": a_side == b_side && confirmed,
                "certificate": found.map(|z| z.to_text()),
            }));
            out.code = i32::from(a_side != b_side || !confirmed);
            Ok(out)
        }
        Command::Game { predicate, audit_samples } => {
            let graph = load_graph(g)?;
            let member = predicate.eval(&graph);
            let spec = Sigma2Universal::spec(*predicate);
            let (mode, value, checked) = match evaluate_alternation(&spec, &graph) {
                Ok(v) => ("exhaustive", v, None),
                Err(NondetError::Guard(_)) => {
                    let samples = audit_samples_for(&graph, *audit_samples, g.seed.unwrap_or(0));
                    let audit = witness_audit(*predicate, &graph, &samples)?;
                    ("audit", if audit.agrees { member } else { !member }, Some(audit.first_levels_checked))
                }
                Err(e) => return Err(e.into()),
            };
            let mut out = Outcome::json(json!({
                "predicate": predicate.name(),
                "n": graph.n(),
                "mode": mode,
                "member": member,
                "value": value,
                "first_levels_checked": checked,
            }));
            out.code = i32::from(value != member);
            Ok(out)
        }
        Command::Bounds { which: Some(which), .. } => bounds(which),
        Command::Bounds { which: None, check, t_spec, n_max, k_max, displayed } => {
            let check = need(check, "check (or a bounds subcommand)")?;
            let ns = 2..=*n_max;
            let report = match check {
                Check::Lemma1 => check_counting(t_spec, ns),
                Check::Thm1 => check_thm1(t_spec, ns),
                Check::Thm3 => {
                    let form = if *displayed { Thm3Form::Displayed } else { Thm3Form::Corrected };
                    check_thm3(t_spec, ns, form)
                }
                Check::Thm6 => check_thm6(t_spec, *k_max, ns),
            };
            match g.format {
                Some(OutputFormat::Json) => Ok(Outcome::json(regime_json(&report))),
                _ => Ok(Outcome::ok(regime_csv(&report, matches!(check, Check::Thm6)))),
            }
        }
        Command::Validate { report } => match validate_report(&read_file(report)?) {
            Ok(r) => Ok(Outcome::json(json!({ "valid": true, "version": r.version, "rows": r.rows.len() }))),
            Err(errs) => Ok(Outcome {
                text: serde_json::to_string_pretty(&json!({ "valid": false, "errors": errs })).unwrap() + "\n",
                code: 1,
            }),
        },
    }
}

fn reduce(g: &Global, kind: Reduction) -> Result<Outcome, CliError> {
    let graph = load_graph(g)?;
    let k = need(&g.k, "k")?;
    if k == 0 {
        return Err(CliError::Config("--k must be at least 1".into()));
    }
    let derived = match kind {
        Reduction::IsToDs => build_is_to_ds_reduction(&graph, k).derived,
        Reduction::ColToIs => build_col_to_is_reduction(&graph, k),
    };
    Ok(Outcome::ok(derived.to_text()))
}

fn experiment(cfg: ExperimentConfig) -> Result<Outcome, CliError> {
    let report = clique_cli::run_experiment(&cfg)?;
    let text = match cfg.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    };
    Ok(Outcome { text, code: report.exit_code() })
}

fn audit_samples_for(graph: &Graph, count: usize, seed: u64) -> Vec<Vec<Bits>> {
    let n = graph.n();
    let pairs = clique_core::graph::pair_count(n);
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| Bits::from_bools((0..pairs).map(|_| rng.next_u64() & 1 == 1)))
                .collect()
        })
        .collect()
}

fn regime_csv(r: &RegimeReport<BigUint>, with_k: bool) -> String {
    let mut out = String::from(if with_k { "n,k,lhs,rhs,holds\n" } else { "n,lhs,rhs,holds\n" });
    for row in &r.rows {
        let k = match row.k {
            Some(k) if with_k => format!("{k},"),
            _ => String::new(),
        };
        out += &format!("{},{k}{},{},{}\n", row.n, row.lhs, row.rhs, row.holds);
    }
    out
}

fn regime_json(r: &RegimeReport<BigUint>) -> Value {
    let violations: Vec<Value> = r
        .violations()
        .take(20)
        .map(|row| json!({ "n": row.n, "k": row.k, "lhs": row.lhs.to_string(), "rhs": row.rhs.to_string() }))
        .collect();
    json!({
        "scanned": r.rows.len(),
        "first_holds": r.first_holds,
        "threshold": r.threshold,
        "violations": r.violations().count(),
        "first_violations": violations,
    })
}

fn bounds(which: &BoundsCommand) -> Result<Outcome, CliError> {
    let ns = |n_max: u64| 2..=n_max;
    let v = match which {
        BoundsCommand::Count { n, b, l, t } => {
            let p = BoundParams::<BigUint>::new(*n, *b, *l, *t);
            let c = protocol_count_loglog(&p);
            json!({
                "linear": c.linear.to_string(),
                "log_arg": c.log_arg.to_string(),
                "exact": c.exact().map(|x| x.to_string()),
                "ceiling": c.ceiling().to_string(),
                "function_count_loglog": p.function_count_loglog().to_string(),
                "exists_unrealizable_function": clique_bounds::exists_unrealizable_function(&p),
            })
        }
        BoundsCommand::Crossover { n, b, l } => json!({
            "scan": crossover_scan::<BigUint>(*n, *b, *l),
            "closed_form": crossover_closed_form::<BigUint>(*n, *b, *l).to_string(),
        }),
        BoundsCommand::Thm1 { t, n_max } => regime_json(&check_thm1(t, ns(*n_max))),
        BoundsCommand::Thm3 { t, n_max, displayed } => {
            let form = if *displayed { Thm3Form::Displayed } else { Thm3Form::Corrected };
            regime_json(&check_thm3(t, ns(*n_max), form))
        }
        BoundsCommand::Thm6 { t, n_max, k_max } => regime_json(&check_thm6(t, *k_max, ns(*n_max))),
    };
    Ok(Outcome::json(v))
}
