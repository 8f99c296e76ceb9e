//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use clique_algos::{
    build_is_to_ds_reduction, k_dominating_set, k_independent_set_direct, k_independent_set_via_ds, k_vertex_cover,
    AlgoConfig, AlgoError, AlgoOutcome, Hosted, PartitionSearch, ReductionLayout, Target, VertexCoverProgram,
};
use clique_bounds::{
    check_thm3, crossover_closed_form, crossover_scan, protocol_count_loglog, BoundParams, TSpec, Thm3Form,
};
use clique_cli::config::ROUND_CONSTANT;
use clique_cli::experiment::check_against_oracle;
use clique_cli::{run_experiment, Algorithm, ExperimentConfig, Verdict};
use clique_core::engine::NodeProgram;
use clique_core::{id_bits, run_with, Bits, EngineError, Execution, Graph, RunOptions};
use clique_nondet::sigma2::witness_audit;
use clique_nondet::{
    evaluate_alternation, exists_certificate, verify_certificate, GraphPredicate, NondetError, NormalForm,
    Sigma2Universal, Toy, ToyKind, Verifier,
};
use clique_oracle::{all_graphs, generate, has_dominating_set, has_independent_set, GeneratorKind, GeneratorSpec, SplitMix64};
use num_bigint::BigUint;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

static RUNS: AtomicU64 = AtomicU64::new(0);
static BANDWIDTH: AtomicU64 = AtomicU64::new(0);

fn tally_engine(e: &EngineError) {
    if matches!(e, EngineError::Bandwidth { .. }) {
        BANDWIDTH.fetch_add(1, Ordering::Relaxed);
    }
}

fn algo(r: Result<AlgoOutcome, AlgoError>) -> Result<AlgoOutcome, String> {
    RUNS.fetch_add(1, Ordering::Relaxed);
    r.map_err(|e| {
        if let AlgoError::Engine(e) = &e {
            tally_engine(e);
        }
        e.to_string()
    })
}

fn nondet<T>(r: Result<T, NondetError>) -> Result<T, String> {
    RUNS.fetch_add(1, Ordering::Relaxed);
    r.map_err(|e| {
        if let NondetError::Engine(e) = &e {
            tally_engine(e);
        }
        e.to_string()
    })
}

fn within(start: Instant, limit_secs: u64) -> Result<Duration, String> {
    let t = start.elapsed();
    if t > Duration::from_secs(limit_secs) {
        return Err(format!("took {:.1}s, limit {limit_secs}s", t.as_secs_f64()));
    }
    Ok(t)
}

fn graph(kind: GeneratorKind, n: usize, seed: u64) -> Graph {
    generate(&GeneratorSpec::new(kind, n, seed)).unwrap()
}

fn decide(alg: Algorithm, g: &Graph, k: usize) -> Result<AlgoOutcome, String> {
    let cfg = AlgoConfig::default();
    algo(match alg {
        Algorithm::Kds => k_dominating_set(g, k, &cfg),
        Algorithm::Kis => k_independent_set_direct(g, k, &cfg),
        Algorithm::KisViaDs => k_independent_set_via_ds(g, k, &cfg),
        Algorithm::Kvc => k_vertex_cover(g, k, &cfg),
    })
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let cfg = ExperimentConfig::parse(
        r#"
algorithm = "kds"
k = 2
schedule = [16, 64, 256]
repetitions = 3
seed = 1
generator = { kind = "erdos_renyi", p = 0.3 }
"#,
    )
    .map_err(|e| e.to_string())?;
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    RUNS.fetch_add(report.rows.len() as u64, Ordering::Relaxed);
    if let Some(r) = report.rows.iter().find(|r| r.verdict != Verdict::Pass) {
        return Err(format!("n = {} rep {}: {:?} with {} rounds", r.n, r.rep, r.verdict, r.rounds));
    }
    let worst = report
        .rows
        .iter()
        .map(|r| r.rounds as f64 / (2.0 * (r.n as f64).sqrt()))
        .fold(0.0, f64::max);
    let fit = report.fit.ok_or("no fit")?;
    let t = within(start, 120)?;
    let detail = format!(
        "c = {ROUND_CONSTANT}, max rounds/(k sqrt n) = {worst:.3}, slope = {:.4}, residual = {:.4}, {:.1}s",
        fit.slope,
        fit.residual,
        t.as_secs_f64()
    );
    if !(0.35..=0.65).contains(&fit.slope) || fit.residual >= 0.15 {
        return Err(detail);
    }
    Ok(detail)
}

fn vc_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in [2usize, 3, 5, 8, 16, 32, 50, 64, 100, 128, 200] {
        let mut kinds = vec![GeneratorKind::Path, GeneratorKind::Star, GeneratorKind::Complete, GeneratorKind::Empty];
        if n >= 3 {
            kinds.push(GeneratorKind::Cycle);
        }
        for p in [1.0 / n as f64, 0.05, 0.3] {
            kinds.push(GeneratorKind::ErdosRenyi { p });
        }
        for kind in kinds {
            out.push((format!("{kind:?} n = {n}"), graph(kind, n, n as u64)));
        }
    }
    out.push(("Petersen".into(), graph(GeneratorKind::Petersen, 10, 0)));
    out
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for (name, g) in vc_corpus() {
        for k in 1..=8.min(g.n()) {
            let o = decide(Algorithm::Kvc, &g, k)?;
            runs += 1;
            if o.report.rounds > k + 2 {
                return Err(format!("{name}, k = {k}: {} rounds", o.report.rounds));
            }
            let members = o.set.as_ref().map(|s| s.members.as_slice());
            if check_against_oracle(Algorithm::Kvc, &g, k, members) == Some(false) {
                return Err(format!("{name}, k = {k}: wrong answer"));
            }
        }
    }
    let t = within(start, 60)?;
    Ok(format!("{runs} runs, all within k + 2 rounds, {:.1}s", t.as_secs_f64()))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut decisions = 0;
    for n in 2..=5 {
        for g in all_graphs(n).map_err(|e| e.to_string())? {
            for k in 1..=3.min(n) {
                for alg in [Algorithm::Kds, Algorithm::Kvc, Algorithm::Kis, Algorithm::KisViaDs] {
                    let o = decide(alg, &g, k)?;
                    let members = o.set.as_ref().map(|s| s.members.as_slice());
                    match check_against_oracle(alg, &g, k, members) {
                        Some(true) => decisions += 1,
                        Some(false) => return Err(format!("{} disagrees on {g:?}, k = {k}", alg.name())),
                        None => return Err(format!("oracle out of range on {g:?}")),
                    }
                }
            }
        }
    }
    let t = within(start, 300)?;
    Ok(format!("{decisions} decisions agree (kds, kvc, kis direct and via ds), {:.1}s", t.as_secs_f64()))
}

fn criterion_4() -> Check {
    let mut cases = 0;
    for n in 2..=5 {
        for g in all_graphs(n).map_err(|e| e.to_string())? {
            for k in [2usize, 3] {
                let r = build_is_to_ds_reduction(&g, k);
                let size = r.derived.n();
                if size != k * n + k * (k - 1) / 2 * n + 2 * k || size > (k * k + k + 2) * n {
                    return Err(format!("|V'| = {size} for n = {n}, k = {k}"));
                }
                let is = has_independent_set(&g, k).map_err(|e| e.to_string())?.is_some();
                let ds = has_dominating_set(&r.derived, k).map_err(|e| e.to_string())?.is_some();
                if is != ds {
                    return Err(format!("{g:?}, k = {k}: IS {is}, DS on G' {ds}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (graph, k) pairs sound, |V'| formula exact"))
}

fn criterion_5() -> Check {
    let mut cases = 0;
    let mut accepted = 0;
    for n in 2..=4 {
        for g in all_graphs(n).map_err(|e| e.to_string())? {
            for kind in ToyKind::ALL {
                let a = Toy::new(kind);
                let has_a = nondet(exists_certificate(&a, &g, a.label_bits(n)))?.is_some();
                let nf = NormalForm::new(Toy::new(kind));
                let z = nondet(nf.find_certificate(&g))?;
                if z.is_some() != has_a {
                    return Err(format!("{kind} on {g:?}: A {has_a}, normal form {}", z.is_some()));
                }
                if let Some(z) = z {
                    let bound = 2 * nf.rounds(n) * (n - 1) * id_bits(n);
                    if z.labels.iter().any(|l| l.len() > bound) {
                        return Err(format!("{kind} on {g:?}: certificate longer than {bound} bits"));
                    }
                    if !nondet(verify_certificate(&nf, &g, &z))?.accepted {
                        return Err(format!("{kind} on {g:?}: found certificate rejected"));
                    }
                    accepted += 1;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (verifier, graph) pairs equal, {accepted} certificates within 2T(n-1)b bits"))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let predicates = [GraphPredicate::HasEdge, GraphPredicate::IsConnected, GraphPredicate::HasTriangle];
    let mut exhaustive = 0;
    for n in 2..=3 {
        for g in all_graphs(n).map_err(|e| e.to_string())? {
            for p in predicates {
                if nondet(evaluate_alternation(&Sigma2Universal::spec(p), &g))? != p.eval(&g) {
                    return Err(format!("{p} on {g:?}"));
                }
                exhaustive += 1;
            }
        }
    }
    let mut rng = SplitMix64::new(6);
    let mut audited = 0;
    for g in all_graphs(4).map_err(|e| e.to_string())? {
        let samples: Vec<Vec<Bits>> = (0..4)
            .map(|_| (0..4).map(|_| Bits::from_uint(rng.below(64), 6)).collect())
            .collect();
        for p in predicates {
            let audit = nondet(witness_audit(p, &g, &samples))?;
            if audit.member != p.eval(&g) || !audit.agrees {
                return Err(format!("audit of {p} on {g:?}: {audit:?}"));
            }
            audited += 1;
        }
    }
    let t = within(start, 180)?;
    Ok(format!(
        "{exhaustive} exhaustive games (n <= 3) and {audited} audits (n = 4) match membership, {:.1}s",
        t.as_secs_f64()
    ))
}

fn criterion_7() -> Check {
    let hand = [((4, 2, 3, 1), 15u32), ((2, 1, 1, 1), 5)];
    for ((n, b, l, t), want) in hand {
        let got = protocol_count_loglog(&BoundParams::<BigUint>::new(n, b, l, t)).exact();
        if got != Some(BigUint::from(want)) {
            return Err(format!("({n},{b},{l},{t}) -> {got:?}, want {want}"));
        }
    }
    let mut points = 0;
    for n in [2u64, 3, 4, 5, 8, 16, 32, 64, 128, 1024] {
        for b in 1..=4u64 {
            for l in [1u64, 2, 4, 8, 16] {
                let scan = crossover_scan::<BigUint>(n, b, l);
                let closed: BigUint = crossover_closed_form(n, b, l);
                if closed != BigUint::from(scan) {
                    return Err(format!("crossover at ({n},{b},{l}): scan {scan}, closed form {closed}"));
                }
                points += 1;
            }
        }
    }
    let t: TSpec = "const 1".parse().map_err(|e| format!("{e}"))?;
    let report = check_thm3::<BigUint>(&t, 2..=1 << 16, Thm3Form::Corrected);
    let n0 = report.threshold.ok_or("no threshold up to 2^16")?;
    if report.rows.iter().any(|r| r.n >= n0 && !r.holds) {
        return Err(format!("inequality fails above n0 = {n0}"));
    }
    Ok(format!("hand values exact, {points}-point crossover lattice exact, T = 1 threshold n0 = {n0} holds to 2^16"))
}

/// Runs `p` sequentially and in parallel with transcripts, requires the two
/// reports to be identical and every recorded message to fit the bandwidth.
fn audit_run<P: NodeProgram>(p: &P, g: &Graph, aux: Option<&[Bits]>, rounds: usize) -> Result<usize, String> {
    let opts = RunOptions::new(rounds).with_transcripts();
    let run = |o: &RunOptions| {
        RUNS.fetch_add(1, Ordering::Relaxed);
        run_with(p, g, aux, o).map_err(|e| {
            tally_engine(&e);
            e.to_string()
        })
    };
    let seq = run(&opts)?;
    let par = run(&opts.with_execution(Execution::Parallel))?;
    if seq != par || serde_json::to_string(&seq).unwrap() != serde_json::to_string(&par).unwrap() {
        return Err(format!("sequential and parallel runs differ on {g:?}"));
    }
    let limit = id_bits(g.n());
    let transcripts = seq.transcripts.as_ref().ok_or("no transcripts")?;
    let mut messages = 0;
    for t in transcripts {
        for (r, round) in t.rounds.iter().enumerate() {
            for (i, slot) in round.iter().enumerate() {
                let Some(sent) = &slot.sent else { continue };
                if sent.len() > limit {
                    BANDWIDTH.fetch_add(1, Ordering::Relaxed);
                    return Err(format!("round {}: {} -> {} carries {} bits", r + 1, t.id, i + 1, sent.len()));
                }
                if transcripts[i].received(r + 1, t.id) != Some(sent) {
                    return Err(format!("round {}: {} -> {} not delivered as sent", r + 1, t.id, i + 1));
                }
                messages += 1;
            }
        }
    }
    Ok(messages)
}

fn cli_output(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_clique-lab")).args(args).output().map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("clique-lab {args:?}: {}", String::from_utf8_lossy(&o.stderr)));
    }
    Ok(o.stdout)
}

fn criterion_8() -> Check {
    let mut messages = 0;
    for seed in 0..3 {
        let g = graph(GeneratorKind::ErdosRenyi { p: 0.3 }, 16, seed);
        for target in [Target::Dominating, Target::Independent] {
            let p = PartitionSearch::new(16, 2, target);
            messages += audit_run(&p, &g, None, p.total_rounds())?;
        }
        let p = VertexCoverProgram::new(16, 3);
        messages += audit_run(&p, &g, None, p.total_rounds())?;
        let h = graph(GeneratorKind::ErdosRenyi { p: 0.4 }, 6, seed);
        let layout = ReductionLayout::new(6, 2);
        let guest = PartitionSearch::new(layout.derived_n(), 2, Target::Dominating);
        let rounds = guest.total_rounds();
        let p = Hosted::new(layout, guest);
        messages += audit_run(&p, &h, None, p.host_rounds(rounds))?;
    }
    let c4 = graph(GeneratorKind::Cycle, 4, 0);
    for kind in ToyKind::ALL {
        let v = Toy::new(kind);
        let nf = NormalForm::new(Toy::new(kind));
        let graphs = [c4.clone(), graph(GeneratorKind::Path, 4, 0), graph(GeneratorKind::Complete, 4, 0)];
        for g in &graphs {
            if let Some(z) = nondet(exists_certificate(&v, g, v.label_bits(4)))? {
                messages += audit_run(&v, g, Some(&z.labels), v.rounds(4))?;
            }
            if let Some(z) = nondet(nf.find_certificate(g))? {
                messages += audit_run(&nf, g, Some(&z.labels), nf.rounds(4))?;
            }
        }
    }

    let cfg = ExperimentConfig::parse(
        r#"
algorithm = "kis"
k = 2
schedule = [8, 12, 16]
repetitions = 3
seed = 3
generator = { kind = "erdos_renyi", p = 0.4 }
"#,
    )
    .map_err(|e| e.to_string())?;
    let report_in = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        let r = pool.install(|| run_experiment(&cfg)).map_err(|e| e.to_string())?;
        RUNS.fetch_add(r.rows.len() as u64, Ordering::Relaxed);
        Ok(r.to_json())
    };
    let reports = [report_in(1)?, report_in(4)?, report_in(4)?];
    if reports.iter().any(|r| r != &reports[0]) {
        return Err("experiment reports differ between runs or thread counts".into());
    }

    let dir = std::env::temp_dir().join(format!("clique-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("g.txt");
    let path = path.to_str().ok_or("temp path")?;
    cli_output(&["gen", "--kind", "erdos-renyi", "--n", "24", "--p", "0.3", "--seed", "5", "--out", path])?;
    let mut outputs = Vec::new();
    for alg in ["kds", "kis", "kis-via-ds", "kvc"] {
        let k = if alg == "kis-via-ds" { "2" } else { "3" };
        let base = ["run", "--algorithm", alg, "--graph", path, "--k", k];
        let seq = cli_output(&base)?;
        let again = cli_output(&base)?;
        let par = cli_output(&[&base[..], &["--parallel"]].concat())?;
        if seq != again || seq != par {
            return Err(format!("clique-lab run {alg}: output not byte-identical"));
        }
        outputs.push(seq);
    }
    let _ = std::fs::remove_dir_all(&dir);

    let bandwidth = BANDWIDTH.load(Ordering::Relaxed);
    if bandwidth > 0 {
        return Err(format!("{bandwidth} bandwidth violations"));
    }
    Ok(format!(
        "0 bandwidth violations over {} engine-backed checks, {messages} audited messages, reports byte-identical \
         (2 runs, 1 vs 4 threads, sequential vs parallel engine, {} CLI runs)",
        RUNS.load(Ordering::Relaxed),
        outputs.len() * 3
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("k-dominating-set round scaling", criterion_1),
        ("k-vertex-cover rounds <= k + 2", criterion_2),
        ("oracle equivalence, n <= 5", criterion_3),
        ("reduction soundness, n <= 5", criterion_4),
        ("normal form equivalence, n <= 4", criterion_5),
        ("sigma-2 universality", criterion_6),
        ("counting arithmetic", criterion_7),
        ("engine integrity", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
