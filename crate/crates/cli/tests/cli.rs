use std::path::Path;
use std::process::{Command, Output};

use clique_cli::{validate_report, ExperimentConfig, Report};

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clique-lab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

const CONFIG: &str = r#"
algorithm = "kvc"
k = 3
schedule = [50, 100]
repetitions = 2
seed = 11

[generator]
kind = "erdos_renyi"
p = 0.02
"#;

#[test]
fn experiment_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("exp.toml"), CONFIG).unwrap();
    let o = lab(dir.path(), &["run", "--config", "exp.toml", "--out", "report.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report: Report = validate_report(&text).unwrap();
    assert_eq!(report.rows.len(), 4);
    let order: Vec<_> = report.rows.iter().map(|r| (r.n, r.rep)).collect();
    assert_eq!(order, vec![(50, 0), (50, 1), (100, 0), (100, 1)]);
    assert!(report.rows.iter().all(|r| r.rounds <= 5));
    assert!(report.fit.is_none(), "two sizes are too few to fit");

    // The embedded config reproduces the report exactly.
    std::fs::write(dir.path().join("again.toml"), report.config.to_toml()).unwrap();
    let again = lab(dir.path(), &["run", "--config", "again.toml"]);
    assert_eq!(stdout(&again), text);

    let v = lab(dir.path(), &["validate", "--report", "report.json"]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["valid"], true);
}

#[test]
fn csv_mirrors_rows() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("exp.toml"), CONFIG).unwrap();
    let csv = stdout(&lab(dir.path(), &["run", "--config", "exp.toml", "--format", "csv"]));
    let report: Report = serde_json::from_str(&stdout(&lab(dir.path(), &["run", "--config", "exp.toml"]))).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,seed_rep,rounds,total_bits,verdict");
    for (line, r) in lines[1..].iter().zip(&report.rows) {
        assert_eq!(*line, format!("{},{},{},{},pass", r.n, r.seed_rep, r.rounds, r.total_bits));
    }
}

#[test]
fn broken_reports_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("exp.toml"), CONFIG).unwrap();
    let text = stdout(&lab(dir.path(), &["run", "--config", "exp.toml"]));
    assert!(validate_report(&text[..text.len() / 2]).is_err());
    let wrong = text.replacen("\"version\": 1", "\"version\": 7", 1);
    let errs = validate_report(&wrong).unwrap_err();
    assert!(errs[0].contains("version 7"), "{errs:?}");
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["rows"][1].as_object_mut().unwrap().remove("total_bits");
    let errs = validate_report(&v.to_string()).unwrap_err();
    assert_eq!(errs, vec!["rows[1]: missing field `total_bits`".to_string()]);

    std::fs::write(dir.path().join("bad.json"), &wrong).unwrap();
    let o = lab(dir.path(), &["validate", "--report", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["valid"], false);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("empty.toml"), CONFIG.replace("[50, 100]", "[]")).unwrap();
    let o = lab(d, &["run", "--config", "empty.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schedule"));

    // A round constant far too small turns every row into a bound violation.
    let o = lab(d, &["bench", "--algorithm", "kds", "--k", "2", "--schedule", "16,32,64", "--round-constant", "0.01"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("bound-violation"));

    assert_eq!(lab(d, &["gen", "--kind", "complete", "--n", "9", "--out", "k9.txt"]).status.code(), Some(0));
    let o = lab(d, &["exists", "--verifier", "degree", "--graph", "k9.txt", "--size-bound", "4"]);
    assert_eq!(o.status.code(), Some(3));

    let o = lab(d, &["run", "--algorithm", "kds", "--graph", "k9.txt", "--k", "2", "--max-rounds", "1"]);
    assert_eq!(o.status.code(), Some(3));

    let o = lab(d, &["run", "--algorithm", "kds", "--graph", "missing.txt", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certificate_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    lab(d, &["gen", "--kind", "cycle", "--n", "4", "--out", "c4.txt"]);
    lab(d, &["gen", "--kind", "cycle", "--n", "5", "--out", "c5.txt"]);
    let o = json(&lab(d, &["exists", "--verifier", "two-colouring", "--graph", "c4.txt"]));
    assert_eq!(o["accepted"], true);
    std::fs::write(d.join("cert.txt"), o["certificate"].as_str().unwrap()).unwrap();
    let v = json(&lab(d, &["verify", "--verifier", "two-colouring", "--graph", "c4.txt", "--cert", "cert.txt"]));
    assert_eq!(v["accepted"], true);
    let v = lab(d, &["verify", "--verifier", "two-colouring", "--graph", "c5.txt", "--cert", "cert.txt"]);
    assert_eq!(v.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&v.stderr).contains("no label for node 5"));

    let nf = lab(d, &["normalform", "--verifier", "two-colouring", "--graph", "c5.txt"]);
    assert_eq!(nf.status.code(), Some(0));
    let nf = json(&nf);
    assert_eq!((nf["exists_a"].as_bool(), nf["exists_normal_form"].as_bool()), (Some(false), Some(false)));

    let game = json(&lab(d, &["game", "--predicate", "has-triangle", "--graph", "c4.txt"]));
    assert_eq!(game["mode"], "audit");
    assert_eq!(game["value"], false);
    lab(d, &["gen", "--kind", "path", "--n", "3", "--out", "p3.txt"]);
    let game = json(&lab(d, &["game", "--predicate", "is-connected", "--graph", "p3.txt"]));
    assert_eq!((game["mode"].as_str(), game["value"].as_bool()), (Some("exhaustive"), Some(true)));
}

#[test]
fn graph_tools() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = stdout(&lab(d, &["gen", "--kind", "erdos-renyi", "--n", "10", "--p", "0.5", "--seed", "1"]));
    let b = stdout(&lab(d, &["gen", "--kind", "erdos-renyi", "--n", "10", "--p", "0.5", "--seed", "1"]));
    assert_eq!(a, b);
    std::fs::write(d.join("g.txt"), &a).unwrap();
    let reduced = stdout(&lab(d, &["reduce", "--graph", "g.txt", "--k", "2"]));
    // |V'| = kn + C(k,2) n + 2k
    assert!(reduced.starts_with("34 "), "{}", &reduced[..10]);
    assert_eq!(stdout(&lab(d, &["run", "--algo", "reduce-is", "--graph", "g.txt", "--k", "2"])), reduced);
    let col = stdout(&lab(d, &["run", "--algo", "reduce-col", "--graph", "g.txt", "--k", "3"]));
    assert!(col.starts_with("30 "));
    let o = json(&lab(d, &["oracle", "--problem", "chrom", "--graph", "g.txt", "--k", "10"]));
    assert_eq!(o["colourable"], true);
    let r = json(&lab(d, &["run", "--algorithm", "kis-via-ds", "--graph", "g.txt", "--k", "2"]));
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn bounds_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c = json(&lab(dir.path(), &["bounds", "count", "--n", "4", "--b", "2", "--l", "3", "--t", "1"]));
    assert_eq!(c["ceiling"], "15");
    let x = json(&lab(dir.path(), &["bounds", "crossover", "--n", "16", "--b", "4", "--l", "64"]));
    assert_eq!(x["scan"].to_string(), x["closed_form"].as_str().unwrap());
    let t = json(&lab(dir.path(), &["bounds", "thm3", "--displayed", "--n-max", "100"]));
    assert_eq!(t["threshold"], serde_json::Value::Null);

    let csv = stdout(&lab(dir.path(), &["bounds", "--check", "thm3", "--t-spec", "const 1", "--n-max", "64"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,lhs,rhs,holds");
    assert_eq!(lines.len(), 64);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    let csv = stdout(&lab(dir.path(), &["bounds", "--check", "thm6", "--t-spec", "poly 1 2", "--n-max", "4", "--k-max", "2"]));
    assert_eq!(csv.lines().next(), Some("n,k,lhs,rhs,holds"));
    assert!(csv.contains("\n2,2,96,96,false\n"));
    let o = lab(dir.path(), &["bounds", "--check", "thm1", "--t-spec", "n^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn configs_parse_from_disk() {
    let cfg = ExperimentConfig::parse(CONFIG).unwrap();
    assert_eq!(cfg.repetitions, 2);
}
