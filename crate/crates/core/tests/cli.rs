use std::path::Path;
use std::process::{Command, Output};

const PLAN: &str = r#"
dataset = "edges.csv"
algorithm = "kl-core"
param_grid = [{ k = 1, l = 1 }, { k = 2, l = 2 }]
n_queries = 6
rng_seed = 42
"#;

const SPEC: &str = r#"
n_communities = 3
community_size = 6
intra_event_rate = 1.5
inter_event_rate = 0.02
self_loop_rate = 0.5
time_span = 86400
rng_seed = 42

[sentiment_mix]
positive = 0.6
neutral = 0.2
negative = 0.2
"#;

fn cohesion(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohesion"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("spec.toml"), SPEC).unwrap();
    std::fs::write(dir.path().join("plan.toml"), PLAN).unwrap();
    let o = cohesion(dir.path(), &["gen-fixture", "--spec", "spec.toml", "--out", "edges.csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    dir
}

#[test]
fn stats_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("tiny.csv"),
        "src,dst,timestamp,sentiment\n1,2,0,1\n2,1,5,-1\n3,3,5,0\n",
    )
    .unwrap();
    let o = cohesion(dir.path(), &["stats", "tiny.csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for key in ["n_users\t3", "n_events\t3", "density\t", "deg_avg\t"] {
        assert!(text.contains(key), "{text}");
    }
}

#[test]
fn gen_fixture_is_deterministic_and_writes_membership() {
    let a = setup();
    let b = setup();
    let read = |d: &tempfile::TempDir, f: &str| std::fs::read(d.path().join(f)).unwrap();
    assert_eq!(read(&a, "edges.csv"), read(&b, "edges.csv"));
    let members = String::from_utf8(read(&a, "edges.membership.csv")).unwrap();
    assert!(members.starts_with("user,community\n"));
    assert_eq!(members.lines().count(), 1 + 18);
}

#[test]
fn run_twice_gives_identical_files() {
    let dir = setup();
    for out in ["a.csv", "b.csv"] {
        let o = cohesion(dir.path(), &["run", "--plan", "plan.toml", "--out", out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.csv")).unwrap());
    assert!(String::from_utf8(a).unwrap().starts_with("# cohesion-report schema=1"));
}

#[test]
fn report_converts_json_to_csv() {
    let dir = setup();
    assert!(cohesion(dir.path(), &["run", "--plan", "plan.toml", "--format", "json", "--out", "r.json"])
        .status
        .success());
    assert!(cohesion(dir.path(), &["run", "--plan", "plan.toml", "--out", "direct.csv"]).status.success());
    let o = cohesion(dir.path(), &["report", "r.json", "--format", "csv"]);
    assert!(o.status.success());
    let direct = std::fs::read_to_string(dir.path().join("direct.csv")).unwrap();
    assert_eq!(stdout(&o), direct);
}

#[test]
fn sweep_decay_emits_one_block_per_rate() {
    let dir = setup();
    let o = cohesion(dir.path(), &["sweep-decay", "--plan", "plan.toml", "--rates", "0.0001,0.01,0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let aggregates: Vec<&str> = text.lines().filter(|l| l.starts_with("aggregate,")).collect();
    assert_eq!(aggregates.len(), 3);
    let o = cohesion(dir.path(), &["sweep-decay", "--plan", "plan.toml", "--kind", "polynomial", "--rates", "0.5"]);
    assert!(stdout(&o).contains(",polynomial,0.5,"));
}

#[test]
fn gen_queries_is_seeded() {
    let dir = setup();
    let a = cohesion(dir.path(), &["gen-queries", "edges.csv", "-n", "4", "--seed", "7"]);
    let b = cohesion(dir.path(), &["gen-queries", "edges.csv", "-n", "4", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 4);
    let many = cohesion(dir.path(), &["gen-queries", "edges.csv", "-n", "500", "--seed", "7"]);
    assert!(stdout(&many).starts_with("# sampled with replacement\n"));
}

#[test]
fn missing_plan_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = cohesion(dir.path(), &["run", "--plan", "missing.conf"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("file not found"));
}

#[test]
fn missing_dataset_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("plan.toml"), PLAN).unwrap();
    let o = cohesion(dir.path(), &["run", "--plan", "plan.toml"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("edges.csv: file not found"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["run"][..], &["frobnicate"], &["run", "--plan", "p", "--format", "xml"], &[]] {
        let o = cohesion(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_plan_key_is_rejected() {
    let dir = setup();
    std::fs::write(dir.path().join("bad.toml"), format!("{PLAN}\ncolour = 3\n")).unwrap();
    let o = cohesion(dir.path(), &["run", "--plan", "bad.toml"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}
