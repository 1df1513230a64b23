//! End-to-end runs of the `jobroute` binary.
//!
//! Golden help files live in `tests/golden`; regenerate them with
//! `JOBROUTE_UPDATE_GOLDEN=1 cargo test -p jobroute --test cli`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::CommandFactory;
use jobroute::cli::Cli;

const CYCLE: &str = "1 2 1.0\n2 3 1.0\n3 4 5.0\n4 1 1.0\n";
const SUBCOMMANDS: [&str; 5] = ["gen", "run", "validate", "bench", "graph-info"];

fn jobroute(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jobroute"))
        .current_dir(dir)
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cycle.txt"), CYCLE).unwrap();
    dir
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}

#[test]
fn help_matches_golden_files() {
    let dir = workdir();
    for sub in [None].into_iter().chain(SUBCOMMANDS.map(Some)) {
        let mut args: Vec<&str> = sub.into_iter().collect();
        args.push("--help");
        let out = jobroute(dir.path(), &args);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        let path = golden(&format!("help-{}", sub.unwrap_or("main")));
        if std::env::var_os("JOBROUTE_UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &text).unwrap();
        }
        let want =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, want, "help of {sub:?} changed");
    }
}

#[test]
fn help_lists_every_flag() {
    let cmd = Cli::command();
    let dir = workdir();
    for sub in cmd.get_subcommands() {
        let text = stdout(&jobroute(dir.path(), &[sub.get_name(), "--help"]));
        for arg in sub.get_arguments() {
            if let Some(long) = arg.get_long() {
                assert!(
                    text.contains(&format!("--{long}")),
                    "{} --help lacks --{long}",
                    sub.get_name()
                );
            }
        }
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = workdir();
    for args in [
        &["graph-info", "--graph", "cycle.txt", "--bogus"][..],
        &["frobnicate"],
        &["gen", "--graph", "cycle.txt"],
        &["run", "--instance", "x", "--algo", "dfs"],
        &[
            "gen",
            "--graph",
            "cycle.txt",
            "--jobs",
            "3",
            "--seed",
            "1",
            "--window",
            "10",
        ],
    ] {
        let out = jobroute(dir.path(), args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn missing_instance_exits_two_naming_the_path() {
    let dir = workdir();
    let out = jobroute(dir.path(), &["run", "--algo", "bfs", "--instance", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains('x'), "{}", stderr(&out));
    let out = jobroute(
        dir.path(),
        &["run", "--algo", "bfs", "--instance", "no-such-file.json"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no-such-file.json"));
}

#[test]
fn graph_info_prints_counts() {
    let dir = workdir();
    let out = jobroute(
        dir.path(),
        &["graph-info", "--graph", "cycle.txt", "--format", "edgelist"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n=4\nm=4\n"), "{text}");
    assert!(text.contains("components=1"));
}

#[test]
fn gen_run_validate_round_trip() {
    let dir = workdir();
    let gen = jobroute(
        dir.path(),
        &[
            "gen",
            "--graph",
            "cycle.txt",
            "--jobs",
            "12",
            "--seed",
            "4",
            "--budget",
            "6",
            "--out",
            "inst.json",
        ],
    );
    assert_eq!(gen.status.code(), Some(0), "{}", stderr(&gen));
    for algo in ["bfs", "nn", "random", "ugreedy", "oracle"] {
        let sched = format!("{algo}.json");
        let run = jobroute(
            dir.path(),
            &[
                "run",
                "--instance",
                "inst.json",
                "--algo",
                algo,
                "--seed",
                "2",
                "--out",
                &sched,
            ],
        );
        assert_eq!(run.status.code(), Some(0), "{algo}: {}", stderr(&run));
        let val = jobroute(
            dir.path(),
            &["validate", "--instance", "inst.json", "--schedule", &sched],
        );
        assert_eq!(val.status.code(), Some(0), "{algo}: {}", stderr(&val));
        assert!(stdout(&val).starts_with("valid: "));
    }
}

#[test]
fn tampered_schedule_fails_validation() {
    let dir = workdir();
    jobroute(
        dir.path(),
        &[
            "gen",
            "--graph",
            "cycle.txt",
            "--jobs",
            "12",
            "--seed",
            "4",
            "--out",
            "inst.json",
        ],
    );
    jobroute(
        dir.path(),
        &[
            "run",
            "--instance",
            "inst.json",
            "--algo",
            "bfs",
            "--out",
            "s.json",
        ],
    );
    let path = dir.path().join("s.json");
    let mut file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let total = file["total_utility"].as_f64().unwrap();
    file["total_utility"] = serde_json::json!(total + 1.0);
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = jobroute(
        dir.path(),
        &[
            "validate",
            "--instance",
            "inst.json",
            "--schedule",
            "s.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("violation"), "{}", stderr(&out));
}

#[test]
fn oracle_refuses_above_its_limit() {
    let dir = workdir();
    jobroute(
        dir.path(),
        &[
            "gen",
            "--graph",
            "cycle.txt",
            "--jobs",
            "30",
            "--seed",
            "1",
            "--out",
            "inst.json",
        ],
    );
    let out = jobroute(
        dir.path(),
        &[
            "run",
            "--instance",
            "inst.json",
            "--algo",
            "oracle",
            "--oracle-max-jobs",
            "10",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at most 10"), "{}", stderr(&out));
}

#[test]
fn identical_argv_identical_output() {
    let dir = workdir();
    let runs = [
        vec!["gen", "--graph", "cycle.txt", "--jobs", "20", "--seed", "9"],
        vec![
            "bench",
            "--graph",
            "cycle.txt",
            "--jobs",
            "5,10",
            "--seeds",
            "4",
        ],
        vec![
            "bench",
            "--graph",
            "cycle.txt",
            "--jobs",
            "5,10",
            "--seeds",
            "4",
            "--serial",
        ],
        vec!["graph-info", "--graph", "cycle.txt"],
    ];
    for args in &runs {
        let a = jobroute(dir.path(), args);
        let b = jobroute(dir.path(), args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let par = jobroute(dir.path(), &runs[1]);
    let ser = jobroute(dir.path(), &runs[2]);
    assert_eq!(par.stdout, ser.stdout);

    jobroute(
        dir.path(),
        &[
            "gen",
            "--graph",
            "cycle.txt",
            "--jobs",
            "20",
            "--seed",
            "9",
            "--out",
            "i.json",
        ],
    );
    let a = jobroute(
        dir.path(),
        &[
            "run",
            "--instance",
            "i.json",
            "--algo",
            "random",
            "--seed",
            "3",
        ],
    );
    let b = jobroute(
        dir.path(),
        &[
            "run",
            "--instance",
            "i.json",
            "--algo",
            "random",
            "--seed",
            "3",
        ],
    );
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_writes_files_from_a_config() {
    let dir = workdir();
    std::fs::write(
        dir.path().join("bench.toml"),
        "job_counts = [5, 8]\nalgorithms = [\"bfs\", \"nn\", \"oracle\"]\nseeds = [1, 2, 3]\noutput = \"rows.csv\"\naggregate_output = \"agg.csv\"\n[dataset]\npath = \"cycle.txt\"\nformat = \"edgelist\"\nname = \"cycle\"\n",
    )
    .unwrap();
    let out = jobroute(dir.path(), &["bench", "--config", "bench.toml"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = std::fs::read_to_string(dir.path().join("rows.csv")).unwrap();
    assert_eq!(rows.lines().count(), 1 + 2 * 3 * 3);
    let agg = std::fs::read_to_string(dir.path().join("agg.csv")).unwrap();
    assert_eq!(agg.lines().count(), 1 + 2 * 3);

    let bad = jobroute(
        dir.path(),
        &["bench", "--config", "bench.toml", "--jobs", "5"],
    );
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn nonmonotone_search_reports() {
    let dir = workdir();
    let out = jobroute(
        dir.path(),
        &[
            "bench",
            "--graph",
            "cycle.txt",
            "--find-nonmonotone",
            "bfs",
            "--k-small",
            "5",
            "--k-large",
            "10",
            "--max-tries",
            "50",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.starts_with("seed=") || text.starts_with("not found"),
        "{text}"
    );
    let out = jobroute(
        dir.path(),
        &[
            "bench",
            "--graph",
            "cycle.txt",
            "--find-nonmonotone",
            "bfs",
            "--k-small",
            "5",
            "--k-large",
            "5",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}
