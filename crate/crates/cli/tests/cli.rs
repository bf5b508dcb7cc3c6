use std::process::{Command, Output};

use lefschetz::analyzer::{cross_check, WlpReport};
use lefschetz::oracle::OracleConfig;
use lefschetz::AlgebraSpec;
use lefschetz_cli::{EXIT_DISCREPANCY, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cmd(args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lefschetz"));
    c.args(args).env_remove("LEFSCHETZ_SEED").env_remove("LEFSCHETZ_PRIME");
    c
}

fn run(args: &[&str]) -> Output {
    cmd(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["hf", "-r", "0", "-n", "1", "-t", "1"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["hf", "-r", "4"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["hf", "-r", "4", "-n", "5", "-t", "3", "--prime", "4"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(run(&["--help"]).status.code(), Some(EXIT_OK));
    assert_eq!(run(&["hf", "-r", "4", "-n", "5", "-t", "3"]).status.code(), Some(EXIT_OK));
    assert_eq!(run(&["gt", "resolve"]).status.code(), Some(EXIT_DISCREPANCY));
    assert_eq!(run(&["gt", "resolve", "--format", "csv"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn hf_rows_agree() {
    let o = run(&["hf", "-r", "4", "-n", "5", "-t", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,formula,oracle,agree"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert_eq!(rows[9], "9,120,120,true");
    assert_eq!(rows[10], "10,111,111,true");
}

#[test]
fn hf_degree_window() {
    let o = run(&["hf", "-r", "4", "-n", "8", "-t", "8", "--from", "8", "--to", "15", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let got: Vec<u64> = v["data"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["oracle"].as_u64().unwrap())
        .collect();
    assert_eq!(got, vec![157, 188, 206, 204, 175, 112, 8, 0]);
}

#[test]
fn hf_complete_intersection_and_non_artinian() {
    let o = run(&["hf", "-r", "3", "-n", "3", "-t", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "degree,formula,oracle,agree\n0,1,1,true\n1,3,3,true\n2,3,3,true\n3,1,1,true\n");
    let o = run(&["hf", "-r", "3", "-n", "2", "-t", "2", "--to", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).ends_with("4,,4,\n"));
}

#[test]
fn wlp_json_matches_library() {
    let o = run(&["wlp", "-r", "4", "-n", "5", "-t", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "wlp");
    let rep: WlpReport = serde_json::from_value(v["data"].clone()).unwrap();
    let want = cross_check(&AlgebraSpec::uniform(4, 5, 3).unwrap(), &OracleConfig::default()).unwrap();
    assert_eq!(rep, want);
    assert_eq!(rep.failing_degrees(), vec![3]);
}

#[test]
fn wlp_csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("lefschetz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wlp.csv");
    let o = run(&["wlp", "-r", "4", "-n", "5", "-t", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("degree,dim_source,dim_target,rank,injective,surjective\n"));
    assert!(text.contains("\n3,15,15,14,false,false\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["wlp", "-r", "4", "-n", "6", "-t", "4", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["oracle", "forms", "-r", "4", "-n", "3", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn environment_and_flag_precedence() {
    let base = stdout(&run(&["oracle", "forms", "-r", "3", "-n", "2"]));
    let flag = stdout(&run(&["oracle", "forms", "-r", "3", "-n", "2", "--seed", "7"]));
    let env = stdout(&cmd(&["oracle", "forms", "-r", "3", "-n", "2"]).env("LEFSCHETZ_SEED", "7").output().unwrap());
    let both = stdout(
        &cmd(&["oracle", "forms", "-r", "3", "-n", "2", "--seed", "0"])
            .env("LEFSCHETZ_SEED", "7")
            .output()
            .unwrap(),
    );
    assert_ne!(base, flag);
    assert_eq!(flag, env);
    assert_eq!(both, base);

    let p = "4294967291";
    let a = stdout(&cmd(&["oracle", "forms", "-r", "3", "-n", "2"]).env("LEFSCHETZ_PRIME", p).output().unwrap());
    let b = stdout(&run(&["oracle", "forms", "-r", "3", "-n", "2", "--prime", p]));
    assert_eq!(a, b);
    assert!(a.split_whitespace().all(|x| x.parse::<u64>().unwrap() < 4294967291));
}

#[test]
fn surface_commands() {
    assert_eq!(stdout(&run(&["surface", "curves", "-n", "8"])).lines().count(), 240);
    assert_eq!(stdout(&run(&["surface", "curves", "-n", "7"])).lines().count(), 56);
    assert_eq!(stdout(&run(&["surface", "bound", "-n", "8", "-t", "8"])), "11\n");
    assert_eq!(stdout(&run(&["surface", "irregular", "-n", "5", "-d", "4", "-m", "2"])), "true\n");
    assert_eq!(stdout(&run(&["surface", "effective", "-n", "6", "-d", "12", "-m", "5"])), "true\n");
    assert_eq!(stdout(&run(&["surface", "worst", "-n", "8", "-t", "10", "-m", "15"])), "-12\n");
    let o = run(&["surface", "curves", "-n", "9"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn gt_commands() {
    let o = run(&["gt", "resolve", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["data"]["Discrepancy"].is_array());
    let o = run(&["gt", "count", "-r", "2", "-t", "2", "-i", "0", "--format", "csv"]);
    assert!(stdout(&o).starts_with("convention,count\n"));
    let o = run(&["gt", "odd", "-k", "1", "-t", "5"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("injection holds"));
}

#[test]
fn oracle_commands() {
    assert_eq!(stdout(&run(&["oracle", "ideal", "-r", "4", "-n", "5", "-t", "3", "-j", "3"])), "5\n");
    assert_eq!(
        stdout(&run(&["oracle", "fatpoint", "-r", "3", "-j", "4", "--mults", "2,2,2,2,2"])),
        "h0 1\nh1 1\n"
    );
    assert_eq!(stdout(&run(&["oracle", "socle", "-r", "4", "-n", "6", "-t", "4"])), "7\n");
    let o = run(&["oracle", "rank", "-r", "4", "-n", "5", "-t", "4", "-j", "5", "--format", "csv"]);
    assert!(stdout(&o).contains("\n5,36,34,33,false,false\n"), "{}", stdout(&o));
}

#[test]
fn verify_paper() {
    let o = run(&["verify-paper", "--only", "surface"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    assert!(!text.contains("FAIL "));

    let o = run(&["verify-paper", "--seed", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", stdout(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["data"].as_array().unwrap();
    assert_eq!(rows.len(), lefschetz_cli::manifest().len());
    assert!(rows.iter().all(|r| matches!(r["status"].as_str(), Some("PASS" | "XFAIL"))));

    assert_eq!(run(&["verify-paper", "--only", "nothing"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn in_process_runner() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = lefschetz_cli::run(["lefschetz", "surface", "bound", "-n", "6", "-t", "6"], &mut out, &mut err);
    assert_eq!(code, EXIT_OK);
    assert_eq!(String::from_utf8(out).unwrap(), "9\n");
    assert!(err.is_empty());
}
