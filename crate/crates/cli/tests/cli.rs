use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn orbitlang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitlang")).args(args).env_remove("ORBITLANG_PRECISION").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("one JSON report")
}

#[test]
fn orbit_table_lists_iterates() {
    let out = orbitlang(&["orbit", "--map", "t^2+1", "--point", "0", "--nmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n=4    26"));
    assert!(text.contains("n=5    677"));
}

#[test]
fn json_reports_carry_schema_one() {
    let out = orbitlang(&["orbit", "--map", "t^2-1", "--point", "0", "--nmax", "3", "--json"]);
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "orbit");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["iterates"], serde_json::json!(["0", "-1", "0", "-1"]));
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["decide", "--map", "t^2+1", "--point", "1/2, 5/4", "--variety", "y - x^2 - 1", "--nmax", "200", "--json"];
    let mut a = json_of(&orbitlang(&args));
    let mut b = json_of(&orbitlang(&args));
    a["timing_ms"] = Value::Null;
    b["timing_ms"] = Value::Null;
    assert_eq!(a, b);
    assert_eq!(a["result"]["progressions"], serde_json::json!([{"k": 1, "l": 0, "start": 0}]));
}

#[test]
fn precision_flag_overrides_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitlang"));
        cmd.args(["strassmann", "--series", "5, 1", "--prime", "5", "--json"]);
        cmd.env_remove("ORBITLANG_PRECISION");
        if let Some(e) = env {
            cmd.env("ORBITLANG_PRECISION", e);
        }
        if let Some(f) = flag {
            cmd.args(["--precision", f]);
        }
        json_of(&cmd.output().unwrap())["params"]["precision"].clone()
    };
    assert_eq!(run(None, None), 64);
    assert_eq!(run(Some("20"), None), 20);
    assert_eq!(run(Some("20"), Some("30")), 30);
}

#[test]
fn parse_errors_exit_with_two() {
    let out = orbitlang(&["decide", "--map", "t^2+1", "--point", "0", "--variety", "x/0", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["code"], "DivisionByZero");
}

#[test]
fn missing_prime_exits_with_one() {
    let out = orbitlang(&["find-prime", "--map", "t^2+1", "--point", "0", "--pmax", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn power_maps_are_reported_not_decided() {
    let out = orbitlang(&["decide", "--map", "t^2", "--point", "2", "--variety", "x - 16", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["code"], "PowerMapCase");
}

#[test]
fn variety_can_come_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_orbitlang"))
        .args(["decide", "--map", "t^2+1", "--point", "0", "--variety", "-", "--nmax", "100", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x - 26\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["exceptional"], serde_json::json!([4]));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = orbitlang(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
