use std::path::PathBuf;
use std::process::{Command, Output};

fn qkd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkd")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qkd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, body: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const IDEAL: &str = r#"{
  "M": 10000, "delta": 0.05, "k": 2000, "t": 32, "cascade_passes": 4,
  "loss_prob": 0.0, "seed": 7, "channel": {"kind": "ideal"}
}"#;

#[test]
fn version_and_help() {
    let v = qkd(&["--version"]);
    assert!(v.status.success());
    assert!(stdout(&v).starts_with("qkd "));
    assert!(qkd(&["--help"]).status.success());
    assert_eq!(qkd(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn simulate_ideal_channel() {
    let cfg = write("ideal.json", IDEAL);
    let o = qkd(&["simulate", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let run: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for f in ["sift", "pe", "ec"] {
        assert_eq!(run["flags"][f], "pass");
    }
    assert_eq!(run["key_a"], run["key_b"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("flags=pass,pass,pass qber="));
}

#[test]
fn simulate_is_byte_identical() {
    let cfg = write("det.json", IDEAL);
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for out in [&a, &b] {
        let o = qkd(&["simulate", &cfg, "-o", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(stdout(&o).starts_with("flags="));
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn simulate_abort_is_success() {
    let cfg = write("eve.json", &IDEAL.replace(r#"{"kind": "ideal"}"#, r#"{"kind": "intercept_resend", "fraction": 1.0}"#));
    let o = qkd(&["simulate", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let run: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(run["flags"]["pe"], "abort");
}

#[test]
fn simulate_config_errors() {
    let k_too_big = write("k.json", &IDEAL.replace("\"k\": 2000", "\"k\": 10000"));
    let o = qkd(&["simulate", &k_too_big]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let unknown = write("unknown.json", &IDEAL.replace("\"seed\": 7", "\"seed\": 7, \"colour\": 1"));
    assert_eq!(qkd(&["simulate", &unknown]).status.code(), Some(2));
    assert_eq!(qkd(&["simulate", "/nonexistent/config.json"]).status.code(), Some(2));
}

#[test]
fn rate_report_and_sweep() {
    let o = qkd(&["rate", "-M", "1e7", "--qber", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["r_per_signal"].as_f64().unwrap() > 0.0);
    assert_eq!(r["feasible"], true);

    let o = qkd(&["rate", "--eps", "1e-10", "--eps-ec", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["feasible"], false);

    let o = qkd(&["rate", "--sweep", "M=1e4:1e6:5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "M,n,k,eps_bar,eps_bar_prime,nu_star,eps_pa,l,r_sifted,r_per_signal"
    );
    assert_eq!(lines.count(), 5);

    assert_eq!(qkd(&["rate", "--qber", "0.7"]).status.code(), Some(2));
    assert_eq!(qkd(&["rate", "--sweep", "M=1:2"]).status.code(), Some(2));
}

#[test]
fn capacity_csv() {
    let o = qkd(&["capacity", "--gamma-min", "0", "--gamma-max", "0.5", "--steps", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["gamma", "q", "a_star", "degradable", "max_coherent_info"]);
    assert_eq!(rows.len(), 12);
    assert!((rows[1][1].parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(rows[11][1], "0");

    let o = qkd(&["capacity", "--curve", "0.5"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,I"));
    for line in lines {
        let i: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(i.abs() < 1e-12);
    }
    assert_eq!(qkd(&["capacity", "--gamma-min", "0.6", "--gamma-max", "0.2"]).status.code(), Some(2));
}

#[test]
fn entropy_table() {
    let f = write("bit.json", r#"{"distribution": [0.5, 0.5]}"#);
    let o = qkd(&["entropy", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["H", "H_min", "H_max"] {
        let line = text.lines().find(|l| l.split_whitespace().next() == Some(name)).unwrap();
        let v: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{line}");
    }

    let bell = r#"{"state": [[[0.5,0],[0,0],[0,0],[0.5,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0.5,0],[0,0],[0,0],[0.5,0]]], "dims": [2, 2]}"#;
    let o = qkd(&["entropy", &write("bell.json", bell), "--json"]);
    let items: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let get = |m: &str| items.iter().find(|i| i["measure"] == m).unwrap()["value"].as_f64().unwrap();
    assert!((get("S(A|B)") + 1.0).abs() < 1e-9);
    assert!((get("H_min(A|B)") + 1.0).abs() < 1e-6);

    assert_eq!(qkd(&["entropy", &write("bad.json", r#"{"distribution": [0.5, 0.6]}"#)]).status.code(), Some(2));
    assert_eq!(qkd(&["entropy", &write("both.json", r#"{"distribution": [1.0], "joint": [[1.0]]}"#)]).status.code(), Some(2));
}
