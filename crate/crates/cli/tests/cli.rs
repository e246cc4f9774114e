use std::path::PathBuf;
use std::process::{Command, Output};

fn qfridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfridge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qfridge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn cycles_header_and_rows() {
    let o = qfridge(&["cycles", "--cycles", "5", "--theta", "0.5,1.0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,theta,T1,entropy_q1,energy_q1,dQ1"));
    assert_eq!(lines.count(), 12);
}

#[test]
fn phase_diagram_has_full_grid() {
    let o = qfridge(&["phase-diagram"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("T2,T3,dQ1"));
    assert_eq!(text.lines().count(), 1682);
}

#[test]
fn headers_of_other_commands() {
    let cases = [
        ("ledger", "step,label,dW1,dQ1,dW2,net_work,cumulative_work"),
        ("bcs", "round,analytic_bias,empirical_bias,retained_bits"),
        ("verify-decomposition", "index,label,duration"),
        ("cop", "T2,P010,P101,dQ1,dQ3,cop,dynamic_cop,carnot_limit"),
    ];
    for (cmd, header) in cases {
        let o = qfridge(&[cmd, "--bits", "1000"]);
        assert!(o.status.success(), "{cmd}: {}", stderr(&o));
        assert_eq!(stdout(&o).lines().next(), Some(header), "{cmd}");
    }
}

#[test]
fn identical_runs_write_identical_bytes() {
    for cmd in ["cycles", "bcs", "exchange", "ledger"] {
        let a = scratch(&format!("{cmd}-a.json"));
        let b = scratch(&format!("{cmd}-b.json"));
        for p in [&a, &b] {
            let o = qfridge(&[
                cmd,
                "--format",
                "json",
                "--seed",
                "17",
                "--out",
                p.to_str().unwrap(),
            ]);
            assert!(o.status.success());
        }
        assert_eq!(
            std::fs::read(&a).unwrap(),
            std::fs::read(&b).unwrap(),
            "{cmd}"
        );
    }
}

#[test]
fn different_seeds_differ() {
    let a = stdout(&qfridge(&["bcs", "--seed", "1"]));
    let b = stdout(&qfridge(&["bcs", "--seed", "2"]));
    assert_ne!(a, b);
}

#[test]
fn broken_degeneracy_is_rejected() {
    let o = qfridge(&["exchange", "--e1", "1", "--e2", "3", "--e3", "2.5"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("E2 must equal E1+E3"), "{err}");
    assert_eq!(err.lines().count(), 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn config_file_and_overrides() {
    let path = scratch("run.cfg");
    std::fs::write(
        &path,
        "# warmer target\nt1 = 3\ndelta-scale = 1\ntheta = 0.3927,1.5708\n",
    )
    .unwrap();
    let o = qfridge(&["exchange", "--config", path.to_str().unwrap(), "--t3", "12"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);

    let j = qfridge(&[
        "exchange",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["meta"]["config"]["t1"], 3.0);
    assert_eq!(v["meta"]["delta_scale"], 1.0);
    assert_eq!(v["data"].as_array().unwrap().len(), 2);

    let bad = scratch("bad.cfg");
    std::fs::write(&bad, "t1 = 3\ncolour = blue\n").unwrap();
    let o = qfridge(&["exchange", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown key `colour`"));
}

#[test]
fn json_meta_block() {
    let o = qfridge(&["bcs", "--format", "json", "--bits", "1000", "--rounds", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let meta = &v["meta"];
    assert_eq!(meta["tool"], "qfridge");
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["command"], "bcs");
    assert!(meta["prng"].as_str().unwrap().starts_with("ChaCha8"));
    assert_eq!(meta["delta_scale"], 2.0);
    assert_eq!(v["data"].as_array().unwrap().len(), 3);
    assert_eq!(v["data"][1]["analytic_bias"], 0.8);
}

#[test]
fn delta_scale_multiplies_temperatures_only() {
    let one = stdout(&qfridge(&["exchange", "--delta-scale", "1"]));
    let two = stdout(&qfridge(&["exchange"]));
    let row = |s: &str| -> Vec<f64> {
        s.lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|x| x.parse().unwrap())
            .collect()
    };
    let (a, b) = (row(&one), row(&two));
    assert_eq!(a[0], b[0]);
    assert_eq!(a[1], b[1]);
    assert_eq!(2.0 * a[8], b[8]);
    assert_eq!(2.0 * a[5], b[5]);
    assert_eq!(a[11], b[11]);
}

#[test]
fn io_and_usage_errors() {
    let o = qfridge(&["exchange", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qfridge(&["exchange", "--config", "/nonexistent-dir/x.cfg"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qfridge(&["exchange", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o).lines().count(), 1);
    let o = qfridge(&[]);
    assert_eq!(o.status.code(), Some(1));
    let o = qfridge(&["exchange", "--theta", "abc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`theta`"));
    assert!(qfridge(&["--help"]).status.success());
}

#[test]
fn verify_reports_fidelity() {
    let o = qfridge(&[
        "verify-decomposition",
        "--theta",
        "0.1,0.2",
        "--block-order",
        "2,0,3,1",
    ]);
    assert!(o.status.success());
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 2);
    for line in err.lines() {
        let f: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
        assert!(f >= 1.0 - 1e-10);
    }
    assert_eq!(stdout(&o).lines().count(), 41);
}

#[test]
fn negative_theta_accepted() {
    let o = qfridge(&["exchange", "--theta", "-0.5"]);
    assert!(o.status.success(), "{}", stderr(&o));
}
