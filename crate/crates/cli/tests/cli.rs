use std::io::Write;
use std::process::Command;

use cone_spectra::stability::{stability_report, ConeData};
use cone_spectra_cli::{run, Outcome, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("cone-spectra").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("report is JSON")
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn hl_has_seven_dimensional_kernel_at_zero() {
    let v = json(&["indicial", "--cone", "hl", "--window", "-1:1"]);
    let roots = v["result"]["roots"].as_array().unwrap();
    let zero = roots.iter().find(|r| r["exact"] == "0").expect("root at 0");
    assert_eq!(zero["lambda"], 0.0);
    assert_eq!(zero["dimension"], 7);
    assert_eq!(v["command"], "indicial");
    assert_eq!(v["tool"], "cone-spectra");
}

#[test]
fn hl_is_rigid() {
    let v = json(&["stability", "--cone", "hl", "--sym-dim", "2"]);
    assert_eq!(v["result"]["s_ind"], "1");
    assert_eq!(v["result"]["rigid"], true);
}

#[test]
fn equal_parameters_give_equal_angles() {
    let v = json(&["lawlor", "angles", "--a", "1,1,1"]);
    for t in v["result"]["theta"].as_array().unwrap() {
        assert!((t.as_f64().unwrap() - std::f64::consts::FRAC_PI_3).abs() < 1e-9);
    }
}

#[test]
fn stability_result_matches_library() {
    let v = json(&["stability", "--cone", "hl"]);
    let direct = stability_report(&ConeData::<f64>::harvey_lawson(42.0).unwrap()).unwrap().to_json();
    for (k, val) in direct.as_object().unwrap() {
        assert_eq!(&v["result"][k], val, "field {k}");
    }
}

#[test]
fn exit_codes() {
    let bad_cone = cli(&["indicial", "--cone", "nonsense"]);
    assert_eq!(bad_cone.code, EXIT_VALIDATION);
    let err: Value = serde_json::from_str(&bad_cone.stdout).unwrap();
    assert!(err["error"]["kind"].is_string());

    assert_eq!(cli(&["lawlor", "solve", "--theta", "0.5,0.5,0.5"]).code, EXIT_VALIDATION);
    assert_eq!(cli(&["lawlor", "angles", "--a", "1,1,1", "--tolerance", "1e-300"]).code, EXIT_NUMERICAL);
    assert_eq!(cli(&["no-such-command"]).code, EXIT_USAGE);
    assert_eq!(cli(&["lawlor", "angles", "--a", "1,1"]).code, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_cone-spectra");
    let ok = Command::new(bin).args(["planes", "--theta", "1,1,1.1415926535897931"]).output().unwrap();
    assert!(ok.status.success());
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["command"], "planes");
    let bad = Command::new(bin).args(["indicial", "--cone", "nonsense"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_VALIDATION));
    let usage = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
}

#[test]
fn config_supplies_flags() {
    let f = config_file("cone = \"hl\"\nwindow = \"-1:1\"\n");
    let path = f.path().to_str().unwrap();
    let via_config = json(&["indicial", "--config", path]);
    let direct = json(&["indicial", "--cone", "hl", "--window", "-1:1"]);
    assert_eq!(via_config["result"], direct["result"]);
    assert_eq!(via_config["config"], direct["config"]);
}

#[test]
fn command_line_overrides_config() {
    let f = config_file("a = [2.0, 1.0, 1.0]\n");
    let path = f.path().to_str().unwrap();
    let v = json(&["lawlor", "angles", "--config", path, "--a", "1,1,1"]);
    assert_eq!(v["config"]["a"], serde_json::json!([1.0, 1.0, 1.0]));
    let w = json(&["lawlor", "angles", "--config", path]);
    assert_eq!(w["config"]["a"], serde_json::json!([2.0, 1.0, 1.0]));
}

#[test]
fn unknown_config_key_is_rejected() {
    let f = config_file("cone = \"hl\"\ncolour = \"blue\"\n");
    let out = cli(&["indicial", "--config", f.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_VALIDATION);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "InvalidConfig");
    assert_eq!(cli(&["indicial", "--config", "/nonexistent/c.toml"]).code, EXIT_VALIDATION);
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["hl", "verify", "--samples", "200", "--seed", "7"];
    let one = json(&[&args[..], &["--threads", "1"]].concat());
    let four = json(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one["result"], four["result"]);
    assert_eq!(cli(&[&args[..], &["--threads", "0"]].concat()).code, EXIT_VALIDATION);
}

#[test]
fn environment_thread_count() {
    let bin = env!("CARGO_BIN_EXE_cone-spectra");
    let go = |env: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(["g2", "check", "--samples", "300"]);
        match env {
            Some(n) => c.env(cone_spectra_cli::THREADS_ENV, n),
            None => c.env_remove(cone_spectra_cli::THREADS_ENV),
        };
        c.output().unwrap()
    };
    let a = go(Some("1"));
    let b = go(Some("3"));
    assert!(a.status.success() && b.status.success());
    let va: Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["result"], vb["result"]);
    assert_eq!(go(Some("many")).status.code(), Some(EXIT_VALIDATION));
}

#[test]
fn seeds_are_deterministic() {
    let a = json(&["g2", "check", "--samples", "100", "--seed", "11"]);
    let b = json(&["g2", "check", "--samples", "100", "--seed", "11"]);
    assert_eq!(a["result"], b["result"]);
    let c = json(&["g2", "check", "--samples", "100", "--seed", "12"]);
    assert_ne!(a["result"], c["result"]);
}

#[test]
fn csv_output() {
    let out = cli(&["indicial", "--cone", "hl", "--window", "-1:1", "--format", "csv"]);
    assert_eq!(out.code, EXIT_OK);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("lambda,dimension"));
    assert!(out.stdout.lines().any(|l| l == "0.0,7"));

    let profile = cli(&["lawlor", "profile", "--a", "1,1,1", "--points", "5", "--format", "csv"]);
    assert_eq!(profile.code, EXIT_OK);
    assert_eq!(profile.stdout.lines().count(), 6);

    assert_eq!(cli(&["stability", "--cone", "hl", "--format", "csv"]).code, EXIT_VALIDATION);
}

#[test]
fn mesh_spectrum_from_off() {
    let mut f = tempfile::Builder::new().suffix(".off").tempfile().unwrap();
    write!(
        f,
        "OFF\n6 8 0\n1 0 0\n-1 0 0\n0 1 0\n0 -1 0\n0 0 1\n0 0 -1\n\
         3 0 2 4\n3 2 1 4\n3 1 3 4\n3 3 0 4\n3 2 0 5\n3 1 2 5\n3 3 1 5\n3 0 3 5\n"
    )
    .unwrap();
    let v = json(&["spectrum", "mesh", "--off", f.path().to_str().unwrap(), "--count", "4"]);
    let s = v["result"].to_string();
    assert!(s.contains("eigenvalue"), "{s}");

    assert_eq!(cli(&["spectrum", "mesh", "--off", "/nonexistent.off"]).code, EXIT_VALIDATION);
}

#[test]
fn torus_and_sphere_spectra() {
    let t = json(&["spectrum", "torus", "--metric", "1,0,1", "--cutoff", "2"]);
    assert!(t["result"]["entries"].as_array().unwrap().len() >= 2);
    let s = json(&["spectrum", "sphere", "--cutoff", "7"]);
    assert!(!s["result"]["entries"].as_array().unwrap().is_empty());
}

#[test]
fn index_report_antisymmetry() {
    let ac = json(&["index", "--cone", "hl", "--kind", "ac", "--rate", "0.5"]);
    let cs = json(&["index", "--cone", "hl", "--kind", "cs", "--rate", "0.5"]);
    assert_eq!(ac["result"]["index"], 8);
    assert_eq!(cs["result"]["index"].as_i64(), ac["result"]["index"].as_i64().map(|i| -i));
}
