use std::process::Command;

fn pwrot(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pwrot")).args(args).output().expect("run pwrot");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("pwrot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn iterate_q_in_phi_form() {
    let (code, out, _) = pwrot(&["iterate", "--alpha", "4/5", "--point", "Q", "--n", "10", "--format", "phi"]);
    assert_eq!(code, 0);
    let values: Vec<&str> = out.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(values[0], "-phi");
    assert_eq!(values[3], "1 + phi");
    assert_eq!(values[10], "phi");
    assert_eq!(values.len(), 11);
}

#[test]
fn hexagon_tile_command() {
    let (code, out, _) = pwrot(&["tile", "--alpha", "11/12", "--seed", "C"]);
    assert_eq!(code, 0);
    assert!(out.contains("sides\t6"));
    assert!(out.contains("shape\tirregular"));
    assert_eq!(out.lines().filter(|l| l.starts_with("vertex")).count(), 6);
}

#[test]
fn verify_golden_p1() {
    let (code, out, _) = pwrot(&["verify", "--alpha", "4/5", "--seed", "P1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all checks passed"));
}

#[test]
fn exit_code_contract() {
    assert_eq!(pwrot(&["period", "--alpha", "4/5", "--point", "(1/3, 1/7)", "--budget", "3"]).0, 2);
    assert_eq!(pwrot(&["period", "--alpha", "2/4", "--point", "0"]).0, 4);
    assert_eq!(pwrot(&["tile", "--alpha", "4/5", "--seed", "0"]).0, 4);
    assert_eq!(pwrot(&["iterate", "--alpha", "4/5", "--point", "1 + foo"]).0, 4);
    assert_eq!(pwrot(&["critical", "--alpha", "4/5", "--depth", "6", "--cap", "10"]).0, 2);
    assert_eq!(pwrot(&["--help"]).0, 0);
    let (code, _, err) = pwrot(&["scan", "--alpha", "4/5", "--grid", "0"]);
    assert_eq!(code, 4);
    assert!(err.contains("error"));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["scan", "--alpha", "3/7", "--box=-2,-2,2,2", "--grid", "1/2", "--format", "json"];
    let (c1, a, _) = pwrot(&args);
    let (c2, b, _) = pwrot(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v["tiles"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn svg_is_well_formed() {
    for args in [
        vec!["critical", "--alpha", "4/5", "--depth", "5", "--format", "svg"],
        vec!["tile", "--alpha", "11/12", "--seed", "C", "--format", "svg"],
        vec!["scan", "--alpha", "11/12", "--box=0,-1,3,2", "--grid", "1/2", "--format", "svg"],
        vec!["casestudy", "golden", "--format", "svg"],
    ] {
        let (code, out, _) = pwrot(&args);
        assert_eq!(code, 0, "{args:?}");
        let doc = roxmltree::Document::parse(&out).expect("valid xml");
        assert_eq!(doc.root_element().tag_name().name(), "svg");
    }
}

#[test]
fn config_file_and_out_path() {
    let cfg = tmp("run.cfg");
    std::fs::write(&cfg, "# defaults\nalpha = 11/12\nformat = csv\n").unwrap();
    let out = tmp("tile.csv");
    let (code, stdout, _) = pwrot(&[
        "tile",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "C",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("vertex,re,im\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn golden_table_and_returns() {
    let (code, out, _) = pwrot(&["casestudy", "golden", "--table", "--max-n", "3", "--returns", "220"]);
    assert_eq!(code, 0);
    assert!(out.contains("3\t232"));
    assert!(out.contains("220\t-10 + 7*phi"));
    let (code, out, _) = pwrot(&["casestudy", "hexagon"]);
    assert_eq!(code, 0);
    assert!(!out.contains("[FAIL]"));
}
