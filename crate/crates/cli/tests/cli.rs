use std::process::{Command, Output};

use apfree_core::{APWitness, FapCertificate, IntervalUnion, NDGenerator, PLHomeo, Rat};
use serde_json::Value;

fn apfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {text}"))
}

const CANTOR: &str = r#"{"kind":"cantor","ratio":"1/3"}"#;

#[test]
fn ap3_on_unit_interval() {
    let o = apfree(&["ap3", "--set", r#"[["0","1"]]"#, "--eps", "1/2"]);
    assert!(o.status.success());
    let w: APWitness = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        w,
        APWitness {
            start: Rat::zero(),
            step: Rat::new(1, 2),
            length: 3
        }
    );
    let none = apfree(&["ap3", "--set", r#"[["0","1"]]"#, "--eps", "1/2", "--strict"]);
    assert_eq!(stdout(&none).trim(), "null");
}

#[test]
fn malformed_input_exits_2_with_json() {
    let o = apfree(&["ap3", "--set", r#"[["0","2"]]"#, "--eps", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["exit_code"], 2);
    let o = apfree(&["ap3", "--set", r#"[["0","1"]]"#, "--eps", "half"]);
    assert_eq!(o.status.code(), Some(2));
    error_json(&o);
    let o = apfree(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_rejects_zero_stages() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, format!(r#"{{"generators":[{CANTOR}],"stages":0}}"#)).unwrap();
    let o = apfree(&["build", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "bad_config");
}

#[test]
fn refinement_exhaustion_exits_3() {
    let o = apfree(&["destroy", "--generator", CANTOR, "--eps", "1/40", "--max-gen", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["error"], "refinement_exhausted");
}

#[test]
fn build_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    let cert = dir.path().join("out").with_extension("json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"generators":[{CANTOR}],"stages":2,"output":"{}"}}"#,
            cert.display()
        ),
    )
    .unwrap();
    let o = apfree(&["build", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let sets = format!("[{CANTOR}]");
    let o = apfree(&["verify", cert.to_str().unwrap(), "--sets", &sets]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["failure"].is_null());

    let text = std::fs::read_to_string(&cert).unwrap();
    let mut parsed = FapCertificate::from_json(&text).unwrap();
    assert_eq!(parsed.to_json().trim_end(), text.trim_end());
    parsed.final_homeo = PLHomeo::identity();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, parsed.to_json()).unwrap();
    let o = apfree(&["verify", bad.to_str().unwrap(), "--sets", &sets]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "certificate_rejected");

    std::fs::write(&bad, "{").unwrap();
    let o = apfree(&["verify", bad.to_str().unwrap(), "--sets", &sets]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_set_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cover.json");
    let o = apfree(&[
        "gen-set",
        "--generator",
        CANTOR,
        "--gen",
        "3",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let u: IntervalUnion = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(u, NDGenerator::middle_thirds().cover(3));
    // only the target file is left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn homeo_passthroughs() {
    let f = r#"[["0","0"],["1/2","1/4"],["1","1"]]"#;
    let id = r#"[["0","0"],["1","1"]]"#;
    let o = apfree(&["dist", "--f", f, "--g", id]);
    assert_eq!(serde_json::from_str::<Rat>(&stdout(&o)).unwrap(), Rat::new(1, 4));
    let o = apfree(&["compose", "--outer", f, "--inner", id]);
    let h: PLHomeo = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(h, serde_json::from_str::<PLHomeo>(f).unwrap());
    let o = apfree(&[
        "rap-witness",
        "--set",
        r#"[["0","1/2"]]"#,
        "--homeo",
        f,
        "--length",
        "5",
    ]);
    let w: APWitness = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        w,
        APWitness {
            start: Rat::zero(),
            step: Rat::new(1, 16),
            length: 5
        }
    );
    let o = apfree(&["rap-witness", "--set", r#"[["1/3","1/3"]]"#]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn defect_and_witness() {
    let u = r#"[["0","1/10"],["3/10","7/20"],["9/10","1"]]"#;
    let o = apfree(&["defect", "--set", u, "--eps", "1/5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rep: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rep["gamma"].as_str().unwrap().parse::<Rat>().unwrap().is_positive());
    let o = apfree(&["defect", "--set", r#"[["0","1"]]"#, "--eps", "1/5"]);
    assert_eq!(error_json(&o)["error"], "ap_present");
    let o = apfree(&["witness", "--set", u, "--length", "4"]);
    let w: APWitness = serde_json::from_str(&stdout(&o)).unwrap();
    // two widest components tie; the leftmost wins
    assert_eq!(w.start, Rat::zero());
}

#[test]
fn plot_data_csv() {
    let f = r#"[["0","0"],["1/2","1/4"],["1","1"]]"#;
    let o = apfree(&[
        "plot-data",
        "--homeo",
        f,
        "--generator",
        CANTOR,
        "--gen",
        "1",
        "--refine",
        "1",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,kind");
    assert_eq!(lines[1], "0,0,breakpoint");
    assert_eq!(lines.iter().filter(|l| l.ends_with(",sample")).count(), 2);
    assert_eq!(lines.iter().filter(|l| l.ends_with(",cover")).count(), 4);
}

#[test]
fn destroy_emits_parseable_outcome() {
    let o = apfree(&["destroy", "--generator", CANTOR, "--eps", "1/4"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let g: PLHomeo = serde_json::from_value(doc["homeo"].clone()).unwrap();
    assert!(g.sup_dist(&PLHomeo::identity()) < Rat::new(1, 4));
    assert!(doc["plan"]["anchors"]["points"].is_array());
    assert_eq!(doc["certificate"]["verified"], true);
}

#[test]
fn set_read_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_apfree"))
        .args(["ap3", "--set", "-", "--eps", "1/3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"[["0","1/2"],["2/3","1"]]"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    let w: APWitness = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        w,
        APWitness {
            start: Rat::zero(),
            step: Rat::new(1, 3),
            length: 3
        }
    );
}

#[test]
fn finite_points_alias() {
    let o = apfree(&["gen-set", "--generator", r#"{"kind":"finite_points","values":["1/2"]}"#]);
    let u: IntervalUnion = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(u, IntervalUnion::from_points([Rat::new(1, 2)]).unwrap());
}
