use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn fcrystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcrystal")).args(args).output().expect("binary runs")
}

fn fcrystal_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fcrystal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

const WORKED_LATTICE: &str = r#"{"spec": {"p": 2, "m": 3, "N": 6, "r": 3, "s": 2, "e": 2},
 "generators": [[[1,0,0],[0,0,0],[0,0,0],0], [[1,0,0],[0,0,0],[0,0,0],2], [[1,0,0],[0,0,0],[0,0,0],4]]}"#;

#[test]
fn bound_reports_isomorphism_and_height_bounds() {
    let o = fcrystal(&["bound", "--s", "4", "--r", "3", "--e", "3"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["theorem_b"], json!(3));
    assert_eq!(v["q_bound"], json!(1));
    assert_eq!(v["isom_bound_from_q"], json!(3));
    assert!(v.get("comparison").is_none());

    let v = stdout_json(&fcrystal(&["bound", "--s", "3", "--r", "5", "--e", "1", "--compare"]));
    assert_eq!(v["theorem_b"], json!(3));
    assert_eq!(v["comparison"]["dieudonne_optimal"], json!(2));
    assert_eq!(v["comparison"]["forms_agree"], json!(true));
}

#[test]
fn frobnum_both_methods_agree() {
    let o = fcrystal(&["frobnum", "--gens", "3,5,7", "--method", "both"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["value"], json!(4));
    assert_eq!(v["agreement"], json!(true));

    let v = stdout_json(&fcrystal(&["frobnum", "--gens", "6,9,20", "--gaps"]));
    assert_eq!(v["value"], json!(43));
    assert_eq!(v["gaps"].as_array().unwrap().len(), 22);
}

#[test]
fn minimal_construct_matches_minimal_cycle() {
    let o = fcrystal(&["minimal", "construct", "--newton", "1/3:3"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o), json!({"cycles": [[0, 0, 1]]}));
    let v = stdout_json(&fcrystal(&["minimal", "construct", "--newton", "0:1,2/5:5,1:2"]));
    assert_eq!(v, json!({"cycles": [[0], [0, 0, 1, 0, 1], [1], [1]]}));
}

#[test]
fn crystal_round_trip_through_info() {
    let built = fcrystal(&["minimal", "construct", "--newton", "1/2:2,3/4:4"]);
    let crystal = String::from_utf8(built.stdout).unwrap();
    let o = fcrystal_stdin(&["crystal", "info", "-"], &crystal);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["crystal"], serde_json::from_str::<Value>(&crystal).unwrap());
    assert_eq!(v["minimal"], json!(true));
    assert_eq!(v["rank"], json!(6));
    assert_eq!(v["level_torsion"]["value"], v["level_torsion"]["by_blocks"]);

    let o = fcrystal_stdin(&["crystal", "info", "-"], r#"{"cycles": [[2, 0]]}"#);
    let v = stdout_json(&o);
    assert_eq!(v["minimal"], json!(false));
    assert_eq!(v["minimality_witness"]["epsilon"], json!(-1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["examples"][..],
        &["examples", "--tsv"],
        &["bound", "--s", "7", "--r", "5", "--e", "2", "--compare"],
        &["frobnum", "--crystal", "7,5,3", "--method", "both", "--gaps"],
    ] {
        assert_eq!(fcrystal(args).stdout, fcrystal(args).stdout, "{args:?}");
    }
    let a = fcrystal_stdin(&["lattice", "info", "-"], WORKED_LATTICE);
    let b = fcrystal_stdin(&["lattice", "info", "-"], WORKED_LATTICE);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lattice_commands_on_worked_instance() {
    let o = fcrystal_stdin(&["lattice", "q-min", "-"], WORKED_LATTICE);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert_eq!((v["m_alpha"].clone(), v["q"].clone(), v["q_bound"].clone()), (json!(2), json!(1), json!(1)));

    let v = stdout_json(&fcrystal_stdin(&["lattice", "info", "-"], WORKED_LATTICE));
    assert_eq!(v["hodge_slopes"], json!([0, 0, 2]));
    let pe = &v["p_exponents"];
    assert_eq!(pe["m_plus_over_m_minus"], pe["lattice_over_m_minus"]);
    assert_eq!(pe["m_plus_over_m_minus"], pe["m_plus_over_lattice"]);

    // the emitted basis re-parses to the same lattice report
    let doc = json!({"spec": v["spec"], "generators": v["basis"]}).to_string();
    let again = stdout_json(&fcrystal_stdin(&["lattice", "info", "-"], &doc));
    assert_eq!(again, v);
}

#[test]
fn examples_exit_status_follows_table() {
    let o = fcrystal(&["examples"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["all_pass"], json!(true));
    assert_eq!(v["hodge_slopes_0_1_3"]["computed"], json!(3));
    assert_eq!(v["hodge_slopes_0_1_3"]["fixture"], json!(4));
    let row = v["dieudonne"].as_array().unwrap().iter().find(|r| r["c"] == json!(2) && r["d"] == json!(3)).unwrap();
    assert_eq!((row["computed"].clone(), row["optimal"].clone(), row["equal"].clone()), (json!(3), json!(2), json!(false)));
    assert_eq!(row["fraction"], json!({"num": 1, "den": 5}));
    let five = v["rank_two"].as_array().unwrap().iter().find(|r| r["e"] == json!(5)).unwrap();
    assert_eq!(five["computed"], json!(5));

    let tsv = String::from_utf8(fcrystal(&["examples", "--tsv"]).stdout).unwrap();
    assert!(tsv.lines().skip(1).all(|l| l.ends_with("\tPASS")));
}

#[test]
fn error_exit_codes() {
    let o = fcrystal(&["bound", "--s", "2", "--r", "4", "--e", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["code"], json!("hypothesis-violation"));
    assert_eq!(v["context"]["module"], json!("bounds"));

    let o = fcrystal_stdin(&["crystal", "info", "-"], r#"{"cycles": [[1.5]]}"#);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["code"], json!("malformed-input"));

    let o = fcrystal(&["frobnum", "--gens", "4,6"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["code"], json!("invalid-generators"));

    assert_eq!(fcrystal(&["bound", "--s", "4", "--r", "3"]).status.code(), Some(2));
    assert_eq!(fcrystal(&["bound", "--s", "4", "--r", "3", "--e", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(fcrystal(&[]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("fcrystal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bound.json");
    let o = fcrystal(&["bound", "--s", "4", "--r", "3", "--e", "3", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["theorem_b"], json!(3));
    std::fs::remove_dir_all(dir).unwrap();
}
