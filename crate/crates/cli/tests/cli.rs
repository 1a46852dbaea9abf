use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn legsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legsat")).args(args).env_remove("LEGSAT_TIMEOUT").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = legsat(&all);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn trefoil_ruling_polynomial() {
    let o = legsat(&["ruling-poly", "--p", "1", "atlas:trefoil_rh"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "z + 2z^-1");
    assert_eq!(json(&["ruling-poly", "atlas:trefoil_rh"])["count"], 3);
}

#[test]
fn torus_knot_has_a_representation_with_identity_t() {
    let o = legsat(&["reps", "--dim", "2", "--t-class", "I", "atlas:torus_3_-4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dimension 2"));
    assert_eq!(json(&["reps", "--dim", "2", "--t-class", "I", "atlas:torus_3_-4"])["status"], "found");
    let none = json(&["reps", "--dim", "1", "atlas:torus_3_-4"]);
    assert_eq!(none["status"], "none");
}

#[test]
fn main_result_on_the_unknot() {
    let o = legsat(&["verify", "main-result", "--n", "2", "atlas:unknot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("main-result: PASS"));
}

#[test]
fn stabilized_knot_is_not_compatible() {
    let o = legsat(&["verify", "compatibility", "--pattern", "A(2)", "atlas:unknot_stab_pos"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let o = legsat(&["verify", "stab", "--pattern", "A(1,1)", "atlas:unknot_stab_pos"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn invariants_and_inputs() {
    assert_eq!(stdout(&legsat(&["tb", "atlas:trefoil_rh"])).trim(), "1");
    assert_eq!(stdout(&legsat(&["tb", "L1; R1"])).trim(), "-1");
    assert_eq!(json(&["rot", "atlas:unknot"])["r"], 0);

    let mut child = Command::new(env!("CARGO_BIN_EXE_legsat"))
        .args(["tb", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"L1; L3; X2; X2; X2; R1; R3\n").unwrap();
    assert_eq!(String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap().trim(), "1");
}

#[test]
fn satellite_json_round_trips() {
    let sat = json(&["satellite", "--pattern", "tw(2)", "atlas:trefoil_rh"]);
    let dir = std::env::temp_dir().join(format!("legsat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("sat.json");
    std::fs::write(&file, serde_json::to_string(&sat).unwrap()).unwrap();
    let from_json = stdout(&legsat(&["ruling-poly", file.to_str().unwrap()]));
    let text = stdout(&legsat(&["satellite", "--pattern", "tw(2)", "atlas:trefoil_rh"]));
    assert_eq!(from_json, stdout(&legsat(&["ruling-poly", text.trim()])));
    assert_eq!(from_json.trim(), "z^6 + 7z^4 + 15z^2 + 12 + 4z^-2");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn path_matrices() {
    assert_eq!(stdout(&legsat(&["path-matrix", "delta(2)"])).trim(), "[ p1   1 ]\n[  1   0 ]");
    let m = json(&["path-matrix", "--inverse", "A(2)"]);
    assert_eq!(m["matrix"][1][1], "p1");
}

#[test]
fn dga_and_augmentations() {
    let dga = stdout(&legsat(&["dga", "atlas:trefoil_rh"]));
    assert!(dga.contains("d a5 = "));
    assert_eq!(json(&["augs", "atlas:trefoil_rh"])["count"], 20);
    assert_eq!(json(&["augs", "--p", "0", "atlas:trefoil_rh"])["count"], 5);
}

#[test]
fn atlas_commands() {
    assert_eq!(stdout(&legsat(&["atlas", "list"])).lines().count(), 16);
    assert_eq!(json(&["atlas", "show", "figure_eight"])["tb"], -3);
    assert_eq!(legsat(&["atlas", "check"]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(legsat(&["--help"]).status.code(), Some(0));
    assert_eq!(legsat(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(legsat(&["reps", "--dim", "x", "atlas:unknot"]).status.code(), Some(64));
    assert_eq!(legsat(&["tb", "no/such/file"]).status.code(), Some(66));
    assert_eq!(legsat(&["tb", "atlas:nothing"]).status.code(), Some(66));
    assert_eq!(legsat(&["tb", "L1; X5; R1"]).status.code(), Some(65));
    assert_eq!(legsat(&["ruling-poly", "--p", "3", "atlas:unknot_stab_pos"]).status.code(), Some(65));
}
