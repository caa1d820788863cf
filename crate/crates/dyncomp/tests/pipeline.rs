//! End-to-end runs of the binary: pipeline edges, exit codes, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_dyncomp")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dyncomp-it-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("DYNCOMP_FUEL")
        .env_remove("DYNCOMP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const SUCC_TM: &str = "\
states: q0 qh
initial: q0
halting: qh
alphabet: _ 1
blank: _
q0 1 -> q0 1 R
q0 _ -> qh 1 R
";

const DIVERGE_TM: &str = "\
states: q0 qh
initial: q0
halting: qh
alphabet: _ 1
blank: _
q0 _ -> q0 _ R
q0 1 -> q0 1 R
";

#[test]
fn bordism_run_reports_output_steps_length() {
    let dir = scratch("bordism");
    std::fs::write(dir.join("succ.tm"), SUCC_TM).unwrap();
    let out = run_in(&dir, &["run", "--model", "bordism", "succ.tm", "--input", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("reached 3; steps 3; length 3"));
    assert!(dir.join("succ.trace.csv").exists());
}

#[test]
fn tm_run_honors_fuel() {
    let dir = scratch("fuel");
    std::fs::write(dir.join("diverge.tm"), DIVERGE_TM).unwrap();
    let out = run_in(
        &dir,
        &["run", "--model", "tm", "diverge.tm", "--input", "0", "--fuel", "50"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("out of fuel (50)"));
}

#[test]
fn murec_eval_through_the_binary() {
    let dir = scratch("murec");
    std::fs::write(dir.join("add.mrec"), "primrec(proj 1/1, comp(succ, proj 2/3))").unwrap();
    let out = run_in(&dir, &["run", "--model", "murec", "add.mrec", "--args", "2,3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5\n");
}

#[test]
fn compile_pipeline_and_unsupported_edge() {
    let dir = scratch("compile");
    std::fs::write(dir.join("succ.tm"), SUCC_TM).unwrap();
    let out = run_in(&dir, &["compile", "--from", "tm", "--to", "gshift", "succ.tm"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(dir.join("succ.gs").exists());
    let out = run_in(&dir, &["compile", "--from", "gshift", "--to", "blockmap", "succ.gs"]);
    assert!(out.status.success());
    assert!(dir.join("succ.bm").exists());

    let out = run_in(&dir, &["compile", "--from", "blockmap", "--to", "tm", "succ.bm"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run_in(&dir, &["compile", "--from", "tm", "--to", "gshift", "missing.tm"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let dir = scratch("verify");
    let out1 = run_in(&dir, &["verify", "betti", "--seed", "7"]);
    assert!(out1.status.success());
    let out2 = run_in(&dir, &["verify", "betti", "--seed", "7"]);
    assert_eq!(stdout(&out1), stdout(&out2), "same seed, same bytes");

    std::fs::write(
        dir.join("bad.bm"),
        "source(00;) -> target(0;) scale(3^1, 3^0)\n",
    )
    .unwrap();
    let out = run_in(&dir, &["verify", "volume", "--file", "bad.bm"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("scale product"));

    let out = run_in(&dir, &["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn emitters_write_deterministic_artifacts() {
    let dir = scratch("emit");
    std::fs::write(dir.join("succ.tm"), SUCC_TM).unwrap();
    let out = run_in(&dir, &["emit", "graph-dot", "succ.tm"]);
    assert!(out.status.success());
    let dot1 = std::fs::read_to_string(dir.join("succ.dot")).unwrap();
    assert!(dot1.contains("\"q0\" -> \"q0\""));
    let _ = run_in(&dir, &["emit", "graph-dot", "succ.tm"]);
    let dot2 = std::fs::read_to_string(dir.join("succ.dot")).unwrap();
    assert_eq!(dot1, dot2);

    let out = run_in(&dir, &["compile", "--from", "tm", "--to", "gshift", "succ.tm"]);
    assert!(out.status.success());
    let out = run_in(&dir, &["emit", "blocks-svg", "succ.gs"]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(dir.join("succ.svg"))
        .unwrap()
        .starts_with("<svg"));

    let out = run_in(&dir, &["emit", "conjecture-csv", "succ.tm", "--range", "10"]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("succ.conjecture.csv")).unwrap();
    assert!(csv.starts_with("input,length,machine_steps,ratio\n"));
    assert_eq!(csv.lines().count(), 11);

    let out = run_in(&dir, &["emit", "trace-csv", "succ.tm", "--range", "3"]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("succ.trace.csv")).unwrap();
    assert!(csv.contains("2,reached:3,3,3"));

    let out = run_in(&dir, &["emit", "no-such-kind", "succ.tm"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hamdemo_prints_drifts() {
    let dir = scratch("ham");
    let out = run_in(&dir, &["hamdemo", "--field", "cubic", "--q0", "0.5,0.0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("max |p| along the lifted run"));
    assert!(dir.join("hamdemo-cubic.csv").exists());
}

#[test]
fn json_machine_round_trip_through_files() {
    let dir = scratch("json");
    std::fs::write(dir.join("succ.mrec"), "succ").unwrap();
    let out = run_in(
        &dir,
        &["compile", "--from", "murec", "--to", "tm", "succ.mrec", "--json"],
    );
    assert!(out.status.success());
    let json_path = dir.join("succ.tm.json");
    assert!(json_path.exists());
    let out = run_in(
        &dir,
        &["run", "--model", "tm", "succ.tm.json", "--args", "4"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("Value(5)"));
}
