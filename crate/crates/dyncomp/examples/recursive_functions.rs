//! The partial recursive calculus end to end: parse, evaluate, compile to
//! a register flowchart, lower to a single-tape machine, and compare all
//! three semantics.
//!
//! ```sh
//! cargo run --example recursive_functions
//! ```

use std::fs;
use std::path::Path;

use dyncomp::corpus;
use dyncomp::murec::{
    compile_to_flowchart, eval_u64, flowchart_dot, flowchart_to_tm, pair_decode, pair_encode_u64,
    parse_expr, render_expr, EvalOutcome, FlowchartOutcome, MachineOutcome,
};

fn show(outcome: &EvalOutcome) -> String {
    match outcome {
        EvalOutcome::Value(vs) => vs
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        EvalOutcome::Undefined => "undefined".into(),
        EvalOutcome::OutOfFuel => "out of fuel".into(),
    }
}

fn main() {
    let out_dir = Path::new("target/examples-out");
    fs::create_dir_all(out_dir).unwrap();

    // the concrete syntax round-trips
    let add = parse_expr("primrec(proj 1/1, comp(succ, proj 2/3))").unwrap();
    assert_eq!(add, corpus::murec_add());
    println!("add = {}", render_expr(&add));
    println!("add(2, 3) = {}", show(&eval_u64(&add, &[2, 3], 10_000).unwrap()));

    // minimization searches upward; fuel keeps empty searches finite
    let mu_id = corpus::murec_mu_identity();
    println!("mu_id(3) = {}", show(&eval_u64(&mu_id, &[3], 100_000).unwrap()));
    let nozero = corpus::murec_mu_nozero();
    println!("mu_nozero(7) = {}", show(&eval_u64(&nozero, &[7], 10_000).unwrap()));

    // prime-power tupling packs argument vectors into one natural
    let coded = pair_encode_u64(&[2, 1]);
    println!("pair(2, 1) = {coded}, decoded back to {:?}",
        pair_decode(&coded, 2).unwrap().iter().map(|v| v.to_string()).collect::<Vec<_>>());

    // flowcharts carry exactly one loop per recursion or minimization node
    println!("\nprogram          loops  blocks  regs");
    for (name, e) in corpus::murec_suite() {
        let fc = compile_to_flowchart(&e).unwrap();
        println!(
            "{name:16} {:5}  {:6}  {:4}",
            fc.loop_count(),
            fc.blocks.len(),
            fc.n_regs
        );
        assert_eq!(fc.loop_count(), e.loop_nodes());
    }
    let fc = compile_to_flowchart(&add).unwrap();
    fs::write(out_dir.join("add-flowchart.dot"), flowchart_dot(&fc)).unwrap();

    // the machine backend stores registers as unary fields on one tape
    let cm = flowchart_to_tm(&fc).unwrap();
    println!(
        "\nadd as a machine: {} states, {} input fields, output field {}",
        cm.machine.state_count(),
        cm.io.inputs,
        cm.io.output_field
    );
    for (a, b) in [(2u64, 3u64), (7, 7), (0, 9)] {
        let by_eval = eval_u64(&add, &[a, b], 100_000).unwrap();
        let by_chart = fc.run_u64(&[a, b], 100_000).unwrap();
        let by_machine = cm.run_args(&[a, b], 100_000).unwrap();
        println!(
            "add({a},{b}): interpreter {}, flowchart {:?}, machine {:?}",
            show(&by_eval),
            match by_chart {
                FlowchartOutcome::Value(vs) => vs[0].to_string(),
                FlowchartOutcome::OutOfFuel => "out of fuel".into(),
            },
            match by_machine {
                MachineOutcome::Value(v) => v.to_string(),
                MachineOutcome::OutOfFuel => "out of fuel".into(),
            }
        );
    }
}
