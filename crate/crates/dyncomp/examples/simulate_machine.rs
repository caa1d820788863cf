//! Build machines, run them with a step budget, and check reversibility.
//!
//! ```sh
//! cargo run --example simulate_machine
//! ```

use dyncomp::corpus;
use dyncomp::tm::{RunOutcome, StepResult};

fn main() {
    let m = corpus::succ1();
    println!("machine:\n{}", dyncomp::tm::render_machine(&m, None));

    // single steps: the head reads index 0, writes, then the tape relabels
    let one = m.symbol_named("1").unwrap();
    let mut config = m.start(m.tape_from(&[one, one]));
    println!("start tape {}", config.tape.render(&m));
    while let StepResult::Next(next) = m.step(&config).unwrap() {
        config = next;
        println!(
            "  {} {}",
            m.state_name(config.state),
            config.tape.render(&m)
        );
    }

    // whole runs with an exact step count
    for n in [0u64, 1, 2, 7] {
        let start = m.start(corpus::unary_tape(&m, n));
        match m.run(start, 1000).unwrap() {
            RunOutcome::Halted { config, steps } => println!(
                "succ({n}) halts after {steps} steps with {} ones",
                corpus::unary_value(&m, &config.tape)
            ),
            RunOutcome::OutOfFuel { .. } => unreachable!("succ halts"),
        }
    }

    // fuel keeps diverging machines honest
    let d = corpus::diverger();
    match d.run(d.start(d.blank_tape()), 50).unwrap() {
        RunOutcome::OutOfFuel { .. } => println!("diverger: out of fuel after 50 steps"),
        RunOutcome::Halted { .. } => unreachable!(),
    }

    // reversibility with certificates
    for (name, machine) in [
        ("succ1", corpus::succ1()),
        ("add", corpus::add_machine()),
        ("mul", corpus::mul_machine()),
    ] {
        match machine.check_reversible() {
            Ok(()) => println!("{name}: reversible"),
            Err(w) => println!("{name}: not reversible, {}", w.describe(&machine)),
        }
    }
}
