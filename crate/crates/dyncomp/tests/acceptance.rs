//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//! Tolerances and budgets are pinned here, not configurable.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;

use dyncomp::bordism::{thicken, NumeralCodec, ReachOutcome, ThickenOptions};
use dyncomp::corpus;
use dyncomp::hamdemo::{rotation_order_ratio, verify_universality, PolyVectorField};
use dyncomp::tm::RunOutcome;
use dyncomp::verify;

const SEED: u64 = 7;
const FUEL: u64 = 100_000;

fn conclude(name: &str, passed: bool, detail: &str) {
    println!("[{}] {name}: {detail}", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "{name}: {detail}");
}

#[test]
fn acceptance_1_machine_shift_conjugacy() {
    let start = Instant::now();
    let report = verify::conjugacy_machine_shift(SEED, 20, 100, 50);
    let elapsed = start.elapsed();
    let ok = report.passed() && elapsed.as_secs_f64() < 30.0;
    conclude(
        "criterion 1 (machine/shift conjugacy)",
        ok,
        &format!(
            "20 machines x 100 configurations x 50 steps exact, {:.2?} (budget 30s)\n{}",
            elapsed,
            report.render()
        ),
    );
}

#[test]
fn acceptance_2_shift_blockmap_conjugacy() {
    let start = Instant::now();
    let report = verify::conjugacy_shift_blockmap(SEED, 1000);
    let elapsed = start.elapsed();
    let ok = report.passed() && elapsed.as_secs_f64() < 10.0;
    conclude(
        "criterion 2 (shift/block-map conjugacy)",
        ok,
        &format!(
            "1000 words per corpus shift exact, {:.2?} (budget 10s)\n{}",
            elapsed,
            report.render()
        ),
    );
}

#[test]
fn acceptance_3_volume_preservation() {
    let report = verify::volume(SEED);
    conclude(
        "criterion 3 (volume preservation)",
        report.passed(),
        &format!(
            "unit scale products and equal area totals, exact rationals\n{}",
            report.render()
        ),
    );
}

#[test]
fn acceptance_4_reaching_function_semantics() {
    let mut failures = Vec::new();
    let mut cases = 0usize;

    let cases_for = |machine: &dyncomp::tm::TuringMachine,
                     codec: NumeralCodec,
                     inputs: Vec<Vec<u64>>,
                     allow_irreversible: bool,
                     failures: &mut Vec<String>,
                     cases: &mut usize| {
        let opts = ThickenOptions {
            allow_irreversible,
            tube_length: BigRational::one(),
            codec,
        };
        let sk = thicken(machine, opts).expect("corpus machines thicken");
        for args in inputs {
            *cases += 1;
            let trace = sk.reach(&args, FUEL).expect("inputs encode");
            let tape = codec.encode_tape(machine, &args).expect("inputs encode");
            match machine.run(machine.start(tape), FUEL).expect("valid tape") {
                RunOutcome::Halted { config, steps } => {
                    let expect = codec
                        .decode_tape(machine, &config.tape)
                        .expect("unary outputs decode");
                    if trace.outcome != ReachOutcome::Reached(expect) {
                        failures.push(format!(
                            "{args:?}: reach {:?} vs machine output {expect}",
                            trace.outcome
                        ));
                    }
                    if trace.steps != steps {
                        failures.push(format!(
                            "{args:?}: reach steps {} vs machine steps {steps}",
                            trace.steps
                        ));
                    }
                }
                RunOutcome::OutOfFuel { .. } => {
                    failures.push(format!("{args:?}: machine ran out of fuel"));
                }
            }
        }
    };

    let succ_inputs: Vec<Vec<u64>> = (0..=20).map(|n| vec![n]).collect();
    cases_for(
        &corpus::succ1(),
        NumeralCodec::Unary,
        succ_inputs,
        false,
        &mut failures,
        &mut cases,
    );
    let pair_inputs: Vec<Vec<u64>> = (0..=10)
        .flat_map(|a| (0..=10).map(move |b| vec![a, b]))
        .collect();
    cases_for(
        &corpus::add_machine(),
        NumeralCodec::UnaryPair,
        pair_inputs.clone(),
        false,
        &mut failures,
        &mut cases,
    );
    cases_for(
        &corpus::mul_machine(),
        NumeralCodec::UnaryPair,
        pair_inputs,
        true,
        &mut failures,
        &mut cases,
    );

    conclude(
        "criterion 4 (reaching function semantics)",
        failures.is_empty(),
        &format!(
            "{cases} inputs across succ1/add/mul, outputs and step counts equal tm.run; failures: {failures:?}"
        ),
    );
}

#[test]
fn acceptance_5_betti_topc_witness() {
    let report = verify::betti(SEED);
    conclude(
        "criterion 5 (cycle rank / loop budget)",
        report.passed(),
        &format!(
            "50 random graphs dual-route, compiled pairs emitted, hand-built bounds hold\n{}",
            report.render()
        ),
    );
}

#[test]
fn acceptance_6_length_complexity() {
    let report = verify::lenc(FUEL);
    let sk = thicken(
        &corpus::succ1(),
        ThickenOptions {
            allow_irreversible: false,
            tube_length: BigRational::one(),
            codec: NumeralCodec::Unary,
        },
    )
    .expect("succ thickens");
    let spot = sk.reach(&[2], FUEL).expect("encodes");
    let spot_ok = spot.length.finite() == Some(&BigRational::from_integer(3.into()));
    conclude(
        "criterion 6 (length complexity)",
        report.passed() && spot_ok,
        &format!(
            "unit tubes give length = steps (length(2) = 3), metric x3 scales x3\n{}",
            report.render()
        ),
    );
}

#[test]
fn acceptance_7_interpreter_machine_agreement() {
    let report = verify::oracle_murec(FUEL);
    conclude(
        "criterion 7 (calculus/machine agreement)",
        report.passed(),
        &format!(
            "compiled programs agree with the interpreter wherever both halt in fuel {FUEL}\n{}",
            report.render()
        ),
    );
}

#[test]
fn acceptance_8_cotangent_lift() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, field, q0) in [
        ("rotation", PolyVectorField::rotation(), [1.0, 0.0]),
        ("cubic", PolyVectorField::cubic_oscillator(), [0.5, 0.0]),
    ] {
        let report = verify_universality(&field, &q0, 1.0, 1e-3).expect("fields integrate");
        if report.max_p_norm > 1e-6 {
            failures.push(format!("{name}: max |p| = {:e}", report.max_p_norm));
        }
        if report.max_q_drift > 1e-5 {
            failures.push(format!("{name}: max |q - q_ref| = {:e}", report.max_q_drift));
        }
    }
    // fourth-order band, measured against the exact rotation flow at a step
    // where truncation dominates rounding
    let ratio = rotation_order_ratio(0.05);
    if !(12.0..=20.0).contains(&ratio) {
        failures.push(format!("order ratio {ratio}"));
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 5.0 {
        failures.push(format!("elapsed {elapsed:.2?}"));
    }
    conclude(
        "criterion 8 (cotangent lift)",
        failures.is_empty(),
        &format!(
            "|p| <= 1e-6, |q - q_ref| <= 1e-5 at h = 1e-3; halving ratio {ratio:.2} in [12, 20]; {elapsed:.2?} (budget 5s); failures: {failures:?}"
        ),
    );
}

#[test]
fn acceptance_9_deterministic_reports() {
    let mut failures = Vec::new();
    type SuiteRun = Box<dyn Fn() -> String>;
    let runs: Vec<(&str, SuiteRun)> = vec![
        ("conjugacy-tm-gshift", Box::new(|| verify::conjugacy_machine_shift(SEED, 20, 100, 50).render())),
        ("conjugacy-gshift-blockmap", Box::new(|| verify::conjugacy_shift_blockmap(SEED, 1000).render())),
        ("volume", Box::new(|| verify::volume(SEED).render())),
        ("betti", Box::new(|| verify::betti(SEED).render())),
        ("oracle-murec", Box::new(|| verify::oracle_murec(FUEL).render())),
        ("lenc", Box::new(|| verify::lenc(FUEL).render())),
    ];
    for (name, run) in &runs {
        let a = run();
        let b = run();
        if a != b {
            failures.push(name.to_string());
        }
    }
    conclude(
        "criterion 9 (deterministic reports)",
        failures.is_empty(),
        &format!(
            "all six suites byte-identical across two runs at seed {SEED}; failures: {failures:?}"
        ),
    );
}
