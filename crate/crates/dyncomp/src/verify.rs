//! Seeded verification suites. Every suite is deterministic for a fixed
//! seed: generators run on ChaCha8 streams, all iteration orders are fixed,
//! and reports render to stable bytes so two runs can be diffed.

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bordism::{build_graph, conjecture_report, thicken, NumeralCodec, ThickenOptions};
use crate::cantor::{gshift_to_blockmap, kappa, BlockMap};
use crate::corpus;
use crate::gshift::{encode_config, BiWord, Encoding, GeneralizedShift};
use crate::murec::{compile_to_flowchart, eval_u64, flowchart_to_tm, EvalOutcome, MachineOutcome};
use crate::tm::{Configuration, MachineSpec, Shift, StepResult, SymId, Tape, TuringMachine};

/// Outcome of one suite: log lines plus the failures that make it red.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            lines: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn fail(&mut self, s: impl Into<String>) {
        self.failures.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!("suite {}\n", self.name);
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        for f in &self.failures {
            out.push_str("  FAIL ");
            out.push_str(f);
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {}\n",
            self.name,
            if self.passed() { "pass" } else { "FAIL" }
        ));
        out
    }
}

/// Random machine with at most `max_states` states (one of them halting)
/// over a binary alphabet.
pub fn random_machine(rng: &mut ChaCha8Rng, max_states: usize, alphabet_len: usize) -> TuringMachine {
    let working = rng.gen_range(1..max_states);
    let mut states: Vec<String> = (0..working).map(|i| format!("q{i}")).collect();
    states.push("qh".into());
    let alphabet: Vec<String> = (0..alphabet_len)
        .map(|i| if i == 0 { "_".to_string() } else { format!("s{i}") })
        .collect();
    let mut transitions = Vec::new();
    for q in 0..working {
        for a in 0..alphabet_len {
            let next = rng.gen_range(0..states.len());
            let write = rng.gen_range(0..alphabet_len);
            let shift = if rng.gen_bool(0.5) { Shift::Left } else { Shift::Right };
            transitions.push((
                states[q].clone(),
                alphabet[a].clone(),
                states[next].clone(),
                alphabet[write].clone(),
                shift,
            ));
        }
    }
    TuringMachine::build(MachineSpec {
        states,
        initial: "q0".into(),
        halting: vec!["qh".into()],
        alphabet,
        blank: "_".into(),
        transitions,
    })
    .expect("random spec is structurally valid")
}

/// Rejection-sample a reversible machine.
pub fn random_reversible_machine(rng: &mut ChaCha8Rng, max_states: usize) -> TuringMachine {
    for _ in 0..100_000 {
        let m = random_machine(rng, max_states, 2);
        if m.is_reversible() {
            return m;
        }
    }
    panic!("reversible machines are dense enough for rejection sampling");
}

/// Random configuration: any state, tape cells drawn on a window around
/// the head.
pub fn random_configuration(rng: &mut ChaCha8Rng, m: &TuringMachine) -> Configuration {
    let state = crate::tm::StateId(rng.gen_range(0..m.state_count()));
    let left_len = rng.gen_range(0..5);
    let right_len = rng.gen_range(0..5);
    let mut left = Vec::with_capacity(left_len);
    for _ in 0..left_len {
        left.push(SymId(rng.gen_range(0..m.alphabet_len())));
    }
    let mut right = Vec::with_capacity(right_len);
    for _ in 0..right_len {
        right.push(SymId(rng.gen_range(0..m.alphabet_len())));
    }
    Configuration {
        state,
        tape: Tape::from_window(m.blank(), &left, &right),
    }
}

pub fn random_biword(rng: &mut ChaCha8Rng, span: i64) -> BiWord {
    let mut w = BiWord::zero();
    for i in -span..=span {
        if rng.gen_bool(0.5) {
            w.set(i, true);
        }
    }
    w
}

/// Exact conjugacy of the step map and its compiled shift: encode, iterate
/// both sides, compare words.
pub fn conjugacy_machine_shift(seed: u64, machines: usize, configs: usize, steps: usize) -> SuiteReport {
    let mut report = SuiteReport::new("conjugacy-tm-gshift");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    report.line(format!(
        "{machines} machines x {configs} configurations x {steps} steps, seed {seed}"
    ));
    let mut checked = 0u64;
    for mi in 0..machines {
        let m = random_machine(&mut rng, 4, 2);
        let enc = Encoding::canonical(&m);
        let shift = match GeneralizedShift::compile_tm(&m, &enc) {
            Ok(s) => s,
            Err(e) => {
                report.fail(format!("machine {mi}: compile failed: {e}"));
                continue;
            }
        };
        for ci in 0..configs {
            let mut config = random_configuration(&mut rng, &m);
            let mut word = encode_config(&m, &enc, &config);
            for k in 0..steps {
                word = shift.apply(&word);
                match m.step(&config).expect("generated configs are valid") {
                    StepResult::Next(next) => config = next,
                    StepResult::Halted => {}
                }
                checked += 1;
                if word != encode_config(&m, &enc, &config) {
                    report.fail(format!(
                        "machine {mi} config {ci} step {}: encoded orbit diverged from shift orbit",
                        k + 1
                    ));
                    break;
                }
            }
        }
    }
    report.line(format!("{checked} conjugacy points checked exactly"));
    report
}

fn corpus_blockmaps() -> Vec<(String, GeneralizedShift, BlockMap)> {
    let mut out = Vec::new();
    for (name, s) in corpus::bijective_shifts() {
        let f = gshift_to_blockmap(&s).expect("corpus shifts are bijective");
        out.push((name.to_string(), s, f));
    }
    let m = corpus::succ1();
    let s = GeneralizedShift::compile_tm(&m, &Encoding::canonical(&m)).expect("succ compiles");
    let f = gshift_to_blockmap(&s).expect("succ's shift passes the cylinder check");
    out.push(("compiled-succ".to_string(), s, f));
    out
}

/// Exact conjugacy of each corpus shift with its block map through the
/// Cantor embedding.
pub fn conjugacy_shift_blockmap(seed: u64, words: usize) -> SuiteReport {
    let mut report = SuiteReport::new("conjugacy-gshift-blockmap");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = corpus_blockmaps();
    report.line(format!("{} shifts x {words} random words, seed {seed}", maps.len()));
    for (name, s, f) in maps {
        let mut bad = 0usize;
        for _ in 0..words {
            let t = random_biword(&mut rng, 6);
            let lhs = kappa(&s.apply(&t));
            let rhs = match f.apply(&kappa(&t)) {
                Ok(p) => p,
                Err(e) => {
                    report.fail(format!("{name}: block map rejected an embedded word: {e}"));
                    bad += 1;
                    continue;
                }
            };
            if lhs != rhs {
                bad += 1;
            }
        }
        if bad == 0 {
            report.line(format!("{name}: {words} words, exact agreement"));
        } else {
            report.fail(format!("{name}: {bad} of {words} words disagreed"));
        }
    }
    report
}

/// Volume preservation of every generated block map: unit scale product per
/// piece and equal source/target totals, as exact rationals.
pub fn volume(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("volume");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps = corpus_blockmaps()
        .into_iter()
        .map(|(n, _, f)| (n, f))
        .collect::<Vec<_>>();
    for i in 0..5 {
        let m = random_reversible_machine(&mut rng, 4);
        let s = GeneralizedShift::compile_tm(&m, &Encoding::canonical(&m))
            .expect("reversible machines compile");
        match gshift_to_blockmap(&s) {
            Ok(f) => maps.push((format!("compiled-random-{i}"), f)),
            Err(e) => report.fail(format!("compiled-random-{i}: {e}")),
        }
    }
    for (name, f) in &maps {
        let v = f.check_volume();
        if v.ok() {
            report.line(format!(
                "{name}: {} pieces, every scale product 1, source total {} = target total {}",
                v.pieces, v.total_source_area, v.total_target_area
            ));
        } else {
            for violation in &v.violations {
                report.fail(format!("{name}: {violation}"));
            }
            if v.total_source_area != v.total_target_area {
                report.fail(format!(
                    "{name}: source total {} vs target total {}",
                    v.total_source_area, v.total_target_area
                ));
            }
        }
    }
    report
}

/// Volume check of one externally supplied block map.
pub fn volume_of(f: &BlockMap, label: &str) -> SuiteReport {
    let mut report = SuiteReport::new("volume");
    let v = f.check_volume();
    if v.ok() {
        report.line(format!(
            "{label}: {} pieces, every scale product 1, totals equal",
            v.pieces
        ));
    } else {
        for violation in &v.violations {
            report.fail(format!("{label}: {violation}"));
        }
        if v.total_source_area != v.total_target_area {
            report.fail(format!(
                "{label}: source total {} vs target total {}",
                v.total_source_area, v.total_target_area
            ));
        }
    }
    report
}

/// Cycle rank by the component formula against the spanning-forest count,
/// plus the loop budget table of the compiled calculus corpus.
pub fn betti(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("betti");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0usize;
    for i in 0..50 {
        let states = rng.gen_range(2..7);
        let symbols = rng.gen_range(2..5);
        let m = random_machine(&mut rng, states.max(2), symbols);
        let g = build_graph(&m);
        let formula = g.betti1();
        let forest = g.cycle_space_dim_by_forest();
        if formula == forest {
            agree += 1;
        } else {
            report.fail(format!(
                "graph {i}: formula {formula} vs spanning forest {forest} (V={}, E={}, C={})",
                g.vertex_count(),
                g.edge_count(),
                g.components()
            ));
        }
    }
    report.line(format!("{agree}/50 random graphs: cycle rank equals forest count"));

    for (name, e) in corpus::murec_suite() {
        let fc = compile_to_flowchart(&e).expect("corpus programs compile");
        let loops = fc.loop_count();
        let cm = flowchart_to_tm(&fc).expect("corpus programs lower to machines");
        let b1 = build_graph(&cm.machine).betti1();
        report.line(format!(
            "compiled {name}: machine graph b1 = {b1}, flowchart loops = {loops}"
        ));
    }

    // hand-built machines where the direct translation applies: one scan
    // loop in the chart, one cycle in the graph
    for (name, m, hand_loops) in [
        ("succ1", corpus::succ1(), 1usize),
        ("add", corpus::add_machine(), 1usize),
    ] {
        let b1 = build_graph(&m).betti1();
        report.line(format!("hand-built {name}: b1 = {b1}, chart loops = {hand_loops}"));
        if b1 > hand_loops {
            report.fail(format!(
                "hand-built {name}: b1 {b1} exceeds its chart loop count {hand_loops}"
            ));
        }
    }
    report
}

/// Compiled machines against the interpreter on the input grid, with the
/// no-zero minimization exhausting fuel on both sides.
pub fn oracle_murec(fuel: u64) -> SuiteReport {
    let mut report = SuiteReport::new("oracle-murec");
    for (name, e) in corpus::murec_suite() {
        let fc = compile_to_flowchart(&e).expect("corpus programs compile");
        let cm = flowchart_to_tm(&fc).expect("corpus programs lower to machines");
        let arity = e.signature().expect("corpus programs are well formed").arity;
        let grid: Vec<Vec<u64>> = match arity {
            1 => (0..=10).map(|x| vec![x]).collect(),
            2 => (0..=10)
                .flat_map(|a| (0..=10).map(move |b| vec![a, b]))
                .collect(),
            _ => unreachable!("corpus arities"),
        };
        let total = grid.len();
        let mut halted = 0usize;
        let mut agreed = 0usize;
        for args in &grid {
            let by_eval = eval_u64(&e, args, fuel).expect("arity checked");
            let by_machine = cm.run_args(args, fuel).expect("arity checked");
            match (by_eval, by_machine) {
                (EvalOutcome::Value(vs), MachineOutcome::Value(v)) => {
                    halted += 1;
                    let expect = vs[0].to_u64_digits();
                    let expect = if expect.is_empty() { 0 } else { expect[0] };
                    if expect == v {
                        agreed += 1;
                    } else {
                        report.fail(format!("{name}{args:?}: interpreter {expect} vs machine {v}"));
                    }
                }
                (EvalOutcome::Value(_), MachineOutcome::OutOfFuel) => {
                    // agreement is required only where both halt in budget
                }
                (EvalOutcome::OutOfFuel, MachineOutcome::OutOfFuel) => {}
                (a, b) => {
                    report.fail(format!("{name}{args:?}: interpreter {a:?} vs machine {b:?}"));
                }
            }
        }
        report.line(format!(
            "{name}: {agreed} agreements on {halted}/{total} grid points halting within fuel {fuel}"
        ));
        if (name == "succ" || name == "add") && halted != total {
            report.fail(format!("{name}: expected the whole grid to halt within fuel"));
        }
    }

    let nozero = corpus::murec_mu_nozero();
    let fc = compile_to_flowchart(&nozero).expect("no-zero program compiles");
    let cm = flowchart_to_tm(&fc).expect("no-zero program lowers");
    for x in [0u64, 7] {
        let by_eval = eval_u64(&nozero, &[x], fuel).expect("arity checked");
        let by_machine = cm.run_args(&[x], fuel).expect("arity checked");
        match (by_eval, by_machine) {
            (EvalOutcome::OutOfFuel, MachineOutcome::OutOfFuel) => {
                report.line(format!("mu-nozero({x}): out of fuel on both sides"));
            }
            (a, b) => report.fail(format!("mu-nozero({x}): interpreter {a:?} vs machine {b:?}")),
        }
    }
    report
}

/// Unit-tube length equals the machine's step count; rescaling the metric
/// rescales the length linearly.
pub fn lenc(fuel: u64) -> SuiteReport {
    let mut report = SuiteReport::new("lenc");
    let m = corpus::succ1();
    let sk = thicken(&m, ThickenOptions::reversible(NumeralCodec::Unary)).expect("succ thickens");
    let three = BigRational::from_integer(3.into());
    let scaled = sk.rescale_metric(&three).expect("positive factor");
    let mut exact = 0usize;
    for n in 1..=100u64 {
        let trace = sk.reach(&[n], fuel).expect("unary inputs encode");
        let tape = corpus::unary_tape(&m, n);
        let run = m.run(m.start(tape), fuel).expect("valid tape");
        let steps = run.halted_steps().expect("succ halts");
        let expected = BigRational::from_integer(steps.into());
        let ok_unit = trace.length.finite() == Some(&expected) && steps == n + 1;
        let scaled_trace = scaled.reach(&[n], fuel).expect("unary inputs encode");
        let ok_scaled = scaled_trace.length.finite() == Some(&(&expected * &three));
        if ok_unit && ok_scaled {
            exact += 1;
        } else {
            report.fail(format!(
                "succ1 n={n}: length {} vs steps {steps} (scaled {})",
                trace.length, scaled_trace.length
            ));
        }
    }
    report.line(format!(
        "succ1: length = steps = n+1 for {exact}/100 inputs; metric x3 scales lengths x3"
    ));

    let add = corpus::add_machine();
    let sk_add =
        thicken(&add, ThickenOptions::reversible(NumeralCodec::UnaryPair)).expect("add thickens");
    let inputs: Vec<Vec<u64>> = (1..=50).map(|n| vec![n, n]).collect();
    let rows = conjecture_report(&sk_add, &inputs, fuel).expect("pairs encode");
    let unit = rows.iter().filter(|r| r.ratio == Some(BigRational::one())).count();
    report.line(format!("add: {unit}/{} unit length-to-step ratios", rows.len()));
    if unit != rows.len() {
        report.fail("add: some ratios differ from 1 under unit tubes".to_string());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_deterministic_for_a_seed() {
        let a = conjugacy_machine_shift(7, 3, 5, 10).render();
        let b = conjugacy_machine_shift(7, 3, 5, 10).render();
        assert_eq!(a, b);
        let a = betti(11).render();
        let b = betti(11).render();
        assert_eq!(a, b);
    }

    #[test]
    fn small_conjugacy_suite_passes() {
        let report = conjugacy_machine_shift(42, 5, 10, 20);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn blockmap_conjugacy_suite_passes() {
        let report = conjugacy_shift_blockmap(42, 50);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn volume_suite_passes() {
        let report = volume(42);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn betti_suite_passes() {
        let report = betti(42);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn compiled_reversible_machines_have_bijective_shifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let m = random_reversible_machine(&mut rng, 4);
            let s = GeneralizedShift::compile_tm(&m, &Encoding::canonical(&m)).unwrap();
            assert!(s.is_bijective());
        }
    }

    #[test]
    fn reversible_machines_step_injectively_on_bounded_windows() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let m = random_machine(&mut rng, 3, 2);
            if !m.is_reversible() {
                continue;
            }
            let mut images: Vec<(Configuration, Configuration)> = Vec::new();
            for state in m.states().filter(|&q| !m.is_halting(q)) {
                for bits in 0..(1u32 << 6) {
                    let cells: Vec<SymId> =
                        (0..6).map(|i| SymId(((bits >> i) & 1) as usize)).collect();
                    let tape = Tape::from_window(m.blank(), &cells[..3], &cells[3..]);
                    let c = Configuration { state, tape };
                    if let StepResult::Next(img) = m.step(&c).unwrap() {
                        if let Some((prev, _)) = images.iter().find(|(_, i)| *i == img) {
                            assert_eq!(
                                prev, &c,
                                "reversible machine produced two preimages of one configuration"
                            );
                        }
                        images.push((c, img));
                    }
                }
            }
        }
    }
}
