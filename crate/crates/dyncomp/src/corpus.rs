//! Hand-built reference machines, shifts and recursive programs used by the
//! verification suites, the examples and the tests.

use crate::gshift::GeneralizedShift;
use crate::murec::MuRecExpr;
use crate::tm::{MachineSpec, Shift, SymId, Tape, TuringMachine};

fn machine(spec: MachineSpec) -> TuringMachine {
    TuringMachine::build(spec).expect("corpus machine is well formed")
}

fn t(q: &str, a: &str, q2: &str, a2: &str, s: Shift) -> (String, String, String, String, Shift) {
    (q.into(), a.into(), q2.into(), a2.into(), s)
}

/// Unary successor: scan the block of ones rightward, append a one at the
/// first blank, halt. Takes `n` ones to `n + 1` ones in `n + 1` steps.
pub fn succ1() -> TuringMachine {
    machine(MachineSpec {
        states: vec!["q0".into(), "qh".into()],
        initial: "q0".into(),
        halting: vec!["qh".into()],
        alphabet: vec!["_".into(), "1".into()],
        blank: "_".into(),
        transitions: vec![
            t("q0", "1", "q0", "1", Shift::Right),
            t("q0", "_", "qh", "1", Shift::Right),
        ],
    })
}

/// Unary addition of a pair laid out as `1^a _ 1^b`: erase the first one,
/// scan to the separator, bridge it with a one. One working loop, so the
/// machine graph has a single independent cycle.
pub fn add_machine() -> TuringMachine {
    machine(MachineSpec {
        states: vec!["q0".into(), "q1".into(), "qh".into(), "qe".into()],
        initial: "q0".into(),
        halting: vec!["qh".into(), "qe".into()],
        alphabet: vec!["_".into(), "1".into()],
        blank: "_".into(),
        transitions: vec![
            t("q0", "1", "q1", "_", Shift::Right), // consume one from the first block
            t("q0", "_", "qe", "_", Shift::Right), // empty first block: the rest is the sum
            t("q1", "1", "q1", "1", Shift::Right), // scan the remainder of the first block
            t("q1", "_", "qh", "1", Shift::Right), // bridge the separator
        ],
    })
}

/// Unary multiplication of `1^a _ 1^b`: for every one in the first block,
/// copy the second block to an output region to the right, then erase the
/// working blocks. Marks consumed ones with `X` and in-flight ones with `Y`.
pub fn mul_machine() -> TuringMachine {
    let mut transitions = vec![
        // p0: pick the first unconsumed one of the a-block (round entry)
        t("p0", "1", "p1", "X", Shift::Right),
        t("p0", "_", "c1", "_", Shift::Right), // a = 0: erase the b-block and stop
        t("p0", "X", "p0", "X", Shift::Right),
        // p1: cross the rest of the a-block to the separator
        t("p1", "1", "p1", "1", Shift::Right),
        t("p1", "_", "p2", "_", Shift::Right),
        // p2: first cell of the b-block
        t("p2", "1", "p3", "Y", Shift::Right), // mark one b-digit
        t("p2", "_", "sb", "_", Shift::Left),  // b = 0: nothing to copy this round
        // p3: cross the rest of the b-block, then the separator, into output
        t("p3", "1", "p3", "1", Shift::Right),
        t("p3", "_", "p4", "_", Shift::Right),
        // p4: walk to the end of the output block and append a one
        t("p4", "1", "p4", "1", Shift::Right),
        t("p4", "_", "r1", "1", Shift::Left),
        // r1: walk back left through the output block
        t("r1", "1", "r1", "1", Shift::Left),
        t("r1", "_", "r2", "_", Shift::Left),
        // r2: at the right end of the b-block, find the marked prefix
        t("r2", "1", "r2", "1", Shift::Left),
        t("r2", "Y", "m1", "Y", Shift::Right),
        // m1: cell right of the rightmost Y: next b-digit or the separator
        t("m1", "1", "p3", "Y", Shift::Right),
        t("m1", "_", "u2", "_", Shift::Left), // whole b-block marked: restore it
        // u2: unmark the b-block walking left
        t("u2", "Y", "u2", "1", Shift::Left),
        t("u2", "_", "r4", "_", Shift::Left),
        // sb: step back over the separator (empty b-block case)
        t("sb", "_", "r4", "_", Shift::Left),
        // r4: walk left through the a-block to the X barrier
        t("r4", "1", "r4", "1", Shift::Left),
        t("r4", "X", "p0", "X", Shift::Right), // re-enter the round loop
        // c1: erase the b-block, stop at the separator before the output
        t("c1", "1", "c1", "_", Shift::Right),
        t("c1", "_", "qh", "_", Shift::Right),
    ];
    // total delta: route unreachable pairs into a benign self-loop
    let working = ["p0", "p1", "p2", "p3", "p4", "r1", "r2", "m1", "u2", "sb", "r4", "c1"];
    let alphabet = ["_", "1", "X", "Y"];
    for q in working {
        for a in alphabet {
            if !transitions.iter().any(|(tq, ta, ..)| tq == q && ta == a) {
                transitions.push(t(q, a, q, a, Shift::Right));
            }
        }
    }
    machine(MachineSpec {
        states: working.iter().map(|s| s.to_string()).chain(["qh".into()]).collect(),
        initial: "p0".into(),
        halting: vec!["qh".into()],
        alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
        blank: "_".into(),
        transitions,
    })
}

/// Never halts: walks right forever over blanks.
pub fn diverger() -> TuringMachine {
    machine(MachineSpec {
        states: vec!["q0".into(), "qh".into()],
        initial: "q0".into(),
        halting: vec!["qh".into()],
        alphabet: vec!["_".into(), "1".into()],
        blank: "_".into(),
        transitions: vec![
            t("q0", "_", "q0", "_", Shift::Right),
            t("q0", "1", "q0", "1", Shift::Right),
        ],
    })
}

/// Uses both shift directions: bounces once off the right end of the block,
/// erasing it on the way back, and halts at the left.
pub fn zigzag() -> TuringMachine {
    machine(MachineSpec {
        states: vec!["q0".into(), "q1".into(), "qh".into()],
        initial: "q0".into(),
        halting: vec!["qh".into()],
        alphabet: vec!["_".into(), "1".into()],
        blank: "_".into(),
        transitions: vec![
            t("q0", "1", "q0", "1", Shift::Right),
            t("q0", "_", "q1", "_", Shift::Left),
            t("q1", "1", "q1", "_", Shift::Left),
            t("q1", "_", "qh", "_", Shift::Left),
        ],
    })
}

/// Tape `1^n` starting at the head, unary numeral for `n`.
pub fn unary_tape(m: &TuringMachine, n: u64) -> Tape {
    let one = m.symbol_named("1").expect("unary machines have a `1` symbol");
    m.tape_from(&vec![one; n as usize])
}

/// Tape `1^a _ 1^b` starting at the head: the unary pair layout used by the
/// addition and multiplication machines.
pub fn unary_pair_tape(m: &TuringMachine, a: u64, b: u64) -> Tape {
    let one = m.symbol_named("1").expect("unary machines have a `1` symbol");
    let mut syms: Vec<SymId> = vec![one; a as usize];
    syms.push(m.blank());
    syms.extend(vec![one; b as usize]);
    m.tape_from(&syms)
}

/// Count of ones on the tape: the unary output convention.
pub fn unary_value(m: &TuringMachine, tape: &Tape) -> u64 {
    let one = m.symbol_named("1").expect("unary machines have a `1` symbol");
    tape.count(one) as u64
}

/// The window-2 shift with `G(0,1) = (1,0)`, `F(0,1) = 3` and all other
/// windows fixed. Not bijective as a whole map; see
/// [`figure_shift_bijective`] for the completion used by the block-map
/// suites.
pub fn figure_shift() -> GeneralizedShift {
    GeneralizedShift::from_fn(0, 2, |w| match w {
        [false, true] => (vec![true, false], 3),
        _ => (w.to_vec(), 0),
    })
    .expect("figure shift table is well formed")
}

/// Bijective completion of [`figure_shift`]: swap the mixed windows and give
/// every window the same relabeling amount 3. The rewrite is a permutation
/// of the window words composed with a plain shift, hence invertible.
pub fn figure_shift_bijective() -> GeneralizedShift {
    GeneralizedShift::from_fn(0, 2, |w| match w {
        [false, true] => (vec![true, false], 3),
        [true, false] => (vec![false, true], 3),
        _ => (w.to_vec(), 3),
    })
    .expect("figure shift completion table is well formed")
}

/// The bijective shifts exercised by the exact-conjugacy and volume suites.
pub fn bijective_shifts() -> Vec<(&'static str, GeneralizedShift)> {
    vec![
        ("identity", GeneralizedShift::identity(1)),
        ("full-shift", GeneralizedShift::full_shift()),
        ("window-swap", figure_shift_bijective()),
    ]
}

/// add = primrec(proj 1/1, comp(succ, proj 2/3))
pub fn murec_add() -> MuRecExpr {
    MuRecExpr::primrec(
        MuRecExpr::proj(1, 1),
        MuRecExpr::comp(MuRecExpr::Succ, MuRecExpr::proj(2, 3)),
    )
}

/// mul = primrec(const 0/1, comp(add, tuple(proj 2/3, proj 3/3)))
pub fn murec_mul() -> MuRecExpr {
    MuRecExpr::primrec(
        MuRecExpr::constant(0, 1),
        MuRecExpr::comp(
            murec_add(),
            MuRecExpr::tuple(vec![MuRecExpr::proj(2, 3), MuRecExpr::proj(3, 3)]),
        ),
    )
}

/// pred = primrec(const 0/0, proj 1/2)
pub fn murec_pred() -> MuRecExpr {
    MuRecExpr::primrec(MuRecExpr::constant(0, 0), MuRecExpr::proj(1, 2))
}

/// sub(y, x) = x with `pred` applied y times, i.e. x - y truncated at zero.
fn murec_sub_rev() -> MuRecExpr {
    MuRecExpr::primrec(
        MuRecExpr::proj(1, 1),
        MuRecExpr::comp(murec_pred(), MuRecExpr::proj(2, 3)),
    )
}

/// tsub(x, y) = max(x - y, 0), argument order swapped into `sub`.
pub fn murec_tsub() -> MuRecExpr {
    MuRecExpr::comp(
        murec_sub_rev(),
        MuRecExpr::tuple(vec![MuRecExpr::proj(2, 2), MuRecExpr::proj(1, 2)]),
    )
}

/// mu_id(x) = least y with x - y = 0, which is x itself. The searched
/// function is tsub with its arguments flipped into (y, x) order.
pub fn murec_mu_identity() -> MuRecExpr {
    MuRecExpr::mu(MuRecExpr::comp(
        murec_sub_rev(),
        MuRecExpr::tuple(vec![MuRecExpr::proj(1, 2), MuRecExpr::proj(2, 2)]),
    ))
}

/// mu_nozero(x) = least y with 1 = 0: undefined everywhere, the designed
/// diverger of the oracle suite.
pub fn murec_mu_nozero() -> MuRecExpr {
    MuRecExpr::mu(MuRecExpr::constant(1, 2))
}

/// The oracle-equivalence program suite.
pub fn murec_suite() -> Vec<(&'static str, MuRecExpr)> {
    vec![
        ("succ", MuRecExpr::Succ),
        ("add", murec_add()),
        ("mul", murec_mul()),
        ("tsub", murec_tsub()),
        ("mu-identity", murec_mu_identity()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::RunOutcome;

    #[test]
    fn add_machine_sums_unary_pairs() {
        let m = add_machine();
        for a in 0..8u64 {
            for b in 0..8u64 {
                let c = m.start(unary_pair_tape(&m, a, b));
                match m.run(c, 1000).unwrap() {
                    RunOutcome::Halted { config, steps } => {
                        assert_eq!(unary_value(&m, &config.tape), a + b, "add({a},{b})");
                        let expect = if a == 0 { 1 } else { a + 1 };
                        assert_eq!(steps, expect, "steps for add({a},{b})");
                    }
                    _ => panic!("add({a},{b}) ran out of fuel"),
                }
            }
        }
    }

    #[test]
    fn mul_machine_multiplies_unary_pairs() {
        let m = mul_machine();
        for a in 0..7u64 {
            for b in 0..7u64 {
                let c = m.start(unary_pair_tape(&m, a, b));
                match m.run(c, 100_000).unwrap() {
                    RunOutcome::Halted { config, .. } => {
                        assert_eq!(unary_value(&m, &config.tape), a * b, "mul({a},{b})");
                    }
                    _ => panic!("mul({a},{b}) ran out of fuel"),
                }
            }
        }
    }

    #[test]
    fn zigzag_halts_and_erases() {
        let m = zigzag();
        let c = m.start(unary_tape(&m, 4));
        match m.run(c, 1000).unwrap() {
            RunOutcome::Halted { config, .. } => {
                assert_eq!(unary_value(&m, &config.tape), 0);
            }
            _ => panic!("zigzag diverged"),
        }
    }

    #[test]
    fn corpus_reversibility_status() {
        assert!(succ1().is_reversible());
        assert!(add_machine().is_reversible());
        assert!(!mul_machine().is_reversible());
        assert!(diverger().is_reversible());
    }

    #[test]
    fn single_transition_machine_is_reversible() {
        let m = machine(MachineSpec {
            states: vec!["q0".into(), "qh".into()],
            initial: "q0".into(),
            halting: vec!["qh".into()],
            alphabet: vec!["_".into()],
            blank: "_".into(),
            transitions: vec![t("q0", "_", "qh", "_", Shift::Right)],
        });
        assert!(m.is_reversible());
    }

    #[test]
    fn bijective_corpus_shifts_check_out() {
        for (name, s) in bijective_shifts() {
            assert!(s.is_bijective(), "{name} should be bijective");
        }
        assert!(figure_shift().is_bijective());
    }
}
