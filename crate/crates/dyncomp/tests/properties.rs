//! Property tests for the embeddings and round trips.

use num_bigint::BigUint;
use proptest::prelude::*;

use dyncomp::cantor::{kappa, kappa_inv};
use dyncomp::corpus;
use dyncomp::gshift::{
    decode_config, encode_config, parse_biword, render_biword, BiWord, Encoding, GeneralizedShift,
};
use dyncomp::murec::{pair_decode, pair_encode};
use dyncomp::tm::{Configuration, RunOutcome, StepResult, SymId, Tape};

fn biword_strategy() -> impl Strategy<Value = BiWord> {
    proptest::collection::vec(any::<bool>(), 0..10).prop_flat_map(|neg| {
        proptest::collection::vec(any::<bool>(), 0..10)
            .prop_map(move |nonneg| BiWord::from_halves(neg.clone(), nonneg))
    })
}

fn is_canonical(w: &BiWord) -> bool {
    let (neg, nonneg) = w.halves();
    neg.last() != Some(&false) && nonneg.last() != Some(&false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cantor_embedding_round_trips(w in biword_strategy()) {
        let p = kappa(&w);
        prop_assert_eq!(kappa_inv(&p).unwrap(), w);
        // and back out: points of the image return to themselves
        prop_assert_eq!(kappa(&kappa_inv(&p).unwrap()), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn prime_tupling_round_trips_500(xs in proptest::collection::vec(0u64..50, 0..4)) {
        let big: Vec<BigUint> = xs.iter().map(|&x| BigUint::from(x)).collect();
        let coded = pair_encode(&big);
        prop_assert_eq!(pair_decode(&coded, xs.len()).unwrap(), big);
    }
}

proptest! {
    #[test]
    fn word_literals_round_trip(w in biword_strategy()) {
        prop_assert_eq!(parse_biword(&render_biword(&w)).unwrap(), w);
    }

    #[test]
    fn shift_application_is_a_relabeling_off_the_window(w in biword_strategy()) {
        for (_, s) in corpus::bijective_shifts() {
            let out = s.apply(&w);
            prop_assert!(is_canonical(&out));
            let window = s.window_start()..s.window_start() + s.window_len() as i64;
            let rule = {
                let bits: Vec<bool> = (0..s.window_len() as i64)
                    .map(|j| w.get(s.window_start() + j))
                    .collect();
                s.rule(&bits).clone()
            };
            for n in -30..30i64 {
                if !window.contains(&n) {
                    prop_assert_eq!(out.get(n - rule.shift), w.get(n));
                }
            }
        }
    }

    #[test]
    fn machine_encoding_round_trips(
        state_pick in 0usize..4,
        left in proptest::collection::vec(any::<bool>(), 0..6),
        right in proptest::collection::vec(any::<bool>(), 0..6),
    ) {
        let m = corpus::add_machine();
        let enc = Encoding::canonical(&m);
        let to_syms = |bits: &[bool]| -> Vec<SymId> {
            bits.iter().map(|&b| SymId(b as usize)).collect()
        };
        let c = Configuration {
            state: dyncomp::tm::StateId(state_pick % m.state_count()),
            tape: Tape::from_window(m.blank(), &to_syms(&left), &to_syms(&right)),
        };
        let word = encode_config(&m, &enc, &c);
        prop_assert_eq!(decode_config(&m, &enc, &word).unwrap(), c);
    }

    #[test]
    fn halting_states_absorb(
        left in proptest::collection::vec(any::<bool>(), 0..5),
        right in proptest::collection::vec(any::<bool>(), 0..5),
    ) {
        let m = corpus::succ1();
        let to_syms = |bits: &[bool]| -> Vec<SymId> {
            bits.iter().map(|&b| SymId(b as usize)).collect()
        };
        let c = Configuration {
            state: m.state_named("qh").unwrap(),
            tape: Tape::from_window(m.blank(), &to_syms(&left), &to_syms(&right)),
        };
        prop_assert_eq!(m.step(&c).unwrap(), StepResult::Halted);
        match m.run(c.clone(), 25).unwrap() {
            RunOutcome::Halted { config, steps } => {
                prop_assert_eq!(steps, 0);
                prop_assert_eq!(config, c);
            }
            RunOutcome::OutOfFuel { .. } => prop_assert!(false, "halted configs never spend fuel"),
        }
    }

    #[test]
    fn compiled_shift_conjugacy_on_random_orbits(
        ones in proptest::collection::vec(-5i64..5, 0..6),
        steps in 0usize..25,
    ) {
        let m = corpus::zigzag();
        let enc = Encoding::canonical(&m);
        let s = GeneralizedShift::compile_tm(&m, &enc).unwrap();
        let tape = {
            let one = m.symbol_named("1").unwrap();
            let mut t = m.blank_tape();
            for &i in &ones {
                t.set(i, one);
            }
            t
        };
        let mut config = m.start(tape);
        let mut word = encode_config(&m, &enc, &config);
        for _ in 0..steps {
            word = s.apply(&word);
            if let StepResult::Next(next) = m.step(&config).unwrap() {
                config = next;
            }
            prop_assert_eq!(&word, &encode_config(&m, &enc, &config));
        }
    }
}

/// The exact inverse really inverts: a thousand random words per bijective
/// corpus shift, both compositions.
#[test]
fn inverse_composes_to_identity_on_a_thousand_words() {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for (name, s) in corpus::bijective_shifts() {
        let inv = s.invert().expect("corpus shifts are uniformly bijective");
        for _ in 0..1000 {
            let mut w = BiWord::zero();
            for i in -6..=6 {
                if rng.gen_bool(0.5) {
                    w.set(i, true);
                }
            }
            assert_eq!(inv.apply(&s.apply(&w)), w, "{name}: inverse after apply");
            assert_eq!(s.apply(&inv.apply(&w)), w, "{name}: apply after inverse");
            assert_eq!(s.inverse_apply(&s.apply(&w)).unwrap(), w, "{name}: piecewise inverse");
        }
    }
}
