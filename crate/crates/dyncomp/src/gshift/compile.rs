//! Machine-to-shift compilation and the configuration embedding.
//!
//! A configuration `(q, t)` embeds into a binary word as
//!
//! ```text
//!   ... code(t[-2]) code(t[-1]) | code(q) code(t[0]) code(t[1]) ...
//! ```
//!
//! with the state code starting at index 0 and every code written left to
//! right. Blanks must encode to the all-zero symbol code so that compact
//! support survives; state codes and non-blank symbol codes are nonzero, so
//! a word of ones can never be mistaken for padding.

use std::collections::HashMap;

use super::{BiWord, GeneralizedShift, GshiftError};
use crate::tm::{Configuration, StateId, SymId, Tape, TuringMachine};

/// Fixed-width binary codes for the states and symbols of one machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    w_state: usize,
    w_sym: usize,
    state_codes: Vec<Vec<bool>>,
    sym_codes: Vec<Vec<bool>>,
    blank: SymId,
}

fn code_bits(value: usize, width: usize) -> Vec<bool> {
    (0..width).map(|j| (value >> (width - 1 - j)) & 1 == 1).collect()
}

impl Encoding {
    /// Validate and build an encoding. State codes: distinct, nonzero, width
    /// `w_state`. Symbol codes: distinct, width `w_sym`, all-zero exactly for
    /// the blank.
    pub fn new(
        m: &TuringMachine,
        state_codes: Vec<Vec<bool>>,
        sym_codes: Vec<Vec<bool>>,
    ) -> Result<Self, GshiftError> {
        let w_state = state_codes.first().map(|c| c.len()).unwrap_or(0);
        let w_sym = sym_codes.first().map(|c| c.len()).unwrap_or(0);
        let blank = m.blank();

        let distinct = |codes: &[Vec<bool>]| -> bool {
            for (i, a) in codes.iter().enumerate() {
                if codes[i + 1..].contains(a) {
                    return false;
                }
            }
            true
        };
        let ok_states = state_codes.len() == m.state_count()
            && w_state > 0
            && state_codes.iter().all(|c| c.len() == w_state)
            && state_codes.iter().all(|c| c.iter().any(|&b| b))
            && distinct(&state_codes);
        if !ok_states {
            return Err(GshiftError::BadStateCodes(w_state));
        }
        let ok_syms = sym_codes.len() == m.alphabet_len()
            && w_sym > 0
            && sym_codes.iter().all(|c| c.len() == w_sym)
            && sym_codes[blank.0].iter().all(|&b| !b)
            && sym_codes
                .iter()
                .enumerate()
                .all(|(i, c)| i == blank.0 || c.iter().any(|&b| b))
            && distinct(&sym_codes);
        if !ok_syms {
            return Err(GshiftError::BadSymbolCodes(w_sym));
        }
        Ok(Encoding {
            w_state,
            w_sym,
            state_codes,
            sym_codes,
            blank,
        })
    }

    /// The default encoding: state `i` gets code `i + 1`, the blank gets the
    /// zero code and the remaining symbols count up from 1, all at minimal
    /// width.
    pub fn canonical(m: &TuringMachine) -> Self {
        let mut w_state = 1;
        while (1usize << w_state) <= m.state_count() {
            w_state += 1;
        }
        let mut w_sym = 1;
        while (1usize << w_sym) < m.alphabet_len() {
            w_sym += 1;
        }
        let state_codes = (0..m.state_count()).map(|i| code_bits(i + 1, w_state)).collect();
        let blank = m.blank();
        let mut next = 1usize;
        let mut sym_codes = Vec::with_capacity(m.alphabet_len());
        for i in 0..m.alphabet_len() {
            if SymId(i) == blank {
                sym_codes.push(code_bits(0, w_sym));
            } else {
                sym_codes.push(code_bits(next, w_sym));
                next += 1;
            }
        }
        Encoding::new(m, state_codes, sym_codes).expect("canonical encoding is valid")
    }

    pub fn state_width(&self) -> usize {
        self.w_state
    }

    pub fn sym_width(&self) -> usize {
        self.w_sym
    }

    pub fn state_code(&self, q: StateId) -> &[bool] {
        &self.state_codes[q.0]
    }

    pub fn sym_code(&self, a: SymId) -> &[bool] {
        &self.sym_codes[a.0]
    }

    pub fn symbol_decode(&self, code: &[bool]) -> Option<SymId> {
        self.sym_codes.iter().position(|c| c == code).map(SymId)
    }

    fn state_lookup(&self) -> HashMap<Vec<bool>, StateId> {
        self.state_codes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), StateId(i)))
            .collect()
    }

    fn sym_lookup(&self) -> HashMap<Vec<bool>, SymId> {
        self.sym_codes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), SymId(i)))
            .collect()
    }
}

/// Embed a configuration as a binary word.
pub fn encode_config(_m: &TuringMachine, enc: &Encoding, c: &Configuration) -> BiWord {
    let mut w = BiWord::zero();
    let mut write = |at: i64, bits: &[bool]| {
        for (j, &b) in bits.iter().enumerate() {
            if b {
                w.set(at + j as i64, true);
            }
        }
    };
    write(0, enc.state_code(c.state));
    let wq = enc.w_state as i64;
    let wa = enc.w_sym as i64;
    // right half: t[0], t[1], ... immediately after the state code
    let hi = c.tape.support_hi().max(0);
    for n in 0..hi {
        write(wq + n * wa, enc.sym_code(c.tape.get(n)));
    }
    // left half: t[-1] directly left of position 0, then t[-2], ...
    let lo = c.tape.support_lo().min(0);
    for k in 1..=(-lo) {
        write(-k * wa, enc.sym_code(c.tape.get(-k)));
    }
    w
}

/// Parse a word back into a configuration. Fails when the head block is not
/// a state code or some symbol block is not a symbol code.
pub fn decode_config(
    m: &TuringMachine,
    enc: &Encoding,
    w: &BiWord,
) -> Result<Configuration, GshiftError> {
    let states = enc.state_lookup();
    let syms = enc.sym_lookup();
    let wq = enc.w_state as i64;
    let wa = enc.w_sym as i64;

    let read = |at: i64, width: i64| -> Vec<bool> {
        (0..width).map(|j| w.get(at + j)).collect()
    };
    let state = *states
        .get(&read(0, wq))
        .ok_or(GshiftError::DecodeNoState)?;

    let support = w.support();
    let max_pos = support.iter().copied().max().unwrap_or(0).max(wq - 1);
    let min_pos = support.iter().copied().min().unwrap_or(0).min(0);

    let mut right = Vec::new();
    let mut off = wq;
    while off <= max_pos {
        let block = read(off, wa);
        let sym = *syms
            .get(&block)
            .ok_or(GshiftError::DecodeBadSymbol(off))?;
        right.push(sym);
        off += wa;
    }
    let mut left = Vec::new();
    let mut off = -wa;
    while off > min_pos - wa {
        let block = read(off, wa);
        let sym = *syms
            .get(&block)
            .ok_or(GshiftError::DecodeBadSymbol(off))?;
        left.push(sym);
        off -= wa;
    }
    Ok(Configuration {
        state,
        tape: Tape::from_window(m.blank(), &left, &right),
    })
}

impl GeneralizedShift {
    /// Compile a machine into a generalized shift conjugate to its step map
    /// under `encode_config`: the window `[-w_sym, w_state + w_sym)` reads
    /// the symbol left of the head, the state code and the read symbol. A
    /// right move rewrites to `[left-symbol | written | next-state]` and
    /// relabels by `+w_sym`; a left move rewrites to
    /// `[next-state | left-symbol | written]` and relabels by `-w_sym`.
    /// Windows that do not spell a non-halting state between two symbol
    /// codes are left alone, which freezes halting configurations.
    pub fn compile_tm(m: &TuringMachine, enc: &Encoding) -> Result<Self, GshiftError> {
        let states = enc.state_lookup();
        let syms = enc.sym_lookup();
        let wq = enc.w_state;
        let wa = enc.w_sym;
        let r = wq + 2 * wa;
        let start = -(wa as i64);

        GeneralizedShift::from_fn(start, r, |window| {
            let y = &window[..wa];
            let q = &window[wa..wa + wq];
            let a = &window[wa + wq..];
            let matched = (|| {
                let _y_sym = syms.get(y)?;
                let state = states.get(q)?;
                let sym = syms.get(a)?;
                let rule = m.rule(*state, *sym)?;
                Some(rule)
            })();
            match matched {
                Some(rule) => {
                    let next = enc.state_code(rule.next);
                    let written = enc.sym_code(rule.write);
                    let mut rewrite = Vec::with_capacity(r);
                    match rule.shift {
                        crate::tm::Shift::Right => {
                            rewrite.extend_from_slice(y);
                            rewrite.extend_from_slice(written);
                            rewrite.extend_from_slice(next);
                            (rewrite, wa as i64)
                        }
                        crate::tm::Shift::Left => {
                            rewrite.extend_from_slice(next);
                            rewrite.extend_from_slice(y);
                            rewrite.extend_from_slice(written);
                            (rewrite, -(wa as i64))
                        }
                    }
                }
                None => (window.to_vec(), 0),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::tm::{RunOutcome, StepResult};

    #[test]
    fn canonical_codes_for_succ1() {
        let m = corpus::succ1();
        let enc = Encoding::canonical(&m);
        assert_eq!(enc.state_width(), 2);
        assert_eq!(enc.sym_width(), 1);
        assert_eq!(enc.state_code(m.state_named("q0").unwrap()), &[false, true]);
        assert_eq!(enc.state_code(m.state_named("qh").unwrap()), &[true, false]);
        assert_eq!(enc.sym_code(m.blank()), &[false]);
        assert_eq!(enc.sym_code(m.symbol_named("1").unwrap()), &[true]);
    }

    #[test]
    fn encode_blank_config_is_state_code_only() {
        let m = corpus::succ1();
        let enc = Encoding::canonical(&m);
        let w = encode_config(&m, &enc, &m.start(m.blank_tape()));
        // code(q0) = 01 at positions 0..2, zeros elsewhere
        assert_eq!(w, BiWord::from_ones(&[1]));
    }

    #[test]
    fn decode_rejects_the_zero_word() {
        let m = corpus::succ1();
        let enc = Encoding::canonical(&m);
        assert_eq!(
            decode_config(&m, &enc, &BiWord::zero()),
            Err(GshiftError::DecodeNoState)
        );
    }

    #[test]
    fn decode_inverts_encode() {
        let m = corpus::add_machine();
        let enc = Encoding::canonical(&m);
        let one = m.symbol_named("1").unwrap();
        let blank = m.blank();
        for tape in [
            m.blank_tape(),
            m.tape_from(&[one, one]),
            Tape::from_window(blank, &[one, blank, one], &[blank, one]),
        ] {
            for state in m.states() {
                let c = Configuration { state, tape: tape.clone() };
                let w = encode_config(&m, &enc, &c);
                assert_eq!(decode_config(&m, &enc, &w).unwrap(), c);
            }
        }
    }

    #[test]
    fn compiled_shift_tracks_one_step() {
        let m = corpus::succ1();
        let enc = Encoding::canonical(&m);
        let s = GeneralizedShift::compile_tm(&m, &enc).unwrap();
        let one = m.symbol_named("1").unwrap();
        let c = m.start(m.tape_from(&[one]));
        let StepResult::Next(c1) = m.step(&c).unwrap() else {
            panic!()
        };
        assert_eq!(
            s.apply(&encode_config(&m, &enc, &c)),
            encode_config(&m, &enc, &c1)
        );
    }

    #[test]
    fn compiled_shift_freezes_halting_words() {
        let m = corpus::succ1();
        let enc = Encoding::canonical(&m);
        let s = GeneralizedShift::compile_tm(&m, &enc).unwrap();
        let one = m.symbol_named("1").unwrap();
        let c = Configuration {
            state: m.state_named("qh").unwrap(),
            tape: m.tape_from(&[one, one]),
        };
        let w = encode_config(&m, &enc, &c);
        assert_eq!(s.apply(&w), w);
    }

    #[test]
    fn conjugacy_along_left_moving_runs() {
        // a machine that walks left: checks the left-move window algebra
        let m = corpus::zigzag();
        let enc = Encoding::canonical(&m);
        let s = GeneralizedShift::compile_tm(&m, &enc).unwrap();
        let one = m.symbol_named("1").unwrap();
        let mut c = m.start(m.tape_from(&[one, one, one]));
        let mut w = encode_config(&m, &enc, &c);
        for _ in 0..30 {
            w = s.apply(&w);
            match m.step(&c).unwrap() {
                StepResult::Next(n) => c = n,
                StepResult::Halted => {}
            }
            assert_eq!(w, encode_config(&m, &enc, &c));
        }
    }

    #[test]
    fn compiled_reversible_machine_is_bijective() {
        let m = corpus::succ1();
        assert!(m.is_reversible());
        let s = GeneralizedShift::compile_tm(&m, &Encoding::canonical(&m)).unwrap();
        assert!(s.is_bijective());
    }

    #[test]
    fn run_and_shift_orbit_agree_on_a_whole_computation() {
        let m = corpus::add_machine();
        let enc = Encoding::canonical(&m);
        let s = GeneralizedShift::compile_tm(&m, &enc).unwrap();
        let tape = corpus::unary_pair_tape(&m, 3, 2);
        let c0 = m.start(tape);
        let RunOutcome::Halted { config, steps } = m.run(c0.clone(), 100).unwrap() else {
            panic!()
        };
        let mut w = encode_config(&m, &enc, &c0);
        for _ in 0..steps {
            w = s.apply(&w);
        }
        assert_eq!(w, encode_config(&m, &enc, &config));
        // once halted the word is a fixed point
        assert_eq!(s.apply(&w), w);
    }
}
