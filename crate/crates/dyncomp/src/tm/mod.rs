//! Turing machines as discrete dynamical systems.
//!
//! A machine is a finite control `(states, initial, halting, alphabet, blank,
//! delta)` acting on configurations `(state, tape)`. The head convention is
//! that the read cell is always index 0: a transition writes at index 0 and
//! then relabels the whole tape by the shift (`t'[n] = t[n + s]`), so "the
//! head moved" really means "the tape moved under the head".

mod text;

pub use text::{machine_from_json, machine_to_json, parse_machine, render_machine, MachineDoc, TapeIoDoc};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Index into a machine's state table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

/// Index into a machine's alphabet table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymId(pub usize);

/// Tape shift direction. `Right` relabels by +1, `Left` by -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shift {
    Left,
    Right,
}

impl Shift {
    pub fn offset(self) -> i64 {
        match self {
            Shift::Left => -1,
            Shift::Right => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Shift::Left => 'L',
            Shift::Right => 'R',
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Right-hand side of one transition: next state, written symbol, shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub next: StateId,
    pub write: SymId,
    pub shift: Shift,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("machine has no states")]
    NoStates,
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("halting set must be a nonempty proper subset of the states")]
    BadHaltingSet,
    #[error("initial state `{0}` may not be halting")]
    HaltingInitial(String),
    #[error("blank symbol `{0}` not in alphabet")]
    BlankNotInAlphabet(String),
    #[error("missing transition for ({state}, {symbol})")]
    MissingTransition { state: String, symbol: String },
    #[error("transition declared for halting state `{0}`")]
    TransitionFromHalting(String),
    #[error("duplicate transition for ({state}, {symbol})")]
    DuplicateTransition { state: String, symbol: String },
    #[error("configuration does not belong to this machine")]
    ForeignConfiguration,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A deterministic single-tape Turing machine with total transitions on
/// non-halting states and none on halting states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    initial: StateId,
    halting: BTreeSet<StateId>,
    alphabet: Vec<String>,
    blank: SymId,
    // delta[state.0 * alphabet.len() + sym.0], None exactly for halting states
    delta: Vec<Option<Rule>>,
}

/// Everything needed to build a machine, in symbolic (name-based) form.
#[derive(Debug, Clone)]
pub struct MachineSpec {
    pub states: Vec<String>,
    pub initial: String,
    pub halting: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    /// (state, read_symbol, next_state, written_symbol, shift)
    pub transitions: Vec<(String, String, String, String, Shift)>,
}

impl TuringMachine {
    pub fn build(spec: MachineSpec) -> Result<Self, TmError> {
        if spec.states.is_empty() {
            return Err(TmError::NoStates);
        }
        let mut states = Vec::new();
        for s in &spec.states {
            if states.contains(s) {
                return Err(TmError::DuplicateState(s.clone()));
            }
            states.push(s.clone());
        }
        let mut alphabet = Vec::new();
        for a in &spec.alphabet {
            if alphabet.contains(a) {
                return Err(TmError::DuplicateSymbol(a.clone()));
            }
            alphabet.push(a.clone());
        }
        let state_id = |name: &str| -> Result<StateId, TmError> {
            states
                .iter()
                .position(|s| s == name)
                .map(StateId)
                .ok_or_else(|| TmError::UnknownState(name.to_string()))
        };
        let sym_id = |name: &str| -> Result<SymId, TmError> {
            alphabet
                .iter()
                .position(|s| s == name)
                .map(SymId)
                .ok_or_else(|| TmError::UnknownSymbol(name.to_string()))
        };

        let initial = state_id(&spec.initial)?;
        let mut halting = BTreeSet::new();
        for h in &spec.halting {
            halting.insert(state_id(h)?);
        }
        if halting.is_empty() || halting.len() >= states.len() {
            return Err(TmError::BadHaltingSet);
        }
        if halting.contains(&initial) {
            return Err(TmError::HaltingInitial(spec.initial.clone()));
        }
        let blank = sym_id(&spec.blank).map_err(|_| TmError::BlankNotInAlphabet(spec.blank.clone()))?;

        let mut delta: Vec<Option<Rule>> = vec![None; states.len() * alphabet.len()];
        for (q, a, q2, a2, shift) in &spec.transitions {
            let q = state_id(q)?;
            let a = sym_id(a)?;
            if halting.contains(&q) {
                return Err(TmError::TransitionFromHalting(states[q.0].clone()));
            }
            let slot = &mut delta[q.0 * alphabet.len() + a.0];
            if slot.is_some() {
                return Err(TmError::DuplicateTransition {
                    state: states[q.0].clone(),
                    symbol: alphabet[a.0].clone(),
                });
            }
            *slot = Some(Rule {
                next: state_id(q2)?,
                write: sym_id(a2)?,
                shift: *shift,
            });
        }
        // delta must be total off the halting set
        for (qi, qname) in states.iter().enumerate() {
            if halting.contains(&StateId(qi)) {
                continue;
            }
            for (ai, aname) in alphabet.iter().enumerate() {
                if delta[qi * alphabet.len() + ai].is_none() {
                    return Err(TmError::MissingTransition {
                        state: qname.clone(),
                        symbol: aname.clone(),
                    });
                }
            }
        }

        Ok(TuringMachine {
            states,
            initial,
            halting,
            alphabet,
            blank,
            delta,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q.0]
    }

    pub fn symbol_name(&self, a: SymId) -> &str {
        &self.alphabet[a.0]
    }

    pub fn state_named(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(StateId)
    }

    pub fn symbol_named(&self, name: &str) -> Option<SymId> {
        self.alphabet.iter().position(|s| s == name).map(SymId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn blank(&self) -> SymId {
        self.blank
    }

    pub fn is_halting(&self, q: StateId) -> bool {
        self.halting.contains(&q)
    }

    pub fn halting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.halting.iter().copied()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymId> {
        (0..self.alphabet.len()).map(SymId)
    }

    pub fn rule(&self, q: StateId, a: SymId) -> Option<Rule> {
        self.delta.get(q.0 * self.alphabet.len() + a.0).copied().flatten()
    }

    /// All transitions as (source state, read symbol, rule), in table order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, SymId, Rule)> + '_ {
        let w = self.alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .filter_map(move |(i, r)| r.map(|r| (StateId(i / w), SymId(i % w), r)))
    }

    /// Fresh all-blank tape for this machine.
    pub fn blank_tape(&self) -> Tape {
        Tape::blank(self.blank)
    }

    /// Tape holding `syms` from index 0 rightwards, blanks elsewhere.
    pub fn tape_from(&self, syms: &[SymId]) -> Tape {
        Tape::from_window(self.blank, &[], syms)
    }

    /// Initial configuration over the given tape.
    pub fn start(&self, tape: Tape) -> Configuration {
        Configuration {
            state: self.initial,
            tape,
        }
    }

    fn check_config(&self, c: &Configuration) -> Result<(), TmError> {
        if c.state.0 >= self.states.len()
            || c.tape.blank != self.blank
            || c.tape.cells().any(|s| s.0 >= self.alphabet.len())
        {
            return Err(TmError::ForeignConfiguration);
        }
        Ok(())
    }

    /// One application of the step map. Halting configurations are frozen and
    /// reported as such.
    pub fn step(&self, c: &Configuration) -> Result<StepResult, TmError> {
        self.check_config(c)?;
        if self.is_halting(c.state) {
            return Ok(StepResult::Halted);
        }
        let read = c.tape.get(0);
        let rule = self
            .rule(c.state, read)
            .expect("delta total on non-halting states");
        let mut tape = c.tape.clone();
        tape.set(0, rule.write);
        tape.relabel(rule.shift.offset());
        Ok(StepResult::Next(Configuration {
            state: rule.next,
            tape,
        }))
    }

    /// Iterate `step` until a halting state or the fuel runs out. The step
    /// count on halting is exact. Internally the head walks over a buffer
    /// instead of relabeling the whole tape each step; the result is the
    /// same canonical configuration `step` iteration produces.
    pub fn run(&self, c: Configuration, fuel: u64) -> Result<RunOutcome, TmError> {
        self.check_config(&c)?;
        let blank = self.blank;
        let lo = c.tape.support_lo();
        let hi = c.tape.support_hi();
        let mut cells: std::collections::VecDeque<SymId> = (lo..hi).map(|n| c.tape.get(n)).collect();
        // index of tape position 0 within the buffer
        let mut head: i64 = -lo;
        let mut state = c.state;
        let mut steps = 0u64;
        let outcome = loop {
            if self.is_halting(state) {
                break RunOutcome::Halted {
                    config: Configuration {
                        state,
                        tape: Tape::blank(blank),
                    },
                    steps,
                };
            }
            if steps == fuel {
                break RunOutcome::OutOfFuel {
                    config: Configuration {
                        state,
                        tape: Tape::blank(blank),
                    },
                };
            }
            if head < 0 {
                cells.push_front(blank);
                head = 0;
            }
            if head as usize >= cells.len() {
                cells.push_back(blank);
            }
            let read = cells[head as usize];
            let rule = self
                .rule(state, read)
                .expect("delta total on non-halting states");
            cells[head as usize] = rule.write;
            head += rule.shift.offset();
            state = rule.next;
            steps += 1;
        };
        // rebuild the canonical head-at-zero tape
        while head < 0 {
            cells.push_front(blank);
            head += 1;
        }
        while head > cells.len() as i64 {
            cells.push_back(blank);
        }
        let head = head as usize;
        let mut left: Vec<SymId> = cells.iter().take(head).copied().collect();
        left.reverse();
        let right: Vec<SymId> = cells.iter().skip(head).copied().collect();
        let tape = Tape::from_window(blank, &left, &right);
        Ok(match outcome {
            RunOutcome::Halted { config, steps } => RunOutcome::Halted {
                config: Configuration {
                    state: config.state,
                    tape,
                },
                steps,
            },
            RunOutcome::OutOfFuel { config, .. } => RunOutcome::OutOfFuel {
                config: Configuration {
                    state: config.state,
                    tape,
                },
            },
        })
    }

    /// Backward-determinism check. The step map restricted to non-halting
    /// configurations is injective iff for every target state all incoming
    /// transitions agree on the shift and write pairwise distinct symbols;
    /// a mixed shift or a repeated written symbol admits two preimages.
    pub fn check_reversible(&self) -> Result<(), ReversibilityWitness> {
        let mut incoming: Vec<Vec<(StateId, SymId, Rule)>> = vec![Vec::new(); self.states.len()];
        for (q, a, rule) in self.transitions() {
            incoming[rule.next.0].push((q, a, rule));
        }
        for entries in &incoming {
            for (i, (q1, a1, r1)) in entries.iter().enumerate() {
                for (q2, a2, r2) in &entries[i + 1..] {
                    if r1.shift != r2.shift || r1.write == r2.write {
                        return Err(ReversibilityWitness {
                            first: (*q1, *a1, *r1),
                            second: (*q2, *a2, *r2),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_reversible(&self) -> bool {
        self.check_reversible().is_ok()
    }
}

/// Certificate for a reversibility failure: two transitions into the same
/// state whose images cannot be told apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityWitness {
    pub first: (StateId, SymId, Rule),
    pub second: (StateId, SymId, Rule),
}

impl ReversibilityWitness {
    pub fn describe(&self, m: &TuringMachine) -> String {
        let show = |(q, a, r): (StateId, SymId, Rule)| {
            format!(
                "{} {} -> {} {} {}",
                m.state_name(q),
                m.symbol_name(a),
                m.state_name(r.next),
                m.symbol_name(r.write),
                r.shift
            )
        };
        format!("`{}` collides with `{}`", show(self.first), show(self.second))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepResult {
    /// The configuration is halting; the dynamics freeze it.
    Halted,
    Next(Configuration),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Halted { config: Configuration, steps: u64 },
    OutOfFuel { config: Configuration },
}

impl RunOutcome {
    pub fn config(&self) -> &Configuration {
        match self {
            RunOutcome::Halted { config, .. } => config,
            RunOutcome::OutOfFuel { config } => config,
        }
    }

    pub fn halted_steps(&self) -> Option<u64> {
        match self {
            RunOutcome::Halted { steps, .. } => Some(*steps),
            RunOutcome::OutOfFuel { .. } => None,
        }
    }
}

/// Compactly supported two-sided tape. Cell `n` for `n >= 0` lives in the
/// right half, cell `-k` (k >= 1) in the left half; both halves are trimmed
/// of trailing blanks so equality is canonical-form equality.
#[derive(Debug, Clone)]
pub struct Tape {
    blank: SymId,
    /// left[k] = cell at index -(k+1)
    left: Vec<SymId>,
    /// right[n] = cell at index n
    right: Vec<SymId>,
}

impl Tape {
    pub fn blank(blank: SymId) -> Self {
        Tape {
            blank,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    /// Build from explicit windows: `left[k]` is the cell at index -(k+1),
    /// `right[n]` the cell at index n. Trailing blanks are trimmed.
    pub fn from_window(blank: SymId, left: &[SymId], right: &[SymId]) -> Self {
        let mut t = Tape {
            blank,
            left: left.to_vec(),
            right: right.to_vec(),
        };
        t.trim();
        t
    }

    pub fn blank_sym(&self) -> SymId {
        self.blank
    }

    pub fn get(&self, n: i64) -> SymId {
        if n >= 0 {
            self.right.get(n as usize).copied().unwrap_or(self.blank)
        } else {
            self.left.get((-n - 1) as usize).copied().unwrap_or(self.blank)
        }
    }

    pub fn set(&mut self, n: i64, s: SymId) {
        if n >= 0 {
            let i = n as usize;
            if i >= self.right.len() {
                if s == self.blank {
                    return;
                }
                self.right.resize(i + 1, self.blank);
            }
            self.right[i] = s;
        } else {
            let i = (-n - 1) as usize;
            if i >= self.left.len() {
                if s == self.blank {
                    return;
                }
                self.left.resize(i + 1, self.blank);
            }
            self.left[i] = s;
        }
        self.trim();
    }

    /// Relabel cells: the new tape has `t'[n] = t[n + offset]`.
    pub fn relabel(&mut self, offset: i64) {
        if offset == 0 {
            return;
        }
        let lo = -(self.left.len() as i64);
        let hi = self.right.len() as i64;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for n in (lo - offset.abs())..(hi + offset.abs()) {
            let v = self.get(n + offset);
            if n >= 0 {
                let i = n as usize;
                if v != self.blank || i < right.len() {
                    while right.len() < i {
                        right.push(self.blank);
                    }
                    right.push(v);
                }
            } else {
                let i = (-n - 1) as usize;
                if v != self.blank {
                    while left.len() <= i {
                        left.push(self.blank);
                    }
                    left[i] = v;
                }
            }
        }
        self.left = left;
        self.right = right;
        self.trim();
    }

    fn trim(&mut self) {
        while self.right.last() == Some(&self.blank) {
            self.right.pop();
        }
        while self.left.last() == Some(&self.blank) {
            self.left.pop();
        }
    }

    /// Smallest index with a (possibly blank) stored cell; all cells below
    /// are blank.
    pub fn support_lo(&self) -> i64 {
        -(self.left.len() as i64)
    }

    /// One past the largest stored cell index.
    pub fn support_hi(&self) -> i64 {
        self.right.len() as i64
    }

    /// Stored cells, left to right.
    pub fn cells(&self) -> impl Iterator<Item = SymId> + '_ {
        self.left
            .iter()
            .rev()
            .copied()
            .chain(self.right.iter().copied())
    }

    pub fn count(&self, s: SymId) -> usize {
        self.cells().filter(|&c| c == s).count()
    }

    pub fn render(&self, m: &TuringMachine) -> String {
        let mut out = String::from("...");
        for n in self.support_lo()..0 {
            out.push_str(m.symbol_name(self.get(n)));
        }
        out.push('|');
        for n in 0..self.support_hi().max(1) {
            out.push_str(m.symbol_name(self.get(n)));
        }
        out.push_str("...");
        out
    }
}

impl PartialEq for Tape {
    fn eq(&self, other: &Self) -> bool {
        self.blank == other.blank && self.left == other.left && self.right == other.right
    }
}

impl Eq for Tape {}

impl std::hash::Hash for Tape {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.blank.hash(state);
        self.left.hash(state);
        self.right.hash(state);
    }
}

/// A point of the machine's phase space: control state plus tape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub tape: Tape,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn succ1() -> TuringMachine {
        corpus::succ1()
    }

    #[test]
    fn succ1_single_step_moves_right() {
        let m = succ1();
        let one = m.symbol_named("1").unwrap();
        let c = m.start(m.tape_from(&[one, one]));
        let StepResult::Next(c1) = m.step(&c).unwrap() else {
            panic!("should not halt");
        };
        assert_eq!(c1.state, m.state_named("q0").unwrap());
        // head over the second 1, first 1 now at index -1
        assert_eq!(c1.tape.get(-1), one);
        assert_eq!(c1.tape.get(0), one);
        assert_eq!(c1.tape.get(1), m.blank());
    }

    #[test]
    fn halting_configuration_is_frozen() {
        let m = succ1();
        let c = Configuration {
            state: m.state_named("qh").unwrap(),
            tape: m.blank_tape(),
        };
        assert_eq!(m.step(&c).unwrap(), StepResult::Halted);
        match m.run(c.clone(), 10).unwrap() {
            RunOutcome::Halted { config, steps } => {
                assert_eq!(steps, 0);
                assert_eq!(config, c);
            }
            _ => panic!("halting configs stay halted"),
        }
    }

    #[test]
    fn blank_tape_halts_in_one_step() {
        let m = succ1();
        let one = m.symbol_named("1").unwrap();
        let c = m.start(m.blank_tape());
        let StepResult::Next(c1) = m.step(&c).unwrap() else {
            panic!()
        };
        assert!(m.is_halting(c1.state));
        // the written 1 sits one cell left of the head
        assert_eq!(c1.tape.get(-1), one);
        assert_eq!(c1.tape.count(one), 1);
    }

    #[test]
    fn succ1_run_counts_steps_exactly() {
        let m = succ1();
        let one = m.symbol_named("1").unwrap();
        let c = m.start(m.tape_from(&[one, one]));
        match m.run(c, 100).unwrap() {
            RunOutcome::Halted { config, steps } => {
                assert_eq!(steps, 3);
                assert_eq!(config.tape.count(one), 3);
            }
            _ => panic!("expected halt"),
        }
    }

    #[test]
    fn run_respects_fuel() {
        let m = succ1();
        let c = m.start(m.blank_tape());
        assert!(matches!(m.run(c, 0).unwrap(), RunOutcome::OutOfFuel { .. }));

        let d = corpus::diverger();
        let c = d.start(d.blank_tape());
        match d.run(c, 50).unwrap() {
            RunOutcome::OutOfFuel { .. } => {}
            _ => panic!("diverger must exhaust fuel"),
        }
    }

    #[test]
    fn run_agrees_with_iterated_step() {
        let m = succ1();
        let one = m.symbol_named("1").unwrap();
        let mut c = m.start(m.tape_from(&[one, one, one]));
        let by_run = m.run(c.clone(), 100).unwrap();
        let mut steps = 0;
        loop {
            match m.step(&c).unwrap() {
                StepResult::Halted => break,
                StepResult::Next(n) => {
                    c = n;
                    steps += 1;
                }
            }
        }
        assert_eq!(by_run.halted_steps(), Some(steps));
        assert_eq!(by_run.config(), &c);
    }

    #[test]
    fn reversibility_certificates() {
        assert!(succ1().is_reversible());

        // two transitions writing the same symbol with the same shift into q1
        let collide = TuringMachine::build(MachineSpec {
            states: vec!["q0".into(), "q1".into(), "qh".into()],
            initial: "q0".into(),
            halting: vec!["qh".into()],
            alphabet: vec!["0".into(), "1".into()],
            blank: "0".into(),
            transitions: vec![
                ("q0".into(), "0".into(), "q1".into(), "1".into(), Shift::Right),
                ("q0".into(), "1".into(), "q1".into(), "1".into(), Shift::Right),
                ("q1".into(), "0".into(), "qh".into(), "0".into(), Shift::Right),
                ("q1".into(), "1".into(), "qh".into(), "1".into(), Shift::Right),
            ],
        })
        .unwrap();
        let w = collide.check_reversible().unwrap_err();
        assert_eq!(w.first.2.next, collide.state_named("q1").unwrap());

        // mixed shifts into the same target also collide
        let mixed = TuringMachine::build(MachineSpec {
            states: vec!["q0".into(), "q1".into(), "qh".into()],
            initial: "q0".into(),
            halting: vec!["qh".into()],
            alphabet: vec!["0".into(), "1".into()],
            blank: "0".into(),
            transitions: vec![
                ("q0".into(), "0".into(), "q1".into(), "1".into(), Shift::Right),
                ("q0".into(), "1".into(), "q1".into(), "0".into(), Shift::Left),
                ("q1".into(), "0".into(), "qh".into(), "0".into(), Shift::Right),
                ("q1".into(), "1".into(), "qh".into(), "1".into(), Shift::Right),
            ],
        })
        .unwrap();
        assert!(!mixed.is_reversible());
    }

    #[test]
    fn construction_rejects_malformed_tables() {
        let base = MachineSpec {
            states: vec!["q0".into(), "qh".into()],
            initial: "q0".into(),
            halting: vec!["qh".into()],
            alphabet: vec!["_".into(), "1".into()],
            blank: "_".into(),
            transitions: vec![
                ("q0".into(), "1".into(), "q0".into(), "1".into(), Shift::Right),
                ("q0".into(), "_".into(), "qh".into(), "1".into(), Shift::Right),
            ],
        };

        let mut missing = base.clone();
        missing.transitions.pop();
        assert!(matches!(
            TuringMachine::build(missing),
            Err(TmError::MissingTransition { .. })
        ));

        let mut halting_initial = base.clone();
        halting_initial.initial = "qh".into();
        assert!(matches!(
            TuringMachine::build(halting_initial),
            Err(TmError::HaltingInitial(_))
        ));

        let mut all_halting = base.clone();
        all_halting.halting = vec!["q0".into(), "qh".into()];
        assert!(matches!(
            TuringMachine::build(all_halting),
            Err(TmError::BadHaltingSet)
        ));

        let mut from_halting = base;
        from_halting
            .transitions
            .push(("qh".into(), "_".into(), "qh".into(), "_".into(), Shift::Left));
        assert!(matches!(
            TuringMachine::build(from_halting),
            Err(TmError::TransitionFromHalting(_))
        ));
    }

    #[test]
    fn foreign_configuration_rejected() {
        let m = succ1();
        let c = Configuration {
            state: StateId(9),
            tape: m.blank_tape(),
        };
        assert_eq!(m.step(&c), Err(TmError::ForeignConfiguration));
        let c = Configuration {
            state: m.initial(),
            tape: Tape::from_window(SymId(0), &[], &[SymId(7)]),
        };
        assert_eq!(m.step(&c), Err(TmError::ForeignConfiguration));
    }

    #[test]
    fn tape_relabel_matches_pointwise_definition() {
        let m = succ1();
        let one = m.symbol_named("1").unwrap();
        let orig = Tape::from_window(m.blank(), &[one], &[m.blank(), one, one]);
        for offset in [-3i64, -1, 0, 1, 2, 5] {
            let mut t = orig.clone();
            t.relabel(offset);
            for n in -10..10 {
                assert_eq!(t.get(n), orig.get(n + offset), "offset {offset} cell {n}");
            }
        }
    }

    #[test]
    fn trimming_is_idempotent_and_canonical() {
        let blank = SymId(0);
        let one = SymId(1);
        let a = Tape::from_window(blank, &[blank, blank], &[one, blank, blank]);
        let b = Tape::from_window(blank, &[], &[one]);
        assert_eq!(a, b);
        let mut c = a.clone();
        c.trim();
        assert_eq!(c, a);
    }
}
