//! Thickened machine graphs and the reaching function.
//!
//! Every disc carries the Cantor model of the tape alone (the control state
//! is which disc you are on), so the tube of a transition acts by rewriting
//! the head symbol's code and relabeling by a whole code width. A point
//! entering the start disc crosses one tube per machine step and leaves at
//! a halting disc with the output tape; fuel bounds the walk because true
//! divergence is not decidable.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{build_graph, BordismError, GraphEdge, MachineGraph};
use crate::cantor::{kappa, rewrite_shift_blockmap, BlockMap, CantorPoint};
use crate::gshift::{BiWord, Encoding};
use crate::tm::{SymId, Tape, TuringMachine};

/// How naturals are laid out on an input tape and read off an output tape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumeralCodec {
    /// `n` ones; output is the number of ones.
    Unary,
    /// `1^a _ 1^b`; output is the number of ones.
    UnaryPair,
    /// Binary digits, least significant at the head; output reads the
    /// nonnegative half back as binary.
    Binary,
}

impl NumeralCodec {
    pub fn arity(&self) -> usize {
        match self {
            NumeralCodec::UnaryPair => 2,
            _ => 1,
        }
    }

    pub fn encode_tape(&self, m: &TuringMachine, args: &[u64]) -> Result<Tape, BordismError> {
        let one = m
            .symbol_named("1")
            .ok_or(BordismError::BadInput(*args.first().unwrap_or(&0)))?;
        match (self, args) {
            (NumeralCodec::Unary, [n]) => Ok(m.tape_from(&vec![one; *n as usize])),
            (NumeralCodec::UnaryPair, [a, b]) => {
                let mut syms = vec![one; *a as usize];
                syms.push(m.blank());
                syms.extend(vec![one; *b as usize]);
                Ok(m.tape_from(&syms))
            }
            (NumeralCodec::Binary, [n]) => {
                let word = BiWord::from_natural_binary(*n);
                let (_, nonneg) = word.halves();
                let syms: Vec<SymId> =
                    nonneg.iter().map(|&b| if b { one } else { m.blank() }).collect();
                Ok(m.tape_from(&syms))
            }
            _ => Err(BordismError::BadInput(*args.first().unwrap_or(&0))),
        }
    }

    pub fn decode_tape(&self, m: &TuringMachine, tape: &Tape) -> Option<u64> {
        let one = m.symbol_named("1")?;
        match self {
            NumeralCodec::Unary | NumeralCodec::UnaryPair => Some(tape.count(one) as u64),
            NumeralCodec::Binary => {
                let mut bits = Vec::new();
                for n in 0..tape.support_hi() {
                    bits.push(tape.get(n) == one);
                }
                BiWord::from_halves(Vec::new(), bits).to_natural_binary()
            }
        }
    }
}

/// A thickened edge: the crossing map and the tube's metric length.
#[derive(Debug, Clone)]
pub struct Tube {
    pub edge: GraphEdge,
    pub map: BlockMap,
    pub length: BigRational,
}

#[derive(Debug, Clone)]
pub struct BordismSkeleton {
    machine: TuringMachine,
    graph: MachineGraph,
    enc: Encoding,
    codec: NumeralCodec,
    tubes: Vec<Tube>,
}

#[derive(Debug, Clone)]
pub struct ThickenOptions {
    /// Accept machines whose step map is not injective; the reaching
    /// function and lengths stay meaningful, only the embedding loses
    /// injectivity.
    pub allow_irreversible: bool,
    pub tube_length: BigRational,
    pub codec: NumeralCodec,
}

impl ThickenOptions {
    pub fn reversible(codec: NumeralCodec) -> Self {
        ThickenOptions {
            allow_irreversible: false,
            tube_length: BigRational::one(),
            codec,
        }
    }

    pub fn overridden(codec: NumeralCodec) -> Self {
        ThickenOptions {
            allow_irreversible: true,
            tube_length: BigRational::one(),
            codec,
        }
    }
}

/// Thicken the machine graph: one disc per state, one tube per transition.
pub fn thicken(m: &TuringMachine, opts: ThickenOptions) -> Result<BordismSkeleton, BordismError> {
    if !opts.allow_irreversible {
        if let Err(witness) = m.check_reversible() {
            return Err(BordismError::NotReversible(witness.describe(m)));
        }
    }
    if !opts.tube_length.is_positive() {
        return Err(BordismError::BadTubeLength);
    }
    let enc = Encoding::canonical(m);
    let graph = build_graph(m);
    let w = enc.sym_width() as i64;
    let mut tubes = Vec::with_capacity(graph.edge_count());
    for e in graph.edges() {
        let map = rewrite_shift_blockmap(
            enc.sym_code(e.read),
            enc.sym_code(e.write),
            e.shift.offset() * w,
        )
        .expect("tube maps are well-formed block maps");
        let volume = map.check_volume();
        debug_assert!(volume.ok(), "tube map must preserve volume");
        tubes.push(Tube {
            edge: *e,
            map,
            length: opts.tube_length.clone(),
        });
    }
    let sk = BordismSkeleton {
        machine: m.clone(),
        graph,
        enc,
        codec: opts.codec,
        tubes,
    };
    sk.check_tube_disjointness()?;
    Ok(sk)
}

/// One recorded tube crossing. Entry points are materialized for the first
/// [`POINT_TRACE_CAP`] crossings; long diverging walks keep only the edges.
#[derive(Debug, Clone)]
pub struct TubeCrossing {
    pub edge: usize,
    pub entry: Option<CantorPoint>,
}

pub const POINT_TRACE_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReachOutcome {
    Reached(u64),
    Diverged { fuel: u64 },
}

#[derive(Debug, Clone)]
pub struct ReachTrace {
    pub input: Vec<u64>,
    pub path: Vec<TubeCrossing>,
    pub outcome: ReachOutcome,
    pub steps: u64,
    pub length: LengthComplexity,
}

/// Total tube length of the walk, or the marker for walks that never leave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LengthComplexity {
    Finite(BigRational),
    Unbounded,
}

impl LengthComplexity {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            LengthComplexity::Finite(l) => Some(l),
            LengthComplexity::Unbounded => None,
        }
    }
}

impl std::fmt::Display for LengthComplexity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LengthComplexity::Finite(l) => write!(f, "{l}"),
            LengthComplexity::Unbounded => write!(f, "inf"),
        }
    }
}

impl BordismSkeleton {
    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    pub fn graph(&self) -> &MachineGraph {
        &self.graph
    }

    pub fn encoding(&self) -> &Encoding {
        &self.enc
    }

    pub fn codec(&self) -> NumeralCodec {
        self.codec
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    /// Same skeleton with every tube length multiplied by the factor.
    pub fn rescale_metric(&self, factor: &BigRational) -> Result<BordismSkeleton, BordismError> {
        if !factor.is_positive() {
            return Err(BordismError::BadTubeLength);
        }
        let mut out = self.clone();
        for tube in &mut out.tubes {
            tube.length *= factor;
        }
        Ok(out)
    }

    /// Outgoing tubes of every disc must occupy pairwise disjoint source
    /// blocks.
    fn check_tube_disjointness(&self) -> Result<(), BordismError> {
        for q in self.machine.states() {
            let outgoing: Vec<&Tube> = self
                .tubes
                .iter()
                .filter(|t| t.edge.from == q)
                .collect();
            for (i, a) in outgoing.iter().enumerate() {
                for b in &outgoing[i + 1..] {
                    for pa in a.map.pieces() {
                        for pb in b.map.pieces() {
                            if pa.source.overlaps(&pb.source) {
                                return Err(BordismError::TubesOverlap(
                                    self.machine.state_name(q).to_string(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Tape cells as a word of symbol codes around position 0, the disc
    /// model of a configuration with its state stripped.
    pub fn tape_word(&self, tape: &Tape) -> BiWord {
        let w = self.enc.sym_width() as i64;
        let mut out = BiWord::zero();
        for n in 0..tape.support_hi().max(0) {
            for (j, &b) in self.enc.sym_code(tape.get(n)).iter().enumerate() {
                if b {
                    out.set(n * w + j as i64, true);
                }
            }
        }
        let lo = tape.support_lo().min(0);
        for k in 1..=(-lo) {
            for (j, &b) in self.enc.sym_code(tape.get(-k)).iter().enumerate() {
                if b {
                    out.set(-k * w + j as i64, true);
                }
            }
        }
        out
    }

    /// Parse a disc word back into a tape.
    pub fn word_tape(&self, word: &BiWord) -> Option<Tape> {
        let w = self.enc.sym_width() as i64;
        let support = word.support();
        let max_pos = support.iter().copied().max().unwrap_or(0).max(-1);
        let min_pos = support.iter().copied().min().unwrap_or(0).min(0);
        let read = |at: i64| -> Vec<bool> { (0..w).map(|j| word.get(at + j)).collect() };
        let mut right = Vec::new();
        let mut off = 0i64;
        while off <= max_pos {
            right.push(self.enc.symbol_decode(&read(off))?);
            off += w;
        }
        let mut left = Vec::new();
        let mut off = -w;
        while off > min_pos - w {
            left.push(self.enc.symbol_decode(&read(off))?);
            off -= w;
        }
        Some(Tape::from_window(self.machine.blank(), &left, &right))
    }

    fn cross_word(&self, tube: &Tube, word: &BiWord) -> BiWord {
        let w = self.enc.sym_width() as i64;
        let mut out = word.clone();
        for (j, &b) in self.enc.sym_code(tube.edge.write).iter().enumerate() {
            out.set(j as i64, b);
        }
        out.relabel(tube.edge.shift.offset() * w)
    }

    /// Walk a point from the start disc: repeatedly take the unique tube
    /// whose source block contains it, until a halting disc or the fuel is
    /// spent.
    pub fn reach(&self, args: &[u64], fuel: u64) -> Result<ReachTrace, BordismError> {
        let tape = self.codec.encode_tape(&self.machine, args)?;
        self.reach_tape(args.to_vec(), tape, fuel)
    }

    pub fn reach_tape(
        &self,
        input: Vec<u64>,
        tape: Tape,
        fuel: u64,
    ) -> Result<ReachTrace, BordismError> {
        let mut word = self.tape_word(&tape);
        let mut disc = self.graph.start();
        let mut path: Vec<TubeCrossing> = Vec::new();
        let mut length = BigRational::zero();
        let mut steps = 0u64;
        loop {
            if self.machine.is_halting(disc) {
                let out_tape = self
                    .word_tape(&word)
                    .expect("tube crossings preserve the symbol-code layout");
                let value = self
                    .codec
                    .decode_tape(&self.machine, &out_tape)
                    .expect("output tape decodes under the skeleton codec");
                return Ok(ReachTrace {
                    input,
                    path,
                    outcome: ReachOutcome::Reached(value),
                    steps,
                    length: LengthComplexity::Finite(length),
                });
            }
            if steps == fuel {
                return Ok(ReachTrace {
                    input,
                    path,
                    outcome: ReachOutcome::Diverged { fuel },
                    steps,
                    length: LengthComplexity::Unbounded,
                });
            }
            let mut chosen: Option<usize> = None;
            for (i, tube) in self.tubes.iter().enumerate() {
                if tube.edge.from == disc
                    && tube.map.pieces().iter().any(|p| p.source.contains_word(&word))
                {
                    chosen = Some(i);
                    break;
                }
            }
            let i = chosen.ok_or_else(|| {
                BordismError::SkeletonIntegrity(self.machine.state_name(disc).to_string())
            })?;
            let entry = if path.len() < POINT_TRACE_CAP {
                Some(kappa(&word))
            } else {
                None
            };
            path.push(TubeCrossing { edge: i, entry });
            let tube = &self.tubes[i];
            word = self.cross_word(tube, &word);
            length += &tube.length;
            disc = tube.edge.to;
            steps += 1;
        }
    }

    /// Total tube length along the reaching walk.
    pub fn length_complexity(
        &self,
        args: &[u64],
        fuel: u64,
    ) -> Result<LengthComplexity, BordismError> {
        Ok(self.reach(args, fuel)?.length)
    }

    /// Text log of a trace: one line per crossing.
    pub fn trace_log(&self, trace: &ReachTrace) -> String {
        let mut out = format!(
            "input {:?}: {} steps, length {}\n",
            trace.input, trace.steps, trace.length
        );
        for (k, crossing) in trace.path.iter().enumerate() {
            let e = &self.tubes[crossing.edge].edge;
            let point = match &crossing.entry {
                Some(p) => format!(" at ({}, {})", p.x, p.y),
                None => String::new(),
            };
            out.push_str(&format!(
                "  {k}: {} --{}/{},{}--> {}{point}\n",
                self.machine.state_name(e.from),
                self.machine.symbol_name(e.read),
                self.machine.symbol_name(e.write),
                e.shift,
                self.machine.state_name(e.to),
            ));
        }
        match &trace.outcome {
            ReachOutcome::Reached(v) => out.push_str(&format!("reached output {v}\n")),
            ReachOutcome::Diverged { fuel } => {
                out.push_str(&format!("diverged (fuel {fuel})\n"))
            }
        }
        out
    }

    /// CSV row `input, outcome, steps, length`.
    pub fn trace_csv_row(&self, trace: &ReachTrace) -> String {
        let input = trace
            .input
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";");
        match &trace.outcome {
            ReachOutcome::Reached(v) => {
                format!("{input},reached:{v},{},{}", trace.steps, trace.length)
            }
            ReachOutcome::Diverged { .. } => {
                format!("{input},diverged,{},inf", trace.steps)
            }
        }
    }
}

/// One row of the length-versus-steps table.
#[derive(Debug, Clone)]
pub struct ConjectureRow {
    pub input: Vec<u64>,
    pub length: LengthComplexity,
    pub machine_steps: Option<u64>,
    pub ratio: Option<BigRational>,
}

/// Compare the walk length against the machine's own step count on a range
/// of inputs. Diverging inputs are kept as marker rows.
pub fn conjecture_report(
    sk: &BordismSkeleton,
    inputs: &[Vec<u64>],
    fuel: u64,
) -> Result<Vec<ConjectureRow>, BordismError> {
    let mut rows = Vec::with_capacity(inputs.len());
    for args in inputs {
        let trace = sk.reach(args, fuel)?;
        let tape = sk.codec().encode_tape(sk.machine(), args)?;
        let run = sk
            .machine()
            .run(sk.machine().start(tape), fuel)
            .expect("skeleton machine accepts its own tapes");
        let machine_steps = run.halted_steps();
        let ratio = match (&trace.length, machine_steps) {
            (LengthComplexity::Finite(l), Some(t)) if t > 0 => {
                Some(l / BigRational::from_integer(t.into()))
            }
            _ => None,
        };
        rows.push(ConjectureRow {
            input: args.clone(),
            length: trace.length,
            machine_steps,
            ratio,
        });
    }
    Ok(rows)
}

pub fn conjecture_csv(rows: &[ConjectureRow]) -> String {
    let mut out = String::from("input,length,machine_steps,ratio\n");
    for row in rows {
        let input = row
            .input
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let steps = row
            .machine_steps
            .map(|s| s.to_string())
            .unwrap_or_else(|| "inf".into());
        let ratio = row
            .ratio
            .as_ref()
            .map(|r| r.to_string())
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!("{input},{},{steps},{ratio}\n", row.length));
    }
    out
}
