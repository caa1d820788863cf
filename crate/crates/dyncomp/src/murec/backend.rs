//! Flowchart-to-machine backend.
//!
//! Registers live on the tape as unary fields: value `v` is stored as
//! `v + 1` ones, fields are separated by single blanks, and the margins on
//! both sides are all blank, so two adjacent blanks mean "outside the
//! fields". The head parks on the first cell of field 0 between primitive
//! operations. Increment grows a field and bubbles the displaced separator
//! rightward; decrement erases the last one of a field and closes the gap
//! leftward. Everything else is lowered to those two primitives.

pub use crate::tm::TapeIoDoc as TapeIo;

use crate::tm::{MachineSpec, RunOutcome, Shift, SymId, Tape, TuringMachine};

use super::{Flowchart, MurecError, Op, RegId, Terminator};

/// Largest constant the backend will materialize as unrolled increments.
const MAX_CONST: u64 = 64;

/// A machine plus the field convention needed to feed it arguments and read
/// the result off the final tape.
#[derive(Debug, Clone)]
pub struct CompiledMachine {
    pub machine: TuringMachine,
    pub io: TapeIo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineOutcome {
    Value(u64),
    OutOfFuel,
}

impl CompiledMachine {
    /// Tape `1^(x1+1) _ 1^(x2+1) _ ... _ 1` with one field per register and
    /// the head on the first cell.
    pub fn input_tape(&self, args: &[u64]) -> Result<Tape, MurecError> {
        if args.len() != self.io.inputs {
            return Err(MurecError::WrongArgCount {
                expected: self.io.inputs,
                got: args.len(),
            });
        }
        let one = self.machine.symbol_named("1").expect("backend alphabet");
        let blank = self.machine.blank();
        let mut syms: Vec<SymId> = Vec::new();
        for f in 0..self.io.fields {
            if f > 0 {
                syms.push(blank);
            }
            let v = args.get(f).copied().unwrap_or(0);
            for _ in 0..=v {
                syms.push(one);
            }
        }
        Ok(self.machine.tape_from(&syms))
    }

    /// Parse the field layout off a halted tape and return the output field.
    pub fn decode_output(&self, tape: &Tape) -> Option<u64> {
        let one = self.machine.symbol_named("1")?;
        let blank = self.machine.blank();
        let mut pos: i64 = 0;
        let mut values = Vec::with_capacity(self.io.fields);
        for _ in 0..self.io.fields {
            let mut count = 0u64;
            while tape.get(pos) == one {
                count += 1;
                pos += 1;
            }
            if count == 0 {
                return None;
            }
            values.push(count - 1);
            if tape.get(pos) != blank {
                return None;
            }
            pos += 1;
        }
        values.get(self.io.output_field).copied()
    }

    /// Run on encoded arguments and decode the result.
    pub fn run_args(&self, args: &[u64], fuel: u64) -> Result<MachineOutcome, MurecError> {
        let tape = self.input_tape(args)?;
        let start = self.machine.start(tape);
        match self.machine.run(start, fuel).expect("compiled machine accepts its own tapes") {
            RunOutcome::Halted { config, .. } => {
                let v = self
                    .decode_output(&config.tape)
                    .expect("halted tape keeps the field layout");
                Ok(MachineOutcome::Value(v))
            }
            RunOutcome::OutOfFuel { .. } => Ok(MachineOutcome::OutOfFuel),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Micro(usize),
    Block(usize),
    Halt,
}

enum Micro {
    Inc { field: usize, next: Target },
    DecJz { field: usize, on_zero: Target, on_dec: Target },
}

struct Lowering {
    micros: Vec<Micro>,
    /// first micro of each block, or its terminator target when it has none
    block_entry: Vec<Option<Target>>,
    tmp: usize,
}

impl Lowering {
    fn push(&mut self, m: Micro) -> usize {
        self.micros.push(m);
        self.micros.len() - 1
    }

    fn zero(&mut self, field: usize, then: Target) -> Target {
        // Z: decjz field -> (zero: then, dec: Z)
        let z = self.push(Micro::DecJz {
            field,
            on_zero: then,
            on_dec: Target::Halt, // patched below
        });
        if let Micro::DecJz { on_dec, .. } = &mut self.micros[z] {
            *on_dec = Target::Micro(z);
        }
        Target::Micro(z)
    }

    fn incs(&mut self, field: usize, count: u64, then: Target) -> Target {
        let mut next = then;
        for _ in 0..count {
            let m = self.push(Micro::Inc { field, next });
            next = Target::Micro(m);
        }
        next
    }

    /// dst := src, preserving src through the scratch field.
    fn copy(&mut self, src: usize, dst: usize, then: Target) -> Target {
        let tmp = self.tmp;
        // restore loop: while tmp > 0 { tmp--; src++ }
        let r0 = self.push(Micro::DecJz {
            field: tmp,
            on_zero: then,
            on_dec: Target::Halt,
        });
        let r1 = self.push(Micro::Inc {
            field: src,
            next: Target::Micro(r0),
        });
        if let Micro::DecJz { on_dec, .. } = &mut self.micros[r0] {
            *on_dec = Target::Micro(r1);
        }
        // transfer loop: while src > 0 { src--; dst++; tmp++ }
        let t0 = self.push(Micro::DecJz {
            field: src,
            on_zero: Target::Micro(r0),
            on_dec: Target::Halt,
        });
        let t2 = self.push(Micro::Inc {
            field: tmp,
            next: Target::Micro(t0),
        });
        let t1 = self.push(Micro::Inc {
            field: dst,
            next: Target::Micro(t2),
        });
        if let Micro::DecJz { on_dec, .. } = &mut self.micros[t0] {
            *on_dec = Target::Micro(t1);
        }
        self.zero(dst, Target::Micro(t0))
    }
}

fn lower(fc: &Flowchart) -> Result<Lowering, MurecError> {
    let tmp = fc.n_regs;
    let mut lo = Lowering {
        micros: Vec::new(),
        block_entry: vec![None; fc.blocks.len()],
        tmp,
    };
    for (bi, block) in fc.blocks.iter().enumerate() {
        // lower back to front so each op knows its continuation
        let term_target = match block.term {
            Terminator::Goto(t) => Target::Block(t.0),
            Terminator::Halt => Target::Halt,
            Terminator::DecJz { reg, on_zero, on_dec } => {
                let m = lo.push(Micro::DecJz {
                    field: reg.0,
                    on_zero: Target::Block(on_zero.0),
                    on_dec: Target::Block(on_dec.0),
                });
                Target::Micro(m)
            }
        };
        let mut entry = term_target;
        for op in block.ops.iter().rev() {
            entry = match *op {
                Op::Inc(RegId(r)) => lo.incs(r, 1, entry),
                Op::LoadConst { dst, value } => {
                    if value > MAX_CONST {
                        return Err(MurecError::ConstTooLarge(value, MAX_CONST));
                    }
                    let after_zero = lo.incs(dst.0, value, entry);
                    lo.zero(dst.0, after_zero)
                }
                Op::Copy { src, dst } => lo.copy(src.0, dst.0, entry),
            };
        }
        lo.block_entry[bi] = Some(entry);
    }
    Ok(lo)
}

fn resolve(lo: &Lowering, mut t: Target) -> Target {
    let mut hops = 0;
    loop {
        match t {
            Target::Block(b) => {
                t = lo.block_entry[b].expect("all blocks lowered");
                hops += 1;
                assert!(hops <= lo.block_entry.len() + 1, "goto chain cycle");
            }
            other => return other,
        }
    }
}

struct MachineBuilder {
    states: Vec<String>,
    transitions: Vec<(String, String, String, String, Shift)>,
}

impl MachineBuilder {
    fn state(&mut self, name: String) -> String {
        if !self.states.contains(&name) {
            self.states.push(name.clone());
        }
        name
    }

    fn rule(&mut self, from: &str, read: &str, to: &str, write: &str, shift: Shift) {
        self.transitions
            .push((from.into(), read.into(), to.into(), write.into(), shift));
    }
}

/// Lower a flowchart to a single-tape two-symbol machine together with its
/// field calling convention. Multi-valued flowcharts are paired at the
/// calculus level instead and are rejected here.
pub fn flowchart_to_tm(fc: &Flowchart) -> Result<CompiledMachine, MurecError> {
    if fc.outputs.len() != 1 {
        return Err(MurecError::MultiOutputBackend(fc.outputs.len()));
    }
    let lo = lower(fc)?;
    let fields = fc.n_regs + 1; // plus the copy scratch

    let mut b = MachineBuilder {
        states: Vec::new(),
        transitions: Vec::new(),
    };

    let entry_name = |t: Target| -> String {
        match t {
            Target::Micro(i) => format!("m{i}w0"),
            Target::Halt => "halt".to_string(),
            Target::Block(_) => unreachable!("resolved before naming"),
        }
    };

    for (i, micro) in lo.micros.iter().enumerate() {
        let (field, walk_last) = match micro {
            Micro::Inc { field, .. } => (*field, *field),
            Micro::DecJz { field, .. } => (*field, *field),
        };
        assert!(field < fields);
        // walk states: m{i}w{f} crosses field f
        for f in 0..=walk_last {
            let name = b.state(format!("m{i}w{f}"));
            if f < walk_last {
                b.rule(&name, "1", &name, "1", Shift::Right);
                b.rule(&name, "_", &format!("m{i}w{}", f + 1), "_", Shift::Right);
                b.state(format!("m{i}w{}", f + 1));
            }
        }
        match micro {
            Micro::Inc { field, next } => {
                let wj = format!("m{i}w{field}");
                let sb = b.state(format!("m{i}sb"));
                let sc = b.state(format!("m{i}sc"));
                let r0 = b.state(format!("m{i}r0"));
                let r1 = b.state(format!("m{i}r1"));
                let rr = b.state(format!("m{i}rr"));
                let next = entry_name(resolve(&lo, *next));
                // extend the field over its separator, then bubble the
                // displaced content rightward (sb carries a blank, sc a one)
                b.rule(&wj, "1", &wj, "1", Shift::Right);
                b.rule(&wj, "_", &sb, "1", Shift::Right);
                b.rule(&sb, "1", &sc, "_", Shift::Right);
                b.rule(&sb, "_", &r0, "_", Shift::Left);
                b.rule(&sc, "1", &sc, "1", Shift::Right);
                b.rule(&sc, "_", &sb, "1", Shift::Right);
                // return to the home cell: two adjacent blanks mark the left margin
                b.rule(&r0, "1", &r0, "1", Shift::Left);
                b.rule(&r0, "_", &r1, "_", Shift::Left);
                b.rule(&r1, "1", &r0, "1", Shift::Left);
                b.rule(&r1, "_", &rr, "_", Shift::Right);
                b.rule(&rr, "_", &next, "_", Shift::Right);
            }
            Micro::DecJz { field, on_zero, on_dec } => {
                let wj = format!("m{i}w{field}");
                let pr = b.state(format!("m{i}pr"));
                let we = b.state(format!("m{i}we"));
                let er = b.state(format!("m{i}er"));
                let gc = b.state(format!("m{i}gc"));
                let gw = b.state(format!("m{i}gw"));
                let gr = b.state(format!("m{i}gr"));
                let g2 = b.state(format!("m{i}g2"));
                let sk = b.state(format!("m{i}sk"));
                let z = entry_name(resolve(&lo, *on_zero));
                let d = entry_name(resolve(&lo, *on_dec));
                let za = b.state(format!("m{i}za"));
                let zb = b.state(format!("m{i}zb"));
                let zc = b.state(format!("m{i}zc"));
                let da = b.state(format!("m{i}da"));
                let db = b.state(format!("m{i}db"));
                let dc = b.state(format!("m{i}dc"));
                // probe the second cell: a blank there means value zero
                b.rule(&wj, "1", &pr, "1", Shift::Right);
                b.rule(&pr, "_", &za, "_", Shift::Left);
                b.rule(&pr, "1", &we, "1", Shift::Right);
                // erase the last one of the field
                b.rule(&we, "1", &we, "1", Shift::Right);
                b.rule(&we, "_", &er, "_", Shift::Left);
                b.rule(&er, "1", &gc, "_", Shift::Right);
                // close the gap: shift the suffix left cell by cell
                b.rule(&gc, "1", &gw, "_", Shift::Left);
                b.rule(&gc, "_", &g2, "_", Shift::Right);
                b.rule(&gw, "_", &gr, "1", Shift::Right);
                b.rule(&gr, "_", &gc, "_", Shift::Right);
                b.rule(&g2, "1", &gw, "_", Shift::Left);
                b.rule(&g2, "_", &sk, "_", Shift::Left);
                // skip the right margin, then walk home
                b.rule(&sk, "_", &sk, "_", Shift::Left);
                b.rule(&sk, "1", &da, "1", Shift::Left);
                for (a0, a1, a2, target) in [(&za, &zb, &zc, &z), (&da, &db, &dc, &d)] {
                    b.rule(a0, "1", a0, "1", Shift::Left);
                    b.rule(a0, "_", a1, "_", Shift::Left);
                    b.rule(a1, "1", a0, "1", Shift::Left);
                    b.rule(a1, "_", a2, "_", Shift::Right);
                    b.rule(a2, "_", target, "_", Shift::Right);
                }
            }
        }
    }

    let initial = match lo.block_entry[fc.entry.0] {
        Some(t) => entry_name(resolve(&lo, t)),
        None => "halt".to_string(),
    };
    let initial = if initial == "halt" {
        // nothing to execute: bounce off the home cell and stop
        let q0 = b.state("boot0".to_string());
        let q1 = b.state("boot1".to_string());
        b.rule(&q0, "1", &q1, "1", Shift::Left);
        b.rule(&q1, "_", "halt", "_", Shift::Right);
        q0
    } else {
        initial
    };

    let mut states = b.states.clone();
    states.push("halt".to_string());
    // total transition table: anything not reachable self-loops
    let mut transitions = b.transitions.clone();
    for q in &b.states {
        for a in ["_", "1"] {
            if !transitions.iter().any(|(tq, ta, ..)| tq == q && ta == a) {
                transitions.push((q.clone(), a.into(), q.clone(), a.into(), Shift::Right));
            }
        }
    }

    let machine = TuringMachine::build(MachineSpec {
        states,
        initial,
        halting: vec!["halt".to_string()],
        alphabet: vec!["_".to_string(), "1".to_string()],
        blank: "_".to_string(),
        transitions,
    })
    .expect("backend emits well-formed machines");

    Ok(CompiledMachine {
        machine,
        io: TapeIo {
            inputs: fc.inputs.len(),
            output_field: fc.outputs[0].0,
            fields,
        },
    })
}
