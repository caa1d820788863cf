//! Register flowcharts: the intermediate form between expressions and
//! machines. Blocks hold straight-line register operations and end in a
//! jump, a decrement-or-branch, or a halt. The compiler introduces exactly
//! one control loop per recursion node and one per minimization node, which
//! is what the loop count measures.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{MuRecExpr, MurecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RegId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Op {
    Inc(RegId),
    Copy { src: RegId, dst: RegId },
    LoadConst { dst: RegId, value: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Terminator {
    Goto(BlockId),
    /// If the register is zero go to `on_zero`, otherwise decrement it and
    /// go to `on_dec`.
    DecJz {
        reg: RegId,
        on_zero: BlockId,
        on_dec: BlockId,
    },
    Halt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub ops: Vec<Op>,
    pub term: Terminator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flowchart {
    pub n_regs: usize,
    pub blocks: Vec<Block>,
    pub entry: BlockId,
    pub inputs: Vec<RegId>,
    pub outputs: Vec<RegId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowchartOutcome {
    Value(Vec<BigUint>),
    OutOfFuel,
}

impl Flowchart {
    /// Big-step register interpreter; one fuel unit per operation or branch.
    pub fn run(&self, args: &[BigUint], fuel: u64) -> Result<FlowchartOutcome, MurecError> {
        if args.len() != self.inputs.len() {
            return Err(MurecError::WrongArgCount {
                expected: self.inputs.len(),
                got: args.len(),
            });
        }
        let mut regs = vec![BigUint::zero(); self.n_regs];
        for (r, v) in self.inputs.iter().zip(args) {
            regs[r.0] = v.clone();
        }
        let mut fuel = fuel;
        let mut at = self.entry;
        loop {
            let block = &self.blocks[at.0];
            for op in &block.ops {
                if fuel == 0 {
                    return Ok(FlowchartOutcome::OutOfFuel);
                }
                fuel -= 1;
                match *op {
                    Op::Inc(r) => regs[r.0] += 1u32,
                    Op::Copy { src, dst } => regs[dst.0] = regs[src.0].clone(),
                    Op::LoadConst { dst, value } => regs[dst.0] = BigUint::from(value),
                }
            }
            if fuel == 0 {
                return Ok(FlowchartOutcome::OutOfFuel);
            }
            fuel -= 1;
            match block.term {
                Terminator::Goto(b) => at = b,
                Terminator::DecJz { reg, on_zero, on_dec } => {
                    if regs[reg.0].is_zero() {
                        at = on_zero;
                    } else {
                        regs[reg.0] -= 1u32;
                        at = on_dec;
                    }
                }
                Terminator::Halt => {
                    let out = self.outputs.iter().map(|r| regs[r.0].clone()).collect();
                    return Ok(FlowchartOutcome::Value(out));
                }
            }
        }
    }

    pub fn run_u64(&self, args: &[u64], fuel: u64) -> Result<FlowchartOutcome, MurecError> {
        let big: Vec<BigUint> = args.iter().map(|&a| BigUint::from(a)).collect();
        self.run(&big, fuel)
    }

    fn successors(&self, b: BlockId) -> Vec<BlockId> {
        match self.blocks[b.0].term {
            Terminator::Goto(t) => vec![t],
            Terminator::DecJz { on_dec, on_zero, .. } => vec![on_dec, on_zero],
            Terminator::Halt => vec![],
        }
    }

    /// Back edges of the depth-first walk from the entry, following each
    /// branch in its structural order. Counts edges into a block that is
    /// still on the walk's stack, which for these structured graphs is the
    /// number of loops and does not depend on block numbering.
    pub fn loop_count(&self) -> usize {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Grey,
            Black,
        }
        let mut color = vec![Color::White; self.blocks.len()];
        let mut back = 0usize;
        // iterative DFS with an explicit successor cursor
        let mut stack: Vec<(BlockId, usize)> = vec![(self.entry, 0)];
        color[self.entry.0] = Color::Grey;
        while let Some(&mut (b, ref mut cursor)) = stack.last_mut() {
            let succs = self.successors(b);
            if *cursor < succs.len() {
                let next = succs[*cursor];
                *cursor += 1;
                match color[next.0] {
                    Color::Grey => back += 1,
                    Color::White => {
                        color[next.0] = Color::Grey;
                        stack.push((next, 0));
                    }
                    Color::Black => {}
                }
            } else {
                color[b.0] = Color::Black;
                stack.pop();
            }
        }
        back
    }

    /// Same graph with blocks renumbered by the permutation; used to check
    /// that the loop count is an invariant of the graph, not the numbering.
    pub fn renumber(&self, perm: &[usize]) -> Flowchart {
        assert_eq!(perm.len(), self.blocks.len());
        let mut inv = vec![0usize; perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let map = |b: BlockId| BlockId(perm[b.0]);
        let mut blocks = vec![
            Block {
                ops: Vec::new(),
                term: Terminator::Halt,
            };
            self.blocks.len()
        ];
        for (old, block) in self.blocks.iter().enumerate() {
            let term = match block.term {
                Terminator::Goto(t) => Terminator::Goto(map(t)),
                Terminator::DecJz { reg, on_zero, on_dec } => Terminator::DecJz {
                    reg,
                    on_zero: map(on_zero),
                    on_dec: map(on_dec),
                },
                Terminator::Halt => Terminator::Halt,
            };
            blocks[perm[old]] = Block {
                ops: block.ops.clone(),
                term,
            };
        }
        Flowchart {
            n_regs: self.n_regs,
            blocks,
            entry: map(self.entry),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
    }
}

/// Emit the control graph in DOT.
pub fn flowchart_dot(fc: &Flowchart) -> String {
    let mut out = String::from("digraph flowchart {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, block) in fc.blocks.iter().enumerate() {
        let mut label = format!("b{i}");
        if i == fc.entry.0 {
            label.push_str(" (entry)");
        }
        for op in &block.ops {
            label.push_str("\\n");
            label.push_str(&match *op {
                Op::Inc(r) => format!("inc r{}", r.0),
                Op::Copy { src, dst } => format!("r{} := r{}", dst.0, src.0),
                Op::LoadConst { dst, value } => format!("r{} := {}", dst.0, value),
            });
        }
        out.push_str(&format!("  b{i} [label=\"{label}\"];\n"));
        match block.term {
            Terminator::Goto(t) => out.push_str(&format!("  b{i} -> b{};\n", t.0)),
            Terminator::DecJz { reg, on_zero, on_dec } => {
                out.push_str(&format!("  b{i} -> b{} [label=\"r{}>0\"];\n", on_dec.0, reg.0));
                out.push_str(&format!("  b{i} -> b{} [label=\"r{}=0\"];\n", on_zero.0, reg.0));
            }
            Terminator::Halt => out.push_str(&format!("  b{i} -> halt;\n")),
        }
    }
    out.push_str("  halt [shape=doublecircle];\n}\n");
    out
}

struct Builder {
    n_regs: usize,
    blocks: Vec<Block>,
    current: BlockId,
}

impl Builder {
    fn new(inputs: usize) -> Self {
        Builder {
            n_regs: inputs,
            blocks: vec![Block {
                ops: Vec::new(),
                term: Terminator::Halt,
            }],
            current: BlockId(0),
        }
    }

    fn alloc(&mut self) -> RegId {
        let r = RegId(self.n_regs);
        self.n_regs += 1;
        r
    }

    fn push(&mut self, op: Op) {
        self.blocks[self.current.0].ops.push(op);
    }

    fn new_block(&mut self) -> BlockId {
        self.blocks.push(Block {
            ops: Vec::new(),
            term: Terminator::Halt,
        });
        BlockId(self.blocks.len() - 1)
    }

    fn seal(&mut self, term: Terminator) {
        self.blocks[self.current.0].term = term;
    }

    fn switch_to(&mut self, b: BlockId) {
        self.current = b;
    }
}

/// Output registers of a fragment plus whether each one is owned by the
/// fragment (safe to overwrite) or an alias of a caller register.
struct EmitResult {
    locs: Vec<RegId>,
    owned: Vec<bool>,
}

fn emit(
    e: &MuRecExpr,
    inputs: &[RegId],
    designated: Option<RegId>,
    b: &mut Builder,
) -> EmitResult {
    match e {
        MuRecExpr::Const { value, .. } => {
            let dst = designated.unwrap_or_else(|| b.alloc());
            b.push(Op::LoadConst { dst, value: *value });
            EmitResult {
                locs: vec![dst],
                owned: vec![true],
            }
        }
        MuRecExpr::Succ => {
            let src = inputs[0];
            let dst = match designated {
                Some(d) => d,
                None => b.alloc(),
            };
            if src != dst {
                b.push(Op::Copy { src, dst });
            }
            b.push(Op::Inc(dst));
            EmitResult {
                locs: vec![dst],
                owned: vec![true],
            }
        }
        MuRecExpr::Proj { index, .. } => {
            let src = inputs[*index - 1];
            match designated {
                Some(d) if d != src => {
                    b.push(Op::Copy { src, dst: d });
                    EmitResult {
                        locs: vec![d],
                        owned: vec![true],
                    }
                }
                Some(d) => EmitResult {
                    locs: vec![d],
                    owned: vec![true],
                },
                None => EmitResult {
                    locs: vec![src],
                    owned: vec![false],
                },
            }
        }
        MuRecExpr::Tuple(fs) => {
            let mut locs = Vec::new();
            let mut owned = Vec::new();
            for f in fs {
                let r = emit(f, inputs, None, b);
                locs.push(r.locs[0]);
                owned.push(r.owned[0]);
            }
            EmitResult { locs, owned }
        }
        MuRecExpr::Compose { outer, inner } => {
            let mid = emit(inner, inputs, None, b);
            emit(outer, &mid.locs, designated, b)
        }
        MuRecExpr::PrimRec { base, step } => {
            let y_in = inputs[0];
            let rest = &inputs[1..];
            // the accumulator may sit in the caller's designated register as
            // long as that register is not also one of the loop's inputs
            let acc = match designated {
                Some(d) if !rest.contains(&d) => d,
                _ => b.alloc(),
            };
            let cnt = b.alloc();
            let idx = b.alloc();
            // bound must be copied before the base may clobber acc == y_in
            b.push(Op::Copy { src: y_in, dst: cnt });
            b.push(Op::LoadConst { dst: idx, value: 0 });
            let base_out = emit(base, rest, None, b);
            if base_out.locs[0] != acc {
                b.push(Op::Copy {
                    src: base_out.locs[0],
                    dst: acc,
                });
            }
            let head = b.new_block();
            let body = b.new_block();
            let done = b.new_block();
            b.seal(Terminator::Goto(head));
            b.switch_to(head);
            b.seal(Terminator::DecJz {
                reg: cnt,
                on_zero: done,
                on_dec: body,
            });
            b.switch_to(body);
            let mut step_inputs = vec![idx, acc];
            step_inputs.extend_from_slice(rest);
            let step_out = emit(step, &step_inputs, Some(acc), b);
            if step_out.locs[0] != acc {
                b.push(Op::Copy {
                    src: step_out.locs[0],
                    dst: acc,
                });
            }
            b.push(Op::Inc(idx));
            // the single back edge this recursion contributes
            b.seal(Terminator::Goto(head));
            b.switch_to(done);
            EmitResult {
                locs: vec![acc],
                owned: vec![true],
            }
        }
        MuRecExpr::Mu(f) => {
            let y = b.alloc();
            let probe_flag = b.alloc();
            b.push(Op::LoadConst { dst: y, value: 0 });
            let head = b.new_block();
            b.seal(Terminator::Goto(head));
            b.switch_to(head);
            let mut probe_inputs = vec![y];
            probe_inputs.extend_from_slice(inputs);
            let probe_out = emit(f, &probe_inputs, None, b);
            b.push(Op::Copy {
                src: probe_out.locs[0],
                dst: probe_flag,
            });
            let again = b.new_block();
            let done = b.new_block();
            b.seal(Terminator::DecJz {
                reg: probe_flag,
                on_zero: done,
                on_dec: again,
            });
            b.switch_to(again);
            b.push(Op::Inc(y));
            // the single back edge this minimization contributes
            b.seal(Terminator::Goto(head));
            b.switch_to(done);
            let out = EmitResult {
                locs: vec![y],
                owned: vec![true],
            };
            match designated {
                Some(d) if d != y => {
                    b.push(Op::Copy { src: y, dst: d });
                    EmitResult {
                        locs: vec![d],
                        owned: vec![true],
                    }
                }
                _ => out,
            }
        }
    }
}

/// Compile an expression into a register flowchart computing it.
pub fn compile_to_flowchart(e: &MuRecExpr) -> Result<Flowchart, MurecError> {
    let sig = e.signature()?;
    let mut b = Builder::new(sig.arity);
    let inputs: Vec<RegId> = (0..sig.arity).map(RegId).collect();
    let out = emit(e, &inputs, None, &mut b);
    b.seal(Terminator::Halt);
    Ok(Flowchart {
        n_regs: b.n_regs,
        blocks: b.blocks,
        entry: BlockId(0),
        inputs,
        outputs: out.locs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::murec::{eval_u64, EvalOutcome};

    fn single(outcome: FlowchartOutcome) -> u64 {
        match outcome {
            FlowchartOutcome::Value(vs) => {
                assert_eq!(vs.len(), 1);
                let d = vs[0].to_u64_digits();
                if d.is_empty() {
                    0
                } else {
                    d[0]
                }
            }
            FlowchartOutcome::OutOfFuel => panic!("ran out of fuel"),
        }
    }

    #[test]
    fn straight_line_for_succ() {
        let fc = compile_to_flowchart(&MuRecExpr::Succ).unwrap();
        assert_eq!(fc.loop_count(), 0);
        assert_eq!(single(fc.run_u64(&[4], 100).unwrap()), 5);
    }

    #[test]
    fn one_loop_per_recursion_node() {
        let add = compile_to_flowchart(&corpus::murec_add()).unwrap();
        assert_eq!(add.loop_count(), 1);
        let mul = compile_to_flowchart(&corpus::murec_mul()).unwrap();
        assert_eq!(mul.loop_count(), 2);
        let tsub = compile_to_flowchart(&corpus::murec_tsub()).unwrap();
        assert_eq!(tsub.loop_count(), 2);
        let mu = compile_to_flowchart(&corpus::murec_mu_identity()).unwrap();
        assert_eq!(mu.loop_count(), 3);
        assert_eq!(mu.loop_count(), corpus::murec_mu_identity().loop_nodes());
    }

    #[test]
    fn flowchart_agrees_with_interpreter() {
        for (name, e) in corpus::murec_suite() {
            let fc = compile_to_flowchart(&e).unwrap();
            let arity = e.signature().unwrap().arity;
            let grids: Vec<Vec<u64>> = match arity {
                1 => (0..=10).map(|x| vec![x]).collect(),
                2 => (0..=6)
                    .flat_map(|a| (0..=6).map(move |b| vec![a, b]))
                    .collect(),
                _ => panic!("unexpected arity"),
            };
            for args in grids {
                let by_eval = eval_u64(&e, &args, 1_000_000).unwrap();
                let by_fc = fc.run_u64(&args, 1_000_000).unwrap();
                match (by_eval, by_fc) {
                    (EvalOutcome::Value(v1), FlowchartOutcome::Value(v2)) => {
                        assert_eq!(v1, v2, "{name} on {args:?}")
                    }
                    (a, b) => panic!("{name} on {args:?}: eval {a:?} vs flowchart {b:?}"),
                }
            }
        }
    }

    #[test]
    fn nozero_minimization_spins() {
        let fc = compile_to_flowchart(&corpus::murec_mu_nozero()).unwrap();
        assert_eq!(fc.run_u64(&[0], 50_000).unwrap(), FlowchartOutcome::OutOfFuel);
    }

    #[test]
    fn loop_count_survives_renumbering() {
        let fc = compile_to_flowchart(&corpus::murec_mu_identity()).unwrap();
        let n = fc.blocks.len();
        // rotate and reverse permutations
        let rot: Vec<usize> = (0..n).map(|i| (i + 3) % n).collect();
        let rev: Vec<usize> = (0..n).rev().collect();
        for perm in [rot, rev] {
            let renum = fc.renumber(&perm);
            assert_eq!(renum.loop_count(), fc.loop_count());
            assert_eq!(single(renum.run_u64(&[5], 1_000_000).unwrap()), 5);
        }
    }

    #[test]
    fn dot_mentions_every_block() {
        let fc = compile_to_flowchart(&corpus::murec_add()).unwrap();
        let dot = flowchart_dot(&fc);
        for i in 0..fc.blocks.len() {
            assert!(dot.contains(&format!("b{i} ")));
        }
    }
}
