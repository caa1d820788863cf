//! The partial recursive calculus: expression trees, a fuel-bounded
//! interpreter (the reference semantics everything else is tested against),
//! prime-power tupling, and a compiler through register flowcharts down to
//! single-tape machines.

mod backend;
mod flowchart;
mod parse;

pub use backend::{flowchart_to_tm, CompiledMachine, MachineOutcome, TapeIo};
pub use flowchart::{
    compile_to_flowchart, flowchart_dot, Block, BlockId, Flowchart, FlowchartOutcome, Op, RegId,
    Terminator,
};
pub use parse::{parse_expr, render_expr};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MurecError {
    #[error("projection index {index} out of range 1..={arity}")]
    BadProjection { index: usize, arity: usize },
    #[error("empty tuple")]
    EmptyTuple,
    #[error("tuple components must take the same arguments: {0} vs {1}")]
    TupleArityMismatch(usize, usize),
    #[error("tuple components must be single-valued")]
    TupleNested,
    #[error("composition mismatch: inner produces {produced}, outer consumes {consumed}")]
    ComposeMismatch { produced: usize, consumed: usize },
    #[error("recursion arity mismatch: base takes {base}, step takes {step} (need base + 2)")]
    PrimRecMismatch { base: usize, step: usize },
    #[error("recursion pieces must be single-valued")]
    PrimRecNested,
    #[error("minimized function must take at least one argument")]
    MuNullary,
    #[error("minimized function must be single-valued")]
    MuNested,
    #[error("expected {expected} arguments, got {got}")]
    WrongArgCount { expected: usize, got: usize },
    #[error("tuple encoding must be positive")]
    ZeroEncoding,
    #[error("value has prime factors beyond index {arity}")]
    MalformedEncoding { arity: usize },
    #[error("constant {0} too large for the machine backend (max {1})")]
    ConstTooLarge(u64, u64),
    #[error("machine backend supports single-valued functions, got {0} outputs")]
    MultiOutputBackend(usize),
    #[error("parse error at {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// Expression of the partial recursive calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuRecExpr {
    /// Constant function of the given arity.
    Const { value: u64, arity: usize },
    /// x + 1.
    Succ,
    /// i-th of n arguments, 1-based.
    Proj { index: usize, arity: usize },
    /// Componentwise bundle of single-valued functions.
    Tuple(Vec<MuRecExpr>),
    /// outer after inner.
    Compose { outer: Box<MuRecExpr>, inner: Box<MuRecExpr> },
    /// h(0, x) = base(x); h(y + 1, x) = step(y, h(y, x), x).
    PrimRec { base: Box<MuRecExpr>, step: Box<MuRecExpr> },
    /// Least y with f(y, x) = 0, probing upward and requiring every probed
    /// value to be defined.
    Mu(Box<MuRecExpr>),
}

/// Argument count and result count of a well-formed expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub arity: usize,
    pub outputs: usize,
}

impl MuRecExpr {
    pub fn constant(value: u64, arity: usize) -> Self {
        MuRecExpr::Const { value, arity }
    }

    pub fn proj(index: usize, arity: usize) -> Self {
        MuRecExpr::Proj { index, arity }
    }

    pub fn tuple(components: Vec<MuRecExpr>) -> Self {
        MuRecExpr::Tuple(components)
    }

    pub fn comp(outer: MuRecExpr, inner: MuRecExpr) -> Self {
        MuRecExpr::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    pub fn primrec(base: MuRecExpr, step: MuRecExpr) -> Self {
        MuRecExpr::PrimRec {
            base: Box::new(base),
            step: Box::new(step),
        }
    }

    pub fn mu(f: MuRecExpr) -> Self {
        MuRecExpr::Mu(Box::new(f))
    }

    /// Validate arities throughout and return the signature.
    pub fn signature(&self) -> Result<Signature, MurecError> {
        match self {
            MuRecExpr::Const { arity, .. } => Ok(Signature { arity: *arity, outputs: 1 }),
            MuRecExpr::Succ => Ok(Signature { arity: 1, outputs: 1 }),
            MuRecExpr::Proj { index, arity } => {
                if *index == 0 || index > arity {
                    return Err(MurecError::BadProjection {
                        index: *index,
                        arity: *arity,
                    });
                }
                Ok(Signature { arity: *arity, outputs: 1 })
            }
            MuRecExpr::Tuple(fs) => {
                let first = fs.first().ok_or(MurecError::EmptyTuple)?.signature()?;
                for f in fs {
                    let s = f.signature()?;
                    if s.outputs != 1 {
                        return Err(MurecError::TupleNested);
                    }
                    if s.arity != first.arity {
                        return Err(MurecError::TupleArityMismatch(first.arity, s.arity));
                    }
                }
                Ok(Signature {
                    arity: first.arity,
                    outputs: fs.len(),
                })
            }
            MuRecExpr::Compose { outer, inner } => {
                let si = inner.signature()?;
                let so = outer.signature()?;
                if so.arity != si.outputs {
                    return Err(MurecError::ComposeMismatch {
                        produced: si.outputs,
                        consumed: so.arity,
                    });
                }
                Ok(Signature {
                    arity: si.arity,
                    outputs: so.outputs,
                })
            }
            MuRecExpr::PrimRec { base, step } => {
                let sb = base.signature()?;
                let ss = step.signature()?;
                if sb.outputs != 1 || ss.outputs != 1 {
                    return Err(MurecError::PrimRecNested);
                }
                if ss.arity != sb.arity + 2 {
                    return Err(MurecError::PrimRecMismatch {
                        base: sb.arity,
                        step: ss.arity,
                    });
                }
                Ok(Signature {
                    arity: sb.arity + 1,
                    outputs: 1,
                })
            }
            MuRecExpr::Mu(f) => {
                let s = f.signature()?;
                if s.outputs != 1 {
                    return Err(MurecError::MuNested);
                }
                if s.arity == 0 {
                    return Err(MurecError::MuNullary);
                }
                Ok(Signature {
                    arity: s.arity - 1,
                    outputs: 1,
                })
            }
        }
    }

    /// Number of recursion and minimization nodes; compiled flowcharts carry
    /// exactly one control loop per such node.
    pub fn loop_nodes(&self) -> usize {
        match self {
            MuRecExpr::Const { .. } | MuRecExpr::Succ | MuRecExpr::Proj { .. } => 0,
            MuRecExpr::Tuple(fs) => fs.iter().map(|f| f.loop_nodes()).sum(),
            MuRecExpr::Compose { outer, inner } => outer.loop_nodes() + inner.loop_nodes(),
            MuRecExpr::PrimRec { base, step } => 1 + base.loop_nodes() + step.loop_nodes(),
            MuRecExpr::Mu(f) => 1 + f.loop_nodes(),
        }
    }
}

/// Interpreter result. `Undefined` is the definite bottom (a minimization
/// probe was undefined before any zero), `OutOfFuel` the honest "don't know
/// yet".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(Vec<BigUint>),
    Undefined,
    OutOfFuel,
}

impl EvalOutcome {
    pub fn single(&self) -> Option<&BigUint> {
        match self {
            EvalOutcome::Value(vs) if vs.len() == 1 => Some(&vs[0]),
            _ => None,
        }
    }
}

struct Budget {
    remaining: u64,
}

impl Budget {
    fn spend(&mut self) -> bool {
        if self.remaining == 0 {
            false
        } else {
            self.remaining -= 1;
            true
        }
    }
}

/// Evaluate with exact big-natural arithmetic. Every node visit costs one
/// unit of fuel, so minimization searches cannot spin forever.
pub fn eval(e: &MuRecExpr, args: &[BigUint], fuel: u64) -> Result<EvalOutcome, MurecError> {
    let sig = e.signature()?;
    if args.len() != sig.arity {
        return Err(MurecError::WrongArgCount {
            expected: sig.arity,
            got: args.len(),
        });
    }
    let mut budget = Budget { remaining: fuel };
    Ok(eval_in(e, args, &mut budget))
}

/// Convenience wrapper over u64 arguments and a single output.
pub fn eval_u64(e: &MuRecExpr, args: &[u64], fuel: u64) -> Result<EvalOutcome, MurecError> {
    let big: Vec<BigUint> = args.iter().map(|&a| BigUint::from(a)).collect();
    eval(e, &big, fuel)
}

fn eval_in(e: &MuRecExpr, args: &[BigUint], budget: &mut Budget) -> EvalOutcome {
    if !budget.spend() {
        return EvalOutcome::OutOfFuel;
    }
    match e {
        MuRecExpr::Const { value, .. } => EvalOutcome::Value(vec![BigUint::from(*value)]),
        MuRecExpr::Succ => EvalOutcome::Value(vec![&args[0] + 1u32]),
        MuRecExpr::Proj { index, .. } => EvalOutcome::Value(vec![args[*index - 1].clone()]),
        MuRecExpr::Tuple(fs) => {
            let mut out = Vec::with_capacity(fs.len());
            for f in fs {
                match eval_in(f, args, budget) {
                    EvalOutcome::Value(mut vs) => out.push(vs.pop().expect("single output")),
                    other => return other,
                }
            }
            EvalOutcome::Value(out)
        }
        MuRecExpr::Compose { outer, inner } => match eval_in(inner, args, budget) {
            EvalOutcome::Value(mid) => eval_in(outer, &mid, budget),
            other => other,
        },
        MuRecExpr::PrimRec { base, step } => {
            let y = &args[0];
            let rest = &args[1..];
            let mut acc = match eval_in(base, rest, budget) {
                EvalOutcome::Value(mut vs) => vs.pop().expect("single output"),
                other => return other,
            };
            let mut i = BigUint::zero();
            while &i < y {
                let mut step_args = Vec::with_capacity(rest.len() + 2);
                step_args.push(i.clone());
                step_args.push(acc);
                step_args.extend_from_slice(rest);
                acc = match eval_in(step, &step_args, budget) {
                    EvalOutcome::Value(mut vs) => vs.pop().expect("single output"),
                    other => return other,
                };
                i += 1u32;
            }
            EvalOutcome::Value(vec![acc])
        }
        MuRecExpr::Mu(f) => {
            let mut y = BigUint::zero();
            loop {
                let mut probe_args = Vec::with_capacity(args.len() + 1);
                probe_args.push(y.clone());
                probe_args.extend_from_slice(args);
                match eval_in(f, &probe_args, budget) {
                    EvalOutcome::Value(vs) => {
                        if vs[0].is_zero() {
                            return EvalOutcome::Value(vec![y]);
                        }
                    }
                    // an undefined probe empties the search set for good
                    EvalOutcome::Undefined => return EvalOutcome::Undefined,
                    EvalOutcome::OutOfFuel => return EvalOutcome::OutOfFuel,
                }
                y += 1u32;
            }
        }
    }
}

fn primes(count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if out.iter().all(|p| !n.is_multiple_of(*p)) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Prime-power tupling: (x1, .., xn) to p1^x1 ... pn^xn. The empty tuple
/// encodes to 1.
pub fn pair_encode(xs: &[BigUint]) -> BigUint {
    let ps = primes(xs.len());
    let mut out = BigUint::one();
    for (p, x) in ps.iter().zip(xs) {
        let mut e = BigUint::zero();
        while &e < x {
            out *= *p;
            e += 1u32;
        }
    }
    out
}

pub fn pair_encode_u64(xs: &[u64]) -> BigUint {
    let big: Vec<BigUint> = xs.iter().map(|&x| BigUint::from(x)).collect();
    pair_encode(&big)
}

/// Invert the tupling on the first `arity` primes. Fails on zero and on any
/// leftover factor beyond the expected primes.
pub fn pair_decode(n: &BigUint, arity: usize) -> Result<Vec<BigUint>, MurecError> {
    if n.is_zero() {
        return Err(MurecError::ZeroEncoding);
    }
    let ps = primes(arity);
    let mut rest = n.clone();
    let mut out = Vec::with_capacity(arity);
    for p in ps {
        let p = BigUint::from(p);
        let mut e = BigUint::zero();
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1u32;
        }
        out.push(e);
    }
    if !rest.is_one() {
        return Err(MurecError::MalformedEncoding { arity });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn value(outcome: EvalOutcome) -> u64 {
        match outcome {
            EvalOutcome::Value(vs) => {
                assert_eq!(vs.len(), 1);
                let digits = vs[0].to_u64_digits();
                if digits.is_empty() {
                    0
                } else {
                    digits[0]
                }
            }
            other => panic!("expected a value, got {other:?}"),
        }
    }

    #[test]
    fn successor_axiom() {
        assert_eq!(value(eval_u64(&MuRecExpr::Succ, &[3], 100).unwrap()), 4);
    }

    #[test]
    fn add_unrolls_the_recurrence() {
        let add = corpus::murec_add();
        assert_eq!(value(eval_u64(&add, &[2, 3], 1000).unwrap()), 5);
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(value(eval_u64(&add, &[a, b], 10_000).unwrap()), a + b);
            }
        }
    }

    #[test]
    fn mul_tsub_and_mu() {
        let mul = corpus::murec_mul();
        let tsub = corpus::murec_tsub();
        let mu_id = corpus::murec_mu_identity();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(value(eval_u64(&mul, &[a, b], 100_000).unwrap()), a * b);
                assert_eq!(value(eval_u64(&tsub, &[a, b], 100_000).unwrap()), a.saturating_sub(b));
            }
        }
        for x in 0..8 {
            assert_eq!(value(eval_u64(&mu_id, &[x], 100_000).unwrap()), x);
        }
    }

    #[test]
    fn empty_minimization_runs_out_of_fuel() {
        let nozero = corpus::murec_mu_nozero();
        assert_eq!(eval_u64(&nozero, &[7], 10_000).unwrap(), EvalOutcome::OutOfFuel);
    }

    #[test]
    fn primrec_matches_explicit_recurrence() {
        // independent oracle: unroll h(y, x) = step(y-1, h(y-1, x), x) by hand
        let add = corpus::murec_add();
        for y in 0..20u64 {
            for x in [0u64, 3, 7] {
                let mut acc = x; // base = proj(1,1)
                for i in 0..y {
                    let _ = i;
                    acc += 1; // step = succ . proj(2,3)
                }
                assert_eq!(value(eval_u64(&add, &[y, x], 10_000).unwrap()), acc);
            }
        }
    }

    #[test]
    fn arity_checks_fire_at_construction() {
        let bad = MuRecExpr::comp(MuRecExpr::Succ, MuRecExpr::tuple(vec![
            MuRecExpr::proj(1, 1),
            MuRecExpr::proj(1, 1),
        ]));
        assert!(matches!(bad.signature(), Err(MurecError::ComposeMismatch { .. })));
        assert!(matches!(
            MuRecExpr::proj(3, 2).signature(),
            Err(MurecError::BadProjection { .. })
        ));
        assert_eq!(
            eval_u64(&MuRecExpr::Succ, &[1, 2], 10),
            Err(MurecError::WrongArgCount { expected: 1, got: 2 })
        );
    }

    #[test]
    fn prime_tupling() {
        assert_eq!(pair_encode_u64(&[2, 1]), BigUint::from(12u32));
        assert_eq!(pair_encode_u64(&[]), BigUint::from(1u32));
        let decoded = pair_decode(&BigUint::from(12u32), 2).unwrap();
        assert_eq!(decoded, vec![BigUint::from(2u32), BigUint::from(1u32)]);
        // 12 = 2^2 * 3 has no factor 5, but a stray factor must be caught
        assert!(matches!(
            pair_decode(&BigUint::from(15u32), 1),
            Err(MurecError::MalformedEncoding { .. })
        ));
        assert!(matches!(pair_decode(&BigUint::zero(), 2), Err(MurecError::ZeroEncoding)));
    }

    #[test]
    fn loop_node_counts() {
        assert_eq!(MuRecExpr::Succ.loop_nodes(), 0);
        assert_eq!(corpus::murec_add().loop_nodes(), 1);
        assert_eq!(corpus::murec_mul().loop_nodes(), 2);
        assert_eq!(corpus::murec_tsub().loop_nodes(), 2);
        assert_eq!(corpus::murec_mu_identity().loop_nodes(), 3);
    }
}
