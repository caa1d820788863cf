//! Machine graphs and their thickenings.
//!
//! A machine's finite control is a directed labelled graph: one vertex per
//! state, one edge per transition. Thickening turns every vertex into a
//! disc carrying the Cantor model of encoded tapes and every edge into a
//! tube whose crossing acts by the edge's symbol rewrite and shift; the
//! trace of a point through the tubes is the reaching function, and the
//! graph's cycle rank is the topological budget of the computation.

mod skeleton;

pub use skeleton::{
    conjecture_csv, conjecture_report, thicken, BordismSkeleton, ConjectureRow, LengthComplexity,
    NumeralCodec, ReachOutcome, ReachTrace, ThickenOptions, Tube, TubeCrossing, POINT_TRACE_CAP,
};

use std::fmt::Write as _;

use thiserror::Error;

use crate::tm::{Rule, StateId, SymId, TuringMachine};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BordismError {
    #[error("machine is not reversible ({0}); pass the override to thicken it anyway")]
    NotReversible(String),
    #[error("tube lengths must be positive")]
    BadTubeLength,
    #[error("outgoing tubes of disc `{0}` overlap")]
    TubesOverlap(String),
    #[error("point lies in no outgoing tube of disc `{0}`: encoding mismatch")]
    SkeletonIntegrity(String),
    #[error("input {0} does not fit the skeleton's numeral codec")]
    BadInput(u64),
}

/// One labelled edge of the machine graph: read `a`, write `b`, shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: StateId,
    pub to: StateId,
    pub read: SymId,
    pub write: SymId,
    pub shift: crate::tm::Shift,
}

/// The finite-state diagram of a machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineGraph {
    vertices: usize,
    start: StateId,
    stops: Vec<StateId>,
    edges: Vec<GraphEdge>,
}

/// Read the graph off the transition table: one edge per (non-halting
/// state, symbol) pair.
pub fn build_graph(m: &TuringMachine) -> MachineGraph {
    let edges = m
        .transitions()
        .map(|(from, read, Rule { next, write, shift })| GraphEdge {
            from,
            to: next,
            read,
            write,
            shift,
        })
        .collect();
    MachineGraph {
        vertices: m.state_count(),
        start: m.initial(),
        stops: m.halting_states().collect(),
        edges,
    }
}

impl MachineGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn stops(&self) -> &[StateId] {
        &self.stops
    }

    /// Connected components of the underlying undirected graph, isolated
    /// vertices included.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for e in &self.edges {
            let a = find(&mut parent, e.from.0);
            let b = find(&mut parent, e.to.0);
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices)
            .filter(|&i| find(&mut parent, i) == i)
            .count()
    }

    /// First Betti number of the thickened graph: the cycle rank
    /// `E - V + C` of the underlying multigraph.
    pub fn betti1(&self) -> usize {
        self.edges.len() + self.components() - self.vertices
    }

    /// Independent route to the same number: grow a spanning forest and
    /// count the edges it rejects (each one closes a cycle).
    pub fn cycle_space_dim_by_forest(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        let mut rejected = 0usize;
        for e in &self.edges {
            let a = find(&mut parent, e.from.0);
            let b = find(&mut parent, e.to.0);
            if a == b {
                rejected += 1;
            } else {
                parent[a] = b;
            }
        }
        rejected
    }

    /// DOT rendering with start/stop styling and `read/write,shift` labels.
    pub fn to_dot(&self, m: &TuringMachine) -> String {
        let mut out = String::from("digraph machine {\n  rankdir=LR;\n");
        for q in m.states() {
            let name = m.state_name(q);
            let style = if self.stops.contains(&q) {
                "shape=doublecircle"
            } else if q == self.start {
                "shape=circle, style=bold"
            } else {
                "shape=circle"
            };
            let _ = writeln!(out, "  \"{name}\" [{style}];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}/{},{}\"];",
                m.state_name(e.from),
                m.state_name(e.to),
                m.symbol_name(e.read),
                m.symbol_name(e.write),
                e.shift
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::tm::{MachineSpec, Shift, TuringMachine};

    #[test]
    fn graph_reads_off_the_table() {
        let m = corpus::succ1();
        let g = build_graph(&m);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.components(), 1);
        assert_eq!(g.betti1(), 1);
    }

    #[test]
    fn four_symbol_one_state_graph() {
        // one working state over a four symbol alphabet: 4 edges, 2
        // vertices, connected, cycle rank 3
        let m = TuringMachine::build(MachineSpec {
            states: vec!["q0".into(), "qh".into()],
            initial: "q0".into(),
            halting: vec!["qh".into()],
            alphabet: vec!["_".into(), "a".into(), "b".into(), "c".into()],
            blank: "_".into(),
            transitions: vec![
                ("q0".into(), "_".into(), "q0".into(), "a".into(), Shift::Right),
                ("q0".into(), "a".into(), "q0".into(), "b".into(), Shift::Right),
                ("q0".into(), "b".into(), "q0".into(), "c".into(), Shift::Right),
                ("q0".into(), "c".into(), "qh".into(), "_".into(), Shift::Right),
            ],
        })
        .unwrap();
        let g = build_graph(&m);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 4));
        assert_eq!(g.betti1(), 3);
        assert_eq!(g.cycle_space_dim_by_forest(), 3);
    }

    #[test]
    fn unreachable_stop_counts_as_a_component() {
        let m = corpus::diverger();
        let g = build_graph(&m);
        // both transitions loop on q0; qh is isolated
        assert_eq!(g.components(), 2);
        assert_eq!(g.betti1(), 2 + 2 - 2);
    }

    #[test]
    fn add_machine_has_one_loop() {
        let g = build_graph(&corpus::add_machine());
        assert_eq!(g.betti1(), 1);
        assert_eq!(g.cycle_space_dim_by_forest(), 1);
    }

    #[test]
    fn dot_labels_edges() {
        let m = corpus::succ1();
        let dot = build_graph(&m).to_dot(&m);
        assert!(dot.contains("\"q0\" -> \"q0\" [label=\"1/1,R\"]"));
        assert!(dot.contains("doublecircle"));
    }
}
