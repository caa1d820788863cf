//! Line-oriented machine format and its JSON twin.
//!
//! ```text
//! states: q0 qh
//! initial: q0
//! halting: qh
//! alphabet: _ 1
//! blank: _
//! q0 1 -> q0 1 R
//! q0 _ -> qh 1 R
//! ```
//!
//! Optional `io-inputs:`, `io-output-field:` and `io-fields:` headers carry
//! the register-field calling convention of compiled machines.

use serde::{Deserialize, Serialize};

use super::{MachineSpec, Shift, TmError, TuringMachine};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MachineDoc {
    pub states: Vec<String>,
    pub initial: String,
    pub halting: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    pub transitions: Vec<TransitionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub io: Option<TapeIoDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TransitionDoc {
    pub state: String,
    pub read: String,
    pub next: String,
    pub write: String,
    pub shift: char,
}

/// Register-field I/O convention for machines produced by the flowchart
/// backend: how many input fields, which field holds the output, and how
/// many fields exist in total.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct TapeIoDoc {
    pub inputs: usize,
    pub output_field: usize,
    pub fields: usize,
}

fn shift_from_char(c: char, line: usize) -> Result<Shift, TmError> {
    match c {
        'L' => Ok(Shift::Left),
        'R' => Ok(Shift::Right),
        other => Err(TmError::Parse {
            line,
            msg: format!("shift must be L or R, got `{other}`"),
        }),
    }
}

/// Parse the line-oriented format. Returns the machine and any optional
/// io headers found.
pub fn parse_machine(input: &str) -> Result<(TuringMachine, Option<TapeIoDoc>), TmError> {
    let mut states = None;
    let mut initial = None;
    let mut halting = None;
    let mut alphabet = None;
    let mut blank = None;
    let mut transitions = Vec::new();
    let mut io_inputs = None;
    let mut io_output = None;
    let mut io_fields = None;

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let header = |rest: &str| -> Vec<String> {
            rest.split_whitespace().map(|s| s.to_string()).collect()
        };
        if let Some(rest) = line.strip_prefix("states:") {
            states = Some(header(rest));
        } else if let Some(rest) = line.strip_prefix("initial:") {
            initial = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("halting:") {
            halting = Some(header(rest));
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            alphabet = Some(header(rest));
        } else if let Some(rest) = line.strip_prefix("blank:") {
            blank = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("io-inputs:") {
            io_inputs = parse_usize(rest, line_no)?;
        } else if let Some(rest) = line.strip_prefix("io-output-field:") {
            io_output = parse_usize(rest, line_no)?;
        } else if let Some(rest) = line.strip_prefix("io-fields:") {
            io_fields = parse_usize(rest, line_no)?;
        } else {
            // transition: q a -> q' a' s
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| TmError::Parse {
                line: line_no,
                msg: "expected `q a -> q' a' s`".into(),
            })?;
            let l: Vec<&str> = lhs.split_whitespace().collect();
            let r: Vec<&str> = rhs.split_whitespace().collect();
            if l.len() != 2 || r.len() != 3 {
                return Err(TmError::Parse {
                    line: line_no,
                    msg: "expected `q a -> q' a' s`".into(),
                });
            }
            let shift_txt = r[2];
            if shift_txt.chars().count() != 1 {
                return Err(TmError::Parse {
                    line: line_no,
                    msg: format!("shift must be L or R, got `{shift_txt}`"),
                });
            }
            let shift = shift_from_char(shift_txt.chars().next().unwrap(), line_no)?;
            transitions.push((
                l[0].to_string(),
                l[1].to_string(),
                r[0].to_string(),
                r[1].to_string(),
                shift,
            ));
        }
    }

    let missing = |what: &str| TmError::Parse {
        line: 0,
        msg: format!("missing `{what}:` header"),
    };
    let spec = MachineSpec {
        states: states.ok_or_else(|| missing("states"))?,
        initial: initial.ok_or_else(|| missing("initial"))?,
        halting: halting.ok_or_else(|| missing("halting"))?,
        alphabet: alphabet.ok_or_else(|| missing("alphabet"))?,
        blank: blank.ok_or_else(|| missing("blank"))?,
        transitions,
    };
    let io = match (io_inputs, io_output, io_fields) {
        (Some(inputs), Some(output_field), Some(fields)) => Some(TapeIoDoc {
            inputs,
            output_field,
            fields,
        }),
        (None, None, None) => None,
        _ => {
            return Err(TmError::Parse {
                line: 0,
                msg: "io headers must appear together (io-inputs, io-output-field, io-fields)".into(),
            })
        }
    };
    Ok((TuringMachine::build(spec)?, io))
}

fn parse_usize(s: &str, line: usize) -> Result<Option<usize>, TmError> {
    s.trim()
        .parse::<usize>()
        .map(Some)
        .map_err(|e| TmError::Parse {
            line,
            msg: format!("expected a number: {e}"),
        })
}

pub fn render_machine(m: &TuringMachine, io: Option<TapeIoDoc>) -> String {
    let mut out = String::new();
    let names: Vec<&str> = m.states().map(|q| m.state_name(q)).collect();
    out.push_str(&format!("states: {}\n", names.join(" ")));
    out.push_str(&format!("initial: {}\n", m.state_name(m.initial())));
    let halting: Vec<&str> = m.halting_states().map(|q| m.state_name(q)).collect();
    out.push_str(&format!("halting: {}\n", halting.join(" ")));
    let alpha: Vec<&str> = m.symbols().map(|a| m.symbol_name(a)).collect();
    out.push_str(&format!("alphabet: {}\n", alpha.join(" ")));
    out.push_str(&format!("blank: {}\n", m.symbol_name(m.blank())));
    if let Some(io) = io {
        out.push_str(&format!("io-inputs: {}\n", io.inputs));
        out.push_str(&format!("io-output-field: {}\n", io.output_field));
        out.push_str(&format!("io-fields: {}\n", io.fields));
    }
    for (q, a, rule) in m.transitions() {
        out.push_str(&format!(
            "{} {} -> {} {} {}\n",
            m.state_name(q),
            m.symbol_name(a),
            m.state_name(rule.next),
            m.symbol_name(rule.write),
            rule.shift
        ));
    }
    out
}

pub fn machine_to_json(m: &TuringMachine, io: Option<TapeIoDoc>) -> String {
    let doc = MachineDoc {
        states: m.states().map(|q| m.state_name(q).to_string()).collect(),
        initial: m.state_name(m.initial()).to_string(),
        halting: m.halting_states().map(|q| m.state_name(q).to_string()).collect(),
        alphabet: m.symbols().map(|a| m.symbol_name(a).to_string()).collect(),
        blank: m.symbol_name(m.blank()).to_string(),
        transitions: m
            .transitions()
            .map(|(q, a, r)| TransitionDoc {
                state: m.state_name(q).to_string(),
                read: m.symbol_name(a).to_string(),
                next: m.state_name(r.next).to_string(),
                write: m.symbol_name(r.write).to_string(),
                shift: r.shift.letter(),
            })
            .collect(),
        io,
    };
    serde_json::to_string_pretty(&doc).expect("machine docs serialize")
}

pub fn machine_from_json(input: &str) -> Result<(TuringMachine, Option<TapeIoDoc>), TmError> {
    let doc: MachineDoc = serde_json::from_str(input).map_err(|e| TmError::Parse {
        line: 0,
        msg: format!("json: {e}"),
    })?;
    let mut transitions = Vec::new();
    for t in &doc.transitions {
        transitions.push((
            t.state.clone(),
            t.read.clone(),
            t.next.clone(),
            t.write.clone(),
            shift_from_char(t.shift, 0)?,
        ));
    }
    let spec = MachineSpec {
        states: doc.states,
        initial: doc.initial,
        halting: doc.halting,
        alphabet: doc.alphabet,
        blank: doc.blank,
        transitions,
    };
    Ok((TuringMachine::build(spec)?, doc.io))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn text_round_trip() {
        let m = corpus::succ1();
        let txt = render_machine(&m, None);
        let (back, io) = parse_machine(&txt).unwrap();
        assert_eq!(back, m);
        assert!(io.is_none());
    }

    #[test]
    fn json_round_trip_with_io() {
        let m = corpus::add_machine();
        let io = Some(TapeIoDoc {
            inputs: 2,
            output_field: 3,
            fields: 5,
        });
        let json = machine_to_json(&m, io);
        let (back, io2) = machine_from_json(&json).unwrap();
        assert_eq!(back, m);
        assert_eq!(io2, io);
    }

    #[test]
    fn parse_reports_bad_lines() {
        let err = parse_machine("states: a b\ninitial: a\nhalting: b\nalphabet: _\nblank: _\na _ -> b _ X\n");
        assert!(matches!(err, Err(TmError::Parse { line: 6, .. })));
    }
}
