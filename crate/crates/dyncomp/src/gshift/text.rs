//! Textual forms: the shift rule table and binary word literals.
//!
//! A shift serializes as one line per window, `w -> G(w) F(w)`, preceded by
//! a `window:` header carrying the start index and length. Words are written
//! `...000 | 101...` with the bar marking position 0 (digits left of the bar
//! end at index -1).

use super::{bits_string, window_bits, BiWord, GeneralizedShift, GshiftError, WindowRule};

pub fn render_shift(s: &GeneralizedShift) -> String {
    let mut out = format!("window: {} {}\n", s.window_start(), s.window_len());
    for (w, rule) in s.rules() {
        out.push_str(&format!(
            "{} -> {} {:+}\n",
            bits_string(&w),
            bits_string(&rule.rewrite),
            rule.shift
        ));
    }
    out
}

pub fn parse_shift(input: &str) -> Result<GeneralizedShift, GshiftError> {
    let mut start: i64 = 0;
    let mut r: Option<usize> = None;
    let mut rules: Vec<Option<WindowRule>> = Vec::new();

    let parse_bits = |s: &str, line: usize| -> Result<Vec<bool>, GshiftError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(GshiftError::Parse {
                    line,
                    msg: format!("expected binary digits, got `{other}`"),
                }),
            })
            .collect()
    };

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("window:") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(GshiftError::Parse {
                    line: line_no,
                    msg: "expected `window: <start> <length>`".into(),
                });
            }
            start = parts[0].parse().map_err(|e| GshiftError::Parse {
                line: line_no,
                msg: format!("bad start: {e}"),
            })?;
            let len: usize = parts[1].parse().map_err(|e| GshiftError::Parse {
                line: line_no,
                msg: format!("bad length: {e}"),
            })?;
            r = Some(len);
            rules = vec![None; 1usize.checked_shl(len as u32).unwrap_or(0)];
            continue;
        }
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| GshiftError::Parse {
            line: line_no,
            msg: "expected `w -> G(w) F(w)`".into(),
        })?;
        let w = parse_bits(lhs.trim(), line_no)?;
        let parts: Vec<&str> = rhs.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(GshiftError::Parse {
                line: line_no,
                msg: "expected `w -> G(w) F(w)`".into(),
            });
        }
        let rewrite = parse_bits(parts[0], line_no)?;
        let shift: i64 = parts[1].parse().map_err(|e| GshiftError::Parse {
            line: line_no,
            msg: format!("bad shift amount: {e}"),
        })?;
        let r = match r {
            Some(r) => r,
            None => {
                // headerless table: infer length from the first window
                let len = w.len();
                rules = vec![None; 1usize << len];
                r = Some(len);
                len
            }
        };
        if w.len() != r {
            return Err(GshiftError::Parse {
                line: line_no,
                msg: format!("window `{}` does not have length {r}", bits_string(&w)),
            });
        }
        let idx = w.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        rules[idx] = Some(WindowRule { rewrite, shift });
    }

    let r = r.ok_or(GshiftError::Parse {
        line: 0,
        msg: "empty shift table".into(),
    })?;
    let table: Vec<WindowRule> = rules
        .into_iter()
        .enumerate()
        .map(|(idx, rule)| {
            rule.ok_or_else(|| GshiftError::Parse {
                line: 0,
                msg: format!("missing rule for window {}", bits_string(&window_bits(idx, r))),
            })
        })
        .collect::<Result<_, _>>()?;
    GeneralizedShift::from_table(start, r, table)
}

pub fn render_biword(w: &BiWord) -> String {
    let (neg, nonneg) = w.halves();
    let left: String = neg.iter().rev().map(|&b| if b { '1' } else { '0' }).collect();
    let right: String = nonneg.iter().map(|&b| if b { '1' } else { '0' }).collect();
    format!(
        "...{} | {}...",
        if left.is_empty() { "0" } else { &left },
        if right.is_empty() { "0" } else { &right }
    )
}

pub fn parse_biword(input: &str) -> Result<BiWord, GshiftError> {
    let s = input.trim();
    let (l, r) = s.split_once('|').ok_or(GshiftError::Parse {
        line: 1,
        msg: "expected `left | right` with `|` at position 0".into(),
    })?;
    let clean = |side: &str| -> String {
        side.trim().trim_start_matches("...").trim_end_matches("...").trim().to_string()
    };
    let left = clean(l);
    let right = clean(r);
    let digit = |c: char| -> Result<bool, GshiftError> {
        match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(GshiftError::Parse {
                line: 1,
                msg: format!("expected binary digits, got `{other}`"),
            }),
        }
    };
    let mut neg = Vec::new();
    for c in left.chars().rev() {
        neg.push(digit(c)?);
    }
    let mut nonneg = Vec::new();
    for c in right.chars() {
        nonneg.push(digit(c)?);
    }
    Ok(BiWord::from_halves(neg, nonneg))
}
