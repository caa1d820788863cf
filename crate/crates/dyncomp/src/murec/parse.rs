//! Concrete syntax for recursive function expressions:
//!
//! ```text
//! const 3/2        constant 3 of two arguments
//! succ
//! proj 2/3         second of three arguments
//! tuple(e, e, ..)
//! comp(g, f)       g after f
//! primrec(f, g)
//! mu(f)
//! ```

use super::{MuRecExpr, MurecError};

struct Parser<'a> {
    src: &'a [u8],
    at: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> MurecError {
        MurecError::Parse {
            at: self.at,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.at < self.src.len() && self.src[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), MurecError> {
        self.skip_ws();
        if self.at < self.src.len() && self.src[self.at] == c {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.at).copied()
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len()
            && (self.src[self.at].is_ascii_alphanumeric() || self.src[self.at] == b'_')
        {
            self.at += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.at]).into_owned()
    }

    fn number(&mut self) -> Result<u64, MurecError> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if start == self.at {
            return Err(self.err("expected a number"));
        }
        String::from_utf8_lossy(&self.src[start..self.at])
            .parse()
            .map_err(|e| self.err(format!("bad number: {e}")))
    }

    fn slash_pair(&mut self) -> Result<(u64, u64), MurecError> {
        let a = self.number()?;
        self.eat(b'/')?;
        let b = self.number()?;
        Ok((a, b))
    }

    fn args(&mut self, min: usize, max: usize) -> Result<Vec<MuRecExpr>, MurecError> {
        self.eat(b'(')?;
        let mut out = Vec::new();
        if self.peek() == Some(b')') {
            self.at += 1;
        } else {
            loop {
                out.push(self.expr()?);
                match self.peek() {
                    Some(b',') => {
                        self.at += 1;
                    }
                    Some(b')') => {
                        self.at += 1;
                        break;
                    }
                    _ => return Err(self.err("expected `,` or `)`")),
                }
            }
        }
        if out.len() < min || out.len() > max {
            return Err(self.err(format!(
                "expected between {min} and {max} arguments, got {}",
                out.len()
            )));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<MuRecExpr, MurecError> {
        let head = self.word();
        match head.as_str() {
            "succ" => Ok(MuRecExpr::Succ),
            "const" => {
                let (value, arity) = self.slash_pair()?;
                Ok(MuRecExpr::constant(value, arity as usize))
            }
            "proj" => {
                let (index, arity) = self.slash_pair()?;
                Ok(MuRecExpr::proj(index as usize, arity as usize))
            }
            "tuple" => Ok(MuRecExpr::tuple(self.args(1, usize::MAX)?)),
            "comp" => {
                let mut ab = self.args(2, 2)?;
                let inner = ab.pop().unwrap();
                let outer = ab.pop().unwrap();
                Ok(MuRecExpr::comp(outer, inner))
            }
            "primrec" => {
                let mut ab = self.args(2, 2)?;
                let step = ab.pop().unwrap();
                let base = ab.pop().unwrap();
                Ok(MuRecExpr::primrec(base, step))
            }
            "mu" => {
                let mut a = self.args(1, 1)?;
                Ok(MuRecExpr::mu(a.pop().unwrap()))
            }
            other => Err(self.err(format!("unknown form `{other}`"))),
        }
    }
}

/// Parse an expression and validate its arities.
pub fn parse_expr(src: &str) -> Result<MuRecExpr, MurecError> {
    let mut p = Parser {
        src: src.as_bytes(),
        at: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.at != p.src.len() {
        return Err(p.err("trailing input"));
    }
    e.signature()?;
    Ok(e)
}

/// Render back to the concrete syntax.
pub fn render_expr(e: &MuRecExpr) -> String {
    match e {
        MuRecExpr::Const { value, arity } => format!("const {value}/{arity}"),
        MuRecExpr::Succ => "succ".into(),
        MuRecExpr::Proj { index, arity } => format!("proj {index}/{arity}"),
        MuRecExpr::Tuple(fs) => {
            let inner: Vec<String> = fs.iter().map(render_expr).collect();
            format!("tuple({})", inner.join(", "))
        }
        MuRecExpr::Compose { outer, inner } => {
            format!("comp({}, {})", render_expr(outer), render_expr(inner))
        }
        MuRecExpr::PrimRec { base, step } => {
            format!("primrec({}, {})", render_expr(base), render_expr(step))
        }
        MuRecExpr::Mu(f) => format!("mu({})", render_expr(f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parses_the_add_program() {
        let e = parse_expr("primrec(proj 1/1, comp(succ, proj 2/3))").unwrap();
        assert_eq!(e, corpus::murec_add());
    }

    #[test]
    fn round_trips_the_corpus() {
        for (_, e) in corpus::murec_suite() {
            assert_eq!(parse_expr(&render_expr(&e)).unwrap(), e);
        }
    }

    #[test]
    fn rejects_malformed_programs() {
        assert!(parse_expr("comp(succ)").is_err());
        assert!(parse_expr("proj 3/2").is_err());
        assert!(parse_expr("succ extra").is_err());
        assert!(parse_expr("frobnicate").is_err());
    }
}
