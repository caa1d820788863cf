//! Generalized shifts on two-sided binary sequences.
//!
//! A generalized shift is a window length `r`, a window rewrite `G` and a
//! data-dependent relabeling amount `F`. Applying it reads the window,
//! replaces it by `G(window)`, then relabels the whole sequence by
//! `F(window)`: the result has `t'[n] = t''[n + s]`.
//!
//! The window here may start at a negative index (`[start, start + r)` with
//! `start <= 0`). A window that begins strictly at 0 cannot see the cell left
//! of the head, which a left-moving machine transition has to relocate past
//! the state code, so the machine compiler uses `start = -w_sym`. Shifts with
//! `start = 0` behave exactly like the plain normalized form.

mod compile;
mod text;

pub use compile::{decode_config, encode_config, Encoding};
pub use text::{parse_biword, parse_shift, render_biword, render_shift};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GshiftError {
    #[error("window length must be between 1 and {max}, got {got}")]
    BadWindowLength { got: usize, max: usize },
    #[error("window start {start} must be <= 0 and the window must cover position 0")]
    BadWindowStart { start: i64 },
    #[error("rewrite table has {got} entries, expected {expected}")]
    BadTableSize { got: usize, expected: usize },
    #[error("state codes must be distinct, nonzero and {0} bits wide")]
    BadStateCodes(usize),
    #[error("symbol codes must be distinct and {0} bits wide, with the blank all-zero and others nonzero")]
    BadSymbolCodes(usize),
    #[error("word does not decode: no valid state code at the head")]
    DecodeNoState,
    #[error("word does not decode: invalid symbol code block at offset {0}")]
    DecodeBadSymbol(i64),
    #[error("shift is not bijective: windows {w1} and {w2} share shift {shift} and rewrite")]
    NotBijective { w1: String, w2: String, shift: i64 },
    #[error("inverse requires a uniform relabeling amount; found {0} and {1}")]
    NonUniformShift(i64, i64),
    #[error("no piece of the shift produces this word")]
    NoPreimage,
    #[error("word has {0} distinct preimages")]
    AmbiguousPreimage(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Two-sided binary sequence with finitely many ones, in canonical trimmed
/// form. `neg[k]` is the cell at index `-(k+1)`, `nonneg[n]` the cell at
/// index `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiWord {
    neg: Vec<bool>,
    nonneg: Vec<bool>,
}

impl BiWord {
    pub fn zero() -> Self {
        BiWord::default()
    }

    pub fn from_halves(neg: Vec<bool>, nonneg: Vec<bool>) -> Self {
        let mut w = BiWord { neg, nonneg };
        w.trim();
        w
    }

    /// Word with ones exactly at the given indices.
    pub fn from_ones(ones: &[i64]) -> Self {
        let mut w = BiWord::zero();
        for &i in ones {
            w.set(i, true);
        }
        w
    }

    /// Natural number as its binary digits, least significant bit at index
    /// 0, extending rightwards. Zero is the all-zero word. Anchoring the
    /// low bit keeps the map injective: a word cannot remember trailing
    /// zeros, so the most-significant-first layout would identify n with
    /// every n * 2^k.
    pub fn from_natural_binary(n: u64) -> Self {
        let nonneg = (0..64).map(|i| (n >> i) & 1 == 1).collect();
        BiWord::from_halves(Vec::new(), nonneg)
    }

    pub fn to_natural_binary(&self) -> Option<u64> {
        if !self.neg.is_empty() || self.nonneg.len() > 64 {
            return None;
        }
        let mut n = 0u64;
        for (i, &b) in self.nonneg.iter().enumerate() {
            n |= (b as u64) << i;
        }
        Some(n)
    }

    pub fn get(&self, i: i64) -> bool {
        if i >= 0 {
            self.nonneg.get(i as usize).copied().unwrap_or(false)
        } else {
            self.neg.get((-i - 1) as usize).copied().unwrap_or(false)
        }
    }

    pub fn set(&mut self, i: i64, v: bool) {
        if i >= 0 {
            let k = i as usize;
            if k >= self.nonneg.len() {
                if !v {
                    return;
                }
                self.nonneg.resize(k + 1, false);
            }
            self.nonneg[k] = v;
        } else {
            let k = (-i - 1) as usize;
            if k >= self.neg.len() {
                if !v {
                    return;
                }
                self.neg.resize(k + 1, false);
            }
            self.neg[k] = v;
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.nonneg.last() == Some(&false) {
            self.nonneg.pop();
        }
        while self.neg.last() == Some(&false) {
            self.neg.pop();
        }
    }

    /// New word with `t'[n] = t[n + offset]`.
    pub fn relabel(&self, offset: i64) -> BiWord {
        if offset == 0 {
            return self.clone();
        }
        let mut out = BiWord::zero();
        for i in self.support() {
            out.set(i - offset, true);
        }
        out
    }

    /// Indices of the ones.
    pub fn support(&self) -> Vec<i64> {
        let mut v: Vec<i64> = Vec::new();
        for (k, &b) in self.neg.iter().enumerate() {
            if b {
                v.push(-(k as i64) - 1);
            }
        }
        for (n, &b) in self.nonneg.iter().enumerate() {
            if b {
                v.push(n as i64);
            }
        }
        v.sort_unstable();
        v
    }

    pub fn ones(&self) -> usize {
        self.neg.iter().filter(|&&b| b).count() + self.nonneg.iter().filter(|&&b| b).count()
    }

    /// Halves in storage order: (negative half, nonnegative half).
    pub fn halves(&self) -> (&[bool], &[bool]) {
        (&self.neg, &self.nonneg)
    }
}

impl fmt::Display for BiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_biword(self))
    }
}

/// One window's action: the replacement word and the relabeling amount.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowRule {
    pub rewrite: Vec<bool>,
    pub shift: i64,
}

/// A generalized shift `(r, G, F)` with window `[start, start + r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedShift {
    start: i64,
    r: usize,
    rules: Vec<WindowRule>,
}

pub const MAX_WINDOW: usize = 24;

fn window_index(bits: &[bool]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Bits of `idx` as a window word of length `r`, first cell most significant.
pub fn window_bits(idx: usize, r: usize) -> Vec<bool> {
    (0..r).map(|j| (idx >> (r - 1 - j)) & 1 == 1).collect()
}

pub fn bits_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl GeneralizedShift {
    /// Build from a rule table indexed by window value (first window cell is
    /// the most significant bit).
    pub fn from_table(start: i64, r: usize, rules: Vec<WindowRule>) -> Result<Self, GshiftError> {
        if r == 0 || r > MAX_WINDOW {
            return Err(GshiftError::BadWindowLength {
                got: r,
                max: MAX_WINDOW,
            });
        }
        if start > 0 || start + (r as i64) <= 0 {
            return Err(GshiftError::BadWindowStart { start });
        }
        if rules.len() != 1 << r {
            return Err(GshiftError::BadTableSize {
                got: rules.len(),
                expected: 1 << r,
            });
        }
        for rule in &rules {
            if rule.rewrite.len() != r {
                return Err(GshiftError::BadTableSize {
                    got: rule.rewrite.len(),
                    expected: r,
                });
            }
        }
        Ok(GeneralizedShift { start, r, rules })
    }

    /// Build from closures for `G` and `F` on all windows.
    pub fn from_fn(
        start: i64,
        r: usize,
        mut f: impl FnMut(&[bool]) -> (Vec<bool>, i64),
    ) -> Result<Self, GshiftError> {
        if r == 0 || r > MAX_WINDOW {
            return Err(GshiftError::BadWindowLength {
                got: r,
                max: MAX_WINDOW,
            });
        }
        let rules = (0..1usize << r)
            .map(|idx| {
                let w = window_bits(idx, r);
                let (rewrite, shift) = f(&w);
                WindowRule { rewrite, shift }
            })
            .collect();
        Self::from_table(start, r, rules)
    }

    /// The identity shift of window length `r`.
    pub fn identity(r: usize) -> Self {
        Self::from_fn(0, r, |w| (w.to_vec(), 0)).expect("identity table is well formed")
    }

    /// The plain Bernoulli shift: window length 1, no rewrite, relabel by 1.
    pub fn full_shift() -> Self {
        Self::from_fn(0, 1, |w| (w.to_vec(), 1)).expect("full shift table is well formed")
    }

    pub fn window_start(&self) -> i64 {
        self.start
    }

    pub fn window_len(&self) -> usize {
        self.r
    }

    pub fn rule(&self, window: &[bool]) -> &WindowRule {
        &self.rules[window_index(window)]
    }

    pub fn rules(&self) -> impl Iterator<Item = (Vec<bool>, &WindowRule)> {
        self.rules
            .iter()
            .enumerate()
            .map(|(idx, rule)| (window_bits(idx, self.r), rule))
    }

    /// Windows whose rule differs from identity-with-zero-shift.
    pub fn acting_windows(&self) -> impl Iterator<Item = (Vec<bool>, &WindowRule)> {
        self.rules().filter(|(w, rule)| rule.shift != 0 || &rule.rewrite != w)
    }

    fn read_window(&self, t: &BiWord) -> Vec<bool> {
        (0..self.r as i64).map(|j| t.get(self.start + j)).collect()
    }

    /// One application of the shift map.
    pub fn apply(&self, t: &BiWord) -> BiWord {
        let w = self.read_window(t);
        let rule = &self.rules[window_index(&w)];
        let mut rewritten = t.clone();
        for (j, &b) in rule.rewrite.iter().enumerate() {
            rewritten.set(self.start + j as i64, b);
        }
        rewritten.relabel(rule.shift)
    }

    pub fn orbit(&self, t: &BiWord, steps: usize) -> Vec<BiWord> {
        let mut out = Vec::with_capacity(steps + 1);
        out.push(t.clone());
        for _ in 0..steps {
            let next = self.apply(out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Injectivity of the induced map on window cylinders: within each
    /// relabeling class the rewrite must be injective, otherwise two source
    /// cylinders land on the same shifted cylinder. Returns the colliding
    /// pair on failure.
    pub fn check_bijective(&self) -> Result<(), GshiftError> {
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate().skip(i + 1) {
                if a.shift == b.shift && a.rewrite == b.rewrite {
                    return Err(GshiftError::NotBijective {
                        w1: bits_string(&window_bits(i, self.r)),
                        w2: bits_string(&window_bits(j, self.r)),
                        shift: a.shift,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self) -> bool {
        self.check_bijective().is_ok()
    }

    /// Exact inverse for shifts with one uniform relabeling amount and a
    /// bijective rewrite. The inverse reads the image window, applies the
    /// inverted rewrite and relabels back; the window is padded out to keep
    /// position 0 covered when the image window sits entirely off-center.
    pub fn invert(&self) -> Result<GeneralizedShift, GshiftError> {
        self.check_bijective()?;
        let shift = self.rules[0].shift;
        for rule in &self.rules {
            if rule.shift != shift {
                return Err(GshiftError::NonUniformShift(shift, rule.shift));
            }
        }
        let mut inverse_table: Vec<Option<Vec<bool>>> = vec![None; self.rules.len()];
        for (idx, rule) in self.rules.iter().enumerate() {
            inverse_table[window_index(&rule.rewrite)] = Some(window_bits(idx, self.r));
        }
        let core_rewrite: Vec<Vec<bool>> = inverse_table
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .expect("bijective uniform rewrite covers all windows");

        let core_lo = self.start - shift;
        let core_hi = core_lo + self.r as i64;
        let lo = core_lo.min(0);
        let hi = core_hi.max(1);
        let r = (hi - lo) as usize;
        let core_at = (core_lo - lo) as usize;
        GeneralizedShift::from_fn(lo, r, |window| {
            let core = &window[core_at..core_at + self.r];
            let mut rewrite = window.to_vec();
            rewrite[core_at..core_at + self.r]
                .copy_from_slice(&core_rewrite[window_index(core)]);
            (rewrite, -shift)
        })
    }

    /// Unique preimage under the shift, found by inverting the window
    /// correspondence piece by piece and verifying each candidate.
    pub fn inverse_apply(&self, t: &BiWord) -> Result<BiWord, GshiftError> {
        let mut found: Vec<BiWord> = Vec::new();
        for (idx, rule) in self.rules.iter().enumerate() {
            // candidate: undo the relabel, then restore the source window
            let mut z = t.relabel(-rule.shift);
            let image_ok = (0..self.r).all(|j| z.get(self.start + j as i64) == rule.rewrite[j]);
            if !image_ok {
                continue;
            }
            let w = window_bits(idx, self.r);
            for (j, &b) in w.iter().enumerate() {
                z.set(self.start + j as i64, b);
            }
            if self.apply(&z) == *t && !found.contains(&z) {
                found.push(z);
            }
        }
        match found.len() {
            0 => Err(GshiftError::NoPreimage),
            1 => Ok(found.pop().unwrap()),
            n => Err(GshiftError::AmbiguousPreimage(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn window_rewrite_and_relabel() {
        // r=2, G(0,1)=(1,0), F(0,1)=3, everything else identity with no shift
        let s = corpus::figure_shift();
        let t = BiWord::from_ones(&[-1, 1, 2]); // t0 = 0, so window (0,1)
        let out = s.apply(&t);
        assert_eq!(out, BiWord::from_ones(&[-4, -3, -1]));
    }

    #[test]
    fn identity_shift_fixes_everything() {
        let s = GeneralizedShift::identity(1);
        for ones in [vec![], vec![0], vec![-3, 2], vec![-1, 0, 5]] {
            let t = BiWord::from_ones(&ones);
            assert_eq!(s.apply(&t), t);
        }
    }

    #[test]
    fn full_shift_relabels() {
        let s = GeneralizedShift::full_shift();
        let t = BiWord::from_ones(&[-1, 1]); // t0=0, t1=1, t-1=1
        let out = s.apply(&t);
        assert_eq!(out, BiWord::from_ones(&[-2, 0]));
    }

    #[test]
    fn bijectivity_witnesses() {
        assert!(GeneralizedShift::full_shift().is_bijective());
        assert!(GeneralizedShift::identity(2).is_bijective());

        // two-to-one rewrite: both windows map to the 1 cylinder
        let two_to_one = GeneralizedShift::from_fn(0, 1, |_| (vec![true], 0)).unwrap();
        let err = two_to_one.check_bijective().unwrap_err();
        assert!(matches!(err, GshiftError::NotBijective { shift: 0, .. }));
    }

    #[test]
    fn uniform_inverse_round_trips() {
        for s in [
            GeneralizedShift::full_shift(),
            GeneralizedShift::identity(2),
            corpus::figure_shift_bijective(),
        ] {
            let inv = s.invert().unwrap();
            for ones in [vec![], vec![0], vec![-2, 0, 3], vec![-5, -1, 1, 4]] {
                let t = BiWord::from_ones(&ones);
                assert_eq!(inv.apply(&s.apply(&t)), t);
                assert_eq!(s.apply(&inv.apply(&t)), t);
                assert_eq!(s.inverse_apply(&s.apply(&t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn natural_binary_convention() {
        assert_eq!(BiWord::from_natural_binary(0), BiWord::zero());
        // 6 = 110 with the least significant bit at index 0
        assert_eq!(BiWord::from_natural_binary(6), BiWord::from_ones(&[1, 2]));
        for n in 0..200 {
            assert_eq!(BiWord::from_natural_binary(n).to_natural_binary(), Some(n));
        }
    }
}
