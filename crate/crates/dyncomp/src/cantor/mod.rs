//! The square Cantor set with exact rational coordinates.
//!
//! A binary word embeds by reading its nonnegative half as the ternary
//! digits of `x` (bit at index n becomes digit 2*bit at depth n+1) and its
//! negative half as the digits of `y` (bit at index -k at depth k). Every
//! coordinate is a rational with a power-of-three denominator and digits 0
//! or 2 only; nothing in this module touches floating point.

mod blockmap;
mod svg;

pub use blockmap::{
    gshift_to_blockmap, parse_blockmap, render_blockmap, rewrite_shift_blockmap, AffineMap,
    BlockMap, BlockPiece, DisjointnessReport, VolumeReport,
};
pub use svg::blockmap_svg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gshift::BiWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CantorError {
    #[error("coordinate {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("coordinate {0} has no finite ternary expansion (denominator is not a power of three)")]
    InfiniteExpansion(String),
    #[error("coordinate {0} has a ternary digit 1, so it is not in the Cantor set")]
    DigitOne(String),
    #[error("point lies in no source block")]
    DomainGap,
    #[error("shift is not bijective: {0}")]
    NotBijective(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A point of the square Cantor set, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorPoint {
    pub x: BigRational,
    pub y: BigRational,
}

fn three() -> BigInt {
    BigInt::from(3)
}

/// Digits of a finite {0,2} ternary expansion, most significant first.
/// Depth is the number of digits extracted; trailing zeros beyond the
/// denominator's power are not produced.
fn ternary_digits(v: &BigRational, label: &str) -> Result<Vec<u8>, CantorError> {
    if v.is_negative() || v > &BigRational::one() {
        return Err(CantorError::OutOfRange(format!("{label} = {v}")));
    }
    // denominator must divide a power of three
    let mut den = v.denom().clone();
    let mut power = 0usize;
    while (&den % three()).is_zero() {
        den /= three();
        power += 1;
    }
    if !den.is_one() {
        return Err(CantorError::InfiniteExpansion(format!("{label} = {v}")));
    }
    let mut digits = Vec::with_capacity(power);
    let mut rest = v.clone();
    for _ in 0..power {
        rest *= BigRational::from_integer(three());
        let digit = rest.floor();
        rest -= &digit;
        let d = digit.to_integer();
        let d: u8 = if d.is_zero() {
            0
        } else if d == BigInt::one() {
            1
        } else if d == BigInt::from(2) {
            2
        } else {
            3 // only possible for v == 1, caught below
        };
        if d == 1 || d == 3 {
            return Err(CantorError::DigitOne(format!("{label} = {v}")));
        }
        digits.push(d);
    }
    if !rest.is_zero() {
        // v == 1 is 0.222..., infinite
        return Err(CantorError::InfiniteExpansion(format!("{label} = {v}")));
    }
    Ok(digits)
}

/// Value of a digit prefix: sum of digit_i * 3^-(i+1).
fn digits_value(digits: &[u8]) -> BigRational {
    let mut num = BigInt::zero();
    for &d in digits {
        num = num * three() + BigInt::from(d);
    }
    let den = three().pow(digits.len() as u32);
    BigRational::new(num, den)
}

pub(crate) fn pow3(e: i64) -> BigRational {
    let p = three().pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Embed a word into the square Cantor set.
pub fn kappa(t: &BiWord) -> CantorPoint {
    let (neg, nonneg) = t.halves();
    let xd: Vec<u8> = nonneg.iter().map(|&b| if b { 2 } else { 0 }).collect();
    let yd: Vec<u8> = neg.iter().map(|&b| if b { 2 } else { 0 }).collect();
    CantorPoint {
        x: digits_value(&xd),
        y: digits_value(&yd),
    }
}

/// Invert the embedding. Fails on coordinates with a digit 1 or without a
/// finite power-of-three expansion.
pub fn kappa_inv(p: &CantorPoint) -> Result<BiWord, CantorError> {
    let xd = ternary_digits(&p.x, "x")?;
    let yd = ternary_digits(&p.y, "y")?;
    let nonneg: Vec<bool> = xd.iter().map(|&d| d == 2).collect();
    let neg: Vec<bool> = yd.iter().map(|&d| d == 2).collect();
    Ok(BiWord::from_halves(neg, nonneg))
}

/// A cylinder rectangle: bits fixed at positions `0..u.len()` (constraining
/// x) and at `-1..=-v.len()` (constraining y, `v[k-1]` is the bit at `-k`).
/// Geometrically `[x_lo, x_lo + 3^-p] x [y_lo, y_lo + 3^-q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorBlock {
    u: Vec<bool>,
    v: Vec<bool>,
}

impl CantorBlock {
    pub fn new(u: Vec<bool>, v: Vec<bool>) -> Self {
        CantorBlock { u, v }
    }

    /// The whole square.
    pub fn full() -> Self {
        CantorBlock { u: Vec::new(), v: Vec::new() }
    }

    /// Constraints read off a window of a word: positions `lo..hi` with
    /// `lo <= 0 <= hi` split into the y side (negative) and x side.
    pub fn from_window(lo: i64, bits: &[bool]) -> Self {
        let hi = lo + bits.len() as i64;
        debug_assert!(lo <= 0 && hi >= 0);
        let split = (-lo) as usize;
        let v: Vec<bool> = bits[..split].iter().rev().copied().collect();
        let u: Vec<bool> = bits[split..].to_vec();
        CantorBlock { u, v }
    }

    pub fn x_depth(&self) -> usize {
        self.u.len()
    }

    pub fn y_depth(&self) -> usize {
        self.v.len()
    }

    pub fn x_word(&self) -> &[bool] {
        &self.u
    }

    pub fn y_word(&self) -> &[bool] {
        &self.v
    }

    pub fn x_lo(&self) -> BigRational {
        let digits: Vec<u8> = self.u.iter().map(|&b| if b { 2 } else { 0 }).collect();
        digits_value(&digits)
    }

    pub fn y_lo(&self) -> BigRational {
        let digits: Vec<u8> = self.v.iter().map(|&b| if b { 2 } else { 0 }).collect();
        digits_value(&digits)
    }

    pub fn x_len(&self) -> BigRational {
        pow3(-(self.u.len() as i64))
    }

    pub fn y_len(&self) -> BigRational {
        pow3(-(self.v.len() as i64))
    }

    /// Rectangle area `3^-(p+q)`.
    pub fn area(&self) -> BigRational {
        pow3(-((self.u.len() + self.v.len()) as i64))
    }

    /// Exact membership of a Cantor point: its digits extend the block's.
    pub fn contains(&self, p: &CantorPoint) -> Result<bool, CantorError> {
        let w = kappa_inv(p)?;
        Ok(self.contains_word(&w))
    }

    pub fn contains_word(&self, w: &BiWord) -> bool {
        self.u.iter().enumerate().all(|(i, &b)| w.get(i as i64) == b)
            && self.v.iter().enumerate().all(|(k, &b)| w.get(-(k as i64) - 1) == b)
    }

    /// Whether two blocks share a point: their constraints must agree on
    /// every position both fix.
    pub fn overlaps(&self, other: &CantorBlock) -> bool {
        let ux = self.u.len().min(other.u.len());
        let vx = self.v.len().min(other.v.len());
        self.u[..ux] == other.u[..ux] && self.v[..vx] == other.v[..vx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn embedding_of_basis_words() {
        assert_eq!(
            kappa(&BiWord::zero()),
            CantorPoint { x: rat(0, 1), y: rat(0, 1) }
        );
        // a one at index 0 is the first x digit
        assert_eq!(
            kappa(&BiWord::from_ones(&[0])),
            CantorPoint { x: rat(2, 3), y: rat(0, 1) }
        );
        // a one at index -1 is the first y digit
        assert_eq!(
            kappa(&BiWord::from_ones(&[-1])),
            CantorPoint { x: rat(0, 1), y: rat(2, 3) }
        );
        assert_eq!(
            kappa(&BiWord::from_ones(&[1, -2])),
            CantorPoint { x: rat(2, 9), y: rat(2, 9) }
        );
    }

    #[test]
    fn kappa_inv_round_trips() {
        for ones in [vec![], vec![0], vec![-1], vec![-3, 0, 2], vec![-2, -1, 1, 4]] {
            let w = BiWord::from_ones(&ones);
            assert_eq!(kappa_inv(&kappa(&w)).unwrap(), w);
        }
    }

    #[test]
    fn kappa_inv_rejects_non_cantor_points() {
        let half = CantorPoint { x: rat(1, 2), y: rat(0, 1) };
        assert!(matches!(
            kappa_inv(&half),
            Err(CantorError::InfiniteExpansion(_))
        ));
        let third = CantorPoint { x: rat(1, 3), y: rat(0, 1) };
        assert!(matches!(kappa_inv(&third), Err(CantorError::DigitOne(_))));
        let beyond = CantorPoint { x: rat(4, 3), y: rat(0, 1) };
        assert!(matches!(kappa_inv(&beyond), Err(CantorError::OutOfRange(_))));
        let one = CantorPoint {
            x: BigRational::from_u8(1).unwrap(),
            y: rat(0, 1),
        };
        assert!(kappa_inv(&one).is_err());
    }

    #[test]
    fn block_geometry() {
        // block of words starting with 1 at position 0: x in [2/3, 1]
        let b = CantorBlock::new(vec![true], vec![]);
        assert_eq!(b.x_lo(), rat(2, 3));
        assert_eq!(b.x_len(), rat(1, 3));
        assert_eq!(b.area(), rat(1, 3));
        assert!(b.contains(&kappa(&BiWord::from_ones(&[0]))).unwrap());
        assert!(!b.contains(&kappa(&BiWord::zero())).unwrap());

        let w = CantorBlock::from_window(-1, &[true, false, true]);
        // y fixes t[-1] = 1, x fixes t[0] = 0, t[1] = 1
        assert_eq!(w.y_word(), &[true]);
        assert_eq!(w.x_word(), &[false, true]);
        assert!(w.contains_word(&BiWord::from_ones(&[-1, 1])));
        assert!(!w.contains_word(&BiWord::from_ones(&[-1, 0])));
    }

    #[test]
    fn block_overlap_is_prefix_compatibility() {
        let a = CantorBlock::new(vec![true], vec![]);
        let b = CantorBlock::new(vec![true, false], vec![true]);
        let c = CantorBlock::new(vec![false], vec![]);
        assert!(a.overlaps(&b));
        assert!(b.overlaps(&a));
        assert!(!a.overlaps(&c));
    }
}
