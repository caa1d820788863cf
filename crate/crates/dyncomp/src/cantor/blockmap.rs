//! Piecewise affine maps between Cantor rectangles.
//!
//! A bijective generalized shift acts on the square as finitely many affine
//! correspondences: each window cylinder is a rectangle, the rewrite plus
//! relabeling is `x' = 3^s x + b`, `y' = 3^-s y + d` on it. When the
//! relabeling reaches past the window, the window cylinder splits over the
//! extra digits so that every piece really is affine on its rectangle.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{kappa, kappa_inv, pow3, CantorBlock, CantorError, CantorPoint};
use crate::gshift::{bits_string, BiWord, GeneralizedShift};

/// Coordinatewise affine map `x' = x_scale * x + x_offset`,
/// `y' = y_scale * y + y_offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub x_scale: BigRational,
    pub x_offset: BigRational,
    pub y_scale: BigRational,
    pub y_offset: BigRational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            x_scale: BigRational::one(),
            x_offset: BigRational::zero(),
            y_scale: BigRational::one(),
            y_offset: BigRational::zero(),
        }
    }

    pub fn apply(&self, p: &CantorPoint) -> CantorPoint {
        CantorPoint {
            x: &self.x_scale * &p.x + &self.x_offset,
            y: &self.y_scale * &p.y + &self.y_offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPiece {
    pub source: CantorBlock,
    pub target: CantorBlock,
    pub map: AffineMap,
}

impl BlockPiece {
    /// The affine map pinned down by the two rectangles: scales from the
    /// side ratios, offsets from the corners.
    pub fn between(source: CantorBlock, target: CantorBlock) -> Self {
        let x_scale = target.x_len() / source.x_len();
        let y_scale = target.y_len() / source.y_len();
        let x_offset = target.x_lo() - &x_scale * source.x_lo();
        let y_offset = target.y_lo() - &y_scale * source.y_lo();
        BlockPiece {
            source,
            target,
            map: AffineMap {
                x_scale,
                x_offset,
                y_scale,
                y_offset,
            },
        }
    }

    /// The map must send the source rectangle exactly onto the target
    /// rectangle (corner to corner, side to side).
    pub fn is_consistent(&self) -> bool {
        let corner_x = &self.map.x_scale * self.source.x_lo() + &self.map.x_offset;
        let corner_y = &self.map.y_scale * self.source.y_lo() + &self.map.y_offset;
        self.map.x_scale.is_positive()
            && self.map.y_scale.is_positive()
            && corner_x == self.target.x_lo()
            && corner_y == self.target.y_lo()
            && &self.map.x_scale * self.source.x_len() == self.target.x_len()
            && &self.map.y_scale * self.source.y_len() == self.target.y_len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    pieces: Vec<BlockPiece>,
}

/// Exact per-piece and total volume accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub pieces: usize,
    pub violations: Vec<String>,
    pub total_source_area: BigRational,
    pub total_target_area: BigRational,
}

impl VolumeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.total_source_area == self.total_target_area
    }
}

/// Pairwise rectangle overlap check on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointnessReport {
    pub source_collisions: Vec<(usize, usize)>,
    pub target_collisions: Vec<(usize, usize)>,
}

impl DisjointnessReport {
    pub fn sources_disjoint(&self) -> bool {
        self.source_collisions.is_empty()
    }

    pub fn targets_disjoint(&self) -> bool {
        self.target_collisions.is_empty()
    }
}

impl BlockMap {
    /// Build from pieces. Every piece must be rectangle-consistent and the
    /// source rectangles must be pairwise disjoint; target overlap is
    /// reported by [`BlockMap::check_disjointness`] instead, since frozen
    /// halting windows legitimately share images with moving ones.
    pub fn new(pieces: Vec<BlockPiece>) -> Result<Self, CantorError> {
        for (i, p) in pieces.iter().enumerate() {
            if !p.is_consistent() {
                return Err(CantorError::Parse {
                    line: i + 1,
                    msg: "piece map does not send its source rectangle onto its target".into(),
                });
            }
        }
        for (i, a) in pieces.iter().enumerate() {
            for (j, b) in pieces.iter().enumerate().skip(i + 1) {
                if a.source.overlaps(&b.source) {
                    return Err(CantorError::Parse {
                        line: j + 1,
                        msg: format!("source blocks {i} and {j} overlap"),
                    });
                }
            }
        }
        Ok(BlockMap { pieces })
    }

    pub fn pieces(&self) -> &[BlockPiece] {
        &self.pieces
    }

    /// Apply to a point of the square Cantor set: find the one piece whose
    /// source block contains it. Points outside the set or outside every
    /// source block are domain errors.
    pub fn apply(&self, p: &CantorPoint) -> Result<CantorPoint, CantorError> {
        let w = kappa_inv(p)?;
        for piece in &self.pieces {
            if piece.source.contains_word(&w) {
                return Ok(piece.map.apply(p));
            }
        }
        Err(CantorError::DomainGap)
    }

    /// Word-level transport: the piece lookup and the digit rewrite without
    /// leaving the symbolic side. Agrees with [`BlockMap::apply`] through
    /// the embedding.
    pub fn apply_word(&self, w: &BiWord) -> Result<BiWord, CantorError> {
        for piece in &self.pieces {
            if piece.source.contains_word(w) {
                let p = piece.map.apply(&kappa(w));
                return kappa_inv(&p);
            }
        }
        Err(CantorError::DomainGap)
    }

    pub fn check_volume(&self) -> VolumeReport {
        let mut violations = Vec::new();
        let mut total_source_area = BigRational::zero();
        let mut total_target_area = BigRational::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            let product = &p.map.x_scale * &p.map.y_scale;
            if !product.is_one() {
                violations.push(format!(
                    "piece {i}: scale product {product} is not 1 (x_scale {}, y_scale {})",
                    p.map.x_scale, p.map.y_scale
                ));
            }
            total_source_area += p.source.area();
            total_target_area += p.target.area();
        }
        VolumeReport {
            pieces: self.pieces.len(),
            violations,
            total_source_area,
            total_target_area,
        }
    }

    pub fn check_disjointness(&self) -> DisjointnessReport {
        let mut source_collisions = Vec::new();
        let mut target_collisions = Vec::new();
        for (i, a) in self.pieces.iter().enumerate() {
            for (j, b) in self.pieces.iter().enumerate().skip(i + 1) {
                if a.source.overlaps(&b.source) {
                    source_collisions.push((i, j));
                }
                if a.target.overlaps(&b.target) {
                    target_collisions.push((i, j));
                }
            }
        }
        DisjointnessReport {
            source_collisions,
            target_collisions,
        }
    }
}

/// Pieces realizing "rewrite the bits at `[lo, lo+len)` and relabel by
/// `shift`" on the cylinder fixing those bits to `window`. Splits over the
/// digits between the window edge and the relabeling reach.
fn pieces_for_rule(lo: i64, window: &[bool], rewrite: &[bool], shift: i64) -> Vec<BlockPiece> {
    let hi = lo + window.len() as i64;
    let span_lo = lo.min(shift);
    let span_hi = hi.max(shift);
    let extra_right = (span_hi - hi) as usize; // positions hi..span_hi
    let extra_left = (lo - span_lo) as usize; // positions span_lo..lo
    let extra = extra_right + extra_left;
    let mut out = Vec::with_capacity(1 << extra);
    for assign in 0..(1usize << extra) {
        let bit = |k: usize| (assign >> k) & 1 == 1;
        // assemble the full pinned span [span_lo, span_hi): left extras,
        // window, right extras
        let mut src_bits = Vec::with_capacity((span_hi - span_lo) as usize);
        let mut dst_bits = Vec::with_capacity((span_hi - span_lo) as usize);
        for k in 0..extra_left {
            src_bits.push(bit(k));
            dst_bits.push(bit(k));
        }
        src_bits.extend_from_slice(window);
        dst_bits.extend_from_slice(rewrite);
        for k in 0..extra_right {
            src_bits.push(bit(extra_left + k));
            dst_bits.push(bit(extra_left + k));
        }
        let source = CantorBlock::from_window(span_lo, &src_bits);
        let target = CantorBlock::from_window(span_lo - shift, &dst_bits);
        out.push(BlockPiece::between(source, target));
    }
    out
}

/// Realize a bijective generalized shift as a block map: one batch of
/// pieces per window, including the identity windows, so the map covers the
/// whole square.
pub fn gshift_to_blockmap(s: &GeneralizedShift) -> Result<BlockMap, CantorError> {
    s.check_bijective()
        .map_err(|e| CantorError::NotBijective(e.to_string()))?;
    let lo = s.window_start();
    let mut pieces = Vec::new();
    for (window, rule) in s.rules() {
        pieces.extend(pieces_for_rule(lo, &window, &rule.rewrite, rule.shift));
    }
    BlockMap::new(pieces)
}

/// The block map of a single read-rewrite-shift action on the cylinder of
/// words starting with `read`: the per-tube map of thickened machine
/// graphs. `shift` is in cell units.
pub fn rewrite_shift_blockmap(
    read: &[bool],
    write: &[bool],
    shift: i64,
) -> Result<BlockMap, CantorError> {
    assert_eq!(read.len(), write.len());
    BlockMap::new(pieces_for_rule(0, read, write, shift))
}

fn render_word(bits: &[bool]) -> String {
    if bits.is_empty() {
        String::new()
    } else {
        bits_string(bits)
    }
}

fn scale_string(r: &BigRational) -> String {
    // powers of three print as 3^k, everything else verbatim
    let mut v = r.clone();
    let three = BigRational::from_integer(3.into());
    let mut k = 0i64;
    if v >= BigRational::one() {
        while v > BigRational::one() {
            v /= &three;
            k += 1;
        }
    } else {
        while v < BigRational::one() {
            v *= &three;
            k -= 1;
        }
    }
    if v.is_one() {
        format!("3^{k}")
    } else {
        r.to_string()
    }
}

pub fn render_blockmap(f: &BlockMap) -> String {
    let mut out = String::new();
    for p in f.pieces() {
        out.push_str(&format!(
            "source({};{}) -> target({};{}) scale({}, {})\n",
            render_word(p.source.x_word()),
            render_word(p.source.y_word()),
            render_word(p.target.x_word()),
            render_word(p.target.y_word()),
            scale_string(&p.map.x_scale),
            scale_string(&p.map.y_scale),
        ));
    }
    out
}

pub fn parse_blockmap(input: &str) -> Result<BlockMap, CantorError> {
    let mut pieces = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| CantorError::Parse {
            line: line_no,
            msg: msg.into(),
        };
        let rest = line.strip_prefix("source(").ok_or_else(|| err("expected `source(`"))?;
        let (src, rest) = rest.split_once(')').ok_or_else(|| err("unterminated source"))?;
        let rest = rest
            .trim()
            .strip_prefix("-> target(")
            .ok_or_else(|| err("expected `-> target(`"))?;
        let (tgt, rest) = rest.split_once(')').ok_or_else(|| err("unterminated target"))?;
        let scales = rest
            .trim()
            .strip_prefix("scale(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("expected `scale(a, c)`"))?;
        let parse_words = |s: &str| -> Result<(Vec<bool>, Vec<bool>), CantorError> {
            let (u, v) = s.split_once(';').ok_or_else(|| err("expected `u;v`"))?;
            let bits = |w: &str| -> Result<Vec<bool>, CantorError> {
                w.trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(err("expected binary digits")),
                    })
                    .collect()
            };
            Ok((bits(u)?, bits(v)?))
        };
        let (su, sv) = parse_words(src)?;
        let (tu, tv) = parse_words(tgt)?;
        let parse_scale = |s: &str| -> Result<BigRational, CantorError> {
            let s = s.trim();
            if let Some(exp) = s.strip_prefix("3^") {
                let k: i64 = exp.parse().map_err(|_| err("bad scale exponent"))?;
                Ok(pow3(k))
            } else if let Some((n, d)) = s.split_once('/') {
                let n: i64 = n.trim().parse().map_err(|_| err("bad scale"))?;
                let d: i64 = d.trim().parse().map_err(|_| err("bad scale"))?;
                Ok(BigRational::new(n.into(), d.into()))
            } else {
                let n: i64 = s.parse().map_err(|_| err("bad scale"))?;
                Ok(BigRational::from_integer(n.into()))
            }
        };
        let (sx, sy) = scales.split_once(',').ok_or_else(|| err("expected two scales"))?;
        let x_scale = parse_scale(sx)?;
        let y_scale = parse_scale(sy)?;
        let source = CantorBlock::new(su, sv);
        let target = CantorBlock::new(tu, tv);
        let x_offset = target.x_lo() - &x_scale * source.x_lo();
        let y_offset = target.y_lo() - &y_scale * source.y_lo();
        pieces.push(BlockPiece {
            source,
            target,
            map: AffineMap {
                x_scale,
                x_offset,
                y_scale,
                y_offset,
            },
        });
    }
    BlockMap::new(pieces)
}
