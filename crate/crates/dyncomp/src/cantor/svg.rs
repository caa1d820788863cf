//! Block map pictures: two unit squares side by side, source rectangles on
//! the left, target rectangles on the right, one hue per piece.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{BlockMap, CantorBlock};

const PANEL: f64 = 320.0;
const GAP: f64 = 40.0;
const MARGIN: f64 = 20.0;

fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn rect(out: &mut String, block: &CantorBlock, panel_x: f64, hue: usize, fill: bool) {
    let x = panel_x + approx(&block.x_lo()) * PANEL;
    let w = approx(&block.x_len()) * PANEL;
    // svg y grows downward; flip so y_lo sits at the bottom
    let h = approx(&block.y_len()) * PANEL;
    let y = MARGIN + PANEL - (approx(&block.y_lo()) * PANEL + h);
    let style = if fill {
        format!("fill=\"hsl({hue},70%,60%)\" fill-opacity=\"0.6\" stroke=\"hsl({hue},70%,30%)\"")
    } else {
        format!("fill=\"none\" stroke=\"hsl({hue},70%,35%)\" stroke-width=\"1.5\"")
    };
    out.push_str(&format!(
        "  <rect x=\"{x:.3}\" y=\"{y:.3}\" width=\"{w:.3}\" height=\"{h:.3}\" {style}/>\n"
    ));
}

/// Render the pieces of a block map. Deterministic output for fixed input.
pub fn blockmap_svg(f: &BlockMap) -> String {
    let width = 2.0 * PANEL + GAP + 2.0 * MARGIN;
    let height = PANEL + 2.0 * MARGIN + 20.0;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    );
    let n = f.pieces().len().max(1);
    for (panel, label) in [(MARGIN, "source"), (MARGIN + PANEL + GAP, "target")] {
        out.push_str(&format!(
            "  <rect x=\"{panel:.3}\" y=\"{MARGIN:.3}\" width=\"{PANEL:.3}\" height=\"{PANEL:.3}\" fill=\"none\" stroke=\"#333\"/>\n"
        ));
        out.push_str(&format!(
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-family=\"monospace\" font-size=\"14\">{label}</text>\n",
            panel,
            MARGIN + PANEL + 16.0
        ));
    }
    for (i, piece) in f.pieces().iter().enumerate() {
        let hue = (i * 360) / n;
        rect(&mut out, &piece.source, MARGIN, hue, true);
        rect(&mut out, &piece.target, MARGIN + PANEL + GAP, hue, false);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::gshift_to_blockmap;
    use crate::gshift::GeneralizedShift;

    #[test]
    fn svg_has_one_rect_pair_per_piece() {
        let f = gshift_to_blockmap(&GeneralizedShift::full_shift()).unwrap();
        let svg = blockmap_svg(&f);
        let rects = svg.matches("<rect").count();
        // two panel frames plus a pair per piece
        assert_eq!(rects, 2 + 2 * f.pieces().len());
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn identity_shift_draws_coinciding_rectangles() {
        let f = gshift_to_blockmap(&GeneralizedShift::identity(1)).unwrap();
        let svg = blockmap_svg(&f);
        assert_eq!(svg.matches("<rect").count(), 2 + 2 * f.pieces().len());
    }
}
