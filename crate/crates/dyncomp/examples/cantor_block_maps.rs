//! Realize bijective shifts as volume-preserving piecewise affine maps of
//! the square Cantor set, exactly.
//!
//! ```sh
//! cargo run --example cantor_block_maps
//! ```

use std::fs;
use std::path::Path;

use dyncomp::cantor::{blockmap_svg, gshift_to_blockmap, kappa, kappa_inv, render_blockmap};
use dyncomp::corpus;
use dyncomp::gshift::{BiWord, GeneralizedShift};

fn main() {
    // the embedding: nonnegative cells are ternary digits of x, negative
    // cells digits of y, every coordinate an exact rational
    for ones in [vec![], vec![0], vec![-1], vec![1, -2]] {
        let w = BiWord::from_ones(&ones);
        let p = kappa(&w);
        println!("kappa({:18}) = ({}, {})", w.to_string(), p.x, p.y);
        assert_eq!(kappa_inv(&p).unwrap(), w);
    }

    let out_dir = Path::new("target/examples-out");
    fs::create_dir_all(out_dir).unwrap();

    for (name, shift) in corpus::bijective_shifts() {
        let map = gshift_to_blockmap(&shift).unwrap();
        let volume = map.check_volume();
        let disjoint = map.check_disjointness();
        println!(
            "\n{name}: {} pieces, volume ok = {}, targets disjoint = {}",
            map.pieces().len(),
            volume.ok(),
            disjoint.targets_disjoint()
        );
        println!(
            "  source total {} target total {}",
            volume.total_source_area, volume.total_target_area
        );

        // push a sample orbit through both routes
        let t = BiWord::from_ones(&[-1, 1]);
        let by_shift = kappa(&shift.apply(&t));
        let by_map = map.apply(&kappa(&t)).unwrap();
        assert_eq!(by_shift, by_map);
        println!(
            "  kappa . shift = map . kappa at {}: ({}, {})",
            t, by_map.x, by_map.y
        );

        let svg_path = out_dir.join(format!("blocks-{name}.svg"));
        fs::write(&svg_path, blockmap_svg(&map)).unwrap();
        println!("  wrote {}", svg_path.display());
    }

    // the full shift acts by (x, y) -> (3x - 2 t0, y/3 + 2 t0 / 3)
    let full = gshift_to_blockmap(&GeneralizedShift::full_shift()).unwrap();
    println!("\nfull shift pieces:\n{}", render_blockmap(&full));
}
