//! Compile a machine into a generalized shift and watch the two orbits
//! track each other exactly through the encoding.
//!
//! ```sh
//! cargo run --example machine_as_shift
//! ```

use dyncomp::corpus;
use dyncomp::gshift::{encode_config, render_biword, render_shift, Encoding, GeneralizedShift};
use dyncomp::tm::StepResult;

fn main() {
    let m = corpus::zigzag();
    let enc = Encoding::canonical(&m);
    let shift = GeneralizedShift::compile_tm(&m, &enc).unwrap();

    println!(
        "window [{}, {}): reads [left symbol | state | head symbol]",
        shift.window_start(),
        shift.window_start() + shift.window_len() as i64
    );
    // the full table is 2^r lines; print the windows that actually act
    let acting: Vec<_> = shift.acting_windows().collect();
    println!("{} of {} windows act:", acting.len(), 1usize << shift.window_len());
    for (w, rule) in &acting {
        println!(
            "  {} -> {} {:+}",
            dyncomp::gshift::bits_string(w),
            dyncomp::gshift::bits_string(&rule.rewrite),
            rule.shift
        );
    }

    // conjugacy along an orbit: encode, then step both sides
    let one = m.symbol_named("1").unwrap();
    let mut config = m.start(m.tape_from(&[one, one, one]));
    let mut word = encode_config(&m, &enc, &config);
    println!("\nmachine orbit vs shift orbit:");
    for k in 0..10 {
        println!(
            "  k={k}: {} {:24} word {}",
            m.state_name(config.state),
            config.tape.render(&m),
            render_biword(&word)
        );
        assert_eq!(word, encode_config(&m, &enc, &config), "conjugate at k={k}");
        word = shift.apply(&word);
        if let StepResult::Next(next) = m.step(&config).unwrap() {
            config = next;
        }
    }

    // the full table serializes to the line format
    let table = render_shift(&shift);
    println!("\nserialized table: {} lines", table.lines().count());
}
