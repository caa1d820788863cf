//! Thicken machine graphs into bordism skeletons and run whole
//! computations as single sweeps of the reaching function.
//!
//! ```sh
//! cargo run --example reaching_function
//! ```

use std::fs;
use std::path::Path;

use num_rational::BigRational;

use dyncomp::bordism::{
    build_graph, conjecture_csv, conjecture_report, thicken, NumeralCodec, ReachOutcome,
    ThickenOptions,
};
use dyncomp::corpus;

fn main() {
    let out_dir = Path::new("target/examples-out");
    fs::create_dir_all(out_dir).unwrap();

    let m = corpus::succ1();
    let graph = build_graph(&m);
    println!(
        "succ graph: {} discs, {} tubes, cycle rank {}",
        graph.vertex_count(),
        graph.edge_count(),
        graph.betti1()
    );
    fs::write(out_dir.join("succ-graph.dot"), graph.to_dot(&m)).unwrap();

    let sk = thicken(&m, ThickenOptions::reversible(NumeralCodec::Unary)).unwrap();
    let trace = sk.reach(&[2], 1000).unwrap();
    println!("\nreach succ(2):\n{}", sk.trace_log(&trace));

    // one tube crossing per machine step, so unit tubes make length = steps
    for n in [1u64, 5, 25] {
        let trace = sk.reach(&[n], 1000).unwrap();
        println!(
            "succ({n}): outcome {:?}, steps {}, length {}",
            trace.outcome, trace.steps, trace.length
        );
    }

    // rescaling the metric rescales lengths linearly
    let tripled = sk.rescale_metric(&BigRational::from_integer(3.into())).unwrap();
    let t = tripled.reach(&[5], 1000).unwrap();
    println!("succ(5) with tripled tubes: length {}", t.length);

    // irreversible machines thicken behind an explicit override
    let mul = corpus::mul_machine();
    let sk_mul = thicken(&mul, ThickenOptions::overridden(NumeralCodec::UnaryPair)).unwrap();
    for (a, b) in [(3u64, 4u64), (6, 7)] {
        let trace = sk_mul.reach(&[a, b], 100_000).unwrap();
        match trace.outcome {
            ReachOutcome::Reached(v) => {
                println!("mul({a},{b}) reaches {v} in {} tube crossings", trace.steps)
            }
            ReachOutcome::Diverged { fuel } => println!("mul({a},{b}) diverged at fuel {fuel}"),
        }
    }

    // length against machine steps over a range, as a CSV table
    let add = corpus::add_machine();
    let sk_add = thicken(&add, ThickenOptions::reversible(NumeralCodec::UnaryPair)).unwrap();
    let inputs: Vec<Vec<u64>> = (1..=10).map(|n| vec![n, n]).collect();
    let rows = conjecture_report(&sk_add, &inputs, 100_000).unwrap();
    let csv = conjecture_csv(&rows);
    fs::write(out_dir.join("add-conjecture.csv"), &csv).unwrap();
    println!("\nadd length/steps table:\n{csv}");
}
