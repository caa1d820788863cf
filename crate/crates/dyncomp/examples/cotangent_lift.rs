//! Lift a chart vector field to its cotangent Hamiltonian and verify
//! numerically that the zero section is invariant and carries the original
//! flow.
//!
//! ```sh
//! cargo run --example cotangent_lift
//! ```

use dyncomp::hamdemo::{
    hamiltonian_rhs, rotation_order_ratio, verify_universality, PhaseState, PolyVectorField,
};

fn main() {
    // the lifted equations at one phase point
    let rotation = PolyVectorField::rotation();
    let s = PhaseState {
        q: vec![1.0, 0.0],
        p: vec![0.0, 0.0],
    };
    let d = hamiltonian_rhs(&rotation, &s).unwrap();
    println!("rotation at q=(1,0), p=0: dq = {:?}, dp = {:?}", d.q, d.p);

    // with p(0) = 0 every momentum stage is a product with zero, so the
    // drifts vanish exactly, not just within tolerance
    for (name, field, q0) in [
        ("rotation", PolyVectorField::rotation(), [1.0f64, 0.0]),
        ("cubic", PolyVectorField::cubic_oscillator(), [0.5, 0.0]),
    ] {
        let report = verify_universality(&field, &q0, 1.0, 1e-3).unwrap();
        println!(
            "{name}: {} steps, max |p| = {:e}, max |q - q_ref| = {:e}",
            report.steps, report.max_p_norm, report.max_q_drift
        );
        println!(
            "  endpoint q = ({:.6}, {:.6})",
            report.final_q_lifted[0], report.final_q_lifted[1]
        );
    }

    // momentum started off the section feels the transposed Jacobian
    let off = PhaseState {
        q: vec![2.0, 0.0],
        p: vec![1.0, 1.0],
    };
    let d = hamiltonian_rhs(&PolyVectorField::cubic_oscillator(), &off).unwrap();
    println!("off-section momentum velocity: {:?}", d.p);

    // order probe against the exact rotation flow: halving the step should
    // cut the endpoint error by about 2^4
    for h in [0.1, 0.05, 0.025] {
        println!(
            "order ratio at h = {h}: {:.2}",
            rotation_order_ratio(h)
        );
    }
}
