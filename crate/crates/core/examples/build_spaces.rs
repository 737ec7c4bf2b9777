//! Build spaces from specs, evaluate norms and take duals.
//!
//! ```bash
//! cargo run --example build_spaces
//! ```

use bcl::spaces::{dual_space, kalton_peck_omega, koethe_dual, norm, polyhedral, NormedSpace, SpaceSpec};

fn main() -> bcl::Result<()> {
    let x = [3.0, -4.0, 0.0];

    for spec in [
        SpaceSpec::lp(3, 1.0),
        SpaceSpec::lp(3, 2.0),
        SpaceSpec::lp(3, f64::INFINITY),
        SpaceSpec::weighted_lp(3, 2.0, vec![1.0, 2.0, 0.5]),
        SpaceSpec::interpolated(SpaceSpec::lp(3, 1.0), SpaceSpec::lp(3, f64::INFINITY), 0.5),
        SpaceSpec::direct_sum(f64::INFINITY, vec![SpaceSpec::lp(2, 2.0), SpaceSpec::lp(1, 1.0)]),
    ] {
        let space = NormedSpace::build(&spec)?;
        println!("{:<60} ||x|| = {:.6}", serde_json::to_string(&spec)?, norm(&space, &x)?);
    }

    // specs round-trip through JSON; exponents accept "inf"
    let spec: SpaceSpec = serde_json::from_str(r#"{"kind":"lp","n":2,"p":"inf"}"#)?;
    let square = NormedSpace::build(&spec)?;
    let dual = dual_space(&square)?;
    println!("dual of {} is {}", serde_json::to_string(&spec)?, serde_json::to_string(dual.spec())?);

    // polyhedral norms have exact polyhedral duals
    let hex = NormedSpace::build(&SpaceSpec::polyhedral(polyhedral::hexagon(0.0)))?;
    let hex_dual = dual_space(&hex)?;
    let v = [1.0, 0.5];
    println!("hexagon: ||v|| = {:.6}, ||v||_* = {:.6}", hex.eval(&v), hex_dual.eval(&v));

    let kd = koethe_dual(&NormedSpace::build(&SpaceSpec::lp(3, 3.0))?)?;
    println!("Koethe dual of lp(3,3): {}", serde_json::to_string(kd.spec())?);

    // the Kalton-Peck map is homogeneous but not linear
    let w = [1.0, 2.0];
    let om = kalton_peck_omega(&w)?;
    println!("Omega({w:?}) = [{:.6}, {:.6}]", om[0], om[1]);
    let twisted = NormedSpace::build(&SpaceSpec::twisted_kp(2, 0.5))?;
    println!("twisted_kp(2, 0.5): quasinorm constant {:.4}", twisted.quasinorm_constant());
    Ok(())
}
