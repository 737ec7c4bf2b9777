//! Calderon products of (l1, linf): closed form, factorization solver and
//! disjoint Kottman estimates along theta.
//!
//! ```bash
//! cargo run --release --example interpolation
//! ```

use bcl::constants;
use bcl::solvers::{PackingMode, SolverConfig};
use bcl::spaces::{NormedSpace, SpaceSpec};

fn main() -> bcl::Result<()> {
    let config = SolverConfig::default();
    let x = [0.3, -1.2, 0.7, 2.0, -0.1, 0.4];
    println!("{:>6} {:>10} {:>14} {:>14} {:>10} {:>10}", "theta", "p_theta", "norm", "factorization", "K_disj", "2^(1-th)");
    for theta in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let spec = SpaceSpec::interpolated(SpaceSpec::lp(6, 1.0), SpaceSpec::lp(6, f64::INFINITY), theta);
        let space = NormedSpace::build(&spec)?;
        let p_theta = 1.0 / (1.0 - theta);
        let solver = space.factorization_norm(&x).map(|v| format!("{v:.10}")).unwrap_or_else(|| "-".into());
        let k = constants::kottman(&space, 3, &PackingMode::disjoint_auto(), &config)?;
        println!(
            "{theta:>6} {p_theta:>10.4} {:>14.10} {solver:>14} {:>10.6} {:>10.6}",
            space.eval(&x),
            k.value,
            2f64.powf(1.0 - theta)
        );
    }
    Ok(())
}
