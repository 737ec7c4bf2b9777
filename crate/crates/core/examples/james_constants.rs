//! James constant Jm and its companion g on lp planes; their product is 2.
//!
//! ```bash
//! cargo run --release --example james_constants
//! ```

use bcl::constants;
use bcl::solvers::SolverConfig;
use bcl::spaces::{polyhedral, NormedSpace, SpaceSpec};

fn main() -> bcl::Result<()> {
    let config = SolverConfig::default();
    println!("{:>6} {:>10} {:>10} {:>10}", "p", "Jm", "g", "g*Jm");
    for p in [1.0, 1.2, 1.5, 2.0, 3.0, 4.0, f64::INFINITY] {
        let space = NormedSpace::build(&SpaceSpec::lp(2, p))?;
        let (j, g) = constants::james_constants(&space, &config)?;
        println!("{p:>6} {:>10.6} {:>10.6} {:>10.6}", j.value, g.value, j.value * g.value);
    }

    let hex = NormedSpace::build(&SpaceSpec::polyhedral(polyhedral::hexagon(0.0)))?;
    let (j, g) = constants::james_constants(&hex, &config)?;
    println!("hexagon: Jm {:.6}, g {:.6}", j.value, g.value);
    Ok(())
}
