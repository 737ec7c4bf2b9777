//! Sphere coverings of the circle against 2 sin(pi / 2N), and ball coverings.
//!
//! ```bash
//! cargo run --release --example thickness_circle
//! ```

use bcl::constants;
use bcl::solvers::SolverConfig;
use bcl::spaces::{NormedSpace, SpaceSpec};

fn main() -> bcl::Result<()> {
    let config = SolverConfig::default();
    let circle = NormedSpace::build(&SpaceSpec::lp(2, 2.0))?;
    println!("{:>3} {:>12} {:>12} {:>12}", "N", "T_N", "exact", "resolution");
    for n in 3..=8 {
        let t = constants::thickness(&circle, n, &config)?;
        let exact = 2.0 * (std::f64::consts::PI / (2.0 * n as f64)).sin();
        println!("{n:>3} {:>12.6} {exact:>12.6} {:>12.2e}", t.value, t.extra["probe_resolution"]);
    }

    let square = NormedSpace::build(&SpaceSpec::lp(2, f64::INFINITY))?;
    let t4 = constants::thickness(&square, 4, &config)?;
    println!("square sphere, N=4: {:.6}", t4.value);

    for n in [1, 2, 4] {
        let e = constants::entropy_covering(&circle, n, &config)?;
        println!("disc, {n} ball centers: {:.6}", e.value);
    }
    Ok(())
}
