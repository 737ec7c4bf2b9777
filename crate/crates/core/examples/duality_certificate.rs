//! Auerbach systems and the certificate (k + w)(k* + w) >= 2.
//!
//! ```bash
//! cargo run --release --example duality_certificate
//! ```

use bcl::constants::{duality_certificate, ramsey_extract};
use bcl::solvers::{auerbach, SolverConfig};
use bcl::spaces::{polyhedral, NormedSpace, SpaceSpec};

fn main() -> bcl::Result<()> {
    let config = SolverConfig::default();
    for spec in [
        SpaceSpec::lp(4, 3.0),
        SpaceSpec::weighted_lp(3, 2.0, vec![1.0, 2.0, 0.5]),
        SpaceSpec::polyhedral(polyhedral::hexagon(0.3)),
        SpaceSpec::lp(3, 1.5),
    ] {
        let space = NormedSpace::build(&spec)?;
        let c = duality_certificate(&space, &config)?;
        println!(
            "{:<12} k={:.6} k*={:.6} w={:.1e} (k+w)(k*+w)={:.9} residual={:.1e}",
            spec.kind(),
            c.k,
            c.k_star,
            c.width,
            c.certified_product,
            c.system.residual
        );
    }

    let hex = NormedSpace::build(&SpaceSpec::polyhedral(polyhedral::hexagon(0.3)))?;
    let system = auerbach(&hex, &config)?;
    println!("hexagon Auerbach basis: {:?} ({})", system.basis, system.method);

    // Ramsey bisection keeps a subset whose pairwise distances lie in a narrow band
    let d = vec![
        vec![0.0, 1.0, 1.9, 1.05],
        vec![1.0, 0.0, 1.0, 1.02],
        vec![1.9, 1.0, 0.0, 1.01],
        vec![1.05, 1.02, 1.01, 0.0],
    ];
    let sel = ramsey_extract(&d, 0.1)?;
    println!("ramsey: indices {:?}, band [{}, {}]", sel.indices, sel.lo, sel.hi);
    Ok(())
}
