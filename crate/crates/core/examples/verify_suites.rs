//! Run a few verification suites and print their reports as CSV.
//!
//! ```bash
//! cargo run --release --example verify_suites
//! ```

use bcl::report::{Document, Payload};
use bcl::solvers::SolverConfig;
use bcl::spaces::{polyhedral, SpaceSpec};
use bcl::verify;

fn main() -> bcl::Result<()> {
    let config = SolverConfig::default();
    let reports = vec![
        verify::check_duality(
            &[SpaceSpec::lp(4, 3.0), SpaceSpec::polyhedral(polyhedral::hexagon(0.3))],
            &config,
        )?,
        verify::check_interpolation(
            &SpaceSpec::lp(6, 1.0),
            &SpaceSpec::lp(6, f64::INFINITY),
            &[0.0, 0.5, 1.0],
            3,
            true,
            &config,
        )?,
        verify::check_identities(&[SpaceSpec::lp(2, 1.0), SpaceSpec::lp(2, 4.0)], &config)?,
    ];
    for r in &reports {
        eprintln!("{}: {:?} in {:.1}s", r.suite, r.status, r.wall_time);
    }
    print!("{}", Document::new(Payload::Reports(reports)).to_csv()?);
    Ok(())
}
