//! Pullback renormings of l1^6 embedded next to Y (+)_inf Z, with their gap.
//!
//! ```bash
//! cargo run --release --example pullback_renorming
//! ```

use bcl::solvers::{subspace_gap, SolverConfig};
use bcl::spaces::{pullback_embedding, NormedSpace, SpaceSpec, Subspace};

fn main() -> bcl::Result<()> {
    let config = SolverConfig::default();
    let base = SpaceSpec::lp(6, 1.0);
    println!("{:>6} {:>12} {:>12} {:>12} {:>14}", "eps", "g", "PB -> Y+Z", "Y+Z -> PB", "2eps/(1+2eps)");
    for eps in [0.5, 0.2, 0.1, 0.05, 0.01] {
        let (ambient, pb, split) = pullback_embedding(&base, eps)?;
        let amb = NormedSpace::build(&ambient)?;
        let m = Subspace::from_space(&amb, pb)?;
        let l = Subspace::from_space(&amb, split)?;
        let gap = subspace_gap(&m, &l, &config)?;
        println!(
            "{eps:>6} {:>12.8} {:>12.8} {:>12.8} {:>14.8}",
            gap.g,
            gap.g_ml,
            gap.g_lm,
            2.0 * eps / (1.0 + 2.0 * eps)
        );
    }

    // the pullback norm itself
    let pb = NormedSpace::build(&SpaceSpec::pullback(SpaceSpec::lp(4, 1.0), 0.1))?;
    println!("pullback(lp(4,1), 0.1): ||(1,0,0,1)|| = {:.6}", pb.eval(&[1.0, 0.0, 0.0, 1.0]));
    Ok(())
}
