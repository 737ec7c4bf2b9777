//! Maximin packings in lp(n, p) and their separation against 2^(1/p).
//!
//! ```bash
//! cargo run --release --example kottman_lp
//! ```

use bcl::constants;
use bcl::solvers::{brute_force_packing, CandidateSet, PackingMode, SolverConfig};
use bcl::spaces::{NormedSpace, SpaceSpec};

fn main() -> bcl::Result<()> {
    let config = SolverConfig::quick();
    println!("{:>5} {:>3} {:>12} {:>12}", "p", "n", "f_n", "2^(1/p)");
    for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
        for n in [3, 4] {
            let space = NormedSpace::build(&SpaceSpec::lp(n, p))?;
            let est = constants::kottman(&space, n, &PackingMode::Plain, &config)?;
            println!("{p:>5} {n:>3} {:>12.6} {:>12.6}", est.value, 2f64.powf(1.0 / p));
        }
    }

    // N = n + 1 points in Euclidean space form a regular simplex
    let e3 = NormedSpace::build(&SpaceSpec::lp(3, 2.0))?;
    let simplex = constants::kottman(&e3, 4, &PackingMode::Plain, &config)?;
    println!("simplex in R^3: {:.6} (exact {:.6})", simplex.value, (8.0f64 / 3.0).sqrt());

    // symmetric and disjoint variants
    let l1 = NormedSpace::build(&SpaceSpec::lp(4, 1.0))?;
    let sym = constants::kottman(&l1, 4, &PackingMode::Symmetric, &config)?;
    let dis = constants::kottman(&l1, 4, &PackingMode::disjoint_auto(), &config)?;
    println!("lp(4,1): symmetric {:.6}, disjoint {:.6}", sym.value, dis.value);

    // exact oracle on the extreme points of the square
    let square = NormedSpace::build(&SpaceSpec::lp(2, f64::INFINITY))?;
    let exact = brute_force_packing(&square, 4, &CandidateSet::ExtremePoints, &PackingMode::Plain)?;
    println!("lp(2,inf), 4 vertices: separation {}", exact.separation);
    Ok(())
}
