//! Gap between a coordinate plane and its rotations, and witness transport.
//!
//! ```bash
//! cargo run --release --example subspace_gap
//! ```

use bcl::constants;
use bcl::solvers::{maximin_packing, subspace_gap, transport_witness, PackingMode, SolverConfig};
use bcl::spaces::{SpaceSpec, Subspace};
use bcl::verify::rotated_plane;

fn main() -> bcl::Result<()> {
    let config = SolverConfig::default();
    for p in [2.0, 1.0] {
        let ambient = SpaceSpec::lp(4, p);
        let m = Subspace::new(&ambient, rotated_plane(0.0))?;
        for alpha in [0.05, 0.1, 0.2] {
            let l = Subspace::new(&ambient, rotated_plane(alpha))?;
            let gap = subspace_gap(&m, &l, &config)?;
            println!(
                "lp(4,{p}) alpha={alpha}: g={:.8} (g_ML={:.8}, g_LM={:.8}, sin={:.8})",
                gap.g,
                gap.g_ml,
                gap.g_lm,
                alpha.sin()
            );
        }
    }

    // a packing of M moved onto L loses at most twice the largest shift
    let ambient = SpaceSpec::lp(4, 2.0);
    let m = Subspace::new(&ambient, rotated_plane(0.0))?;
    let l = Subspace::new(&ambient, rotated_plane(0.1))?;
    let g = constants::gap(&m, &l, &config)?;
    let packing = maximin_packing(m.space(), 3, &PackingMode::Plain, &config)?;
    let moved = transport_witness(&packing, &m, &l, g.value, config.tol)?;
    println!(
        "transport: sep {:.6} -> {:.6}, certified >= {:.6}, max shift {:.6}",
        packing.separation, moved.packing.separation, moved.certified_lower, moved.max_shift
    );
    Ok(())
}
