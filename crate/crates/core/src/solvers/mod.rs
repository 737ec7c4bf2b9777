//! Numerical engines behind the constants.

mod auerbach;
mod brute;
mod config;
mod covering;
mod gap;
mod packing;
mod transport;
mod two_point;

pub use auerbach::{auerbach, AuerbachSystem};
pub use brute::{brute_force_packing, exact_maximin_subset, CandidateSet, CANDIDATE_CAP};
pub use config::{CoveringBudget, SolverConfig};
pub use covering::{covering, covering_radius, covering_seeded, CoverTarget, CoveringResult, CoveringDiagnostics, ProbeSet};
pub use gap::{directed_gap, distance_to_ball, subspace_gap, GapResult, GapWitness};
pub use packing::{
    best_subset, contiguous_blocks, dissimilarity, maximin_packing, maximin_packing_seeded,
    separation, Blocks, PackingDiagnostics, PackingMode, PackingResult,
};
pub use transport::{transport_witness, TransportResult};
pub use two_point::{two_point_constant, two_point_seeded, TwoPointMode, TwoPointResult};
