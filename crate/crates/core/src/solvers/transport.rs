//! Moving packing witnesses between subspaces with a separation certificate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::Subspace;

use super::gap::distance_to_ball;
use super::packing::{separation, PackingResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportResult {
    /// Transported configuration, in coordinates of the target subspace.
    pub packing: PackingResult,
    /// `||a_i - b_i||` for each witness.
    pub shifts: Vec<f64>,
    pub max_shift: f64,
    /// `separation(source) - 2 max_shift`; never exceeds the transported separation.
    pub certified_lower: f64,
    /// Set when some shift exceeds `g_bound + tol`, i.e. the gap estimate is inconsistent.
    pub flagged: bool,
}

/// Sends each witness `a_i` (coordinates of `m`) to its nearest point `b_i` of `B_L`.
/// Since `d(b_i, b_j) >= d(a_i, a_j) - ||a_i - b_i|| - ||a_j - b_j||` for both the
/// plain and the symmetric dissimilarity, the transported separation is at least
/// `separation(source) - 2 max_i ||a_i - b_i||`.
pub fn transport_witness(
    result: &PackingResult,
    m: &Subspace,
    l: &Subspace,
    g_bound: f64,
    tol: f64,
) -> Result<TransportResult> {
    if !m.same_ambient(l) {
        return Err(Error::InvalidArgument(
            "subspaces live in different ambient spaces".into(),
        ));
    }
    let amb = m.ambient();
    let symmetric = result.mode.is_symmetric();
    let mut shifts = Vec::with_capacity(result.points.len());
    let mut coords = Vec::with_capacity(result.points.len());
    for c in &result.points {
        if c.len() != m.dim() {
            return Err(Error::DimensionMismatch {
                context: "transport_witness",
                expected: m.dim(),
                got: c.len(),
            });
        }
        let a = m.embed(c);
        let (_, b) = distance_to_ball(l, &a)?;
        shifts.push(amb.dist(&a, &b));
        coords.push(l.coordinates(&b));
    }
    let max_shift = shifts.iter().cloned().fold(0.0, f64::max);
    let sep = separation(l.space(), &coords, symmetric);
    let mut packing = result.clone();
    packing.points = coords;
    packing.separation = sep;
    packing.blocks = None;
    let flagged = max_shift > g_bound + tol;
    if flagged {
        packing
            .diagnostics
            .flags
            .push(format!("transport shift {max_shift:.3e} exceeds gap bound {g_bound:.3e}"));
    }
    Ok(TransportResult {
        packing,
        certified_lower: result.separation - 2.0 * max_shift,
        shifts,
        max_shift,
        flagged,
    })
}
