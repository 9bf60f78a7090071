//! Appreciable rank, dual rank, appreciable index and dual index.

use crate::dual::{dual_power, DualMatrix};
use crate::error::{ensure_square, Error, Result};
use crate::kernel;
use crate::matrix::RealMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DualIndexProfile {
    /// `rank(M)`.
    pub arank: usize,
    /// `rank([[M₀, M], [M, 0]]) − rank(M)`.
    pub drank: usize,
    /// `ind(M)`.
    pub aind: usize,
    /// Smallest `t ∈ [aind, 2·aind]` with `ARank(M̂^t) = Rank(M̂^t)`.
    pub dind: usize,
}

/// `(ARank, Rank)` for a dual matrix of any shape.
pub fn rank_profile(a: &DualMatrix) -> (usize, usize) {
    let arank = a.std().rank();
    let block = RealMatrix::block2x2(
        a.dual(),
        a.std(),
        a.std(),
        &RealMatrix::zeros(a.rows(), a.cols()),
    );
    (arank, block.rank() - arank)
}

/// Whether `ARank(M̂^t) = Rank(M̂^t)`.
pub(crate) fn ranks_agree_at(a: &DualMatrix, t: usize) -> Result<bool> {
    let (power, _) = dual_power(a, t)?;
    let (arank, drank) = rank_profile(&power);
    Ok(arank == drank)
}

pub fn index_profile(a: &DualMatrix) -> Result<DualIndexProfile> {
    ensure_square("index_profile", a.std())?;
    let (arank, drank) = rank_profile(a);
    let aind = kernel::index(a.std())?;
    for t in aind..=2 * aind {
        if ranks_agree_at(a, t)? {
            return Ok(DualIndexProfile {
                arank,
                drank,
                aind,
                dind: t,
            });
        }
    }
    Err(Error::InternalInvariantViolation(format!(
        "index_profile: no t in [{aind}, {}] equalizes ARank and Rank",
        2 * aind
    )))
}
