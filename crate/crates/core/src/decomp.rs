//! Dual block-diagonalization `M̂ = P̂ · diag(Ĉ, εN) · P̂⁻¹` for matrices with
//! appreciable index 1, and the inverses built from such decompositions.
//!
//! Construction: take the real core-nilpotent decomposition `M = P diag(C, 0) P⁻¹`
//! and partition `P⁻¹M₀P = [[M₁, M₂], [M₃, M₄]]`. Conjugating by `I + εT` with
//! `T = [[0, −C⁻¹M₂], [M₃C⁻¹, 0]]` clears the off-diagonal dual blocks, leaving
//! `Ĉ = C + εM₁` and `N = M₄`.

use crate::dual::{dual_inverse, dual_power, DualMatrix};
use crate::error::{ensure_square, Error, Result};
use crate::inverses::{wddi, wdgi};
use crate::kernel;
use crate::matrix::RealMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct DualBlockDecompositionInd1 {
    pub p: DualMatrix,
    pub p_inv: DualMatrix,
    pub c: DualMatrix,
    pub n: RealMatrix,
    pub r: usize,
}

impl DualBlockDecompositionInd1 {
    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    /// `P̂ · diag(top_left, bottom_right) · P̂⁻¹`.
    pub fn conjugate(&self, top_left: &DualMatrix, bottom_right: &DualMatrix) -> DualMatrix {
        &(&self.p * &DualMatrix::block_diag(top_left, bottom_right)) * &self.p_inv
    }

    pub fn reconstruct(&self) -> DualMatrix {
        self.conjugate(&self.c, &DualMatrix::from_dual(self.n.clone()))
    }

    fn zero_tail(&self) -> DualMatrix {
        let m = self.dim() - self.r;
        DualMatrix::zeros(m, m)
    }
}

pub fn block_diagonalize_ind1(a: &DualMatrix) -> Result<DualBlockDecompositionInd1> {
    let n = ensure_square("block_diagonalize_ind1", a.std())?;
    let real = kernel::core_nilpotent(a.std())?;
    if real.k > 1 {
        return Err(Error::IndexTooLarge {
            op: "block_diagonalize_ind1",
            index: real.k,
        });
    }
    let r = real.r;
    let c_inv = real.c.inverse().ok_or_else(|| {
        Error::InternalInvariantViolation("core block of the decomposition is singular".into())
    })?;
    let e = &(&real.p_inv * a.dual()) * &real.p;
    let m1 = e.submatrix(0, r, 0, r);
    let m2 = e.submatrix(0, r, r, n);
    let m3 = e.submatrix(r, n, 0, r);
    let m4 = e.submatrix(r, n, r, n);

    let t = RealMatrix::block2x2(
        &RealMatrix::zeros(r, r),
        &-&(&c_inv * &m2),
        &(&m3 * &c_inv),
        &RealMatrix::zeros(n - r, n - r),
    );
    // (I + εT)⁻¹ = I − εT
    let p = DualMatrix::new(real.p.clone(), &real.p * &t)?;
    let p_inv = DualMatrix::new(real.p_inv.clone(), -&(&t * &real.p_inv))?;
    let c = DualMatrix::new(real.c, m1)?;

    let decomp = DualBlockDecompositionInd1 {
        p,
        p_inv,
        c,
        n: m4,
        r,
    };
    if decomp.reconstruct() != *a {
        return Err(Error::InternalInvariantViolation(
            "block_diagonalize_ind1: reconstruction differs from input".into(),
        ));
    }
    Ok(decomp)
}

/// `P̂ · diag(Ĉ⁻¹, 0) · P̂⁻¹`.
pub fn wdgi_via_decomposition(a: &DualMatrix) -> Result<DualMatrix> {
    let d = block_diagonalize_ind1(a)?;
    wdgi_from(&d)
}

pub(crate) fn wdgi_from(d: &DualBlockDecompositionInd1) -> Result<DualMatrix> {
    Ok(d.conjugate(&dual_inverse(&d.c)?, &d.zero_tail()))
}

/// Group inverse of the weak group inverse, `P̂ · diag(Ĉ, 0) · P̂⁻¹`, and the
/// remainder `M̂ − (M̂_W^#)^# = P̂ · diag(0, εN) · P̂⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct SharpOfWeakGroup {
    pub sharp: DualMatrix,
    pub generator: DualMatrix,
}

pub fn sharp_of_weak_group(a: &DualMatrix) -> Result<SharpOfWeakGroup> {
    let d = block_diagonalize_ind1(a)?;
    Ok(sharp_from(&d))
}

pub(crate) fn sharp_from(d: &DualBlockDecompositionInd1) -> SharpOfWeakGroup {
    let sharp = d.conjugate(&d.c, &d.zero_tail());
    let zero_core = DualMatrix::zeros(d.r, d.r);
    let generator = d.conjugate(&zero_core, &DualMatrix::from_dual(d.n.clone()));
    SharpOfWeakGroup { sharp, generator }
}

/// Weak Drazin inverse `P̂ · diag(Ĉ⁻¹, 0) · P̂⁻¹` of `M̂ = P̂ · diag(Ĉ, N̂) · P̂⁻¹`.
///
/// `N̂` must be nilpotent; for a dual matrix that is equivalent to its standard
/// part being nilpotent, and then `N̂^{2m} = 0` for an `m x m` block. The result
/// is cross-checked against [`wddi`] of the assembled matrix.
pub fn wddi_from_given_decomposition(
    p: &DualMatrix,
    c: &DualMatrix,
    n_block: &DualMatrix,
) -> Result<DualMatrix> {
    let dim = ensure_square("wddi_from_given_decomposition", p.std())?;
    ensure_square("wddi_from_given_decomposition", c.std())?;
    let m = ensure_square("wddi_from_given_decomposition", n_block.std())?;
    if c.rows() + m != dim {
        return Err(Error::DimensionMismatch {
            op: "wddi_from_given_decomposition",
            expected: format!("blocks summing to {dim}"),
            found: format!("{} + {m}", c.rows()),
        });
    }
    let p_inv = dual_inverse(p)?;
    let c_inv = dual_inverse(c)?;
    let nilpotent = m == 0 || dual_power(n_block, 2 * m)?.0.is_zero();
    if !nilpotent {
        return Err(Error::PreconditionViolated(
            "nilpotent block has a non-nilpotent standard part".into(),
        ));
    }
    let assembled = &(p * &DualMatrix::block_diag(c, n_block)) * &p_inv;
    let result = &(p * &DualMatrix::block_diag(&c_inv, &DualMatrix::zeros(m, m))) * &p_inv;
    if wddi(&assembled)? != result {
        return Err(Error::InternalInvariantViolation(
            "decomposition form of the weak Drazin inverse disagrees with the closed form".into(),
        ));
    }
    Ok(result)
}

/// Cross-check of the two weak group inverse routes; used by tests and the CLI.
pub fn wdgi_routes_agree(a: &DualMatrix) -> Result<bool> {
    Ok(wdgi_via_decomposition(a)? == wdgi(a)?)
}
