//! Exact real-matrix algorithms: rank, Moore–Penrose inverse, index,
//! core-nilpotent decomposition, Drazin and group inverses.

use crate::error::{ensure_square, Error, Result};
use crate::matrix::RealMatrix;

/// `M = P · diag(C, N) · P⁻¹` with `C` invertible (`r x r`) and `N` nilpotent
/// of index at most `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoreNilpotentDecomposition {
    pub p: RealMatrix,
    pub p_inv: RealMatrix,
    pub c: RealMatrix,
    pub n: RealMatrix,
    pub r: usize,
    pub k: usize,
}

impl CoreNilpotentDecomposition {
    pub fn reconstruct(&self) -> RealMatrix {
        &(&self.p * &RealMatrix::block_diag(&self.c, &self.n)) * &self.p_inv
    }
}

pub fn rank(m: &RealMatrix) -> usize {
    m.rank()
}

/// Moore–Penrose inverse from the full-rank factorization `M = FG`:
/// `M† = Gᵀ(GGᵀ)⁻¹(FᵀF)⁻¹Fᵀ`, where `F` holds the pivot columns of `M` and
/// `G` the nonzero rows of its RREF.
pub fn moore_penrose(m: &RealMatrix) -> RealMatrix {
    let rref = m.rref();
    let r = rref.rank();
    if r == 0 {
        return RealMatrix::zeros(m.cols(), m.rows());
    }
    let f = m.select_columns(&rref.pivots);
    let g = rref.matrix.submatrix(0, r, 0, m.cols());
    let ft = f.transpose();
    let gt = g.transpose();
    // FᵀF and GGᵀ are r x r Gram matrices of independent vectors.
    let ftf_inv = (&ft * &f)
        .inverse()
        .expect("Gram matrix of full column rank F");
    let ggt_inv = (&g * &gt)
        .inverse()
        .expect("Gram matrix of full row rank G");
    &(&(&gt * &ggt_inv) * &ftf_inv) * &ft
}

/// Smallest positive `k` with `rank(M^{k+1}) = rank(M^k)`.
pub fn index(m: &RealMatrix) -> Result<usize> {
    ensure_square("index", m)?;
    let mut k = 1;
    let mut power = m.clone();
    let mut prev_rank = power.rank();
    loop {
        power = &power * m;
        let next_rank = power.rank();
        if next_rank == prev_rank {
            return Ok(k);
        }
        prev_rank = next_rank;
        k += 1;
    }
}

/// Core-nilpotent decomposition with `P = [pivot columns of M^k | null(M^k)]`.
pub fn core_nilpotent(m: &RealMatrix) -> Result<CoreNilpotentDecomposition> {
    let n = ensure_square("core_nilpotent", m)?;
    let k = index(m)?;
    let mk = m.pow(k);
    let rref = mk.rref();
    let r = rref.rank();
    let p = mk.select_columns(&rref.pivots).hstack(&rref.null_space());
    let p_inv = p.inverse().ok_or_else(|| {
        Error::InternalInvariantViolation(
            "core_nilpotent: range and null space of M^k are not complementary".into(),
        )
    })?;
    let b = &(&p_inv * m) * &p;
    let off_diagonal_zero = b.submatrix(0, r, r, n).is_zero() && b.submatrix(r, n, 0, r).is_zero();
    if !off_diagonal_zero {
        return Err(Error::InternalInvariantViolation(
            "core_nilpotent: similarity is not block diagonal".into(),
        ));
    }
    Ok(CoreNilpotentDecomposition {
        c: b.submatrix(0, r, 0, r),
        n: b.submatrix(r, n, r, n),
        p,
        p_inv,
        r,
        k,
    })
}

/// Drazin inverse `P · diag(C⁻¹, 0) · P⁻¹`.
pub fn drazin(m: &RealMatrix) -> Result<RealMatrix> {
    let d = core_nilpotent(m)?;
    let c_inv = d.c.inverse().ok_or_else(|| {
        Error::InternalInvariantViolation("core block of the decomposition is singular".into())
    })?;
    let core = RealMatrix::block_diag(&c_inv, &RealMatrix::zeros(m.rows() - d.r, m.rows() - d.r));
    Ok(&(&d.p * &core) * &d.p_inv)
}

/// Group inverse; defined only for index-1 matrices.
pub fn group(m: &RealMatrix) -> Result<RealMatrix> {
    let k = index(m)?;
    if k > 1 {
        return Err(Error::IndexTooLarge {
            op: "group",
            index: k,
        });
    }
    drazin(m)
}
