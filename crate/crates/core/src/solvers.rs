//! Consistency tests and general solutions of `M̂x̂ = b̂` for square `M̂` with
//! appreciable index 1, both unrestricted and with `x̂ ∈ R(M̂)`.
//!
//! All solvers work in the block coordinates of
//! [`block_diagonalize_ind1`](crate::decomp::block_diagonalize_ind1):
//! with `P̂⁻¹b̂ = [b̂₁; b̂₂]` the system splits into `Ĉx̂₁ = b̂₁` and `εNx̂₂ = b̂₂`.

use crate::decomp::{block_diagonalize_ind1, sharp_from, wdgi_from, DualBlockDecompositionInd1};
use crate::dual::{dual_inverse, in_range, DualMatrix, ParametricDualSolutions};
use crate::error::{Error, Result};
use crate::indices::index_profile;
use crate::inverses::dgi;
use crate::kernel;
use crate::matrix::RealMatrix;

fn check_rhs(op: &'static str, a: &DualMatrix, b: &DualMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if b.rows() != a.rows() || b.cols() != 1 {
        return Err(Error::DimensionMismatch {
            op,
            expected: format!("{}x1 right-hand side", a.rows()),
            found: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    Ok(())
}

/// `(I − M̂_W^# M̂) b̂`.
fn projected_rhs(a: &DualMatrix, w: &DualMatrix, b: &DualMatrix) -> DualMatrix {
    let proj = &DualMatrix::identity(a.rows()) - &(w * a);
    &proj * b
}

fn ensure_solves(
    op: &str,
    a: &DualMatrix,
    b: &DualMatrix,
    sol: &ParametricDualSolutions,
) -> Result<()> {
    if a * &sol.particular != *b {
        return Err(Error::InternalInvariantViolation(format!(
            "{op}: particular solution does not satisfy the system"
        )));
    }
    if sol.generators.iter().any(|g| !(a * g).is_zero()) {
        return Err(Error::InternalInvariantViolation(format!(
            "{op}: generator is not annihilated by the matrix"
        )));
    }
    Ok(())
}

/// General solution of `M̂x̂ = b̂` for `AInd(M̂) = 1`.
///
/// Consistency requires (a) the standard part of `(I − M̂_W^#M̂)b̂` to vanish
/// and (b) `(I − M̂_W^#M̂)b̂ ∈ R(M̂ − (M̂_W^#)^#)`. The solution is
/// `P̂ [Ĉ⁻¹b̂₁; N†β₂ + (I − N†N)y₂ + εz₂]` where `b̂₂ = εβ₂`.
///
/// `N†` multiplies the coefficient `β₂`, not `b̂₂`; `N†b̂₂ = εN†β₂` does not
/// solve `εN x̂₂ = b̂₂`. The two free terms are returned as separate generators `P̂[0; I − N†N]`
/// and `P̂[0; εI]`.
pub fn solve_general(a: &DualMatrix, b: &DualMatrix) -> Result<ParametricDualSolutions> {
    check_rhs("solve_general", a, b)?;
    let d = block_diagonalize_ind1(a)?;
    let w = wdgi_from(&d)?;
    let pb = projected_rhs(a, &w, b);
    if !pb.std().is_zero() {
        return Err(Error::InconsistentStandardPart {
            residual: pb.std().clone(),
        });
    }
    let remainder = sharp_from(&d).generator;
    if !in_range(&remainder, &pb)? {
        return Err(Error::InconsistentDualPart {
            residual_std: pb.std().clone(),
            residual_dual: pb.dual().clone(),
        });
    }
    let sol = general_in_block_coordinates(&d, b)?;
    ensure_solves("solve_general", a, b, &sol)?;
    Ok(sol)
}

fn general_in_block_coordinates(
    d: &DualBlockDecompositionInd1,
    b: &DualMatrix,
) -> Result<ParametricDualSolutions> {
    let (n, r) = (d.dim(), d.r);
    let m = n - r;
    let pb = &d.p_inv * b;
    let b1 = pb.submatrix(0, r, 0, 1);
    let b2 = pb.submatrix(r, n, 0, 1);
    if !b2.std().is_zero() {
        return Err(Error::InternalInvariantViolation(
            "solve_general: lower block has a standard part after the consistency check".into(),
        ));
    }
    let x1 = &dual_inverse(&d.c)? * &b1;
    let n_pinv = kernel::moore_penrose(&d.n);
    let x2 = DualMatrix::from_std(&n_pinv * b2.dual());
    let particular = &d.p * &x1.vstack(&x2);

    let mut generators = Vec::new();
    if m > 0 {
        let free_std = &RealMatrix::identity(m) - &(&n_pinv * &d.n);
        let top = DualMatrix::zeros(r, m);
        generators.push(&d.p * &top.vstack(&DualMatrix::from_std(free_std)));
        generators.push(&d.p * &top.vstack(&DualMatrix::from_dual(RealMatrix::identity(m))));
    }
    Ok(ParametricDualSolutions {
        particular,
        generators,
    })
}

/// Solutions of `M̂x̂ = b̂` with `x̂ ∈ R(M̂)`, for `AInd(M̂) = 1`.
///
/// Exists iff `(I − M̂_W^#M̂)b̂ = 0`; then every such solution is
/// `M̂_W^#b̂ + (M̂ − (M̂_W^#)^#)ŷ`.
pub fn solve_restricted(a: &DualMatrix, b: &DualMatrix) -> Result<ParametricDualSolutions> {
    check_rhs("solve_restricted", a, b)?;
    let d = block_diagonalize_ind1(a)?;
    let w = wdgi_from(&d)?;
    let pb = projected_rhs(a, &w, b);
    if !pb.is_zero() {
        let (s, e) = pb.into_parts();
        return Err(Error::Inconsistent {
            residual: Some((s, e)),
        });
    }
    let sol = ParametricDualSolutions {
        particular: &w * b,
        generators: vec![sharp_from(&d).generator],
    };
    ensure_solves("solve_restricted", a, b, &sol)?;
    Ok(sol)
}

/// The `Ind(M̂) = 1` specializations: the general solution
/// `M̂^#b̂ + (I − M̂^#M̂)ŷ`, or the unique restricted solution `M̂^#b̂`.
/// Both require `(I − M̂^#M̂)b̂ = 0` and are checked against
/// [`solve_general`] / [`solve_restricted`].
pub fn solve_ind1_corollaries(
    a: &DualMatrix,
    b: &DualMatrix,
    restricted: bool,
) -> Result<ParametricDualSolutions> {
    check_rhs("solve_ind1_corollaries", a, b)?;
    let profile = index_profile(a)?;
    if profile.dind > 1 {
        return Err(Error::IndexTooLarge {
            op: "solve_ind1_corollaries",
            index: profile.dind,
        });
    }
    let g = dgi(a)?;
    let proj = &DualMatrix::identity(a.rows()) - &(&g * a);
    let pb = &proj * b;
    if !pb.is_zero() {
        let (s, e) = pb.into_parts();
        return Err(Error::Inconsistent {
            residual: Some((s, e)),
        });
    }
    let particular = &g * b;
    let (sol, general) = if restricted {
        (
            ParametricDualSolutions::unique(particular),
            solve_restricted(a, b)?,
        )
    } else {
        (
            ParametricDualSolutions {
                particular,
                generators: vec![proj],
            },
            solve_general(a, b)?,
        )
    };
    if !sol.same_set(&general) {
        return Err(Error::InternalInvariantViolation(
            "solve_ind1_corollaries: specialization disagrees with the general solver".into(),
        ));
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{dual_solve, mul};

    fn dm(std: &[&[i64]], dual: &[&[i64]]) -> DualMatrix {
        DualMatrix::new(RealMatrix::from_i64(std), RealMatrix::from_i64(dual)).unwrap()
    }

    fn col(std: &[i64], dual: &[i64]) -> DualMatrix {
        DualMatrix::new(RealMatrix::column_i64(std), RealMatrix::column_i64(dual)).unwrap()
    }

    fn e41() -> DualMatrix {
        dm(&[&[1, 0], &[0, 0]], &[&[0, 0], &[1, 1]])
    }

    #[test]
    fn general_e42() {
        let b = col(&[1, 0], &[0, 1]);
        let sol = solve_general(&e41(), &b).unwrap();
        assert!(sol.contains(&col(&[1, 0], &[0, 1])));
        assert!(sol.contains(&col(&[1, 0], &[0, 2])));
        assert!(sol.same_set(&dual_solve(&e41(), &b).unwrap()));
    }

    #[test]
    fn general_pure_dual_standard_part_fails() {
        let a = DualMatrix::from_dual(RealMatrix::identity(2));
        assert!(matches!(
            solve_general(&a, &col(&[1, 0], &[0, 0])),
            Err(Error::InconsistentStandardPart { .. })
        ));
    }

    #[test]
    fn general_dual_part_fails() {
        let a = DualMatrix::from_dual(RealMatrix::from_i64(&[&[1, 0], &[0, 0]]));
        assert!(matches!(
            solve_general(&a, &col(&[0, 0], &[0, 1])),
            Err(Error::InconsistentDualPart { .. })
        ));
    }

    #[test]
    fn restricted_e42() {
        let b = col(&[1, 0], &[0, 1]);
        let sol = solve_restricted(&e41(), &b).unwrap();
        assert_eq!(sol.particular, col(&[1, 0], &[0, 1]));
        assert_eq!(sol.generators.len(), 1);
        let x2 = col(&[1, 0], &[0, 2]);
        assert!(sol.contains(&x2));
        assert!(in_range(&e41(), &x2).unwrap());
        // ε[[0,0],[1,1]] spans the same set
        let displayed = ParametricDualSolutions {
            particular: sol.particular.clone(),
            generators: vec![DualMatrix::from_dual(RealMatrix::from_i64(&[
                &[0, 0],
                &[1, 1],
            ]))],
        };
        assert!(sol.same_set(&displayed));
    }

    #[test]
    fn restricted_inconsistent_and_unique() {
        let a = DualMatrix::from_std(RealMatrix::from_i64(&[&[1, 0], &[0, 0]]));
        assert!(matches!(
            solve_restricted(&a, &col(&[0, 1], &[0, 0])),
            Err(Error::Inconsistent { .. })
        ));
        let b = col(&[4, -2], &[1, 7]);
        let sol = solve_restricted(&DualMatrix::identity(2), &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.generators.iter().all(DualMatrix::is_zero));
    }

    #[test]
    fn corollaries() {
        let e43 = dm(&[&[1, 0], &[0, 0]], &[&[0, 1], &[1, 0]]);
        let b = mul(&e43, &col(&[1, 1], &[0, 0])).unwrap();
        let sol = solve_ind1_corollaries(&e43, &b, true).unwrap();
        assert!(sol.generators.is_empty());
        assert_eq!(sol.particular, &dgi(&e43).unwrap() * &b);
        solve_ind1_corollaries(&e43, &b, false).unwrap();

        let a = DualMatrix::from_std(RealMatrix::from_i64(&[&[1, 0], &[0, 0]]));
        let sol = solve_ind1_corollaries(&a, &col(&[1, 0], &[0, 0]), true).unwrap();
        assert_eq!(sol.particular, col(&[1, 0], &[0, 0]));
        assert!(matches!(
            solve_ind1_corollaries(&a, &col(&[0, 1], &[0, 0]), true),
            Err(Error::Inconsistent { .. })
        ));
        assert!(matches!(
            solve_ind1_corollaries(&e41(), &col(&[1, 0], &[0, 1]), true),
            Err(Error::IndexTooLarge { index: 2, .. })
        ));
    }

    #[test]
    fn higher_appreciable_index_rejected() {
        let j = dm(&[&[0, 1], &[0, 0]], &[&[0, 0], &[0, 0]]);
        let b = col(&[0, 0], &[0, 0]);
        assert!(matches!(
            solve_general(&j, &b),
            Err(Error::IndexTooLarge { .. })
        ));
        assert!(matches!(
            solve_restricted(&j, &b),
            Err(Error::IndexTooLarge { .. })
        ));
    }
}
