//! Dual numbers `a + εa₀` (with `ε² = 0`) and dual matrices `M + εM₀`.
//!
//! A dual matrix is stored as its standard part `M` and dual part `M₀`, both
//! [`RealMatrix`] values of the same shape. The product rule is
//! `(A + εA₀)(B + εB₀) = AB + ε(AB₀ + A₀B)`.
//!
//! Dual linear systems `M̂x̂ = b̂` are reduced to the doubled real system
//! `[[M, 0], [M₀, M]] · [x; x₀] = [b; b₀]`. The same encoding decides set
//! questions: the dual span `{Ĝŷ}` of a generator `Ĝ` is exactly the real
//! column space of `[[G, 0], [G₀, G]]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{ensure_square, Error, Result};
use crate::matrix::{format_rational, Rational, RealMatrix};

/// Dual number `std + ε·dual`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualScalar {
    pub std: Rational,
    pub dual: Rational,
}

impl DualScalar {
    pub fn new(std: Rational, dual: Rational) -> Self {
        DualScalar { std, dual }
    }

    pub fn zero() -> Self {
        DualScalar::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        DualScalar::new(Rational::one(), Rational::zero())
    }

    /// The dual unit ε.
    pub fn epsilon() -> Self {
        DualScalar::new(Rational::zero(), Rational::one())
    }

    /// `(a + εa₀)⁻¹ = 1/a − ε a₀/a²`; `None` when the standard part is zero.
    pub fn recip(&self) -> Option<DualScalar> {
        if self.std.is_zero() {
            return None;
        }
        let inv = self.std.recip();
        let dual = -(&self.dual * &inv * &inv);
        Some(DualScalar::new(inv, dual))
    }
}

impl Add for &DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: &DualScalar) -> DualScalar {
        DualScalar::new(&self.std + &rhs.std, &self.dual + &rhs.dual)
    }
}

impl Sub for &DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: &DualScalar) -> DualScalar {
        DualScalar::new(&self.std - &rhs.std, &self.dual - &rhs.dual)
    }
}

impl Mul for &DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: &DualScalar) -> DualScalar {
        DualScalar::new(
            &self.std * &rhs.std,
            &self.std * &rhs.dual + &self.dual * &rhs.std,
        )
    }
}

impl Neg for &DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar::new(-&self.std, -&self.dual)
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + ε{}",
            format_rational(&self.std),
            format_rational(&self.dual)
        )
    }
}

/// Dual matrix `std + ε·dual`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualMatrix {
    std: RealMatrix,
    dual: RealMatrix,
}

impl DualMatrix {
    pub fn new(std: RealMatrix, dual: RealMatrix) -> Result<Self> {
        if std.shape() != dual.shape() {
            return Err(Error::DimensionMismatch {
                op: "DualMatrix::new",
                expected: format!("{:?}", std.shape()),
                found: format!("{:?}", dual.shape()),
            });
        }
        Ok(DualMatrix { std, dual })
    }

    /// `M + ε0`.
    pub fn from_std(std: RealMatrix) -> Self {
        let dual = RealMatrix::zeros(std.rows(), std.cols());
        DualMatrix { std, dual }
    }

    /// `0 + εM₀`.
    pub fn from_dual(dual: RealMatrix) -> Self {
        let std = RealMatrix::zeros(dual.rows(), dual.cols());
        DualMatrix { std, dual }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_std(RealMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_std(RealMatrix::identity(n))
    }

    pub fn std(&self) -> &RealMatrix {
        &self.std
    }

    pub fn dual(&self) -> &RealMatrix {
        &self.dual
    }

    pub fn into_parts(self) -> (RealMatrix, RealMatrix) {
        (self.std, self.dual)
    }

    pub fn rows(&self) -> usize {
        self.std.rows()
    }

    pub fn cols(&self) -> usize {
        self.std.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.std.shape()
    }

    pub fn is_square(&self) -> bool {
        self.std.is_square()
    }

    pub fn is_zero(&self) -> bool {
        self.std.is_zero() && self.dual.is_zero()
    }

    pub fn get(&self, i: usize, j: usize) -> DualScalar {
        DualScalar::new(self.std[(i, j)].clone(), self.dual[(i, j)].clone())
    }

    pub fn scale(&self, s: &DualScalar) -> DualMatrix {
        DualMatrix {
            std: self.std.scale(&s.std),
            dual: &self.dual.scale(&s.std) + &self.std.scale(&s.dual),
        }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> DualMatrix {
        DualMatrix {
            std: self.std.submatrix(r0, r1, c0, c1),
            dual: self.dual.submatrix(r0, r1, c0, c1),
        }
    }

    pub fn hstack(&self, other: &DualMatrix) -> DualMatrix {
        DualMatrix {
            std: self.std.hstack(&other.std),
            dual: self.dual.hstack(&other.dual),
        }
    }

    pub fn vstack(&self, other: &DualMatrix) -> DualMatrix {
        DualMatrix {
            std: self.std.vstack(&other.std),
            dual: self.dual.vstack(&other.dual),
        }
    }

    pub fn block2x2(a: &DualMatrix, b: &DualMatrix, c: &DualMatrix, d: &DualMatrix) -> DualMatrix {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn block_diag(a: &DualMatrix, b: &DualMatrix) -> DualMatrix {
        Self::block2x2(
            a,
            &Self::zeros(a.rows(), b.cols()),
            &Self::zeros(b.rows(), a.cols()),
            b,
        )
    }

    /// The real matrix `[[M, 0], [M₀, M]]` representing left multiplication
    /// by `self` on stacked vectors `[x; x₀]`.
    pub fn doubled(&self) -> RealMatrix {
        RealMatrix::block2x2(
            &self.std,
            &RealMatrix::zeros(self.rows(), self.cols()),
            &self.dual,
            &self.std,
        )
    }

    /// Stacks a dual column (or matrix) as `[std; dual]`.
    pub fn stacked(&self) -> RealMatrix {
        self.std.vstack(&self.dual)
    }

    /// Inverse of [`DualMatrix::stacked`].
    pub fn from_stacked(v: &RealMatrix) -> DualMatrix {
        assert!(
            v.rows().is_multiple_of(2),
            "stacked matrix must have an even row count"
        );
        let n = v.rows() / 2;
        DualMatrix {
            std: v.submatrix(0, n, 0, v.cols()),
            dual: v.submatrix(n, 2 * n, 0, v.cols()),
        }
    }

    /// Shape-checked product with `ε² = 0`.
    pub fn try_mul(&self, rhs: &DualMatrix) -> Result<DualMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch {
                op: "mul",
                expected: format!("{} rows", self.cols()),
                found: format!("{} rows", rhs.rows()),
            });
        }
        Ok(DualMatrix {
            std: &self.std * &rhs.std,
            dual: &(&self.std * &rhs.dual) + &(&self.dual * &rhs.std),
        })
    }
}

impl<'a> Mul<&'a DualMatrix> for &'a DualMatrix {
    type Output = DualMatrix;
    fn mul(self, rhs: &'a DualMatrix) -> DualMatrix {
        match self.try_mul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl<'a> Add<&'a DualMatrix> for &'a DualMatrix {
    type Output = DualMatrix;
    fn add(self, rhs: &'a DualMatrix) -> DualMatrix {
        DualMatrix {
            std: &self.std + &rhs.std,
            dual: &self.dual + &rhs.dual,
        }
    }
}

impl<'a> Sub<&'a DualMatrix> for &'a DualMatrix {
    type Output = DualMatrix;
    fn sub(self, rhs: &'a DualMatrix) -> DualMatrix {
        DualMatrix {
            std: &self.std - &rhs.std,
            dual: &self.dual - &rhs.dual,
        }
    }
}

impl Neg for &DualMatrix {
    type Output = DualMatrix;
    fn neg(self) -> DualMatrix {
        DualMatrix {
            std: -&self.std,
            dual: -&self.dual,
        }
    }
}

impl fmt::Debug for DualMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DualMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε{}", self.std, self.dual)
    }
}

/// `A · B` for dual matrices.
pub fn mul(a: &DualMatrix, b: &DualMatrix) -> Result<DualMatrix> {
    a.try_mul(b)
}

/// Closed form of the dual part of `(M + εM₀)^t`: `Σ_{i=1..t} M^{t−i} M₀ M^{i−1}`.
pub fn power_dual_part(m: &RealMatrix, m0: &RealMatrix, t: usize) -> RealMatrix {
    let mut powers = vec![RealMatrix::identity(m.rows())];
    for i in 1..t {
        let next = &powers[i - 1] * m;
        powers.push(next);
    }
    let mut k = RealMatrix::zeros(m.rows(), m.cols());
    for i in 1..=t {
        k = &k + &(&(&powers[t - i] * m0) * &powers[i - 1]);
    }
    k
}

/// `A^t` (t ≥ 1) together with the closed-form dual part `K`.
///
/// The power is assembled as `M^t + εK`; the repeated-product route is
/// computed alongside and any disagreement is reported as an internal error.
pub fn dual_power(a: &DualMatrix, t: usize) -> Result<(DualMatrix, RealMatrix)> {
    ensure_square("dual_power", a.std())?;
    if t == 0 {
        return Err(Error::PreconditionViolated(
            "dual_power exponent must be positive".into(),
        ));
    }
    let k = power_dual_part(a.std(), a.dual(), t);
    let closed = DualMatrix {
        std: a.std().pow(t),
        dual: k.clone(),
    };
    let mut repeated = a.clone();
    for _ in 1..t {
        repeated = &repeated * a;
    }
    if repeated != closed {
        return Err(Error::InternalInvariantViolation(format!(
            "dual_power: closed form disagrees with repeated product at t = {t}"
        )));
    }
    Ok((closed, k))
}

/// `(A + εB)⁻¹ = A⁻¹ − εA⁻¹BA⁻¹`.
pub fn dual_inverse(a: &DualMatrix) -> Result<DualMatrix> {
    ensure_square("dual_inverse", a.std())?;
    let inv = a
        .std()
        .inverse()
        .ok_or(Error::NotInvertible("dual_inverse"))?;
    let dual = -&(&(&inv * a.dual()) * &inv);
    Ok(DualMatrix { std: inv, dual })
}

/// A dual affine set `{ particular + Σᵢ Ĝᵢ ŷᵢ }` with each `ŷᵢ` an arbitrary
/// dual column of length `Ĝᵢ.cols()`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricDualSolutions {
    pub particular: DualMatrix,
    pub generators: Vec<DualMatrix>,
}

impl ParametricDualSolutions {
    pub fn unique(particular: DualMatrix) -> Self {
        ParametricDualSolutions {
            particular,
            generators: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.particular.rows()
    }

    /// Real matrix whose column space is the real encoding of the dual span
    /// of all generators.
    pub fn span_matrix(&self) -> RealMatrix {
        let n = self.dimension();
        self.generators
            .iter()
            .fold(RealMatrix::zeros(2 * n, 0), |acc, g| {
                acc.hstack(&g.doubled())
            })
    }

    /// Whether the generators contribute nothing.
    pub fn is_singleton(&self) -> bool {
        self.span_matrix().rank() == 0
    }

    /// `particular + Σᵢ Ĝᵢ ŷᵢ` for the given parameter columns.
    pub fn member(&self, params: &[DualMatrix]) -> Result<DualMatrix> {
        if params.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                op: "ParametricDualSolutions::member",
                expected: format!("{} parameters", self.generators.len()),
                found: format!("{} parameters", params.len()),
            });
        }
        let mut x = self.particular.clone();
        for (g, y) in self.generators.iter().zip(params) {
            x = &x + &g.try_mul(y)?;
        }
        Ok(x)
    }

    pub fn contains(&self, x: &DualMatrix) -> bool {
        if x.shape() != self.particular.shape() {
            return false;
        }
        let diff = (x - &self.particular).stacked();
        self.span_matrix().column_space_contains(&diff)
    }

    pub fn is_subset_of(&self, other: &ParametricDualSolutions) -> bool {
        other.contains(&self.particular)
            && other
                .span_matrix()
                .column_space_contains(&self.span_matrix())
    }

    pub fn same_set(&self, other: &ParametricDualSolutions) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }
}

/// Full solution set of `A x̂ = b̂` through the doubled real system.
///
/// Generators are the doubled system's null-space vectors read back as dual
/// columns; those with a nonzero standard part come first, followed by the
/// purely ε-direction ones.
pub fn dual_solve(a: &DualMatrix, b: &DualMatrix) -> Result<ParametricDualSolutions> {
    if a.rows() != b.rows() || b.cols() != 1 {
        return Err(Error::DimensionMismatch {
            op: "dual_solve",
            expected: format!("{}x1 right-hand side", a.rows()),
            found: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let Some(sol) = a.doubled().solve(&b.stacked()) else {
        return Err(Error::Inconsistent { residual: None });
    };
    let particular = DualMatrix::from_stacked(&sol.particular);
    let (mut standard, mut epsilon): (Vec<_>, Vec<_>) = (0..sol.null_space.cols())
        .map(|j| DualMatrix::from_stacked(&sol.null_space.column(j)))
        .partition(|g| !g.std().is_zero());
    standard.append(&mut epsilon);
    Ok(ParametricDualSolutions {
        particular,
        generators: standard,
    })
}

/// Whether `v ∈ R(A)`, i.e. `A x̂ = v` has a dual solution.
pub fn in_range(a: &DualMatrix, v: &DualMatrix) -> Result<bool> {
    match dual_solve(a, v) {
        Ok(_) => Ok(true),
        Err(Error::Inconsistent { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}
