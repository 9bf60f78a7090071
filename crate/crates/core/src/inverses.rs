//! Dual group and Drazin inverses (which may fail to exist) and their weak
//! counterparts (which always exist), plus checks of the defining equations.
//!
//! Every computation here splits the dual problem into real matrix work on
//! the standard part `M` and the dual part `M₀`; the standard part of each
//! inverse is the corresponding real inverse of `M`.

use std::fmt;

use crate::dual::{dual_power, power_dual_part, DualMatrix};
use crate::error::{ensure_square, Error, Result};
use crate::indices::{index_profile, ranks_agree_at};
use crate::kernel;
use crate::matrix::RealMatrix;

/// Three independently computed, equivalent criteria for the existence of
/// the dual Drazin inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct ExistenceProfile {
    pub ddi_exists: bool,
    /// `Ind(M̂) = AInd(M̂)`.
    pub index_equality: bool,
    /// `Rank(M̂^k) = ARank(M̂^k)` with `k = AInd(M̂)`.
    pub rank_equality: bool,
    /// `(I − MM^D) K₀ (I − MM^D)`.
    pub obstruction: RealMatrix,
}

pub fn existence_profile(a: &DualMatrix) -> Result<ExistenceProfile> {
    ensure_square("existence_profile", a.std())?;
    let profile = index_profile(a)?;
    let k = profile.aind;
    let obstruction = drazin_obstruction(a.std(), a.dual(), k)?;
    let rank_equality = ranks_agree_at(a, k)?;
    let index_equality = profile.dind == profile.aind;
    let ddi_exists = obstruction.is_zero();
    if ddi_exists != index_equality || ddi_exists != rank_equality {
        return Err(Error::InternalInvariantViolation(format!(
            "existence criteria disagree: obstruction zero = {ddi_exists}, \
             index equality = {index_equality}, rank equality = {rank_equality}"
        )));
    }
    Ok(ExistenceProfile {
        ddi_exists,
        index_equality,
        rank_equality,
        obstruction,
    })
}

fn drazin_obstruction(m: &RealMatrix, m0: &RealMatrix, k: usize) -> Result<RealMatrix> {
    let md = kernel::drazin(m)?;
    let proj = &RealMatrix::identity(m.rows()) - &(m * &md);
    let k0 = power_dual_part(m, m0, k);
    Ok(&(&proj * &k0) * &proj)
}

/// Dual part of the weak Drazin inverse with `terms` summands in each sum:
///
/// `(M^D)² (Σ_{i<terms} (M^D)^i M₀ M^i)(I − MM^D)
///   + (I − MM^D)(Σ_{i<terms} M^i M₀ (M^D)^i)(M^D)² − M^D M₀ M^D`.
///
/// With `terms = Ind(M̂)` this is the weak Drazin inverse; with
/// `terms = AInd(M̂)` it is the dual Drazin inverse when the latter exists.
/// Terms with `i ≥ AInd(M̂)` vanish, so every `terms ≥ AInd(M̂)` agrees.
pub fn drazin_dual_part(
    m: &RealMatrix,
    m0: &RealMatrix,
    md: &RealMatrix,
    terms: usize,
) -> RealMatrix {
    let n = m.rows();
    let proj = &RealMatrix::identity(n) - &(m * md);
    let md2 = md * md;
    let mut left = RealMatrix::zeros(n, n);
    let mut right = RealMatrix::zeros(n, n);
    let mut m_pow = RealMatrix::identity(n);
    let mut md_pow = RealMatrix::identity(n);
    for _ in 0..terms {
        left = &left + &(&(&md_pow * m0) * &m_pow);
        right = &right + &(&(&m_pow * m0) * &md_pow);
        m_pow = &m_pow * m;
        md_pow = &md_pow * md;
    }
    let first = &(&md2 * &left) * &proj;
    let second = &(&proj * &right) * &md2;
    let core = &(md * m0) * md;
    &(&first + &second) - &core
}

/// Dual Drazin inverse `M^D + εS`; fails with the nonzero obstruction when
/// it does not exist.
pub fn ddi(a: &DualMatrix) -> Result<DualMatrix> {
    ensure_square("ddi", a.std())?;
    let (m, m0) = (a.std(), a.dual());
    let k = kernel::index(m)?;
    let obstruction = drazin_obstruction(m, m0, k)?;
    if !obstruction.is_zero() {
        return Err(Error::DoesNotExist {
            op: "ddi",
            obstruction,
        });
    }
    let md = kernel::drazin(m)?;
    let s = drazin_dual_part(m, m0, &md, k);
    DualMatrix::new(md, s)
}

/// Weak dual Drazin inverse; exists for every square dual matrix.
pub fn wddi(a: &DualMatrix) -> Result<DualMatrix> {
    ensure_square("wddi", a.std())?;
    let t = index_profile(a)?.dind;
    let md = kernel::drazin(a.std())?;
    let s = drazin_dual_part(a.std(), a.dual(), &md, t);
    DualMatrix::new(md, s)
}

/// `(M^#)² M₀ (I − MM^#) + (I − MM^#) M₀ (M^#)² − M^# M₀ M^#`.
fn group_dual_part(m: &RealMatrix, m0: &RealMatrix, mg: &RealMatrix) -> RealMatrix {
    drazin_dual_part(m, m0, mg, 1)
}

/// Dual group inverse. Requires `ind(M) = 1` and
/// `(I − MM†) M₀ (I − M†M) = 0`; the latter matrix is the reported witness.
pub fn dgi(a: &DualMatrix) -> Result<DualMatrix> {
    ensure_square("dgi", a.std())?;
    let (m, m0) = (a.std(), a.dual());
    let k = kernel::index(m)?;
    if k > 1 {
        return Err(Error::IndexTooLarge {
            op: "dgi",
            index: k,
        });
    }
    let mp = kernel::moore_penrose(m);
    let id = RealMatrix::identity(m.rows());
    let witness = &(&(&id - &(m * &mp)) * m0) * &(&id - &(&mp * m));
    if !witness.is_zero() {
        return Err(Error::DoesNotExist {
            op: "dgi",
            obstruction: witness,
        });
    }
    let mg = kernel::group(m)?;
    let r = group_dual_part(m, m0, &mg);
    DualMatrix::new(mg, r)
}

/// Weak dual group inverse `M^# + εR`; requires `AInd(M̂) = 1`.
pub fn wdgi(a: &DualMatrix) -> Result<DualMatrix> {
    ensure_square("wdgi", a.std())?;
    let (m, m0) = (a.std(), a.dual());
    let k = kernel::index(m)?;
    if k > 1 {
        return Err(Error::IndexTooLarge {
            op: "wdgi",
            index: k,
        });
    }
    let mg = kernel::group(m)?;
    let r = group_dual_part(m, m0, &mg);
    DualMatrix::new(mg, r)
}

/// Which defining equation set to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InverseKind {
    /// `M̂X̂M̂ = M̂, X̂M̂X̂ = X̂, M̂X̂ = X̂M̂`.
    Group,
    /// `M̂X̂M̂^k = M̂^k, …` with `k = AInd(M̂)`.
    DrazinK,
    /// `M̂X̂M̂^t = M̂^t, …` with `t = Ind(M̂)`.
    WddiT,
    /// `M̂X̂M̂² = M̂², …`.
    Wdgi,
}

impl InverseKind {
    pub const ALL: [InverseKind; 4] = [
        InverseKind::Group,
        InverseKind::DrazinK,
        InverseKind::WddiT,
        InverseKind::Wdgi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InverseKind::Group => "group",
            InverseKind::DrazinK => "drazin-k",
            InverseKind::WddiT => "wddi-t",
            InverseKind::Wdgi => "wdgi",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: InverseKind,
    pub exponent: usize,
    pub equation_results: Vec<(String, bool)>,
    pub all_hold: bool,
}

/// Checks each defining equation of `kind`, split into standard and dual
/// parts, exactly.
pub fn verify(a: &DualMatrix, x: &DualMatrix, kind: InverseKind) -> Result<VerificationReport> {
    ensure_square("verify", a.std())?;
    if x.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            op: "verify",
            expected: format!("{:?}", a.shape()),
            found: format!("{:?}", x.shape()),
        });
    }
    let exponent = match kind {
        InverseKind::Group => 1,
        InverseKind::DrazinK => kernel::index(a.std())?,
        InverseKind::WddiT => index_profile(a)?.dind,
        InverseKind::Wdgi => 2,
    };
    let (power, _) = dual_power(a, exponent)?;
    let pw = if exponent == 1 { "" } else { "^p" };
    let ax = a * x;
    let xa = x * a;
    let checks = [
        (format!("MXM{pw} = M{pw}"), &ax * &power, power.clone()),
        ("XMX = X".to_string(), &xa * x, x.clone()),
        ("MX = XM".to_string(), ax.clone(), xa.clone()),
    ];
    let mut equation_results = Vec::with_capacity(6);
    for (label, lhs, rhs) in &checks {
        let label = label.replace("^p", &format!("^{exponent}"));
        equation_results.push((format!("{label} (standard part)"), lhs.std() == rhs.std()));
        equation_results.push((format!("{label} (dual part)"), lhs.dual() == rhs.dual()));
    }
    let all_hold = equation_results.iter().all(|(_, ok)| *ok);
    Ok(VerificationReport {
        kind,
        exponent,
        equation_results,
        all_hold,
    })
}
