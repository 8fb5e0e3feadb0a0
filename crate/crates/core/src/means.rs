//! Weighted arithmetic and geometric operator means.
//!
//! The weight `nu` always attaches to the second argument:
//! `A ∇_ν B = (1−ν)A + νB` and `A ♯_ν B = A^{1/2}(A^{-1/2} B A^{-1/2})^ν A^{1/2}`.
//! With this pairing `A ♯_ν B ≤ A ∇_ν B`; the opposite convention is
//! recovered by `ν ↦ 1−ν`.

use crate::constants::weights;
use crate::error::{Error, Result};
use crate::linalg::{
    eigh_with, matrix_power_with, power_of, psd_slack, HermitianMatrix, JacobiSettings, PD_REL_THRESHOLD,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanParams {
    pub nu: f64,
}

impl MeanParams {
    pub fn new(nu: f64) -> Result<Self> {
        check_weight(nu)?;
        Ok(Self { nu })
    }
}

fn check_weight(nu: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::WeightOutOfRange(nu));
    }
    Ok(())
}

fn check_dims(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

/// `(1−ν)A + νB`.
pub fn arithmetic_mean(a: &HermitianMatrix, b: &HermitianMatrix, nu: f64) -> Result<HermitianMatrix> {
    check_dims(a, b)?;
    check_weight(nu)?;
    if nu == 0.0 {
        return Ok(a.clone());
    }
    if nu == 1.0 {
        return Ok(b.clone());
    }
    a.combine(1.0 - nu, b, nu)
}

/// `A^{1/2}(A^{-1/2} B A^{-1/2})^ν A^{1/2}` for positive definite `A` and
/// positive semidefinite `B`.
pub fn geometric_mean(a: &HermitianMatrix, b: &HermitianMatrix, nu: f64) -> Result<HermitianMatrix> {
    geometric_mean_with(a, b, nu, JacobiSettings::default())
}

pub fn geometric_mean_with(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    nu: f64,
    settings: JacobiSettings,
) -> Result<HermitianMatrix> {
    check_dims(a, b)?;
    check_weight(nu)?;

    let da = eigh_with(a, settings);
    let (lmin, lmax) = (da.min_eigenvalue(), da.max_eigenvalue());
    if !(lmax > 0.0 && lmin > PD_REL_THRESHOLD * lmax) {
        return Err(Error::SingularMatrix { min_eigenvalue: lmin });
    }
    let db = eigh_with(b, settings);
    if db.min_eigenvalue() < -psd_slack(db.max_eigenvalue()) {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: db.min_eigenvalue() });
    }
    if nu == 0.0 {
        return Ok(a.clone());
    }
    if nu == 1.0 {
        return Ok(b.clone());
    }

    let a_half = power_of(&da, 0.5)?;
    let a_neg_half = power_of(&da, -0.5)?;
    let inner = b.congruence(a_neg_half.as_matrix())?;
    let inner_pow = power_of(&eigh_with(&inner, settings), nu)?;
    inner_pow.congruence(a_half.as_matrix())
}

/// `A ∇_ν B + 2rMm (A⁻¹ ∇ B⁻¹ − A⁻¹ ♯ B⁻¹)` with `r = min{ν, 1−ν}`; the
/// unweighted means inside the parentheses use `ν = 1/2`.
pub fn bracket_term(a: &HermitianMatrix, b: &HermitianMatrix, m: f64, big_m: f64, nu: f64) -> Result<HermitianMatrix> {
    bracket_term_with(a, b, m, big_m, nu, JacobiSettings::default())
}

pub fn bracket_term_with(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    m: f64,
    big_m: f64,
    nu: f64,
    settings: JacobiSettings,
) -> Result<HermitianMatrix> {
    check_dims(a, b)?;
    check_weight(nu)?;
    if !(m > 0.0 && m <= big_m && big_m.is_finite()) {
        return Err(Error::BadBounds(alloc::format!("bracket needs 0 < m ≤ M, got ({m}, {big_m})")));
    }
    let (r, _) = weights(nu)?;
    let mean = arithmetic_mean(a, b, nu)?;
    if r == 0.0 {
        // still reject singular input, as the r > 0 branch would
        matrix_power_with(a, -1.0, settings)?;
        matrix_power_with(b, -1.0, settings)?;
        return Ok(mean);
    }
    let defect = amgm_defect_of_inverses_with(a, b, settings)?;
    mean.combine(1.0, &defect, 2.0 * r * big_m * m)
}

/// `A⁻¹ ∇ B⁻¹ − A⁻¹ ♯ B⁻¹`, positive semidefinite by the AM-GM inequality.
pub fn amgm_defect_of_inverses(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    amgm_defect_of_inverses_with(a, b, JacobiSettings::default())
}

pub fn amgm_defect_of_inverses_with(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    settings: JacobiSettings,
) -> Result<HermitianMatrix> {
    let a_inv = matrix_power_with(a, -1.0, settings)?;
    let b_inv = matrix_power_with(b, -1.0, settings)?;
    arithmetic_mean(&a_inv, &b_inv, 0.5)?.sub(&geometric_mean_with(&a_inv, &b_inv, 0.5, settings)?)
}
