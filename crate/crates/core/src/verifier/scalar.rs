//! Scalar oracles and constant comparisons.

use alloc::format;

use crate::constants::{bound_constant, generalized_kantorovich, kantorovich, weights, CaseParams, SandwichBounds};
use crate::error::{Error, Result};
use crate::registry::{InequalityId, NuDomain};

/// `(1−ν) + νx − 2r((1+x)/2 − √x) − K^{r₁}(√x) x^ν`, nonnegative for `x > 0`.
pub fn scalar_lemma_gap(x: f64, nu: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    let (r, r1) = weights(nu)?;
    let s = libm::sqrt(x);
    let k = if r1 == 0.0 { 1.0 } else { libm::pow(kantorovich(s)?, r1) };
    let rhs = (1.0 - nu) + nu * x;
    let lhs = 2.0 * r * ((1.0 + x) / 2.0 - s) + k * libm::pow(x, nu);
    Ok(rhs - lhs)
}

/// Grid evaluation of `F(t) = ν t^{1−ν} + (1−ν) λ₀ t^{−ν}` on `[m, M]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FCheckReport {
    pub mu0: f64,
    pub lambda0: f64,
    pub max_value: f64,
    /// `|max F − μ₀|`.
    pub max_residual: f64,
    /// `|F(m) − μ₀|`.
    pub left_residual: f64,
    /// `|F(M) − μ₀|`.
    pub right_residual: f64,
    pub passes: bool,
}

/// Checks that `max F = F(m) = F(M) = μ₀` on an evenly spaced grid with
/// `grid_size` points including both ends.
pub fn scalar_f_check(m: f64, big_m: f64, nu: f64, grid_size: usize) -> Result<FCheckReport> {
    if grid_size < 3 {
        return Err(Error::ConfigInvalid(format!("grid needs at least 3 points, got {grid_size}")));
    }
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::WeightOutOfRange(nu));
    }
    let g = generalized_kantorovich(m, big_m, nu)?;
    let f = |t: f64| nu * libm::pow(t, 1.0 - nu) + (1.0 - nu) * g.lambda0 * libm::pow(t, -nu);
    let step = (big_m - m) / (grid_size - 1) as f64;
    let max_value = (0..grid_size)
        .map(|i| if i == grid_size - 1 { big_m } else { m + step * i as f64 })
        .map(f)
        .fold(f64::NEG_INFINITY, f64::max);
    let max_residual = (max_value - g.mu0).abs();
    let left_residual = (f(m) - g.mu0).abs();
    let right_residual = (f(big_m) - g.mu0).abs();
    let tol = 1e-9 * (1.0 + g.mu0);
    Ok(FCheckReport {
        mu0: g.mu0,
        lambda0: g.lambda0,
        max_value,
        max_residual,
        left_residual,
        right_residual,
        passes: max_residual <= tol && left_residual <= tol && right_residual <= tol,
    })
}

/// `bound_constant(a) / bound_constant(b)` on shared bounds and parameters.
///
/// Constants of entries stated for `ν = 1/2` only do not depend on `ν`; they
/// are evaluated at `ν = 1/2` so that they can be compared with weighted
/// entries at any `ν`.
pub fn compare_constants(
    id_a: InequalityId,
    id_b: InequalityId,
    bounds: &SandwichBounds,
    params: &CaseParams,
) -> Result<f64> {
    let constant = |id: InequalityId| {
        let mut p = *params;
        if id.info().nu == NuDomain::HalfOnly {
            p.nu = 0.5;
        }
        bound_constant(id, bounds, &p)
            .map_err(|e| Error::IncompatibleEntries(format!("{id} cannot be evaluated on {bounds}: {e}")))
    };
    if id_a.info().form != id_b.info().form {
        return Err(Error::IncompatibleEntries(format!("{id_a} and {id_b} compare different kinds of quantity")));
    }
    Ok(constant(id_a)? / constant(id_b)?)
}
