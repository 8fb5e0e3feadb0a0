//! Evaluation of registry entries on concrete instances.
//!
//! A check assembles both sides of the entry, then measures
//! `gap = λ_min(RHS − LHS)` (Loewner entries) or `gap = RHS − LHS` (scalar
//! entries). The verdict holds when `gap / (1 + ‖RHS‖) ≥ −tol`.

mod scalar;
mod search;
mod suite;

pub use scalar::{compare_constants, scalar_f_check, scalar_lemma_gap, FCheckReport};
pub use search::{tightness_search, SearchConfig, SearchPoint, SearchRecord};
pub use suite::{
    aggregate, p_candidates, plan_suite, run_suite, run_trial, CaseRecord, Report, SuiteConfig, SummaryRow, TrialSpec,
};

use alloc::format;

use crate::constants::{bound_constant, weights, CaseParams};
use crate::error::{Error, Result};
use crate::linalg::{eigh_with, loewner_gap_with, matrix_power_with, HermitianMatrix, JacobiSettings};
use crate::maps::{apply_map, MapSpec};
use crate::means::{arithmetic_mean, bracket_term_with, geometric_mean_with};
use crate::registry::InequalityId;
use crate::sampler::Instance;

/// Default threshold on the relative gap.
pub const DEFAULT_TOL: f64 = 1e-9;

/// One entry evaluated on one instance with one map and parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCase {
    pub id: InequalityId,
    pub instance: Instance,
    pub phi: MapSpec,
    pub params: CaseParams,
}

/// Numerical settings of a check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckSettings {
    /// A verdict holds when `relative_gap ≥ −tol`.
    pub tol: f64,
    pub jacobi: JacobiSettings,
    /// Multiplies the entry's constant; `1` checks the inequality as stated.
    pub rhs_constant_scale: f64,
}

impl Default for CheckSettings {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, jacobi: JacobiSettings::default(), rhs_constant_scale: 1.0 }
    }
}

impl CheckSettings {
    /// Same tolerance with the eigensolver threshold divided by 100.
    pub fn tightened(self) -> Self {
        Self { jacobi: self.jacobi.tightened(), ..self }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub id: InequalityId,
    /// Operator norm of the left side (the scalar itself for scalar entries).
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    pub gap: f64,
    /// `gap / (1 + rhs_norm)`.
    pub relative_gap: f64,
    pub holds: bool,
    pub seed: u64,
    pub params: CaseParams,
}

enum Sides {
    Loewner(HermitianMatrix, HermitianMatrix),
    Scalar { lhs: f64, rhs: f64, gap: f64 },
}

/// Shared evaluation context for one case.
struct Ctx<'a> {
    case: &'a InequalityCase,
    jacobi: JacobiSettings,
}

impl Ctx<'_> {
    fn a(&self) -> &HermitianMatrix {
        &self.case.instance.a
    }

    fn b(&self) -> &HermitianMatrix {
        &self.case.instance.b
    }

    fn nu(&self) -> f64 {
        self.case.params.nu
    }

    fn phi(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        apply_map(&self.case.phi, x)
    }

    fn pow(&self, x: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
        matrix_power_with(x, t, self.jacobi)
    }

    fn gm(&self, x: &HermitianMatrix, y: &HermitianMatrix, nu: f64) -> Result<HermitianMatrix> {
        geometric_mean_with(x, y, nu, self.jacobi)
    }

    fn norm(&self, x: &HermitianMatrix) -> f64 {
        let d = eigh_with(x, self.jacobi);
        d.min_eigenvalue().abs().max(d.max_eigenvalue().abs())
    }

    /// `A ∇_ν B`.
    fn arithmetic(&self) -> Result<HermitianMatrix> {
        arithmetic_mean(self.a(), self.b(), self.nu())
    }

    /// The bracket `A∇_νB + 2rMm(A⁻¹∇B⁻¹ − A⁻¹♯B⁻¹)` on the outer interval.
    fn bracket(&self) -> Result<HermitianMatrix> {
        let (m, big_m) = self
            .case
            .instance
            .bounds
            .outer()
            .ok_or_else(|| Error::HypothesisNotMet(format!("{}: bracket needs an outer interval", self.case.id)))?;
        bracket_term_with(self.a(), self.b(), m, big_m, self.nu(), self.jacobi)
    }

    /// `Φ(A ♯_ν B)`.
    fn inside(&self) -> Result<HermitianMatrix> {
        self.phi(&self.gm(self.a(), self.b(), self.nu())?)
    }

    /// `Φ(A) ♯_ν Φ(B)`.
    fn outside(&self) -> Result<HermitianMatrix> {
        self.gm(&self.phi(self.a())?, &self.phi(self.b())?, self.nu())
    }

    /// `Φ(base)^p ≤ c · (Φ(G) or Φ(A)♯_νΦ(B))^p`.
    fn powered(&self, base: HermitianMatrix, p: f64, c: f64) -> Result<Sides> {
        let lhs = self.pow(&self.phi(&base)?, p)?;
        let right = if self.case.id.is_outside() { self.outside()? } else { self.inside()? };
        Ok(Sides::Loewner(lhs, self.pow(&right, p)?.scale(c)))
    }
}

/// Smallest `α` with `A ≤ αB`, by bisection on the sign of `λ_min(αB − A)`.
fn loewner_ratio(a: &HermitianMatrix, b: &HermitianMatrix, jacobi: JacobiSettings) -> Result<f64> {
    let da = eigh_with(a, jacobi);
    let db = eigh_with(b, jacobi);
    if !(db.min_eigenvalue() > 0.0) {
        return Err(Error::SingularMatrix { min_eigenvalue: db.min_eigenvalue() });
    }
    let mut lo = (da.min_eigenvalue() / db.max_eigenvalue()).max(0.0);
    let mut hi = da.max_eigenvalue() / db.min_eigenvalue();
    for _ in 0..200 {
        if hi - lo <= 1e-16 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if loewner_gap_with(a, &b.scale(mid), jacobi)? >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn assemble(ctx: &Ctx<'_>, c: f64) -> Result<Sides> {
    use InequalityId::*;
    let case = ctx.case;
    let CaseParams { nu, p, alpha } = case.params;
    let (r, _) = weights(nu)?;

    Ok(match case.id {
        Amgm => Sides::Loewner(ctx.inside()?, ctx.phi(&ctx.arithmetic()?)?),
        LoewnerHeinz => Sides::Loewner(ctx.pow(ctx.a(), p)?, ctx.pow(ctx.b(), p)?),
        Lin => Sides::Loewner(ctx.phi(&ctx.arithmetic()?)?, ctx.inside()?.scale(c)),
        LinSquaredInside | LinSquaredOutside => ctx.powered(ctx.arithmetic()?, 2.0, c)?,
        LinPowerInside | LinPowerOutside | Thm11Inside | Thm11Outside | Thm13Inside | Thm13Outside | ZhangInside
        | ZhangOutside | YangWangInside | YangWangOutside => ctx.powered(ctx.arithmetic()?, p, c)?,
        Thm24Inside | Thm24Outside => ctx.powered(ctx.bracket()?, 2.0, c)?,
        Thm12Inside | Thm12Outside | Cor26Inside | Cor26Outside | Thm27Inside | Thm27Outside | Thm29Inside
        | Thm29Outside | Thm29ProofInside | Thm29ProofOutside | Thm210Inside | Thm210Outside => {
            ctx.powered(ctx.bracket()?, p, c)?
        }
        Choi => {
            let lhs = ctx.pow(&ctx.phi(ctx.a())?, -1.0)?;
            let rhs = ctx.phi(&ctx.pow(ctx.a(), -1.0)?)?;
            Sides::Loewner(lhs, rhs)
        }
        NormProduct => {
            let lhs = ctx.a().matmul(ctx.b())?.spectral_norm();
            let s = ctx.norm(&ctx.a().add(ctx.b())?);
            let rhs = 0.25 * s * s;
            Sides::Scalar { lhs, rhs, gap: rhs - lhs }
        }
        NormPowerSum => {
            let lhs = ctx.norm(&ctx.pow(ctx.a(), alpha)?.add(&ctx.pow(ctx.b(), alpha)?)?);
            let rhs = ctx.norm(&ctx.pow(&ctx.a().add(ctx.b())?, alpha)?);
            Sides::Scalar { lhs, rhs, gap: rhs - lhs }
        }
        NormLoewnerEquivalence => {
            let product = ctx.pow(ctx.a(), 0.5)?.matmul(&ctx.pow(ctx.b(), -0.5)?)?;
            let lhs = product.spectral_norm();
            let rhs = libm::sqrt(loewner_ratio(ctx.a(), ctx.b(), ctx.jacobi)?);
            Sides::Scalar { lhs, rhs, gap: -(lhs - rhs).abs() }
        }
        ScalarLemma => {
            let a_half = ctx.pow(ctx.a(), 0.5)?;
            let t = ctx.pow(ctx.b(), -1.0)?.congruence(a_half.as_matrix())?;
            let spectrum = eigh_with(&t, ctx.jacobi).eigenvalues;
            let mut worst = Sides::Scalar { lhs: 0.0, rhs: 0.0, gap: f64::INFINITY };
            for x in spectrum {
                let x = x.max(f64::MIN_POSITIVE);
                let gap = scalar_lemma_gap(x, nu)?;
                if let Sides::Scalar { gap: g, .. } = worst {
                    if gap < g {
                        let rhs = (1.0 - nu) + nu * x;
                        worst = Sides::Scalar { lhs: rhs - gap, rhs, gap };
                    }
                }
            }
            worst
        }
        Lemma23 => {
            let a_inv = ctx.pow(ctx.a(), -1.0)?;
            let b_inv = ctx.pow(ctx.b(), -1.0)?;
            let defect = arithmetic_mean(&a_inv, &b_inv, 0.5)?.sub(&ctx.gm(&a_inv, &b_inv, 0.5)?)?;
            let lhs = defect.combine(2.0 * r, &ctx.gm(&a_inv, &b_inv, nu)?, c)?;
            Sides::Loewner(lhs, arithmetic_mean(&a_inv, &b_inv, nu)?)
        }
        Remark27Norm => {
            let lhs = ctx.norm(&ctx.pow(&ctx.phi(&ctx.arithmetic()?)?, p)?);
            let rhs = ctx.norm(&ctx.pow(&ctx.phi(&ctx.bracket()?)?, p)?);
            Sides::Scalar { lhs, rhs, gap: rhs - lhs }
        }
        AndoHalf | Ando => Sides::Loewner(ctx.inside()?, ctx.outside()?),
        Lee | LeePrinted | Seo | Thm34 => Sides::Loewner(ctx.outside()?, ctx.inside()?.scale(c)),
        Thm33Inner | Thm33Outer => {
            let g = ctx.gm(ctx.a(), ctx.b(), nu)?;
            Sides::Loewner(g.scale(c), ctx.arithmetic()?)
        }
    })
}

/// Evaluates a case with default settings.
pub fn check_case(case: &InequalityCase) -> Result<Verdict> {
    check_case_with(case, &CheckSettings::default())
}

/// Gates the case against the entry's hypotheses, assembles both sides and
/// measures the gap.
pub fn check_case_with(case: &InequalityCase, settings: &CheckSettings) -> Result<Verdict> {
    let info = case.id.info();
    info.check_bounds(&case.instance.bounds)?;
    info.check_params(&case.params)?;
    case.instance.verify_containment()?;
    if info.uses_map {
        case.phi.check()?;
        if case.phi.input_dim() != case.instance.n {
            return Err(Error::DimensionMismatch { left: case.phi.input_dim(), right: case.instance.n });
        }
    }

    let c = bound_constant(case.id, &case.instance.bounds, &case.params)? * settings.rhs_constant_scale;
    let ctx = Ctx { case, jacobi: settings.jacobi };
    let (lhs_norm, rhs_norm, gap) = match assemble(&ctx, c)? {
        Sides::Loewner(lhs, rhs) => {
            let gap = loewner_gap_with(&lhs, &rhs, settings.jacobi)?;
            (ctx.norm(&lhs), ctx.norm(&rhs), gap)
        }
        Sides::Scalar { lhs, rhs, gap } => (lhs, rhs, gap),
    };
    let relative_gap = gap / (1.0 + rhs_norm.abs());
    Ok(Verdict {
        id: case.id,
        lhs_norm,
        rhs_norm,
        gap,
        relative_gap,
        holds: relative_gap >= -settings.tol,
        seed: case.instance.seed,
        params: case.params,
    })
}

#[cfg(test)]
mod tests;
