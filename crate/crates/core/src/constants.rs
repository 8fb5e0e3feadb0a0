//! Kantorovich-type constants and the multiplier each checked inequality
//! places in front of its comparison side.

use alloc::format;

use crate::error::{Error, Result};
use crate::registry::InequalityId;

/// Kantorovich constant `K(h) = (1+h)² / (4h)`.
///
/// `K(h) ≥ 1` with equality only at `h = 1`, and `K(h) = K(1/h)`.
pub fn kantorovich(h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::NonPositiveArgument(h));
    }
    Ok((1.0 + h) * (1.0 + h) / (4.0 * h))
}

/// `r = min{ν, 1−ν}` and `r₁ = min{2r, 1−2r}`.
pub fn weights(nu: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::WeightOutOfRange(nu));
    }
    let r = nu.min(1.0 - nu);
    let r1 = (2.0 * r).min(1.0 - 2.0 * r);
    Ok((r, r1))
}

/// Generalized Kantorovich constant and the two auxiliary scalars used in
/// the reverse of the weighted mean inequality for positive maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedKantorovich {
    pub k: f64,
    /// `μ₀ = ν(M−m) / (M^ν − m^ν)`.
    pub mu0: f64,
    /// `λ₀ = ν/(1−ν) · (M^{1−ν} − m^{1−ν}) / (m^{−ν} − M^{−ν})`.
    pub lambda0: f64,
}

/// `K(m,M,ν) = (mM^ν − Mm^ν)/((ν−1)(M−m)) · ((ν−1)/ν · (M^ν−m^ν)/(mM^ν−Mm^ν))^ν`.
///
/// Equals `min_{t∈[m,M]} L(t)/t^ν`, where `L` is the chord of `x^ν` through
/// `(m, m^ν)` and `(M, M^ν)`, so `0 < K ≤ 1`. At `ν ∈ {0, 1}` the closed form
/// is `0/0`; the continuous extension `K = 1` is returned, with `μ₀` and `λ₀`
/// set to their limits: both equal the logarithmic mean `L = (M−m)/ln(M/m)`
/// at `ν = 0`, and `μ₀ = 1`, `λ₀ = mM/L` at `ν = 1`.
pub fn generalized_kantorovich(m: f64, big_m: f64, nu: f64) -> Result<GeneralizedKantorovich> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::WeightOutOfRange(nu));
    }
    if !(m > 0.0) {
        return Err(Error::NonPositiveArgument(m));
    }
    if !(big_m >= m) {
        return Err(Error::BadBounds(format!("requires m ≤ M, got m = {m}, M = {big_m}")));
    }
    if big_m == m {
        return Err(Error::DegenerateInterval(m));
    }
    if nu == 0.0 || nu == 1.0 {
        let log_mean = (big_m - m) / libm::log(big_m / m);
        let (mu0, lambda0) = if nu == 0.0 { (log_mean, log_mean) } else { (1.0, m * big_m / log_mean) };
        return Ok(GeneralizedKantorovich { k: 1.0, mu0, lambda0 });
    }
    let pow = libm::pow;
    let m_nu = pow(m, nu);
    let big_m_nu = pow(big_m, nu);
    let cross = m * big_m_nu - big_m * m_nu;
    let lead = cross / ((nu - 1.0) * (big_m - m));
    let inner = (nu - 1.0) / nu * (big_m_nu - m_nu) / cross;
    let k = lead * pow(inner, nu);
    let mu0 = nu * (big_m - m) / (big_m_nu - m_nu);
    let lambda0 = nu / (1.0 - nu) * (pow(big_m, 1.0 - nu) - pow(m, 1.0 - nu)) / (pow(m, -nu) - pow(big_m, -nu));
    Ok(GeneralizedKantorovich { k, mu0, lambda0 })
}

/// Kind tag of [`SandwichBounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundsKind {
    Common,
    SandwichBLow,
    SandwichALow,
    ReverseAndo,
}

impl BoundsKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundsKind::Common => "common",
            BoundsKind::SandwichBLow => "sandwich_B_low",
            BoundsKind::SandwichALow => "sandwich_A_low",
            BoundsKind::ReverseAndo => "reverse_ando",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "common" => Ok(BoundsKind::Common),
            "sandwich_B_low" => Ok(BoundsKind::SandwichBLow),
            "sandwich_A_low" => Ok(BoundsKind::SandwichALow),
            "reverse_ando" => Ok(BoundsKind::ReverseAndo),
            other => Err(Error::BadBounds(format!("unknown bounds kind `{other}`"))),
        }
    }
}

/// Outer interval `[m, M]` split by an inner gap `(m', M')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub m: f64,
    pub m_prime: f64,
    pub big_m_prime: f64,
    pub big_m: f64,
}

/// Scalar spectral hypotheses attached to an instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SandwichBounds {
    /// `0 < m ≤ A, B ≤ M`.
    Common { m: f64, big_m: f64 },
    /// `0 < m ≤ B ≤ m' < M' ≤ A ≤ M`.
    SandwichBLow(Sandwich),
    /// `0 < m ≤ A ≤ m' < M' ≤ B ≤ M`.
    SandwichALow(Sandwich),
    /// `m₁² ≤ A ≤ M₁²`, `m₂² ≤ B ≤ M₂²`.
    ReverseAndo { m1: f64, big_m1: f64, m2: f64, big_m2: f64 },
}

impl SandwichBounds {
    pub fn common(m: f64, big_m: f64) -> Self {
        SandwichBounds::Common { m, big_m }
    }

    pub fn b_low(m: f64, m_prime: f64, big_m_prime: f64, big_m: f64) -> Self {
        SandwichBounds::SandwichBLow(Sandwich { m, m_prime, big_m_prime, big_m })
    }

    pub fn a_low(m: f64, m_prime: f64, big_m_prime: f64, big_m: f64) -> Self {
        SandwichBounds::SandwichALow(Sandwich { m, m_prime, big_m_prime, big_m })
    }

    pub fn reverse_ando(m1: f64, big_m1: f64, m2: f64, big_m2: f64) -> Self {
        SandwichBounds::ReverseAndo { m1, big_m1, m2, big_m2 }
    }

    pub fn kind(&self) -> BoundsKind {
        match self {
            SandwichBounds::Common { .. } => BoundsKind::Common,
            SandwichBounds::SandwichBLow(_) => BoundsKind::SandwichBLow,
            SandwichBounds::SandwichALow(_) => BoundsKind::SandwichALow,
            SandwichBounds::ReverseAndo { .. } => BoundsKind::ReverseAndo,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite_pos = |x: f64| x > 0.0 && x.is_finite();
        match *self {
            SandwichBounds::Common { m, big_m } => {
                if !(finite_pos(m) && finite_pos(big_m) && m <= big_m) {
                    return Err(Error::BadBounds(format!("common bounds need 0 < m ≤ M, got ({m}, {big_m})")));
                }
            }
            SandwichBounds::SandwichBLow(s) | SandwichBounds::SandwichALow(s) => {
                let Sandwich { m, m_prime, big_m_prime, big_m } = s;
                if !(finite_pos(m)
                    && finite_pos(big_m)
                    && m <= m_prime
                    && m_prime < big_m_prime
                    && big_m_prime <= big_m)
                {
                    return Err(Error::BadBounds(format!(
                        "sandwich bounds need 0 < m ≤ m' < M' ≤ M, got ({m}, {m_prime}, {big_m_prime}, {big_m})"
                    )));
                }
            }
            SandwichBounds::ReverseAndo { m1, big_m1, m2, big_m2 } => {
                if !(finite_pos(m1)
                    && finite_pos(m2)
                    && finite_pos(big_m1)
                    && finite_pos(big_m2)
                    && m1 <= big_m1
                    && m2 <= big_m2)
                {
                    return Err(Error::BadBounds(format!(
                        "reverse bounds need 0 < m₁ ≤ M₁ and 0 < m₂ ≤ M₂, got ({m1}, {big_m1}, {m2}, {big_m2})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Outer interval containing both spectra, when the kind has one.
    pub fn outer(&self) -> Option<(f64, f64)> {
        match *self {
            SandwichBounds::Common { m, big_m } => Some((m, big_m)),
            SandwichBounds::SandwichBLow(s) | SandwichBounds::SandwichALow(s) => Some((s.m, s.big_m)),
            SandwichBounds::ReverseAndo { .. } => None,
        }
    }

    /// `h = M/m` of the outer interval.
    pub fn h(&self) -> Option<f64> {
        self.outer().map(|(m, big_m)| big_m / m)
    }

    /// `h' = M'/m'` of the inner gap (sandwich kinds only).
    pub fn h_prime(&self) -> Option<f64> {
        match *self {
            SandwichBounds::SandwichBLow(s) | SandwichBounds::SandwichALow(s) => Some(s.big_m_prime / s.m_prime),
            _ => None,
        }
    }

    /// Interval hypothesized for the spectrum of `A`.
    pub fn a_interval(&self) -> (f64, f64) {
        match *self {
            SandwichBounds::Common { m, big_m } => (m, big_m),
            SandwichBounds::SandwichBLow(s) => (s.big_m_prime, s.big_m),
            SandwichBounds::SandwichALow(s) => (s.m, s.m_prime),
            SandwichBounds::ReverseAndo { m1, big_m1, .. } => (m1 * m1, big_m1 * big_m1),
        }
    }

    /// Interval hypothesized for the spectrum of `B`.
    pub fn b_interval(&self) -> (f64, f64) {
        match *self {
            SandwichBounds::Common { m, big_m } => (m, big_m),
            SandwichBounds::SandwichBLow(s) => (s.m, s.m_prime),
            SandwichBounds::SandwichALow(s) => (s.big_m_prime, s.big_m),
            SandwichBounds::ReverseAndo { m2, big_m2, .. } => (m2 * m2, big_m2 * big_m2),
        }
    }

    /// `(m, M) = ((m₂/M₁)², (M₂/m₁)²)`, the interval containing the spectrum
    /// of `A^{-1/2} B A^{-1/2}`. Common bounds are read as that interval directly.
    pub fn ratio_interval(&self) -> Option<(f64, f64)> {
        match *self {
            SandwichBounds::ReverseAndo { m1, big_m1, m2, big_m2 } => {
                let lo = m2 / big_m1;
                let hi = big_m2 / m1;
                Some((lo * lo, hi * hi))
            }
            SandwichBounds::Common { m, big_m } => Some((m, big_m)),
            _ => None,
        }
    }

    /// Condition ratio of the separated spectra: `m₂²/M₁²` when `M₁ < m₂`,
    /// `M₂²/m₁²` when `M₂ < m₁`. Common bounds give `M/m`.
    pub fn separation_ratio(&self) -> Option<f64> {
        match *self {
            SandwichBounds::ReverseAndo { m1, big_m1, m2, big_m2 } => {
                if big_m1 < m2 {
                    Some((m2 / big_m1) * (m2 / big_m1))
                } else if big_m2 < m1 {
                    Some((big_m2 / m1) * (big_m2 / m1))
                } else {
                    None
                }
            }
            SandwichBounds::Common { m, big_m } => Some(big_m / m),
            _ => None,
        }
    }
}

/// Weight, power and the extra exponent `α` of one check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseParams {
    pub nu: f64,
    pub p: f64,
    pub alpha: f64,
}

impl Default for CaseParams {
    fn default() -> Self {
        Self { nu: 0.5, p: 2.0, alpha: 1.0 }
    }
}

impl CaseParams {
    pub fn new(nu: f64, p: f64, alpha: f64) -> Self {
        Self { nu, p, alpha }
    }
}

fn need<T>(value: Option<T>, id: InequalityId, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::HypothesisNotMet(format!("{id}: bounds do not provide {what}")))
}

/// `K(x)^e`, skipping the evaluation of `x` when `e = 0`.
fn k_pow(x: impl FnOnce() -> Result<f64>, e: f64) -> Result<f64> {
    if e == 0.0 {
        return Ok(1.0);
    }
    Ok(libm::pow(kantorovich(x()?)?, e))
}

/// Multiplier the entry places in front of its comparison side (for
/// `thm3.3-*` and `lemma2.3`, the coefficient on the geometric-mean side).
///
/// `h = M/m` and `h' = M'/m'` are read from `bounds`. Entries built on a
/// sandwich also accept common bounds when the constant does not depend on
/// `h'` (for instance `ν = 1/2`, where `r₁ = 0`).
pub fn bound_constant(id: InequalityId, bounds: &SandwichBounds, params: &CaseParams) -> Result<f64> {
    use InequalityId::*;

    bounds.validate()?;
    id.info().check_params(params)?;
    let CaseParams { nu, p, alpha } = *params;
    let (r, r1) = weights(nu)?;
    let pow = libm::pow;

    let outer = || need(bounds.outer(), id, "an outer interval [m, M]");
    let h = || need(bounds.h(), id, "h = M/m");
    let h_prime = || need(bounds.h_prime(), id, "h' = M'/m' (sandwich bounds)");
    let sqrt_h_prime = || h_prime().map(libm::sqrt);
    let four_pow = |e: f64| pow(4.0, e);

    let value = match id {
        Amgm
        | LoewnerHeinz
        | Choi
        | NormProduct
        | NormPowerSum
        | NormLoewnerEquivalence
        | ScalarLemma
        | Remark27Norm
        | AndoHalf
        | Ando => 1.0,
        Lin => kantorovich(h()?)?,
        LinSquaredInside | LinSquaredOutside => pow(kantorovich(h()?)?, 2.0),
        LinPowerInside | LinPowerOutside => pow(kantorovich(h()?)?, p),
        Thm11Inside | Thm11Outside => {
            let (m, big_m) = outer()?;
            pow((big_m + m) * (big_m + m) / (four_pow(2.0 / p) * big_m * m), p)
        }
        Thm12Inside | Thm12Outside => {
            let (m, big_m) = outer()?;
            let k = kantorovich(h()?)?;
            let fu_he = (big_m + m) * (big_m + m) / (four_pow(2.0 / p) * big_m * m);
            pow(k.max(fu_he), p)
        }
        Thm13Inside | Thm13Outside => {
            let k = kantorovich(h()?)?;
            pow(k / (four_pow(2.0 / p - 1.0) * k_pow(h_prime, r)?), p)
        }
        Lemma23 => k_pow(sqrt_h_prime, r1)?,
        Thm24Inside | Thm24Outside => pow(kantorovich(h()?)? / k_pow(sqrt_h_prime, r1)?, 2.0),
        Cor26Inside | Cor26Outside => pow(kantorovich(h()?)? / k_pow(sqrt_h_prime, r1)?, p),
        Thm27Inside | Thm27Outside => {
            let k = kantorovich(h()?)?;
            pow(k / (four_pow(2.0 / p - 1.0) * k_pow(sqrt_h_prime, r1)?), p)
        }
        ZhangInside | ZhangOutside => {
            let (m, big_m) = outer()?;
            let k = kantorovich(h()?)?;
            pow(k * (big_m * big_m + m * m) / (four_pow(2.0 / p) * big_m * m), p)
        }
        YangWangInside | YangWangOutside | Thm29Inside | Thm29Outside => {
            let (m, big_m) = outer()?;
            let k = kantorovich(h()?)?;
            pow(k * (big_m * big_m + m * m) / (four_pow(2.0 / p) * big_m * m * k_pow(h_prime, r)?), p)
        }
        Thm29ProofInside | Thm29ProofOutside => {
            let (m, big_m) = outer()?;
            let k = kantorovich(h()?)?;
            pow(k * (big_m * big_m + m * m) / (four_pow(2.0 / p) * big_m * m * k_pow(sqrt_h_prime, r1)?), p)
        }
        Thm210Inside | Thm210Outside => {
            let (m, big_m) = outer()?;
            let k = kantorovich(h()?)?;
            let base =
                k_pow(sqrt_h_prime, -r1 * alpha / 2.0)? * pow(k, alpha / 2.0) * (pow(big_m, alpha) + pow(m, alpha));
            pow(base, 2.0 * p / alpha) / (16.0 * pow(big_m, p) * pow(m, p))
        }
        Lee | LeePrinted => {
            let (m, big_m) = lee_interval(bounds, id)?;
            if id == Lee {
                (big_m + m) / (2.0 * libm::sqrt(big_m * m))
            } else {
                (libm::sqrt(big_m) + libm::sqrt(m)) / (2.0 * libm::sqrt(big_m * m))
            }
        }
        Seo => 1.0 / generalized_k(bounds, id, nu)?,
        Thm34 => {
            let h = need(bounds.separation_ratio(), id, "separated spectra (M₁ < m₂ or M₂ < m₁)")?;
            1.0 / (generalized_k(bounds, id, nu)? * pow(kantorovich(h)?, r))
        }
        Thm33Inner => k_pow(h_prime, r)?,
        Thm33Outer => k_pow(h, r)?,
    };
    Ok(value)
}

/// `K(m,M,ν)` on the ratio interval, extended by 1 on a degenerate interval.
fn generalized_k(bounds: &SandwichBounds, id: InequalityId, nu: f64) -> Result<f64> {
    let (m, big_m) = need(bounds.ratio_interval(), id, "a ratio interval (reverse bounds)")?;
    if m == big_m {
        return Ok(1.0);
    }
    Ok(generalized_kantorovich(m, big_m, nu)?.k)
}

/// `(m₂/M₁, M₂/m₁)`; common bounds are read as that pair directly.
fn lee_interval(bounds: &SandwichBounds, id: InequalityId) -> Result<(f64, f64)> {
    match *bounds {
        SandwichBounds::ReverseAndo { m1, big_m1, m2, big_m2 } => Ok((m2 / big_m1, big_m2 / m1)),
        SandwichBounds::Common { m, big_m } => Ok((m, big_m)),
        _ => Err(Error::HypothesisNotMet(format!("{id}: needs reverse bounds"))),
    }
}

/// Golden-section minimizer on `[lo, hi]` of a unimodal function.
pub fn golden_section_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol * (1.0 + a.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let candidates = [(lo, f(lo)), (hi, f(hi)), (x, f(x))];
    candidates.into_iter().fold((x, f64::INFINITY), |best, cand| if cand.1 < best.1 { cand } else { best })
}

impl core::fmt::Display for SandwichBounds {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match *self {
            SandwichBounds::Common { m, big_m } => write!(f, "common(m={m}, M={big_m})"),
            SandwichBounds::SandwichBLow(s) | SandwichBounds::SandwichALow(s) => {
                write!(f, "{}(m={}, m'={}, M'={}, M={})", self.kind().as_str(), s.m, s.m_prime, s.big_m_prime, s.big_m)
            }
            SandwichBounds::ReverseAndo { m1, big_m1, m2, big_m2 } => {
                write!(f, "reverse_ando(m1={m1}, M1={big_m1}, m2={m2}, M2={big_m2})")
            }
        }
    }
}
