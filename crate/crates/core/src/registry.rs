//! Catalog of the checked inequalities and their hypotheses.
//!
//! Notation used in the descriptions: `∇_ν`, `♯_ν` are the weighted means
//! (weight on the second argument), `∇`, `♯` their `ν = 1/2` versions,
//! `X` the bracket `A∇_νB + 2rMm(A⁻¹∇B⁻¹ − A⁻¹♯B⁻¹)`, `G = A♯_νB`,
//! `r = min{ν, 1−ν}`, `r₁ = min{2r, 1−2r}`, `h = M/m`, `h' = M'/m'`.
//! "inside" entries compare against `Φ(G)^p`, "outside" entries against
//! `(Φ(A)♯_νΦ(B))^p`.

use alloc::format;
use alloc::string::ToString;

use crate::constants::{BoundsKind, CaseParams, SandwichBounds};
use crate::error::{Error, Result};

/// How the two sides of an entry are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// `LHS ≤ RHS` in the Loewner order; gap is `λ_min(RHS − LHS)`.
    Loewner,
    /// Scalar comparison (norms or scalar functions); gap is `RHS − LHS`.
    Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NuDomain {
    Any,
    /// The entry is stated for the unweighted means only.
    HalfOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerDomain {
    Unused,
    /// `p > 0`.
    Positive,
    /// `0 < p ≤ hi`.
    UpTo(f64),
    /// `p ≥ lo`.
    AtLeast(f64),
    /// `p ≥ 2α`.
    AtLeastTwiceAlpha,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaDomain {
    Unused,
    /// `lo ≤ α ≤ hi`.
    Range(f64, f64),
    /// `α ≥ lo`.
    AtLeast(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct EntryInfo {
    pub id: InequalityId,
    pub name: &'static str,
    pub statement: &'static str,
    pub bounds: &'static [BoundsKind],
    pub nu: NuDomain,
    pub power: PowerDomain,
    pub alpha: AlphaDomain,
    pub form: Form,
    pub uses_map: bool,
    /// Failures of informational entries are reported but do not fail a run.
    pub asserted: bool,
}

use BoundsKind::{Common, ReverseAndo, SandwichALow, SandwichBLow};

const ANY_ORDERED: &[BoundsKind] = &[Common, SandwichBLow, SandwichALow];
const SANDWICH: &[BoundsKind] = &[SandwichBLow, SandwichALow];
const A_LOW: &[BoundsKind] = &[SandwichALow];
const REVERSE: &[BoundsKind] = &[ReverseAndo];
const POSITIVE_PAIR: &[BoundsKind] = &[Common, SandwichBLow, SandwichALow, ReverseAndo];

macro_rules! registry {
    ($( $variant:ident => $name:literal, $stmt:literal, $bounds:expr, $nu:expr, $power:expr, $alpha:expr, $form:expr, $map:expr, $asserted:expr; )*) => {
        /// Registry identifier of a checked inequality.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum InequalityId { $( $variant, )* }

        /// Every entry, in registry order.
        pub const REGISTRY: &[EntryInfo] = &[
            $( EntryInfo {
                id: InequalityId::$variant,
                name: $name,
                statement: $stmt,
                bounds: $bounds,
                nu: $nu,
                power: $power,
                alpha: $alpha,
                form: $form,
                uses_map: $map,
                asserted: $asserted,
            }, )*
        ];
    };
}

use AlphaDomain as Al;
use Form::{Loewner, Scalar};
use NuDomain::{Any, HalfOnly};
use PowerDomain as Pw;

registry! {
    Amgm => "amgm", "Φ(A♯_νB) ≤ Φ(A∇_νB)", POSITIVE_PAIR, Any, Pw::Unused, Al::Unused, Loewner, true, true;
    LoewnerHeinz => "loewner-heinz", "A ≤ B ⇒ A^p ≤ B^p, 0 < p ≤ 1", A_LOW, Any, Pw::UpTo(1.0), Al::Unused, Loewner, false, true;
    Lin => "lin", "Φ(A∇B) ≤ K(h) Φ(A♯B)", ANY_ORDERED, HalfOnly, Pw::Unused, Al::Unused, Loewner, true, true;
    LinSquaredInside => "lin-sq-inside", "Φ²(A∇B) ≤ K²(h) Φ²(A♯B)", ANY_ORDERED, HalfOnly, Pw::Unused, Al::Unused, Loewner, true, true;
    LinSquaredOutside => "lin-sq-outside", "Φ²(A∇B) ≤ K²(h) (Φ(A)♯Φ(B))²", ANY_ORDERED, HalfOnly, Pw::Unused, Al::Unused, Loewner, true, true;
    LinPowerInside => "lin-p-inside", "Φ^p(A∇B) ≤ K^p(h) Φ^p(A♯B), 0 < p ≤ 2", ANY_ORDERED, HalfOnly, Pw::UpTo(2.0), Al::Unused, Loewner, true, true;
    LinPowerOutside => "lin-p-outside", "Φ^p(A∇B) ≤ K^p(h) (Φ(A)♯Φ(B))^p, 0 < p ≤ 2", ANY_ORDERED, HalfOnly, Pw::UpTo(2.0), Al::Unused, Loewner, true, true;
    Thm11Inside => "thm1.1-inside", "Φ^p(A∇B) ≤ ((M+m)²/(4^{2/p}Mm))^p Φ^p(A♯B), p ≥ 2", ANY_ORDERED, HalfOnly, Pw::AtLeast(2.0), Al::Unused, Loewner, true, true;
    Thm11Outside => "thm1.1-outside", "Φ^p(A∇B) ≤ ((M+m)²/(4^{2/p}Mm))^p (Φ(A)♯Φ(B))^p, p ≥ 2", ANY_ORDERED, HalfOnly, Pw::AtLeast(2.0), Al::Unused, Loewner, true, true;
    Thm12Inside => "thm1.2-inside", "Φ^p(X) ≤ max{K(h), (M+m)²/(4^{2/p}Mm)}^p Φ^p(G), p > 0", ANY_ORDERED, Any, Pw::Positive, Al::Unused, Loewner, true, true;
    Thm12Outside => "thm1.2-outside", "Φ^p(X) ≤ max{K(h), (M+m)²/(4^{2/p}Mm)}^p (Φ(A)♯_νΦ(B))^p, p > 0", ANY_ORDERED, Any, Pw::Positive, Al::Unused, Loewner, true, true;
    Thm13Inside => "thm1.3-inside", "Φ^p(A∇_νB) ≤ (K(h)/(4^{2/p−1}K^r(h')))^p Φ^p(G), p ≥ 2", A_LOW, Any, Pw::AtLeast(2.0), Al::Unused, Loewner, true, true;
    Thm13Outside => "thm1.3-outside", "Φ^p(A∇_νB) ≤ (K(h)/(4^{2/p−1}K^r(h')))^p (Φ(A)♯_νΦ(B))^p, p ≥ 2", A_LOW, Any, Pw::AtLeast(2.0), Al::Unused, Loewner, true, true;
    Choi => "choi", "Φ(A)⁻¹ ≤ Φ(A⁻¹)", POSITIVE_PAIR, Any, Pw::Unused, Al::Unused, Loewner, true, true;
    NormProduct => "lemma2.2-i", "‖AB‖ ≤ ¼‖A+B‖²", POSITIVE_PAIR, Any, Pw::Unused, Al::Unused, Scalar, false, true;
    NormPowerSum => "lemma2.2-ii", "‖A^α+B^α‖ ≤ ‖(A+B)^α‖, α ≥ 1", POSITIVE_PAIR, Any, Pw::Unused, Al::AtLeast(1.0), Scalar, false, true;
    NormLoewnerEquivalence => "lemma2.2-iii", "A ≤ αB ⇔ ‖A^{1/2}B^{-1/2}‖ ≤ α^{1/2}", POSITIVE_PAIR, Any, Pw::Unused, Al::Unused, Scalar, false, true;
    ScalarLemma => "scalar-lemma", "2r((1+x)/2−√x) + K^{r₁}(√x)x^ν ≤ (1−ν)+νx on sp(A^{1/2}B⁻¹A^{1/2})", POSITIVE_PAIR, Any, Pw::Unused, Al::Unused, Scalar, false, true;
    Lemma23 => "lemma2.3", "2r(A⁻¹∇B⁻¹−A⁻¹♯B⁻¹) + K^{r₁}(√h')(A⁻¹♯_νB⁻¹) ≤ A⁻¹∇_νB⁻¹", SANDWICH, Any, Pw::Unused, Al::Unused, Loewner, false, true;
    Thm24Inside => "thm2.4-inside", "Φ²(X) ≤ (K(h)/K^{r₁}(√h'))² Φ²(G)", SANDWICH, Any, Pw::Unused, Al::Unused, Loewner, true, true;
    Thm24Outside => "thm2.4-outside", "Φ²(X) ≤ (K(h)/K^{r₁}(√h'))² (Φ(A)♯_νΦ(B))²", SANDWICH, Any, Pw::Unused, Al::Unused, Loewner, true, true;
    Cor26Inside => "cor2.6-inside", "Φ^p(X) ≤ (K(h)/K^{r₁}(√h'))^p Φ^p(G), 0 < p ≤ 2", SANDWICH, Any, Pw::UpTo(2.0), Al::Unused, Loewner, true, true;
    Cor26Outside => "cor2.6-outside", "Φ^p(X) ≤ (K(h)/K^{r₁}(√h'))^p (Φ(A)♯_νΦ(B))^p, 0 < p ≤ 2", SANDWICH, Any, Pw::UpTo(2.0), Al::Unused, Loewner, true, true;
    Thm27Inside => "thm2.7-inside", "Φ^p(X) ≤ (K(h)/(4^{2/p−1}K^{r₁}(√h')))^p Φ^p(G), p ≥ 2", SANDWICH, Any, Pw::AtLeast(2.0), Al::Unused, Loewner, true, true;
    Thm27Outside => "thm2.7-outside", "Φ^p(X) ≤ (K(h)/(4^{2/p−1}K^{r₁}(√h')))^p (Φ(A)♯_νΦ(B))^p, p ≥ 2", SANDWICH, Any, Pw::AtLeast(2.0), Al::Unused, Loewner, true, true;
    Remark27Norm => "remark2.7-norm", "‖Φ^p(A∇_νB)‖ ≤ ‖Φ^p(X)‖, p ≥ 1", ANY_ORDERED, Any, Pw::AtLeast(1.0), Al::Unused, Scalar, true, true;
    ZhangInside => "zhang-inside", "Φ^p(A∇B) ≤ (K(h)(M²+m²)/(4^{2/p}Mm))^p Φ^p(A♯B), p ≥ 4", ANY_ORDERED, HalfOnly, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    ZhangOutside => "zhang-outside", "Φ^p(A∇B) ≤ (K(h)(M²+m²)/(4^{2/p}Mm))^p (Φ(A)♯Φ(B))^p, p ≥ 4", ANY_ORDERED, HalfOnly, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    YangWangInside => "yw-inside", "Φ^p(A∇_νB) ≤ (K(h)(M²+m²)/(4^{2/p}MmK^r(h')))^p Φ^p(G), p ≥ 4", SANDWICH, Any, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    YangWangOutside => "yw-outside", "Φ^p(A∇_νB) ≤ (K(h)(M²+m²)/(4^{2/p}MmK^r(h')))^p (Φ(A)♯_νΦ(B))^p, p ≥ 4", SANDWICH, Any, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    Thm29Inside => "thm2.9-inside", "Φ^p(X) ≤ (K(h)(M²+m²)/(4^{2/p}MmK^r(h')))^p Φ^p(G), p ≥ 4", SANDWICH, Any, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    Thm29Outside => "thm2.9-outside", "Φ^p(X) ≤ (K(h)(M²+m²)/(4^{2/p}MmK^r(h')))^p (Φ(A)♯_νΦ(B))^p, p ≥ 4", SANDWICH, Any, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    Thm29ProofInside => "thm2.9-proof-inside", "Φ^p(X) ≤ (K(h)(M²+m²)/(4^{2/p}MmK^{r₁}(√h')))^p Φ^p(G), p ≥ 4", SANDWICH, Any, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    Thm29ProofOutside => "thm2.9-proof-outside", "Φ^p(X) ≤ (K(h)(M²+m²)/(4^{2/p}MmK^{r₁}(√h')))^p (Φ(A)♯_νΦ(B))^p, p ≥ 4", SANDWICH, Any, Pw::AtLeast(4.0), Al::Unused, Loewner, true, true;
    Thm210Inside => "thm2.10-inside", "Φ^p(X) ≤ (K^{−r₁α/2}(√h')K^{α/2}(h)(M^α+m^α))^{2p/α}/(16M^pm^p) Φ^p(G), 1 ≤ α ≤ 2, p ≥ 2α", SANDWICH, Any, Pw::AtLeastTwiceAlpha, Al::Range(1.0, 2.0), Loewner, true, true;
    Thm210Outside => "thm2.10-outside", "Φ^p(X) ≤ (K^{−r₁α/2}(√h')K^{α/2}(h)(M^α+m^α))^{2p/α}/(16M^pm^p) (Φ(A)♯_νΦ(B))^p, 1 ≤ α ≤ 2, p ≥ 2α", SANDWICH, Any, Pw::AtLeastTwiceAlpha, Al::Range(1.0, 2.0), Loewner, true, true;
    AndoHalf => "ando-half", "Φ(A♯B) ≤ Φ(A)♯Φ(B)", POSITIVE_PAIR, HalfOnly, Pw::Unused, Al::Unused, Loewner, true, true;
    Ando => "ando", "Φ(A♯_νB) ≤ Φ(A)♯_νΦ(B)", POSITIVE_PAIR, Any, Pw::Unused, Al::Unused, Loewner, true, true;
    Lee => "lee", "Φ(A)♯Φ(B) ≤ (M+m)/(2√(Mm)) Φ(A♯B), m = m₂/M₁, M = M₂/m₁", REVERSE, HalfOnly, Pw::Unused, Al::Unused, Loewner, true, true;
    LeePrinted => "lee-printed", "Φ(A)♯Φ(B) ≤ (√M+√m)/(2√(Mm)) Φ(A♯B), m = m₂/M₁, M = M₂/m₁", REVERSE, HalfOnly, Pw::Unused, Al::Unused, Loewner, true, false;
    Seo => "seo", "Φ(A)♯_νΦ(B) ≤ K(m,M,ν)⁻¹ Φ(A♯_νB), m = (m₂/M₁)², M = (M₂/m₁)²", REVERSE, Any, Pw::Unused, Al::Unused, Loewner, true, true;
    Thm33Inner => "thm3.3-hp", "K^r(h') A♯_νB ≤ A∇_νB", SANDWICH, Any, Pw::Unused, Al::Unused, Loewner, false, true;
    Thm33Outer => "thm3.3-h", "K^r(h) A♯_νB ≤ A∇_νB", SANDWICH, Any, Pw::Unused, Al::Unused, Loewner, false, false;
    Thm34 => "thm3.4", "Φ(A)♯_νΦ(B) ≤ K(m,M,ν)⁻¹K(h)^{−r} Φ(A♯_νB), h = m₂²/M₁² (M₁ < m₂) or M₂²/m₁² (M₂ < m₁)", REVERSE, Any, Pw::Unused, Al::Unused, Loewner, true, true;
}

impl InequalityId {
    pub fn info(self) -> &'static EntryInfo {
        &REGISTRY[self as usize]
    }

    pub fn as_str(self) -> &'static str {
        self.info().name
    }

    pub fn all() -> impl Iterator<Item = InequalityId> {
        REGISTRY.iter().map(|e| e.id)
    }

    /// Parses a registry id. A family name without the `-inside` suffix
    /// (`thm2.7`, `zhang`, `lin-sq`, `yw`) resolves to the inside variant,
    /// and `-phi-inside` / `-phi-outside` are accepted as aliases.
    pub fn parse(s: &str) -> Result<InequalityId> {
        let s = s.trim();
        if let Some(e) = REGISTRY.iter().find(|e| e.name == s) {
            return Ok(e.id);
        }
        let alias = s.replace("-phi-", "-");
        if let Some(e) = REGISTRY.iter().find(|e| e.name == alias) {
            return Ok(e.id);
        }
        let inside = format!("{s}-inside");
        if let Some(e) = REGISTRY.iter().find(|e| e.name == inside) {
            return Ok(e.id);
        }
        Err(Error::UnknownInequality(s.to_string()))
    }

    /// Inside and outside variants of one statement share a constant.
    pub fn family(self) -> &'static str {
        let name = self.as_str();
        name.strip_suffix("-inside").or_else(|| name.strip_suffix("-outside")).unwrap_or(name)
    }

    /// Whether the right side is built from `(Φ(A)♯_νΦ(B))` rather than `Φ(A♯_νB)`.
    pub fn is_outside(self) -> bool {
        self.as_str().ends_with("-outside")
    }
}

impl core::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::parse(s)
    }
}

impl EntryInfo {
    /// Checks `ν`, `p` and `α` against the entry's hypotheses.
    pub fn check_params(&self, params: &CaseParams) -> Result<()> {
        let fail = |clause: alloc::string::String| Err(Error::HypothesisNotMet(format!("{}: {clause}", self.name)));
        let CaseParams { nu, p, alpha } = *params;
        if !(0.0..=1.0).contains(&nu) {
            return Err(Error::WeightOutOfRange(nu));
        }
        if self.nu == NuDomain::HalfOnly && nu != 0.5 {
            return fail(format!("stated for ν = 1/2 only, got ν = {nu}"));
        }
        match self.power {
            PowerDomain::Unused => {}
            PowerDomain::Positive => {
                if !(p > 0.0) {
                    return fail(format!("requires p > 0, got p = {p}"));
                }
            }
            PowerDomain::UpTo(hi) => {
                if !(p > 0.0 && p <= hi) {
                    return fail(format!("requires 0 < p ≤ {hi}, got p = {p}"));
                }
            }
            PowerDomain::AtLeast(lo) => {
                if !(p >= lo) {
                    return fail(format!("requires p ≥ {lo}, got p = {p}"));
                }
            }
            PowerDomain::AtLeastTwiceAlpha => {
                if !(p >= 2.0 * alpha) {
                    return fail(format!("requires p ≥ 2α = {}, got p = {p}", 2.0 * alpha));
                }
            }
        }
        match self.alpha {
            AlphaDomain::Unused => {}
            AlphaDomain::Range(lo, hi) => {
                if !(alpha >= lo && alpha <= hi) {
                    return fail(format!("requires {lo} ≤ α ≤ {hi}, got α = {alpha}"));
                }
            }
            AlphaDomain::AtLeast(lo) => {
                if !(alpha >= lo) {
                    return fail(format!("requires α ≥ {lo}, got α = {alpha}"));
                }
            }
        }
        Ok(())
    }

    /// Checks the kind and shape of the scalar bounds.
    pub fn check_bounds(&self, bounds: &SandwichBounds) -> Result<()> {
        bounds.validate()?;
        if !self.bounds.contains(&bounds.kind()) {
            return Err(Error::HypothesisNotMet(format!(
                "{}: bounds of kind {} not accepted (expects one of {:?})",
                self.name,
                bounds.kind().as_str(),
                self.bounds.iter().map(|k| k.as_str()).collect::<alloc::vec::Vec<_>>()
            )));
        }
        if self.id == InequalityId::Thm34 {
            if let SandwichBounds::ReverseAndo { big_m1, m2, big_m2, m1 } = *bounds {
                if !(big_m1 < m2 || big_m2 < m1) {
                    return Err(Error::HypothesisNotMet(format!("{}: requires M₁ < m₂ or M₂ < m₁", self.name)));
                }
            }
        }
        Ok(())
    }
}
