//! Seeded suites over the registry.
//!
//! A suite is planned as a flat list of [`TrialSpec`]s; each trial is a pure
//! function of the configuration and its spec, so trials may run in any order
//! or in parallel. [`aggregate`] sorts records by `(id, trial)` before
//! summarizing, which makes the report independent of the schedule.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{check_case_with, CheckSettings, InequalityCase, Verdict, DEFAULT_TOL};
use crate::constants::{BoundsKind, CaseParams, SandwichBounds};
use crate::error::{Error, Result};
use crate::maps::{random_map, MapSpec, MAP_KINDS};
use crate::registry::{AlphaDomain, EntryInfo, InequalityId, NuDomain, PowerDomain};
use crate::rng::{derive_seed, SplitMix64};
use crate::sampler::{draw_bounds, sample_instance, BoundsRanges};

/// Everything that determines a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub ids: Vec<InequalityId>,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub ranges: BoundsRanges,
    /// Fixed bounds for every trial instead of drawn ones.
    pub bounds: Option<SandwichBounds>,
    pub nu_grid: Vec<f64>,
    /// Overrides the per-entry power choices when set.
    pub p_values: Option<Vec<f64>>,
    pub alpha_grid: Vec<f64>,
    pub tol: f64,
    pub force_endpoints: bool,
    pub rhs_constant_scale: f64,
}

impl SuiteConfig {
    /// Every registry entry over `n ∈ {2, 3, 5}` with 100 trials each.
    pub fn selftest(seed: u64) -> Self {
        Self {
            ids: InequalityId::all().collect(),
            dims: vec![2, 3, 5],
            trials: 100,
            seed,
            ranges: BoundsRanges::default(),
            bounds: None,
            nu_grid: (0..=10).map(|k| k as f64 / 10.0).collect(),
            p_values: None,
            alpha_grid: vec![1.0, 1.25, 1.5, 2.0],
            tol: DEFAULT_TOL,
            force_endpoints: false,
            rhs_constant_scale: 1.0,
        }
    }

    pub fn settings(&self) -> CheckSettings {
        CheckSettings { tol: self.tol, rhs_constant_scale: self.rhs_constant_scale, ..CheckSettings::default() }
    }

    /// Rejects configurations that cannot produce a valid case for some entry.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad(format!("dimensions must be a nonempty list of positive integers, got {:?}", self.dims));
        }
        if !(self.tol >= 0.0) {
            return bad(format!("tolerance must be nonnegative, got {}", self.tol));
        }
        if !(self.rhs_constant_scale > 0.0) {
            return bad(format!("constant scale must be positive, got {}", self.rhs_constant_scale));
        }
        let r = &self.ranges;
        if !(r.h_min > 1.0 && r.h_min <= r.h_max && r.m_min > 0.0 && r.m_min <= r.m_max) {
            return bad(format!("bounds ranges need 1 < h_min ≤ h_max and 0 < m_min ≤ m_max, got {r:?}"));
        }
        if let Some(b) = &self.bounds {
            b.validate().map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        }
        for &id in &self.ids {
            let info = id.info();
            if let Some(b) = &self.bounds {
                info.check_bounds(b).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
            }
            if self.trials > 0 && param_choices(self, info).is_empty() {
                return bad(format!("{id}: no combination of the given ν, p and α values satisfies its hypotheses"));
            }
        }
        Ok(())
    }
}

/// Powers tried for an entry: the minimal admissible value and 1.5 above it,
/// or two interior values for bounded ranges.
pub fn p_candidates(info: &EntryInfo, alpha: f64) -> Vec<f64> {
    match info.power {
        PowerDomain::Unused => vec![1.0],
        PowerDomain::Positive => vec![0.5, 2.0, 3.5],
        PowerDomain::UpTo(hi) => vec![0.5, hi],
        PowerDomain::AtLeast(lo) => vec![lo, lo + 1.5],
        PowerDomain::AtLeastTwiceAlpha => vec![2.0 * alpha, 2.0 * alpha + 1.5],
    }
}

/// All admissible `(ν, p, α)` combinations for an entry under a config.
fn param_choices(config: &SuiteConfig, info: &EntryInfo) -> Vec<CaseParams> {
    let nus: Vec<f64> = match info.nu {
        NuDomain::HalfOnly => vec![0.5],
        NuDomain::Any => config.nu_grid.clone(),
    };
    let alphas: Vec<f64> = match info.alpha {
        AlphaDomain::Unused => vec![1.0],
        _ => config.alpha_grid.clone(),
    };
    let mut out = Vec::new();
    for &alpha in &alphas {
        let ps = match (&config.p_values, info.power) {
            (_, PowerDomain::Unused) => vec![1.0],
            (Some(ps), _) => ps.clone(),
            (None, _) => p_candidates(info, alpha),
        };
        for &p in &ps {
            for &nu in &nus {
                let params = CaseParams::new(nu, p, alpha);
                if info.check_params(&params).is_ok() {
                    out.push(params);
                }
            }
        }
    }
    out
}

/// Position of one trial in the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialSpec {
    pub id: InequalityId,
    pub n: usize,
    /// `dim_index · trials + t`, unique within an id.
    pub trial: usize,
    pub seed: u64,
}

/// Seed of trial `trial` of entry `id`.
fn trial_seed(master: u64, id: InequalityId, trial: usize) -> u64 {
    derive_seed(derive_seed(master, id as u64), trial as u64)
}

/// Lists the trials of a suite in `(id, trial)` order.
pub fn plan_suite(config: &SuiteConfig) -> Result<Vec<TrialSpec>> {
    config.validate()?;
    let mut plan = Vec::with_capacity(config.ids.len() * config.dims.len() * config.trials);
    for &id in &config.ids {
        for (d, &n) in config.dims.iter().enumerate() {
            for t in 0..config.trials {
                let trial = d * config.trials + t;
                plan.push(TrialSpec { id, n, trial, seed: trial_seed(config.seed, id, trial) });
            }
        }
    }
    Ok(plan)
}

/// One evaluated trial. `verdict` is absent when the case could not be
/// evaluated; such a trial counts as a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    pub id: InequalityId,
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub bounds: SandwichBounds,
    pub phi: MapSpec,
    pub params: CaseParams,
    pub force_endpoints: bool,
    pub verdict: Option<Verdict>,
    pub error: Option<String>,
}

impl CaseRecord {
    pub fn holds(&self) -> bool {
        self.verdict.is_some_and(|v| v.holds)
    }

    /// Regenerates the checked case from the record.
    pub fn rebuild(&self) -> Result<InequalityCase> {
        let instance = sample_instance(self.bounds, self.n, self.seed, self.force_endpoints)?;
        Ok(InequalityCase { id: self.id, instance, phi: self.phi.clone(), params: self.params })
    }
}

/// Draws the bounds, parameters and map of a trial, then checks it.
pub fn run_trial(config: &SuiteConfig, spec: &TrialSpec) -> CaseRecord {
    let info = spec.id.info();
    let mut rng = SplitMix64::new(derive_seed(spec.seed, 0));
    let kinds: &[BoundsKind] = info.bounds;
    let bounds = match config.bounds {
        Some(b) => b,
        None => draw_bounds(kinds[spec.trial % kinds.len()], &config.ranges, &mut rng),
    };
    let choices = param_choices(config, info);
    let params = choices[rng.below(choices.len())];
    let kind = if info.uses_map { MAP_KINDS[spec.trial % MAP_KINDS.len()] } else { "identity" };
    let instance_seed = derive_seed(spec.seed, 1);

    let mut record = CaseRecord {
        id: spec.id,
        trial: spec.trial,
        seed: instance_seed,
        n: spec.n,
        bounds,
        phi: MapSpec::Identity { n: spec.n },
        params,
        force_endpoints: config.force_endpoints,
        verdict: None,
        error: None,
    };
    let outcome = random_map(spec.n, kind, derive_seed(spec.seed, 2)).and_then(|phi| {
        record.phi = phi;
        let case = record.rebuild()?;
        check_case_with(&case, &config.settings())
    });
    match outcome {
        Ok(v) => record.verdict = Some(v),
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

/// Per-entry totals.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub id: InequalityId,
    pub trials: usize,
    pub failures: usize,
    /// Smallest relative gap over evaluated trials (`+∞` when none).
    pub worst_relative_gap: f64,
    /// Failures of entries that are not asserted do not fail the run.
    pub asserted: bool,
    pub failing_seeds: Vec<u64>,
}

/// Sorted case records and per-entry summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub cases: Vec<CaseRecord>,
    pub summary: Vec<SummaryRow>,
}

impl Report {
    /// True when no asserted entry has a failure.
    pub fn passed(&self) -> bool {
        self.summary.iter().all(|s| !s.asserted || s.failures == 0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.holds())
    }
}

/// Sorts records by `(id, trial)` and summarizes them per entry.
pub fn aggregate(mut cases: Vec<CaseRecord>) -> Report {
    cases.sort_by_key(|c| (c.id, c.trial));
    let mut summary: Vec<SummaryRow> = Vec::new();
    for c in &cases {
        if summary.last().is_none_or(|s| s.id != c.id) {
            summary.push(SummaryRow {
                id: c.id,
                trials: 0,
                failures: 0,
                worst_relative_gap: f64::INFINITY,
                asserted: c.id.info().asserted,
                failing_seeds: Vec::new(),
            });
        }
        let row = summary.last_mut().expect("pushed above");
        row.trials += 1;
        if let Some(v) = c.verdict {
            row.worst_relative_gap = row.worst_relative_gap.min(v.relative_gap);
        }
        if !c.holds() {
            row.failures += 1;
            row.failing_seeds.push(c.seed);
        }
    }
    Report { cases, summary }
}

/// Plans, runs serially and aggregates a suite.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let plan = plan_suite(config)?;
    Ok(aggregate(plan.iter().map(|spec| run_trial(config, spec)).collect()))
}
