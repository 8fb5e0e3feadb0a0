//! Suite configuration documents, parallel execution and reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use opineq_core::registry::InequalityId;
use opineq_core::sampler::BoundsRanges;
use opineq_core::verifier::{aggregate, plan_suite, run_trial, CaseRecord, Report, SuiteConfig};
use opineq_core::Error;

use crate::error::{AppError, AppResult};
use crate::format::{BoundsDoc, CaseDoc, ParamsDoc};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangesDoc {
    pub h_min: f64,
    pub h_max: f64,
    pub m_min: f64,
    pub m_max: f64,
}

/// Suite configuration in the report syntax. Also accepted as a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub ids: Vec<String>,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub ranges: RangesDoc,
    #[serde(default)]
    pub bounds: Option<BoundsDoc>,
    pub nu_grid: Vec<f64>,
    #[serde(default)]
    pub p_values: Option<Vec<f64>>,
    pub alpha_grid: Vec<f64>,
    pub tol: f64,
    #[serde(default)]
    pub force_endpoints: bool,
    #[serde(default = "one")]
    pub rhs_constant_scale: f64,
}

fn one() -> f64 {
    1.0
}

impl From<&SuiteConfig> for ConfigDoc {
    fn from(c: &SuiteConfig) -> Self {
        let r = c.ranges;
        Self {
            ids: c.ids.iter().map(|id| id.as_str().to_string()).collect(),
            dims: c.dims.clone(),
            trials: c.trials,
            seed: c.seed,
            ranges: RangesDoc { h_min: r.h_min, h_max: r.h_max, m_min: r.m_min, m_max: r.m_max },
            bounds: c.bounds.map(BoundsDoc::from),
            nu_grid: c.nu_grid.clone(),
            p_values: c.p_values.clone(),
            alpha_grid: c.alpha_grid.clone(),
            tol: c.tol,
            force_endpoints: c.force_endpoints,
            rhs_constant_scale: c.rhs_constant_scale,
        }
    }
}

impl ConfigDoc {
    /// Converts and validates.
    pub fn to_config(&self) -> Result<SuiteConfig, Error> {
        let r = self.ranges;
        let config = SuiteConfig {
            ids: self.ids.iter().map(|s| InequalityId::parse(s)).collect::<Result<_, _>>()?,
            dims: self.dims.clone(),
            trials: self.trials,
            seed: self.seed,
            ranges: BoundsRanges { h_min: r.h_min, h_max: r.h_max, m_min: r.m_min, m_max: r.m_max },
            bounds: self
                .bounds
                .map(BoundsDoc::to_bounds)
                .transpose()
                .map_err(|e| Error::ConfigInvalid(e.to_string()))?,
            nu_grid: self.nu_grid.clone(),
            p_values: self.p_values.clone(),
            alpha_grid: self.alpha_grid.clone(),
            tol: self.tol,
            force_endpoints: self.force_endpoints,
            rhs_constant_scale: self.rhs_constant_scale,
        };
        config.validate()?;
        Ok(config)
    }

    /// SHA-256 of the compact JSON form, as lowercase hex.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Runs a suite on `threads` worker threads (`0` lets the pool choose).
/// The report does not depend on the thread count.
pub fn run_suite_parallel(config: &SuiteConfig, threads: usize) -> AppResult<Report> {
    let plan = plan_suite(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| AppError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    let cases: Vec<CaseRecord> = pool.install(|| plan.par_iter().map(|spec| run_trial(config, spec)).collect());
    Ok(aggregate(cases))
}

/// One evaluated case. Verdict fields are absent when the case could not be
/// evaluated; `error` then says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub id: String,
    pub seed: u64,
    pub n: usize,
    pub params: ParamsDoc,
    pub gap: Option<f64>,
    pub relative_gap: Option<f64>,
    pub holds: bool,
    pub trial: usize,
    pub bounds: BoundsDoc,
    pub map: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<&CaseRecord> for CaseRow {
    fn from(c: &CaseRecord) -> Self {
        Self {
            id: c.id.as_str().to_string(),
            seed: c.seed,
            n: c.n,
            params: c.params.into(),
            gap: c.verdict.map(|v| v.gap),
            relative_gap: c.verdict.map(|v| v.relative_gap),
            holds: c.holds(),
            trial: c.trial,
            bounds: c.bounds.into(),
            map: c.phi.kind().to_string(),
            error: c.error.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub id: String,
    pub trials: usize,
    pub failures: usize,
    /// Absent when no trial of the entry could be evaluated.
    pub worst_relative_gap: Option<f64>,
    pub asserted: bool,
    pub failing_seeds: Vec<u64>,
}

/// A failing case with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureDoc {
    pub trial: usize,
    pub asserted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Absent when the instance itself could not be built.
    pub case: Option<CaseDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub config_hash: String,
    pub cases: Vec<CaseRow>,
    pub summary: Vec<SummaryDoc>,
    pub passed: bool,
    pub config: ConfigDoc,
    pub failures: Vec<FailureDoc>,
}

impl ReportDoc {
    pub fn new(config: &SuiteConfig, report: &Report) -> Self {
        let config_doc = ConfigDoc::from(config);
        let failures = report
            .failures()
            .map(|c| FailureDoc {
                trial: c.trial,
                asserted: c.id.info().asserted,
                error: c.error.clone(),
                case: c.rebuild().ok().map(|case| CaseDoc::from_case(&case, config.tol, config.rhs_constant_scale)),
            })
            .collect();
        Self {
            config_hash: config_doc.hash(),
            cases: report.cases.iter().map(CaseRow::from).collect(),
            summary: report
                .summary
                .iter()
                .map(|s| SummaryDoc {
                    id: s.id.as_str().to_string(),
                    trials: s.trials,
                    failures: s.failures,
                    worst_relative_gap: s.worst_relative_gap.is_finite().then_some(s.worst_relative_gap),
                    asserted: s.asserted,
                    failing_seeds: s.failing_seeds.clone(),
                })
                .collect(),
            passed: report.passed(),
            config: config_doc,
            failures,
        }
    }

    /// One row per case; columns `id, seed, n, nu, p, alpha, gap,
    /// relative_gap, holds`, then `trial, bounds_kind, map, error`.
    pub fn to_csv(&self) -> AppResult<String> {
        #[derive(Serialize)]
        struct Row<'a> {
            id: &'a str,
            seed: u64,
            n: usize,
            nu: f64,
            p: f64,
            alpha: f64,
            gap: Option<f64>,
            relative_gap: Option<f64>,
            holds: bool,
            trial: usize,
            bounds_kind: &'static str,
            map: &'a str,
            error: &'a str,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.cases {
            w.serialize(Row {
                id: &c.id,
                seed: c.seed,
                n: c.n,
                nu: c.params.nu,
                p: c.params.p,
                alpha: c.params.alpha,
                gap: c.gap,
                relative_gap: c.relative_gap,
                holds: c.holds,
                trial: c.trial,
                bounds_kind: c.bounds.kind().as_str(),
                map: &c.map,
                error: c.error.as_deref().unwrap_or(""),
            })?;
        }
        let bytes = w.into_inner().map_err(|e| AppError::Usage(format!("csv output: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv rows are UTF-8"))
    }
}
