//! JSON documents for matrices, bounds, maps, instances and single cases.
//!
//! Numbers are written in the shortest decimal form that parses back to the
//! same `f64` (at most 17 significant digits), so every document round-trips
//! exactly.

use std::fs;
use std::io::Write;
use std::path::Path;

use opineq_core::constants::{BoundsKind, CaseParams, Sandwich, SandwichBounds};
use opineq_core::maps::MapSpec;
use opineq_core::registry::InequalityId;
use opineq_core::sampler::Instance;
use opineq_core::verifier::InequalityCase;
use opineq_core::{CMatrix, Error, HermitianMatrix};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

/// A dense complex matrix: `n` rows, `cols` columns (default `n`), row arrays
/// of real parts and optional row arrays of imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

fn rows_of(values: &[f64], cols: usize) -> Vec<Vec<f64>> {
    values.chunks(cols.max(1)).map(<[f64]>::to_vec).collect()
}

fn flatten(rows: &[Vec<f64>], n: usize, cols: usize, what: &str) -> Result<Vec<f64>, Error> {
    if rows.len() != n || rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidShape(format!("`{what}` must be {n} rows of {cols} numbers")));
    }
    Ok(rows.concat())
}

impl MatrixDoc {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let im = m.imag_parts();
        Self {
            n: m.rows(),
            cols: (m.cols() != m.rows()).then_some(m.cols()),
            re: rows_of(&m.real_parts(), m.cols()),
            im: im.iter().any(|&x| x != 0.0).then(|| rows_of(&im, m.cols())),
        }
    }

    pub fn from_hermitian(h: &HermitianMatrix) -> Self {
        Self::from_matrix(h.as_matrix())
    }

    pub fn to_matrix(&self) -> Result<CMatrix, Error> {
        let cols = self.cols.unwrap_or(self.n);
        let re = flatten(&self.re, self.n, cols, "re")?;
        let im = self.im.as_ref().map(|im| flatten(im, self.n, cols, "im")).transpose()?;
        CMatrix::from_parts(self.n, cols, &re, im.as_deref())
    }

    pub fn to_hermitian(&self) -> Result<HermitianMatrix, Error> {
        HermitianMatrix::from_matrix(self.to_matrix()?)
    }
}

/// Scalar hypotheses, tagged by kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum BoundsDoc {
    #[serde(rename = "common")]
    Common {
        m: f64,
        #[serde(rename = "M")]
        big_m: f64,
    },
    #[serde(rename = "sandwich_B_low")]
    SandwichBLow {
        m: f64,
        mp: f64,
        #[serde(rename = "Mp")]
        big_mp: f64,
        #[serde(rename = "M")]
        big_m: f64,
    },
    #[serde(rename = "sandwich_A_low")]
    SandwichALow {
        m: f64,
        mp: f64,
        #[serde(rename = "Mp")]
        big_mp: f64,
        #[serde(rename = "M")]
        big_m: f64,
    },
    #[serde(rename = "reverse_ando")]
    ReverseAndo {
        m1: f64,
        #[serde(rename = "M1")]
        big_m1: f64,
        m2: f64,
        #[serde(rename = "M2")]
        big_m2: f64,
    },
}

impl From<SandwichBounds> for BoundsDoc {
    fn from(b: SandwichBounds) -> Self {
        match b {
            SandwichBounds::Common { m, big_m } => BoundsDoc::Common { m, big_m },
            SandwichBounds::SandwichBLow(s) => {
                BoundsDoc::SandwichBLow { m: s.m, mp: s.m_prime, big_mp: s.big_m_prime, big_m: s.big_m }
            }
            SandwichBounds::SandwichALow(s) => {
                BoundsDoc::SandwichALow { m: s.m, mp: s.m_prime, big_mp: s.big_m_prime, big_m: s.big_m }
            }
            SandwichBounds::ReverseAndo { m1, big_m1, m2, big_m2 } => BoundsDoc::ReverseAndo { m1, big_m1, m2, big_m2 },
        }
    }
}

impl BoundsDoc {
    /// Converts and validates.
    pub fn to_bounds(self) -> Result<SandwichBounds, Error> {
        let b = match self {
            BoundsDoc::Common { m, big_m } => SandwichBounds::common(m, big_m),
            BoundsDoc::SandwichBLow { m, mp, big_mp, big_m } => {
                SandwichBounds::SandwichBLow(Sandwich { m, m_prime: mp, big_m_prime: big_mp, big_m })
            }
            BoundsDoc::SandwichALow { m, mp, big_mp, big_m } => {
                SandwichBounds::SandwichALow(Sandwich { m, m_prime: mp, big_m_prime: big_mp, big_m })
            }
            BoundsDoc::ReverseAndo { m1, big_m1, m2, big_m2 } => SandwichBounds::reverse_ando(m1, big_m1, m2, big_m2),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn kind(&self) -> BoundsKind {
        match self {
            BoundsDoc::Common { .. } => BoundsKind::Common,
            BoundsDoc::SandwichBLow { .. } => BoundsKind::SandwichBLow,
            BoundsDoc::SandwichALow { .. } => BoundsKind::SandwichALow,
            BoundsDoc::ReverseAndo { .. } => BoundsKind::ReverseAndo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    pub nu: f64,
    pub p: f64,
    pub alpha: f64,
}

impl From<CaseParams> for ParamsDoc {
    fn from(c: CaseParams) -> Self {
        Self { nu: c.nu, p: c.p, alpha: c.alpha }
    }
}

impl From<ParamsDoc> for CaseParams {
    fn from(d: ParamsDoc) -> Self {
        CaseParams::new(d.nu, d.p, d.alpha)
    }
}

/// A positive unital map: kind tag plus payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum MapDoc {
    #[serde(rename = "identity")]
    Identity { n: usize },
    #[serde(rename = "trace_average")]
    TraceAverage { n: usize },
    #[serde(rename = "compression")]
    Compression { v: MatrixDoc },
    #[serde(rename = "pinching")]
    Pinching { blocks: Vec<usize> },
    #[serde(rename = "unitary_mixture")]
    UnitaryMixture { weights: Vec<f64>, unitaries: Vec<MatrixDoc> },
    #[serde(rename = "diagonal")]
    Diagonal { n: usize },
}

impl From<&MapSpec> for MapDoc {
    fn from(phi: &MapSpec) -> Self {
        match phi {
            MapSpec::Identity { n } => MapDoc::Identity { n: *n },
            MapSpec::TraceAverage { n } => MapDoc::TraceAverage { n: *n },
            MapSpec::Compression { v } => MapDoc::Compression { v: MatrixDoc::from_matrix(v) },
            MapSpec::Pinching { blocks } => MapDoc::Pinching { blocks: blocks.clone() },
            MapSpec::UnitaryMixture { terms } => MapDoc::UnitaryMixture {
                weights: terms.iter().map(|(w, _)| *w).collect(),
                unitaries: terms.iter().map(|(_, u)| MatrixDoc::from_matrix(u)).collect(),
            },
            MapSpec::Diagonal { n } => MapDoc::Diagonal { n: *n },
        }
    }
}

impl MapDoc {
    /// Converts and checks the payload.
    pub fn to_map(&self) -> Result<MapSpec, Error> {
        let phi = match self {
            MapDoc::Identity { n } => MapSpec::Identity { n: *n },
            MapDoc::TraceAverage { n } => MapSpec::TraceAverage { n: *n },
            MapDoc::Compression { v } => MapSpec::Compression { v: v.to_matrix()? },
            MapDoc::Pinching { blocks } => MapSpec::Pinching { blocks: blocks.clone() },
            MapDoc::UnitaryMixture { weights, unitaries } => {
                if weights.len() != unitaries.len() {
                    return Err(Error::MalformedSpec(format!(
                        "{} weights for {} unitaries",
                        weights.len(),
                        unitaries.len()
                    )));
                }
                let terms = weights
                    .iter()
                    .zip(unitaries)
                    .map(|(&w, u)| Ok((w, u.to_matrix()?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                MapSpec::UnitaryMixture { terms }
            }
            MapDoc::Diagonal { n } => MapSpec::Diagonal { n: *n },
        };
        phi.check()?;
        Ok(phi)
    }
}

/// A sampled pair with the hypotheses it was drawn under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub bounds: BoundsDoc,
    pub seed: u64,
    pub n: usize,
    pub a: MatrixDoc,
    pub b: MatrixDoc,
}

impl From<&Instance> for InstanceDoc {
    fn from(inst: &Instance) -> Self {
        Self {
            bounds: inst.bounds.into(),
            seed: inst.seed,
            n: inst.n,
            a: MatrixDoc::from_hermitian(&inst.a),
            b: MatrixDoc::from_hermitian(&inst.b),
        }
    }
}

impl InstanceDoc {
    /// Converts and checks that the spectra satisfy the stated bounds.
    pub fn to_instance(&self) -> Result<Instance, Error> {
        let instance = Instance {
            a: self.a.to_hermitian()?,
            b: self.b.to_hermitian()?,
            bounds: self.bounds.to_bounds()?,
            seed: self.seed,
            n: self.n,
        };
        instance.verify_containment()?;
        Ok(instance)
    }
}

/// Everything needed to re-run one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseDoc {
    pub id: String,
    pub params: ParamsDoc,
    pub tol: f64,
    pub rhs_constant_scale: f64,
    pub map: MapDoc,
    pub instance: InstanceDoc,
}

impl CaseDoc {
    pub fn from_case(case: &InequalityCase, tol: f64, rhs_constant_scale: f64) -> Self {
        Self {
            id: case.id.as_str().to_string(),
            params: case.params.into(),
            tol,
            rhs_constant_scale,
            map: (&case.phi).into(),
            instance: (&case.instance).into(),
        }
    }

    pub fn to_case(&self) -> Result<InequalityCase, Error> {
        Ok(InequalityCase {
            id: InequalityId::parse(&self.id)?,
            instance: self.instance.to_instance()?,
            phi: self.map.to_map()?,
            params: self.params.into(),
        })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents contain only serializable fields");
    s.push('\n');
    s
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> AppResult<T> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| AppError::json(path, e))
}

/// Writes `text` to `path`, or to standard output when `path` is `-`.
pub fn write_text(path: &Path, text: &str) -> AppResult<()> {
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        return out.write_all(text.as_bytes()).map_err(|e| AppError::io(path, e));
    }
    fs::write(path, text).map_err(|e| AppError::io(path, e))
}
