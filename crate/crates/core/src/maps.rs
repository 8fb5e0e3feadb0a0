//! Positive unital linear maps on Hermitian matrices.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix, HermitianMatrix};
use crate::rng::{derive_seed, SplitMix64};
use crate::sampler::{haar_unitary, random_hermitian, random_isometry, random_psd};

/// Tolerance for `V*V = I` and `U*U = I` in map payloads.
pub const ISOMETRY_TOL: f64 = 1e-10;
/// Tolerance for mixture weights summing to one.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Residual bound for a map to pass [`validate_map`].
pub const VALIDATION_TOL: f64 = 1e-9;

/// Catalog of map kinds, in the order the suite cycles through them.
pub const MAP_KINDS: &[&str] = &["identity", "trace_average", "compression", "pinching", "unitary_mixture", "diagonal"];

/// A positive unital linear map.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    /// `Φ(A) = A` on `n x n` matrices.
    Identity { n: usize },
    /// `Φ(A) = (tr A / n) I`.
    TraceAverage { n: usize },
    /// `Φ(A) = V* A V` for an `n x k` isometry `V`; output is `k x k`.
    Compression { v: CMatrix },
    /// Keeps the diagonal blocks of consecutive sizes `blocks` and zeroes the rest.
    Pinching { blocks: Vec<usize> },
    /// `Φ(A) = Σ wᵢ Uᵢ* A Uᵢ` with `wᵢ > 0`, `Σ wᵢ = 1`, `Uᵢ` unitary.
    UnitaryMixture { terms: Vec<(f64, CMatrix)> },
    /// Keeps the diagonal.
    Diagonal { n: usize },
}

impl MapSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MapSpec::Identity { .. } => "identity",
            MapSpec::TraceAverage { .. } => "trace_average",
            MapSpec::Compression { .. } => "compression",
            MapSpec::Pinching { .. } => "pinching",
            MapSpec::UnitaryMixture { .. } => "unitary_mixture",
            MapSpec::Diagonal { .. } => "diagonal",
        }
    }

    /// Dimension of the matrices the map accepts.
    pub fn input_dim(&self) -> usize {
        match self {
            MapSpec::Identity { n } | MapSpec::TraceAverage { n } | MapSpec::Diagonal { n } => *n,
            MapSpec::Compression { v } => v.rows(),
            MapSpec::Pinching { blocks } => blocks.iter().sum(),
            MapSpec::UnitaryMixture { terms } => terms.first().map_or(0, |(_, u)| u.rows()),
        }
    }

    /// Dimension of the matrices the map returns.
    pub fn output_dim(&self) -> usize {
        match self {
            MapSpec::Compression { v } => v.cols(),
            other => other.input_dim(),
        }
    }

    /// Checks the payload: isometric `V`, a partition of `n` into positive
    /// blocks, unitary `Uᵢ` and positive weights summing to one.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::MalformedSpec(msg));
        match self {
            MapSpec::Identity { n } | MapSpec::TraceAverage { n } | MapSpec::Diagonal { n } => {
                if *n == 0 {
                    return bad("dimension must be at least 1".to_string());
                }
            }
            MapSpec::Compression { v } => {
                if v.cols() == 0 || v.cols() > v.rows() {
                    return bad(format!("isometry must be n x k with 1 ≤ k ≤ n, got {} x {}", v.rows(), v.cols()));
                }
                let res = v.isometry_residual();
                if !(res <= ISOMETRY_TOL) {
                    return bad(format!("V*V differs from I by {res:e}"));
                }
            }
            MapSpec::Pinching { blocks } => {
                if blocks.is_empty() || blocks.contains(&0) {
                    return bad(format!("pinching blocks must be positive, got {blocks:?}"));
                }
            }
            MapSpec::UnitaryMixture { terms } => {
                if terms.is_empty() {
                    return bad("unitary mixture needs at least one term".to_string());
                }
                let n = terms[0].1.rows();
                let mut total = 0.0;
                for (i, (w, u)) in terms.iter().enumerate() {
                    if !(*w > 0.0) || !w.is_finite() {
                        return bad(format!("weight {i} is {w}, must be positive"));
                    }
                    if u.rows() != n || u.cols() != n || n == 0 {
                        return bad(format!("unitary {i} is {} x {}, expected {n} x {n}", u.rows(), u.cols()));
                    }
                    let res = u.isometry_residual();
                    if !(res <= ISOMETRY_TOL) {
                        return bad(format!("unitary {i} differs from unitary by {res:e}"));
                    }
                    total += w;
                }
                if !((total - 1.0).abs() <= WEIGHT_SUM_TOL) {
                    return bad(format!("weights sum to {total}, not 1"));
                }
            }
        }
        Ok(())
    }
}

fn keep_blocks(a: &HermitianMatrix, block_of: impl Fn(usize) -> usize) -> HermitianMatrix {
    let n = a.dim();
    let zero = Complex64::new(0.0, 0.0);
    let m = CMatrix::from_fn(n, n, |i, j| if block_of(i) == block_of(j) { a[(i, j)] } else { zero });
    HermitianMatrix::symmetrized(&m)
}

/// `Φ(A)`.
pub fn apply_map(phi: &MapSpec, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    phi.check()?;
    if a.dim() != phi.input_dim() {
        return Err(Error::DimensionMismatch { left: phi.input_dim(), right: a.dim() });
    }
    Ok(match phi {
        MapSpec::Identity { .. } => a.clone(),
        MapSpec::TraceAverage { n } => HermitianMatrix::scalar(*n, a.trace() / *n as f64),
        MapSpec::Compression { v } => a.congruence(&v.adjoint())?,
        MapSpec::Diagonal { .. } => keep_blocks(a, |i| i),
        MapSpec::Pinching { blocks } => {
            let mut owner = Vec::with_capacity(a.dim());
            for (b, &size) in blocks.iter().enumerate() {
                owner.extend(core::iter::repeat_n(b, size));
            }
            keep_blocks(a, |i| owner[i])
        }
        MapSpec::UnitaryMixture { terms } => {
            let n = a.dim();
            let mut acc = HermitianMatrix::scalar(n, 0.0);
            for (w, u) in terms {
                acc = acc.combine(1.0, &a.congruence(&u.adjoint())?, *w)?;
            }
            acc
        }
    })
}

/// Residuals certifying that a map is positive, unital and linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// `max |Φ(I) − I|` entrywise.
    pub unitality_residual: f64,
    /// Largest `max(0, −λ_min(Φ(P)) / (1 + λ_max(Φ(P))))` over random PSD `P`.
    pub positivity_residual: f64,
    /// Largest `max |Φ(A + cB) − Φ(A) − cΦ(B)| / (1 + max|A| + |c| max|B|)`.
    pub linearity_residual: f64,
    pub trials: usize,
    pub passes: bool,
}

/// Certifies unitality, positivity and linearity on `trials` random inputs.
pub fn validate_map(phi: &MapSpec, trials: usize, seed: u64) -> Result<ValidationReport> {
    phi.check()?;
    if trials == 0 {
        return Err(Error::ConfigInvalid("validation needs at least one trial".to_string()));
    }
    let n = phi.input_dim();
    let k = phi.output_dim();
    let unitality_residual =
        apply_map(phi, &HermitianMatrix::identity(n))?.sub(&HermitianMatrix::identity(k))?.as_matrix().max_abs();

    let mut positivity_residual: f64 = 0.0;
    let mut linearity_residual: f64 = 0.0;
    let mut rng = SplitMix64::new(seed);
    for t in 0..trials as u64 {
        let s = derive_seed(seed, t);
        let p = random_psd(n, derive_seed(s, 0));
        let d = eigh(&apply_map(phi, &p)?);
        let rel = -d.min_eigenvalue() / (1.0 + d.max_eigenvalue().max(0.0));
        positivity_residual = positivity_residual.max(rel.max(0.0));

        let a = random_hermitian(n, derive_seed(s, 1));
        let b = random_hermitian(n, derive_seed(s, 2));
        let c = rng.uniform(-2.0, 2.0);
        let lhs = apply_map(phi, &a.combine(1.0, &b, c)?)?;
        let rhs = apply_map(phi, &a)?.combine(1.0, &apply_map(phi, &b)?, c)?;
        let scale = 1.0 + a.as_matrix().max_abs() + c.abs() * b.as_matrix().max_abs();
        linearity_residual = linearity_residual.max(lhs.sub(&rhs)?.as_matrix().max_abs() / scale);
    }
    let passes = unitality_residual <= VALIDATION_TOL
        && positivity_residual <= VALIDATION_TOL
        && linearity_residual <= VALIDATION_TOL;
    Ok(ValidationReport { unitality_residual, positivity_residual, linearity_residual, trials, passes })
}

/// Random map of the given kind on `n x n` inputs, deterministic in `(n, kind, seed)`.
///
/// Compressions use `k` uniform in `1..=n`; pinchings use a composition of
/// `n` chosen uniformly among the `2^{n−1}` compositions; unitary mixtures
/// use 2 or 3 Haar unitaries with weights proportional to uniform draws in
/// `[0.1, 1]`.
pub fn random_map(n: usize, kind: &str, seed: u64) -> Result<MapSpec> {
    if n == 0 {
        return Err(Error::MalformedSpec("dimension must be at least 1".to_string()));
    }
    let mut rng = SplitMix64::new(seed);
    let spec = match kind {
        "identity" => MapSpec::Identity { n },
        "trace_average" => MapSpec::TraceAverage { n },
        "diagonal" => MapSpec::Diagonal { n },
        "compression" => {
            let k = 1 + rng.below(n);
            MapSpec::Compression { v: random_isometry(n, k, derive_seed(seed, 1)) }
        }
        "pinching" => {
            let mut blocks = Vec::new();
            let mut current = 1;
            for _ in 1..n {
                if rng.below(2) == 0 {
                    blocks.push(current);
                    current = 1;
                } else {
                    current += 1;
                }
            }
            blocks.push(current);
            MapSpec::Pinching { blocks }
        }
        "unitary_mixture" => {
            let count = 2 + rng.below(2);
            let raw: Vec<f64> = (0..count).map(|_| rng.uniform(0.1, 1.0)).collect();
            let total: f64 = raw.iter().sum();
            let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
            let head: f64 = weights[..count - 1].iter().sum();
            weights[count - 1] = 1.0 - head;
            let terms = weights
                .into_iter()
                .enumerate()
                .map(|(i, w)| (w, haar_unitary(n, derive_seed(seed, 2 + i as u64))))
                .collect();
            MapSpec::UnitaryMixture { terms }
        }
        other => return Err(Error::UnknownKind(other.to_string())),
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_trace_average_examples() {
        let a = HermitianMatrix::from_parts(2, &[1.0, 0.5, 0.5, 4.0], Some(&[0.0, 0.2, -0.2, 0.0])).unwrap();
        assert_eq!(apply_map(&MapSpec::Identity { n: 2 }, &a).unwrap(), a);
        let t = apply_map(&MapSpec::TraceAverage { n: 2 }, &HermitianMatrix::diag(&[1.0, 4.0])).unwrap();
        assert_eq!(t, HermitianMatrix::scalar(2, 2.5));
    }

    #[test]
    fn compression_onto_first_basis_vector() {
        let v = CMatrix::from_parts(3, 1, &[1.0, 0.0, 0.0], None).unwrap();
        let a = HermitianMatrix::from_real(3, &[7.0, 1.0, 2.0, 1.0, 5.0, 3.0, 2.0, 3.0, 9.0]).unwrap();
        let out = apply_map(&MapSpec::Compression { v }, &a).unwrap();
        assert_eq!(out.dim(), 1);
        assert!((out[(0, 0)].re - 7.0).abs() < 1e-15);
    }

    #[test]
    fn pinching_and_diagonal() {
        let a = HermitianMatrix::from_real(3, &[7.0, 1.0, 2.0, 1.0, 5.0, 3.0, 2.0, 3.0, 9.0]).unwrap();
        let p = apply_map(&MapSpec::Pinching { blocks: alloc::vec![2, 1] }, &a).unwrap();
        assert_eq!(p, HermitianMatrix::from_real(3, &[7.0, 1.0, 0.0, 1.0, 5.0, 0.0, 0.0, 0.0, 9.0]).unwrap());
        let d = apply_map(&MapSpec::Diagonal { n: 3 }, &a).unwrap();
        assert_eq!(d, HermitianMatrix::diag(&[7.0, 5.0, 9.0]));
    }

    #[test]
    fn malformed_specs() {
        let v = CMatrix::from_parts(2, 1, &[1.0, 1.0], None).unwrap();
        let phi = MapSpec::Compression { v };
        assert!(matches!(validate_map(&phi, 3, 0), Err(Error::MalformedSpec(_))));
        assert!(matches!(apply_map(&phi, &HermitianMatrix::identity(2)), Err(Error::MalformedSpec(_))));
        let u = CMatrix::identity(2);
        let phi = MapSpec::UnitaryMixture { terms: alloc::vec![(0.5, u.clone()), (0.4, u.clone())] };
        assert!(matches!(phi.check(), Err(Error::MalformedSpec(_))));
        let phi = MapSpec::UnitaryMixture { terms: alloc::vec![(1.0, u.scale(1.1))] };
        assert!(matches!(phi.check(), Err(Error::MalformedSpec(_))));
        assert!(matches!(
            apply_map(&MapSpec::Identity { n: 2 }, &HermitianMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validation_passes_for_catalog() {
        let r = validate_map(&MapSpec::Identity { n: 4 }, 5, 1).unwrap();
        assert_eq!((r.unitality_residual, r.positivity_residual, r.linearity_residual), (0.0, 0.0, 0.0));
        assert!(r.passes);
        assert!(validate_map(&MapSpec::TraceAverage { n: 3 }, 100, 2).unwrap().passes);
        for n in 1..=5 {
            for kind in MAP_KINDS {
                for seed in 0..5 {
                    let phi = random_map(n, kind, seed).unwrap();
                    assert_eq!(phi.kind(), *kind);
                    assert_eq!(phi.input_dim(), n);
                    let r = validate_map(&phi, 10, seed).unwrap();
                    assert!(r.passes, "{kind} n={n} seed={seed}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn random_map_is_deterministic() {
        assert_eq!(random_map(4, "unitary_mixture", 7).unwrap(), random_map(4, "unitary_mixture", 7).unwrap());
        assert_eq!(random_map(3, "identity", 1).unwrap(), random_map(3, "identity", 99).unwrap());
        let MapSpec::Compression { v } = random_map(3, "compression", 11).unwrap() else { panic!() };
        assert!(v.isometry_residual() < 1e-12);
        assert!(matches!(random_map(3, "schur", 0), Err(Error::UnknownKind(_))));
    }

    #[test]
    fn pinching_blocks_partition_n() {
        for seed in 0..50 {
            let MapSpec::Pinching { blocks } = random_map(6, "pinching", seed).unwrap() else { panic!() };
            assert_eq!(blocks.iter().sum::<usize>(), 6);
        }
    }
}
