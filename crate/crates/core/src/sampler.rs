//! Seeded generation of Hermitian instances with prescribed spectral bounds.
//!
//! Every matrix is `Q diag(λ) Q*` with `Q` Haar-distributed and `λ` placed in
//! the hypothesized interval. All randomness comes from [`SplitMix64`], so a
//! `(bounds, n, seed)` triple regenerates the same instance bit for bit.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::constants::{BoundsKind, SandwichBounds};
use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix, HermitianMatrix};
use crate::rng::{derive_seed, SplitMix64};

/// Absolute slack allowed when checking realized spectra against bounds.
pub const CONTAINMENT_SLACK: f64 = 1e-10;

/// A sampled pair `(A, B)` together with the hypotheses it satisfies.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub bounds: SandwichBounds,
    pub seed: u64,
    pub n: usize,
}

impl Instance {
    /// Checks that the realized spectra of `A` and `B` lie in their intervals.
    pub fn verify_containment(&self) -> Result<()> {
        self.bounds.validate()?;
        if self.a.dim() != self.n || self.b.dim() != self.n {
            return Err(Error::DimensionMismatch { left: self.a.dim(), right: self.b.dim() });
        }
        for (name, m, (lo, hi)) in [("A", &self.a, self.bounds.a_interval()), ("B", &self.b, self.bounds.b_interval())]
        {
            let d = eigh(m);
            let (emin, emax) = (d.min_eigenvalue(), d.max_eigenvalue());
            if emin < lo - CONTAINMENT_SLACK || emax > hi + CONTAINMENT_SLACK {
                return Err(Error::HypothesisNotMet(format!(
                    "spectrum of {name} is [{emin}, {emax}], outside [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// Complex Gaussian with `E|z|² = 1`.
fn complex_normal(rng: &mut SplitMix64) -> Complex64 {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let re = rng.normal();
    let im = rng.normal();
    Complex64::new(re * s, im * s)
}

/// Orthonormalizes the columns of `g` in place by modified Gram-Schmidt with
/// one reorthogonalization pass. The implied triangular factor has a positive
/// real diagonal, which makes the result Haar-distributed for Gaussian `g`.
fn orthonormalize_columns(g: &mut CMatrix) -> Result<()> {
    let (rows, cols) = (g.rows(), g.cols());
    for j in 0..cols {
        for _pass in 0..2 {
            for k in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..rows {
                    dot += g[(i, k)].conj() * g[(i, j)];
                }
                for i in 0..rows {
                    let v = g[(i, k)];
                    g[(i, j)] -= v * dot;
                }
            }
        }
        let norm = libm::sqrt((0..rows).map(|i| g[(i, j)].norm_sqr()).sum::<f64>());
        if !(norm > 1e-300) {
            return Err(Error::InvalidShape(format!("column {j} is linearly dependent")));
        }
        for i in 0..rows {
            g[(i, j)] /= norm;
        }
    }
    Ok(())
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut SplitMix64) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-random `n x n` unitary.
pub fn haar_unitary(n: usize, seed: u64) -> CMatrix {
    random_isometry(n, n, seed)
}

/// `n x k` matrix with orthonormal columns, the first `k` columns of a Haar
/// unitary.
pub fn random_isometry(n: usize, k: usize, seed: u64) -> CMatrix {
    assert!(k <= n && n >= 1, "isometry needs 1 ≤ n and k ≤ n");
    let mut rng = SplitMix64::new(seed);
    loop {
        let mut g = gaussian_matrix(n, k, &mut rng);
        if orthonormalize_columns(&mut g).is_ok() {
            return g;
        }
    }
}

/// Random positive semidefinite matrix `G G* / n` with `G` complex Gaussian.
pub fn random_psd(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = SplitMix64::new(seed);
    let g = gaussian_matrix(n, n, &mut rng);
    HermitianMatrix::symmetrized(&g.matmul(&g.adjoint()).expect("square").scale(1.0 / n as f64))
}

/// Random Hermitian matrix with independent Gaussian entries.
pub fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = SplitMix64::new(seed);
    HermitianMatrix::symmetrized(&gaussian_matrix(n, n, &mut rng))
}

/// `Q diag(λ) Q*`.
pub fn with_spectrum(q: &CMatrix, eigenvalues: &[f64]) -> Result<HermitianMatrix> {
    HermitianMatrix::diag(eigenvalues).congruence(q)
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::BadBounds(format!("interval needs 0 < lo ≤ hi, got [{lo}, {hi}]")));
    }
    Ok(())
}

/// Eigenvalues uniform in `[lo, hi]`; with `force_endpoints` and `n ≥ 2` the
/// first is exactly `lo` and the last exactly `hi`.
pub fn draw_spectrum(n: usize, lo: f64, hi: f64, rng: &mut SplitMix64, force_endpoints: bool) -> Vec<f64> {
    let mut values: Vec<f64> = (0..n).map(|_| rng.uniform(lo, hi).clamp(lo, hi)).collect();
    if force_endpoints && n >= 2 {
        values[0] = lo;
        values[n - 1] = hi;
    }
    values
}

/// `Q diag(λ) Q*` with `λ` drawn by [`draw_spectrum`] and `Q` Haar. A
/// degenerate interval returns exactly `lo · I`.
pub fn sample_constrained(n: usize, lo: f64, hi: f64, seed: u64, force_endpoints: bool) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(Error::InvalidShape("dimension must be at least 1".into()));
    }
    check_interval(lo, hi)?;
    if lo == hi {
        return Ok(HermitianMatrix::scalar(n, lo));
    }
    let mut rng = SplitMix64::new(derive_seed(seed, 0));
    let spectrum = draw_spectrum(n, lo, hi, &mut rng, force_endpoints);
    let q = haar_unitary(n, derive_seed(seed, 1));
    with_spectrum(&q, &spectrum)
}

/// Samples `A` and `B` inside the intervals that `bounds` assigns to them and
/// confirms the realized spectra.
pub fn sample_instance(bounds: SandwichBounds, n: usize, seed: u64, force_endpoints: bool) -> Result<Instance> {
    bounds.validate()?;
    let (alo, ahi) = bounds.a_interval();
    let (blo, bhi) = bounds.b_interval();
    let a = sample_constrained(n, alo, ahi, derive_seed(seed, 0), force_endpoints)?;
    let b = sample_constrained(n, blo, bhi, derive_seed(seed, 1), force_endpoints)?;
    let instance = Instance { a, b, bounds, seed, n };
    instance.verify_containment()?;
    Ok(instance)
}

/// Builds an instance from eigenvalue placements `u ∈ [0, 1]` inside each
/// interval and explicit eigenvector bases.
pub fn instance_from_placements(
    bounds: SandwichBounds,
    ua: &[f64],
    ub: &[f64],
    qa: &CMatrix,
    qb: &CMatrix,
    seed: u64,
) -> Result<Instance> {
    bounds.validate()?;
    let n = ua.len();
    if ub.len() != n || qa.rows() != n || qb.rows() != n {
        return Err(Error::DimensionMismatch { left: n, right: ub.len() });
    }
    let place = |u: f64, (lo, hi): (f64, f64)| (lo + u.clamp(0.0, 1.0) * (hi - lo)).clamp(lo, hi);
    let la: Vec<f64> = ua.iter().map(|&u| place(u, bounds.a_interval())).collect();
    let lb: Vec<f64> = ub.iter().map(|&u| place(u, bounds.b_interval())).collect();
    let instance = Instance { a: with_spectrum(qa, &la)?, b: with_spectrum(qb, &lb)?, bounds, seed, n };
    instance.verify_containment()?;
    Ok(instance)
}

/// Ranges for random bounds: outer ratio `h` and the lower edge `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsRanges {
    pub h_min: f64,
    pub h_max: f64,
    pub m_min: f64,
    pub m_max: f64,
}

impl Default for BoundsRanges {
    fn default() -> Self {
        Self { h_min: 1.5, h_max: 20.0, m_min: 0.5, m_max: 2.0 }
    }
}

/// Draws bounds of the given kind.
///
/// Outer interval: `m` log-uniform in `[m_min, m_max]`, `h = M/m` log-uniform
/// in `[h_min, h_max]`. Sandwich kinds add `h' = h^U` with `U` uniform in
/// `(0.02, 0.98)` and place `[m', M']` log-uniformly inside `[m, M]`. Reverse
/// bounds separate the two square-root intervals so that the separation ratio
/// lies in `[h_min, h_max]`; each interval has width ratio log-uniform in `[1, 2]`.
pub fn draw_bounds(kind: BoundsKind, ranges: &BoundsRanges, rng: &mut SplitMix64) -> SandwichBounds {
    let m = rng.log_uniform(ranges.m_min, ranges.m_max);
    let h = rng.log_uniform(ranges.h_min, ranges.h_max);
    let big_m = m * h;
    match kind {
        BoundsKind::Common => SandwichBounds::common(m, big_m),
        BoundsKind::SandwichBLow | BoundsKind::SandwichALow => {
            let u = rng.uniform(0.02, 0.98);
            let h_prime = libm::exp(u * libm::log(h));
            let m_prime = rng.log_uniform(m, big_m / h_prime).clamp(m, big_m / h_prime);
            let big_m_prime = (m_prime * h_prime).min(big_m);
            if kind == BoundsKind::SandwichBLow {
                SandwichBounds::b_low(m, m_prime, big_m_prime, big_m)
            } else {
                SandwichBounds::a_low(m, m_prime, big_m_prime, big_m)
            }
        }
        BoundsKind::ReverseAndo => {
            // interval for sqrt-spectrum of the lower operator, then the upper one
            // starts at sqrt(h) times its top edge.
            let w_low = rng.log_uniform(1.0, 2.0);
            let w_high = rng.log_uniform(1.0, 2.0);
            let lower_top = libm::sqrt(m) * w_low;
            let (lo1, hi1) = (libm::sqrt(m), lower_top);
            let lo2 = lower_top * libm::sqrt(h);
            let hi2 = lo2 * w_high;
            if rng.below(2) == 0 {
                SandwichBounds::reverse_ando(lo1, hi1, lo2, hi2)
            } else {
                SandwichBounds::reverse_ando(lo2, hi2, lo1, hi1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(m: &HermitianMatrix) -> Vec<f64> {
        eigh(m).eigenvalues
    }

    #[test]
    fn degenerate_interval_gives_scalar() {
        for seed in [0, 1, 99] {
            assert_eq!(sample_constrained(3, 2.5, 2.5, seed, false).unwrap(), HermitianMatrix::scalar(3, 2.5));
        }
    }

    #[test]
    fn forced_endpoints_and_determinism() {
        let x = sample_constrained(3, 2.0, 5.0, 42, true).unwrap();
        let ev = spectrum(&x);
        assert!((ev[0] - 2.0).abs() < 1e-12 && (ev[2] - 5.0).abs() < 1e-12, "{ev:?}");
        assert!(ev.iter().all(|&l| l > 2.0 - 1e-12 && l < 5.0 + 1e-12));
        assert_eq!(x, sample_constrained(3, 2.0, 5.0, 42, true).unwrap());
        assert_ne!(x, sample_constrained(3, 2.0, 5.0, 43, true).unwrap());
    }

    #[test]
    fn bad_interval_rejected() {
        assert!(matches!(sample_constrained(2, 0.0, 1.0, 0, false), Err(Error::BadBounds(_))));
        assert!(matches!(sample_constrained(2, 3.0, 1.0, 0, false), Err(Error::BadBounds(_))));
    }

    #[test]
    fn haar_unitary_is_unitary_and_complex() {
        let q = haar_unitary(5, 3);
        assert!(q.isometry_residual() < 1e-13);
        assert!(q.imag_parts().iter().any(|x| x.abs() > 1e-3));
        let v = random_isometry(4, 2, 11);
        assert_eq!((v.rows(), v.cols()), (4, 2));
        assert!(v.isometry_residual() < 1e-13);
    }

    #[test]
    fn instance_examples() {
        let i = sample_instance(SandwichBounds::b_low(1.0, 1.0, 4.0, 4.0), 3, 5, false).unwrap();
        assert_eq!(i.a, HermitianMatrix::scalar(3, 4.0));
        assert_eq!(i.b, HermitianMatrix::identity(3));
        let i = sample_instance(SandwichBounds::common(1.0, 1.0), 2, 5, false).unwrap();
        assert_eq!(i.a, HermitianMatrix::identity(2));
        assert_eq!(i.b, HermitianMatrix::identity(2));
        let i = sample_instance(SandwichBounds::b_low(1.0, 1.5, 2.0, 4.0), 3, 7, false).unwrap();
        let (sa, sb) = (spectrum(&i.a), spectrum(&i.b));
        assert!(sb[0] >= 1.0 - 1e-10 && sb[2] <= 1.5 + 1e-10, "{sb:?}");
        assert!(sa[0] >= 2.0 - 1e-10 && sa[2] <= 4.0 + 1e-10, "{sa:?}");
    }

    #[test]
    fn forced_endpoints_realize_nominal_ratios() {
        let bounds = SandwichBounds::a_low(1.0, 1.7, 3.0, 9.0);
        let i = sample_instance(bounds, 4, 21, true).unwrap();
        let (sa, sb) = (spectrum(&i.a), spectrum(&i.b));
        assert!((sb[3] / sa[0] - 9.0).abs() < 1e-10);
        assert!((sb[0] / sa[3] - 3.0 / 1.7).abs() < 1e-10);
    }

    #[test]
    fn reverse_bounds_instances() {
        let bounds = SandwichBounds::reverse_ando(1.0, 2.0, 3.0, 4.0);
        let i = sample_instance(bounds, 3, 1, false).unwrap();
        let (sa, sb) = (spectrum(&i.a), spectrum(&i.b));
        assert!(sa[0] >= 1.0 - 1e-10 && sa[2] <= 4.0 + 1e-10);
        assert!(sb[0] >= 9.0 - 1e-10 && sb[2] <= 16.0 + 1e-10);
    }

    #[test]
    fn drawn_bounds_respect_ranges() {
        let ranges = BoundsRanges::default();
        let mut rng = SplitMix64::new(8);
        for _ in 0..500 {
            for kind in
                [BoundsKind::Common, BoundsKind::SandwichBLow, BoundsKind::SandwichALow, BoundsKind::ReverseAndo]
            {
                let b = draw_bounds(kind, &ranges, &mut rng);
                b.validate().unwrap();
                assert_eq!(b.kind(), kind);
                if let Some(h) = b.h() {
                    assert!((1.5 * (1.0 - 1e-12)..=20.0 * (1.0 + 1e-12)).contains(&h));
                }
                if let Some(hp) = b.h_prime() {
                    assert!(hp > 1.0 && hp < b.h().unwrap(), "{b}");
                }
                if kind == BoundsKind::ReverseAndo {
                    let s = b.separation_ratio().unwrap();
                    let s = s.max(1.0 / s);
                    assert!((1.5 * (1.0 - 1e-12)..=20.0 * (1.0 + 1e-12)).contains(&s), "{b}");
                }
            }
        }
    }
}
