//! Acceptance criteria. Prints one PASS/FAIL line per criterion, then fails
//! if any criterion failed.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use opineq::report::run_suite_parallel;
use opineq_core::constants::{generalized_kantorovich, BoundsKind, CaseParams, SandwichBounds};
use opineq_core::linalg::{eigh, matrix_power, op_norm};
use opineq_core::maps::{apply_map, random_map, MapSpec, MAP_KINDS};
use opineq_core::means::{arithmetic_mean, bracket_term};
use opineq_core::registry::InequalityId;
use opineq_core::rng::SplitMix64;
use opineq_core::sampler::{draw_bounds, random_hermitian, random_psd, sample_instance, BoundsRanges};
use opineq_core::verifier::{
    check_case_with, compare_constants, scalar_lemma_gap, CheckSettings, InequalityCase, SuiteConfig,
};
use opineq_core::{CMatrix, Complex64, HermitianMatrix};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Written past the test harness's capture so the lines always show.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn full_registry_soundness() -> Outcome {
    let config = SuiteConfig::selftest(42);
    let shape_ok = config.ids.len() == InequalityId::all().count()
        && config.dims == [2, 3, 5]
        && config.trials == 100
        && config.nu_grid.len() == 11
        && config.nu_grid.iter().enumerate().all(|(k, &nu)| (nu - k as f64 / 10.0).abs() < 1e-15)
        && config.alpha_grid == [1.0, 1.25, 1.5, 2.0]
        && config.tol == 1e-9
        && config.ranges.h_min == 1.5
        && config.ranges.h_max == 20.0;

    let start = Instant::now();
    let report = run_suite_parallel(&config, 0).expect("selftest configuration is valid");
    let elapsed = start.elapsed();

    let ranges_ok = report.cases.iter().all(|c| match (c.bounds.h(), c.bounds.h_prime()) {
        (Some(h), hp) => {
            (1.5 * (1.0 - 1e-12)..=20.0 * (1.0 + 1e-12)).contains(&h) && hp.is_none_or(|hp| hp > 1.0 && hp < h)
        }
        (None, _) => true,
    });
    let maps_ok = MAP_KINDS.iter().all(|k| report.cases.iter().any(|c| c.phi.kind() == *k));
    let failing: Vec<String> = report
        .summary
        .iter()
        .filter(|s| s.asserted && s.failures > 0)
        .map(|s| format!("{} {}/{} (worst {:.3e})", s.id, s.failures, s.trials, s.worst_relative_gap))
        .collect();
    let informational: usize = report.summary.iter().filter(|s| !s.asserted).map(|s| s.failures).sum();
    let pass = shape_ok && ranges_ok && maps_ok && failing.is_empty() && elapsed <= Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "{} cases over {} entries in {:.1?}; asserted failures: {}; informational failures: {informational}",
            report.cases.len(),
            report.summary.len(),
            elapsed,
            if failing.is_empty() { "none".to_string() } else { failing.join(", ") }
        ),
    )
}

fn scalar_lemma_oracle() -> Outcome {
    let start = Instant::now();
    let xs: Vec<f64> = (0..200)
        .map(|i| {
            let (lo, hi) = (1.0f64 + 1e-4, 100.0f64);
            (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / 199.0).exp()
        })
        .collect();
    let mut worst = f64::INFINITY;
    for &x in &xs {
        for k in 0..=10 {
            worst = worst.min(scalar_lemma_gap(x, k as f64 / 10.0).unwrap());
        }
    }
    let mut identity_err: f64 = 0.0;
    for &x in &xs {
        for nu in [0.0, 0.25, 0.5, 0.75, 1.0] {
            identity_err = identity_err.max(scalar_lemma_gap(x, nu).unwrap().abs());
        }
    }
    // At ν = 1/4: r = 1/4, r₁ = 1/2, and K(√x)^{1/2} x^{1/4} = (1 + √x)/2.
    let mut hand_err: f64 = 0.0;
    for &x in &xs {
        let s = x.sqrt();
        let k_sqrt = ((1.0 + s) * (1.0 + s) / (4.0 * s)).sqrt();
        let lhs = 0.5 * ((1.0 + x) / 2.0 - s) + k_sqrt * x.powf(0.25);
        let rhs = 0.75 + 0.25 * x;
        hand_err = hand_err.max((lhs - (3.0 + x) / 4.0).abs()).max((rhs - (3.0 + x) / 4.0).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        worst >= -1e-12 && identity_err <= 1e-12 && hand_err <= 1e-12 && elapsed < Duration::from_secs(1),
        format!(
            "min gap {worst:.3e} on 200x11 grid; identity error {identity_err:.1e}; (3+x)/4 error {hand_err:.1e}; {elapsed:.1?}"
        ),
    )
}

/// Minimum of `f` on `[lo, hi]` by golden-section search.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2).min(f(lo)).min(f(hi))
}

fn secant_min(m: f64, big_m: f64, nu: f64) -> f64 {
    let (ym, y_big) = (m.powf(nu), big_m.powf(nu));
    let slope = (y_big - ym) / (big_m - m);
    golden_min(|x| (ym + slope * (x - m)) / x.powf(nu), m, big_m)
}

fn generalized_kantorovich_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = SplitMix64::new(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let m = rng.log_uniform(0.1, 10.0);
        let big_m = m * rng.log_uniform(1.01, 100.0);
        let nu = rng.uniform(0.01, 0.99);
        let closed = generalized_kantorovich(m, big_m, nu).unwrap().k;
        worst = worst.max((closed - secant_min(m, big_m, nu)).abs());
    }
    let hand = generalized_kantorovich(1.0, 4.0, 0.5).unwrap().k;
    let hand_target = 2.0 * 2f64.sqrt() / 3.0;
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10
            && (hand - hand_target).abs() <= 1e-12
            && (hand - 0.942809).abs() < 5e-7
            && elapsed < Duration::from_secs(5),
        format!("max |closed - oracle| {worst:.2e} on 500 triples; K(1,4,1/2) = {hand:.12}; {elapsed:.1?}"),
    )
}

/// Weight draw that lands on the grid `{0, 0.1, …, 1}` half of the time.
fn draw_nu(rng: &mut SplitMix64) -> f64 {
    if rng.below(2) == 0 {
        rng.below(11) as f64 / 10.0
    } else {
        rng.uniform01()
    }
}

fn constant_refinement_sweep() -> Outcome {
    use InequalityId::*;
    let ranges = BoundsRanges::default();
    let mut rng = SplitMix64::new(7);
    let mut details = Vec::new();
    let mut pass = true;
    let sweeps: [(InequalityId, InequalityId, &[BoundsKind], bool); 3] = [
        (Thm27Inside, Thm11Inside, &[BoundsKind::SandwichBLow, BoundsKind::SandwichALow], true),
        (Thm29Inside, ZhangInside, &[BoundsKind::SandwichBLow, BoundsKind::SandwichALow], false),
        (Thm34, Seo, &[BoundsKind::ReverseAndo], false),
    ];
    for (a, b, kinds, on_r1) in sweeps {
        let (mut max_ratio, mut equalities, mut mismatches) = (f64::NEG_INFINITY, 0, 0);
        for i in 0..100 {
            let bounds = draw_bounds(kinds[i % kinds.len()], &ranges, &mut rng);
            let nu = draw_nu(&mut rng);
            let p = rng.uniform(4.0, 8.0);
            let ratio = compare_constants(a, b, &bounds, &CaseParams::new(nu, p, 1.0)).unwrap();
            let r = nu.min(1.0 - nu);
            let r1 = (2.0 * r).min(1.0 - 2.0 * r);
            let expect_equal = if on_r1 { r1 == 0.0 } else { r == 0.0 };
            // the two constants are different floating-point expressions
            let equal = (ratio - 1.0).abs() <= 1e-12;
            max_ratio = max_ratio.max(ratio);
            equalities += usize::from(equal);
            if expect_equal != equal || ratio > 1.0 + 1e-12 {
                mismatches += 1;
            }
        }
        pass &= mismatches == 0;
        details.push(format!("{a}/{b}: max {max_ratio:.12}, {equalities} equalities, {mismatches} mismatches"));
    }
    outcome(pass, details.join("; "))
}

fn norm_refinement() -> Outcome {
    let ranges = BoundsRanges::default();
    let kinds = [BoundsKind::Common, BoundsKind::SandwichBLow, BoundsKind::SandwichALow];
    let mut rng = SplitMix64::new(11);
    let mut worst = f64::INFINITY;
    let mut cases = 0;
    for i in 0..500u64 {
        let n = [2, 3, 5][i as usize % 3];
        let bounds = draw_bounds(kinds[i as usize % 3], &ranges, &mut rng);
        let (m, big_m) = bounds.outer().unwrap();
        let nu = rng.uniform(0.01, 0.99);
        let p = rng.uniform(2.0, 4.0);
        let inst = sample_instance(bounds, n, 1000 + i, false).unwrap();
        let phi = random_map(n, MAP_KINDS[i as usize % MAP_KINDS.len()], 5000 + i).unwrap();
        let plain = apply_map(&phi, &arithmetic_mean(&inst.a, &inst.b, nu).unwrap()).unwrap();
        let bracket = apply_map(&phi, &bracket_term(&inst.a, &inst.b, m, big_m, nu).unwrap()).unwrap();
        let lhs = op_norm(&matrix_power(&plain, p).unwrap());
        let rhs = op_norm(&matrix_power(&bracket, p).unwrap());
        worst = worst.min(rhs + 1e-9 - lhs);
        cases += 1;
    }
    outcome(worst >= 0.0, format!("{cases} cases, min (rhs + 1e-9 - lhs) = {worst:.3e}"))
}

fn mutation_sensitivity() -> Outcome {
    let mut held_at_full = 0;
    let mut failed_deflated = 0;
    let mut total = 0;
    for (k, h) in [1.5, 1.6, 1.7, 1.8, 2.5, 4.0].into_iter().enumerate() {
        for n in [2, 3, 5] {
            let bounds = SandwichBounds::b_low(1.0, 1.0, h, h);
            let instance = sample_instance(bounds, n, k as u64, true).unwrap();
            let case = InequalityCase {
                id: InequalityId::Lin,
                instance,
                phi: MapSpec::TraceAverage { n },
                params: CaseParams::default(),
            };
            let full = check_case_with(&case, &CheckSettings::default()).unwrap();
            let deflated = CheckSettings { rhs_constant_scale: 0.95, ..CheckSettings::default() };
            let v = check_case_with(&case, &deflated).unwrap();
            held_at_full += usize::from(full.holds);
            failed_deflated += usize::from(!v.holds);
            total += 1;
        }
    }
    outcome(
        failed_deflated >= 1 && held_at_full == total,
        format!("{failed_deflated}/{total} scalar endpoint cases fail with K(h) deflated by 5%; {held_at_full}/{total} hold at full constant"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_opineq"))
            .args(["selftest", "--seed", "42", "--threads", threads, "--out"])
            .arg(&path)
            .output()
            .expect("binary runs")
            .status;
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (c1, first) = run("1", "a.json");
    let (c2, second) = run("1", "b.json");
    let (c3, parallel) = run("4", "c.json");
    let pass = !first.is_empty() && first == second && first == parallel && c1 == c2 && c2 == c3;
    outcome(
        pass,
        format!(
            "report of {} bytes; repeat identical: {}; 1 vs 4 threads identical: {}; exit codes {:?}",
            first.len(),
            first == second,
            first == parallel,
            [c1, c2, c3]
        ),
    )
}

fn frobenius_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn linalg_accuracy() -> Outcome {
    let mut worst_recon: f64 = 0.0;
    let mut worst_sqrt: f64 = 0.0;
    for i in 0..1000u64 {
        let n = 1 + (i as usize % 32);
        let a = random_hermitian(n, i);
        let d = eigh(&a);
        let q = &d.eigenvectors;
        let lambda = CMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(d.eigenvalues[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let recon = q.matmul(&lambda).unwrap().matmul(&q.adjoint()).unwrap();
        worst_recon = worst_recon.max(frobenius_diff(&recon, a.as_matrix()) / a.frobenius_norm());

        let p: HermitianMatrix = random_psd(n, 10_000 + i);
        let root = matrix_power(&p, 0.5).unwrap();
        let square = root.as_matrix().matmul(root.as_matrix()).unwrap();
        worst_sqrt = worst_sqrt.max(frobenius_diff(&square, p.as_matrix()) / p.frobenius_norm());
    }
    outcome(
        worst_recon <= 1e-10 && worst_sqrt <= 1e-9,
        format!("1000 matrices, n <= 32: max reconstruction error {worst_recon:.2e}, max sqrt round-trip error {worst_sqrt:.2e}"),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("full-registry soundness", full_registry_soundness),
        ("scalar lemma oracle", scalar_lemma_oracle),
        ("generalized Kantorovich oracle", generalized_kantorovich_oracle),
        ("constant-refinement sweep", constant_refinement_sweep),
        ("norm refinement", norm_refinement),
        ("mutation sensitivity", mutation_sensitivity),
        ("determinism", determinism),
        ("linalg accuracy", linalg_accuracy),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        emit(&format!("{} criterion {} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail));
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
