//! The acceptance suite: every claim the library is built around, run at
//! desk scale with pinned tolerances. Each criterion returns a pass/fail
//! result with a one-line detail string; `run_all` executes all twelve.
//!
//! The theory being exercised consists of theorems, not experiments, so the
//! checks are exact small-scale reproductions (ray counts, candidate
//! eigenvalues, stratum permutations) plus property-style sweeps with
//! numerical oracles (finite differences, Moreau identities, search floors).

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::time::Instant;

use crate::autgroup;
use crate::autgroup::{
    is_structural_automorphism, random_automorphism, sampling_oracle_automorphism,
    HomogeneityVerdict, LinearMap, OracleOutcome,
};
use crate::cone::{ConePoint, ConeSpec};
use crate::duality::{
    certify_iso, four_candidates_check, iso_search, selfdual_search, violation, CertifyOutcome,
    SearchVerdict,
};
use crate::manifold::{
    boundary_map, gauss_normal, graph_normal_closed_form, locus_membership, tangent_basis,
    GraphChart, LOCUS_TOL,
};
use crate::numdiff;
use crate::pnorm::{self, Exponent};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:02} {} {} ({:.2} s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.details
        )
    }
}

/// Options for a verification run. `tol_override` replaces the measurement
/// tolerances of the metric criteria (2, 5, 7, 8); setting it to something
/// unattainable like 1e-30 is the negative control that proves the suite
/// can fail.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol_override: Option<f64>,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        VerifyConfig {
            seed,
            tol_override: None,
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol_override.unwrap_or(default)
    }
}

/// Search configuration pinned for the acceptance runs (the CLI defaults).
pub const ACCEPT_SAMPLES: usize = 1000;
pub const ACCEPT_RESTARTS: usize = 50;
pub const ACCEPT_BUDGET: usize = 20000;
/// The found-isomorphism search for the polyhedral coincidence gets a larger
/// budget: it must actually locate the witness, not just report a floor.
pub const ISO_FOUND_RESTARTS: usize = 60;
pub const ISO_FOUND_BUDGET: usize = 120000;

/// Frozen regression floors for the self-duality searches, calibrated once
/// with 50-restart runs over seeds {42, 7, 123} and set to half the minimum
/// observed best violation. Every floor exceeds 1e-7 by orders of magnitude.
const SELFDUAL_FLOORS: [(Exponent, usize, f64); 8] = [
    (Exponent::Finite(1.0), 2, 1.5e-2),
    (Exponent::Finite(1.0), 3, 1.4e-2),
    (Exponent::Finite(1.5), 2, 1.1e-2),
    (Exponent::Finite(1.5), 3, 2.7e-2),
    (Exponent::Finite(3.0), 2, 1.2e-2),
    (Exponent::Finite(3.0), 3, 2.1e-2),
    (Exponent::Infinity, 2, 4.0e-3),
    (Exponent::Infinity, 3, 7.5e-2),
];

fn selfdual_regression_floor(p: Exponent, n: usize) -> f64 {
    SELFDUAL_FLOORS
        .iter()
        .find(|(fp, fn_, _)| *fp == p && *fn_ == n)
        .map(|(_, _, floor)| *floor)
        .unwrap_or_else(|| panic!("no frozen floor for p={p}, n={n}"))
}

fn mix(seed: u64, k: u64) -> u64 {
    seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn p_grid() -> [Exponent; 4] {
    [
        Exponent::Finite(1.0),
        Exponent::Finite(1.5),
        Exponent::Finite(3.0),
        Exponent::Infinity,
    ]
}

fn spec(e: Exponent, dim: usize) -> ConeSpec {
    ConeSpec::new(e, dim).expect("grid dimensions are valid")
}

fn run(
    id: usize,
    name: &'static str,
    max_seconds: f64,
    body: impl FnOnce() -> (bool, String),
) -> CriterionResult {
    let t0 = Instant::now();
    let (ok, details) = body();
    let seconds = t0.elapsed().as_secs_f64();
    let within_time = seconds < max_seconds;
    let details = if within_time {
        details
    } else {
        format!("{details}; exceeded runtime bound {max_seconds} s")
    };
    CriterionResult {
        id,
        name,
        passed: ok && within_time,
        details,
        seconds,
    }
}

/// 1. Exact extreme-ray counts: `2n` for `K_1^{n+1}`, `2^n` for
///    `K_inf^{n+1}`, n in {2,3,4,5}.
pub fn criterion_extreme_ray_counts(_cfg: &VerifyConfig) -> CriterionResult {
    run(1, "extreme-ray-counts", 1.0, || {
        let mut details = Vec::new();
        for n in [2usize, 3, 4, 5] {
            let k1 = spec(Exponent::Finite(1.0), n + 1).extreme_rays().unwrap();
            let kinf = spec(Exponent::Infinity, n + 1).extreme_rays().unwrap();
            if k1.len() != 2 * n || kinf.len() != (1 << n) {
                return (
                    false,
                    format!("n={n}: got {} and {} rays", k1.len(), kinf.len()),
                );
            }
            details.push(format!("n={n}: {}+{}", k1.len(), kinf.len()));
        }
        (true, details.join(", "))
    })
}

/// 2. The explicit matrix `B` is an exact polyhedral isomorphism
///    `K_1^3 -> K_inf^3` with sampled violation 0 within 1e-12.
pub fn criterion_explicit_isomorphism(cfg: &VerifyConfig) -> CriterionResult {
    run(2, "explicit-isomorphism", 1.0, || {
        let b = autgroup::k1_to_kinf_3d();
        let from = spec(Exponent::Finite(1.0), 3);
        let to = spec(Exponent::Infinity, 3);
        let cert = certify_iso(&b, &from, &to).unwrap();
        if cert != CertifyOutcome::ExactPolyhedral {
            return (false, format!("certify returned {cert:?}"));
        }
        let v = violation(&b, &from, &to, ACCEPT_SAMPLES, cfg.seed).unwrap();
        let band = cfg.tol(1e-12);
        (v <= band, format!("ExactPolyhedral, violation {v:.3e}"))
    })
}

/// 3. All four symmetric candidate matrices have minimum eigenvalue
///    <= -1.414 + 1e-6 (analytically -sqrt(2)).
pub fn criterion_four_candidates(_cfg: &VerifyConfig) -> CriterionResult {
    run(3, "four-candidates", 1.0, || {
        let out = four_candidates_check();
        let worst = out
            .iter()
            .map(|(_, min)| *min)
            .fold(f64::NEG_INFINITY, f64::max);
        (
            out.len() == 4 && worst <= -1.414 + 1e-6,
            format!("largest minimum eigenvalue {worst:.6}"),
        )
    })
}

/// 4. Soundness and agreement: 1000 structured automorphisms are never
///    refuted (10 seeds x 1000 samples each); 200 dense Gaussian maps that
///    fail the structural test are refuted every time.
pub fn criterion_oracle_agreement(cfg: &VerifyConfig) -> CriterionResult {
    run(4, "automorphism-oracle-agreement", 60.0, || {
        let grid: Vec<(Exponent, usize)> = p_grid()
            .iter()
            .flat_map(|&p| [2usize, 3, 4].map(|n| (p, n)))
            .collect();

        for k in 0..1000usize {
            let (p, n) = grid[k % grid.len()];
            let s = spec(p, n + 1);
            let auto = random_automorphism(&s, mix(cfg.seed, k as u64));
            let map = auto.to_linear_map();
            for oracle_seed in 0..10u64 {
                match sampling_oracle_automorphism(&map, &s, 1000, cfg.seed + oracle_seed, 1e-9)
                    .unwrap()
                {
                    OracleOutcome::Plausible => {}
                    OracleOutcome::RefutedAt(z) => {
                        return (
                            false,
                            format!("automorphism #{k} on {s} falsely refuted at {z:?}"),
                        )
                    }
                }
            }
        }

        let mut refuted = 0usize;
        let mut trials = 0usize;
        let mut draw = 0u64;
        while trials < 200 {
            let (p, n) = grid[trials % grid.len()];
            let s = spec(p, n + 1);
            let d = n + 1;
            let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, 50_000 + draw));
            draw += 1;
            let m = DMatrix::from_fn(d, d, |_, _| {
                let g: f64 = StandardNormal.sample(&mut rng);
                g
            });
            let Ok(map) = LinearMap::new(m) else {
                continue; // singular draw, redraw
            };
            if is_structural_automorphism(&map, &s, 1e-9)
                .unwrap()
                .is_some()
            {
                continue; // an actual automorphism, not a counterexample candidate
            }
            trials += 1;
            match sampling_oracle_automorphism(&map, &s, 1000, cfg.seed + trials as u64, 1e-9)
                .unwrap()
            {
                OracleOutcome::RefutedAt(_) => refuted += 1,
                OracleOutcome::Plausible => {}
            }
        }
        (
            refuted == 200,
            format!("1000 automorphisms sound; {refuted}/200 non-members refuted"),
        )
    })
}

/// 5. Gradient and Hessian match central finite differences to relative
///    error < 1e-5 on 500 random points with coordinates bounded away from 0.
pub fn criterion_derivative_correctness(cfg: &VerifyConfig) -> CriterionResult {
    run(5, "derivative-correctness", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, 0xD5));
        let mut worst_g = 0.0_f64;
        let mut worst_h = 0.0_f64;
        for case in 0..500usize {
            let n = [2, 3, 4][case % 3];
            let p = rng.random_range(1.1..5.0);
            let e = Exponent::Finite(p);
            let x: Vec<f64> = (0..n)
                .map(|_| {
                    let m = rng.random_range(0.1..2.0);
                    if rng.random::<bool>() {
                        m
                    } else {
                        -m
                    }
                })
                .collect();
            let g = pnorm::gradient(&x, e).unwrap();
            let fd = numdiff::central_gradient(
                |v| pnorm::norm(v, e),
                &x,
                numdiff::default_gradient_step(&x),
            );
            let g_scale = g.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1e-12);
            let g_err = g
                .iter()
                .zip(&fd)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0_f64, f64::max)
                / g_scale;
            worst_g = worst_g.max(g_err);

            let h = pnorm::hessian(&x, e).unwrap();
            let fdh = numdiff::central_hessian(
                |v| pnorm::norm(v, e),
                &x,
                numdiff::default_hessian_step(&x),
            );
            let h_scale = h.amax().max(1e-12);
            let h_err = (&h - &fdh).amax() / h_scale;
            worst_h = worst_h.max(h_err);
        }
        let band = cfg.tol(1e-5);
        (
            worst_g < band && worst_h < band,
            format!("worst relative error: gradient {worst_g:.3e}, hessian {worst_h:.3e}"),
        )
    })
}

/// 6. The divergence probe recovers the `p - 2` blow-up exponent at points
///    with one zero coordinate for p in {1.2, 1.5, 1.8}, and quotients stay
///    bounded for p in {2, 3}.
pub fn criterion_divergence_slopes(cfg: &VerifyConfig) -> CriterionResult {
    run(6, "non-c2-locus-slopes", 5.0, || {
        let steps: Vec<f64> = (0..9).map(|k| 10f64.powf(-2.0 - 0.5 * k as f64)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, 0xC6));
        let mut worst_dev = 0.0_f64;
        for &p in &[1.2, 1.5, 1.8] {
            for trial in 0..10usize {
                let n = 2 + trial % 2;
                let mut x: Vec<f64> = (0..n)
                    .map(|_| {
                        let m = rng.random_range(0.5..1.5);
                        if rng.random::<bool>() {
                            m
                        } else {
                            -m
                        }
                    })
                    .collect();
                let i = rng.random_range(0..n);
                x[i] = 0.0;
                let pts =
                    pnorm::c2_divergence_probe(&x, Exponent::Finite(p), i, i, &steps).unwrap();
                let slope = pnorm::fit_loglog_slope(&pts).unwrap();
                let dev = (slope - (p - 2.0)).abs();
                worst_dev = worst_dev.max(dev);
                if dev > 0.05 {
                    return (
                        false,
                        format!("p={p}: slope {slope:.4} deviates from {:.1}", p - 2.0),
                    );
                }
            }
        }
        for &p in &[2.0, 3.0] {
            for trial in 0..10usize {
                let n = 2 + trial % 2;
                let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
                let i = rng.random_range(0..n);
                x[i] = 0.0;
                let pts =
                    pnorm::c2_divergence_probe(&x, Exponent::Finite(p), i, i, &steps).unwrap();
                let max_q = pts.iter().map(|(_, q)| q.abs()).fold(0.0_f64, f64::max);
                let slope = pnorm::fit_loglog_slope(&pts).unwrap();
                if max_q > 10.0 || slope < -0.02 {
                    return (
                        false,
                        format!("p={p}: quotients unbounded (max {max_q:.3}, slope {slope:.4})"),
                    );
                }
            }
        }
        (
            true,
            format!("slopes match p-2 within {worst_dev:.4}; controls bounded"),
        )
    })
}

/// 7. Moreau decomposition on the full (p, n) grid: reconstruction,
///    orthogonality, and both memberships within 1e-8.
pub fn criterion_moreau(cfg: &VerifyConfig) -> CriterionResult {
    run(7, "moreau-projection", 30.0, || {
        let mut checked = 0usize;
        for &p in &[
            Exponent::Finite(1.0),
            Exponent::Finite(1.5),
            Exponent::Finite(2.0),
            Exponent::Finite(3.0),
            Exponent::Infinity,
        ] {
            for n in [2usize, 3, 4] {
                let s = spec(p, n + 1);
                let dual = s.dual();
                let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, (n as u64) << 8));
                for _ in 0..1000 {
                    let t: f64 = {
                        let g: f64 = StandardNormal.sample(&mut rng);
                        2.5 * g
                    };
                    let x: Vec<f64> = (0..n)
                        .map(|_| {
                            let g: f64 = StandardNormal.sample(&mut rng);
                            2.5 * g
                        })
                        .collect();
                    let z = ConePoint::new(t, x);
                    let m = match s.project(&z, 1e-12) {
                        Ok(m) => m,
                        Err(e) => return (false, format!("{s}: projection failed: {e}")),
                    };
                    let znorm = z.euclidean_norm();
                    let recon = (m.pk.t + m.pkstar_neg.t - z.t).abs().max(
                        (0..n)
                            .map(|i| (m.pk.x[i] + m.pkstar_neg.x[i] - z.x[i]).abs())
                            .fold(0.0_f64, f64::max),
                    );
                    let ortho = m.pk.dot(&m.pkstar_neg).abs();
                    let def_k = s.membership_defect(&m.pk).unwrap();
                    let neg = ConePoint::new(
                        -m.pkstar_neg.t,
                        m.pkstar_neg.x.iter().map(|v| -v).collect(),
                    );
                    let def_dual = dual.membership_defect(&neg).unwrap();
                    let band = cfg.tol(1e-8);
                    if recon > 1e-12 * (1.0 + znorm)
                        || ortho > band * (1.0 + znorm * znorm)
                        || def_k > band
                        || def_dual > band
                    {
                        return (
                            false,
                            format!(
                                "{s}: recon {recon:.2e} ortho {ortho:.2e} defects ({def_k:.2e}, {def_dual:.2e}) at {z:?}"
                            ),
                        );
                    }
                    checked += 1;
                }
            }
        }
        (true, format!("{checked} projections within tolerance"))
    })
}

/// 8. Gauss normals: orthogonal to every tangent basis vector within 1e-10
///    and equal to the closed-form graph normal, 500 random cases.
pub fn criterion_gauss_normals(cfg: &VerifyConfig) -> CriterionResult {
    run(8, "gauss-normals", 5.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, 0xC8));
        let mut worst_ortho = 0.0_f64;
        let mut worst_match = 0.0_f64;
        for _ in 0..500usize {
            let p = rng.random_range(1.1..5.0);
            let n = rng.random_range(2..5usize);
            let x: Vec<f64> = (0..n)
                .map(|_| {
                    let m = rng.random_range(0.1..2.0);
                    if rng.random::<bool>() {
                        m
                    } else {
                        -m
                    }
                })
                .collect();
            let chart = GraphChart::new(Exponent::Finite(p), n).unwrap();
            let normal = gauss_normal(&chart, &x).unwrap();
            let basis = tangent_basis(&chart, &x).unwrap();
            for v in &basis.vectors {
                worst_ortho = worst_ortho.max(normal.dot(v).abs());
            }
            let closed = graph_normal_closed_form(&chart, &x).unwrap();
            worst_match = worst_match.max((&normal - &closed).amax());
        }
        let band = cfg.tol(1e-10);
        (
            worst_ortho <= band && worst_match <= band,
            format!("worst orthogonality {worst_ortho:.3e}, closed-form gap {worst_match:.3e}"),
        )
    })
}

/// 9. Self-duality search: `K_2` reaches violation < 1e-9 within 10
///    restarts; every `p != 2` case stays above its frozen regression floor
///    and reports `NoIsoFound`.
pub fn criterion_selfdual_search(cfg: &VerifyConfig) -> CriterionResult {
    run(9, "selfdual-search", 600.0, || {
        let mut details = Vec::new();
        for n in [2usize, 3] {
            let s = spec(Exponent::Finite(2.0), n + 1);
            let report = selfdual_search(&s, 10, ACCEPT_SAMPLES, cfg.seed, ACCEPT_BUDGET).unwrap();
            if report.verdict != SearchVerdict::FoundIso || report.best_violation >= 1e-9 {
                return (
                    false,
                    format!(
                        "{s}: expected FoundIso < 1e-9, got {:?} at {:.3e}",
                        report.verdict, report.best_violation
                    ),
                );
            }
            details.push(format!("K_2^{}: {:.1e}", n + 1, report.best_violation));
        }
        for &p in &p_grid() {
            for n in [2usize, 3] {
                let s = spec(p, n + 1);
                let report =
                    selfdual_search(&s, ACCEPT_RESTARTS, ACCEPT_SAMPLES, cfg.seed, ACCEPT_BUDGET)
                        .unwrap();
                let floor = selfdual_regression_floor(p, n);
                if floor <= 1e-7 {
                    return (false, format!("{s}: frozen floor {floor:.1e} too small"));
                }
                if report.verdict != SearchVerdict::NoIsoFound || report.best_violation <= floor {
                    return (
                        false,
                        format!(
                            "{s}: expected NoIsoFound above {floor:.1e}, got {:?} at {:.3e}",
                            report.verdict, report.best_violation
                        ),
                    );
                }
                details.push(format!("{s}: {:.1e}", report.best_violation));
            }
        }
        (true, details.join(", "))
    })
}

/// 10. Isomorphism search: found for `(1, inf, 2)` below 1e-6; not found
///     for `(1.5, 3, 2)`, `(1.5, 3, 3)`, `(1, inf, 3)`.
pub fn criterion_iso_search(cfg: &VerifyConfig) -> CriterionResult {
    run(10, "isomorphism-search", 600.0, || {
        let k1 = spec(Exponent::Finite(1.0), 3);
        let kinf = spec(Exponent::Infinity, 3);
        let report = iso_search(
            &k1,
            &kinf,
            ISO_FOUND_RESTARTS,
            ACCEPT_SAMPLES,
            cfg.seed,
            ISO_FOUND_BUDGET,
        )
        .unwrap();
        if report.verdict != SearchVerdict::FoundIso || report.best_violation >= 1e-6 {
            return (
                false,
                format!(
                    "K_1^3 -> K_inf^3: expected FoundIso < 1e-6, got {:?} at {:.3e}",
                    report.verdict, report.best_violation
                ),
            );
        }
        let mut details = vec![format!("(1,inf,2) found at {:.1e}", report.best_violation)];
        let no_iso_cases = [
            (Exponent::Finite(1.5), Exponent::Finite(3.0), 2usize),
            (Exponent::Finite(1.5), Exponent::Finite(3.0), 3),
            (Exponent::Finite(1.0), Exponent::Infinity, 3),
        ];
        for (p, q, n) in no_iso_cases {
            let from = spec(p, n + 1);
            let to = spec(q, n + 1);
            let report = iso_search(
                &from,
                &to,
                ACCEPT_RESTARTS,
                ACCEPT_SAMPLES,
                cfg.seed,
                ACCEPT_BUDGET,
            )
            .unwrap();
            if report.verdict != SearchVerdict::NoIsoFound {
                return (
                    false,
                    format!(
                        "{from} -> {to}: expected NoIsoFound, got {:?} at {:.3e}",
                        report.verdict, report.best_violation
                    ),
                );
            }
            details.push(format!("({p},{q},{n}) floor {:.1e}", report.best_violation));
        }
        (true, details.join(", "))
    })
}

/// 11. Homogeneity breakdown: off-axis interior targets are unreachable
///     from the main-axis base point; main-axis targets are reachable.
///     Exact.
pub fn criterion_homogeneity(_cfg: &VerifyConfig) -> CriterionResult {
    run(11, "homogeneity-breakdown", 1.0, || {
        for &p in &p_grid() {
            for n in [2usize, 3] {
                let s = spec(p, n + 1);
                let mut off_axis = vec![0.0; n];
                off_axis[0] = 1.0;
                match autgroup::homogeneity_probe(&s, &ConePoint::new(2.0, off_axis), 1e-9).unwrap()
                {
                    HomogeneityVerdict::Unreachable => {}
                    HomogeneityVerdict::Reachable(_) => {
                        return (false, format!("{s}: off-axis target reported reachable"))
                    }
                }
                match autgroup::homogeneity_probe(&s, &ConePoint::new(2.0, vec![0.0; n]), 1e-9)
                    .unwrap()
                {
                    HomogeneityVerdict::Reachable(a) => {
                        if a.alpha != 2.0 {
                            return (false, format!("{s}: wrong scaling {}", a.alpha));
                        }
                    }
                    HomogeneityVerdict::Unreachable => {
                        return (false, format!("{s}: main-axis target unreachable"))
                    }
                }
            }
        }
        (
            true,
            "all off-axis targets unreachable, main axis reachable".into(),
        )
    })
}

/// 12. Stratum permutation: the boundary map of a structured automorphism
///     carries locus stratum `X_i` exactly onto `X_{tau(i)}`.
pub fn criterion_stratum_permutation(cfg: &VerifyConfig) -> CriterionResult {
    run(12, "stratum-permutation", 5.0, || {
        let chart = GraphChart::new(Exponent::Finite(1.5), 3).unwrap();
        let s = spec(Exponent::Finite(1.5), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, 0xC12));
        for k in 0..100usize {
            let auto = random_automorphism(&s, mix(cfg.seed, 12_000 + k as u64));
            let map = auto.to_linear_map();
            let tau = auto.gp.inverse();
            for i in 0..3usize {
                for _ in 0..3 {
                    let mut x: Vec<f64> = (0..3)
                        .map(|_| {
                            let m = rng.random_range(0.5..1.5);
                            if rng.random::<bool>() {
                                m
                            } else {
                                -m
                            }
                        })
                        .collect();
                    x[i] = 0.0;
                    let image = match boundary_map(&map, &chart, &chart, &x) {
                        Ok(y) => y,
                        Err(e) => return (false, format!("boundary map failed: {e}")),
                    };
                    let strata = locus_membership(&image, LOCUS_TOL).unwrap();
                    if strata != vec![tau.perm()[i]] {
                        return (
                            false,
                            format!(
                                "automorphism #{k}: stratum {i} mapped to {strata:?}, expected {:?}",
                                tau.perm()[i]
                            ),
                        );
                    }
                }
            }
        }
        (true, "100 automorphisms permute strata exactly".into())
    })
}

/// A criterion entry: id, name, and the function that runs it.
pub type Criterion = (usize, &'static str, fn(&VerifyConfig) -> CriterionResult);

/// All criteria in order.
pub fn all_criteria() -> Vec<Criterion> {
    vec![
        (
            1,
            "extreme-ray-counts",
            criterion_extreme_ray_counts as fn(&VerifyConfig) -> CriterionResult,
        ),
        (2, "explicit-isomorphism", criterion_explicit_isomorphism),
        (3, "four-candidates", criterion_four_candidates),
        (
            4,
            "automorphism-oracle-agreement",
            criterion_oracle_agreement,
        ),
        (
            5,
            "derivative-correctness",
            criterion_derivative_correctness,
        ),
        (6, "non-c2-locus-slopes", criterion_divergence_slopes),
        (7, "moreau-projection", criterion_moreau),
        (8, "gauss-normals", criterion_gauss_normals),
        (9, "selfdual-search", criterion_selfdual_search),
        (10, "isomorphism-search", criterion_iso_search),
        (11, "homogeneity-breakdown", criterion_homogeneity),
        (12, "stratum-permutation", criterion_stratum_permutation),
    ]
}

/// Run the full suite in order with default options.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    run_all_with(&VerifyConfig::new(seed))
}

/// Run the full suite with explicit options.
pub fn run_all_with(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    all_criteria().into_iter().map(|(_, _, f)| f(cfg)).collect()
}
