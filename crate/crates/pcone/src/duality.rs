//! Self-duality and isomorphism search.
//!
//! `K_p` is self-dual under some inner product iff a symmetric positive
//! definite `A` maps it onto its Euclidean dual `K_q`; more generally
//! `A K_p = K_q` forces `p = q` except for the single polyhedral coincidence
//! in dimension three. Neither direction of those theorems is provable
//! numerically, so this module plays the falsificationist: a violation
//! metric over frozen boundary nets measures how far a candidate map is from
//! being an isomorphism, and a multi-start derivative-free search either
//! finds a map with negligible violation (`FoundIso`) or reports the floor
//! it could not get under (`NoIsoFound`, evidence aligned with the theory).
//!
//! For polyhedral pairs the extreme-ray bijection check upgrades the
//! numerical verdict to an exact one.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::autgroup::{random_automorphism, LinearMap};
use crate::cone::ConeSpec;
use crate::error::{Error, Result};
use crate::optim::{multistart_minimize, Restart};
use crate::pnorm;

/// Violation below this is accepted as a found self-duality witness.
pub const SELFDUAL_ACCEPT_THRESHOLD: f64 = 1e-9;
/// Violation below this is accepted as a found isomorphism.
pub const ISO_ACCEPT_THRESHOLD: f64 = 1e-6;

/// How per-sample defects are aggregated into one violation number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Aggregation {
    /// Worst defect (adversarial, the default).
    Max,
    /// Average defect (smoother search landscape).
    Mean,
}

/// Boundary sample nets, frozen per seed before a search begins so the
/// objective is a fixed finite function and runs are reproducible.
///
/// The `from` net uses `seed`, the `to` net `seed + 1`.
pub struct FrozenNets {
    from: ConeSpec,
    to: ConeSpec,
    from_pts: Vec<DVector<f64>>,
    to_pts: Vec<DVector<f64>>,
}

impl FrozenNets {
    pub fn new(from: ConeSpec, to: ConeSpec, samples: usize, seed: u64) -> Result<Self> {
        if from.ambient_dim != to.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: from.ambient_dim,
                actual: to.ambient_dim,
            });
        }
        if samples == 0 {
            return Err(Error::PreconditionViolated("samples must be >= 1".into()));
        }
        let from_pts = from
            .sample_boundary(samples, seed)
            .iter()
            .map(|z| z.to_ambient())
            .collect();
        let to_pts = to
            .sample_boundary(samples, seed.wrapping_add(1))
            .iter()
            .map(|z| z.to_ambient())
            .collect();
        Ok(FrozenNets {
            from,
            to,
            from_pts,
            to_pts,
        })
    }

    pub fn samples(&self) -> usize {
        self.from_pts.len()
    }

    /// Normalized one-sided defect of an ambient point against a cone:
    /// `max(0, ||u||_p - t) / (1 + ||(t,u)||_2)`.
    fn defect(spec: &ConeSpec, w: &DVector<f64>) -> f64 {
        let tail = &w.as_slice()[1..];
        let d = (pnorm::norm(tail, spec.exponent) - w[0]).max(0.0);
        d / (1.0 + w.norm())
    }

    /// Violation of a candidate matrix with explicit inverse: aggregated
    /// forward defects (images of the `from` net against `to`) plus
    /// aggregated inverse defects (preimages of the `to` net against
    /// `from`). Including both directions keeps near-singular maps from
    /// hiding the cone inside the target.
    pub fn violation_of_matrices(
        &self,
        a: &DMatrix<f64>,
        a_inv: &DMatrix<f64>,
        aggregation: Aggregation,
    ) -> f64 {
        let forward = aggregate(
            self.from_pts
                .iter()
                .map(|z| Self::defect(&self.to, &(a * z))),
            self.from_pts.len(),
            aggregation,
        );
        let inverse = aggregate(
            self.to_pts
                .iter()
                .map(|w| Self::defect(&self.from, &(a_inv * w))),
            self.to_pts.len(),
            aggregation,
        );
        forward + inverse
    }

    pub fn violation_of(&self, a: &LinearMap, aggregation: Aggregation) -> f64 {
        self.violation_of_matrices(a.matrix(), a.inverse_matrix(), aggregation)
    }
}

fn aggregate(defects: impl Iterator<Item = f64>, count: usize, aggregation: Aggregation) -> f64 {
    match aggregation {
        Aggregation::Max => defects.fold(0.0, f64::max),
        Aggregation::Mean => defects.sum::<f64>() / count as f64,
    }
}

/// Max-aggregated violation of `A` as a candidate isomorphism
/// `A K_from = K_to`, over fresh nets of the given size and seed. Zero (up
/// to rounding) exactly when `A` maps both boundaries onto each other.
pub fn violation(
    a: &LinearMap,
    from: &ConeSpec,
    to: &ConeSpec,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if a.dim() != from.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: from.ambient_dim,
            actual: a.dim(),
        });
    }
    let nets = FrozenNets::new(*from, *to, samples, seed)?;
    Ok(nets.violation_of(a, Aggregation::Max))
}

/// A symmetric positive definite matrix parameterized by its Cholesky
/// factor, with the diagonal stored as logarithms: `A = L L^T` is PD for
/// every parameter vector, so unconstrained optimizers can roam freely.
#[derive(Debug, Clone, PartialEq)]
pub struct PDFactor {
    dim: usize,
    params: Vec<f64>,
}

impl PDFactor {
    /// Number of free parameters for a `dim x dim` factor.
    pub fn param_count(dim: usize) -> usize {
        dim * (dim + 1) / 2
    }

    pub fn from_params(dim: usize, params: &[f64]) -> Result<Self> {
        if params.len() != Self::param_count(dim) {
            return Err(Error::DimensionMismatch {
                expected: Self::param_count(dim),
                actual: params.len(),
            });
        }
        Ok(PDFactor {
            dim,
            params: params.to_vec(),
        })
    }

    /// The identity factor (all parameters zero).
    pub fn identity(dim: usize) -> Self {
        PDFactor {
            dim,
            params: vec![0.0; Self::param_count(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// The lower-triangular factor; diagonal entries are `exp` of their
    /// parameters (clamped so the matrix stays invertible in floats).
    pub fn lower_triangular(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.dim, self.dim);
        let mut k = 0;
        for i in 0..self.dim {
            for j in 0..=i {
                l[(i, j)] = if i == j {
                    self.params[k].clamp(-30.0, 30.0).exp()
                } else {
                    self.params[k]
                };
                k += 1;
            }
        }
        l
    }

    /// The symmetric positive definite matrix `L L^T`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let l = self.lower_triangular();
        &l * l.transpose()
    }
}

/// Search verdict; `FoundIso` iff the best violation is at or below the
/// configured acceptance threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchVerdict {
    FoundIso,
    NoIsoFound,
}

/// Outcome of a self-duality or isomorphism search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsoSearchReport {
    pub best_map: LinearMap,
    pub best_violation: f64,
    pub restarts: usize,
    pub samples_per_eval: usize,
    /// The frozen sample seed the nets were drawn with.
    pub seed: u64,
    pub verdict: SearchVerdict,
    pub accept_threshold: f64,
    pub budget: usize,
    pub evals_used: usize,
}

/// Knobs shared by both searches.
#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub samples: usize,
    pub seed: u64,
    pub budget: usize,
    pub accept_threshold: f64,
    pub aggregation: Aggregation,
}

impl SearchConfig {
    pub fn selfdual(restarts: usize, samples: usize, seed: u64, budget: usize) -> Self {
        SearchConfig {
            restarts,
            samples,
            seed,
            budget,
            accept_threshold: SELFDUAL_ACCEPT_THRESHOLD,
            aggregation: Aggregation::Max,
        }
    }

    pub fn iso(restarts: usize, samples: usize, seed: u64, budget: usize) -> Self {
        SearchConfig {
            restarts,
            samples,
            seed,
            budget,
            accept_threshold: ISO_ACCEPT_THRESHOLD,
            aggregation: Aggregation::Max,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::PreconditionViolated("restarts must be >= 1".into()));
        }
        if self.samples == 0 {
            return Err(Error::PreconditionViolated("samples must be >= 1".into()));
        }
        Ok(())
    }
}

/// Rescale a candidate map so `||A||_F = ||A^-1||_F`.
///
/// Cone images are scale-invariant (`A K = K'` iff `c A K = K'` for
/// `c > 0`) but the per-point defect normalization is not: inflating the
/// global scale of `A` shrinks every preimage toward the origin, where the
/// `1/(1 + ||z||_2)` factor reads the defect as absolute and lets it vanish.
/// The searches therefore optimize over the scale-balanced representative,
/// for which hiding a defect on one side blows it up on the other.
fn scale_balanced(a: DMatrix<f64>, a_inv: DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let s = (a.norm() / a_inv.norm()).sqrt();
    if !s.is_finite() || s == 0.0 || s == 1.0 {
        return (a, a_inv);
    }
    (a / s, a_inv * s)
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    // distinct deterministic stream per restart
    ChaCha8Rng::seed_from_u64(seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn gaussian_vec(rng: &mut ChaCha8Rng, len: usize, sigma: f64) -> Vec<f64> {
    (0..len)
        .map(|_| {
            let g: f64 = StandardNormal.sample(rng);
            g * sigma
        })
        .collect()
}

/// Search for a positive definite isomorphism `A K_p = K_q` witnessing
/// self-duality of `K_p` under some inner product.
///
/// Multi-start Nelder–Mead over the Cholesky-factor parameterization; the
/// first restart starts at the exact identity (the known witness for
/// `p = 2`), the rest at Gaussian perturbations of it. Budget exhaustion
/// returns the best map found so far.
pub fn selfdual_search(
    spec: &ConeSpec,
    restarts: usize,
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<IsoSearchReport> {
    selfdual_search_with(
        spec,
        &SearchConfig::selfdual(restarts, samples, seed, budget),
    )
}

pub fn selfdual_search_with(spec: &ConeSpec, config: &SearchConfig) -> Result<IsoSearchReport> {
    config.validate()?;
    let dual = spec.dual();
    let nets = FrozenNets::new(*spec, dual, config.samples, config.seed)?;
    let d = spec.ambient_dim;
    let m = PDFactor::param_count(d);

    let aggregation = config.aggregation;
    let objective = move |params: &[f64]| -> f64 {
        let factor = match PDFactor::from_params(d, params) {
            Ok(f) => f,
            Err(_) => return f64::INFINITY,
        };
        let a = factor.matrix();
        let Some(a_inv) = a.clone().try_inverse() else {
            return f64::INFINITY;
        };
        let (a, a_inv) = scale_balanced(a, a_inv);
        nets.violation_of_matrices(&a, &a_inv, aggregation)
    };

    let mut starts = Vec::with_capacity(config.restarts);
    starts.push(Restart {
        start: vec![0.0; m],
        initial_step: 0.1,
    });
    for k in 1..config.restarts {
        let mut rng = restart_rng(config.seed, k);
        let sigma = [0.05, 0.2, 0.5][k % 3];
        starts.push(Restart {
            start: gaussian_vec(&mut rng, m, sigma),
            initial_step: sigma.max(0.05),
        });
    }

    // stop two decades under the acceptance threshold so found witnesses
    // report with clear margin
    let res = multistart_minimize(
        objective,
        &starts,
        config.budget,
        config.accept_threshold / 100.0,
    );
    let factor = PDFactor::from_params(d, &res.x)?;
    let a = factor.matrix();
    let a_inv = a.clone().try_inverse().ok_or(Error::Singular)?;
    let (a, _) = scale_balanced(a, a_inv);
    let best_map = LinearMap::new(a)?;
    Ok(IsoSearchReport {
        best_map,
        best_violation: res.value,
        restarts: config.restarts,
        samples_per_eval: config.samples,
        seed: config.seed,
        verdict: if res.value <= config.accept_threshold {
            SearchVerdict::FoundIso
        } else {
            SearchVerdict::NoIsoFound
        },
        accept_threshold: config.accept_threshold,
        budget: config.budget,
        evals_used: res.evals,
    })
}

fn iso_matrix_from_params(d: usize, params: &[f64]) -> DMatrix<f64> {
    let scale = params[0].clamp(-8.0, 8.0).exp();
    DMatrix::from_fn(d, d, |i, j| scale * params[1 + i * d + j])
}

/// Search for any invertible isomorphism `A K_from = K_to`.
///
/// Same engine as [`selfdual_search`] over an exp-scaled dense matrix with a
/// determinant guard; restarts perturb the identity and random structured
/// automorphisms. The first restart evaluates the exact identity, which is
/// already optimal when `from == to`.
pub fn iso_search(
    from: &ConeSpec,
    to: &ConeSpec,
    restarts: usize,
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<IsoSearchReport> {
    iso_search_with(
        from,
        to,
        &SearchConfig::iso(restarts, samples, seed, budget),
    )
}

pub fn iso_search_with(
    from: &ConeSpec,
    to: &ConeSpec,
    config: &SearchConfig,
) -> Result<IsoSearchReport> {
    config.validate()?;
    if from.ambient_dim != to.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: from.ambient_dim,
            actual: to.ambient_dim,
        });
    }
    let nets = FrozenNets::new(*from, *to, config.samples, config.seed)?;
    let d = from.ambient_dim;
    let m = d * d + 1;

    let aggregation = config.aggregation;
    let objective = move |params: &[f64]| -> f64 {
        let a = iso_matrix_from_params(d, params);
        let frob = a.norm() / (d as f64).sqrt();
        if !frob.is_finite() || frob == 0.0 {
            return f64::INFINITY;
        }
        // determinant guard relative to the entry scale
        if a.determinant().abs() < 1e-10 * frob.powi(d as i32) {
            return f64::INFINITY;
        }
        let Some(a_inv) = a.clone().try_inverse() else {
            return f64::INFINITY;
        };
        let (a, a_inv) = scale_balanced(a, a_inv);
        nets.violation_of_matrices(&a, &a_inv, aggregation)
    };

    let identity_params = |m: usize| -> Vec<f64> {
        let mut p = vec![0.0; m];
        for i in 0..d {
            p[1 + i * d + i] = 1.0;
        }
        p
    };

    let mut starts = Vec::with_capacity(config.restarts);
    starts.push(Restart {
        start: identity_params(m),
        initial_step: 0.1,
    });
    for k in 1..config.restarts {
        let mut rng = restart_rng(config.seed, k);
        let sigma = [0.1, 0.3, 0.6][k % 3];
        let mut start = if k % 2 == 0 {
            // base at a random structured automorphism for diversity
            let auto = random_automorphism(from, config.seed ^ (k as u64));
            let mat = auto.to_matrix();
            let mut p = vec![0.0; m];
            for i in 0..d {
                for j in 0..d {
                    p[1 + i * d + j] = mat[(i, j)];
                }
            }
            p
        } else {
            identity_params(m)
        };
        for (v, g) in start.iter_mut().zip(gaussian_vec(&mut rng, m, sigma)) {
            *v += g;
        }
        starts.push(Restart {
            start,
            initial_step: sigma.max(0.05),
        });
    }

    let res = multistart_minimize(
        objective,
        &starts,
        config.budget,
        config.accept_threshold / 100.0,
    );
    let a = iso_matrix_from_params(d, &res.x);
    let a_inv = a.clone().try_inverse().ok_or(Error::Singular)?;
    let (a, _) = scale_balanced(a, a_inv);
    let best_map = LinearMap::new(a)?;
    Ok(IsoSearchReport {
        best_map,
        best_violation: res.value,
        restarts: config.restarts,
        samples_per_eval: config.samples,
        seed: config.seed,
        verdict: if res.value <= config.accept_threshold {
            SearchVerdict::FoundIso
        } else {
            SearchVerdict::NoIsoFound
        },
        accept_threshold: config.accept_threshold,
        budget: config.budget,
        evals_used: res.evals,
    })
}

/// The four symmetric candidates for a positive definite map
/// `A K_1^3 = K_inf^3` (scale factor 1), each returned with its minimum
/// eigenvalue. All four minimums are negative, which closes the last gap in
/// the three-dimensional self-duality argument.
pub fn four_candidates_check() -> Vec<(DMatrix<f64>, f64)> {
    let candidates = [
        [[1.0, 0.0, 0.0], [0.0, -1.0, -1.0], [0.0, -1.0, 1.0]],
        [[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [0.0, 1.0, -1.0]],
        [[1.0, 0.0, 0.0], [0.0, -1.0, 1.0], [0.0, 1.0, 1.0]],
        [[1.0, 0.0, 0.0], [0.0, 1.0, -1.0], [0.0, -1.0, -1.0]],
    ];
    candidates
        .iter()
        .map(|rows| {
            let m = DMatrix::from_fn(3, 3, |i, j| rows[i][j]);
            let eig = m.clone().symmetric_eigen();
            let min = eig
                .eigenvalues
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            (m, min)
        })
        .collect()
}

/// Outcome of [`certify_iso`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CertifyOutcome {
    /// Both cones are polyhedral and `A` maps the extreme-ray set of the
    /// source bijectively onto that of the target (up to positive scaling).
    ExactPolyhedral,
    /// Sampled violation; exact certification is not available.
    NumericalOnly(f64),
}

/// Default net size and seed used when [`certify_iso`] falls back to the
/// sampled violation.
pub const CERTIFY_SAMPLES: usize = 1000;
pub const CERTIFY_SEED: u64 = 42;

/// Certify `A K_from = K_to` exactly when both cones are polyhedral, by
/// matching extreme-ray sets; otherwise report the sampled violation.
pub fn certify_iso(a: &LinearMap, from: &ConeSpec, to: &ConeSpec) -> Result<CertifyOutcome> {
    if a.dim() != from.ambient_dim || from.ambient_dim != to.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: from.ambient_dim,
            actual: a.dim(),
        });
    }
    if let (Ok(rays_from), Ok(rays_to)) = (from.extreme_rays(), to.extreme_rays()) {
        if rays_from.len() == rays_to.len() && rays_biject(a, &rays_from, &rays_to)? {
            return Ok(CertifyOutcome::ExactPolyhedral);
        }
    }
    let v = violation(a, from, to, CERTIFY_SAMPLES, CERTIFY_SEED)?;
    Ok(CertifyOutcome::NumericalOnly(v))
}

fn rays_biject(
    a: &LinearMap,
    rays_from: &[crate::cone::Ray],
    rays_to: &[crate::cone::Ray],
) -> Result<bool> {
    let mut used = vec![false; rays_to.len()];
    for ray in rays_from {
        let w = a.apply(ray.direction())?;
        let nrm = w.euclidean_norm();
        if nrm < 1e-14 || w.t <= 0.0 {
            return Ok(false);
        }
        let scaled: Vec<f64> = std::iter::once(w.t / nrm)
            .chain(w.x.iter().map(|v| v / nrm))
            .collect();
        let mut matched = false;
        for (j, cand) in rays_to.iter().enumerate() {
            if used[j] {
                continue;
            }
            let dir = cand.direction();
            let dev = (scaled[0] - dir.t).abs().max(
                scaled[1..]
                    .iter()
                    .zip(&dir.x)
                    .map(|(u, v)| (u - v).abs())
                    .fold(0.0_f64, f64::max),
            );
            if dev <= 1e-10 {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(used.iter().all(|&u| u))
}
