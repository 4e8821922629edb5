//! The p-cone `K_p^{n+1} = {(t,x) in R x R^n | t >= ||x||_p}` as a
//! computational object: membership, dual cone, extreme rays, boundary
//! sampling, and Euclidean projection with the Moreau decomposition.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pnorm::{self, Exponent};

/// A p-cone identified by its exponent and ambient dimension `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeSpec {
    #[serde(rename = "p")]
    pub exponent: Exponent,
    #[serde(rename = "dim")]
    pub ambient_dim: usize,
}

#[derive(Deserialize)]
struct ConeSpecWire {
    p: Exponent,
    dim: usize,
}

impl<'de> Deserialize<'de> for ConeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ConeSpecWire::deserialize(d)?;
        ConeSpec::new(wire.p, wire.dim).map_err(serde::de::Error::custom)
    }
}

/// A point `(t, x)` of the ambient space. Membership in a cone is a
/// predicate, not a type invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePoint {
    pub t: f64,
    pub x: Vec<f64>,
}

/// Result of a membership query at a given tolerance band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// A normalized extreme-ray direction with `t > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ray {
    direction: ConePoint,
}

/// The Euclidean projection of a point onto `K_p` together with its Moreau
/// complement `z - pk`, which equals the projection onto `-K_q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MoreauDecomposition {
    pub pk: ConePoint,
    pub pkstar_neg: ConePoint,
}

impl ConeSpec {
    /// Build a cone spec; `ambient_dim` is `n + 1` and must be at least 2.
    pub fn new(exponent: Exponent, ambient_dim: usize) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::PreconditionViolated(format!(
                "ambient dimension must be >= 2, got {ambient_dim}"
            )));
        }
        Ok(ConeSpec {
            exponent,
            ambient_dim,
        })
    }

    /// Dimension `n` of the norm argument.
    pub fn n(&self) -> usize {
        self.ambient_dim - 1
    }

    /// The dual cone under the Euclidean inner product: same dimension,
    /// conjugate exponent.
    pub fn dual(&self) -> ConeSpec {
        ConeSpec {
            exponent: self.exponent.conjugate(),
            ambient_dim: self.ambient_dim,
        }
    }

    /// Scale-aware default membership tolerance `1e-9 * (1 + ||z||_2)`.
    pub fn default_tolerance(z: &ConePoint) -> f64 {
        1e-9 * (1.0 + z.euclidean_norm())
    }

    /// Classify `z` against the cone with a symmetric tolerance band around
    /// the boundary. The apex reports `Boundary`.
    pub fn contains(&self, z: &ConePoint, tol: f64) -> Result<Membership> {
        self.check_dim(z)?;
        if tol < 0.0 {
            return Err(Error::PreconditionViolated(
                "membership tolerance must be >= 0".into(),
            ));
        }
        let gap = z.t - pnorm::norm(&z.x, self.exponent);
        Ok(if gap > tol {
            Membership::Interior
        } else if gap >= -tol {
            Membership::Boundary
        } else {
            Membership::Outside
        })
    }

    /// Signed distance-like defect `max(0, ||x||_p - t)`, zero on the cone.
    pub fn membership_defect(&self, z: &ConePoint) -> Result<f64> {
        self.check_dim(z)?;
        Ok((pnorm::norm(&z.x, self.exponent) - z.t).max(0.0))
    }

    /// Enumerate the extreme rays of a polyhedral p-cone.
    ///
    /// `K_1^{n+1}` has the `2n` rays through `(1, sigma e_i)`; `K_inf^{n+1}`
    /// has the `2^n` rays through `(1, sigma_1, ..., sigma_n)`. Directions
    /// are normalized to Euclidean length 1 and ordered index-major with
    /// `+1` before `-1`, so output is reproducible byte for byte.
    pub fn extreme_rays(&self) -> Result<Vec<Ray>> {
        let n = self.n();
        match self.exponent {
            Exponent::Finite(p) if is_one(p) => {
                let mut rays = Vec::with_capacity(2 * n);
                let scale = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..n {
                    for sigma in [1.0, -1.0] {
                        let mut x = vec![0.0; n];
                        x[i] = sigma * scale;
                        rays.push(Ray {
                            direction: ConePoint { t: scale, x },
                        });
                    }
                }
                Ok(rays)
            }
            Exponent::Infinity => {
                if n >= usize::BITS as usize - 1 {
                    return Err(Error::PreconditionViolated(format!(
                        "2^{n} extreme rays is beyond enumeration range"
                    )));
                }
                let scale = 1.0 / ((n as f64) + 1.0).sqrt();
                let mut rays = Vec::with_capacity(1 << n);
                for mask in 0..(1_usize << n) {
                    let x: Vec<f64> = (0..n)
                        .map(|i| {
                            if (mask >> (n - 1 - i)) & 1 == 0 {
                                scale
                            } else {
                                -scale
                            }
                        })
                        .collect();
                    rays.push(Ray {
                        direction: ConePoint { t: scale, x },
                    });
                }
                Ok(rays)
            }
            _ => Err(Error::NotPolyhedral),
        }
    }

    /// Draw `count` boundary points `(||x||_p, x)` with `x` uniform on the
    /// Euclidean unit sphere (Gaussian direction, normalized). Deterministic
    /// per seed.
    pub fn sample_boundary(&self, count: usize, seed: u64) -> Vec<ConePoint> {
        self.sample_boundary_impl(count, seed, false)
    }

    /// Like [`sample_boundary`](Self::sample_boundary) but restricted to the
    /// smooth stratum: directions with any `|x_i| < 1e-12` are rejected and
    /// redrawn.
    pub fn sample_boundary_smooth(&self, count: usize, seed: u64) -> Vec<ConePoint> {
        self.sample_boundary_impl(count, seed, true)
    }

    fn sample_boundary_impl(&self, count: usize, seed: u64, smooth: bool) -> Vec<ConePoint> {
        let n = self.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let nrm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if nrm < 1e-6 {
                continue;
            }
            for v in &mut x {
                *v /= nrm;
            }
            if smooth && x.iter().any(|v| v.abs() < 1e-12) {
                continue;
            }
            let t = pnorm::norm(&x, self.exponent);
            out.push(ConePoint { t, x });
        }
        out
    }

    /// Euclidean projection onto the cone, returned together with the Moreau
    /// complement `pkstar_neg = z - pk` (the projection onto `-K_q`).
    ///
    /// Inside the cone and inside the polar cone the answer is immediate; in
    /// between, finite `p > 1` solves the scalar optimality condition on the
    /// Lagrange multiplier by safeguarded Newton/bisection, and `p` in
    /// `{1, inf}` uses the exact sorting-based piecewise-linear solve.
    pub fn project(&self, z: &ConePoint, tol: f64) -> Result<MoreauDecomposition> {
        self.check_dim(z)?;
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::PreconditionViolated(
                "projection tolerance must be > 0".into(),
            ));
        }
        // Already in the cone: the projection is the identity.
        if z.t >= pnorm::norm(&z.x, self.exponent) {
            return Ok(MoreauDecomposition {
                pk: ConePoint {
                    t: z.t,
                    x: z.x.clone(),
                },
                pkstar_neg: ConePoint {
                    t: 0.0,
                    x: vec![0.0; z.x.len()],
                },
            });
        }
        // In the polar cone -K_q: the projection is the apex.
        let q = self.exponent.conjugate();
        if -z.t >= pnorm::norm(&z.x, q) {
            return Ok(MoreauDecomposition {
                pk: ConePoint {
                    t: 0.0,
                    x: vec![0.0; z.x.len()],
                },
                pkstar_neg: ConePoint {
                    t: z.t,
                    x: z.x.clone(),
                },
            });
        }
        let pk = match self.exponent {
            Exponent::Infinity => project_onto_linf_cone(z),
            Exponent::Finite(p) => {
                if p == 1.0 {
                    project_onto_l1_cone(z)
                } else {
                    project_onto_smooth_cone(p, z, tol)?
                }
            }
        };
        let pkstar_neg = ConePoint {
            t: z.t - pk.t,
            x: z.x.iter().zip(&pk.x).map(|(a, b)| a - b).collect(),
        };
        Ok(MoreauDecomposition { pk, pkstar_neg })
    }

    fn check_dim(&self, z: &ConePoint) -> Result<()> {
        if z.x.len() + 1 != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: z.x.len() + 1,
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K_{}^{}", self.exponent, self.ambient_dim)
    }
}

impl ConePoint {
    pub fn new(t: f64, x: Vec<f64>) -> Self {
        ConePoint { t, x }
    }

    pub fn apex(n: usize) -> Self {
        ConePoint {
            t: 0.0,
            x: vec![0.0; n],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.x.len() + 1
    }

    pub fn euclidean_norm(&self) -> f64 {
        (self.t * self.t + self.x.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    pub fn dot(&self, other: &ConePoint) -> f64 {
        self.t * other.t + self.x.iter().zip(&other.x).map(|(a, b)| a * b).sum::<f64>()
    }

    /// Flatten to the ambient vector `(t, x_1, ..., x_n)`.
    pub fn to_ambient(&self) -> nalgebra::DVector<f64> {
        let mut v = nalgebra::DVector::zeros(self.x.len() + 1);
        v[0] = self.t;
        for (i, &xi) in self.x.iter().enumerate() {
            v[i + 1] = xi;
        }
        v
    }

    pub fn from_ambient(v: &nalgebra::DVector<f64>) -> Self {
        ConePoint {
            t: v[0],
            x: v.iter().skip(1).copied().collect(),
        }
    }
}

// Wire format: the flat array [t, x_1, ..., x_n].
impl Serialize for ConePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.x.len() + 1))?;
        seq.serialize_element(&self.t)?;
        for v in &self.x {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ConePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let flat = Vec::<f64>::deserialize(d)?;
        if flat.len() < 2 {
            return Err(serde::de::Error::custom(
                "cone point needs at least [t, x_1]",
            ));
        }
        Ok(ConePoint {
            t: flat[0],
            x: flat[1..].to_vec(),
        })
    }
}

impl Ray {
    /// Validate and wrap a direction: unit Euclidean norm, `t > 0`, and for
    /// polyhedral cones the extremality relation `t = ||x||_p`.
    pub fn new(spec: &ConeSpec, direction: ConePoint) -> Result<Ray> {
        if direction.t <= 0.0 {
            return Err(Error::PreconditionViolated(
                "ray direction must have t > 0".into(),
            ));
        }
        if (direction.euclidean_norm() - 1.0).abs() > 1e-12 {
            return Err(Error::PreconditionViolated(
                "ray direction must have Euclidean norm 1".into(),
            ));
        }
        match spec.exponent {
            Exponent::Infinity => check_extremality(&direction, spec.exponent)?,
            Exponent::Finite(p) => {
                if p == 1.0 {
                    check_extremality(&direction, spec.exponent)?;
                }
            }
        }
        Ok(Ray { direction })
    }

    pub fn direction(&self) -> &ConePoint {
        &self.direction
    }
}

fn check_extremality(direction: &ConePoint, e: Exponent) -> Result<()> {
    let defect = (direction.t - pnorm::norm(&direction.x, e)).abs();
    if defect > 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "extreme ray must satisfy t = ||x||_p, defect {defect:.3e}"
        )));
    }
    Ok(())
}

fn is_one(p: f64) -> bool {
    p == 1.0
}

/// Root of `sum_i max(mu_i - rho, 0) - rho + offset = 0` for `rho >= 0`,
/// where `mu` is sorted descending. The left side is continuous, piecewise
/// linear and strictly decreasing, so the root is unique and found exactly
/// by scanning the breakpoint intervals.
fn piecewise_linear_root(mu: &[f64], offset: f64) -> f64 {
    let n = mu.len();
    let mut prefix = 0.0;
    for k in 1..=n {
        prefix += mu[k - 1];
        let rho = (prefix + offset) / (k as f64 + 1.0);
        let hi = mu[k - 1];
        let lo = if k < n { mu[k] } else { 0.0 };
        if rho >= lo && rho <= hi {
            return rho;
        }
    }
    // Callers exclude the cone and polar-cone cases, so the scan above finds
    // the root; tolerate boundary rounding by clamping to the last interval.
    ((prefix + offset) / (n as f64 + 1.0)).max(0.0)
}

/// Exact projection onto `K_1`: soft-threshold the tail at the multiplier
/// solving the piecewise-linear optimality condition.
fn project_onto_l1_cone(z: &ConePoint) -> ConePoint {
    let mut mu: Vec<f64> = z.x.iter().map(|v| v.abs()).collect();
    mu.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let lambda = piecewise_linear_root(&mu, -z.t);
    let x: Vec<f64> =
        z.x.iter()
            .map(|&v| v.signum() * (v.abs() - lambda).max(0.0))
            .collect();
    ConePoint { t: z.t + lambda, x }
}

/// Exact projection onto `K_inf`: clamp the tail into the box `[-s, s]` at
/// the height solving the piecewise-linear optimality condition.
fn project_onto_linf_cone(z: &ConePoint) -> ConePoint {
    let mut mu: Vec<f64> = z.x.iter().map(|v| v.abs()).collect();
    mu.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let s = piecewise_linear_root(&mu, z.t);
    let x: Vec<f64> = z.x.iter().map(|&v| v.clamp(-s, s)).collect();
    ConePoint { t: s, x }
}

/// Solve `u + c u^{p-1} = a` for `u in [0, a]` (monotone, unique root) by
/// Newton with a bisection bracket.
fn solve_inner(c: f64, p: f64, a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = a;
    let mut u = a / (1.0 + c.min(1e150));
    if !(u > 0.0 && u < a) {
        u = 0.5 * a;
    }
    for _ in 0..80 {
        let phi = u + c * u.powf(p - 1.0) - a;
        if phi.abs() <= 1e-16 * a {
            return u;
        }
        if phi > 0.0 {
            hi = u;
        } else {
            lo = u;
        }
        let dphi = 1.0 + c * (p - 1.0) * u.powf(p - 2.0);
        let newton = u - phi / dphi;
        u = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    u
}

/// Projection onto `K_p` for finite `p > 1` when the point is strictly
/// between the cone and its polar: root-find the Lagrange multiplier
/// `lambda` of the scalar dual problem. The projected point is
/// `(t + lambda, y(lambda))` with `y` solving the per-component inner
/// equation.
///
/// The solver tracks the relative residual `||y||_p / (t + lambda) - 1`,
/// which is positive at the bracket floor, negative for large `lambda`, and
/// zero exactly at the unique multiplier. (The unnormalized residual
/// `||y||_p - (t + lambda)` also vanishes spuriously at `lambda = -t` when
/// `t < 0`, which a tolerance test cannot tell apart from the root.)
fn project_onto_smooth_cone(p: f64, z: &ConePoint, tol: f64) -> Result<ConePoint> {
    let scale = 1.0 + z.t.abs() + pnorm::norm(&z.x, Exponent::Finite(p));
    let residual_tol = tol.clamp(1e-15, 1e-12);
    let abs_x: Vec<f64> = z.x.iter().map(|v| v.abs()).collect();

    let eval = |lambda: f64| -> (Vec<f64>, f64) {
        let nu = z.t + lambda;
        let c = lambda * nu.powf(1.0 - p);
        let y: Vec<f64> = abs_x.iter().map(|&a| solve_inner(c, p, a)).collect();
        let r = pnorm::norm(&y, Exponent::Finite(p)) / nu - 1.0;
        (y, r)
    };

    let lambda_min = (-z.t).max(0.0);
    let mut lo = lambda_min + 1e-13 * scale;
    let (_, mut r_lo) = eval(lo);
    if r_lo <= 0.0 {
        // The multiplier sits within the bracket floor; the projection is
        // indistinguishable from the branch point at this tolerance.
        let (y, _) = eval(lo);
        return Ok(assemble_projection(z, lo, &y));
    }
    let mut hi = (2.0 * lo).max(lambda_min + scale);
    let mut r_hi = eval(hi).1;
    let mut expansions = 0;
    while r_hi > 0.0 {
        hi = lambda_min + 2.0 * (hi - lambda_min);
        r_hi = eval(hi).1;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::ConvergenceFailure {
                iterations: expansions,
                residual: r_hi,
            });
        }
    }

    let mut lambda = 0.5 * (lo + hi);
    for iter in 0..200 {
        // Secant proposal accelerates the bracket; fall back to bisection
        // whenever it leaves the interval.
        let secant = lo - r_lo * (hi - lo) / (r_hi - r_lo);
        lambda = if secant.is_finite() && secant > lo && secant < hi {
            secant
        } else {
            0.5 * (lo + hi)
        };
        let (y, r) = eval(lambda);
        if r.abs() <= residual_tol || (hi - lo) <= 1e-16 * (1.0 + lambda) {
            return Ok(assemble_projection(z, lambda, &y));
        }
        if r > 0.0 {
            lo = lambda;
            r_lo = r;
        } else {
            hi = lambda;
            r_hi = r;
        }
        // Bisect every other round so a flat secant cannot stall progress.
        if iter % 2 == 1 {
            let mid = 0.5 * (lo + hi);
            let (_, rm) = eval(mid);
            if rm > 0.0 {
                lo = mid;
                r_lo = rm;
            } else {
                hi = mid;
                r_hi = rm;
            }
        }
    }
    let (_, r) = eval(lambda);
    Err(Error::ConvergenceFailure {
        iterations: 200,
        residual: r,
    })
}

fn assemble_projection(z: &ConePoint, lambda: f64, y_abs: &[f64]) -> ConePoint {
    let x: Vec<f64> =
        z.x.iter()
            .zip(y_abs)
            .map(|(&orig, &mag)| {
                if orig == 0.0 {
                    0.0
                } else {
                    orig.signum() * mag
                }
            })
            .collect();
    ConePoint { t: z.t + lambda, x }
}
