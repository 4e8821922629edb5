//! The automorphism group of p-cones.
//!
//! For `p != 2` every automorphism of `K_p^{n+1}` is `alpha * diag(1, P)`
//! with `alpha > 0` and `P` a generalized permutation matrix, so membership
//! is decided structurally, by entrywise inspection, rather than numerically.
//! For `p = 2` the Loewy–Schneider criterion `A^T J A = mu J` characterizes
//! the maps with `A K = K` or `A K = -K`. A one-sided sampling oracle can
//! refute (never certify) candidate automorphisms and keeps the structural
//! decisions honest.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{ConePoint, ConeSpec, Membership};
use crate::error::{Error, Result};
use crate::pnorm::Exponent;

/// A permutation combined with per-coordinate sign flips; as a matrix,
/// exactly one `+-1` entry per row and column.
///
/// The action is `(P x)_i = signs[i] * x[perm[i]]` with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl GeneralizedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                actual: signs.len(),
            });
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::PreconditionViolated(
                    "perm must be a bijection of 0..n".into(),
                ));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::PreconditionViolated("signs must be +1 or -1".into()));
        }
        Ok(GeneralizedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        GeneralizedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Apply to a coordinate vector by index shuffling and sign flips.
    pub fn apply_slice(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: x.len(),
            });
        }
        Ok((0..self.n())
            .map(|i| f64::from(self.signs[i]) * x[self.perm[i]])
            .collect())
    }

    /// Composition `self o other` (apply `other` first).
    pub fn compose(&self, other: &GeneralizedPermutation) -> Result<GeneralizedPermutation> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        let n = self.n();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[i] = other.perm[self.perm[i]];
            signs[i] = self.signs[i] * other.signs[self.perm[i]];
        }
        Ok(GeneralizedPermutation { perm, signs })
    }

    pub fn inverse(&self) -> GeneralizedPermutation {
        let n = self.n();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        GeneralizedPermutation { perm, signs }
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, self.perm[i])] = f64::from(self.signs[i]);
        }
        m
    }
}

/// An automorphism of `K_p^{n+1}` in structured form: the matrix
/// `alpha * diag(1, P)` with `alpha > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredAutomorphism {
    pub alpha: f64,
    pub gp: GeneralizedPermutation,
}

impl StructuredAutomorphism {
    pub fn new(alpha: f64, gp: GeneralizedPermutation) -> Result<Self> {
        if alpha <= 0.0 || !alpha.is_finite() {
            return Err(Error::PreconditionViolated(format!(
                "alpha must be a positive real, got {alpha}"
            )));
        }
        Ok(StructuredAutomorphism { alpha, gp })
    }

    pub fn identity(n: usize) -> Self {
        StructuredAutomorphism {
            alpha: 1.0,
            gp: GeneralizedPermutation::identity(n),
        }
    }

    /// Ambient dimension `n + 1` of the matrix this represents.
    pub fn ambient_dim(&self) -> usize {
        self.gp.n() + 1
    }

    /// Apply without forming the dense matrix.
    pub fn apply(&self, z: &ConePoint) -> Result<ConePoint> {
        let x = self.gp.apply_slice(&z.x)?;
        Ok(ConePoint {
            t: self.alpha * z.t,
            x: x.into_iter().map(|v| self.alpha * v).collect(),
        })
    }

    /// Group law: alphas multiply, permutations and signs compose.
    pub fn compose(&self, other: &StructuredAutomorphism) -> Result<StructuredAutomorphism> {
        Ok(StructuredAutomorphism {
            alpha: self.alpha * other.alpha,
            gp: self.gp.compose(&other.gp)?,
        })
    }

    pub fn inverse(&self) -> StructuredAutomorphism {
        StructuredAutomorphism {
            alpha: 1.0 / self.alpha,
            gp: self.gp.inverse(),
        }
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let d = self.ambient_dim();
        let mut m = DMatrix::zeros(d, d);
        m[(0, 0)] = self.alpha;
        for i in 0..self.gp.n() {
            m[(i + 1, self.gp.perm[i] + 1)] = self.alpha * f64::from(self.gp.signs[i]);
        }
        m
    }

    pub fn to_linear_map(&self) -> LinearMap {
        LinearMap::new(self.to_matrix())
            .expect("structured automorphism matrices are always invertible")
    }
}

// Wire format: {"alpha": a, "perm": [..], "signs": [..]} with 1-based
// permutation indices.
#[derive(Serialize, Deserialize)]
struct StructuredAutomorphismWire {
    alpha: f64,
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl Serialize for StructuredAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StructuredAutomorphismWire {
            alpha: self.alpha,
            perm: self.gp.perm.iter().map(|p| p + 1).collect(),
            signs: self.gp.signs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructuredAutomorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = StructuredAutomorphismWire::deserialize(d)?;
        let perm: Vec<usize> = wire
            .perm
            .iter()
            .map(|&p| {
                p.checked_sub(1).ok_or_else(|| {
                    serde::de::Error::custom("perm indices are 1-based and must be >= 1")
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        let gp = GeneralizedPermutation::new(perm, wire.signs).map_err(serde::de::Error::custom)?;
        StructuredAutomorphism::new(wire.alpha, gp).map_err(serde::de::Error::custom)
    }
}

/// A dense invertible map on the ambient space, with its inverse cached and
/// validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
    cond_inf: f64,
}

fn mat_inf_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

impl LinearMap {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                actual: matrix.ncols(),
            });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::PreconditionViolated(
                "matrix entries must be finite".into(),
            ));
        }
        let inverse = matrix.clone().try_inverse().ok_or(Error::Singular)?;
        let cond_inf = mat_inf_norm(&matrix) * mat_inf_norm(&inverse);
        if !cond_inf.is_finite() {
            return Err(Error::Singular);
        }
        let residual = {
            let mut prod = &matrix * &inverse;
            for i in 0..prod.nrows() {
                prod[(i, i)] -= 1.0;
            }
            mat_inf_norm(&prod)
        };
        if residual >= 1e-10 * cond_inf {
            return Err(Error::Singular);
        }
        Ok(LinearMap {
            matrix,
            inverse,
            cond_inf,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: rows.iter().map(|r| r.len()).max().unwrap_or(0),
            });
        }
        let m = DMatrix::from_fn(d, d, |i, j| rows[i][j]);
        LinearMap::new(m)
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap::new(DMatrix::identity(dim, dim)).expect("identity is invertible")
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn condition_estimate(&self) -> f64 {
        self.cond_inf
    }

    pub fn apply(&self, z: &ConePoint) -> Result<ConePoint> {
        self.check_dim(z)?;
        Ok(ConePoint::from_ambient(&(&self.matrix * z.to_ambient())))
    }

    pub fn apply_inverse(&self, z: &ConePoint) -> Result<ConePoint> {
        self.check_dim(z)?;
        Ok(ConePoint::from_ambient(&(&self.inverse * z.to_ambient())))
    }

    pub fn apply_vector(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }

    fn check_dim(&self, z: &ConePoint) -> Result<()> {
        if z.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: z.ambient_dim(),
            });
        }
        Ok(())
    }
}

// Wire format: row-major nested arrays.
impl Serialize for LinearMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.matrix[(i, j)]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        LinearMap::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Decide membership of `A` in `Aut(K_p^{n+1})` for `p != 2` by the exact
/// structural characterization: `A` must equal `alpha * diag(1, P)`
/// entrywise within `tol * alpha`.
///
/// Returns the decomposition on success, `None` when `A` is not of that
/// form. For `p = 2` use [`loewy_schneider`] instead.
pub fn is_structural_automorphism(
    a: &LinearMap,
    spec: &ConeSpec,
    tol: f64,
) -> Result<Option<StructuredAutomorphism>> {
    if spec.exponent == Exponent::Finite(2.0) {
        return Err(Error::UnsupportedExponent(
            "p = 2 has a larger automorphism group; use loewy_schneider".into(),
        ));
    }
    if a.dim() != spec.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: spec.ambient_dim,
            actual: a.dim(),
        });
    }
    if tol < 0.0 {
        return Err(Error::PreconditionViolated("tol must be >= 0".into()));
    }
    let m = a.matrix();
    let d = a.dim();
    let alpha = m[(0, 0)];
    if alpha <= 0.0 {
        return Ok(None);
    }
    let band = tol * alpha;
    for k in 1..d {
        if m[(0, k)].abs() > band || m[(k, 0)].abs() > band {
            return Ok(None);
        }
    }
    let n = d - 1;
    let mut perm = vec![0usize; n];
    let mut signs = vec![1i8; n];
    let mut used = vec![false; n];
    for i in 0..n {
        let mut pivot: Option<usize> = None;
        for j in 0..n {
            let v = m[(i + 1, j + 1)].abs();
            if v > band {
                if pivot.is_some() {
                    return Ok(None); // two significant entries in one row
                }
                pivot = Some(j);
            }
        }
        let Some(j) = pivot else { return Ok(None) };
        if (m[(i + 1, j + 1)].abs() - alpha).abs() > band || used[j] {
            return Ok(None);
        }
        used[j] = true;
        perm[i] = j;
        signs[i] = if m[(i + 1, j + 1)] > 0.0 { 1 } else { -1 };
    }
    let gp = GeneralizedPermutation::new(perm, signs).expect("validated above");
    Ok(Some(StructuredAutomorphism { alpha, gp }))
}

/// Outcome of the Loewy–Schneider test for the second-order cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LoewySchneiderVerdict {
    /// `A^T J A = mu J`, so `A K_2 = K_2` or `A K_2 = -K_2`; `maps_to_self`
    /// disambiguates by the image of the main axis `(1, 0, ..., 0)`.
    AutOrNegAut {
        mu: f64,
        maps_to_self: bool,
    },
    No,
}

/// Test `A^T J A = mu J` with `J = diag(1, -1, ..., -1)` and
/// `mu = (A^T J A)_{11}`, within `tol * mu` entrywise.
pub fn loewy_schneider(a: &LinearMap, tol: f64) -> LoewySchneiderVerdict {
    let d = a.dim();
    let m = a.matrix();
    let mut jm = m.clone();
    for i in 1..d {
        for j in 0..d {
            jm[(i, j)] = -jm[(i, j)];
        }
    }
    let mtjm = m.transpose() * jm;
    let mu = mtjm[(0, 0)];
    if mu <= 0.0 || mu.is_nan() {
        return LoewySchneiderVerdict::No;
    }
    let mut dev = 0.0_f64;
    for i in 0..d {
        for j in 0..d {
            let target = if i != j {
                0.0
            } else if i == 0 {
                mu
            } else {
                -mu
            };
            dev = dev.max((mtjm[(i, j)] - target).abs());
        }
    }
    if dev <= tol * mu {
        LoewySchneiderVerdict::AutOrNegAut {
            mu,
            maps_to_self: m[(0, 0)] > 0.0,
        }
    } else {
        LoewySchneiderVerdict::No
    }
}

/// Outcome of the one-sided sampling oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum OracleOutcome {
    /// No witness found; this never certifies membership.
    Plausible,
    /// A boundary point whose image or preimage lands outside the cone.
    RefutedAt(ConePoint),
}

/// Probe `A K_p = K_p` on random boundary samples: any image or preimage
/// that lands `Outside` beyond the scale-adjusted tolerance refutes.
pub fn sampling_oracle_automorphism(
    a: &LinearMap,
    spec: &ConeSpec,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<OracleOutcome> {
    if samples == 0 {
        return Err(Error::PreconditionViolated("samples must be >= 1".into()));
    }
    if a.dim() != spec.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: spec.ambient_dim,
            actual: a.dim(),
        });
    }
    for z in spec.sample_boundary(samples, seed) {
        let image = a.apply(&z)?;
        if spec.contains(&image, tol * (1.0 + image.euclidean_norm()))? == Membership::Outside {
            return Ok(OracleOutcome::RefutedAt(z));
        }
        let preimage = a.apply_inverse(&z)?;
        if spec.contains(&preimage, tol * (1.0 + preimage.euclidean_norm()))? == Membership::Outside
        {
            return Ok(OracleOutcome::RefutedAt(z));
        }
    }
    Ok(OracleOutcome::Plausible)
}

/// Draw a uniformly random structured automorphism: Fisher–Yates
/// permutation, i.i.d. signs, log-uniform `alpha` in `[0.1, 10]`.
/// Deterministic per seed.
pub fn random_automorphism(spec: &ConeSpec, seed: u64) -> StructuredAutomorphism {
    let n = spec.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let signs: Vec<i8> = (0..n)
        .map(|_| if rng.random::<bool>() { 1 } else { -1 })
        .collect();
    let alpha = 10f64.powf(rng.random_range(-1.0..1.0));
    StructuredAutomorphism {
        alpha,
        gp: GeneralizedPermutation { perm, signs },
    }
}

/// Whether some automorphism maps the interior base point `(1, 0, ..., 0)`
/// to `target`.
#[derive(Debug, Clone, PartialEq)]
pub enum HomogeneityVerdict {
    Reachable(StructuredAutomorphism),
    Unreachable,
}

/// Decide reachability of an interior `target` from the main-axis point
/// `(1, 0, ..., 0)` under `Aut(K_p^{n+1})`, `p != 2`.
///
/// Every automorphism fixes the main axis, so the image of `(1, 0, ..., 0)`
/// is `(alpha, 0, ..., 0)`: the decision is exact, `Reachable` iff
/// `target.x = 0`, with `alpha = target.t`. A negative answer at any other
/// interior target witnesses how homogeneity breaks down.
pub fn homogeneity_probe(
    spec: &ConeSpec,
    target: &ConePoint,
    tol: f64,
) -> Result<HomogeneityVerdict> {
    if spec.exponent == Exponent::Finite(2.0) {
        return Err(Error::UnsupportedExponent(
            "homogeneity probe is for p != 2 (K_2 is homogeneous)".into(),
        ));
    }
    if spec.contains(target, tol)? != Membership::Interior {
        return Err(Error::NotInterior);
    }
    if target.x.iter().all(|&v| v == 0.0) {
        let n = spec.n();
        Ok(HomogeneityVerdict::Reachable(StructuredAutomorphism {
            alpha: target.t,
            gp: GeneralizedPermutation::identity(n),
        }))
    } else {
        Ok(HomogeneityVerdict::Unreachable)
    }
}

/// The explicit isomorphism `B K_1^3 = K_inf^3` in dimension three:
/// `[[1,0,0],[0,1,-1],[0,1,1]]`.
pub fn k1_to_kinf_3d() -> LinearMap {
    LinearMap::from_rows(&[
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, -1.0],
        vec![0.0, 1.0, 1.0],
    ])
    .expect("fixed matrix is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn k(p: f64, dim: usize) -> ConeSpec {
        ConeSpec::new(Exponent::finite(p).unwrap(), dim).unwrap()
    }

    fn swap_sign_auto() -> StructuredAutomorphism {
        // alpha = 2, perm = (2,1) one-based, signs = (+1, -1)
        StructuredAutomorphism::new(
            2.0,
            GeneralizedPermutation::new(vec![1, 0], vec![1, -1]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let id = StructuredAutomorphism::identity(2);
        let z = ConePoint::new(1.0, vec![2.0, 3.0]);
        assert_eq!(id.apply(&z).unwrap(), z);

        let a = swap_sign_auto();
        let z = ConePoint::new(1.0, vec![5.0, 7.0]);
        let w = a.apply(&z).unwrap();
        assert_eq!(w, ConePoint::new(2.0, vec![14.0, -10.0]));
    }

    #[test]
    fn structured_maps_preserve_the_boundary() {
        for spec in [k(1.0, 3), k(1.5, 4), k(3.0, 5)] {
            let a = random_automorphism(&spec, 17);
            for z in spec.sample_boundary(100, 4) {
                let w = a.apply(&z).unwrap();
                let tol = ConeSpec::default_tolerance(&w);
                assert_eq!(spec.contains(&w, tol).unwrap(), Membership::Boundary);
            }
        }
    }

    #[test]
    fn structural_decision_examples() {
        // diag(3, P) with P = [[0,-1],[1,0]]
        let a = LinearMap::from_rows(&[
            vec![3.0, 0.0, 0.0],
            vec![0.0, 0.0, -3.0],
            vec![0.0, 3.0, 0.0],
        ])
        .unwrap();
        let got = is_structural_automorphism(&a, &k(3.0, 3), 1e-12)
            .unwrap()
            .expect("should decompose");
        assert_eq!(got.alpha, 3.0);
        assert_eq!(got.gp.perm(), &[1, 0]);
        assert_eq!(got.gp.signs(), &[-1, 1]);

        // The K_1 -> K_inf matrix is not an automorphism of anything: its
        // lower block has two nonzeros per row.
        let b = k1_to_kinf_3d();
        assert!(is_structural_automorphism(&b, &k(1.0, 3), 1e-9)
            .unwrap()
            .is_none());

        let id = LinearMap::identity(3);
        let got = is_structural_automorphism(&id, &k(1.5, 3), 0.0)
            .unwrap()
            .expect("identity decomposes");
        assert_eq!(got.alpha, 1.0);
        assert_eq!(got.gp, GeneralizedPermutation::identity(2));

        assert!(matches!(
            is_structural_automorphism(&id, &k(2.0, 3), 1e-12),
            Err(Error::UnsupportedExponent(_))
        ));
    }

    #[test]
    fn loewy_schneider_examples() {
        // J itself: J^T J J = J, mu = 1, fixes the axis.
        let j = LinearMap::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, -1.0],
        ])
        .unwrap();
        assert_eq!(
            loewy_schneider(&j, 1e-12),
            LoewySchneiderVerdict::AutOrNegAut {
                mu: 1.0,
                maps_to_self: true
            }
        );

        // Scaling: mu = alpha^2.
        let s = LinearMap::from_rows(&[
            vec![3.0, 0.0, 0.0],
            vec![0.0, 3.0, 0.0],
            vec![0.0, 0.0, 3.0],
        ])
        .unwrap();
        assert_eq!(
            loewy_schneider(&s, 1e-12),
            LoewySchneiderVerdict::AutOrNegAut {
                mu: 9.0,
                maps_to_self: true
            }
        );

        // Perturbed first row: not J-orthogonal up to scale.
        let bad = LinearMap::from_rows(&[
            vec![1.0, 0.1, 0.0],
            vec![0.3, 1.0, 0.2],
            vec![0.0, -0.4, 1.1],
        ])
        .unwrap();
        assert_eq!(loewy_schneider(&bad, 1e-9), LoewySchneiderVerdict::No);

        // A Lorentz boost is accepted and preserves K_2 boundary samples.
        let a = 0.7f64;
        let boost = LinearMap::from_rows(&[
            vec![a.cosh(), a.sinh(), 0.0],
            vec![a.sinh(), a.cosh(), 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        match loewy_schneider(&boost, 1e-10) {
            LoewySchneiderVerdict::AutOrNegAut { mu, maps_to_self } => {
                assert_relative_eq!(mu, 1.0, epsilon = 1e-12);
                assert!(maps_to_self);
            }
            LoewySchneiderVerdict::No => panic!("boost must pass"),
        }
        let spec = k(2.0, 3);
        for z in spec.sample_boundary(200, 9) {
            let w = boost.apply(&z).unwrap();
            assert!(spec.membership_defect(&w).unwrap() <= 1e-8 * (1.0 + w.euclidean_norm()));
        }
    }

    #[test]
    fn oracle_examples() {
        let spec = k(1.5, 3);
        for seed in [0, 1, 2] {
            let a = random_automorphism(&spec, 100 + seed).to_linear_map();
            assert_eq!(
                sampling_oracle_automorphism(&a, &spec, 500, seed, 1e-9).unwrap(),
                OracleOutcome::Plausible
            );
        }

        // diag(1, 1, 2) stretches one axis and is caught quickly.
        let stretch = LinearMap::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ])
        .unwrap();
        assert!(matches!(
            sampling_oracle_automorphism(&stretch, &spec, 1000, 0, 1e-9).unwrap(),
            OracleOutcome::RefutedAt(_)
        ));

        // B maps K_1^3 to K_inf^3, not to itself.
        let b = k1_to_kinf_3d();
        assert!(matches!(
            sampling_oracle_automorphism(&b, &k(1.0, 3), 1000, 0, 1e-9).unwrap(),
            OracleOutcome::RefutedAt(_)
        ));
    }

    #[test]
    fn random_automorphism_is_deterministic_and_structural() {
        let spec = k(3.0, 4);
        let a = random_automorphism(&spec, 42);
        let b = random_automorphism(&spec, 42);
        assert_eq!(a, b);
        let mut seen = [false; 3];
        for &p in a.gp.perm() {
            seen[p] = true;
        }
        assert!(seen.iter().all(|&s| s));
        assert!(a.alpha >= 0.1 && a.alpha <= 10.0);
        // passes the structural test with tol 0 by construction
        let got = is_structural_automorphism(&a.to_linear_map(), &spec, 0.0)
            .unwrap()
            .expect("structured by construction");
        assert_eq!(got, a);
    }

    #[test]
    fn homogeneity_probe_examples() {
        let spec = k(3.0, 3);
        match homogeneity_probe(&spec, &ConePoint::new(2.0, vec![0.0, 0.0]), 1e-9).unwrap() {
            HomogeneityVerdict::Reachable(a) => {
                assert_eq!(a.alpha, 2.0);
                assert_eq!(a.gp, GeneralizedPermutation::identity(2));
            }
            HomogeneityVerdict::Unreachable => panic!("main-axis target is reachable"),
        }
        assert_eq!(
            homogeneity_probe(&spec, &ConePoint::new(2.0, vec![1.0, 0.0]), 1e-9).unwrap(),
            HomogeneityVerdict::Unreachable
        );
        assert_eq!(
            homogeneity_probe(&k(1.5, 3), &ConePoint::new(2.0, vec![0.1, 0.1]), 1e-9).unwrap(),
            HomogeneityVerdict::Unreachable
        );
        // boundary/outside targets are rejected
        assert!(matches!(
            homogeneity_probe(&spec, &ConePoint::new(1.0, vec![1.0, 0.0]), 1e-9),
            Err(Error::NotInterior)
        ));
    }

    #[test]
    fn linear_map_validation() {
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(LinearMap::new(singular), Err(Error::Singular)));
        assert!(LinearMap::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0, 3.0]]).is_err());
        let m = LinearMap::identity(3);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[1.0,0.0,0.0],[0.0,1.0,0.0],[0.0,0.0,1.0]]");
        let back: LinearMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back.matrix(), m.matrix());
    }

    #[test]
    fn structured_automorphism_wire_format_is_one_based() {
        let a = swap_sign_auto();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "{\"alpha\":2.0,\"perm\":[2,1],\"signs\":[1,-1]}");
        let back: StructuredAutomorphism = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    fn arb_gp(n: usize) -> impl Strategy<Value = GeneralizedPermutation> {
        (Just(n), any::<u64>()).prop_map(|(n, seed)| {
            let spec = ConeSpec::new(Exponent::Finite(3.0), n + 1).unwrap();
            random_automorphism(&spec, seed).gp
        })
    }

    proptest! {
        #[test]
        fn group_closure_matches_matrix_product(
            a in arb_gp(4),
            b in arb_gp(4),
            alpha_a in 0.1f64..10.0,
            alpha_b in 0.1f64..10.0,
        ) {
            let sa = StructuredAutomorphism::new(alpha_a, a).unwrap();
            let sb = StructuredAutomorphism::new(alpha_b, b).unwrap();
            let composed = sa.compose(&sb).unwrap();
            // the structured composition reproduces the dense product bitwise
            prop_assert_eq!(composed.to_matrix(), sa.to_matrix() * sb.to_matrix());
        }

        #[test]
        fn inverse_closure(a in arb_gp(3), alpha in 0.1f64..10.0) {
            let sa = StructuredAutomorphism::new(alpha, a).unwrap();
            let inv = sa.inverse();
            // inverse passes the structural test at tight tolerance
            let spec = ConeSpec::new(Exponent::Finite(3.0), 4).unwrap();
            let got = is_structural_automorphism(&inv.to_linear_map(), &spec, 1e-12)
                .unwrap()
                .expect("inverse is structured");
            prop_assert_eq!(got.gp, sa.gp.inverse());
            // round trip is the identity up to rounding in alpha
            let round = sa.compose(&sa.inverse()).unwrap();
            prop_assert!((round.alpha - 1.0).abs() <= 1e-15);
            prop_assert_eq!(round.gp, GeneralizedPermutation::identity(3));
        }
    }
}
