//! Differential-geometric diagnostics on the boundary manifold `M_p`, the
//! graph of `f_p = ||.||_p` over `R^n \ {0}`.
//!
//! A linear isomorphism between cones restricts to a map between boundary
//! graphs, and composing with the graph projections turns it into the map
//! `B(x) = pi(A(f_p(x), x))` on the base. `B` transfers twice-
//! differentiability, so the non-C2 locus `X = {x != 0 : some x_i = 0}` is
//! carried onto itself stratum by stratum; the operations here make that
//! observable pointwise.

use nalgebra::{DMatrix, DVector};

use crate::autgroup::LinearMap;
use crate::cone::ConePoint;
use crate::error::{Error, Result};
use crate::pnorm::{self, Exponent};

/// Default absolute tolerance for locus membership; samples are generated
/// at unit scale, so membership is a generation-time property.
pub const LOCUS_TOL: f64 = 1e-12;

/// The graph chart of `M_p`: `x` maps to `(f_p(x), x)` for finite `p > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphChart {
    exponent: Exponent,
    dimension: usize,
}

impl GraphChart {
    pub fn new(exponent: Exponent, dimension: usize) -> Result<Self> {
        match exponent {
            Exponent::Finite(p) if p > 1.0 => {}
            _ => {
                return Err(Error::UnsupportedExponent(
                    "graph charts require finite p > 1 (the norm must be C1)".into(),
                ))
            }
        }
        if dimension < 1 {
            return Err(Error::PreconditionViolated(
                "chart dimension must be >= 1".into(),
            ));
        }
        Ok(GraphChart {
            exponent,
            dimension,
        })
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Graph height `f_p(x)`.
    pub fn height(&self, x: &[f64]) -> f64 {
        pnorm::norm(x, self.exponent)
    }

    /// Chart inverse: lift `x` to the boundary point `(f_p(x), x)`.
    pub fn lift(&self, x: &[f64]) -> Result<ConePoint> {
        self.check_dim(x)?;
        Ok(ConePoint::new(self.height(x), x.to_vec()))
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: x.len(),
            });
        }
        Ok(())
    }
}

/// A basis of the tangent space of `M_p` at a lifted base point: the vectors
/// `(d f_p / d x_i, e_i)`, which are the partial derivatives of the chart
/// inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentBasis {
    pub base_point: ConePoint,
    pub vectors: Vec<DVector<f64>>,
}

impl TangentBasis {
    /// Rank of the spanned subspace (always `n`: the `e_i` block is the
    /// identity).
    pub fn rank(&self) -> usize {
        let n = self.vectors.len();
        let m = DMatrix::from_fn(n + 1, n, |i, j| self.vectors[j][i]);
        m.rank(1e-10)
    }
}

/// Tangent basis of `M_p` at `x != 0`.
pub fn tangent_basis(chart: &GraphChart, x: &[f64]) -> Result<TangentBasis> {
    chart.check_dim(x)?;
    let grad = pnorm::gradient(x, chart.exponent())?;
    let n = x.len();
    let vectors = (0..n)
        .map(|i| {
            let mut v = DVector::zeros(n + 1);
            v[0] = grad[i];
            v[i + 1] = 1.0;
            v
        })
        .collect();
    Ok(TangentBasis {
        base_point: chart.lift(x)?,
        vectors,
    })
}

// Deterministic cofactor-expansion determinant for the small matrices used
// here (dimension <= 8).
fn det_recursive(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    match n {
        0 => 1.0,
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        _ => {
            let mut acc = 0.0;
            for j in 0..n {
                if m[(0, j)] == 0.0 {
                    continue;
                }
                let minor = DMatrix::from_fn(n - 1, n - 1, |r, c| {
                    m[(r + 1, if c < j { c } else { c + 1 })]
                });
                let term = m[(0, j)] * det_recursive(&minor);
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

/// The vector `Lambda(x^1, ..., x^{n-1})` representing the linear functional
/// `y -> det(x^1, ..., x^{n-1}, y)`: component `k` is the signed minor from
/// cofactor expansion along the last column. Zero iff the inputs are
/// linearly dependent.
pub fn lambda_vector(vectors: &[DVector<f64>]) -> Result<DVector<f64>> {
    let n = vectors.len() + 1;
    if vectors.is_empty() {
        return Err(Error::PreconditionViolated(
            "lambda_vector needs at least one input vector".into(),
        ));
    }
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: v.len(),
            });
        }
    }
    let mut out = DVector::zeros(n);
    for k in 0..n {
        // delete row k, keep the n-1 input columns
        let minor = DMatrix::from_fn(n - 1, n - 1, |r, c| {
            let row = if r < k { r } else { r + 1 };
            vectors[c][row]
        });
        let det = det_recursive(&minor);
        // sign (-1)^{(k+1) + n} for 1-based row k+1, column n
        out[k] = if (k + 1 + n).is_multiple_of(2) {
            det
        } else {
            -det
        };
    }
    Ok(out)
}

/// Unit normal to `M_p` at `x`, built from the tangent basis through the
/// `Lambda` functional and canonicalized so the `t` component is positive.
/// Orthogonal to every tangent vector; constant along rays of the cone.
pub fn gauss_normal(chart: &GraphChart, x: &[f64]) -> Result<DVector<f64>> {
    let basis = tangent_basis(chart, x)?;
    let lambda = lambda_vector(&basis.vectors)?;
    let nrm = lambda.norm();
    if nrm == 0.0 {
        // tangent vectors are independent by construction, so this would
        // signal a bug upstream
        return Err(Error::PreconditionViolated(
            "tangent basis degenerated to dependent vectors".into(),
        ));
    }
    let mut n = lambda / nrm;
    if n[0] < 0.0 {
        n = -n;
    }
    Ok(n)
}

/// Closed-form graph normal `(1, -grad f_p) / ||.||_2`, the independent
/// route the Lambda construction is checked against.
pub fn graph_normal_closed_form(chart: &GraphChart, x: &[f64]) -> Result<DVector<f64>> {
    let grad = pnorm::gradient(x, chart.exponent())?;
    let mut v = DVector::zeros(x.len() + 1);
    v[0] = 1.0;
    for (i, g) in grad.iter().enumerate() {
        v[i + 1] = -g;
    }
    let nrm = v.norm();
    Ok(v / nrm)
}

/// The induced base map `B(x) = pi(A(f_p(x), x))`: lift `x` to the source
/// graph, push through `A`, check the image lies on the target graph (within
/// `1e-8` relative), and project back to the base.
pub fn boundary_map(
    a: &LinearMap,
    from: &GraphChart,
    to: &GraphChart,
    x: &[f64],
) -> Result<Vec<f64>> {
    let z = from.lift(x)?;
    let w = a.apply(&z)?;
    if w.x.len() != to.dimension() {
        return Err(Error::DimensionMismatch {
            expected: to.dimension(),
            actual: w.x.len(),
        });
    }
    let defect = (w.t - pnorm::norm(&w.x, to.exponent())).abs();
    if defect > 1e-8 * (1.0 + w.euclidean_norm()) {
        return Err(Error::NotOnTargetGraph(defect));
    }
    Ok(w.x)
}

/// Indices (0-based) of the locus strata containing `x`:
/// `{i : |x_i| <= tol}`. Empty for points off the non-C2 locus.
pub fn locus_membership(x: &[f64], tol: f64) -> Result<Vec<usize>> {
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(x.iter()
        .enumerate()
        .filter(|(_, v)| v.abs() <= tol)
        .map(|(i, _)| i)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::{random_automorphism, GeneralizedPermutation, StructuredAutomorphism};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn chart(p: f64, n: usize) -> GraphChart {
        GraphChart::new(Exponent::Finite(p), n).unwrap()
    }

    #[test]
    fn chart_rejects_endpoints() {
        assert!(GraphChart::new(Exponent::Finite(1.0), 2).is_err());
        assert!(GraphChart::new(Exponent::Infinity, 2).is_err());
        assert!(GraphChart::new(Exponent::Finite(1.5), 2).is_ok());
    }

    #[test]
    fn tangent_basis_examples() {
        let basis = tangent_basis(&chart(2.0, 2), &[1.0, 0.0]).unwrap();
        assert_eq!(basis.vectors[0].as_slice(), &[1.0, 1.0, 0.0]);
        assert_eq!(basis.vectors[1].as_slice(), &[0.0, 0.0, 1.0]);
        assert_eq!(basis.rank(), 2);

        let basis = tangent_basis(&chart(3.0, 2), &[1.0, 1.0]).unwrap();
        let c = 0.6299605249474366; // 2^(-2/3), from the gradient oracle
        assert_relative_eq!(basis.vectors[0][0], c, max_relative = 1e-12);
        assert_relative_eq!(basis.vectors[1][0], c, max_relative = 1e-12);

        // rank is n regardless of the point
        let basis = tangent_basis(&chart(1.5, 4), &[0.3, -0.7, 0.0, 2.0]).unwrap();
        assert_eq!(basis.rank(), 4);
    }

    #[test]
    fn lambda_examples() {
        let e1 = DVector::from_column_slice(&[1.0, 0.0, 0.0]);
        let e2 = DVector::from_column_slice(&[0.0, 1.0, 0.0]);
        let l = lambda_vector(&[e1.clone(), e2]).unwrap();
        assert_eq!(l.as_slice(), &[0.0, 0.0, 1.0]);

        let l = lambda_vector(&[e1.clone(), e1.clone()]).unwrap();
        assert_eq!(l.as_slice(), &[0.0, 0.0, 0.0]);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let vecs: Vec<DVector<f64>> = (0..3)
                .map(|_| DVector::from_fn(4, |_, _| rng.random_range(-2.0..2.0)))
                .collect();
            let l = lambda_vector(&vecs).unwrap();
            for v in &vecs {
                assert!(l.dot(v).abs() <= 1e-10, "lambda not orthogonal");
            }
        }
    }

    #[test]
    fn lambda_is_alternating() {
        // cross-product case: the flip is exact in floating point
        let a = DVector::from_column_slice(&[0.3, -1.2, 0.7]);
        let b = DVector::from_column_slice(&[2.0, 0.4, -0.9]);
        let fwd = lambda_vector(&[a.clone(), b.clone()]).unwrap();
        let rev = lambda_vector(&[b, a]).unwrap();
        for k in 0..3 {
            assert_eq!(fwd[k], -rev[k]);
        }
        // higher dimension: flip holds to rounding
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let vecs: Vec<DVector<f64>> = (0..4)
            .map(|_| DVector::from_fn(5, |_, _| rng.random_range(-2.0..2.0)))
            .collect();
        let fwd = lambda_vector(&vecs).unwrap();
        let mut swapped = vecs.clone();
        swapped.swap(1, 3);
        let rev = lambda_vector(&swapped).unwrap();
        let scale = fwd.amax().max(1.0);
        for k in 0..5 {
            assert!((fwd[k] + rev[k]).abs() <= 1e-14 * scale);
        }
    }

    #[test]
    fn gauss_normal_examples() {
        // p = 2 at e1: the canonical normal is (1, -1, 0)/sqrt(2)
        let n = gauss_normal(&chart(2.0, 2), &[1.0, 0.0]).unwrap();
        let c = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(n[0], c, epsilon = 1e-12);
        assert_relative_eq!(n[1], -c, epsilon = 1e-12);
        assert_relative_eq!(n[2], 0.0, epsilon = 1e-12);

        // p = 3 at (1,1): proportional to (1, -2^(-2/3), -2^(-2/3))
        let ch = chart(3.0, 2);
        let n = gauss_normal(&ch, &[1.0, 1.0]).unwrap();
        let closed = graph_normal_closed_form(&ch, &[1.0, 1.0]).unwrap();
        for k in 0..3 {
            assert_relative_eq!(n[k], closed[k], epsilon = 1e-10);
        }

        // normals are constant along rays
        let a = gauss_normal(&ch, &[0.4, -1.1]).unwrap();
        let b = gauss_normal(&ch, &[0.4 * 7.5, -1.1 * 7.5]).unwrap();
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() <= 1e-10);
        }
    }

    #[test]
    fn gauss_normal_is_orthogonal_to_tangents() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let p = rng.random_range(1.1..5.0);
            let n_dim = rng.random_range(2..5usize);
            let x: Vec<f64> = (0..n_dim)
                .map(|_| {
                    let m = rng.random_range(0.1..2.0);
                    if rng.random::<bool>() {
                        m
                    } else {
                        -m
                    }
                })
                .collect();
            let ch = chart(p, n_dim);
            let normal = gauss_normal(&ch, &x).unwrap();
            assert_relative_eq!(normal.norm(), 1.0, epsilon = 1e-12);
            let basis = tangent_basis(&ch, &x).unwrap();
            for v in &basis.vectors {
                assert!(normal.dot(v).abs() <= 1e-10);
            }
            let closed = graph_normal_closed_form(&ch, &x).unwrap();
            for k in 0..=n_dim {
                assert!((normal[k] - closed[k]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn boundary_map_of_structured_automorphism_is_alpha_px() {
        let ch = chart(1.5, 3);
        let auto = StructuredAutomorphism::new(
            2.5,
            GeneralizedPermutation::new(vec![2, 0, 1], vec![-1, 1, 1]).unwrap(),
        )
        .unwrap();
        let a = auto.to_linear_map();
        let x = [0.4, -1.0, 0.8];
        let image = boundary_map(&a, &ch, &ch, &x).unwrap();
        let expected = auto.gp.apply_slice(&x).unwrap();
        for k in 0..3 {
            assert_relative_eq!(image[k], 2.5 * expected[k], epsilon = 1e-14);
        }
    }

    #[test]
    fn boundary_map_rejects_non_graph_maps() {
        let b = crate::autgroup::k1_to_kinf_3d();
        let ch = chart(1.5, 2);
        let err = boundary_map(&b, &ch, &ch, &[0.7, 0.3]);
        assert!(matches!(err, Err(Error::NotOnTargetGraph(_))));
    }

    #[test]
    fn boundary_map_round_trip() {
        let ch = chart(1.3, 3);
        let auto = random_automorphism(
            &crate::cone::ConeSpec::new(Exponent::Finite(1.3), 4).unwrap(),
            13,
        );
        let a = auto.to_linear_map();
        let a_inv = auto.inverse().to_linear_map();
        let x = [1.2, -0.4, 0.9];
        let there = boundary_map(&a, &ch, &ch, &x).unwrap();
        let back = boundary_map(&a_inv, &ch, &ch, &there).unwrap();
        for k in 0..3 {
            assert!((back[k] - x[k]).abs() <= 1e-10);
        }
    }

    #[test]
    fn strata_map_by_the_inverse_permutation() {
        // x in X_i lands in X_{tau(i)} with tau the inverse permutation
        let ch = chart(1.5, 3);
        let spec = crate::cone::ConeSpec::new(Exponent::Finite(1.5), 4).unwrap();
        for seed in 0..20 {
            let auto = random_automorphism(&spec, seed);
            let a = auto.to_linear_map();
            let tau = auto.gp.inverse();
            for i in 0..3 {
                let mut x = [0.7, -1.1, 0.5];
                x[i] = 0.0;
                let image = boundary_map(&a, &ch, &ch, &x).unwrap();
                let strata = locus_membership(&image, LOCUS_TOL).unwrap();
                assert_eq!(strata, vec![tau.perm()[i]]);
            }
        }
    }

    #[test]
    fn locus_examples() {
        assert_eq!(locus_membership(&[1.0, 0.0, 2.0], 1e-12).unwrap(), vec![1]);
        assert_eq!(
            locus_membership(&[0.0, 0.0, 1.0], 1e-12).unwrap(),
            vec![0, 1]
        );
        assert!(locus_membership(&[1.0, 1.0], 1e-12).unwrap().is_empty());
        assert!(matches!(
            locus_membership(&[0.0, 0.0], 1e-12),
            Err(Error::ZeroVector)
        ));
    }
}
