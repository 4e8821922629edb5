//! Exponent arithmetic and the p-norm with its first and second derivatives.
//!
//! The exponent `p` lives in `[1, inf]`; `p = inf` is a distinct enum variant,
//! never a large-number stand-in, so conjugacy and branch logic stay exact.
//! Derivatives are only defined for finite `p > 1`; the endpoints have
//! subdifferentials which this crate deliberately does not model.

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A p-norm exponent: a finite real `>= 1` or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Construct a finite exponent, validating `p >= 1`.
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Exponent::Finite(p))
    }

    pub const fn infinity() -> Self {
        Exponent::Infinity
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(*p),
            Exponent::Infinity => None,
        }
    }

    /// The conjugate exponent `q` with `1/p + 1/q = 1`.
    ///
    /// `conjugate(1) = inf`, `conjugate(inf) = 1`, and `conjugate(2) = 2`.
    pub fn conjugate(&self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) => {
                if *p == 1.0 {
                    Exponent::Infinity
                } else {
                    Exponent::Finite(p / (p - 1.0))
                }
            }
        }
    }

    /// Parse a decimal literal or the token `inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::UnsupportedExponent(format!("cannot parse `{s}`")))?;
        Exponent::finite(p)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

// Wire format: a JSON number for finite p, the string "inf" otherwise.
impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => serializer.serialize_f64(*p),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExponentVisitor;
        impl<'de> Visitor<'de> for ExponentVisitor {
            type Value = Exponent;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number >= 1 or the string \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Exponent, E> {
                Exponent::finite(v).map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                Exponent::finite(v as f64).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exponent, E> {
                Exponent::finite(v as f64).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                Exponent::parse(v).map_err(E::custom)
            }
        }
        deserializer.deserialize_any(ExponentVisitor)
    }
}

/// Twice-differentiability of the p-norm at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    TwiceSmooth,
    NotTwiceSmooth,
}

fn require_smooth_exponent(e: Exponent) -> Result<f64> {
    match e {
        Exponent::Infinity => Err(Error::UnsupportedExponent(
            "derivatives are not defined for p = inf".into(),
        )),
        Exponent::Finite(p) => {
            if p == 1.0 {
                Err(Error::UnsupportedExponent(
                    "derivatives are not defined for p = 1".into(),
                ))
            } else {
                Ok(p)
            }
        }
    }
}

fn is_zero_vector(x: &[f64]) -> bool {
    x.iter().all(|&v| v == 0.0)
}

/// The p-norm of `x`.
///
/// Overflow-safe: the largest magnitude is factored out before powering, so
/// large `p` on moderate vectors stays finite. The powered terms are summed
/// in sorted order, which makes the result invariant under permutations and
/// sign flips of the input.
pub fn norm(x: &[f64], e: Exponent) -> f64 {
    match e {
        Exponent::Infinity => x.iter().fold(0.0_f64, |m, &v| m.max(v.abs())),
        Exponent::Finite(p) => {
            let m = x.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
            if m == 0.0 {
                return 0.0;
            }
            if p == 1.0 {
                let mut terms: Vec<f64> = x.iter().map(|v| v.abs()).collect();
                terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
                return terms.iter().sum();
            }
            let mut terms: Vec<f64> = x.iter().map(|v| (v.abs() / m).powf(p)).collect();
            terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let s: f64 = terms.iter().sum();
            m * s.powf(1.0 / p)
        }
    }
}

/// Gradient of the p-norm at `x != 0` for finite `p > 1`.
///
/// Component `i` is `||x||_p^{1-p} |x_i|^{p-1} sign(x_i)`; the result has
/// q-norm 1 for the conjugate exponent q.
pub fn gradient(x: &[f64], e: Exponent) -> Result<Vec<f64>> {
    let p = require_smooth_exponent(e)?;
    if is_zero_vector(x) {
        return Err(Error::ZeroVector);
    }
    let nrm = norm(x, e);
    Ok(x.iter()
        .map(|&v| {
            if v == 0.0 {
                0.0
            } else {
                (v.abs() / nrm).powf(p - 1.0) * v.signum()
            }
        })
        .collect())
}

/// Hessian of the p-norm at `x != 0`.
///
/// Defined for finite `p >= 2` everywhere off the origin, and for
/// `p in (1,2)` only when every coordinate is nonzero; otherwise
/// `NotTwiceDifferentiable` is returned.
pub fn hessian(x: &[f64], e: Exponent) -> Result<nalgebra::DMatrix<f64>> {
    let p = require_smooth_exponent(e)?;
    if is_zero_vector(x) {
        return Err(Error::ZeroVector);
    }
    if p < 2.0 && x.contains(&0.0) {
        return Err(Error::NotTwiceDifferentiable);
    }
    let n = x.len();
    let nrm = norm(x, e);
    // ratios r_i = |x_i| / ||x||_p are in [0,1]; all powers below stay bounded
    let r: Vec<f64> = x.iter().map(|&v| v.abs() / nrm).collect();
    let s: Vec<f64> = x
        .iter()
        .map(|&v| if v == 0.0 { 0.0 } else { v.signum() })
        .collect();
    let mut h = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                (1.0 - p) / nrm * r[i].powf(2.0 * (p - 1.0)) + (p - 1.0) / nrm * r[i].powf(p - 2.0)
            } else {
                (1.0 - p) / nrm * r[i].powf(p - 1.0) * r[j].powf(p - 1.0) * s[i] * s[j]
            };
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    Ok(h)
}

/// Classify twice-differentiability of the p-norm at `x != 0`.
///
/// For `p in (1,2)` the norm is C2 near `x` iff every coordinate is nonzero;
/// for `p >= 2` it is C2 everywhere off the origin.
pub fn classify_c2(x: &[f64], e: Exponent) -> Result<Smoothness> {
    let p = require_smooth_exponent(e)?;
    if is_zero_vector(x) {
        return Err(Error::ZeroVector);
    }
    if p < 2.0 && x.contains(&0.0) {
        Ok(Smoothness::NotTwiceSmooth)
    } else {
        Ok(Smoothness::TwiceSmooth)
    }
}

/// Difference quotients probing the second derivative `d/dx_j (d||.||_p/dx_i)`
/// at a point with `x_i = 0`.
///
/// Returns `(h, quotient)` pairs with
/// `quotient = [grad_i(x + h e_j) - grad_i(x)] / h`. When `j = i` the
/// quotient grows like `h^{p-2}`, so a log-log slope near `p - 2` signals the
/// divergence that destroys C2 for `p < 2`, while bounded quotients signal a
/// finite second derivative. Indices are 0-based.
///
/// Accepts any finite `p > 1` so that `p >= 2` can serve as the bounded
/// control case.
pub fn c2_divergence_probe(
    x: &[f64],
    e: Exponent,
    i: usize,
    j: usize,
    steps: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let _p = require_smooth_exponent(e).map_err(|_| {
        Error::PreconditionViolated("divergence probe requires finite p > 1".into())
    })?;
    if is_zero_vector(x) {
        return Err(Error::ZeroVector);
    }
    if i >= x.len() || j >= x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: i.max(j) + 1,
        });
    }
    if x[i] != 0.0 {
        return Err(Error::PreconditionViolated(format!(
            "coordinate {i} must be zero at the probe point, got {}",
            x[i]
        )));
    }
    if steps.is_empty() || steps.iter().any(|&h| h.is_nan() || h <= 0.0) {
        return Err(Error::PreconditionViolated(
            "step sizes must be positive".into(),
        ));
    }
    if steps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::PreconditionViolated(
            "step sizes must be strictly decreasing".into(),
        ));
    }
    let g0 = gradient(x, e)?[i];
    let mut out = Vec::with_capacity(steps.len());
    let mut xp = x.to_vec();
    for &h in steps {
        xp[j] = x[j] + h;
        let gi = gradient(&xp, e)?[i];
        out.push((h, (gi - g0) / h));
        xp[j] = x[j];
    }
    Ok(out)
}

/// Ordinary least-squares slope of `log |quotient|` against `log h`.
///
/// Needs at least 4 nonzero quotients for a meaningful fit; identically zero
/// quotients fit slope 0 (the bounded case).
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    let nonzero: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, q)| *q != 0.0)
        .map(|&(h, q)| (h.ln(), q.abs().ln()))
        .collect();
    if nonzero.is_empty() {
        return Ok(0.0);
    }
    if nonzero.len() < 4 {
        return Err(Error::PreconditionViolated(format!(
            "slope fit needs >= 4 nonzero quotients, got {}",
            nonzero.len()
        )));
    }
    let n = nonzero.len() as f64;
    let sx: f64 = nonzero.iter().map(|(a, _)| a).sum();
    let sy: f64 = nonzero.iter().map(|(_, b)| b).sum();
    let sxx: f64 = nonzero.iter().map(|(a, _)| a * a).sum();
    let sxy: f64 = nonzero.iter().map(|(a, b)| a * b).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numdiff;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn conjugate_fixed_points_and_endpoints() {
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(Exponent::Finite(1.5).conjugate(), Exponent::Finite(3.0));
    }

    #[test]
    fn exponent_validation() {
        assert!(Exponent::finite(0.5).is_err());
        assert!(Exponent::finite(f64::NAN).is_err());
        assert!(Exponent::finite(1.0).is_ok());
        assert_eq!(Exponent::parse("inf").unwrap(), Exponent::Infinity);
        assert_eq!(Exponent::parse("2.5").unwrap(), Exponent::Finite(2.5));
        assert!(Exponent::parse("zero").is_err());
    }

    #[test]
    fn norm_examples() {
        assert_relative_eq!(
            norm(&[3.0, 4.0], Exponent::Finite(2.0)),
            5.0,
            max_relative = 1e-15
        );
        // (1+1+1)^(1/3) = 3^(1/3)
        assert_relative_eq!(
            norm(&[1.0, 1.0, 1.0], Exponent::Finite(3.0)),
            1.4422495703074083,
            max_relative = 1e-15
        );
        assert_eq!(norm(&[1.0, -7.0, 2.0], Exponent::Infinity), 7.0);
        assert_eq!(norm(&[0.0, 0.0], Exponent::Finite(3.0)), 0.0);
    }

    #[test]
    fn norm_overflow_guard() {
        let v = norm(&[1.0e8, 2.0e8], Exponent::Finite(50.0));
        assert!(v.is_finite());
        assert_relative_eq!(v, 2.0e8, max_relative = 1e-12);
    }

    #[test]
    fn norm_permutation_invariant_bitwise() {
        let x = [0.3, -1.7, 0.41, 2.2];
        let y = [2.2, 0.41, -0.3, 1.7];
        for e in [
            Exponent::Finite(1.0),
            Exponent::Finite(1.7),
            Exponent::Finite(3.2),
        ] {
            assert_eq!(norm(&x, e).to_bits(), norm(&y, e).to_bits());
        }
    }

    #[test]
    fn gradient_examples() {
        // Frozen from the central finite-difference oracle; analytically 2^(-2/3).
        let g = gradient(&[1.0, 1.0], Exponent::Finite(3.0)).unwrap();
        assert_relative_eq!(g[0], 0.6299605249474366, max_relative = 1e-12);
        assert_relative_eq!(g[1], 0.6299605249474366, max_relative = 1e-12);
        let fd = numdiff::central_gradient(
            |v| norm(v, Exponent::Finite(3.0)),
            &[1.0, 1.0],
            numdiff::default_gradient_step(&[1.0, 1.0]),
        );
        assert_relative_eq!(g[0], fd[0], max_relative = 1e-8);
        assert_relative_eq!(g[1], fd[1], max_relative = 1e-8);

        let g = gradient(&[1.0, 0.0], Exponent::Finite(1.5)).unwrap();
        assert_eq!(g, vec![1.0, 0.0]);

        let g = gradient(&[0.0, -2.0], Exponent::Finite(3.0)).unwrap();
        assert_eq!(g[0], 0.0);
        assert_relative_eq!(g[1], -1.0, max_relative = 1e-14);
    }

    #[test]
    fn gradient_rejects_endpoints_and_zero() {
        assert!(matches!(
            gradient(&[1.0, 2.0], Exponent::Finite(1.0)),
            Err(Error::UnsupportedExponent(_))
        ));
        assert!(matches!(
            gradient(&[1.0, 2.0], Exponent::Infinity),
            Err(Error::UnsupportedExponent(_))
        ));
        assert!(matches!(
            gradient(&[0.0, 0.0], Exponent::Finite(3.0)),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn hessian_examples() {
        // Off-diagonal at (1,1), p=3: -2 * 2^(-5/3) = -2^(-2/3); frozen from the
        // finite-difference-of-gradient oracle.
        let h = hessian(&[1.0, 1.0], Exponent::Finite(3.0)).unwrap();
        assert_relative_eq!(h[(0, 1)], -0.6299605249474366, max_relative = 1e-12);
        assert_eq!(h[(0, 1)], h[(1, 0)]);
        let fd = numdiff::central_hessian(
            |v| norm(v, Exponent::Finite(3.0)),
            &[1.0, 1.0],
            numdiff::default_hessian_step(&[1.0, 1.0]),
        );
        assert_relative_eq!(h[(0, 1)], fd[(0, 1)], max_relative = 1e-5);

        // p > 2 limit case at a zero coordinate: the mixed entry vanishes.
        let h = hessian(&[1.0, 0.0], Exponent::Finite(3.0)).unwrap();
        assert_eq!(h[(0, 1)], 0.0);

        // Euclidean norm: H x = 0 since the norm is homogeneous of degree 1.
        let x = [3.0, -4.0, 1.0];
        let h = hessian(&x, Exponent::Finite(2.0)).unwrap();
        let hx = h * nalgebra::DVector::from_column_slice(&x);
        assert!(hx.amax() < 1e-14);
    }

    #[test]
    fn hessian_rejects_nonsmooth_point() {
        assert!(matches!(
            hessian(&[1.0, 0.0], Exponent::Finite(1.5)),
            Err(Error::NotTwiceDifferentiable)
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_c2(&[1.0, 0.0, 2.0], Exponent::Finite(1.5)).unwrap(),
            Smoothness::NotTwiceSmooth
        );
        assert_eq!(
            classify_c2(&[1.0, 1.0], Exponent::Finite(1.5)).unwrap(),
            Smoothness::TwiceSmooth
        );
        assert_eq!(
            classify_c2(&[1.0, 0.0], Exponent::Finite(3.0)).unwrap(),
            Smoothness::TwiceSmooth
        );
    }

    fn probe_steps() -> Vec<f64> {
        (0..9).map(|k| 10f64.powf(-2.0 - 0.5 * k as f64)).collect()
    }

    #[test]
    fn divergence_probe_slopes() {
        // Slope approaches p - 2 when the diagonal second derivative blows up.
        let pts =
            c2_divergence_probe(&[1.0, 0.0], Exponent::Finite(1.5), 1, 1, &probe_steps()).unwrap();
        let slope = fit_loglog_slope(&pts).unwrap();
        assert!((slope + 0.5).abs() < 0.05, "slope {slope}");

        let pts =
            c2_divergence_probe(&[1.0, 0.0], Exponent::Finite(1.9), 1, 1, &probe_steps()).unwrap();
        let slope = fit_loglog_slope(&pts).unwrap();
        assert!((slope + 0.1).abs() < 0.05, "slope {slope}");

        // Euclidean control: quotients bounded, slope near zero.
        let pts =
            c2_divergence_probe(&[1.0, 0.0], Exponent::Finite(2.0), 1, 1, &probe_steps()).unwrap();
        assert!(pts.iter().all(|(_, q)| q.abs() <= 1.0 + 1e-12));
        let slope = fit_loglog_slope(&pts).unwrap();
        assert!(slope.abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn divergence_probe_off_diagonal_is_flat() {
        // x_i stays zero when perturbing along another axis, so the mixed
        // quotient is identically zero and fits slope 0.
        let pts =
            c2_divergence_probe(&[0.0, 1.0], Exponent::Finite(1.5), 0, 1, &probe_steps()).unwrap();
        assert!(pts.iter().all(|(_, q)| *q == 0.0));
        assert_eq!(fit_loglog_slope(&pts).unwrap(), 0.0);
    }

    #[test]
    fn divergence_probe_preconditions() {
        let steps = probe_steps();
        assert!(matches!(
            c2_divergence_probe(&[1.0, 0.5], Exponent::Finite(1.5), 1, 1, &steps),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            c2_divergence_probe(&[1.0, 0.0], Exponent::Finite(1.0), 1, 1, &steps),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            c2_divergence_probe(&[1.0, 0.0], Exponent::Finite(1.5), 1, 1, &[1e-2, 1e-2]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            fit_loglog_slope(&[(1e-2, 0.5), (1e-3, 0.4), (1e-4, 0.3)]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn exponent_json_round_trip() {
        let j = serde_json::to_string(&Exponent::Finite(1.5)).unwrap();
        assert_eq!(j, "1.5");
        let j = serde_json::to_string(&Exponent::Infinity).unwrap();
        assert_eq!(j, "\"inf\"");
        let e: Exponent = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(e, Exponent::Infinity);
        let e: Exponent = serde_json::from_str("3").unwrap();
        assert_eq!(e, Exponent::Finite(3.0));
    }

    fn arb_exponent() -> impl Strategy<Value = Exponent> {
        prop_oneof![
            (1.0f64..8.0).prop_map(Exponent::Finite),
            Just(Exponent::Infinity),
            Just(Exponent::Finite(1.0)),
        ]
    }

    fn arb_smooth_exponent() -> impl Strategy<Value = f64> {
        1.1f64..5.0
    }

    // Vectors with coordinates bounded away from zero, where all derivative
    // formulas are smooth.
    fn arb_offaxis_vec(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec((0.1f64..2.0, proptest::bool::ANY), n).prop_map(|v| {
            v.into_iter()
                .map(|(m, neg)| if neg { -m } else { m })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(p in 1.0f64..50.0) {
            let e = Exponent::Finite(p);
            let back = e.conjugate().conjugate();
            match (e, back) {
                (Exponent::Finite(a), Exponent::Finite(b)) => {
                    prop_assert!((a - b).abs() <= 1e-14 * a.max(1.0));
                }
                (a, b) => prop_assert_eq!(a, b),
            }
        }

        #[test]
        fn norm_is_positively_homogeneous(
            x in arb_offaxis_vec(2..6),
            t in 0.1f64..10.0,
            e in arb_exponent(),
        ) {
            let scaled: Vec<f64> = x.iter().map(|v| v * t).collect();
            prop_assert!((norm(&scaled, e) - t * norm(&x, e)).abs()
                <= 1e-12 * t * norm(&x, e));
        }

        #[test]
        fn gradient_satisfies_euler_identity(
            x in arb_offaxis_vec(2..6),
            p in arb_smooth_exponent(),
        ) {
            let e = Exponent::Finite(p);
            let g = gradient(&x, e).unwrap();
            let dot: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
            let nrm = norm(&x, e);
            prop_assert!((dot - nrm).abs() <= 1e-10 * nrm);
        }

        #[test]
        fn gradient_has_unit_dual_norm(
            x in arb_offaxis_vec(2..6),
            p in arb_smooth_exponent(),
        ) {
            let e = Exponent::Finite(p);
            let g = gradient(&x, e).unwrap();
            prop_assert!((norm(&g, e.conjugate()) - 1.0).abs() <= 1e-10);
        }

        #[test]
        fn gradient_matches_finite_differences(
            x in arb_offaxis_vec(2..5),
            p in arb_smooth_exponent(),
        ) {
            let e = Exponent::Finite(p);
            let g = gradient(&x, e).unwrap();
            let fd = numdiff::central_gradient(
                |v| norm(v, e), &x, numdiff::default_gradient_step(&x));
            let scale = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (a, b) in g.iter().zip(&fd) {
                prop_assert!((a - b).abs() <= 1e-5 * scale.max(1e-12));
            }
        }

        #[test]
        fn hessian_annihilates_the_point(
            x in arb_offaxis_vec(2..5),
            p in arb_smooth_exponent(),
        ) {
            let e = Exponent::Finite(p);
            let h = hessian(&x, e).unwrap();
            let hx = &h * nalgebra::DVector::from_column_slice(&x);
            prop_assert!(hx.amax() <= 1e-9);
            // symmetry is structural
            for i in 0..x.len() {
                for j in 0..x.len() {
                    prop_assert_eq!(h[(i, j)], h[(j, i)]);
                }
            }
        }
    }
}
