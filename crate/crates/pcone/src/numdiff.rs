//! Central finite differences, used as the independent oracle for analytic
//! derivatives throughout the test suites and by the CLI.

use nalgebra::DMatrix;

/// Default gradient step: `1e-6 * max(1, ||x||_inf)`.
pub fn default_gradient_step(x: &[f64]) -> f64 {
    1e-6 * x.iter().fold(1.0_f64, |m, v| m.max(v.abs()))
}

/// Default Hessian step: `3e-4 * max(1, ||x||_inf)`.
///
/// The second-difference stencil divides the function's own evaluation
/// noise (~1e-15 relative for powf-based norms) by `h^2`, so steps near
/// 1e-5 leave a roundoff floor of ~3e-5 in the result; `h ~ eps_f^(1/4)`
/// balances that against the `h^2` truncation term.
pub fn default_hessian_step(x: &[f64]) -> f64 {
    3e-4 * x.iter().fold(1.0_f64, |m, v| m.max(v.abs()))
}

/// Central-difference gradient `(f(x + h e_i) - f(x - h e_i)) / (2h)`.
pub fn central_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut xp = x.to_vec();
    let mut g = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        xp[i] = x[i] + h;
        let fp = f(&xp);
        xp[i] = x[i] - h;
        let fm = f(&xp);
        xp[i] = x[i];
        g.push((fp - fm) / (2.0 * h));
    }
    g
}

/// Central-difference Hessian via the four-point mixed stencil.
pub fn central_hessian<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> DMatrix<f64> {
    let n = x.len();
    let mut out = DMatrix::zeros(n, n);
    let mut xp = x.to_vec();
    let f0 = f(x);
    for i in 0..n {
        // diagonal: (f(x+h) - 2 f(x) + f(x-h)) / h^2
        xp[i] = x[i] + h;
        let fp = f(&xp);
        xp[i] = x[i] - h;
        let fm = f(&xp);
        xp[i] = x[i];
        out[(i, i)] = (fp - 2.0 * f0 + fm) / (h * h);
        for j in (i + 1)..n {
            xp[i] = x[i] + h;
            xp[j] = x[j] + h;
            let fpp = f(&xp);
            xp[j] = x[j] - h;
            let fpm = f(&xp);
            xp[i] = x[i] - h;
            xp[j] = x[j] + h;
            let fmp = f(&xp);
            xp[j] = x[j] - h;
            let fmm = f(&xp);
            xp[i] = x[i];
            xp[j] = x[j];
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_gradient_and_hessian() {
        // f(x) = x0^2 + 3 x0 x1 + 2 x1^2
        let f = |v: &[f64]| v[0] * v[0] + 3.0 * v[0] * v[1] + 2.0 * v[1] * v[1];
        let x = [1.0, -2.0];
        let g = central_gradient(f, &x, 1e-6);
        assert_relative_eq!(g[0], 2.0 * x[0] + 3.0 * x[1], max_relative = 1e-8);
        assert_relative_eq!(g[1], 3.0 * x[0] + 4.0 * x[1], max_relative = 1e-8);
        let h = central_hessian(f, &x, 1e-4);
        assert_relative_eq!(h[(0, 0)], 2.0, max_relative = 1e-5);
        assert_relative_eq!(h[(0, 1)], 3.0, max_relative = 1e-5);
        assert_relative_eq!(h[(1, 1)], 4.0, max_relative = 1e-5);
    }
}
