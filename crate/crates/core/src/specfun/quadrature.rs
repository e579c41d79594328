use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest rule size served by [`gauss_legendre`].
pub const MAX_NODES: usize = 4096;

/// Gauss–Legendre nodes (ascending) and weights on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `(P_n(t), P_n′(t))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (t * p1 - p0) / (t * t - 1.0))
}

/// `n`-point Gauss–Legendre rule on `(a, b)`, exact for polynomials of
/// degree `≤ 2n − 1`. Roots by Newton iteration from Chebyshev-like guesses.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<GaussLegendre> {
    if n == 0 || n > MAX_NODES {
        return Err(Error::domain("Gauss-Legendre size", n as f64, "[1, 4096]"));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "quadrature interval ({a}, {b}) must be finite with a < b"
        )));
    }
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                method: "Gauss-Legendre Newton iteration",
                iterations: 100,
            });
        }
        let (_, dp) = legendre_with_derivative(n, t);
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        // t is the i-th largest root; place it symmetrically
        nodes[i] = mid - half * t;
        nodes[n - 1 - i] = mid + half * t;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    Ok(GaussLegendre { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule() {
        let q = gauss_legendre(2, -1.0, 1.0).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((q.nodes[0] + r).abs() < 1e-15);
        assert!((q.nodes[1] - r).abs() < 1e-15);
        assert!((q.weights[0] - 1.0).abs() < 1e-15);
        assert!((q.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cubic_is_exact_with_two_points() {
        let q = gauss_legendre(2, 0.0, 1.0).unwrap();
        assert!((q.integrate(|x| x * x * x) - 0.25).abs() < 1e-16);
    }

    #[test]
    fn polynomial_exactness_up_to_2n_minus_1() {
        for n in [3, 7, 20, 64] {
            let q = gauss_legendre(n, -0.5, 2.0).unwrap();
            for deg in 0..2 * n {
                let exact = (2f64.powi(deg as i32 + 1) - (-0.5f64).powi(deg as i32 + 1)) / (deg as f64 + 1.0);
                let got = q.integrate(|x| x.powi(deg as i32));
                assert!(((got - exact) / exact.abs().max(1.0)).abs() < 1e-12, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn nodes_inside_and_weights_positive() {
        for n in [1, 2, 5, 333, 4096] {
            let q = gauss_legendre(n, 1.0, 3.0).unwrap();
            assert!(q.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(q.nodes.iter().all(|&x| x > 1.0 && x < 3.0));
            assert!(q.weights.iter().all(|&w| w > 0.0));
            assert!((q.weights.iter().sum::<f64>() - 2.0).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn gaussian_moment_on_truncated_half_line() {
        let q = gauss_legendre(120, 0.0, 12.0).unwrap();
        let got = q.integrate(|x| x * x * (-x * x).exp());
        assert!((got - PI.sqrt() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4097, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
    }
}
