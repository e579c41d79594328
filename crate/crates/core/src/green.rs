//! Green function of `L = d²/dx² + (2/x) d/dx − λ x^(−α)` on `(0, b)` with
//! Dirichlet conditions at both ends.
//!
//! Two homogeneous solutions are used: one regular at the origin,
//! `C₀ x^(−1/2) K_ν(z)`, and one vanishing at `b`,
//! `x^(−1/2) [K_ν(z_b) I_ν(z) − I_ν(z_b) K_ν(z)]`, with `z = 2ν√λ x^(−1/(2ν))`.
//! Because `z → ∞` at the origin, every quantity is carried as a mantissa
//! and an exponent and only combined at the end.

use crate::error::{Error, Result};
use crate::oscillator::PotentialSpec;
use crate::specfun::{ik_scaled, ik_scaled_with_derivatives, BesselOrder};
use crate::weak_coupling::{bessel_argument, ode_residual_of, weight_prefactor, Residual};

/// `mantissa · e^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub mantissa: f64,
    pub exponent: f64,
}

impl ScaledValue {
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * self.exponent.exp()
        }
    }
}

/// Smallest `|C|` accepted before the two solutions count as dependent.
pub const DEPENDENCE_THRESHOLD: f64 = 1e-14;

/// Relative step of the one-sided differences in [`HomSolutionPair::jump`].
pub const JUMP_RELATIVE_STEP: f64 = 1e-5;

/// The two homogeneous solutions on `(0, b)` and their Wronskian constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomSolutionPair {
    order: BesselOrder,
    lambda: f64,
    b: f64,
    prefactor: f64,
    z_b: f64,
    /// `I_ν(z_b) e^(−z_b)`
    i_b: f64,
    /// `K_ν(z_b) e^(z_b)`
    k_b: f64,
    c_constant: f64,
}

impl HomSolutionPair {
    pub fn new(spec: &PotentialSpec, b: f64) -> Result<Self> {
        Self::from_parts(spec.alpha, spec.lambda, b)
    }

    pub fn from_parts(alpha: f64, lambda: f64, b: f64) -> Result<Self> {
        let order = BesselOrder::from_alpha(alpha)?;
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain("lambda", lambda, "(0, inf)"));
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::domain("right endpoint b", b, "(0, inf)"));
        }
        let nu = order.nu();
        let z_b = bessel_argument(nu, lambda, b);
        let at_b = ik_scaled(nu, z_b);
        let mut pair = Self {
            order,
            lambda,
            b,
            prefactor: weight_prefactor(nu, lambda)?,
            z_b,
            i_b: at_b.i,
            k_b: at_b.k,
            c_constant: f64::NAN,
        };
        let c = pair.wronskian_at(0.5 * b)?;
        if !(c.abs() >= DEPENDENCE_THRESHOLD) {
            return Err(Error::DependentSolutions(c.abs()));
        }
        pair.c_constant = c;
        Ok(pair)
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    pub fn nu(&self) -> f64 {
        self.order.nu()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `x² (u₀ u_b′ − u₀′ u_b)`, measured at `b/2` on construction.
    pub fn wronskian_constant(&self) -> f64 {
        self.c_constant
    }

    /// `−C₀ K_ν(z_b) / (2ν)`, the value the Wronskian constant must take.
    pub fn wronskian_closed_form(&self) -> f64 {
        -self.prefactor * self.k_b * (-self.z_b).exp() / (2.0 * self.nu())
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if !(x > 0.0 && x <= self.b) {
            return Err(Error::Domain {
                what: "x",
                value: x,
                domain: "(0, b]",
            });
        }
        Ok(())
    }

    fn z(&self, x: f64) -> f64 {
        bessel_argument(self.nu(), self.lambda, x)
    }

    /// Scaled form of the solution regular at the origin.
    pub fn origin_solution_scaled(&self, x: f64) -> Result<ScaledValue> {
        self.check_x(x)?;
        let z = self.z(x);
        Ok(ScaledValue {
            mantissa: self.prefactor * x.powf(-0.5) * ik_scaled(self.nu(), z).k,
            exponent: -z,
        })
    }

    /// Scaled form of the solution vanishing at `b`.
    pub fn endpoint_solution_scaled(&self, x: f64) -> Result<ScaledValue> {
        self.check_x(x)?;
        let z = self.z(x);
        let ik = ik_scaled(self.nu(), z);
        let gap = z - self.z_b;
        let bracket = self.k_b * ik.i - self.i_b * ik.k * (-2.0 * gap).exp();
        Ok(ScaledValue {
            mantissa: x.powf(-0.5) * bracket,
            exponent: gap,
        })
    }

    /// `C₀ x^(−1/2) K_ν(z(x))`; coincides with the trial weight `W_α`.
    pub fn origin_solution(&self, x: f64) -> Result<f64> {
        Ok(self.origin_solution_scaled(x)?.value())
    }

    /// `x^(−1/2) [K_ν(z_b) I_ν(z) − I_ν(z_b) K_ν(z)]`, zero at `x = b`.
    pub fn endpoint_solution(&self, x: f64) -> Result<f64> {
        Ok(self.endpoint_solution_scaled(x)?.value())
    }

    /// Values and derivatives `(u₀, u₀′, u_b, u_b′)` at `x`, unscaled.
    pub fn solutions_with_derivatives(&self, x: f64) -> Result<[f64; 4]> {
        self.check_x(x)?;
        let nu = self.nu();
        let z = self.z(x);
        let dz = -z / (2.0 * nu * x);
        let d = ik_scaled_with_derivatives(nu, z);
        let s = x.powf(-0.5);
        let down = (-z).exp();
        let up = (z - self.z_b).exp();
        let to_b = (-2.0 * (z - self.z_b)).exp();

        let u0 = self.prefactor * s * d.k * down;
        let du0 = self.prefactor * (-0.5 / x * s * d.k + s * d.dk * dz) * down;
        let ub = s * (self.k_b * d.i - self.i_b * d.k * to_b) * up;
        let dub = (-0.5 / x * s * (self.k_b * d.i - self.i_b * d.k * to_b)
            + s * (self.k_b * d.di - self.i_b * d.dk * to_b) * dz)
            * up;
        Ok([u0, du0, ub, dub])
    }

    /// `x² (u₀ u_b′ − u₀′ u_b)` with analytic derivatives.
    pub fn wronskian_at(&self, x: f64) -> Result<f64> {
        let [u0, du0, ub, dub] = self.solutions_with_derivatives(x)?;
        Ok(x * x * (u0 * dub - du0 * ub))
    }

    /// `G_b(x, ξ) = (ξ²/C) u₀(min) u_b(max)`, combined in scaled form.
    pub fn green(&self, x: f64, xi: f64) -> Result<f64> {
        self.check_x(x)?;
        self.check_x(xi)?;
        let (lo, hi) = if x <= xi { (x, xi) } else { (xi, x) };
        let left = self.origin_solution_scaled(lo)?;
        let right = self.endpoint_solution_scaled(hi)?;
        Ok(self.green_from_scaled(xi, left, right))
    }

    pub(crate) fn green_from_scaled(&self, xi: f64, left: ScaledValue, right: ScaledValue) -> f64 {
        let mantissa = xi * xi / self.c_constant * left.mantissa * right.mantissa;
        if mantissa == 0.0 {
            return 0.0;
        }
        mantissa * (left.exponent + right.exponent).exp()
    }

    /// The same Green function through the continuity and jump conditions:
    /// `A u₀(ξ) = B u_b(ξ)`, `B u_b′(ξ) − A u₀′(ξ) = 1`, solved by Cramer's
    /// rule with the local Wronskian.
    pub fn green_via_system(&self, x: f64, xi: f64) -> Result<f64> {
        self.check_x(x)?;
        let (left_coef, right_coef) = self.matching_coefficients(xi)?;
        if x <= xi {
            Ok(left_coef * self.origin_solution(x)?)
        } else {
            Ok(right_coef * self.endpoint_solution(x)?)
        }
    }

    /// `(A, B)` with `G = A u₀` left of `ξ` and `G = B u_b` right of it.
    pub fn matching_coefficients(&self, xi: f64) -> Result<(f64, f64)> {
        let [u0, du0, ub, dub] = self.solutions_with_derivatives(xi)?;
        let det = u0 * dub - du0 * ub;
        if !(det.abs() > 0.0) {
            return Err(Error::DependentSolutions(det.abs()));
        }
        Ok((ub / det, u0 / det))
    }

    /// `A u₀(ξ) − B u_b(ξ)`: the mismatch of the two branches at `ξ`.
    pub fn continuity_gap(&self, xi: f64) -> Result<f64> {
        let (a, b) = self.matching_coefficients(xi)?;
        Ok(a * self.origin_solution(xi)? - b * self.endpoint_solution(xi)?)
    }

    /// Jump of `∂G/∂x` across `x = ξ`, from one-sided differences with steps
    /// `h, h/2, h/4` (`h = 1e−5·ξ`) and two rounds of Richardson
    /// extrapolation.
    pub fn jump(&self, xi: f64) -> Result<f64> {
        if !(xi > 0.05 * self.b && xi < 0.95 * self.b) {
            return Err(Error::Domain {
                what: "xi",
                value: xi,
                domain: "(0.05 b, 0.95 b)",
            });
        }
        let g0 = self.green(xi, xi)?;
        let one_sided = |sign: f64| -> Result<f64> {
            let h = JUMP_RELATIVE_STEP * xi;
            let mut d = [0.0; 3];
            for (k, slot) in d.iter_mut().enumerate() {
                let step = h / f64::from(1u32 << k);
                *slot = sign * (self.green(xi + sign * step, xi)? - g0) / step;
            }
            let r1 = [2.0 * d[1] - d[0], 2.0 * d[2] - d[1]];
            Ok((4.0 * r1[1] - r1[0]) / 3.0)
        };
        Ok(one_sided(1.0)? - one_sided(-1.0)?)
    }

    /// `L G_b(·, ξ)` at `x ≠ ξ` by central differences.
    pub fn green_residual(&self, x: f64, xi: f64) -> Result<Residual> {
        let h = crate::weak_coupling::FD_RELATIVE_STEP * x;
        if (x - xi).abs() <= 3.0 * h || x + 2.0 * h > self.b {
            return Err(Error::InvalidParameter(format!(
                "x = {x} is too close to xi = {xi} or to b for the difference stencil"
            )));
        }
        ode_residual_of(|t| self.green(t, xi), self.alpha(), self.lambda, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn pair(alpha: f64, lambda: f64, b: f64) -> HomSolutionPair {
        HomSolutionPair::from_parts(alpha, lambda, b).unwrap()
    }

    #[test]
    fn origin_solution_values() {
        let p = pair(4.0, 1.0, 10.0);
        assert!(rel(p.origin_solution(1.0).unwrap(), (-1f64).exp()) < 1e-14);
        assert_eq!(p.origin_solution(1e-4).unwrap(), 0.0);
        let q = pair(6.0, 0.5, 10.0);
        assert!(rel(q.origin_solution(2.0).unwrap(), 0.717_947_503_890_136_75) < 1e-13);
    }

    #[test]
    fn endpoint_solution_values() {
        let p = pair(4.0, 1.0, 10.0);
        assert_eq!(p.endpoint_solution(10.0).unwrap(), 0.0);
        assert!(rel(p.endpoint_solution(5.0).unwrap(), 0.316_755_075_879_423_33) < 1e-12);
        for x in [0.05, 0.3, 1.0, 4.0, 9.9] {
            assert!(p.endpoint_solution(x).unwrap() > 0.0);
        }
        assert!(p.endpoint_solution(10.5).is_err());
        assert!(p.endpoint_solution(0.0).is_err());
    }

    #[test]
    fn wronskian_constant_oracles() {
        let p = pair(4.0, 1.0, 10.0);
        assert!(rel(p.wronskian_constant(), -2.861_347_153_139_551_95) < 1e-12);
        assert!(rel(p.wronskian_closed_form(), -2.861_347_153_139_551_95) < 1e-13);
        let q = pair(6.0, 0.5, 8.0);
        assert!(rel(q.wronskian_constant(), -5.254_970_274_531_937_04) < 1e-12);
        let c3 = p.wronskian_at(10.0 / 3.0).unwrap();
        assert!(rel(c3, p.wronskian_constant()) < 1e-9);
        assert!(rel(p.wronskian_at(1.0).unwrap(), p.wronskian_at(2.0).unwrap()) < 1e-9);
    }

    #[test]
    fn green_examples() {
        let p = pair(4.0, 1.0, 10.0);
        let g12 = p.green(1.0, 2.0).unwrap();
        assert!(rel(g12, -0.667_997_733_357_241_64) < 1e-12);
        let g21 = p.green(2.0, 1.0).unwrap();
        assert!(rel(g12 / 4.0, g21 / 1.0) < 1e-10);
        let direct = p.origin_solution(1.0).unwrap() * p.endpoint_solution(1.0).unwrap() / p.wronskian_constant();
        assert!(rel(p.green(1.0, 1.0).unwrap(), direct) < 1e-14);
        assert_eq!(p.green(1e-4, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn system_path_matches() {
        let p = pair(4.0, 1.0, 10.0);
        for (x, xi) in [(1.0, 2.0), (3.0, 0.7), (0.5, 9.0), (6.0, 6.5)] {
            let a = p.green(x, xi).unwrap();
            let b = p.green_via_system(x, xi).unwrap();
            assert!(rel(a, b) < 1e-12, "({x}, {xi}) {a} {b}");
        }
    }

    #[test]
    fn jump_and_continuity() {
        let p = pair(4.0, 1.0, 10.0);
        for xi in [0.51, 2.0, 8.0] {
            assert!((p.jump(xi).unwrap() - 1.0).abs() < 1e-5, "xi = {xi}");
            assert!(p.continuity_gap(xi).unwrap().abs() < 1e-9);
        }
        assert!(p.jump(0.2).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(HomSolutionPair::from_parts(2.1, 1.0, 10.0).is_err());
        assert!(HomSolutionPair::from_parts(4.0, 0.0, 10.0).is_err());
        assert!(HomSolutionPair::from_parts(4.0, 1.0, -1.0).is_err());
    }
}
