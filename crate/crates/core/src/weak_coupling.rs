//! Trial-function weights and the small-coupling eigenvalue expansion.
//!
//! `W_α(x; λ)` solves `W″ + (2/x) W′ − λ x^(−α) W = 0` with `W → 1` at
//! infinity and `W → 0` at the origin. Multiplying an unperturbed odd
//! oscillator state `u_i` by `W_α` produces a trial function whose energy
//! shift is, to leading order, `c_i λ^ν` with `ν = 1/(α − 2)`.

use crate::error::{Error, Result};
use crate::fit::{fit_power_law, LineFit};
use crate::oscillator::{exact_spectrum, PotentialSpec, RadialGrid};
use crate::specfun::{gamma, gauss_legendre, ik_scaled, BesselOrder, HalfLineState};

/// Exponent of `e^(−z)` below which `W_α` is reported as exactly zero.
pub const UNDERFLOW_EXPONENT: f64 = -700.0;

/// Relative finite-difference step used by the residual checks.
pub const FD_RELATIVE_STEP: f64 = 1e-4;

/// Upper end of the truncated half line used for matrix elements.
pub const MATRIX_ELEMENT_CUTOFF: f64 = 12.0;
const MATRIX_ELEMENT_NODES: usize = 200;

/// Coupling above which the expansion is flagged as outside its regime.
pub const SMALL_COUPLING_LIMIT: f64 = 0.5;

/// How the odd oscillator states are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Unit norm on `[0, ∞)`: the eigenfunctions of the problem with a wall.
    #[default]
    HalfLine,
    /// Unit norm on the whole line (half of it on `[0, ∞)`).
    FullLine,
}

impl Normalization {
    fn state(self, i: usize) -> Result<HalfLineState> {
        match self {
            Normalization::HalfLine => HalfLineState::new(i),
            Normalization::FullLine => HalfLineState::full_line_normalized(i),
        }
    }
}

/// A residual together with the magnitude it should be judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.abs()
        } else {
            self.value.abs() / self.scale
        }
    }

    pub fn within(&self, tolerance: f64) -> bool {
        self.value.abs() <= tolerance * self.scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionResult {
    /// Unperturbed eigenvalue `2i + 1`.
    pub e0: f64,
    /// Prefactor of `λ^ν`.
    pub coefficient: f64,
    /// `ν = 1/(α − 2)`.
    pub exponent: f64,
    /// `e0 + coefficient·λ^ν`.
    pub value: f64,
    /// Empirical remainder order, when one has been fitted.
    pub order_estimate: Option<f64>,
    /// Set when `λ` exceeds [`SMALL_COUPLING_LIMIT`].
    pub beyond_small_coupling: bool,
}

/// `2 ν^ν λ^(ν/2) / Γ(ν)`, the factor that makes `W → 1` at infinity.
pub(crate) fn weight_prefactor(nu: f64, lambda: f64) -> Result<f64> {
    Ok(2.0 * nu.powf(nu) * lambda.powf(0.5 * nu) / gamma(nu)?)
}

/// `z(x) = 2ν√λ x^(−1/(2ν))`.
pub(crate) fn bessel_argument(nu: f64, lambda: f64, x: f64) -> f64 {
    2.0 * nu * lambda.sqrt() * x.powf(-0.5 / nu)
}

fn check_weight_args(lambda: f64, x: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("lambda", lambda, "(0, inf)"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("x", x, "(0, inf)"));
    }
    Ok(())
}

/// `prefactor · x^(−1/2) K_ν(z(x))` for any supported order, evaluated
/// through the scaled Bessel function so that small `x` cannot overflow.
pub(crate) fn regular_weight(order: BesselOrder, lambda: f64, x: f64) -> Result<f64> {
    check_weight_args(lambda, x)?;
    let nu = order.nu();
    let z = bessel_argument(nu, lambda, x);
    if -z < UNDERFLOW_EXPONENT {
        return Ok(0.0);
    }
    let k = ik_scaled(nu, z).k;
    Ok(weight_prefactor(nu, lambda)? * x.powf(-0.5) * k * (-z).exp())
}

/// `W_α(x; λ)` for `α ≥ 4`, normalized to tend to 1 at infinity.
pub fn w_alpha(alpha: f64, lambda: f64, x: f64) -> Result<f64> {
    if !(alpha >= 4.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha", alpha, "[4, inf)"));
    }
    regular_weight(BesselOrder::from_alpha(alpha)?, lambda, x)
}

/// Five-point central first and second derivatives with step `h`.
fn central_derivatives(f: &mut impl FnMut(f64) -> Result<f64>, x: f64, h: f64) -> Result<(f64, f64, f64)> {
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let f0 = f(x)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    Ok((f0, d1, d2))
}

/// `f″ + (2/x) f′ − λ x^(−α) f` for an arbitrary `f`, by central differences
/// with step `1e−4·x`. The scale is `1 + |f″|`.
pub fn ode_residual_of(mut f: impl FnMut(f64) -> Result<f64>, alpha: f64, lambda: f64, x: f64) -> Result<Residual> {
    if !(x > 0.0) {
        return Err(Error::domain("x", x, "(0, inf)"));
    }
    let (f0, d1, d2) = central_derivatives(&mut f, x, FD_RELATIVE_STEP * x)?;
    Ok(Residual {
        value: d2 + 2.0 / x * d1 - lambda * x.powf(-alpha) * f0,
        scale: 1.0 + d2.abs(),
    })
}

/// Residual of `W_α` in its defining equation.
pub fn w_ode_residual(alpha: f64, lambda: f64, x: f64) -> Result<Residual> {
    w_alpha(alpha, lambda, x)?;
    ode_residual_of(|t| w_alpha(alpha, lambda, t), alpha, lambda, x)
}

/// `[H₀ − E_i + λ x^(−α)](W u_i) − 2 W′ (u_i/x − u_i′)`, scaled by the
/// larger of the two sides.
///
/// `u_i` and its derivative are exact; `(W u_i)″` and `W′` come from
/// five-point central differences.
pub fn operator_identity_residual(i: usize, alpha: f64, lambda: f64, x: f64) -> Result<Residual> {
    let state = HalfLineState::new(i)?;
    w_alpha(alpha, lambda, x)?;
    let h = FD_RELATIVE_STEP * x;
    let (w, dw, _) = central_derivatives(&mut |t| w_alpha(alpha, lambda, t), x, h)?;
    let (_, _, d2_product) = central_derivatives(&mut |t| Ok(w_alpha(alpha, lambda, t)? * state.value(t)), x, h)?;
    let u = state.value(x);
    let du = state.derivative(x);
    let lhs = -d2_product + (x * x - state.energy() + lambda * x.powf(-alpha)) * w * u;
    let rhs = 2.0 * dw * (u / x - du);
    Ok(Residual {
        value: lhs - rhs,
        scale: lhs.abs().max(rhs.abs()),
    })
}

/// `∫₀^∞ u_i x^(−2) (u_i/x − u_i′) dx` for half-line-normalized `u_i`.
pub fn matrix_element(i: usize) -> Result<f64> {
    matrix_element_normalized(i, Normalization::HalfLine)
}

pub fn matrix_element_normalized(i: usize, normalization: Normalization) -> Result<f64> {
    let state = normalization.state(i)?;
    let rule = gauss_legendre(MATRIX_ELEMENT_NODES, 0.0, MATRIX_ELEMENT_CUTOFF)?;
    Ok(rule.integrate(|x| {
        let u = state.value(x);
        u * (u / x - state.derivative(x)) / (x * x)
    }))
}

/// Leading coefficient for `α = 4`: twice the matrix element.
pub fn square_root_coefficient(i: usize) -> Result<f64> {
    Ok(2.0 * matrix_element(i)?)
}

/// `2 Γ(1−ν)/Γ(1+ν) ν^(2ν) M_i` with `M_i` the matrix element.
pub fn expansion_coefficient(i: usize, alpha: f64, normalization: Normalization) -> Result<f64> {
    let nu = expansion_exponent(alpha)?;
    let m = matrix_element_normalized(i, normalization)?;
    Ok(2.0 * gamma(1.0 - nu)? / gamma(1.0 + nu)? * nu.powf(2.0 * nu) * m)
}

fn expansion_exponent(alpha: f64) -> Result<f64> {
    if !(alpha >= 4.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha", alpha, "[4, inf)"));
    }
    Ok(1.0 / (alpha - 2.0))
}

/// `E_i(λ) ≈ (2i + 1) + c_i λ^ν` with half-line-normalized states.
pub fn energy_expansion(i: usize, alpha: f64, lambda: f64) -> Result<ExpansionResult> {
    energy_expansion_normalized(i, alpha, lambda, Normalization::HalfLine)
}

pub fn energy_expansion_normalized(
    i: usize,
    alpha: f64,
    lambda: f64,
    normalization: Normalization,
) -> Result<ExpansionResult> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::domain("lambda", lambda, "[0, inf)"));
    }
    let exponent = expansion_exponent(alpha)?;
    let e0 = normalization.state(i)?.energy();
    let coefficient = expansion_coefficient(i, alpha, normalization)?;
    let value = if lambda == 0.0 {
        e0
    } else {
        e0 + coefficient * lambda.powf(exponent)
    };
    Ok(ExpansionResult {
        e0,
        coefficient,
        exponent,
        value,
        order_estimate: None,
        beyond_small_coupling: lambda > SMALL_COUPLING_LIMIT,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderPoint {
    pub lambda: f64,
    pub exact: f64,
    pub expansion: f64,
}

impl RemainderPoint {
    pub fn difference(&self) -> f64 {
        self.exact - self.expansion
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemainderFit {
    pub points: Vec<RemainderPoint>,
    /// Power-law fit of `|exact − expansion|` against `λ`.
    pub fit: LineFit,
}

/// The exact level corresponding to the odd state `i`, from the
/// Richardson-extrapolated finite-difference spectrum.
pub fn exact_level(i: usize, alpha: f64, lambda: f64, grid: &RadialGrid) -> Result<f64> {
    HalfLineState::new(i)?;
    let k = (i + 1) / 2;
    let spec = PotentialSpec::spiked(alpha, lambda)?;
    Ok(exact_spectrum(&spec, grid, k, true)?.eigenvalues[k - 1])
}

/// Compares the expansion with the exact level at each `λ` and fits the
/// power law of the difference.
pub fn remainder_order(i: usize, alpha: f64, lambdas: &[f64], grid: &RadialGrid) -> Result<RemainderFit> {
    let points = lambdas
        .iter()
        .map(|&lambda| {
            Ok(RemainderPoint {
                lambda,
                exact: exact_level(i, alpha, lambda, grid)?,
                expansion: energy_expansion(i, alpha, lambda)?.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = points.iter().map(|p| p.lambda).collect();
    let ys: Vec<f64> = points.iter().map(RemainderPoint::difference).collect();
    let fit = fit_power_law(&xs, &ys)?;
    Ok(RemainderFit { points, fit })
}
