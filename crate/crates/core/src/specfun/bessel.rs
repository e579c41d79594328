//! Modified Bessel functions `I_ν` and `K_ν` of real order and positive
//! real argument.
//!
//! The main evaluator works with exponentially scaled values
//! `I_ν(z)·e^(−z)` and `K_ν(z)·e^(z)` so that products such as
//! `K_ν(z₁)·I_ν(z₂)` can be formed for arguments far outside the range where
//! the unscaled functions are representable.
//!
//! Routes, by argument:
//!
//! - `K`: Temme's series for the reduced order `|μ| ≤ 1/2` when `z < 2`,
//!   Steed's continued fraction (CF2) when `2 ≤ z ≤ 40`, then forward
//!   recurrence up to `ν`. Hankel's expansion above `z = 40`.
//! - `I`: the power series (all terms positive) for `z ≤ 25`, the continued
//!   fraction CF1 plus the Wronskian with `K` on `(25, 40]`, Hankel's
//!   expansion above.
//!
//! Two further routes, [`bessel_k_reflection`] and [`bessel_k_asymptotic`],
//! are kept as independent evaluators for cross-checking.

use std::f64::consts::PI;

use super::gamma::{recip_gamma, temme_gammas};
use crate::error::{Error, Result};

/// Smallest argument accepted by the public evaluators.
pub const Z_MIN: f64 = 1e-8;
/// Largest argument accepted by the public evaluators.
pub const Z_MAX: f64 = 1e4;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-280;
const MAX_ITER: usize = 20_000;
const TEMME_Z: f64 = 2.0;
const SERIES_Z: f64 = 25.0;
const HANKEL_Z: f64 = 40.0;

/// Order `ν` of the Bessel functions, tied to the inverse-power exponent
/// through `ν = 1/(α − 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    nu: f64,
    alpha: f64,
}

impl BesselOrder {
    /// Largest supported order.
    pub const MAX_NU: f64 = 5.0;

    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu <= Self::MAX_NU) {
            return Err(Error::domain("Bessel order nu", nu, "(0, 5]"));
        }
        Ok(Self {
            nu,
            alpha: 2.0 + 1.0 / nu,
        })
    }

    /// Order belonging to the potential `x^(−α)`; requires `α ≥ 2.2` so that
    /// `ν ≤ 5`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 2.0) || !alpha.is_finite() {
            return Err(Error::domain("alpha", alpha, "(2, inf)"));
        }
        let nu = 1.0 / (alpha - 2.0);
        if nu > Self::MAX_NU {
            return Err(Error::domain("alpha", alpha, "[2.2, inf) (nu = 1/(alpha-2) <= 5)"));
        }
        Ok(Self { nu, alpha })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// A value stored as `mantissa · exp(scale_exponent)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledBesselValue {
    pub mantissa: f64,
    pub scale_exponent: f64,
}

impl ScaledBesselValue {
    pub fn value(&self) -> f64 {
        self.mantissa * self.scale_exponent.exp()
    }
}

fn check_argument(z: f64) -> Result<()> {
    if !(Z_MIN..=Z_MAX).contains(&z) {
        return Err(Error::domain("Bessel argument z", z, "[1e-8, 1e4]"));
    }
    Ok(())
}

fn finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(what))
    }
}

/// `I_ν(z)` returned as `I_ν(z)·e^(−z)` with scale exponent `z`.
pub fn bessel_i_scaled(order: BesselOrder, z: f64) -> Result<ScaledBesselValue> {
    check_argument(z)?;
    Ok(ScaledBesselValue {
        mantissa: ik_scaled(order.nu, z).i,
        scale_exponent: z,
    })
}

/// `K_ν(z)` returned as `K_ν(z)·e^(z)` with scale exponent `−z`.
pub fn bessel_k_scaled(order: BesselOrder, z: f64) -> Result<ScaledBesselValue> {
    check_argument(z)?;
    Ok(ScaledBesselValue {
        mantissa: ik_scaled(order.nu, z).k,
        scale_exponent: -z,
    })
}

/// `I_ν(z)`; fails with [`Error::Overflow`] once `e^z` leaves the f64 range.
pub fn bessel_i(order: BesselOrder, z: f64) -> Result<f64> {
    finite(bessel_i_scaled(order, z)?.value(), "I_nu(z)")
}

/// `K_ν(z)`; underflows to zero for large `z`.
pub fn bessel_k(order: BesselOrder, z: f64) -> Result<f64> {
    Ok(bessel_k_scaled(order, z)?.value())
}

/// `I_ν′(z) = I_{ν+1}(z) + (ν/z) I_ν(z)`.
pub fn bessel_i_derivative(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    let d = ik_scaled_with_derivatives(order.nu, z);
    finite(d.di * z.exp(), "I_nu'(z)")
}

/// `K_ν′(z) = −K_{ν+1}(z) + (ν/z) K_ν(z)`.
pub fn bessel_k_derivative(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    let d = ik_scaled_with_derivatives(order.nu, z);
    finite(d.dk * (-z).exp(), "K_nu'(z)")
}

/// Scaled pair `I_ν(z) e^(−z)`, `K_ν(z) e^(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct IkScaled {
    pub i: f64,
    pub k: f64,
    /// `I_ν′(z) e^(−z)`
    pub di: f64,
    /// `K_ν′(z) e^(z)`
    pub dk: f64,
}

/// Scaled `I_ν`, `K_ν` for any `ν ≥ 0`, `z > 0` (no range cap). The
/// derivative fields are left as NaN; see [`ik_scaled_with_derivatives`].
pub(crate) fn ik_scaled(nu: f64, z: f64) -> IkScaled {
    debug_assert!(nu >= 0.0 && z > 0.0);
    let (i, k) = if z > HANKEL_Z {
        (hankel_i_scaled(nu, z), hankel_k_scaled(nu, z))
    } else {
        let kr = k_scaled_pair(nu, z);
        let i = if z <= SERIES_Z {
            i_series(nu, z) * (-z).exp()
        } else {
            i_from_wronskian(nu, z, kr)
        };
        (i, kr.0)
    };
    IkScaled {
        i,
        k,
        di: f64::NAN,
        dk: f64::NAN,
    }
}

/// Scaled values and first derivatives, the latter from the order
/// recurrences `I_ν′ = I_{ν+1} + (ν/z) I_ν`, `K_ν′ = −K_{ν+1} + (ν/z) K_ν`.
pub(crate) fn ik_scaled_with_derivatives(nu: f64, z: f64) -> IkScaled {
    let base = ik_scaled(nu, z);
    let up = ik_scaled(nu + 1.0, z);
    IkScaled {
        di: up.i + nu / z * base.i,
        dk: -up.k + nu / z * base.k,
        ..base
    }
}

/// `(K_ν(z) e^z, K_{ν+1}(z) e^z)` via Temme / Steed and forward recurrence.
fn k_scaled_pair(nu: f64, z: f64) -> (f64, f64) {
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (mut k_mu, mut k_mu1) = if z < TEMME_Z {
        let (k0, k1) = temme_k(mu, z);
        let s = z.exp();
        (k0 * s, k1 * s)
    } else {
        steed_k_scaled(mu, z)
    };
    let two_over_z = 2.0 / z;
    for step in 1..=(nl as usize) {
        let next = (mu + step as f64) * two_over_z * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    (k_mu, k_mu1)
}

/// Temme's series for `K_μ(z)` and `K_{μ+1}(z)`, `|μ| ≤ 1/2`, small `z`.
fn temme_k(mu: f64, z: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let half_z = 0.5 * z;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -half_z.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let quarter_z2 = half_z * half_z;
    let mut sum1 = p;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= quarter_z2 / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / z)
}

/// Steed's CF2 (Thompson–Barnett form) for `K_μ(z) e^z`, `K_{μ+1}(z) e^z`.
fn steed_k_scaled(mu: f64, z: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    let h = a1 * h;
    let k_mu = (PI / (2.0 * z)).sqrt() / s;
    let k_mu1 = k_mu * (mu + z + 0.5 - h) / z;
    (k_mu, k_mu1)
}

/// Power series `I_ν(z) = Σ (z/2)^(2k+ν) / (k! Γ(k+ν+1))`, unscaled.
fn i_series(nu: f64, z: f64) -> f64 {
    let half_z = 0.5 * z;
    let quarter_z2 = half_z * half_z;
    let mut term = (nu * half_z.ln()).exp() * recip_gamma(nu + 1.0);
    let mut sum = term;
    for k in 1..MAX_ITER {
        let fk = k as f64;
        term *= quarter_z2 / (fk * (fk + nu));
        sum += term;
        if term < sum * EPS {
            break;
        }
    }
    sum
}

/// `I_ν(z) e^(−z)` from the CF1 ratio `I_{ν+1}/I_ν` and the Wronskian
/// `I_ν K_{ν+1} + I_{ν+1} K_ν = 1/z`.
fn i_from_wronskian(nu: f64, z: f64, k_scaled: (f64, f64)) -> f64 {
    let ratio = cf1_ratio(nu, z);
    1.0 / (z * (k_scaled.1 + ratio * k_scaled.0))
}

/// `I_{ν+1}(z)/I_ν(z)` by the modified Lentz method.
fn cf1_ratio(nu: f64, z: f64) -> f64 {
    // I_{ν+1}/I_ν = 1/(2(ν+1)/z + 1/(2(ν+2)/z + ...))
    let mut f = FPMIN;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..MAX_ITER {
        let b = 2.0 * (nu + k as f64) / z;
        d = b + d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    // Lentz started from f0 = tiny, b0 = 0, a_k = 1, so f = 1/(b1 + 1/(b2 + ...))
    f
}

fn hankel_terms(nu: f64, z: f64, alternate: bool) -> f64 {
    let four_nu2 = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let fk = k as f64;
        let odd = 2.0 * fk - 1.0;
        let next = term * (four_nu2 - odd * odd) / (8.0 * fk * z);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += if alternate && k % 2 == 1 { -term } else { term };
        if term.abs() < EPS * sum.abs() {
            break;
        }
    }
    sum
}

fn hankel_k_scaled(nu: f64, z: f64) -> f64 {
    (PI / (2.0 * z)).sqrt() * hankel_terms(nu, z, false)
}

fn hankel_i_scaled(nu: f64, z: f64) -> f64 {
    hankel_terms(nu, z, true) / (2.0 * PI * z).sqrt()
}

/// `K_ν(z)` from the reflection formula `(π/2)(I_{−ν} − I_ν)/sin(νπ)` with
/// both `I` from their power series.
///
/// Independent of the main evaluator. Loses roughly `e^(2z)·ε` relative
/// accuracy to cancellation, so it is only useful for `z ≲ 5`. Integer
/// orders (where the formula degenerates) are rejected.
pub fn bessel_k_reflection(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    let nu = order.nu;
    let sin_nu_pi = (nu * PI).sin();
    if sin_nu_pi.abs() < 1e-6 {
        return Err(Error::InvalidParameter(format!(
            "reflection formula needs a non-integer order, got nu = {nu}"
        )));
    }
    Ok(0.5 * PI * (i_series_signed(-nu, z) - i_series(nu, z)) / sin_nu_pi)
}

/// Power series for `I_{ν}` valid for negative non-integer `ν`.
fn i_series_signed(nu: f64, z: f64) -> f64 {
    let half_z = 0.5 * z;
    let quarter_z2 = half_z * half_z;
    let mut sum = 0.0;
    let mut power = (nu * half_z.ln()).exp();
    let mut factorial = 1.0;
    for k in 0..MAX_ITER {
        let fk = k as f64;
        if k > 0 {
            power *= quarter_z2;
            factorial *= fk;
        }
        let term = power / factorial * recip_gamma(fk + nu + 1.0);
        sum += term;
        if fk + nu > 0.0 && term.abs() < EPS * sum.abs() {
            break;
        }
    }
    sum
}

/// `K_ν(z)` from Hankel's large-argument expansion truncated at its smallest
/// term. The truncation error is of order `e^(−2z)`, so this is only
/// accurate for large `z`.
pub fn bessel_k_asymptotic(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    Ok(hankel_k_scaled(order.nu, z) * (-z).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn order_round_trips_through_alpha() {
        for &nu in &[0.1, 0.25, 0.5, 1.0, 1.0 / 3.0, 4.9, 5.0] {
            let o = BesselOrder::new(nu).unwrap();
            let back = BesselOrder::from_alpha(o.alpha()).unwrap();
            assert!(rel(back.nu(), nu) < 1e-15);
        }
        assert_eq!(BesselOrder::from_alpha(4.0).unwrap().nu(), 0.5);
        assert_eq!(BesselOrder::from_alpha(3.0).unwrap().nu(), 1.0);
    }

    #[test]
    fn order_range_is_enforced() {
        assert!(BesselOrder::new(0.0).is_err());
        assert!(BesselOrder::new(5.01).is_err());
        assert!(BesselOrder::from_alpha(2.0).is_err());
        assert!(BesselOrder::from_alpha(2.1).is_err());
        assert!(BesselOrder::from_alpha(f64::INFINITY).is_err());
    }

    #[test]
    fn half_integer_closed_forms() {
        let half = order(0.5);
        let i1 = (2.0 / PI).sqrt() * 1f64.sinh();
        assert!(rel(bessel_i(half, 1.0).unwrap(), i1) < 1e-14);
        assert!(rel(bessel_k(half, 1.0).unwrap(), (PI / 2.0).sqrt() * (-1f64).exp()) < 1e-14);
        assert!(rel(bessel_k(half, 2.0).unwrap(), 0.5 * PI.sqrt() * (-2f64).exp()) < 1e-14);
        for &z in &[1e-8, 0.01, 0.7, 3.0, 19.0, 30.0, 45.0, 300.0] {
            let k = (PI / (2.0 * z)).sqrt();
            assert!(rel(bessel_k_scaled(half, z).unwrap().mantissa, k) < 1e-14, "z = {z}");
            let i = (2.0 / (PI * z)).sqrt() * 0.5 * (-(-2.0 * z).exp_m1());
            assert!(rel(bessel_i_scaled(half, z).unwrap().mantissa, i) < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn domain_is_enforced() {
        assert!(bessel_i(order(1.0), 0.0).is_err());
        assert!(bessel_k(order(1.0), 1e-9).is_err());
        assert!(bessel_k(order(1.0), 2e4).is_err());
        assert!(matches!(bessel_i(order(1.0), 9e3), Err(Error::Overflow(_))));
        assert!(bessel_i_scaled(order(1.0), 9e3).is_ok());
    }

    #[test]
    fn routes_agree_at_the_switch_points() {
        for &nu in &[0.2, 1.0, 2.5, 5.0, 6.0] {
            for &z in &[TEMME_Z, SERIES_Z, HANKEL_Z] {
                let below = ik_scaled(nu, z * (1.0 - 1e-12));
                let above = ik_scaled(nu, z * (1.0 + 1e-12));
                assert!(
                    rel(below.k, above.k) < 1e-11,
                    "K nu={nu} z={z} {}",
                    rel(below.k, above.k)
                );
                assert!(
                    rel(below.i, above.i) < 1e-11,
                    "I nu={nu} z={z} {}",
                    rel(below.i, above.i)
                );
            }
        }
    }

    #[test]
    fn reflection_rejects_integer_orders() {
        assert!(bessel_k_reflection(order(2.0), 1.0).is_err());
        assert!(bessel_k_reflection(order(0.3), 1.0).is_ok());
    }
}
