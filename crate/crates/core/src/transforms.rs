//! Two rewritings of the radial equation with a strong inverse-power pole.
//!
//! The power substitution `ρ = r^(1/ε)` turns
//! `ψ″ + (E − b/r² − a/r^p) ψ = 0` into
//! `φ″ + ((1−ε)/ρ) φ′ + ε²(E ρ^(2ε) − a ρ^((2−p)ε) − b)/ρ² φ = 0`,
//! which approaches an equation with a regular singular point as `ε → 0`.
//!
//! The factorization `φ = A e^B e^(−μr²/2)` with `B′² = S` moves the
//! singular part of `μ²r² + S(r)` into the exponent and leaves a linear
//! equation for the amplitude `A`.

use crate::error::{Error, Result};
use crate::weak_coupling::Residual;

/// Parameters of the power substitution. `epsilon` is the reciprocal of the
/// exponent in `ρ = r^(1/ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSpec {
    pub energy: f64,
    pub a: f64,
    pub b_coef: f64,
    pub p: f64,
    pub epsilon: f64,
}

impl TransformSpec {
    pub fn new(energy: f64, a: f64, b_coef: f64, p: f64, epsilon: f64) -> Result<Self> {
        if !(p > 2.0) || !p.is_finite() {
            return Err(Error::domain("pole order p", p, "(2, inf)"));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::domain("epsilon", epsilon, "(0, 1]"));
        }
        for (what, v) in [("E", energy), ("a", a), ("b", b_coef)] {
            if !v.is_finite() {
                return Err(Error::domain(what, v, "finite reals"));
            }
        }
        Ok(Self {
            energy,
            a,
            b_coef,
            p,
            epsilon,
        })
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.energy, self.a, self.b_coef, self.p, epsilon)
    }
}

/// Coefficients of `φ″ + first_order·φ′ + zeroth_order·φ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub first_order: f64,
    pub zeroth_order: f64,
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::domain("rho", rho, "(0, inf)"));
    }
    Ok(())
}

/// `e^t − 1 − t` without cancellation for small `t`.
fn exp_tail(t: f64) -> f64 {
    if t.abs() < 0.1 {
        let mut term = 0.5 * t * t;
        let mut sum = term;
        let mut k = 2.0;
        while term.abs() > 1e-17 * sum.abs() {
            k += 1.0;
            term *= t / k;
            sum += term;
        }
        sum
    } else {
        t.exp_m1() - t
    }
}

/// `ε²(E ρ^(2ε) − a ρ^((2−p)ε) − b)`.
pub fn f_epsilon(spec: &TransformSpec, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let s = spec;
    let log = rho.ln();
    let e = s.epsilon;
    // written through expm1 so that ρ near 1 keeps full relative accuracy
    let bracket =
        (s.energy - s.a - s.b_coef) + s.energy * (2.0 * e * log).exp_m1() - s.a * ((2.0 - s.p) * e * log).exp_m1();
    Ok(e * e * bracket)
}

pub fn transformed_coefficients(spec: &TransformSpec, rho: f64) -> Result<Coefficients> {
    Ok(Coefficients {
        first_order: (1.0 - spec.epsilon) / rho,
        zeroth_order: f_epsilon(spec, rho)? / (rho * rho),
    })
}

/// The `ε`-leading form `((1−ε)/ρ, ε²(E − a − b)/ρ²)`.
pub fn fuchsian_limit_coefficients(spec: &TransformSpec, rho: f64) -> Result<Coefficients> {
    check_rho(rho)?;
    let e = spec.epsilon;
    Ok(Coefficients {
        first_order: (1.0 - e) / rho,
        zeroth_order: e * e * (spec.energy - spec.a - spec.b_coef) / (rho * rho),
    })
}

/// Next order in `ε`: `ε²[(E − a − b) + ε(2E − (2−p)a) log ρ]/ρ²`.
pub fn first_correction_coefficients(spec: &TransformSpec, rho: f64) -> Result<Coefficients> {
    check_rho(rho)?;
    let e = spec.epsilon;
    let slope = 2.0 * spec.energy - (2.0 - spec.p) * spec.a;
    Ok(Coefficients {
        first_order: (1.0 - e) / rho,
        zeroth_order: e * e * ((spec.energy - spec.a - spec.b_coef) + e * slope * rho.ln()) / (rho * rho),
    })
}

/// `F(ε) − ε²[(E − a − b) + ε(2E − (2−p)a) log ρ]`, evaluated without
/// subtracting nearly equal numbers.
pub fn f_expansion_remainder(spec: &TransformSpec, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let log = rho.ln();
    let e = spec.epsilon;
    Ok(e * e * (spec.energy * exp_tail(2.0 * e * log) - spec.a * exp_tail((2.0 - spec.p) * e * log)))
}

/// Leading coefficient `(log ρ)² (2E − (2−p)² a/2)` of the remainder in `ε⁴`.
pub fn remainder_leading_coefficient(spec: &TransformSpec, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let log = rho.ln();
    Ok(log * log * (2.0 * spec.energy - (2.0 - spec.p).powi(2) * spec.a / 2.0))
}

/// `φ″ + c₁ φ′ + c₀ φ` for the transformed equation, given `φ` and its
/// first two derivatives at `ρ`.
pub fn transformed_operator(spec: &TransformSpec, rho: f64, phi: [f64; 3]) -> Result<f64> {
    let c = transformed_coefficients(spec, rho)?;
    Ok(phi[2] + c.first_order * phi[1] + c.zeroth_order * phi[0])
}

/// `ψ″ + (E − b/r² − a/r^p) ψ` for the original radial equation.
pub fn original_operator(spec: &TransformSpec, r: f64, psi: [f64; 3]) -> Result<f64> {
    check_rho(r)?;
    Ok(psi[2] + (spec.energy - spec.b_coef / (r * r) - spec.a * r.powf(-spec.p)) * psi[0])
}

/// Which square root of `S` is used for `B′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// `V(r) = μ²r² + S(r)` with `S(r) = a/r^p`, plus the eigen-parameter `k²`
/// and the angular momentum `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationSpec {
    pub mu: f64,
    pub k_sq: f64,
    pub l: u32,
    pub a: f64,
    pub p: f64,
    pub branch: Branch,
}

impl FactorizationSpec {
    pub fn new(mu: f64, k_sq: f64, l: u32, a: f64, p: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::domain("mu", mu, "(0, inf)"));
        }
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::domain("singular strength a", a, "[0, inf) (real square root)"));
        }
        if !p.is_finite() || p == 2.0 {
            return Err(Error::domain("singular power p", p, "finite, p != 2"));
        }
        if !k_sq.is_finite() {
            return Err(Error::domain("k^2", k_sq, "finite reals"));
        }
        Ok(Self {
            mu,
            k_sq,
            l,
            a,
            p,
            branch: Branch::Plus,
        })
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    /// `S(r) = a r^(−p)`.
    pub fn singular(&self, r: f64) -> f64 {
        self.a * r.powf(-self.p)
    }

    /// `B′(r) = ±√S(r)`.
    pub fn b_derivative(&self, r: f64) -> f64 {
        self.branch.sign() * self.a.sqrt() * r.powf(-0.5 * self.p)
    }

    /// `B″(r) = S′/(2√S)` on the chosen branch.
    pub fn b_second_derivative(&self, r: f64) -> f64 {
        self.branch.sign() * self.a.sqrt() * (-0.5 * self.p) * r.powf(-0.5 * self.p - 1.0)
    }

    fn centrifugal(&self, r: f64) -> f64 {
        let l = f64::from(self.l);
        l * (l + 1.0) / (r * r)
    }
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("r", r, "(0, inf)"));
    }
    Ok(())
}

/// `B(r) = ±√a r^(1−p/2)/(1 − p/2)`, the antiderivative of `√S` that
/// vanishes at infinity (for `p > 2`).
pub fn b_of_r(fact: &FactorizationSpec, r: f64) -> Result<f64> {
    check_r(r)?;
    let k = 1.0 - 0.5 * fact.p;
    Ok(fact.branch.sign() * fact.a.sqrt() * r.powf(k) / k)
}

/// Left side of the amplitude equation,
/// `A″ + 2(B′ − μr) A′ + [k² − μ − l(l+1)/r² − 2μrB′ + B″] A`.
pub fn amplitude_operator(fact: &FactorizationSpec, r: f64, amp: [f64; 3]) -> Result<f64> {
    check_r(r)?;
    let db = fact.b_derivative(r);
    let mu = fact.mu;
    Ok(amp[2]
        + 2.0 * (db - mu * r) * amp[1]
        + (fact.k_sq - mu - fact.centrifugal(r) - 2.0 * mu * r * db + fact.b_second_derivative(r)) * amp[0])
}

/// Left side of `φ″ + [k² − μ²r² − l(l+1)/r² − S(r)] φ`.
pub fn radial_operator(fact: &FactorizationSpec, r: f64, phi: [f64; 3]) -> Result<f64> {
    check_r(r)?;
    let mu = fact.mu;
    Ok(phi[2] + (fact.k_sq - mu * mu * r * r - fact.centrifugal(r) - fact.singular(r)) * phi[0])
}

/// `e^(B(r) − μr²/2)`.
pub fn envelope(fact: &FactorizationSpec, r: f64) -> Result<f64> {
    Ok((b_of_r(fact, r)? - 0.5 * fact.mu * r * r).exp())
}

/// A function sampled on the uniform grid `start + k·step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    start: f64,
    step: f64,
    values: Vec<f64>,
}

/// Points per local interpolation stencil.
pub const STENCIL_POINTS: usize = 5;

impl SampledFunction {
    pub fn new(start: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid start {start} and step {step} must be finite with step > 0"
            )));
        }
        if values.len() < STENCIL_POINTS {
            return Err(Error::domain("sample count", values.len() as f64, "[5, inf)"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("samples must be finite".into()));
        }
        Ok(Self { start, step, values })
    }

    pub fn from_fn(start: f64, stop: f64, points: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if points < STENCIL_POINTS || !(stop > start) {
            return Err(Error::InvalidParameter(format!(
                "need at least {STENCIL_POINTS} points on a non-empty interval"
            )));
        }
        let step = (stop - start) / (points - 1) as f64;
        Self::new(start, step, (0..points).map(|k| f(start + k as f64 * step)).collect())
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn end(&self) -> f64 {
        self.abscissa(self.values.len() - 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn abscissa(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    /// Value, first and second derivative at `r` from the degree-4
    /// interpolant through the five nearest samples.
    pub fn derivatives(&self, r: f64) -> Result<[f64; 3]> {
        if !(r >= self.start && r <= self.end()) {
            return Err(Error::InvalidParameter(format!(
                "r = {r} is outside the sampled range [{}, {}]",
                self.start,
                self.end()
            )));
        }
        let nearest = ((r - self.start) / self.step).round() as usize;
        let first = nearest
            .saturating_sub(STENCIL_POINTS / 2)
            .min(self.values.len() - STENCIL_POINTS);
        let xs: Vec<f64> = (first..first + STENCIL_POINTS).map(|k| self.abscissa(k)).collect();
        let w = fornberg_weights(r, &xs);
        let mut out = [0.0; 3];
        for (order, slot) in out.iter_mut().enumerate() {
            *slot = (0..STENCIL_POINTS).map(|j| w[order][j] * self.values[first + j]).sum();
        }
        Ok(out)
    }

    /// Pointwise product with `g`, keeping the grid.
    pub fn map_with_abscissa(&self, g: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &v)| g(self.abscissa(k), v))
            .collect();
        Self::new(self.start, self.step, values)
    }
}

/// Finite-difference weights for derivatives of order 0..=2 at `z` from the
/// nodes `xs` (Fornberg's recursion).
fn fornberg_weights(z: f64, xs: &[f64]) -> [[f64; STENCIL_POINTS]; 3] {
    const M: usize = 2;
    let n = xs.len();
    let mut c = [[0.0; STENCIL_POINTS]; 3];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    for i in 1..n {
        let mn = i.min(M);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationResidual {
    /// Amplitude equation applied to the sampled `A`.
    pub amplitude: Residual,
    /// Radial equation applied to the reconstructed `φ = A e^B e^(−μr²/2)`.
    pub radial: Residual,
    /// `e^(B(r) − μr²/2)`, the factor relating the two residuals.
    pub envelope: f64,
}

impl FactorizationResidual {
    /// `|radial − amplitude·envelope|` relative to the larger side.
    pub fn equivalence_defect(&self) -> f64 {
        let lhs = self.radial.value;
        let rhs = self.amplitude.value * self.envelope;
        let scale = lhs.abs().max(rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            (lhs - rhs).abs() / scale
        }
    }
}

/// Both equations at `r`, with derivatives of the sampled amplitude and of
/// the reconstructed `φ` taken from local five-point interpolants.
pub fn factorization_residual(
    fact: &FactorizationSpec,
    amplitude: &SampledFunction,
    r: f64,
) -> Result<FactorizationResidual> {
    check_r(r)?;
    if !(amplitude.start() > 0.0) {
        return Err(Error::InvalidParameter("amplitude grid must lie in r > 0".into()));
    }
    let amp = amplitude.derivatives(r)?;
    let amp_value = amplitude_operator(fact, r, amp)?;
    let phi_samples = amplitude.map_with_abscissa(|x, a| a * envelope(fact, x).unwrap_or(f64::NAN))?;
    let phi = phi_samples.derivatives(r)?;
    let radial_value = radial_operator(fact, r, phi)?;
    let mu = fact.mu;
    let amp_terms = [
        amp[2].abs(),
        (2.0 * (fact.b_derivative(r) - mu * r) * amp[1]).abs(),
        ((fact.k_sq - mu - fact.centrifugal(r) - 2.0 * mu * r * fact.b_derivative(r) + fact.b_second_derivative(r))
            * amp[0])
            .abs(),
    ];
    let radial_terms = [
        phi[2].abs(),
        ((fact.k_sq - mu * mu * r * r - fact.centrifugal(r) - fact.singular(r)) * phi[0]).abs(),
    ];
    Ok(FactorizationResidual {
        amplitude: Residual {
            value: amp_value,
            scale: amp_terms.into_iter().fold(0.0, f64::max),
        },
        radial: Residual {
            value: radial_value,
            scale: radial_terms.into_iter().fold(0.0, f64::max),
        },
        envelope: envelope(fact, r)?,
    })
}

/// Integrates the amplitude equation from `r0` to `r1` with classical RK4
/// in `steps` steps, starting from `A(r0) = a0`, `A′(r0) = da0`.
pub fn march_amplitude(
    fact: &FactorizationSpec,
    r0: f64,
    r1: f64,
    steps: usize,
    a0: f64,
    da0: f64,
) -> Result<SampledFunction> {
    check_r(r0)?;
    if !(r1 > r0) || !r1.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "march needs r1 > r0, got [{r0}, {r1}]"
        )));
    }
    if steps < STENCIL_POINTS - 1 {
        return Err(Error::domain("step count", steps as f64, "[4, inf)"));
    }
    let h = (r1 - r0) / steps as f64;
    let rhs = |r: f64, y: [f64; 2]| -> [f64; 2] {
        let db = fact.b_derivative(r);
        let mu = fact.mu;
        let c1 = 2.0 * (db - mu * r);
        let c0 = fact.k_sq - mu - fact.centrifugal(r) - 2.0 * mu * r * db + fact.b_second_derivative(r);
        [y[1], -c1 * y[1] - c0 * y[0]]
    };
    let mut y = [a0, da0];
    let mut values = Vec::with_capacity(steps + 1);
    values.push(a0);
    for k in 0..steps {
        let r = r0 + k as f64 * h;
        let k1 = rhs(r, y);
        let k2 = rhs(r + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = rhs(r + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = rhs(r + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        for i in 0..2 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !y[0].is_finite() {
            return Err(Error::Overflow("marched amplitude"));
        }
        values.push(y[0]);
    }
    SampledFunction::new(r0, h, values)
}
