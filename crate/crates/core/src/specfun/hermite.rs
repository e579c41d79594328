//! Eigenfunctions of `−d²/dx² + x²` (eigenvalues `2n + 1`).

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Highest quantum number served by the recurrences below.
pub const MAX_QUANTUM_NUMBER: usize = 20;

fn check_index(n: usize) -> Result<()> {
    if n > MAX_QUANTUM_NUMBER {
        return Err(Error::domain("oscillator quantum number", n as f64, "[0, 20]"));
    }
    Ok(())
}

/// `(ψ_{n−1}(x), ψ_n(x))` from the normalized three-term recurrence
/// `ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}`.
fn recurrence(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// The `n`-th eigenfunction of `−d²/dx² + x²`, unit L² norm on the full line.
pub fn oscillator_eigenfunction(n: usize, x: f64) -> Result<f64> {
    check_index(n)?;
    Ok(recurrence(n, x).1)
}

/// `ψ_n′(x) = √(2n) ψ_{n−1}(x) − x ψ_n(x)`.
pub fn oscillator_eigenfunction_derivative(n: usize, x: f64) -> Result<f64> {
    check_index(n)?;
    let (prev, cur) = recurrence(n, x);
    Ok((2.0 * n as f64).sqrt() * prev - x * cur)
}

/// An odd oscillator state restricted to `[0, ∞)` and renormalized there.
///
/// Only odd states vanish at the origin, so these are exactly the
/// eigenfunctions of the oscillator with a Dirichlet wall at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineState {
    index: usize,
    norm: f64,
}

impl HalfLineState {
    /// Odd `index ≤ 19`, normalized on the half line.
    pub fn new(index: usize) -> Result<Self> {
        Self::with_norm(index, SQRT_2)
    }

    /// Same state with its full-line normalization (norm `1/√2` on `[0, ∞)`).
    pub fn full_line_normalized(index: usize) -> Result<Self> {
        Self::with_norm(index, 1.0)
    }

    fn with_norm(index: usize, norm: f64) -> Result<Self> {
        if index % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "half-line states need an odd index, got {index}"
            )));
        }
        check_index(index)?;
        Ok(Self { index, norm })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Factor applied to the full-line eigenfunction.
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    /// Unperturbed eigenvalue `2i + 1`.
    pub fn energy(&self) -> f64 {
        2.0 * self.index as f64 + 1.0
    }

    pub fn value(&self, x: f64) -> f64 {
        self.norm * recurrence(self.index, x).1
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (prev, cur) = recurrence(self.index, x);
        self.norm * ((2.0 * self.index as f64).sqrt() * prev - x * cur)
    }

    /// `u″ = (x² − E) u`.
    pub fn second_derivative(&self, x: f64) -> f64 {
        (x * x - self.energy()) * self.value(x)
    }

    pub fn sample(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.value(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert!((oscillator_eigenfunction(0, 0.0).unwrap() - PI.powf(-0.25)).abs() < 1e-15);
        assert_eq!(oscillator_eigenfunction(1, 0.0).unwrap(), 0.0);
        // mpmath: √2 π^(−1/4) e^(−1/2)
        let psi1 = oscillator_eigenfunction(1, 1.0).unwrap();
        assert!((psi1 - 0.644_288_365_113_475_18).abs() < 1e-15);
        assert!((oscillator_eigenfunction(7, 2.3).unwrap() + 0.392_143_272_846_887_64).abs() < 1e-14);
        assert!((oscillator_eigenfunction(20, -4.1).unwrap() - 0.251_376_994_004_638_91).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_central_difference() {
        for n in [0, 1, 4, 11, 20] {
            for &x in &[-3.0, -0.4, 0.0, 0.9, 2.5] {
                let h = 1e-5;
                let fd = (oscillator_eigenfunction(n, x + h).unwrap() - oscillator_eigenfunction(n, x - h).unwrap())
                    / (2.0 * h);
                let d = oscillator_eigenfunction_derivative(n, x).unwrap();
                assert!((fd - d).abs() < 1e-8, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn half_line_state_rules() {
        assert!(HalfLineState::new(2).is_err());
        assert!(HalfLineState::new(21).is_err());
        let u1 = HalfLineState::new(1).unwrap();
        assert_eq!(u1.value(0.0), 0.0);
        assert_eq!(u1.energy(), 3.0);
        // (4/√π)^(1/2) e^(−1/2), mpmath
        assert!((u1.value(1.0) - 0.911_161_344_022_665_07).abs() < 1e-15);
        let full = HalfLineState::full_line_normalized(1).unwrap();
        assert!((u1.value(0.7) - SQRT_2 * full.value(0.7)).abs() < 1e-16);
    }

    #[test]
    fn index_cap() {
        assert!(oscillator_eigenfunction(21, 0.0).is_err());
        assert!(oscillator_eigenfunction(20, 0.0).is_ok());
    }
}
