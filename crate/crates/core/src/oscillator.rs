//! Spiked-oscillator potentials and finite-difference reference spectra.
//!
//! The radial operator `−d²/dx² + V(x)` on `(0, x_max)` with Dirichlet walls
//! at both ends is discretized by the three-point stencil on a uniform grid,
//! which gives a symmetric tridiagonal matrix. Its lowest eigenvalues are
//! isolated by Sturm-sequence bisection.
//!
//! The Sturm recurrence is run on the pivot offsets `δ_i = h² q_i − 1`
//! instead of the pivots `q_i` themselves: with `q_i` the `2/h²` term swamps
//! the shift `s` once `h` is small, whereas `δ_i` only ever sees the
//! difference `V_i − s`.

use crate::error::{Error, Result};

/// Parameters of `V(x) = x² + l(l+1)/x² + λ (x^(−α) + κ x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub alpha: f64,
    pub lambda: f64,
    pub kappa: f64,
    pub l: u32,
}

impl PotentialSpec {
    pub fn new(alpha: f64, lambda: f64, kappa: f64, l: u32) -> Result<Self> {
        if !(alpha > 2.0) || !alpha.is_finite() {
            return Err(Error::domain("alpha", alpha, "(2, inf)"));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::domain("lambda", lambda, "[0, inf)"));
        }
        if !kappa.is_finite() {
            return Err(Error::domain("kappa", kappa, "finite reals"));
        }
        Ok(Self {
            alpha,
            lambda,
            kappa,
            l,
        })
    }

    /// The pure spiked oscillator (`κ = 0`, `l = 0`).
    pub fn spiked(alpha: f64, lambda: f64) -> Result<Self> {
        Self::new(alpha, lambda, 0.0, 0)
    }

    /// `x² + l(l+1)/x² + λ x^(−α) + λ κ x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain("x", x, "(0, inf)"));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        let centrifugal = f64::from(self.l) * (f64::from(self.l) + 1.0) / (x * x);
        let mut v = x * x + centrifugal;
        if self.lambda != 0.0 {
            v += self.lambda * (x.powf(-self.alpha) + self.kappa * x);
        }
        v
    }
}

/// Free-function form of [`PotentialSpec::eval`].
pub fn potential_eval(spec: &PotentialSpec, x: f64) -> Result<f64> {
    spec.eval(x)
}

/// Uniform interior grid `x_j = j h`, `j = 1..=n`, `h = x_max / (n + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    x_max: f64,
    n: usize,
}

impl RadialGrid {
    pub const MIN_NODES: usize = 16;

    pub fn new(x_max: f64, n: usize) -> Result<Self> {
        if !(x_max > 0.0) || !x_max.is_finite() {
            return Err(Error::domain("x_max", x_max, "(0, inf)"));
        }
        if n < Self::MIN_NODES {
            return Err(Error::domain("interior node count", n as f64, "[16, inf)"));
        }
        Ok(Self { x_max, n })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.x_max / (self.n as f64 + 1.0)
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 * self.step()
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (1..=self.n).map(|j| j as f64 * h).collect()
    }

    /// The grid with half the step: `2n + 1` interior nodes.
    pub fn refined(&self) -> Self {
        Self {
            x_max: self.x_max,
            n: 2 * self.n + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// The (coarser) grid the computation was requested on.
    pub grid: RadialGrid,
    /// Whether the values are Richardson-combined from `grid` and `grid.refined()`.
    pub extrapolated: bool,
}

/// Absolute bisection tolerance on eigenvalues.
pub const BISECTION_TOLERANCE: f64 = 1e-12;

/// The discretized operator: `T/h² + diag(V)` with `T = tridiag(−1, 2, −1)`.
struct DirichletMatrix {
    h2: f64,
    potential: Vec<f64>,
}

impl DirichletMatrix {
    fn new(spec: &PotentialSpec, grid: &RadialGrid) -> Result<Self> {
        let potential: Vec<f64> = grid.nodes().iter().map(|&x| spec.eval_unchecked(x)).collect();
        if let Some(bad) = potential.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "potential is not finite on the grid (value {bad}); grid too fine for alpha = {}",
                spec.alpha
            )));
        }
        Ok(Self {
            h2: grid.step() * grid.step(),
            potential,
        })
    }

    /// Number of eigenvalues strictly below `s`.
    fn count_below(&self, s: f64) -> usize {
        let h2 = self.h2;
        let mut count = 0;
        let mut delta = 1.0 + h2 * (self.potential[0] - s);
        if 1.0 + delta < 0.0 {
            count += 1;
        }
        for &v in &self.potential[1..] {
            let mut pivot = 1.0 + delta;
            if pivot == 0.0 {
                pivot = f64::MIN_POSITIVE;
            }
            delta = h2 * (v - s) + delta / pivot;
            if 1.0 + delta < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn lower_bound(&self) -> f64 {
        // T is positive definite, so every eigenvalue exceeds min V
        self.potential.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn gershgorin_upper(&self) -> f64 {
        self.potential.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 4.0 / self.h2
    }

    /// Lowest `k` eigenvalues.
    fn lowest(&self, k: usize) -> Result<Vec<f64>> {
        let bound = self.gershgorin_upper();
        let found = self.count_below(bound);
        if found < k {
            return Err(Error::Bracketing {
                wanted: k,
                found,
                bound,
            });
        }
        let floor = self.lower_bound();
        let mut out = Vec::with_capacity(k);
        let mut lo = floor;
        for index in 0..k {
            // grow an upper bracket geometrically before bisecting
            let mut width = 1.0f64;
            let mut hi = lo + width;
            while self.count_below(hi) <= index {
                lo = hi;
                width *= 2.0;
                hi = (lo + width).min(bound);
                if hi == bound {
                    break;
                }
            }
            let mut a = lo;
            let mut b = hi;
            while b - a > BISECTION_TOLERANCE {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if self.count_below(mid) > index {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let value = 0.5 * (a + b);
            out.push(value);
            lo = a;
        }
        Ok(out)
    }
}

/// The `k` lowest Dirichlet eigenvalues of `−d²/dx² + V` on `(0, x_max)`.
///
/// With `extrapolate`, the values from `grid` and `grid.refined()` are
/// combined as `(4 E(h/2) − E(h)) / 3`, cancelling the `O(h²)` error.
pub fn exact_spectrum(spec: &PotentialSpec, grid: &RadialGrid, k: usize, extrapolate: bool) -> Result<SpectrumResult> {
    if spec.kappa < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "kappa = {} < 0 makes the potential unbounded below; refusing to compute a truncated spectrum",
            spec.kappa
        )));
    }
    if k == 0 || k > grid.len() / 4 {
        return Err(Error::domain(
            "eigenvalue count k",
            k as f64,
            "[1, n/4] (only well-resolved eigenvalues)",
        ));
    }
    let coarse = DirichletMatrix::new(spec, grid)?.lowest(k)?;
    let eigenvalues = if extrapolate {
        let fine = DirichletMatrix::new(spec, &grid.refined())?.lowest(k)?;
        coarse.iter().zip(&fine).map(|(&c, &f)| (4.0 * f - c) / 3.0).collect()
    } else {
        coarse
    };
    Ok(SpectrumResult {
        eigenvalues,
        grid: *grid,
        extrapolated: extrapolate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub x_max: f64,
    pub n: usize,
    pub h: f64,
    pub eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub rows: Vec<ConvergenceRow>,
    /// `ln(|E₀ − E₁| / |E₁ − E₂|) / ln(h₀/h₁)` over the last three grids;
    /// `None` when a difference vanishes.
    pub observed_order: Option<f64>,
}

/// Raw (unextrapolated) `k`-th eigenvalue (1-based) on each grid in turn.
pub fn convergence_study(spec: &PotentialSpec, k: usize, grids: &[RadialGrid]) -> Result<ConvergenceStudy> {
    if k == 0 {
        return Err(Error::domain("eigenvalue index k", 0.0, "[1, n/4]"));
    }
    let rows = grids
        .iter()
        .map(|grid| {
            let spectrum = exact_spectrum(spec, grid, k, false)?;
            Ok(ConvergenceRow {
                x_max: grid.x_max(),
                n: grid.len(),
                h: grid.step(),
                eigenvalue: spectrum.eigenvalues[k - 1],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let observed_order = match rows.as_slice() {
        [.., a, b, c] => {
            let d1 = (a.eigenvalue - b.eigenvalue).abs();
            let d2 = (b.eigenvalue - c.eigenvalue).abs();
            (d1 > 0.0 && d2 > 0.0 && a.h != b.h).then(|| (d1 / d2).ln() / (a.h / b.h).ln())
        }
        _ => None,
    };
    Ok(ConvergenceStudy { rows, observed_order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_examples() {
        let pure = PotentialSpec::new(4.0, 0.0, 0.0, 0).unwrap();
        assert_eq!(pure.eval(2.0).unwrap(), 4.0);
        let spiked = PotentialSpec::new(4.0, 1.0, 0.0, 0).unwrap();
        assert_eq!(spiked.eval(1.0).unwrap(), 2.0);
        // λ multiplies both the inverse power and the linear term
        let full = PotentialSpec::new(4.0, 2.0, 3.0, 1).unwrap();
        assert_eq!(full.eval(1.0).unwrap(), 11.0);
        assert!(full.eval(0.0).is_err());
        assert!(full.eval(-1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(PotentialSpec::new(2.0, 1.0, 0.0, 0).is_err());
        assert!(PotentialSpec::new(4.0, -1e-3, 0.0, 0).is_err());
        assert!(PotentialSpec::new(4.0, 1.0, f64::NAN, 0).is_err());
    }

    #[test]
    fn grid_layout() {
        let g = RadialGrid::new(12.0, 23).unwrap();
        assert_eq!(g.step(), 0.5);
        let nodes = g.nodes();
        assert_eq!(nodes.len(), 23);
        assert_eq!(nodes[0], 0.5);
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(*nodes.last().unwrap() < 12.0);
        assert_eq!(g.refined().step(), 0.25);
        assert!(RadialGrid::new(12.0, 15).is_err());
    }

    #[test]
    fn sturm_count_matches_dense_spectrum() {
        // small grid: compare with a dense symmetric eigen-solve
        let spec = PotentialSpec::new(4.0, 0.3, 0.2, 1).unwrap();
        let grid = RadialGrid::new(6.0, 40).unwrap();
        let m = DirichletMatrix::new(&spec, &grid).unwrap();
        let n = grid.len();
        let h2 = grid.step() * grid.step();
        let dense = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                2.0 / h2 + m.potential[i]
            } else if i.abs_diff(j) == 1 {
                -1.0 / h2
            } else {
                0.0
            }
        });
        let mut eig: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        let ours = m.lowest(10).unwrap();
        for (a, b) in ours.iter().zip(&eig) {
            assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn refuses_negative_kappa_and_unresolved_k() {
        let grid = RadialGrid::new(12.0, 400).unwrap();
        let stark = PotentialSpec::new(4.0, 0.1, -0.5, 0).unwrap();
        assert!(exact_spectrum(&stark, &grid, 1, false).is_err());
        let pure = PotentialSpec::spiked(4.0, 0.0).unwrap();
        assert!(exact_spectrum(&pure, &grid, 101, false).is_err());
        assert!(exact_spectrum(&pure, &grid, 0, false).is_err());
    }

    #[test]
    fn unperturbed_levels_are_the_odd_oscillator_states() {
        let pure = PotentialSpec::spiked(4.0, 0.0).unwrap();
        let grid = RadialGrid::new(12.0, 2000).unwrap();
        let s = exact_spectrum(&pure, &grid, 3, true).unwrap();
        for (e, want) in s.eigenvalues.iter().zip([3.0, 7.0, 11.0]) {
            assert!((e - want).abs() < 1e-8, "{e} vs {want}");
        }
        assert!(s.extrapolated);
    }
}
