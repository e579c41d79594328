//! Nyström discretization of the integral equation for the trial weight
//! when the potential gains a linear term `λκx`:
//!
//! `W(x) = γ W₀(x) + κ ∫₀ᵇ M(x, ξ) W(ξ) dξ`, `M(x, ξ) = λ ξ G_b(x, ξ)`,
//!
//! where `W₀` is the regular homogeneous solution and `G_b` the Green
//! function of [`crate::green`].
//!
//! The interval is cut into panels of [`PANEL_ORDER`] Gauss–Legendre nodes.
//! `M` has a derivative jump on the diagonal, so plain quadrature only
//! converges like `n^(−2)`. For the panel that contains the evaluation point
//! the weights are instead obtained by integrating `M(x, ·)` against the
//! panel's Lagrange basis, with separate Gauss rules left and right of `x`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::green::{HomSolutionPair, ScaledValue};
use crate::oscillator::PotentialSpec;
use crate::specfun::gauss_legendre;

/// Gauss–Legendre nodes per panel; `n` must be a multiple of this.
pub const PANEL_ORDER: usize = 16;
/// Gauss points on each side of the evaluation point inside its own panel.
const DIAGONAL_SUBNODES: usize = 32;
pub const MIN_NODES: usize = 32;
pub const MAX_NODES: usize = 2048;
/// Reciprocal condition number below which a solve is refused.
pub const NEAR_SINGULAR_RCOND: f64 = 1e-12;
/// Absolute accuracy of characteristic values.
pub const CHARACTERISTIC_TOLERANCE: f64 = 1e-8;

/// The discretized integral operator on `(0, b)`.
#[derive(Debug, Clone)]
pub struct KernelOperator {
    pair: HomSolutionPair,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panel_width: f64,
    reference_nodes: Vec<f64>,
    barycentric: Vec<f64>,
    sub_nodes: Vec<f64>,
    sub_weights: Vec<f64>,
    origin_at_nodes: Vec<ScaledValue>,
    endpoint_at_nodes: Vec<ScaledValue>,
    kernel: DMatrix<f64>,
    hom_term: Vec<f64>,
}

/// Builds the operator for `spec.alpha`, `spec.lambda` on `(0, b)` with `n`
/// nodes. `spec.kappa` is not used here; it is passed to the solves.
pub fn build_nystrom(spec: &PotentialSpec, b: f64, n: usize) -> Result<KernelOperator> {
    KernelOperator::build(spec, b, n)
}

impl KernelOperator {
    pub fn build(spec: &PotentialSpec, b: f64, n: usize) -> Result<Self> {
        if !(MIN_NODES..=MAX_NODES).contains(&n) {
            return Err(Error::domain("node count n", n as f64, "[32, 2048]"));
        }
        if n % PANEL_ORDER != 0 {
            return Err(Error::InvalidParameter(format!(
                "node count n = {n} must be a multiple of {PANEL_ORDER}"
            )));
        }
        if !spec.kappa.is_finite() {
            return Err(Error::domain("kappa", spec.kappa, "finite reals"));
        }
        let pair = HomSolutionPair::new(spec, b)?;

        let reference = gauss_legendre(PANEL_ORDER, -1.0, 1.0)?;
        let sub = gauss_legendre(DIAGONAL_SUBNODES, 0.0, 1.0)?;
        let panels = n / PANEL_ORDER;
        let panel_width = b / panels as f64;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * panel_width;
            for (t, w) in reference.nodes.iter().zip(&reference.weights) {
                nodes.push(mid + 0.5 * panel_width * t);
                weights.push(0.5 * panel_width * w);
            }
        }
        let barycentric = reference
            .nodes
            .iter()
            .enumerate()
            .map(|(j, tj)| {
                let prod: f64 = reference
                    .nodes
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, tk)| tj - tk)
                    .product();
                1.0 / prod
            })
            .collect();

        let origin_at_nodes = nodes
            .iter()
            .map(|&x| pair.origin_solution_scaled(x))
            .collect::<Result<Vec<_>>>()?;
        let endpoint_at_nodes = nodes
            .iter()
            .map(|&x| pair.endpoint_solution_scaled(x))
            .collect::<Result<Vec<_>>>()?;
        let hom_term = origin_at_nodes.iter().map(ScaledValue::value).collect();

        let mut op = Self {
            pair,
            nodes,
            weights,
            panel_width,
            reference_nodes: reference.nodes,
            barycentric,
            sub_nodes: sub.nodes,
            sub_weights: sub.weights,
            origin_at_nodes,
            endpoint_at_nodes,
            kernel: DMatrix::zeros(0, 0),
            hom_term,
        };
        let mut kernel = DMatrix::zeros(n, n);
        for i in 0..n {
            let row = op.row_at(op.nodes[i], op.origin_at_nodes[i], op.endpoint_at_nodes[i])?;
            kernel.row_mut(i).copy_from_slice(&row);
        }
        if kernel.iter().any(|v| !v.is_finite()) {
            return Err(Error::Overflow("kernel matrix entry"));
        }
        op.kernel = kernel;
        Ok(op)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn b(&self) -> f64 {
        self.pair.b()
    }

    pub fn pair(&self) -> &HomSolutionPair {
        &self.pair
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Matrix `K` with `(K w)_i ≈ ∫ M(x_i, ξ) w(ξ) dξ`.
    pub fn kernel_matrix(&self) -> &DMatrix<f64> {
        &self.kernel
    }

    /// The regular homogeneous solution at the nodes.
    pub fn hom_term(&self) -> &[f64] {
        &self.hom_term
    }

    /// `λ ξ G_b(x, ξ)` from the scaled solutions at `x` and `ξ`.
    fn kernel_scaled(
        &self,
        x: f64,
        xi: f64,
        at_x: (ScaledValue, ScaledValue),
        at_xi: (ScaledValue, ScaledValue),
    ) -> f64 {
        let (left, right) = if x <= xi { (at_x.0, at_xi.1) } else { (at_xi.0, at_x.1) };
        self.pair.lambda() * xi * self.pair.green_from_scaled(xi, left, right)
    }

    /// `M(x, ξ) = λ ξ G_b(x, ξ)` evaluated directly.
    pub fn kernel_value(&self, x: f64, xi: f64) -> Result<f64> {
        Ok(self.pair.lambda() * xi * self.pair.green(x, xi)?)
    }

    /// Quadrature weights `r_j(x)` with `∫ M(x, ξ) w(ξ) dξ ≈ Σ r_j w(ξ_j)`.
    pub fn kernel_row(&self, x: f64) -> Result<Vec<f64>> {
        let origin = self.pair.origin_solution_scaled(x)?;
        let endpoint = self.pair.endpoint_solution_scaled(x)?;
        self.row_at(x, origin, endpoint)
    }

    fn row_at(&self, x: f64, origin: ScaledValue, endpoint: ScaledValue) -> Result<Vec<f64>> {
        let n = self.len();
        let panels = n / PANEL_ORDER;
        let own = ((x / self.panel_width) as usize).min(panels - 1);
        let mut row = vec![0.0; n];
        for j in 0..n {
            if j / PANEL_ORDER == own {
                continue;
            }
            let xi = self.nodes[j];
            let value = self.kernel_scaled(
                x,
                xi,
                (origin, endpoint),
                (self.origin_at_nodes[j], self.endpoint_at_nodes[j]),
            );
            row[j] = self.weights[j] * value;
        }

        let a = own as f64 * self.panel_width;
        let c = a + self.panel_width;
        let slice = &mut row[own * PANEL_ORDER..(own + 1) * PANEL_ORDER];
        let mut basis = [0.0; PANEL_ORDER];
        for (lo, hi) in [(a, x), (x, c)] {
            let len = hi - lo;
            if len <= 0.0 {
                continue;
            }
            for (s, sw) in self.sub_nodes.iter().zip(&self.sub_weights) {
                let t = lo + len * s;
                let at_t = (
                    self.pair.origin_solution_scaled(t)?,
                    self.pair.endpoint_solution_scaled(t)?,
                );
                let m = self.kernel_scaled(x, t, (origin, endpoint), at_t);
                self.lagrange_basis(2.0 * (t - a) / self.panel_width - 1.0, &mut basis);
                for (r, l) in slice.iter_mut().zip(&basis) {
                    *r += len * sw * m * l;
                }
            }
        }
        Ok(row)
    }

    /// Values of the panel's Lagrange basis at reference coordinate `t`.
    fn lagrange_basis(&self, t: f64, out: &mut [f64; PANEL_ORDER]) {
        if let Some(k) = self.reference_nodes.iter().position(|&tk| tk == t) {
            out.fill(0.0);
            out[k] = 1.0;
            return;
        }
        let mut total = 0.0;
        for (o, (tk, bk)) in out.iter_mut().zip(self.reference_nodes.iter().zip(&self.barycentric)) {
            *o = bk / (t - tk);
            total += *o;
        }
        for o in out.iter_mut() {
            *o /= total;
        }
    }

    fn system_matrix(&self, kappa: f64) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::identity(n, n) - &self.kernel * kappa
    }

    /// Reciprocals of the real eigenvalues of `K`, sorted by distance from
    /// `kappa`.
    pub fn reciprocal_eigenvalues(&self) -> Vec<f64> {
        let eig = self.kernel.clone().complex_eigenvalues();
        let mut out: Vec<f64> = eig
            .iter()
            .filter(|c| c.re != 0.0 && c.im.abs() <= 1e-8 * c.re.abs())
            .map(|c| 1.0 / c.re)
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    fn nearest_characteristic(&self, kappa: f64) -> Option<f64> {
        self.reciprocal_eigenvalues()
            .into_iter()
            .min_by(|a, b| (a - kappa).abs().total_cmp(&(b - kappa).abs()))
    }

    /// Solves `(I − κK) w = γ W₀` by LU with partial pivoting and one step of
    /// iterative refinement.
    pub fn solve_w(&self, kappa: f64, gamma_coef: f64) -> Result<FredholmSolution> {
        if !kappa.is_finite() || !gamma_coef.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "kappa = {kappa} and gamma = {gamma_coef} must be finite"
            )));
        }
        let rhs: DVector<f64> = DVector::from_iterator(self.len(), self.hom_term.iter().map(|h| gamma_coef * h));
        self.solve_rhs(kappa, gamma_coef, &rhs)
    }

    /// Solves `(I − κK) w = f` for an arbitrary right-hand side at the nodes.
    pub fn solve_with_rhs(&self, kappa: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "right-hand side must have {} entries, got {}",
                self.len(),
                rhs.len()
            )));
        }
        let rhs = DVector::from_column_slice(rhs);
        Ok(self.solve_rhs(kappa, 1.0, &rhs)?.values)
    }

    fn solve_rhs(&self, kappa: f64, gamma_coef: f64, rhs: &DVector<f64>) -> Result<FredholmSolution> {
        let a = self.system_matrix(kappa);
        let lu = a.clone().lu();
        let rcond = reciprocal_condition(&a, &lu);
        if !(rcond >= NEAR_SINGULAR_RCOND) {
            return Err(Error::NearSingular {
                kappa,
                rcond,
                nearest: self.nearest_characteristic(kappa),
            });
        }
        let mut w = lu.solve(rhs).ok_or(Error::NearSingular {
            kappa,
            rcond: 0.0,
            nearest: self.nearest_characteristic(kappa),
        })?;
        let r = rhs - &a * &w;
        if let Some(dw) = lu.solve(&r) {
            w += dw;
        }
        let residual = (rhs - &a * &w).amax();
        if w.iter().any(|v| !v.is_finite()) {
            return Err(Error::Overflow("Fredholm solution"));
        }
        Ok(FredholmSolution {
            kappa,
            gamma: gamma_coef,
            values: w.iter().copied().collect(),
            rcond,
            residual,
        })
    }

    /// Nyström interpolant `γ W₀(x) + κ Σ r_j(x) w_j` at any `x ∈ (0, b]`.
    pub fn interpolate(&self, solution: &FredholmSolution, x: f64) -> Result<f64> {
        let row = self.kernel_row(x)?;
        let integral: f64 = row.iter().zip(&solution.values).map(|(r, w)| r * w).sum();
        Ok(solution.gamma * self.pair.origin_solution(x)? + solution.kappa * integral)
    }

    /// Residual of the continuous equation at `x`, with the integral of the
    /// interpolated solution recomputed on an independent composite rule of
    /// `panels` panels (split at `x`).
    pub fn equation_residual(&self, solution: &FredholmSolution, x: f64, panels: usize) -> Result<f64> {
        if panels == 0 {
            return Err(Error::domain("panel count", 0.0, "[1, inf)"));
        }
        let w_x = self.interpolate(solution, x)?;
        let rule = gauss_legendre(PANEL_ORDER, 0.0, 1.0)?;
        let mut integral = 0.0;
        for (lo, hi) in [(0.0, x), (x, self.b())] {
            if hi <= lo {
                continue;
            }
            let width = (hi - lo) / panels as f64;
            for p in 0..panels {
                let start = lo + p as f64 * width;
                for (s, sw) in rule.nodes.iter().zip(&rule.weights) {
                    let t = start + width * s;
                    integral += width * sw * self.kernel_value(x, t)? * self.interpolate(solution, t)?;
                }
            }
        }
        Ok(w_x - solution.gamma * self.pair.origin_solution(x)? - solution.kappa * integral)
    }

    /// `Σ_{m=0}^{terms} (κK)^m γ W₀` together with the a-priori bound
    /// `2 q^(terms+1)/(1 − q) ‖γ W₀‖`, `q = |κ| ‖K‖∞`.
    pub fn neumann_series(&self, kappa: f64, gamma_coef: f64, terms: usize) -> Result<NeumannResult> {
        let q = kappa.abs() * self.kernel_norm_inf();
        if !(q < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "Neumann series needs |kappa| ||K|| < 1, got {q}"
            )));
        }
        let f: DVector<f64> = DVector::from_iterator(self.len(), self.hom_term.iter().map(|h| gamma_coef * h));
        let mut term = f.clone();
        let mut sum = f.clone();
        for _ in 0..terms {
            term = &self.kernel * &term * kappa;
            sum += &term;
        }
        Ok(NeumannResult {
            values: sum.iter().copied().collect(),
            contraction: q,
            bound: 2.0 * q.powi(terms as i32 + 1) / (1.0 - q) * f.amax(),
        })
    }

    /// `max_i Σ_j |K_ij|`.
    pub fn kernel_norm_inf(&self) -> f64 {
        self.kernel
            .row_iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Discretization of the transposed kernel `M(ξ, x)`:
    /// `D_w⁻¹ Kᵀ D_w`, which has the same eigenvalues as `K`.
    pub fn transposed_kernel(&self) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| self.kernel[(j, i)] * self.weights[j] / self.weights[i])
    }

    fn determinant_sign(&self, kappa: f64) -> f64 {
        let lu = self.system_matrix(kappa).lu();
        let mut sign = lu.p().determinant::<f64>();
        for i in 0..self.len() {
            sign *= lu.lu_internal()[(i, i)].signum();
        }
        sign
    }

    /// Values of `κ` in `[lo, hi]` where `I − κK` is singular: sign changes
    /// of the determinant on `scan_points` uniform points, refined by
    /// bisection to [`CHARACTERISTIC_TOLERANCE`].
    pub fn characteristic_values(&self, lo: f64, hi: f64, scan_points: usize) -> Result<Vec<CharacteristicValue>> {
        check_interval(lo, hi, scan_points)?;
        let roots = sign_change_roots(lo, hi, scan_points, |k| Ok(self.determinant_sign(k)))?;
        roots
            .into_iter()
            .map(|kappa| {
                Ok(CharacteristicValue {
                    kappa,
                    null_vector: self.transposed_null_vector(kappa)?,
                })
            })
            .collect()
    }

    /// Null vector of `I − κ* D_w⁻¹ Kᵀ D_w`, scaled to `Σ w_j χ_j² = 1` with
    /// its largest component positive.
    pub fn transposed_null_vector(&self, kappa_star: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let m = DMatrix::identity(n, n) - self.transposed_kernel() * kappa_star;
        let svd = m.svd(false, true);
        let v_t = svd.v_t.ok_or(Error::NoConvergence {
            method: "singular value decomposition",
            iterations: 0,
        })?;
        let (k, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty matrix");
        let mut chi: Vec<f64> = v_t.row(k).iter().copied().collect();
        let norm: f64 = chi
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| w * c * c)
            .sum::<f64>()
            .sqrt();
        let pivot = chi
            .iter()
            .copied()
            .fold(0.0f64, |m, c| if c.abs() > m.abs() { c } else { m });
        let scale = pivot.signum() / norm;
        for c in &mut chi {
            *c *= scale;
        }
        Ok(chi)
    }

    /// `Σ w_j f_j χ_j`.
    pub fn weighted_inner(&self, f: &[f64], chi: &[f64]) -> Result<f64> {
        if f.len() != self.len() || chi.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "vectors must have {} entries, got {} and {}",
                self.len(),
                f.len(),
                chi.len()
            )));
        }
        Ok(f.iter().zip(chi).zip(&self.weights).map(|((f, c), w)| w * f * c).sum())
    }

    /// `∫₀ᵇ W₀ χ` for the normalized transposed null vector at `κ*`.
    pub fn solvability_defect(&self, kappa_star: f64) -> Result<f64> {
        let chi = self.transposed_null_vector(kappa_star)?;
        self.weighted_inner(&self.hom_term, &chi)
    }
}

/// Free-function form of [`KernelOperator::solvability_defect`].
pub fn solvability_defect(op: &KernelOperator, kappa_star: f64) -> Result<f64> {
    op.solvability_defect(kappa_star)
}

/// Free-function form of [`KernelOperator::characteristic_values`].
pub fn characteristic_values(
    op: &KernelOperator,
    lo: f64,
    hi: f64,
    scan_points: usize,
) -> Result<Vec<CharacteristicValue>> {
    op.characteristic_values(lo, hi, scan_points)
}

/// Free-function form of [`KernelOperator::solve_w`].
pub fn solve_w(op: &KernelOperator, kappa: f64, gamma_coef: f64) -> Result<FredholmSolution> {
    op.solve_w(kappa, gamma_coef)
}

fn check_interval(lo: f64, hi: f64, scan_points: usize) -> Result<()> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "search interval [{lo}, {hi}] must be finite and non-empty"
        )));
    }
    if scan_points < 2 {
        return Err(Error::domain("scan points", scan_points as f64, "[2, inf)"));
    }
    Ok(())
}

fn sign_change_roots(lo: f64, hi: f64, points: usize, mut sign: impl FnMut(f64) -> Result<f64>) -> Result<Vec<f64>> {
    let step = (hi - lo) / (points - 1) as f64;
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_s = sign(lo)?;
    for k in 1..points {
        let x = if k == points - 1 { hi } else { lo + k as f64 * step };
        let s = sign(x)?;
        if s != prev_s {
            let (mut a, mut b) = (prev_x, x);
            let sa = prev_s;
            while b - a > CHARACTERISTIC_TOLERANCE {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sign(mid)? == sa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_x = x;
        prev_s = s;
    }
    Ok(roots)
}

/// `1/(‖A‖₁ est‖A⁻¹‖₁)` with Hager's estimator for `‖A⁻¹‖₁`.
fn reciprocal_condition(a: &DMatrix<f64>, lu: &nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>) -> f64 {
    let n = a.nrows();
    let norm_a = a
        .column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let packed = lu.lu_internal();
    let solve_transposed = |c: &DVector<f64>| -> Option<DVector<f64>> {
        // Aᵀ y = c with P A = L U: solve Uᵀ t = c, Lᵀ s = t, then y = P⁻¹ s
        let mut s = packed.tr_solve_upper_triangular(c)?;
        for i in (0..n).rev() {
            let mut acc = s[i];
            for k in i + 1..n {
                acc -= packed[(k, i)] * s[k];
            }
            s[i] = acc;
        }
        lu.p().inv_permute_rows(&mut s);
        Some(s)
    };
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    let mut estimate = 0.0;
    for _ in 0..5 {
        let Some(y) = lu.solve(&x) else { return 0.0 };
        estimate = y.iter().map(|v| v.abs()).sum::<f64>();
        let signs = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
        let Some(z) = solve_transposed(&signs) else { return 0.0 };
        let (j, zj) = z
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |m, (i, v)| if v.abs() > m.1 { (i, v.abs()) } else { m });
        if zj <= z.dot(&x) {
            break;
        }
        x = DVector::zeros(n);
        x[j] = 1.0;
    }
    if !(estimate.is_finite()) || estimate == 0.0 || norm_a == 0.0 {
        return 0.0;
    }
    1.0 / (norm_a * estimate)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FredholmSolution {
    pub kappa: f64,
    pub gamma: f64,
    /// `W` at the operator's nodes.
    pub values: Vec<f64>,
    /// Reciprocal 1-norm condition estimate of `I − κK`.
    pub rcond: f64,
    /// `‖(I − κK) w − γ W₀‖∞` after refinement.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeumannResult {
    pub values: Vec<f64>,
    pub contraction: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicValue {
    pub kappa: f64,
    /// Normalized null vector of the transposed system at the nodes.
    pub null_vector: Vec<f64>,
}

/// Node count for a given `b`: proportional to `b`, rounded up to a whole
/// number of panels and clamped to the supported range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodePolicy {
    pub per_unit_length: f64,
}

impl Default for NodePolicy {
    fn default() -> Self {
        Self { per_unit_length: 12.8 }
    }
}

impl NodePolicy {
    pub fn nodes_for(&self, b: f64) -> usize {
        let raw = (self.per_unit_length * b / PANEL_ORDER as f64).ceil().max(1.0) as usize * PANEL_ORDER;
        raw.clamp(MIN_NODES, MAX_NODES)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BLimitRow {
    pub b: f64,
    pub n: usize,
    /// Interpolated `W` at each probe.
    pub values: Vec<f64>,
    /// `|W_b − W_previous b|` per probe; empty for the first row.
    pub increments: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BLimitStudy {
    pub probes: Vec<f64>,
    pub rows: Vec<BLimitRow>,
}

/// Solves at each `b` of an increasing schedule and tabulates `W` at the
/// probes, with the increments between consecutive `b`.
pub fn b_limit_study(
    spec: &PotentialSpec,
    gamma_coef: f64,
    schedule: &[f64],
    policy: NodePolicy,
    probes: &[f64],
) -> Result<BLimitStudy> {
    if schedule.is_empty() || schedule.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter(
            "b schedule must be non-empty and increasing".into(),
        ));
    }
    if probes.iter().any(|&p| !(p > 0.0 && p <= schedule[0])) {
        return Err(Error::InvalidParameter(format!(
            "probe points must lie in (0, {}]",
            schedule[0]
        )));
    }
    let mut rows: Vec<BLimitRow> = Vec::with_capacity(schedule.len());
    for &b in schedule {
        let n = policy.nodes_for(b);
        let op = KernelOperator::build(spec, b, n)?;
        let solution = op.solve_w(spec.kappa, gamma_coef)?;
        let values = probes
            .iter()
            .map(|&x| op.interpolate(&solution, x))
            .collect::<Result<Vec<_>>>()?;
        let increments = rows
            .last()
            .map(|prev| prev.values.iter().zip(&values).map(|(a, b)| (a - b).abs()).collect())
            .unwrap_or_default();
        rows.push(BLimitRow {
            b,
            n,
            values,
            increments,
        });
    }
    Ok(BLimitStudy {
        probes: probes.to_vec(),
        rows,
    })
}

/// Values of `λ` in `[lo, hi]` where `I − κK(λ)` is singular for fixed `κ`.
/// The kernel depends on `λ` nonlinearly, so the operator is rebuilt at
/// every trial value.
pub fn characteristic_lambdas(
    alpha: f64,
    kappa: f64,
    b: f64,
    n: usize,
    lo: f64,
    hi: f64,
    scan_points: usize,
) -> Result<Vec<f64>> {
    check_interval(lo, hi, scan_points)?;
    if !(lo > 0.0) {
        return Err(Error::domain("lambda search start", lo, "(0, inf)"));
    }
    sign_change_roots(lo, hi, scan_points, |lambda| {
        let spec = PotentialSpec::new(alpha, lambda, kappa, 0)?;
        Ok(KernelOperator::build(&spec, b, n)?.determinant_sign(kappa))
    })
}
