//! One function per subcommand. Each validates every input before the first
//! numerical call, then builds its table.

use rayon::prelude::*;
use spiked_core::fredholm::{b_limit_study, build_nystrom, NodePolicy};
use spiked_core::green::HomSolutionPair;
use spiked_core::oscillator::{exact_spectrum, PotentialSpec, RadialGrid};
use spiked_core::specfun::HalfLineState;
use spiked_core::transforms::{
    b_of_r, envelope, f_epsilon, f_expansion_remainder, factorization_residual, march_amplitude,
    remainder_leading_coefficient, Branch, FactorizationSpec, TransformSpec,
};
use spiked_core::weak_coupling::{energy_expansion_normalized, exact_level, Normalization};

use crate::args::*;
use crate::error::CliError;
use crate::grid::{GridSpec, Spacing};
use crate::table::{Cell, Table};

type Rows = Vec<Vec<Cell>>;

pub fn execute(command: &Command) -> Result<Table, CliError> {
    match command {
        Command::Spectrum(a) => spectrum(a),
        Command::Perturb(a) => perturb(a),
        Command::Compare(a) => compare(a),
        Command::Kernel(a) => kernel(a),
        Command::Fredholm(a) => fredholm(a),
        Command::Transform(a) => transform(a),
        Command::Factorize(a) => factorize(a),
    }
}

/// Evaluates `f` over `inputs` on the worker pool and reports the first
/// failure in input order, so results never depend on scheduling.
fn sweep<T, F>(inputs: &[T], f: F) -> Result<Rows, CliError>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Cell>, CliError> + Sync + Send,
{
    let results: Vec<Result<Vec<Cell>, CliError>> = inputs.par_iter().map(f).collect();
    results.into_iter().collect()
}

fn table(columns: &[&'static str], rows: Rows) -> Table {
    let mut t = Table::new(columns);
    for r in rows {
        t.push(r);
    }
    t
}

fn normalization(n: NormalizationArg) -> Normalization {
    match n {
        NormalizationArg::Half => Normalization::HalfLine,
        NormalizationArg::Full => Normalization::FullLine,
    }
}

fn spectrum(a: &SpectrumArgs) -> Result<Table, CliError> {
    let p = &a.potential;
    let spec = PotentialSpec::new(p.alpha, p.lambda, p.kappa, p.l)?;
    let grid = RadialGrid::new(a.x_max, a.n)?;
    let s = exact_spectrum(&spec, &grid, a.k, a.extrapolate)?;
    let rows = s
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &e)| vec![(j + 1).into(), e.into()])
        .collect();
    Ok(table(&["index", "energy"], rows))
}

fn perturb(a: &PerturbArgs) -> Result<Table, CliError> {
    let lambdas = match (a.lambda, &a.lambda_grid) {
        (Some(l), None) => vec![l],
        (None, Some(g)) => g.points(),
        _ => return Err(CliError::Invalid("perturb needs --lambda or --lambda-grid".into())),
    };
    for &l in &lambdas {
        PotentialSpec::spiked(a.alpha, l)?;
    }
    HalfLineState::new(a.state)?;
    let norm = normalization(a.normalization);
    let rows = sweep(&lambdas, |&l| {
        let r = energy_expansion_normalized(a.state, a.alpha, l, norm)?;
        Ok(vec![
            l.into(),
            r.e0.into(),
            r.coefficient.into(),
            r.exponent.into(),
            r.value.into(),
            Cell::Int(i64::from(r.beyond_small_coupling)),
        ])
    })?;
    Ok(table(
        &[
            "lambda",
            "e0",
            "coefficient",
            "exponent",
            "energy",
            "beyond_small_coupling",
        ],
        rows,
    ))
}

fn compare(a: &CompareArgs) -> Result<Table, CliError> {
    let lambdas = a.lambda_grid.points();
    for &l in &lambdas {
        PotentialSpec::spiked(a.alpha, l)?;
    }
    HalfLineState::new(a.state)?;
    let grid = RadialGrid::new(a.x_max, a.n)?;
    if (a.state + 1) / 2 > grid.len() / 4 {
        return Err(CliError::Invalid(format!(
            "state {} is not resolved by n = {}",
            a.state, a.n
        )));
    }
    let norm = normalization(a.normalization);
    let rows = sweep(&lambdas, |&l| {
        let exact = exact_level(a.state, a.alpha, l, &grid)?;
        let expansion = energy_expansion_normalized(a.state, a.alpha, l, norm)?.value;
        Ok(vec![
            l.into(),
            exact.into(),
            expansion.into(),
            (exact - expansion).into(),
        ])
    })?;
    Ok(table(&["lambda", "exact", "expansion", "difference"], rows))
}

fn kernel(a: &KernelArgs) -> Result<Table, CliError> {
    PotentialSpec::spiked(a.alpha, a.lambda)?;
    if !(a.b > 0.0) || !a.b.is_finite() {
        return Err(CliError::Invalid(format!("b = {} must be positive", a.b)));
    }
    if !(a.xi > 0.0 && a.xi < a.b) {
        return Err(CliError::Invalid(format!("xi = {} must lie in (0, {})", a.xi, a.b)));
    }
    let grid = a.x_grid.unwrap_or(GridSpec {
        start: a.b / 200.0,
        stop: a.b,
        spacing: Spacing::Linear,
        count: 200,
    });
    let xs = grid.points();
    if xs.iter().any(|&x| !(x > 0.0 && x <= a.b)) {
        return Err(CliError::Invalid(format!("x grid must lie in (0, {}]", a.b)));
    }
    let pair = HomSolutionPair::from_parts(a.alpha, a.lambda, a.b)?;
    let rows = sweep(&xs, |&x| {
        let g = pair.green(x, a.xi)?;
        Ok(vec![x.into(), g.into(), (a.lambda * a.xi * g).into()])
    })?;
    Ok(table(&["x", "green", "kernel"], rows))
}

fn fredholm(a: &FredholmArgs) -> Result<Table, CliError> {
    let spec = PotentialSpec::new(a.alpha, a.lambda, a.kappa, 0)?;
    if !a.gamma.is_finite() {
        return Err(CliError::Invalid("gamma must be finite".into()));
    }
    let policy = NodePolicy::default();
    match a.mode {
        FredholmMode::Solve => {
            let op = build_nystrom(&spec, a.b, a.n.unwrap_or_else(|| policy.nodes_for(a.b)))?;
            let sol = op.solve_w(a.kappa, a.gamma)?;
            let rows = op
                .nodes()
                .iter()
                .zip(&sol.values)
                .zip(op.hom_term())
                .map(|((&x, &w), &h)| vec![x.into(), w.into(), (a.gamma * h).into()])
                .collect();
            Ok(table(&["x", "weight", "forcing"], rows))
        }
        FredholmMode::Characteristic => {
            if a.scan < 2 {
                return Err(CliError::Invalid("--scan must be at least 2".into()));
            }
            let op = build_nystrom(&spec, a.b, a.n.unwrap_or_else(|| policy.nodes_for(a.b)))?;
            let found = op.characteristic_values(a.kappa_range.lo, a.kappa_range.hi, a.scan)?;
            let rows = found
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let defect = a.gamma * op.weighted_inner(op.hom_term(), &c.null_vector)?;
                    Ok(vec![(j + 1).into(), c.kappa.into(), defect.into()])
                })
                .collect::<Result<Rows, CliError>>()?;
            Ok(table(&["index", "kappa", "defect"], rows))
        }
        FredholmMode::BLimit => {
            if a.n.is_some() {
                return Err(CliError::Invalid("--n is chosen per b in b-limit mode".into()));
            }
            let study = b_limit_study(&spec, a.gamma, &a.b_schedule, policy, &a.probes)?;
            let mut rows = Rows::new();
            for row in &study.rows {
                for (j, &x) in study.probes.iter().enumerate() {
                    let inc = row.increments.get(j).map_or(Cell::Empty, |&d| d.into());
                    rows.push(vec![row.b.into(), row.n.into(), x.into(), row.values[j].into(), inc]);
                }
            }
            Ok(table(&["b", "n", "x", "weight", "increment"], rows))
        }
    }
}

fn transform(a: &TransformArgs) -> Result<Table, CliError> {
    let base = TransformSpec::new(a.energy, a.a, a.b, a.p, 1.0)?;
    if !(a.rho > 0.0) || !a.rho.is_finite() {
        return Err(CliError::Invalid(format!("rho = {} must be positive", a.rho)));
    }
    let specs = a
        .eps_grid
        .points()
        .into_iter()
        .map(|e| base.with_epsilon(e))
        .collect::<Result<Vec<_>, _>>()?;
    let lead = remainder_leading_coefficient(&base, a.rho)?;
    let rows = sweep(&specs, |s| {
        let e = s.epsilon;
        Ok(vec![
            e.into(),
            f_epsilon(s, a.rho)?.into(),
            f_expansion_remainder(s, a.rho)?.into(),
            (lead * e.powi(4)).into(),
        ])
    })?;
    Ok(table(&["epsilon", "f_epsilon", "remainder", "leading_term"], rows))
}

fn factorize(a: &FactorizeArgs) -> Result<Table, CliError> {
    let branch = match a.branch {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    };
    let fact = FactorizationSpec::new(a.mu, a.k_sq, a.l, a.a, a.p)?.with_branch(branch);
    if !(a.r0 > 0.0 && a.r0 < a.r1) || !a.r1.is_finite() {
        return Err(CliError::Invalid(format!("need 0 < r0 < r1, got [{}, {}]", a.r0, a.r1)));
    }
    if a.samples == 0 {
        return Err(CliError::Invalid("--samples must be positive".into()));
    }
    let amp = march_amplitude(&fact, a.r0, a.r1, a.steps, a.a0, a.da0)?;
    let rs: Vec<f64> = (1..=a.samples)
        .map(|k| a.r0 + (a.r1 - a.r0) * k as f64 / (a.samples + 1) as f64)
        .collect();
    let rows = sweep(&rs, |&r| {
        let res = factorization_residual(&fact, &amp, r)?;
        Ok(vec![
            r.into(),
            amp.derivatives(r)?[0].into(),
            b_of_r(&fact, r)?.into(),
            envelope(&fact, r)?.into(),
            res.amplitude.relative().into(),
            res.radial.relative().into(),
        ])
    })?;
    Ok(table(
        &[
            "r",
            "amplitude",
            "b",
            "envelope",
            "amplitude_residual",
            "radial_residual",
        ],
        rows,
    ))
}
