//! Least-squares solvers: the scalar toy problems, the incremental gradient
//! method (LMS), and randomized Kaczmarz, each with pluggable row-sampling
//! schemes and deterministic per-trial RNG streams.
//!
//! Error traces are recorded as `‖x_t − x_star‖` with entry 0 the initial
//! error, so a run of `k` iterations yields `k+1` values per trial.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{AgmError, Result};
use crate::linalg::{GeneralMatrix, SymmetricMatrix};
use crate::rng;

/// Trials whose error exceeds this are aborted and flagged as diverged.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

/// `y = Φ x_star + ω` with `ω ~ N(0, ρ²)` regenerated per trial from
/// `(noise_seed, trial)`, so schemes compared at equal trial index see
/// identical noise (paired comparison). An explicit `y` freezes the
/// right-hand side instead.
#[derive(Debug, Clone)]
pub struct LeastSquaresInstance {
    phi: GeneralMatrix,
    x_star: Vec<f64>,
    rho: f64,
    noise_seed: u64,
    explicit_y: Option<Vec<f64>>,
}

impl LeastSquaresInstance {
    pub fn new(phi: GeneralMatrix, x_star: Vec<f64>, rho: f64, noise_seed: u64) -> Result<Self> {
        if phi.rows() == 0 || phi.cols() == 0 {
            return Err(AgmError::InvalidInput("instance needs n, d >= 1".into()));
        }
        if phi.cols() != x_star.len() {
            return Err(AgmError::DimensionMismatch(format!(
                "Phi has {} columns but x_star has {} entries",
                phi.cols(),
                x_star.len()
            )));
        }
        if !(rho >= 0.0) {
            return Err(AgmError::InvalidInput("rho must be >= 0".into()));
        }
        Ok(LeastSquaresInstance {
            phi,
            x_star,
            rho,
            noise_seed,
            explicit_y: None,
        })
    }

    /// Fixed right-hand side; `x_star` remains the comparison point for the
    /// error trace.
    pub fn with_explicit_y(phi: GeneralMatrix, y: Vec<f64>, x_star: Vec<f64>) -> Result<Self> {
        if phi.rows() != y.len() {
            return Err(AgmError::DimensionMismatch(format!(
                "Phi has {} rows but y has {} entries",
                phi.rows(),
                y.len()
            )));
        }
        let mut inst = Self::new(phi, x_star, 0.0, 0)?;
        inst.explicit_y = Some(y);
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.phi.rows()
    }

    pub fn d(&self) -> usize {
        self.phi.cols()
    }

    pub fn phi(&self) -> &GeneralMatrix {
        &self.phi
    }

    pub fn x_star(&self) -> &[f64] {
        &self.x_star
    }

    pub fn row_norms_squared(&self) -> Vec<f64> {
        (0..self.n())
            .map(|i| self.phi.row(i).iter().map(|x| x * x).sum())
            .collect()
    }

    pub fn max_row_norm_squared(&self) -> f64 {
        self.row_norms_squared()
            .into_iter()
            .fold(0.0_f64, f64::max)
    }

    /// Right-hand side for one trial.
    pub fn y_for_trial(&self, trial: u64) -> Vec<f64> {
        if let Some(y) = &self.explicit_y {
            return y.clone();
        }
        let clean = self.phi.matvec(&self.x_star);
        if self.rho == 0.0 {
            return clean;
        }
        let mut stream = rng::stream(self.noise_seed, &[rng::tag::SOLVER_NOISE, trial]);
        let noise = Normal::new(0.0, self.rho).unwrap();
        clean
            .into_iter()
            .map(|c| c + noise.sample(&mut stream))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerScheme {
    WithReplacementUniform,
    /// Fresh uniform permutation each epoch.
    WithoutReplacementPermutation,
    /// Probabilities ∝ ‖φ_i‖^power; power 2 is the Strohmer–Vershynin
    /// convention and the default.
    RowNormWeighted { power: u32 },
    DeterministicCycle,
}

impl SamplerScheme {
    pub fn label(&self) -> &'static str {
        match self {
            SamplerScheme::WithReplacementUniform => "with-replacement",
            SamplerScheme::WithoutReplacementPermutation => "without-replacement",
            SamplerScheme::RowNormWeighted { .. } => "row-norm-weighted",
            SamplerScheme::DeterministicCycle => "deterministic-cycle",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub scheme: SamplerScheme,
    pub seed: u64,
}

/// The full index sequence for one trial, derived from
/// `(seed, trial, epoch)` so traces are independent of execution order.
pub fn draw_indices(
    config: &SamplerConfig,
    trial: u64,
    n: usize,
    steps: usize,
    row_norms_squared: &[f64],
) -> Vec<usize> {
    match config.scheme {
        SamplerScheme::WithReplacementUniform => {
            let mut s = rng::stream(config.seed, &[rng::tag::SOLVER_SAMPLER, trial]);
            (0..steps).map(|_| s.gen_range(0..n)).collect()
        }
        SamplerScheme::WithoutReplacementPermutation => {
            let mut out = Vec::with_capacity(steps);
            let mut epoch = 0u64;
            while out.len() < steps {
                let mut s =
                    rng::stream(config.seed, &[rng::tag::SOLVER_SAMPLER, trial, epoch]);
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    let j = s.gen_range(0..=i);
                    perm.swap(i, j);
                }
                out.extend_from_slice(&perm);
                epoch += 1;
            }
            out.truncate(steps);
            out
        }
        SamplerScheme::RowNormWeighted { power } => {
            let mut s = rng::stream(config.seed, &[rng::tag::SOLVER_SAMPLER, trial]);
            let weights: Vec<f64> = row_norms_squared
                .iter()
                .map(|&sq| match power {
                    1 => sq.sqrt(),
                    _ => sq,
                })
                .collect();
            let total: f64 = weights.iter().sum();
            (0..steps)
                .map(|_| {
                    let mut u = s.gen_range(0.0..total);
                    for (i, w) in weights.iter().enumerate() {
                        if u < *w {
                            return i;
                        }
                        u -= w;
                    }
                    n - 1
                })
                .collect()
        }
        SamplerScheme::DeterministicCycle => (0..steps).map(|t| t % n).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    Constant(f64),
    /// γ_t = 1/t, t = 1, 2, ...
    Harmonic,
    /// Unit Newton step γ = 1/‖φ_i‖² (the Kaczmarz projection).
    KaczmarzExact,
}

/// Error traces of a multi-trial run; `errors[trial][iter]`.
#[derive(Debug, Clone, Serialize)]
pub struct SolverRun {
    pub scheme: String,
    pub errors: Vec<Vec<f64>>,
    pub diverged: Vec<bool>,
    /// Steps skipped because the sampled row was zero.
    pub skipped_zero_rows: u64,
    /// Final iterate of trial 0 (diagnostic).
    pub final_iterate: Vec<f64>,
}

impl SolverRun {
    pub fn final_errors(&self) -> Vec<f64> {
        self.errors.iter().map(|t| *t.last().unwrap()).collect()
    }

    pub fn median_final_error(&self) -> f64 {
        median(&mut self.final_errors())
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn norm_of_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

struct TrialTrace {
    errors: Vec<f64>,
    diverged: bool,
    skipped: u64,
    final_x: Vec<f64>,
}

fn run_trial(
    instance: &LeastSquaresInstance,
    indices: &[usize],
    step_rule: StepRule,
    x0: Option<&[f64]>,
    trial: u64,
) -> TrialTrace {
    let d = instance.d();
    let mut x = x0.map(<[f64]>::to_vec).unwrap_or_else(|| vec![0.0; d]);
    let y = instance.y_for_trial(trial);
    let mut errors = Vec::with_capacity(indices.len() + 1);
    errors.push(norm_of_diff(&x, instance.x_star()));
    let mut skipped = 0u64;
    let mut diverged = false;
    for (t, &i) in indices.iter().enumerate() {
        let a = instance.phi.row(i);
        let norm_sq: f64 = a.iter().map(|v| v * v).sum();
        let gamma = match step_rule {
            StepRule::Constant(g) => g,
            StepRule::Harmonic => 1.0 / (t as f64 + 1.0),
            StepRule::KaczmarzExact => {
                if norm_sq == 0.0 {
                    // Projection onto a zero row is undefined; skip.
                    skipped += 1;
                    errors.push(*errors.last().unwrap());
                    continue;
                }
                1.0 / norm_sq
            }
        };
        let residual: f64 = a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum::<f64>() - y[i];
        for (xi, ai) in x.iter_mut().zip(a) {
            *xi -= gamma * residual * ai;
        }
        let err = norm_of_diff(&x, instance.x_star());
        errors.push(err);
        if !err.is_finite() || err > DIVERGENCE_LIMIT {
            diverged = true;
            break;
        }
    }
    TrialTrace {
        errors,
        diverged,
        skipped,
        final_x: x,
    }
}

fn run_solver(
    instance: &LeastSquaresInstance,
    sampler: &SamplerConfig,
    step_rule: StepRule,
    steps: usize,
    trials: usize,
    x0: Option<&[f64]>,
) -> SolverRun {
    let row_norms = instance.row_norms_squared();
    let traces: Vec<TrialTrace> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let indices = draw_indices(sampler, trial, instance.n(), steps, &row_norms);
            run_trial(instance, &indices, step_rule, x0, trial)
        })
        .collect();
    let skipped = traces.iter().map(|t| t.skipped).sum();
    let final_iterate = traces
        .first()
        .map(|t| t.final_x.clone())
        .unwrap_or_default();
    SolverRun {
        scheme: sampler.scheme.label().to_string(),
        errors: traces.iter().map(|t| t.errors.clone()).collect(),
        diverged: traces.iter().map(|t| t.diverged).collect(),
        skipped_zero_rows: skipped,
        final_iterate,
    }
}

/// Incremental gradient method on `½(aᵀx − y)²` summands: per step
/// `x ← x − γ_t (a_iᵀx − y_i) a_i`.
pub fn run_igm(
    instance: &LeastSquaresInstance,
    sampler: &SamplerConfig,
    step_rule: StepRule,
    steps: usize,
    trials: usize,
    x0: Option<&[f64]>,
) -> SolverRun {
    run_solver(instance, sampler, step_rule, steps, trials, x0)
}

/// Randomized Kaczmarz: orthogonal projection onto the sampled row's
/// hyperplane each step.
pub fn run_kaczmarz(
    instance: &LeastSquaresInstance,
    sampler: &SamplerConfig,
    steps: usize,
    trials: usize,
    x0: Option<&[f64]>,
) -> SolverRun {
    run_solver(instance, sampler, StepRule::KaczmarzExact, steps, trials, x0)
}

/// Default safe constant step for IGM experiments: `γ = 0.5 / max ‖a_i‖²`.
pub fn default_igm_step(instance: &LeastSquaresInstance) -> f64 {
    0.5 / instance.max_row_norm_squared()
}

/// Error vector from the expanded Kaczmarz product form
/// `x_k − x_star = ∏_{t=k..1}(I − φ_{i_t}φ_{i_t}ᵀ/‖φ_{i_t}‖²)(x₀ − x_star)`
/// for a noiseless consistent system.
pub fn kaczmarz_product_form_error(
    instance: &LeastSquaresInstance,
    indices: &[usize],
    x0: &[f64],
) -> Vec<f64> {
    let mut e: Vec<f64> = x0
        .iter()
        .zip(instance.x_star())
        .map(|(a, b)| a - b)
        .collect();
    for &i in indices {
        let a = instance.phi.row(i);
        let norm_sq: f64 = a.iter().map(|v| v * v).sum();
        if norm_sq == 0.0 {
            continue;
        }
        let proj: f64 = a.iter().zip(&e).map(|(ai, ei)| ai * ei).sum::<f64>() / norm_sq;
        for (ei, ai) in e.iter_mut().zip(a) {
            *ei -= proj * ai;
        }
    }
    e
}

/// Scalar mean problem: rows φ_i = 1, harmonic steps, x₀ = 0, exactly n
/// steps. Returns `(x_n, |x_n − μ_y|)`; without replacement the error is 0
/// to machine precision because x_n is the mean of each y exactly once.
pub fn scalar_mean_problem(ys: &[f64], scheme: SamplerScheme, seed: u64) -> Result<(f64, f64)> {
    if ys.is_empty() {
        return Err(AgmError::InvalidInput("need at least one observation".into()));
    }
    let n = ys.len();
    let mean = ys.iter().sum::<f64>() / n as f64;
    let phi = GeneralMatrix::from_rows(n, 1, vec![1.0; n])?;
    let instance = LeastSquaresInstance::with_explicit_y(phi, ys.to_vec(), vec![mean])?;
    let run = run_igm(
        &instance,
        &SamplerConfig { scheme, seed },
        StepRule::Harmonic,
        n,
        1,
        None,
    );
    Ok((run.final_iterate[0], *run.errors[0].last().unwrap()))
}

fn validate_weighted(betas: &[f64], gamma: f64) -> Result<()> {
    if betas.is_empty() || betas.iter().any(|&b| !(b > 0.0)) {
        return Err(AgmError::InvalidInput("betas must be positive".into()));
    }
    let max_beta = betas.iter().cloned().fold(0.0_f64, f64::max);
    if !(gamma > 0.0 && gamma < 1.0 / max_beta) {
        return Err(AgmError::InvalidInput(format!(
            "gamma must satisfy 0 < gamma < 1/max(beta) = {}",
            1.0 / max_beta
        )));
    }
    Ok(())
}

/// Weighted scalar problem: per step `x ← x − γβ_i(x − y)`, x₀ = 0, one pass
/// of n steps. Returns the simulated `|x_n − y|`.
pub fn scalar_weighted_problem(
    betas: &[f64],
    y: f64,
    gamma: f64,
    scheme: SamplerScheme,
    seed: u64,
    trial: u64,
) -> Result<f64> {
    validate_weighted(betas, gamma)?;
    let n = betas.len();
    let config = SamplerConfig { scheme, seed };
    let indices = draw_indices(&config, trial, n, n, &betas.iter().map(|b| b * b).collect::<Vec<_>>());
    let mut e = -y; // x0 - y
    for i in indices {
        e *= 1.0 - gamma * betas[i];
    }
    Ok(e.abs())
}

/// Exact without-replacement error `|y|·∏(1 − γβ_i)`.
pub fn weighted_wo_closed_form(betas: &[f64], y: f64, gamma: f64) -> Result<f64> {
    validate_weighted(betas, gamma)?;
    Ok(y.abs() * betas.iter().map(|b| 1.0 - gamma * b).product::<f64>())
}

/// With-replacement expected error `|y|·(1 − γ·mean β)ⁿ` (independence of
/// the n uniform factors; all factors positive in the valid γ range).
pub fn weighted_wr_expectation(betas: &[f64], y: f64, gamma: f64) -> Result<f64> {
    validate_weighted(betas, gamma)?;
    let mean = betas.iter().sum::<f64>() / betas.len() as f64;
    Ok(y.abs() * (1.0 - gamma * mean).powi(betas.len() as i32))
}

/// Closed-form one-epoch without-replacement IGM risk
/// `E‖x_n − x_star‖² = E_σ‖∏(I−γA_σ)e₀‖² + ρ²γ²·Σ_ℓ E_σ‖∏_{j>ℓ}(I−γA_σ)φ_σ(ℓ)‖²`,
/// evaluated by enumerating all n! permutations (distinct indices make the
/// per-row noises independent, so cross terms vanish).
pub fn igm_epoch_risk_wo(
    phi: &GeneralMatrix,
    e0: &[f64],
    gamma: f64,
    rho: f64,
) -> Result<f64> {
    let n = phi.rows();
    let d = phi.cols();
    if n > 8 {
        return Err(AgmError::InvalidInput(
            "permutation enumeration limited to n <= 8".into(),
        ));
    }
    let contractions: Vec<GeneralMatrix> = (0..n)
        .map(|i| {
            GeneralMatrix::identity(d).sub(&GeneralMatrix::outer(phi.row(i)).scale(gamma))
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total_bias = 0.0;
    let mut total_var = 0.0;
    let mut count = 0u64;
    permute(&mut perm, 0, &mut |p| {
        count += 1;
        // Bias: apply contractions in order p(0), p(1), ... to e0.
        let mut e = e0.to_vec();
        for &i in p {
            e = contractions[i].matvec(&e);
        }
        total_bias += e.iter().map(|x| x * x).sum::<f64>();
        // Variance: noise injected at step ℓ sees the remaining steps.
        for l in 0..n {
            let mut v = phi.row(p[l]).to_vec();
            for &i in &p[l + 1..] {
                v = contractions[i].matvec(&v);
            }
            total_var += v.iter().map(|x| x * x).sum::<f64>();
        }
    });
    let m = count as f64;
    Ok(total_bias / m + rho * rho * gamma * gamma * total_var / m)
}

fn permute<F: FnMut(&[usize])>(perm: &mut Vec<usize>, depth: usize, f: &mut F) {
    if depth == perm.len() {
        f(perm);
        return;
    }
    for i in depth..perm.len() {
        perm.swap(depth, i);
        permute(perm, depth + 1, f);
        perm.swap(depth, i);
    }
}

/// Empirical and (for gaussian rows) analytic moment matrices:
/// `Λ_n = (1/n)Σ a aᵀ`, `Δ_n = (1/n)Σ‖a‖² a aᵀ`, `Λ = I`, `Δ = (d+2)I`.
pub struct MomentMatrices {
    pub lambda_n: SymmetricMatrix,
    pub delta_n: SymmetricMatrix,
    pub lambda_analytic: Option<SymmetricMatrix>,
    pub delta_analytic: Option<SymmetricMatrix>,
}

pub fn moment_matrices(rows: &GeneralMatrix, gaussian_analytic: bool) -> MomentMatrices {
    let n = rows.rows();
    let d = rows.cols();
    let mut lam = GeneralMatrix::zeros(d, d);
    let mut del = GeneralMatrix::zeros(d, d);
    for i in 0..n {
        let a = rows.row(i);
        let outer = GeneralMatrix::outer(a);
        let norm_sq: f64 = a.iter().map(|x| x * x).sum();
        lam.add_assign(&outer);
        del.add_assign(&outer.scale(norm_sq));
    }
    let scale = 1.0 / n as f64;
    let (lambda_analytic, delta_analytic) = if gaussian_analytic {
        let (l, dl) = crate::randmat::gaussian_vector_moments(d);
        (Some(l), Some(dl))
    } else {
        (None, None)
    };
    MomentMatrices {
        lambda_n: SymmetricMatrix::from_general(&lam.scale(scale)).unwrap(),
        delta_n: SymmetricMatrix::from_general(&del.scale(scale)).unwrap(),
        lambda_analytic,
        delta_analytic,
    }
}

/// Rows drawn uniformly from the unit sphere (normalized standard
/// gaussians).
pub fn haar_rows(n: usize, d: usize, seed: u64) -> GeneralMatrix {
    let mut data = Vec::with_capacity(n * d);
    for i in 0..n as u64 {
        let mut s = rng::stream(seed, &[rng::tag::HAAR, i]);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let mut v: Vec<f64> = (0..d).map(|_| normal.sample(&mut s)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut v {
            *x /= norm;
        }
        data.extend(v);
    }
    GeneralMatrix::from_rows(n, d, data).unwrap()
}

/// Rows with i.i.d. standard gaussian entries.
pub fn gaussian_rows(n: usize, d: usize, seed: u64) -> GeneralMatrix {
    let mut data = Vec::with_capacity(n * d);
    for i in 0..n as u64 {
        let mut s = rng::stream(seed, &[rng::tag::HAAR, i, 1]);
        let normal = Normal::new(0.0, 1.0).unwrap();
        data.extend((0..d).map(|_| normal.sample(&mut s)));
    }
    GeneralMatrix::from_rows(n, d, data).unwrap()
}

/// Long-format trace CSV: `iter,trial,scheme,error`.
pub fn write_trace_csv(path: &Path, runs: &[&SolverRun]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["iter", "trial", "scheme", "error"])?;
    for run in runs {
        for (trial, trace) in run.errors.iter().enumerate() {
            for (iter, err) in trace.iter().enumerate() {
                w.write_record([
                    iter.to_string(),
                    trial.to_string(),
                    run.scheme.clone(),
                    format!("{:.17e}", err),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Summary CSV: `iter,scheme,median_error,mean_error,stderr`, aggregated per
/// iteration across trials (order-independent).
pub fn write_summary_csv(path: &Path, runs: &[&SolverRun]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["iter", "scheme", "median_error", "mean_error", "stderr"])?;
    for run in runs {
        let iters = run.errors.iter().map(Vec::len).max().unwrap_or(0);
        for iter in 0..iters {
            let mut vals: Vec<f64> = run
                .errors
                .iter()
                .filter_map(|t| t.get(iter).copied())
                .collect();
            if vals.is_empty() {
                continue;
            }
            let m = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / m;
            let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (m - 1.0).max(1.0);
            let med = median(&mut vals);
            w.write_record([
                iter.to_string(),
                run.scheme.clone(),
                format!("{:.17e}", med),
                format!("{:.17e}", mean),
                format!("{:.17e}", (var / m).sqrt()),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::Frame;

    const WR: SamplerConfig = SamplerConfig {
        scheme: SamplerScheme::WithReplacementUniform,
        seed: 5,
    };
    const WO: SamplerConfig = SamplerConfig {
        scheme: SamplerScheme::WithoutReplacementPermutation,
        seed: 5,
    };

    #[test]
    fn scalar_mean_without_replacement_is_exact() {
        let ys = [3.0, -1.0, 7.5, 0.25, 2.0];
        let (x, err) =
            scalar_mean_problem(&ys, SamplerScheme::WithoutReplacementPermutation, 1).unwrap();
        let mean = ys.iter().sum::<f64>() / 5.0;
        assert!((x - mean).abs() < 1e-14);
        assert!(err < 1e-14);

        // Constant observations: both schemes exact.
        let cs = [4.0; 6];
        for scheme in [
            SamplerScheme::WithReplacementUniform,
            SamplerScheme::WithoutReplacementPermutation,
        ] {
            let (x, err) = scalar_mean_problem(&cs, scheme, 2).unwrap();
            assert!((x - 4.0).abs() < 1e-14 && err < 1e-14);
        }
        assert!(scalar_mean_problem(&[], WR.scheme, 0).is_err());
    }

    #[test]
    fn scalar_mean_wr_mse_matches_sigma2_over_n() {
        // ys drawn from a fixed empirical set; the with-replacement estimator
        // is the mean of n i.i.d. uniform picks, so its MSE about μ_y is
        // Var(y)/n (population variance).
        let ys = [1.0, 2.0, 3.0, 4.0];
        let n = ys.len() as f64;
        let mu = ys.iter().sum::<f64>() / n;
        let pop_var = ys.iter().map(|y| (y - mu) * (y - mu)).sum::<f64>() / n;
        let trials = 40_000u64;
        let mut sq = Vec::with_capacity(trials as usize);
        for t in 0..trials {
            let (x, _) =
                scalar_mean_problem(&ys, SamplerScheme::WithReplacementUniform, 1000 + t).unwrap();
            sq.push((x - mu) * (x - mu));
        }
        let m = trials as f64;
        let mean = sq.iter().sum::<f64>() / m;
        let var = sq.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
        let se = (var / m).sqrt();
        let target = pop_var / n;
        assert!(
            (mean - target).abs() <= 4.0 * se,
            "mse {} target {} se {}",
            mean,
            target,
            se
        );
    }

    #[test]
    fn weighted_scalar_closed_forms() {
        let betas = [1.0, 3.0];
        let wo = weighted_wo_closed_form(&betas, 1.0, 0.2).unwrap();
        let wr = weighted_wr_expectation(&betas, 1.0, 0.2).unwrap();
        assert!((wo - 0.32).abs() < 1e-15);
        assert!((wr - 0.36).abs() < 1e-15);
        assert!(wo <= wr);

        // Equal betas: the two coincide.
        let eq = [2.0, 2.0, 2.0];
        let a = weighted_wo_closed_form(&eq, 5.0, 0.1).unwrap();
        let b = weighted_wr_expectation(&eq, 5.0, 0.1).unwrap();
        assert!((a - b).abs() < 1e-14);

        // Simulated wo equals the closed form exactly (product is
        // order-independent).
        let sim = scalar_weighted_problem(
            &betas,
            1.0,
            0.2,
            SamplerScheme::WithoutReplacementPermutation,
            3,
            0,
        )
        .unwrap();
        assert!((sim - 0.32).abs() < 1e-15);

        assert!(weighted_wo_closed_form(&betas, 1.0, 0.5).is_err()); // γ ≥ 1/3
        assert!(weighted_wo_closed_form(&[], 1.0, 0.1).is_err());
    }

    #[test]
    fn weighted_scalar_wr_simulation_matches_expectation() {
        let betas = [0.5, 1.0, 2.0, 3.0];
        let gamma = 0.25;
        let target = weighted_wr_expectation(&betas, 2.0, gamma).unwrap();
        let trials = 50_000u64;
        let vals: Vec<f64> = (0..trials)
            .map(|t| {
                scalar_weighted_problem(
                    &betas,
                    2.0,
                    gamma,
                    SamplerScheme::WithReplacementUniform,
                    9,
                    t,
                )
                .unwrap()
            })
            .collect();
        let m = trials as f64;
        let mean = vals.iter().sum::<f64>() / m;
        let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
        let se = (var / m).sqrt();
        assert!((mean - target).abs() <= 4.0 * se);
    }

    #[test]
    fn igm_fixed_point_and_determinism() {
        let phi = gaussian_rows(5, 3, 17);
        let x_star = vec![1.0, -2.0, 0.5];
        let inst = LeastSquaresInstance::new(phi, x_star.clone(), 0.0, 3).unwrap();
        let gamma = default_igm_step(&inst);
        let run = run_igm(&inst, &WR, StepRule::Constant(gamma), 50, 3, Some(&x_star));
        for trace in &run.errors {
            for e in trace {
                assert!(*e < 1e-12);
            }
        }
        // Bitwise determinism across repeated runs.
        let run2 = run_igm(&inst, &WR, StepRule::Constant(gamma), 50, 3, Some(&x_star));
        assert_eq!(run.errors, run2.errors);
    }

    #[test]
    fn igm_orthonormal_rows_one_epoch_exact() {
        let inst = LeastSquaresInstance::new(
            GeneralMatrix::identity(4),
            vec![2.0, -1.0, 0.5, 3.0],
            0.0,
            0,
        )
        .unwrap();
        let run = run_igm(&inst, &WO, StepRule::Constant(1.0), 4, 5, None);
        for trace in &run.errors {
            assert!(*trace.last().unwrap() < 1e-14);
        }
    }

    #[test]
    fn igm_epoch_risk_matches_simulation() {
        // n=4, d=2, one epoch without replacement, noisy observations.
        let phi = gaussian_rows(4, 2, 23);
        let x_star = vec![0.7, -0.3];
        let rho = 0.1;
        let inst = LeastSquaresInstance::new(phi.clone(), x_star.clone(), rho, 51).unwrap();
        let gamma = default_igm_step(&inst);
        let e0: Vec<f64> = x_star.iter().map(|v| -v).collect(); // x0 = 0
        let predicted = igm_epoch_risk_wo(&phi, &e0, gamma, rho).unwrap();

        let trials = 30_000;
        let run = run_igm(&inst, &WO, StepRule::Constant(gamma), 4, trials, None);
        let sq: Vec<f64> = run.final_errors().iter().map(|e| e * e).collect();
        let m = trials as f64;
        let mean = sq.iter().sum::<f64>() / m;
        let var = sq.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
        let se = (var / m).sqrt();
        assert!(
            (mean - predicted).abs() <= 4.0 * se,
            "simulated {} predicted {} se {}",
            mean,
            predicted,
            se
        );
    }

    #[test]
    fn kaczmarz_single_row_projects_exactly() {
        let phi = GeneralMatrix::from_rows(1, 2, vec![3.0, 4.0]).unwrap();
        let inst = LeastSquaresInstance::new(phi.clone(), vec![1.0, 1.0], 0.0, 0).unwrap();
        let run = run_kaczmarz(
            &inst,
            &SamplerConfig {
                scheme: SamplerScheme::DeterministicCycle,
                seed: 0,
            },
            1,
            1,
            None,
        );
        // Residual on the row is zero after the projection.
        let y = inst.y_for_trial(0);
        let r: f64 = phi
            .row(0)
            .iter()
            .zip(&run.final_iterate)
            .map(|(a, x)| a * x)
            .sum::<f64>()
            - y[0];
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn kaczmarz_orthogonal_rows_solve_in_d_steps() {
        let inst = LeastSquaresInstance::new(
            GeneralMatrix::identity(3).scale(2.0),
            vec![1.0, 2.0, 3.0],
            0.0,
            0,
        )
        .unwrap();
        let run = run_kaczmarz(&inst, &WO, 3, 4, None);
        for trace in &run.errors {
            assert!(*trace.last().unwrap() < 1e-14);
        }
    }

    #[test]
    fn kaczmarz_product_form_equivalence() {
        for seed in 0..5 {
            let phi = gaussian_rows(6, 3, 30 + seed);
            let x_star = vec![0.3, 1.1, -0.6];
            let inst = LeastSquaresInstance::new(phi, x_star, 0.0, 0).unwrap();
            let config = SamplerConfig {
                scheme: SamplerScheme::WithReplacementUniform,
                seed: 70 + seed,
            };
            let indices = draw_indices(&config, 0, 6, 20, &inst.row_norms_squared());
            let run = run_kaczmarz(&inst, &config, 20, 1, None);
            let product_err = kaczmarz_product_form_error(&inst, &indices, &vec![0.0; 3]);
            let norm = product_err.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - run.errors[0].last().unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn kaczmarz_harmonic_frame_deterministic_order() {
        let frame = Frame::harmonic_2d(3).unwrap();
        let phi = frame.to_row_matrix();
        let x_star = vec![0.0, 0.0];
        let inst = LeastSquaresInstance::new(phi, x_star, 0.0, 0).unwrap();
        let run = run_kaczmarz(
            &inst,
            &SamplerConfig {
                scheme: SamplerScheme::DeterministicCycle,
                seed: 0,
            },
            3,
            1,
            Some(&[1.0, 0.0]), // x0 − x_star = e1
        );
        let final_err = *run.errors[0].last().unwrap();
        assert!(final_err <= 0.25 + 1e-12, "error {}", final_err);
    }

    #[test]
    fn kaczmarz_skips_zero_rows() {
        let phi = GeneralMatrix::from_rows(2, 2, vec![0.0, 0.0, 1.0, 0.0]).unwrap();
        let inst = LeastSquaresInstance::new(phi, vec![1.0, 0.0], 0.0, 0).unwrap();
        let run = run_kaczmarz(
            &inst,
            &SamplerConfig {
                scheme: SamplerScheme::DeterministicCycle,
                seed: 0,
            },
            2,
            1,
            None,
        );
        assert_eq!(run.skipped_zero_rows, 1);
        assert!(*run.errors[0].last().unwrap() < 1e-14);
    }

    #[test]
    fn divergence_is_flagged() {
        let phi = GeneralMatrix::from_rows(1, 1, vec![1.0]).unwrap();
        let inst = LeastSquaresInstance::new(phi, vec![0.0], 0.0, 0).unwrap();
        // γ = 3 gives |1 − γ| = 2 > 1: geometric divergence.
        let run = run_igm(
            &inst,
            &SamplerConfig {
                scheme: SamplerScheme::DeterministicCycle,
                seed: 0,
            },
            StepRule::Constant(3.0),
            200,
            1,
            Some(&[1.0]),
        );
        assert!(run.diverged[0]);
        assert!(run.errors[0].len() < 201);
    }

    #[test]
    fn row_norm_weighted_sampling_frequencies() {
        let config = SamplerConfig {
            scheme: SamplerScheme::RowNormWeighted { power: 2 },
            seed: 13,
        };
        let norms_sq = vec![1.0, 4.0]; // probabilities 0.2 / 0.8
        let idx = draw_indices(&config, 0, 2, 50_000, &norms_sq);
        let frac1 = idx.iter().filter(|&&i| i == 1).count() as f64 / 50_000.0;
        assert!((frac1 - 0.8).abs() < 0.02, "frac {}", frac1);

        // Power 1 weights by plain norms: 1/3 vs 2/3.
        let config1 = SamplerConfig {
            scheme: SamplerScheme::RowNormWeighted { power: 1 },
            seed: 13,
        };
        let idx1 = draw_indices(&config1, 0, 2, 50_000, &norms_sq);
        let frac = idx1.iter().filter(|&&i| i == 1).count() as f64 / 50_000.0;
        assert!((frac - 2.0 / 3.0).abs() < 0.02, "frac {}", frac);
    }

    #[test]
    fn wo_permutation_covers_each_epoch() {
        let config = WO;
        let idx = draw_indices(&config, 3, 4, 8, &[1.0; 4]);
        for epoch in 0..2 {
            let mut seen = [false; 4];
            for &i in &idx[epoch * 4..(epoch + 1) * 4] {
                seen[i] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn moment_matrices_cases() {
        // Orthonormal rows, n = d: Λ_n = (1/d)I.
        let m = moment_matrices(&GeneralMatrix::identity(3), false);
        for i in 0..3 {
            assert!((m.lambda_n.get(i, i) - 1.0 / 3.0).abs() < 1e-15);
        }

        // Harmonic frame rows: Λ_n = ½I.
        let frame = Frame::harmonic_2d(7).unwrap();
        let m = moment_matrices(&frame.to_row_matrix(), false);
        let gap = m
            .lambda_n
            .to_general()
            .sub(&GeneralMatrix::identity(2).scale(0.5))
            .max_abs();
        assert!(gap < 1e-12);

        // Gaussian rows: Λ_n ≈ I, Δ_n ≈ (d+2)I.
        let rows = gaussian_rows(200_000, 3, 99);
        let m = moment_matrices(&rows, true);
        let lam_gap = m
            .lambda_n
            .to_general()
            .sub(&m.lambda_analytic.unwrap().to_general())
            .max_abs();
        let del_gap = m
            .delta_n
            .to_general()
            .sub(&m.delta_analytic.unwrap().to_general())
            .max_abs();
        assert!(lam_gap < 0.03, "lambda gap {}", lam_gap);
        assert!(del_gap < 0.2, "delta gap {}", del_gap);
    }

    #[test]
    fn haar_rows_are_unit_norm() {
        let rows = haar_rows(50, 7, 4);
        for i in 0..50 {
            let norm: f64 = rows.row(i).iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn epoch_comparison_wo_beats_wr_on_frame() {
        let frame = Frame::general(8, 12).unwrap();
        let inst =
            LeastSquaresInstance::new(frame.to_row_matrix(), vec![1.0; 8], 0.0, 7).unwrap();
        let trials = 100;
        let steps = 12;
        let wo = run_kaczmarz(&inst, &WO, steps, trials, None);
        let wr = run_kaczmarz(&inst, &WR, steps, trials, None);
        assert!(wo.median_final_error() <= wr.median_final_error());
    }

    #[test]
    fn csv_outputs_have_expected_schema() {
        let inst = LeastSquaresInstance::new(
            GeneralMatrix::identity(2),
            vec![1.0, 1.0],
            0.0,
            0,
        )
        .unwrap();
        let run = run_kaczmarz(&inst, &WO, 2, 3, None);
        let dir = tempfile::tempdir().unwrap();
        let trace = dir.path().join("trace.csv");
        let summary = dir.path().join("summary.csv");
        write_trace_csv(&trace, &[&run]).unwrap();
        write_summary_csv(&summary, &[&run]).unwrap();
        let t = std::fs::read_to_string(&trace).unwrap();
        assert!(t.starts_with("iter,trial,scheme,error"));
        assert_eq!(t.lines().count(), 1 + 3 * 3); // header + 3 trials × 3 iters
        let s = std::fs::read_to_string(&summary).unwrap();
        assert!(s.starts_with("iter,scheme,median_error,mean_error,stderr"));
        assert_eq!(s.lines().count(), 1 + 3);
    }
}
