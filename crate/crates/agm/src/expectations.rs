//! Exact and Monte Carlo evaluation of the with- and without-replacement
//! expectations of k-fold matrix products and their symmetric quadratic
//! forms.
//!
//! Conventions. An ordered index tuple `(j_1, ..., j_k)` denotes the product
//! built right-to-left: multiply by the matrix at the smallest position
//! first, then left-multiply by each subsequent factor, giving
//! `A_{j_k} ... A_{j_1}`. The quadratic form for the same tuple is
//! `A_{j_k} ... A_{j_1} A_{j_1} ... A_{j_k}`.

use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AgmError, Result};
use crate::linalg::{spectral_norm, GeneralMatrix, PsdMatrix, SymmetricMatrix};
use crate::rng;

/// Exact without-replacement enumeration is refused once the ordered-tuple
/// count `n!/(n-k)!` exceeds this cap.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// Default Monte Carlo sample count.
pub const DEFAULT_MC_SAMPLES: u64 = 100_000;

/// Ordered collection of PSD matrices sharing one dimension.
#[derive(Debug, Clone)]
pub struct MatrixTuple {
    d: usize,
    items: Vec<PsdMatrix>,
}

/// On-disk form: `{ "d": int, "n": int, "matrices": [[row-major reals], ...] }`.
#[derive(Serialize, Deserialize)]
struct TupleFile {
    d: usize,
    n: usize,
    matrices: Vec<Vec<f64>>,
}

impl MatrixTuple {
    pub fn new(items: Vec<PsdMatrix>) -> Result<Self> {
        let first = items
            .first()
            .ok_or_else(|| AgmError::InvalidInput("matrix tuple must be nonempty".into()))?;
        let d = first.dim();
        if items.iter().any(|m| m.dim() != d) {
            return Err(AgmError::DimensionMismatch(
                "all tuple members must share one dimension".into(),
            ));
        }
        Ok(MatrixTuple { d, items })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[PsdMatrix] {
        &self.items
    }

    pub fn get(&self, i: usize) -> &PsdMatrix {
        &self.items[i]
    }

    /// Arithmetic mean `M_A = (1/n) Σ A_i`.
    pub fn arithmetic_mean(&self) -> SymmetricMatrix {
        let mut acc = GeneralMatrix::zeros(self.d, self.d);
        for m in &self.items {
            acc.add_assign(&m.to_general());
        }
        SymmetricMatrix::from_general(&acc.scale(1.0 / self.items.len() as f64)).unwrap()
    }

    pub fn to_file(&self, path: &Path) -> Result<()> {
        let file = TupleFile {
            d: self.d,
            n: self.items.len(),
            matrices: self
                .items
                .iter()
                .map(|m| m.base().data().to_vec())
                .collect(),
        };
        std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path)?;
        let file: TupleFile = serde_json::from_str(&raw)?;
        if file.matrices.len() != file.n {
            return Err(AgmError::InvalidInput(format!(
                "tuple file declares n={} but holds {} matrices",
                file.n,
                file.matrices.len()
            )));
        }
        let items = file
            .matrices
            .into_iter()
            .map(|entries| PsdMatrix::new(SymmetricMatrix::new(file.d, entries)?))
            .collect::<Result<Vec<_>>>()?;
        MatrixTuple::new(items)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    WithReplacement,
    WithoutReplacement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Plain,
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct ExpectationSpec {
    pub k: usize,
    pub form: Form,
    pub scheme: Scheme,
    pub method: Method,
}

impl ExpectationSpec {
    pub fn exact(k: usize, form: Form, scheme: Scheme) -> Self {
        ExpectationSpec {
            k,
            form,
            scheme,
            method: Method::Exact,
        }
    }

    pub fn monte_carlo(k: usize, form: Form, scheme: Scheme, samples: u64, seed: u64) -> Self {
        ExpectationSpec {
            k,
            form,
            scheme,
            method: Method::MonteCarlo { samples, seed },
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.k == 0 {
            return Err(AgmError::InvalidSpec("product length k must be >= 1".into()));
        }
        if self.scheme == Scheme::WithoutReplacement && self.k > n {
            return Err(AgmError::InvalidSpec(format!(
                "without-replacement requires k <= n (k={}, n={})",
                self.k, n
            )));
        }
        if let Method::MonteCarlo { samples, .. } = self.method {
            if samples == 0 {
                return Err(AgmError::InvalidSpec("monte-carlo needs samples >= 1".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodUsed {
    Exact,
    MonteCarlo,
}

/// Result of an expectation evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectationReport {
    pub mean_matrix: GeneralMatrix,
    pub norm: f64,
    pub method_used: MethodUsed,
    pub samples: u64,
    /// Standard error of the per-sample `‖product‖` stream; 0 for exact.
    pub stderr_norm: f64,
}

impl ExpectationReport {
    fn exact(mean_matrix: GeneralMatrix) -> Result<Self> {
        let norm = spectral_norm(&mean_matrix)?;
        Ok(ExpectationReport {
            mean_matrix,
            norm,
            method_used: MethodUsed::Exact,
            samples: 0,
            stderr_norm: 0.0,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "norm": self.norm,
            "method": self.method_used,
            "samples": self.samples,
            "stderr_norm": self.stderr_norm,
            "matrix": self.mean_matrix.data(),
        })
    }
}

/// Number of ordered k-tuples of distinct indices, `n!/(n-k)!`.
pub fn ordered_tuple_count(n: usize, k: usize) -> u128 {
    ((n - k + 1)..=n).map(|x| x as u128).product()
}

/// Visit every ordered k-tuple of distinct indices from `0..n`.
pub fn for_each_ordered_tuple<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    let mut tuple = vec![0usize; k];
    let mut used = vec![false; n];
    fn rec<F: FnMut(&[usize])>(
        n: usize,
        k: usize,
        depth: usize,
        tuple: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f: &mut F,
    ) {
        if depth == k {
            f(tuple);
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                tuple[depth] = i;
                rec(n, k, depth + 1, tuple, used, f);
                used[i] = false;
            }
        }
    }
    rec(n, k, 0, &mut tuple, &mut used, &mut f);
}

/// Product `A_{j_k} ... A_{j_1}` for the ordered tuple `(j_1, ..., j_k)`.
fn tuple_product(t: &MatrixTuple, tuple: &[usize]) -> GeneralMatrix {
    let mut p = GeneralMatrix::identity(t.dim());
    for &j in tuple {
        p = t.get(j).to_general().matmul(&p);
    }
    p
}

/// Quadratic form `A_{j_k} ... A_{j_1} A_{j_1} ... A_{j_k}` = `DᵀD` with
/// `D = A_{j_1} ... A_{j_k}`.
fn tuple_quadratic(t: &MatrixTuple, tuple: &[usize]) -> GeneralMatrix {
    let mut d = GeneralMatrix::identity(t.dim());
    for &j in tuple {
        d = d.matmul(&t.get(j).to_general());
    }
    d.transpose().matmul(&d)
}

fn draw_indices<R: Rng>(rng: &mut R, n: usize, k: usize, scheme: Scheme, buf: &mut Vec<usize>) {
    buf.clear();
    match scheme {
        Scheme::WithReplacement => {
            for _ in 0..k {
                buf.push(rng.gen_range(0..n));
            }
        }
        Scheme::WithoutReplacement => {
            // Partial Fisher-Yates: first k entries of a random permutation.
            let mut pool: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = rng.gen_range(i..n);
                pool.swap(i, j);
                buf.push(pool[i]);
            }
        }
    }
}

fn monte_carlo(
    t: &MatrixTuple,
    spec: &ExpectationSpec,
    samples: u64,
    seed: u64,
    evaluate: fn(&MatrixTuple, &[usize]) -> GeneralMatrix,
) -> Result<ExpectationReport> {
    let d = t.dim();
    let mut mean = GeneralMatrix::zeros(d, d);
    let mut norm_sum = 0.0;
    let mut norm_sq_sum = 0.0;
    let mut indices = Vec::with_capacity(spec.k);
    for s in 0..samples {
        let mut stream = rng::stream(seed, &[rng::tag::MONTE_CARLO, s]);
        draw_indices(&mut stream, t.len(), spec.k, spec.scheme, &mut indices);
        let sample = evaluate(t, &indices);
        let norm = spectral_norm(&sample)?;
        norm_sum += norm;
        norm_sq_sum += norm * norm;
        mean.add_assign(&sample);
    }
    let m = samples as f64;
    let mean = mean.scale(1.0 / m);
    let variance = (norm_sq_sum / m - (norm_sum / m).powi(2)).max(0.0);
    let stderr_norm = if samples > 1 {
        (variance / (m - 1.0)).sqrt()
    } else {
        0.0
    };
    let norm = spectral_norm(&mean)?;
    Ok(ExpectationReport {
        mean_matrix: mean,
        norm,
        method_used: MethodUsed::MonteCarlo,
        samples,
        stderr_norm,
    })
}

fn enumerate_without_replacement(
    t: &MatrixTuple,
    k: usize,
    evaluate: fn(&MatrixTuple, &[usize]) -> GeneralMatrix,
) -> Result<GeneralMatrix> {
    let n = t.len();
    let count = ordered_tuple_count(n, k);
    if count > ENUMERATION_CAP as u128 {
        return Err(AgmError::EnumerationCapExceeded {
            tuples: count,
            cap: ENUMERATION_CAP,
        });
    }
    let mut acc = GeneralMatrix::zeros(t.dim(), t.dim());
    for_each_ordered_tuple(n, k, |tuple| {
        acc.add_assign(&evaluate(t, tuple));
    });
    Ok(acc.scale(1.0 / count as f64))
}

/// `E[∏ A]` under the requested scheme and method.
///
/// With-replacement exact uses the closed form `(M_A)^k`.
pub fn expect_product(t: &MatrixTuple, spec: &ExpectationSpec) -> Result<ExpectationReport> {
    debug_assert_eq!(spec.form, Form::Plain);
    spec.validate(t.len())?;
    match spec.method {
        Method::Exact => match spec.scheme {
            Scheme::WithReplacement => {
                let mean = t.arithmetic_mean().to_general().pow(spec.k as u32);
                ExpectationReport::exact(mean)
            }
            Scheme::WithoutReplacement => {
                let mean = enumerate_without_replacement(t, spec.k, tuple_product)?;
                ExpectationReport::exact(mean)
            }
        },
        Method::MonteCarlo { samples, seed } => {
            monte_carlo(t, spec, samples, seed, tuple_product)
        }
    }
}

/// `E[A_{i_k} ... A_{i_1} A_{i_1} ... A_{i_k}]` under the requested scheme.
///
/// With-replacement exact uses the recursion `M_1 = (1/n) Σ A_i²`,
/// `M_{t+1} = (1/n) Σ A_i M_t A_i`, which follows from independence of the
/// i.i.d. indices (cost `O(k n d³)`).
pub fn expect_quadratic(t: &MatrixTuple, spec: &ExpectationSpec) -> Result<ExpectationReport> {
    debug_assert_eq!(spec.form, Form::Quadratic);
    spec.validate(t.len())?;
    match spec.method {
        Method::Exact => match spec.scheme {
            Scheme::WithReplacement => {
                let n = t.len() as f64;
                let d = t.dim();
                let mut m = GeneralMatrix::zeros(d, d);
                for a in t.items() {
                    let g = a.to_general();
                    m.add_assign(&g.matmul(&g));
                }
                m = m.scale(1.0 / n);
                for _ in 1..spec.k {
                    let mut next = GeneralMatrix::zeros(d, d);
                    for a in t.items() {
                        let g = a.to_general();
                        next.add_assign(&g.matmul(&m).matmul(&g));
                    }
                    m = next.scale(1.0 / n);
                }
                ExpectationReport::exact(m)
            }
            Scheme::WithoutReplacement => {
                let mean = enumerate_without_replacement(t, spec.k, tuple_quadratic)?;
                ExpectationReport::exact(mean)
            }
        },
        Method::MonteCarlo { samples, seed } => {
            monte_carlo(t, spec, samples, seed, tuple_quadratic)
        }
    }
}

/// `E_wo[‖∏ A‖²]`: the without-replacement expectation of the squared norm,
/// with the norm inside the expectation.
pub fn expect_squared_norm(t: &MatrixTuple, spec: &ExpectationSpec) -> Result<(f64, f64)> {
    spec.validate(t.len())?;
    match spec.method {
        Method::Exact => {
            let n = t.len();
            let count = ordered_tuple_count(n, spec.k);
            if count > ENUMERATION_CAP as u128 {
                return Err(AgmError::EnumerationCapExceeded {
                    tuples: count,
                    cap: ENUMERATION_CAP,
                });
            }
            let mut acc = 0.0;
            let mut err: Option<AgmError> = None;
            for_each_ordered_tuple(n, spec.k, |tuple| {
                if err.is_some() {
                    return;
                }
                match spectral_norm(&tuple_product(t, tuple)) {
                    Ok(norm) => acc += norm * norm,
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            Ok((acc / count as f64, 0.0))
        }
        Method::MonteCarlo { samples, seed } => {
            let mut sum = 0.0;
            let mut sq_sum = 0.0;
            let mut indices = Vec::with_capacity(spec.k);
            for s in 0..samples {
                let mut stream = rng::stream(seed, &[rng::tag::MONTE_CARLO, s]);
                draw_indices(&mut stream, t.len(), spec.k, spec.scheme, &mut indices);
                let norm = spectral_norm(&tuple_product(t, &indices))?;
                sum += norm * norm;
                sq_sum += norm.powi(4);
            }
            let m = samples as f64;
            let mean = sum / m;
            let stderr = if samples > 1 {
                ((sq_sum / m - mean * mean).max(0.0) / (m - 1.0)).sqrt()
            } else {
                0.0
            };
            Ok((mean, stderr))
        }
    }
}

/// Deterministically ordered product `A_{order[last]} ... A_{order[0]}`
/// (smallest position applied first). Indices are zero-based.
pub fn deterministic_product(t: &MatrixTuple, order: &[usize]) -> Result<GeneralMatrix> {
    if order.is_empty() {
        return Err(AgmError::InvalidInput("order must be nonempty".into()));
    }
    if let Some(&bad) = order.iter().find(|&&i| i >= t.len()) {
        return Err(AgmError::InvalidInput(format!(
            "order index {} out of range for tuple of size {}",
            bad,
            t.len()
        )));
    }
    Ok(tuple_product(t, order))
}
