//! Dense symmetric/PSD matrix foundation: norms, eigenvalue extremes, PSD
//! testing, products.
//!
//! The eigensolver is cyclic Jacobi on symmetric matrices; spectral norms of
//! nonsymmetric matrices go through the symmetric eigenproblem on `MᵀM`.
//! Dimensions here are small (d up to a few hundred), so robustness wins over
//! asymptotic speed.

use serde::{Deserialize, Serialize};

use crate::error::{AgmError, Result};

/// Relative accuracy target for eigenvalues and spectral norms.
pub const EIG_TOLERANCE: f64 = 1e-10;
/// Slack allowed below zero when certifying positive semidefiniteness.
pub const PSD_TOLERANCE: f64 = 1e-10;
/// Constructors reject inputs whose asymmetry exceeds this relative bound.
pub const ASYMMETRY_TOLERANCE: f64 = 1e-8;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFFDIAG_TOL: f64 = 1e-14;

/// Dense real matrix, row-major. No shape constraints beyond consistency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl GeneralMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GeneralMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(AgmError::InvalidInput(format!(
                "expected {}x{} = {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(GeneralMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> GeneralMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn matmul(&self, other: &GeneralMatrix) -> GeneralMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GeneralMatrix) -> GeneralMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        GeneralMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &GeneralMatrix) -> GeneralMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        GeneralMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: f64) -> GeneralMatrix {
        GeneralMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &GeneralMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    pub fn pow(&self, k: u32) -> GeneralMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = self.matmul(out.as_ref());
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Outer product `v vᵀ`.
    pub fn outer(v: &[f64]) -> GeneralMatrix {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = v[i] * v[j];
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.data[i * self.cols + j] * v[j])
                    .sum()
            })
            .collect()
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl AsRef<GeneralMatrix> for GeneralMatrix {
    fn as_ref(&self) -> &GeneralMatrix {
        self
    }
}

/// Dense real symmetric matrix. Construction symmetrizes as `(M + Mᵀ)/2` and
/// rejects inputs whose asymmetry exceeds `ASYMMETRY_TOLERANCE · ‖M‖_F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(AgmError::InvalidInput(format!(
                "expected {}x{} entries, got {}",
                dim,
                dim,
                entries.len()
            )));
        }
        if !entries.iter().all(|x| x.is_finite()) {
            return Err(AgmError::NonFinite);
        }
        let frob = entries.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut asym: f64 = 0.0;
        let mut data = entries;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i];
                asym = asym.max((a - b).abs());
                let avg = 0.5 * (a + b);
                data[i * dim + j] = avg;
                data[j * dim + i] = avg;
            }
        }
        let tolerance = ASYMMETRY_TOLERANCE * frob.max(1.0);
        if asym > tolerance {
            return Err(AgmError::Asymmetric {
                asymmetry: asym,
                tolerance,
            });
        }
        Ok(SymmetricMatrix { dim, data })
    }

    pub fn from_general(m: &GeneralMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(AgmError::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                m.rows(),
                m.cols()
            )));
        }
        Self::new(m.rows(), m.data().to_vec())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_general(&GeneralMatrix::identity(n)).unwrap()
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            data[i * n + i] = *v;
        }
        Self::new(n, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn to_general(&self) -> GeneralMatrix {
        GeneralMatrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.clone(),
        }
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals = jacobi_eigenvalues(self.dim, self.data.clone());
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }
}

/// Symmetric matrix together with a certified smallest eigenvalue.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PsdMatrix {
    base: SymmetricMatrix,
    certified_min_eig: f64,
}

impl PsdMatrix {
    pub fn new(base: SymmetricMatrix) -> Result<Self> {
        let (verdict, min_eig) = is_psd(&base);
        if !verdict {
            return Err(AgmError::NotPsd { min_eig });
        }
        Ok(PsdMatrix {
            base,
            certified_min_eig: min_eig,
        })
    }

    pub fn base(&self) -> &SymmetricMatrix {
        &self.base
    }

    pub fn certified_min_eig(&self) -> f64 {
        self.certified_min_eig
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn to_general(&self) -> GeneralMatrix {
        self.base.to_general()
    }
}

/// Cyclic Jacobi sweeps. Converged when the off-diagonal Frobenius mass drops
/// below `1e-14 · ‖M‖_F`; at most 100 sweeps.
fn jacobi_eigenvalues(n: usize, mut a: Vec<f64>) -> Vec<f64> {
    if n == 1 {
        return vec![a[0]];
    }
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_OFFDIAG_TOL * frob;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    s += 2.0 * a[i * n + j] * a[i * n + j];
                }
            }
            s.sqrt()
        };
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Operator 2-norm (largest singular value), computed through the symmetric
/// eigenproblem on `MᵀM`.
pub fn spectral_norm(m: &GeneralMatrix) -> Result<f64> {
    if !m.is_finite() {
        return Err(AgmError::NonFinite);
    }
    let gram = m.transpose().matmul(m);
    // Gram matrices are symmetric up to round-off; bypass the asymmetry gate.
    let vals = jacobi_eigenvalues(gram.rows(), gram.data().to_vec());
    let max = vals.iter().fold(0.0_f64, |acc, v| acc.max(*v));
    Ok(max.max(0.0).sqrt())
}

/// `(λ_min, λ_max)` of a symmetric matrix.
pub fn min_max_eigenvalues(m: &SymmetricMatrix) -> Result<(f64, f64)> {
    let vals = m.eigenvalues();
    Ok((vals[0], vals[vals.len() - 1]))
}

/// PSD test with the witness min-eigenvalue. True iff
/// `λ_min ≥ −PSD_TOLERANCE · max(1, ‖m‖)`.
pub fn is_psd(m: &SymmetricMatrix) -> (bool, f64) {
    let vals = m.eigenvalues();
    let min_eig = vals[0];
    let max_abs = vals.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    (min_eig >= -PSD_TOLERANCE * max_abs.max(1.0), min_eig)
}
