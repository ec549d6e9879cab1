//! Harmonic-frame constructions and tight-frame verification.
//!
//! The d=2 family indexes vectors k = 1..n; the general-d families index
//! k = 0..n-1. Both conventions are kept so that the closed-form adjacency
//! tests stay literal.

use crate::error::{AgmError, Result};
use crate::expectations::MatrixTuple;
use crate::linalg::{GeneralMatrix, PsdMatrix, SymmetricMatrix};

const UNIT_NORM_TOL: f64 = 1e-12;
const TIGHTNESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    Harmonic2d,
    GeneralEvenD,
    GeneralOddD,
}

/// A normalized tight frame: unit vectors with `(1/n) Σ v_k v_kᵀ = (1/d) I`.
#[derive(Debug, Clone)]
pub struct Frame {
    d: usize,
    vectors: Vec<Vec<f64>>,
    kind: FrameKind,
}

fn planar(k: i64, n: usize) -> [f64; 2] {
    let angle = k as f64 * std::f64::consts::PI / n as f64;
    [angle.cos(), angle.sin()]
}

impl Frame {
    fn verify(d: usize, vectors: Vec<Vec<f64>>, kind: FrameKind) -> Result<Self> {
        let n = vectors.len();
        for (i, v) in vectors.iter().enumerate() {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(AgmError::FrameInvariant(format!(
                    "vector {} has norm {} (expected 1)",
                    i, norm
                )));
            }
        }
        let mut gram = GeneralMatrix::zeros(d, d);
        for v in &vectors {
            gram.add_assign(&GeneralMatrix::outer(v));
        }
        gram = gram.scale(1.0 / n as f64);
        let deviation = gram
            .sub(&GeneralMatrix::identity(d).scale(1.0 / d as f64))
            .frobenius_norm();
        if deviation > TIGHTNESS_TOL {
            return Err(AgmError::FrameInvariant(format!(
                "tight-frame identity violated: ||(1/n) Σ v vᵀ - I/d||_F = {:.3e}",
                deviation
            )));
        }
        Ok(Frame { d, vectors, kind })
    }

    /// Planar harmonic frame: `a_k = (cos kπ/n, sin kπ/n)` for k = 1..n.
    pub fn harmonic_2d(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(AgmError::InvalidInput(format!(
                "harmonic frame needs n >= 3 (got {})",
                n
            )));
        }
        let vectors = (1..=n as i64).map(|k| planar(k, n).to_vec()).collect();
        Self::verify(2, vectors, FrameKind::Harmonic2d)
    }

    /// General-dimension harmonic frame, k = 0..n-1.
    ///
    /// Even d concatenates the planar vectors at odd multiples of k scaled by
    /// `√(2/d)`; odd d leads with a constant `1/√2` entry and uses even
    /// multiples.
    pub fn general(d: usize, n: usize) -> Result<Self> {
        if d < 2 || n < d {
            return Err(AgmError::InvalidInput(format!(
                "general frame needs n >= d >= 2 (got d={}, n={})",
                d, n
            )));
        }
        if d == 2 {
            return Self::harmonic_2d(n);
        }
        let scale = (2.0 / d as f64).sqrt();
        let mut vectors = Vec::with_capacity(n);
        for k in 0..n as i64 {
            let mut v = Vec::with_capacity(d);
            if d % 2 == 0 {
                for m in (1..d as i64).step_by(2) {
                    v.extend_from_slice(&planar(m * k, n));
                }
            } else {
                v.push(std::f64::consts::FRAC_1_SQRT_2);
                for m in (2..d as i64).step_by(2) {
                    v.extend_from_slice(&planar(m * k, n));
                }
            }
            vectors.push(v.iter().map(|x| x * scale).collect());
        }
        let kind = if d % 2 == 0 {
            FrameKind::GeneralEvenD
        } else {
            FrameKind::GeneralOddD
        };
        Self::verify(d, vectors, kind)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn inner_product(&self, i: usize, j: usize) -> f64 {
        self.vectors[i]
            .iter()
            .zip(&self.vectors[j])
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Rank-one projector tuple `A_k = v_k v_kᵀ` in frame order.
    pub fn to_tuple(&self) -> MatrixTuple {
        let items = self
            .vectors
            .iter()
            .map(|v| {
                PsdMatrix::new(SymmetricMatrix::from_general(&GeneralMatrix::outer(v)).unwrap())
                    .unwrap()
            })
            .collect();
        MatrixTuple::new(items).unwrap()
    }

    /// Rows stacked into an n×d matrix (for solver instances).
    pub fn to_row_matrix(&self) -> GeneralMatrix {
        let n = self.len();
        let mut m = GeneralMatrix::zeros(n, self.d);
        for (i, v) in self.vectors.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                m.set(i, j, *x);
            }
        }
        m
    }
}

/// Closed form for adjacent inner products `f_iᵀ f_{i+1}` of the general-d
/// frames.
pub fn adjacent_inner_product_closed_form(d: usize, n: usize) -> f64 {
    let w = std::f64::consts::PI / n as f64;
    if d % 2 == 0 {
        let h = d as f64 / 2.0;
        (2.0 / d as f64) * ((h - 1.0) * w).cos() * ((h + 1.0) * w).sin() / w.sin()
            - (2.0 / d as f64) * w.cos()
    } else {
        let h = (d as f64 - 1.0) / 2.0;
        (2.0 / d as f64) * (h * w).cos() * ((h + 1.0) * w).sin() / w.sin() - 1.0 / d as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expectations::deterministic_product;
    use crate::linalg::spectral_norm;
    use std::f64::consts::PI;

    #[test]
    fn harmonic_2d_first_vector_n3() {
        let f = Frame::harmonic_2d(3).unwrap();
        let v = &f.vectors()[0];
        assert!((v[0] - 0.5).abs() < 1e-12);
        assert!((v[1] - (PI / 3.0).sin()).abs() < 1e-12);
        assert!((v[1] - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn adjacent_inner_products_are_cos_omega() {
        for n in [3usize, 5, 16, 64] {
            let f = Frame::harmonic_2d(n).unwrap();
            let expected = (PI / n as f64).cos();
            for k in 0..n - 1 {
                assert!((f.inner_product(k, k + 1) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn too_small_frames_rejected() {
        assert!(Frame::harmonic_2d(2).is_err());
        assert!(Frame::general(4, 3).is_err());
        assert!(Frame::general(1, 5).is_err());
    }

    #[test]
    fn general_frame_adjacent_closed_form() {
        for (d, n) in [(4usize, 64usize), (3, 32), (5, 48), (6, 64)] {
            let f = Frame::general(d, n).unwrap();
            let cf = adjacent_inner_product_closed_form(d, n);
            assert!(
                (f.inner_product(0, 1) - cf).abs() < 1e-10,
                "d={} n={}: {} vs {}",
                d,
                n,
                f.inner_product(0, 1),
                cf
            );
        }
    }

    #[test]
    fn general_frame_large_n_asymptotic() {
        let d = 4;
        let n = 1000;
        let f = Frame::general(d, n).unwrap();
        let approx = 1.0 - PI * PI * ((d * d - 1) as f64) / (6.0 * (n * n) as f64);
        assert!((f.inner_product(0, 1) - approx).abs() < 1e-6);
    }

    #[test]
    fn tuple_members_are_rank_one_projectors() {
        let t = Frame::harmonic_2d(5).unwrap().to_tuple();
        for m in t.items() {
            let g = m.to_general();
            assert!((g.trace() - 1.0).abs() < 1e-12);
            assert!(g.matmul(&g).sub(&g).max_abs() < 1e-12);
        }
    }

    #[test]
    fn ordered_product_norm_n3() {
        let t = Frame::harmonic_2d(3).unwrap().to_tuple();
        let p = deterministic_product(&t, &[0, 1, 2]).unwrap();
        let norm = spectral_norm(&p).unwrap();
        assert!((norm - 0.25).abs() < 1e-12); // cos^2(pi/3)
    }

    #[test]
    fn ordered_product_norm_closed_form_sweep() {
        for n in [3usize, 4, 7, 16, 33, 64] {
            let t = Frame::harmonic_2d(n).unwrap().to_tuple();
            let w = PI / n as f64;
            for k in [2usize, 3, n.min(8), n] {
                let order: Vec<usize> = (0..k).collect();
                let norm = spectral_norm(&deterministic_product(&t, &order).unwrap()).unwrap();
                let expected = w.cos().powi(k as i32 - 1);
                assert!(
                    (norm - expected).abs() < 1e-10,
                    "n={} k={}: {} vs {}",
                    n,
                    k,
                    norm,
                    expected
                );
            }
        }
    }
}
