//! Checkers for the arithmetic-geometric mean inequalities and ordering
//! claims: the bias and variance conjectures, the strong (norm-inside) form,
//! the d^k worst-case bound, the two-matrix norm inequality, the hard-coded
//! Hermitian-squares witness, and the PSD-order comparison with its 3-matrix
//! counterexample.
//!
//! Conjecture checks on n >= 3 are search/report operations, not assertions:
//! a genuine violation beyond tolerance would be a finding and is meant to be
//! recorded, not asserted away.

use serde::{Deserialize, Serialize};

use crate::error::{AgmError, Result};
use crate::expectations::{
    expect_product, expect_quadratic, expect_squared_norm, ExpectationSpec, Form, MatrixTuple,
    Method, Scheme,
};
use crate::linalg::{is_psd, spectral_norm, GeneralMatrix, PsdMatrix, SymmetricMatrix};

/// Relative slack for declaring an inequality violated. A violation within
/// this tolerance is inconclusive, not false: round-off must not look like a
/// counterexample.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Holds,
    Inconclusive,
    Violated,
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityVerdict {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
    pub status: VerdictStatus,
    pub notes: String,
}

impl InequalityVerdict {
    pub fn new(lhs: f64, rhs: f64, notes: impl Into<String>) -> Self {
        let slack = CHECK_TOLERANCE * rhs.abs().max(1.0);
        Self::with_slack(lhs, rhs, slack, notes)
    }

    /// For Monte Carlo comparisons the slack is statistical (a multiple of
    /// the standard error) rather than a round-off allowance.
    pub fn with_slack(lhs: f64, rhs: f64, slack: f64, notes: impl Into<String>) -> Self {
        let status = if lhs <= rhs {
            VerdictStatus::Holds
        } else if lhs <= rhs + slack {
            VerdictStatus::Inconclusive
        } else {
            VerdictStatus::Violated
        };
        InequalityVerdict {
            lhs,
            rhs,
            holds: status != VerdictStatus::Violated,
            margin: rhs - lhs,
            status,
            notes: notes.into(),
        }
    }
}

/// `‖E_wo[∏ A]‖ <= ‖E_wr[∏ A]‖ = ‖(M_A)^k‖`.
pub fn check_bias_conjecture(
    t: &MatrixTuple,
    k: usize,
    method: Method,
) -> Result<InequalityVerdict> {
    let wo = expect_product(
        t,
        &ExpectationSpec {
            k,
            form: Form::Plain,
            scheme: Scheme::WithoutReplacement,
            method,
        },
    )?;
    let wr = expect_product(t, &ExpectationSpec::exact(k, Form::Plain, Scheme::WithReplacement))?;
    Ok(InequalityVerdict::new(
        wo.norm,
        wr.norm,
        format!("bias conjecture, k={}, wo stderr {:.3e}", k, wo.stderr_norm),
    ))
}

/// The quadratic-form inequality between the two sampling schemes.
pub fn check_variance_conjecture(
    t: &MatrixTuple,
    k: usize,
    method: Method,
) -> Result<InequalityVerdict> {
    let wo = expect_quadratic(
        t,
        &ExpectationSpec {
            k,
            form: Form::Quadratic,
            scheme: Scheme::WithoutReplacement,
            method,
        },
    )?;
    let wr =
        expect_quadratic(t, &ExpectationSpec::exact(k, Form::Quadratic, Scheme::WithReplacement))?;
    Ok(InequalityVerdict::new(
        wo.norm,
        wr.norm,
        format!("variance conjecture, k={}, wo stderr {:.3e}", k, wo.stderr_norm),
    ))
}

/// Strong form: `E_wo[‖∏ A‖²] <= ‖M_A‖^{2k}` (norm inside the expectation).
pub fn check_strong_conjecture(
    t: &MatrixTuple,
    k: usize,
    method: Method,
) -> Result<InequalityVerdict> {
    let spec = ExpectationSpec {
        k,
        form: Form::Plain,
        scheme: Scheme::WithoutReplacement,
        method,
    };
    let (lhs, stderr) = expect_squared_norm(t, &spec)?;
    let ma_norm = spectral_norm(&t.arithmetic_mean().to_general())?;
    let rhs = ma_norm.powi(2 * k as i32);
    Ok(InequalityVerdict::new(
        lhs,
        rhs,
        format!("strong conjecture, k={}, lhs stderr {:.3e}", k, stderr),
    ))
}

/// Worst-case theorem: `‖E_wo[∏ A]‖ <= d^k ‖(M_A)^k‖`; with an explicit
/// order, the left side is the deterministically ordered product instead.
pub fn check_worst_case_bound(
    t: &MatrixTuple,
    k: usize,
    order: Option<&[usize]>,
) -> Result<InequalityVerdict> {
    let lhs = match order {
        Some(order) => {
            if order.len() != k {
                return Err(AgmError::InvalidInput(format!(
                    "order length {} does not match k={}",
                    order.len(),
                    k
                )));
            }
            spectral_norm(&crate::expectations::deterministic_product(t, order)?)?
        }
        None => {
            expect_product(t, &ExpectationSpec::exact(k, Form::Plain, Scheme::WithoutReplacement))?
                .norm
        }
    };
    let wr = expect_product(t, &ExpectationSpec::exact(k, Form::Plain, Scheme::WithReplacement))?;
    let rhs = (t.dim() as f64).powi(k as i32) * wr.norm;
    Ok(InequalityVerdict::new(
        lhs,
        rhs,
        format!(
            "worst-case d^k bound, k={}, {}",
            k,
            if order.is_some() { "deterministic order" } else { "symmetrized" }
        ),
    ))
}

/// Two-matrix norm inequality: `‖AB‖ <= ‖A/2 + B/2‖²`.
pub fn check_bhatia(a: &PsdMatrix, b: &PsdMatrix) -> Result<InequalityVerdict> {
    if a.dim() != b.dim() {
        return Err(AgmError::DimensionMismatch(format!(
            "{} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let lhs = spectral_norm(&a.to_general().matmul(&b.to_general()))?;
    let mean = a.to_general().add(&b.to_general()).scale(0.5);
    let rhs = spectral_norm(&mean)?.powi(2);
    Ok(InequalityVerdict::new(lhs, rhs, "two-matrix norm bound"))
}

/// The 4x4 coefficient matrix of the Hermitian-squares certificate: 3/16 on
/// the diagonal, -1/16 off it. Its spectrum is {0, 1/4, 1/4, 1/4}.
pub fn ncsos_coefficient_matrix() -> SymmetricMatrix {
    let mut data = vec![-1.0 / 16.0; 16];
    for i in 0..4 {
        data[i * 4 + i] = 3.0 / 16.0;
    }
    SymmetricMatrix::new(4, data).unwrap()
}

/// Verifies the published sum-of-Hermitian-squares certificate for two
/// matrices: the coefficient matrix is PSD, the certificate reproduces
/// `X_R - X_L` entrywise, and the difference itself is PSD.
pub fn ncsos_witness_check(a: &PsdMatrix, b: &PsdMatrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(AgmError::DimensionMismatch(format!(
            "{} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let d = a.dim();
    let q = ncsos_coefficient_matrix();
    let (q_psd, _) = is_psd(&q);

    let ga = a.to_general();
    let gb = b.to_general();
    let mats = [&ga, &gb];

    // X_L = ((A+B)/2)^4, X_R = (A^4 + A B^2 A + B A^2 B + B^4)/4.
    let mean = ga.add(&gb).scale(0.5);
    let x_l = mean.pow(4);
    let x_r = ga
        .pow(4)
        .add(&ga.matmul(&gb).matmul(&gb).matmul(&ga))
        .add(&gb.matmul(&ga).matmul(&ga).matmul(&gb))
        .add(&gb.pow(4))
        .scale(0.25);
    let diff = x_r.sub(&x_l);

    // Certificate sum over p, q in [2]^2 of Q(p,q) A_{p(2)} A_{p(1)} A_{q(1)} A_{q(2)}.
    let mut cert = GeneralMatrix::zeros(d, d);
    for p in 0..4usize {
        let (p1, p2) = (p % 2, p / 2);
        for qi in 0..4usize {
            let (q1, q2) = (qi % 2, qi / 2);
            let coeff = q.get(p, qi);
            let term = mats[p2]
                .matmul(mats[p1])
                .matmul(mats[q1])
                .matmul(mats[q2]);
            cert.add_assign(&term.scale(coeff));
        }
    }
    let scale = diff.max_abs().max(1.0);
    let entrywise_ok = cert.sub(&diff).max_abs() <= 1e-10 * scale;

    let (diff_psd, _) = is_psd(&SymmetricMatrix::from_general(&diff)?);
    Ok(q_psd && entrywise_ok && diff_psd)
}

/// PSD ordering `lhs ≼ rhs`, decided by `is_psd(rhs - lhs)` with the witness
/// min-eigenvalue.
pub fn psd_order_check(lhs: &SymmetricMatrix, rhs: &SymmetricMatrix) -> Result<(bool, f64)> {
    if lhs.dim() != rhs.dim() {
        return Err(AgmError::DimensionMismatch(format!(
            "{} vs {}",
            lhs.dim(),
            rhs.dim()
        )));
    }
    let diff = SymmetricMatrix::from_general(&rhs.to_general().sub(&lhs.to_general()))?;
    Ok(is_psd(&diff))
}

/// A conjecture violation worth recording: the full tuple is serialized so
/// the finding can be reproduced.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub inequality: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub matrices: Vec<Vec<f64>>,
}

impl ViolationRecord {
    pub fn from_verdict(
        inequality: &str,
        t: &MatrixTuple,
        k: usize,
        seed: u64,
        verdict: &InequalityVerdict,
    ) -> Self {
        ViolationRecord {
            inequality: inequality.to_string(),
            n: t.len(),
            d: t.dim(),
            k,
            seed,
            lhs: verdict.lhs,
            rhs: verdict.rhs,
            matrices: t.items().iter().map(|m| m.base().data().to_vec()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::Frame;
    use crate::randmat::{EnsembleSpec, EntryDistribution};
    use std::f64::consts::PI;

    fn random_pair(d: usize, seed: u64) -> (PsdMatrix, PsdMatrix) {
        let spec = EnsembleSpec {
            d,
            r: d,
            n: 2,
            dist: EntryDistribution::gaussian(1.0),
            seed,
        };
        let t = crate::randmat::sample_tuple(&spec);
        (t.get(0).clone(), t.get(1).clone())
    }

    #[test]
    fn two_matrix_conjectures_hold() {
        for seed in 0..50 {
            let (a, b) = random_pair(3, seed);
            let t = MatrixTuple::new(vec![a.clone(), b.clone()]).unwrap();
            for k in 1..=2 {
                assert!(check_bias_conjecture(&t, k, Method::Exact).unwrap().holds);
                assert!(check_variance_conjecture(&t, k, Method::Exact).unwrap().holds);
            }
            assert!(check_bhatia(&a, &b).unwrap().holds);
        }
    }

    #[test]
    fn bhatia_trivial_cases() {
        let id = PsdMatrix::new(SymmetricMatrix::identity(2)).unwrap();
        let v = check_bhatia(&id, &id).unwrap();
        assert!(v.holds && v.margin.abs() < 1e-12);

        let a = PsdMatrix::new(SymmetricMatrix::diagonal(&[2.0, 0.0]).unwrap()).unwrap();
        let b = PsdMatrix::new(SymmetricMatrix::diagonal(&[0.0, 2.0]).unwrap()).unwrap();
        let v = check_bhatia(&a, &b).unwrap();
        assert!(v.holds && (v.lhs - 0.0).abs() < 1e-12 && (v.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ncsos_q_matrix_spectrum() {
        let q = ncsos_coefficient_matrix();
        let eigs = q.eigenvalues();
        assert!(eigs[0].abs() < 1e-12);
        for e in &eigs[1..] {
            assert!((e - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn ncsos_witness_random_and_equal() {
        let (a, b) = random_pair(3, 7);
        assert!(ncsos_witness_check(&a, &b).unwrap());
        assert!(ncsos_witness_check(&a, &a.clone()).unwrap());
    }

    #[test]
    fn two_matrix_psd_ordering() {
        // (A/2 + B/2)^2 - (AB + BA)/2 = (A/2 - B/2)^2 is PSD.
        for seed in 0..20 {
            let (a, b) = random_pair(3, 100 + seed);
            let ga = a.to_general();
            let gb = b.to_general();
            let lhs = SymmetricMatrix::from_general(
                &ga.matmul(&gb).add(&gb.matmul(&ga)).scale(0.5),
            )
            .unwrap();
            let rhs = SymmetricMatrix::from_general(&ga.add(&gb).scale(0.5).pow(2)).unwrap();
            let (ok, _) = psd_order_check(&lhs, &rhs).unwrap();
            assert!(ok);
        }
    }

    fn counterexample_triple() -> MatrixTuple {
        let a1 = PsdMatrix::new(
            SymmetricMatrix::new(2, vec![7.0, 0.0, 0.0, 0.0]).unwrap(),
        )
        .unwrap();
        let a2 = PsdMatrix::new(
            SymmetricMatrix::new(2, vec![1.0, 1.0, 1.0, 1.0]).unwrap(),
        )
        .unwrap();
        MatrixTuple::new(vec![a1, a2.clone(), a2]).unwrap()
    }

    #[test]
    fn three_matrix_counterexample_breaks_psd_order_at_k3() {
        let t = counterexample_triple();
        let mg = expect_product(
            &t,
            &ExpectationSpec::exact(3, Form::Plain, Scheme::WithoutReplacement),
        )
        .unwrap()
        .mean_matrix;
        // M_G = [[35/3, 7], [7, 7/3]].
        assert!((mg.get(0, 0) - 35.0 / 3.0).abs() < 1e-12);
        assert!((mg.get(0, 1) - 7.0).abs() < 1e-12);
        assert!((mg.get(1, 1) - 7.0 / 3.0).abs() < 1e-12);

        let ma3 = t.arithmetic_mean().to_general().pow(3);
        let (ok, witness) = psd_order_check(
            &SymmetricMatrix::from_general(&mg).unwrap(),
            &SymmetricMatrix::from_general(&ma3).unwrap(),
        )
        .unwrap();
        assert!(!ok && witness < 0.0);

        // The k=2 ordering does NOT break for this triple.
        let mg2 = expect_product(
            &t,
            &ExpectationSpec::exact(2, Form::Plain, Scheme::WithoutReplacement),
        )
        .unwrap()
        .mean_matrix;
        let ma2 = t.arithmetic_mean().to_general().pow(2);
        let (ok2, _) = psd_order_check(
            &SymmetricMatrix::from_general(&mg2).unwrap(),
            &SymmetricMatrix::from_general(&ma2).unwrap(),
        )
        .unwrap();
        assert!(ok2);

        // The bias inequality still holds on the norms.
        let v = check_bias_conjecture(&t, 3, Method::Exact).unwrap();
        assert!(v.holds);
        assert!((v.lhs - 15.412952976082641).abs() < 1e-9);
        assert!((v.rhs - 32.06780701977675).abs() < 1e-9);
    }

    #[test]
    fn harmonic_frame_bias_values() {
        let t = Frame::harmonic_2d(3).unwrap().to_tuple();
        let v = check_bias_conjecture(&t, 3, Method::Exact).unwrap();
        assert!((v.lhs - 1.0 / 16.0).abs() < 1e-12);
        assert!((v.rhs - 1.0 / 8.0).abs() < 1e-12);
        assert!(v.holds && (v.margin - 1.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn strong_conjecture_cases() {
        // All-identity tuple: lhs = rhs = 1.
        let ids = MatrixTuple::new(
            (0..3)
                .map(|_| PsdMatrix::new(SymmetricMatrix::identity(2)).unwrap())
                .collect(),
        )
        .unwrap();
        let v = check_strong_conjecture(&ids, 3, Method::Exact).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-12 && (v.rhs - 1.0).abs() < 1e-12);

        // n=2: lhs = ||AB||^2, rhs = ||A/2+B/2||^4.
        let (a, b) = random_pair(3, 42);
        let t = MatrixTuple::new(vec![a.clone(), b.clone()]).unwrap();
        let v = check_strong_conjecture(&t, 2, Method::Exact).unwrap();
        let ab = spectral_norm(&a.to_general().matmul(&b.to_general())).unwrap();
        assert!((v.lhs - ab * ab).abs() < 1e-9 * v.lhs.max(1.0));
        assert!(v.holds);

        // Harmonic frame n=4, k=4 by exact enumeration.  Of the 24
        // permutations only the 8 that avoid an orthogonal adjacent pair
        // survive, each with squared norm (cos^2(pi/4))^3 = 1/8, so the
        // left side is 1/24 while the right side is (1/2)^8: the strong
        // form genuinely fails on this tuple and the checker must say so.
        let t = Frame::harmonic_2d(4).unwrap().to_tuple();
        let v = check_strong_conjecture(&t, 4, Method::Exact).unwrap();
        assert!((v.lhs - 1.0 / 24.0).abs() < 1e-12);
        assert!((v.rhs - 1.0 / 256.0).abs() < 1e-12);
        assert_eq!(v.status, VerdictStatus::Violated);
    }

    #[test]
    fn strong_implies_bias() {
        for seed in 0..30 {
            let spec = EnsembleSpec {
                d: 3,
                r: 3,
                n: 4,
                dist: EntryDistribution::gaussian(1.0),
                seed: 500 + seed,
            };
            let t = crate::randmat::sample_tuple(&spec);
            for k in 1..=4 {
                let strong = check_strong_conjecture(&t, k, Method::Exact).unwrap();
                let bias = check_bias_conjecture(&t, k, Method::Exact).unwrap();
                if strong.status == VerdictStatus::Holds {
                    assert!(bias.holds);
                }
            }
        }
    }

    #[test]
    fn worst_case_bound_cases() {
        let ids = MatrixTuple::new(
            (0..3)
                .map(|_| PsdMatrix::new(SymmetricMatrix::identity(3)).unwrap())
                .collect(),
        )
        .unwrap();
        let v = check_worst_case_bound(&ids, 2, None).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-12 && (v.rhs - 9.0).abs() < 1e-12);

        // Harmonic frame n=8, deterministic order: ratio to ||M_A||^k is
        // 2^8 cos^7(pi/8).
        let t = Frame::harmonic_2d(8).unwrap().to_tuple();
        let order: Vec<usize> = (0..8).collect();
        let v = check_worst_case_bound(&t, 8, Some(&order)).unwrap();
        assert!(v.holds);
        let ratio = v.lhs / 0.5_f64.powi(8);
        let expected = 2.0_f64.powi(8) * (PI / 8.0).cos().powi(7);
        assert!((ratio - expected).abs() < 1e-9 * expected);
        assert!(expected > 1.0 && expected < 2.0_f64.powi(8));
    }

    #[test]
    fn worst_case_never_fails_random_sweep() {
        for seed in 0..60 {
            let mut s = crate::rng::stream(seed, &[crate::rng::tag::SWEEP]);
            use rand::Rng;
            let n = s.gen_range(1..=6usize);
            let d = s.gen_range(1..=5usize);
            // Mix full-rank and adversarial rank-one tuples.
            let r = if seed % 3 == 0 { 1 } else { d };
            let t = crate::randmat::sample_tuple(&EnsembleSpec {
                d,
                r,
                n,
                dist: EntryDistribution::gaussian(1.0),
                seed: 900 + seed,
            });
            for k in 1..=n {
                assert!(check_worst_case_bound(&t, k, None).unwrap().holds);
            }
        }
    }

    #[test]
    fn zero_tuple_yields_equality_verdicts() {
        let zero =
            PsdMatrix::new(SymmetricMatrix::new(2, vec![0.0; 4]).unwrap()).unwrap();
        let t = MatrixTuple::new(vec![zero.clone(), zero]).unwrap();
        let v = check_bias_conjecture(&t, 2, Method::Exact).unwrap();
        assert!(v.holds && v.lhs == 0.0 && v.rhs == 0.0);
    }
}
