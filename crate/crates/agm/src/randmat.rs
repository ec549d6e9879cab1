//! Random PSD ensembles `A = ZZᵀ` and their moment machinery: entrywise
//! fourth-moment identities, the ζ power identity, the Wishart gap bounds,
//! and the Jensen moment inequality.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{AgmError, Result};
use crate::expectations::MatrixTuple;
use crate::inequalities::InequalityVerdict;
use crate::linalg::{GeneralMatrix, PsdMatrix, SymmetricMatrix};
use crate::rng;

/// Symmetric entry distribution with variance σ² and fourth moment ξ⁴.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EntryDistribution {
    Gaussian { sigma: f64 },
    Rademacher { sigma: f64 },
    /// Uniform on `[-√3 σ, √3 σ]`, so the variance is σ².
    UniformSymmetric { sigma: f64 },
}

impl EntryDistribution {
    pub fn gaussian(sigma: f64) -> Self {
        EntryDistribution::Gaussian { sigma }
    }

    pub fn rademacher(sigma: f64) -> Self {
        EntryDistribution::Rademacher { sigma }
    }

    pub fn uniform_symmetric(sigma: f64) -> Self {
        EntryDistribution::UniformSymmetric { sigma }
    }

    pub fn from_name(name: &str, sigma: f64) -> Result<Self> {
        match name {
            "gaussian" => Ok(Self::gaussian(sigma)),
            "rademacher" => Ok(Self::rademacher(sigma)),
            "uniform-symmetric" | "uniform" => Ok(Self::uniform_symmetric(sigma)),
            other => Err(AgmError::InvalidInput(format!(
                "unknown distribution {:?} (expected gaussian, rademacher, or uniform-symmetric)",
                other
            ))),
        }
    }

    pub fn sigma(&self) -> f64 {
        match *self {
            EntryDistribution::Gaussian { sigma }
            | EntryDistribution::Rademacher { sigma }
            | EntryDistribution::UniformSymmetric { sigma } => sigma,
        }
    }

    /// Entry variance σ².
    pub fn sigma2(&self) -> f64 {
        self.sigma() * self.sigma()
    }

    /// Fourth moment ξ⁴ = E[entry⁴]: 3σ⁴ (gaussian), σ⁴ (rademacher),
    /// (9/5)σ⁴ (uniform-symmetric). Always ≥ σ⁴ by Jensen.
    pub fn xi4(&self) -> f64 {
        let s4 = self.sigma2() * self.sigma2();
        match self {
            EntryDistribution::Gaussian { .. } => 3.0 * s4,
            EntryDistribution::Rademacher { .. } => s4,
            EntryDistribution::UniformSymmetric { .. } => 1.8 * s4,
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            EntryDistribution::Gaussian { sigma } => {
                Normal::new(0.0, sigma).unwrap().sample(rng)
            }
            EntryDistribution::Rademacher { sigma } => {
                if rng.gen_bool(0.5) {
                    sigma
                } else {
                    -sigma
                }
            }
            EntryDistribution::UniformSymmetric { sigma } => {
                let half = 3.0_f64.sqrt() * sigma;
                rng.gen_range(-half..half)
            }
        }
    }
}

/// Ensemble of n independent `d×d` matrices `A_i = Z_i Z_iᵀ` with `Z_i` of
/// shape `d×r` and i.i.d. entries from `dist`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub d: usize,
    pub r: usize,
    pub n: usize,
    pub dist: EntryDistribution,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.r == 0 || self.n == 0 {
            return Err(AgmError::InvalidSpec(
                "ensemble needs d, r, n >= 1".into(),
            ));
        }
        if !(self.dist.sigma() > 0.0) {
            return Err(AgmError::InvalidSpec("sigma must be > 0".into()));
        }
        Ok(())
    }
}

fn sample_factor<R: Rng>(d: usize, r: usize, dist: &EntryDistribution, rng: &mut R) -> GeneralMatrix {
    let data = (0..d * r).map(|_| dist.sample(rng)).collect();
    GeneralMatrix::from_rows(d, r, data).unwrap()
}

/// Draw the tuple `(Z_1 Z_1ᵀ, ..., Z_n Z_nᵀ)`. Matrix i draws from its own
/// derived stream, so the tuple is deterministic given the seed and
/// independent of sampling order.
pub fn sample_tuple(spec: &EnsembleSpec) -> MatrixTuple {
    spec.validate().expect("invalid ensemble spec");
    let items = (0..spec.n)
        .map(|i| {
            let mut stream = rng::stream(spec.seed, &[rng::tag::ENSEMBLE, i as u64]);
            let z = sample_factor(spec.d, spec.r, &spec.dist, &mut stream);
            let a = z.matmul(&z.transpose());
            PsdMatrix::new(SymmetricMatrix::from_general(&a).unwrap()).unwrap()
        })
        .collect();
    MatrixTuple::new(items).unwrap()
}

/// The scalar ζ with `E[A²] = ζ·I` for `A = ZZᵀ`:
/// `ζ = r(r+d−2)σ⁴ + rξ⁴`.
///
/// Derivation: the diagonal of `E[A²]` is `E[Σ_m A_{1m}²]`, which is
/// `r(r−1)σ⁴ + rξ⁴` from the diagonal entry plus `(d−1)·rσ⁴` from the
/// off-diagonal entries; Monte Carlo confirms the value for all three entry
/// distributions.
pub fn zeta(spec: &EnsembleSpec) -> f64 {
    let r = spec.r as f64;
    let d = spec.d as f64;
    let s4 = spec.dist.sigma2() * spec.dist.sigma2();
    r * (r + d - 2.0) * s4 + r * spec.dist.xi4()
}

/// Index pattern of the entry-pair moment `E[A_{i1 j1} A_{i2 j2}]` for a
/// single `A = ZZᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentPattern {
    /// i1 = j1 and i2 = j2 with the two diagonal positions equal.
    SamePairDiagonal,
    /// Both entries are the same off-diagonal position (as an unordered
    /// pair), i ≠ j.
    SamePairOffDiagonal,
    /// Any pattern involving an off-diagonal entry that is not matched by
    /// the other factor.
    Mismatched,
}

/// Closed-form `E[A_{i1 j1} A_{i2 j2}]` for the three index patterns:
/// `r(r−1)σ⁴ + rξ⁴`, `rσ⁴`, and 0.
pub fn fourth_moment_entry(spec: &EnsembleSpec, pattern: MomentPattern) -> f64 {
    let r = spec.r as f64;
    let s4 = spec.dist.sigma2() * spec.dist.sigma2();
    match pattern {
        MomentPattern::SamePairDiagonal => r * (r - 1.0) * s4 + r * spec.dist.xi4(),
        MomentPattern::SamePairOffDiagonal => r * s4,
        MomentPattern::Mismatched => 0.0,
    }
}

/// The two Wishart gap bounds, computed in log space so large `k` cannot
/// overflow. Linear-scale values are `exp` of the logs and may be infinite.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WishartBounds {
    pub log_rho_bound: f64,
    pub log_diag_bound: f64,
    pub rho_bound: f64,
    pub diag_bound: f64,
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// `ρ_bound = r·e^{1/(4k(k+1))}·(16k/(e²r(r+d+1)))^k` and the
/// diagonal-moment lower bound `r·2^{−2k}·(4k)!/(2k)!·σ^{4k}`.
pub fn wishart_gap_bounds(k: usize, r: usize, d: usize, sigma: f64) -> Result<WishartBounds> {
    if k == 0 || r == 0 || d == 0 {
        return Err(AgmError::InvalidSpec("wishart bounds need k, r, d >= 1".into()));
    }
    let (kf, rf, df) = (k as f64, r as f64, d as f64);
    let log_rho = rf.ln() + 1.0 / (4.0 * kf * (kf + 1.0))
        + kf * ((16.0 * kf).ln() - 2.0 - (rf * (rf + df + 1.0)).ln());
    let log_diag = rf.ln() - 2.0 * kf * 2.0_f64.ln()
        + ln_factorial(4 * k as u64)
        - ln_factorial(2 * k as u64)
        + 4.0 * kf * sigma.ln();
    Ok(WishartBounds {
        log_rho_bound: log_rho,
        log_diag_bound: log_diag,
        rho_bound: log_rho.exp(),
        diag_bound: log_diag.exp(),
    })
}

/// Log of the intermediate closed form `r·(4k)!/(2k)!·(4kr(r+d+1))^{−k}`,
/// which dominates `ρ_bound` (grid-checked for k, r, d ≤ 10).
pub fn log_intermediate_rho_form(k: usize, r: usize, d: usize) -> f64 {
    let (kf, rf, df) = (k as f64, r as f64, d as f64);
    rf.ln() + ln_factorial(4 * k as u64) - ln_factorial(2 * k as u64)
        - kf * (4.0 * kf * rf * (rf + df + 1.0)).ln()
}

/// Jensen's moment inequality `E[w^{2p}] ≥ E[w²]^p`, decided by Monte Carlo
/// with a 4-standard-error statistical band.
pub fn jensen_moment_check(
    dist: &EntryDistribution,
    p: u32,
    samples: u64,
    seed: u64,
) -> InequalityVerdict {
    let mut rng = rng::stream(seed, &[rng::tag::MONTE_CARLO, p as u64]);
    let (mut s2, mut s2sq, mut s2p, mut s2psq) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..samples {
        let w = dist.sample(&mut rng);
        let w2 = w * w;
        let w2p = w2.powi(p as i32);
        s2 += w2;
        s2sq += w2 * w2;
        s2p += w2p;
        s2psq += w2p * w2p;
    }
    let m = samples as f64;
    let mean2 = s2 / m;
    let mean2p = s2p / m;
    let stderr = |sum: f64, sqsum: f64| -> f64 {
        let mean = sum / m;
        ((sqsum / m - mean * mean).max(0.0) / (m - 1.0).max(1.0)).sqrt()
    };
    let se2 = stderr(s2, s2sq);
    let se2p = stderr(s2p, s2psq);
    let lhs = mean2.powi(p as i32);
    // First-order error propagation through x^p for the lhs.
    let band = 4.0 * (se2p + p as f64 * mean2.powi(p as i32 - 1) * se2);
    InequalityVerdict::with_slack(
        lhs,
        mean2p,
        band,
        format!("jensen moment inequality, p={}, {} samples", p, samples),
    )
}

/// Analytic second and fourth moment matrices of a standard gaussian vector:
/// `Λ = E[aaᵀ] = I` and `Δ = E[‖a‖² aaᵀ] = (d+2)I`.
pub fn gaussian_vector_moments(d: usize) -> (SymmetricMatrix, SymmetricMatrix) {
    let lambda = SymmetricMatrix::identity(d);
    let delta = SymmetricMatrix::diagonal(&vec![d as f64 + 2.0; d]).unwrap();
    (lambda, delta)
}

/// Monte Carlo mean of `A` and `A²` over fresh ensemble draws, with the
/// entrywise standard error of each mean (Frobenius-aggregated).
pub struct EnsembleMoments {
    pub mean_a: GeneralMatrix,
    pub mean_a2: GeneralMatrix,
    pub stderr_a: f64,
    pub stderr_a2: f64,
}

pub fn ensemble_moments(spec: &EnsembleSpec, samples: u64) -> EnsembleMoments {
    let d = spec.d;
    let mut sum_a = GeneralMatrix::zeros(d, d);
    let mut sum_a2 = GeneralMatrix::zeros(d, d);
    let mut sumsq_a = vec![0.0; d * d];
    let mut sumsq_a2 = vec![0.0; d * d];
    for s in 0..samples {
        let mut stream = rng::stream(spec.seed, &[rng::tag::ENSEMBLE, s]);
        let z = sample_factor(d, spec.r, &spec.dist, &mut stream);
        let a = z.matmul(&z.transpose());
        let a2 = a.matmul(&a);
        for (acc, x) in sumsq_a.iter_mut().zip(a.data()) {
            *acc += x * x;
        }
        for (acc, x) in sumsq_a2.iter_mut().zip(a2.data()) {
            *acc += x * x;
        }
        sum_a.add_assign(&a);
        sum_a2.add_assign(&a2);
    }
    let m = samples as f64;
    let mean_a = sum_a.scale(1.0 / m);
    let mean_a2 = sum_a2.scale(1.0 / m);
    let agg_stderr = |mean: &GeneralMatrix, sumsq: &[f64]| -> f64 {
        mean.data()
            .iter()
            .zip(sumsq)
            .map(|(mu, sq)| (sq / m - mu * mu).max(0.0) / (m - 1.0).max(1.0))
            .sum::<f64>()
            .sqrt()
    };
    let stderr_a = agg_stderr(&mean_a, &sumsq_a);
    let stderr_a2 = agg_stderr(&mean_a2, &sumsq_a2);
    EnsembleMoments {
        mean_a,
        mean_a2,
        stderr_a,
        stderr_a2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_psd;

    #[test]
    fn xi4_values() {
        assert!((EntryDistribution::gaussian(1.0).xi4() - 3.0).abs() < 1e-15);
        assert!((EntryDistribution::rademacher(1.0).xi4() - 1.0).abs() < 1e-15);
        assert!((EntryDistribution::uniform_symmetric(1.0).xi4() - 1.8).abs() < 1e-15);
        // ξ⁴ ≥ σ⁴ for σ ≠ 1 too.
        for d in [
            EntryDistribution::gaussian(0.5),
            EntryDistribution::rademacher(2.0),
            EntryDistribution::uniform_symmetric(1.5),
        ] {
            assert!(d.xi4() >= d.sigma2().powi(2) - 1e-15);
        }
    }

    #[test]
    fn empirical_entry_moments_match() {
        let samples = 200_000;
        for dist in [
            EntryDistribution::gaussian(1.0),
            EntryDistribution::rademacher(1.0),
            EntryDistribution::uniform_symmetric(1.0),
        ] {
            let mut rng = rng::stream(3, &[1]);
            let (mut s1, mut s2, mut s4) = (0.0, 0.0, 0.0);
            for _ in 0..samples {
                let w = dist.sample(&mut rng);
                s1 += w;
                s2 += w * w;
                s4 += w.powi(4);
            }
            let m = samples as f64;
            assert!((s1 / m).abs() < 0.02, "{:?}", dist);
            assert!((s2 / m - dist.sigma2()).abs() < 0.02, "{:?}", dist);
            assert!((s4 / m - dist.xi4()).abs() < 0.06, "{:?}", dist);
        }
    }

    #[test]
    fn sampled_matrices_are_psd_and_deterministic() {
        let spec = EnsembleSpec {
            d: 3,
            r: 2,
            n: 4,
            dist: EntryDistribution::gaussian(1.0),
            seed: 11,
        };
        let t1 = sample_tuple(&spec);
        let t2 = sample_tuple(&spec);
        for i in 0..4 {
            let (ok, _) = is_psd(t1.get(i).base());
            assert!(ok);
            assert_eq!(t1.get(i).base().data(), t2.get(i).base().data());
        }
    }

    #[test]
    fn zeta_examples() {
        let gauss = EnsembleSpec {
            d: 1,
            r: 1,
            n: 1,
            dist: EntryDistribution::gaussian(1.0),
            seed: 0,
        };
        assert!((zeta(&gauss) - 3.0).abs() < 1e-12); // E[g^4]

        let rad = EnsembleSpec {
            d: 3,
            r: 2,
            n: 1,
            dist: EntryDistribution::rademacher(1.0),
            seed: 0,
        };
        assert!((zeta(&rad) - 8.0).abs() < 1e-12);

        // Gaussian general form: ζ = r(r+d+1)σ⁴.
        let g = EnsembleSpec {
            d: 2,
            r: 3,
            n: 1,
            dist: EntryDistribution::gaussian(1.0),
            seed: 0,
        };
        assert!((zeta(&g) - 18.0).abs() < 1e-12);
    }

    #[test]
    fn zeta_matches_monte_carlo_all_distributions() {
        for (i, dist) in [
            EntryDistribution::gaussian(1.0),
            EntryDistribution::rademacher(1.0),
            EntryDistribution::uniform_symmetric(1.0),
        ]
        .iter()
        .enumerate()
        {
            let spec = EnsembleSpec {
                d: 3,
                r: 2,
                n: 1,
                dist: *dist,
                seed: 40 + i as u64,
            };
            let m = ensemble_moments(&spec, 40_000);
            let target_a = GeneralMatrix::identity(3).scale(spec.r as f64 * dist.sigma2());
            let target_a2 = GeneralMatrix::identity(3).scale(zeta(&spec));
            let gap_a = m.mean_a.sub(&target_a).frobenius_norm();
            let gap_a2 = m.mean_a2.sub(&target_a2).frobenius_norm();
            assert!(gap_a <= 4.0 * m.stderr_a, "{:?}: {} vs {}", dist, gap_a, m.stderr_a);
            assert!(gap_a2 <= 4.0 * m.stderr_a2, "{:?}: {} vs {}", dist, gap_a2, m.stderr_a2);
        }
    }

    #[test]
    fn fourth_moment_patterns_match_monte_carlo() {
        for (i, dist) in [
            EntryDistribution::gaussian(1.0),
            EntryDistribution::rademacher(1.0),
        ]
        .iter()
        .enumerate()
        {
            let spec = EnsembleSpec {
                d: 3,
                r: 2,
                n: 1,
                dist: *dist,
                seed: 60 + i as u64,
            };
            let samples = 60_000u64;
            // (diag pair A_11^2, matched off-diag A_12^2, mismatched A_11 A_12).
            let (mut s_d, mut s_o, mut s_m) = (vec![], vec![], vec![]);
            for s in 0..samples {
                let mut stream = rng::stream(spec.seed, &[rng::tag::ENSEMBLE, s]);
                let z = sample_factor(3, 2, dist, &mut stream);
                let a = z.matmul(&z.transpose());
                s_d.push(a.get(0, 0) * a.get(0, 0));
                s_o.push(a.get(0, 1) * a.get(0, 1));
                s_m.push(a.get(0, 0) * a.get(0, 1));
            }
            let check = |vals: &[f64], target: f64| {
                let m = vals.len() as f64;
                let mean = vals.iter().sum::<f64>() / m;
                let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
                let se = (var / m).sqrt();
                assert!(
                    (mean - target).abs() <= 4.0 * se,
                    "{:?}: mean {} target {} se {}",
                    dist,
                    mean,
                    target,
                    se
                );
            };
            check(&s_d, fourth_moment_entry(&spec, MomentPattern::SamePairDiagonal));
            check(&s_o, fourth_moment_entry(&spec, MomentPattern::SamePairOffDiagonal));
            check(&s_m, fourth_moment_entry(&spec, MomentPattern::Mismatched));
        }
    }

    #[test]
    fn fourth_moment_closed_values() {
        let g = EnsembleSpec {
            d: 3,
            r: 2,
            n: 1,
            dist: EntryDistribution::gaussian(1.0),
            seed: 0,
        };
        assert!((fourth_moment_entry(&g, MomentPattern::SamePairDiagonal) - 8.0).abs() < 1e-12);
        let r = EnsembleSpec {
            d: 3,
            r: 2,
            n: 1,
            dist: EntryDistribution::rademacher(1.0),
            seed: 0,
        };
        assert!((fourth_moment_entry(&r, MomentPattern::SamePairOffDiagonal) - 2.0).abs() < 1e-12);
        assert_eq!(fourth_moment_entry(&r, MomentPattern::Mismatched), 0.0);
    }

    #[test]
    fn zeta_power_identity_distinct_tuple() {
        // E over matrix draws of A_3 A_2 A_1 A_1 A_2 A_3 (distinct,
        // independent) equals ζ³ I.
        let spec = EnsembleSpec {
            d: 2,
            r: 2,
            n: 3,
            dist: EntryDistribution::gaussian(1.0),
            seed: 77,
        };
        let z = zeta(&spec);
        let samples = 60_000u64;
        let mut mean = GeneralMatrix::zeros(2, 2);
        let mut diag_samples = Vec::with_capacity(samples as usize);
        for s in 0..samples {
            let draw = EnsembleSpec { seed: rng::derive_seed(spec.seed, &[s]), ..spec };
            let t = sample_tuple(&draw);
            let mut dmat = GeneralMatrix::identity(2);
            for i in 0..3 {
                dmat = dmat.matmul(&t.get(i).to_general());
            }
            let q = dmat.matmul(&dmat.transpose());
            diag_samples.push(0.5 * (q.get(0, 0) + q.get(1, 1)));
            mean.add_assign(&q);
        }
        let m = samples as f64;
        mean = mean.scale(1.0 / m);
        let mu = diag_samples.iter().sum::<f64>() / m;
        let var = diag_samples.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (m - 1.0);
        let se = (var / m).sqrt();
        assert!(
            (mu - z.powi(3)).abs() <= 4.0 * se,
            "diag mean {} vs ζ³ = {} (se {})",
            mu,
            z.powi(3),
            se
        );
        // Off-diagonals vanish in expectation.
        assert!(mean.get(0, 1).abs() <= 6.0 * se);
    }

    #[test]
    fn wishart_bound_base_cases() {
        let b = wishart_gap_bounds(1, 1, 1, 1.0).unwrap();
        assert!((b.diag_bound - 3.0).abs() < 1e-12);
        assert!((b.rho_bound - (0.125_f64.exp() * 16.0 / (std::f64::consts::E.powi(2) * 3.0)))
            .abs()
            < 1e-12);
        assert!((b.rho_bound - 0.8179).abs() < 5e-4);
    }

    #[test]
    fn wishart_bounds_no_overflow_and_grow() {
        let small = wishart_gap_bounds(10, 2, 2, 1.0).unwrap();
        let big = wishart_gap_bounds(400, 2, 2, 1.0).unwrap();
        assert!(big.log_rho_bound.is_finite() && big.log_diag_bound.is_finite());
        assert!(big.log_rho_bound > small.log_rho_bound); // exponential growth in k
    }

    #[test]
    fn intermediate_form_dominates_rho_bound_on_grid() {
        for k in 1..=10 {
            for r in 1..=10 {
                for d in 1..=10 {
                    let b = wishart_gap_bounds(k, r, d, 1.0).unwrap();
                    let mid = log_intermediate_rho_form(k, r, d);
                    assert!(
                        mid >= b.log_rho_bound - 1e-9,
                        "k={} r={} d={}: {} < {}",
                        k,
                        r,
                        d,
                        mid,
                        b.log_rho_bound
                    );
                }
            }
        }
    }

    #[test]
    fn jensen_moment_cases() {
        let g = EntryDistribution::gaussian(1.0);
        let v0 = jensen_moment_check(&g, 0, 10_000, 1);
        assert!((v0.lhs - 1.0).abs() < 1e-12 && (v0.rhs - 1.0).abs() < 1e-12);

        let v1 = jensen_moment_check(&g, 1, 10_000, 1);
        assert!(v1.holds && (v1.lhs - v1.rhs).abs() < 1e-12);

        // p=2 gaussian: E[w^4] = 3 strictly exceeds E[w^2]^2 = 1.
        let v2 = jensen_moment_check(&g, 2, 50_000, 1);
        assert!(v2.holds && v2.rhs > v2.lhs + 1.0);
    }

    #[test]
    fn gaussian_vector_moment_constants() {
        let (lambda, delta) = gaussian_vector_moments(3);
        assert!((lambda.get(0, 0) - 1.0).abs() < 1e-15);
        assert!((delta.get(1, 1) - 5.0).abs() < 1e-15);
        assert_eq!(delta.get(0, 1), 0.0);
    }

    #[test]
    fn invalid_specs_rejected() {
        let bad = EnsembleSpec {
            d: 0,
            r: 1,
            n: 1,
            dist: EntryDistribution::gaussian(1.0),
            seed: 0,
        };
        assert!(bad.validate().is_err());
        assert!(wishart_gap_bounds(0, 1, 1, 1.0).is_err());
        assert!(EntryDistribution::from_name("cauchy", 1.0).is_err());
    }
}
