//! Combinatorial identities behind the harmonic-frame analysis: Maclaurin
//! means, the terminating hypergeometric series λ(n), the brute-force
//! permutation oracle α(n), cosine-product expansions, the closed-chain
//! subset formula, and the exact integer generating-polynomial identities.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{AgmError, Result};
use crate::expectations::{expect_product, ExpectationSpec, Form, Scheme};
use crate::frames::Frame;

/// The cosine-product lemma's power of two, calibrated from the n=2 base
/// case: `T_n = 2^{-(n-2)} · Σ(subset cosines)`. The same exponent offset
/// must hold for every n; `cosine_expansion_check` asserts it.
pub const COSINE_EXPANSION_EXPONENT: fn(usize) -> i32 = |n| n as i32 - 2;

fn checked_binomial(n: usize, k: usize) -> Result<i64> {
    if k > n {
        return Ok(0);
    }
    let mut acc: i64 = 1;
    for j in 1..=k.min(n - k) {
        acc = acc
            .checked_mul((n - k.min(n - k) + j) as i64)
            .ok_or(AgmError::IntegerOverflow)?;
        acc /= j as i64;
    }
    Ok(acc)
}

/// Normalized elementary symmetric means `s_k = e_k(xs) / C(n,k)`,
/// k = 1..n. Maclaurin's chain `s_1 ≥ s_2^{1/2} ≥ ... ≥ s_n^{1/n}` holds for
/// positive inputs.
pub fn maclaurin_means(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.is_empty() || xs.iter().any(|&x| !(x > 0.0)) {
        return Err(AgmError::InvalidInput(
            "maclaurin means need a nonempty positive input".into(),
        ));
    }
    let n = xs.len();
    // e[k] via the product DP ∏(1 + x_i t).
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for (i, &x) in xs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    (1..=n)
        .map(|k| Ok(e[k] / checked_binomial(n, k)? as f64))
        .collect()
}

fn big(i: i64) -> BigInt {
    BigInt::from(i)
}

/// The terminating hypergeometric series λ(n): v(0) = 1 and
/// `v(k+1)/v(k) = −(n−2k)(n−2k−1) / (2(n−k−1)(2k+1))`, summed until a
/// numerator factor vanishes (at most ⌊n/2⌋+1 terms).
///
/// Evaluated in exact rational arithmetic: the terms alternate with large
/// cancellation, and a floating-point recurrence loses every significant
/// digit long before n = 200.
pub fn lambda_series(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(AgmError::InvalidInput("lambda series needs n >= 3".into()));
    }
    let ni = n as i64;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut k: i64 = 0;
    while k <= ni {
        let num = big(ni - 2 * k) * big(ni - 2 * k - 1);
        if num.is_zero() {
            break;
        }
        let den = big(2) * big(ni - k - 1) * big(2 * k + 1);
        term *= -BigRational::new(num, den);
        sum += term.clone();
        k += 1;
    }
    sum.to_f64()
        .ok_or_else(|| AgmError::NonFinite)
}

/// Brute-force α(n): the scalar with `E_wo[A_{σ(1)}⋯A_{σ(n)}] = α·I` over
/// all n! orderings of the harmonic-frame projectors. The multiple-of-I
/// structure is asserted, not assumed.
pub fn bruteforce_frame_alpha(n: usize) -> Result<f64> {
    if !(3..=7).contains(&n) {
        return Err(AgmError::InvalidInput(format!(
            "bruteforce alpha needs 3 <= n <= 7 (got {})",
            n
        )));
    }
    let t = Frame::harmonic_2d(n)?.to_tuple();
    let rep = expect_product(&t, &ExpectationSpec::exact(n, Form::Plain, Scheme::WithoutReplacement))?;
    let m = &rep.mean_matrix;
    let off = m.get(0, 1).abs().max(m.get(1, 0).abs());
    let diag_dev = (m.get(0, 0) - m.get(1, 1)).abs();
    if off > 1e-12 || diag_dev > 1e-10 {
        return Err(AgmError::InvalidInput(format!(
            "symmetrized product is not a multiple of I (off-diag {:.3e}, diag dev {:.3e})",
            off, diag_dev
        )));
    }
    Ok(0.5 * (m.get(0, 0) + m.get(1, 1)))
}

/// λ(n) together with the brute-force cross-check (available for n ≤ 7).
#[derive(Debug, Clone, serde::Serialize)]
pub struct LambdaValue {
    pub n: usize,
    pub series_value: f64,
    pub alpha_bruteforce: Option<f64>,
}

pub fn lambda_value(n: usize, bruteforce: bool) -> Result<LambdaValue> {
    let series_value = lambda_series(n)?;
    let alpha_bruteforce = if bruteforce && (3..=7).contains(&n) {
        Some(bruteforce_frame_alpha(n)?)
    } else {
        None
    };
    Ok(LambdaValue {
        n,
        series_value,
        alpha_bruteforce,
    })
}

/// Checks `∏_{i=1}^{n-1} cos(ψ_i − ψ_{i+1})` against the alternating-subset
/// expansion `2^{-(n-2)} Σ_S cos(ψ_1 + Σ_t (−1)^t 2ψ_{j_t} + (−1)^{|S|+1}ψ_n)`
/// over subsets S = {j_1 < ... < j_m} of the interior positions.
pub fn cosine_expansion_check(psis: &[f64]) -> Result<bool> {
    let n = psis.len();
    if n < 2 {
        return Err(AgmError::InvalidInput("need at least two angles".into()));
    }
    let direct: f64 = (0..n - 1).map(|i| (psis[i] - psis[i + 1]).cos()).product();
    let interior = &psis[1..n - 1];
    let m = interior.len();
    let mut sum = 0.0;
    for mask in 0..(1u32 << m) {
        let mut arg = psis[0];
        let mut t = 0;
        for (j, psi) in interior.iter().enumerate() {
            if mask >> j & 1 == 1 {
                t += 1;
                arg += if t % 2 == 1 { -2.0 * psi } else { 2.0 * psi };
            }
        }
        arg += if t % 2 == 0 { -psis[n - 1] } else { psis[n - 1] };
        sum += arg.cos();
    }
    let lemma = sum / 2.0_f64.powi(COSINE_EXPANSION_EXPONENT(n));
    Ok((direct - lemma).abs() <= 1e-9)
}

/// Closed-chain subset formula. For a chain with both boundary angles fixed
/// at `phi_v` and the interior angles averaged over all orderings,
/// `S_n = E_σ[∏cos]` equals
/// `2^{-(n-2)} Σ_{X,Y} C(|X|+|Y|,|Y|)^{-1} cos(2ΣX − 2ΣY + 2φ_v·1{|Y|=|X|+1})`
/// over disjoint subsets X, Y of the interior values with
/// `|Y| ∈ {|X|, |X|+1}`.
pub fn subset_formula_check(phi_v: f64, interior: &[f64]) -> Result<bool> {
    let m = interior.len();
    let n = m + 2;
    if n > 9 {
        return Err(AgmError::InvalidInput(
            "direct permutation enumeration limited to n <= 9".into(),
        ));
    }
    // Direct side: average the chain product over all interior orderings.
    let mut order: Vec<usize> = (0..m).collect();
    let mut total = 0.0;
    let mut count = 0u64;
    permute_all(&mut order, 0, &mut |p| {
        let mut chain = Vec::with_capacity(n);
        chain.push(phi_v);
        chain.extend(p.iter().map(|&i| interior[i]));
        chain.push(phi_v);
        total += (0..n - 1)
            .map(|i| (chain[i] - chain[i + 1]).cos())
            .product::<f64>();
        count += 1;
    });
    let direct = total / count as f64;

    // Subset side.
    let mut sum = 0.0;
    for xmask in 0..(1u32 << m) {
        for ymask in 0..(1u32 << m) {
            if xmask & ymask != 0 {
                continue;
            }
            let p = xmask.count_ones() as usize;
            let q = ymask.count_ones() as usize;
            if q != p && q != p + 1 {
                continue;
            }
            let sx: f64 = (0..m).filter(|j| xmask >> j & 1 == 1).map(|j| interior[j]).sum();
            let sy: f64 = (0..m).filter(|j| ymask >> j & 1 == 1).map(|j| interior[j]).sum();
            let mut arg = 2.0 * sx - 2.0 * sy;
            if q == p + 1 {
                arg += 2.0 * phi_v;
            }
            sum += arg.cos() / checked_binomial(p + q, q)? as f64;
        }
    }
    let formula = sum / 2.0_f64.powi(n as i32 - 2);
    Ok((direct - formula).abs() <= 1e-9)
}

fn permute_all<F: FnMut(&[usize])>(order: &mut Vec<usize>, depth: usize, f: &mut F) {
    if depth == order.len() {
        f(order);
        return;
    }
    for i in depth..order.len() {
        order.swap(depth, i);
        permute_all(order, depth + 1, f);
        order.swap(depth, i);
    }
}

/// Bivariate polynomial with exact `i64` coefficients, degree ≤ n in each
/// variable; `coeff(a, b)` is the coefficient of `x^a y^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial2 {
    degree: usize,
    coeffs: Vec<i64>,
}

impl IntPolynomial2 {
    pub fn zeros(degree: usize) -> Self {
        IntPolynomial2 {
            degree,
            coeffs: vec![0; (degree + 1) * (degree + 1)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, a: usize, b: usize) -> i64 {
        self.coeffs[a * (self.degree + 1) + b]
    }

    fn set(&mut self, a: usize, b: usize, v: i64) {
        self.coeffs[a * (self.degree + 1) + b] = v;
    }
}

/// `F_n(x, y) = ∏_{i=1}^{n} (1 + ζⁱ x + ζ^{−i} y)`, ζ = e^{2πi/n}.
/// Computed in complex floating point; coefficients must round to integers
/// with residual ≤ 1e−6 or the build fails (integrality is a theorem).
pub fn generating_polynomial(n: usize) -> Result<IntPolynomial2> {
    if !(2..=10).contains(&n) {
        return Err(AgmError::InvalidInput(format!(
            "generating polynomial needs 2 <= n <= 10 (got {})",
            n
        )));
    }
    let size = n + 1;
    let mut re = vec![0.0_f64; size * size];
    let mut im = vec![0.0_f64; size * size];
    re[0] = 1.0;
    let tau = 2.0 * std::f64::consts::PI / n as f64;
    for i in 1..=n {
        let (s, c) = ((i as f64) * tau).sin_cos();
        let mut nre = re.clone();
        let mut nim = im.clone();
        for a in 0..size {
            for b in 0..size {
                let (pr, pi) = (re[a * size + b], im[a * size + b]);
                if pr == 0.0 && pi == 0.0 {
                    continue;
                }
                if a + 1 < size {
                    // multiply by ζⁱ x
                    nre[(a + 1) * size + b] += pr * c - pi * s;
                    nim[(a + 1) * size + b] += pr * s + pi * c;
                }
                if b + 1 < size {
                    // multiply by ζ^{−i} y
                    nre[a * size + b + 1] += pr * c + pi * s;
                    nim[a * size + b + 1] += -pr * s + pi * c;
                }
            }
        }
        re = nre;
        im = nim;
    }
    let mut poly = IntPolynomial2::zeros(n);
    for a in 0..size {
        for b in 0..size {
            let (pr, pi) = (re[a * size + b], im[a * size + b]);
            let rounded = pr.round();
            if (pr - rounded).abs() > 1e-6 || pi.abs() > 1e-6 {
                return Err(AgmError::InvalidInput(format!(
                    "coefficient ({}, {}) = {} + {}i is not integral — implementation bug",
                    a, b, pr, pi
                )));
            }
            poly.set(a, b, rounded as i64);
        }
    }
    Ok(poly)
}

/// The closed-form target for `F_n(x, −y)`:
/// `(−1)^{n+1}(xⁿ + (−y)ⁿ) + Σ_{k=0}^{⌊n/2⌋} C(n−k,k)·(n/(n−k))·(xy)^k`.
fn fn_identity_target(n: usize) -> Result<IntPolynomial2> {
    let mut target = IntPolynomial2::zeros(n);
    let lead = if n % 2 == 0 { -1 } else { 1 };
    target.set(n, 0, lead);
    // (−1)^{n+1}·(−1)ⁿ yⁿ = −yⁿ for every n.
    target.set(0, n, target.coeff(0, n) - 1);
    for k in 0..=n / 2 {
        let c = checked_binomial(n - k, k)?
            .checked_mul(n as i64)
            .ok_or(AgmError::IntegerOverflow)?
            / (n - k) as i64;
        target.set(k, k, target.coeff(k, k) + c);
    }
    Ok(target)
}

/// Count of disjoint pairs `X, Y ⊆ Z_n` with `|X| = mx`, `|Y| = my`, and
/// `ΣX − ΣY ≡ k (mod n)`, for all (k, mx, my) at once.
fn subset_residue_counts(n: usize) -> Result<Vec<i64>> {
    let size = n + 1;
    let idx = |k: usize, mx: usize, my: usize| (k * size + mx) * size + my;
    let mut dp = vec![0i64; n * size * size];
    dp[idx(0, 0, 0)] = 1;
    for i in 0..n {
        let mut next = dp.clone();
        for k in 0..n {
            for mx in 0..size {
                for my in 0..size {
                    let v = dp[idx(k, mx, my)];
                    if v == 0 {
                        continue;
                    }
                    if mx + 1 < size {
                        let t = idx((k + i) % n, mx + 1, my);
                        next[t] = next[t].checked_add(v).ok_or(AgmError::IntegerOverflow)?;
                    }
                    if my + 1 < size {
                        let t = idx((k + n - i % n) % n, mx, my + 1);
                        next[t] = next[t].checked_add(v).ok_or(AgmError::IntegerOverflow)?;
                    }
                }
            }
        }
        dp = next;
    }
    Ok(dp)
}

/// Runs the three generating-function checks for one n: the coefficientwise
/// `F_n(x,−y)` identity, the scalar generating identity at 20 points
/// `y > −1/4`, and the DP subset count `q_{k,m}` against the polynomial's
/// `x^m y^m` coefficient (aggregated over residues, `Σ_k q_{k,m}ζ^k`).
pub fn generating_polynomial_checks(n: usize) -> Result<bool> {
    if !(3..=10).contains(&n) {
        return Err(AgmError::InvalidInput(format!(
            "generating checks need 3 <= n <= 10 (got {})",
            n
        )));
    }
    let poly = generating_polynomial(n)?;

    // (i) Coefficientwise identity for F_n(x, −y).
    let target = fn_identity_target(n)?;
    for a in 0..=n {
        for b in 0..=n {
            let sign = if b % 2 == 0 { 1 } else { -1 };
            if poly.coeff(a, b) * sign != target.coeff(a, b) {
                return Ok(false);
            }
        }
    }

    // (ii) Scalar generating identity at 20 points y > −1/4.
    for j in 0..20 {
        let y = -0.24 + 2.24 * j as f64 / 19.0;
        let s = (1.0 + 4.0 * y).sqrt();
        let rhs = ((1.0 - s) / 2.0).powi(n as i32) + ((1.0 + s) / 2.0).powi(n as i32);
        let lhs: f64 = (0..=n / 2)
            .map(|k| {
                Ok(checked_binomial(n - k, k)? as f64 * n as f64 / (n - k) as f64
                    * y.powi(k as i32))
            })
            .sum::<Result<f64>>()?;
        if (lhs - rhs).abs() > 1e-9 * rhs.abs().max(1.0) {
            return Ok(false);
        }
    }

    // (iii) q_{k,m} DP vs the x^m y^m coefficient of ∏(1 + ζⁱx + ζ^{−i}y).
    // The polynomial was built with i = 1..n; the DP uses residues 0..n−1,
    // which is the same index set mod n.
    let counts = subset_residue_counts(n)?;
    let size = n + 1;
    let tau = 2.0 * std::f64::consts::PI / n as f64;
    for m in 0..=n / 2 {
        let (mut vr, mut vi) = (0.0, 0.0);
        for k in 0..n {
            let q = counts[(k * size + m) * size + m] as f64;
            let (s, c) = (k as f64 * tau).sin_cos();
            vr += q * c;
            vi += q * s;
        }
        if (vr - poly.coeff(m, m) as f64).abs() > 1e-6 || vi.abs() > 1e-6 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The d-type coefficients `r_{k,m}`: disjoint `X, Y ⊆ Z_n` with
/// `|X| = m+1`, `|Y| = m`, `ΣX − ΣY ≡ k`. Rotational invariance of the
/// symmetrized frame product reduces to every row being constant in k.
pub fn rotational_invariance_check(n: usize) -> Result<bool> {
    if !(3..=10).contains(&n) {
        return Err(AgmError::InvalidInput(format!(
            "rotational invariance check needs 3 <= n <= 10 (got {})",
            n
        )));
    }
    let counts = subset_residue_counts(n)?;
    let size = n + 1;
    for m in 0..=(n - 1) / 2 {
        let first = counts[(m + 1) * size + m];
        for k in 1..n {
            if counts[((k * size) + m + 1) * size + m] != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
