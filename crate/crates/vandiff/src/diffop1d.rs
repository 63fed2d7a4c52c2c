//! One-dimensional simultaneous derivative estimation.
//!
//! A [`SamplePlan`] describes an equidistant stencil around a center x0.
//! Solving the Vandermonde system of the truncated Taylor expansion on that
//! stencil returns estimates of the Taylor coefficients a_0..a_N in one shot;
//! derivative estimates follow as n!·a_n. Coefficients are computed with the
//! closed-form inverse from [`crate::vandermonde`] and a plain inner-product
//! accumulation, so results are deterministic across platforms.

use crate::error::{Error, Result};
use crate::vandermonde::{inverse_explicit, Offsets, VandermondeMatrix};

/// Exact factorials 0!..20! (20! is the largest that fits f64 exactly via u64).
const fn factorials() -> [u64; 21] {
    let mut t = [1u64; 21];
    let mut i = 1;
    while i <= 20 {
        t[i] = t[i - 1] * i as u64;
        i += 1;
    }
    t
}

/// 0!..20! as exact integers.
pub(crate) const FACTORIALS: [u64; 21] = factorials();

/// Largest truncation order N whose derivative recovery n!·a_n stays exact.
pub const MAX_FACTORIAL_ORDER: usize = 20;

/// Equidistant sampling stencil around a center point.
///
/// Offsets are `(i − (n_points−1)/2)·h` for i = 0..n_points — symmetric about
/// zero for odd counts and at half-integer multiples of h for even counts.
/// The derived quantities K = max|offset|/h and N = n_points−1 are the ones
/// the error bounds are phrased in; for odd counts K = (n_points−1)/2.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    x0: f64,
    h: f64,
    n_points: usize,
    offsets: Offsets,
}

impl SamplePlan {
    /// Center of the stencil.
    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Sample spacing h.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of samples n.
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// The derived offsets (ascending, symmetric about 0).
    pub fn offsets(&self) -> &Offsets {
        &self.offsets
    }

    /// Truncation order N = n_points − 1.
    pub fn truncation_order(&self) -> usize {
        self.n_points - 1
    }

    /// Stencil half-width ratio K = max|offset| / h.
    pub fn k_ratio(&self) -> f64 {
        self.offsets.max_abs() / self.h
    }

    /// Abscissae x0 + offset, in sample order.
    pub fn abscissae(&self) -> Vec<f64> {
        self.offsets.values().iter().map(|&o| self.x0 + o).collect()
    }
}

/// Builds an equidistant plan of `n_points` samples spaced `h` around `x0`.
///
/// Errors when h ≤ 0 (or non-finite) or n_points < 2.
pub fn make_plan(x0: f64, h: f64, n_points: usize) -> Result<SamplePlan> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::InvalidParameter {
            name: "h",
            constraint: "h > 0",
            got: h,
        });
    }
    if n_points < 2 {
        return Err(Error::InvalidParameter {
            name: "n_points",
            constraint: "n_points ≥ 2",
            got: n_points as f64,
        });
    }
    let half = (n_points as f64 - 1.0) / 2.0;
    let values = (0..n_points).map(|i| (i as f64 - half) * h).collect();
    let offsets = Offsets::new(values)?;
    Ok(SamplePlan {
        x0,
        h,
        n_points,
        offsets,
    })
}

/// Estimated Taylor coefficients a_0..a_N of f around a center point.
///
/// `coeffs[n]` approximates f^(n)(x0)/n!; the polynomial they define is
/// evaluated in the shifted variable (x − x0).
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficients {
    x0: f64,
    coeffs: Vec<f64>,
}

impl TaylorCoefficients {
    /// Wraps a coefficient vector anchored at `x0`.
    pub fn new(x0: f64, coeffs: Vec<f64>) -> Self {
        Self { x0, coeffs }
    }

    /// Expansion center.
    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Coefficients a_0..a_N.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation order N.
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Evaluates the truncated series at `x` by Horner's rule in (x − x0).
    pub fn evaluate(&self, x: f64) -> f64 {
        let t = x - self.x0;
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

/// Derivative estimates f^(n)(x0) for n = 0..=N, with optional ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeEstimates {
    /// Derivative orders, always 0..=N.
    pub orders: Vec<usize>,
    /// Estimated derivative values, `values[n] = n!·a_n`.
    pub values: Vec<f64>,
    /// True derivative values when an oracle is available.
    pub truth: Option<Vec<f64>>,
    /// |value − truth| when an oracle is available.
    pub abs_error: Option<Vec<f64>>,
}

impl DerivativeEstimates {
    /// Attaches ground-truth values and fills the absolute-error column.
    ///
    /// Errors when the truth vector's length does not match the estimates.
    pub fn with_truth(mut self, truth: Vec<f64>) -> Result<Self> {
        if truth.len() != self.values.len() {
            return Err(Error::LengthMismatch {
                expected: self.values.len(),
                got: truth.len(),
            });
        }
        let abs_error = self
            .values
            .iter()
            .zip(&truth)
            .map(|(v, t)| (v - t).abs())
            .collect();
        self.truth = Some(truth);
        self.abs_error = Some(abs_error);
        Ok(self)
    }
}

/// Core solve: Taylor coefficients on an arbitrary distinct-offset stencil.
///
/// Returns W⁻¹·samples where W is the Vandermonde matrix of the offsets.
/// `samples[i]` must be the function value at (center + offsets[i]). Shared
/// by the equidistant estimators here and the windowed fits in `localrep`.
pub fn solve_coefficients(offsets: &Offsets, samples: &[f64]) -> Result<Vec<f64>> {
    if samples.len() != offsets.len() {
        return Err(Error::LengthMismatch {
            expected: offsets.len(),
            got: samples.len(),
        });
    }
    let inv = inverse_explicit(&VandermondeMatrix::new(offsets.clone()))?;
    let n = offsets.len();
    let mut coeffs = Vec::with_capacity(n);
    for row in inv.iter().take(n) {
        let mut acc = 0.0;
        for (j, &s) in samples.iter().enumerate() {
            acc += row[j] * s;
        }
        coeffs.push(acc);
    }
    Ok(coeffs)
}

/// Estimates Taylor coefficients a_0..a_N of f around plan.x0.
///
/// `samples[i] = f(x0 + offsets[i])`. Errors on length mismatch.
pub fn estimate_coefficients(plan: &SamplePlan, samples: &[f64]) -> Result<TaylorCoefficients> {
    if samples.len() != plan.n_points() {
        return Err(Error::LengthMismatch {
            expected: plan.n_points(),
            got: samples.len(),
        });
    }
    let coeffs = solve_coefficients(plan.offsets(), samples)?;
    Ok(TaylorCoefficients::new(plan.x0(), coeffs))
}

/// Estimates all derivatives f^(n)(x0), n = 0..=N, as n!·a_n.
///
/// Errors when N exceeds 20 (larger factorials are not exactly
/// representable) or on length mismatch.
pub fn estimate_derivatives(plan: &SamplePlan, samples: &[f64]) -> Result<DerivativeEstimates> {
    let n_big = plan.truncation_order();
    if n_big > MAX_FACTORIAL_ORDER {
        return Err(Error::InvalidParameter {
            name: "n_points",
            constraint: "n_points ≤ 21 (derivative recovery needs exact factorials)",
            got: plan.n_points() as f64,
        });
    }
    let coeffs = estimate_coefficients(plan, samples)?;
    let values = coeffs
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &a)| FACTORIALS[n] as f64 * a)
        .collect();
    Ok(DerivativeEstimates {
        orders: (0..=n_big).collect(),
        values,
        truth: None,
        abs_error: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn sample(plan: &SamplePlan, f: impl Fn(f64) -> f64) -> Vec<f64> {
        plan.abscissae().into_iter().map(f).collect()
    }

    // ---- plans ----

    #[test]
    fn plan_offsets_are_symmetric_and_equidistant() {
        let plan = make_plan(0.0, 0.5, 11).unwrap();
        let expected: Vec<f64> = (0..11).map(|i| (i as f64 - 5.0) * 0.5).collect();
        assert_eq!(plan.offsets().values(), &expected[..]);
        assert_eq!(plan.k_ratio(), 5.0);
        assert_eq!(plan.truncation_order(), 10);

        let plan = make_plan(0.0, 0.125, 3).unwrap();
        assert_eq!(plan.offsets().values(), &[-0.125, 0.0, 0.125]);
        assert_eq!(plan.k_ratio(), 1.0);
    }

    #[test]
    fn plan_even_count_uses_half_integer_offsets() {
        let plan = make_plan(1.0, 1.0, 2).unwrap();
        assert_eq!(plan.offsets().values(), &[-0.5, 0.5]);
        assert_eq!(plan.abscissae(), vec![0.5, 1.5]);
        assert_eq!(plan.k_ratio(), 0.5);
    }

    #[test]
    fn plan_rejects_bad_spacing_and_count() {
        assert_eq!(
            make_plan(0.0, 0.0, 5),
            Err(Error::InvalidParameter {
                name: "h",
                constraint: "h > 0",
                got: 0.0,
            })
        );
        assert!(make_plan(0.0, -0.5, 5).is_err());
        assert_eq!(
            make_plan(0.0, 0.5, 1),
            Err(Error::InvalidParameter {
                name: "n_points",
                constraint: "n_points ≥ 2",
                got: 1.0,
            })
        );
    }

    // ---- coefficient estimation ----

    #[test]
    fn quadratic_is_recovered_exactly() {
        let plan = make_plan(0.0, 1.0, 3).unwrap();
        let coeffs = estimate_coefficients(&plan, &[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(coeffs.coeffs(), &[0.0, 0.0, 1.0]);
        assert_eq!(coeffs.x0(), 0.0);
    }

    #[test]
    fn constant_samples_give_constant_coefficients() {
        let plan = make_plan(2.0, 0.5, 7).unwrap();
        let c = 3.25;
        let coeffs = estimate_coefficients(&plan, &[c; 7]).unwrap();
        assert!(close(coeffs.coeffs()[0], c, 1e-13));
        for &a in &coeffs.coeffs()[1..] {
            assert!(a.abs() <= 1e-13, "higher coefficient {a:e}");
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let plan = make_plan(0.0, 1.0, 3).unwrap();
        assert_eq!(
            estimate_coefficients(&plan, &[1.0, 2.0]),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 2,
            })
        );
    }

    #[test]
    fn first_coefficient_of_exponential_is_near_two() {
        // f(x) = e^{2x} has a_1 = f'(0) = 2; an 11-point spacing-0.5 stencil
        // is coarse, so only a loose check here (the sharp inequality against
        // the closed-form bound lives with the bounds tests).
        let plan = make_plan(0.0, 0.5, 11).unwrap();
        let coeffs = estimate_coefficients(&plan, &sample(&plan, |x| (2.0 * x).exp())).unwrap();
        assert!(close(coeffs.coeffs()[1], 2.0, 0.05), "{}", coeffs.coeffs()[1]);
    }

    // ---- derivative estimation ----

    #[test]
    fn cubic_derivative_is_exact_on_even_stencil() {
        let plan = make_plan(0.0, 1.0, 4).unwrap();
        let est = estimate_derivatives(&plan, &sample(&plan, |x| x * x * x)).unwrap();
        assert_eq!(est.orders, vec![0, 1, 2, 3]);
        assert!(close(est.values[3], 6.0, 1e-12), "{}", est.values[3]);
    }

    #[test]
    fn exponential_first_derivative_improves_with_finer_spacing() {
        let truth = 2.0;
        let mut errs = Vec::new();
        for h in [0.0675, 0.03375] {
            let plan = make_plan(0.0, h, 11).unwrap();
            let est = estimate_derivatives(&plan, &sample(&plan, |x| (2.0 * x).exp())).unwrap();
            errs.push((est.values[1] - truth).abs());
        }
        assert!(
            errs[1] < errs[0],
            "finer spacing should reduce error: {errs:?}"
        );
    }

    #[test]
    fn product_sine_zeroth_derivative_is_near_zero() {
        let plan = make_plan(0.0, 0.25, 7).unwrap();
        let est =
            estimate_derivatives(&plan, &sample(&plan, |x| x.sin() * (10.0 * x).sin())).unwrap();
        // f(0) = 0; the estimate carries only truncation error.
        assert!(est.values[0].abs() < 1e-2, "{}", est.values[0]);
    }

    #[test]
    fn derivative_values_are_factorial_multiples_of_coefficients() {
        let plan = make_plan(0.0, 0.25, 6).unwrap();
        let samples = sample(&plan, |x| (2.0 * x).exp());
        let coeffs = estimate_coefficients(&plan, &samples).unwrap();
        let est = estimate_derivatives(&plan, &samples).unwrap();
        for (n, (&value, &coeff)) in est.values.iter().zip(coeffs.coeffs()).enumerate() {
            assert_eq!(value, FACTORIALS[n] as f64 * coeff);
        }
    }

    #[test]
    fn derivative_recovery_is_capped_at_factorial_range() {
        let plan = make_plan(0.0, 0.125, 23).unwrap();
        let samples = vec![1.0; 23];
        // Coefficients are still fine beyond the cap…
        assert!(estimate_coefficients(&plan, &samples).is_ok());
        // …but factorial recovery is not.
        assert!(matches!(
            estimate_derivatives(&plan, &samples),
            Err(Error::InvalidParameter { name: "n_points", .. })
        ));
    }

    #[test]
    fn truth_attachment_fills_error_column() {
        let plan = make_plan(0.0, 1.0, 3).unwrap();
        let est = estimate_derivatives(&plan, &[1.0, 0.0, 1.0])
            .unwrap()
            .with_truth(vec![0.0, 0.0, 2.0])
            .unwrap();
        assert_eq!(est.abs_error.as_ref().unwrap(), &[0.0, 0.0, 0.0]);
        let est = estimate_derivatives(&plan, &[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(
            est.with_truth(vec![0.0]),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 1,
            })
        );
    }

    // ---- structural properties ----

    #[test]
    fn estimation_is_shift_covariant_bitwise() {
        // Estimating f around x0 equals estimating t ↦ f(x0 + t) around 0:
        // identical offsets and identical sample values give bitwise-equal
        // coefficient vectors.
        let x0 = 1.75;
        let f = |x: f64| (2.0 * x).exp();
        let plan_shifted = make_plan(x0, 0.25, 9).unwrap();
        let plan_origin = make_plan(0.0, 0.25, 9).unwrap();
        let at_x0 = estimate_coefficients(&plan_shifted, &sample(&plan_shifted, f)).unwrap();
        let at_origin =
            estimate_coefficients(&plan_origin, &sample(&plan_origin, |t| f(x0 + t))).unwrap();
        assert_eq!(at_x0.coeffs(), at_origin.coeffs());
    }

    #[test]
    fn convergence_rate_is_at_least_the_guaranteed_exponent() {
        // For a 7-point stencil the truncation analysis guarantees the
        // order-i derivative error decays at least like h^(N+1−i). Measure
        // the log–log slope over a dyadic h ladder and check it is not
        // slower than the guarantee (symmetric stencils actually do better
        // for even orders — superconvergence — so only the lower edge is a
        // sound universal assertion; see the acceptance suite for the
        // two-sided variant).
        let hs = [0.25, 0.125, 0.0625, 0.03125];
        let truth = |n: usize| -> f64 { 2.0_f64.powi(n as i32) };
        for i in 1..=4 {
            let mut logs = Vec::new();
            for &h in &hs {
                let plan = make_plan(0.0, h, 7).unwrap();
                let est = estimate_derivatives(&plan, &sample(&plan, |x| (2.0 * x).exp())).unwrap();
                logs.push(((h).ln(), (est.values[i] - truth(i)).abs().ln()));
            }
            // Least-squares slope of ln(err) against ln(h).
            let n = logs.len() as f64;
            let sx: f64 = logs.iter().map(|p| p.0).sum();
            let sy: f64 = logs.iter().map(|p| p.1).sum();
            let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
            let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            let guaranteed = (7 - i) as f64; // N+1−i with N = 6
            assert!(
                slope >= guaranteed - 0.8,
                "order {i}: slope {slope} below guaranteed {guaranteed} − 0.8"
            );
        }
    }

    #[test]
    fn evaluate_uses_horner_about_the_center() {
        let t = TaylorCoefficients::new(2.0, vec![1.0, 3.0, -2.0]);
        // 1 + 3(x−2) − 2(x−2)² at x = 3.5 → 1 + 4.5 − 4.5 = 1
        assert!(close(t.evaluate(3.5), 1.0, 1e-15));
        assert_eq!(t.evaluate(2.0), 1.0);
    }
}
