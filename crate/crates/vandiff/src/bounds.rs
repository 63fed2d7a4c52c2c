//! Closed-form truncation-error bounds for the Vandermonde estimator.
//!
//! With M = sup |f^(N+1)| over the sampled window, K = max|offset|/h, and
//! N+1 samples, the estimator's errors admit the closed forms
//!
//! ```text
//! |a_i − a_i^e|        ≤ M·C(N,i)·K^(2N+1−i)·h^(N+1−i) / N!     (coefficient)
//! |f^(i) − i!·a_i^e|   ≤ M·K^(2N+1−i)·h^(N+1−i) / (N−i)!        (derivative)
//! |f(x) − Σ a_i^e x^i| ≤ M·h^(N+1)·(K^(N+1)(K+1)^N/N! + 1/(N+1)!)  (function)
//! ```
//!
//! All evaluation happens in log space (K^(2N+1−i) alone overflows f64 well
//! before the N = 34 curves end) and is exponentiated once at the boundary.
//! The two bound families share one log-space core, so the identity
//! derivative_bound = coefficient_bound·i! holds to rounding error.

use crate::error::{Error, Result};

/// Parameters of the closed-form bounds.
///
/// M bounds |f^(N+1)| on the sampled window; K is the stencil half-width
/// ratio max|offset|/h; h is the sample spacing; N the truncation order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    m: f64,
    k: f64,
    h: f64,
    n: usize,
}

impl BoundParams {
    /// Validates and wraps bound parameters (M ≥ 0, K > 0, h > 0).
    pub fn new(m: f64, k: f64, h: f64, n: usize) -> Result<Self> {
        if m < 0.0 || !m.is_finite() {
            return Err(Error::InvalidParameter {
                name: "m",
                constraint: "M ≥ 0",
                got: m,
            });
        }
        if k <= 0.0 || !k.is_finite() {
            return Err(Error::InvalidParameter {
                name: "k",
                constraint: "K > 0",
                got: k,
            });
        }
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::InvalidParameter {
                name: "h",
                constraint: "h > 0",
                got: h,
            });
        }
        Ok(Self { m, k, h, n })
    }

    /// Derivative-magnitude bound M.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Stencil half-width ratio K.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Sample spacing h.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Truncation order N.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// ln(k!) by direct summation of logarithms (exact enough for bound work,
/// valid far beyond the 20! limit of exact integer factorials).
fn ln_factorial(k: usize) -> f64 {
    let mut acc = 0.0;
    for j in 2..=k {
        acc += (j as f64).ln();
    }
    acc
}

/// Shared log-space core: ln M + (2N+1−i)·ln K + (N+1−i)·ln h − ln (N−i)!.
///
/// This is exactly ln(derivative_bound); the coefficient bound subtracts a
/// further ln i! (the algebraic simplification of C(N,i)/N! = 1/(i!·(N−i)!)).
fn ln_derivative_core(p: &BoundParams, i: usize) -> f64 {
    let n = p.n as f64;
    let i_f = i as f64;
    p.m.ln() + (2.0 * n + 1.0 - i_f) * p.k.ln() + (n + 1.0 - i_f) * p.h.ln()
        - ln_factorial(p.n - i)
}

fn check_order(p: &BoundParams, i: usize) -> Result<()> {
    if i > p.n {
        return Err(Error::InvalidParameter {
            name: "i",
            constraint: "0 ≤ i ≤ N",
            got: i as f64,
        });
    }
    Ok(())
}

/// Bound on the coefficient error |a_i − a_i^e|.
///
/// Returns M·C(N,i)·K^(2N+1−i)·h^(N+1−i)/N!, evaluated in log space.
/// Errors when i > N.
pub fn coefficient_bound(p: &BoundParams, i: usize) -> Result<f64> {
    check_order(p, i)?;
    Ok((ln_derivative_core(p, i) - ln_factorial(i)).exp())
}

/// Bound on the derivative error |f^(i)(x0) − i!·a_i^e|.
///
/// Returns M·K^(2N+1−i)·h^(N+1−i)/(N−i)!, evaluated in log space.
/// Errors when i > N.
pub fn derivative_bound(p: &BoundParams, i: usize) -> Result<f64> {
    check_order(p, i)?;
    Ok(ln_derivative_core(p, i).exp())
}

/// Bound on the reconstruction error of the truncated series over the window.
///
/// Returns M·h^(N+1)·(K^(N+1)·(K+1)^N/N! + 1/(N+1)!); the two bracket terms
/// are combined by log-sum-exp so neither may overflow alone.
pub fn representation_bound(p: &BoundParams) -> f64 {
    let n = p.n as f64;
    let t1 = (n + 1.0) * p.k.ln() + n * (p.k + 1.0).ln() - ln_factorial(p.n);
    let t2 = -ln_factorial(p.n + 1);
    let hi = t1.max(t2);
    let bracket_ln = hi + ((t1 - hi).exp() + (t2 - hi).exp()).ln();
    (p.m.ln() + (n + 1.0) * p.h.ln() + bracket_ln).exp()
}

/// Which bound family a curve sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundTarget {
    /// Derivative bound of the given order i.
    Derivative(usize),
    /// Function-representation bound.
    Representation,
}

/// Bound-vs-sample-count curve at fixed spacing, M fixed to 1.
///
/// For each odd count n in `counts` the equidistant symmetric substitution
/// K = (n−1)/2, N = n−1 is applied and the requested bound evaluated. Counts
/// where the parameters are not meaningful — n < 3 (K would be 0) or, for a
/// derivative target, i > N — are skipped. Returns (n_points, bound) pairs.
pub fn bound_curve(
    h: f64,
    target: BoundTarget,
    counts: impl IntoIterator<Item = usize>,
) -> Vec<(usize, f64)> {
    let mut curve = Vec::new();
    for n_points in counts {
        if n_points % 2 == 0 || n_points < 3 {
            continue;
        }
        let big_n = n_points - 1;
        if let BoundTarget::Derivative(i) = target {
            if i > big_n {
                continue;
            }
        }
        let k = (n_points as f64 - 1.0) / 2.0;
        let p = BoundParams::new(1.0, k, h, big_n).expect("valid by construction");
        let bound = match target {
            BoundTarget::Derivative(i) => {
                derivative_bound(&p, i).expect("order checked above")
            }
            BoundTarget::Representation => representation_bound(&p),
        };
        curve.push((n_points, bound));
    }
    curve
}

/// Odd counts 3..=35, the range the bound-vs-count studies sweep.
pub fn default_curve_counts() -> impl Iterator<Item = usize> {
    (3..=35).step_by(2)
}
