//! Baseline methods the benchmarks compare against: forward finite
//! differences of arbitrary order, natural cubic splines, and piecewise
//! linear interpolation.

use crate::diffop1d::FACTORIALS;
use crate::error::{Error, Result};
use crate::localrep::Signal;

/// C(n, k) from the exact factorial table (n ≤ 20).
fn binomial(n: usize, k: usize) -> f64 {
    (FACTORIALS[n] / (FACTORIALS[k] * FACTORIALS[n - k])) as f64
}

/// n-th order forward difference derivative estimate at the anchor point.
///
/// `samples[k] = f(x0 + k·h)`; returns Δⁿf/hⁿ = Σ_k (−1)^(n−k)·C(n,k)·
/// samples[k]/hⁿ using the first n+1 samples. Errors when fewer than n+1
/// samples are supplied, h ≤ 0, or n > 20 (exact binomial range).
pub fn forward_difference(samples: &[f64], h: f64, order: usize) -> Result<f64> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::InvalidParameter {
            name: "h",
            constraint: "h > 0",
            got: h,
        });
    }
    if order > 20 {
        return Err(Error::InvalidParameter {
            name: "order",
            constraint: "order ≤ 20 (exact binomials)",
            got: order as f64,
        });
    }
    if samples.len() < order + 1 {
        return Err(Error::LengthMismatch {
            expected: order + 1,
            got: samples.len(),
        });
    }
    let mut acc = 0.0;
    for (k, &s) in samples.iter().enumerate().take(order + 1) {
        let sign = if (order - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * binomial(order, k) * s;
    }
    Ok(acc / h.powi(order as i32))
}

/// Natural cubic spline through uniformly spaced knots.
///
/// Stores the knots plus the second derivative at each knot; the natural
/// boundary pins the end second derivatives to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineModel {
    knots: Signal,
    second_derivatives: Vec<f64>,
}

impl SplineModel {
    /// The interpolated knots.
    pub fn knots(&self) -> &Signal {
        &self.knots
    }

    /// Second derivative of the spline at each knot (zero at both ends).
    pub fn second_derivatives(&self) -> &[f64] {
        &self.second_derivatives
    }
}

/// Fits a natural cubic spline through the knots (at least 3).
///
/// The interior second derivatives solve the standard tridiagonal system;
/// forward elimination followed by back substitution, natural boundary
/// (zero second derivative) at both ends.
pub fn spline_fit(knots: &Signal) -> Result<SplineModel> {
    let n = knots.len();
    if n < 3 {
        return Err(Error::InvalidParameter {
            name: "knots",
            constraint: "at least 3 knots",
            got: n as f64,
        });
    }
    let x: Vec<f64> = (0..n).map(|i| knots.abscissa(i)).collect();
    let y = knots.values();
    let mut y2 = vec![0.0; n];
    let mut u = vec![0.0; n];
    for i in 1..n - 1 {
        let sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        let p = sig * y2[i - 1] + 2.0;
        y2[i] = (sig - 1.0) / p;
        let right = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        let left = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * (right - left) / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
    }
    y2[n - 1] = 0.0;
    for k in (0..n - 1).rev() {
        y2[k] = y2[k] * y2[k + 1] + u[k];
    }
    Ok(SplineModel {
        knots: knots.clone(),
        second_derivatives: y2,
    })
}

/// Locates the knot interval containing x, or errors when x lies outside the
/// span (a relative slack of 1e−9·spacing absorbs grid-arithmetic rounding
/// at the ends; no extrapolation beyond that).
fn locate(knots: &Signal, x: f64) -> Result<usize> {
    let start = knots.start();
    let end = knots.abscissa(knots.len() - 1);
    let slack = 1e-9 * knots.spacing();
    if x < start - slack || x > end + slack {
        return Err(Error::OutOfDomain {
            x,
            min: start,
            max: end,
        });
    }
    let t = (x - start) / knots.spacing();
    let i = (t.floor() as isize).clamp(0, knots.len() as isize - 2) as usize;
    Ok(i)
}

/// Evaluates a natural cubic spline at x (inside the knot span only).
pub fn spline_eval(model: &SplineModel, x: f64) -> Result<f64> {
    let knots = &model.knots;
    let i = locate(knots, x)?;
    let x_lo = knots.abscissa(i);
    let x_hi = knots.abscissa(i + 1);
    let hstep = x_hi - x_lo;
    let a = (x_hi - x) / hstep;
    let b = (x - x_lo) / hstep;
    let y = knots.values();
    let y2 = &model.second_derivatives;
    Ok(a * y[i]
        + b * y[i + 1]
        + ((a * a * a - a) * y2[i] + (b * b * b - b) * y2[i + 1]) * hstep * hstep / 6.0)
}

/// Piecewise-linear interpolation between the bracketing knots of x.
///
/// Errors when x lies outside the knot span.
pub fn linear_eval(knots: &Signal, x: f64) -> Result<f64> {
    let i = locate(knots, x)?;
    let x_lo = knots.abscissa(i);
    let hstep = knots.abscissa(i + 1) - x_lo;
    let y = knots.values();
    Ok(y[i] + (x - x_lo) * (y[i + 1] - y[i]) / hstep)
}
