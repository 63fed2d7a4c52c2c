//! Local truncated-Taylor representation of sampled signals.
//!
//! A [`Signal`] is a uniformly spaced sample list. Fitting a window of
//! n_points consecutive samples around a center sample yields a
//! [`LocalModel`] — a truncated Taylor polynomial anchored at that sample's
//! abscissa — which can then be evaluated anywhere nearby. [`resample`]
//! refines a whole signal by an integer factor, evaluating each refined
//! abscissa with the model whose center sample lies nearest.
//!
//! Window offsets are built as (index difference)·spacing, so the center's
//! own offset is exactly 0.0. The closed-form inverse then has an exact
//! Kronecker-delta top row, which makes the fitted model reproduce its
//! center sample bit-for-bit — resampling returns the original values at
//! the original abscissae exactly.

use crate::diffop1d::{solve_coefficients, TaylorCoefficients};
use crate::error::{Error, Result};
use crate::vandermonde::Offsets;

/// Uniformly sampled signal: sample i sits at start + i·spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    start: f64,
    spacing: f64,
    values: Vec<f64>,
}

impl Signal {
    /// Wraps uniformly spaced samples (spacing > 0, at least 2 values).
    pub fn new(start: f64, spacing: f64, values: Vec<f64>) -> Result<Self> {
        if spacing <= 0.0 || !spacing.is_finite() {
            return Err(Error::InvalidParameter {
                name: "spacing",
                constraint: "spacing > 0",
                got: spacing,
            });
        }
        if values.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "values",
                constraint: "at least 2 samples",
                got: values.len() as f64,
            });
        }
        Ok(Self {
            start,
            spacing,
            values,
        })
    }

    /// Samples a function on a uniform grid of `len` points from `start`.
    pub fn sample(start: f64, spacing: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..len).map(|i| f(start + i as f64 * spacing)).collect();
        Self::new(start, spacing, values)
    }

    /// First abscissa.
    pub fn start(&self) -> f64 {
        self.start
    }

    /// Sample spacing.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Sample values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when the signal holds no samples (never constructible via `new`).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Abscissa of sample i.
    pub fn abscissa(&self, i: usize) -> f64 {
        self.start + i as f64 * self.spacing
    }
}

/// Truncated Taylor model fitted on one window of a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalModel {
    center: f64,
    coeffs: TaylorCoefficients,
    valid_radius: f64,
}

impl LocalModel {
    /// Expansion center (abscissa of the window's center sample).
    pub fn center(&self) -> f64 {
        self.center
    }

    /// The fitted Taylor coefficients, anchored at `center`.
    pub fn coeffs(&self) -> &TaylorCoefficients {
        &self.coeffs
    }

    /// Radius within which evaluation is contracted (the window spacing).
    pub fn valid_radius(&self) -> f64 {
        self.valid_radius
    }
}

/// Start index of the length-n window whose center is as close as possible
/// to `center_index`, clamped inside a signal of length `len`.
fn window_start(center_index: usize, n_points: usize, len: usize) -> usize {
    let ideal = center_index as isize - (n_points / 2) as isize;
    ideal.clamp(0, (len - n_points) as isize) as usize
}

/// Fits a truncated Taylor model on the window of `n_points` consecutive
/// samples nearest `center_index`.
///
/// The model is anchored at the abscissa of `center_index` itself, even when
/// the window is clamped at a signal boundary; offsets are the window
/// abscissae minus that anchor. Errors when n_points exceeds the signal
/// length, n_points = 0, or the center index is out of range.
pub fn fit_local(signal: &Signal, center_index: usize, n_points: usize) -> Result<LocalModel> {
    let len = signal.len();
    if n_points > len {
        return Err(Error::InvalidParameter {
            name: "n_points",
            constraint: "n_points ≤ signal length",
            got: n_points as f64,
        });
    }
    if n_points == 0 {
        return Err(Error::InvalidParameter {
            name: "n_points",
            constraint: "n_points ≥ 1",
            got: 0.0,
        });
    }
    if center_index >= len {
        return Err(Error::InvalidParameter {
            name: "center_index",
            constraint: "center_index < signal length",
            got: center_index as f64,
        });
    }
    let start = window_start(center_index, n_points, len);
    // Integer index differences keep the center offset exactly 0.0.
    let offsets = Offsets::new(
        (start..start + n_points)
            .map(|j| (j as f64 - center_index as f64) * signal.spacing())
            .collect(),
    )?;
    let window = &signal.values()[start..start + n_points];
    let coeffs = solve_coefficients(&offsets, window)?;
    let center = signal.abscissa(center_index);
    Ok(LocalModel {
        center,
        coeffs: TaylorCoefficients::new(center, coeffs),
        valid_radius: signal.spacing(),
    })
}

/// Evaluates a local model at `x` by Horner's rule in (x − center).
///
/// Returns the value together with a staleness flag that is true when x lies
/// outside the model's contracted radius (|x − center| > valid_radius); the
/// value is still returned.
pub fn evaluate(model: &LocalModel, x: f64) -> (f64, bool) {
    let value = model.coeffs.evaluate(x);
    let stale = (x - model.center).abs() > model.valid_radius;
    (value, stale)
}

/// Maps refined-grid index i to the nearest original sample index,
/// ties toward the left, in exact integer arithmetic.
fn nearest_center_index(i: usize, factor: usize, len: usize) -> usize {
    let q = i / factor;
    let r = i % factor;
    let nearest = if 2 * r > factor { q + 1 } else { q };
    nearest.min(len - 1)
}

/// Refines a signal by an integer factor using local Taylor models.
///
/// Output spacing is spacing/factor, the span is preserved (the output has
/// (len−1)·factor + 1 samples starting at the same abscissa), and every
/// output point is evaluated with the model whose center sample lies nearest
/// (ties toward the left center). Requires factor ≥ 2 and odd n_points;
/// window errors propagate from [`fit_local`].
pub fn resample(signal: &Signal, factor: usize, n_points: usize) -> Result<Signal> {
    if factor < 2 {
        return Err(Error::InvalidParameter {
            name: "factor",
            constraint: "factor ≥ 2",
            got: factor as f64,
        });
    }
    if n_points.is_multiple_of(2) {
        return Err(Error::InvalidParameter {
            name: "n_points",
            constraint: "n_points odd",
            got: n_points as f64,
        });
    }
    let len = signal.len();
    let out_len = (len - 1) * factor + 1;
    let out_spacing = signal.spacing() / factor as f64;
    let mut models: Vec<Option<LocalModel>> = vec![None; len];
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let ci = nearest_center_index(i, factor, len);
        if models[ci].is_none() {
            models[ci] = Some(fit_local(signal, ci, n_points)?);
        }
        let model = models[ci].as_ref().expect("just fitted");
        let x = signal.start() + i as f64 * out_spacing;
        out.push(evaluate(model, x).0);
    }
    Signal::new(signal.start(), out_spacing, out)
}
