//! Difference-pyramid (multi-resolution) variant of the estimator.
//!
//! A depth-m pyramid of a signal F stores difference levels: smoothing and
//! 2× decimation produce G_1, G_2, …; level i (0-based) holds
//! G_i − upsample(G_{i+1}) for i < m−1, and the final level holds the
//! coarsest smoothed signal G_{m−1} itself (G_0 = F). Upsampling back and
//! summing therefore telescopes to F up to the upsampler's own error.
//!
//! Estimation fits one window per level — anchored at the level sample
//! nearest the query center, with offsets measured from the common center in
//! original abscissa units — and sums the per-level coefficient vectors into
//! one truncated Taylor model. A depth-1 pyramid has a single level equal to
//! F, so the pipeline degenerates to the vanilla estimator.

use crate::diffop1d::{solve_coefficients, TaylorCoefficients};
use crate::error::{Error, Result};
use crate::localrep::Signal;
use crate::vandermonde::Offsets;

/// 3-tap smoothing kernel used before each decimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Binomial taps (1/4, 1/2, 1/4): the standard pyramid smoother.
    #[default]
    Binomial,
    /// Mean taps (1/3, 1/3, 1/3).
    Mean,
}

impl Kernel {
    fn taps(self) -> [f64; 3] {
        match self {
            Kernel::Binomial => [0.25, 0.5, 0.25],
            Kernel::Mean => [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        }
    }
}

/// Difference pyramid of a signal: levels[i] has spacing base·2^i.
#[derive(Debug, Clone, PartialEq)]
pub struct PyramidLevels {
    levels: Vec<Signal>,
    kernel: Kernel,
}

impl PyramidLevels {
    /// The stored levels, finest first. All but the last are difference
    /// signals; the last is the coarsest smoothed signal.
    pub fn levels(&self) -> &[Signal] {
        &self.levels
    }

    /// Number of levels (the build depth).
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// The smoothing kernel the pyramid was built with.
    pub fn kernel(&self) -> Kernel {
        self.kernel
    }
}

/// 3-tap convolution with edge replication (constants pass through exactly).
fn smooth(values: &[f64], kernel: Kernel) -> Vec<f64> {
    let [w0, w1, w2] = kernel.taps();
    let len = values.len();
    (0..len)
        .map(|i| {
            let left = values[i.saturating_sub(1)];
            let right = values[(i + 1).min(len - 1)];
            w0 * left + w1 * values[i] + w2 * right
        })
        .collect()
}

/// Keeps even-index samples (doubling the spacing, preserving the start).
fn downsample(values: &[f64]) -> Vec<f64> {
    values.iter().step_by(2).copied().collect()
}

/// Linear 2× upsampling: originals at even indices, midpoints between them;
/// trailing replication pads to `target_len` (at most one extra sample).
fn upsample2(values: &[f64], target_len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(target_len);
    for (i, &v) in values.iter().enumerate() {
        out.push(v);
        if i + 1 < values.len() {
            out.push(0.5 * (v + values[i + 1]));
        }
    }
    while out.len() < target_len {
        out.push(*out.last().expect("upsample input non-empty"));
    }
    out.truncate(target_len);
    out
}

/// Builds a depth-m difference pyramid.
///
/// Each round smooths the current signal, decimates it by 2, and stores the
/// difference against the decimated signal's upsampling; the final level
/// stores the coarsest smoothed signal itself. Depth 1 stores just the input.
/// Errors when depth = 0 or the signal is shorter than 2^depth.
pub fn build_pyramid(f: &Signal, depth: usize, kernel: Kernel) -> Result<PyramidLevels> {
    if depth == 0 {
        return Err(Error::InvalidParameter {
            name: "depth",
            constraint: "depth ≥ 1",
            got: 0.0,
        });
    }
    let needed = 1usize << depth;
    if f.len() < needed {
        return Err(Error::InvalidParameter {
            name: "depth",
            constraint: "signal length ≥ 2^depth",
            got: depth as f64,
        });
    }
    let mut levels = Vec::with_capacity(depth);
    let mut current = f.clone();
    for _ in 0..depth - 1 {
        let coarse_values = downsample(&smooth(current.values(), kernel));
        let coarse = Signal::new(current.start(), current.spacing() * 2.0, coarse_values)?;
        let back = upsample2(coarse.values(), current.len());
        let diff = current
            .values()
            .iter()
            .zip(&back)
            .map(|(a, b)| a - b)
            .collect();
        levels.push(Signal::new(current.start(), current.spacing(), diff)?);
        current = coarse;
    }
    levels.push(current);
    Ok(PyramidLevels { levels, kernel })
}

/// Index of the level sample nearest to x, ties toward the left.
fn nearest_index(level: &Signal, x: f64) -> usize {
    let t = (x - level.start()) / level.spacing();
    let i = (t - 0.5).ceil() as isize;
    i.clamp(0, level.len() as isize - 1) as usize
}

/// Start of the n-point window centered as close as possible to `idx`.
fn window_start(idx: usize, n_points: usize, len: usize) -> usize {
    let ideal = idx as isize - (n_points / 2) as isize;
    ideal.clamp(0, (len - n_points) as isize) as usize
}

/// Estimates Taylor coefficients at `center` by summing per-level fits.
///
/// Each level contributes one n-point window fit anchored at its sample
/// nearest the center, with offsets measured from the common center in
/// original abscissa units; the per-level coefficient vectors share one
/// (x − center) basis and are summed elementwise. Errors when any level is
/// shorter than n_points.
pub fn estimate_coefficients_pyramid(
    p: &PyramidLevels,
    center: f64,
    n_points: usize,
) -> Result<TaylorCoefficients> {
    if n_points == 0 {
        return Err(Error::InvalidParameter {
            name: "n_points",
            constraint: "n_points ≥ 1",
            got: 0.0,
        });
    }
    let mut total = vec![0.0; n_points];
    for level in &p.levels {
        if level.len() < n_points {
            return Err(Error::InvalidParameter {
                name: "n_points",
                constraint: "n_points ≤ every level's length",
                got: n_points as f64,
            });
        }
        let anchor = nearest_index(level, center);
        let start = window_start(anchor, n_points, level.len());
        let offsets = Offsets::new(
            (start..start + n_points)
                .map(|j| level.abscissa(j) - center)
                .collect(),
        )?;
        let window = &level.values()[start..start + n_points];
        let coeffs = solve_coefficients(&offsets, window)?;
        for (t, c) in total.iter_mut().zip(&coeffs) {
            *t += c;
        }
    }
    Ok(TaylorCoefficients::new(center, total))
}

/// Refines a signal by an integer factor through a difference pyramid built
/// with the given kernel.
///
/// The output grid matches [`crate::localrep::resample`]: spacing/factor,
/// same start and span. Each refined point is evaluated with the summed
/// pyramid coefficients anchored at the base sample nearest to it (ties
/// toward the left). Requires factor ≥ 2 and odd n_points.
pub fn resample_pyramid_with(
    f: &Signal,
    depth: usize,
    n_points: usize,
    factor: usize,
    kernel: Kernel,
) -> Result<Signal> {
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
    let pyramid = build_pyramid(f, depth, kernel)?;
    let len = f.len();
    let out_len = (len - 1) * factor + 1;
    let out_spacing = f.spacing() / factor as f64;
    let mut cached: Vec<Option<TaylorCoefficients>> = vec![None; len];
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let q = i / factor;
        let r = i % factor;
        let ci = if 2 * r > factor { q + 1 } else { q }.min(len - 1);
        if cached[ci].is_none() {
            let center = f.abscissa(ci);
            cached[ci] = Some(estimate_coefficients_pyramid(&pyramid, center, n_points)?);
        }
        let x = f.start() + i as f64 * out_spacing;
        out.push(cached[ci].as_ref().expect("just computed").evaluate(x));
    }
    Signal::new(f.start(), out_spacing, out)
}

/// [`resample_pyramid_with`] using the default binomial kernel.
pub fn resample_pyramid(f: &Signal, depth: usize, n_points: usize, factor: usize) -> Result<Signal> {
    resample_pyramid_with(f, depth, n_points, factor, Kernel::Binomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localrep::resample;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    // ---- construction ----

    #[test]
    fn constant_signal_yields_zero_difference_and_constant_tail() {
        let sig = Signal::new(0.0, 0.5, vec![3.25; 16]).unwrap();
        let pyr = build_pyramid(&sig, 2, Kernel::Binomial).unwrap();
        assert_eq!(pyr.depth(), 2);
        // Smoothing, decimation, and upsampling all preserve constants
        // exactly, so the difference level is exactly zero…
        assert!(pyr.levels()[0].values().iter().all(|&v| v == 0.0));
        // …and the coarse tail is exactly the constant at doubled spacing.
        assert!(pyr.levels()[1].values().iter().all(|&v| v == 3.25));
        assert_eq!(pyr.levels()[1].spacing(), 1.0);
        assert_eq!(pyr.levels()[1].len(), 8);
    }

    #[test]
    fn affine_signal_first_difference_level_vanishes_on_interiors() {
        // Mean smoothing reproduces affine values away from the replicated
        // edges, so the first difference level is ≈0 except at boundaries.
        let b = 2.0;
        let sig = Signal::sample(0.0, 0.25, 16, |x| 1.0 + b * x).unwrap();
        let pyr = build_pyramid(&sig, 2, Kernel::Mean).unwrap();
        let d0 = pyr.levels()[0].values();
        for (i, &v) in d0.iter().enumerate().take(13).skip(2) {
            assert!(close(v, 0.0, 1e-12), "interior {i}: {v}");
        }
        // Edge replication biases the first smoothed sample by b·h/3, which
        // survives into the difference level.
        assert!(d0[0].abs() > 1e-3, "boundary effect missing: {}", d0[0]);
    }

    #[test]
    fn impulse_difference_level_matches_direct_convolution() {
        // Hand arithmetic for an impulse at index 4 of 8, binomial taps:
        // smoothing spreads (1/4, 1/2, 1/4) around index 4; decimation keeps
        // indices (0,2,4,6) → (0,0,1/2,0); upsampling gives midpoints
        // (0,0,0,1/4,1/2,1/4,0) padded to 8; the difference follows.
        let mut values = vec![0.0; 8];
        values[4] = 1.0;
        let sig = Signal::new(0.0, 1.0, values).unwrap();
        let pyr = build_pyramid(&sig, 2, Kernel::Binomial).unwrap();
        assert_eq!(
            pyr.levels()[0].values(),
            &[0.0, 0.0, 0.0, -0.25, 0.5, -0.25, 0.0, 0.0]
        );
    }

    #[test]
    fn depth_one_pyramid_stores_the_signal_itself() {
        let sig = Signal::sample(-1.0, 0.125, 9, |x| (2.0 * x).exp()).unwrap();
        let pyr = build_pyramid(&sig, 1, Kernel::Binomial).unwrap();
        assert_eq!(pyr.depth(), 1);
        assert_eq!(pyr.levels()[0], sig);
    }

    #[test]
    fn build_rejects_zero_depth_and_short_signals() {
        let sig = Signal::sample(0.0, 1.0, 7, |x| x).unwrap();
        assert!(matches!(
            build_pyramid(&sig, 0, Kernel::Binomial),
            Err(Error::InvalidParameter { name: "depth", .. })
        ));
        // 7 < 2³
        assert!(build_pyramid(&sig, 3, Kernel::Binomial).is_err());
        assert!(build_pyramid(&sig, 2, Kernel::Binomial).is_ok());
    }

    #[test]
    fn upsampled_levels_telescope_back_to_affine_signals() {
        // Affine signals pass through smoothing and linear upsampling
        // unchanged on interiors, so summing the upsampled levels must
        // reproduce the input there.
        let sig = Signal::sample(0.0, 0.125, 32, |x| 2.0 - 3.0 * x).unwrap();
        let pyr = build_pyramid(&sig, 3, Kernel::Binomial).unwrap();
        // Reconstruct: start from the coarsest level, repeatedly upsample
        // and add the next finer difference level.
        let mut acc = pyr.levels()[2].values().to_vec();
        for lvl in [1usize, 0] {
            let target = pyr.levels()[lvl].len();
            let up = upsample2(&acc, target);
            acc = up
                .iter()
                .zip(pyr.levels()[lvl].values())
                .map(|(u, d)| u + d)
                .collect();
        }
        for (i, (&got, &want)) in acc.iter().zip(sig.values()).enumerate().take(24).skip(8) {
            assert!(close(got, want, 1e-9), "interior {i}: {got} vs {want}");
        }
    }

    // ---- estimation ----

    #[test]
    fn constant_signal_coefficients_are_constant_then_zero() {
        let sig = Signal::new(0.0, 0.5, vec![4.5; 16]).unwrap();
        let pyr = build_pyramid(&sig, 2, Kernel::Binomial).unwrap();
        let coeffs = estimate_coefficients_pyramid(&pyr, sig.abscissa(7), 5).unwrap();
        assert!(close(coeffs.coeffs()[0], 4.5, 1e-12));
        for &c in &coeffs.coeffs()[1..] {
            assert!(c.abs() <= 1e-12, "higher coefficient {c:e}");
        }
    }

    #[test]
    fn depth_one_estimation_matches_the_vanilla_operator() {
        let sig = Signal::sample(-3.0, 0.0625, 97, |x| (2.0 * x).exp()).unwrap();
        let vanilla = resample(&sig, 4, 5).unwrap();
        let pyramid = resample_pyramid(&sig, 1, 5, 4).unwrap();
        assert_eq!(vanilla.len(), pyramid.len());
        for i in 0..vanilla.len() {
            let (a, b) = (vanilla.values()[i], pyramid.values()[i]);
            assert!(
                (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0),
                "index {i}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn pyramid_pipeline_is_linear_in_the_input() {
        let u = Signal::sample(0.0, 0.125, 32, |x| (2.0 * x).exp()).unwrap();
        let v = Signal::sample(0.0, 0.125, 32, |x| (3.0 * x).sin()).unwrap();
        let (alpha, beta) = (1.5, -0.25);
        let combo_values: Vec<f64> = u
            .values()
            .iter()
            .zip(v.values())
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let combo = Signal::new(0.0, 0.125, combo_values).unwrap();
        let out_u = resample_pyramid(&u, 2, 5, 4).unwrap();
        let out_v = resample_pyramid(&v, 2, 5, 4).unwrap();
        let out_combo = resample_pyramid(&combo, 2, 5, 4).unwrap();
        for i in 0..out_combo.len() {
            let expected = alpha * out_u.values()[i] + beta * out_v.values()[i];
            let got = out_combo.values()[i];
            assert!(
                (got - expected).abs() <= 1e-10 * (1.0 + got.abs() + expected.abs()),
                "index {i}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn estimation_rejects_windows_longer_than_a_level() {
        // Depth 3 on 16 samples leaves a 4-sample coarsest level.
        let sig = Signal::sample(0.0, 0.25, 16, |x| x * x).unwrap();
        let pyr = build_pyramid(&sig, 3, Kernel::Binomial).unwrap();
        assert_eq!(pyr.levels()[2].len(), 4);
        assert!(estimate_coefficients_pyramid(&pyr, 2.0, 5).is_err());
        assert!(estimate_coefficients_pyramid(&pyr, 2.0, 3).is_ok());
    }

    #[test]
    fn pyramid_resampling_covers_the_same_grid_as_vanilla() {
        let sig = Signal::sample(-1.0, 0.25, 17, |x| x * x).unwrap();
        let out = resample_pyramid(&sig, 2, 5, 4).unwrap();
        assert_eq!(out.len(), 65);
        assert_eq!(out.start(), -1.0);
        assert_eq!(out.spacing(), 0.0625);
        assert!(resample_pyramid(&sig, 2, 5, 1).is_err());
        assert!(resample_pyramid(&sig, 2, 4, 4).is_err());
    }

    #[test]
    fn upsampling_pads_odd_targets_by_replication() {
        assert_eq!(upsample2(&[1.0, 3.0], 3), vec![1.0, 2.0, 3.0]);
        assert_eq!(upsample2(&[1.0, 3.0], 4), vec![1.0, 2.0, 3.0, 3.0]);
        assert_eq!(upsample2(&[2.0], 2), vec![2.0, 2.0]);
    }

    #[test]
    fn nearest_level_sample_ties_toward_the_left() {
        let level = Signal::new(0.0, 1.0, vec![0.0; 5]).unwrap();
        assert_eq!(nearest_index(&level, 0.4), 0);
        assert_eq!(nearest_index(&level, 0.5), 0); // exact tie → left
        assert_eq!(nearest_index(&level, 0.6), 1);
        assert_eq!(nearest_index(&level, -3.0), 0);
        assert_eq!(nearest_index(&level, 9.0), 4);
    }
}
