//! `bench`: score interpolation methods against an oracle (built-in mode) or
//! against the supplied samples (input mode).
//!
//! CSV schema: `method,h,n_points,total_abs_error,interior_abs_error,
//! boundary_abs_error`, ordered by spacing (as given), then by method in the
//! fixed order ddp-vanilla, ddp-pyramid, spline, linear. Built-in runs use
//! the 300-sample grid starting at −10 and score every refined point; input
//! runs score the original abscissae only (no oracle exists in between).

use vandiff::baselines::{linear_eval, spline_eval, spline_fit};
use vandiff::localrep::{resample, Signal};
use vandiff::pyramid::resample_pyramid_with;

use crate::io;
use crate::{BenchArgs, CliError};

const METHODS: [&str; 4] = ["ddp-vanilla", "ddp-pyramid", "spline", "linear"];
const GRID_START: f64 = -10.0;
const GRID_LEN: usize = 300;

struct Row {
    method: &'static str,
    h: f64,
    total: f64,
    interior: f64,
    boundary: f64,
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    io::require_one_source(&args.function, &args.input)?;
    if args.n_points.is_multiple_of(2) || args.n_points < 3 {
        return Err(CliError::Usage(format!(
            "--n-points must be odd and at least 3, got {}",
            args.n_points
        )));
    }
    if args.factor < 2 {
        return Err(CliError::Usage(format!(
            "--factor must be at least 2, got {}",
            args.factor
        )));
    }
    if args.levels < 1 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    let methods = resolve_methods(args.method.as_deref())?;

    let (rows, header) = if let Some(name) = &args.function {
        builtin_rows(args, name, &methods)?
    } else {
        input_rows(args, &methods)?
    };

    let mut out = String::new();
    out.push_str(&header);
    out.push_str("method,h,n_points,total_abs_error,interior_abs_error,boundary_abs_error\n");
    for row in &rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.method, row.h, args.n_points, row.total, row.interior, row.boundary
        ));
    }
    io::emit(args.output.as_ref(), &out)?;

    if args.assert {
        check_ranking(&rows)?;
    }
    Ok(())
}

/// Parses the --method filter, keeping the canonical emission order.
fn resolve_methods(filter: Option<&str>) -> Result<Vec<&'static str>, CliError> {
    let Some(filter) = filter else {
        return Ok(METHODS.to_vec());
    };
    let mut wanted = Vec::new();
    for token in filter.split(',') {
        let token = token.trim();
        let known = METHODS
            .iter()
            .find(|&&m| m == token)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "--method: unknown method '{token}'; known: {}",
                    METHODS.join(", ")
                ))
            })?;
        if !wanted.contains(known) {
            wanted.push(*known);
        }
    }
    Ok(METHODS.iter().copied().filter(|m| wanted.contains(m)).collect())
}

fn builtin_rows(
    args: &BenchArgs,
    name: &str,
    methods: &[&'static str],
) -> Result<(Vec<Row>, String), CliError> {
    let f = io::parse_univariate(name)?;
    let spec = args
        .h
        .as_ref()
        .ok_or_else(|| CliError::Usage("--h is required with --fn".into()))?;
    let spacings = io::parse_spacings(spec)?;

    let mut rows = Vec::new();
    for &h in &spacings {
        let signal = Signal::sample(GRID_START, h, GRID_LEN, |x| {
            f.value(x).expect("univariate builtin")
        })?;
        let out_len = (GRID_LEN - 1) * args.factor + 1;
        let out_spacing = h / args.factor as f64;
        let xs: Vec<f64> = (0..out_len)
            .map(|i| GRID_START + i as f64 * out_spacing)
            .collect();
        let truths: Vec<f64> = xs
            .iter()
            .map(|&x| f.value(x))
            .collect::<vandiff::Result<_>>()?;
        for method in methods {
            let estimates = estimates_at(method, &signal, &xs, args)?;
            rows.push(score(method, h, &signal, &xs, &estimates, &truths, args.n_points));
        }
    }
    let header = format!(
        "# vandiff bench fn={} h={} n-points={} factor={} levels={} kernel={} methods={} assert={}\n",
        name,
        io::join_floats(&spacings),
        args.n_points,
        args.factor,
        args.levels,
        args.kernel.label(),
        methods.join(","),
        args.assert,
    );
    Ok((rows, header))
}

fn input_rows(args: &BenchArgs, methods: &[&'static str]) -> Result<(Vec<Row>, String), CliError> {
    if args.h.is_some() {
        return Err(CliError::Usage(
            "--h conflicts with --input (the spacing comes from the file)".into(),
        ));
    }
    let path = args.input.as_ref().expect("checked by require_one_source");
    let signal = io::read_signal(path)?;
    let h = signal.spacing();
    // Score at the original abscissae: the input samples are the only truth.
    let xs: Vec<f64> = (0..signal.len()).map(|i| signal.abscissa(i)).collect();
    let truths = signal.values().to_vec();

    let mut rows = Vec::new();
    for method in methods {
        let refined_xs: Vec<f64> = {
            let out_len = (signal.len() - 1) * args.factor + 1;
            let out_spacing = h / args.factor as f64;
            (0..out_len)
                .map(|i| signal.start() + i as f64 * out_spacing)
                .collect()
        };
        let refined = estimates_at(method, &signal, &refined_xs, args)?;
        let estimates: Vec<f64> = (0..signal.len()).map(|i| refined[i * args.factor]).collect();
        rows.push(score(method, h, &signal, &xs, &estimates, &truths, args.n_points));
    }
    let header = format!(
        "# vandiff bench input={} h={} n-points={} factor={} levels={} kernel={} methods={} assert={}\n",
        path.display(),
        h,
        args.n_points,
        args.factor,
        args.levels,
        args.kernel.label(),
        methods.join(","),
        args.assert,
    );
    Ok((rows, header))
}

/// Evaluates one method at the given refined abscissae.
fn estimates_at(
    method: &str,
    signal: &Signal,
    xs: &[f64],
    args: &BenchArgs,
) -> Result<Vec<f64>, CliError> {
    match method {
        "ddp-vanilla" => Ok(resample(signal, args.factor, args.n_points)?.values().to_vec()),
        "ddp-pyramid" => {
            if signal.len() < (1 << args.levels) {
                return Err(CliError::Usage(format!(
                    "--levels {} needs at least {} samples, input has {}",
                    args.levels,
                    1usize << args.levels,
                    signal.len()
                )));
            }
            Ok(resample_pyramid_with(
                signal,
                args.levels,
                args.n_points,
                args.factor,
                args.kernel.to_kernel(),
            )?
            .values()
            .to_vec())
        }
        "spline" => {
            let model = spline_fit(signal)?;
            xs.iter()
                .map(|&x| spline_eval(&model, x).map_err(CliError::from))
                .collect()
        }
        "linear" => xs
            .iter()
            .map(|&x| linear_eval(signal, x).map_err(CliError::from))
            .collect(),
        other => unreachable!("unknown method {other}"),
    }
}

/// Sums absolute errors, split at (n_points/2)·h from either end.
fn score(
    method: &'static str,
    h: f64,
    signal: &Signal,
    xs: &[f64],
    estimates: &[f64],
    truths: &[f64],
    n_points: usize,
) -> Row {
    let margin = (n_points / 2) as f64 * signal.spacing();
    let lo = signal.start() + margin;
    let hi = signal.abscissa(signal.len() - 1) - margin;
    let mut interior = 0.0;
    let mut boundary = 0.0;
    for ((&x, &est), &truth) in xs.iter().zip(estimates).zip(truths) {
        let err = (est - truth).abs();
        if x < lo || x > hi {
            boundary += err;
        } else {
            interior += err;
        }
    }
    Row {
        method,
        h,
        total: interior + boundary,
        interior,
        boundary,
    }
}

/// Verifies ddp-vanilla < spline < linear on total error at every spacing.
fn check_ranking(rows: &[Row]) -> Result<(), CliError> {
    let total = |h: f64, method: &str| -> Result<f64, CliError> {
        rows.iter()
            .find(|r| r.h == h && r.method == method)
            .map(|r| r.total)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "--assert needs method {method} in the run (check --method)"
                ))
            })
    };
    let mut spacings: Vec<f64> = rows.iter().map(|r| r.h).collect();
    spacings.dedup();
    for h in spacings {
        let vanilla = total(h, "ddp-vanilla")?;
        let spline = total(h, "spline")?;
        let linear = total(h, "linear")?;
        if !(vanilla < spline && spline < linear) {
            return Err(CliError::Numerical(format!(
                "assert failed: ranking ddp-vanilla < spline < linear does not hold at h={h} \
                 ({vanilla:e} vs {spline:e} vs {linear:e})"
            )));
        }
    }
    Ok(())
}
