//! `interp`: resample a signal onto a refined grid with one method and emit
//! the refined samples as `x,value` rows.

use vandiff::baselines::{linear_eval, spline_eval, spline_fit};
use vandiff::localrep::{resample, Signal};
use vandiff::pyramid::resample_pyramid_with;

use crate::io;
use crate::{CliError, InterpArgs, InterpMethod};

const GRID_START: f64 = -10.0;
const GRID_LEN: usize = 300;

pub fn run(args: &InterpArgs) -> Result<(), CliError> {
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

    let (signal, source) = if let Some(name) = &args.function {
        let f = io::parse_univariate(name)?;
        let h = args
            .h
            .ok_or_else(|| CliError::Usage("--h is required with --fn".into()))?;
        if h <= 0.0 || !h.is_finite() {
            return Err(CliError::Usage(format!("--h must be positive, got {h}")));
        }
        let signal = Signal::sample(GRID_START, h, GRID_LEN, |x| {
            f.value(x).expect("univariate builtin")
        })?;
        (signal, format!("fn={name}"))
    } else {
        if args.h.is_some() {
            return Err(CliError::Usage(
                "--h conflicts with --input (the spacing comes from the file)".into(),
            ));
        }
        let path = args.input.as_ref().expect("checked by require_one_source");
        (io::read_signal(path)?, format!("input={}", path.display()))
    };

    let out_len = (signal.len() - 1) * args.factor + 1;
    let out_spacing = signal.spacing() / args.factor as f64;
    let refined: Vec<(f64, f64)> = match args.method {
        InterpMethod::Ddp => resample(&signal, args.factor, args.n_points)?
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| (signal.start() + i as f64 * out_spacing, v))
            .collect(),
        InterpMethod::Pyramid => {
            if signal.len() < (1 << args.levels) {
                return Err(CliError::Usage(format!(
                    "--levels {} needs at least {} samples, input has {}",
                    args.levels,
                    1usize << args.levels,
                    signal.len()
                )));
            }
            resample_pyramid_with(
                &signal,
                args.levels,
                args.n_points,
                args.factor,
                args.kernel.to_kernel(),
            )?
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| (signal.start() + i as f64 * out_spacing, v))
            .collect()
        }
        InterpMethod::Spline => {
            let model = spline_fit(&signal)?;
            (0..out_len)
                .map(|i| {
                    let x = signal.start() + i as f64 * out_spacing;
                    spline_eval(&model, x).map(|v| (x, v)).map_err(CliError::from)
                })
                .collect::<Result<_, _>>()?
        }
        InterpMethod::Linear => (0..out_len)
            .map(|i| {
                let x = signal.start() + i as f64 * out_spacing;
                linear_eval(&signal, x).map(|v| (x, v)).map_err(CliError::from)
            })
            .collect::<Result<_, _>>()?,
    };

    let mut out = format!(
        "# vandiff interp {source} h={} method={} factor={} n-points={} levels={} kernel={}\n",
        signal.spacing(),
        args.method.label(),
        args.factor,
        args.n_points,
        args.levels,
        args.kernel.label(),
    );
    out.push_str("x,value\n");
    for (x, v) in &refined {
        out.push_str(&format!("{x},{v}\n"));
    }
    io::emit(args.output.as_ref(), &out)?;
    Ok(())
}
