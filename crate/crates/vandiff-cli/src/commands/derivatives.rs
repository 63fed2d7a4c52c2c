//! `derivatives`: estimate derivatives of orders ≤ N at a center point and
//! compare against the strictly-forward finite-difference baseline.
//!
//! CSV schema: `method,order,h,estimate,truth,abs_error`, ordered by method
//! (ddp first), then order ascending, then spacing in the order given.

use vandiff::baselines::forward_difference;
use vandiff::diffop1d::{estimate_derivatives, make_plan};
use vandiff::functions::BuiltinFunction;
use vandiff::localrep::fit_local;

use super::factorial;
use crate::io;
use crate::{CliError, DerivativesArgs};

const METHODS: [&str; 2] = ["ddp", "forward-difference"];

struct Cell {
    method: &'static str,
    order: usize,
    h: f64,
    estimate: f64,
    truth: Option<f64>,
}

pub fn run(args: &DerivativesArgs) -> Result<(), CliError> {
    io::require_one_source(&args.function, &args.input)?;
    if !(2..=21).contains(&args.n_points) {
        return Err(CliError::Usage(format!(
            "--n-points must be in 2..=21 (derivative recovery is exact up to order 20), got {}",
            args.n_points
        )));
    }
    let orders = match &args.orders {
        Some(spec) => io::parse_orders(spec)?,
        None => (0..args.n_points).collect(),
    };
    if let Some(&too_big) = orders.iter().find(|&&o| o >= args.n_points) {
        return Err(CliError::Usage(format!(
            "--orders: order {too_big} needs at least {} sample points, got {}",
            too_big + 1,
            args.n_points
        )));
    }
    if args.passthrough_zeroth && args.n_points.is_multiple_of(2) {
        return Err(CliError::Usage(
            "--passthrough-zeroth needs an odd window (no center sample otherwise)".into(),
        ));
    }

    let (cells, header) = if let Some(name) = &args.function {
        builtin_cells(args, name, &orders)?
    } else {
        input_cells(args, &orders)?
    };

    let mut out = String::new();
    out.push_str(&header);
    out.push_str("method,order,h,estimate,truth,abs_error\n");
    for cell in &cells {
        match cell.truth {
            Some(truth) => out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                cell.method,
                cell.order,
                cell.h,
                cell.estimate,
                truth,
                (cell.estimate - truth).abs()
            )),
            None => out.push_str(&format!(
                "{},{},{},{},,\n",
                cell.method, cell.order, cell.h, cell.estimate
            )),
        }
    }
    io::emit(args.output.as_ref(), &out)?;

    if args.assert {
        check_ordering(&cells)?;
    }
    Ok(())
}

fn builtin_cells(
    args: &DerivativesArgs,
    name: &str,
    orders: &[usize],
) -> Result<(Vec<Cell>, String), CliError> {
    let f = io::parse_univariate(name)?;
    let spec = args
        .h
        .as_ref()
        .ok_or_else(|| CliError::Usage("--h is required with --fn".into()))?;
    let spacings = io::parse_spacings(spec)?;
    let x0 = args.x0.unwrap_or(0.0);

    let mut cells = Vec::new();
    for method in METHODS {
        for &order in orders {
            for &h in &spacings {
                let estimate = match method {
                    "ddp" => ddp_estimate(&f, x0, h, args.n_points, order, args.passthrough_zeroth)?,
                    _ => fd_estimate(&f, x0, h, order)?,
                };
                let truth = f.derivative(x0, order)?;
                cells.push(Cell {
                    method,
                    order,
                    h,
                    estimate,
                    truth: Some(truth),
                });
            }
        }
    }
    let header = format!(
        "# vandiff derivatives fn={} x0={} h={} n-points={} orders={} passthrough-zeroth={} assert={}\n",
        name,
        x0,
        io::join_floats(&spacings),
        args.n_points,
        join_orders(orders),
        args.passthrough_zeroth,
        args.assert,
    );
    Ok((cells, header))
}

fn ddp_estimate(
    f: &BuiltinFunction,
    x0: f64,
    h: f64,
    n_points: usize,
    order: usize,
    passthrough: bool,
) -> Result<f64, CliError> {
    let plan = make_plan(x0, h, n_points)?;
    let samples: Vec<f64> = plan
        .abscissae()
        .iter()
        .map(|&x| f.value(x))
        .collect::<vandiff::Result<_>>()?;
    if order == 0 && passthrough {
        return Ok(samples[(n_points - 1) / 2]);
    }
    let est = estimate_derivatives(&plan, &samples)?;
    Ok(est.values[order])
}

fn fd_estimate(f: &BuiltinFunction, x0: f64, h: f64, order: usize) -> Result<f64, CliError> {
    let samples: Vec<f64> = (0..=order)
        .map(|k| f.value(x0 + k as f64 * h))
        .collect::<vandiff::Result<_>>()?;
    Ok(forward_difference(&samples, h, order)?)
}

fn input_cells(args: &DerivativesArgs, orders: &[usize]) -> Result<(Vec<Cell>, String), CliError> {
    if args.x0.is_some() {
        return Err(CliError::Usage(
            "--x0 conflicts with --input (the center is the middle sample)".into(),
        ));
    }
    if args.assert {
        return Err(CliError::Usage(
            "--assert needs a built-in oracle; provide --fn".into(),
        ));
    }
    let path = args.input.as_ref().expect("checked by require_one_source");
    let signal = io::read_signal(path)?;
    let h = signal.spacing();
    if let Some(spec) = &args.h {
        let given = io::parse_spacings(spec)?;
        if given.len() != 1 || (given[0] - h).abs() > 1e-9 * h {
            return Err(CliError::Usage(format!(
                "--h must match the input spacing {h} (or be omitted)"
            )));
        }
    }
    if signal.len() < args.n_points {
        return Err(CliError::Usage(format!(
            "input has {} samples but --n-points is {}",
            signal.len(),
            args.n_points
        )));
    }
    let center = (signal.len() - 1) / 2;
    let model = fit_local(&signal, center, args.n_points)?;

    let mut cells = Vec::new();
    for method in METHODS {
        for &order in orders {
            let estimate = match method {
                "ddp" => {
                    if order == 0 && args.passthrough_zeroth {
                        signal.values()[center]
                    } else {
                        model.coeffs().coeffs()[order] * factorial(order)
                    }
                }
                _ => {
                    if center + order >= signal.len() {
                        return Err(CliError::Usage(format!(
                            "input too short for a forward difference of order {order} \
                             from the middle sample"
                        )));
                    }
                    let window = &signal.values()[center..=center + order];
                    forward_difference(window, h, order)?
                }
            };
            cells.push(Cell {
                method,
                order,
                h,
                estimate,
                truth: None,
            });
        }
    }
    let header = format!(
        "# vandiff derivatives input={} h={} n-points={} orders={} passthrough-zeroth={}\n",
        path.display(),
        h,
        args.n_points,
        join_orders(orders),
        args.passthrough_zeroth,
    );
    Ok((cells, header))
}

/// Verifies ddp error beats the forward difference for every order ≥ 1 cell.
fn check_ordering(cells: &[Cell]) -> Result<(), CliError> {
    for ddp in cells.iter().filter(|c| c.method == "ddp" && c.order >= 1) {
        let rival = cells
            .iter()
            .find(|c| c.method == "forward-difference" && c.order == ddp.order && c.h == ddp.h)
            .expect("both methods emitted per cell");
        let (e_ddp, e_fd) = (
            (ddp.estimate - ddp.truth.expect("assert implies oracle")).abs(),
            (rival.estimate - rival.truth.expect("assert implies oracle")).abs(),
        );
        if e_ddp >= e_fd {
            return Err(CliError::Numerical(format!(
                "assert failed: ddp error {e_ddp:e} is not below forward-difference error \
                 {e_fd:e} at order {}, h {}",
                ddp.order, ddp.h
            )));
        }
    }
    Ok(())
}

fn join_orders(orders: &[usize]) -> String {
    orders
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
