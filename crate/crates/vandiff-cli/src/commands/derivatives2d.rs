//! `derivatives2d`: estimate all mixed partials spanned by an N×N stencil in
//! one solve and emit rows `i,j,estimate,truth,abs_error`, where i is the
//! total order and j the x-order (the y-order is i−j). Rows follow the
//! basis order: total order ascending, x-order descending inside each order.
//! Input mode (`--input`, header x,y,value, row-major with x outermost)
//! leaves truth and abs_error empty.

use std::path::Path;

use vandiff::diffop2d::{build_basis, estimate_coefficients_2d, extract_partial, SampleGrid2D};

use crate::io;
use crate::{CliError, Derivatives2dArgs};

pub fn run(args: &Derivatives2dArgs) -> Result<(), CliError> {
    io::require_one_source(&args.function, &args.input)?;
    if let Some(side) = args.side {
        if !(1..=21).contains(&side) {
            return Err(CliError::Usage(format!(
                "--side must be between 1 and 21, got {side}"
            )));
        }
    }
    let (grid, samples, truth, header) = if let Some(name) = &args.function {
        builtin_grid(args, name)?
    } else {
        input_grid(args)?
    };

    let basis = build_basis(grid.side());
    let coeffs = estimate_coefficients_2d(&grid, &basis, &samples)?;

    let mut out = header;
    out.push_str("i,j,estimate,truth,abs_error\n");
    for (l, &(p, q)) in basis.terms().iter().enumerate() {
        let (i, j) = (p + q, p);
        let estimate = extract_partial(&coeffs, i, j)?;
        match truth.as_ref().map(|t| t[l]) {
            Some(t) => {
                let abs_error = (estimate - t).abs();
                out.push_str(&format!("{i},{j},{estimate},{t},{abs_error}\n"));
            }
            None => out.push_str(&format!("{i},{j},{estimate},,\n")),
        }
    }
    io::emit(args.output.as_ref(), &out)?;
    Ok(())
}

type GridData = (SampleGrid2D, Vec<f64>, Option<Vec<f64>>, String);

fn builtin_grid(args: &Derivatives2dArgs, name: &str) -> Result<GridData, CliError> {
    let f = io::parse_function(name)?;
    if !f.is_bivariate() {
        return Err(CliError::Usage(format!(
            "'{name}' is univariate; this command needs a bivariate function (xy-2d, expxy-2d)"
        )));
    }
    let h = args
        .h
        .ok_or_else(|| CliError::Usage("--h is required with --fn".into()))?;
    if h <= 0.0 || !h.is_finite() {
        return Err(CliError::Usage(format!("--h must be positive, got {h}")));
    }
    let side = args.side.unwrap_or(3);
    let center = (args.x0, args.y0);
    let grid = SampleGrid2D::new(center, h, side)?;
    let samples: Vec<f64> = grid
        .abscissae()
        .iter()
        .map(|&(x, y)| f.value_xy(x, y))
        .collect::<vandiff::Result<_>>()?;
    let truth: Vec<f64> = build_basis(side)
        .terms()
        .iter()
        .map(|&(p, q)| f.partial_xy(center.0, center.1, p, q))
        .collect::<vandiff::Result<_>>()?;
    let header = format!(
        "# vandiff derivatives2d fn={name} h={h} side={side} x0={} y0={}\n",
        center.0, center.1
    );
    Ok((grid, samples, Some(truth), header))
}

fn input_grid(args: &Derivatives2dArgs) -> Result<GridData, CliError> {
    if args.h.is_some() {
        return Err(CliError::Usage(
            "--h conflicts with --input (the spacing comes from the file)".into(),
        ));
    }
    let path = args.input.as_ref().expect("checked by require_one_source");
    let rows = io::read_grid_rows(path)?;
    let side = grid_side(path, rows.len())?;
    if let Some(given) = args.side {
        if given != side {
            return Err(CliError::Usage(format!(
                "--side {given} does not match the input ({} rows is a {side}×{side} grid)",
                rows.len()
            )));
        }
    }

    let (grid, h) = if side == 1 {
        // A single sample: the center is that point and no spacing exists.
        (SampleGrid2D::new((rows[0].x, rows[0].y), 1.0, 1)?, 1.0)
    } else {
        let xs: Vec<f64> = (0..side).map(|p| rows[p * side].x).collect();
        let ys: Vec<f64> = (0..side).map(|q| rows[q].y).collect();
        let hx = (xs[side - 1] - xs[0]) / (side as f64 - 1.0);
        let hy = (ys[side - 1] - ys[0]) / (side as f64 - 1.0);
        if hx <= 0.0 || hy <= 0.0 {
            return Err(CliError::Usage(format!(
                "{}: grid coordinates must ascend (x outermost, then y)",
                path.display()
            )));
        }
        if (hx - hy).abs() > 1e-6 * hx {
            return Err(CliError::Usage(format!(
                "{}: x-spacing {hx} and y-spacing {hy} differ; the stencil needs one spacing",
                path.display()
            )));
        }
        let center = ((xs[0] + xs[side - 1]) / 2.0, (ys[0] + ys[side - 1]) / 2.0);
        (SampleGrid2D::new(center, hx, side)?, hx)
    };
    verify_tensor_layout(path, &rows, &grid, h)?;

    let samples: Vec<f64> = rows.iter().map(|r| r.value).collect();
    let header = format!(
        "# vandiff derivatives2d input={} h={h} side={side} x0={} y0={}\n",
        path.display(),
        grid.center().0,
        grid.center().1
    );
    Ok((grid, samples, None, header))
}

/// Row count must be a perfect square; returns the side length.
fn grid_side(path: &Path, rows: usize) -> Result<usize, CliError> {
    let side = (rows as f64).sqrt().round() as usize;
    if side == 0 || side * side != rows {
        return Err(CliError::Usage(format!(
            "{}: {rows} data rows do not form a square grid",
            path.display()
        )));
    }
    Ok(side)
}

/// Every input coordinate must sit on the uniform grid, in row-major order
/// with x outermost.
fn verify_tensor_layout(
    path: &Path,
    rows: &[io::GridRow],
    grid: &SampleGrid2D,
    h: f64,
) -> Result<(), CliError> {
    let tol = 1e-6 * h;
    for (row, &(ex, ey)) in rows.iter().zip(&grid.abscissae()) {
        if (row.x - ex).abs() > tol || (row.y - ey).abs() > tol {
            return Err(CliError::Usage(format!(
                "{}: line {} is ({}, {}), expected grid point ({ex}, {ey}); \
                 rows must be row-major (x outermost, y innermost, uniform spacing)",
                path.display(),
                row.line,
                row.x,
                row.y
            )));
        }
    }
    Ok(())
}
