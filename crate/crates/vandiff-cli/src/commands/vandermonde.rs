//! `vandermonde`: emit the stencil's power matrix, its explicit inverse, and
//! its determinant as long-form CSV (`quantity,row,col,value`; the
//! determinant row leaves row and col empty). Offsets come either from
//! `--offsets` directly or from `--h` with `--n-points` (the symmetric
//! equidistant stencil those would induce).

use vandiff::diffop1d::make_plan;
use vandiff::vandermonde::{determinant, inverse_explicit, Offsets, VandermondeMatrix};

use crate::io;
use crate::{CliError, VandermondeArgs};

pub fn run(args: &VandermondeArgs) -> Result<(), CliError> {
    let (offsets, header) = resolve_offsets(args)?;
    let matrix = VandermondeMatrix::new(offsets);
    // Exact duplicates pass the ascending check and surface here as a
    // numerical failure: the system is singular.
    let inverse = inverse_explicit(&matrix)?;
    let det = determinant(&matrix);

    let mut out = header;
    out.push_str("quantity,row,col,value\n");
    for (r, row) in matrix.rows().iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            out.push_str(&format!("matrix,{r},{c},{v}\n"));
        }
    }
    for (r, row) in inverse.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            out.push_str(&format!("inverse,{r},{c},{v}\n"));
        }
    }
    out.push_str(&format!("determinant,,,{det}\n"));
    io::emit(args.output.as_ref(), &out)?;
    Ok(())
}

fn resolve_offsets(args: &VandermondeArgs) -> Result<(Offsets, String), CliError> {
    match (&args.offsets, args.h, args.n_points) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(CliError::Usage(
            "--offsets conflicts with --h/--n-points".into(),
        )),
        (Some(list), None, None) => {
            let values = io::parse_float_list("--offsets", list)?;
            if values.windows(2).any(|w| w[0] > w[1]) {
                return Err(CliError::Usage(
                    "--offsets must be in ascending order".into(),
                ));
            }
            let header = format!("# vandiff vandermonde offsets={list}\n");
            Ok((Offsets::new(values)?, header))
        }
        (None, Some(h), Some(n_points)) => {
            if h <= 0.0 || !h.is_finite() {
                return Err(CliError::Usage(format!("--h must be positive, got {h}")));
            }
            if n_points < 2 {
                return Err(CliError::Usage(
                    "--n-points must be at least 2 (use --offsets for a single point)".into(),
                ));
            }
            let plan = make_plan(0.0, h, n_points)?;
            let header = format!("# vandiff vandermonde h={h} n-points={n_points}\n");
            Ok((plan.offsets().clone(), header))
        }
        (None, _, _) => Err(CliError::Usage(
            "provide --offsets, or --h together with --n-points".into(),
        )),
    }
}
