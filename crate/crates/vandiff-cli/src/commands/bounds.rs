//! `bounds`: tabulate closed-form error bounds against the window size at a
//! fixed spacing, for derivative orders and/or the function-representation
//! bound (order token `repr`). M is fixed to 1 so curves of different runs
//! compare directly.

use vandiff::bounds::{bound_curve, BoundTarget};

use crate::io;
use crate::{BoundsArgs, CliError};

pub fn run(args: &BoundsArgs) -> Result<(), CliError> {
    if args.h <= 0.0 || !args.h.is_finite() {
        return Err(CliError::Usage(format!(
            "--h must be positive, got {}",
            args.h
        )));
    }
    if args.max_points < 3 {
        return Err(CliError::Usage(format!(
            "--max-points must be at least 3, got {}",
            args.max_points
        )));
    }
    let targets = parse_targets(&args.orders)?;

    let mut out = format!(
        "# vandiff bounds h={} orders={} max-points={}\n",
        args.h, args.orders, args.max_points
    );
    out.push_str("n_points,order,bound\n");
    for &target in &targets {
        let counts = (3..=args.max_points).step_by(2);
        for (n_points, bound) in bound_curve(args.h, target, counts) {
            let label = match target {
                BoundTarget::Derivative(i) => i.to_string(),
                BoundTarget::Representation => "repr".to_string(),
            };
            out.push_str(&format!("{n_points},{label},{bound}\n"));
        }
    }
    io::emit(args.output.as_ref(), &out)?;
    Ok(())
}

/// Parses a comma list of derivative orders plus the `repr` token, deduped in
/// first-occurrence order.
fn parse_targets(spec: &str) -> Result<Vec<BoundTarget>, CliError> {
    let mut targets = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        let target = if token == "repr" {
            BoundTarget::Representation
        } else {
            let i: usize = token.parse().map_err(|_| {
                CliError::Usage(format!(
                    "--orders: expected a non-negative integer or 'repr', got '{token}'"
                ))
            })?;
            BoundTarget::Derivative(i)
        };
        if !targets.contains(&target) {
            targets.push(target);
        }
    }
    if targets.is_empty() {
        return Err(CliError::Usage("--orders must not be empty".into()));
    }
    Ok(targets)
}
