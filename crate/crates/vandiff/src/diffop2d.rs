//! Two-variable discrete differential operator on a ZigZag tensor basis.
//!
//! Samples of f on an N×N grid around a center determine the coefficients of
//! a truncated bivariate Taylor model: each grid point contributes one row
//! Φ(h_r, k_r) of monomials (x−x₀)^p (y−y₀)^q ordered by the ZigZag scan of
//! the exponent grid, and a dense LU solve of the resulting m×m system (m =
//! N²) recovers the coefficient vector g. Mixed partials follow from the
//! standard Taylor normalization ∂^{i}f/∂x^j∂y^{i−j} = g_l · j!·(i−j)!.
//!
//! Invertibility of the sample matrix is not established in closed form, so
//! every build screens the singular-value spectrum and reports a
//! [`Error::SingularSystem`] when the ratio σ_min/σ_max falls below 1e−12.

use nalgebra::{DMatrix, DVector};

use crate::diffop1d::FACTORIALS;
use crate::error::{Error, Result};

/// Exponent pairs (p, q) for monomials h^p k^q in ZigZag order.
///
/// The scan walks anti-diagonals of increasing total degree p+q over the
/// N×N exponent grid {0..N−1}², each diagonal traversed from the highest
/// x-exponent down: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), … For total
/// degrees i ≤ N−1 the term with y-exponent q sits at position
/// l = (i²+i)/2 + q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigZagBasis2D {
    terms: Vec<(usize, usize)>,
    grid_side: usize,
}

impl ZigZagBasis2D {
    /// The ordered exponent pairs.
    pub fn terms(&self) -> &[(usize, usize)] {
        &self.terms
    }

    /// Side length N of the exponent grid.
    pub fn grid_side(&self) -> usize {
        self.grid_side
    }

    /// Number of basis terms, m = N².
    pub fn m(&self) -> usize {
        self.terms.len()
    }

    /// Position of the exponent pair (p, q), if present.
    pub fn position(&self, p: usize, q: usize) -> Option<usize> {
        if p >= self.grid_side || q >= self.grid_side {
            return None;
        }
        self.terms.iter().position(|&t| t == (p, q))
    }
}

/// Builds the ZigZag-ordered tensor basis for an N×N exponent grid.
///
/// Panics when side = 0 (callers validate user input before reaching here).
pub fn build_basis(side: usize) -> ZigZagBasis2D {
    assert!(side >= 1, "basis side must be at least 1");
    let mut terms = Vec::with_capacity(side * side);
    for total in 0..=2 * (side - 1) {
        for p in (0..=total).rev() {
            let q = total - p;
            if p < side && q < side {
                terms.push((p, q));
            }
        }
    }
    ZigZagBasis2D {
        terms,
        grid_side: side,
    }
}

/// Equidistant N×N sample grid around a center point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid2D {
    center: (f64, f64),
    spacing: f64,
    side: usize,
    offsets: Vec<(f64, f64)>,
}

impl SampleGrid2D {
    /// Builds the grid with offsets ((p − (N−1)/2)·h, (q − (N−1)/2)·h) in
    /// row-major order (p outer, q inner); symmetric about (0,0) for odd N,
    /// half-integer multiples of h for even N.
    pub fn new(center: (f64, f64), spacing: f64, side: usize) -> Result<Self> {
        if spacing <= 0.0 || !spacing.is_finite() {
            return Err(Error::InvalidParameter {
                name: "spacing",
                constraint: "spacing > 0",
                got: spacing,
            });
        }
        if side == 0 {
            return Err(Error::InvalidParameter {
                name: "side",
                constraint: "side ≥ 1",
                got: 0.0,
            });
        }
        let mid = (side - 1) as f64 / 2.0;
        let mut offsets = Vec::with_capacity(side * side);
        for p in 0..side {
            for q in 0..side {
                offsets.push(((p as f64 - mid) * spacing, (q as f64 - mid) * spacing));
            }
        }
        Ok(Self {
            center,
            spacing,
            side,
            offsets,
        })
    }

    /// Center (x₀, y₀).
    pub fn center(&self) -> (f64, f64) {
        self.center
    }

    /// Grid spacing h.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Side length N.
    pub fn side(&self) -> usize {
        self.side
    }

    /// Offsets (h_r, k_r) in row-major order, m = N² of them.
    pub fn offsets(&self) -> &[(f64, f64)] {
        &self.offsets
    }

    /// Absolute sample coordinates (x₀+h_r, y₀+k_r) in row order.
    pub fn abscissae(&self) -> Vec<(f64, f64)> {
        self.offsets
            .iter()
            .map(|&(h, k)| (self.center.0 + h, self.center.1 + k))
            .collect()
    }
}

/// Taylor coefficients of a fitted 2D model, aligned to a ZigZag basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients2D {
    center: (f64, f64),
    g: Vec<f64>,
    basis: ZigZagBasis2D,
}

impl Coefficients2D {
    /// Expansion center (x₀, y₀).
    pub fn center(&self) -> (f64, f64) {
        self.center
    }

    /// Coefficient vector g, one entry per basis term.
    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// The basis the coefficients are aligned to.
    pub fn basis(&self) -> &ZigZagBasis2D {
        &self.basis
    }

    /// Evaluates the model Σ g_l (x−x₀)^p (y−y₀)^q.
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        self.g
            .iter()
            .zip(self.basis.terms())
            .map(|(&g, &(p, q))| g * power(dx, p) * power(dy, q))
            .sum()
    }
}

fn power(base: f64, exp: usize) -> f64 {
    let mut value = 1.0;
    for _ in 0..exp {
        value *= base;
    }
    value
}

/// Builds the m×m sample matrix with row r = Φ(h_r, k_r).
///
/// Errors with the singular-value spectrum when any σ < 1e−12·σ_max, and
/// with a length mismatch when grid and basis sides differ.
pub fn build_design_matrix(grid: &SampleGrid2D, basis: &ZigZagBasis2D) -> Result<DMatrix<f64>> {
    if grid.side() != basis.grid_side() {
        return Err(Error::LengthMismatch {
            expected: basis.m(),
            got: grid.offsets().len(),
        });
    }
    let m = basis.m();
    let matrix = DMatrix::from_fn(m, m, |r, l| {
        let (h, k) = grid.offsets()[r];
        let (p, q) = basis.terms()[l];
        power(h, p) * power(k, q)
    });
    let singular_values: Vec<f64> = matrix
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    let max_sv = singular_values.iter().cloned().fold(0.0_f64, f64::max);
    if singular_values.iter().any(|&s| s < 1e-12 * max_sv) {
        return Err(Error::SingularSystem { singular_values });
    }
    Ok(matrix)
}

/// Recovers the coefficient vector g = A⁻¹·samples by LU with partial
/// pivoting, where samples[r] = f(x₀+h_r, y₀+k_r) in the grid's row order.
pub fn estimate_coefficients_2d(
    grid: &SampleGrid2D,
    basis: &ZigZagBasis2D,
    samples: &[f64],
) -> Result<Coefficients2D> {
    let matrix = build_design_matrix(grid, basis)?;
    if samples.len() != basis.m() {
        return Err(Error::LengthMismatch {
            expected: basis.m(),
            got: samples.len(),
        });
    }
    let rhs = DVector::from_column_slice(samples);
    let solution = matrix.clone().lu().solve(&rhs).ok_or_else(|| {
        // Screening should have caught this; report the spectrum anyway.
        Error::SingularSystem {
            singular_values: matrix.svd(false, false).singular_values.iter().copied().collect(),
        }
    })?;
    Ok(Coefficients2D {
        center: grid.center(),
        g: solution.iter().copied().collect(),
        basis: basis.clone(),
    })
}

/// Extracts the mixed partial ∂^i f / ∂x^j ∂y^{i−j} at the center.
///
/// The model term for exponents (j, i−j) carries the Taylor weight
/// 1/(j!·(i−j)!), so the physical partial is g_l · j!·(i−j)!. Errors when
/// the exponent pair is outside the basis (including j > i).
pub fn extract_partial(coeffs: &Coefficients2D, i: usize, j: usize) -> Result<f64> {
    if j > i {
        return Err(Error::NotInBasis {
            total_order: i,
            x_order: j,
        });
    }
    let q = i - j;
    let l = coeffs
        .basis()
        .position(j, q)
        .ok_or(Error::NotInBasis {
            total_order: i,
            x_order: j,
        })?;
    if j >= FACTORIALS.len() || q >= FACTORIALS.len() {
        return Err(Error::InvalidParameter {
            name: "order",
            constraint: "per-variable order ≤ 20",
            got: i as f64,
        });
    }
    Ok(coeffs.g()[l] * FACTORIALS[j] as f64 * FACTORIALS[q] as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn fit(
        center: (f64, f64),
        h: f64,
        side: usize,
        f: impl Fn(f64, f64) -> f64,
    ) -> Coefficients2D {
        let grid = SampleGrid2D::new(center, h, side).unwrap();
        let basis = build_basis(side);
        let samples: Vec<f64> = grid.abscissae().iter().map(|&(x, y)| f(x, y)).collect();
        estimate_coefficients_2d(&grid, &basis, &samples).unwrap()
    }

    // ---- basis ordering ----

    #[test]
    fn zigzag_order_for_side_three_is_pinned() {
        let basis = build_basis(3);
        assert_eq!(
            basis.terms(),
            &[
                (0, 0),
                (1, 0),
                (0, 1),
                (2, 0),
                (1, 1),
                (0, 2),
                (2, 1),
                (1, 2),
                (2, 2)
            ]
        );
    }

    #[test]
    fn zigzag_order_for_tiny_sides() {
        assert_eq!(build_basis(1).terms(), &[(0, 0)]);
        assert_eq!(build_basis(2).terms(), &[(0, 0), (1, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn basis_terms_are_distinct_and_count_is_side_squared() {
        for side in 1..=6 {
            let basis = build_basis(side);
            assert_eq!(basis.m(), side * side);
            let mut seen = basis.terms().to_vec();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), side * side, "side {side}");
        }
    }

    #[test]
    fn triangle_terms_sit_at_their_closed_form_positions() {
        // Inside the total-degree triangle (i ≤ N−1) the term with total
        // degree i and y-exponent q lives at position (i²+i)/2 + q.
        let side = 5;
        let basis = build_basis(side);
        for i in 0..side {
            for q in 0..=i {
                let l = (i * i + i) / 2 + q;
                assert_eq!(basis.terms()[l], (i - q, q), "i={i} q={q}");
            }
        }
    }

    // ---- grids ----

    #[test]
    fn odd_grid_offsets_are_symmetric_about_the_origin() {
        let grid = SampleGrid2D::new((0.5, -1.0), 0.25, 3).unwrap();
        assert_eq!(grid.offsets().len(), 9);
        assert_eq!(grid.offsets()[0], (-0.25, -0.25));
        assert_eq!(grid.offsets()[4], (0.0, 0.0));
        for &(h, k) in grid.offsets() {
            assert!(grid.offsets().contains(&(-h, -k)), "missing mirror of ({h},{k})");
        }
    }

    #[test]
    fn even_grid_uses_half_integer_offsets() {
        let grid = SampleGrid2D::new((0.0, 0.0), 1.0, 2).unwrap();
        assert_eq!(
            grid.offsets(),
            &[(-0.5, -0.5), (-0.5, 0.5), (0.5, -0.5), (0.5, 0.5)]
        );
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(matches!(
            SampleGrid2D::new((0.0, 0.0), 0.0, 3),
            Err(Error::InvalidParameter { name: "spacing", .. })
        ));
        assert!(SampleGrid2D::new((0.0, 0.0), 0.5, 0).is_err());
    }

    // ---- design matrix ----

    #[test]
    fn side_one_design_matrix_is_the_identity_scalar() {
        let grid = SampleGrid2D::new((2.0, 3.0), 0.5, 1).unwrap();
        let matrix = build_design_matrix(&grid, &build_basis(1)).unwrap();
        assert_eq!(matrix.nrows(), 1);
        assert_eq!(matrix[(0, 0)], 1.0);
    }

    #[test]
    fn side_three_matrix_has_nine_significant_singular_values() {
        let grid = SampleGrid2D::new((0.0, 0.0), 1.0, 3).unwrap();
        let matrix = build_design_matrix(&grid, &build_basis(3)).unwrap();
        let svs = matrix.svd(false, false).singular_values;
        let max_sv = svs.iter().cloned().fold(0.0_f64, f64::max);
        let significant = svs.iter().filter(|&&s| s >= 1e-12 * max_sv).count();
        assert_eq!(significant, 9);
    }

    #[test]
    fn inverse_times_matrix_is_identity_for_side_three() {
        let grid = SampleGrid2D::new((0.0, 0.0), 0.5, 3).unwrap();
        let matrix = build_design_matrix(&grid, &build_basis(3)).unwrap();
        let inverse = matrix.clone().try_inverse().expect("invertible");
        let product = &inverse * &matrix;
        for r in 0..9 {
            for c in 0..9 {
                let expected = if r == c { 1.0 } else { 0.0 };
                assert!(
                    close(product[(r, c)], expected, 1e-8),
                    "({r},{c}) = {}",
                    product[(r, c)]
                );
            }
        }
    }

    #[test]
    fn mismatched_grid_and_basis_sides_error() {
        let grid = SampleGrid2D::new((0.0, 0.0), 0.5, 3).unwrap();
        assert_eq!(
            build_design_matrix(&grid, &build_basis(2)),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 9
            })
        );
    }

    #[test]
    fn design_matrix_columns_scale_with_spacing_powers() {
        // Doubling h multiplies the column for exponents (p,q) by 2^{p+q}.
        let basis = build_basis(3);
        let fine = build_design_matrix(
            &SampleGrid2D::new((0.0, 0.0), 0.25, 3).unwrap(),
            &basis,
        )
        .unwrap();
        let coarse = build_design_matrix(
            &SampleGrid2D::new((0.0, 0.0), 0.5, 3).unwrap(),
            &basis,
        )
        .unwrap();
        for (l, &(p, q)) in basis.terms().iter().enumerate() {
            let scale = power(2.0, p + q);
            for r in 0..9 {
                assert!(
                    close(coarse[(r, l)], scale * fine[(r, l)], 1e-14),
                    "row {r} col {l}"
                );
            }
        }
    }

    // ---- coefficient recovery ----

    #[test]
    fn constant_function_recovers_constant_then_zeros() {
        let coeffs = fit((1.0, -2.0), 0.5, 3, |_, _| 7.5);
        assert!(close(coeffs.g()[0], 7.5, 1e-12));
        for &g in &coeffs.g()[1..] {
            assert!(g.abs() <= 1e-12, "spurious coefficient {g:e}");
        }
    }

    #[test]
    fn product_function_loads_exactly_the_cross_term() {
        let coeffs = fit((0.0, 0.0), 1.0, 3, |x, y| x * y);
        for (l, &(p, q)) in coeffs.basis().terms().iter().enumerate() {
            let expected = if (p, q) == (1, 1) { 1.0 } else { 0.0 };
            assert!(
                close(coeffs.g()[l], expected, 1e-12),
                "term ({p},{q}): {}",
                coeffs.g()[l]
            );
        }
    }

    #[test]
    fn sum_of_squares_loads_both_pure_quadratics() {
        let coeffs = fit((0.0, 0.0), 0.5, 3, |x, y| x * x + y * y);
        let l_xx = coeffs.basis().position(2, 0).unwrap();
        let l_yy = coeffs.basis().position(0, 2).unwrap();
        assert!(close(coeffs.g()[l_xx], 1.0, 1e-12));
        assert!(close(coeffs.g()[l_yy], 1.0, 1e-12));
    }

    #[test]
    fn sample_length_mismatch_errors() {
        let grid = SampleGrid2D::new((0.0, 0.0), 0.5, 2).unwrap();
        let basis = build_basis(2);
        assert_eq!(
            estimate_coefficients_2d(&grid, &basis, &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 3
            })
        );
    }

    // ---- partial extraction ----

    #[test]
    fn cross_partial_of_product_is_one() {
        let coeffs = fit((0.0, 0.0), 1.0, 3, |x, y| x * y);
        assert!(close(extract_partial(&coeffs, 2, 1).unwrap(), 1.0, 1e-12));
    }

    #[test]
    fn second_x_partial_of_x_squared_is_two() {
        let coeffs = fit((0.3, 0.7), 0.5, 3, |x, _| x * x);
        assert!(close(extract_partial(&coeffs, 2, 2).unwrap(), 2.0, 1e-10));
    }

    #[test]
    fn constant_function_has_zero_higher_partials() {
        let coeffs = fit((0.0, 0.0), 0.5, 3, |_, _| 4.0);
        for i in 1..=2 {
            for j in 0..=i {
                let value = extract_partial(&coeffs, i, j).unwrap();
                assert!(value.abs() <= 1e-11, "order ({i},{j}): {value:e}");
            }
        }
    }

    #[test]
    fn absent_terms_report_not_in_basis() {
        let coeffs = fit((0.0, 0.0), 0.5, 2, |x, y| x + y);
        // (0,2) lies outside the 2×2 exponent grid.
        assert_eq!(
            extract_partial(&coeffs, 2, 0),
            Err(Error::NotInBasis {
                total_order: 2,
                x_order: 0
            })
        );
        // x-order exceeding the total order is never in any basis.
        assert!(extract_partial(&coeffs, 1, 2).is_err());
    }

    // ---- exactness and scale invariance ----

    #[test]
    fn basis_polynomials_are_reconstructed_exactly() {
        // Any polynomial built from basis monomials is recovered with
        // coefficient error ≤ 1e−7 for side ≤ 4 and h in [0.25, 1].
        for side in 1..=4usize {
            let basis = build_basis(side);
            // Deterministic nontrivial coefficients.
            let truth: Vec<f64> = (0..basis.m())
                .map(|l| ((l * 7 + 3) % 11) as f64 - 5.0)
                .collect();
            for &h in &[0.25, 0.5, 1.0] {
                let center = (0.4, -0.3);
                let grid = SampleGrid2D::new(center, h, side).unwrap();
                let samples: Vec<f64> = grid
                    .abscissae()
                    .iter()
                    .map(|&(x, y)| {
                        let (dx, dy) = (x - center.0, y - center.1);
                        basis
                            .terms()
                            .iter()
                            .zip(&truth)
                            .map(|(&(p, q), &c)| c * power(dx, p) * power(dy, q))
                            .sum()
                    })
                    .collect();
                let coeffs = estimate_coefficients_2d(&grid, &basis, &samples).unwrap();
                for (l, (&got, &want)) in coeffs.g().iter().zip(&truth).enumerate() {
                    assert!(
                        close(got, want, 1e-7),
                        "side {side} h {h} term {l}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn recovered_partials_are_spacing_invariant_for_basis_polynomials() {
        let f = |x: f64, y: f64| 2.0 + x - 3.0 * y + 0.5 * x * y + x * x;
        for &h in &[0.25, 0.5] {
            let coeffs = fit((0.0, 0.0), h, 3, f);
            assert!(close(extract_partial(&coeffs, 0, 0).unwrap(), 2.0, 1e-7));
            assert!(close(extract_partial(&coeffs, 1, 1).unwrap(), 1.0, 1e-7));
            assert!(close(extract_partial(&coeffs, 1, 0).unwrap(), -3.0, 1e-7));
            assert!(close(extract_partial(&coeffs, 2, 1).unwrap(), 0.5, 1e-7));
            assert!(close(extract_partial(&coeffs, 2, 2).unwrap(), 2.0, 1e-7));
        }
    }

    #[test]
    fn exponential_coefficient_error_shrinks_with_spacing_within_bound() {
        // f = e^{x+y}: every Taylor coefficient at (x0,y0) is
        // e^{x0+y0}/(p!·q!). The fit error must decrease with h, and the
        // truncation remainder at the farthest sample must respect
        // 2^{(N+1)/2}·M·ρ^{N+1}/(N+1)! with N = 2 and analytic M.
        let center = (0.1_f64, 0.2_f64);
        let scale = (center.0 + center.1).exp();
        let mut previous_error = f64::INFINITY;
        for &h in &[0.2, 0.1, 0.05] {
            let coeffs = fit(center, h, 3, |x, y| (x + y).exp());
            let mut max_error = 0.0_f64;
            for (l, &(p, q)) in coeffs.basis().terms().iter().enumerate() {
                let truth = scale / (FACTORIALS[p] as f64 * FACTORIALS[q] as f64);
                max_error = max_error.max((coeffs.g()[l] - truth).abs());
            }
            assert!(
                max_error < previous_error,
                "error did not shrink at h={h}: {max_error} vs {previous_error}"
            );
            previous_error = max_error;

            // Remainder of the total-degree-2 truncation at offset (h, h).
            let rho = h * 2.0_f64.sqrt();
            let truncated: f64 = (0..=2)
                .map(|i| power(2.0 * h, i) / FACTORIALS[i] as f64)
                .sum::<f64>()
                * scale;
            let remainder = (center.0 + h + center.1 + h).exp() - truncated;
            let m_bound = (center.0 + center.1 + rho * 2.0_f64.sqrt()).exp();
            let bound = power(2.0_f64.sqrt(), 3) * m_bound * power(rho, 3) / 6.0;
            assert!(
                remainder.abs() <= bound,
                "h={h}: remainder {remainder:e} exceeds bound {bound:e}"
            );
            assert!(
                remainder.abs() >= 0.3 * bound,
                "h={h}: bound is vacuous (remainder {remainder:e}, bound {bound:e})"
            );
        }
    }
}
