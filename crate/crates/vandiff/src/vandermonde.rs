//! Vandermonde matrices over sample offsets: closed-form inverse and determinant.
//!
//! The system matrix of a truncated Taylor fit on offsets o_0..o_N is the
//! Vandermonde matrix W with rows W[j] = [1, o_j, o_j², …, o_j^N]. Its inverse
//! has the closed form
//!
//! ```text
//! W⁻¹[i][j] = (−1)^(N−i) · e_(N−i)(o_0,…,ô_j,…,o_N) / ∏_{m≠j} (o_j − o_m)
//! ```
//!
//! where e_k is the k-th elementary symmetric polynomial and ô_j marks the
//! omitted offset. Computing the inverse this way costs O(n³) like a generic
//! solve but is branch-free, pivot-free, and exact on exact inputs (every
//! entry is one division), which is what makes the structural zeros of
//! symmetric stencils *exact* zeros rather than rounding residue.
//!
//! The determinant is the pairwise-difference product ∏_{r<s} (o_s − o_r).

use crate::error::{Error, Result};

/// Sample offsets for a Vandermonde system, with their summary geometry.
///
/// Offsets must be supplied in ascending order (duplicates are allowed here —
/// the determinant of such a system is 0 — but [`inverse_explicit`] rejects
/// them). `min_gap` and `max_abs` are recorded at construction so bound
/// evaluation can reuse them without rescanning.
#[derive(Debug, Clone, PartialEq)]
pub struct Offsets {
    values: Vec<f64>,
    min_gap: f64,
    max_abs: f64,
}

impl Offsets {
    /// Wraps an ascending list of offsets.
    ///
    /// Errors if the list is empty, contains non-finite values, or is not
    /// non-decreasing. Equal adjacent values are accepted (min_gap = 0).
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter {
                name: "values",
                constraint: "at least one offset",
                got: 0.0,
            });
        }
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "values",
                    constraint: "finite offsets",
                    got: v,
                });
            }
        }
        let mut min_gap = f64::INFINITY;
        for w in values.windows(2) {
            let gap = w[1] - w[0];
            if gap < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "values",
                    constraint: "ascending order",
                    got: gap,
                });
            }
            min_gap = min_gap.min(gap);
        }
        let max_abs = values.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs()));
        Ok(Self {
            values,
            min_gap,
            max_abs,
        })
    }

    /// The offset values, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Smallest gap between adjacent offsets (infinity for a single offset).
    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    /// Largest absolute offset.
    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    /// Number of offsets (system size n = N+1).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when there are no offsets (never constructible via `new`).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Dense Vandermonde matrix over a set of offsets.
///
/// Row j holds the power ladder of offset j: `rows[j][k] = offsets[j]^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeMatrix {
    rows: Vec<Vec<f64>>,
    offsets: Offsets,
}

impl VandermondeMatrix {
    /// Builds the matrix by running products (no `powf`), so each entry is
    /// the correctly ordered repeated product o_j·o_j·….
    pub fn new(offsets: Offsets) -> Self {
        let n = offsets.len();
        let rows = offsets
            .values()
            .iter()
            .map(|&o| {
                let mut row = Vec::with_capacity(n);
                let mut p = 1.0;
                for _ in 0..n {
                    row.push(p);
                    p *= o;
                }
                row
            })
            .collect();
        Self { rows, offsets }
    }

    /// Matrix entries; `rows()[j][k] = offsets[j]^k`.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// The offsets this matrix was built from.
    pub fn offsets(&self) -> &Offsets {
        &self.offsets
    }

    /// System size n (the matrix is n×n).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// True when the system is empty (never constructible via `new`).
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// k-th elementary symmetric polynomial e_k of the given values.
///
/// Uses the one-pass recurrence e_k ← e_k + y·e_{k−1} (k descending), O(len·m)
/// time, no binomial blowup. e_0 = 1 for any input, including the empty list.
/// Errors when m exceeds the number of values.
pub fn elementary_symmetric(values: &[f64], m: usize) -> Result<f64> {
    if m > values.len() {
        return Err(Error::InvalidParameter {
            name: "m",
            constraint: "m ≤ len(values)",
            got: m as f64,
        });
    }
    let e = elementary_symmetric_all(values, m);
    Ok(e[m])
}

/// All of e_0..=e_m in one DP pass. e[k] is e_k of `values`.
fn elementary_symmetric_all(values: &[f64], m: usize) -> Vec<f64> {
    let mut e = vec![0.0; m + 1];
    e[0] = 1.0;
    for &y in values {
        let top = m.min(values.len());
        for k in (1..=top).rev() {
            e[k] += y * e[k - 1];
        }
    }
    e
}

/// Scans for an exactly colliding pair of offsets.
fn find_duplicate(offsets: &Offsets) -> Option<(usize, usize, f64)> {
    let v = offsets.values();
    // Offsets are ascending, so any collision is adjacent.
    for j in 1..v.len() {
        if v[j] == v[j - 1] {
            return Some((j - 1, j, v[j]));
        }
    }
    None
}

/// Closed-form inverse of a Vandermonde matrix.
///
/// Entry (i, j) is `(−1)^(N−i)·e_(N−i)(offsets without o_j) / ∏_{m≠j}(o_j−o_m)`.
/// Within one column the elementary symmetric values are produced by a single
/// DP pass over the n−1 retained offsets. Errors on duplicate offsets, naming
/// the colliding pair.
pub fn inverse_explicit(w: &VandermondeMatrix) -> Result<Vec<Vec<f64>>> {
    let offs = w.offsets().values();
    let n = offs.len();
    if let Some((first, second, value)) = find_duplicate(w.offsets()) {
        return Err(Error::DuplicateOffsets {
            first,
            second,
            value,
        });
    }
    let big_n = n - 1;
    let mut inv = vec![vec![0.0; n]; n];
    let mut excluded = Vec::with_capacity(big_n);
    for j in 0..n {
        excluded.clear();
        excluded.extend(offs.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, &o)| o));
        let e = elementary_symmetric_all(&excluded, big_n);
        let mut denom = 1.0;
        for &o in &excluded {
            denom *= offs[j] - o;
        }
        for (i, row) in inv.iter_mut().enumerate() {
            let k = big_n - i;
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            row[j] = sign * e[k] / denom;
        }
    }
    Ok(inv)
}

/// Determinant of a Vandermonde matrix: ∏_{r<s} (o_s − o_r).
///
/// Never fails; duplicate offsets give exactly 0.0.
pub fn determinant(w: &VandermondeMatrix) -> f64 {
    let offs = w.offsets().values();
    let mut det = 1.0;
    for s in 1..offs.len() {
        for r in 0..s {
            det *= offs[s] - offs[r];
        }
    }
    det
}
