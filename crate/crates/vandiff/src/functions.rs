//! Built-in analytic test functions with exact derivative oracles.
//!
//! The benchmark experiments need ground truth: functions whose derivatives
//! of every order are known in closed form. Provided are e^(2x),
//! sin(x)·sin(10x), arbitrary polynomials, and two bivariate companions
//! (x·y and e^(x+y)) for the 2D operator.

use crate::diffop1d::FACTORIALS;
use crate::error::{Error, Result};

/// Analytic test function with exact value and derivative oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum BuiltinFunction {
    /// f(x) = e^(2x); f^(n)(x) = 2^n·e^(2x).
    Exp2x,
    /// f(x) = sin(x)·sin(10x); derivatives by the binomial product rule.
    SinSin10,
    /// f(x) = Σ c_j·x^j with the stored ascending coefficients.
    Poly(Vec<f64>),
    /// f(x,y) = x·y.
    Xy2d,
    /// f(x,y) = e^(x+y); every partial equals the function itself.
    ExpXy2d,
}

/// sin(x + k·π/2) without accumulating phase: the exact quarter-turn cycle
/// sin, cos, −sin, −cos.
fn sin_shifted(x: f64, quarter_turns: usize) -> f64 {
    match quarter_turns % 4 {
        0 => x.sin(),
        1 => x.cos(),
        2 => -x.sin(),
        _ => -x.cos(),
    }
}

/// C(n, k) from the exact factorial table (n ≤ 20).
fn binomial(n: usize, k: usize) -> f64 {
    (FACTORIALS[n] / (FACTORIALS[k] * FACTORIALS[n - k])) as f64
}

impl BuiltinFunction {
    /// Parses a CLI function name: `exp2x`, `sinsin10`, `poly:c0,c1,…`,
    /// `xy-2d`, `expxy-2d`. Returns None for unknown names or a malformed
    /// coefficient list.
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "exp2x" => Some(Self::Exp2x),
            "sinsin10" => Some(Self::SinSin10),
            "xy-2d" => Some(Self::Xy2d),
            "expxy-2d" => Some(Self::ExpXy2d),
            _ => {
                let coeffs = name.strip_prefix("poly:")?;
                let parsed: std::result::Result<Vec<f64>, _> =
                    coeffs.split(',').map(str::trim).map(str::parse).collect();
                match parsed {
                    Ok(c) if !c.is_empty() => Some(Self::Poly(c)),
                    _ => None,
                }
            }
        }
    }

    /// The names accepted by [`parse`](Self::parse), for usage messages.
    pub fn names() -> &'static str {
        "exp2x, sinsin10, poly:c0,c1,…, xy-2d, expxy-2d"
    }

    /// True for the bivariate functions.
    pub fn is_bivariate(&self) -> bool {
        matches!(self, Self::Xy2d | Self::ExpXy2d)
    }

    /// f(x) for univariate functions; errors on bivariate ones.
    pub fn value(&self, x: f64) -> Result<f64> {
        self.derivative(x, 0)
    }

    /// Exact n-th derivative f^(n)(x) for univariate functions.
    ///
    /// Errors on bivariate functions and, for sin(x)·sin(10x), on orders
    /// beyond the exact-factorial range (n > 20).
    pub fn derivative(&self, x: f64, n: usize) -> Result<f64> {
        match self {
            Self::Exp2x => Ok(2.0_f64.powi(n as i32) * (2.0 * x).exp()),
            Self::SinSin10 => {
                if n > 20 {
                    return Err(Error::InvalidParameter {
                        name: "n",
                        constraint: "n ≤ 20 (exact binomials)",
                        got: n as f64,
                    });
                }
                // d^n [sin(x)·sin(10x)] = Σ_k C(n,k)·sin^(k)(x)·(sin(10·))^(n−k)(x)
                let mut acc = 0.0;
                for k in 0..=n {
                    acc += binomial(n, k)
                        * sin_shifted(x, k)
                        * 10.0_f64.powi((n - k) as i32)
                        * sin_shifted(10.0 * x, n - k);
                }
                Ok(acc)
            }
            Self::Poly(coeffs) => {
                // Σ_{j≥n} c_j · j·(j−1)·…·(j−n+1) · x^(j−n), by Horner on the
                // differentiated coefficient list.
                let mut acc = 0.0;
                for (j, &c) in coeffs.iter().enumerate().rev() {
                    if j < n {
                        break;
                    }
                    let mut falling = 1.0;
                    for d in 0..n {
                        falling *= (j - d) as f64;
                    }
                    acc = acc * x + c * falling;
                }
                Ok(acc)
            }
            Self::Xy2d | Self::ExpXy2d => Err(Error::InvalidParameter {
                name: "fn",
                constraint: "a univariate function",
                got: f64::NAN,
            }),
        }
    }

    /// f(x, y) for bivariate functions; errors on univariate ones.
    pub fn value_xy(&self, x: f64, y: f64) -> Result<f64> {
        self.partial_xy(x, y, 0, 0)
    }

    /// Exact mixed partial ∂^(i+j) f / ∂x^i ∂y^j for bivariate functions.
    pub fn partial_xy(&self, x: f64, y: f64, i: usize, j: usize) -> Result<f64> {
        match self {
            Self::Xy2d => Ok(match (i, j) {
                (0, 0) => x * y,
                (1, 0) => y,
                (0, 1) => x,
                (1, 1) => 1.0,
                _ => 0.0,
            }),
            Self::ExpXy2d => Ok((x + y).exp()),
            _ => Err(Error::InvalidParameter {
                name: "fn",
                constraint: "a bivariate function",
                got: f64::NAN,
            }),
        }
    }
}
