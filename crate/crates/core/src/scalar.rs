//! Scalar backends for the solver.
//!
//! Every decision procedure in this crate runs either over exact rationals
//! (`num_rational::BigRational`) or over `f64` with relative tolerances. The
//! backend is chosen once per problem instance and kept uniform; `Scalar` is
//! the small abstraction everything else is generic over.
//!
//! The trait carries a few mode-specific engines (root isolation, rank/kernel,
//! positivity) because the correct algorithm differs by backend: Sturm
//! sequences and fraction-free elimination in exact mode, companion-matrix
//! eigenvalues and SVD thresholding in float mode.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default relative tolerance for float-mode rank and positivity decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for merging nearby candidate points in float mode.
pub const POINT_MERGE_TOL: f64 = 1e-7;

/// Interval width below which an isolated real root is treated as irrational
/// and refined numerically instead of recognized as a rational.
pub const RATIONAL_RECOGNITION_WIDTH: f64 = 1e-12;

/// One real root of a univariate polynomial. `exact` is true when the value
/// satisfies the polynomial identically (always false in float mode).
#[derive(Debug, Clone)]
pub struct RootApprox<S> {
    pub value: S,
    pub exact: bool,
}

/// Distinct real roots of a polynomial, plus whether the polynomial was
/// square-free over the reals (no repeated real root detected).
#[derive(Debug, Clone)]
pub struct RealRoots<S> {
    pub roots: Vec<RootApprox<S>>,
    pub squarefree: bool,
}

#[derive(Debug, Error)]
pub enum ParseScalarError {
    #[error("empty numeric literal")]
    Empty,
    #[error("invalid numeric literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Field the solver computes over. Implemented for `BigRational` (exact mode)
/// and `f64` (float mode).
pub trait Scalar:
    Sized
    + Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_big_rational(r: &BigRational) -> Self;
    /// Exact rational value of this scalar, when one exists (`f64` values are
    /// dyadic rationals unless non-finite).
    fn to_big_rational(&self) -> Option<BigRational>;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn recip(&self) -> Self;

    /// Zero test under the backend's policy: exact equality in exact mode,
    /// `|x| <= tol * max(scale, 1)` in float mode.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool;

    /// Square root when representable in the backend: exact mode succeeds
    /// only on perfect rational squares, float mode on any nonnegative value.
    fn sqrt_if_available(&self) -> Option<Self>;

    /// Distinct real roots of `c[0] + c[1] x + ... + c[d] x^d`.
    fn real_roots(coeffs: &[Self], tol: f64) -> RealRoots<Self>;

    /// Float-mode replacement for elimination-based rank/kernel computation.
    /// Returns `(rank, pivot columns, kernel basis)` or `None` to use the
    /// generic exact path. `rows` need not be square or symmetric.
    fn rank_kernel_override(rows: &[Vec<Self>], tol: f64) -> Option<(usize, Vec<usize>, Vec<Vec<Self>>)> {
        let _ = (rows, tol);
        None
    }

    /// Float-mode replacement for the exact positive-semidefiniteness test.
    fn psd_override(rows: &[Vec<Self>], tol: f64) -> Option<bool> {
        let _ = (rows, tol);
        None
    }

    /// Float-mode replacement for the negative-direction search. `None`
    /// defers to the exact path; `Some(result)` is authoritative, where
    /// `result` is a direction `v` with `v' A v < 0` or `None` for psd.
    fn neg_direction_override(rows: &[Vec<Self>], tol: f64) -> Option<Option<Vec<Self>>> {
        let _ = (rows, tol);
        None
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_big_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_big_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn recip(&self) -> Self {
        BigRational::recip(self)
    }

    fn is_negligible(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }

    fn sqrt_if_available(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = num_integer::Roots::sqrt(self.numer());
        let den = num_integer::Roots::sqrt(self.denom());
        let cand = BigRational::new(num, den);
        if &cand * &cand == *self {
            Some(cand)
        } else {
            None
        }
    }

    fn real_roots(coeffs: &[Self], tol: f64) -> RealRoots<Self> {
        crate::poly::uni::real_roots_exact(coeffs, tol)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_big_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_big_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn recip(&self) -> Self {
        1.0 / self
    }

    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        f64::abs(*self) <= tol * scale.max(1.0)
    }

    fn sqrt_if_available(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }

    fn real_roots(coeffs: &[Self], tol: f64) -> RealRoots<Self> {
        crate::poly::uni::real_roots_float(coeffs, tol)
    }

    fn rank_kernel_override(rows: &[Vec<Self>], tol: f64) -> Option<(usize, Vec<usize>, Vec<Vec<Self>>)> {
        Some(crate::linalg::float::svd_rank_kernel(rows, tol))
    }

    fn psd_override(rows: &[Vec<Self>], tol: f64) -> Option<bool> {
        Some(crate::linalg::float::psd_eigen(rows, tol))
    }

    fn neg_direction_override(rows: &[Vec<Self>], tol: f64) -> Option<Option<Vec<Self>>> {
        Some(crate::linalg::float::neg_direction(rows, tol))
    }
}

/// Approximate equality under the backend policy: exact equality in exact
/// mode, absolute difference below `tol * max(scale, 1)` in float mode.
pub fn approx_eq<S: Scalar>(a: &S, b: &S, scale: f64, tol: f64) -> bool {
    (a.clone() - b.clone()).is_negligible(scale, tol)
}

/// Parses a rational literal: `p/q`, an integer, or a decimal with optional
/// exponent (`-4.25`, `1.5e3`). Decimals convert exactly.
pub fn parse_big_rational(s: &str) -> Result<BigRational, ParseScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
        let d: BigInt = den.trim().parse().map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e.parse().map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{}{}", int_part, frac_part);
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(ParseScalarError::Invalid(s.to_string()));
    }
    let n: BigInt = digits.parse().map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::new(n, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(n * ten.pow((-scale) as u32))
    };
    Ok(value)
}

/// Renders a scalar for file output: exact rationals as `p` or `p/q`, floats
/// via their shortest round-trip representation.
pub fn render_scalar<S: Scalar>(v: &S) -> String {
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> BigRational {
        parse_big_rational(s).unwrap()
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(rat("3/4"), BigRational::new(BigInt::from(3), BigInt::from(4)));
        assert_eq!(rat("-12"), BigRational::from_integer(BigInt::from(-12)));
        assert_eq!(rat("1.25"), rat("5/4"));
        assert_eq!(rat("-0.5"), rat("-1/2"));
        assert_eq!(rat("1.5e2"), rat("150"));
        assert_eq!(rat("25e-2"), rat("1/4"));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(parse_big_rational("").is_err());
        assert!(parse_big_rational("1/0").is_err());
        assert!(parse_big_rational("abc").is_err());
        assert!(parse_big_rational("1.2.3").is_err());
    }

    #[test]
    fn negligibility_policies_differ_by_backend() {
        let tiny_exact = BigRational::new(BigInt::from(1), BigInt::from(10).pow(30));
        assert!(!tiny_exact.is_negligible(1.0, 1e-9));
        assert!(BigRational::zero().is_negligible(1.0, 1e-9));
        assert!(1e-12f64.is_negligible(1.0, 1e-9));
        assert!(!1e-6f64.is_negligible(1.0, 1e-9));
        // Relative scaling: 1e-3 is negligible against scale 1e8 at tol 1e-9.
        assert!(!(1e-3f64.is_negligible(1.0, 1e-9)));
        assert!(1e-3f64.is_negligible(1e8, 1e-9));
    }

    #[test]
    fn f64_round_trips_through_exact_rational() {
        let x = 0.375f64;
        assert_eq!(x.to_big_rational().unwrap(), rat("3/8"));
    }
}
