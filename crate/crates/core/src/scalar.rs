//! Scalar carriers for the two arithmetic modes.
//!
//! All algebra in this crate is generic over [`Scalar`], which is implemented
//! exactly twice:
//!
//! - [`ExactScalar`] = `Complex<BigRational>`: Gaussian rationals. Every
//!   operation is exact; equality is bit-exact equality of reduced fractions.
//! - [`FloatScalar`] = `Complex<f64>`: fast double-precision mode running the
//!   same code path.
//!
//! The two modes never mix inside one computation; the type parameter makes
//! mixing a compile error rather than a runtime one.

use num::bigint::BigInt;
use num::complex::Complex;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

/// Exact mode: complex numbers with arbitrary-precision rational parts.
pub type ExactScalar = Complex<BigRational>;

/// Float mode: complex numbers with `f64` parts.
pub type FloatScalar = Complex<f64>;

/// Tolerance used by float-mode structural checks (symmetry, tracelessness,
/// reality). Exact mode always checks exact equality instead.
pub const FLOAT_STRUCT_TOL: f64 = 1e-9;

/// Tolerance for float-mode rotation validation (orthogonality, unit
/// determinant).
pub const FLOAT_ROTATION_TOL: f64 = 1e-12;

/// Field operations plus the mode-specific services the library needs.
///
/// `Zero`/`One` bring in addition and multiplication; subtraction, negation
/// and division are required separately. Everything is by-value; callers
/// clone as needed.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True for the exact Gaussian-rational mode.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Exact integer conversion wide enough for factorial-sized multipliers.
    fn from_i128(n: i128) -> Self;

    /// `num / den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_big_rational(r: &BigRational) -> Self;

    /// Accepts a float literal. `None` in exact mode: floats carry rounding
    /// and are rejected rather than silently approximated.
    fn try_from_f64(x: f64) -> Option<Self>;

    /// The imaginary unit.
    fn i() -> Self;

    /// Complex conjugate.
    fn conj(&self) -> Self;

    fn re_f64(&self) -> f64;
    fn im_f64(&self) -> f64;

    /// Real part rendered for I/O: `"p/q"` in exact mode, shortest
    /// round-trip decimal in float mode.
    fn re_string(&self) -> String;
    fn im_string(&self) -> String;

    /// Complex modulus as `f64` (approximate in exact mode; used only for
    /// reporting and float-mode comparisons).
    fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// Mode-aware equality: exact equality in exact mode, absolute tolerance
    /// on the complex modulus of the difference in float mode.
    fn eq_within(&self, other: &Self, float_tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).abs_f64() <= float_tol
        }
    }

    fn is_zero_within(&self, float_tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs_f64() <= float_tol
        }
    }

    /// Mode-aware reality check on the imaginary part.
    fn is_real_within(&self, float_tol: f64) -> bool {
        if Self::EXACT {
            self.im_f64() == 0.0 && self.im_string() == "0"
        } else {
            self.im_f64().abs() <= float_tol
        }
    }
}

impl Scalar for ExactScalar {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_i128(n: i128) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn from_big_rational(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn try_from_f64(_x: f64) -> Option<Self> {
        None
    }

    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn re_f64(&self) -> f64 {
        self.re.to_f64().unwrap_or(f64::NAN)
    }

    fn im_f64(&self) -> f64 {
        self.im.to_f64().unwrap_or(f64::NAN)
    }

    fn re_string(&self) -> String {
        self.re.to_string()
    }

    fn im_string(&self) -> String {
        self.im.to_string()
    }

    fn is_real_within(&self, _float_tol: f64) -> bool {
        self.im.is_zero()
    }
}

impl Scalar for FloatScalar {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn from_i128(n: i128) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex::new(num as f64 / den as f64, 0.0)
    }

    fn from_big_rational(r: &BigRational) -> Self {
        Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn try_from_f64(x: f64) -> Option<Self> {
        Some(Complex::new(x, 0.0))
    }

    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn conj(&self) -> Self {
        Complex::new(self.re, -self.im)
    }

    fn re_f64(&self) -> f64 {
        self.re
    }

    fn im_f64(&self) -> f64 {
        self.im
    }

    fn re_string(&self) -> String {
        format!("{}", self.re)
    }

    fn im_string(&self) -> String {
        format!("{}", self.im)
    }
}
