//! Coefficient fields for the idempotent components.
//!
//! Two backends are provided: exact Gaussian rationals ([`GaussRational`]) and
//! binary floating point ([`C64`]). Everything above this module is generic
//! over [`ComplexField`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Complex numbers with arbitrary precision rational parts.
pub type GaussRational = Complex<BigRational>;
/// Complex numbers with `f64` parts.
pub type C64 = Complex<f64>;

/// Absolute plus relative tolerance used by floating-point comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-12,
            rel: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }
}

/// Real scalars backing a coefficient field.
pub trait RealField:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn to_f64(&self) -> f64;
    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl RealField for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl RealField for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// A complex coefficient field: the home of each idempotent component.
pub trait ComplexField:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Real: RealField;

    /// True for backends whose equality is structural.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_real(r: Self::Real) -> Self {
        Self::from_parts(r, Self::Real::zero())
    }
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn conj(&self) -> Self;
    fn norm_sqr(&self) -> Self::Real;

    /// Modulus as stored in a hyperbolic value: squared on exact backends,
    /// plain on floating backends.
    fn modulus_value(&self) -> Self::Real;

    /// Converts a squared modulus into the representation used by
    /// [`modulus_value`](Self::modulus_value).
    fn modulus_from_norm_sqr(n: Self::Real) -> Self::Real;

    /// Structural zero test.
    fn is_zero(&self) -> bool;

    /// Zero test relative to a magnitude scale. Exact backends ignore `scale`.
    fn is_negligible(&self, scale: f64, rel: f64) -> bool;

    fn to_c64(&self) -> C64;
    fn from_c64(z: C64) -> Result<Self>;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool;

    /// Branch `branch` of the `n`th root, counted counterclockwise from the
    /// principal root.
    fn nth_root(&self, n: u32, branch: u32) -> Result<Self>;

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

fn float_root(z: C64, n: u32, branch: u32) -> C64 {
    let r = z.norm().powf(1.0 / n as f64);
    let theta = (z.arg() + 2.0 * std::f64::consts::PI * branch as f64) / n as f64;
    C64::from_polar(r, theta)
}

impl ComplexField for C64 {
    type Real = f64;
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn i() -> Self {
        C64::new(0.0, 1.0)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        C64::new(re, im)
    }
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn norm_sqr(&self) -> f64 {
        Complex::norm_sqr(self)
    }
    fn modulus_value(&self) -> f64 {
        self.norm()
    }
    fn modulus_from_norm_sqr(n: f64) -> f64 {
        n.sqrt()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_negligible(&self, scale: f64, rel: f64) -> bool {
        self.norm() <= rel * scale.max(f64::MIN_POSITIVE)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn from_c64(z: C64) -> Result<Self> {
        Ok(z)
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        (self - other).norm() <= tol.abs + tol.rel * self.norm().max(other.norm())
    }
    fn nth_root(&self, n: u32, branch: u32) -> Result<Self> {
        check_root_args(n, branch)?;
        Ok(float_root(*self, n, branch))
    }
}

fn check_root_args(n: u32, branch: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("root order must be positive".into()));
    }
    if branch >= n {
        return Err(Error::InvalidArgument(format!(
            "branch index {branch} out of range for root order {n}"
        )));
    }
    Ok(())
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions.
pub(crate) fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}

impl ComplexField for GaussRational {
    type Real = BigRational;
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(<BigRational as Zero>::zero(), <BigRational as Zero>::zero())
    }
    fn one() -> Self {
        Complex::new(<BigRational as One>::one(), <BigRational as Zero>::zero())
    }
    fn i() -> Self {
        Complex::new(<BigRational as Zero>::zero(), <BigRational as One>::one())
    }
    fn from_parts(re: BigRational, im: BigRational) -> Self {
        Complex::new(re, im)
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), <BigRational as Zero>::zero())
    }
    fn re(&self) -> BigRational {
        self.re.clone()
    }
    fn im(&self) -> BigRational {
        self.im.clone()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn modulus_value(&self) -> BigRational {
        ComplexField::norm_sqr(self)
    }
    fn modulus_from_norm_sqr(n: BigRational) -> BigRational {
        n
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_negligible(&self, _scale: f64, _rel: f64) -> bool {
        ComplexField::is_zero(self)
    }
    fn to_c64(&self) -> C64 {
        C64::new(RealField::to_f64(&self.re), RealField::to_f64(&self.im))
    }
    fn from_c64(z: C64) -> Result<Self> {
        let conv = |x: f64| {
            BigRational::from_float(x)
                .ok_or_else(|| Error::InvalidArgument(format!("non-finite value {x}")))
        };
        Ok(Complex::new(conv(z.re)?, conv(z.im)?))
    }
    fn approx_eq(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }
    fn nth_root(&self, n: u32, branch: u32) -> Result<Self> {
        check_root_args(n, branch)?;
        if ComplexField::is_zero(self) {
            return Ok(<Self as ComplexField>::zero());
        }
        // Candidate from the floating branch, accepted only if it is exact.
        let approx = float_root(self.to_c64(), n, branch);
        let candidate = rationalize(approx.re, 1_000_000)
            .zip(rationalize(approx.im, 1_000_000))
            .map(|(re, im)| Complex::new(re, im));
        match candidate {
            Some(c) if ComplexField::pow(&c, n) == *self => Ok(c),
            _ => Err(Error::UnsupportedOnExactBackend(format!(
                "branch {branch} of the order-{n} root of {} is not a Gaussian rational",
                format_gauss(self)
            ))),
        }
    }
}

/// Human-readable Gaussian rational, e.g. `3/2-1i`.
pub fn format_gauss(z: &GaussRational) -> String {
    if z.im.is_zero() {
        return z.re.to_string();
    }
    let sign = if Signed::is_negative(&z.im) { "-" } else { "+" };
    if z.re.is_zero() {
        let lead = if Signed::is_negative(&z.im) { "-" } else { "" };
        return format!("{lead}{}i", z.im.abs());
    }
    format!("{}{sign}{}i", z.re, z.im.abs())
}

/// Gaussian rational from integer parts.
pub fn gauss(re: i64, im: i64) -> GaussRational {
    Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

/// Gaussian rational `(re_num/re_den) + (im_num/im_den) i`.
pub fn gauss_frac(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussRational {
    Complex::new(
        BigRational::new(re_num.into(), re_den.into()),
        BigRational::new(im_num.into(), im_den.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let a = gauss_frac(2, 4, -3, -9);
        assert_eq!(a, gauss_frac(1, 2, 1, 3));
        assert_eq!(*a.re.denom(), BigInt::from(2));
        assert_eq!(*a.im.denom(), BigInt::from(3));
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(
            rationalize(1.0 / 3.0, 1000),
            Some(BigRational::new(1.into(), 3.into()))
        );
        assert_eq!(
            rationalize(-2.5, 1000),
            Some(BigRational::new((-5).into(), 2.into()))
        );
    }

    #[test]
    fn exact_roots_when_representable() {
        let four = gauss(4, 0);
        assert_eq!(four.nth_root(2, 0).unwrap(), gauss(2, 0));
        assert_eq!(four.nth_root(2, 1).unwrap(), gauss(-2, 0));
        let minus_one = gauss(-1, 0);
        assert_eq!(minus_one.nth_root(2, 0).unwrap(), gauss(0, 1));
        assert!(matches!(
            gauss(2, 0).nth_root(2, 0),
            Err(Error::UnsupportedOnExactBackend(_))
        ));
        assert!(matches!(
            four.nth_root(2, 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_gauss(&gauss_frac(3, 2, -1, 1)), "3/2-1i");
        assert_eq!(format_gauss(&gauss(0, -2)), "-2i");
        assert_eq!(format_gauss(&gauss(5, 0)), "5");
    }
}
