//! Bicomplex and hyperbolic scalars.
//!
//! A bicomplex number `z = z1 + j z2` is stored only through its idempotent
//! components `ẑ1 = z1 - i z2` and `ẑ2 = z1 + i z2`, so that
//! `z = ẑ1 e + ẑ2 e†` with `e = (1 + ij)/2` and `e† = (1 - ij)/2`. Ring
//! operations then act componentwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Component, Error, Result};
use crate::field::{ComplexField, RealField, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexScalar<F> {
    /// Coefficient of `e`.
    pub c1: F,
    /// Coefficient of `e†`.
    pub c2: F,
}

impl<F: ComplexField> BicomplexScalar<F> {
    pub fn from_idempotent(c1: F, c2: F) -> Self {
        BicomplexScalar { c1, c2 }
    }

    /// `z1 + j z2` in Euclidean coordinates.
    pub fn from_euclidean(z1: F, z2: F) -> Self {
        let iz2 = F::i() * z2;
        BicomplexScalar {
            c1: z1.clone() - iz2.clone(),
            c2: z1 + iz2,
        }
    }

    /// Returns `(z1, z2)` with `z = z1 + j z2`.
    pub fn to_euclidean(&self) -> (F, F) {
        let two = F::from_i64(2);
        let z1 = (self.c1.clone() + self.c2.clone()) / two.clone();
        let z2 = F::i() * (self.c1.clone() - self.c2.clone()) / two;
        (z1, z2)
    }

    /// Embeds a complex number (both components equal).
    pub fn from_complex(z: F) -> Self {
        BicomplexScalar {
            c1: z.clone(),
            c2: z,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_complex(F::from_i64(n))
    }

    pub fn zero() -> Self {
        Self::from_complex(F::zero())
    }

    pub fn one() -> Self {
        Self::from_complex(F::one())
    }

    /// The idempotent `e = (1 + ij)/2`.
    pub fn e() -> Self {
        BicomplexScalar {
            c1: F::one(),
            c2: F::zero(),
        }
    }

    /// The idempotent `e† = (1 - ij)/2`.
    pub fn e_dagger() -> Self {
        BicomplexScalar {
            c1: F::zero(),
            c2: F::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    /// A bicomplex number is complex iff its two idempotent components agree.
    pub fn is_complex(&self) -> bool {
        self.c1 == self.c2
    }

    pub fn is_invertible(&self) -> bool {
        !self.c1.is_zero() && !self.c2.is_zero()
    }

    /// Componentwise reciprocal; fails on the zero divisors.
    pub fn invert(&self) -> Result<Self> {
        match Component::from_flags(self.c1.is_zero(), self.c2.is_zero()) {
            Some(which) => Err(Error::NotInvertible { which }),
            None => Ok(BicomplexScalar {
                c1: F::one() / self.c1.clone(),
                c2: F::one() / self.c2.clone(),
            }),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.invert()?)
    }

    pub fn conjugate(&self) -> Self {
        BicomplexScalar {
            c1: self.c1.conj(),
            c2: self.c2.conj(),
        }
    }

    pub fn hyperbolic_norm(&self) -> HyperbolicValue<F::Real> {
        HyperbolicValue {
            h1: self.c1.modulus_value(),
            h2: self.c2.modulus_value(),
            squared: F::EXACT,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        BicomplexScalar {
            c1: self.c1.pow(n),
            c2: self.c2.pow(n),
        }
    }

    /// One of the `n²` bicomplex `n`th roots, selected by a branch index per
    /// idempotent component.
    pub fn nth_root(&self, n: u32, branch1: u32, branch2: u32) -> Result<Self> {
        Ok(BicomplexScalar {
            c1: self.c1.nth_root(n, branch1)?,
            c2: self.c2.nth_root(n, branch2)?,
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        BicomplexScalar {
            c1: self.c1.clone() * s.clone(),
            c2: self.c2.clone() * s.clone(),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.c1.approx_eq(&other.c1, tol) && self.c2.approx_eq(&other.c2, tol)
    }

    pub fn component(&self, which: usize) -> &F {
        match which {
            1 => &self.c1,
            2 => &self.c2,
            _ => panic!("idempotent component index must be 1 or 2"),
        }
    }
}

impl<F: ComplexField> Add for BicomplexScalar<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        BicomplexScalar {
            c1: self.c1 + rhs.c1,
            c2: self.c2 + rhs.c2,
        }
    }
}

impl<F: ComplexField> Sub for BicomplexScalar<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        BicomplexScalar {
            c1: self.c1 - rhs.c1,
            c2: self.c2 - rhs.c2,
        }
    }
}

impl<F: ComplexField> Mul for BicomplexScalar<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        BicomplexScalar {
            c1: self.c1 * rhs.c1,
            c2: self.c2 * rhs.c2,
        }
    }
}

impl<F: ComplexField> Neg for BicomplexScalar<F> {
    type Output = Self;
    fn neg(self) -> Self {
        BicomplexScalar {
            c1: -self.c1,
            c2: -self.c2,
        }
    }
}

impl<F: ComplexField> fmt::Display for BicomplexScalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.c1.to_c64();
        let b = self.c2.to_c64();
        write!(f, "({a}) e + ({b}) e†")
    }
}

/// Result of comparing two hyperbolic values in the componentwise partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperbolicOrdering {
    /// Strictly smaller in both components.
    Less,
    /// Smaller or equal in both components, strict in exactly one.
    LessEqual,
    Equal,
    GreaterEqual,
    /// Strictly larger in both components.
    Greater,
    Incomparable,
}

/// A nonnegative hyperbolic number `h1 e + h2 e†`.
///
/// On exact backends moduli are generally irrational, so values produced by
/// norms hold the *squared* moduli and carry `squared = true`. Comparisons are
/// always carried out on squared components, which preserves the order on
/// nonnegative reals.
#[derive(Debug, Clone)]
pub struct HyperbolicValue<R> {
    h1: R,
    h2: R,
    squared: bool,
}

impl<R: RealField> HyperbolicValue<R> {
    pub fn new(h1: R, h2: R) -> Result<Self> {
        Self::build(h1, h2, false)
    }

    /// Builds a value from squared components.
    pub fn from_squared(h1_sq: R, h2_sq: R) -> Result<Self> {
        Self::build(h1_sq, h2_sq, true)
    }

    fn build(h1: R, h2: R, squared: bool) -> Result<Self> {
        if h1.is_negative() || h2.is_negative() {
            return Err(Error::NegativeHyperbolic);
        }
        Ok(HyperbolicValue { h1, h2, squared })
    }

    pub fn zero() -> Self {
        HyperbolicValue {
            h1: R::zero(),
            h2: R::zero(),
            squared: false,
        }
    }

    pub fn one() -> Self {
        HyperbolicValue {
            h1: R::one(),
            h2: R::one(),
            squared: false,
        }
    }

    pub fn is_squared(&self) -> bool {
        self.squared
    }

    /// Raw stored components (squared when [`is_squared`](Self::is_squared)).
    pub fn raw(&self) -> (&R, &R) {
        (&self.h1, &self.h2)
    }

    pub fn squared_components(&self) -> (R, R) {
        if self.squared {
            (self.h1.clone(), self.h2.clone())
        } else {
            (
                self.h1.clone() * self.h1.clone(),
                self.h2.clone() * self.h2.clone(),
            )
        }
    }

    /// Plain (unsquared) components as floats.
    pub fn to_f64(&self) -> (f64, f64) {
        let (a, b) = (self.h1.to_f64(), self.h2.to_f64());
        if self.squared {
            (a.sqrt(), b.sqrt())
        } else {
            (a, b)
        }
    }

    pub fn compare(&self, other: &Self) -> HyperbolicOrdering {
        use std::cmp::Ordering::*;
        let (a1, a2) = self.squared_components();
        let (b1, b2) = other.squared_components();
        let o1 = a1.partial_cmp(&b1);
        let o2 = a2.partial_cmp(&b2);
        match (o1, o2) {
            (Some(Equal), Some(Equal)) => HyperbolicOrdering::Equal,
            (Some(Less), Some(Less)) => HyperbolicOrdering::Less,
            (Some(Greater), Some(Greater)) => HyperbolicOrdering::Greater,
            (Some(Less), Some(Equal)) | (Some(Equal), Some(Less)) => HyperbolicOrdering::LessEqual,
            (Some(Greater), Some(Equal)) | (Some(Equal), Some(Greater)) => {
                HyperbolicOrdering::GreaterEqual
            }
            _ => HyperbolicOrdering::Incomparable,
        }
    }

    /// Strict hyperbolic order: both components strictly smaller.
    pub fn lt_h(&self, other: &Self) -> bool {
        self.compare(other) == HyperbolicOrdering::Less
    }

    pub fn le_h(&self, other: &Self) -> bool {
        matches!(
            self.compare(other),
            HyperbolicOrdering::Less | HyperbolicOrdering::LessEqual | HyperbolicOrdering::Equal
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.squared == other.squared {
            HyperbolicValue {
                h1: self.h1.clone() * other.h1.clone(),
                h2: self.h2.clone() * other.h2.clone(),
                squared: self.squared,
            }
        } else {
            let (a1, a2) = self.squared_components();
            let (b1, b2) = other.squared_components();
            HyperbolicValue {
                h1: a1 * b1,
                h2: a2 * b2,
                squared: true,
            }
        }
    }

    /// The value as a bicomplex scalar with real idempotent components.
    /// Only available for values that are not stored squared.
    pub fn to_scalar<F: ComplexField<Real = R>>(&self) -> Result<BicomplexScalar<F>> {
        if self.squared {
            return Err(Error::UnsupportedOnExactBackend(
                "hyperbolic value is held as squared moduli".into(),
            ));
        }
        Ok(BicomplexScalar::from_idempotent(
            F::from_real(self.h1.clone()),
            F::from_real(self.h2.clone()),
        ))
    }
}

impl<R: RealField> PartialEq for HyperbolicValue<R> {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == HyperbolicOrdering::Equal
    }
}

/// Membership in the open hyperbolic ball `{z : |z - c|ₕ <ₕ R}`.
pub fn ball_contains<F: ComplexField>(
    center: &BicomplexScalar<F>,
    radius: &HyperbolicValue<F::Real>,
    point: &BicomplexScalar<F>,
) -> Result<bool> {
    let (r1, r2) = radius.raw();
    if *r1 <= F::Real::zero() || *r2 <= F::Real::zero() {
        return Err(Error::InvalidArgument(
            "ball radius must be strictly positive in both components".into(),
        ));
    }
    let dist = (point.clone() - center.clone()).hyperbolic_norm();
    Ok(dist.lt_h(radius))
}

/// Componentwise infimum of a finite set of hyperbolic values.
pub fn hyperbolic_inf<'a, R, I>(values: I) -> Result<HyperbolicValue<R>>
where
    R: RealField,
    I: IntoIterator<Item = &'a HyperbolicValue<R>>,
{
    let values: Vec<&HyperbolicValue<R>> = values.into_iter().collect();
    let first = values.first().ok_or(Error::EmptySet)?;
    let uniform = values.iter().all(|v| v.squared == first.squared);
    let pick = |v: &HyperbolicValue<R>| {
        if uniform {
            (v.h1.clone(), v.h2.clone())
        } else {
            v.squared_components()
        }
    };
    let (mut m1, mut m2) = pick(first);
    for v in &values[1..] {
        let (a, b) = pick(v);
        if a < m1 {
            m1 = a;
        }
        if b < m2 {
            m2 = b;
        }
    }
    Ok(HyperbolicValue {
        h1: m1,
        h2: m2,
        squared: if uniform { first.squared } else { true },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gauss, gauss_frac, GaussRational, C64};
    use num_rational::BigRational;

    type Q = BicomplexScalar<GaussRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn idempotent_identities() {
        let e = Q::e();
        let ed = Q::e_dagger();
        assert_eq!(e.clone() * ed.clone(), Q::zero());
        assert_eq!(e.clone() * e.clone(), e);
        assert_eq!(ed.clone() * ed.clone(), ed);
        assert_eq!(e + ed, Q::one());
    }

    #[test]
    fn e_matches_its_euclidean_definition() {
        // e = (1 + ij)/2, i.e. z1 = 1/2, z2 = i/2.
        let e = Q::from_euclidean(gauss_frac(1, 2, 0, 1), gauss_frac(0, 1, 1, 2));
        assert_eq!(e, Q::e());
    }

    #[test]
    fn invert_cases() {
        assert_eq!(Q::one().invert().unwrap(), Q::one());
        assert_eq!(
            Q::e().invert(),
            Err(Error::NotInvertible {
                which: Component::Second
            })
        );
        assert_eq!(
            Q::zero().invert(),
            Err(Error::NotInvertible {
                which: Component::Both
            })
        );
        let a = Q::from_idempotent(gauss(2, 0), gauss(4, 0));
        assert_eq!(
            a.invert().unwrap(),
            Q::from_idempotent(gauss_frac(1, 2, 0, 1), gauss_frac(1, 4, 0, 1))
        );
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(Q::e().conjugate(), Q::e());
        assert_eq!(Q::from_i64(5).conjugate(), Q::from_i64(5));
        let z1 = gauss(3, 4);
        let z2 = gauss(1, -2);
        let lhs = Q::from_euclidean(z1.clone(), z2.clone()).conjugate();
        let rhs = Q::from_euclidean(ComplexField::conj(&z1), -ComplexField::conj(&z2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Q::zero().hyperbolic_norm(), HyperbolicValue::zero());
        assert_eq!(
            Q::e().hyperbolic_norm(),
            HyperbolicValue::new(q(1), q(0)).unwrap()
        );
        // Exact norms are held squared; comparison is unaffected.
        let n = Q::from_idempotent(gauss(3, 4), gauss(0, 2)).hyperbolic_norm();
        assert!(n.is_squared());
        assert_eq!(n, HyperbolicValue::new(q(5), q(2)).unwrap());
    }

    #[test]
    fn z_times_conjugate_is_squared_norm() {
        let z = Q::from_euclidean(gauss(3, 4), gauss(1, -2));
        let p = z.clone() * z.conjugate();
        let (n1, n2) = z.hyperbolic_norm().squared_components();
        assert_eq!(
            p,
            Q::from_idempotent(GaussRational::from_real(n1), GaussRational::from_real(n2))
        );
    }

    #[test]
    fn float_roots() {
        type S = BicomplexScalar<C64>;
        let tol = Tolerance::default();
        let one = S::one();
        assert!(one.nth_root(2, 0, 0).unwrap().approx_eq(&one, &tol));
        let a = S::from_idempotent(C64::new(4.0, 0.0), C64::new(9.0, 0.0));
        assert!(a
            .nth_root(2, 0, 0)
            .unwrap()
            .approx_eq(&S::from_idempotent(C64::new(2.0, 0.0), C64::new(3.0, 0.0)), &tol));
        assert!(matches!(
            a.nth_root(2, 0, 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn partial_order() {
        let a = HyperbolicValue::new(1.0, 0.0).unwrap();
        let b = HyperbolicValue::new(0.0, 1.0).unwrap();
        assert_eq!(a.compare(&b), HyperbolicOrdering::Incomparable);
        assert!(!a.lt_h(&a));
        assert!(a.le_h(&a));
        let c = HyperbolicValue::new(2.0, 2.0).unwrap();
        assert_eq!(a.compare(&c), HyperbolicOrdering::Less);
        assert_eq!(c.compare(&a), HyperbolicOrdering::Greater);
        let d = HyperbolicValue::new(1.0, 3.0).unwrap();
        assert_eq!(a.compare(&d), HyperbolicOrdering::LessEqual);
        assert!(HyperbolicValue::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn balls() {
        type S = BicomplexScalar<C64>;
        let r11 = HyperbolicValue::new(1.0, 1.0).unwrap();
        assert!(ball_contains(&S::zero(), &r11, &S::zero()).unwrap());
        assert!(!ball_contains(&S::zero(), &r11, &S::e()).unwrap());
        let r21 = HyperbolicValue::new(2.0, 1.0).unwrap();
        let p = S::from_idempotent(C64::new(1.0, 0.0), C64::new(0.5, 0.0));
        assert!(ball_contains(&S::zero(), &r21, &p).unwrap());
        let bad = HyperbolicValue::new(0.0, 1.0).unwrap();
        assert!(ball_contains(&S::zero(), &bad, &p).is_err());
    }

    #[test]
    fn infimum() {
        let v = [HyperbolicValue::new(1.0, 2.0).unwrap()];
        assert_eq!(hyperbolic_inf(&v).unwrap(), v[0]);
        let w = [
            HyperbolicValue::new(1.0, 5.0).unwrap(),
            HyperbolicValue::new(3.0, 2.0).unwrap(),
        ];
        assert_eq!(
            hyperbolic_inf(&w).unwrap(),
            HyperbolicValue::new(1.0, 2.0).unwrap()
        );
        let empty: [HyperbolicValue<f64>; 0] = [];
        assert_eq!(hyperbolic_inf(&empty), Err(Error::EmptySet));
    }
}
