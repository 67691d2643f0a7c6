//! Univariate polynomials, characteristic polynomials, and exact root
//! extraction over the Gaussian rationals.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{format_gauss, rationalize, ComplexField, GaussRational, C64};
use crate::matrix::Matrix;

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: ComplexField> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(ComplexField::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(F::zero());
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &F {
        self.coeffs.last().expect("never empty")
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Divides by `(x - r)`, returning quotient and remainder.
    pub fn divide_linear(&self, r: &F) -> (Poly<F>, F) {
        let n = self.degree();
        if n == 0 {
            return (Poly::new(vec![F::zero()]), self.coeffs[0].clone());
        }
        let mut q = vec![F::zero(); n];
        let mut carry = F::zero();
        for k in (0..=n).rev() {
            let v = self.coeffs[k].clone() + carry.clone() * r.clone();
            if k == 0 {
                return (Poly::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly<GaussRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if ComplexField::is_zero(c) && self.degree() > 0 {
                continue;
            }
            let coef = format!("({})", format_gauss(c));
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{k}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Monic characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
/// recurrence.
pub fn char_poly<F: ComplexField>(a: &Matrix<F>) -> Result<Poly<F>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&m)?;
        for i in 0..n {
            next.set(i, i, next.get(i, i).clone() + coeffs[n - k + 1].clone());
        }
        let am = a.mul(&next)?;
        let trace = (0..n).fold(F::zero(), |acc, i| acc + am.get(i, i).clone());
        coeffs[n - k] = -trace / F::from_i64(k as i64);
        m = next;
    }
    Ok(Poly::new(coeffs))
}

type GaussInt = Complex<BigInt>;

fn gi_is_zero(z: &GaussInt) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

fn gi_norm(z: &GaussInt) -> BigInt {
    &z.re * &z.re + &z.im * &z.im
}

/// Exact quotient `a / b` when `b` divides `a` in the Gaussian integers.
fn gi_div_exact(a: &GaussInt, b: &GaussInt) -> Option<GaussInt> {
    let n = gi_norm(b);
    let num = a * Complex::new(b.re.clone(), -b.im.clone());
    let (qr, rr) = num.re.div_rem(&n);
    let (qi, ri) = num.im.div_rem(&n);
    if rr.is_zero() && ri.is_zero() {
        Some(Complex::new(qr, qi))
    } else {
        None
    }
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Factors `n > 0` by trial division. Returns the prime factorization, or
/// `None` if a cofactor above `TRIAL_BOUND²` could not be resolved.
fn factor_integer(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_BOUND {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let bound = BigInt::from(TRIAL_BOUND);
        if n > &bound * &bound {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

/// Gaussian primes lying over the rational prime `p`.
fn gaussian_primes_over(p: &BigInt) -> Vec<GaussInt> {
    let two = BigInt::from(2);
    if *p == two {
        return vec![Complex::new(BigInt::one(), BigInt::one())];
    }
    let r = p % BigInt::from(4);
    if r == BigInt::from(3) {
        return vec![Complex::new(p.clone(), BigInt::zero())];
    }
    // p = a² + b²
    let mut a = BigInt::one();
    loop {
        let rest = p - &a * &a;
        if rest <= BigInt::zero() {
            break;
        }
        let b = rest.sqrt();
        if &b * &b == rest {
            return vec![Complex::new(a.clone(), b.clone()), Complex::new(a, -b)];
        }
        a += 1;
    }
    vec![Complex::new(p.clone(), BigInt::zero())]
}

/// All Gaussian-integer divisors of `c` (including associates), or `None`
/// when the norm of `c` resists trial factoring.
fn gaussian_divisors(c: &GaussInt) -> Option<Vec<GaussInt>> {
    let norm = gi_norm(c);
    let primes = factor_integer(&norm)?;
    let mut rest = c.clone();
    let mut powers: Vec<(GaussInt, u32)> = Vec::new();
    for (p, _) in &primes {
        for pi in gaussian_primes_over(p) {
            let mut e = 0;
            while let Some(q) = gi_div_exact(&rest, &pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                powers.push((pi, e));
            }
        }
    }
    if gi_norm(&rest) != BigInt::one() {
        return None;
    }
    let units = [
        Complex::new(BigInt::one(), BigInt::zero()),
        Complex::new(BigInt::zero(), BigInt::one()),
        Complex::new(-BigInt::one(), BigInt::zero()),
        Complex::new(BigInt::zero(), -BigInt::one()),
    ];
    let mut divisors: Vec<GaussInt> = units.to_vec();
    for (pi, e) in powers {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &pi;
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    divisors.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
    divisors.dedup();
    Some(divisors)
}

fn lcm_of_denominators(coeffs: &[GaussRational]) -> BigInt {
    coeffs.iter().fold(BigInt::one(), |acc, c| {
        acc.lcm(c.re.denom()).lcm(c.im.denom())
    })
}

/// Rewrites a monic polynomial `p(x)` as the monic Gaussian-integer
/// polynomial `q(y) = Dⁿ p(y / D)`, whose roots are `D` times those of `p`.
fn integral_monic(p: &Poly<GaussRational>) -> (Vec<GaussInt>, BigInt) {
    let d = lcm_of_denominators(p.coeffs());
    let n = p.degree();
    let drat = BigRational::from_integer(d.clone());
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let scale = num_traits::pow(drat.clone(), n - k);
            let re = &c.re * &scale;
            let im = &c.im * &scale;
            debug_assert!(re.is_integer() && im.is_integer());
            Complex::new(re.to_integer(), im.to_integer())
        })
        .collect();
    (coeffs, d)
}

fn gi_eval(coeffs: &[GaussInt], y: &GaussInt) -> GaussInt {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(BigInt::zero(), BigInt::zero()), |acc, c| {
            acc * y + c
        })
}

/// Durand-Kerner root approximations for a monic polynomial.
fn approximate_roots(p: &Poly<GaussRational>) -> Vec<C64> {
    let c: Vec<C64> = p.coeffs().iter().map(ComplexField::to_c64).collect();
    let n = p.degree();
    let eval = |z: C64| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, k| acc * z + k);
    let seed = C64::new(0.4, 0.9);
    let mut z: Vec<C64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(C64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

/// Gaussian-rational roots of `p` with multiplicities.
///
/// The roots are found by exhaustive search over the Gaussian-integer
/// divisors of the constant term of the denominator-cleared monic form, then
/// confirmed by exact evaluation. If the polynomial does not split completely
/// over the Gaussian rationals, [`Error::DoesNotSplit`] carries the factor
/// left after removing every root that was found.
pub fn split_eigenvalues(p: &Poly<GaussRational>) -> Result<Vec<(GaussRational, usize)>> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let lead = p.leading().clone();
    let monic = Poly::new(p.coeffs().iter().map(|c| c.clone() / lead.clone()).collect());

    let mut roots: Vec<GaussRational> = Vec::new();
    let zero_mult = monic
        .coeffs()
        .iter()
        .take_while(|c| ComplexField::is_zero(*c))
        .count();
    if zero_mult > 0 {
        roots.push(<GaussRational as ComplexField>::zero());
    }
    let reduced = Poly::new(monic.coeffs()[zero_mult..].to_vec());
    if reduced.degree() > 0 {
        let (q, d) = integral_monic(&reduced);
        let drat = BigRational::from_integer(d);
        let to_root = |y: &GaussInt| {
            Complex::new(
                BigRational::from_integer(y.re.clone()) / drat.clone(),
                BigRational::from_integer(y.im.clone()) / drat.clone(),
            )
        };
        match gaussian_divisors(&q[0]) {
            Some(divs) => {
                for y in divs.iter().filter(|y| gi_is_zero(&gi_eval(&q, y))) {
                    roots.push(to_root(y));
                }
            }
            None => {
                // Constant term too large to factor: candidates from numerical
                // roots, each confirmed exactly.
                for z in approximate_roots(&reduced) {
                    let cand = rationalize(z.re, 1_000_000)
                        .zip(rationalize(z.im, 1_000_000))
                        .map(|(re, im)| Complex::new(re, im));
                    if let Some(r) = cand {
                        if ComplexField::is_zero(&reduced.eval(&r)) && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
    }

    let mut remaining = monic;
    let mut out = Vec::new();
    for r in roots {
        let mut mult = 0;
        loop {
            let (q, rem) = remaining.divide_linear(&r);
            if !ComplexField::is_zero(&rem) || remaining.degree() == 0 {
                break;
            }
            remaining = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    if remaining.degree() > 0 {
        return Err(Error::DoesNotSplit {
            remaining: remaining.to_string(),
            component: None,
        });
    }
    out.sort_by(|a, b| (&a.0.re, &a.0.im).cmp(&(&b.0.re, &b.0.im)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gauss, gauss_frac};

    fn poly(c: &[(i64, i64)]) -> Poly<GaussRational> {
        Poly::new(c.iter().map(|&(a, b)| gauss(a, b)).collect())
    }

    #[test]
    fn char_poly_small() {
        let z = Matrix::<GaussRational>::zeros(2, 2);
        assert_eq!(char_poly(&z).unwrap(), poly(&[(0, 0), (0, 0), (1, 0)]));
        let d = Matrix::diagonal(&[gauss(1, 0), gauss(2, 0)]);
        assert_eq!(char_poly(&d).unwrap(), poly(&[(2, 0), (-3, 0), (1, 0)]));
    }

    #[test]
    fn split_simple() {
        let p = poly(&[(2, 0), (-3, 0), (1, 0)]);
        assert_eq!(
            split_eigenvalues(&p).unwrap(),
            vec![(gauss(1, 0), 1), (gauss(2, 0), 1)]
        );
        let p = poly(&[(0, 0), (0, 0), (1, 0)]);
        assert_eq!(split_eigenvalues(&p).unwrap(), vec![(gauss(0, 0), 2)]);
    }

    #[test]
    fn split_x2_plus_1() {
        let p = poly(&[(1, 0), (0, 0), (1, 0)]);
        let roots = split_eigenvalues(&p).unwrap();
        assert_eq!(roots, vec![(gauss(0, -1), 1), (gauss(0, 1), 1)]);
        for (r, _) in roots {
            assert!(ComplexField::is_zero(&p.eval(&r)));
        }
    }

    #[test]
    fn split_rational_roots_with_multiplicity() {
        // (x - 1/2)^2 (x + 2i/3)
        let a = Poly::new(vec![gauss_frac(-1, 2, 0, 1), gauss(1, 0)]);
        let b = Poly::new(vec![gauss_frac(0, 1, 2, 3), gauss(1, 0)]);
        let p = a.mul(&a).mul(&b);
        let roots = split_eigenvalues(&p).unwrap();
        assert_eq!(
            roots,
            vec![(gauss_frac(0, 1, -2, 3), 1), (gauss_frac(1, 2, 0, 1), 2)]
        );
    }

    #[test]
    fn non_splitting_reports_remainder() {
        // (x - 1)(x² - 2)
        let p = poly(&[(1, 0), (-1, 0)]).mul(&poly(&[(-2, 0), (0, 0), (1, 0)]));
        let p = Poly::new(p.coeffs().iter().map(|c| -c.clone()).collect());
        match split_eigenvalues(&p) {
            Err(Error::DoesNotSplit { remaining, .. }) => {
                assert_eq!(remaining, "(1)x^2 + (-2)");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gaussian_divisors_of_five() {
        let divs = gaussian_divisors(&Complex::new(BigInt::from(5), BigInt::zero())).unwrap();
        // units × {1, 2+i, 2-i, 5}
        assert_eq!(divs.len(), 16);
        assert!(divs.contains(&Complex::new(BigInt::from(2), BigInt::from(1))));
    }
}
