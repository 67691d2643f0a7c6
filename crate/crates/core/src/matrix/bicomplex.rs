use crate::error::{Component, Error, Result};
use crate::field::{ComplexField, C64};
use crate::scalar::{BicomplexScalar, HyperbolicValue};

use super::complex::Matrix;

/// A bicomplex matrix `A = A1 e + A2 e†`, stored as its two idempotent
/// component matrices. All algebra is componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexMatrix<F> {
    m1: Matrix<F>,
    m2: Matrix<F>,
}

/// A bicomplex column vector `v = v1 e + v2 e†`.
#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexVector<F> {
    pub v1: Vec<F>,
    pub v2: Vec<F>,
}

impl<F: ComplexField> BicomplexMatrix<F> {
    pub fn new(m1: Matrix<F>, m2: Matrix<F>) -> Result<Self> {
        if m1.shape() != m2.shape() {
            return Err(Error::ShapeMismatch(format!(
                "idempotent components have shapes {:?} and {:?}",
                m1.shape(),
                m2.shape()
            )));
        }
        Ok(BicomplexMatrix { m1, m2 })
    }

    /// Builds the matrix from bicomplex entries in row-major order.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BicomplexScalar<F>>) -> Result<Self> {
        let (c1, c2): (Vec<F>, Vec<F>) = entries.into_iter().map(|s| (s.c1, s.c2)).unzip();
        BicomplexMatrix::new(Matrix::new(rows, cols, c1)?, Matrix::new(rows, cols, c2)?)
    }

    /// Embeds a complex matrix (both components equal).
    pub fn from_complex(m: Matrix<F>) -> Self {
        BicomplexMatrix {
            m1: m.clone(),
            m2: m,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_complex(Matrix::identity(n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_complex(Matrix::zeros(rows, cols))
    }

    pub fn diagonal(entries: &[BicomplexScalar<F>]) -> Self {
        let d1: Vec<F> = entries.iter().map(|s| s.c1.clone()).collect();
        let d2: Vec<F> = entries.iter().map(|s| s.c2.clone()).collect();
        BicomplexMatrix {
            m1: Matrix::diagonal(&d1),
            m2: Matrix::diagonal(&d2),
        }
    }

    pub fn m1(&self) -> &Matrix<F> {
        &self.m1
    }

    pub fn m2(&self) -> &Matrix<F> {
        &self.m2
    }

    pub fn component(&self, which: usize) -> &Matrix<F> {
        match which {
            1 => &self.m1,
            2 => &self.m2,
            _ => panic!("idempotent component index must be 1 or 2"),
        }
    }

    pub fn into_components(self) -> (Matrix<F>, Matrix<F>) {
        (self.m1, self.m2)
    }

    pub fn rows(&self) -> usize {
        self.m1.rows()
    }

    pub fn cols(&self) -> usize {
        self.m1.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.m1.shape()
    }

    pub fn is_square(&self) -> bool {
        self.m1.is_square()
    }

    pub fn entry(&self, r: usize, c: usize) -> BicomplexScalar<F> {
        BicomplexScalar::from_idempotent(self.m1.get(r, c).clone(), self.m2.get(r, c).clone())
    }

    pub fn map<G: ComplexField>(&self, f: impl Fn(&F) -> G) -> BicomplexMatrix<G> {
        BicomplexMatrix {
            m1: self.m1.map(&f),
            m2: self.m2.map(&f),
        }
    }

    pub fn to_c64(&self) -> BicomplexMatrix<C64> {
        self.map(ComplexField::to_c64)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            })
        }
    }

    fn both(&self, other: &Self, f: impl Fn(&Matrix<F>, &Matrix<F>) -> Result<Matrix<F>>) -> Result<Self> {
        Ok(BicomplexMatrix {
            m1: f(&self.m1, &other.m1)?,
            m2: f(&self.m2, &other.m2)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.both(other, Matrix::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.both(other, Matrix::sub)
    }

    /// Matrix product, computed componentwise: `(A1 B1, A2 B2)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.both(other, Matrix::mul)
    }

    pub fn scale(&self, s: &BicomplexScalar<F>) -> Self {
        BicomplexMatrix {
            m1: self.m1.scale(&s.c1),
            m2: self.m2.scale(&s.c2),
        }
    }

    /// `A - λ I`.
    pub fn shift(&self, lambda: &BicomplexScalar<F>) -> Result<Self> {
        Ok(BicomplexMatrix {
            m1: self.m1.shift(&lambda.c1)?,
            m2: self.m2.shift(&lambda.c2)?,
        })
    }

    /// Conjugate transpose, which is the componentwise complex adjoint.
    pub fn adjoint(&self) -> Self {
        BicomplexMatrix {
            m1: self.m1.adjoint(),
            m2: self.m2.adjoint(),
        }
    }

    pub fn determinant(&self) -> Result<BicomplexScalar<F>> {
        Ok(BicomplexScalar::from_idempotent(
            self.m1.determinant()?,
            self.m2.determinant()?,
        ))
    }

    /// Inverse `(A1⁻¹, A2⁻¹)`; exists exactly when both components are
    /// nonsingular.
    pub fn inverse_with_tol(&self, rel_tol: f64) -> Result<Self> {
        self.require_square()?;
        let i1 = self.m1.inverse(rel_tol)?;
        let i2 = self.m2.inverse(rel_tol)?;
        match (i1, i2) {
            (Some(m1), Some(m2)) => Ok(BicomplexMatrix { m1, m2 }),
            (a, b) => Err(Error::SingularComponent {
                which: Component::from_flags(a.is_none(), b.is_none())
                    .expect("at least one component is singular"),
            }),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with_tol(super::DEFAULT_SINGULAR_TOL)
    }

    /// Whether `λ` is an eigenvalue: `det(A - λI) = 0` as a bicomplex scalar,
    /// i.e. both component determinants vanish.
    pub fn is_eigenvalue_with_tol(&self, lambda: &BicomplexScalar<F>, rel_tol: f64) -> Result<bool> {
        self.require_square()?;
        let shifted = self.shift(lambda)?;
        Ok(shifted.m1.is_singular(rel_tol)? && shifted.m2.is_singular(rel_tol)?)
    }

    pub fn is_eigenvalue(&self, lambda: &BicomplexScalar<F>) -> Result<bool> {
        self.is_eigenvalue_with_tol(lambda, super::DEFAULT_SINGULAR_TOL)
    }

    pub fn apply(&self, v: &BicomplexVector<F>) -> Result<BicomplexVector<F>> {
        Ok(BicomplexVector {
            v1: self.m1.mul_vec(&v.v1)?,
            v2: self.m2.mul_vec(&v.v2)?,
        })
    }

    pub fn frobenius_norms(&self) -> (f64, f64) {
        (self.m1.frobenius_norm(), self.m2.frobenius_norm())
    }
}

impl<F: ComplexField> BicomplexVector<F> {
    pub fn new(v1: Vec<F>, v2: Vec<F>) -> Result<Self> {
        if v1.len() != v2.len() {
            return Err(Error::ShapeMismatch(format!(
                "idempotent components have lengths {} and {}",
                v1.len(),
                v2.len()
            )));
        }
        Ok(BicomplexVector { v1, v2 })
    }

    pub fn from_entries(entries: Vec<BicomplexScalar<F>>) -> Self {
        let (v1, v2) = entries.into_iter().map(|s| (s.c1, s.c2)).unzip();
        BicomplexVector { v1, v2 }
    }

    pub fn zeros(n: usize) -> Self {
        BicomplexVector {
            v1: vec![F::zero(); n],
            v2: vec![F::zero(); n],
        }
    }

    /// Standard basis vector `ê_k` (in both components).
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = vec![F::zero(); n];
        v[k] = F::one();
        BicomplexVector {
            v1: v.clone(),
            v2: v,
        }
    }

    pub fn len(&self) -> usize {
        self.v1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v1.is_empty()
    }

    pub fn entry(&self, k: usize) -> BicomplexScalar<F> {
        BicomplexScalar::from_idempotent(self.v1[k].clone(), self.v2[k].clone())
    }

    pub fn entries(&self) -> Vec<BicomplexScalar<F>> {
        (0..self.len()).map(|k| self.entry(k)).collect()
    }

    pub fn scale(&self, s: &BicomplexScalar<F>) -> Self {
        BicomplexVector {
            v1: self.v1.iter().map(|x| x.clone() * s.c1.clone()).collect(),
            v2: self.v2.iter().map(|x| x.clone() * s.c2.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch("vector lengths differ".into()));
        }
        let sum = |a: &[F], b: &[F]| a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect();
        Ok(BicomplexVector {
            v1: sum(&self.v1, &other.v1),
            v2: sum(&self.v2, &other.v2),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BicomplexScalar::one()))
    }

    /// Whether both idempotent components are nonzero, the eigenvector
    /// convention for bicomplex matrices.
    pub fn both_components_nonzero(&self) -> bool {
        self.v1.iter().any(|x| !x.is_zero()) && self.v2.iter().any(|x| !x.is_zero())
    }

    pub fn to_c64(&self) -> BicomplexVector<C64> {
        BicomplexVector {
            v1: self.v1.iter().map(ComplexField::to_c64).collect(),
            v2: self.v2.iter().map(ComplexField::to_c64).collect(),
        }
    }

    /// Squared Euclidean norms of the two components.
    pub fn component_norms_sqr(&self) -> (F::Real, F::Real) {
        (norm_sqr(&self.v1), norm_sqr(&self.v2))
    }
}

fn norm_sqr<F: ComplexField>(v: &[F]) -> F::Real {
    v.iter()
        .map(ComplexField::norm_sqr)
        .fold(<F::Real as crate::field::RealField>::zero(), |a, b| a + b)
}

/// Complex inner product `Σ x_k conj(y_k)`.
pub fn complex_inner<F: ComplexField>(x: &[F], y: &[F]) -> F {
    x.iter()
        .zip(y)
        .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.conj())
}

/// Bicomplex inner product `⟨x, y⟩ = ⟨x1, y1⟩ e + ⟨x2, y2⟩ e†`.
pub fn inner_product<F: ComplexField>(
    x: &BicomplexVector<F>,
    y: &BicomplexVector<F>,
) -> Result<BicomplexScalar<F>> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "inner product of vectors of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(BicomplexScalar::from_idempotent(
        complex_inner(&x.v1, &y.v1),
        complex_inner(&x.v2, &y.v2),
    ))
}

/// `‖x‖ₕ = ‖x1‖ e + ‖x2‖ e†` (squared on exact backends).
pub fn vector_hyperbolic_norm<F: ComplexField>(x: &BicomplexVector<F>) -> HyperbolicValue<F::Real> {
    let (n1, n2) = x.component_norms_sqr();
    let (h1, h2) = (F::modulus_from_norm_sqr(n1), F::modulus_from_norm_sqr(n2));
    if F::EXACT {
        HyperbolicValue::from_squared(h1, h2).expect("squared norms are nonnegative")
    } else {
        HyperbolicValue::new(h1, h2).expect("norms are nonnegative")
    }
}
