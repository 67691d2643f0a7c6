//! Operators on finite-dimensional bicomplex Hilbert spaces `ℂⁿ e + ℂⁿ e†`.
//!
//! Statements about compact operators on infinite-dimensional spaces are
//! examined here on truncation towers: a fixed coefficient sequence `σᵢ`
//! generates operators `K_n` of growing size and each truncation is
//! reported on separately.

use itertools::Itertools;
use num_complex::Complex;

use crate::error::{Component, Error, Result};
use crate::field::{ComplexField, GaussRational, Tolerance, C64};
use crate::matrix::{
    complex_inner, inner_product, BicomplexMatrix, BicomplexVector, Matrix, DEFAULT_SINGULAR_TOL,
};
use crate::poly::{char_poly, split_eigenvalues};
use crate::scalar::{BicomplexScalar, HyperbolicValue};
use crate::spectral::hermitian_eigen;

const EIGEN_TOL: f64 = 1e-10;
const ORTHOGONALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BicomplexHilbertSpace {
    dim: usize,
}

impl BicomplexHilbertSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(BicomplexHilbertSpace { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, v: &BicomplexVector<C64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }
}

/// `K(f) = Σ σᵢ ⟨f, gᵢ⟩ hᵢ` with orthogonal families `gᵢ`, `hᵢ` and
/// hyperbolic-nonnegative `σᵢ`. When no `hᵢ` are given they coincide with
/// the `gᵢ`, which is the self-adjoint canonical form.
#[derive(Debug, Clone)]
pub struct FiniteRankOperator {
    space: BicomplexHilbertSpace,
    sigmas: Vec<HyperbolicValue<f64>>,
    gs: Vec<BicomplexVector<C64>>,
    hs: Option<Vec<BicomplexVector<C64>>>,
}

/// Largest `|⟨xᵢ, xⱼ⟩| / (‖xᵢ‖ ‖xⱼ‖)` over `i ≠ j`, per component.
pub fn orthogonality_defect(family: &[BicomplexVector<C64>]) -> (f64, f64) {
    let mut worst: (f64, f64) = (0.0, 0.0);
    let norm = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for (i, j) in (0..family.len()).tuple_combinations() {
        let (a, b) = (&family[i], &family[j]);
        let rel = |x: &[C64], y: &[C64]| {
            let s = norm(x) * norm(y);
            if s > 0.0 {
                complex_inner(x, y).norm() / s
            } else {
                0.0
            }
        };
        worst.0 = worst.0.max(rel(&a.v1, &b.v1));
        worst.1 = worst.1.max(rel(&a.v2, &b.v2));
    }
    worst
}

impl FiniteRankOperator {
    pub fn new(
        space: BicomplexHilbertSpace,
        sigmas: Vec<HyperbolicValue<f64>>,
        gs: Vec<BicomplexVector<C64>>,
    ) -> Result<Self> {
        Self::build(space, sigmas, gs, None)
    }

    pub fn with_outputs(
        space: BicomplexHilbertSpace,
        sigmas: Vec<HyperbolicValue<f64>>,
        gs: Vec<BicomplexVector<C64>>,
        hs: Vec<BicomplexVector<C64>>,
    ) -> Result<Self> {
        Self::build(space, sigmas, gs, Some(hs))
    }

    fn build(
        space: BicomplexHilbertSpace,
        sigmas: Vec<HyperbolicValue<f64>>,
        gs: Vec<BicomplexVector<C64>>,
        hs: Option<Vec<BicomplexVector<C64>>>,
    ) -> Result<Self> {
        if sigmas.len() != gs.len() || hs.as_ref().is_some_and(|h| h.len() != gs.len()) {
            return Err(Error::ShapeMismatch(
                "coefficient and vector families differ in length".into(),
            ));
        }
        for v in gs.iter().chain(hs.iter().flatten()) {
            space.check(v)?;
        }
        for family in std::iter::once(&gs).chain(hs.as_ref()) {
            let (d1, d2) = orthogonality_defect(family);
            if d1.max(d2) > ORTHOGONALITY_TOL {
                return Err(Error::InvalidArgument(format!(
                    "vector family is not orthogonal (defect {:e})",
                    d1.max(d2)
                )));
            }
        }
        Ok(FiniteRankOperator {
            space,
            sigmas,
            gs,
            hs,
        })
    }

    pub fn space(&self) -> BicomplexHilbertSpace {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.sigmas.len()
    }

    pub fn sigmas(&self) -> &[HyperbolicValue<f64>] {
        &self.sigmas
    }

    pub fn gs(&self) -> &[BicomplexVector<C64>] {
        &self.gs
    }

    pub fn hs(&self) -> &[BicomplexVector<C64>] {
        self.hs.as_deref().unwrap_or(&self.gs)
    }

    /// True when the output family is the input family.
    pub fn is_canonical_form(&self) -> bool {
        self.hs.is_none()
    }

    /// Evaluates the sum directly.
    pub fn apply(&self, f: &BicomplexVector<C64>) -> Result<BicomplexVector<C64>> {
        self.space.check(f)?;
        let mut out = BicomplexVector::zeros(self.space.dim);
        for ((sigma, g), h) in self.sigmas.iter().zip(&self.gs).zip(self.hs()) {
            let (s1, s2) = sigma.to_f64();
            let c = inner_product(f, g)?;
            let coeff = BicomplexScalar::from_idempotent(c.c1 * s1, c.c2 * s2);
            out = out.add(&h.scale(&coeff))?;
        }
        Ok(out)
    }

    /// Dense form `Σ σᵢ hᵢ gᵢ*`.
    pub fn to_matrix(&self) -> BicomplexMatrix<C64> {
        let n = self.space.dim;
        let dense = |pick: fn(&BicomplexVector<C64>) -> &Vec<C64>, comp: usize| {
            Matrix::from_fn(n, n, |r, c| {
                self.sigmas
                    .iter()
                    .zip(&self.gs)
                    .zip(self.hs())
                    .fold(C64::zero(), |acc, ((sigma, g), h)| {
                        let s = if comp == 1 { sigma.to_f64().0 } else { sigma.to_f64().1 };
                        acc + pick(h)[r] * pick(g)[c].conj() * s
                    })
            })
        };
        BicomplexMatrix::new(dense(|v| &v.v1, 1), dense(|v| &v.v2, 2))
            .expect("components share a shape")
    }
}

/// `‖T‖ₕ = ‖T1‖ e + ‖T2‖ e†`, each the largest singular value.
pub fn hyperbolic_operator_norm(t: &BicomplexMatrix<C64>) -> Result<HyperbolicValue<f64>> {
    let norm = |m: &Matrix<C64>| -> Result<f64> {
        let gram = m.adjoint().mul(m)?;
        let e = hermitian_eigen(&gram, EIGEN_TOL)?;
        Ok(e.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
    };
    HyperbolicValue::new(norm(t.m1())?, norm(t.m2())?)
}

/// An eigenvalue with an eigenvector whose components are both nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPoint<F> {
    pub eigenvalue: BicomplexScalar<F>,
    pub eigenvector: BicomplexVector<F>,
    /// Both idempotent components of the eigenvalue are nonzero.
    pub invertible: bool,
}

/// Spectrum of a bicomplex matrix.
///
/// `ζI − T` fails to be invertible as soon as one component is singular, so
/// the spectrum contains every `λ1 e + μ e†` with `λ1 ∈ spec(T1)` and `μ`
/// arbitrary (and symmetrically). It is kept as the two component spectra
/// with a membership test. The point spectrum is finite and listed.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpectrum<F> {
    pub spec1: Vec<F>,
    pub spec2: Vec<F>,
    pub point_spectrum: Vec<SpectralPoint<F>>,
    tol: Tolerance,
}

impl<F: ComplexField> OperatorSpectrum<F> {
    fn from_components(spec1: Vec<(F, Vec<F>)>, spec2: Vec<(F, Vec<F>)>, tol: Tolerance) -> Self {
        let point_spectrum = spec1
            .iter()
            .cartesian_product(&spec2)
            .map(|((l1, v1), (l2, v2))| SpectralPoint {
                eigenvalue: BicomplexScalar::from_idempotent(l1.clone(), l2.clone()),
                eigenvector: BicomplexVector {
                    v1: v1.clone(),
                    v2: v2.clone(),
                },
                invertible: !l1.is_zero() && !l2.is_zero(),
            })
            .collect();
        OperatorSpectrum {
            spec1: spec1.into_iter().map(|(l, _)| l).collect(),
            spec2: spec2.into_iter().map(|(l, _)| l).collect(),
            point_spectrum,
            tol,
        }
    }

    pub fn contains(&self, lambda: &BicomplexScalar<F>) -> bool {
        self.spec1.iter().any(|l| l.approx_eq(&lambda.c1, &self.tol))
            || self.spec2.iter().any(|l| l.approx_eq(&lambda.c2, &self.tol))
    }

    pub fn is_eigenvalue(&self, lambda: &BicomplexScalar<F>) -> bool {
        self.spec1.iter().any(|l| l.approx_eq(&lambda.c1, &self.tol))
            && self.spec2.iter().any(|l| l.approx_eq(&lambda.c2, &self.tol))
    }
}

fn require_square<F: ComplexField>(t: &BicomplexMatrix<F>) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    Ok(())
}

/// Exact spectrum via the characteristic polynomials.
pub fn spectrum_exact(t: &BicomplexMatrix<GaussRational>) -> Result<OperatorSpectrum<GaussRational>> {
    require_square(t)?;
    let component = |m: &Matrix<GaussRational>, which| -> Result<Vec<(GaussRational, Vec<GaussRational>)>> {
        let roots = split_eigenvalues(&char_poly(m)?).map_err(|e| e.tag_component(which))?;
        roots
            .into_iter()
            .map(|(l, _)| {
                let v = m.shift(&l)?.kernel().into_iter().next().ok_or_else(|| {
                    Error::ConsistencyFailure("eigenvalue without eigenvector".into())
                })?;
                Ok((l, v))
            })
            .collect()
    };
    Ok(OperatorSpectrum::from_components(
        component(t.m1(), Component::First)?,
        component(t.m2(), Component::Second)?,
        Tolerance { abs: 0.0, rel: 0.0 },
    ))
}

/// Spectrum of a self-adjoint matrix on the floating backend. Eigenvalues
/// closer than `1e-9` relative to the spectral radius are merged.
pub fn spectrum_selfadjoint(t: &BicomplexMatrix<C64>) -> Result<OperatorSpectrum<C64>> {
    require_square(t)?;
    let component = |m: &Matrix<C64>| -> Result<Vec<(C64, Vec<C64>)>> {
        let e = hermitian_eigen(m, EIGEN_TOL)?;
        let radius = e.values.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let mut out: Vec<(C64, Vec<C64>)> = Vec::new();
        for (k, &x) in e.values.iter().enumerate() {
            if out.last().is_some_and(|(l, _)| (x - l.re).abs() <= 1e-9 * radius) {
                continue;
            }
            out.push((Complex::new(x, 0.0), e.vectors.column(k)));
        }
        Ok(out)
    };
    Ok(OperatorSpectrum::from_components(
        component(t.m1())?,
        component(t.m2())?,
        Tolerance { abs: 1e-9, rel: 1e-9 },
    ))
}

/// Direct membership test: some component of `λI − T` is singular.
pub fn in_spectrum(t: &BicomplexMatrix<C64>, lambda: &BicomplexScalar<C64>) -> Result<bool> {
    let shifted = t.shift(lambda)?;
    Ok(shifted.m1().is_singular(DEFAULT_SINGULAR_TOL)?
        || shifted.m2().is_singular(DEFAULT_SINGULAR_TOL)?)
}

/// Coefficients `σᵢ = (σ1ᵢ, σ2ᵢ)`, indexed from 1.
#[derive(Debug, Clone, PartialEq)]
pub enum SigmaSequence {
    /// `σᵢ = (i^-p1, i^-p2)`.
    Power { p1: f64, p2: f64 },
    Explicit(Vec<(f64, f64)>),
}

impl SigmaSequence {
    pub fn take(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        match self {
            SigmaSequence::Power { p1, p2 } => {
                if !(*p1 > 0.0 && *p2 > 0.0) {
                    return Err(Error::InvalidArgument(
                        "decay exponents must be positive".into(),
                    ));
                }
                Ok((1..=n)
                    .map(|i| {
                        let x = i as f64;
                        (1.0 / x.powf(*p1), 1.0 / x.powf(*p2))
                    })
                    .collect())
            }
            SigmaSequence::Explicit(v) => {
                if v.len() < n {
                    return Err(Error::InvalidArgument(format!(
                        "sequence has {} terms, truncation needs {n}",
                        v.len()
                    )));
                }
                if v.iter().any(|&(a, b)| !(a >= 0.0 && b >= 0.0)) {
                    return Err(Error::NegativeHyperbolic);
                }
                Ok(v[..n].to_vec())
            }
        }
    }
}

/// The diagonal truncation `K_n f = Σ_{i≤n} σᵢ ⟨f, êᵢ⟩ êᵢ`.
pub fn tower_operator(sigmas: &SigmaSequence, n: usize) -> Result<FiniteRankOperator> {
    let space = BicomplexHilbertSpace::new(n)?;
    let values = sigmas
        .take(n)?
        .into_iter()
        .map(|(a, b)| HyperbolicValue::new(a, b))
        .collect::<Result<Vec<_>>>()?;
    let gs = (0..n).map(|k| BicomplexVector::basis(n, k)).collect();
    FiniteRankOperator::new(space, values, gs)
}

/// Counts computed from one component alone.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentTowerReport {
    pub eigenvalues: usize,
    /// Eigenvalues with `|λ| ≥ ε`.
    pub outside: usize,
    pub min_modulus: f64,
}

/// `λ1 e + μ e†` with `λ1` an eigenvalue of the first component and `μ` off
/// the second component's spectrum. It is invertible and lies in the
/// spectrum, but it is not an eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceWitness {
    pub value: BicomplexScalar<C64>,
    pub in_spectrum: bool,
    pub invertible: bool,
    pub is_eigenvalue: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationReport {
    pub dim: usize,
    /// Size of the materialized eigenvalue family (all pairings).
    pub pairings: usize,
    pub invertible_members: usize,
    /// Invertible members for which an eigenvector with both components
    /// nonzero was found and checked.
    pub certified: usize,
    /// Members `σᵢ` of the generating sequence that are not strictly inside
    /// the hyperbolic ball of radius `ε` around 0.
    pub diagonal_outside_ball: usize,
    /// Members `σᵢ` with both components `> ε`.
    pub diagonal_both_above: usize,
    /// Pairings with both components `> ε`.
    pub pairings_both_above: usize,
    pub min_modulus: (f64, f64),
    /// 0 is adjoined as the limit of the truncations.
    pub zero_adjoined: bool,
    pub slice_witness: Option<SliceWitness>,
    pub components: (ComponentTowerReport, ComponentTowerReport),
}

impl TruncationReport {
    pub fn all_certified(&self) -> bool {
        self.certified == self.invertible_members
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TowerReport {
    pub epsilon: (f64, f64),
    pub truncations: Vec<TruncationReport>,
}

fn component_report(m: &Matrix<C64>, eps: f64) -> Result<ComponentTowerReport> {
    let e = hermitian_eigen(m, EIGEN_TOL)?;
    Ok(ComponentTowerReport {
        eigenvalues: e.values.len(),
        outside: e.values.iter().filter(|x| x.abs() >= eps).count(),
        min_modulus: e.values.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min),
    })
}

/// `v ≠ 0`, `m v ≈ λ v` and `m − λI` is singular.
fn component_eigen_ok(m: &Matrix<C64>, lambda: C64, v: &[C64]) -> Result<bool> {
    let mv = m.mul_vec(v)?;
    let r = mv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(vn > 0.0
        && r <= 1e-9 * (m.frobenius_norm() + lambda.norm()) * vn
        && m.shift(&lambda)?.is_singular(DEFAULT_SINGULAR_TOL)?)
}

/// Examines each truncation `K_n`, `n ∈ dims`, of the diagonal operator
/// generated by `sigmas`.
pub fn check_compact_spectral_properties(
    sigmas: &SigmaSequence,
    dims: &[usize],
    epsilon: (f64, f64),
) -> Result<TowerReport> {
    if !(epsilon.0 > 0.0 && epsilon.1 > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let truncations = dims
        .iter()
        .sorted()
        .dedup()
        .map(|&n| truncation_report(sigmas, n, epsilon))
        .collect::<Result<Vec<_>>>()?;
    Ok(TowerReport {
        epsilon,
        truncations,
    })
}

fn truncation_report(sigmas: &SigmaSequence, n: usize, eps: (f64, f64)) -> Result<TruncationReport> {
    let k = tower_operator(sigmas, n)?;
    let t = k.to_matrix();
    let spec = spectrum_selfadjoint(&t)?;

    // point_spectrum is the row-major product spec1 × spec2, so component
    // checks are done once per component eigenvalue
    let (n1, n2) = (spec.spec1.len(), spec.spec2.len());
    let pts = &spec.point_spectrum;
    let ok1 = (0..n1)
        .map(|i| {
            let p = &pts[i * n2];
            component_eigen_ok(t.m1(), p.eigenvalue.c1, &p.eigenvector.v1)
        })
        .collect::<Result<Vec<_>>>()?;
    let ok2 = (0..n2)
        .map(|j| {
            let p = &pts[j];
            component_eigen_ok(t.m2(), p.eigenvalue.c2, &p.eigenvector.v2)
        })
        .collect::<Result<Vec<_>>>()?;
    let certified = pts
        .iter()
        .enumerate()
        .filter(|(k, p)| {
            p.invertible && p.eigenvector.both_components_nonzero() && ok1[k / n2] && ok2[k % n2]
        })
        .count();

    // each gᵢ is an eigenvector for σᵢ
    let mut diagonal_outside_ball = 0;
    let mut diagonal_both_above = 0;
    for (sigma, g) in k.sigmas().iter().zip(k.gs()) {
        let (s1, s2) = sigma.to_f64();
        let kg = k.apply(g)?;
        let expected = g.scale(&BicomplexScalar::from_idempotent(
            Complex::new(s1, 0.0),
            Complex::new(s2, 0.0),
        ));
        let (r1, r2) = kg.sub(&expected)?.component_norms_sqr();
        if r1.max(r2).sqrt() > 1e-12 {
            return Err(Error::ConsistencyFailure(format!(
                "generating vector is not an eigenvector (residual {:e})",
                r1.max(r2).sqrt()
            )));
        }
        if !(s1 < eps.0 && s2 < eps.1) {
            diagonal_outside_ball += 1;
        }
        if s1 > eps.0 && s2 > eps.1 {
            diagonal_both_above += 1;
        }
    }

    let pairings_both_above = spec
        .point_spectrum
        .iter()
        .filter(|p| p.eigenvalue.c1.norm() > eps.0 && p.eigenvalue.c2.norm() > eps.1)
        .count();
    let modulus = |s: &[C64]| s.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);

    let slice_witness = match (spec.spec1.first(), spec.spec2.is_empty()) {
        (Some(&l1), false) => {
            let radius = spec.spec2.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let value = BicomplexScalar::from_idempotent(l1, Complex::new(2.0 * radius + 1.0, 0.0));
            Some(SliceWitness {
                in_spectrum: in_spectrum(&t, &value)?,
                invertible: value.is_invertible(),
                is_eigenvalue: t.is_eigenvalue(&value)?,
                value,
            })
        }
        _ => None,
    };

    Ok(TruncationReport {
        dim: n,
        pairings: spec.point_spectrum.len(),
        invertible_members: spec.point_spectrum.iter().filter(|p| p.invertible).count(),
        certified,
        diagonal_outside_ball,
        diagonal_both_above,
        pairings_both_above,
        min_modulus: (modulus(&spec.spec1), modulus(&spec.spec2)),
        zero_adjoined: true,
        slice_witness,
        components: (component_report(t.m1(), eps.0)?, component_report(t.m2(), eps.1)?),
    })
}

/// Singular values (descending) with right and left singular vectors.
struct SingularSystem {
    values: Vec<f64>,
    right: Vec<Vec<C64>>,
    left: Vec<Vec<C64>>,
}

fn singular_system(m: &Matrix<C64>) -> Result<SingularSystem> {
    let e = hermitian_eigen(&m.adjoint().mul(m)?, EIGEN_TOL)?;
    let n = e.values.len();
    let values: Vec<f64> = e.values.iter().rev().map(|x| x.max(0.0).sqrt()).collect();
    let right: Vec<Vec<C64>> = (0..n).rev().map(|k| e.vectors.column(k)).collect();
    let top = values.first().copied().unwrap_or(0.0);
    let left = values
        .iter()
        .zip(&right)
        .map(|(&s, v)| {
            if s > f64::EPSILON * (n as f64) * top && s > 0.0 {
                Ok(m.mul_vec(v)?.into_iter().map(|z| z / s).collect())
            } else {
                Ok(vec![C64::zero(); m.rows()])
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SingularSystem {
        values,
        right,
        left,
    })
}

/// Best rank-`r` approximation in the form `Σ σᵢ ⟨f, gᵢ⟩ hᵢ`, built from the
/// singular triples of each component.
pub fn best_rank_approximation(t: &BicomplexMatrix<C64>, r: usize) -> Result<FiniteRankOperator> {
    require_square(t)?;
    let n = t.rows();
    if r > n {
        return Err(Error::InvalidArgument(format!("rank {r} exceeds dimension {n}")));
    }
    let (s1, s2) = (singular_system(t.m1())?, singular_system(t.m2())?);
    let sigmas = (0..r)
        .map(|i| HyperbolicValue::new(s1.values[i], s2.values[i]))
        .collect::<Result<Vec<_>>>()?;
    let pair = |a: &[Vec<C64>], b: &[Vec<C64>]| -> Vec<BicomplexVector<C64>> {
        (0..r)
            .map(|i| BicomplexVector {
                v1: a[i].clone(),
                v2: b[i].clone(),
            })
            .collect()
    };
    let gs = pair(&s1.right, &s2.right);
    let hs = pair(&s1.left, &s2.left);
    let space = BicomplexHilbertSpace::new(n)?;
    let close = gs.iter().zip(&hs).all(|(g, h)| {
        g.v1.iter().chain(&g.v2).zip(h.v1.iter().chain(&h.v2)).all(|(a, b)| (a - b).norm() <= 1e-12)
    });
    if close {
        FiniteRankOperator::new(space, sigmas, gs)
    } else {
        FiniteRankOperator::with_outputs(space, sigmas, gs, hs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationRow {
    pub rank: usize,
    /// `‖T − K_r‖ₕ`.
    pub error: (f64, f64),
    /// The `(r+1)`-th largest singular value per component (0 past the end).
    pub predicted: (f64, f64),
    pub sigmas_nonnegative: bool,
    /// Largest normalized inner product between distinct `gᵢ`, and between
    /// distinct `hᵢ`.
    pub orthogonality_defect: f64,
    pub canonical_form: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationReport {
    pub norm: (f64, f64),
    pub rows: Vec<ApproximationRow>,
}

impl ApproximationReport {
    /// Errors never grow as the rank grows, componentwise.
    pub fn nonincreasing(&self) -> bool {
        let mut rows: Vec<&ApproximationRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| r.rank);
        rows.windows(2).all(|w| {
            let slack = 1e-12 * (1.0 + self.norm.0.max(self.norm.1));
            w[1].error.0 <= w[0].error.0 + slack && w[1].error.1 <= w[0].error.1 + slack
        })
    }
}

/// Error table `‖T − K_r‖ₕ` for each requested rank.
pub fn norm_limit_demo(t: &BicomplexMatrix<C64>, ranks: &[usize]) -> Result<ApproximationReport> {
    require_square(t)?;
    let (s1, s2) = (singular_system(t.m1())?, singular_system(t.m2())?);
    let rows = ranks
        .iter()
        .map(|&r| {
            let k = best_rank_approximation(t, r)?;
            let error = hyperbolic_operator_norm(&t.sub(&k.to_matrix())?)?.to_f64();
            let (g1, g2) = orthogonality_defect(k.gs());
            let (h1, h2) = orthogonality_defect(k.hs());
            Ok(ApproximationRow {
                rank: r,
                error,
                predicted: (
                    s1.values.get(r).copied().unwrap_or(0.0),
                    s2.values.get(r).copied().unwrap_or(0.0),
                ),
                sigmas_nonnegative: k.sigmas().iter().all(|s| {
                    let (a, b) = s.to_f64();
                    a >= 0.0 && b >= 0.0
                }),
                orthogonality_defect: g1.max(g2).max(h1).max(h2),
                canonical_form: k.is_canonical_form(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ApproximationReport {
        norm: hyperbolic_operator_norm(t)?.to_f64(),
        rows,
    })
}

/// Orthonormal basis of the span, by modified Gram–Schmidt with one
/// reorthogonalization pass.
fn orthonormal_basis(vectors: &[&[C64]]) -> Vec<Vec<C64>> {
    let scale = vectors
        .iter()
        .map(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for q in &basis {
                let c = complex_inner(&w, q);
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 * scale {
            basis.push(w.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
}

fn project_out(v: &[C64], basis: &[Vec<C64>]) -> Vec<C64> {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for q in basis {
            let c = complex_inner(&w, q);
            for (x, y) in w.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
    }
    w
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A unit vector at distance exactly `r` from the subspace `X` spanned by
/// `x_basis`: per component `yᵢ = r uᵢ + sqrt(1 − r²) wᵢ` with `uᵢ` a unit
/// vector orthogonal to `Xᵢ` and `wᵢ` a unit vector in `Xᵢ`.
///
/// Both components of `X` must be proper and nonzero.
pub fn riesz_witness(
    space: &BicomplexHilbertSpace,
    x_basis: &[BicomplexVector<C64>],
    r: f64,
) -> Result<BicomplexVector<C64>> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("r = {r} is not in (0, 1)")));
    }
    for v in x_basis {
        space.check(v)?;
    }
    let n = space.dim();
    let component = |pick: fn(&BicomplexVector<C64>) -> &[C64], which| -> Result<Vec<C64>> {
        let vs: Vec<&[C64]> = x_basis.iter().map(pick).collect();
        let q = orthonormal_basis(&vs);
        if q.is_empty() {
            return Err(Error::ZeroSubspace { which });
        }
        if q.len() == n {
            return Err(Error::SubspaceIsFull { which });
        }
        // the standard basis vector farthest from X gives the best-conditioned normal
        let (_, u) = (0..n)
            .map(|k| {
                let mut e = vec![C64::zero(); n];
                e[k] = C64::one();
                let u = project_out(&e, &q);
                (norm(&u), u)
            })
            .fold((0.0, Vec::new()), |best, cand| if cand.0 > best.0 { cand } else { best });
        let u = project_out(&u, &q);
        let un = norm(&u);
        let w = &q[0];
        let s = (1.0 - r * r).sqrt();
        Ok(u.iter().zip(w).map(|(a, b)| a / un * r + b * s).collect())
    };
    Ok(BicomplexVector {
        v1: component(|v| &v.v1, Component::First)?,
        v2: component(|v| &v.v2, Component::Second)?,
    })
}

/// `inf_{x ∈ X} ‖y − x‖ₕ`, from the orthogonal projection onto `X`.
pub fn distance_to_span(
    x_basis: &[BicomplexVector<C64>],
    y: &BicomplexVector<C64>,
) -> (f64, f64) {
    let comp = |pick: fn(&BicomplexVector<C64>) -> &[C64]| {
        let vs: Vec<&[C64]> = x_basis.iter().map(pick).collect();
        norm(&project_out(pick(y), &orthonormal_basis(&vs)))
    };
    (comp(|v| &v.v1), comp(|v| &v.v2))
}

/// Range of `I − K` per component: its rank and how far the orthogonal
/// projector onto the computed range moves the columns of `I − K`. In
/// finite dimensions every range is closed, so the residual only measures
/// rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeReport {
    pub rank: (usize, usize),
    pub projector_residual: (f64, f64),
}

pub fn identity_minus_range(k: &BicomplexMatrix<C64>) -> Result<RangeReport> {
    require_square(k)?;
    let a = BicomplexMatrix::<C64>::identity(k.rows()).sub(k)?;
    let comp = |m: &Matrix<C64>| -> (usize, f64) {
        let cols = m.columns();
        let refs: Vec<&[C64]> = cols.iter().map(Vec::as_slice).collect();
        let q = orthonormal_basis(&refs);
        let residual = cols.iter().map(|c| norm(&project_out(c, &q))).fold(0.0, f64::max);
        (q.len(), residual)
    };
    let (r1, p1) = comp(a.m1());
    let (r2, p2) = comp(a.m2());
    Ok(RangeReport {
        rank: (r1, r2),
        projector_residual: (p1, p2),
    })
}
