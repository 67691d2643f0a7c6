//! Spectral decomposition of self-adjoint bicomplex matrices.
//!
//! Each component is diagonalized by a cyclic complex Jacobi method. The two
//! unitary factors are then combined as `P = P1 e + P2 Π e†`, where the
//! permutation `Π` says which eigenvalue of the second component is paired
//! with each eigenvalue of the first.

use itertools::Itertools;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::{ComplexField, C64};
use crate::matrix::{BicomplexMatrix, Matrix};

pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralTolerances {
    /// Allowed `‖A − A*‖_F / ‖A‖_F` per component.
    pub self_adjoint: f64,
    /// Minimum eigenvalue gap relative to the spectral radius when pairings
    /// are enumerated.
    pub separation: f64,
    /// Maximum relative reconstruction and unitarity residual.
    pub residual: f64,
}

impl Default for SpectralTolerances {
    fn default() -> Self {
        SpectralTolerances {
            self_adjoint: 1e-10,
            separation: 1e-8,
            residual: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigenData {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix<C64>,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &Matrix<C64>) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a.get(r, c).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// `‖A − A*‖_F / ‖A‖_F`, or the absolute defect for the zero matrix.
pub fn self_adjoint_defect(a: &Matrix<C64>) -> f64 {
    let defect = a.sub(&a.adjoint()).map(|d| d.frobenius_norm()).unwrap_or(f64::INFINITY);
    let scale = a.frobenius_norm();
    if scale > 0.0 {
        defect / scale
    } else {
        defect
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// `tol` bounds the relative self-adjointness defect. Rotations continue
/// until the off-diagonal mass is at rounding level. Each eigenvector is
/// normalized so its largest-modulus entry is real and positive.
pub fn hermitian_eigen(a: &Matrix<C64>, tol: f64) -> Result<HermitianEigenData> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let defect = self_adjoint_defect(a);
    if !(defect <= tol) {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let n = a.rows();
    let half = Complex::new(0.5, 0.0);
    let mut m = a.add(&a.adjoint())?.scale(&half);
    let mut v = Matrix::<C64>::identity(n);
    let target = f64::EPSILON * (n as f64) * m.frobenius_norm();

    let mut sweeps = 0;
    while off_diagonal_norm(&m) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let order: Vec<usize> = (0..n)
        .sorted_by(|&x, &y| m.get(x, x).re.total_cmp(&m.get(y, y).re))
        .collect();
    let values = order.iter().map(|&k| m.get(k, k).re).collect();
    let columns: Vec<Vec<C64>> = order.iter().map(|&k| fix_phase(v.column(k))).collect();
    Ok(HermitianEigenData {
        values,
        vectors: Matrix::from_columns(n, &columns)?,
        sweeps,
    })
}

/// One two-sided rotation zeroing `m[p][q]`: first a diagonal phase turns
/// the pivot real, then a real Jacobi rotation annihilates it.
fn rotate(m: &mut Matrix<C64>, v: &mut Matrix<C64>, p: usize, q: usize) {
    let apq = *m.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq.conj() / r; // e^{-iφ}
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let g_pp = Complex::new(c, 0.0);
    let g_pq = Complex::new(s, 0.0);
    let g_qp = phase * -s;
    let g_qq = phase * c;

    let n = m.rows();
    for k in 0..n {
        let (xp, xq) = (*m.get(k, p), *m.get(k, q));
        m.set(k, p, xp * g_pp + xq * g_qp);
        m.set(k, q, xp * g_pq + xq * g_qq);
        let (yp, yq) = (*v.get(k, p), *v.get(k, q));
        v.set(k, p, yp * g_pp + yq * g_qp);
        v.set(k, q, yp * g_pq + yq * g_qq);
    }
    for k in 0..n {
        let (xp, xq) = (*m.get(p, k), *m.get(q, k));
        m.set(p, k, g_pp.conj() * xp + g_qp.conj() * xq);
        m.set(q, k, g_pq.conj() * xp + g_qq.conj() * xq);
    }
    m.set(p, q, C64::zero());
    m.set(q, p, C64::zero());
    m.set(p, p, Complex::new(m.get(p, p).re, 0.0));
    m.set(q, q, Complex::new(m.get(q, q).re, 0.0));
}

fn fix_phase(mut col: Vec<C64>) -> Vec<C64> {
    let mut best = 0;
    for (k, z) in col.iter().enumerate() {
        if z.norm() > col[best].norm() {
            best = k;
        }
    }
    let pivot = col[best];
    if pivot.norm() > 0.0 {
        let u = pivot.conj() / pivot.norm();
        for z in &mut col {
            *z *= u;
        }
    }
    col
}

#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexSpectralData {
    pub p: BicomplexMatrix<C64>,
    pub d: BicomplexMatrix<C64>,
    /// `pairing[i]` is the index (in ascending order) of the second-component
    /// eigenvalue matched with the `i`-th first-component eigenvalue.
    pub pairing: Vec<usize>,
    /// `‖P_k* P_k − I‖_F` per component.
    pub unitarity_residual: (f64, f64),
    /// `‖A_k − P_k D_k P_k*‖_F / ‖A_k‖_F` per component.
    pub reconstruction_residual: (f64, f64),
}

impl BicomplexSpectralData {
    /// Diagonal of `d` as `(first, second)` component pairs.
    pub fn eigenvalue_pairs(&self) -> Vec<(f64, f64)> {
        (0..self.d.rows())
            .map(|k| (self.d.m1().get(k, k).re, self.d.m2().get(k, k).re))
            .collect()
    }

    /// Largest imaginary part on the diagonal of `d`.
    pub fn max_imaginary(&self) -> f64 {
        (0..self.d.rows())
            .flat_map(|k| [self.d.m1().get(k, k).im.abs(), self.d.m2().get(k, k).im.abs()])
            .fold(0.0, f64::max)
    }
}

fn component_eigen(a: &BicomplexMatrix<C64>, tol: f64) -> Result<(HermitianEigenData, HermitianEigenData)> {
    let (r1, r2) = std::thread::scope(|s| {
        let h = s.spawn(|| hermitian_eigen(a.m1(), tol));
        let r2 = hermitian_eigen(a.m2(), tol);
        (h.join().expect("eigensolver worker panicked"), r2)
    });
    Ok((r1?, r2?))
}

fn relative(residual: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual / scale
    } else {
        residual
    }
}

fn assemble(
    a: &BicomplexMatrix<C64>,
    e1: &HermitianEigenData,
    e2: &HermitianEigenData,
    pairing: &[usize],
) -> Result<BicomplexSpectralData> {
    let n = e1.values.len();
    if pairing.len() != n || !pairing.iter().all_unique() || pairing.iter().any(|&k| k >= n) {
        return Err(Error::InvalidArgument(format!(
            "pairing {pairing:?} is not a permutation of 0..{n}"
        )));
    }
    let p1 = e1.vectors.clone();
    let cols2: Vec<Vec<C64>> = pairing.iter().map(|&k| e2.vectors.column(k)).collect();
    let p2 = Matrix::from_columns(n, &cols2)?;
    let d1 = Matrix::diagonal(&e1.values.iter().map(|&x| Complex::new(x, 0.0)).collect::<Vec<_>>());
    let d2 = Matrix::diagonal(
        &pairing
            .iter()
            .map(|&k| Complex::new(e2.values[k], 0.0))
            .collect::<Vec<_>>(),
    );
    let id = Matrix::<C64>::identity(n);
    let unitarity = |p: &Matrix<C64>| -> Result<f64> {
        Ok(p.adjoint().mul(p)?.sub(&id)?.frobenius_norm())
    };
    let recon = |a: &Matrix<C64>, p: &Matrix<C64>, d: &Matrix<C64>| -> Result<f64> {
        let r = a.sub(&p.mul(d)?.mul(&p.adjoint())?)?.frobenius_norm();
        Ok(relative(r, a.frobenius_norm()))
    };
    Ok(BicomplexSpectralData {
        unitarity_residual: (unitarity(&p1)?, unitarity(&p2)?),
        reconstruction_residual: (recon(a.m1(), &p1, &d1)?, recon(a.m2(), &p2, &d2)?),
        p: BicomplexMatrix::new(p1, p2)?,
        d: BicomplexMatrix::new(d1, d2)?,
        pairing: pairing.to_vec(),
    })
}

/// `A = P D P*` with the given pairing of component eigenvalues; `None`
/// pairs them in ascending order.
pub fn selfadjoint_diagonalize(
    a: &BicomplexMatrix<C64>,
    pairing: Option<&[usize]>,
) -> Result<BicomplexSpectralData> {
    selfadjoint_diagonalize_with(a, pairing, &SpectralTolerances::default())
}

pub fn selfadjoint_diagonalize_with(
    a: &BicomplexMatrix<C64>,
    pairing: Option<&[usize]>,
    tol: &SpectralTolerances,
) -> Result<BicomplexSpectralData> {
    let (e1, e2) = component_eigen(a, tol.self_adjoint)?;
    let identity: Vec<usize> = (0..a.rows()).collect();
    assemble(a, &e1, &e2, pairing.unwrap_or(&identity))
}

/// Smallest gap between sorted values.
pub(crate) fn min_gap(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(f64::INFINITY, f64::min)
}

/// One diagonalization per pairing permutation, in lexicographic order of
/// the permutations. Requires simple component spectra.
pub fn enumerate_diagonalizations(a: &BicomplexMatrix<C64>) -> Result<Vec<BicomplexSpectralData>> {
    enumerate_diagonalizations_with(a, &SpectralTolerances::default())
}

pub fn enumerate_diagonalizations_with(
    a: &BicomplexMatrix<C64>,
    tol: &SpectralTolerances,
) -> Result<Vec<BicomplexSpectralData>> {
    let (e1, e2) = component_eigen(a, tol.self_adjoint)?;
    for e in [&e1, &e2] {
        let radius = e.values.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let gap = min_gap(&e.values);
        if gap < tol.separation * radius || (gap == 0.0 && e.values.len() > 1) {
            return Err(Error::DegenerateSpectrum { gap });
        }
    }
    let n = a.rows();
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        let data = assemble(a, &e1, &e2, &perm)?;
        let (r1, r2) = data.reconstruction_residual;
        if r1.max(r2) > tol.residual {
            return Err(Error::ConsistencyFailure(format!(
                "pairing {perm:?} reconstructs with residual ({r1:e}, {r2:e})"
            )));
        }
        out.push(data);
    }
    let expected: usize = (1..=n).product();
    if out.len() != expected {
        return Err(Error::ConsistencyFailure(format!(
            "expected {expected} diagonalizations, produced {}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Matrix<C64> {
        // Gram–Schmidt on random columns
        let mut cols: Vec<Vec<C64>> = Vec::new();
        while cols.len() < n {
            let mut v: Vec<C64> = (0..n)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            for u in &cols {
                let dot: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= dot * y;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                cols.push(v.into_iter().map(|z| z / norm).collect());
            }
        }
        Matrix::from_columns(n, &cols).unwrap()
    }

    #[test]
    fn diagonal_input() {
        let a = Matrix::diagonal(&[c(2.0, 0.0), c(1.0, 0.0)]);
        let e = hermitian_eigen(&a, 1e-10).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0]);
        assert_eq!(e.vectors.column(0), vec![c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn off_diagonal_pair() {
        let z = c(3.0, 4.0);
        let a = Matrix::from_rows(vec![vec![c(0.0, 0.0), z], vec![z.conj(), c(0.0, 0.0)]]).unwrap();
        let e = hermitian_eigen(&a, 1e-10).unwrap();
        assert!((e.values[0] + 5.0).abs() < 1e-12);
        assert!((e.values[1] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Matrix::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        assert!(matches!(hermitian_eigen(&a, 1e-10), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let q = random_unitary(6, &mut rng);
            let d: Vec<C64> = (0..6).map(|_| c(rng.gen_range(-5.0..5.0), 0.0)).collect();
            let a = q.mul(&Matrix::diagonal(&d)).unwrap().mul(&q.adjoint()).unwrap();
            let e = hermitian_eigen(&a, 1e-10).unwrap();
            let v = &e.vectors;
            let dd = Matrix::diagonal(&e.values.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
            let recon = v.mul(&dd).unwrap().mul(&v.adjoint()).unwrap();
            assert!(a.sub(&recon).unwrap().frobenius_norm() <= 1e-10 * a.frobenius_norm());
            let mut expected: Vec<f64> = d.iter().map(|z| z.re).collect();
            expected.sort_by(f64::total_cmp);
            for (x, y) in e.values.iter().zip(&expected) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn phase_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_unitary(4, &mut rng);
        let d: Vec<C64> = (1..=4).map(|k| c(k as f64, 0.0)).collect();
        let a = q.mul(&Matrix::diagonal(&d)).unwrap().mul(&q.adjoint()).unwrap();
        let e = hermitian_eigen(&a, 1e-10).unwrap();
        for col in e.vectors.columns() {
            let big = col.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
            assert!(big.im.abs() < 1e-12 && big.re > 0.0);
        }
    }

    #[test]
    fn one_by_one_has_one_diagonalization() {
        let a = BicomplexMatrix::new(
            Matrix::diagonal(&[c(2.0, 0.0)]),
            Matrix::diagonal(&[c(-1.0, 0.0)]),
        )
        .unwrap();
        assert_eq!(enumerate_diagonalizations(&a).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_spectrum_is_rejected() {
        let a = BicomplexMatrix::<C64>::identity(2);
        assert!(matches!(
            enumerate_diagonalizations(&a),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn three_by_three_pairings() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mk = |rng: &mut ChaCha8Rng, vals: &[f64]| {
            let q = random_unitary(3, rng);
            let d: Vec<C64> = vals.iter().map(|&x| c(x, 0.0)).collect();
            q.mul(&Matrix::diagonal(&d)).unwrap().mul(&q.adjoint()).unwrap()
        };
        let a1 = mk(&mut rng, &[-1.0, 0.5, 3.0]);
        let a2 = mk(&mut rng, &[-2.0, 1.0, 4.0]);
        let a = BicomplexMatrix::new(a1, a2).unwrap();
        let all = enumerate_diagonalizations(&a).unwrap();
        assert_eq!(all.len(), 6);
        let mut pairs: Vec<(i64, i64)> = all
            .iter()
            .flat_map(|d| d.eigenvalue_pairs())
            .map(|(x, y)| ((x * 10.0).round() as i64, (y * 10.0).round() as i64))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 9);
    }
}
