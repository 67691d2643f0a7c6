use std::fmt;

use crate::error::{Error, Result};
use crate::field::{ComplexField, C64};

/// A dense row-major matrix over a complex coefficient field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Relative pivot threshold for floating-point singularity decisions.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-10;

impl<F: ComplexField> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(n_rows: usize, cols: &[Vec<F>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != n_rows) {
            return Err(Error::ShapeMismatch("column length mismatch".into()));
        }
        Ok(Matrix::from_fn(n_rows, cols.len(), |r, c| cols[c][r].clone()))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                entries[r].clone()
            } else {
                F::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn to_c64(&self) -> Matrix<C64> {
        self.map(ComplexField::to_c64)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        self.require_square()?;
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// `self - λ I`.
    pub fn shift(&self, lambda: &F) -> Result<Self> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, i, self.get(i, i).clone() - lambda.clone());
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.to_c64().norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ComplexField::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Determinant: fraction-free Bareiss elimination on exact backends,
    /// partially pivoted LU on floating backends.
    pub fn determinant(&self) -> Result<F> {
        self.require_square()?;
        if F::EXACT {
            Ok(bareiss_determinant(self))
        } else {
            Ok(lu_determinant(self))
        }
    }

    /// Singularity decision. Exact backends test `det == 0`; floating backends
    /// compare the smallest LU pivot against `rel_tol` times the largest entry.
    pub fn is_singular(&self, rel_tol: f64) -> Result<bool> {
        self.require_square()?;
        if F::EXACT {
            return Ok(self.determinant()?.is_zero());
        }
        let scale = self.max_abs();
        if scale == 0.0 {
            return Ok(self.rows > 0);
        }
        let (_, pivots, _) = lu_factor(self);
        Ok(pivots
            .iter()
            .any(|p| p.is_negligible(scale, rel_tol)))
    }

    /// Gauss-Jordan inverse; `None` when singular per [`is_singular`](Self::is_singular).
    pub fn inverse(&self, rel_tol: f64) -> Result<Option<Self>> {
        self.require_square()?;
        if self.is_singular(rel_tol)? {
            return Ok(None);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = pivot_row(&a, col, col)
                .ok_or_else(|| Error::ConsistencyFailure("lost pivot during inversion".into()))?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let p = a.get(col, col).clone();
            for c in 0..n {
                a.set(col, c, a.get(col, c).clone() / p.clone());
                inv.set(col, c, inv.get(col, c).clone() / p.clone());
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let va = a.get(r, c).clone() - factor.clone() * a.get(col, c).clone();
                    a.set(r, c, va);
                    let vi = inv.get(r, c).clone() - factor.clone() * inv.get(col, c).clone();
                    inv.set(r, c, vi);
                }
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and pivot columns. Pivots are taken
    /// leftmost-first; on floating backends entries below `1e-12` relative to
    /// the largest entry are treated as zero.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let scale = self.max_abs();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows)
                .filter(|&r| !a.get(r, col).is_negligible(scale, 1e-12))
                .max_by(|&x, &y| {
                    if F::EXACT {
                        // first nonzero wins
                        y.cmp(&x)
                    } else {
                        a.get(x, col)
                            .magnitude()
                            .total_cmp(&a.get(y, col).magnitude())
                    }
                })
            else {
                for r in row..self.rows {
                    a.set(r, col, F::zero());
                }
                continue;
            };
            a.swap_rows(row, p);
            let pv = a.get(row, col).clone();
            for c in col..self.cols {
                a.set(row, c, a.get(row, c).clone() / pv.clone());
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = a.get(r, c).clone() - factor.clone() * a.get(row, c).clone();
                    a.set(r, c, v);
                }
                a.set(r, col, F::zero());
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}

fn pivot_row<F: ComplexField>(a: &Matrix<F>, col: usize, from: usize) -> Option<usize> {
    if F::EXACT {
        (from..a.rows).find(|&r| !a.get(r, col).is_zero())
    } else {
        (from..a.rows)
            .filter(|&r| !a.get(r, col).is_zero())
            .max_by(|&x, &y| a.get(x, col).magnitude().total_cmp(&a.get(y, col).magnitude()))
    }
}

fn bareiss_determinant<F: ComplexField>(m: &Matrix<F>) -> F {
    let n = m.rows;
    if n == 0 {
        return F::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = F::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match pivot_row(&a, k, k + 1) {
                Some(p) => {
                    a.swap_rows(k, p);
                    negate = !negate;
                }
                None => return F::zero(),
            }
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j).clone() * akk.clone()
                    - a.get(i, k).clone() * a.get(k, j).clone())
                    / prev.clone();
                a.set(i, j, v);
            }
        }
        prev = akk;
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Partially pivoted LU; returns the packed factors, the pivots and whether the
/// row permutation is odd.
fn lu_factor<F: ComplexField>(m: &Matrix<F>) -> (Matrix<F>, Vec<F>, bool) {
    let n = m.rows;
    let mut a = m.clone();
    let mut odd = false;
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        match pivot_row(&a, k, k) {
            Some(p) => {
                if p != k {
                    a.swap_rows(k, p);
                    odd = !odd;
                }
            }
            None => {
                pivots.push(F::zero());
                continue;
            }
        }
        let pv = a.get(k, k).clone();
        for i in k + 1..n {
            let l = a.get(i, k).clone() / pv.clone();
            a.set(i, k, l.clone());
            for j in k + 1..n {
                let v = a.get(i, j).clone() - l.clone() * a.get(k, j).clone();
                a.set(i, j, v);
            }
        }
        pivots.push(pv);
    }
    (a, pivots, odd)
}

fn lu_determinant<F: ComplexField>(m: &Matrix<F>) -> F {
    let (_, pivots, odd) = lu_factor(m);
    let d = pivots.into_iter().fold(F::one(), |acc, p| acc * p);
    if odd {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gauss, GaussRational};

    fn qm(rows: &[&[i64]]) -> Matrix<GaussRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| gauss(x, 0)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(qm(&[&[1, 2], &[3, 4]]).determinant().unwrap(), gauss(-2, 0));
        // needs a row swap
        assert_eq!(
            qm(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).determinant().unwrap(),
            gauss(-2, 0)
        );
        assert_eq!(
            qm(&[&[1, 2], &[2, 4]]).determinant().unwrap(),
            gauss(0, 0)
        );
        let f = qm(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).to_c64();
        assert!((f.determinant().unwrap() - C64::new(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse(0.0).unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse(0.0).unwrap().is_none());
        assert!(matches!(
            qm(&[&[1, 2, 3]]).inverse(0.0),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn kernel_and_rank() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|z| z.is_zero()));
        }
    }

    #[test]
    fn float_singularity_is_relative() {
        let a = Matrix::from_rows(vec![
            vec![C64::new(1e6, 0.0), C64::new(2e6, 0.0)],
            vec![C64::new(1e6, 0.0), C64::new(2e6 * (1.0 + 1e-15), 0.0)],
        ])
        .unwrap();
        assert!(a.is_singular(DEFAULT_SINGULAR_TOL).unwrap());
        assert!(!Matrix::<C64>::identity(3).is_singular(DEFAULT_SINGULAR_TOL).unwrap());
    }
}
