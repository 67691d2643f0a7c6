//! Exact Jordan canonical forms.
//!
//! Each idempotent component is put in complex Jordan form over the Gaussian
//! rationals; the bicomplex form is assembled as `P = P1 e + P2 e†`,
//! `J = J1 e + J2 e†`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Component, Error, Result};
use crate::field::{ComplexField, GaussRational};
use crate::matrix::{BicomplexMatrix, Matrix};
use crate::poly::{char_poly, split_eigenvalues};
use crate::scalar::BicomplexScalar;

type Q = GaussRational;

/// One Jordan block with its chain of generalized eigenvectors.
///
/// `chain[0]` is an eigenvector and `(A - λI) chain[k] = chain[k - 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanBlock {
    pub eigenvalue: Q,
    pub chain: Vec<Vec<Q>>,
}

impl JordanBlock {
    pub fn size(&self) -> usize {
        self.chain.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexJordanData {
    /// Distinct eigenvalues sorted by `(re, im)`.
    pub eigenvalues: Vec<Q>,
    /// Blocks grouped by eigenvalue, each group in descending size.
    pub blocks: Vec<JordanBlock>,
    pub transition: Matrix<Q>,
    pub jordan: Matrix<Q>,
}

impl ComplexJordanData {
    pub fn dim(&self) -> usize {
        self.transition.rows()
    }

    /// Block-size multiset per eigenvalue, in eigenvalue order.
    pub fn block_sizes(&self) -> Vec<(Q, Vec<usize>)> {
        self.eigenvalues
            .iter()
            .map(|lam| {
                let mut sizes: Vec<usize> = self
                    .blocks
                    .iter()
                    .filter(|b| &b.eigenvalue == lam)
                    .map(JordanBlock::size)
                    .collect();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                (lam.clone(), sizes)
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| b.size() == 1)
    }

    /// The same decomposition with blocks reordered by `order`.
    pub fn with_block_order(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.blocks.len() || !order.iter().all_unique() {
            return Err(Error::InvalidArgument("block order must be a permutation".into()));
        }
        let blocks: Vec<JordanBlock> = order.iter().map(|&k| self.blocks[k].clone()).collect();
        let (transition, jordan) = assemble(self.dim(), &blocks)?;
        Ok(ComplexJordanData {
            eigenvalues: self.eigenvalues.clone(),
            blocks,
            transition,
            jordan,
        })
    }
}

fn assemble(n: usize, blocks: &[JordanBlock]) -> Result<(Matrix<Q>, Matrix<Q>)> {
    let columns: Vec<Vec<Q>> = blocks.iter().flat_map(|b| b.chain.iter().cloned()).collect();
    let p = Matrix::from_columns(n, &columns)?;
    let mut j = Matrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        for k in 0..b.size() {
            j.set(offset + k, offset + k, b.eigenvalue.clone());
            if k > 0 {
                j.set(offset + k - 1, offset + k, Q::one());
            }
        }
        offset += b.size();
    }
    Ok((p, j))
}

fn rank_of(n: usize, vectors: &[Vec<Q>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_columns(n, vectors)?.rank())
}

/// Complex Jordan form of an exact matrix whose characteristic polynomial
/// splits over the Gaussian rationals.
///
/// Block sizes come from the kernel dimensions of `(A - λI)^k`; chains are
/// built from the largest blocks down, picking leftmost kernel basis vectors
/// independent of what is already spanned. `A P = P J` is verified before
/// returning.
pub fn complex_jordan(a: &Matrix<Q>) -> Result<ComplexJordanData> {
    let poly = char_poly(a)?;
    let spectrum = split_eigenvalues(&poly)?;
    let n = a.rows();

    let mut blocks = Vec::new();
    for (lambda, mult) in &spectrum {
        let shifted = a.shift(lambda)?;
        // kernel bases of N^k for k = 0..=k_max
        let mut kernels: Vec<Vec<Vec<Q>>> = vec![Vec::new()];
        let mut power = Matrix::identity(n);
        while kernels.last().map_or(0, Vec::len) < *mult {
            power = power.mul(&shifted)?;
            let k = power.kernel();
            if k.len() <= kernels.last().map_or(0, Vec::len) {
                return Err(Error::ConsistencyFailure(
                    "generalized eigenspace stopped growing before reaching algebraic multiplicity"
                        .into(),
                ));
            }
            kernels.push(k);
        }
        let k_max = kernels.len() - 1;
        // at_least[k] = number of blocks of size >= k
        let at_least: Vec<usize> = (0..=k_max + 1)
            .map(|k| {
                if k == 0 || k > k_max {
                    0
                } else {
                    kernels[k].len() - kernels[k - 1].len()
                }
            })
            .collect();

        let mut tops: Vec<(Vec<Q>, usize)> = Vec::new();
        for level in (1..=k_max).rev() {
            let wanted = at_least[level] - at_least[level + 1];
            let mut span: Vec<Vec<Q>> = kernels[level - 1].clone();
            // images of chains already started above this level
            for (top, size) in &tops {
                let mut v = top.clone();
                for _ in 0..(size - level) {
                    v = shifted.mul_vec(&v)?;
                }
                span.push(v);
            }
            let mut rank = rank_of(n, &span)?;
            let mut found = 0;
            for cand in &kernels[level] {
                if found == wanted {
                    break;
                }
                span.push(cand.clone());
                let r = rank_of(n, &span)?;
                if r > rank {
                    rank = r;
                    found += 1;
                    tops.push((cand.clone(), level));
                } else {
                    span.pop();
                }
            }
            if found != wanted {
                return Err(Error::ConsistencyFailure(format!(
                    "could not find {wanted} chain tops at level {level}"
                )));
            }
        }
        for (top, size) in tops {
            let mut chain = vec![top];
            for _ in 1..size {
                let next = shifted.mul_vec(chain.last().expect("nonempty"))?;
                chain.push(next);
            }
            chain.reverse();
            blocks.push(JordanBlock {
                eigenvalue: lambda.clone(),
                chain,
            });
        }
    }

    let (transition, jordan) = assemble(n, &blocks)?;
    if a.mul(&transition)? != transition.mul(&jordan)? || transition.determinant()?.is_zero() {
        return Err(Error::ConsistencyFailure(
            "Jordan data failed A P = P J verification".into(),
        ));
    }
    Ok(ComplexJordanData {
        eigenvalues: spectrum.into_iter().map(|(l, _)| l).collect(),
        blocks,
        transition,
        jordan,
    })
}

/// Superdiagonal entries that can occur in a bicomplex Jordan matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuperdiagonalEntry {
    Zero,
    One,
    E,
    EDagger,
}

impl fmt::Display for SuperdiagonalEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuperdiagonalEntry::Zero => "0",
            SuperdiagonalEntry::One => "1",
            SuperdiagonalEntry::E => "e",
            SuperdiagonalEntry::EDagger => "e†",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexJordanData {
    pub comp1: ComplexJordanData,
    pub comp2: ComplexJordanData,
    pub p: BicomplexMatrix<Q>,
    pub j: BicomplexMatrix<Q>,
}

impl BicomplexJordanData {
    fn from_components(comp1: ComplexJordanData, comp2: ComplexJordanData) -> Result<Self> {
        let p = BicomplexMatrix::new(comp1.transition.clone(), comp2.transition.clone())?;
        let j = BicomplexMatrix::new(comp1.jordan.clone(), comp2.jordan.clone())?;
        Ok(BicomplexJordanData { comp1, comp2, p, j })
    }

    /// `p · j · p⁻¹`.
    pub fn reconstruct(&self) -> Result<BicomplexMatrix<Q>> {
        self.p.mul(&self.j)?.mul(&self.p.inverse()?)
    }

    /// Distinct superdiagonal entries of `j`.
    pub fn superdiagonal_alphabet(&self) -> BTreeSet<SuperdiagonalEntry> {
        let n = self.j.rows();
        (1..n)
            .map(|k| {
                let a = !self.j.m1().get(k - 1, k).is_zero();
                let b = !self.j.m2().get(k - 1, k).is_zero();
                match (a, b) {
                    (false, false) => SuperdiagonalEntry::Zero,
                    (true, true) => SuperdiagonalEntry::One,
                    (true, false) => SuperdiagonalEntry::E,
                    (false, true) => SuperdiagonalEntry::EDagger,
                }
            })
            .collect()
    }

    /// Zero everywhere except the diagonal and first superdiagonal, with
    /// superdiagonal components in `{0, 1}`.
    pub fn is_almost_diagonal(&self) -> bool {
        let n = self.j.rows();
        [self.j.m1(), self.j.m2()].iter().all(|m| {
            (0..n).all(|r| {
                (0..n).all(|c| {
                    let v = m.get(r, c);
                    if c == r {
                        true
                    } else if c == r + 1 {
                        v.is_zero() || *v == Q::one()
                    } else {
                        v.is_zero()
                    }
                })
            })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.j.m1().is_diagonal() && self.j.m2().is_diagonal()
    }

    /// Alternative Jordan forms obtained by reordering the blocks of the
    /// second component against the first. Identical `j` matrices are
    /// reported once. At most `limit` variants are produced.
    pub fn block_permuted_variants(&self, limit: usize) -> Result<Vec<BicomplexJordanData>> {
        let k = self.comp2.blocks.len();
        let mut out: Vec<BicomplexJordanData> = Vec::new();
        for order in (0..k).permutations(k) {
            if out.len() >= limit {
                break;
            }
            let comp2 = self.comp2.with_block_order(&order)?;
            let variant = BicomplexJordanData::from_components(self.comp1.clone(), comp2)?;
            if out.iter().all(|v| v.j != variant.j) {
                out.push(variant);
            }
        }
        Ok(out)
    }
}

/// Bicomplex Jordan form `A = P J P⁻¹`, verified exactly.
pub fn bicomplex_jordan(a: &BicomplexMatrix<Q>) -> Result<BicomplexJordanData> {
    let (r1, r2) = std::thread::scope(|s| {
        let h = s.spawn(|| complex_jordan(a.m1()));
        let r2 = complex_jordan(a.m2());
        (h.join().expect("jordan worker panicked"), r2)
    });
    let comp1 = r1.map_err(|e| e.tag_component(Component::First))?;
    let comp2 = r2.map_err(|e| e.tag_component(Component::Second))?;
    let data = BicomplexJordanData::from_components(comp1, comp2)?;
    if data.reconstruct()? != *a {
        return Err(Error::ConsistencyFailure(
            "bicomplex Jordan form does not reconstruct the input".into(),
        ));
    }
    Ok(data)
}

impl BicomplexMatrix<Q> {
    /// All eigenvalues `λ1 e + λ2 e†` with `λ1 ∈ spec(A1)` and `λ2 ∈ spec(A2)`.
    pub fn eigenvalues(&self) -> Result<Vec<BicomplexScalar<Q>>> {
        let s1 = split_eigenvalues(&char_poly(self.m1())?)
            .map_err(|e| e.tag_component(Component::First))?;
        let s2 = split_eigenvalues(&char_poly(self.m2())?)
            .map_err(|e| e.tag_component(Component::Second))?;
        Ok(s1
            .iter()
            .cartesian_product(s2.iter())
            .map(|((a, _), (b, _))| BicomplexScalar::from_idempotent(a.clone(), b.clone()))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gauss;

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| gauss(x, 0)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn scalar_matrix_has_trivial_blocks() {
        let d = complex_jordan(&qm(&[&[3, 0], &[0, 3]])).unwrap();
        assert_eq!(d.block_sizes(), vec![(gauss(3, 0), vec![1, 1])]);
        assert_eq!(d.jordan, qm(&[&[3, 0], &[0, 3]]));
    }

    #[test]
    fn nilpotent_block() {
        let n = qm(&[&[0, 1], &[0, 0]]);
        let d = complex_jordan(&n).unwrap();
        assert_eq!(d.block_sizes(), vec![(gauss(0, 0), vec![2])]);
        assert_eq!(d.jordan, n);
        assert_eq!(d.transition, Matrix::identity(2));
    }

    #[test]
    fn chains_satisfy_recurrence() {
        let a = qm(&[&[2, 1, 0, 0], &[0, 2, 1, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
        let d = complex_jordan(&a).unwrap();
        assert_eq!(d.block_sizes(), vec![(gauss(2, 0), vec![3, 1])]);
        for b in &d.blocks {
            let shifted = a.shift(&b.eigenvalue).unwrap();
            assert!(shifted.mul_vec(&b.chain[0]).unwrap().iter().all(|z| z.is_zero()));
            for k in 1..b.size() {
                assert_eq!(shifted.mul_vec(&b.chain[k]).unwrap(), b.chain[k - 1]);
            }
        }
    }

    #[test]
    fn complex_eigenvalues() {
        // rotation by 90 degrees: eigenvalues ±i
        let a = qm(&[&[0, -1], &[1, 0]]);
        let d = complex_jordan(&a).unwrap();
        assert_eq!(d.eigenvalues, vec![gauss(0, -1), gauss(0, 1)]);
        assert!(d.is_diagonal());
    }

    #[test]
    fn non_splitting_is_an_error() {
        let a = qm(&[&[0, 2], &[1, 0]]);
        assert!(matches!(complex_jordan(&a), Err(Error::DoesNotSplit { .. })));
        let b = BicomplexMatrix::new(qm(&[&[1, 0], &[0, 1]]), a).unwrap();
        match bicomplex_jordan(&b) {
            Err(Error::DoesNotSplit { component, .. }) => {
                assert_eq!(component, Some(Component::Second))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn idempotent_superdiagonal() {
        let a = BicomplexMatrix::new(qm(&[&[0, 0], &[0, 0]]), qm(&[&[0, 1], &[0, 0]])).unwrap();
        let d = bicomplex_jordan(&a).unwrap();
        assert_eq!(d.j, a);
        assert_eq!(
            d.superdiagonal_alphabet(),
            [SuperdiagonalEntry::EDagger].into_iter().collect()
        );
    }
}
