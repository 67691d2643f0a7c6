//! Invariant-subspace lattices built from Jordan chains.
//!
//! For each component, a node is a tuple `(a1, …, ak)` with `0 ≤ ai ≤ ni`
//! over the Jordan block sizes; it stands for the span of the first `ai`
//! chain vectors of block `i`. The bicomplex lattice is the product of the
//! two component lattices under the componentwise order.
//!
//! When a component has several blocks for one eigenvalue its true lattice
//! of invariant subspaces is infinite. The diagrams then show only the
//! Jordan-basis-aligned representatives, which is reported through
//! [`Lattice::complete`] and [`Lattice::warnings`].

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{format_gauss, ComplexField, GaussRational};
use crate::jordan::{bicomplex_jordan, ComplexJordanData};
use crate::matrix::{BicomplexMatrix, Matrix};

type Q = GaussRational;

/// A subspace of `Qⁿ` stored by the nonzero rows of its reduced echelon form.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in ambient dimension {ambient}",
                v.len()
            )));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let (r, pivots) = Matrix::from_rows(vectors.to_vec())?.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::<Q>::identity(ambient).columns(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        if v.iter().all(ComplexField::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(usize::MAX) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() <= other.dim()
            && self.basis.iter().all(|v| other.contains_vector(v))
    }

    /// `A·S ⊆ S`, decided by comparing `rank([basis | A·basis])` with `dim S`.
    pub fn is_invariant_under(&self, a: &Matrix<Q>) -> Result<bool> {
        if a.shape() != (self.ambient, self.ambient) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix against subspace of dimension-{} space",
                a.rows(),
                a.cols(),
                self.ambient
            )));
        }
        if self.basis.is_empty() {
            return Ok(true);
        }
        let mut rows = self.basis.clone();
        for v in &self.basis {
            rows.push(a.mul_vec(v)?);
        }
        Ok(Matrix::from_rows(rows)?.rank() == self.dim())
    }
}

/// `S1 e ⊕ S2 e†`.
#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexSubspace {
    pub s1: Subspace,
    pub s2: Subspace,
}

impl BicomplexSubspace {
    pub fn new(s1: Subspace, s2: Subspace) -> Result<Self> {
        if s1.ambient() != s2.ambient() {
            return Err(Error::ShapeMismatch(
                "component subspaces live in different dimensions".into(),
            ));
        }
        Ok(BicomplexSubspace { s1, s2 })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.s1.dim(), self.s2.dim())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.s1.is_subspace_of(&other.s1) && self.s2.is_subspace_of(&other.s2)
    }
}

/// True iff `A1·S1 ⊆ S1` and `A2·S2 ⊆ S2`.
pub fn is_invariant(a: &BicomplexMatrix<Q>, s: &BicomplexSubspace) -> Result<bool> {
    Ok(s.s1.is_invariant_under(a.m1())? && s.s2.is_invariant_under(a.m2())?)
}

/// Elements that can sit in a lattice diagram.
pub trait LatticeElement: Clone {
    fn total_dim(&self) -> usize;
    fn dims(&self) -> Vec<usize>;
    fn leq(&self, other: &Self) -> bool;
}

impl LatticeElement for Subspace {
    fn total_dim(&self) -> usize {
        self.dim()
    }
    fn dims(&self) -> Vec<usize> {
        vec![self.dim()]
    }
    fn leq(&self, other: &Self) -> bool {
        self.is_subspace_of(other)
    }
}

impl LatticeElement for BicomplexSubspace {
    fn total_dim(&self) -> usize {
        self.s1.dim() + self.s2.dim()
    }
    fn dims(&self) -> Vec<usize> {
        vec![self.s1.dim(), self.s2.dim()]
    }
    fn leq(&self, other: &Self) -> bool {
        self.is_subspace_of(other)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeNode<S> {
    pub label: String,
    pub tuple: Vec<usize>,
    pub subspace: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lattice<S> {
    pub nodes: Vec<LatticeNode<S>>,
    /// `(lower, upper)` node indices.
    pub covers: Vec<(usize, usize)>,
    pub complete: bool,
    pub warnings: Vec<String>,
}

const PARTIAL_WARNING: &str = "an eigenvalue has several Jordan blocks; the invariant-subspace \
     lattice is infinite and only Jordan-basis-aligned representatives are shown";

fn tuple_label(t: &[usize]) -> String {
    format!("Z({})", t.iter().join(","))
}

/// Prefix-span lattice of one component.
///
/// Every node is checked for invariance against `P J P⁻¹`.
pub fn component_lattice(data: &ComplexJordanData) -> Result<Lattice<Subspace>> {
    let n = data.dim();
    let sizes: Vec<usize> = data.blocks.iter().map(|b| b.size()).collect();
    let tuples: Vec<Vec<usize>> = sizes
        .iter()
        .map(|&s| 0..=s)
        .multi_cartesian_product()
        .collect();
    // multi_cartesian_product yields nothing for zero factors
    let tuples = if sizes.is_empty() { vec![Vec::new()] } else { tuples };

    let a = reconstruct(data)?;
    let mut nodes = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let vectors: Vec<Vec<Q>> = data
            .blocks
            .iter()
            .zip(t)
            .flat_map(|(b, &k)| b.chain[..k].iter().cloned())
            .collect();
        let subspace = Subspace::span(n, &vectors)?;
        if !subspace.is_invariant_under(&a)? {
            return Err(Error::ConsistencyFailure(format!(
                "prefix span {} is not invariant",
                tuple_label(t)
            )));
        }
        nodes.push(LatticeNode {
            label: tuple_label(t),
            tuple: t.clone(),
            subspace,
        });
    }
    let covers = tuple_covers(&tuples);

    let mut seen = BTreeSet::new();
    let complete = data
        .blocks
        .iter()
        .all(|b| seen.insert(format_gauss(&b.eigenvalue)));
    let warnings = if complete {
        Vec::new()
    } else {
        vec![PARTIAL_WARNING.to_string()]
    };
    Ok(Lattice {
        nodes,
        covers,
        complete,
        warnings,
    })
}

fn reconstruct(data: &ComplexJordanData) -> Result<Matrix<Q>> {
    let p_inv = data
        .transition
        .inverse(0.0)?
        .ok_or_else(|| Error::ConsistencyFailure("singular Jordan transition matrix".into()))?;
    data.transition.mul(&data.jordan)?.mul(&p_inv)
}

/// Pairs of tuples that differ by +1 in exactly one coordinate.
fn tuple_covers(tuples: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, lo) in tuples.iter().enumerate() {
        for (j, hi) in tuples.iter().enumerate() {
            let mut diff = lo.iter().zip(hi).filter(|(a, b)| a != b);
            if let (Some((a, b)), None) = (diff.next(), diff.next()) {
                if *b == *a + 1 {
                    covers.push((i, j));
                }
            }
        }
    }
    covers
}

/// Cartesian product of two lattices with the componentwise order.
pub fn product_lattice(
    l1: &Lattice<Subspace>,
    l2: &Lattice<Subspace>,
) -> Result<Lattice<BicomplexSubspace>> {
    let mut nodes = Vec::with_capacity(l1.nodes.len() * l2.nodes.len());
    for x in &l1.nodes {
        for y in &l2.nodes {
            nodes.push(LatticeNode {
                label: format!("[{} | {}]", x.label, y.label),
                tuple: x.tuple.iter().chain(&y.tuple).copied().collect(),
                subspace: BicomplexSubspace::new(x.subspace.clone(), y.subspace.clone())?,
            });
        }
    }
    let m = l2.nodes.len();
    let mut covers = Vec::new();
    for &(lo, hi) in &l1.covers {
        for k in 0..m {
            covers.push((lo * m + k, hi * m + k));
        }
    }
    for i in 0..l1.nodes.len() {
        for &(lo, hi) in &l2.covers {
            covers.push((i * m + lo, i * m + hi));
        }
    }
    covers.sort_unstable();
    let mut warnings = l1.warnings.clone();
    for w in &l2.warnings {
        if !warnings.contains(w) {
            warnings.push(w.clone());
        }
    }
    Ok(Lattice {
        nodes,
        covers,
        complete: l1.complete && l2.complete,
        warnings,
    })
}

/// Lattice of `S1 e ⊕ S2 e†` built from the Jordan data of each component.
/// Every node is checked with [`is_invariant`] against `a`.
pub fn bicomplex_lattice(a: &BicomplexMatrix<Q>) -> Result<Lattice<BicomplexSubspace>> {
    let data = bicomplex_jordan(a)?;
    let lattice = product_lattice(
        &component_lattice(&data.comp1)?,
        &component_lattice(&data.comp2)?,
    )?;
    for node in &lattice.nodes {
        if !is_invariant(a, &node.subspace)? {
            return Err(Error::ConsistencyFailure(format!(
                "node {} is not invariant",
                node.label
            )));
        }
    }
    Ok(lattice)
}

impl<S: LatticeElement> Lattice<S> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Checks that the covers are exactly the transitive reduction of
    /// containment between node subspaces, and that there is a unique
    /// bottom and top.
    pub fn verify_order(&self) -> Result<()> {
        let n = self.nodes.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.nodes[i].subspace.leq(&self.nodes[j].subspace))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::ConsistencyFailure(format!(
                        "nodes {} and {} are equal subspaces",
                        self.nodes[i].label, self.nodes[j].label
                    )));
                }
            }
        }
        let mut expected = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && leq[i][j]
                    && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j])
                {
                    expected.insert((i, j));
                }
            }
        }
        let actual: BTreeSet<(usize, usize)> = self.covers.iter().copied().collect();
        if actual != expected || actual.len() != self.covers.len() {
            return Err(Error::ConsistencyFailure(
                "covers are not the transitive reduction of containment".into(),
            ));
        }
        let bottoms = (0..n).filter(|&i| (0..n).all(|j| leq[i][j])).count();
        let tops = (0..n).filter(|&j| (0..n).all(|i| leq[i][j])).count();
        if bottoms != 1 || tops != 1 {
            return Err(Error::ConsistencyFailure(format!(
                "expected one bottom and one top, found {bottoms} and {tops}"
            )));
        }
        Ok(())
    }

    /// Graphviz digraph, bottom to top, nodes of equal total dimension on
    /// one rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        let _ = writeln!(out, "  comment=\"complete={}\";", self.complete);
        for w in &self.warnings {
            let _ = writeln!(out, "  // warning: {w}");
        }
        out.push_str("  node [shape=box];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let dims = node.subspace.dims().iter().join(",");
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}\\ndim ({dims})\"];",
                node.label.replace('"', "\\\"")
            );
        }
        let by_dim = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, node)| (node.subspace.total_dim(), i))
            .into_group_map();
        for d in by_dim.keys().sorted() {
            let ids = by_dim[d].iter().map(|i| format!("n{i};")).join(" ");
            let _ = writeln!(out, "  {{ rank=same; {ids} }}");
        }
        for (lo, hi) in &self.covers {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }
}
