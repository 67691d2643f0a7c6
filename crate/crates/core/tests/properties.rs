//! Algebraic laws and structural invariants, checked on random inputs.

use bicomplex::field::{gauss, gauss_frac, GaussRational, C64};
use bicomplex::jordan::{bicomplex_jordan, complex_jordan, SuperdiagonalEntry};
use bicomplex::lattice::{bicomplex_lattice, component_lattice, is_invariant};
use bicomplex::matrix::{inner_product, BicomplexMatrix, BicomplexVector, Matrix};
use bicomplex::operator::{
    best_rank_approximation, hyperbolic_operator_norm, orthogonality_defect, FiniteRankOperator,
};
use bicomplex::scalar::{BicomplexScalar, HyperbolicOrdering, HyperbolicValue};
use bicomplex::spectral::{enumerate_diagonalizations, selfadjoint_diagonalize};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

type Q = GaussRational;
type S = BicomplexScalar<Q>;

fn gauss_q() -> impl Strategy<Value = Q> + Clone {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, b, c, d)| gauss_frac(a, b, c, d))
}

/// Small Gaussian integers, with zero well represented.
fn small_gauss() -> impl Strategy<Value = Q> + Clone {
    prop_oneof![1 => Just(gauss(0, 0)), 4 => (-3i64..=3, -2i64..=2).prop_map(|(a, b)| gauss(a, b))]
}

fn scalar() -> impl Strategy<Value = S> {
    (gauss_q(), gauss_q()).prop_map(|(a, b)| S::from_idempotent(a, b))
}

/// Scalars that vanish in a component a third of the time.
fn scalar_with_zero_divisors() -> impl Strategy<Value = S> {
    let comp = prop_oneof![1 => Just(gauss(0, 0)), 2 => gauss_q()];
    (comp.clone(), comp).prop_map(|(a, b)| S::from_idempotent(a, b))
}

fn matrix(rows: usize, cols: usize, entry: impl Strategy<Value = Q> + Clone) -> impl Strategy<Value = Matrix<Q>> {
    proptest::collection::vec(entry, rows * cols).prop_map(move |d| Matrix::new(rows, cols, d).unwrap())
}

fn bimatrix(rows: usize, cols: usize) -> impl Strategy<Value = BicomplexMatrix<Q>> {
    (matrix(rows, cols, gauss_q()), matrix(rows, cols, gauss_q()))
        .prop_map(|(a, b)| BicomplexMatrix::new(a, b).unwrap())
}

fn bivector(n: usize) -> impl Strategy<Value = BicomplexVector<Q>> {
    (proptest::collection::vec(gauss_q(), n), proptest::collection::vec(gauss_q(), n))
        .prop_map(|(a, b)| BicomplexVector::new(a, b).unwrap())
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn hermitian(n: usize) -> impl Strategy<Value = Matrix<C64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |d| {
        let b = Matrix::new(n, n, d.into_iter().map(|(x, y)| c(x, y)).collect()).unwrap();
        b.add(&b.adjoint()).unwrap()
    })
}

/// Upper-triangular exact matrix with the given diagonal.
fn triangular(diag: &[Q], upper: &[Q]) -> Matrix<Q> {
    let n = diag.len();
    let mut it = upper.iter().cycle();
    Matrix::from_fn(n, n, |r, col| match r.cmp(&col) {
        std::cmp::Ordering::Equal => diag[r].clone(),
        std::cmp::Ordering::Less => it.next().cloned().unwrap_or_else(Q::zero),
        std::cmp::Ordering::Greater => Q::zero(),
    })
}

/// A Jordan matrix with blocks of the given sizes and eigenvalues, conjugated by `q`.
fn conjugated_jordan(blocks: &[(Q, usize)], q: &Matrix<Q>) -> Matrix<Q> {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut j = Matrix::<Q>::zeros(n, n);
    let mut at = 0;
    for (ev, size) in blocks {
        for k in at..at + size {
            j.set(k, k, ev.clone());
            if k + 1 < at + size {
                j.set(k, k + 1, gauss(1, 0));
            }
        }
        at += size;
    }
    q.mul(&j).unwrap().mul(&q.inverse(0.0).unwrap().unwrap()).unwrap()
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix<Q>> {
    matrix(n, n, small_gauss()).prop_filter("singular", |m| !m.determinant().unwrap().is_zero())
}

fn jordan_structure(n: usize) -> impl Strategy<Value = Vec<(Q, usize)>> {
    // split n into blocks, eigenvalues drawn from a pool of two to force repeats
    (proptest::collection::vec(1usize..=n, n), small_gauss(), small_gauss(), proptest::collection::vec(any::<bool>(), n))
        .prop_map(move |(sizes, a, b, picks)| {
            let mut out = Vec::new();
            let mut left = n;
            for (s, pick) in sizes.into_iter().zip(picks) {
                if left == 0 {
                    break;
                }
                let s = s.min(left);
                out.push((if pick { a.clone() } else { b.clone() }, s));
                left -= s;
            }
            out
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * S::one(), a.clone());
        prop_assert_eq!(a.clone() + S::zero(), a.clone());
        prop_assert_eq!(a.clone() - a, S::zero());
    }

    #[test]
    fn euclidean_round_trip(z1 in gauss_q(), z2 in gauss_q()) {
        let s = S::from_euclidean(z1.clone(), z2.clone());
        prop_assert_eq!(s.to_euclidean(), (z1, z2));
        let (e1, e2) = s.to_euclidean();
        prop_assert_eq!(S::from_euclidean(e1, e2), s);
    }

    #[test]
    fn invert_fails_exactly_on_zero_divisors(a in scalar_with_zero_divisors()) {
        let singular = a.c1.is_zero() || a.c2.is_zero();
        match a.invert() {
            Ok(inv) => {
                prop_assert!(!singular);
                prop_assert_eq!(a * inv, S::one());
            }
            Err(_) => prop_assert!(singular),
        }
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conjugate(), a.conjugate() * b.conjugate());
        prop_assert_eq!((a.clone() + b.clone()).conjugate(), a.conjugate() + b.conjugate());
        // z conj(z) = |ẑ1|² e + |ẑ2|² e†
        let p = a.clone() * a.conjugate();
        prop_assert!(p.c1.im.is_zero() && p.c2.im.is_zero());
        let (n1, n2) = a.hyperbolic_norm().squared_components();
        prop_assert_eq!((p.c1.re, p.c2.re), (n1, n2));
    }

    #[test]
    fn hyperbolic_order_is_a_strict_partial_order(
        x in (0u8..6, 0u8..6), y in (0u8..6, 0u8..6), z in (0u8..6, 0u8..6)
    ) {
        let h = |(a, b): (u8, u8)| HyperbolicValue::new(a as f64, b as f64).unwrap();
        let (hx, hy, hz) = (h(x), h(y), h(z));
        prop_assert!(!hx.lt_h(&hx));
        if hx.lt_h(&hy) && hy.lt_h(&hz) {
            prop_assert!(hx.lt_h(&hz));
        }
        if hx.lt_h(&hy) {
            prop_assert!(!hy.lt_h(&hx));
        }
    }

    #[test]
    fn matrix_operations_act_componentwise(a in bimatrix(3, 2), b in bimatrix(3, 2), m in bimatrix(2, 4)) {
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(sum.m1(), &a.m1().add(b.m1()).unwrap());
        prop_assert_eq!(sum.m2(), &a.m2().add(b.m2()).unwrap());
        let prod = a.mul(&m).unwrap();
        prop_assert_eq!(prod.m1(), &a.m1().mul(m.m1()).unwrap());
        prop_assert_eq!(prod.m2(), &a.m2().mul(m.m2()).unwrap());
    }

    #[test]
    fn adjoint_is_an_antimultiplicative_involution(a in bimatrix(2, 3), b in bimatrix(3, 2)) {
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!(a.mul(&b).unwrap().adjoint(), b.adjoint().mul(&a.adjoint()).unwrap());
    }

    #[test]
    fn adjoint_moves_across_the_inner_product(a in bimatrix(3, 3), z in bivector(3), w in bivector(3)) {
        let lhs = inner_product(&a.apply(&z).unwrap(), &w).unwrap();
        let rhs = inner_product(&z, &a.adjoint().apply(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_exists_iff_determinant_is_invertible(
        m1 in matrix(3, 3, small_gauss()), m2 in matrix(3, 3, small_gauss())
    ) {
        let a = BicomplexMatrix::new(m1, m2).unwrap();
        let det = a.determinant().unwrap();
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(det.is_invertible());
                prop_assert_eq!(a.mul(&inv).unwrap(), BicomplexMatrix::identity(3));
            }
            Err(_) => prop_assert!(!det.is_invertible()),
        }
    }

    #[test]
    fn eigenvalues_pair_the_component_spectra(
        d1 in proptest::collection::vec(small_gauss(), 3),
        d2 in proptest::collection::vec(small_gauss(), 3),
        upper in proptest::collection::vec(small_gauss(), 3),
        probe in (small_gauss(), small_gauss()),
    ) {
        let a = BicomplexMatrix::new(triangular(&d1, &upper), triangular(&d2, &upper)).unwrap();
        for l1 in &d1 {
            for l2 in &d2 {
                prop_assert!(a.is_eigenvalue(&S::from_idempotent(l1.clone(), l2.clone())).unwrap());
            }
        }
        let lambda = S::from_idempotent(probe.0.clone(), probe.1.clone());
        prop_assert_eq!(a.is_eigenvalue(&lambda).unwrap(), d1.contains(&probe.0) && d2.contains(&probe.1));
    }

    #[test]
    fn operator_acts_componentwise(
        a in hermitian(3), b in hermitian(3),
        v1 in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3),
        v2 in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3),
    ) {
        let t = BicomplexMatrix::new(a.clone(), b.clone()).unwrap();
        let to_c = |v: &[(f64, f64)]| v.iter().map(|&(x, y)| c(x, y)).collect::<Vec<_>>();
        let v = BicomplexVector::new(to_c(&v1), to_c(&v2)).unwrap();
        let out = t.apply(&v).unwrap();
        prop_assert_eq!(out.v1, a.mul_vec(&v.v1).unwrap());
        prop_assert_eq!(out.v2, b.mul_vec(&v.v2).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hyperbolic_norm_is_multiplicative(a in scalar(), b in scalar()) {
        let (p1, p2) = (a.clone() * b.clone()).hyperbolic_norm().squared_components();
        let (a1, a2) = a.hyperbolic_norm().squared_components();
        let (b1, b2) = b.hyperbolic_norm().squared_components();
        prop_assert_eq!(p1, a1 * b1);
        prop_assert_eq!(p2, a2 * b2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_reconstructs_exactly(
        s1 in jordan_structure(4), s2 in jordan_structure(4), q1 in invertible(4), q2 in invertible(4)
    ) {
        let a = BicomplexMatrix::new(conjugated_jordan(&s1, &q1), conjugated_jordan(&s2, &q2)).unwrap();
        let d = bicomplex_jordan(&a).unwrap();
        prop_assert_eq!(d.reconstruct().unwrap(), a);
        let allowed = [SuperdiagonalEntry::Zero, SuperdiagonalEntry::One, SuperdiagonalEntry::E, SuperdiagonalEntry::EDagger];
        prop_assert!(d.superdiagonal_alphabet().iter().all(|e| allowed.contains(e)));
        // J is diagonal iff both components are diagonalizable
        let diagonalizable = |s: &[(Q, usize)]| s.iter().all(|b| b.1 == 1);
        prop_assert_eq!(d.is_diagonal(), diagonalizable(&s1) && diagonalizable(&s2));
    }

    #[test]
    fn jordan_data_is_similarity_invariant(s in jordan_structure(4), q in invertible(4), r in invertible(4)) {
        let a = conjugated_jordan(&s, &q);
        let b = r.mul(&a).unwrap().mul(&r.inverse(0.0).unwrap().unwrap()).unwrap();
        let (ja, jb) = (complex_jordan(&a).unwrap(), complex_jordan(&b).unwrap());
        prop_assert_eq!(ja.block_sizes(), jb.block_sizes());
        prop_assert_eq!(ja.jordan, jb.jordan);
    }

    #[test]
    fn complex_matrices_get_the_classical_jordan_form(s in jordan_structure(3), q in invertible(3)) {
        let m = conjugated_jordan(&s, &q);
        let d = bicomplex_jordan(&BicomplexMatrix::from_complex(m.clone())).unwrap();
        prop_assert!(d.superdiagonal_alphabet().iter().all(|e| matches!(e, SuperdiagonalEntry::Zero | SuperdiagonalEntry::One)));
        prop_assert_eq!(d.j.m1(), &complex_jordan(&m).unwrap().jordan);
        prop_assert_eq!(d.j.m1(), d.j.m2());
    }

    #[test]
    fn lattice_nodes_are_invariant_and_ordered(
        s1 in jordan_structure(3), s2 in jordan_structure(2), q1 in invertible(3), q2 in invertible(2)
    ) {
        // mixed sizes are not allowed, so pad the second component into a 3×3 direct sum
        let m2 = conjugated_jordan(&s2, &q2);
        let pad = Matrix::from_fn(3, 3, |r, col| if r < 2 && col < 2 { m2.get(r, col).clone() } else if r == 2 && col == 2 { gauss(7, 0) } else { Q::zero() });
        let a = BicomplexMatrix::new(conjugated_jordan(&s1, &q1), pad).unwrap();
        let lattice = bicomplex_lattice(&a).unwrap();
        for node in &lattice.nodes {
            prop_assert!(is_invariant(&a, &node.subspace).unwrap());
        }
        prop_assert!(lattice.verify_order().is_ok());
        let d = bicomplex_jordan(&a).unwrap();
        let (l1, l2) = (component_lattice(&d.comp1).unwrap(), component_lattice(&d.comp2).unwrap());
        prop_assert_eq!(lattice.len(), l1.len() * l2.len());
        // tuples enumerate each prefix-span subspace exactly once
        let expected: usize = d.comp1.blocks.iter().map(|b| b.size() + 1).product();
        prop_assert_eq!(l1.len(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn selfadjoint_diagonalization_residuals(a in hermitian(5), b in hermitian(5)) {
        let t = BicomplexMatrix::new(a, b).unwrap();
        let d = selfadjoint_diagonalize(&t, None).unwrap();
        prop_assert!(d.unitarity_residual.0.max(d.unitarity_residual.1) <= 1e-9);
        prop_assert!(d.reconstruction_residual.0.max(d.reconstruction_residual.1) <= 1e-9);
        prop_assert!(d.max_imaginary() <= 1e-9);
    }

    #[test]
    fn pairings_cover_the_cartesian_matchings(a in hermitian(3), b in hermitian(3)) {
        let t = BicomplexMatrix::new(a, b).unwrap();
        let all = enumerate_diagonalizations(&t).unwrap();
        prop_assert_eq!(all.len(), 6);
        let first = &all[0];
        let e1: Vec<f64> = first.eigenvalue_pairs().iter().map(|p| p.0).collect();
        let mut e2: Vec<f64> = first.eigenvalue_pairs().iter().map(|p| p.1).collect();
        e2.sort_by(f64::total_cmp);
        let mut seen = std::collections::BTreeSet::new();
        for d in &all {
            let pairs = d.eigenvalue_pairs();
            prop_assert_eq!(pairs.iter().map(|p| p.0).collect::<Vec<_>>(), e1.clone());
            let mut second: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            seen.insert(d.pairing.clone());
            second.sort_by(f64::total_cmp);
            prop_assert_eq!(second, e2.clone());
        }
        prop_assert_eq!(seen.len(), 6);
    }

    #[test]
    fn approximation_errors_shrink_and_forms_stay_canonical(a in hermitian(4), b in hermitian(4)) {
        let t = BicomplexMatrix::new(a, b).unwrap();
        let mut prev = hyperbolic_operator_norm(&t).unwrap().to_f64();
        for r in 1..=4 {
            let k: FiniteRankOperator = best_rank_approximation(&t, r).unwrap();
            let err = hyperbolic_operator_norm(&t.sub(&k.to_matrix()).unwrap()).unwrap().to_f64();
            prop_assert!(err.0 <= prev.0 + 1e-12 && err.1 <= prev.1 + 1e-12);
            prev = err;
            let (g1, g2) = orthogonality_defect(k.gs());
            prop_assert!(g1.max(g2) <= 1e-9);
            prop_assert!(k.sigmas().iter().all(|s| s.to_f64().0 >= 0.0 && s.to_f64().1 >= 0.0));
        }
        prop_assert!(prev.0 <= 1e-9 && prev.1 <= 1e-9);
    }
}

#[test]
fn idempotent_identities() {
    let (e, ed) = (S::e(), S::e_dagger());
    assert_eq!(e.clone() + ed.clone(), S::one());
    assert_eq!(e.clone() * ed.clone(), S::zero());
    assert_eq!(e.clone() * e.clone(), e);
    assert_eq!(ed.clone() * ed.clone(), ed);
}

#[test]
fn incomparable_hyperbolic_values_exist() {
    let a = HyperbolicValue::<BigRational>::new(BigRational::from_integer(1.into()), BigRational::zero()).unwrap();
    let b = HyperbolicValue::<BigRational>::new(BigRational::zero(), BigRational::from_integer(1.into())).unwrap();
    assert_eq!(a.compare(&b), HyperbolicOrdering::Incomparable);
    assert!(!a.lt_h(&b) && !b.lt_h(&a));
}
