use k3g2_core::error::LatticeError;
use k3g2_core::lattice::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn m(rows: &[&[i64]]) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn is_unimodular(a: &IntegerMatrix) -> bool {
    a.determinant().abs().is_one()
}

fn check_smith(a: &IntegerMatrix) {
    let s = smith_normal_form(a);
    assert_eq!(&(&s.u * &s.d) * &s.v, *a);
    assert_eq!(&(&s.left * a) * &s.right, s.d);
    assert!((&s.u * &s.left).is_identity());
    assert!((&s.v * &s.right).is_identity());
    assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d.get(i, j).is_zero());
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        assert!(!w[0].is_negative() && !w[1].is_negative());
        if w[0].is_zero() {
            assert!(w[1].is_zero());
        } else {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }
}

// Invariant factors by gcd of k×k minors, for small matrices.
fn minors_gcd(a: &IntegerMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = BigInt::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            let sub = IntegerMatrix::from_fn(k, k, |i, j| a.get(rows[i], cols[j]).clone());
            g = g.gcd(&sub.determinant());
        }
    }
    g
}

#[test]
fn smith_hand_example() {
    let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith_normal_form(&a);
    assert_eq!(s.diagonal(), big(&[2, 6, 12]));
    check_smith(&a);
}

#[test]
fn smith_rectangular_and_rank_deficient() {
    let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
    let s = smith_normal_form(&a);
    assert_eq!(s.diagonal(), big(&[1, 0]));
    assert_eq!(s.rank(), 1);
    check_smith(&a);
    let k = integer_kernel_basis(&a);
    assert_eq!(k.cols(), 3);
    assert!((&a * &k).is_zero());
}

#[test]
fn smith_matches_minor_gcds() {
    let a = m(&[&[4, 6, 2], &[8, 2, 6], &[2, 0, 4]]);
    let s = smith_normal_form(&a);
    let mut prev = BigInt::one();
    for (k, d) in s.diagonal().iter().enumerate() {
        let g = minors_gcd(&a, k + 1);
        assert_eq!(&prev * d, g);
        prev = g;
    }
}

#[test]
fn k3_lattice_is_even_unimodular_of_signature_3_19() {
    let k3 = k3_gram();
    assert_eq!(k3.rank(), 22);
    assert!(k3.is_even());
    assert_eq!(k3.determinant(), BigInt::from(-1));
    assert_eq!(k3.signature(), Signature::new(3, 0, 19));
}

#[test]
fn e8_block() {
    let e8 = minus_e8();
    assert_eq!(e8.determinant(), BigInt::one());
    assert_eq!(e8.signature(), Signature::new(0, 0, 8));
    assert!(e8.is_even());
    assert_eq!(discriminant_data(e8.gram()).unwrap().invariant_factors.len(), 0);
}

#[test]
fn discriminant_of_rescaled_lattices() {
    let h2 = rescale(&hyperbolic_plane(), 2);
    let d = discriminant_data(h2.gram()).unwrap();
    assert_eq!(d.invariant_factors, big(&[2, 2]));
    assert_eq!(d.cosets().unwrap().len(), 4);
    let a1 = rank_one(-2);
    let d = discriminant_data(a1.gram()).unwrap();
    assert_eq!(d.invariant_factors, big(&[2]));
    let g = &d.coset_representatives[0];
    assert_eq!(g.norm(a1.gram()), (BigInt::from(-1), BigInt::from(2)));
}

#[test]
fn degenerate_and_asymmetric_forms_are_rejected() {
    assert_eq!(discriminant_data(&m(&[&[1, 1], &[1, 1]])).unwrap_err(), LatticeError::DegenerateForm);
    assert_eq!(discriminant_data(&m(&[&[1, 2], &[0, 1]])).unwrap_err(), LatticeError::NotSymmetric);
}

#[test]
fn coset_enumeration_is_capped() {
    let g = IntegerMatrix::from_diagonal(&[2; 13]);
    let d = discriminant_data(&g).unwrap();
    assert!(matches!(d.cosets(), Err(LatticeError::TooManyCosets { .. })));
}

#[test]
fn signature_examples() {
    assert_eq!(signature_of(hyperbolic_plane().gram()), Signature::new(1, 0, 1));
    assert_eq!(signature_of(&m(&[&[0, 0], &[0, 0]])), Signature::new(0, 2, 0));
    assert_eq!(signature_of(&m(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, -3]])), Signature::new(2, 0, 1));
    assert!(Signature::new(1, 0, 5).is_hyperbolic());
    assert!(!Signature::new(1, 1, 5).is_hyperbolic());
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols)
        .prop_map(move |v| IntegerMatrix::from_fn(rows, cols, |i, j| BigInt::from(v[i * cols + j])))
}

fn any_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| small_matrix(r, c))
}

fn unimodular(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..12).prop_map(move |ops| {
        let mut p = IntegerMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            let mut e = IntegerMatrix::identity(n);
            e.set(i, j, BigInt::from(k));
            p = &p * &e;
        }
        p
    })
}

fn symmetric(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        IntegerMatrix::from_fn(n, n, |i, j| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            BigInt::from(v[a * n + b])
        })
    })
}

proptest! {
    #[test]
    fn smith_decomposition_invariants(a in any_matrix()) {
        check_smith(&a);
    }

    #[test]
    fn kernel_basis_is_primitive_and_complete(a in any_matrix()) {
        let k = integer_kernel_basis(&a);
        let s = smith_normal_form(&a);
        prop_assert_eq!(k.cols(), a.cols() - s.rank());
        prop_assert!((&a * &k).is_zero());
        if k.cols() > 0 {
            // Primitive: the columns extend to a basis of ℤⁿ.
            let sk = smith_normal_form(&k);
            prop_assert!(sk.diagonal().iter().all(|d| d.is_one()));
        }
    }

    #[test]
    fn signature_and_discriminant_are_congruence_invariant(
        (g, p) in (2usize..=4).prop_flat_map(|n| (symmetric(n), unimodular(n)))
    ) {
        let h = g.congruent(&p);
        prop_assert_eq!(signature_of(&g), signature_of(&h));
        match (discriminant_data(&g), discriminant_data(&h)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.invariant_factors, b.invariant_factors),
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "congruent forms disagree on degeneracy"),
        }
    }

    #[test]
    fn signature_counts_match_rank(g in (1usize..=5).prop_flat_map(symmetric)) {
        let s = signature_of(&g);
        let rank = smith_normal_form(&g).rank();
        prop_assert_eq!(s.positive + s.negative, rank);
        prop_assert_eq!(s.rank(), g.rows());
    }

    #[test]
    fn coset_norms_do_not_depend_on_representative(
        shift in prop::collection::vec(-3i64..=3, 2),
        k in prop::sample::select(vec![2i64, -2, 4, 6]),
    ) {
        let lat = rescale(&hyperbolic_plane(), k);
        let d = discriminant_data(lat.gram()).unwrap();
        for c in d.cosets().unwrap() {
            let (n0, d0) = c.norm(lat.gram());
            let (n1, d1) = c.shifted(&big(&shift)).norm(lat.gram());
            // Norms of L*/L are well defined modulo 2ℤ on even lattices.
            let diff = &n0 * &d1 - &n1 * &d0;
            prop_assert!(diff.is_multiple_of(&(BigInt::from(2) * &d0 * &d1)));
        }
    }
}
