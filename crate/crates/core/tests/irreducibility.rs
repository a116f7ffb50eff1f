//! Worked examples for closures, ladders, commutants and generation.

use sopq::irreducibility::{
    commutant_certificate, generation_check, invariant_closure, ladder_certificate, so_commutant_certificate,
    two_piece_decomposition, CommutantType, Verdict,
};
use sopq::so_pq::{standard_basis_so, LinearForm};
use sopq::weights::{complement_basis, weight_vector};
use sopq::{Error, Matrix, Signature};

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

fn s_2f1(s: &Signature) -> Matrix {
    let mut c = vec![0; s.q()];
    c[0] = 2;
    weight_vector(s, &LinearForm::new(c), 1).unwrap()
}

#[test]
fn closure_from_double_weight_fills_s() {
    let s = sig(2, 1);
    let t = invariant_closure(&s, &s_2f1(&s)).unwrap();
    assert_eq!(t.final_dim, 5);
    assert!(t.reaches_target());
    assert!(t.dims().collect::<Vec<_>>().windows(2).all(|w| w[1] == w[0] + 1));
}

#[test]
fn so11_weight_line_is_invariant() {
    let s = sig(1, 1);
    assert_eq!(invariant_closure(&s, &s_2f1(&s)).unwrap().final_dim, 1);
    let r = two_piece_decomposition(&s).unwrap();
    assert!(!r.s.irreducible);
    assert!(r.is_verified());
}

#[test]
fn closure_rejects_bad_seeds() {
    let s = sig(2, 1);
    assert!(matches!(invariant_closure(&s, &Matrix::zero_square(3)), Err(Error::ZeroSeed)));
    let so = &standard_basis_so(&s)[0];
    assert!(matches!(invariant_closure(&s, so), Err(Error::NotInComplement)));
    assert!(invariant_closure(&s, &Matrix::zero_square(4)).is_err());
}

#[test]
fn commutants() {
    for (p, q) in [(2, 1), (3, 0), (2, 2), (4, 2), (5, 2)] {
        let c = commutant_certificate(&sig(p, q)).unwrap();
        assert_eq!((c.commutant_dim, c.verdict), (1, Verdict::Irreducible), "({p},{q})");
    }
    let c = commutant_certificate(&sig(2, 0)).unwrap();
    assert_eq!((c.commutant_dim, c.commutant_type), (2, CommutantType::Complex));
    assert_eq!(c.verdict, Verdict::Irreducible);
    assert_eq!(commutant_certificate(&sig(1, 1)).unwrap().verdict, Verdict::Reducible);

    for (p, q) in [(2, 2), (4, 0)] {
        let c = so_commutant_certificate(&sig(p, q)).unwrap();
        assert_eq!((c.commutant_type, c.verdict), (CommutantType::Split, Verdict::Reducible), "({p},{q})");
    }
    let c = so_commutant_certificate(&sig(3, 1)).unwrap();
    assert_eq!((c.commutant_type, c.verdict), (CommutantType::Complex, Verdict::Irreducible));
}

#[test]
fn ladder_edge_from_double_weight() {
    let l = ladder_certificate(&sig(4, 2)).unwrap();
    let e = l
        .edges
        .iter()
        .find(|e| e.source == LinearForm::new(vec![2, 0]) && e.target == LinearForm::new(vec![1, 1]))
        .unwrap();
    assert_eq!(e.root, LinearForm::new(vec![-1, 1]));
    assert!(e.verified_nonzero);
    assert!(e.multiple.as_ref().is_some_and(|m| !m.is_zero()));
}

#[test]
fn ladder_counts() {
    for ((p, q), n) in [((4, 2), 52), ((3, 2), 32), ((3, 1), 24), ((3, 3), 72)] {
        let l = ladder_certificate(&sig(p, q)).unwrap();
        assert_eq!(l.edges.len(), n, "({p},{q})");
        assert!(l.is_verified(), "({p},{q})");
        assert_eq!(l.zero_reached_dim, l.zero_dim);
    }
    assert!(!ladder_certificate(&sig(3, 0)).unwrap().applicable);
}

#[test]
fn generation() {
    let s = sig(2, 1);
    assert!(generation_check(&s, &s_2f1(&s)).unwrap().generates());
    assert!(matches!(generation_check(&s, &standard_basis_so(&s)[0]), Err(Error::InSoPq)));
    // Any nonzero element of s generates sl_3.
    let sum = complement_basis(&s).matrices().iter().fold(Matrix::zero_square(3), |a, b| &a + b);
    assert!(generation_check(&s, &sum).unwrap().generates());
}
