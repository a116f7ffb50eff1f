//! Library results against the independent oracles in `common`.

mod common;

use common::*;
use sopq::irreducibility::{commutant_certificate, invariant_closure};
use sopq::roots::full_root_system;
use sopq::so_pq::standard_basis_so;
use sopq::weights::{complement_basis, full_weight_system};
use sopq::Signature;

fn signatures(d_max: usize) -> Vec<Signature> {
    Signature::range(2, d_max)
}

fn nullity(rows: &[Vec<Q>]) -> usize {
    rows[0].len() - rank(rows)
}

fn form_value(coeffs: &[i64], weights: &[i64]) -> i64 {
    coeffs.iter().zip(weights).map(|(c, w)| c * w).sum()
}

#[test]
fn so_and_s_dimensions_match_defining_equations() {
    for sig in signatures(6) {
        assert_eq!(nullity(&so_conditions(&sig)), sig.dim_so(), "{sig}");
        assert_eq!(nullity(&s_conditions(&sig)), sig.dim_s(), "{sig}");
    }
}

#[test]
fn library_bases_satisfy_defining_equations_and_are_independent() {
    for sig in signatures(6) {
        let so_rows = so_conditions(&sig);
        let s_rows = s_conditions(&sig);
        let so: Vec<Vec<Q>> = standard_basis_so(&sig).iter().map(|m| flatten(&dense(m))).collect();
        let s: Vec<Vec<Q>> = complement_basis(&sig).matrices().iter().map(|m| flatten(&dense(m))).collect();
        let dot = |row: &Vec<Q>, v: &Vec<Q>| row.iter().zip(v).map(|(a, b)| a * b).sum::<Q>();
        for v in &so {
            assert!(so_rows.iter().all(|r| dot(r, v) == q(0)), "{sig}");
        }
        for v in &s {
            assert!(s_rows.iter().all(|r| dot(r, v) == q(0)), "{sig}");
        }
        assert_eq!(rank(&so), sig.dim_so(), "{sig}");
        assert_eq!(rank(&s), sig.dim_s(), "{sig}");
        let both: Vec<Vec<Q>> = so.into_iter().chain(s).collect();
        assert_eq!(rank(&both), sig.d() * sig.d() - 1, "{sig}");
    }
}

#[test]
fn root_multiplicities_match_kernel_oracle() {
    for sig in signatures(6).into_iter().filter(|s| s.q() > 0) {
        let (f, weights) = generic_f(&sig);
        let cond = so_conditions(&sig);
        let sys = full_root_system(&sig);
        for space in &sys.spaces {
            let mu = form_value(&space.form.coeffs, &weights);
            assert_eq!(eigen_dim(&sig, &cond, &f, mu), space.dim(), "{sig} {:?}", space.form.coeffs);
        }
        // Nothing is missed: the oracle's eigenspaces for every value sum to dim so.
        let mut total = 0;
        let bound = 2 * weights.iter().sum::<i64>();
        for mu in -bound..=bound {
            total += eigen_dim(&sig, &cond, &f, mu);
        }
        assert_eq!(total, sig.dim_so(), "{sig}");
    }
}

#[test]
fn weight_multiplicities_match_kernel_oracle() {
    for sig in signatures(6).into_iter().filter(|s| s.q() > 0) {
        let (f, weights) = generic_f(&sig);
        let cond = s_conditions(&sig);
        let sys = full_weight_system(&sig);
        for space in &sys.spaces {
            let mu = form_value(&space.form.coeffs, &weights);
            assert_eq!(eigen_dim(&sig, &cond, &f, mu), space.dim(), "{sig} {:?}", space.form.coeffs);
        }
        let mut total = 0;
        let bound = 2 * weights.iter().sum::<i64>();
        for mu in -bound..=bound {
            total += eigen_dim(&sig, &cond, &f, mu);
        }
        assert_eq!(total, sig.dim_s(), "{sig}");
    }
}

#[test]
fn closures_match_oracle() {
    for sig in signatures(4) {
        let gens: Vec<Dense> = standard_basis_so(&sig).iter().map(dense).collect();
        for seed in complement_basis(&sig).matrices() {
            let trace = invariant_closure(&sig, &seed).unwrap();
            let oracle = closure_dim(&gens, &dense(&seed));
            // The library stops early at dim s, so it can only agree or be capped there.
            assert_eq!(trace.final_dim, oracle.min(sig.dim_s()), "{sig}");
        }
    }
}

#[test]
fn one_dimensional_commutant_matches_full_closure() {
    // With a one-dimensional commutant and complete reducibility, every seed generates s.
    for sig in signatures(5).into_iter().filter(Signature::is_semisimple) {
        let cert = commutant_certificate(&sig).unwrap();
        if cert.commutant_dim != 1 {
            continue;
        }
        let gens: Vec<Dense> = standard_basis_so(&sig).iter().map(dense).collect();
        for seed in complement_basis(&sig).matrices() {
            assert_eq!(closure_dim(&gens, &dense(&seed)), sig.dim_s(), "{sig}");
        }
    }
}
