//! Restricted root space decomposition of `(so(p,q), a)`.
//!
//! | root        | count    | dim of each            | total         |
//! |-------------|----------|------------------------|---------------|
//! | `±f_i`      | `2q`     | `p−q`                  | `2q(p−q)`     |
//! | `±f_i±f_j`  | `q(q−1)` | 1                      | `q(q−1)`      |
//! | `±f_i∓f_j`  | `q(q−1)` | 1                      | `q(q−1)`      |
//! | `0`         | 1        | `½(p−q)(p−q−1) + q`    |               |
//!
//! The `±f_i` rows are absent when `p = q`.

use serde::{Deserialize, Serialize};

use crate::basis::{block_combination, BlockIndex, Signature};
use crate::eigen::{assemble, EigenSpace, FormKind, SpaceSystem};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::so_pq::{abelian_a, is_member, LinearForm, Named};

pub type RootSpace = EigenSpace;
pub type RootSystemReport = SpaceSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// The four two-index forms for `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairType {
    /// `f_i + f_j`
    Sum,
    /// `−f_i − f_j`
    NegSum,
    /// `f_i − f_j`
    Diff,
    /// `−f_i + f_j`
    NegDiff,
}

impl PairType {
    pub const ALL: [PairType; 4] = [PairType::Sum, PairType::NegSum, PairType::Diff, PairType::NegDiff];

    /// `(s_i, s_j)` in `s_i f_i + s_j f_j`.
    pub fn signs(self) -> (i64, i64) {
        match self {
            PairType::Sum => (1, 1),
            PairType::NegSum => (-1, -1),
            PairType::Diff => (1, -1),
            PairType::NegDiff => (-1, 1),
        }
    }

    pub fn from_signs(si: i64, sj: i64) -> Option<PairType> {
        match (si, sj) {
            (1, 1) => Some(PairType::Sum),
            (-1, -1) => Some(PairType::NegSum),
            (1, -1) => Some(PairType::Diff),
            (-1, 1) => Some(PairType::NegDiff),
            _ => None,
        }
    }

    pub fn form(self, q: usize, i: usize, j: usize) -> LinearForm {
        let (si, sj) = self.signs();
        LinearForm::pair(q, i, si, j, sj)
    }
}

fn check_short_range(sig: &Signature, i: usize, l: usize) -> Result<()> {
    let (p, q) = (sig.p(), sig.q());
    if p == q {
        return Err(Error::NoSuchVector(format!("±f_i vectors need p > q, got {sig}")));
    }
    if !(1..=q).contains(&i) || !(1..=p - q).contains(&l) {
        return Err(Error::IndexOutOfRange(format!("i = {i}, l = {l} for {sig}")));
    }
    Ok(())
}

pub(crate) fn check_pair_range(sig: &Signature, i: usize, j: usize) -> Result<()> {
    if !(1 <= i && i < j && j <= sig.q()) {
        return Err(Error::IndexOutOfRange(format!("need 1 <= i < j <= q, got i = {i}, j = {j} for {sig}")));
    }
    Ok(())
}

/// `H(±f_i)_ℓ`, `1 ≤ ℓ ≤ p − q`:
///
/// * `H(f_i)_ℓ  = A_{q+ℓ,i} − B_{q+ℓ,i} − A_{i,q+ℓ} − C_{i,q+ℓ}`
/// * `H(−f_i)_ℓ = A_{q+ℓ,i} + B_{q+ℓ,i} − A_{i,q+ℓ} + C_{i,q+ℓ}`
pub fn root_vector_short(sig: &Signature, sign: Sign, i: usize, l: usize) -> Result<Matrix> {
    check_short_range(sig, i, l)?;
    let s = sign.value();
    let k = sig.q() + l;
    block_combination(
        sig,
        &[(1, BlockIndex::a(k, i)), (-s, BlockIndex::b(k, i)), (-1, BlockIndex::a(i, k)), (-s, BlockIndex::c(i, k))],
    )
}

/// The one-dimensional root spaces for `±f_i ± f_j`, `i < j`.
pub fn root_vector_long(sig: &Signature, ty: PairType, i: usize, j: usize) -> Result<Matrix> {
    check_pair_range(sig, i, j)?;
    let (a_ij, b_ij, c_ij, d_ij) = (BlockIndex::a(i, j), BlockIndex::b(i, j), BlockIndex::c(i, j), BlockIndex::d(i, j));
    let (a_ji, b_ji, c_ji, d_ji) = (BlockIndex::a(j, i), BlockIndex::b(j, i), BlockIndex::c(j, i), BlockIndex::d(j, i));
    // Coefficients of A_ij, B_ij, A_ji, B_ji, C_ij, D_ij, C_ji, D_ji.
    let c: [i64; 8] = match ty {
        PairType::Sum => [-1, 1, 1, -1, -1, 1, 1, -1],
        PairType::NegSum => [-1, -1, 1, 1, 1, 1, -1, -1],
        PairType::Diff => [-1, -1, 1, -1, -1, -1, -1, 1],
        PairType::NegDiff => [-1, 1, 1, 1, 1, -1, 1, 1],
    };
    block_combination(
        sig,
        &[
            (c[0], a_ij),
            (c[1], b_ij),
            (c[2], a_ji),
            (c[3], b_ji),
            (c[4], c_ij),
            (c[5], d_ij),
            (c[6], c_ji),
            (c[7], d_ji),
        ],
    )
}

/// Generator `A_{q+j,q+i} − A_{q+i,q+j}` of `m`, `1 ≤ i < j ≤ p − q`.
pub fn m_generator(sig: &Signature, i: usize, j: usize) -> Result<Matrix> {
    let r = sig.p() - sig.q();
    if !(1 <= i && i < j && j <= r) {
        return Err(Error::IndexOutOfRange(format!("m generator ({i},{j}) for {sig}")));
    }
    let q = sig.q();
    block_combination(sig, &[(1, BlockIndex::a(q + j, q + i)), (-1, BlockIndex::a(q + i, q + j))])
}

/// `so(p,q)_0 = a ⊕ m`: the generators `F_1..F_q` followed by the `m` generators.
pub fn zero_root_space(sig: &Signature) -> RootSpace {
    let q = sig.q();
    let mut basis: Vec<Named> = abelian_a(sig)
        .generators
        .into_iter()
        .enumerate()
        .map(|(k, m)| Named { label: format!("F_{}", k + 1), matrix: m })
        .collect();
    let r = sig.p() - q;
    for i in 1..=r {
        for j in i + 1..=r {
            basis.push(Named {
                label: format!("M_{{{i},{j}}}"),
                matrix: m_generator(sig, i, j).expect("indices in range"),
            });
        }
    }
    RootSpace { form: LinearForm::zero(q), basis }
}

pub(crate) fn short_space(
    sig: &Signature,
    sign: Sign,
    i: usize,
    name: &str,
    build: impl Fn(&Signature, Sign, usize, usize) -> Result<Matrix>,
) -> EigenSpace {
    let q = sig.q();
    let form = LinearForm::basis(q, i, sign.value());
    let basis = (1..=sig.p() - q)
        .map(|l| Named {
            label: format!("{name}({form})_{l}"),
            matrix: build(sig, sign, i, l).expect("indices in range"),
        })
        .collect();
    EigenSpace { form, basis }
}

/// Every root space, including the zero space, in report order.
pub fn root_spaces(sig: &Signature) -> Vec<RootSpace> {
    let q = sig.q();
    let mut spaces = Vec::new();
    if sig.p() > q {
        for i in 1..=q {
            for sign in [Sign::Plus, Sign::Minus] {
                spaces.push(short_space(sig, sign, i, "H", root_vector_short));
            }
        }
    }
    for i in 1..=q {
        for j in i + 1..=q {
            for ty in PairType::ALL {
                let form = ty.form(q, i, j);
                spaces.push(RootSpace {
                    basis: vec![Named {
                        label: format!("H({form})"),
                        matrix: root_vector_long(sig, ty, i, j).expect("indices in range"),
                    }],
                    form,
                });
            }
        }
    }
    spaces.push(zero_root_space(sig));
    spaces.sort_by(|a, b| a.form.report_cmp(&b.form));
    spaces
}

/// Assembles all root spaces and verifies them against the multiplicity table.
pub fn full_root_system(sig: &Signature) -> RootSystemReport {
    let (p, q) = (sig.p(), sig.q());
    let expected = vec![
        (FormKind::Short, if p > q { 2 * q } else { 0 }, p - q),
        (FormKind::Sum, q * q.saturating_sub(1), 1),
        (FormKind::Difference, q * q.saturating_sub(1), 1),
        (FormKind::Zero, 1, (p - q) * (p - q).saturating_sub(1) / 2 + q),
    ];
    let s = *sig;
    assemble(s, root_spaces(sig), expected, sig.dim_so(), move |m| is_member(&s, m), "so(p,q)", Vec::new())
}

/// Looks up `H(λ)_ℓ` by root and one-based index within its root space.
pub fn root_vector(sig: &Signature, root: &LinearForm, l: usize) -> Result<Matrix> {
    let q = sig.q();
    if root.coeffs.len() != q {
        return Err(Error::DimensionMismatch { expected: q, found: root.coeffs.len() });
    }
    let nz: Vec<(usize, i64)> =
        root.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k + 1, c)).collect();
    match nz.as_slice() {
        [(i, c)] => {
            let sign = Sign::from_value(*c).ok_or_else(|| Error::NoSuchVector(format!("H({root})")))?;
            root_vector_short(sig, sign, *i, l)
        }
        [(i, ci), (j, cj)] if l == 1 => {
            let ty = PairType::from_signs(*ci, *cj).ok_or_else(|| Error::NoSuchVector(format!("H({root})")))?;
            root_vector_long(sig, ty, *i, *j)
        }
        _ => Err(Error::NoSuchVector(format!("H({root})_{l}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::standard_basis;
    use crate::eigen::satisfies_eigen_identity;
    use crate::scalar::ExactScalar;
    use crate::so_pq::bracket;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn e(s: &Signature, terms: &[(i64, usize, usize)]) -> Matrix {
        let mut m = Matrix::zero_square(s.d());
        for &(c, r, col) in terms {
            m.add_scaled(&c.into(), &standard_basis(s, r, col).unwrap()).unwrap();
        }
        m
    }

    #[test]
    fn short_root_vector_matches_golden_column() {
        // f_1 column at x_1 = 1, x_2 = 0
        let s = sig(4, 2);
        let h = root_vector_short(&s, Sign::Plus, 1, 1).unwrap();
        assert_eq!(h, e(&s, &[(1, 2, 4), (-1, 2, 5), (-1, 4, 2), (-1, 5, 2)]));
    }

    #[test]
    fn short_root_eigenvalue() {
        let s = sig(4, 2);
        let h = root_vector_short(&s, Sign::Plus, 1, 1).unwrap();
        let f = abelian_a(&s).element(&[5.into(), 7.into()]).unwrap();
        assert_eq!(bracket(&f, &h).unwrap(), h.scale(&ExactScalar::from_int(5)));
    }

    #[test]
    fn short_roots_absent_when_p_equals_q() {
        assert!(matches!(root_vector_short(&sig(3, 3), Sign::Plus, 1, 1), Err(Error::NoSuchVector(_))));
        assert!(root_vector_short(&sig(4, 2), Sign::Plus, 3, 1).is_err());
        assert!(root_vector_short(&sig(4, 2), Sign::Plus, 1, 3).is_err());
    }

    #[test]
    fn long_root_vectors() {
        let s = sig(4, 2);
        // f_1 + f_2 at x = 1
        let h = root_vector_long(&s, PairType::Sum, 1, 2).unwrap();
        assert_eq!(
            h,
            e(&s, &[(1, 3, 4), (-1, 3, 5), (-1, 4, 3), (1, 4, 6), (-1, 5, 3), (1, 5, 6), (1, 6, 4), (-1, 6, 5)])
        );

        let gens = abelian_a(&s).generators;
        let diff = root_vector_long(&s, PairType::Diff, 1, 2).unwrap();
        assert_eq!(bracket(&gens[0], &diff).unwrap(), diff);
        assert_eq!(bracket(&gens[1], &diff).unwrap(), -&diff);

        let sum = &h + &root_vector_long(&s, PairType::NegSum, 1, 2).unwrap();
        assert!(is_member(&s, &sum));
        assert!(root_vector_long(&s, PairType::Sum, 2, 1).is_err());
        assert!(root_vector_long(&s, PairType::Sum, 1, 3).is_err());
    }

    #[test]
    fn zero_space_examples() {
        let s = sig(4, 2);
        let z = zero_root_space(&s);
        assert_eq!(z.dim(), 3);
        // the displayed (4,2) golden matrix at x = 1
        let m = &z.basis[2].matrix;
        assert_eq!(m, &e(&s, &[(1, 1, 2), (-1, 2, 1)]));
        assert_eq!(zero_root_space(&sig(3, 3)).dim(), 3);
        let gens = abelian_a(&s).generators;
        for n in &z.basis {
            assert!(satisfies_eigen_identity(&gens, &z.form, &n.matrix));
            for f in &gens {
                assert!(bracket(f, &n.matrix).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn full_system_so42() {
        let r = full_root_system(&sig(4, 2));
        assert!(r.is_verified(), "{:?}", r.failures);
        let totals: Vec<usize> = r.table.iter().map(|row| row.total).collect();
        assert_eq!(totals, [8, 2, 2, 3]);
        assert_eq!(r.total_dim(), 15);
        assert_eq!(r.spaces.len(), 4 + 2 + 2 + 1);
    }

    #[test]
    fn full_system_degenerate_signatures() {
        let r = full_root_system(&sig(2, 2));
        assert!(r.is_verified(), "{:?}", r.failures);
        assert_eq!(r.table[0].count, 0);
        assert_eq!(r.total_dim(), 6);

        let r = full_root_system(&sig(5, 0));
        assert!(r.is_verified(), "{:?}", r.failures);
        assert_eq!(r.spaces.len(), 1);
        assert_eq!(r.spaces[0].dim(), 10);
    }

    #[test]
    fn lookup_by_root() {
        let s = sig(4, 2);
        let f = LinearForm::basis(2, 2, -1);
        assert_eq!(root_vector(&s, &f, 2).unwrap(), root_vector_short(&s, Sign::Minus, 2, 2).unwrap());
        let g = LinearForm::pair(2, 1, -1, 2, 1);
        assert_eq!(root_vector(&s, &g, 1).unwrap(), root_vector_long(&s, PairType::NegDiff, 1, 2).unwrap());
        assert!(root_vector(&s, &LinearForm::basis(2, 1, 2), 1).is_err());
        assert!(root_vector(&s, &LinearForm::zero(2), 1).is_err());
    }
}
