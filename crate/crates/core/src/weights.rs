//! The ad-invariant complement `s` of so(p,q) in sl_d and its weight
//! decomposition under `a`.
//!
//! `s` consists of the traceless matrices whose A- and D-blocks are symmetric
//! and whose off-diagonal blocks satisfy `B = −Cᵗ`. Its weights are `±f_i`
//! (multiplicity `p−q`, only when `p ≠ q`), `±2f_i`, `±f_i±f_j`, `±f_i∓f_j`
//! (multiplicity 1) and `0` (multiplicity `½(p−q)(p−q+1) + q − 1`).

use crate::basis::{block_combination, decompose_blocks, BlockIndex, Signature};
use crate::eigen::{assemble, EigenSpace, FormKind, SpaceSystem};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::roots::{check_pair_range, short_space, PairType, Sign};
use crate::scalar::ExactScalar;
use crate::so_pq::{LinearForm, Named};

pub type WeightSpace = EigenSpace;
pub type WeightSystemReport = SpaceSystem;

/// A basis of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementS {
    pub sig: Signature,
    pub basis: Vec<Named>,
}

impl ComplementS {
    pub fn matrices(&self) -> Vec<Matrix> {
        self.basis.iter().map(|n| n.matrix.clone()).collect()
    }
}

/// Symmetric A and D blocks, `B = −Cᵗ`, zero trace.
pub fn is_in_s(sig: &Signature, x: &Matrix) -> bool {
    let Ok(b) = decompose_blocks(sig, x) else {
        return false;
    };
    b.a.is_symmetric() && b.d.is_symmetric() && b.b.transpose() == -&b.c && x.trace().is_zero()
}

/// Basis of `s` in block-lexicographic order: `A_{i,j}+A_{j,i}` (i<j),
/// `B_{i,j}−C_{j,i}`, `D_{i,j}+D_{j,i}` (i<j), then consecutive differences of
/// the diagonal units `A_{1,1}, …, A_{p,p}, D_{1,1}, …, D_{q,q}`.
pub fn complement_basis(sig: &Signature) -> ComplementS {
    let (p, q) = (sig.p(), sig.q());
    let mut basis = Vec::with_capacity(sig.dim_s());
    let mut push = |terms: &[(i64, BlockIndex)]| {
        let label = terms
            .iter()
            .enumerate()
            .map(|(k, (c, idx))| {
                let sign = if *c < 0 {
                    "-"
                } else if k > 0 {
                    "+"
                } else {
                    ""
                };
                format!("{sign}{idx}")
            })
            .collect::<String>();
        basis.push(Named { label, matrix: block_combination(sig, terms).expect("indices in range") });
    };
    for i in 1..=p {
        for j in i + 1..=p {
            push(&[(1, BlockIndex::a(i, j)), (1, BlockIndex::a(j, i))]);
        }
    }
    for i in 1..=p {
        for j in 1..=q {
            push(&[(1, BlockIndex::b(i, j)), (-1, BlockIndex::c(j, i))]);
        }
    }
    for i in 1..=q {
        for j in i + 1..=q {
            push(&[(1, BlockIndex::d(i, j)), (1, BlockIndex::d(j, i))]);
        }
    }
    let diag: Vec<BlockIndex> =
        (1..=p).map(|i| BlockIndex::a(i, i)).chain((1..=q).map(|i| BlockIndex::d(i, i))).collect();
    for w in diag.windows(2) {
        push(&[(1, w[0]), (-1, w[1])]);
    }
    ComplementS { sig: *sig, basis }
}

/// Splits a traceless `X` as `X_so + X_s` with `X_so ∈ so(p,q)`, `X_s ∈ s`.
///
/// On the diagonal blocks `X_so` is the skew part; on the off-diagonal blocks it
/// is the part with `B = Cᵗ`.
pub fn project(sig: &Signature, x: &Matrix) -> Result<(Matrix, Matrix)> {
    let d = sig.d();
    if x.rows() != d || x.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: if x.rows() != d { x.rows() } else { x.cols() } });
    }
    let tr = x.trace();
    if !tr.is_zero() {
        return Err(Error::NonzeroTrace(tr.to_string()));
    }
    let p = sig.p();
    let half = ExactScalar::new(1, 2)?;
    let mut so = Matrix::zero_square(d);
    for r in 0..d {
        for c in 0..d {
            let same_block = (r < p) == (c < p);
            let (a, b) = (x.get(r, c), x.get(c, r));
            let v = if same_block { a - b } else { a + b };
            so.set(r, c, &v * &half);
        }
    }
    let s = x - &so;
    Ok((so, s))
}

fn check_short(sig: &Signature, i: usize, l: usize) -> Result<()> {
    let (p, q) = (sig.p(), sig.q());
    if p == q {
        return Err(Error::NoSuchVector(format!("±f_i weight vectors need p > q, got {sig}")));
    }
    if !(1..=q).contains(&i) || !(1..=p - q).contains(&l) {
        return Err(Error::IndexOutOfRange(format!("i = {i}, l = {l} for {sig}")));
    }
    Ok(())
}

/// `S(±f_i)_ℓ`:
///
/// * `S(f_i)_ℓ  = A_{q+ℓ,i} − B_{q+ℓ,i} + A_{i,q+ℓ} + C_{i,q+ℓ}`
/// * `S(−f_i)_ℓ = A_{q+ℓ,i} + B_{q+ℓ,i} + A_{i,q+ℓ} − C_{i,q+ℓ}`
pub fn weight_vector_short(sig: &Signature, sign: Sign, i: usize, l: usize) -> Result<Matrix> {
    check_short(sig, i, l)?;
    let s = sign.value();
    let k = sig.q() + l;
    block_combination(
        sig,
        &[(1, BlockIndex::a(k, i)), (-s, BlockIndex::b(k, i)), (1, BlockIndex::a(i, k)), (s, BlockIndex::c(i, k))],
    )
}

/// `S(2f_i) = A_{i,i} − B_{i,i} + C_{i,i} − D_{i,i}`,
/// `S(−2f_i) = A_{i,i} + B_{i,i} − C_{i,i} − D_{i,i}`.
pub fn weight_vector_double(sig: &Signature, sign: Sign, i: usize) -> Result<Matrix> {
    if !(1..=sig.q()).contains(&i) {
        return Err(Error::IndexOutOfRange(format!("i = {i} for {sig}")));
    }
    let s = sign.value();
    block_combination(
        sig,
        &[(1, BlockIndex::a(i, i)), (-s, BlockIndex::b(i, i)), (s, BlockIndex::c(i, i)), (-1, BlockIndex::d(i, i))],
    )
}

/// The one-dimensional weight spaces for `±f_i ± f_j`, `i < j`.
pub fn weight_vector_mixed(sig: &Signature, ty: PairType, i: usize, j: usize) -> Result<Matrix> {
    check_pair_range(sig, i, j)?;
    // Coefficients of A_ij, B_ij, A_ji, B_ji, C_ij, D_ij, C_ji, D_ji.
    let c: [i64; 8] = match ty {
        PairType::Sum => [-1, 1, -1, 1, -1, 1, -1, 1],
        PairType::NegSum => [1, 1, 1, 1, -1, -1, -1, -1],
        PairType::Diff => [1, 1, 1, -1, 1, 1, -1, 1],
        PairType::NegDiff => [1, -1, 1, 1, -1, 1, 1, 1],
    };
    block_combination(
        sig,
        &[
            (c[0], BlockIndex::a(i, j)),
            (c[1], BlockIndex::b(i, j)),
            (c[2], BlockIndex::a(j, i)),
            (c[3], BlockIndex::b(j, i)),
            (c[4], BlockIndex::c(i, j)),
            (c[5], BlockIndex::d(i, j)),
            (c[6], BlockIndex::c(j, i)),
            (c[7], BlockIndex::d(j, i)),
        ],
    )
}

/// Which of the three zero-weight families a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroFamily {
    /// `A_{q+i,q+j} + A_{q+j,q+i}`, `1 ≤ i < j ≤ p−q`
    OffDiagonal { i: usize, j: usize },
    /// `2A_{q+i,q+i} − (A_{1,1} + D_{1,1})`, `1 ≤ i ≤ p−q`
    Diagonal { i: usize },
    /// `(A_{i,i} + D_{i,i}) − (A_{i+1,i+1} + D_{i+1,i+1})`, `1 ≤ i ≤ q−1`
    Paired { i: usize },
    /// `q = 0` only: `A_{i,i} − A_{i+1,i+1}`, `1 ≤ i ≤ p−1`
    Compact { i: usize },
}

impl ZeroFamily {
    pub fn label(&self) -> String {
        match self {
            ZeroFamily::OffDiagonal { i, j } => format!("Z1_{{{i},{j}}}"),
            ZeroFamily::Diagonal { i } => format!("Z2_{i}"),
            ZeroFamily::Paired { i } => format!("Z3_{i}"),
            ZeroFamily::Compact { i } => format!("Z0_{i}"),
        }
    }

    /// The `s_0` generators in family order.
    pub fn all(sig: &Signature) -> Vec<ZeroFamily> {
        let (p, q) = (sig.p(), sig.q());
        let r = p - q;
        let mut out = Vec::new();
        for i in 1..=r {
            for j in i + 1..=r {
                out.push(ZeroFamily::OffDiagonal { i, j });
            }
        }
        if q == 0 {
            out.extend((1..p).map(|i| ZeroFamily::Compact { i }));
        } else {
            out.extend((1..=r).map(|i| ZeroFamily::Diagonal { i }));
            out.extend((1..q).map(|i| ZeroFamily::Paired { i }));
        }
        out
    }

    pub fn matrix(&self, sig: &Signature) -> Result<Matrix> {
        let q = sig.q();
        let a = BlockIndex::a;
        let d = BlockIndex::d;
        match *self {
            ZeroFamily::OffDiagonal { i, j } => block_combination(sig, &[(1, a(q + i, q + j)), (1, a(q + j, q + i))]),
            ZeroFamily::Diagonal { i } => {
                if q == 0 || i == 0 || i > sig.p() - q {
                    return Err(Error::IndexOutOfRange(format!("{} for {sig}", self.label())));
                }
                block_combination(sig, &[(2, a(q + i, q + i)), (-1, a(1, 1)), (-1, d(1, 1))])
            }
            ZeroFamily::Paired { i } => {
                block_combination(sig, &[(1, a(i, i)), (1, d(i, i)), (-1, a(i + 1, i + 1)), (-1, d(i + 1, i + 1))])
            }
            ZeroFamily::Compact { i } => block_combination(sig, &[(1, a(i, i)), (-1, a(i + 1, i + 1))]),
        }
    }
}

/// The diagonal zero-weight generator exactly as printed in the source tables,
/// `2A_{q+i,q+i} + (A_{1,1} + D_{1,1})`. It has trace 4, so it is not in `s`;
/// [`ZeroFamily::Diagonal`] is the traceless correction.
pub fn zero_weight_diagonal_as_printed(sig: &Signature, i: usize) -> Result<Matrix> {
    let q = sig.q();
    if q == 0 || i == 0 || i > sig.p() - q {
        return Err(Error::IndexOutOfRange(format!("i = {i} for {sig}")));
    }
    block_combination(sig, &[(2, BlockIndex::a(q + i, q + i)), (1, BlockIndex::a(1, 1)), (1, BlockIndex::d(1, 1))])
}

/// `s_0`: symmetric matrices supported on the `(p−q) × (p−q)` corner of A,
/// plus the diagonal matrices commuting with `a`.
pub fn zero_weight_space(sig: &Signature) -> WeightSpace {
    let basis = ZeroFamily::all(sig)
        .into_iter()
        .map(|z| Named { label: z.label(), matrix: z.matrix(sig).expect("indices in range") })
        .collect();
    WeightSpace { form: LinearForm::zero(sig.q()), basis }
}

pub fn weight_spaces(sig: &Signature) -> Vec<WeightSpace> {
    let q = sig.q();
    let mut spaces = Vec::new();
    for i in 1..=q {
        for sign in [Sign::Plus, Sign::Minus] {
            if sig.p() > q {
                spaces.push(short_space(sig, sign, i, "S", weight_vector_short));
            }
            let form = LinearForm::basis(q, i, 2 * sign.value());
            spaces.push(WeightSpace {
                basis: vec![Named {
                    label: format!("S({form})"),
                    matrix: weight_vector_double(sig, sign, i).expect("indices in range"),
                }],
                form,
            });
        }
    }
    for i in 1..=q {
        for j in i + 1..=q {
            for ty in PairType::ALL {
                let form = ty.form(q, i, j);
                spaces.push(WeightSpace {
                    basis: vec![Named {
                        label: format!("S({form})"),
                        matrix: weight_vector_mixed(sig, ty, i, j).expect("indices in range"),
                    }],
                    form,
                });
            }
        }
    }
    spaces.push(zero_weight_space(sig));
    spaces.retain(|s| s.dim() > 0);
    spaces.sort_by(|a, b| a.form.report_cmp(&b.form));
    spaces
}

/// Assembles all weight spaces of `s` and verifies them against the multiplicity table.
pub fn full_weight_system(sig: &Signature) -> WeightSystemReport {
    let (p, q) = (sig.p(), sig.q());
    let zero_dim = (p - q) * (p - q + 1) / 2 + q;
    let zero_dim = zero_dim.saturating_sub(1);
    let expected = vec![
        (FormKind::Short, if p > q { 2 * q } else { 0 }, p - q),
        (FormKind::Double, 2 * q, 1),
        (FormKind::Sum, q * q.saturating_sub(1), 1),
        (FormKind::Difference, q * q.saturating_sub(1), 1),
        (FormKind::Zero, usize::from(zero_dim > 0), zero_dim),
    ];
    let s = *sig;
    assemble(s, weight_spaces(sig), expected, sig.dim_s(), move |m| is_in_s(&s, m), "s", Vec::new())
}

/// Looks up `S(ω)_ℓ` for a nonzero weight by weight and one-based index.
pub fn weight_vector(sig: &Signature, weight: &LinearForm, l: usize) -> Result<Matrix> {
    let q = sig.q();
    if weight.coeffs.len() != q {
        return Err(Error::DimensionMismatch { expected: q, found: weight.coeffs.len() });
    }
    let nz: Vec<(usize, i64)> =
        weight.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k + 1, c)).collect();
    let missing = || Error::NoSuchVector(format!("S({weight})_{l}"));
    match nz.as_slice() {
        [(i, c)] if c.abs() == 1 => weight_vector_short(sig, Sign::from_value(*c).unwrap(), *i, l),
        [(i, c)] if c.abs() == 2 && l == 1 => weight_vector_double(sig, Sign::from_value(c / 2).unwrap(), *i),
        [(i, ci), (j, cj)] if l == 1 => {
            let ty = PairType::from_signs(*ci, *cj).ok_or_else(missing)?;
            weight_vector_mixed(sig, ty, *i, *j)
        }
        _ => Err(missing()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::standard_basis;
    use crate::eigen::satisfies_eigen_identity;
    use crate::so_pq::{abelian_a, bracket, is_member};

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
    fn complement_dimensions() {
        let c = complement_basis(&sig(4, 2));
        assert_eq!(c.basis.len(), 20);
        assert_eq!(c.basis.len() + 15, 35);
        assert_eq!(complement_basis(&sig(1, 1)).basis.len(), 2);
        for (p, q) in [(2, 0), (1, 1), (3, 2), (4, 2), (3, 3), (5, 0)] {
            let s = sig(p, q);
            let c = complement_basis(&s);
            assert_eq!(c.basis.len(), s.dim_s());
            assert!(c.basis.iter().all(|n| is_in_s(&s, &n.matrix)), "{s}");
        }
    }

    #[test]
    fn complement_labels_lead_with_plus_one() {
        let c = complement_basis(&sig(2, 1));
        let labels: Vec<&str> = c.basis.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(
            labels,
            ["A_{1,2}+A_{2,1}", "B_{1,1}-C_{1,1}", "B_{2,1}-C_{1,2}", "A_{1,1}-A_{2,2}", "A_{2,2}-D_{1,1}"]
        );
    }

    #[test]
    fn projection_examples() {
        let s = sig(3, 2);
        let x = crate::so_pq::standard_basis_so(&s)[3].clone();
        let (so, rest) = project(&s, &x).unwrap();
        assert_eq!(so, x);
        assert!(rest.is_zero());

        let s = sig(3, 0);
        let x = e(&s, &[(1, 1, 2), (-1, 2, 1)]);
        assert!(project(&s, &x).unwrap().1.is_zero());

        let s = sig(1, 1);
        let x = standard_basis(&s, 1, 2).unwrap();
        let (so, rest) = project(&s, &x).unwrap();
        let half = ExactScalar::new(1, 2).unwrap();
        let b_plus_c = block_combination(&s, &[(1, BlockIndex::b(1, 1)), (1, BlockIndex::c(1, 1))]).unwrap();
        assert_eq!(so, b_plus_c.scale(&half));
        assert_eq!(&so + &rest, x);
        assert!(is_member(&s, &so));
        assert!(is_in_s(&s, &rest));

        assert!(matches!(project(&s, &Matrix::identity(2)), Err(Error::NonzeroTrace(_))));
    }

    #[test]
    fn short_weight_vector_matches_golden() {
        let s = sig(4, 2);
        let v = weight_vector_short(&s, Sign::Plus, 1, 1).unwrap();
        assert_eq!(v, e(&s, &[(1, 2, 4), (-1, 2, 5), (1, 4, 2), (1, 5, 2)]));
        assert!(is_in_s(&s, &v));
        // the worked case: [F, S(f_1)_1] = f_1(F) S(f_1)_1
        let f = abelian_a(&s).element(&[3.into(), 11.into()]).unwrap();
        assert_eq!(bracket(&f, &v).unwrap(), v.scale(&ExactScalar::from_int(3)));
        assert!(weight_vector_short(&sig(2, 2), Sign::Plus, 1, 1).is_err());
    }

    #[test]
    fn double_weight_vectors() {
        let s = sig(4, 2);
        let v = weight_vector_double(&s, Sign::Plus, 1).unwrap();
        assert_eq!(v, e(&s, &[(1, 4, 4), (-1, 4, 5), (1, 5, 4), (-1, 5, 5)]));
        let gens = abelian_a(&s).generators;
        for i in 1..=2 {
            for sign in [Sign::Plus, Sign::Minus] {
                let v = weight_vector_double(&s, sign, i).unwrap();
                let form = LinearForm::basis(2, i, 2 * sign.value());
                assert!(satisfies_eigen_identity(&gens, &form, &v));
            }
            let sum =
                &weight_vector_double(&s, Sign::Plus, i).unwrap() + &weight_vector_double(&s, Sign::Minus, i).unwrap();
            let expected = block_combination(&s, &[(2, BlockIndex::a(i, i)), (-2, BlockIndex::d(i, i))]).unwrap();
            assert_eq!(sum, expected);
        }
        assert!(weight_vector_double(&s, Sign::Plus, 3).is_err());
    }

    #[test]
    fn mixed_weight_vectors() {
        let s = sig(4, 2);
        let v = weight_vector_mixed(&s, PairType::Sum, 1, 2).unwrap();
        assert_eq!(
            v,
            e(&s, &[(-1, 3, 4), (1, 3, 5), (-1, 4, 3), (1, 4, 6), (-1, 5, 3), (1, 5, 6), (-1, 6, 4), (1, 6, 5)])
        );
        let gens = abelian_a(&s).generators;
        for ty in PairType::ALL {
            let v = weight_vector_mixed(&s, ty, 1, 2).unwrap();
            assert!(satisfies_eigen_identity(&gens, &ty.form(2, 1, 2), &v), "{ty:?}");
            assert!(is_in_s(&s, &v));
        }
    }

    #[test]
    fn zero_weight_space_so42() {
        let s = sig(4, 2);
        let z = zero_weight_space(&s);
        assert_eq!(z.dim(), 4);
        let gens = abelian_a(&s).generators;
        for n in &z.basis {
            assert!(n.matrix.trace().is_zero(), "{}", n.label);
            assert!(is_in_s(&s, &n.matrix));
            for f in &gens {
                assert!(bracket(f, &n.matrix).unwrap().is_zero());
            }
        }
        // the (4,2) golden s_0 cells at parameter 1
        assert_eq!(z.basis[0].matrix, e(&s, &[(1, 1, 2), (1, 2, 1)]));
        let diag_sum = &z.basis[1].matrix + &z.basis[2].matrix;
        assert_eq!(diag_sum, e(&s, &[(2, 1, 1), (2, 2, 2), (-2, 4, 4), (-2, 5, 5)]));
        assert_eq!(z.basis[3].matrix, e(&s, &[(-1, 3, 3), (1, 4, 4), (1, 5, 5), (-1, 6, 6)]));
    }

    #[test]
    fn printed_diagonal_generator_is_not_traceless() {
        let s = sig(4, 2);
        let printed = zero_weight_diagonal_as_printed(&s, 1).unwrap();
        assert_eq!(printed.trace(), ExactScalar::from_int(4));
        assert!(!is_in_s(&s, &printed));
        let fixed = ZeroFamily::Diagonal { i: 1 }.matrix(&s).unwrap();
        assert!(is_in_s(&s, &fixed));
    }

    #[test]
    fn full_weight_systems() {
        let w = full_weight_system(&sig(4, 2));
        assert!(w.is_verified(), "{:?}", w.failures);
        let totals: Vec<usize> = w.table.iter().map(|r| r.total).collect();
        assert_eq!(totals, [8, 4, 2, 2, 4]);
        assert_eq!(w.total_dim(), 20);

        let w = full_weight_system(&sig(2, 2));
        assert!(w.is_verified(), "{:?}", w.failures);
        assert_eq!(w.total_dim(), 9);
        assert_eq!(w.space(&LinearForm::zero(2)).unwrap().dim(), 1);

        let w = full_weight_system(&sig(4, 0));
        assert!(w.is_verified(), "{:?}", w.failures);
        assert_eq!(w.spaces.len(), 1);
        assert_eq!(w.spaces[0].dim(), 9);

        let w = full_weight_system(&sig(1, 1));
        assert!(w.is_verified(), "{:?}", w.failures);
        assert!(w.space(&LinearForm::zero(1)).is_none());
    }

    #[test]
    fn lookup_by_weight() {
        let s = sig(4, 2);
        assert_eq!(
            weight_vector(&s, &LinearForm::basis(2, 2, -2), 1).unwrap(),
            weight_vector_double(&s, Sign::Minus, 2).unwrap()
        );
        assert_eq!(
            weight_vector(&s, &LinearForm::basis(2, 1, -1), 2).unwrap(),
            weight_vector_short(&s, Sign::Minus, 1, 2).unwrap()
        );
        assert!(weight_vector(&s, &LinearForm::zero(2), 1).is_err());
        assert!(weight_vector(&s, &LinearForm::basis(2, 1, 3), 1).is_err());
    }
}
