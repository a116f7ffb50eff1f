//! so(p,q) inside sl_d: membership, a basis, the Cartan decomposition `k ⊕ p`,
//! the maximal abelian subspace `a ⊂ p`, and linear forms on `a`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::{block_combination, decompose_blocks, BlockIndex, Signature};
use crate::error::{Error, Result};
use crate::linalg::{kernel, VectorSpaceBasis};
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

/// The Lie bracket of `gl_d`: `XY − YX`.
pub fn bracket(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    x.commutator(y)
}

/// A, D skew-symmetric and `Bᵗ = C`. Matrices of the wrong size are not members.
pub fn is_member(sig: &Signature, x: &Matrix) -> bool {
    let Ok(b) = decompose_blocks(sig, x) else {
        return false;
    };
    b.a.is_skew_symmetric() && b.d.is_skew_symmetric() && b.b.transpose() == b.c
}

/// `X ↦ −Xᵗ`; fixes `k` and negates `p`.
pub fn cartan_involution(x: &Matrix) -> Matrix {
    -&x.transpose()
}

/// A basis element together with a short human-readable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named {
    pub label: String,
    pub matrix: Matrix,
}

fn so_generators(sig: &Signature) -> (Vec<Named>, Vec<Named>) {
    let (p, q) = (sig.p(), sig.q());
    let mut k = Vec::new();
    let mut pp = Vec::new();
    let skew = |idx: BlockIndex, tr: BlockIndex| -> Named {
        Named {
            label: format!("{idx}-{tr}"),
            matrix: block_combination(sig, &[(1, idx), (-1, tr)]).expect("indices in range"),
        }
    };
    for i in 1..=p {
        for j in i + 1..=p {
            k.push(skew(BlockIndex::a(i, j), BlockIndex::a(j, i)));
        }
    }
    for i in 1..=p {
        for j in 1..=q {
            let (b, c) = (BlockIndex::b(i, j), BlockIndex::c(j, i));
            pp.push(Named {
                label: format!("{b}+{c}"),
                matrix: block_combination(sig, &[(1, b), (1, c)]).expect("indices in range"),
            });
        }
    }
    for i in 1..=q {
        for j in i + 1..=q {
            k.push(skew(BlockIndex::d(i, j), BlockIndex::d(j, i)));
        }
    }
    (k, pp)
}

/// The basis `{A_{i,j}−A_{j,i}} ∪ {B_{i,j}+C_{j,i}} ∪ {D_{i,j}−D_{j,i}}`, in
/// `(block, i, j)` order, with labels.
pub fn standard_basis_so_named(sig: &Signature) -> Vec<Named> {
    let (k, p) = so_generators(sig);
    let split = k.iter().position(|n| n.label.starts_with('D')).unwrap_or(k.len());
    let mut out: Vec<Named> = k[..split].to_vec();
    out.extend(p);
    out.extend_from_slice(&k[split..]);
    out
}

pub fn standard_basis_so(sig: &Signature) -> Vec<Matrix> {
    standard_basis_so_named(sig).into_iter().map(|n| n.matrix).collect()
}

/// `so(p,q) = k ⊕ p` as two lists of basis matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSplit {
    pub k_basis: Vec<Matrix>,
    pub p_basis: Vec<Matrix>,
}

pub fn cartan_split(sig: &Signature) -> CartanSplit {
    let (k, p) = so_generators(sig);
    CartanSplit {
        k_basis: k.into_iter().map(|n| n.matrix).collect(),
        p_basis: p.into_iter().map(|n| n.matrix).collect(),
    }
}

/// The generators `F_i = B_{i,i} + C_{i,i}`, `i = 1..q`, of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianA {
    pub generators: Vec<Matrix>,
}

impl AbelianA {
    /// `F = Σ a_i F_i`.
    pub fn element(&self, coefficients: &[ExactScalar]) -> Result<Matrix> {
        if coefficients.len() != self.generators.len() {
            return Err(Error::DimensionMismatch { expected: self.generators.len(), found: coefficients.len() });
        }
        let Some(first) = self.generators.first() else {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        };
        let mut f = Matrix::zeros(first.rows(), first.cols());
        for (a, g) in coefficients.iter().zip(&self.generators) {
            f.add_scaled(a, g)?;
        }
        Ok(f)
    }
}

pub fn abelian_a(sig: &Signature) -> AbelianA {
    let generators = (1..=sig.q())
        .map(|i| {
            block_combination(sig, &[(1, BlockIndex::b(i, i)), (1, BlockIndex::c(i, i))]).expect("indices in range")
        })
        .collect();
    AbelianA { generators }
}

/// Basis of the centralizer of `a` in `p`.
///
/// `a` is maximal abelian in `p` exactly when this equals `a`.
pub fn centralizer_of_a_in_p(sig: &Signature) -> Result<VectorSpaceBasis> {
    let d2 = sig.d() * sig.d();
    let p_basis = cartan_split(sig).p_basis;
    let a = abelian_a(sig);
    // Unknowns c_k with Σ c_k [F_i, P_k] = 0 for every i.
    let images: Vec<Vec<Matrix>> = a
        .generators
        .iter()
        .map(|f| p_basis.iter().map(|pk| bracket(f, pk)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for per_f in &images {
        for e in 0..d2 {
            rows.push(per_f.iter().map(|m| m.as_coords()[e].clone()).collect::<Vec<_>>());
        }
    }
    let ker = kernel(p_basis.len(), &rows)?;
    let mut span = VectorSpaceBasis::new(d2);
    for c in ker.vectors() {
        let mut y = Matrix::zero_square(sig.d());
        for (ck, pk) in c.iter().zip(&p_basis) {
            y.add_scaled(ck, pk)?;
        }
        span.insert_matrix(&y)?;
    }
    Ok(span)
}

/// A linear form `Σ c_i f_i` on `a`, where `f_i(F_j) = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(q: usize) -> Self {
        LinearForm { coeffs: vec![0; q] }
    }

    /// `c · f_i` (one-based `i`).
    pub fn basis(q: usize, i: usize, c: i64) -> Self {
        let mut f = Self::zero(q);
        f.coeffs[i - 1] = c;
        f
    }

    /// `s_i f_i + s_j f_j`.
    pub fn pair(q: usize, i: usize, si: i64, j: usize, sj: i64) -> Self {
        let mut f = Self::zero(q);
        f.coeffs[i - 1] += si;
        f.coeffs[j - 1] += sj;
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `Σ c_i a_i`: the value on `F = Σ a_i F_i`.
    pub fn evaluate(&self, a: &[ExactScalar]) -> Result<ExactScalar> {
        if a.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch { expected: self.coeffs.len(), found: a.len() });
        }
        Ok(self.coeffs.iter().zip(a).map(|(&c, x)| &ExactScalar::from_int(c) * x).sum())
    }

    /// Report order: descending lexicographic on the coefficient vector.
    pub fn report_cmp(&self, other: &LinearForm) -> Ordering {
        other.coeffs.cmp(&self.coeffs)
    }
}

pub fn evaluate_form(form: &LinearForm, a: &[ExactScalar]) -> Result<ExactScalar> {
    form.evaluate(a)
}

/// Renders e.g. `f1+f2`, `-2f1`, `f1-f3`, `0`.
impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let mag = if mag == 1 { String::new() } else { mag.to_string() };
            write!(f, "{sign}{mag}f{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
