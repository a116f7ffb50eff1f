//! Index conventions for `Mat_d`: the standard basis `E_{i,j}` and the block
//! basis `A_{i,j}, B_{i,j}, C_{i,j}, D_{i,j}`.
//!
//! With `d = p + q`, the block basis is a relabelling of the standard one:
//!
//! ```text
//! A_{i,j} = E_{p+1-i, p+1-j}    B_{i,j} = E_{p+1-i, p+j}
//! C_{i,j} = E_{p+i,   p+1-j}    D_{i,j} = E_{p+i,   p+j}
//! ```
//!
//! All indices in this module are one-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

/// A signature `(p, q)` with `d = p + q ≥ 2`, normalized so that `p ≥ q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSignature")]
pub struct Signature {
    p: usize,
    q: usize,
    /// The caller passed `p < q` and the values were exchanged.
    swapped: bool,
}

#[derive(Deserialize)]
struct RawSignature {
    p: usize,
    q: usize,
    #[serde(default)]
    swapped: bool,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;

    fn try_from(raw: RawSignature) -> Result<Self> {
        if raw.p < raw.q {
            return Err(Error::InvalidSignature { p: raw.p, q: raw.q });
        }
        let sig = Signature::new(raw.p, raw.q)?;
        Ok(Signature { swapped: raw.swapped, ..sig })
    }
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q < 2 {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(if p >= q { Signature { p, q, swapped: false } } else { Signature { p: q, q: p, swapped: true } })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn d(&self) -> usize {
        self.p + self.q
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// `½(p(p−1) + q(q−1)) + pq`
    pub fn dim_so(&self) -> usize {
        let (p, q) = (self.p, self.q);
        (p * p.saturating_sub(1) + q * q.saturating_sub(1)) / 2 + p * q
    }

    /// `½(p(p+1) + q(q+1)) + pq − 1`
    pub fn dim_s(&self) -> usize {
        let (p, q) = (self.p, self.q);
        (p * (p + 1) + q * (q + 1)) / 2 + p * q - 1
    }

    /// so(p,q) is semisimple exactly when `d ≥ 3`; so(2) and so(1,1) are abelian.
    pub fn is_semisimple(&self) -> bool {
        self.d() >= 3
    }

    /// Every signature `p ≥ q` with `d_min ≤ p + q ≤ d_max`, ordered by `d` then `p`.
    pub fn range(d_min: usize, d_max: usize) -> Vec<Signature> {
        let mut out = Vec::new();
        for d in d_min.max(2)..=d_max {
            for q in 0..=d / 2 {
                out.push(Signature { p: d - q, q, swapped: false });
            }
        }
        out.sort_by_key(|s| (s.d(), std::cmp::Reverse(s.p)));
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// One of the four blocks of the `2 × 2` block partition at row/column `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Block::A => "A",
            Block::B => "B",
            Block::C => "C",
            Block::D => "D",
        };
        f.write_str(s)
    }
}

/// A block-basis label such as `B_{2,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockIndex {
    pub block: Block,
    pub i: usize,
    pub j: usize,
}

impl BlockIndex {
    pub const fn new(block: Block, i: usize, j: usize) -> Self {
        BlockIndex { block, i, j }
    }

    pub const fn a(i: usize, j: usize) -> Self {
        Self::new(Block::A, i, j)
    }

    pub const fn b(i: usize, j: usize) -> Self {
        Self::new(Block::B, i, j)
    }

    pub const fn c(i: usize, j: usize) -> Self {
        Self::new(Block::C, i, j)
    }

    pub const fn d(i: usize, j: usize) -> Self {
        Self::new(Block::D, i, j)
    }

    /// Row and column bounds `(i_max, j_max)` for this block.
    fn bounds(&self, sig: &Signature) -> (usize, usize) {
        let (p, q) = (sig.p(), sig.q());
        match self.block {
            Block::A => (p, p),
            Block::B => (p, q),
            Block::C => (q, p),
            Block::D => (q, q),
        }
    }

    pub fn is_valid(&self, sig: &Signature) -> bool {
        let (imax, jmax) = self.bounds(sig);
        (1..=imax).contains(&self.i) && (1..=jmax).contains(&self.j)
    }

    /// The `(row, col)` of the single nonzero entry, one-based.
    pub fn position(&self, sig: &Signature) -> Result<(usize, usize)> {
        if !self.is_valid(sig) {
            return Err(Error::IndexOutOfRange(format!("{self} for signature {sig}")));
        }
        let p = sig.p();
        let (i, j) = (self.i, self.j);
        Ok(match self.block {
            Block::A => (p + 1 - i, p + 1 - j),
            Block::B => (p + 1 - i, p + j),
            Block::C => (p + i, p + 1 - j),
            Block::D => (p + i, p + j),
        })
    }

    /// Every valid block index in `(block, i, j)` lexicographic order.
    pub fn all(sig: &Signature) -> Vec<BlockIndex> {
        let mut out = Vec::with_capacity(sig.d() * sig.d());
        for block in [Block::A, Block::B, Block::C, Block::D] {
            let (imax, jmax) = BlockIndex::new(block, 1, 1).bounds(sig);
            for i in 1..=imax {
                for j in 1..=jmax {
                    out.push(BlockIndex::new(block, i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}", self.block, self.i, self.j)
    }
}

/// `E_{i,j}`: the `d × d` matrix with a single 1 at row `i`, column `j`.
pub fn standard_basis(sig: &Signature, i: usize, j: usize) -> Result<Matrix> {
    let d = sig.d();
    if !(1..=d).contains(&i) || !(1..=d).contains(&j) {
        return Err(Error::IndexOutOfRange(format!("E_{{{i},{j}}} with d = {d}")));
    }
    let mut m = Matrix::zero_square(d);
    m.set(i - 1, j - 1, ExactScalar::ONE);
    Ok(m)
}

/// The single-entry matrix named by a block index.
pub fn block_basis(sig: &Signature, idx: BlockIndex) -> Result<Matrix> {
    let (r, c) = idx.position(sig)?;
    standard_basis(sig, r, c)
}

/// `Σ coeff · block_basis(idx)`.
pub fn block_combination(sig: &Signature, terms: &[(i64, BlockIndex)]) -> Result<Matrix> {
    let d = sig.d();
    let mut m = Matrix::zero_square(d);
    for &(coeff, idx) in terms {
        let (r, c) = idx.position(sig)?;
        let cur = m.get(r - 1, c - 1) + &ExactScalar::from_int(coeff);
        m.set(r - 1, c - 1, cur);
    }
    Ok(m)
}

/// The blocks `A (p×p)`, `B (p×q)`, `C (q×p)`, `D (q×q)` of a `d × d` matrix,
/// in storage orientation (rows and columns as they sit in the matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

impl Blocks {
    pub fn reassemble(&self) -> Matrix {
        let (p, q) = (self.a.rows(), self.d.rows());
        let mut m = Matrix::zero_square(p + q);
        for (blk, r0, c0) in [(&self.a, 0, 0), (&self.b, 0, p), (&self.c, p, 0), (&self.d, p, p)] {
            for (r, c, v) in blk.nonzero_entries() {
                m.set(r0 + r, c0 + c, v.clone());
            }
        }
        m
    }
}

pub fn decompose_blocks(sig: &Signature, x: &Matrix) -> Result<Blocks> {
    let (p, q, d) = (sig.p(), sig.q(), sig.d());
    if x.rows() != d || x.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: if x.rows() != d { x.rows() } else { x.cols() } });
    }
    Ok(Blocks {
        a: x.submatrix(0, 0, p, p)?,
        b: x.submatrix(0, p, p, q)?,
        c: x.submatrix(p, 0, q, p)?,
        d: x.submatrix(p, p, q, q)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn signature_normalization() {
        let s = sig(2, 4);
        assert_eq!((s.p(), s.q(), s.swapped()), (4, 2, true));
        assert!(!sig(4, 2).swapped());
        assert!(Signature::new(1, 0).is_err());
        assert!(Signature::new(0, 0).is_err());
        assert_eq!(sig(2, 0).q(), 0);
        assert_eq!(sig(4, 2).dim_so(), 15);
        assert_eq!(sig(4, 2).dim_s(), 20);
    }

    #[test]
    fn standard_basis_examples() {
        let e = standard_basis(&sig(1, 1), 1, 2).unwrap();
        assert_eq!(e, Matrix::from_int_rows(&[vec![0, 1], vec![0, 0]]).unwrap());
        let s = sig(4, 2);
        assert_eq!(standard_basis(&s, 6, 1).unwrap().nonzero_entries().next().map(|(r, c, _)| (r, c)), Some((5, 0)));
        assert_eq!(standard_basis(&s, 3, 3).unwrap().trace(), ExactScalar::ONE);
        assert!(standard_basis(&s, 7, 1).is_err());
        assert!(standard_basis(&s, 0, 1).is_err());
    }

    #[test]
    fn block_basis_examples_for_so42() {
        let s = sig(4, 2);
        assert_eq!(block_basis(&s, BlockIndex::a(1, 1)).unwrap(), standard_basis(&s, 4, 4).unwrap());
        assert_eq!(block_basis(&s, BlockIndex::b(1, 1)).unwrap(), standard_basis(&s, 4, 5).unwrap());
        assert_eq!(block_basis(&s, BlockIndex::d(2, 2)).unwrap(), standard_basis(&s, 6, 6).unwrap());
        assert!(block_basis(&s, BlockIndex::b(1, 3)).is_err());
        assert!(block_basis(&s, BlockIndex::c(3, 1)).is_err());
    }

    #[test]
    fn block_basis_is_a_bijection_onto_the_standard_basis() {
        for (p, q) in [(1, 1), (2, 0), (3, 2), (4, 2), (3, 3), (5, 1)] {
            let s = sig(p, q);
            let d = s.d();
            let all = BlockIndex::all(&s);
            assert_eq!(all.len(), d * d);
            let positions: HashSet<_> = all.iter().map(|i| i.position(&s).unwrap()).collect();
            assert_eq!(positions.len(), d * d);
            for idx in all {
                let (r, c) = idx.position(&s).unwrap();
                let (top, left) = (r <= p, c <= p);
                let expected = match (top, left) {
                    (true, true) => Block::A,
                    (true, false) => Block::B,
                    (false, true) => Block::C,
                    (false, false) => Block::D,
                };
                assert_eq!(idx.block, expected, "{idx} at ({r},{c})");
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let s = sig(1, 1);
        let blocks = decompose_blocks(&s, &Matrix::identity(2)).unwrap();
        assert_eq!(blocks.a, Matrix::identity(1));
        assert!(blocks.b.is_zero() && blocks.c.is_zero());
        assert_eq!(blocks.d, Matrix::identity(1));

        let s = sig(3, 2);
        let e = standard_basis(&s, 1, 5).unwrap();
        let blocks = decompose_blocks(&s, &e).unwrap();
        assert!(blocks.a.is_zero() && blocks.c.is_zero() && blocks.d.is_zero());
        assert!(!blocks.b.is_zero());
        assert_eq!(blocks.reassemble(), e);

        // F = Σ a_i (B_{i,i} + C_{i,i}) with a = (1, 2)
        let s = sig(4, 2);
        let f = block_combination(
            &s,
            &[(1, BlockIndex::b(1, 1)), (1, BlockIndex::c(1, 1)), (2, BlockIndex::b(2, 2)), (2, BlockIndex::c(2, 2))],
        )
        .unwrap();
        let blocks = decompose_blocks(&s, &f).unwrap();
        assert!(blocks.a.is_zero() && blocks.d.is_zero());
        let anti = Matrix::from_int_rows(&[vec![0, 0], vec![0, 0], vec![0, 2], vec![1, 0]]).unwrap();
        assert_eq!(blocks.b, anti);
        assert_eq!(blocks.c, anti.transpose());
        assert!(decompose_blocks(&s, &Matrix::identity(5)).is_err());
    }

    #[test]
    fn empty_blocks_when_q_is_zero() {
        let s = sig(3, 0);
        assert_eq!(BlockIndex::all(&s).len(), 9);
        let blocks = decompose_blocks(&s, &Matrix::identity(3)).unwrap();
        assert_eq!((blocks.b.rows(), blocks.b.cols()), (3, 0));
        assert_eq!(blocks.reassemble(), Matrix::identity(3));
    }
}
