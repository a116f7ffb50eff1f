//! Exact linear algebra over flattened coordinate spaces.
//!
//! Matrices enter this module through [`Matrix::to_coords`] (row-major
//! flattening). Everything here is exact; there is no tolerance anywhere.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{common_denominator, content, ExactScalar};

fn check_len(expected: usize, v: &[ExactScalar]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: v.len() });
    }
    Ok(())
}

/// Dimension of the span of `vectors`, by fraction-free elimination.
///
/// Each row is scaled to a primitive integer vector; elimination steps use
/// `r ← p·r − r[c]·pivot` followed by removal of the row content, so every
/// intermediate entry stays an integer.
pub fn rank(vectors: &[Vec<ExactScalar>]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let n = first.len();
    let mut rows: Vec<Vec<ExactScalar>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        check_len(n, v)?;
        if let Some(r) = primitive_integer_row(v) {
            rows.push(r);
        }
    }
    let mut rank = 0;
    for col in 0..n {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot.iter()).skip(col) {
                *x = &(&pv * x) - &(&factor * y);
            }
            let g = content(row);
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut().skip(col) {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Scales `v` to a primitive integer vector; `None` for the zero vector.
fn primitive_integer_row(v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    if v.iter().all(ExactScalar::is_zero) {
        return None;
    }
    let den = common_denominator(v);
    let ints: Vec<ExactScalar> = v.iter().map(|x| x * &den).collect();
    let g = content(&ints);
    Some(if g.is_one() { ints } else { ints.iter().map(|x| x / &g).collect() })
}

/// A basis of a subspace of `Q^n` in reduced row-echelon form.
///
/// Every vector has leading entry 1 and the pivot columns are zero in all other
/// vectors; vectors are sorted by pivot column. Two bases of the same subspace
/// are therefore identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorSpaceBasis {
    ambient_dim: usize,
    rows: Vec<Vec<ExactScalar>>,
    pivots: Vec<usize>,
    /// Nonzero positions of each row.
    support: Vec<Vec<usize>>,
}

impl VectorSpaceBasis {
    pub fn new(ambient_dim: usize) -> Self {
        VectorSpaceBasis { ambient_dim, rows: Vec::new(), pivots: Vec::new(), support: Vec::new() }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn from_vectors<V: AsRef<[ExactScalar]>>(ambient_dim: usize, vectors: &[V]) -> Result<Self> {
        let mut b = Self::new(ambient_dim);
        for v in vectors {
            b.insert(v.as_ref())?;
        }
        Ok(b)
    }

    /// Canonical basis of the span of flattened matrices.
    pub fn from_matrices(ambient_dim: usize, mats: &[Matrix]) -> Result<Self> {
        let mut b = Self::new(ambient_dim);
        for m in mats {
            b.insert(m.as_coords())?;
        }
        Ok(b)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<ExactScalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after reduction against the basis; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        check_len(self.ambient_dim, v)?;
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        Ok(w)
    }

    fn reduce_in_place(&self, w: &mut [ExactScalar]) {
        for ((row, &p), supp) in self.rows.iter().zip(&self.pivots).zip(&self.support) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for &k in supp {
                w[k] = w[k].sub_mul(&f, &row[k]);
            }
        }
    }

    pub fn contains(&self, v: &[ExactScalar]) -> Result<bool> {
        check_len(self.ambient_dim, v)?;
        if v.iter().all(ExactScalar::is_zero) {
            return Ok(true);
        }
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        Ok(w.iter().all(ExactScalar::is_zero))
    }

    pub fn contains_matrix(&self, m: &Matrix) -> Result<bool> {
        self.contains(m.as_coords())
    }

    /// Adds `v` to the span in place; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[ExactScalar]) -> Result<bool> {
        check_len(self.ambient_dim, v)?;
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = w[lead].recip()?;
        for x in w.iter_mut().skip(lead) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let new_support: Vec<usize> = (lead..w.len()).filter(|&k| !w[k].is_zero()).collect();
        for (row, supp) in self.rows.iter_mut().zip(self.support.iter_mut()) {
            if row[lead].is_zero() {
                continue;
            }
            let f = row[lead].clone();
            for &k in &new_support {
                row[k] = row[k].sub_mul(&f, &w[k]);
            }
            let mut merged: Vec<usize> = supp.iter().chain(&new_support).copied().collect();
            merged.sort_unstable();
            merged.dedup();
            merged.retain(|&k| !row[k].is_zero());
            *supp = merged;
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.rows.insert(at, w);
        self.pivots.insert(at, lead);
        self.support.insert(at, new_support);
        Ok(true)
    }

    pub fn insert_matrix(&mut self, m: &Matrix) -> Result<bool> {
        self.insert(m.as_coords())
    }

    /// Canonical basis of `span(self ∪ {v})`.
    pub fn extend_span(&self, v: &[ExactScalar]) -> Result<Self> {
        let mut b = self.clone();
        b.insert(v)?;
        Ok(b)
    }
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(v: &[ExactScalar], basis: &VectorSpaceBasis) -> Result<bool> {
    basis.contains(v)
}

/// Canonical basis of `span(basis ∪ {v})`.
pub fn extend_span(basis: &VectorSpaceBasis, v: &[ExactScalar]) -> Result<VectorSpaceBasis> {
    basis.extend_span(v)
}

type SparseRow = Vec<(usize, ExactScalar)>;

/// Row echelon form built incrementally from sparse rows; used for kernels of
/// large, sparse systems.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, row: SparseRow, own_pivot: Option<usize>) -> BTreeMap<usize, ExactScalar> {
        let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (c, v) in row {
            if v.is_zero() {
                continue;
            }
            let e = acc.entry(c).or_insert(ExactScalar::ZERO);
            *e += &v;
            if e.is_zero() {
                acc.remove(&c);
            }
        }
        let mut cursor = 0;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(c, _)| Some(**c) != own_pivot && self.pivot_row[**c].is_some())
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, coef)) = next else { break };
            let prow = &self.rows[self.pivot_row[c].unwrap()];
            for (cc, val) in prow {
                let e = acc.entry(*cc).or_insert(ExactScalar::ZERO);
                *e = e.sub_mul(&coef, val);
                if e.is_zero() {
                    acc.remove(cc);
                }
            }
            cursor = c + 1;
        }
        acc
    }

    /// Adds an equation row; returns whether it was independent of the previous ones.
    pub fn add_row(&mut self, row: SparseRow) -> Result<bool> {
        if let Some((c, _)) = row.iter().find(|(c, _)| *c >= self.ncols) {
            return Err(Error::IndexOutOfRange(format!("column {c} in a system with {} unknowns", self.ncols)));
        }
        let acc = self.reduce(row, None);
        let Some((&lead, lead_val)) = acc.iter().next() else {
            return Ok(false);
        };
        let inv = lead_val.recip()?;
        let normalized: SparseRow = acc.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(normalized);
        Ok(true)
    }

    pub fn add_dense_row(&mut self, row: &[ExactScalar]) -> Result<bool> {
        check_len(self.ncols, row)?;
        self.add_row(row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
    }

    /// Basis of the solution space of the homogeneous system.
    pub fn kernel(&self) -> Result<VectorSpaceBasis> {
        // Back-substitute into reduced form, highest pivot first.
        let mut order: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect();
        order.reverse();
        let mut reduced = self.clone();
        for c in order {
            let r = reduced.pivot_row[c].unwrap();
            let row = std::mem::take(&mut reduced.rows[r]);
            let acc = reduced.reduce(row, Some(c));
            reduced.rows[r] = acc.into_iter().collect();
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect();
        let mut slot = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut vecs = vec![vec![ExactScalar::ZERO; self.ncols]; free.len()];
        for (k, &f) in free.iter().enumerate() {
            vecs[k][f] = ExactScalar::ONE;
        }
        for (c, pr) in self.pivot_row.iter().enumerate() {
            let Some(r) = pr else { continue };
            for (cc, val) in &reduced.rows[*r] {
                if *cc != c {
                    vecs[slot[*cc]][c] = -val;
                }
            }
        }
        VectorSpaceBasis::from_vectors(self.ncols, &vecs)
    }
}

/// Null space of the matrix whose rows are `rows`.
pub fn kernel(ncols: usize, rows: &[Vec<ExactScalar>]) -> Result<VectorSpaceBasis> {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.add_dense_row(r)?;
    }
    e.kernel()
}

/// Basis of `{T : T·M = M·T for all M in maps}`, as flattened `n × n` matrices.
///
/// The unknowns are the `n²` entries of `T`; every entry of every `T·M − M·T`
/// contributes one sparse equation. The identity always commutes, so elimination
/// stops as soon as the rank reaches `n² − 1`.
pub fn solve_commutant(n: usize, maps: &[Matrix]) -> Result<VectorSpaceBasis> {
    for m in maps {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if m.rows() != n { m.rows() } else { m.cols() },
            });
        }
    }
    let nn = n * n;
    let mut rows: Vec<SparseRow> = Vec::new();
    for m in maps {
        let nz: Vec<(usize, usize, ExactScalar)> = m.nonzero_entries().map(|(r, c, v)| (r, c, v.clone())).collect();
        // (TM − MT)_{ab} = Σ_k T_{ak} M_{kb} − Σ_k M_{ak} T_{kb}
        let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, ExactScalar>> = BTreeMap::new();
        for (k, b, v) in &nz {
            for a in 0..n {
                let e = eqs.entry((a, *b)).or_default();
                let slot = e.entry(a * n + k).or_insert(ExactScalar::ZERO);
                *slot += v;
            }
        }
        for (a, k, v) in &nz {
            for b in 0..n {
                let e = eqs.entry((*a, b)).or_default();
                let slot = e.entry(k * n + b).or_insert(ExactScalar::ZERO);
                *slot -= v;
            }
        }
        for (_, eq) in eqs {
            let row: SparseRow = eq.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows.sort_by_key(Vec::len);
    let mut ech = SparseEchelon::new(nn);
    for row in rows {
        if nn > 0 && ech.rank() == nn - 1 {
            return VectorSpaceBasis::from_matrices(nn, &[Matrix::identity(n)]);
        }
        ech.add_row(row)?;
    }
    ech.kernel()
}

/// Coordinates with respect to a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinates {
    ambient_dim: usize,
    basis: Vec<Vec<ExactScalar>>,
    /// Ambient positions on which the basis is already independent.
    probe: Vec<usize>,
    /// Inverse of the basis restricted to `probe`, row-major `m × m`.
    inverse: Vec<Vec<ExactScalar>>,
}

impl Coordinates {
    /// Fails with [`Error::DimensionMismatch`] when the family is dependent.
    pub fn new<V: AsRef<[ExactScalar]>>(ambient_dim: usize, basis: &[V]) -> Result<Self> {
        let basis: Vec<Vec<ExactScalar>> = basis.iter().map(|v| v.as_ref().to_vec()).collect();
        for v in &basis {
            check_len(ambient_dim, v)?;
        }
        let m = basis.len();
        let span = VectorSpaceBasis::from_vectors(ambient_dim, &basis)?;
        if span.dim() != m {
            return Err(Error::DimensionMismatch { expected: m, found: span.dim() });
        }
        let probe = span.pivots().to_vec();
        // Gauss-Jordan on [S | I], S_{k,j} = basis[j][probe[k]].
        let mut aug: Vec<Vec<ExactScalar>> = (0..m)
            .map(|k| {
                let mut row: Vec<ExactScalar> = (0..m).map(|j| basis[j][probe[k]].clone()).collect();
                row.extend((0..m).map(|j| if j == k { ExactScalar::ONE } else { ExactScalar::ZERO }));
                row
            })
            .collect();
        for col in 0..m {
            let p = (col..m).find(|&r| !aug[r][col].is_zero()).expect("restriction to pivot positions is invertible");
            aug.swap(col, p);
            let inv = aug[col][col].recip()?;
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.sub_mul(&f, y);
                }
            }
        }
        let inverse = aug.into_iter().map(|row| row[m..].to_vec()).collect();
        Ok(Coordinates { ambient_dim, basis, probe, inverse })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<ExactScalar>] {
        &self.basis
    }

    /// Coefficients `c` with `Σ c_j basis_j = v`; fails with [`Error::NotInSpan`].
    pub fn coords(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        check_len(self.ambient_dim, v)?;
        let c: Vec<ExactScalar> = self
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.probe)
                    .filter(|(a, &k)| !a.is_zero() && !v[k].is_zero())
                    .map(|(a, &k)| a * &v[k])
                    .sum()
            })
            .collect();
        let mut check = vec![ExactScalar::ZERO; self.ambient_dim];
        for (cj, bj) in c.iter().zip(&self.basis) {
            if cj.is_zero() {
                continue;
            }
            for (x, y) in check.iter_mut().zip(bj) {
                if !y.is_zero() {
                    *x += &(cj * y);
                }
            }
        }
        if check != v {
            return Err(Error::NotInSpan);
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<ExactScalar> {
        xs.iter().map(|&x| ExactScalar::from_int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap(), 2);
        assert_eq!(rank(&[v(&[0, 0, 0])]).unwrap(), 0);
        assert_eq!(rank(&[v(&[2, 4, 6]), v(&[1, 2, 3]), v(&[0, 0, 1])]).unwrap(), 2);
        assert!(rank(&[v(&[1, 0]), v(&[1])]).is_err());
    }

    #[test]
    fn rank_with_fractions() {
        let half = ExactScalar::new(1, 2).unwrap();
        let third = ExactScalar::new(1, 3).unwrap();
        let a = vec![half.clone(), third.clone()];
        let b = vec![ExactScalar::from_int(3), ExactScalar::from_int(2)];
        assert_eq!(rank(&[a, b]).unwrap(), 1);
    }

    #[test]
    fn span_examples() {
        let b = VectorSpaceBasis::from_vectors(2, &[v(&[1, 0])]).unwrap();
        assert!(in_span(&v(&[0, 0]), &b).unwrap());
        assert!(!in_span(&v(&[1, 1]), &b).unwrap());
        assert!(in_span(&v(&[0, 0]), &VectorSpaceBasis::new(2)).unwrap());
        assert_eq!(extend_span(&b, &v(&[2, 0])).unwrap(), b);
        let e = extend_span(&VectorSpaceBasis::new(2), &v(&[0, 3])).unwrap();
        assert_eq!(e.vectors(), &[v(&[0, 1])]);
        assert!(in_span(&v(&[1]), &b).is_err());
        assert!(extend_span(&b, &v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = VectorSpaceBasis::from_vectors(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let b = VectorSpaceBasis::from_vectors(3, &[v(&[1, 3, 4]), v(&[2, 5, 7])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vectors(), &[v(&[1, 0, 1]), v(&[0, 1, 1])]);
    }

    #[test]
    fn kernel_of_small_system() {
        // x + y + z = 0, y − z = 0  ⇒  kernel spanned by (−2, 1, 1)
        let k = kernel(3, &[v(&[1, 1, 1]), v(&[0, 1, -1])]).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(&[-2, 1, 1])).unwrap());
        assert_eq!(kernel(2, &[]).unwrap().dim(), 2);
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(solve_commutant(2, &[]).unwrap().dim(), 4);
        let diag = Matrix::from_int_rows(&[vec![1, 0], vec![0, 2]]).unwrap();
        let c = solve_commutant(2, &[diag]).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&v(&[1, 0, 0, 0])).unwrap());
        assert!(c.contains(&v(&[0, 0, 0, 1])).unwrap());
        let jordan = Matrix::from_int_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        // commutant of a nilpotent Jordan block: polynomials in it
        assert_eq!(solve_commutant(2, &[jordan]).unwrap().dim(), 2);
        let rot = Matrix::from_int_rows(&[vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(solve_commutant(2, &[rot]).unwrap().dim(), 2);
        assert!(solve_commutant(3, &[Matrix::identity(2)]).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = [v(&[1, 1, 0, 0]), v(&[0, 1, 1, 0]), v(&[0, 0, 0, 2])];
        let c = Coordinates::new(4, &basis).unwrap();
        let target = v(&[3, 5, 2, -4]);
        assert_eq!(c.coords(&target).unwrap(), v(&[3, 2, -2]));
        assert_eq!(c.coords(&v(&[1, 0, 0, 0])), Err(Error::NotInSpan));
        assert!(Coordinates::new(2, &[v(&[1, 1]), v(&[2, 2])]).is_err());
    }
}
