//! Independent oracles: plain `BigRational` rows, dense elimination, and the
//! defining equations of so(p,q) and s. Nothing here calls the crate's linear algebra.

#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sopq::{Matrix, Signature};

pub type Q = BigRational;
pub type Dense = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn dense(m: &Matrix) -> Dense {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_big()).collect()).collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn comm(a: &Dense, b: &Dense) -> Dense {
    let ab = mul(a, b);
    let ba = mul(b, a);
    ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

pub fn flatten(a: &Dense) -> Vec<Q> {
    a.iter().flatten().cloned().collect()
}

/// Rank by dense Gauss–Jordan over ℚ.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = Q::one() / &m[r][c];
        let pivot_row: Vec<Q> = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// `η = diag(1,…,1, −1,…,−1)` with `p` plus signs.
pub fn eta(sig: &Signature) -> Dense {
    let d = sig.d();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i != j {
                        q(0)
                    } else if i < sig.p() {
                        q(1)
                    } else {
                        q(-1)
                    }
                })
                .collect()
        })
        .collect()
}

fn unit(d: usize, k: usize) -> Dense {
    let mut e = vec![vec![q(0); d]; d];
    e[k / d][k % d] = q(1);
    e
}

/// Rows of the linear conditions cutting out `so(p,q) = {X : Xᵗη + ηX = 0}` in `gl_d`.
pub fn so_conditions(sig: &Signature) -> Vec<Vec<Q>> {
    let d = sig.d();
    let n = eta(sig);
    let mut rows = vec![vec![q(0); d * d]; d * d];
    for k in 0..d * d {
        let e = unit(d, k);
        let et: Dense = (0..d).map(|i| (0..d).map(|j| e[j][i].clone()).collect()).collect();
        let v = flatten(&mul(&et, &n)).into_iter().zip(flatten(&mul(&n, &e))).map(|(a, b)| a + b);
        for (r, x) in v.enumerate() {
            rows[r][k] = x;
        }
    }
    rows
}

/// Rows cutting out `s = {X : Xᵗη = ηX, tr X = 0}`.
pub fn s_conditions(sig: &Signature) -> Vec<Vec<Q>> {
    let d = sig.d();
    let n = eta(sig);
    let mut rows = vec![vec![q(0); d * d]; d * d + 1];
    for k in 0..d * d {
        let e = unit(d, k);
        let et: Dense = (0..d).map(|i| (0..d).map(|j| e[j][i].clone()).collect()).collect();
        let v = flatten(&mul(&et, &n)).into_iter().zip(flatten(&mul(&n, &e))).map(|(a, b)| a - b);
        for (r, x) in v.enumerate() {
            rows[r][k] = x;
        }
        if k / d == k % d {
            rows[d * d][k] = q(1);
        }
    }
    rows
}

/// `F_i = E_{p+1−i, p+i} + E_{p+i, p+1−i}` (one-based), built from the definition.
pub fn a_generator(sig: &Signature, i: usize) -> Dense {
    let d = sig.d();
    let p = sig.p();
    let mut f = vec![vec![q(0); d]; d];
    f[p - i][p + i - 1] = q(1);
    f[p + i - 1][p - i] = q(1);
    f
}

/// Generic `F = Σ 5^(i−1) F_i`: distinct forms with coefficients in `−2..=2` get distinct values.
pub fn generic_f(sig: &Signature) -> (Dense, Vec<i64>) {
    let d = sig.d();
    let mut f = vec![vec![q(0); d]; d];
    let mut weights = Vec::new();
    let mut w = 1;
    for i in 1..=sig.q() {
        let g = a_generator(sig, i);
        for r in 0..d {
            for c in 0..d {
                f[r][c] += &g[r][c] * q(w);
            }
        }
        weights.push(w);
        w *= 5;
    }
    (f, weights)
}

/// `dim {X : conditions(X) = 0, [F, X] = μX}`.
pub fn eigen_dim(sig: &Signature, conditions: &[Vec<Q>], f: &Dense, mu: i64) -> usize {
    let d = sig.d();
    let mut rows = conditions.to_vec();
    let mut ad = vec![vec![q(0); d * d]; d * d];
    for k in 0..d * d {
        let e = unit(d, k);
        for (r, x) in flatten(&comm(f, &e)).into_iter().enumerate() {
            ad[r][k] = x;
        }
        ad[k][k] -= q(mu);
    }
    rows.extend(ad);
    d * d - rank(&rows)
}

/// Smallest subspace containing `seed` and closed under `ad(g)` for `g` in `gens`; no early stop.
pub fn closure_dim(gens: &[Dense], seed: &Dense) -> usize {
    let mut span = vec![flatten(seed)];
    let mut frontier = vec![seed.clone()];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = comm(g, &v);
            let mut trial = span.clone();
            trial.push(flatten(&w));
            if rank(&trial) > span.len() {
                span = trial;
                frontier.push(w);
            }
        }
    }
    span.len()
}
