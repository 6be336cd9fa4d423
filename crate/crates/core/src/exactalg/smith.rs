//! Smith normal form over the integers.
//!
//! Large sparse matrices are first shrunk by eliminating unit pivots (each
//! one contributes an invariant factor 1 and removes a row and a column
//! without changing the remaining invariant factors). Whatever is left is
//! copied into a dense array and reduced with minimal-absolute-value
//! pivoting, which also produces the unimodular transforms when asked.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::domain::CoefficientDomain;
use super::matrix::{ExactMatrix, SparseVec};
use crate::error::{Error, Result};

/// Dense phase is used directly below this many entries.
const DENSE_THRESHOLD: usize = 64 * 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    /// Positive invariant factors `d_1 | d_2 | ... | d_rank`.
    #[serde(serialize_with = "ser_bigints")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)` with `U * m * V` equal to the diagonal form.
    #[serde(skip)]
    pub transforms: Option<(ExactMatrix, ExactMatrix)>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl SmithForm {
    /// Invariant factors only.
    pub fn compute(m: &ExactMatrix) -> SmithForm {
        if m.rows() * m.cols() <= DENSE_THRESHOLD {
            let (factors, _) = dense_snf(m.to_dense(), m.rows(), m.cols(), false);
            return SmithForm {
                rank: factors.len(),
                invariant_factors: factors,
                transforms: None,
            };
        }
        let (ones, rest, r, c) = eliminate_unit_pivots(m);
        let (mut tail, _) = dense_snf(rest, r, c, false);
        let mut factors = vec![BigInt::one(); ones];
        factors.append(&mut tail);
        SmithForm {
            rank: factors.len(),
            invariant_factors: factors,
            transforms: None,
        }
    }

    /// Invariant factors together with unimodular `U`, `V`.
    pub fn with_transforms(m: &ExactMatrix) -> SmithForm {
        let (factors, t) = dense_snf(m.to_dense(), m.rows(), m.cols(), true);
        SmithForm {
            rank: factors.len(),
            invariant_factors: factors,
            transforms: t,
        }
    }

    /// Invariant factors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// The diagonal matrix with the same shape as the input.
    pub fn diagonal(&self, rows: usize, cols: usize) -> ExactMatrix {
        let data = (0..rows)
            .map(|i| match self.invariant_factors.get(i) {
                Some(d) if i < cols => vec![(i, d.clone())],
                _ => Vec::new(),
            })
            .collect();
        ExactMatrix::from_rows(rows, cols, data).expect("diagonal is well formed")
    }
}

/// Smith normal form of an integer matrix. Only defined over `Z`.
pub fn smith_normal_form(m: &ExactMatrix, domain: CoefficientDomain) -> Result<SmithForm> {
    if domain != CoefficientDomain::Integers {
        return Err(Error::UnsupportedDomain {
            op: "smith_normal_form",
            domain: domain.to_string(),
        });
    }
    Ok(SmithForm::compute(m))
}

/// Canonical invariant factors (each > 1, divisibility chain) of the direct
/// sum of the cyclic groups `Z/d` for `d` in `orders`.
pub fn canonical_torsion(orders: &[BigInt]) -> Vec<BigInt> {
    let n = orders.len();
    let mut dense = vec![vec![BigInt::zero(); n]; n];
    for (i, d) in orders.iter().enumerate() {
        dense[i][i] = d.clone();
    }
    let (f, _) = dense_snf(dense, n, n, false);
    f.into_iter().filter(|d| !d.is_one()).collect()
}

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn row_axpy(a: &mut Dense, dst: usize, src: usize, q: &BigInt) {
    // row_dst -= q * row_src
    if q.is_zero() {
        return;
    }
    let (s, d) = if src < dst {
        let (lo, hi) = a.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(a: &mut Dense, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn swap_cols(a: &mut Dense, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Classic elimination with minimal-absolute-value pivots. Produces the
/// divisibility chain directly: a pivot that fails to divide the remaining
/// block absorbs an offending row and is reduced again.
fn dense_snf(mut a: Dense, rows: usize, cols: usize, track: bool) -> (Vec<BigInt>, Option<(ExactMatrix, ExactMatrix)>) {
    let mut u = if track { identity(rows) } else { Vec::new() };
    let mut v = if track { identity(cols) } else { Vec::new() };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // global min-abs pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if track {
            u.swap(t, pi);
        }
        swap_cols(&mut a, t, pj);
        if track {
            swap_cols(&mut v, t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    if track {
                        row_axpy(&mut u, i, t, &q);
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    if track {
                        col_axpy(&mut v, j, t, &q);
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                let p = a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
                match bad {
                    None => break,
                    Some(i) => {
                        // row_t += row_i
                        row_axpy(&mut a, t, i, &BigInt::from(-1));
                        if track {
                            row_axpy(&mut u, t, i, &BigInt::from(-1));
                        }
                        continue;
                    }
                }
            }
            // bring the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                if track {
                    u.swap(t, best.0);
                }
            } else if best.1 != t {
                swap_cols(&mut a, t, best.1);
                if track {
                    swap_cols(&mut v, t, best.1);
                }
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            if track {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        factors.push(a[t][t].clone());
        t += 1;
    }
    let transforms = track.then(|| {
        (
            ExactMatrix::from_dense_big(rows, rows, u),
            ExactMatrix::from_dense_big(cols, cols, v),
        )
    });
    (factors, transforms)
}

/// Removes unit pivots from a sparse integer matrix. Returns the number of
/// pivots removed and the remaining block as a dense array.
fn eliminate_unit_pivots(m: &ExactMatrix) -> (usize, Dense, usize, usize) {
    let mut rows: Vec<SparseVec<BigInt>> = m.row_vecs().to_vec();
    let mut alive = vec![true; rows.len()];
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols()];
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_rows[*j].insert(i);
        }
    }
    let mut ones = 0;
    loop {
        let mut progressed = false;
        for r in 0..rows.len() {
            if !alive[r] || rows[r].is_empty() {
                continue;
            }
            // unit entry in the sparsest column
            let pick = rows[r]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(j, _)| col_rows[*j].len())
                .map(|(j, v)| (*j, v.clone()));
            let Some((c, pv)) = pick else { continue };
            let pivot_row = rows[r].clone();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                // row_i -= (a_ic / pv) * row_r ; pv = +-1
                let a_ic = rows[i]
                    .iter()
                    .find(|(j, _)| *j == c)
                    .map(|(_, v)| v.clone())
                    .expect("column index is consistent");
                let q = &a_ic * &pv;
                let updated = sparse_axpy(&rows[i], &pivot_row, &q);
                for (j, _) in &rows[i] {
                    col_rows[*j].remove(&i);
                }
                for (j, _) in &updated {
                    col_rows[*j].insert(i);
                }
                rows[i] = updated;
            }
            for (j, _) in &pivot_row {
                col_rows[*j].remove(&r);
            }
            alive[r] = false;
            ones += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| alive[i] && !rows[i].is_empty()).collect();
    let mut live_cols: Vec<usize> = (0..m.cols()).filter(|&j| !col_rows[j].is_empty()).collect();
    live_cols.sort_unstable();
    let col_pos: std::collections::HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (k, &i) in live_rows.iter().enumerate() {
        for (j, v) in &rows[i] {
            dense[k][col_pos[j]] = v.clone();
        }
    }
    (ones, dense, live_rows.len(), live_cols.len())
}

/// `a - q * b` on sorted sparse vectors.
fn sparse_axpy(a: &[(usize, BigInt)], b: &[(usize, BigInt)], q: &BigInt) -> SparseVec<BigInt> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(q * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - q * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Determinant of a small square integer matrix (Bareiss). Used to certify
/// that transforms are unimodular.
pub fn determinant(m: &ExactMatrix) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(Error::structural("determinant of a non-square matrix"));
    }
    let n = m.rows();
    let mut a = m.to_dense();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        let m = ExactMatrix::from_dense(m).unwrap();
        SmithForm::compute(&m)
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(factors(&[vec![0, 0, 0], vec![0, 0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]), vec![2, 2, 60]);
    }

    #[test]
    fn transforms_are_unimodular() {
        let m = ExactMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let s = SmithForm::with_transforms(&m);
        let (u, v) = s.transforms.clone().unwrap();
        let d = u.mul(&m).unwrap().mul(&v).unwrap();
        assert_eq!(d, s.diagonal(3, 3));
        assert_eq!(determinant(&u).unwrap().abs(), BigInt::one());
        assert_eq!(determinant(&v).unwrap().abs(), BigInt::one());
        let got: Vec<i64> = s.invariant_factors.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(got, vec![2, 6, 12]);
    }

    #[test]
    fn non_integer_domain_is_rejected() {
        let m = ExactMatrix::identity(2);
        assert!(smith_normal_form(&m, CoefficientDomain::Rationals).is_err());
        assert!(smith_normal_form(&m, CoefficientDomain::Integers).is_ok());
    }

    #[test]
    fn torsion_canonicalization() {
        let t = canonical_torsion(&[BigInt::from(2), BigInt::from(3), BigInt::from(2)]);
        assert_eq!(t, vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn sparse_path_matches_dense_path() {
        // block matrix large enough to take the sparse route
        let n = 80;
        let mut dense = vec![vec![0i64; n]; n];
        for i in 0..n {
            dense[i][i] = 1;
            if i + 1 < n {
                dense[i][i + 1] = 1;
            }
        }
        dense[n - 1][0] = 1; // circulant I + shift: det = 1 + (-1)^(n+1) = 0 for even n
        let m = ExactMatrix::from_dense(&dense).unwrap();
        let sparse = SmithForm::compute(&m);
        let (dense_f, _) = dense_snf(m.to_dense(), n, n, false);
        assert_eq!(sparse.invariant_factors, dense_f);
        assert_eq!(sparse.rank, n - 1);
    }
}
