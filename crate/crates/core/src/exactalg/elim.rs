//! Sparse Gaussian elimination over a field.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;
use super::matrix::{SparseMatrix, SparseVec};

/// Incrementally built row-echelon basis of a subspace of `F^ncols`.
///
/// Every stored row has a distinct leading column and a leading
/// coefficient of 1. Reduction against the basis clears all pivot columns,
/// so the reduced form of a vector is a canonical representative of its
/// class in the quotient `F^ncols / span`.
pub struct Echelon<'a, F: Field> {
    field: &'a F,
    ncols: usize,
    pivots: Vec<Option<SparseVec<F::Elem>>>,
    rank: usize,
    scratch: Vec<F::Elem>,
    marked: Vec<bool>,
}

impl<'a, F: Field> Echelon<'a, F> {
    pub fn new(field: &'a F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            pivots: vec![None; ncols],
            rank: 0,
            scratch: vec![field.zero(); ncols],
            marked: vec![false; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots[col].is_some()
    }

    /// Columns without a pivot, ascending. They index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivots[c].is_none()).collect()
    }

    /// Adds `v` to the spanning set. Returns `true` when it was independent.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        match self.reduce_inner(v, true) {
            Some(row) if !row.is_empty() => {
                let lead = row[0].0;
                let inv = self.field.inv(&row[0].1);
                let normalized: SparseVec<F::Elem> =
                    row.into_iter().map(|(j, a)| (j, self.field.mul(&a, &inv))).collect();
                self.pivots[lead] = Some(normalized);
                self.rank += 1;
                true
            }
            _ => false,
        }
    }

    /// Canonical representative of `v` modulo the span: no entries in pivot columns.
    pub fn reduce(&mut self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.reduce_inner(v, false).unwrap_or_default()
    }

    /// Shared reduction loop. With `stop_at_free`, stops at the first
    /// surviving free column and returns the (partially reduced) remainder,
    /// which is all `insert` needs.
    fn reduce_inner(&mut self, v: &[(usize, F::Elem)], stop_at_free: bool) -> Option<SparseVec<F::Elem>> {
        let f = self.field;
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::with_capacity(v.len() * 2);
        let mut touched: Vec<usize> = Vec::with_capacity(v.len() * 2);
        for (j, a) in v {
            if f.is_zero(a) {
                continue;
            }
            self.scratch[*j] = f.add(&self.scratch[*j], a);
            if !self.marked[*j] {
                self.marked[*j] = true;
                touched.push(*j);
                heap.push(Reverse(*j));
            }
        }
        let mut out: SparseVec<F::Elem> = Vec::new();
        while let Some(Reverse(c)) = heap.pop() {
            if f.is_zero(&self.scratch[c]) {
                continue;
            }
            match &self.pivots[c] {
                Some(prow) => {
                    let coeff = self.scratch[c].clone();
                    for (j, a) in prow {
                        let t = f.mul(&coeff, a);
                        self.scratch[*j] = f.sub(&self.scratch[*j], &t);
                        if !self.marked[*j] {
                            self.marked[*j] = true;
                            touched.push(*j);
                            heap.push(Reverse(*j));
                        }
                    }
                }
                None => {
                    if stop_at_free {
                        out.push((c, self.scratch[c].clone()));
                        // Everything still pending is at columns > c.
                        let mut rest: Vec<usize> = heap.drain().map(|Reverse(j)| j).collect();
                        rest.sort_unstable();
                        rest.dedup();
                        for j in rest {
                            if !f.is_zero(&self.scratch[j]) {
                                out.push((j, self.scratch[j].clone()));
                            }
                        }
                        break;
                    }
                    out.push((c, self.scratch[c].clone()));
                }
            }
        }
        for j in touched {
            self.scratch[j] = f.zero();
            self.marked[j] = false;
        }
        Some(out)
    }
}

/// Rank of a family of sparse vectors in `F^ncols`.
pub fn rank_of_vectors<F: Field, I>(field: &F, ncols: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = SparseVec<F::Elem>>,
{
    let mut vs: Vec<SparseVec<F::Elem>> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
    // Short vectors first keeps fill-in down.
    vs.sort_by_key(Vec::len);
    let mut ech = Echelon::new(field, ncols);
    for v in &vs {
        ech.insert(v);
        if ech.rank() == ncols {
            break;
        }
    }
    ech.rank()
}

/// Rank of a matrix over `field`.
pub fn field_rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    // rank(A) = rank(A^T); eliminate along the shorter side.
    if m.rows() <= m.cols() {
        rank_of_vectors(field, m.cols(), m.row_vecs().iter().cloned())
    } else {
        let t = m.transpose();
        rank_of_vectors(field, t.cols(), t.row_vecs().iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::domain::Prime;
    use crate::exactalg::field::{Fp, Rat};
    use crate::exactalg::matrix::ExactMatrix;

    #[test]
    fn rank_small_examples() {
        let m = ExactMatrix::from_dense(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(field_rank(&Rat, &m.over(&Rat)), 1);
        let f2 = Fp::new(Prime::new(2).unwrap());
        assert_eq!(field_rank(&f2, &m.over(&f2)), 1);
        let id = ExactMatrix::identity(5);
        assert_eq!(field_rank(&Rat, &id.over(&Rat)), 5);
        // [[1,1],[1,-1]] has rank 2 over Q and rank 1 over F2.
        let h = ExactMatrix::from_dense(&[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(field_rank(&Rat, &h.over(&Rat)), 2);
        assert_eq!(field_rank(&f2, &h.over(&f2)), 1);
    }

    #[test]
    fn reduce_gives_canonical_representatives() {
        let f = Fp::new(Prime::new(3).unwrap());
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(&[(0, 1), (1, 1)]));
        assert!(!e.insert(&[(0, 2), (1, 2)]));
        assert_eq!(e.free_columns(), vec![1, 2]);
        // e0 == -e1 modulo the span
        assert_eq!(e.reduce(&[(0, 1)]), vec![(1, 2)]);
        assert_eq!(e.reduce(&[(1, 2)]), vec![(1, 2)]);
        assert!(e.reduce(&[(0, 1), (1, 1)]).is_empty());
    }
}
