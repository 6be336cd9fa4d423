use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Length of the main diagonal: `max { i : lambda_i >= i }`.
    pub fn diagonal_length(&self) -> usize {
        self.0.iter().enumerate().take_while(|(i, &p)| p > *i).count()
    }

    /// Cells `(i, j)`, zero-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let conj = self.conjugate();
        (self.0[i] - j - 1) + (conj.0[j] - i - 1) + 1
    }

    /// `dim S_lambda(k^m)` in characteristic zero, by the hook-content formula.
    pub fn schur_dim(&self, m: usize) -> BigUint {
        if self.rows() > m {
            return BigUint::zero();
        }
        let conj = self.conjugate();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (i, j) in self.cells() {
            num *= BigInt::from(m + j) - BigInt::from(i);
            den *= BigInt::from((self.0[i] - j - 1) + (conj.0[j] - i - 1) + 1);
        }
        (num / den).to_biguint().expect("nonnegative")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn self_conjugate_partitions(n: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(Partition::is_self_conjugate).collect()
}

/// Predicted `dim H_{n,d}` of the cdga on an `m`-dimensional space over a
/// field of characteristic zero: the sum of `dim S_lambda(k^m)` over
/// self-conjugate `lambda` of size `n` with diagonal length `n - 2d`.
pub fn partition_formula_dim(m: usize, n: usize, d: usize) -> BigUint {
    if 2 * d > n {
        return BigUint::zero();
    }
    let diag = n - 2 * d;
    self_conjugate_partitions(n)
        .iter()
        .filter(|l| l.diagonal_length() == diag)
        .map(|l| l.schur_dim(m))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Semistandard tableaux of shape `lambda` with entries in `1..=m`,
    /// counted cell by cell in row-major order.
    fn ssyt_count(lambda: &Partition, m: usize) -> u64 {
        let cells: Vec<(usize, usize)> = lambda.cells().collect();
        let mut grid = vec![vec![0usize; lambda.parts().first().copied().unwrap_or(0)]; lambda.rows()];
        fn fill(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, m: usize) -> u64 {
            if k == cells.len() {
                return 1;
            }
            let (i, j) = cells[k];
            let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
            let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
            let mut total = 0;
            for v in lo_row.max(lo_col)..=m {
                grid[i][j] = v;
                total += fill(k + 1, cells, grid, m);
            }
            total
        }
        fill(0, &cells, &mut grid, m)
    }

    #[test]
    fn hook_content_matches_tableaux() {
        for n in 0..=7 {
            for l in partitions(n) {
                for m in 0..=4 {
                    assert_eq!(l.schur_dim(m), BigUint::from(ssyt_count(&l, m)), "{l} m={m}");
                }
            }
        }
    }

    #[test]
    fn partition_counts_and_conjugates() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let l = Partition::new(vec![4, 2, 1]).unwrap();
        assert_eq!(l.conjugate(), Partition::new(vec![3, 2, 1, 1]).unwrap());
        assert_eq!(l.diagonal_length(), 2);
        assert_eq!(l.hook(0, 0), 6);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(partition_formula_dim(2, 4, 1), BigUint::from(1u32));
        assert_eq!(partition_formula_dim(1, 4, 1), BigUint::zero());
        assert_eq!(partition_formula_dim(2, 3, 1), BigUint::from(2u32));
        // square n at the edge of the vanishing range
        for k in 1..=4usize {
            let n = k * k;
            let d = (n - k) / 2;
            assert!(partition_formula_dim(n - 2 * d, n, d) > BigUint::zero());
        }
    }
}
