//! The bigraded cdga `Sym(V) x Lambda(W x W)` attached to a finite abelian
//! group `P` with identity `s`: `V` is spanned by `P \ {s}` in bidegree
//! `(1,0)`, `W` by all of `P`, and the generators `p x q` of `W x W` sit in
//! bidegree `(2,1)`. The differential sends `p x q` to the product `p q` when
//! neither factor is `s`, and to zero otherwise.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::cdga::{jw_homology, multisets};
use crate::apalgebra::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::exactalg::{homology, CoefficientDomain, ExactMatrix, FreeChainComplex, HomologyResult};

#[derive(Clone, Debug)]
pub struct DPrimeSlice {
    pub group: FiniteAbelianGroup,
    pub n: usize,
    /// `(symmetric exponents over P \ {s}, increasing ordered-pair indices)` by degree.
    pub basis: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
    pub complex: FreeChainComplex,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of basis elements of the grading-`n` slice.
pub fn dprime_slice_size(order: usize, n: usize) -> usize {
    let q = order - 1;
    (0..=n / 2)
        .map(|k| {
            let i = n - 2 * k;
            let sym = if q == 0 {
                usize::from(i == 0)
            } else {
                binom(q + i - 1, i)
            };
            binom(order * order, k) * sym
        })
        .sum()
}

pub fn build_dprime_slice(group: &FiniteAbelianGroup, n: usize, cap: usize) -> Result<DPrimeSlice> {
    let order = group.order();
    let q = order - 1;
    let size = dprime_slice_size(order, n);
    if size > cap {
        return Err(Error::ResourceCap {
            block: format!("D' slice P={group} n={n}"),
            size,
            cap,
        });
    }
    let npairs = order * order;
    let mut basis: Vec<Vec<(Vec<usize>, Vec<usize>)>> = Vec::new();
    for k in 0..=n / 2 {
        let mut level = Vec::new();
        for sym in multisets(q, n - 2 * k) {
            for w in subsets(npairs, k) {
                level.push((sym.clone(), w));
            }
        }
        basis.push(level);
    }
    while basis.len() > 1 && basis.last().is_some_and(Vec::is_empty) {
        basis.pop();
    }
    let mut boundaries = Vec::new();
    for k in 1..basis.len() {
        let idx: HashMap<&(Vec<usize>, Vec<usize>), usize> =
            basis[k - 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let cols = basis[k]
            .iter()
            .map(|(sym, w)| {
                let mut col = Vec::new();
                for j in 0..w.len() {
                    let (p, r) = (w[j] / order, w[j] % order);
                    if p == group.identity() || r == group.identity() {
                        continue;
                    }
                    let mut s2 = sym.clone();
                    s2[p - 1] += 1;
                    s2[r - 1] += 1;
                    let mut w2 = w.clone();
                    w2.remove(j);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    col.push((idx[&(s2, w2)], BigInt::from(sign)));
                }
                col.sort_by_key(|(i, _)| *i);
                col
            })
            .collect();
        boundaries.push(ExactMatrix::from_columns(basis[k - 1].len(), basis[k].len(), cols)?);
    }
    let dims = basis.iter().map(Vec::len).collect();
    let complex = FreeChainComplex::new(0, dims, boundaries)?;
    Ok(DPrimeSlice {
        group: group.clone(),
        n,
        basis,
        complex,
    })
}

pub fn dprime_homology(
    group: &FiniteAbelianGroup,
    n: usize,
    domain: CoefficientDomain,
    cap: usize,
) -> Result<HomologyResult> {
    Ok(homology(&build_dprime_slice(group, n, cap)?.complex, domain))
}

/// Number of exterior generators with zero differential that complement the
/// symmetric part: ordered pairs involving the identity, and the
/// antisymmetric combinations of two distinct non-identity elements.
pub fn closed_generator_count(order: usize) -> usize {
    (2 * order - 1) + binom(order - 1, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionEntry {
    pub n: usize,
    pub d: usize,
    pub direct: usize,
    pub predicted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub group: String,
    pub generators: usize,
    pub entries: Vec<DecompositionEntry>,
}

impl DecompositionReport {
    pub fn agrees(&self) -> bool {
        self.entries.iter().all(|e| e.direct == e.predicted)
    }
}

/// Compares `dim H_{n,d}` of the slice with the convolution of the cdga
/// homology on `|P| - 1` variables and an exterior algebra on
/// [`closed_generator_count`] generators of bidegree `(2,1)`, over `Q`.
pub fn verify_tensor_decomposition(
    group: &FiniteAbelianGroup,
    n_max: usize,
    cap: usize,
) -> Result<DecompositionReport> {
    let q = CoefficientDomain::Rationals;
    let order = group.order();
    let g = closed_generator_count(order);
    let base: Vec<HomologyResult> = (0..=n_max)
        .map(|n| jw_homology(order - 1, n, q, cap))
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for n in 0..=n_max {
        let direct = dprime_homology(group, n, q, cap)?;
        for d in 0..=n / 2 {
            let predicted = (0..=d.min(n / 2))
                .map(|j| binom(g, j) * base[n - 2 * j].rank((d - j) as i64))
                .sum();
            entries.push(DecompositionEntry {
                n,
                d,
                direct: direct.rank(d as i64),
                predicted,
            });
        }
    }
    Ok(DecompositionReport {
        group: group.to_string(),
        generators: g,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jwcdga::cdga::DEFAULT_BLOCK_CAP;

    fn grp(s: &str) -> FiniteAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_group_has_one_closed_generator() {
        let g = grp("1");
        for n in 0..=6 {
            let h = dprime_homology(&g, n, CoefficientDomain::Rationals, DEFAULT_BLOCK_CAP).unwrap();
            let expect_nonzero = n == 0 || n == 2;
            assert_eq!(!h.is_acyclic(), expect_nonzero, "n={n}");
            if n == 2 {
                assert_eq!((h.rank(0), h.rank(1)), (0, 1));
            }
        }
    }

    #[test]
    fn sizes_match_enumeration() {
        for spec in ["1", "Z2", "Z3"] {
            let g = grp(spec);
            for n in 0..=5 {
                let s = build_dprime_slice(&g, n, DEFAULT_BLOCK_CAP).unwrap();
                assert_eq!(s.complex.dims().iter().sum::<usize>(), dprime_slice_size(g.order(), n));
            }
        }
    }

    #[test]
    fn decomposition_small() {
        for (spec, n) in [("1", 6), ("Z2", 6), ("Z3", 5)] {
            let r = verify_tensor_decomposition(&grp(spec), n, DEFAULT_BLOCK_CAP).unwrap();
            assert!(r.agrees(), "{r:?}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            build_dprime_slice(&grp("Z3"), 6, 10),
            Err(Error::ResourceCap { .. })
        ));
    }
}
