//! The bigraded cdga `Sym(V[1,0]) x Lambda(Sym^2 V [2,1])` on an
//! `m`-dimensional space `V`, whose differential sends the generator
//! `(b_a b_b)` to the product `b_a b_b`.
//!
//! A basis monomial `s x w` has a symmetric part `s` (an exponent vector)
//! and a wedge part `w` (a strictly increasing list of pair indices). With
//! `k` wedge factors and `|s| = i` it sits in grading `i + 2k` and homological
//! degree `k`. The boundary removes the `j`-th wedge factor (counting from 0)
//! with sign `(-1)^j` and multiplies it into `s`.
//!
//! The multiset of subscripts (the content of `s` plus both indices of every
//! wedge factor) is preserved, so each grading splits as a direct sum of
//! blocks indexed by multisets of size `n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{homology, CoefficientDomain, ExactMatrix, FreeChainComplex, HomologyResult};

/// Default cap on the number of basis elements in one block.
pub const DEFAULT_BLOCK_CAP: usize = 200_000;

/// Pairs `(a, b)` with `a <= b < m`, lexicographic.
pub fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect()
}

/// Exponent vectors of length `m` and total `n`, lexicographically decreasing.
pub fn multisets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == m {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=rest).rev() {
            cur.push(v);
            go(m, rest - v, cur, out);
            cur.pop();
        }
    }
    if m == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::new(), &mut out);
    out
}

/// The multiset of subscripts of a block, written as an exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Content(pub Vec<usize>);

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => items.push(format!("{}", i + 1)),
                _ => items.push(format!("{}^{}", i + 1, e)),
            }
        }
        write!(f, "{{{}}}", items.join(","))
    }
}

/// One multiset block: its wedge parts by degree (the symmetric part is
/// determined by the content) and its chain complex.
#[derive(Clone, Debug)]
pub struct MultisetBlock {
    pub content: Content,
    pub basis: Vec<Vec<Vec<usize>>>,
    pub complex: FreeChainComplex,
}

impl MultisetBlock {
    pub fn size(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }
}

/// Wedge parts compatible with `content`, grouped by number of factors.
/// Fails once more than `cap` basis elements have been produced.
fn block_wedges(m: usize, content: &[usize], cap: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let ps = pairs(m);
    let mut by_k: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut count = 0usize;
    let mut rest = content.to_vec();
    let mut cur = Vec::new();
    fn go(
        start: usize,
        ps: &[(usize, usize)],
        rest: &mut Vec<usize>,
        cur: &mut Vec<usize>,
        by_k: &mut Vec<Vec<Vec<usize>>>,
        count: &mut usize,
        cap: usize,
    ) -> bool {
        *count += 1;
        if *count > cap {
            return false;
        }
        if by_k.len() <= cur.len() {
            by_k.push(Vec::new());
        }
        by_k[cur.len()].push(cur.clone());
        for (idx, &(a, b)) in ps.iter().enumerate().skip(start) {
            let need_ok = if a == b {
                rest[a] >= 2
            } else {
                rest[a] >= 1 && rest[b] >= 1
            };
            if !need_ok {
                continue;
            }
            rest[a] -= 1;
            rest[b] -= 1;
            cur.push(idx);
            let ok = go(idx + 1, ps, rest, cur, by_k, count, cap);
            cur.pop();
            rest[a] += 1;
            rest[b] += 1;
            if !ok {
                return false;
            }
        }
        true
    }
    by_k.clear();
    if !go(0, &ps, &mut rest, &mut cur, &mut by_k, &mut count, cap) {
        return Err(Error::ResourceCap {
            block: format!("m={m} multiset {}", Content(content.to_vec())),
            size: count,
            cap,
        });
    }
    Ok(by_k)
}

fn index_of(list: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    list.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect()
}

/// Boundary from `k` wedge factors to `k - 1`: drop factor `j` with sign `(-1)^j`.
fn wedge_boundary(src: &[Vec<usize>], dst: &[Vec<usize>]) -> ExactMatrix {
    let idx = index_of(dst);
    let cols = src
        .iter()
        .map(|w| {
            let mut col: Vec<(usize, BigInt)> = (0..w.len())
                .map(|j| {
                    let mut t = w.clone();
                    t.remove(j);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    (idx[t.as_slice()], BigInt::from(sign))
                })
                .collect();
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect();
    ExactMatrix::from_columns(dst.len(), src.len(), cols).expect("indices in range")
}

/// The block of the `m`-variable cdga with the given content.
pub fn build_block(m: usize, content: &[usize], cap: usize) -> Result<MultisetBlock> {
    if content.len() != m {
        return Err(Error::Domain(format!(
            "content has length {}, expected {m}",
            content.len()
        )));
    }
    let basis = block_wedges(m, content, cap)?;
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let boundaries = (1..basis.len())
        .map(|k| wedge_boundary(&basis[k], &basis[k - 1]))
        .collect();
    let complex = FreeChainComplex::new(0, dims, boundaries)?;
    Ok(MultisetBlock {
        content: Content(content.to_vec()),
        basis,
        complex,
    })
}

/// The block with content `{1, ..., m}`.
pub fn squarefree_block(m: usize, cap: usize) -> Result<MultisetBlock> {
    build_block(m, &vec![1; m], cap)
}

/// Basis element of the undecomposed slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceMonomial {
    pub sym: Vec<usize>,
    pub wedge: Vec<usize>,
}

impl SliceMonomial {
    pub fn content(&self, m: usize) -> Vec<usize> {
        let ps = pairs(m);
        let mut c = self.sym.clone();
        for &w in &self.wedge {
            c[ps[w].0] += 1;
            c[ps[w].1] += 1;
        }
        c
    }
}

/// The grading-`n` slice, built without block decomposition.
#[derive(Clone, Debug)]
pub struct JwSlice {
    pub m: usize,
    pub n: usize,
    pub basis: Vec<Vec<SliceMonomial>>,
    pub complex: FreeChainComplex,
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

pub fn build_jw_slice(m: usize, n: usize) -> JwSlice {
    let ps = pairs(m);
    let mut basis = Vec::new();
    for k in 0..=n / 2 {
        let mut level = Vec::new();
        for sym in multisets(m, n - 2 * k) {
            for wedge in subsets(ps.len(), k) {
                level.push(SliceMonomial {
                    sym: sym.clone(),
                    wedge,
                });
            }
        }
        if level.is_empty() {
            break;
        }
        basis.push(level);
    }
    let mut boundaries = Vec::new();
    for k in 1..basis.len() {
        let idx: HashMap<&SliceMonomial, usize> = basis[k - 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let cols = basis[k]
            .iter()
            .map(|b| {
                let mut col: Vec<(usize, BigInt)> = (0..b.wedge.len())
                    .map(|j| {
                        let mut wedge = b.wedge.clone();
                        let p = wedge.remove(j);
                        let mut sym = b.sym.clone();
                        sym[ps[p].0] += 1;
                        sym[ps[p].1] += 1;
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        (idx[&SliceMonomial { sym, wedge }], BigInt::from(sign))
                    })
                    .collect();
                col.sort_by_key(|(i, _)| *i);
                col
            })
            .collect();
        boundaries.push(ExactMatrix::from_columns(basis[k - 1].len(), basis[k].len(), cols).expect("in range"));
    }
    let dims = basis.iter().map(Vec::len).collect();
    let complex = FreeChainComplex::new(0, dims, boundaries).expect("boundary squares to zero");
    JwSlice { m, n, basis, complex }
}

/// Partition of a slice basis into content blocks: for every content, the
/// slice indices of its basis elements in each degree.
pub fn block_decompose(slice: &JwSlice) -> Vec<(Content, Vec<Vec<usize>>)> {
    let mut map: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
    for (k, level) in slice.basis.iter().enumerate() {
        for (i, b) in level.iter().enumerate() {
            let entry = map
                .entry(b.content(slice.m))
                .or_insert_with(|| vec![Vec::new(); slice.basis.len()]);
            entry[k].push(i);
        }
    }
    let mut out: Vec<(Content, Vec<Vec<usize>>)> = map.into_iter().map(|(c, v)| (Content(c), v)).collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Homology of the grading-`n` slice on `m` variables, summed over blocks.
/// Every block is checked against `cap` before it is built.
pub fn jw_homology(m: usize, n: usize, domain: CoefficientDomain, cap: usize) -> Result<HomologyResult> {
    let contents = multisets(m, n);
    let parts: Vec<HomologyResult> = contents
        .par_iter()
        .map(|c| build_block(m, c, cap).map(|b| homology(&b.complex, domain)))
        .collect::<Result<_>>()?;
    Ok(HomologyResult::direct_sum(domain, &parts))
}

/// `d < (n - sqrt n) / 2`, decided in integers.
pub fn below_sqrt_line(n: usize, d: usize) -> bool {
    2 * d < n && n < (n - 2 * d) * (n - 2 * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::matching_complex;

    #[test]
    fn one_variable_in_grading_two() {
        let s = build_jw_slice(1, 2);
        assert_eq!(s.complex.dims(), &[1, 1]);
        let h = homology(&s.complex, CoefficientDomain::Integers);
        assert!(h.is_acyclic());
    }

    #[test]
    fn one_variable_is_acyclic_from_grading_two() {
        for n in 2..=8 {
            assert!(jw_homology(1, n, CoefficientDomain::Integers, DEFAULT_BLOCK_CAP)
                .unwrap()
                .is_acyclic());
        }
        assert_eq!(
            jw_homology(1, 1, CoefficientDomain::Rationals, DEFAULT_BLOCK_CAP)
                .unwrap()
                .rank(0),
            1
        );
        assert_eq!(
            jw_homology(2, 0, CoefficientDomain::Rationals, DEFAULT_BLOCK_CAP)
                .unwrap()
                .rank(0),
            1
        );
    }

    #[test]
    fn blocks_of_two_variables_in_grading_two() {
        let s = build_jw_slice(2, 2);
        let blocks: Vec<String> = block_decompose(&s).iter().map(|(c, _)| c.to_string()).collect();
        assert_eq!(blocks, vec!["{1^2}", "{1,2}", "{2^2}"]);
    }

    #[test]
    fn block_decomposition_is_direct() {
        for m in 1..=3 {
            for n in 0..=6 {
                let s = build_jw_slice(m, n);
                let blocks = block_decompose(&s);
                // every basis element in exactly one block
                for (k, level) in s.basis.iter().enumerate() {
                    let total: usize = blocks.iter().map(|(_, b)| b.get(k).map_or(0, Vec::len)).sum();
                    assert_eq!(total, level.len());
                }
                // boundaries are block diagonal
                let mut owner: Vec<HashMap<usize, usize>> = vec![HashMap::new(); s.basis.len()];
                for (bi, (_, b)) in blocks.iter().enumerate() {
                    for (k, idx) in b.iter().enumerate() {
                        for &i in idx {
                            owner[k].insert(i, bi);
                        }
                    }
                }
                for (k, bd) in s.complex.boundaries().iter().enumerate() {
                    for r in 0..bd.rows() {
                        for (c, _) in bd.row(r) {
                            assert_eq!(owner[k][&r], owner[k + 1][c]);
                        }
                    }
                }
                // and the block homologies add up
                for dom in [CoefficientDomain::Integers, CoefficientDomain::prime_field(2).unwrap()] {
                    let whole = homology(&s.complex, dom);
                    let summed = jw_homology(m, n, dom, DEFAULT_BLOCK_CAP).unwrap();
                    for d in 0..=(n as i64 / 2) {
                        assert_eq!(whole.degree(d), summed.degree(d), "m={m} n={n} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn squarefree_block_is_suspended_matching_complex() {
        for m in [4, 5, 7] {
            let block = squarefree_block(m, DEFAULT_BLOCK_CAP).unwrap();
            let aug = matching_complex(m).unwrap().augmented_chain_complex();
            assert_eq!(block.complex, aug.shifted(1));
        }
    }

    #[test]
    fn cap_names_the_block() {
        let err = squarefree_block(7, 100).unwrap_err();
        match err {
            Error::ResourceCap { block, cap, .. } => {
                assert_eq!(cap, 100);
                assert!(block.contains("{1,2,3,4,5,6,7}"), "{block}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sqrt_line() {
        assert!(below_sqrt_line(7, 2));
        assert!(!below_sqrt_line(4, 1));
        assert!(below_sqrt_line(4, 0));
        assert!(!below_sqrt_line(9, 3));
        assert!(below_sqrt_line(9, 2));
    }
}
