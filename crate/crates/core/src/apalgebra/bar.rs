//! Tor over the algebra via the reduced bar complex.
//!
//! In internal grading `n`, `B_d = sum over m and compositions
//! n - m = n_1 + ... + n_d (n_i >= 1) of I(n_1) x ... x I(n_d) x M(m)`, where
//! `I(k)` is the grading-`k` part of the augmentation ideal. The boundary is
//!
//! ```text
//! d[a_1|...|a_d]x = sum_{i<d} (-1)^i [a_1|...|a_i a_{i+1}|...|a_d]x + (-1)^d [a_1|...|a_{d-1}] a_d x
//! ```

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::algebra::ApAlgebra;
use super::group::{FiniteAbelianGroup, GroupElem};
use super::presentation::GradedModulePresentation;
use super::realize::{apply, combine, RealizedModule};
use crate::error::{Error, Result};
use crate::exactalg::{rank_of_vectors, with_field, CoefficientDomain, Field, FieldTask, SparseVec};

/// `dims[n][d] = dim Tor_{n,d}` for `n <= n_max`, `d <= d_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorTable {
    pub domain: CoefficientDomain,
    pub n_max: usize,
    pub d_max: usize,
    pub dims: Vec<Vec<usize>>,
}

impl TorTable {
    pub fn get(&self, n: usize, d: usize) -> usize {
        self.dims.get(n).and_then(|row| row.get(d)).copied().unwrap_or(0)
    }

    /// Entries `(n, d)` with `n != d` and nonzero dimension.
    pub fn off_diagonal(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (n, row) in self.dims.iter().enumerate() {
            for (d, &v) in row.iter().enumerate() {
                if v != 0 && n != d {
                    out.push((n, d, v));
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..=self.n_max.min(self.d_max)).map(|n| self.get(n, n)).collect()
    }
}

/// A block of `B_d(n)`: a module grading `m` and a composition of `n - m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct BlockKey {
    m: usize,
    parts: Vec<usize>,
}

struct Layout {
    blocks: Vec<(BlockKey, usize)>,
    index: HashMap<BlockKey, usize>,
    size: usize,
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn layout<E: Clone>(module: &RealizedModule<E>, order: usize, n: usize, d: usize) -> Layout {
    let mut blocks = Vec::new();
    let mut index = HashMap::new();
    let mut size = 0;
    for m in 0..=n.min(module.n_max()) {
        let dm = module.dim(m);
        if dm == 0 {
            continue;
        }
        for parts in compositions(n - m, d) {
            let key = BlockKey { m, parts };
            index.insert(key.clone(), size);
            blocks.push((key, size));
            size += order.pow(d as u32) * dm;
        }
    }
    Layout { blocks, index, size }
}

/// Columns of `d_d : B_d(n) -> B_{d-1}(n)`, one per source basis vector.
fn boundary_columns<F: Field>(
    field: &F,
    group: &FiniteAbelianGroup,
    module: &RealizedModule<F::Elem>,
    src: &Layout,
    dst: &Layout,
    d: usize,
) -> Vec<SparseVec<F::Elem>> {
    let order = group.order();
    let mut cols = Vec::with_capacity(src.size);
    let sign = |i: usize| {
        if i.is_multiple_of(2) {
            field.one()
        } else {
            field.neg(&field.one())
        }
    };
    for (key, _) in &src.blocks {
        let dm = module.dim(key.m);
        let classes = order.pow(d as u32);
        for cls in 0..classes {
            let elems = digits(cls, order, d);
            for x in 0..dm {
                let mut acc: Vec<(usize, F::Elem)> = Vec::new();
                for i in 1..d {
                    let mut parts = key.parts.clone();
                    parts[i - 1] += parts[i];
                    parts.remove(i);
                    let mut es: Vec<GroupElem> = elems.clone();
                    es[i - 1] = group.op(es[i - 1], es[i]);
                    es.remove(i);
                    let off = dst.index[&BlockKey { m: key.m, parts }];
                    acc.push((off + undigits(&es, order) * dm + x, sign(i)));
                }
                // last tensor factor acts on the module
                let k = key.parts[d - 1];
                let target_m = key.m + k;
                if target_m <= module.n_max() && module.dim(target_m) > 0 {
                    let image = monomial_action(field, group, module, key.m, k, elems[d - 1], x);
                    let parts = key.parts[..d - 1].to_vec();
                    let off = dst.index[&BlockKey { m: target_m, parts }];
                    let cls_dst = undigits(&elems[..d - 1], order);
                    let s = sign(d);
                    let dm2 = module.dim(target_m);
                    for (y, a) in image {
                        acc.push((off + cls_dst * dm2 + y, field.mul(&s, &a)));
                    }
                }
                cols.push(combine(field, acc));
            }
        }
    }
    cols
}

/// Action of the monomial of grading `k` indexed by `p` on basis vector `x` of `M(m)`.
fn monomial_action<F: Field>(
    field: &F,
    group: &FiniteAbelianGroup,
    module: &RealizedModule<F::Elem>,
    m: usize,
    k: usize,
    p: GroupElem,
    x: usize,
) -> SparseVec<F::Elem> {
    let mut v = module.act(m, p, x).clone();
    for j in 1..k {
        v = apply(field, module, m + j, group.identity(), &v);
    }
    v
}

fn digits(mut cls: usize, base: usize, len: usize) -> Vec<GroupElem> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = cls % base;
        cls /= base;
    }
    out
}

fn undigits(es: &[GroupElem], base: usize) -> usize {
    es.iter().fold(0, |acc, &e| acc * base + e)
}

/// Tor of a realized module over the field it was realized over.
pub fn tor_of_realized<F: Field>(field: &F, module: &RealizedModule<F::Elem>, n_max: usize, d_max: usize) -> TorTable {
    let group = module.group().clone();
    let order = group.order();
    let dims: Vec<Vec<usize>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let layouts: Vec<Layout> = (0..=d_max + 1).map(|d| layout(module, order, n, d)).collect();
            let ranks: Vec<usize> = (0..=d_max + 1)
                .map(|d| {
                    if d == 0 || layouts[d].size == 0 || layouts[d - 1].size == 0 {
                        0
                    } else {
                        let cols = boundary_columns(field, &group, module, &layouts[d], &layouts[d - 1], d);
                        rank_of_vectors(field, layouts[d - 1].size, cols)
                    }
                })
                .collect();
            (0..=d_max).map(|d| layouts[d].size - ranks[d] - ranks[d + 1]).collect()
        })
        .collect();
    TorTable {
        domain: field.domain(),
        n_max,
        d_max,
        dims,
    }
}

/// `Tor(k, k)` over the algebra.
pub fn bar_tor_trivial(alg: &ApAlgebra, n_max: usize, d_max: usize) -> Result<TorTable> {
    alg.require_field("bar_tor_trivial")?;
    struct Task<'a>(&'a FiniteAbelianGroup, usize, usize);
    impl FieldTask for Task<'_> {
        type Output = TorTable;
        fn run<F: Field>(self, field: &F) -> TorTable {
            let k = RealizedModule::ground_field(field, self.0, self.1);
            tor_of_realized(field, &k, self.1, self.2)
        }
    }
    with_field(alg.domain(), "bar_tor_trivial", Task(alg.group(), n_max, d_max))
}

/// `Tor(k, M)` for a presented module `M`.
pub fn bar_tor_module(
    alg: &ApAlgebra,
    pres: &GradedModulePresentation,
    n_max: usize,
    d_max: usize,
) -> Result<TorTable> {
    alg.require_field("bar_tor_module")?;
    if pres.group() != alg.group() {
        return Err(Error::structural("presentation and algebra use different groups"));
    }
    struct Task<'a>(&'a GradedModulePresentation, usize, usize);
    impl FieldTask for Task<'_> {
        type Output = Result<TorTable>;
        fn run<F: Field>(self, field: &F) -> Self::Output {
            let m = RealizedModule::build(field, self.0, self.1)?;
            Ok(tor_of_realized(field, &m, self.1, self.2))
        }
    }
    with_field(alg.domain(), "bar_tor_module", Task(pres, n_max, d_max))?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Fp, Prime};

    fn alg(spec: &str, dom: &str) -> ApAlgebra {
        ApAlgebra::new(spec.parse().unwrap(), dom.parse().unwrap())
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(5, 3).len(), 6);
        assert_eq!(compositions(0, 0).len(), 1);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let f3 = Fp::new(Prime::new(3).unwrap());
        let g: FiniteAbelianGroup = "Z3".parse().unwrap();
        let pres = GradedModulePresentation::quotient_by(g.clone(), 1).unwrap();
        let m = RealizedModule::build(&f3, &pres, 5).unwrap();
        for n in 0..=5 {
            for d in 2..=4 {
                let (l2, l1, l0) = (layout(&m, 3, n, d), layout(&m, 3, n, d - 1), layout(&m, 3, n, d - 2));
                if l2.size == 0 || l1.size == 0 || l0.size == 0 {
                    continue;
                }
                let hi = boundary_columns(&f3, &g, &m, &l2, &l1, d);
                let lo = boundary_columns(&f3, &g, &m, &l1, &l0, d - 1);
                for col in hi {
                    let mut acc = Vec::new();
                    for (j, a) in col {
                        for (i, b) in &lo[j] {
                            acc.push((*i, f3.mul(&a, b)));
                        }
                    }
                    assert!(combine(&f3, acc).is_empty(), "d^2 != 0 at n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn trivial_group_is_polynomial_ring() {
        let t = bar_tor_trivial(&alg("1", "Q"), 6, 6).unwrap();
        for n in 0..=6 {
            for d in 0..=6 {
                let expect = usize::from((n, d) == (0, 0) || (n, d) == (1, 1));
                assert_eq!(t.get(n, d), expect, "({n},{d})");
            }
        }
    }

    #[test]
    fn free_module_tor() {
        let a = alg("Z2", "F2");
        let t = bar_tor_module(&a, &GradedModulePresentation::free(a.group().clone()), 5, 3).unwrap();
        assert_eq!(t.get(0, 0), 1);
        let total: usize = t.dims.iter().flatten().sum();
        assert_eq!(total, 1);
    }

    #[test]
    fn tor_zero_is_indecomposables() {
        let pres = crate::apalgebra::presentation::example_module();
        let f2 = Fp::new(Prime::new(2).unwrap());
        let m = RealizedModule::build(&f2, &pres, 6).unwrap();
        let t = tor_of_realized(&f2, &m, 6, 2);
        for n in 1..=6 {
            assert_eq!(t.get(n, 0) == 0, m.summed_action_surjective(&f2, n), "n={n}");
        }
    }
}
