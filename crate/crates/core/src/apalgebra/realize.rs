//! Linear-algebra realization of a presented module, grading by grading.

use serde::Serialize;

use super::algebra::ApAlgebra;
use super::group::{FiniteAbelianGroup, GroupElem};
use super::presentation::GradedModulePresentation;
use crate::error::{Error, Result};
use crate::exactalg::{rank_of_vectors, with_field, Echelon, Field, FieldTask, SparseVec};

/// A graded module known in gradings `0..=n_max`: a basis size per grading
/// and, for every group element `p`, the matrix of multiplication by the
/// degree-one monomial `p`.
#[derive(Clone, Debug)]
pub struct RealizedModule<E> {
    group: FiniteAbelianGroup,
    dims: Vec<usize>,
    /// `action[n][p][x]`: image of basis vector `x` of `M(n)` in `M(n+1)`.
    action: Vec<Vec<Vec<SparseVec<E>>>>,
}

impl<E: Clone> RealizedModule<E> {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn n_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Image of basis vector `x` of `M(n)` under the degree-one monomial `p`.
    pub fn act(&self, n: usize, p: GroupElem, x: usize) -> &SparseVec<E> {
        &self.action[n][p][x]
    }

    /// The trivial module: the ground field in grading 0.
    pub fn ground_field<F: Field<Elem = E>>(_field: &F, group: &FiniteAbelianGroup, n_max: usize) -> Self {
        let mut dims = vec![0; n_max + 1];
        dims[0] = 1;
        let action = (0..n_max)
            .map(|n| vec![vec![Vec::new(); dims[n]]; group.order()])
            .collect();
        RealizedModule {
            group: group.clone(),
            dims,
            action,
        }
    }
}

/// Applies a linear combination of basis vectors through `act`.
pub(crate) fn apply<F: Field>(
    field: &F,
    m: &RealizedModule<F::Elem>,
    n: usize,
    p: GroupElem,
    v: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut acc: Vec<(usize, F::Elem)> = Vec::new();
    for (x, c) in v {
        for (y, a) in m.act(n, p, *x) {
            acc.push((*y, field.mul(c, a)));
        }
    }
    combine(field, acc)
}

/// Sorts by index, sums duplicates, drops zeros.
pub(crate) fn combine<F: Field>(field: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, a) in v {
        match out.last_mut() {
            Some((j, b)) if *j == i => *b = field.add(b, &a),
            _ => out.push((i, a)),
        }
        if out.last().is_some_and(|(_, b)| field.is_zero(b)) {
            out.pop();
        }
    }
    out
}

/// Layout of the free module `F(n)` on the generators of grading `<= n`.
struct FreeLayout {
    offsets: Vec<Option<usize>>,
    own: Vec<bool>,
    size: usize,
}

impl FreeLayout {
    fn new(pres: &GradedModulePresentation, n: usize) -> Self {
        let order = pres.group().order();
        let mut offsets = Vec::new();
        let mut own = Vec::new();
        let mut size = 0;
        for g in pres.generators() {
            if g.grading <= n {
                offsets.push(Some(size));
                own.push(g.grading == n);
                size += if g.grading == n { 1 } else { order };
            } else {
                offsets.push(None);
                own.push(false);
            }
        }
        FreeLayout { offsets, own, size }
    }

    fn index(&self, gen: usize, elem: GroupElem) -> usize {
        let off = self.offsets[gen].expect("generator present in this grading");
        if self.own[gen] {
            off
        } else {
            off + elem
        }
    }

    /// `(generator, elem)` for every column; `elem` is the identity for units.
    fn columns(&self, order: usize) -> Vec<(usize, GroupElem)> {
        let mut out = vec![(0, 0); self.size];
        for (gen, off) in self.offsets.iter().enumerate() {
            if let Some(off) = off {
                if self.own[gen] {
                    out[*off] = (gen, 0);
                } else {
                    for e in 0..order {
                        out[off + e] = (gen, e);
                    }
                }
            }
        }
        out
    }
}

impl<E: Clone> RealizedModule<E> {
    /// Realizes `pres` in gradings `0..=n_max` over `field`.
    pub fn build<F: Field<Elem = E>>(field: &F, pres: &GradedModulePresentation, n_max: usize) -> Result<Self> {
        let group = pres.group().clone();
        let order = group.order();
        let layouts: Vec<FreeLayout> = (0..=n_max + 1).map(|n| FreeLayout::new(pres, n)).collect();
        let mut echelons: Vec<Echelon<'_, F>> = Vec::with_capacity(n_max + 2);
        for (n, lay) in layouts.iter().enumerate() {
            let mut ech = Echelon::new(field, lay.size);
            for rel in pres.relations().iter().filter(|r| r.grading <= n) {
                let coeffs: Vec<F::Elem> = rel
                    .terms
                    .iter()
                    .map(|t| field.from_rational(&t.coeff))
                    .collect::<Result<_>>()?;
                let shifts: Vec<Option<GroupElem>> = if rel.grading == n {
                    vec![None]
                } else {
                    group.elements().map(Some).collect()
                };
                for p in shifts {
                    let mut v = Vec::with_capacity(rel.terms.len());
                    for (t, c) in rel.terms.iter().zip(&coeffs) {
                        let elem = match (p, t.elem) {
                            (None, e) => e.unwrap_or(0),
                            (Some(p), None) => p,
                            (Some(p), Some(e)) => group.op(p, e),
                        };
                        v.push((lay.index(t.gen, elem), c.clone()));
                    }
                    ech.insert(&combine(field, v));
                }
            }
            echelons.push(ech);
        }
        let free: Vec<Vec<usize>> = echelons.iter().map(Echelon::free_columns).collect();
        let mut coord: Vec<Vec<usize>> = Vec::with_capacity(free.len());
        for (n, cols) in free.iter().enumerate() {
            let mut c = vec![usize::MAX; layouts[n].size];
            for (k, &col) in cols.iter().enumerate() {
                c[col] = k;
            }
            coord.push(c);
        }
        let dims: Vec<usize> = free.iter().take(n_max + 1).map(Vec::len).collect();
        let mut action = Vec::with_capacity(n_max);
        for n in 0..n_max {
            let cols = layouts[n].columns(order);
            let mut per_p = Vec::with_capacity(order);
            for p in group.elements() {
                let mut images = Vec::with_capacity(dims[n]);
                for &col in &free[n] {
                    let (gen, e) = cols[col];
                    let target_elem = if layouts[n].own[gen] { p } else { group.op(p, e) };
                    let target = layouts[n + 1].index(gen, target_elem);
                    let reduced = echelons[n + 1].reduce(&[(target, field.one())]);
                    let image: SparseVec<E> = reduced.into_iter().map(|(j, a)| (coord[n + 1][j], a)).collect();
                    images.push(image);
                }
                per_p.push(images);
            }
            action.push(per_p);
        }
        Ok(RealizedModule { group, dims, action })
    }

    /// Checks `p * (q * x) = s * ((p + q) * x)` on every basis vector in the window.
    pub fn satisfies_relations<F: Field<Elem = E>>(&self, field: &F) -> bool
    where
        E: PartialEq,
    {
        let g = &self.group;
        for n in 0..self.n_max().saturating_sub(1) {
            for x in 0..self.dims[n] {
                let unit = [(x, field.one())];
                for p in g.elements() {
                    for q in g.elements() {
                        let lhs = apply(field, self, n + 1, p, &apply(field, self, n, q, &unit));
                        let rhs = apply(
                            field,
                            self,
                            n + 1,
                            g.identity(),
                            &apply(field, self, n, g.op(p, q), &unit),
                        );
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Whether the summed degree-one action `M(n-1)^|P| -> M(n)` is onto.
    pub fn summed_action_surjective<F: Field<Elem = E>>(&self, field: &F, n: usize) -> bool {
        if n == 0 || n > self.n_max() {
            return self.dim(n) == 0;
        }
        let images = self
            .group
            .elements()
            .flat_map(|p| (0..self.dims[n - 1]).map(move |x| self.act(n - 1, p, x).clone()));
        rank_of_vectors(field, self.dims[n], images) == self.dims[n]
    }
}

/// Field-independent summary of a realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleSummary {
    pub dims: Vec<usize>,
    pub relations_hold: bool,
    /// Gradings `n >= 1` in the window where the summed action onto `M(n)` is surjective.
    pub surjective_onto: Vec<usize>,
}

/// Realizes `pres` up to grading `n_max` over the algebra's field.
pub fn realize_module(pres: &GradedModulePresentation, alg: &ApAlgebra, n_max: usize) -> Result<ModuleSummary> {
    if pres.group() != alg.group() {
        return Err(Error::structural("presentation and algebra use different groups"));
    }
    alg.require_field("realize_module")?;
    struct Task<'a>(&'a GradedModulePresentation, usize);
    impl FieldTask for Task<'_> {
        type Output = Result<ModuleSummary>;
        fn run<F: Field>(self, field: &F) -> Self::Output {
            let m = RealizedModule::build(field, self.0, self.1)?;
            Ok(ModuleSummary {
                dims: m.dims().to_vec(),
                relations_hold: m.satisfies_relations(field),
                surjective_onto: (1..=self.1).filter(|&n| m.summed_action_surjective(field, n)).collect(),
            })
        }
    }
    with_field(alg.domain(), "realize_module", Task(pres, n_max))?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apalgebra::presentation::example_module;
    use crate::exactalg::{CoefficientDomain, Fp, Prime, Rat};

    #[test]
    fn free_module_dims() {
        let g: FiniteAbelianGroup = "Z2".parse().unwrap();
        let m = RealizedModule::build(&Rat, &GradedModulePresentation::free(g), 5).unwrap();
        assert_eq!(m.dims(), &[1, 2, 2, 2, 2, 2]);
        assert!(m.satisfies_relations(&Rat));
        assert!((1..=5).all(|n| m.summed_action_surjective(&Rat, n)));
    }

    #[test]
    fn example_module_dims() {
        let f2 = Fp::new(Prime::new(2).unwrap());
        let m = RealizedModule::build(&f2, &example_module(), 6).unwrap();
        assert_eq!(&m.dims()[..5], &[0, 2, 8, 2, 2]);
        assert!(m.satisfies_relations(&f2));
    }

    #[test]
    fn quotient_by_identity() {
        // A/s lives in gradings 0 and 1 only
        for spec in ["Z2", "Z3", "Z2xZ2"] {
            let g: FiniteAbelianGroup = spec.parse().unwrap();
            let order = g.order();
            let p = GradedModulePresentation::quotient_by(g, 0).unwrap();
            let m = RealizedModule::build(&Rat, &p, 5).unwrap();
            assert_eq!(m.dims(), &[1, order - 1, 0, 0, 0, 0]);
        }
    }

    #[test]
    fn dispatch_rejects_integers() {
        let g: FiniteAbelianGroup = "Z2".parse().unwrap();
        let alg = ApAlgebra::new(g.clone(), CoefficientDomain::Integers);
        assert!(realize_module(&GradedModulePresentation::free(g), &alg, 3).is_err());
    }
}
