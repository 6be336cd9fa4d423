//! Lists of `(rank, class)` blocks with fixed total rank and product class,
//! ordered by merging consecutive blocks, and their identification with
//! chains in the rank poset.

use std::fmt;

use super::poset::{x_elements, x_poset, FinitePoset};
use crate::apalgebra::{FiniteAbelianGroup, GroupElem};
use crate::error::{Error, Result};

/// Blocks `(n_i, rho_i)` with every `n_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RbsList(pub Vec<(usize, GroupElem)>);

impl RbsList {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|b| b.0).sum()
    }

    pub fn class(&self, group: &FiniteAbelianGroup) -> GroupElem {
        group.sum(self.0.iter().map(|b| b.1))
    }

    pub fn render(&self, group: &FiniteAbelianGroup) -> String {
        let blocks: Vec<String> = self
            .0
            .iter()
            .map(|&(r, p)| format!("({r},{})", group.format_elem(p)))
            .collect();
        format!("[{}]", blocks.join(""))
    }
}

impl fmt::Display for RbsList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.0.iter().map(|(r, p)| format!("({r},{p})")).collect();
        write!(f, "[{}]", blocks.join(""))
    }
}

/// A chain in the rank poset, as `(rank, class)` pairs with strictly
/// increasing ranks.
pub type SdChain = Vec<(usize, GroupElem)>;

/// All lists of total rank `n` and product class `class`, ordered by
/// composition of `n` then by classes.
pub fn rbs_elements(n: usize, class: GroupElem, group: &FiniteAbelianGroup) -> Vec<RbsList> {
    fn go(
        rest: usize,
        group: &FiniteAbelianGroup,
        target: GroupElem,
        cur: &mut Vec<(usize, GroupElem)>,
        out: &mut Vec<RbsList>,
    ) {
        if rest == 0 {
            if group.sum(cur.iter().map(|b| b.1)) == target {
                out.push(RbsList(cur.clone()));
            }
            return;
        }
        for r in 1..=rest {
            for p in group.elements() {
                cur.push((r, p));
                go(rest - r, group, target, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, group, class, &mut Vec::new(), &mut out);
    }
    out
}

/// True iff `coarse` arises from `fine` by merging runs of consecutive
/// blocks, summing ranks and multiplying classes.
pub fn merges_to(fine: &RbsList, coarse: &RbsList, group: &FiniteAbelianGroup) -> bool {
    let mut it = fine.0.iter();
    for &(r, p) in &coarse.0 {
        let (mut acc_r, mut acc_p) = (0, group.identity());
        while acc_r < r {
            match it.next() {
                Some(&(fr, fp)) => {
                    acc_r += fr;
                    acc_p = group.op(acc_p, fp);
                }
                None => return false,
            }
        }
        if acc_r != r || acc_p != p {
            return false;
        }
    }
    it.next().is_none()
}

fn rbs_poset_of(elems: &[RbsList], group: &FiniteAbelianGroup) -> Result<FinitePoset> {
    let labels = elems.iter().map(|l| l.render(group)).collect();
    let leq = elems
        .iter()
        .map(|x| elems.iter().map(|y| merges_to(x, y, group)).collect())
        .collect();
    FinitePoset::new(labels, leq)
}

pub fn rbs_poset(n: usize, class: GroupElem, group: &FiniteAbelianGroup) -> Result<FinitePoset> {
    if n == 0 {
        return Err(Error::Domain("total rank must be at least 1".into()));
    }
    rbs_poset_of(&rbs_elements(n, class, group), group)
}

/// The lists other than the terminal one-block list.
pub fn boundary_rbs_elements(n: usize, class: GroupElem, group: &FiniteAbelianGroup) -> Vec<RbsList> {
    rbs_elements(n, class, group)
        .into_iter()
        .filter(|l| l.0.len() > 1)
        .collect()
}

/// Empty for `n = 1`.
pub fn boundary_rbs(n: usize, class: GroupElem, group: &FiniteAbelianGroup) -> Result<FinitePoset> {
    rbs_poset_of(&boundary_rbs_elements(n, class, group), group)
}

/// Partial sums `(n_1 + ... + n_j, rho_1 ... rho_j)` for `j < k`.
pub fn rbs_to_sdx(list: &RbsList, group: &FiniteAbelianGroup) -> Result<SdChain> {
    if list.0.len() < 2 {
        return Err(Error::Domain(format!("one-block list {list} has no chain image")));
    }
    let mut chain = Vec::with_capacity(list.0.len() - 1);
    let (mut r, mut p) = (0, group.identity());
    for &(nr, np) in &list.0[..list.0.len() - 1] {
        r += nr;
        p = group.op(p, np);
        chain.push((r, p));
    }
    Ok(chain)
}

/// Successive differences of a nonempty chain, closed off by the block
/// that brings the total to `(n, class)`.
pub fn sdx_to_rbs(chain: &SdChain, n: usize, class: GroupElem, group: &FiniteAbelianGroup) -> Result<RbsList> {
    if chain.is_empty() {
        return Err(Error::Domain("empty chain".into()));
    }
    let mut out = Vec::with_capacity(chain.len() + 1);
    let (mut r, mut p) = (0, group.identity());
    for &(cr, cp) in chain.iter().chain(std::iter::once(&(n, class))) {
        if cr <= r {
            return Err(Error::Domain(format!(
                "ranks in {chain:?} are not strictly increasing below {n}"
            )));
        }
        out.push((cr - r, group.op(cp, group.inverse(p))));
        r = cr;
        p = cp;
    }
    Ok(RbsList(out))
}

/// Order on chains of the rank poset matching the merge order: a chain is
/// below every chain it contains.
pub fn sdx_le(c: &SdChain, d: &SdChain) -> bool {
    d.iter().all(|x| c.contains(x))
}

/// All nonempty chains of the rank poset on ranks `1..=m`.
pub fn sdx_chains(m: usize, group: &FiniteAbelianGroup) -> Vec<SdChain> {
    let elems = x_elements(m, group);
    let p = x_poset(m, group);
    p.chains()
        .into_iter()
        .map(|c| c.iter().map(|&i| elems[i]).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RbsCheck {
    pub n: usize,
    pub group: String,
    pub class: String,
    pub elements: usize,
    pub chains: usize,
    pub bijective: bool,
    pub order_isomorphic: bool,
    pub homology_matches: bool,
    pub full_poset_acyclic: bool,
}

impl RbsCheck {
    pub fn pass(&self) -> bool {
        self.bijective && self.order_isomorphic && self.homology_matches && self.full_poset_acyclic
    }
}

/// Checks the chain identification for `(n, class)`: bijectivity,
/// order isomorphism, equal homology of the two realizations, and
/// acyclicity of the full list poset.
pub fn check_rbs(n: usize, class: GroupElem, group: &FiniteAbelianGroup) -> Result<RbsCheck> {
    use crate::exactalg::CoefficientDomain;
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    let z = CoefficientDomain::Integers;
    let lists = boundary_rbs_elements(n, class, group);
    let images: Vec<SdChain> = lists.iter().map(|l| rbs_to_sdx(l, group)).collect::<Result<_>>()?;
    let mut chains = sdx_chains(n - 1, group);
    chains.sort();
    let mut sorted = images.clone();
    sorted.sort();
    let round_trip = lists
        .iter()
        .zip(&images)
        .all(|(l, c)| sdx_to_rbs(c, n, class, group).as_ref() == Ok(l));
    let bijective = round_trip && sorted == chains && sorted.windows(2).all(|w| w[0] != w[1]);

    let mut order_isomorphic = true;
    for (x, cx) in lists.iter().zip(&images) {
        for (y, cy) in lists.iter().zip(&images) {
            if merges_to(x, y, group) != sdx_le(cx, cy) {
                order_isomorphic = false;
            }
        }
    }

    let boundary = boundary_rbs(n, class, group)?;
    let sd_poset = FinitePoset::from_fn(&chains, |c| format!("{c:?}"), sdx_le);
    let homology_matches = boundary.order_complex().reduced_homology(z) == sd_poset.order_complex().reduced_homology(z)
        && sd_poset.order_complex().reduced_homology(z) == x_poset(n - 1, group).order_complex().reduced_homology(z);

    let full_poset_acyclic = rbs_poset(n, class, group)?
        .order_complex()
        .reduced_homology(z)
        .is_acyclic();

    Ok(RbsCheck {
        n,
        group: group.to_string(),
        class: group.format_elem(class),
        elements: lists.len(),
        chains: chains.len(),
        bijective,
        order_isomorphic,
        homology_matches,
        full_poset_acyclic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> FiniteAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        let t = grp("1");
        assert_eq!(rbs_elements(1, 0, &t), vec![RbsList(vec![(1, 0)])]);
        assert_eq!(boundary_rbs_elements(2, 0, &t), vec![RbsList(vec![(1, 0), (1, 0)])]);
        let z2 = grp("Z2");
        assert_eq!(
            boundary_rbs_elements(2, 0, &z2),
            vec![RbsList(vec![(1, 0), (1, 0)]), RbsList(vec![(1, 1), (1, 1)])]
        );
        assert!(boundary_rbs(1, 0, &z2).unwrap().is_empty());
    }

    /// A composition with `k` parts carries `|P|^(k-1)` decorations of
    /// each class.
    #[test]
    fn element_counts() {
        for spec in ["1", "Z2", "Z3"] {
            let g = grp(spec);
            for n in 1..=4usize {
                let expect: usize = (1..=n).map(|k| binom(n - 1, k - 1) * g.order().pow(k as u32 - 1)).sum();
                for c in g.elements() {
                    assert_eq!(rbs_elements(n, c, &g).len(), expect);
                }
            }
        }
        // n = 3 over Z/2 with identity class, listed by hand
        assert_eq!(rbs_elements(3, 0, &grp("Z2")).len(), 1 + 2 + 2 + 4);
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }

    #[test]
    fn chain_images() {
        let z2 = grp("Z2");
        assert_eq!(rbs_to_sdx(&RbsList(vec![(1, 0), (1, 0)]), &z2).unwrap(), vec![(1, 0)]);
        assert_eq!(rbs_to_sdx(&RbsList(vec![(1, 1), (2, 1)]), &z2).unwrap(), vec![(1, 1)]);
        assert!(rbs_to_sdx(&RbsList(vec![(3, 0)]), &z2).is_err());
    }

    #[test]
    fn terminal_list_is_a_top() {
        let g = grp("Z3");
        let p = rbs_poset(3, 2, &g).unwrap();
        let top = p.index_of("[(3,2)]").unwrap();
        assert!((0..p.len()).all(|x| p.le(x, top)));
    }

    #[test]
    fn identification_small() {
        for spec in ["1", "Z2", "Z3"] {
            let g = grp(spec);
            for n in 2..=3 {
                for c in g.elements() {
                    let r = check_rbs(n, c, &g).unwrap();
                    assert!(r.pass(), "{r:?}");
                }
            }
        }
    }
}
