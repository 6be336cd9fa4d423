//! Finite posets and their order complexes.
//!
//! Text format (strict relations, closed transitively):
//!
//! ```text
//! poset
//! elements a b c
//! less a b
//! less b c
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::simplicial::SimplicialComplex;
use crate::apalgebra::FiniteAbelianGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `leq[x][y]` iff `x <= y`.
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Validates reflexivity, antisymmetry and transitivity of `leq`.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::structural("order matrix has the wrong shape"));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::structural(format!("`{}` is not below itself", labels[x])));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::structural(format!(
                        "`{}` and `{}` are distinct but mutually below each other",
                        labels[x], labels[y]
                    )));
                }
                if leq[x][y] {
                    for z in 0..n {
                        if leq[y][z] && !leq[x][z] {
                            return Err(Error::structural(format!(
                                "order is not transitive at `{}` <= `{}` <= `{}`",
                                labels[x], labels[y], labels[z]
                            )));
                        }
                    }
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    /// Reflexive-transitive closure of the strict relations `less`.
    pub fn from_relations(labels: Vec<String>, less: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in less {
            if x >= n || y >= n {
                return Err(Error::structural("relation uses an unknown element"));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            let above = leq[k].clone();
            for row in leq.iter_mut().filter(|r| r[k]) {
                for (x, &b) in row.iter_mut().zip(&above) {
                    *x |= b;
                }
            }
        }
        Self::new(labels, leq)
    }

    /// Poset on `elems` ordered by `le`, which is trusted to be a partial order.
    pub fn from_fn<T>(elems: &[T], label: impl Fn(&T) -> String, le: impl Fn(&T, &T) -> bool) -> Self {
        let leq = elems.iter().map(|x| elems.iter().map(|y| le(x, y)).collect()).collect();
        FinitePoset {
            labels: elems.iter().map(label).collect(),
            leq,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All nonempty chains `x_0 < ... < x_k`, listed bottom first.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
        while let Some(c) = stack.pop() {
            let top = *c.last().expect("nonempty");
            for y in 0..n {
                if self.lt(top, y) {
                    let mut d = c.clone();
                    d.push(y);
                    stack.push(d);
                }
            }
            out.push(c);
        }
        out
    }

    /// Simplicial complex of chains, on the same vertex labels.
    pub fn order_complex(&self) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = self
            .chains()
            .into_iter()
            .filter(|c| {
                let top = *c.last().expect("nonempty");
                !(0..self.len()).any(|y| self.lt(top, y))
                    && !(0..self.len()).any(|y| self.lt(y, c[0]))
                    && c.windows(2)
                        .all(|w| !(0..self.len()).any(|z| self.lt(w[0], z) && self.lt(z, w[1])))
            })
            .collect();
        SimplicialComplex::from_facets(self.labels.clone(), &facets).expect("chains are simplices")
    }

    /// Nonempty faces of `k` ordered by inclusion, labelled like the
    /// vertices of [`SimplicialComplex::barycentric_subdivision`].
    pub fn face_poset(k: &SimplicialComplex) -> FinitePoset {
        let top = (k.dimension() + 1) as usize;
        let faces: Vec<Vec<usize>> = (0..top).flat_map(|q| k.faces(q).to_vec()).collect();
        let label = |s: &Vec<usize>| {
            let names: Vec<&str> = s.iter().map(|&v| k.vertices()[v].as_str()).collect();
            format!("{{{}}}", names.join(","))
        };
        FinitePoset::from_fn(&faces, label, |a, b| a.iter().all(|v| b.contains(v)))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut less = Vec::new();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "poset" => header = true,
                "elements" => {
                    for w in &words[1..] {
                        if index.insert(w.to_string(), labels.len()).is_some() {
                            return Err(Error::parse(line_no, format!("duplicate element `{w}`")));
                        }
                        labels.push(w.to_string());
                    }
                }
                "less" => {
                    if words.len() != 3 {
                        return Err(Error::parse(line_no, "`less` takes two elements"));
                    }
                    let get = |w: &str| {
                        index
                            .get(w)
                            .copied()
                            .ok_or_else(|| Error::parse(line_no, format!("unknown element `{w}`")))
                    };
                    less.push((get(words[1])?, get(words[2])?));
                }
                other => return Err(Error::parse(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        if !header {
            return Err(Error::parse(1, "missing `poset` header"));
        }
        Self::from_relations(labels, &less)
    }

    /// Writes the cover relations only.
    pub fn to_text(&self) -> String {
        let mut s = String::from("poset\n");
        let _ = writeln!(s, "elements {}", self.labels.join(" "));
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    let _ = writeln!(s, "less {} {}", self.labels[x], self.labels[y]);
                }
            }
        }
        s
    }
}

/// `(rank, element)` pairs with `1 <= rank <= m`, strictly ordered by rank
/// alone.
pub fn x_elements(m: usize, group: &FiniteAbelianGroup) -> Vec<(usize, usize)> {
    (1..=m).flat_map(|r| group.elements().map(move |p| (r, p))).collect()
}

pub fn x_poset(m: usize, group: &FiniteAbelianGroup) -> FinitePoset {
    let elems = x_elements(m, group);
    FinitePoset::from_fn(
        &elems,
        |&(r, p)| format!("({r},{})", group.format_elem(p)),
        |a, b| a == b || a.0 < b.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CoefficientDomain;

    const Z: CoefficientDomain = CoefficientDomain::Integers;

    #[test]
    fn validation() {
        let labels = || vec!["a".to_string(), "b".to_string()];
        assert!(FinitePoset::new(labels(), vec![vec![true, true], vec![true, true]]).is_err());
        assert!(FinitePoset::new(labels(), vec![vec![false, true], vec![false, true]]).is_err());
        assert!(FinitePoset::from_relations(labels(), &[(0, 1), (1, 0)]).is_err());
        let p = FinitePoset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p.chains().len(), 7);
    }

    #[test]
    fn text_round_trip() {
        let p = FinitePoset::parse("poset\nelements a b c d\nless a b\nless a c\nless b d\nless c d\n").unwrap();
        assert_eq!(FinitePoset::parse(&p.to_text()).unwrap(), p);
        assert!(FinitePoset::parse("poset\nelements a\nless a z\n").is_err());
        // a square: the order complex is two triangles glued along an edge
        assert!(p.order_complex().reduced_homology(Z).is_acyclic());
    }

    #[test]
    fn subdivision_is_order_complex_of_face_poset() {
        let cases = [
            SimplicialComplex::from_index_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap(),
            SimplicialComplex::from_index_facets(4, &[vec![0, 1, 2], vec![2, 3]]).unwrap(),
            SimplicialComplex::from_index_facets(4, &[vec![0, 1, 2, 3]]).unwrap(),
            SimplicialComplex::from_index_facets(5, &[vec![0, 1, 2], vec![0, 3], vec![4]]).unwrap(),
        ];
        for k in cases {
            let via_flags = k.barycentric_subdivision();
            let via_chains = FinitePoset::face_poset(&k).order_complex();
            assert_eq!(via_flags.labelled_simplices(), via_chains.labelled_simplices());
        }
    }

    /// The join of `m` discrete sets of size `q` is a wedge of
    /// `(q-1)^m` spheres of dimension `m-1`.
    #[test]
    fn x_poset_is_a_wedge_of_spheres() {
        for spec in ["Z2", "Z3", "Z2xZ2"] {
            let g: FiniteAbelianGroup = spec.parse().unwrap();
            for m in 1..=3 {
                let h = x_poset(m, &g).order_complex().reduced_homology(Z);
                let expect = (g.order() - 1).pow(m as u32);
                assert_eq!(h.rank(m as i64 - 1), expect, "{spec} m={m}");
                assert_eq!(h.nonzero().len(), 1);
            }
        }
    }
}
