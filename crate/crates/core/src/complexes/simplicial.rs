//! Finite abstract simplicial complexes.
//!
//! Text format:
//!
//! ```text
//! complex
//! vertices a b c d
//! facet a b c
//! facet c d
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{homology, CoefficientDomain, ExactMatrix, FreeChainComplex, HomologyResult};

/// Simplices are sorted lists of vertex indices; `faces[q]` holds the
/// `q`-simplices in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of `facets`. Every vertex must appear in some facet
    /// or be listed in `vertices` (isolated vertices are kept as 0-simplices).
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::structural(format!("duplicate vertex `{v}`")));
            }
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for v in 0..vertices.len() {
            all.insert(vec![v]);
        }
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if f.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::structural("facet uses an unknown vertex"));
            }
            if f.len() > 24 {
                return Err(Error::structural("facet too large to close downward"));
            }
            let k = f.len();
            for mask in 1u32..(1 << k) {
                let s: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                all.insert(s);
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut faces = vec![Vec::new(); top];
        for s in all {
            faces[s.len() - 1].push(s);
        }
        for level in &mut faces {
            level.sort();
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    /// Complex whose vertices are labelled by their index.
    pub fn from_index_facets(nverts: usize, facets: &[Vec<usize>]) -> Result<Self> {
        Self::from_facets((0..nverts).map(|i| i.to_string()).collect(), facets)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn faces(&self, q: usize) -> &[Vec<usize>] {
        self.faces.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Maximal simplices, in order of dimension then lexicographically.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for q in 0..self.faces.len() {
            let above: BTreeSet<&Vec<usize>> = self.faces.get(q + 1).map(|l| l.iter().collect()).unwrap_or_default();
            let covered: BTreeSet<Vec<usize>> = above
                .iter()
                .flat_map(|s| {
                    (0..s.len()).map(move |i| {
                        let mut t = (*s).clone();
                        t.remove(i);
                        t
                    })
                })
                .collect();
            out.extend(self.faces[q].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    /// Simplices as sets of vertex labels, for comparisons up to relabelling.
    pub fn labelled_simplices(&self) -> BTreeSet<BTreeSet<String>> {
        self.faces
            .iter()
            .flatten()
            .map(|s| s.iter().map(|&v| self.vertices[v].clone()).collect())
            .collect()
    }

    fn boundary_matrix(&self, q: usize) -> ExactMatrix {
        let idx: HashMap<&[usize], usize> = self.faces[q - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let cols = self.faces[q]
            .iter()
            .map(|s| {
                let mut col: Vec<(usize, BigInt)> = (0..s.len())
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        (idx[t.as_slice()], BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        ExactMatrix::from_columns(self.faces[q - 1].len(), self.faces[q].len(), cols).expect("faces are closed")
    }

    /// Simplicial chains in degrees `0..=dim`.
    pub fn chain_complex(&self) -> FreeChainComplex {
        let dims = self.faces.iter().map(Vec::len).collect();
        let boundaries = (1..self.faces.len()).map(|q| self.boundary_matrix(q)).collect();
        FreeChainComplex::new(0, dims, boundaries).expect("simplicial boundary squares to zero")
    }

    /// Chains augmented by the empty simplex in degree `-1`.
    pub fn augmented_chain_complex(&self) -> FreeChainComplex {
        let mut dims = vec![1];
        dims.extend(self.faces.iter().map(Vec::len));
        let mut boundaries = Vec::new();
        if let Some(verts) = self.faces.first() {
            let cols = (0..verts.len()).map(|_| vec![(0, BigInt::from(1))]).collect();
            boundaries.push(ExactMatrix::from_columns(1, verts.len(), cols).expect("one row"));
        }
        boundaries.extend((1..self.faces.len()).map(|q| self.boundary_matrix(q)));
        FreeChainComplex::new(-1, dims, boundaries).expect("augmented boundary squares to zero")
    }

    pub fn homology(&self, domain: CoefficientDomain) -> HomologyResult {
        homology(&self.chain_complex(), domain)
    }

    /// Reduced homology (homology of the augmented complex).
    pub fn reduced_homology(&self, domain: CoefficientDomain) -> HomologyResult {
        homology(&self.augmented_chain_complex(), domain)
    }

    /// Barycentric subdivision built from vertex orderings: every ordering
    /// `v_1, ..., v_k` of a facet gives the flag of its prefixes.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let all: Vec<&Vec<usize>> = self.faces.iter().flatten().collect();
        let label = |s: &[usize]| -> String {
            let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
            format!("{{{}}}", names.join(","))
        };
        let index: HashMap<&[usize], usize> = all.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut facets = Vec::new();
        for f in self.facets() {
            for perm in permutations(&f) {
                let mut flag = Vec::with_capacity(perm.len());
                for k in 1..=perm.len() {
                    let mut prefix = perm[..k].to_vec();
                    prefix.sort_unstable();
                    flag.push(index[prefix.as_slice()]);
                }
                facets.push(flag);
            }
        }
        let names = all.iter().map(|s| label(s)).collect();
        SimplicialComplex::from_facets(names, &facets).expect("flags are valid simplices")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("complex") => header = true,
                Some("vertices") => vertices.extend(words.map(str::to_string)),
                Some("facet") => {
                    let mut f = Vec::new();
                    for w in words {
                        let v = match vertices.iter().position(|x| x == w) {
                            Some(v) => v,
                            None => {
                                vertices.push(w.to_string());
                                vertices.len() - 1
                            }
                        };
                        f.push(v);
                    }
                    facets.push(f);
                }
                Some(other) => return Err(Error::parse(line_no, format!("unknown keyword `{other}`"))),
                None => {}
            }
        }
        if !header {
            return Err(Error::parse(1, "missing `complex` header"));
        }
        Self::from_facets(vertices, &facets)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("complex\n");
        let _ = writeln!(s, "vertices {}", self.vertices.join(" "));
        for f in self.facets() {
            let names: Vec<&str> = f.iter().map(|&v| self.vertices[v].as_str()).collect();
            let _ = writeln!(s, "facet {}", names.join(" "));
        }
        s
    }
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// The complex of partial matchings on `{1, ..., n}`: vertices are the
/// 2-element subsets, simplices the families of pairwise disjoint ones.
pub fn matching_complex(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(Error::Domain(format!("matching complex needs n >= 2, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let names = edges.iter().map(|(a, b)| format!("{}{}", a + 1, b + 1)).collect();
    let mut facets = Vec::new();
    fn grow(
        start: usize,
        edges: &[(usize, usize)],
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut extended = false;
        for (i, &(a, b)) in edges.iter().enumerate().skip(start) {
            if !used[a] && !used[b] {
                extended = true;
                used[a] = true;
                used[b] = true;
                cur.push(i);
                grow(i + 1, edges, used, cur, out);
                cur.pop();
                used[a] = false;
                used[b] = false;
            }
        }
        if !extended && !cur.is_empty() {
            out.push(cur.clone());
        }
    }
    grow(0, &edges, &mut vec![false; n], &mut Vec::new(), &mut facets);
    SimplicialComplex::from_facets(names, &facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoefficientDomain {
        CoefficientDomain::Integers
    }

    #[test]
    fn tetrahedron_boundary_is_a_sphere() {
        let k = SimplicialComplex::from_index_facets(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
            .unwrap();
        let h = k.homology(z());
        assert_eq!((h.rank(0), h.rank(1), h.rank(2)), (1, 0, 1));
        assert!(h.degree(1).torsion.is_empty());
        assert_eq!(k.chain_complex().euler_characteristic(), 2);
    }

    #[test]
    fn small_matching_complexes() {
        let m3 = matching_complex(3).unwrap();
        assert_eq!(m3.faces(0).len(), 3);
        assert_eq!(m3.dimension(), 0);
        assert_eq!(m3.reduced_homology(z()).rank(0), 2);
        let m4 = matching_complex(4).unwrap();
        assert_eq!(m4.faces(0).len(), 6);
        assert_eq!(m4.faces(1).len(), 3);
        // three disjoint edges
        assert_eq!(m4.reduced_homology(z()).rank(0), 2);
        assert!(matching_complex(1).is_err());
    }

    #[test]
    fn matching_complex_of_seven_has_three_torsion() {
        let h = matching_complex(7).unwrap().reduced_homology(z());
        assert_eq!(h.degree(1).render(z()), "Z/3");
        assert_eq!(h.rank(1), 0);
    }

    #[test]
    fn text_round_trip() {
        let k = SimplicialComplex::parse("complex\nvertices a b c d e\nfacet a b c\nfacet c d\n").unwrap();
        assert_eq!(k.faces(0).len(), 5);
        let again = SimplicialComplex::parse(&k.to_text()).unwrap();
        assert_eq!(again, k);
        assert!(SimplicialComplex::parse("facet a b\n").is_err());
    }

    #[test]
    fn subdivision_preserves_homology() {
        let k = SimplicialComplex::from_index_facets(4, &[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let sd = k.barycentric_subdivision();
        assert_eq!(sd.faces(0).len(), k.face_count());
        assert_eq!(sd.reduced_homology(z()), k.reduced_homology(z()));
    }
}
