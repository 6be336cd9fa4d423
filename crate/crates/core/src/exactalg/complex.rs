//! Free chain complexes and their homology.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::domain::CoefficientDomain;
use super::elim::field_rank;
use super::field::{with_field, Field, FieldTask};
use super::matrix::ExactMatrix;
use super::smith::{canonical_torsion, SmithForm};
use crate::error::{Error, Result};

/// A bounded complex of finitely generated free modules
/// `C_top -> ... -> C_min`, with integral boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    min_degree: i64,
    dims: Vec<usize>,
    /// `boundaries[i] : C_{min+i+1} -> C_{min+i}`, shape `dims[i] x dims[i+1]`.
    boundaries: Vec<ExactMatrix>,
}

impl FreeChainComplex {
    /// Validates shapes and `d o d = 0`.
    pub fn new(min_degree: i64, dims: Vec<usize>, boundaries: Vec<ExactMatrix>) -> Result<Self> {
        if dims.is_empty() {
            if !boundaries.is_empty() {
                return Err(Error::structural("boundaries given for an empty complex"));
            }
        } else if boundaries.len() + 1 != dims.len() {
            return Err(Error::structural(format!(
                "{} degrees need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[i] || b.cols() != dims[i + 1] {
                return Err(Error::structural(format!(
                    "boundary out of degree {} is {}x{}, expected {}x{}",
                    min_degree + i as i64 + 1,
                    b.rows(),
                    b.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for (i, pair) in boundaries.windows(2).enumerate() {
            if !pair[0].mul(&pair[1])?.is_zero() {
                return Err(Error::structural(format!(
                    "boundary does not square to zero at degree {}",
                    min_degree + i as i64 + 2
                )));
            }
        }
        Ok(FreeChainComplex {
            min_degree,
            dims,
            boundaries,
        })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |i| self.dims[i])
    }

    /// Boundary out of `degree`, if both ends are in range.
    pub fn boundary(&self, degree: i64) -> Option<&ExactMatrix> {
        let i = self.index(degree)?;
        i.checked_sub(1).map(|k| &self.boundaries[k])
    }

    pub fn boundaries(&self) -> &[ExactMatrix] {
        &self.boundaries
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let i = degree - self.min_degree;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let sign = if (self.min_degree + i as i64).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                sign * d as i64
            })
            .sum()
    }

    /// Shifts every degree by `k`.
    pub fn shifted(mut self, k: i64) -> Self {
        self.min_degree += k;
        self
    }
}

/// Homology in one degree: `Z^rank + Z/t_1 + ...` over the integers, or a
/// vector space of dimension `rank` over a field (then `torsion` is empty).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn render(&self, domain: CoefficientDomain) -> String {
        let mut parts = Vec::new();
        let sym = match domain {
            CoefficientDomain::Integers => "Z".to_string(),
            d => d.symbol(),
        };
        match self.rank {
            0 => {}
            1 => parts.push(sym.clone()),
            r => parts.push(format!("{sym}^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub domain: CoefficientDomain,
    pub min_degree: i64,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn degree(&self, d: i64) -> HomologyGroup {
        let i = d - self.min_degree;
        if i < 0 {
            return HomologyGroup::default();
        }
        self.groups.get(i as usize).cloned().unwrap_or_default()
    }

    /// Dimension over a field, free rank over `Z`.
    pub fn rank(&self, d: i64) -> usize {
        self.degree(d).rank
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Degreewise direct sum of results over the same domain.
    pub fn direct_sum<'a, I: IntoIterator<Item = &'a HomologyResult>>(
        domain: CoefficientDomain,
        parts: I,
    ) -> HomologyResult {
        let parts: Vec<&HomologyResult> = parts.into_iter().collect();
        let lo = parts.iter().map(|h| h.min_degree).min().unwrap_or(0);
        let hi = parts
            .iter()
            .map(|h| h.min_degree + h.groups.len() as i64 - 1)
            .max()
            .unwrap_or(lo - 1);
        let groups = (lo..=hi)
            .map(|d| {
                let mut rank = 0;
                let mut torsion = Vec::new();
                for h in &parts {
                    let g = h.degree(d);
                    rank += g.rank;
                    torsion.extend(g.torsion);
                }
                HomologyGroup {
                    rank,
                    torsion: canonical_torsion(&torsion),
                }
            })
            .collect();
        HomologyResult {
            domain,
            min_degree: lo,
            groups,
        }
    }

    /// `(degree, group)` pairs for the nonzero groups.
    pub fn nonzero(&self) -> Vec<(i64, &HomologyGroup)> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| (self.min_degree + i as i64, g))
            .collect()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = nz
            .iter()
            .map(|(d, g)| format!("H_{d} = {}", g.render(self.domain)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Rank of an integral matrix over `domain`. Over `Z` this is the rank over `Q`.
pub fn rank(m: &ExactMatrix, domain: CoefficientDomain) -> usize {
    struct RankTask<'a>(&'a ExactMatrix);
    impl FieldTask for RankTask<'_> {
        type Output = usize;
        fn run<F: Field>(self, field: &F) -> usize {
            field_rank(field, &self.0.over(field))
        }
    }
    let domain = match domain {
        CoefficientDomain::Integers => CoefficientDomain::Rationals,
        d => d,
    };
    with_field(domain, "rank", RankTask(m)).expect("domain is a field")
}

/// Homology of `c` with coefficients in `domain`.
pub fn homology(c: &FreeChainComplex, domain: CoefficientDomain) -> HomologyResult {
    let n = c.dims.len();
    let groups = match domain {
        CoefficientDomain::Integers => {
            let snf: Vec<SmithForm> = c.boundaries.par_iter().map(SmithForm::compute).collect();
            (0..n)
                .map(|i| {
                    let out_rank = if i > 0 { snf[i - 1].rank } else { 0 };
                    let (in_rank, torsion) = snf.get(i).map_or((0, Vec::new()), |s| (s.rank, s.torsion()));
                    HomologyGroup {
                        rank: c.dims[i] - out_rank - in_rank,
                        torsion,
                    }
                })
                .collect()
        }
        field => {
            let ranks: Vec<usize> = c.boundaries.par_iter().map(|b| rank(b, field)).collect();
            (0..n)
                .map(|i| {
                    let out_rank = if i > 0 { ranks[i - 1] } else { 0 };
                    let in_rank = ranks.get(i).copied().unwrap_or(0);
                    HomologyGroup {
                        rank: c.dims[i] - out_rank - in_rank,
                        torsion: Vec::new(),
                    }
                })
                .collect()
        }
    };
    HomologyResult {
        domain,
        min_degree: c.min_degree,
        groups,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_dense(v).unwrap()
    }

    #[test]
    fn zero_map_between_two_copies_of_z() {
        let c = FreeChainComplex::new(0, vec![1, 1], vec![ExactMatrix::zeros(1, 1)]).unwrap();
        let h = homology(&c, CoefficientDomain::Integers);
        assert_eq!(h.rank(0), 1);
        assert_eq!(h.rank(1), 1);
        assert_eq!(h.to_string(), "H_0 = Z, H_1 = Z");
    }

    #[test]
    fn torsion_of_multiplication_by_three() {
        let c = FreeChainComplex::new(0, vec![1, 1], vec![z(&[vec![3]])]).unwrap();
        let hz = homology(&c, CoefficientDomain::Integers);
        assert_eq!(hz.degree(0).torsion, vec![BigInt::from(3)]);
        assert_eq!(hz.degree(0).render(CoefficientDomain::Integers), "Z/3");
        assert!(homology(&c, CoefficientDomain::Rationals).is_acyclic());
        let h3 = homology(&c, CoefficientDomain::prime_field(3).unwrap());
        assert_eq!((h3.rank(0), h3.rank(1)), (1, 1));
    }

    #[test]
    fn rejects_bad_shapes_and_nonzero_square() {
        assert!(FreeChainComplex::new(0, vec![1, 2], vec![ExactMatrix::zeros(2, 1)]).is_err());
        let d1 = z(&[vec![1]]);
        let d2 = z(&[vec![1]]);
        assert!(FreeChainComplex::new(0, vec![1, 1, 1], vec![d1, d2]).is_err());
    }

    #[test]
    fn rank_over_domains() {
        let m = z(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank(&m, CoefficientDomain::Rationals), 1);
        assert_eq!(rank(&m, CoefficientDomain::prime_field(2).unwrap()), 1);
        assert_eq!(rank(&ExactMatrix::identity(4), CoefficientDomain::Integers), 4);
        let m = z(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(rank(&m, CoefficientDomain::prime_field(2).unwrap()), 0);
    }
}
