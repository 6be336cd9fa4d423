use serde::Serialize;

use super::group::{FiniteAbelianGroup, GroupElem};
use crate::error::{Error, Result};
use crate::exactalg::CoefficientDomain;

/// Basis monomial of the algebra. Grading 0 is the unit (and then `elem` is
/// the identity); in grading `n >= 1` it is the normal form `s^(n-1) * elem`,
/// `s` the identity of the group read as a degree-one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub grading: usize,
    pub elem: GroupElem,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { grading: 0, elem: 0 }
    }

    pub fn new(grading: usize, elem: GroupElem) -> Self {
        Monomial {
            grading,
            elem: if grading == 0 { 0 } else { elem },
        }
    }
}

/// The graded commutative algebra generated in degree one by the elements of
/// a finite abelian group, subject to `a * b = s * (a + b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApAlgebra {
    group: FiniteAbelianGroup,
    domain: CoefficientDomain,
}

impl ApAlgebra {
    pub fn new(group: FiniteAbelianGroup, domain: CoefficientDomain) -> Self {
        ApAlgebra { group, domain }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    /// Dimension of the grading-`n` piece: 1, then `|P|` from grading 1 on.
    pub fn dim(&self, n: usize) -> usize {
        if n == 0 {
            1
        } else {
            self.group.order()
        }
    }

    pub fn basis(&self, n: usize) -> Vec<Monomial> {
        if n == 0 {
            vec![Monomial::unit()]
        } else {
            self.group.elements().map(|p| Monomial::new(n, p)).collect()
        }
    }

    pub fn multiply(&self, a: Monomial, b: Monomial) -> Monomial {
        ap_multiply(&self.group, a, b)
    }

    pub(crate) fn require_field(&self, op: &'static str) -> Result<()> {
        if self.domain.is_field() {
            Ok(())
        } else {
            Err(Error::UnsupportedDomain {
                op,
                domain: self.domain.to_string(),
            })
        }
    }
}

/// Product of two basis monomials, again a single basis monomial.
pub fn ap_multiply(group: &FiniteAbelianGroup, a: Monomial, b: Monomial) -> Monomial {
    match (a.grading, b.grading) {
        (0, _) => b,
        (_, 0) => a,
        (n, m) => Monomial::new(n + m, group.op(a.elem, b.elem)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Reduces a product of degree-one generators to normal form by applying
    /// `a * b -> s * (a + b)` to randomly chosen pairs of non-identity
    /// factors until at most one remains.
    fn rewrite(g: &FiniteAbelianGroup, mut factors: Vec<GroupElem>, rng: &mut ChaCha8Rng) -> Monomial {
        loop {
            let live: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] != g.identity()).collect();
            if live.len() < 2 {
                let elem = live.first().map_or(g.identity(), |&i| factors[i]);
                return Monomial::new(factors.len(), elem);
            }
            let i = live[rng.gen_range(0..live.len())];
            let mut j = i;
            while j == i {
                j = live[rng.gen_range(0..live.len())];
            }
            let prod = g.op(factors[i], factors[j]);
            factors[i] = g.identity();
            factors[j] = prod;
        }
    }

    #[test]
    fn small_products() {
        let g: FiniteAbelianGroup = "Z2".parse().unwrap();
        let (s, l) = (0, 1);
        assert_eq!(
            ap_multiply(&g, Monomial::new(1, s), Monomial::new(1, s)),
            Monomial::new(2, s)
        );
        assert_eq!(
            ap_multiply(&g, Monomial::new(1, l), Monomial::new(1, l)),
            Monomial::new(2, s)
        );
        assert_eq!(
            ap_multiply(&g, Monomial::new(1, s), Monomial::new(4, l)),
            Monomial::new(5, l)
        );
    }

    #[test]
    fn products_agree_with_rewriting() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ["Z2", "Z3", "Z2xZ2", "Z2xZ3"] {
            let g: FiniteAbelianGroup = spec.parse().unwrap();
            for _ in 0..200 {
                let a = rng.gen_range(1..5);
                let b = rng.gen_range(1..5);
                let (p, q) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
                // s^(a-1) p * s^(b-1) q as a word in degree-one generators
                let mut word = vec![g.identity(); a - 1];
                word.push(p);
                word.extend(std::iter::repeat_n(g.identity(), b - 1));
                word.push(q);
                let expect = rewrite(&g, word.clone(), &mut rng);
                // rewriting in a different order must land in the same place
                assert_eq!(rewrite(&g, word, &mut rng), expect);
                assert_eq!(ap_multiply(&g, Monomial::new(a, p), Monomial::new(b, q)), expect);
            }
        }
    }

    #[test]
    fn dimensions() {
        let alg = ApAlgebra::new("Z2xZ2".parse().unwrap(), CoefficientDomain::Rationals);
        assert_eq!(alg.dim(0), 1);
        assert!((1..8).all(|n| alg.dim(n) == 4 && alg.basis(n).len() == 4));
    }
}
