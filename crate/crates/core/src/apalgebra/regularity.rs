//! Top nonvanishing gradings of Tor and the checks built on them.

use std::fmt;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::ApAlgebra;
use super::bar::{tor_of_realized, TorTable};
use super::group::FiniteAbelianGroup;
use super::presentation::GradedModulePresentation;
use super::realize::RealizedModule;
use crate::error::Result;
use crate::exactalg::{with_field, Field, FieldTask};

/// `max { n : Tor_{n,d} != 0 }` inside a window `n <= window`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HNumber {
    /// `None` stands for minus infinity (no support in the window).
    pub value: Option<usize>,
    pub window: usize,
    /// True when `Tor_{window,d}` itself is nonzero, so the true value may be larger.
    pub at_edge: bool,
}

impl fmt::Display for HNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}")?,
            None => write!(f, "-inf")?,
        }
        if self.at_edge {
            write!(f, " (window edge {})", self.window)?;
        }
        Ok(())
    }
}

pub fn h_number(t: &TorTable, d: usize) -> HNumber {
    let value = (0..=t.n_max).rev().find(|&n| t.get(n, d) != 0);
    HNumber {
        value,
        window: t.n_max,
        at_edge: t.get(t.n_max, d) != 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityEntry {
    pub d: usize,
    pub h_d: HNumber,
    /// `d - 1 + h_1`, `None` when `h_1` is minus infinity.
    pub bound: Option<usize>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub window: usize,
    pub h: Vec<HNumber>,
    pub entries: Vec<RegularityEntry>,
}

impl RegularityReport {
    pub fn status(&self) -> Status {
        if self.entries.iter().any(|e| e.status == Status::Violated) {
            Status::Violated
        } else if self.entries.iter().all(|e| e.status == Status::Holds) {
            Status::Holds
        } else {
            Status::Inconclusive
        }
    }
}

/// Judges `h_d <= d - 1 + h_1` for `2 <= d <= d_max` from a Tor table.
///
/// A verdict is only given when the window can support it. `h_1` is known
/// exactly once the window reaches the top relation grading (`Tor_1` is a
/// quotient of the relations). The inequality is certified when the window
/// extends past the bound and `Tor_{window,d}` vanishes; an observed
/// violation counts only when `h_1` is known exactly.
pub fn judge_regularity(t: &TorTable, d_max: usize, max_relation: Option<usize>) -> RegularityReport {
    let h: Vec<HNumber> = (0..=d_max.min(t.d_max)).map(|d| h_number(t, d)).collect();
    let h1 = h_number(t, 1);
    let h1_exact = max_relation.is_none_or(|r| t.n_max >= r);
    let entries = (2..=d_max.min(t.d_max))
        .map(|d| {
            let hd = h_number(t, d);
            let bound = h1.value.map(|v| d - 1 + v);
            let status = match (hd.value, bound) {
                (None, None) if h1_exact => Status::Holds,
                (Some(_), None) if h1_exact => Status::Violated,
                (_, None) => Status::Inconclusive,
                (Some(v), Some(b)) if v > b => {
                    if h1_exact {
                        Status::Violated
                    } else {
                        Status::Inconclusive
                    }
                }
                (_, Some(b)) => {
                    if t.n_max > b && !hd.at_edge && h1_exact {
                        Status::Holds
                    } else {
                        Status::Inconclusive
                    }
                }
            };
            RegularityEntry {
                d,
                h_d: hd,
                bound,
                status,
            }
        })
        .collect();
    RegularityReport {
        window: t.n_max,
        h,
        entries,
    }
}

/// Computes Tor of `pres` in the window `n <= n_max` and judges the
/// regularity inequality for `2 <= d <= d_max`.
pub fn verify_regularity_lemma(
    alg: &ApAlgebra,
    pres: &GradedModulePresentation,
    d_max: usize,
    n_max: usize,
) -> Result<RegularityReport> {
    let t = super::bar::bar_tor_module(alg, pres, n_max, d_max.max(1))?;
    Ok(judge_regularity(&t, d_max, pres.max_relation_grading()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub from_grading: usize,
    pub window: usize,
    /// `(n, surjective)` for `from_grading < n <= window`.
    pub checked: Vec<(usize, bool)>,
    /// Agreement of every check with the vanishing of `Tor_{n,0}`.
    pub agrees_with_tor: bool,
}

impl SurjectivityReport {
    pub fn all_surjective(&self) -> bool {
        self.checked.iter().all(|(_, s)| *s)
    }
}

/// Checks that the summed degree-one action `M(n-1)^|P| -> M(n)` is onto
/// for `2d < n <= n_max`.
pub fn verify_stabilization_surjectivity(
    alg: &ApAlgebra,
    pres: &GradedModulePresentation,
    d: usize,
    n_max: usize,
) -> Result<SurjectivityReport> {
    alg.require_field("verify_stabilization_surjectivity")?;
    struct Task<'a>(&'a GradedModulePresentation, usize, usize);
    impl FieldTask for Task<'_> {
        type Output = Result<SurjectivityReport>;
        fn run<F: Field>(self, field: &F) -> Self::Output {
            let (pres, d, n_max) = (self.0, self.1, self.2);
            let m = RealizedModule::build(field, pres, n_max)?;
            let t = tor_of_realized(field, &m, n_max, 0);
            let from = 2 * d;
            let checked: Vec<(usize, bool)> = (from + 1..=n_max)
                .map(|n| (n, m.summed_action_surjective(field, n)))
                .collect();
            let agrees = checked.iter().all(|&(n, s)| s == (t.get(n, 0) == 0));
            Ok(SurjectivityReport {
                from_grading: from,
                window: n_max,
                checked,
                agrees_with_tor: agrees,
            })
        }
    }
    with_field(alg.domain(), "verify_stabilization_surjectivity", Task(pres, d, n_max))?
}

/// A seeded random presentation: up to `max_gens` generators and
/// `max_rels` relations, all in gradings `<= max_grading`, with small
/// integer coefficients.
pub fn random_presentation(
    group: &FiniteAbelianGroup,
    rng: &mut ChaCha8Rng,
    max_gens: usize,
    max_rels: usize,
    max_grading: usize,
) -> GradedModulePresentation {
    let mut p = GradedModulePresentation::new(group.clone());
    let ngens = rng.gen_range(1..=max_gens);
    let mut gradings: Vec<usize> = (0..ngens).map(|_| rng.gen_range(0..=max_grading)).collect();
    gradings.sort_unstable();
    let labels: Vec<String> = (0..ngens).map(|i| format!("G{i}")).collect();
    for (l, &g) in labels.iter().zip(&gradings) {
        p.add_generator(l, g).expect("distinct labels");
    }
    let nrels = rng.gen_range(0..=max_rels);
    for _ in 0..nrels {
        let min_g = gradings[0];
        let grading = rng.gen_range(min_g..=max_grading);
        let eligible: Vec<usize> = (0..ngens).filter(|&i| gradings[i] <= grading).collect();
        let nterms = rng.gen_range(1..=eligible.len().min(3));
        let chosen: Vec<usize> = eligible.choose_multiple(rng, nterms).copied().collect();
        let mut terms = Vec::new();
        for i in chosen {
            let coeff = loop {
                let c: i64 = rng.gen_range(-2..=2);
                if c != 0 {
                    break c;
                }
            };
            let elem = (gradings[i] < grading).then(|| rng.gen_range(0..group.order()));
            terms.push((BigRational::from_integer(coeff.into()), elem, labels[i].as_str()));
        }
        p.add_relation(grading, &terms)
            .expect("terms are valid by construction");
    }
    p
}

/// The seeded family of random presentations used by the regularity suite.
pub fn random_family(group: &FiniteAbelianGroup, seed: u64, count: usize) -> Vec<GradedModulePresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_presentation(group, &mut rng, 3, 4, 3))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apalgebra::presentation::example_module;

    fn z2(dom: &str) -> (FiniteAbelianGroup, ApAlgebra) {
        let g: FiniteAbelianGroup = "Z2".parse().unwrap();
        (g.clone(), ApAlgebra::new(g, dom.parse().unwrap()))
    }

    #[test]
    fn h_numbers_of_small_modules() {
        let (g, a) = z2("F2");
        let free = super::super::bar::bar_tor_module(&a, &GradedModulePresentation::free(g.clone()), 6, 2).unwrap();
        assert_eq!(h_number(&free, 0).value, Some(0));
        assert_eq!(h_number(&free, 1).value, None);
        let q = GradedModulePresentation::quotient_by(g, 0).unwrap();
        let t = super::super::bar::bar_tor_module(&a, &q, 8, 3).unwrap();
        assert_eq!(h_number(&t, 0).value, Some(0));
        assert_eq!(h_number(&t, 1).value, Some(1));
        assert_eq!(t.get(0, 0), 1);
        assert_ne!(t.get(1, 1), 0);
    }

    #[test]
    fn example_module_regularity_and_surjectivity() {
        let (_, a) = z2("F2");
        let r = verify_regularity_lemma(&a, &example_module(), 3, 8).unwrap();
        assert_eq!(r.status(), Status::Holds, "{r:?}");
        let s = verify_stabilization_surjectivity(&a, &example_module(), 1, 4).unwrap();
        assert_eq!(s.checked, vec![(3, true), (4, true)]);
        assert!(s.agrees_with_tor);
    }

    #[test]
    fn random_family_is_seeded() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        assert_eq!(random_family(&g, 5, 4), random_family(&g, 5, 4));
        assert_ne!(random_family(&g, 5, 4), random_family(&g, 6, 4));
    }

    #[test]
    fn small_window_is_inconclusive() {
        let (_, a) = z2("F2");
        let r = verify_regularity_lemma(&a, &example_module(), 3, 3).unwrap();
        assert_eq!(r.status(), Status::Inconclusive);
    }
}
