//! Finitely presented graded modules and their text format.
//!
//! ```text
//! # comment
//! gen X 1
//! gen Y 1
//! gen U 2
//! rel 2 1*(1)*X - 1*(0)*Y
//! rel 3 1*0*U
//! ```
//!
//! A relation line gives its grading followed by a signed sum of terms.
//! A term is `coeff*elem*label`, `elem*label`, `coeff*label` or `label`.
//! `elem` names a group element (a residue tuple such as `(1,0)`, or a bare
//! integer for a cyclic group) and stands for the basis monomial of the
//! algebra in grading `rel grading - generator grading`. When those gradings
//! agree the monomial is the unit and `elem` is omitted, so a two-part term
//! is read as `coeff*label`; otherwise as `elem*label`. Coefficients are
//! integers or fractions `a/b`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::{FiniteAbelianGroup, GroupElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub grading: usize,
}

/// `coeff * m * gen`, where `m` is the basis monomial of grading
/// `relation grading - gen grading` indexed by `elem` (`None` for the unit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub elem: Option<GroupElem>,
    pub gen: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub grading: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModulePresentation {
    group: FiniteAbelianGroup,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

impl GradedModulePresentation {
    pub fn new(group: FiniteAbelianGroup) -> Self {
        GradedModulePresentation {
            group,
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn add_generator(&mut self, label: &str, grading: usize) -> Result<usize> {
        if self.generator_index(label).is_some() {
            return Err(Error::structural(format!("duplicate generator `{label}`")));
        }
        self.generators.push(Generator {
            label: label.to_string(),
            grading,
        });
        Ok(self.generators.len() - 1)
    }

    /// Adds a relation given as `(coeff, elem, label)` triples.
    pub fn add_relation(&mut self, grading: usize, terms: &[(BigRational, Option<GroupElem>, &str)]) -> Result<()> {
        let mut out = Vec::with_capacity(terms.len());
        for (coeff, elem, label) in terms {
            let gen = self
                .generator_index(label)
                .ok_or_else(|| Error::structural(format!("relation references unknown generator `{label}`")))?;
            let g = self.generators[gen].grading;
            if g > grading {
                return Err(Error::structural(format!(
                    "relation in grading {grading} involves `{label}` of grading {g}"
                )));
            }
            let elem = match (grading == g, elem) {
                (true, None) => None,
                (true, Some(e)) if *e == self.group.identity() => None,
                (true, Some(_)) => {
                    return Err(Error::structural(format!(
                        "term on `{label}` in its own grading cannot carry a group element"
                    )))
                }
                (false, Some(e)) if *e < self.group.order() => Some(*e),
                (false, Some(e)) => return Err(Error::structural(format!("group element index {e} out of range"))),
                (false, None) => {
                    return Err(Error::structural(format!(
                        "term on `{label}` needs a group element (grading {grading} > {g})"
                    )))
                }
            };
            out.push(Term {
                coeff: coeff.clone(),
                elem,
                gen,
            });
        }
        self.relations.push(Relation { grading, terms: out });
        Ok(())
    }

    pub fn max_generator_grading(&self) -> Option<usize> {
        self.generators.iter().map(|g| g.grading).max()
    }

    pub fn max_relation_grading(&self) -> Option<usize> {
        self.relations.iter().map(|r| r.grading).max()
    }

    /// The free module on one generator in grading 0.
    pub fn free(group: FiniteAbelianGroup) -> Self {
        let mut p = Self::new(group);
        p.add_generator("X", 0).expect("fresh label");
        p
    }

    /// The cyclic module `A / (elem)`: one generator in grading 0 killed by
    /// the degree-one monomial `elem`.
    pub fn quotient_by(group: FiniteAbelianGroup, elem: GroupElem) -> Result<Self> {
        let mut p = Self::free(group);
        p.add_relation(1, &[(BigRational::one(), Some(elem), "X")])?;
        Ok(p)
    }

    /// Direct sum (labels of the second summand get a `'` suffix on clash).
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::structural("direct sum over different groups"));
        }
        let mut out = self.clone();
        let mut rename = HashMap::new();
        for g in &other.generators {
            let mut label = g.label.clone();
            while out.generator_index(&label).is_some() {
                label.push('\'');
            }
            out.add_generator(&label, g.grading)?;
            rename.insert(g.label.clone(), label);
        }
        for r in &other.relations {
            let terms: Vec<(BigRational, Option<GroupElem>, &str)> = r
                .terms
                .iter()
                .map(|t| (t.coeff.clone(), t.elem, rename[&other.generators[t.gen].label].as_str()))
                .collect();
            out.add_relation(r.grading, &terms)?;
        }
        Ok(out)
    }

    pub fn parse(text: &str, group: &FiniteAbelianGroup) -> Result<Self> {
        let mut p = Self::new(group.clone());
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "gen" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [label, grading] = parts[..] else {
                        return Err(Error::parse(line_no, "expected `gen <label> <grading>`"));
                    };
                    check_label(label).map_err(|m| Error::parse(line_no, m))?;
                    let grading = grading
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad grading `{grading}`")))?;
                    p.add_generator(label, grading)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                }
                "rel" => {
                    let rest = rest.trim();
                    let (grading, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                    let grading: usize = grading
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad grading `{grading}`")))?;
                    let terms = parse_terms(body, grading, &p).map_err(|m| Error::parse(line_no, m))?;
                    let borrowed: Vec<(BigRational, Option<GroupElem>, &str)> =
                        terms.iter().map(|(c, e, l)| (c.clone(), *e, l.as_str())).collect();
                    p.add_relation(grading, &borrowed)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                }
                other => return Err(Error::parse(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        Ok(p)
    }

    /// Renders the presentation in the text format accepted by [`Self::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            let _ = writeln!(s, "gen {} {}", g.label, g.grading);
        }
        for r in &self.relations {
            let mut line = format!("rel {}", r.grading);
            for (k, t) in r.terms.iter().enumerate() {
                let neg = t.coeff < BigRational::zero();
                let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
                let sign = match (k, neg) {
                    (0, false) => " ",
                    (0, true) => " -",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let label = &self.generators[t.gen].label;
                match t.elem {
                    Some(e) => {
                        let _ = write!(line, "{sign}{mag}*{}*{label}", self.group.format_elem(e));
                    }
                    None => {
                        let _ = write!(line, "{sign}{mag}*{label}");
                    }
                }
            }
            s.push_str(&line);
            s.push('\n');
        }
        s
    }
}

fn check_label(label: &str) -> std::result::Result<(), String> {
    let ok = label.chars().next().is_some_and(char::is_alphabetic)
        && label.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(format!("bad generator label `{label}`"))
    }
}

type RawTerm = (BigRational, Option<GroupElem>, String);

fn parse_terms(body: &str, grading: usize, p: &GradedModulePresentation) -> std::result::Result<Vec<RawTerm>, String> {
    // split on top-level + and -, keeping the sign
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0i32;
    for ch in body.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let t = cur.trim().to_string();
                if !t.is_empty() {
                    pieces.push((neg, t));
                } else if !pieces.is_empty() || neg {
                    return Err("dangling sign".to_string());
                }
                neg = ch == '-';
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    let t = cur.trim().to_string();
    if t.is_empty() {
        return Err("empty term".to_string());
    }
    pieces.push((neg, t));

    let mut out = Vec::new();
    for (neg, piece) in pieces {
        let parts: Vec<&str> = piece.split('*').map(str::trim).collect();
        let label = *parts.last().expect("split is nonempty");
        let gen = p
            .generator_index(label)
            .ok_or_else(|| format!("unknown generator `{label}`"))?;
        let own = p.generators[gen].grading == grading;
        let (coeff, elem) = match parts.len() {
            1 => (None, None),
            2 if own => (Some(parts[0]), None),
            2 => (None, Some(parts[0])),
            3 => (Some(parts[0]), Some(parts[1])),
            _ => return Err(format!("bad term `{piece}`")),
        };
        let mut c = match coeff {
            Some(s) => parse_rational(s)?,
            None => BigRational::one(),
        };
        if neg {
            c = -c;
        }
        let e = match elem {
            Some(s) => Some(p.group.parse_elem(s).map_err(|e| e.to_string())?),
            None if own => None,
            None => return Err(format!("term `{piece}` needs a group element")),
        };
        out.push((c, e, label.to_string()));
    }
    Ok(out)
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("bad coefficient `{s}`");
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Text of the two-generator-grading example module over `Z/2`: classes `X`,
/// `X'` in grading 1 swapped by the non-identity element, six classes in
/// grading 2 annihilated by everything of positive degree.
pub const EXAMPLE_MODULE_TEXT: &str = "\
gen X 1
gen X' 1
gen U 2
gen T 2
gen B 2
gen C 2
gen C' 2
gen D' 2
rel 2 1*1*X - 1*0*X'
rel 2 1*1*X' - 1*0*X
rel 3 1*0*U
rel 3 1*1*U
rel 3 1*0*T
rel 3 1*1*T
rel 3 1*0*B
rel 3 1*1*B
rel 3 1*0*C
rel 3 1*1*C
rel 3 1*0*C'
rel 3 1*1*C'
rel 3 1*0*D'
rel 3 1*1*D'
";

pub fn example_module() -> GradedModulePresentation {
    let g = FiniteAbelianGroup::cyclic(2).expect("Z/2");
    GradedModulePresentation::parse(EXAMPLE_MODULE_TEXT, &g).expect("builtin text parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_parses_and_round_trips() {
        let p = example_module();
        assert_eq!(p.generators().len(), 8);
        assert_eq!(p.relations().len(), 14);
        let again = GradedModulePresentation::parse(&p.to_text(), p.group()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let err = GradedModulePresentation::parse("gen X 0\nrel 1 1*Y\n", &g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(GradedModulePresentation::parse("gen X 2\nrel 1 1*X\n", &g).is_err());
        assert!(GradedModulePresentation::parse("gen X 0\ngen X 1\n", &g).is_err());
        assert!(GradedModulePresentation::parse("gen X 0\nrel 1 X\n", &g).is_err());
    }

    #[test]
    fn coefficients_and_tuples() {
        let g: FiniteAbelianGroup = "Z2xZ2".parse().unwrap();
        let p = GradedModulePresentation::parse("gen X 0\ngen Y 1\nrel 1 1/2*(1,0)*X - 3*Y\n", &g).unwrap();
        let r = &p.relations()[0];
        assert_eq!(r.terms[0].coeff, BigRational::new(1.into(), 2.into()));
        assert_eq!(r.terms[0].elem, Some(2));
        assert_eq!(r.terms[1].coeff, BigRational::from_integer((-3).into()));
        assert_eq!(r.terms[1].elem, None);
    }

    #[test]
    fn unknown_generator_is_structural() {
        let mut p = GradedModulePresentation::free(FiniteAbelianGroup::trivial());
        let e = p.add_relation(1, &[(BigRational::one(), Some(0), "Z")]).unwrap_err();
        assert!(matches!(e, Error::Structural(_)));
    }
}
