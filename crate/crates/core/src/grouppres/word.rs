//! Words, finite presentations and abelianization.
//!
//! Text format:
//!
//! ```text
//! gens: a b c
//! (a b)^3 c^-1       # a relator
//! a b = b a          # a relation, stored as a b a^-1 b^-1
//! ```
//!
//! Grammar: `word := factor*`, `factor := atom ('^' int)?`,
//! `atom := name | '(' word ')'`. A line may hold `word = word`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, SmithForm};

/// Freely reduced: no zero exponents, no equal adjacent generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn new(letters: Vec<(usize, i64)>) -> Self {
        let mut w = Word(Vec::with_capacity(letters.len()));
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// Rotation moving the first `k` letters (expanded to unit exponents)
    /// to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let flat: Vec<(usize, i64)> = self
            .0
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
            .collect();
        if flat.is_empty() {
            return Word::identity();
        }
        let k = k % flat.len();
        Word::new(flat[k..].iter().chain(&flat[..k]).copied().collect())
    }

    /// Exponent sum of every generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0; ngens];
        for &(g, e) in &self.0 {
            v[g] += e;
        }
        v
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| match e {
                1 => names[g].clone(),
                e => format!("{}^{e}", names[g]),
            })
            .collect();
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.as_str(), i).is_some() {
                return Err(Error::structural(format!("duplicate generator `{g}`")));
            }
        }
        if relators.iter().any(|r| r.0.iter().any(|&(g, _)| g >= generators.len())) {
            return Err(Error::structural("relator uses an unknown generator"));
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.generators)
    }

    /// Parses a word in this presentation's generators.
    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.generators, 1)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                if gens.is_some() {
                    return Err(Error::parse(line_no, "second `gens:` line"));
                }
                gens = Some(rest.split_whitespace().map(str::to_string).collect());
                continue;
            }
            let Some(names) = gens.as_ref() else {
                return Err(Error::parse(line_no, "relator before `gens:` line"));
            };
            let mut sides = line.split('=');
            let lhs = parse_word(sides.next().unwrap_or(""), names, line_no)?;
            let rel = match sides.next() {
                Some(rhs) => lhs.mul(&parse_word(rhs, names, line_no)?.inverse()),
                None => lhs,
            };
            if sides.next().is_some() {
                return Err(Error::parse(line_no, "more than one `=`"));
            }
            relators.push(rel);
        }
        let gens = gens.ok_or_else(|| Error::parse(1, "missing `gens:` line"))?;
        Self::new(gens, relators)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relators {
            s.push_str(&self.render(r));
            s.push('\n');
        }
        s
    }

    /// Relators-by-generators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> ExactMatrix {
        let n = self.generators.len();
        let dense = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
            .collect();
        ExactMatrix::from_dense_big(self.relators.len(), n, dense)
    }
}

fn parse_word(text: &str, names: &[String], line: usize) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let w = parse_seq(&chars, &mut pos, names, line, 0)?;
    skip_ws(&chars, &mut pos);
    if pos < chars.len() {
        return Err(Error::parse(line, format!("unexpected `{}`", chars[pos])));
    }
    Ok(w)
}

fn skip_ws(c: &[char], pos: &mut usize) {
    while *pos < c.len() && c[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn is_name_char(ch: char) -> bool {
    ch.is_alphanumeric() || ch == '_' || ch == '\''
}

fn parse_seq(c: &[char], pos: &mut usize, names: &[String], line: usize, depth: usize) -> Result<Word> {
    let mut w = Word::identity();
    loop {
        skip_ws(c, pos);
        let atom = match c.get(*pos) {
            None => break,
            Some(')') if depth > 0 => break,
            Some('(') => {
                *pos += 1;
                let inner = parse_seq(c, pos, names, line, depth + 1)?;
                skip_ws(c, pos);
                if c.get(*pos) != Some(&')') {
                    return Err(Error::parse(line, "unbalanced parenthesis"));
                }
                *pos += 1;
                inner
            }
            Some(&ch) if is_name_char(ch) => {
                let start = *pos;
                while *pos < c.len() && is_name_char(c[*pos]) {
                    *pos += 1;
                }
                let name: String = c[start..*pos].iter().collect();
                if name == "1" {
                    Word::identity()
                } else {
                    let g = names
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| Error::parse(line, format!("unknown generator `{name}`")))?;
                    Word::generator(g)
                }
            }
            Some(&ch) => return Err(Error::parse(line, format!("unexpected `{ch}`"))),
        };
        skip_ws(c, pos);
        let atom = if c.get(*pos) == Some(&'^') {
            *pos += 1;
            skip_ws(c, pos);
            let start = *pos;
            if c.get(*pos) == Some(&'-') {
                *pos += 1;
            }
            while *pos < c.len() && c[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let s: String = c[start..*pos].iter().collect();
            let k: i64 = s
                .parse()
                .map_err(|_| Error::parse(line, format!("bad exponent `{s}`")))?;
            atom.pow(k)
        } else {
            atom
        };
        w = w.mul(&atom);
    }
    Ok(w)
}

/// `Z^free_rank + Z/t_1 + ...` with `t_1 | t_2 | ...`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroupResult {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl AbelianGroupResult {
    pub fn from_orders(free_rank: usize, torsion: &[i64]) -> Self {
        let t: Vec<BigInt> = torsion.iter().map(|&x| BigInt::from(x)).collect();
        AbelianGroupResult {
            free_rank,
            torsion: crate::exactalg::canonical_torsion(&t),
        }
    }
}

impl fmt::Display for AbelianGroupResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn abelianize(p: &GroupPresentation) -> AbelianGroupResult {
    let snf = SmithForm::compute(&p.exponent_matrix());
    AbelianGroupResult {
        free_rank: p.generators.len() - snf.rank,
        torsion: snf.torsion(),
    }
}

/// Extension of `p` by an element `e` of order dividing 2 up to
/// `e_square`, acting by `g -> phi[g]`.
pub fn semidirect_z2(p: &GroupPresentation, phi: &[Word], e_square: &Word, e_name: &str) -> Result<GroupPresentation> {
    let n = p.generators.len();
    if phi.len() != n {
        return Err(Error::structural(format!(
            "action gives {} images for {n} generators",
            phi.len()
        )));
    }
    let e = n;
    let mut gens = p.generators.clone();
    gens.push(e_name.to_string());
    let mut rels = p.relators.clone();
    rels.push(Word::generator(e).pow(2).mul(&e_square.inverse()));
    for (g, image) in phi.iter().enumerate() {
        rels.push(Word::new(vec![(e, 1), (g, 1), (e, -1)]).mul(&image.inverse()));
    }
    GroupPresentation::new(gens, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_abelianize() {
        let p = GroupPresentation::parse("gens: a\na^2\n").unwrap();
        assert_eq!(abelianize(&p).to_string(), "Z/2");
        let p = GroupPresentation::parse("gens: a b\na b = b a # commute\n").unwrap();
        assert_eq!(abelianize(&p).to_string(), "Z^2");
        let p = GroupPresentation::parse("gens: T A J\n(T A)^3 J^-1\n").unwrap();
        assert_eq!(p.render(&p.relators()[0]), "T A T A T A J^-1");
        assert!(GroupPresentation::parse("gens: a\nb\n").is_err());
        assert!(GroupPresentation::parse("gens: a\n(a\n").is_err());
        assert!(GroupPresentation::parse("a\n").is_err());
    }

    #[test]
    fn free_reduction() {
        let w = Word::new(vec![(0, 1), (1, 2), (1, -2), (0, 2)]);
        assert_eq!(w.letters(), &[(0, 3)]);
        assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn trivial_action_adds_z2() {
        let p = GroupPresentation::parse("gens: a\na^3\n").unwrap();
        let phi = vec![Word::generator(0)];
        let ext = semidirect_z2(&p, &phi, &Word::identity(), "e").unwrap();
        assert_eq!(abelianize(&ext), AbelianGroupResult::from_orders(0, &[3, 2]));
        assert_eq!(abelianize(&ext).to_string(), "Z/6");
        assert!(semidirect_z2(&p, &[], &Word::identity(), "e").is_err());
    }

    fn arb_word(ngens: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..ngens, prop_oneof![-3i64..0, 1i64..4]), 0..8).prop_map(Word::new)
    }

    fn arb_presentation() -> impl Strategy<Value = GroupPresentation> {
        (1usize..4).prop_flat_map(|n| {
            prop::collection::vec(arb_word(n), 0..5)
                .prop_map(move |rels| GroupPresentation::new((0..n).map(|i| format!("g{i}")).collect(), rels).unwrap())
        })
    }

    proptest! {
        #[test]
        fn abelianization_ignores_relator_form(p in arb_presentation(), k in 0usize..10, which in 0usize..3) {
            let base = abelianize(&p);
            let rels: Vec<Word> = p.relators().iter().map(|r| match which {
                0 => r.inverse(),
                1 => r.rotate(k),
                _ => Word::new(r.letters().to_vec()),
            }).collect();
            let q = GroupPresentation::new(p.generators().to_vec(), rels).unwrap();
            prop_assert_eq!(abelianize(&q), base);
        }

        #[test]
        fn trivial_extension_is_a_product(p in arb_presentation()) {
            let phi: Vec<Word> = (0..p.generators().len()).map(Word::generator).collect();
            let ext = semidirect_z2(&p, &phi, &Word::identity(), "e").unwrap();
            let base = abelianize(&p);
            let mut t: Vec<BigInt> = base.torsion.clone();
            t.push(BigInt::from(2));
            let expected = AbelianGroupResult { free_rank: base.free_rank, torsion: crate::exactalg::canonical_torsion(&t) };
            prop_assert_eq!(abelianize(&ext), expected);
        }
    }
}
