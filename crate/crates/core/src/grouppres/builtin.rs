//! Two presentations of rank-2 special linear groups over `Z[w]`,
//! `w^2 = -5`, with their defining matrices, and the abelianizations of
//! the corresponding general linear groups.

use serde::Serialize;

use super::quadint::{Matrix2, QuadInt};
use super::word::{abelianize, semidirect_z2, AbelianGroupResult, GroupPresentation, Word};
use crate::error::{Error, Result};

/// A presentation together with a matrix for each generator and candidate
/// images of each generator under conjugation by `diag(-1, 1)`.
#[derive(Clone, Debug)]
pub struct MatrixPresentation {
    pub name: &'static str,
    pub presentation: GroupPresentation,
    pub matrices: Vec<Matrix2>,
    pub action: Vec<Word>,
}

const SWAN_TEXT: &str = "\
gens: J T U A B C
J^2
J T = T J
J U = U J
J A = A J
J B = B J
J C = C J
T U = U T
A^2 = J
B^2 = J
(T A)^3 = J
(A B)^2 = J
(A U B U^-1)^2 = J
A C A = J T C T^-1
U B U^-1 C B = J T C T^-1
";

const SWAN_ACTION: [&str; 6] = ["J", "T^-1", "U^-1", "A^-1", "J U B U^-1", "T C^-1 T^-1"];

const FGT_TEXT: &str = "\
gens: J A V C D
J^2
J A = A J
J V = V J
J C = C J
J D = D J
A V = V A
C D = D C
(A C^-1)^2 = J
(D V^-1)^3
(C D^-1 V A^-1)^3
";

const FGT_ACTION: [&str; 5] = ["J", "A^-1", "V^-1", "C^-1", "D^-1"];

fn m(e: [(i64, i64); 4]) -> Matrix2 {
    let q = |(a, b): (i64, i64)| QuadInt::int(a, b);
    Matrix2::new(q(e[0]), q(e[1]), q(e[2]), q(e[3]))
}

fn build(name: &'static str, text: &str, matrices: Vec<Matrix2>, action: &[&str]) -> MatrixPresentation {
    let presentation = GroupPresentation::parse(text).expect("builtin presentation parses");
    let action = action
        .iter()
        .map(|w| presentation.word(w).expect("builtin word parses"))
        .collect();
    MatrixPresentation {
        name,
        presentation,
        matrices,
        action,
    }
}

/// Generators `J, T, U, A, B, C`; 14 relators once centrality of `J` is
/// written as five commutators.
pub fn builtin_swan_sl2() -> MatrixPresentation {
    let matrices = vec![
        m([(-1, 0), (0, 0), (0, 0), (-1, 0)]),
        m([(1, 0), (1, 0), (0, 0), (1, 0)]),
        m([(1, 0), (0, 1), (0, 0), (1, 0)]),
        m([(0, 0), (-1, 0), (1, 0), (0, 0)]),
        m([(0, -1), (2, 0), (2, 0), (0, 1)]),
        m([(-4, -1), (0, -2), (0, 2), (-4, 1)]),
    ];
    build("swan", SWAN_TEXT, matrices, &SWAN_ACTION)
}

/// Generators `J, A, V, C, D` for the automorphisms of `O + l` with
/// `l = (2, 1 + w)`, written as matrices with upper right entry in `l/2`.
pub fn builtin_fgt_sl() -> MatrixPresentation {
    let q = |a, b| QuadInt::int(a, b);
    let matrices = vec![
        m([(-1, 0), (0, 0), (0, 0), (-1, 0)]),
        m([(1, 0), (1, 0), (0, 0), (1, 0)]),
        Matrix2::new(q(1, 0), QuadInt::frac(1, 1, 2), q(0, 0), q(1, 0)),
        m([(1, 0), (0, 0), (2, 0), (1, 0)]),
        m([(1, 0), (0, 0), (1, -1), (1, 0)]),
    ];
    build("fgt", FGT_TEXT, matrices, &FGT_ACTION)
}

pub fn builtin(name: &str) -> Result<MatrixPresentation> {
    match name {
        "swan" => Ok(builtin_swan_sl2()),
        "fgt" => Ok(builtin_fgt_sl()),
        other => Err(Error::Domain(format!(
            "unknown builtin presentation `{other}` (known: swan, fgt)"
        ))),
    }
}

/// `diag(-1, 1)`.
pub fn reflection() -> Matrix2 {
    m([(-1, 0), (0, 0), (0, 0), (1, 0)])
}

pub fn evaluate(word: &Word, assignment: &[Matrix2]) -> Result<Matrix2> {
    let mut out = Matrix2::identity();
    for &(g, e) in word.letters() {
        let mat = assignment
            .get(g)
            .ok_or_else(|| Error::structural(format!("no matrix for generator {g}")))?;
        out = &out * &mat.pow(e)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub value: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorReport {
    pub relators: Vec<RelatorCheck>,
    /// Generators whose matrix does not have determinant 1.
    pub bad_determinants: Vec<String>,
}

impl RelatorReport {
    pub fn all_pass(&self) -> bool {
        self.bad_determinants.is_empty() && self.relators.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&RelatorCheck> {
        self.relators.iter().filter(|r| !r.pass).collect()
    }
}

/// Evaluates every relator on the assigned matrices.
pub fn verify_relators(p: &GroupPresentation, assignment: &[Matrix2]) -> Result<RelatorReport> {
    if assignment.len() != p.generators().len() {
        return Err(Error::structural(format!(
            "{} matrices for {} generators",
            assignment.len(),
            p.generators().len()
        )));
    }
    let relators = p
        .relators()
        .iter()
        .map(|r| {
            let v = evaluate(r, assignment)?;
            Ok(RelatorCheck {
                relator: p.render(r),
                pass: v.is_identity(),
                value: v.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let bad_determinants = p
        .generators()
        .iter()
        .zip(assignment)
        .filter(|(_, mat)| mat.det() != QuadInt::one())
        .map(|(g, _)| g.clone())
        .collect();
    Ok(RelatorReport {
        relators,
        bad_determinants,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionEntry {
    pub generator: String,
    pub image: String,
    pub conjugate: String,
    pub image_matrix: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionCertificate {
    pub entries: Vec<ActionEntry>,
    /// `e^2` is the identity matrix.
    pub involution: bool,
}

impl ActionCertificate {
    pub fn all_pass(&self) -> bool {
        self.involution && self.entries.iter().all(|e| e.pass)
    }
}

/// Checks `e M(g) e^-1 = M(candidates[g])` for every generator `g`.
pub fn derive_conjugation_action(
    p: &GroupPresentation,
    assignment: &[Matrix2],
    e: &Matrix2,
    candidates: &[Word],
) -> Result<ActionCertificate> {
    if candidates.len() != p.generators().len() || assignment.len() != p.generators().len() {
        return Err(Error::structural("action and matrices must cover every generator"));
    }
    let e_inv = e.inverse()?;
    let entries = p
        .generators()
        .iter()
        .enumerate()
        .map(|(g, name)| {
            let conj = &(e * &assignment[g]) * &e_inv;
            let img = evaluate(&candidates[g], assignment)?;
            Ok(ActionEntry {
                generator: name.clone(),
                image: p.render(&candidates[g]),
                pass: conj == img,
                conjugate: conj.to_string(),
                image_matrix: img.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ActionCertificate {
        entries,
        involution: (e * e).is_identity(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub name: String,
    pub relators: RelatorReport,
    pub action: ActionCertificate,
    pub special: AbelianGroupResult,
    pub general: AbelianGroupResult,
}

impl ExtensionReport {
    pub fn certified(&self) -> bool {
        self.relators.all_pass() && self.action.all_pass()
    }
}

/// Certifies relators and the reflection action, then abelianizes the
/// presentation and its extension by the reflection.
pub fn extension_report(mp: &MatrixPresentation) -> Result<ExtensionReport> {
    let p = &mp.presentation;
    let relators = verify_relators(p, &mp.matrices)?;
    let action = derive_conjugation_action(p, &mp.matrices, &reflection(), &mp.action)?;
    if !action.all_pass() {
        return Err(Error::structural(format!(
            "conjugation action of `{}` is not certified",
            mp.name
        )));
    }
    let ext = semidirect_z2(p, &mp.action, &Word::identity(), "E")?;
    Ok(ExtensionReport {
        name: mp.name.to_string(),
        special: abelianize(p),
        general: abelianize(&ext),
        relators,
        action,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub rank: usize,
    /// `free` for `O^n`, `twisted` for `O^(n-1) + l`.
    pub column: &'static str,
    pub group: String,
    /// `computed` here, or `cited` for ranks where only the published
    /// value is available.
    pub source: &'static str,
}

/// Abelianizations of the automorphism groups of the rank-`n` projective
/// modules, `n <= n_max <= 4`.
pub fn abelianization_table(n_max: usize) -> Result<Vec<TableEntry>> {
    if n_max > 4 {
        return Err(Error::Domain(format!("table covers ranks up to 4, asked for {n_max}")));
    }
    let units = GroupPresentation::parse("gens: J\nJ^2\n")?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        for column in ["free", "twisted"] {
            let (group, source) = match n {
                1 => (abelianize(&units).to_string(), "computed"),
                2 => {
                    let mp = if column == "free" {
                        builtin_swan_sl2()
                    } else {
                        builtin_fgt_sl()
                    };
                    (extension_report(&mp)?.general.to_string(), "computed")
                }
                _ => ("Z/2".to_string(), "cited"),
            };
            out.push(TableEntry {
                rank: n,
                column,
                group,
                source,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_matrices() {
        let s = builtin_swan_sl2();
        assert_eq!(s.presentation.relators().len(), 14);
        assert_eq!(s.matrices[1], m([(1, 0), (1, 0), (0, 0), (1, 0)]));
        assert_eq!(s.matrices[4].to_string(), "[[-w, 2], [2, w]]");
        let f = builtin_fgt_sl();
        assert_eq!(f.presentation.relators().len(), 10);
        assert_eq!(f.matrices[2].to_string(), "[[1, 1/2+1/2w], [0, 1]]");
        assert_eq!(f.matrices[4].to_string(), "[[1, 0], [1-w, 1]]");
        assert_eq!(reflection().det(), QuadInt::int(-1, 0));
    }

    #[test]
    fn relators_hold_on_matrices() {
        for mp in [builtin_swan_sl2(), builtin_fgt_sl()] {
            let r = verify_relators(&mp.presentation, &mp.matrices).unwrap();
            assert!(r.all_pass(), "{}: {:?}", mp.name, r.failures());
        }
    }

    #[test]
    fn corrupted_relator_is_reported() {
        let mp = builtin_swan_sl2();
        let mut rels = mp.presentation.relators().to_vec();
        rels[9] = mp.presentation.word("(T A)^3").unwrap();
        let bad = GroupPresentation::new(mp.presentation.generators().to_vec(), rels).unwrap();
        let r = verify_relators(&bad, &mp.matrices).unwrap();
        assert_eq!(r.failures().len(), 1);
        assert_eq!(r.failures()[0].value, "[[-1, 0], [0, -1]]");
    }

    #[test]
    fn conjugation_certificates() {
        let s = builtin_swan_sl2();
        let c = derive_conjugation_action(&s.presentation, &s.matrices, &reflection(), &s.action).unwrap();
        assert!(c.all_pass());
        assert_eq!(c.entries[3].conjugate, "[[0, 1], [-1, 0]]");
        let wrong: Vec<Word> = (0..6).map(Word::generator).collect();
        let c = derive_conjugation_action(&s.presentation, &s.matrices, &reflection(), &wrong).unwrap();
        assert!(!c.all_pass());
        let f = builtin_fgt_sl();
        assert!(
            derive_conjugation_action(&f.presentation, &f.matrices, &reflection(), &f.action)
                .unwrap()
                .all_pass()
        );
    }

    #[test]
    fn abelianizations() {
        let s = extension_report(&builtin_swan_sl2()).unwrap();
        assert_eq!(s.special, AbelianGroupResult::from_orders(2, &[2, 6]));
        assert_eq!(s.general, AbelianGroupResult::from_orders(0, &[2; 5]));
        let f = extension_report(&builtin_fgt_sl()).unwrap();
        assert_eq!(f.special, AbelianGroupResult::from_orders(2, &[3]));
        assert_eq!(f.general, AbelianGroupResult::from_orders(0, &[2; 3]));
    }

    #[test]
    fn table() {
        let t = abelianization_table(4).unwrap();
        assert_eq!(t.len(), 8);
        assert!(t
            .iter()
            .filter(|e| e.rank == 1)
            .all(|e| e.group == "Z/2" && e.source == "computed"));
        assert_eq!(t[2].group, "Z/2 + Z/2 + Z/2 + Z/2 + Z/2");
        assert!(t.iter().filter(|e| e.rank >= 3).all(|e| e.source == "cited"));
        assert!(abelianization_table(5).is_err());
    }
}
