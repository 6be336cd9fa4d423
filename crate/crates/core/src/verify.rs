//! The full verification suite: every computed claim as a list of checks
//! `{anchor, expected, got, pass}`, grouped into numbered criteria.
//!
//! Output is a pure function of [`Config`]; nothing depends on timing or
//! thread count.

use serde::Serialize;

use crate::apalgebra::{
    bar_tor_module, bar_tor_trivial, example_module, random_family, verify_regularity_lemma,
    verify_stabilization_surjectivity, ApAlgebra, FiniteAbelianGroup, GradedModulePresentation, Status,
};
use crate::boundprop::{propagate, verify_closed_forms, Bound, Flags};
use crate::complexes::{check_rbs, matching_complex, rbs_poset, x_poset};
use crate::error::{Error, Result};
use crate::exactalg::{homology, CoefficientDomain};
use crate::grouppres::{abelianization_table, builtin_fgt_sl, builtin_swan_sl2, extension_report, AbelianGroupResult};
use crate::jwcdga::{
    below_sqrt_line, build_jw_slice, dprime_homology, partition_formula_dim, squarefree_block,
    verify_tensor_decomposition, DEFAULT_BLOCK_CAP,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Seed for the random presentation family.
    pub seed: u64,
    /// Largest basis allowed in any single block or complex.
    pub cap: usize,
    /// Grading window for the regularity checks.
    pub window: usize,
    /// Grading window for the worked example module.
    pub example_window: usize,
    /// Largest grading for the Koszul checks.
    pub koszul_max: usize,
    /// Largest weight for the closed-form bound checks.
    pub t_max: usize,
    /// Size of the random presentation family.
    pub random_count: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            cap: DEFAULT_BLOCK_CAP,
            window: 10,
            example_window: 8,
            koszul_max: 6,
            t_max: 50,
            random_count: 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub anchor: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Check {
    pub fn new(anchor: impl Into<String>, expected: impl ToString, got: impl ToString) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        Check {
            anchor: anchor.into(),
            pass: expected == got,
            expected,
            got,
        }
    }

    /// A check whose pass condition is not string equality.
    pub fn with(anchor: impl Into<String>, expected: impl ToString, got: impl ToString, pass: bool) -> Self {
        Check {
            anchor: anchor.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub checks: usize,
    pub passed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Config,
    pub results: Vec<CriterionResult>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "koszul"),
    (2, "regularity"),
    (3, "example module"),
    (4, "bound charts"),
    (5, "cdga partition formula"),
    (6, "characteristic three"),
    (7, "twisted cdga vanishing"),
    (8, "list posets"),
    (9, "abelianization table"),
];

fn groups(specs: &[&str]) -> Vec<FiniteAbelianGroup> {
    specs.iter().map(|s| s.parse().expect("builtin group spec")).collect()
}

fn fields() -> [CoefficientDomain; 3] {
    [
        CoefficientDomain::Rationals,
        CoefficientDomain::prime_field(2).expect("prime"),
        CoefficientDomain::prime_field(3).expect("prime"),
    ]
}

/// Coefficients of `(1 + s) / (1 - (q - 1) s)`.
fn koszul_dual_series(q: usize, len: usize) -> Vec<usize> {
    let mut out = vec![1];
    for n in 1..len {
        out.push(out[n - 1] * (q - 1) + usize::from(n == 1));
    }
    out
}

pub fn criterion_koszul(cfg: &Config) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for g in groups(&["1", "Z2", "Z3", "Z2xZ2"]) {
        for k in fields() {
            let alg = ApAlgebra::new(g.clone(), k);
            let t = bar_tor_trivial(&alg, cfg.koszul_max, cfg.koszul_max)?;
            let off: Vec<String> = t
                .off_diagonal()
                .iter()
                .map(|(n, d, v)| format!("({n},{d})={v}"))
                .collect();
            checks.push(Check::new(
                format!("koszul P={g} k={} off-diagonal", k.symbol()),
                "[]",
                format!("[{}]", off.join(",")),
            ));
            let series = koszul_dual_series(g.order(), cfg.koszul_max + 1);
            checks.push(Check::new(
                format!("koszul P={g} k={} diagonal", k.symbol()),
                format!("{series:?}"),
                format!("{:?}", t.diagonal()),
            ));
        }
    }
    Ok(checks)
}

fn regularity_check(anchor: String, alg: &ApAlgebra, pres: &GradedModulePresentation, window: usize) -> Result<Check> {
    let r = verify_regularity_lemma(alg, pres, 3, window)?;
    let detail: Vec<String> = r
        .entries
        .iter()
        .map(|e| {
            format!(
                "h{}={} bound={}",
                e.d,
                e.h_d,
                e.bound.map_or("-inf".into(), |b| b.to_string())
            )
        })
        .collect();
    Ok(Check::with(
        anchor,
        "holds",
        format!("{:?}: {}", r.status(), detail.join(", ")),
        r.status() == Status::Holds,
    ))
}

pub fn criterion_regularity(cfg: &Config) -> Result<Vec<Check>> {
    let z2: FiniteAbelianGroup = "Z2".parse().expect("group");
    let [q, f2, f3] = fields();
    let mut checks = vec![regularity_check(
        "regularity example module k=F2".into(),
        &ApAlgebra::new(z2.clone(), f2),
        &example_module(),
        cfg.window,
    )?];
    for k in [f2, q] {
        let quotient = GradedModulePresentation::quotient_by(z2.clone(), z2.identity())?;
        checks.push(regularity_check(
            format!("regularity A/s k={}", k.symbol()),
            &ApAlgebra::new(z2.clone(), k),
            &quotient,
            cfg.window,
        )?);
    }
    for (i, pres) in random_family(&z2, cfg.seed, cfg.random_count).iter().enumerate() {
        let k = if i % 2 == 0 { f2 } else { f3 };
        checks.push(regularity_check(
            format!("regularity random #{i} seed={} k={}", cfg.seed, k.symbol()),
            &ApAlgebra::new(z2.clone(), k),
            pres,
            cfg.window,
        )?);
    }
    Ok(checks)
}

pub fn criterion_example(cfg: &Config) -> Result<Vec<Check>> {
    let z2: FiniteAbelianGroup = "Z2".parse().expect("group");
    let alg = ApAlgebra::new(z2, CoefficientDomain::prime_field(2)?);
    let pres = example_module();
    let n = cfg.example_window;
    let t = bar_tor_module(&alg, &pres, n, 1)?;
    let tor0: Vec<usize> = (3..=n).filter(|&g| t.get(g, 0) != 0).collect();
    let tor1: Vec<usize> = (4..=n).filter(|&g| t.get(g, 1) != 0).collect();
    let mut checks = vec![
        Check::new("example Tor_0 support above grading 2", "[]", format!("{tor0:?}")),
        Check::new("example Tor_1 support above grading 3", "[]", format!("{tor1:?}")),
        Check::new("example Tor_0 at grading 2", "6", t.get(2, 0)),
    ];
    let s = verify_stabilization_surjectivity(&alg, &pres, 1, n)?;
    for target in [3, 4] {
        let got = s.checked.iter().find(|(g, _)| *g == target).map(|(_, b)| *b);
        checks.push(Check::new(
            format!("example summed action onto grading {target}"),
            "Some(true)",
            format!("{got:?}"),
        ));
    }
    checks.push(Check::new(
        "example surjectivity agrees with Tor_0",
        "true",
        s.agrees_with_tor,
    ));
    Ok(checks)
}

/// Chart entries row by row (`t = 0, 1, ...`), columns `s = 0..`.
/// `None` stands for `-inf`.
pub type Chart = Vec<Vec<Option<i64>>>;

/// The reference charts with their names and flags.
pub fn reference_charts() -> Vec<(&'static str, Flags, Chart)> {
    let n = None;
    let s = Some;
    vec![
        ("chart 1", Flags::NONE, vec![vec![s(0), n, s(3), s(4), s(5), s(6)]]),
        (
            "chart 2",
            Flags::NONE,
            vec![
                vec![s(0), n, s(3), s(4), s(5), s(6)],
                vec![s(3), s(4), s(6), s(7), s(8)],
            ],
        ),
        (
            "chart 3",
            Flags::AXIOM3,
            vec![
                vec![s(0), n, s(2), s(4), s(5), s(6)],
                vec![s(2), s(4), s(5), s(7), s(8)],
                vec![s(5), s(7), s(8), s(10), s(11)],
                vec![s(8), s(10), s(11), s(13), s(14)],
            ],
        ),
        (
            "chart 4",
            Flags::BOTH,
            vec![
                vec![s(0), n, s(2), s(3), s(5), s(6)],
                vec![s(2), s(3), s(4), s(5), s(7)],
                vec![s(4), s(5), s(6), s(7), s(9)],
                vec![s(6), s(7), s(8), s(9), s(11)],
            ],
        ),
    ]
}

fn show(b: Option<i64>) -> String {
    b.map_or("-inf".into(), |v| v.to_string())
}

pub fn criterion_bounds(cfg: &Config) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, flags, rows) in reference_charts() {
        let table = propagate(flags, rows.len() - 1, 5);
        for (t, row) in rows.iter().enumerate() {
            for (s, &want) in row.iter().enumerate() {
                checks.push(Check::new(
                    format!("{name} flags={} (s={s},t={t})", flags.name()),
                    show(want),
                    table.get(s, t),
                ));
            }
        }
    }
    for flags in Flags::all() {
        let report = verify_closed_forms(flags, cfg.t_max);
        for f in &report.forms {
            checks.push(Check::with(
                format!(
                    "closed form flags={} {} for {}<=t<={}",
                    flags.name(),
                    f.formula(),
                    f.from_t,
                    cfg.t_max
                ),
                "holds",
                if f.holds { "holds" } else { "fails" },
                f.holds,
            ));
        }
        // equality where the charts show the leftmost columns
        let visible = if flags == Flags::NONE { 1 } else { 3 };
        let table = propagate(flags, visible, 1);
        for f in report.forms.iter().filter(|f| f.s <= 1) {
            for t in 1..=visible {
                let bound = f.slope * t as i64 + f.offset;
                checks.push(Check::new(
                    format!("closed form flags={} {} sharp at t={t}", flags.name(), f.formula()),
                    Bound::at_most(bound),
                    table.get(f.s, t),
                ));
            }
        }
    }
    Ok(checks)
}

pub fn criterion_cdga(_cfg: &Config) -> Result<Vec<Check>> {
    let q = CoefficientDomain::Rationals;
    let mut checks = Vec::new();
    for m in 1..=3 {
        for n in 0..=8 {
            let h = homology(&build_jw_slice(m, n).complex, q);
            let mut formula_ok = Vec::new();
            let mut vanish_bad = Vec::new();
            for d in 0..=n / 2 {
                let got = h.rank(d as i64);
                let want = partition_formula_dim(m, n, d);
                if want != got.into() {
                    formula_ok.push(format!("d={d}: {got} vs {want}"));
                }
                let below = below_sqrt_line(n, d) || 2 * d + m < n;
                if below && got != 0 {
                    vanish_bad.push(d);
                }
            }
            checks.push(Check::new(
                format!("cdga m={m} n={n} direct vs partition formula"),
                "[]",
                format!("{formula_ok:?}"),
            ));
            checks.push(Check::new(
                format!("cdga m={m} n={n} vanishing below both lines"),
                "[]",
                format!("{vanish_bad:?}"),
            ));
        }
    }
    for (n, d, m) in [(4usize, 1usize, 2usize), (9, 3, 3)] {
        let h = homology(&build_jw_slice(m, n).complex, q);
        checks.push(Check::with(
            format!("cdga nonvanishing (n,d,m)=({n},{d},{m})"),
            "nonzero",
            h.rank(d as i64),
            h.rank(d as i64) > 0,
        ));
    }
    Ok(checks)
}

pub fn criterion_char3(cfg: &Config) -> Result<Vec<Check>> {
    let z = CoefficientDomain::Integers;
    let m7 = matching_complex(7)?;
    if m7.face_count() > cfg.cap {
        return Err(Error::ResourceCap {
            block: "matching complex M(7)".into(),
            size: m7.face_count(),
            cap: cfg.cap,
        });
    }
    let h = m7.reduced_homology(z);
    let block = squarefree_block(7, cfg.cap)?;
    let h3 = homology(&block.complex, CoefficientDomain::prime_field(3)?);
    let hq = homology(&block.complex, CoefficientDomain::Rationals);
    Ok(vec![
        Check::new("matching complex M(7) reduced H_1 over Z", "Z/3", h.degree(1).render(z)),
        Check::with(
            "cdga m=7 squarefree block H_2 over F3",
            "nonzero",
            h3.rank(2),
            h3.rank(2) > 0,
        ),
        Check::new("cdga m=7 squarefree block H_2 over Q", "0", hq.rank(2)),
    ])
}

pub fn criterion_twisted(cfg: &Config) -> Result<Vec<Check>> {
    let q = CoefficientDomain::Rationals;
    let mut checks = Vec::new();
    for g in groups(&["1", "Z2", "Z3"]) {
        let order = g.order();
        for n in 0..=6usize {
            let h = dprime_homology(&g, n, q, cfg.cap)?;
            let bad: Vec<usize> = (0..=n / 2)
                .filter(|&d| (2 * d + order < n + 1 || below_sqrt_line(n, d)) && h.rank(d as i64) != 0)
                .collect();
            checks.push(Check::new(
                format!("twisted cdga P={g} n={n} vanishing below both lines"),
                "[]",
                format!("{bad:?}"),
            ));
            let root = (n as f64).sqrt().round() as usize;
            if root * root == n && n > 0 {
                let d = (n - root) / 2;
                if order > n - 2 * d {
                    let r = h.rank(d as i64);
                    checks.push(Check::with(
                        format!("twisted cdga P={g} square n={n} d={d}"),
                        "nonzero",
                        r,
                        r > 0,
                    ));
                }
            }
        }
        let dec = verify_tensor_decomposition(&g, 5, cfg.cap)?;
        checks.push(Check::new(
            format!("twisted cdga P={g} tensor decomposition n<=5"),
            "true",
            dec.agrees(),
        ));
    }
    Ok(checks)
}

pub fn criterion_posets(_cfg: &Config) -> Result<Vec<Check>> {
    let z = CoefficientDomain::Integers;
    let mut checks = Vec::new();
    for g in groups(&["1", "Z2", "Z3"]) {
        for c in g.elements() {
            let single = rbs_poset(1, c, &g)?.order_complex().reduced_homology(z);
            checks.push(Check::new(
                format!("list poset n=1 P={g} class={}", g.format_elem(c)),
                "true",
                single.is_acyclic(),
            ));
            for n in 2..=4 {
                let r = check_rbs(n, c, &g)?;
                checks.push(Check::new(
                    format!("list poset n={n} P={g} class={}", g.format_elem(c)),
                    "bijective order-isomorphic homology-matching acyclic",
                    format!(
                        "{}{}{}{}",
                        if r.bijective { "bijective" } else { "not-bijective" },
                        if r.order_isomorphic {
                            " order-isomorphic"
                        } else {
                            " order-mismatch"
                        },
                        if r.homology_matches {
                            " homology-matching"
                        } else {
                            " homology-mismatch"
                        },
                        if r.full_poset_acyclic {
                            " acyclic"
                        } else {
                            " not-acyclic"
                        },
                    ),
                ));
            }
        }
        for m in 1..=3usize {
            let h = x_poset(m, &g).order_complex().reduced_homology(z);
            let want = (g.order() - 1).pow(m as u32);
            let support: Vec<(i64, usize)> = h.nonzero().iter().map(|(d, grp)| (*d, grp.rank)).collect();
            let expected: Vec<(i64, usize)> = if want == 0 { vec![] } else { vec![(m as i64 - 1, want)] };
            let torsion_free = h.groups.iter().all(|x| x.torsion.is_empty());
            checks.push(Check::with(
                format!("rank poset m={m} P={g} reduced homology"),
                format!("{expected:?}"),
                format!("{support:?}"),
                support == expected && torsion_free,
            ));
        }
    }
    Ok(checks)
}

pub fn criterion_groups(_cfg: &Config) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let expected = [
        (
            builtin_swan_sl2(),
            AbelianGroupResult::from_orders(2, &[2, 6]),
            AbelianGroupResult::from_orders(0, &[2; 5]),
        ),
        (
            builtin_fgt_sl(),
            AbelianGroupResult::from_orders(2, &[3]),
            AbelianGroupResult::from_orders(0, &[2; 3]),
        ),
    ];
    for (mp, special, general) in expected {
        let r = extension_report(&mp)?;
        checks.push(Check::new(
            format!("{} special abelianization", mp.name),
            &special,
            &r.special,
        ));
        checks.push(Check::new(
            format!("{} general abelianization", mp.name),
            &general,
            &r.general,
        ));
        let failed: Vec<&str> = r.relators.failures().iter().map(|c| c.relator.as_str()).collect();
        checks.push(Check::new(
            format!("{} relators on matrices ({})", mp.name, r.relators.relators.len()),
            "[]",
            format!("{failed:?}"),
        ));
        checks.push(Check::new(
            format!("{} determinants", mp.name),
            "[]",
            format!("{:?}", r.relators.bad_determinants),
        ));
        for e in &r.action.entries {
            checks.push(Check::with(
                format!("{} reflection conjugates {} to {}", mp.name, e.generator, e.image),
                &e.image_matrix,
                &e.conjugate,
                e.pass,
            ));
        }
        checks.push(Check::new(
            format!("{} reflection squares to 1", mp.name),
            "true",
            r.action.involution,
        ));
    }
    for e in abelianization_table(4)? {
        let want = match (e.rank, e.column) {
            (2, "free") => "Z/2 + Z/2 + Z/2 + Z/2 + Z/2",
            (2, _) => "Z/2 + Z/2 + Z/2",
            _ => "Z/2",
        };
        checks.push(Check::new(
            format!("table rank {} {} ({})", e.rank, e.column, e.source),
            want,
            &e.group,
        ));
    }
    Ok(checks)
}

pub fn run_criterion(id: u8, cfg: &Config) -> Result<Vec<Check>> {
    match id {
        1 => criterion_koszul(cfg),
        2 => criterion_regularity(cfg),
        3 => criterion_example(cfg),
        4 => criterion_bounds(cfg),
        5 => criterion_cdga(cfg),
        6 => criterion_char3(cfg),
        7 => criterion_twisted(cfg),
        8 => criterion_posets(cfg),
        9 => criterion_groups(cfg),
        other => Err(Error::Domain(format!("no criterion {other}"))),
    }
}

/// Runs every criterion. Criteria run one after another; each one
/// parallelizes internally.
pub fn verify_all(cfg: &Config) -> Result<Report> {
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for (id, name) in CRITERIA {
        let cs = run_criterion(id, cfg)?;
        let passed = cs.iter().filter(|c| c.pass).count();
        results.push(CriterionResult {
            id,
            name,
            checks: cs.len(),
            passed,
            pass: passed == cs.len(),
        });
        checks.extend(cs);
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: "verify-all".into(),
        config: cfg.clone(),
        results,
        checks,
    })
}
