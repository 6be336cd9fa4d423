//! `homstab` command line front end.
//!
//! Exit codes: 0 pass, 1 mathematical mismatch, 2 usage or input error,
//! 3 resource cap exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homstab::apalgebra::{
    bar_tor_module, bar_tor_trivial, example_module, judge_regularity, ApAlgebra, FiniteAbelianGroup,
    GradedModulePresentation, Status, TorTable,
};
use homstab::boundprop::{propagate, verify_closed_forms, Flags};
use homstab::complexes::{check_rbs, matching_complex, x_poset, FinitePoset, SimplicialComplex};
use homstab::exactalg::{homology, CoefficientDomain, HomologyResult};
use homstab::grouppres::{
    abelianization_table, abelianize, builtin, extension_report, verify_relators, GroupPresentation,
};
use homstab::jwcdga::{
    below_sqrt_line, dprime_homology, jw_homology, partition_formula_dim, squarefree_block, DEFAULT_BLOCK_CAP,
};
use homstab::verify::{verify_all, Check, Config, SCHEMA_VERSION};
use homstab::Error;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "homstab",
    version,
    about = "Exact computations for graded stability questions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "HOMSTAB_THREADS", default_value_t = 0)]
    threads: usize,
    /// Largest basis allowed in a single block or complex.
    #[arg(long, global = true, default_value_t = DEFAULT_BLOCK_CAP)]
    cap: usize,
    /// Seed for randomized families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tor of the ground field over the group algebra; passes iff it is diagonal.
    Koszul {
        #[arg(long)]
        group: FiniteAbelianGroup,
        #[arg(long, default_value = "Q")]
        field: CoefficientDomain,
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Tor of a module (`example`, `free`, `quotient` or a presentation file)
    /// and the regularity verdicts it supports.
    Tor {
        #[arg(long, default_value = "Z2")]
        group: FiniteAbelianGroup,
        #[arg(long, default_value = "F2")]
        field: CoefficientDomain,
        #[arg(long, default_value = "example")]
        module: String,
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
    },
    /// Homology of one grading of the cdga on `m` variables.
    Jw {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Q")]
        coeff: CoefficientDomain,
        /// Only the block where every variable appears once (requires n = m).
        #[arg(long)]
        squarefree: bool,
    },
    /// Homology of one grading of the cdga twisted by a finite group.
    Dprime {
        #[arg(long)]
        group: FiniteAbelianGroup,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Q")]
        coeff: CoefficientDomain,
    },
    /// Reduced homology of the matching complex on `n` points.
    Matching {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Z")]
        coeff: CoefficientDomain,
    },
    /// Reduced homology of a complex or of the order complex of a poset
    /// read from a file, or of the rank poset (`--x m --group P`).
    Poset {
        file: Option<PathBuf>,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long, default_value = "Z2")]
        group: FiniteAbelianGroup,
        #[arg(long, default_value = "Z")]
        coeff: CoefficientDomain,
    },
    /// Checks the list poset against chains of the rank poset.
    RbsCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        group: FiniteAbelianGroup,
        /// Product class; every class when omitted.
        #[arg(long)]
        class: Option<String>,
    },
    /// Propagated support bounds (`--flags none|III|III,IV`).
    Bounds {
        #[arg(long, default_value = "none")]
        flags: String,
        #[arg(long, default_value_t = 3)]
        tmax: usize,
        #[arg(long, default_value_t = 4)]
        smax: usize,
        /// Also check the linear closed forms up to `tmax`.
        #[arg(long)]
        closed_forms: bool,
    },
    /// Abelianization of a presentation file or a builtin (`swan`, `fgt`).
    Abelianize {
        file: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        /// Extend a builtin by the reflection before abelianizing.
        #[arg(long)]
        extend: bool,
    },
    /// Abelianizations of the automorphism groups of rank <= 4.
    Table {
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Runs the full verification suite.
    VerifyAll,
}

struct Outcome {
    command: &'static str,
    config: Value,
    results: Value,
    checks: Vec<Check>,
    plain: String,
    csv: Vec<Vec<String>>,
}

impl Outcome {
    fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn json(&self) -> String {
        #[derive(serde::Serialize)]
        struct Envelope<'a> {
            schema_version: u32,
            command: &'a str,
            config: &'a Value,
            results: &'a Value,
            checks: &'a [Check],
        }
        serde_json::to_string_pretty(&Envelope {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            config: &self.config,
            results: &self.results,
            checks: &self.checks,
        })
        .expect("serializable")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for r in rows {
        let fields: Vec<String> = r.iter().map(|f| csv_field(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn checks_csv(checks: &[Check]) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["anchor".into(), "expected".into(), "got".into(), "pass".into()]];
    rows.extend(
        checks
            .iter()
            .map(|c| vec![c.anchor.clone(), c.expected.clone(), c.got.clone(), c.pass.to_string()]),
    );
    rows
}

fn tor_plain(t: &TorTable) -> String {
    let mut s = String::from("  n |");
    for d in 0..=t.d_max {
        let _ = write!(s, " d={d:<4}");
    }
    s.push('\n');
    for n in 0..=t.n_max {
        let _ = write!(s, "{n:>3} |");
        for d in 0..=t.d_max {
            let _ = write!(s, " {:<6}", t.get(n, d));
        }
        s.push('\n');
    }
    s
}

fn tor_csv(t: &TorTable) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["n".into(), "d".into(), "dim".into()]];
    for n in 0..=t.n_max {
        for d in 0..=t.d_max {
            rows.push(vec![n.to_string(), d.to_string(), t.get(n, d).to_string()]);
        }
    }
    rows
}

fn homology_plain(h: &HomologyResult, label: impl Fn(i64) -> String) -> String {
    let nz = h.nonzero();
    if nz.is_empty() {
        return "homology vanishes in every degree\n".to_string();
    }
    nz.iter()
        .map(|(d, g)| format!("{} = {}\n", label(*d), g.render(h.domain)))
        .collect()
}

fn homology_csv(h: &HomologyResult) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["degree".into(), "group".into()]];
    for (i, g) in h.groups.iter().enumerate() {
        rows.push(vec![(h.min_degree + i as i64).to_string(), g.render(h.domain)]);
    }
    rows
}

fn parse_flags(s: &str) -> homstab::Result<Flags> {
    let mut iii = false;
    let mut iv = false;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.to_ascii_lowercase().as_str() {
            "none" => {}
            "iii" | "3" | "axiom3" => iii = true,
            "iv" | "4" | "axiom4" => iv = true,
            other => return Err(Error::Domain(format!("unknown flag `{other}` (use none, III, IV)"))),
        }
    }
    Flags::new(iii, iv)
}

fn read(path: &PathBuf) -> homstab::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

fn module_for(spec: &str, group: &FiniteAbelianGroup) -> homstab::Result<GradedModulePresentation> {
    match spec {
        "example" => {
            if group.order() != 2 {
                return Err(Error::Domain("the example module lives over Z2".into()));
            }
            Ok(example_module())
        }
        "free" => Ok(GradedModulePresentation::free(group.clone())),
        "quotient" => GradedModulePresentation::quotient_by(group.clone(), group.identity()),
        path => GradedModulePresentation::parse(&read(&PathBuf::from(path))?, group),
    }
}

fn run(cli: &Cli) -> homstab::Result<Outcome> {
    let cap = cli.cap;
    Ok(match &cli.cmd {
        Cmd::Koszul { group, field, max } => {
            let alg = ApAlgebra::new(group.clone(), *field);
            let t = bar_tor_trivial(&alg, *max, *max)?;
            let off: Vec<String> = t
                .off_diagonal()
                .iter()
                .map(|(n, d, v)| format!("({n},{d})={v}"))
                .collect();
            let check = Check::new(
                format!("koszul P={group} k={field} off-diagonal"),
                "[]",
                format!("[{}]", off.join(",")),
            );
            let plain = format!(
                "{}diagonal {:?}\nkoszul P={group} k={field} n<={max}: {}\n",
                tor_plain(&t),
                t.diagonal(),
                if check.pass { "pass" } else { "FAIL" }
            );
            Outcome {
                command: "koszul",
                config: json!({"group": group.to_string(), "field": field.to_string(), "max": max}),
                results: json!({"dims": t.dims, "diagonal": t.diagonal()}),
                csv: tor_csv(&t),
                checks: vec![check],
                plain,
            }
        }
        Cmd::Tor {
            group,
            field,
            module,
            max,
            dmax,
        } => {
            let pres = module_for(module, group)?;
            let alg = ApAlgebra::new(group.clone(), *field);
            let t = bar_tor_module(&alg, &pres, *max, *dmax)?;
            let r = judge_regularity(&t, *dmax, pres.max_relation_grading());
            let mut plain = tor_plain(&t);
            for (d, h) in r.h.iter().enumerate() {
                let _ = writeln!(plain, "h_{d} = {h}");
            }
            let mut checks = Vec::new();
            for e in &r.entries {
                let bound = e.bound.map_or("-inf".to_string(), |b| b.to_string());
                let _ = writeln!(plain, "d={}: h_d = {} vs d-1+h_1 = {bound}: {:?}", e.d, e.h_d, e.status);
                checks.push(Check::with(
                    format!("regularity d={}", e.d),
                    "not violated",
                    format!("{:?}", e.status),
                    e.status != Status::Violated,
                ));
            }
            Outcome {
                command: "tor",
                config: json!({"group": group.to_string(), "field": field.to_string(), "module": module, "max": max, "dmax": dmax}),
                results: json!({"dims": t.dims, "regularity": r}),
                csv: tor_csv(&t),
                checks,
                plain,
            }
        }
        Cmd::Jw {
            m,
            n,
            coeff,
            squarefree,
        } => {
            let h = if *squarefree {
                if n != m {
                    return Err(Error::Domain(format!(
                        "the squarefree block needs n = m, got n={n} m={m}"
                    )));
                }
                homology(&squarefree_block(*m, cap)?.complex, *coeff)
            } else {
                jw_homology(*m, *n, *coeff, cap)?
            };
            let mut checks = Vec::new();
            if *coeff == CoefficientDomain::Rationals && !*squarefree {
                for d in 0..=n / 2 {
                    checks.push(Check::new(
                        format!("cdga m={m} n={n} d={d} partition formula"),
                        partition_formula_dim(*m, *n, d),
                        h.rank(d as i64),
                    ));
                }
            }
            Outcome {
                command: "jw",
                config: json!({"m": m, "n": n, "coeff": coeff.to_string(), "squarefree": squarefree}),
                results: serde_json::to_value(&h).expect("serializable"),
                csv: homology_csv(&h),
                plain: homology_plain(&h, |d| format!("H_{{{n},{d}}}")),
                checks,
            }
        }
        Cmd::Dprime { group, n, coeff } => {
            let h = dprime_homology(group, *n, *coeff, cap)?;
            let mut checks = Vec::new();
            if coeff.characteristic() == 0 {
                for d in 0..=n / 2 {
                    if 2 * d + group.order() < n + 1 || below_sqrt_line(*n, d) {
                        checks.push(Check::new(
                            format!("twisted cdga P={group} n={n} d={d} vanishes"),
                            0,
                            h.rank(d as i64),
                        ));
                    }
                }
            }
            Outcome {
                command: "dprime",
                config: json!({"group": group.to_string(), "n": n, "coeff": coeff.to_string()}),
                results: serde_json::to_value(&h).expect("serializable"),
                csv: homology_csv(&h),
                plain: homology_plain(&h, |d| format!("H_{{{n},{d}}}")),
                checks,
            }
        }
        Cmd::Matching { n, coeff } => {
            let k = matching_complex(*n)?;
            if k.face_count() > cap {
                return Err(Error::ResourceCap {
                    block: format!("matching complex M({n})"),
                    size: k.face_count(),
                    cap,
                });
            }
            let h = k.reduced_homology(*coeff);
            Outcome {
                command: "matching",
                config: json!({"n": n, "coeff": coeff.to_string()}),
                results: serde_json::to_value(&h).expect("serializable"),
                csv: homology_csv(&h),
                plain: homology_plain(&h, |d| format!("H~_{d}")),
                checks: Vec::new(),
            }
        }
        Cmd::Poset { file, x, group, coeff } => {
            let (k, source) = match (file, x) {
                (Some(path), None) => {
                    let text = read(path)?;
                    let head = text
                        .lines()
                        .map(|l| l.split('#').next().unwrap_or("").trim())
                        .find(|l| !l.is_empty())
                        .unwrap_or("");
                    let k = if head == "complex" {
                        SimplicialComplex::parse(&text)?
                    } else {
                        FinitePoset::parse(&text)?.order_complex()
                    };
                    (k, path.display().to_string())
                }
                (None, Some(m)) => (x_poset(*m, group).order_complex(), format!("X_{m}({group})")),
                _ => return Err(Error::Domain("give exactly one of a file or --x".into())),
            };
            if k.face_count() > cap {
                return Err(Error::ResourceCap {
                    block: source,
                    size: k.face_count(),
                    cap,
                });
            }
            let h = k.reduced_homology(*coeff);
            Outcome {
                command: "poset",
                config: json!({"source": source, "coeff": coeff.to_string()}),
                results: json!({"faces": k.face_count(), "dimension": k.dimension(), "reduced_homology": h}),
                csv: homology_csv(&h),
                plain: homology_plain(&h, |d| format!("H~_{d}")),
                checks: Vec::new(),
            }
        }
        Cmd::RbsCheck { n, group, class } => {
            let classes: Vec<usize> = match class {
                Some(c) => vec![group.parse_elem(c)?],
                None => group.elements().collect(),
            };
            let reports = classes
                .iter()
                .map(|&c| check_rbs(*n, c, group))
                .collect::<homstab::Result<Vec<_>>>()?;
            let mut plain = String::new();
            let checks = reports
                .iter()
                .map(|r| {
                    let _ = writeln!(
                        plain,
                        "n={} P={} class={}: {} lists, {} chains, bijective={} order={} homology={} acyclic={}",
                        r.n,
                        r.group,
                        r.class,
                        r.elements,
                        r.chains,
                        r.bijective,
                        r.order_isomorphic,
                        r.homology_matches,
                        r.full_poset_acyclic
                    );
                    Check::new(
                        format!("list poset n={} P={} class={}", r.n, r.group, r.class),
                        "true",
                        r.pass(),
                    )
                })
                .collect();
            let mut csv = vec![vec!["class".into(), "lists".into(), "chains".into(), "pass".into()]];
            csv.extend(reports.iter().map(|r| {
                vec![
                    r.class.clone(),
                    r.elements.to_string(),
                    r.chains.to_string(),
                    r.pass().to_string(),
                ]
            }));
            Outcome {
                command: "rbs-check",
                config: json!({"n": n, "group": group.to_string(), "class": class}),
                results: serde_json::to_value(&reports).expect("serializable"),
                csv,
                checks,
                plain,
            }
        }
        Cmd::Bounds {
            flags,
            tmax,
            smax,
            closed_forms,
        } => {
            let f = parse_flags(flags)?;
            let table = propagate(f, *tmax, *smax);
            let mut plain = table.render();
            let mut checks = Vec::new();
            if *closed_forms {
                for form in verify_closed_forms(f, *tmax).forms {
                    let _ = writeln!(
                        plain,
                        "{} for {}<=t<={tmax}: {}",
                        form.formula(),
                        form.from_t,
                        if form.holds { "holds" } else { "FAILS" }
                    );
                    checks.push(Check::with(
                        format!("closed form flags={} {}", f.name(), form.formula()),
                        "holds",
                        if form.holds { "holds" } else { "fails" },
                        form.holds,
                    ));
                }
            }
            let mut csv = vec![vec!["t".into(), "s".into(), "bound".into()]];
            for t in 0..=*tmax {
                for s in 0..=*smax {
                    csv.push(vec![t.to_string(), s.to_string(), table.get(s, t).to_string()]);
                }
            }
            Outcome {
                command: "bounds",
                config: json!({"flags": f.name(), "tmax": tmax, "smax": smax}),
                results: serde_json::to_value(&table).expect("serializable"),
                csv,
                checks,
                plain,
            }
        }
        Cmd::Abelianize {
            file,
            builtin: name,
            extend,
        } => {
            let mut checks = Vec::new();
            let (result, source) = match (file, name) {
                (Some(path), None) => {
                    if *extend {
                        return Err(Error::Domain("--extend needs --builtin".into()));
                    }
                    (
                        abelianize(&GroupPresentation::parse(&read(path)?)?),
                        path.display().to_string(),
                    )
                }
                (None, Some(b)) => {
                    let mp = builtin(b)?;
                    let rel = verify_relators(&mp.presentation, &mp.matrices)?;
                    for c in &rel.relators {
                        checks.push(Check::new(
                            format!("{b} relator {}", c.relator),
                            "[[1, 0], [0, 1]]",
                            &c.value,
                        ));
                    }
                    let result = if *extend {
                        let r = extension_report(&mp)?;
                        for e in &r.action.entries {
                            checks.push(Check::with(
                                format!("{b} reflection conjugates {} to {}", e.generator, e.image),
                                &e.image_matrix,
                                &e.conjugate,
                                e.pass,
                            ));
                        }
                        r.general
                    } else {
                        abelianize(&mp.presentation)
                    };
                    (result, b.clone())
                }
                _ => return Err(Error::Domain("give exactly one of a file or --builtin".into())),
            };
            Outcome {
                command: "abelianize",
                config: json!({"source": source, "extend": extend}),
                results: json!({"group": result.to_string(), "free_rank": result.free_rank, "torsion": result.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()}),
                csv: vec![vec!["group".into()], vec![result.to_string()]],
                plain: format!("{result}\n"),
                checks,
            }
        }
        Cmd::Table { max } => {
            let rows = abelianization_table(*max)?;
            let mut plain = format!("{:<5} {:<8} {:<28} {}\n", "rank", "column", "abelianization", "source");
            for r in &rows {
                let _ = writeln!(plain, "{:<5} {:<8} {:<28} {}", r.rank, r.column, r.group, r.source);
            }
            let mut csv = vec![vec!["rank".into(), "column".into(), "group".into(), "source".into()]];
            csv.extend(
                rows.iter()
                    .map(|r| vec![r.rank.to_string(), r.column.into(), r.group.clone(), r.source.into()]),
            );
            Outcome {
                command: "table",
                config: json!({"max": max}),
                results: serde_json::to_value(&rows).expect("serializable"),
                csv,
                checks: Vec::new(),
                plain,
            }
        }
        Cmd::VerifyAll => {
            let cfg = Config {
                seed: cli.seed,
                cap,
                ..Config::default()
            };
            let report = verify_all(&cfg)?;
            let mut plain = String::new();
            for r in &report.results {
                let _ = writeln!(
                    plain,
                    "criterion {} {}: {} ({}/{})",
                    r.id,
                    r.name,
                    if r.pass { "pass" } else { "FAIL" },
                    r.passed,
                    r.checks
                );
            }
            for c in report.checks.iter().filter(|c| !c.pass) {
                let _ = writeln!(plain, "  failed: {} expected {} got {}", c.anchor, c.expected, c.got);
            }
            Outcome {
                command: "verify-all",
                config: serde_json::to_value(&report.config).expect("serializable"),
                results: serde_json::to_value(&report.results).expect("serializable"),
                csv: checks_csv(&report.checks),
                checks: report.checks,
                plain,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: cannot configure threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Plain => {
                    print!("{}", out.plain);
                    if !out.checks.is_empty() && out.command != "verify-all" {
                        let passed = out.checks.iter().filter(|c| c.pass).count();
                        println!("checks: {passed}/{} pass", out.checks.len());
                        for c in out.checks.iter().filter(|c| !c.pass) {
                            println!("  failed: {} expected {} got {}", c.anchor, c.expected, c.got);
                        }
                    }
                }
                Format::Json => println!("{}", out.json()),
                Format::Csv => {
                    let rows = if out.csv.is_empty() {
                        checks_csv(&out.checks)
                    } else {
                        out.csv.clone()
                    };
                    print!("{}", render_csv(&rows));
                }
            }
            if out.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ Error::ResourceCap { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
