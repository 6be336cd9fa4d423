//! Acceptance suite: one line per criterion, exact equality throughout.
//!
//! Criterion 7 is evaluated with its nonvanishing clause read literally
//! (every group of order at least two). For `Z2` the vanishing clause of the
//! same criterion already forces `H_{4,1} = 0`, so that line reports FAIL.
//! The run only exits nonzero when the outcome differs from that.

use std::process::ExitCode;
use std::time::Instant;

use homstab::apalgebra::FiniteAbelianGroup;
use homstab::exactalg::CoefficientDomain;
use homstab::jwcdga::dprime_homology;
use homstab::verify::{run_criterion, verify_all, Check, Config, CRITERIA};

struct Line {
    id: u8,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn summarize(checks: &[Check]) -> (bool, String) {
    let passed = checks.iter().filter(|c| c.pass).count();
    let mut detail = format!("{passed}/{} checks", checks.len());
    for c in checks.iter().filter(|c| !c.pass) {
        detail.push_str(&format!("; {} expected {} got {}", c.anchor, c.expected, c.got));
    }
    (passed == checks.len(), detail)
}

/// Nonvanishing of `H_{4,1}` for every group of order at least two.
fn literal_square_clause(cfg: &Config) -> homstab::Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in ["Z2", "Z3"] {
        let g: FiniteAbelianGroup = spec.parse()?;
        let h = dprime_homology(&g, 4, CoefficientDomain::Rationals, cfg.cap)?;
        let r = h.rank(1);
        checks.push(Check::with(
            format!("twisted cdga P={g} n=4 d=1 literal"),
            "nonzero",
            r,
            r > 0,
        ));
    }
    Ok(checks)
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let mut lines = Vec::new();
    let mut unexpected = Vec::new();

    for (id, name) in CRITERIA {
        let start = Instant::now();
        let mut checks = match run_criterion(id, &cfg) {
            Ok(c) => c,
            Err(e) => {
                unexpected.push(format!("criterion {id} errored: {e}"));
                lines.push(Line {
                    id,
                    name,
                    pass: false,
                    detail: format!("error: {e}"),
                });
                continue;
            }
        };
        let mut literal_failures = Vec::new();
        if id == 7 {
            match literal_square_clause(&cfg) {
                Ok(extra) => {
                    literal_failures = extra.iter().filter(|c| !c.pass).map(|c| c.anchor.clone()).collect();
                    checks.extend(extra);
                }
                Err(e) => unexpected.push(format!("criterion 7 literal clause errored: {e}")),
            }
        }
        let (pass, mut detail) = summarize(&checks);
        detail.push_str(&format!(" in {:.2?}", start.elapsed()));
        let expected_pass = id != 7;
        if pass != expected_pass {
            unexpected.push(format!("criterion {id} {name}: {detail}"));
        }
        if id == 7 && literal_failures != ["twisted cdga P=Z2 n=4 d=1 literal"] {
            unexpected.push(format!("criterion 7 literal failures were {literal_failures:?}"));
        }
        lines.push(Line { id, name, pass, detail });
    }

    let start = Instant::now();
    let deterministic = match (verify_all(&cfg), verify_all(&cfg)) {
        (Ok(a), Ok(b)) => {
            let same = a.to_json() == b.to_json();
            (same, format!("{} bytes, identical={same}", a.to_json().len()))
        }
        (Err(e), _) | (_, Err(e)) => (false, format!("error: {e}")),
    };
    if !deterministic.0 {
        unexpected.push(format!("criterion 10 determinism: {}", deterministic.1));
    }
    lines.push(Line {
        id: 10,
        name: "determinism",
        pass: deterministic.0,
        detail: format!("{} in {:.2?}", deterministic.1, start.elapsed()),
    });

    for l in &lines {
        println!(
            "criterion {:>2} {:<24} {} ({})",
            l.id,
            l.name,
            if l.pass { "PASS" } else { "FAIL" },
            l.detail
        );
    }
    if unexpected.is_empty() {
        println!("acceptance: outcome as recorded (criterion 7 fails only on its literal Z2 clause)");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        ExitCode::FAILURE
    }
}
