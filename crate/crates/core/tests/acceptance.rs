//! Acceptance run: one PASS/FAIL line per numbered criterion.
//!
//! Every comparison is exact equality of quasi-polynomials over `F_p`
//! (`p = 2^61 − 1`, two independent specialisations per check) or over `ℚ(q̃, v, z)`
//! for the symbolic rank-one cases, so the tolerance is zero.

use quasidaha::verify::{cases_for, run_cases, Config, Status};
use std::time::Instant;

const TOLERANCE: u64 = 0;
const SEED: u64 = 20240601;
const TRIALS: usize = 20;

const TITLES: [&str; 12] = [
    "DAHA relations (Hecke, braid, cross)",
    "cyclic-vector law",
    "Y-triangularity and spectrum",
    "eigenfunction oracle equivalence",
    "intertwiner quadratic identity",
    "pseudo-duality recursions",
    "symmetrisation",
    "face projection",
    "Whittaker dual route",
    "metaplectic degeneration n=1",
    "metaplectic relations and conjugation",
    "metaplectic Whittaker consistency",
];

fn main() {
    let cfg = Config { types: vec!["A1".into(), "A2".into(), "B2".into()], trials: TRIALS, seed: SEED };
    let start = Instant::now();
    let criteria: Vec<usize> = (1..=12).collect();
    let cases = cases_for(&criteria, &cfg).expect("case construction");
    let ids: Vec<usize> = cases.iter().map(|c| c.criterion).collect();
    let records = run_cases(cases);
    let mut failed = 0;
    for n in criteria {
        let mine: Vec<_> = records.iter().zip(&ids).filter(|(_, &i)| i == n).map(|(r, _)| r).collect();
        let bad: Vec<_> = mine.iter().filter(|r| r.status == Status::Fail).collect();
        let ran = mine.iter().filter(|r| r.status == Status::Pass).count();
        let ok = bad.is_empty() && ran > 0;
        println!(
            "{} criterion {:>2}: {} ({} cases, {} passed, tolerance {})",
            if ok { "PASS" } else { "FAIL" },
            n,
            TITLES[n - 1],
            mine.len(),
            ran,
            TOLERANCE
        );
        for r in bad {
            println!("     {} {}: {}", r.suite, r.case, r.witness.as_deref().unwrap_or(""));
        }
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of 12 criteria failed in {:.1}s", failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
