//! Acceptance gate: the ten checks that define "done" for this library.
//! Each test prints one PASS/FAIL line (visible with `--nocapture`).

use pisano_core::conjectures::{
    b_minus1_is_fixed, critical_prime_candidates, named_fixed_points, named_period_row,
    NamedSequence, LUCAS_ROW, PELL_ROW,
};
use pisano_core::fixedpoint::{enumerate_fixed_points, k_category, KCategory};
use pisano_core::pisano::{is_k_wall_sun_sun, pisano_structured};
use pisano_core::verify::{
    report_csv, report_json, run_suite, Classification, SerializeOptions, SuiteId, SweepConfig,
    VerificationReport,
};
use std::time::Instant;

fn verdict(n: u32, label: &str, pass: bool) {
    println!(
        "acceptance criterion {n} ({label}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({label}) failed");
}

fn sweep(suites: &[SuiteId], k: (u64, u64), m: (u64, u64)) -> Vec<VerificationReport> {
    let cfg = SweepConfig {
        k_range: k,
        m_range: m,
        suites: suites.to_vec(),
        parallelism: 8,
        max_iters: 200,
    };
    run_suite(&cfg).expect("sweep runs")
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let reports = sweep(&[SuiteId::OracleEquivalence], (1, 24), (2, 2000));
    let elapsed = start.elapsed();
    println!("  oracle sweep: {} checks in {elapsed:.1?}", reports[0].checked);
    verdict(
        1,
        "structured period = oracle on K [1,24] x m [2,2000]",
        reports[0].checked == 24 * 1999
            && reports[0].violations.is_empty()
            && elapsed.as_secs() < 60,
    );
}

#[test]
fn criterion_02_fibonacci_fixed_points() {
    let points = enumerate_fixed_points(1, 3000).expect("enumeration");
    verdict(
        2,
        "Fibonacci fixed points to 3000 are {24, 120, 600, 3000}",
        points == vec![24, 120, 600, 3000],
    );
}

#[test]
fn criterion_03_family_table_reproduction() {
    let reports = sweep(&[SuiteId::Table1], (1, 24), (2, 5000));
    let r = &reports[0];
    // Departures may only be the documented as-stated wording gaps — always
    // classified paper-statement-discrepancy, never in category (i), and the
    // calibrated encoding itself must match the oracle everywhere.
    let ok = r.checked == 24 * 4999
        && !r.violations.is_empty()
        && r.violations.iter().all(|v| {
            v.classification == Classification::PaperStatementDiscrepancy
                && k_category(v.k as u64) != KCategory::PlusMinusOneMod6
        });
    println!(
        "  family table: {} checks, {} as-stated wording departures",
        r.checked,
        r.violations.len()
    );
    verdict(
        3,
        "per-K fixed sets on [2,5000] match the calibrated families exactly",
        ok,
    );
}

#[test]
fn criterion_04_period_table_rows() {
    let fib = named_period_row(NamedSequence::Fibonacci, 2, 24);
    let fib_expected: Vec<u64> = vec![
        3, 8, 6, 20, 24, 16, 12, 24, 60, 10, 24, 28, 48, 40, 24, 36, 24, 18, 60, 16, 30, 48, 24,
    ];
    let lucas_ok = named_period_row(NamedSequence::Lucas, 2, 24) == LUCAS_ROW;
    let pell_ok = named_period_row(NamedSequence::Pell, 2, 24) == PELL_ROW;
    let reports = sweep(&[SuiteId::FinalTable], (1, 1), (2, 2));
    let r = &reports[0];
    // 91 of 92 pass; the one violation is the documented Jacobsthal
    // m = 2..24 row labeling (values align at m = 3..24).
    let table_ok = r.checked == 92
        && r.passed == 91
        && r.violations.len() == 1
        && r.violations[0].classification == Classification::PaperStatementDiscrepancy;
    verdict(
        4,
        "named-sequence period rows m = 2..24 reproduce exactly (Jacobsthal under the m = 3..24 alignment)",
        fib == fib_expected && lucas_ok && pell_ok && table_ok,
    );
}

#[test]
fn criterion_05_iteration_terminates() {
    let reports = sweep(&[SuiteId::IterationTheorem], (1, 24), (2, 5000));
    let r = &reports[0];
    verdict(
        5,
        "every trajectory on K [1,24] x m [2,5000] terminates within 200 steps; two-cycle only for K = 3 mod 6",
        r.checked == 24 * 4999 && r.violations.is_empty(),
    );
}

#[test]
fn criterion_06_ratio_bounds() {
    let reports = sweep(&[SuiteId::Bounds], (1, 24), (2, 5000));
    let r = &reports[0];
    // The suite note carries the observed maxima:
    // "max T/ln m = A (bound ...); max ln P/ln m = B (bound ...)"
    let note = r.notes.first().expect("bounds note");
    let grab = |marker: &str| -> f64 {
        let rest = &note[note.find(marker).expect("note marker") + marker.len()..];
        rest.split_whitespace().next().unwrap().parse().expect("numeric max")
    };
    let max_t = grab("max T/ln m = ");
    let max_p = grab("max ln P/ln m = ");
    println!("  observed maxima: T/ln m = {max_t}, ln P/ln m = {max_p}");
    verdict(
        6,
        "iteration-count and terminal-value ratios stay under 9.933 and 8.327",
        r.violations.is_empty() && max_t <= 9.933 && max_p <= 8.327,
    );
}

#[test]
fn criterion_07_theorem_suites() {
    let suites = [
        SuiteId::Parity,
        SuiteId::LcmLaw,
        SuiteId::Trichotomy,
        SuiteId::PrimeBound,
        SuiteId::FalconPlaza,
    ];
    let reports = sweep(&suites, (1, 24), (2, 2000));
    let suites_clean = reports.iter().all(|r| r.violations.is_empty());
    // The stabilization probes, spelled out:
    let wss_probes = pisano_structured(2, 13).unwrap() == pisano_structured(2, 169).unwrap()
        && pisano_structured(2, 31).unwrap() == pisano_structured(2, 961).unwrap()
        && (1..=50).all(|k| is_k_wall_sun_sun(k, 2) == (k % 4 == 0));
    for r in &reports {
        println!("  {}: {}/{} passed", r.suite.name(), r.passed, r.checked);
    }
    verdict(
        7,
        "parity, lcm law, trichotomy, prime bound, pi_K(2K), and 2-adic stabilization hold with zero violations",
        suites_clean && wss_probes,
    );
}

#[test]
fn criterion_08_lucas_and_pell_corollaries() {
    let lucas = named_fixed_points(NamedSequence::Lucas, 2000);
    let pell = named_fixed_points(NamedSequence::Pell, 2048);
    let powers: Vec<u64> = (1..=11).map(|e| 1u64 << e).collect();
    verdict(
        8,
        "Lucas fixed points to 2000 are {24}; Pell fixed points to 2048 are the powers of 2",
        lucas == vec![24] && pell == powers,
    );
}

#[test]
fn criterion_09_conjecture_sweeps() {
    let jacobsthal = sweep(&[SuiteId::Jacobsthal], (1, 1), (2, 5000));
    let b_minus1 = sweep(&[SuiteId::BMinus1], (1, 1), (2, 3000));
    let degenerate = sweep(&[SuiteId::Degenerate], (1, 1), (2, 3000));
    let no_bugs = jacobsthal
        .iter()
        .chain(&b_minus1)
        .chain(&degenerate)
        .all(|r| !r.has_theorem_violation());
    // a = 3 is singular: no prime of 3² − 4 = 5 has all powers fixed.
    let singular = critical_prime_candidates(3, 3000).unwrap().is_empty()
        && [5u64, 25, 125, 625].iter().all(|&m| !b_minus1_is_fixed(3, m))
        && !b_minus1[0].violations.iter().any(|v| v.k == 3 && v.m == 0);
    let findings: usize = jacobsthal
        .iter()
        .chain(&b_minus1)
        .map(|r| r.violations.len())
        .sum();
    println!("  conjecture sweeps recorded {findings} counterexample findings (run still passes)");
    verdict(
        9,
        "Jacobsthal, b = -1, and degenerate sweeps complete; counterexamples are findings, not failures",
        no_bugs && singular,
    );
}

#[test]
fn criterion_10_byte_identical_reports() {
    let opts = SerializeOptions::default();
    let render = |parallelism: usize| -> (String, String) {
        let cfg = SweepConfig { parallelism, ..SweepConfig::default() };
        let reports = run_suite(&cfg).expect("full sweep");
        let json: String = reports.iter().map(|r| report_json(r, &opts)).collect();
        let csv: String = reports.iter().map(|r| report_csv(r, &opts)).collect();
        (json, csv)
    };
    let serial = render(1);
    let parallel = render(8);
    verdict(
        10,
        "full verify run serializes byte-identically at parallelism 1 and 8",
        serial == parallel,
    );
}
