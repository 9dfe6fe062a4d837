//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line with the measured values. Run with `--nocapture` to see the lines
//! for passing criteria too; the same checks back the CLI `verify` command.

use forel_core::acceptance::run_criterion;

fn run(id: usize) {
    let report = run_criterion(id, false);
    println!("{}", report.summary_line());
    assert!(report.passed, "{}", report.summary_line());
}

#[test]
fn criterion_01_perturbed_constants() {
    run(1);
}

#[test]
fn criterion_02_stability_threshold() {
    run(2);
}

#[test]
fn criterion_03_period6_certificate() {
    run(3);
}

#[test]
fn criterion_04_coexistence() {
    run(4);
}

#[test]
fn criterion_05_cesaro() {
    run(5);
}

#[test]
fn criterion_06_symmetric_period2() {
    run(6);
}

#[test]
fn criterion_07_conjugacy_antisymmetry() {
    run(7);
}

#[test]
fn criterion_08_schwarzian() {
    run(8);
}

#[test]
fn criterion_09_entropy_dichotomy() {
    run(9);
}

#[test]
fn criterion_10_bifurcation() {
    run(10);
}
