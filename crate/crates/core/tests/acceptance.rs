//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; the same checks back the CLI `suite` subcommand.

use qdt_core::acceptance;
use qdt_core::Config;

fn run(id: usize, f: fn(&Config) -> acceptance::CriterionReport) {
    let config = Config::default();
    let report = f(&config);
    println!("{}", report.line());
    assert!(report.status, "criterion {id} failed: {}", report.detail);
}

#[test]
fn criterion_1_single_step_wall_crossing() {
    run(1, acceptance::criterion_1);
}

#[test]
fn criterion_2_exchange_relation_recovery() {
    run(2, acceptance::criterion_2);
}

#[test]
fn criterion_3_pentagon_periodicity() {
    run(3, acceptance::criterion_3);
}

#[test]
fn criterion_4_kronecker_hilbert_counts() {
    run(4, acceptance::criterion_4);
}

#[test]
fn criterion_5_caldero_chapoton() {
    run(5, acceptance::criterion_5);
}

#[test]
fn criterion_6_transformation_formula() {
    run(6, acceptance::criterion_6);
}

#[test]
fn criterion_7_wall_crossing_factorization() {
    run(7, acceptance::criterion_7);
}

#[test]
fn criterion_8_fomin_zelevinsky_properties() {
    run(8, acceptance::criterion_8);
}

#[test]
fn criterion_9_consistency_cross_checks() {
    run(9, acceptance::criterion_9);
}
