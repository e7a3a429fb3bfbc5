//! Acceptance suite: one test per criterion AC1..AC10, mirroring
//! `kseeker verify-paper`. Each test prints its pass/fail line (visible
//! with `--nocapture`) and asserts the criterion.

use kseeker::verify;

fn check(c: verify::Criterion) {
    println!(
        "{:<5} {:<6} {:>6}ms  {}",
        c.id,
        if c.pass { "pass" } else { "FAIL" },
        c.millis,
        c.description
    );
    assert!(c.pass, "{}: {}", c.id, c.detail);
}

#[test]
fn ac1_worked_example_three_methods() {
    check(verify::ac1());
}

#[test]
fn ac2_zeta_expansion_digits() {
    check(verify::ac2());
}

#[test]
fn ac3_special_value_digits() {
    check(verify::ac3());
}

#[test]
fn ac4_p11_nonexistence() {
    check(verify::ac4());
}

#[test]
fn ac5_prime_subfield_nonexistence() {
    check(verify::ac5());
}

#[test]
fn ac6_subfield_algebra() {
    check(verify::ac6());
}

#[test]
fn ac7_product_congruence() {
    check(verify::ac7());
}

#[test]
fn ac8_three_way_agreement() {
    check(verify::ac8());
}

#[test]
fn ac9_bent_equivalence_scans() {
    check(verify::ac9());
}

#[test]
fn ac10_property_suites() {
    check(verify::ac10());
}
