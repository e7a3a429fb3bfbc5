//! The exact rational chain excluding F_{p²} solutions
//!
//! This example demonstrates:
//! - Minimal-polynomial coefficients c₁..c₄ as rational functions of r = 2/m
//! - How c₃ = c₄ = 0 forces r = -108/77 over the rationals
//! - The divisibility gcd(29556, 147780) = 2²·3²·821
//! - The p = 821 endgame: x² - 86x + 659 = (x - 300)(x - 607)
//!
//! Run with: cargo run --example subfield_analysis

use kseeker::special::{subfield_case_analysis, SubfieldBranch};

fn main() {
    println!("=== Subfield exclusion chain ===\n");

    generic_prime();
    the_821_branch();
    p_divides_m();
}

fn generic_prime() {
    println!("--- p = 13, m = 2 ---\n");

    let rep = subfield_case_analysis(13, 2).unwrap();
    assert!(rep.excluded);
    let SubfieldBranch::Generic {
        r_residue,
        r_forced,
        c_values,
        numerator_gcd,
        gcd_factorization,
        p_divides_gcd,
        ..
    } = &rep.branch
    else {
        panic!("expected the generic branch");
    };
    println!("r ≡ 2/m ≡ {} mod 13", r_residue);
    println!("c₃ = c₄ = 0 forces r = {}", r_forced);
    println!("c₁..c₄ at that r: {:?}", c_values);
    println!(
        "gcd of the c₃, c₄ numerators: {} = {:?}",
        numerator_gcd, gcd_factorization
    );
    assert!(!p_divides_gcd);
    println!("13 does not divide the gcd, so c₃ ≡ c₄ ≡ 0 mod 13 is impossible\n");
}

fn the_821_branch() {
    println!("--- p = 821, the only surviving prime ---\n");

    let rep = subfield_case_analysis(821, 2).unwrap();
    assert!(rep.excluded);
    let SubfieldBranch::Generic { minimal_poly, .. } = &rep.branch else {
        panic!("expected the generic branch");
    };
    let mp = minimal_poly.as_ref().unwrap();
    println!(
        "the would-be minimal polynomial x² - {}x + {} splits over F_821:",
        mp.c1, mp.c2
    );
    println!("  roots {} and {}", mp.roots.0, mp.roots.1);
    assert_eq!((mp.c1, mp.c2), (86, 659));
    assert_eq!(mp.roots, (300, 607));
    println!("a degree-2 element cannot have a split minimal polynomial: excluded\n");
}

fn p_divides_m() {
    println!("--- p | m branch ---\n");

    let rep = subfield_case_analysis(13, 26).unwrap();
    assert!(rep.excluded);
    assert!(matches!(rep.branch, SubfieldBranch::PDividesM { .. }));
    println!("p | m collapses the first trace condition to 1/2 ≡ 0 mod p: excluded");
}
