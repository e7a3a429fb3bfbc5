//! Finite field construction and arithmetic
//!
//! This example demonstrates:
//! - Building `F_{p^m}` with a chosen or auto-selected modulus
//! - Traces, power traces, and Frobenius invariance
//! - Discrete logs through the lazily built lookup tables
//!
//! Run with: cargo run --example field_basics

use kseeker::fields::{make_field, FieldSpec};

fn main() {
    println!("=== Finite Field Basics ===\n");

    chosen_modulus();
    auto_modulus();
    traces_and_tables();
}

/// The degree-4 field over F_11 with modulus β⁴ + 8β² + 10β + 2.
fn chosen_modulus() {
    println!("--- F_{{11^4}} with an explicit modulus ---\n");

    // coefficients low degree first: 2 + 10x + 8x² + 0x³ + x⁴
    let fs = make_field(11, 4, Some(vec![2, 10, 8, 0, 1])).unwrap();
    println!("p = {}, m = {}, q = {}", fs.p(), fs.m(), fs.q());
    println!("modulus coefficients: {:?}", fs.modulus());
    println!("generator: {:?}", fs.generator().coeffs());

    // the basis root β happens to generate the multiplicative group here
    assert_eq!(fs.generator(), &fs.beta());
    println!("the basis root β generates F_q^*\n");

    // a reducible modulus is rejected with the factor degree
    let err = make_field(17, 2, Some(vec![13, 0, 1])).unwrap_err();
    println!("x² - 4 over F_17 rejected: {}\n", err);
}

/// Omitting the modulus picks the lexicographically smallest irreducible.
fn auto_modulus() {
    println!("--- Auto-selected moduli ---\n");

    for (p, m) in [(7u64, 2usize), (13, 1), (13, 3)] {
        let fs = make_field(p, m, None).unwrap();
        println!(
            "F_{{{}^{}}}: modulus {:?}, generator {:?}",
            p,
            m,
            fs.modulus(),
            fs.generator().coeffs()
        );
    }
    println!();

    // for m = 1 the modulus is x - g for the smallest primitive root,
    // so trace is the identity map
    let f13 = make_field(13, 1, None).unwrap();
    for c in 0..13 {
        assert_eq!(f13.trace(&f13.scalar(c)), c);
    }
    println!("F_13: trace is the identity on the prime field\n");
}

fn traces_and_tables() {
    println!("--- Traces, power traces, dlog ---\n");

    let fs: FieldSpec = make_field(11, 4, Some(vec![2, 10, 8, 0, 1])).unwrap();
    let a = fs.pow(&fs.beta(), 2092);
    println!("a = β^2092 has coefficients {:?}", a.coeffs());
    println!("Tr(a), Tr(a²), Tr(a³), Tr(a⁴) = {:?}", fs.power_traces(&a, 4));
    assert_eq!(fs.power_traces(&a, 4), vec![7, 4, 4, 8]);

    // dlog inverts exponentiation by the generator
    assert_eq!(fs.dlog(&a).unwrap(), 2092);
    println!("dlog(β^2092) = {}", fs.dlog(&a).unwrap());

    // Frobenius leaves traces alone
    let frob = fs.pow(&a, 11);
    assert_eq!(fs.trace(&a), fs.trace(&frob));
    println!("Tr(a^p) = Tr(a) = {}", fs.trace(&a));

    // x · x^{q-2} = 1 on nonzero x, and 0 maps to 0
    assert_eq!(fs.mul(&a, &fs.inv_map(&a)), fs.one());
    assert_eq!(fs.inv_map(&fs.zero()), fs.zero());
    println!("inversion-as-map conventions hold");
}
