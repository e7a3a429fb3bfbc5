//! Kloosterman sums and their π-adic digits, three ways
//!
//! This example demonstrates:
//! - Exact Kloosterman values as exponent histograms in Z[ζ_p]
//! - Digit extraction via the solved expansion of ζ
//! - The closed-form trace formulas for a₂, a₄, a₆, a₈
//! - Agreement of all three computation routes
//!
//! Run with: cargo run --example kloosterman_digits

use kseeker::fields::make_field;
use kseeker::kloosterman::{
    expansion_formula, expansion_from_counts, expansion_from_gauss, kloosterman_counts, profile,
};

fn main() {
    println!("=== Kloosterman π-adic digits ===\n");

    worked_example();
    three_way_agreement();
}

/// K_q(β^2092) over F_{11^4}: digits 4π² + 4π⁴ + 5π⁶ - 2π⁸ mod π^10.
fn worked_example() {
    println!("--- The F_{{11^4}} worked example ---\n");

    let fs = make_field(11, 4, Some(vec![2, 10, 8, 0, 1])).unwrap();
    let a = fs.pow(&fs.beta(), 2092);

    let counts = kloosterman_counts(&fs, &a);
    println!("exponent histogram N_c: {:?}", counts);
    println!("Σ N_c = {} = q", counts.iter().sum::<u64>());

    let digits = expansion_from_counts(&fs, &a, 10).unwrap();
    println!("digits from counts:  {:?}", digits.digits_mod_p());
    assert_eq!(digits.digits_mod_p(), vec![0, 0, 4, 0, 4, 0, 5, 0, 9, 0]);
    println!("  i.e. K_q(a) ≡ 4π² + 4π⁴ + 5π⁶ - 2π⁸ mod π^10  (9 ≡ -2 mod 11)\n");

    let f = expansion_formula(&fs, &a).unwrap();
    println!(
        "digits from the trace formulas: a₂={} a₄={} a₆={} a₈={}",
        f.a2,
        f.a4,
        f.a6,
        f.a8.unwrap()
    );

    let g = expansion_from_gauss(&fs, &a).unwrap();
    println!("digits from Gauss sums:        {:?}", g.digits_mod_p());
    assert_eq!(g.digits_mod_p(), digits.digits_mod_p());
    println!();

    // a full profile bundles everything
    let pr = profile(&fs, &a, 10).unwrap();
    println!(
        "profile: a = g^{}, value coefficients start {:?}",
        pr.a_exponent.unwrap(),
        &pr.value.coeffs()[..3]
    );
    println!();
}

/// On random elements the three routes agree digit for digit.
fn three_way_agreement() {
    println!("--- Three-way agreement at p = 13 ---\n");

    let fs = make_field(13, 2, None).unwrap();
    let mut k = 1u64;
    for _ in 0..5 {
        k = (k * 37 + 11) % (fs.q() - 1);
        let a = fs.pow(fs.generator(), k);
        let dc = expansion_from_counts(&fs, &a, 10).unwrap().digits_mod_p();
        let dg = expansion_from_gauss(&fs, &a).unwrap().digits_mod_p();
        let f = expansion_formula(&fs, &a).unwrap();
        assert_eq!(dc, dg);
        assert_eq!(dc[2], f.a2);
        assert_eq!(dc[8], f.a8.unwrap());
        println!("a = g^{:<4} digits {:?}", k, dc);
    }
    println!("\ndigit 0 and all odd digits vanish; even digits match everywhere");
}
