//! The special values 1 - 2/(ζ^b + ζ^{-b})
//!
//! This example demonstrates:
//! - Their exact π-adic expansions (even digits only)
//! - The b²/2 leading digit
//! - The exact product congruence Π (1 - 2/(ζ^i + ζ^{-i})) ≡ (-2/p)·p mod p²
//!
//! Run with: cargo run --example special_values

use kseeker::cyclotomic::{is_special_value, special_value_product, CycInt};
use kseeker::fields::mod_inv;
use kseeker::padic::special_value_expansion;

fn main() {
    println!("=== Special values of Kloosterman type ===\n");

    expansions();
    exact_equality_test();
    product_congruence();
}

fn expansions() {
    println!("--- π-adic expansion of 1 - 2/(ζ + ζ^{{-1}}) ---\n");

    for p in [13u64, 17, 37] {
        let digits = special_value_expansion(p, 1, 10)
            .unwrap()
            .digits(10)
            .unwrap()
            .digits_mod_p();
        let r = |num: i64, den: u64| (num.rem_euclid(p as i64) as u64) * mod_inv(den % p, p) % p;
        assert_eq!(digits[2], r(1, 2));
        assert_eq!(digits[4], r(-5, 24));
        assert_eq!(digits[6], r(61, 720));
        assert_eq!(digits[8], r(-277, 8064));
        println!("p = {:>2}: digits {:?}", p, digits);
    }
    println!("positions (2,4,6,8) carry (1/2, -5/24, 61/720, -277/8064) mod p\n");

    // the general b: position-2 digit is b²/2
    let p = 17u64;
    for b in [1u64, 2, 5, 16] {
        let digits = special_value_expansion(p, b, 4).unwrap().digits(4).unwrap();
        assert_eq!(digits.digits_mod_p()[2], b * b % p * mod_inv(2, p) % p);
    }
    println!("position-2 digit equals b²/2 mod p for every b ≠ 0\n");
}

/// Exact membership testing without division: (ζ^b + ζ^{-b})(K-1) + 2 = 0.
fn exact_equality_test() {
    println!("--- Exact equality in Z[ζ] ---\n");

    // at p = 3, ζ + ζ^{-1} = -1 forces the special value 3
    assert!(is_special_value(&CycInt::scalar(3, 3), 1));
    // b = 0 means K = 0
    assert!(is_special_value(&CycInt::zero(7), 0));
    println!("1 - 2/(ζ+ζ^{{-1}}) = 3 at p = 3; the b = 0 value is 0");

    // the q = 7 curiosity: K_7(3) = 3 + 2ζ³ + 2ζ⁴ attains the b = 1 value
    let p = 7u64;
    let k = CycInt::scalar(p, 3)
        .add(&CycInt::zeta_pow(p, 3).mul_scalar(&2.into()))
        .add(&CycInt::zeta_pow(p, 4).mul_scalar(&2.into()));
    assert!(is_special_value(&k, 1));
    println!("K_7(3) = 3 + 2ζ³ + 2ζ⁴ equals 1 - 2/(ζ+ζ^{{-1}}) exactly\n");
}

fn product_congruence() {
    println!("--- Product congruence mod p² ---\n");

    for p in [13u64, 17, 19, 23] {
        let r = special_value_product(p).unwrap();
        assert!(r.congruent);
        println!(
            "p = {:>2}: product = {:>4}, both sides ≡ {:>4} mod p², (-2/p) = {:+}",
            p, r.product, r.lhs_mod_p2, r.legendre_minus_two
        );
    }
    println!("\nthe product of all (p-1)/2 special values is the rational integer (-2/p)·p");
}
