//! The π-adic expansion of ζ
//!
//! This example demonstrates:
//! - Solving ζ ≡ 1 + π mod π² with ζ^p = 1, digit by digit
//! - The inverse-factorial digit law 1/i! mod p
//! - Ring arithmetic in Z_p[π]/(π^{p-1} + p)
//!
//! Run with: cargo run --example zeta_expansion

use kseeker::fields::mod_inv;
use kseeker::padic::{zeta_expansion, RamifiedElem};

fn main() {
    println!("=== π-adic expansion of ζ ===\n");

    p37_digits();
    factorial_law();
    ring_relations();
}

/// ζ ≡ 1 + π - 18π² - 6π³ + 17π⁴ - 4π⁵ - 13π⁶ + 14π⁷ + 11π⁸ mod π⁹ at p=37.
fn p37_digits() {
    println!("--- p = 37 ---\n");

    let z = zeta_expansion(37, 9).unwrap();
    let digits = z.digits(9).unwrap().digits_mod_p();
    println!("digits mod 37: {:?}", digits);
    assert_eq!(digits, vec![1, 1, 19, 31, 17, 33, 24, 14, 11]);
    println!("(19, 31, 33, 24 are -18, -6, -4, -13 mod 37)\n");
}

/// For p ≥ 13 the first nine digits are exactly 1/i! mod p.
fn factorial_law() {
    println!("--- The 1/i! law ---\n");

    for p in [13u64, 17, 37] {
        let digits = zeta_expansion(p, 9).unwrap().digits(9).unwrap().digits_mod_p();
        let mut fact = 1u64;
        for (i, &d) in digits.iter().enumerate() {
            if i > 1 {
                fact = fact * i as u64 % p;
            }
            assert_eq!(d, mod_inv(fact, p));
        }
        println!("p = {:>2}: digits {:?} equal (1/i!) mod p for i = 0..8", p, digits);
    }
    println!();
}

fn ring_relations() {
    println!("--- Ring relations ---\n");

    // π · π^{p-2} = π^{p-1} = -p
    let p = 13u64;
    let pi = RamifiedElem::pi_power(p, 2, 1);
    let rest = RamifiedElem::pi_power(p, 2, (p - 2) as u32);
    assert_eq!(pi.mul(&rest), RamifiedElem::scalar(p, 2, p * p - p));
    println!("π · π^{{p-2}} = -p in Z_p[π]/(π^{{p-1}} + p)");

    // ζ^p = 1 and ζ · ζ^{-1} = 1 at full working precision
    let z = zeta_expansion(p, 12).unwrap();
    assert_eq!(z.pow(p), RamifiedElem::one(p, 1));
    assert_eq!(z.mul(&z.pow(p - 1)), RamifiedElem::one(p, 1));
    println!("ζ^p = 1 and ζ · ζ^{{-1}} = 1 hold exactly in the truncated ring");

    // σ_{-1} sends π to -π, so σ_b(ζ) is just ζ^b
    for b in 1..p {
        assert_eq!(z.sigma_apply(b as i64).unwrap(), z.pow(b));
    }
    println!("σ_b(ζ) = ζ^b for every nonzero b (Galois acts by ω(b)^j on digit j)");
}
