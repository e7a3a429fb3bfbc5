//! Gauss sums and the Stickelberger reconstruction
//!
//! This example demonstrates:
//! - Leading π-adic terms of Gauss sums g(j) from the digit weight of j
//! - The seven distinct-index power sums and their trace identities
//! - Rebuilding Kloosterman digits from -Σ g(j)² ω^j(a)
//!
//! Run with: cargo run --example gauss_reconstruction

use kseeker::fields::{make_field, mod_inv};
use kseeker::kloosterman::{
    expansion_from_counts, expansion_from_gauss, gauss_stickelberger, p_weight,
    symmetric_power_sums,
};
use kseeker::padic::RamifiedElem;

fn main() {
    println!("=== Stickelberger congruence and reconstruction ===\n");

    leading_terms();
    power_sums();
    reconstruction();
}

/// g(j) ≡ π^{wt_p(j)} / (j₀! j₁! ... j_{m-1}!) mod π^{wt_p(j)+p-1}.
fn leading_terms() {
    println!("--- Leading terms of g(j) ---\n");

    let fs = make_field(13, 2, None).unwrap();
    let p = fs.p();

    let g1 = gauss_stickelberger(&fs, 1, 10).unwrap();
    assert_eq!(g1, RamifiedElem::pi_power(p, 1, 1));
    println!("g(1)     ~ π                (weight 1, factorials 1)");

    let g2 = gauss_stickelberger(&fs, 2, 10).unwrap();
    assert_eq!(g2, RamifiedElem::pi_power(p, 1, 2).scalar_mul(mod_inv(2, p)));
    println!("g(2)     ~ π²/2!            (weight 2)");

    let g_1p = gauss_stickelberger(&fs, 1 + p, 10).unwrap();
    assert_eq!(g_1p, RamifiedElem::pi_power(p, 1, 2));
    println!("g(1+p)   ~ π²               (digits 1,1: two unit factorials)");

    let g_2p3 = gauss_stickelberger(&fs, 3 + 2 * p, 10).unwrap();
    assert_eq!(
        g_2p3,
        RamifiedElem::pi_power(p, 1, 5).scalar_mul(mod_inv(12, p))
    );
    println!("g(3+2p)  ~ π⁵/(3!·2!)       (digit weight {})", p_weight(p, 3 + 2 * p));
    println!();
}

/// All seven weight-≤4 sums over distinct Frobenius indices reduce to
/// lifted traces.
fn power_sums() {
    println!("--- Distinct-index power sums ---\n");

    let fs = make_field(13, 3, None).unwrap();
    let a = fs.element_from_index(519);
    let s = symmetric_power_sums(&fs, &a, 1).unwrap();
    println!("Σ ω^(pⁱ+pʲ)       = {}", s.s11);
    println!("Σ ω^(2pⁱ+pʲ)      = {}", s.s21);
    println!("Σ ω^(pⁱ+pʲ+pᵏ)    = {}", s.s111);
    println!("Σ ω^(2pⁱ+2pʲ)     = {}", s.s22);
    println!("Σ ω^(3pⁱ+pʲ)      = {}", s.s31);
    println!("Σ ω^(2pⁱ+pʲ+pᵏ)   = {}", s.s211);
    println!("Σ ω^(pⁱ+pʲ+pᵏ+pˡ) = {} (empty for m = 3)", s.s1111);
    assert_eq!(s.s1111, 0);

    // over the prime field there are no distinct index pairs at all
    let f13 = make_field(13, 1, None).unwrap();
    let s1 = symmetric_power_sums(&f13, &f13.scalar(5), 1).unwrap();
    assert_eq!((s1.s11, s1.s21, s1.s111), (0, 0, 0));
    println!("\nfor m = 1 every sum vanishes, matching the closed forms\n");
}

/// Summing -g(j)² ω^j(a) over weights 1..4 reproduces the digits mod π^10.
fn reconstruction() {
    println!("--- Reconstruction mod π^10 ---\n");

    for (p, m) in [(11u64, 4usize), (13, 2)] {
        let fs = if p == 11 {
            make_field(11, 4, Some(vec![2, 10, 8, 0, 1])).unwrap()
        } else {
            make_field(p, m, None).unwrap()
        };
        let a = fs.pow(fs.generator(), 2092 % (fs.q() - 1));
        let via_counts = expansion_from_counts(&fs, &a, 10).unwrap().digits_mod_p();
        let via_gauss = expansion_from_gauss(&fs, &a).unwrap().digits_mod_p();
        assert_eq!(via_counts, via_gauss);
        println!("F_{{{}^{}}}: both routes give {:?}", p, fs.m(), via_gauss);
    }
    println!("\nweight-5 terms and the congruence error all sit at or above π^10");
}
