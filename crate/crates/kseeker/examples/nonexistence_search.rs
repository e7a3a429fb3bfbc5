//! Exhaustive special-value searches
//!
//! This example demonstrates:
//! - Sweeping F_q^* for K_q(a) = 1 - 2/(ζ^b + ζ^{-b})
//! - The staged trace filter and its pruning statistics
//! - The rescaling census N_1 = N_2 = ... = N_{(p-1)/2}
//! - The q = 7 exception, where hits genuinely exist
//!
//! Run with: cargo run --release --example nonexistence_search

use kseeker::fields::make_field;
use kseeker::special::{search_special, trace_filter, ARange, SearchConfig};

fn main() {
    println!("=== Exhaustive special-value searches ===\n");

    p11_sweeps();
    filtered_sweep();
    the_q7_exception();
}

/// Over F_{11^m} no a ever attains a special value.
fn p11_sweeps() {
    println!("--- p = 11: empty for every m ---\n");

    for m in [1usize, 2, 3] {
        let fs = make_field(11, m, None).unwrap();
        let rep = search_special(&fs, &SearchConfig::default()).unwrap();
        println!(
            "F_{{11^{}}}: swept {:>5} elements, {} hits, census {:?}",
            m, rep.searched, rep.hits.len(), rep.census
        );
        assert!(rep.hits.is_empty());
    }
    println!();
}

/// The trace filter prunes without ever losing a hit.
fn filtered_sweep() {
    println!("--- Staged trace filter at F_{{13^2}} ---\n");

    let fs = make_field(13, 2, None).unwrap();
    let unfiltered = search_special(&fs, &SearchConfig::default()).unwrap();
    let filtered = search_special(
        &fs,
        &SearchConfig {
            use_filter: true,
            ..SearchConfig::default()
        },
    )
    .unwrap();
    assert_eq!(unfiltered.hits, filtered.hits);
    println!("exact tests without filter: {}", unfiltered.exact_tests);
    println!("exact tests with filter:    {}", filtered.exact_tests);
    println!("stage pass counts:          {:?}", filtered.filter_pass_counts);

    // the filter tests Tr(a^k) against (-1/2, -1/3, -1/5, -136/1155)
    let v = trace_filter(&fs, &fs.zero()).unwrap();
    println!(
        "a = 0 passes {}/{} stages (fails -1/2 immediately)\n",
        v.stages_passed, v.stages_available
    );
}

/// At q = 7 the special values are attained: K_7(3) = 1 - 2/(ζ + ζ^{-1}).
fn the_q7_exception() {
    println!("--- The q = 7 exception ---\n");

    let fs = make_field(7, 1, None).unwrap();
    let rep = search_special(&fs, &SearchConfig::default()).unwrap();
    println!("F_7 sweep finds {} hits:", rep.hits.len());
    for h in &rep.hits {
        println!("  a = {} with b = {}", h.a_coeffs[0], h.b);
    }
    assert_eq!(rep.census, vec![1, 1, 1]);
    println!("census N_1 = N_2 = N_3 = 1: the rescaling a ↦ a/i² permutes the hits");

    // restricted to the prime subfield of a bigger field, the sweep is clean
    for m in [2usize, 3] {
        let fs = make_field(7, m, None).unwrap();
        let rep = search_special(
            &fs,
            &SearchConfig {
                bs: None,
                use_filter: false,
                a_range: ARange::PrimeSubfield,
            },
        )
        .unwrap();
        assert!(rep.hits.is_empty());
        println!("F_7 inside F_{{7^{}}}: no hits", m);
    }
}
