//! Kloosterman sums `K_q(a) = Σ_{x∈F_q} ζ^{Tr(x^{q-2} + ax)}` as exact
//! objects, and their first π-adic digits computed three independent ways:
//!
//! 1. exponent counts substituted into the solved expansion of ζ;
//! 2. the closed-form digit formulas in the power traces of `a`;
//! 3. a Gauss-sum reconstruction through Stickelberger's congruence,
//!    summing `-g(j)² ω^j(a)` over all `j` of p-ary weight ≤ 4.
//!
//! All three must agree mod `π^10`; the acceptance suite checks that they do.

use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::fields::{mod_inv, FFElem, FieldSpec};
use crate::padic::{lifted_trace, zeta_expansion, DigitExpansion, RamifiedElem};
use crate::{Error, Result};

/// Per-`a` record: exponent histogram, exact value, digits, formula digits.
#[derive(Debug, Clone, Serialize)]
pub struct KloostermanProfile {
    /// dlog of `a` base the field generator; `None` for `a = 0`
    pub a_exponent: Option<u64>,
    pub a_coeffs: Vec<u64>,
    pub counts: Vec<u64>,
    pub value: CycInt,
    pub digits: DigitExpansion,
    pub formula_digits: Option<FormulaDigits>,
}

/// The closed-form digits `(a_2, a_4, a_6, a_8)` mod p. `a_8` is only
/// defined for p ≥ 11.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaDigits {
    pub a2: u64,
    pub a4: u64,
    pub a6: u64,
    pub a8: Option<u64>,
}

/// The seven distinct-index ω-power sums of weight ≤ 4, as scalars in
/// `Z/p^K`. Names record the digit pattern of the exponent: `s21` is
/// `Σ ω^{2p^i + p^j}(a)` over ordered pairs of distinct indices, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerSums {
    pub s11: u64,
    pub s21: u64,
    pub s111: u64,
    pub s22: u64,
    pub s31: u64,
    pub s211: u64,
    pub s1111: u64,
}

/// Exact histogram `N_c = #{x : Tr(x^{q-2} + ax) = c}` over `c ∈ F_p`,
/// including the `x = 0` term in `N_0` (the `x^{q-2}` convention maps 0
/// to 0). `a = 0` is allowed and yields the uniform histogram.
pub fn kloosterman_counts(fs: &FieldSpec, a: &FFElem) -> Vec<u64> {
    let p = fs.p();
    let q = fs.q();
    let mut counts = vec![0u64; p as usize];
    counts[0] += 1; // x = 0
    if let Some(t) = fs.tables() {
        let qm1 = (q - 1) as usize;
        if a.is_zero() {
            for k in 0..qm1 {
                let inv = t.antilog[(qm1 - k) % qm1] as usize;
                counts[t.trace[inv] as usize] += 1;
            }
        } else {
            let la = t.log[fs.index_of(a) as usize] as usize;
            for k in 0..qm1 {
                let inv = t.antilog[(qm1 - k) % qm1] as usize;
                let ax = t.antilog[(la + k) % qm1] as usize;
                counts[((t.trace[inv] + t.trace[ax]) as u64 % p) as usize] += 1;
            }
        }
    } else {
        for idx in 1..q {
            let x = fs.element_from_index(idx);
            let term = fs.add(&fs.inv_map(&x), &fs.mul(a, &x));
            counts[fs.trace(&term) as usize] += 1;
        }
    }
    counts
}

/// `K_q(a)` as an exact element of `Z[ζ_p]`.
pub fn kloosterman_value(fs: &FieldSpec, a: &FFElem) -> CycInt {
    CycInt::from_exponent_counts(fs.p(), &kloosterman_counts(fs, a))
        .expect("histogram has length p")
}

/// First `n ≤ 10` Teichmüller digits of `K_q(a)`, by substituting the
/// solved expansion of ζ into `Σ N_c ζ^c`.
pub fn expansion_from_counts(fs: &FieldSpec, a: &FFElem, n: u32) -> Result<DigitExpansion> {
    if n > 10 {
        return Err(Error::PrecisionTooLarge { got: n, max: 10 });
    }
    let p = fs.p();
    let counts = kloosterman_counts(fs, a);
    digits_of_counts(p, &counts, n)
}

pub(crate) fn digits_of_counts(p: u64, counts: &[u64], n: u32) -> Result<DigitExpansion> {
    let k = n.max(1).div_ceil(p as u32 - 1);
    let z = zeta_expansion(p, k * (p as u32 - 1))?;
    let mut acc = RamifiedElem::zero(p, k);
    let mut zc = RamifiedElem::one(p, k);
    for (c, &count) in counts.iter().enumerate() {
        if c > 0 {
            zc = zc.mul(&z);
        }
        acc = acc.add(&zc.scalar_mul(count));
    }
    acc.digits(n as usize)
}

/// Closed-form digits from the power traces: requires p ≥ 7, with `a_8`
/// available for p ≥ 11.
pub fn expansion_formula(fs: &FieldSpec, a: &FFElem) -> Result<FormulaDigits> {
    let p = fs.p();
    if p < 7 {
        return Err(Error::PrimeTooSmall { got: p, min: 7 });
    }
    let tr = fs.power_traces(a, 4);
    let (t1, t2, t3, t4) = (tr[0], tr[1], tr[2], tr[3]);
    let neg = |v: u64| (p - v % p) % p;
    let a2 = neg(t1);
    let a4 = (t2 + neg(2 * t1 % p * t1 % p)) % p * mod_inv(4, p) % p;
    let a6 = neg((4 * t3 % p + 6 * t1 % p * t1 % p * t1 % p + neg(9 * t1 % p * t2 % p)) % p)
        * mod_inv(36 % p, p)
        % p;
    let a8 = if p >= 11 {
        let t1sq = t1 * t1 % p;
        let inner = (24 % p * t1sq % p * t1sq % p
            + neg(72 % p * t1sq % p * t2 % p)
            + 64 % p * t1 % p * t3 % p
            + 18 % p * t2 % p * t2 % p
            + neg(33 % p * t4 % p))
            % p;
        Some(neg(inner) * mod_inv(576 % p, p) % p)
    } else {
        None
    };
    Ok(FormulaDigits { a2, a4, a6, a8 })
}

/// The p-ary digit weight `wt_p(j) = j_0 + j_1 + ... + j_{m-1}`.
pub fn p_weight(p: u64, mut j: u64) -> u64 {
    let mut w = 0;
    while j > 0 {
        w += j % p;
        j /= p;
    }
    w
}

/// Stickelberger's congruence for the Gauss sum `g(j)`:
/// `g(j) ≡ π^{wt_p(j)} / (j_0! j_1! ... j_{m-1}!) mod π^{wt_p(j)+p-1}`.
/// Returns the truncated leading value at π-precision `n`.
pub fn gauss_stickelberger(fs: &FieldSpec, j: u64, n: u32) -> Result<RamifiedElem> {
    let p = fs.p();
    let q = fs.q();
    if j == 0 || j > q - 2 {
        return Err(Error::IndexOutOfRange {
            index: j,
            min: 1,
            max: q - 2,
        });
    }
    let wt = p_weight(p, j) as u32;
    if n > wt + p as u32 - 1 {
        return Err(Error::PrecisionTooLarge {
            got: n,
            max: wt + p as u32 - 1,
        });
    }
    let k = n.max(1).div_ceil(p as u32 - 1);
    let pk = p.pow(k);
    let mut fact = 1u64;
    let mut jj = j;
    while jj > 0 {
        let d = jj % p;
        for i in 2..=d {
            fact = fact * i % pk;
        }
        jj /= p;
    }
    Ok(RamifiedElem::pi_power(p, k, wt).scalar_mul(mod_inv(fact, pk)))
}

/// The seven weight-≤4 distinct-index ω-sums, from lifted traces via the
/// symmetric-function identities (each sum is over ordered tuples of
/// pairwise distinct Frobenius indices):
///
/// - `s11  = T(a)² - T(a²)`
/// - `s21  = T(a)·T(a²) - T(a³)`
/// - `s111 = T(a)³ - 3·T(a)·T(a²) + 2·T(a³)`
/// - `s22  = T(a²)² - T(a⁴)`
/// - `s31  = T(a)·T(a³) - T(a⁴)`
/// - `s211 = T(a)²·T(a²) - 2·T(a)·T(a³) - T(a²)² + 2·T(a⁴)`
/// - `s1111 = T(a)⁴ - 6·T(a)²·T(a²) + 3·T(a²)² + 8·T(a)·T(a³) - 6·T(a⁴)`
///
/// where `T` is the lifted trace at precision `p^K`.
pub fn symmetric_power_sums(fs: &FieldSpec, a: &FFElem, k: u32) -> Result<PowerSums> {
    let pk = fs.p().pow(k);
    let t1 = lifted_trace(fs, a, 1, k)?;
    let t2 = lifted_trace(fs, a, 2, k)?;
    let t3 = lifted_trace(fs, a, 3, k)?;
    let t4 = lifted_trace(fs, a, 4, k)?;
    let m = |x: u64, y: u64| x as u128 * y as u128 % pk as u128;
    let md = |x: u128| (x % pk as u128) as u64;
    let sub = |x: u64, y: u64| (x + pk - y % pk) % pk;
    let t1sq = md(m(t1, t1));
    let t2sq = md(m(t2, t2));
    let s11 = sub(t1sq, t2);
    let s21 = sub(md(m(t1, t2)), t3);
    let s111 = {
        let cubes = md(m(t1sq, t1));
        (cubes + sub(0, md(3 * m(t1, t2))) + 2 * t3 % pk) % pk
    };
    let s22 = sub(t2sq, t4);
    let s31 = sub(md(m(t1, t3)), t4);
    let s211 = {
        let a1 = md(m(t1sq, t2));
        let a2 = md(2 * m(t1, t3));
        (a1 + sub(0, a2) + sub(0, t2sq) + 2 * t4 % pk) % pk
    };
    let s1111 = {
        let quad = md(m(t1sq, t1sq));
        let b1 = md(6 * m(t1sq, t2));
        let b2 = md(3 * m(t2, t2));
        let b3 = md(8 * m(t1, t3));
        let b4 = 6 * t4 % pk;
        (quad + sub(0, b1) + b2 + b3 + sub(0, b4)) % pk
    };
    Ok(PowerSums {
        s11,
        s21,
        s111,
        s22,
        s31,
        s211,
        s1111,
    })
}

/// Reconstruct the first ten digits of `K_q(a)` from Gauss sums: the sum
/// `-Σ g(j)² ω^j(a)` over `1 ≤ wt_p(j) ≤ 4`, grouped by the digit pattern
/// of `j`. Squared Stickelberger leading terms supply the pattern
/// coefficients `(1/Π j_i!)²` and the ω-sums come from
/// [`symmetric_power_sums`]; weight-5 terms and the congruence error both
/// sit at or above `π^10`. Requires p ≥ 11.
pub fn expansion_from_gauss(fs: &FieldSpec, a: &FFElem) -> Result<DigitExpansion> {
    let p = fs.p();
    if p < 11 {
        return Err(Error::PrimeTooSmall { got: p, min: 11 });
    }
    let t1 = lifted_trace(fs, a, 1, 1)?;
    let t2 = lifted_trace(fs, a, 2, 1)?;
    let t3 = lifted_trace(fs, a, 3, 1)?;
    let t4 = lifted_trace(fs, a, 4, 1)?;
    let s = symmetric_power_sums(fs, a, 1)?;
    let neg = |v: u64| (p - v % p) % p;
    let inv = |v: u64| mod_inv(v % p, p);
    // weight 1: pattern {1}
    let c2 = neg(t1);
    // weight 2: patterns {2}, {1,1} with squared factorials 1/4, 1
    let c4 = neg((t2 * inv(4) + s.s11 * inv(2)) % p);
    // weight 3: patterns {3}, {2,1}, {1,1,1} -> 1/36, 1/4, 1 (unordered 1/6)
    let c6 = neg((t3 * inv(36) + s.s21 * inv(4) + s.s111 * inv(6)) % p);
    // weight 4: multiplicities 1, 18, 16, 72, 24 against the ordered sums
    let c8 = neg(
        (t4 + 18 * s.s22 % p + 16 * s.s31 % p + 72 * s.s211 % p + 24 * s.s1111 % p) % p
            * inv(576)
            % p,
    );
    let mut e = RamifiedElem::zero(p, 1);
    let add_at = |e: RamifiedElem, pos: u32, v: u64| {
        if v == 0 {
            e
        } else {
            e.add(&RamifiedElem::pi_power(p, 1, pos).scalar_mul(v))
        }
    };
    e = add_at(e, 2, c2);
    e = add_at(e, 4, c4);
    e = add_at(e, 6, c6);
    e = add_at(e, 8, c8);
    e.digits(10)
}

/// Assemble the full per-`a` record.
pub fn profile(fs: &FieldSpec, a: &FFElem, n: u32) -> Result<KloostermanProfile> {
    let counts = kloosterman_counts(fs, a);
    let value = CycInt::from_exponent_counts(fs.p(), &counts)?;
    let digits = digits_of_counts(fs.p(), &counts, n)?;
    let formula_digits = if fs.p() >= 7 {
        Some(expansion_formula(fs, a)?)
    } else {
        None
    };
    let a_exponent = if a.is_zero() {
        None
    } else {
        Some(fs.dlog(a)?)
    };
    Ok(KloostermanProfile {
        a_exponent,
        a_coeffs: a.coeffs().to_vec(),
        counts,
        value,
        digits,
        formula_digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    fn paper_field() -> FieldSpec {
        make_field(11, 4, Some(vec![2, 10, 8, 0, 1])).unwrap()
    }

    #[test]
    fn zero_a_gives_uniform_counts_and_zero_value() {
        let fs = make_field(7, 2, None).unwrap();
        let counts = kloosterman_counts(&fs, &fs.zero());
        assert!(counts.iter().all(|&c| c == fs.q() / 7));
        assert!(kloosterman_value(&fs, &fs.zero()).is_zero());
        let dg = expansion_from_counts(&fs, &fs.zero(), 10).unwrap();
        assert!(dg.digits.iter().all(|&d| d == 0));
    }

    #[test]
    fn counts_sum_to_q() {
        let fs = make_field(13, 2, None).unwrap();
        for idx in [0u64, 1, 17, 99] {
            let a = fs.element_from_index(idx);
            assert_eq!(
                kloosterman_counts(&fs, &a).iter().sum::<u64>(),
                fs.q()
            );
        }
    }

    #[test]
    fn prime_field_counts_match_naive_double_loop() {
        let fs = make_field(7, 1, None).unwrap();
        for av in 0..7u64 {
            let a = fs.scalar(av);
            let counts = kloosterman_counts(&fs, &a);
            let mut naive = vec![0u64; 7];
            naive[0] += 1;
            for x in 1..7u64 {
                let inv = crate::fields::mod_pow(x, 5, 7);
                naive[((inv + av * x) % 7) as usize] += 1;
            }
            assert_eq!(counts, naive, "a = {}", av);
        }
    }

    #[test]
    fn paper_example_digits_from_counts() {
        let fs = paper_field();
        let a = fs.pow(&fs.beta(), 2092);
        let dg = expansion_from_counts(&fs, &a, 10).unwrap();
        // K_q(a) = 4π² + 4π⁴ + 5π⁶ - 2π⁸ mod π^10, and -2 ≡ 9 mod 11
        assert_eq!(dg.digits_mod_p(), vec![0, 0, 4, 0, 4, 0, 5, 0, 9, 0]);
    }

    #[test]
    fn paper_example_formula_digits() {
        let fs = paper_field();
        let a = fs.pow(&fs.beta(), 2092);
        let f = expansion_formula(&fs, &a).unwrap();
        assert_eq!((f.a2, f.a4, f.a6, f.a8), (4, 4, 5, Some(9)));
    }

    #[test]
    fn paper_example_gauss_digits() {
        let fs = paper_field();
        let a = fs.pow(&fs.beta(), 2092);
        let dg = expansion_from_gauss(&fs, &a).unwrap();
        assert_eq!(dg.digits_mod_p(), vec![0, 0, 4, 0, 4, 0, 5, 0, 9, 0]);
    }

    #[test]
    fn formula_of_zero_vanishes_and_small_p_refused() {
        let fs = make_field(13, 2, None).unwrap();
        let f = expansion_formula(&fs, &fs.zero()).unwrap();
        assert_eq!((f.a2, f.a4, f.a6, f.a8), (0, 0, 0, Some(0)));
        let fs5 = make_field(5, 1, None).unwrap();
        assert!(expansion_formula(&fs5, &fs5.one()).is_err());
    }

    #[test]
    fn gauss_leading_terms() {
        let fs = make_field(13, 2, None).unwrap();
        let p = 13;
        assert_eq!(
            gauss_stickelberger(&fs, 1, 10).unwrap(),
            RamifiedElem::pi_power(p, 1, 1)
        );
        assert_eq!(
            gauss_stickelberger(&fs, 2, 10).unwrap(),
            RamifiedElem::pi_power(p, 1, 2).scalar_mul(mod_inv(2, p))
        );
        // j = 1 + p: two unit digits, factorials 1
        assert_eq!(
            gauss_stickelberger(&fs, 1 + p, 10).unwrap(),
            RamifiedElem::pi_power(p, 1, 2)
        );
        assert!(gauss_stickelberger(&fs, 0, 1).is_err());
        assert!(gauss_stickelberger(&fs, fs.q() - 1, 1).is_err());
    }

    #[test]
    fn power_sums_vanish_for_prime_field() {
        let fs = make_field(13, 1, None).unwrap();
        let s = symmetric_power_sums(&fs, &fs.scalar(5), 1).unwrap();
        assert_eq!(
            s,
            PowerSums {
                s11: 0,
                s21: 0,
                s111: 0,
                s22: 0,
                s31: 0,
                s211: 0,
                s1111: 0
            }
        );
    }

    #[test]
    fn power_sums_match_tuple_enumeration() {
        let fs = make_field(13, 3, None).unwrap();
        let ring = crate::padic::UnramifiedRing::new(&fs, 1);
        let p = 13u64;
        let m = 3usize;
        for idx in [2u64, 77, 500, 1400, 2100] {
            let a = fs.element_from_index(idx % fs.q());
            let s = symmetric_power_sums(&fs, &a, 1).unwrap();
            let w = ring.teichmuller(&a);
            // brute force over ordered tuples of distinct Frobenius indices;
            // individual terms live in the unramified ring, only the full
            // sum is Galois-stable
            let pow_pi = |weights: &[u64]| -> u64 {
                fn rec(
                    ring: &crate::padic::UnramifiedRing,
                    w: &crate::padic::UnramifiedElem,
                    weights: &[u64],
                    chosen: &mut Vec<usize>,
                    m: usize,
                    p: u64,
                    total: &mut crate::padic::UnramifiedElem,
                ) {
                    if chosen.len() == weights.len() {
                        let mut e = 0u64;
                        for (r, &i) in chosen.iter().enumerate() {
                            e += weights[r] * p.pow(i as u32);
                        }
                        *total = ring.add(total, &ring.pow(w, e));
                        return;
                    }
                    for i in 0..m {
                        if !chosen.contains(&i) {
                            chosen.push(i);
                            rec(ring, w, weights, chosen, m, p, total);
                            chosen.pop();
                        }
                    }
                }
                let mut chosen = Vec::new();
                let mut total = ring.zero();
                rec(&ring, &w, weights, &mut chosen, m, p, &mut total);
                ring.as_scalar(&total).expect("full sum is Galois-stable")
            };
            assert_eq!(s.s11, pow_pi(&[1, 1]), "s11 at idx {}", idx);
            assert_eq!(s.s21, pow_pi(&[2, 1]));
            assert_eq!(s.s111, pow_pi(&[1, 1, 1]));
            assert_eq!(s.s22, pow_pi(&[2, 2]));
            assert_eq!(s.s31, pow_pi(&[3, 1]));
            assert_eq!(s.s211, pow_pi(&[2, 1, 1]));
            assert_eq!(s.s1111, pow_pi(&[1, 1, 1, 1])); // empty for m = 3
            assert_eq!(s.s1111, 0);
        }
    }

    #[test]
    fn three_way_agreement_exhaustive_q11() {
        let fs = make_field(11, 1, None).unwrap();
        for k in 0..fs.q() - 1 {
            let a = fs.pow(fs.generator(), k);
            let dc = expansion_from_counts(&fs, &a, 10).unwrap().digits_mod_p();
            let dg = expansion_from_gauss(&fs, &a).unwrap().digits_mod_p();
            assert_eq!(dc, dg, "a = g^{}", k);
            let f = expansion_formula(&fs, &a).unwrap();
            assert_eq!((dc[2], dc[4], dc[6], dc[8]), (f.a2, f.a4, f.a6, f.a8.unwrap()));
        }
    }

    #[test]
    fn three_way_agreement_p13() {
        let fs = make_field(13, 2, None).unwrap();
        let mut k = 1u64;
        for _ in 0..25 {
            k = (k * 37 + 11) % (fs.q() - 1);
            let a = fs.pow(fs.generator(), k);
            let dc = expansion_from_counts(&fs, &a, 10).unwrap().digits_mod_p();
            let dg = expansion_from_gauss(&fs, &a).unwrap().digits_mod_p();
            assert_eq!(dc, dg, "counts vs gauss at k = {}", k);
            let f = expansion_formula(&fs, &a).unwrap();
            assert_eq!(dc[2], f.a2);
            assert_eq!(dc[4], f.a4);
            assert_eq!(dc[6], f.a6);
            assert_eq!(dc[8], f.a8.unwrap());
            assert_eq!(dc[0], 0);
            for i in [1, 3, 5, 7, 9] {
                assert_eq!(dc[i], 0);
            }
        }
    }

    #[test]
    fn frobenius_and_conjugation_invariance() {
        let fs = make_field(7, 3, None).unwrap();
        for k in 0..fs.q() - 1 {
            let a = fs.pow(fs.generator(), k);
            let ap = fs.pow(&a, 7);
            assert_eq!(
                kloosterman_counts(&fs, &a),
                kloosterman_counts(&fs, &ap),
                "k = {}",
                k
            );
        }
        for k in [0u64, 5, 100, 300] {
            let a = fs.pow(fs.generator(), k);
            let v = kloosterman_value(&fs, &a);
            assert_eq!(v.conj(), v);
        }
    }

    #[test]
    fn profile_assembles() {
        let fs = paper_field();
        let a = fs.pow(&fs.beta(), 2092);
        let pr = profile(&fs, &a, 10).unwrap();
        assert_eq!(pr.a_exponent, Some(2092));
        assert_eq!(pr.counts.iter().sum::<u64>(), fs.q());
        assert_eq!(
            pr.value,
            CycInt::from_exponent_counts(11, &pr.counts).unwrap()
        );
        assert_eq!(pr.digits.digits_mod_p(), vec![0, 0, 4, 0, 4, 0, 5, 0, 9, 0]);
    }
}
