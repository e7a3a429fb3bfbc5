//! Special-value machinery: the `i²` rescaling equivalence, the staged
//! necessary trace conditions, exhaustive searches for
//! `K_q(a) = 1 - 2/(ζ^b + ζ^{-b})`, and the exact rational chain that rules
//! out solutions with `a ∈ F_{p²} \ F_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{is_special_value, special_hit_from_counts, CycInt};
use crate::fields::{mod_inv, FFElem, FieldSpec, FieldSpecFile};
use crate::kloosterman::{kloosterman_counts, kloosterman_value};
use crate::{Error, Result};

/// Which `a` to sweep in a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ARange {
    /// all of `F_q^*`
    All,
    /// the embedded prime subfield `F_p^* ⊂ F_q^*`
    PrimeSubfield,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// residues b to test; `None` means all of `0..=(p-1)/2`
    pub bs: Option<Vec<u64>>,
    pub use_filter: bool,
    pub a_range: ARange,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            bs: None,
            use_filter: false,
            a_range: ARange::All,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub a_exponent: u64,
    pub a_coeffs: Vec<u64>,
    pub b: u64,
}

/// Outcome of an exhaustive special-value search over one field.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub field: FieldSpecFile,
    pub generator: Vec<u64>,
    pub a_range: ARange,
    pub b_values: Vec<u64>,
    pub filter_mode: bool,
    /// number of `a` swept
    pub searched: u64,
    /// number of `a` whose exact value was computed
    pub exact_tests: u64,
    /// per stage: how many (a, b≠0) candidates passed stages `0..=s`
    pub filter_pass_counts: Vec<u64>,
    pub hits: Vec<SearchHit>,
    /// `N_i` for `i = 1..=(p-1)/2`: exact hits per special-value index
    pub census: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_zero_note: Option<String>,
    /// wall-clock time; excluded from the deterministic payload by default
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Result of checking the rescaling equivalence on one `(a, i)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RescalingCheck {
    /// `σ_{1/i}(K_q(a)) = K_q(a/i²)` as exact cyclotomic integers
    pub galois_identity: bool,
    /// special-value status of `(a, ζ^i)` equals that of `(a/i², ζ)`
    pub statuses_coincide: bool,
}

impl RescalingCheck {
    pub fn holds(&self) -> bool {
        self.galois_identity && self.statuses_coincide
    }
}

/// Verify `σ_{1/i mod p}(K_q(a)) = K_q(a/i²)` and compare special-value
/// statuses on both sides.
pub fn rescaling_check(fs: &FieldSpec, a: &FFElem, i: u64) -> Result<RescalingCheck> {
    let p = fs.p();
    let i = i % p;
    if i == 0 {
        return Err(Error::GaloisIndexZero);
    }
    let i_inv = mod_inv(i, p);
    let i2_inv = fs.scalar(mod_inv(i * i % p, p));
    let rescaled = fs.mul(a, &i2_inv);
    let k_a = kloosterman_value(fs, a);
    let k_r = kloosterman_value(fs, &rescaled);
    let galois_identity = k_a.galois(i_inv as i64)? == k_r;
    let statuses_coincide = is_special_value(&k_a, i) == is_special_value(&k_r, 1);
    Ok(RescalingCheck {
        galois_identity,
        statuses_coincide,
    })
}

/// Staged verdict of the necessary trace conditions for
/// `K_q(a) = 1 - 2/(ζ + ζ^{-1})`. Three stages for p ∈ {7, 11}, four for
/// p ≥ 13 (the fourth target has denominator 1155 = 3·5·7·11).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceFilterVerdict {
    pub stages_passed: u8,
    pub stages_available: u8,
}

impl TraceFilterVerdict {
    pub fn pass(&self) -> bool {
        self.stages_passed == self.stages_available
    }
}

/// The stage targets `(-1/2, -1/3, -1/5[, -136/1155])` as residues mod p.
pub fn trace_targets(p: u64) -> Result<Vec<u64>> {
    if p < 7 {
        return Err(Error::PrimeTooSmall { got: p, min: 7 });
    }
    let neg = |v: u64| (p - v % p) % p;
    let mut t = vec![
        neg(mod_inv(2, p)),
        neg(mod_inv(3, p)),
        neg(mod_inv(5, p)),
    ];
    if p >= 13 {
        t.push(neg(136 % p * mod_inv(1155 % p, p) % p));
    }
    Ok(t)
}

/// How many trace conditions are actually necessary over `F_{p^m}`.
///
/// Stage s constrains the digit at `π^{2s}`, which the congruence
/// `K_q ≡ Σ g(j)² ω^j(a) mod q` only pins when `m(p-1) > 2s`; the fourth
/// target additionally needs p ≥ 13 for its denominator. The single case
/// this cuts is q = 7, where only two stages are sound — and K_7 really
/// does attain special values on F_7^* (at a = 3, 5, 6), so applying the
/// third condition there would prune genuine hits.
pub fn available_stages(p: u64, m: usize) -> usize {
    let prec = m as u64 * (p - 1);
    let justified = (prec.saturating_sub(1) / 2) as usize;
    let targets = if p >= 13 { 4 } else { 3 };
    targets.min(justified)
}

/// Apply the staged trace filter, cheapest power first, stopping at the
/// first failure. Only stages justified for this field are applied.
pub fn trace_filter(fs: &FieldSpec, a: &FFElem) -> Result<TraceFilterVerdict> {
    let mut targets = trace_targets(fs.p())?;
    targets.truncate(available_stages(fs.p(), fs.m()));
    let stages_available = targets.len() as u8;
    let mut stages_passed = 0u8;
    let mut x = fs.one();
    for &target in &targets {
        x = fs.mul(&x, a);
        if fs.trace_fast(&x) != target {
            break;
        }
        stages_passed += 1;
    }
    Ok(TraceFilterVerdict {
        stages_passed,
        stages_available,
    })
}

fn stage_passes(fs: &FieldSpec, a: &FFElem, targets: &[u64]) -> usize {
    let mut passed = 0;
    let mut x = fs.one();
    for &target in targets {
        x = fs.mul(&x, a);
        if fs.trace_fast(&x) != target {
            break;
        }
        passed += 1;
    }
    passed
}

/// Exhaustive special-value search over `F_q^*` (or the prime subfield),
/// sharded over the ambient rayon pool with a deterministic merge in
/// ascending dlog order. Every hit is re-verified with the exact
/// cyclotomic test before it is reported.
pub fn search_special(fs: &FieldSpec, cfg: &SearchConfig) -> Result<SearchReport> {
    let p = fs.p();
    let bs: Vec<u64> = match &cfg.bs {
        Some(v) => {
            let mut b: Vec<u64> = v.iter().map(|&x| x % p).collect();
            b.sort_unstable();
            b.dedup();
            b
        }
        None => (0..=(p - 1) / 2).collect(),
    };
    let targets = if cfg.use_filter {
        let mut t = trace_targets(p)?;
        t.truncate(available_stages(p, fs.m()));
        t
    } else {
        Vec::new()
    };
    fs.tables().ok_or(Error::TablesUnavailable {
        q: fs.q(),
        cap: crate::fields::TABLE_CAP,
    })?;

    let exponents: Vec<u64> = match cfg.a_range {
        ARange::All => (0..fs.q() - 1).collect(),
        ARange::PrimeSubfield => {
            let mut v: Vec<u64> = (1..p)
                .map(|c| fs.dlog(&fs.scalar(c)).expect("nonzero scalar"))
                .collect();
            v.sort_unstable();
            v
        }
    };

    struct PerA {
        hits: Vec<SearchHit>,
        stage_counts: Vec<u64>,
        exact_tested: bool,
    }

    let n_stages = targets.len();
    let per_a: Vec<PerA> = exponents
        .par_iter()
        .map(|&k| {
            let a = fs.pow(fs.generator(), k);
            let mut stage_counts = vec![0u64; n_stages];
            let mut need_exact: Vec<u64> = Vec::new();
            for &b in &bs {
                if b == 0 || !cfg.use_filter {
                    need_exact.push(b);
                    continue;
                }
                let resc = fs.mul(&a, &fs.scalar(mod_inv(b * b % p, p)));
                let passed = stage_passes(fs, &resc, &targets);
                for s in stage_counts.iter_mut().take(passed) {
                    *s += 1;
                }
                if passed == n_stages {
                    need_exact.push(b);
                }
            }
            let mut hits = Vec::new();
            let exact_tested = !need_exact.is_empty();
            if exact_tested {
                let counts = kloosterman_counts(fs, &a);
                for &b in &need_exact {
                    if special_hit_from_counts(p, &counts, b) {
                        let kv = CycInt::from_exponent_counts(p, &counts)
                            .expect("histogram has length p");
                        assert!(
                            is_special_value(&kv, b),
                            "fast hit failed exact re-verification"
                        );
                        hits.push(SearchHit {
                            a_exponent: k,
                            a_coeffs: a.coeffs().to_vec(),
                            b,
                        });
                    }
                }
            }
            PerA {
                hits,
                stage_counts,
                exact_tested,
            }
        })
        .collect();

    let mut hits = Vec::new();
    let mut filter_pass_counts = vec![0u64; n_stages];
    let mut exact_tests = 0u64;
    for r in per_a {
        hits.extend(r.hits);
        for (acc, v) in filter_pass_counts.iter_mut().zip(&r.stage_counts) {
            *acc += v;
        }
        exact_tests += r.exact_tested as u64;
    }
    let mut census = vec![0u64; ((p - 1) / 2) as usize];
    for h in &hits {
        let i = h.b.min(p - h.b);
        if i >= 1 {
            census[(i - 1) as usize] += 1;
        }
    }
    let a_zero_note = if bs.contains(&0) {
        Some(
            "a = 0 excluded from the sweep: K_q(0) = 0 coincides with the b = 0 \
             special value but is not counted as a hit"
                .to_string(),
        )
    } else {
        None
    };
    Ok(SearchReport {
        field: fs.to_file(),
        generator: fs.generator().coeffs().to_vec(),
        a_range: cfg.a_range,
        b_values: bs,
        filter_mode: cfg.use_filter,
        searched: exponents.len() as u64,
        exact_tests,
        filter_pass_counts,
        hits,
        census,
        a_zero_note,
        timing_ms: None,
    })
}

/// One step of the subfield exclusion chain, exact over the rationals.
#[derive(Debug, Clone, Serialize)]
pub struct SubfieldReport {
    pub p: u64,
    pub m: u64,
    pub excluded: bool,
    pub branch: SubfieldBranch,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubfieldBranch {
    /// `p | m` makes the first trace condition read `-1/2 = 0`, impossible.
    PDividesM { contradiction: String },
    Generic {
        /// `2/m mod p`
        r_residue: u64,
        /// the value of r forced by `c_3 = c_4 = 0`, as an exact rational
        r_forced: String,
        /// `c_1..c_4` evaluated at the forced r
        c_values: [String; 4],
        /// gcd of the c_3 and c_4 numerators
        numerator_gcd: u64,
        gcd_factorization: Vec<(u64, u32)>,
        p_divides_gcd: bool,
        /// present only on the p = 821 branch
        #[serde(skip_serializing_if = "Option::is_none")]
        minimal_poly: Option<MinimalPolyFactorization>,
    },
}

/// The minimal polynomial `x² - c_1 x + c_2` of a hypothetical solution,
/// split over `F_p`.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalPolyFactorization {
    pub c1: u64,
    pub c2: u64,
    pub roots: (u64, u64),
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial over Q, low degree first.
#[derive(Debug, Clone)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Remainder of `self` divided by `div`.
    fn rem(&self, div: &RatPoly) -> RatPoly {
        let mut r = self.0.clone();
        let d = div.0.len() - 1;
        let lead = &div.0[d];
        while r.len() > d {
            let c = r.last().unwrap().clone();
            if !c.is_zero() {
                let f = c / lead;
                let shift = r.len() - 1 - d;
                for (i, dc) in div.0.iter().enumerate() {
                    let v = r[shift + i].clone() - &f * dc;
                    r[shift + i] = v;
                }
            }
            r.pop();
            while r.len() > d && r.last().unwrap().is_zero() {
                r.pop();
            }
        }
        RatPoly(r)
    }
}

fn rational_mod_p(v: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = ((v.denom() % &pb) + &pb) % &pb;
    let den: u64 = den.try_into().ok()?;
    if den == 0 {
        return None;
    }
    let num = ((v.numer() % &pb) + &pb) % &pb;
    let num: u64 = num.try_into().ok()?;
    Some(num * mod_inv(den, p) % p)
}

fn factorize_full(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Reproduce, in exact rational arithmetic, the chain showing that no
/// `a ∈ F_{p²} \ F_p` satisfies the four trace conditions: the minimal
/// polynomial coefficients `c_1..c_4` as functions of `r ≡ 2/m`, the value
/// `r = -108/77` forced by `c_3 = c_4 = 0`, the divisibility
/// `p | gcd(29556, 147780)`, and for p = 821 the splitting of
/// `x² - 86x + 659` into `(x - 300)(x - 607)`.
pub fn subfield_case_analysis(p: u64, m: u64) -> Result<SubfieldReport> {
    if p < 13 {
        return Err(Error::PrimeTooSmall { got: p, min: 13 });
    }
    if !m.is_multiple_of(2) {
        return Err(Error::OddDegree(m as usize));
    }
    if m.is_multiple_of(p) {
        return Ok(SubfieldReport {
            p,
            m,
            excluded: true,
            branch: SubfieldBranch::PDividesM {
                contradiction: "p | m forces 1/2 ≡ 0 mod p, which is impossible".to_string(),
            },
        });
    }
    let r_residue = 2 * mod_inv(m % p, p) % p;

    // c_i(r): coefficients of the minimal polynomial of a as rational
    // functions of r
    let c1 = RatPoly(vec![rat(0, 1), rat(-1, 2)]);
    let c2 = RatPoly(vec![rat(0, 1), rat(1, 6), rat(1, 8)]);
    let c3 = RatPoly(vec![rat(0, 1), rat(-1, 15), rat(-1, 12), rat(-1, 48)]);
    let c4 = RatPoly(vec![
        rat(0, 1),
        rat(34, 1155),
        rat(17, 360),
        rat(1, 48),
        rat(1, 384),
    ]);

    // c_3 = c_4 = 0 with r ≠ 0: divide out r and take the Euclidean
    // remainder; the linear remainder pins r
    let p3 = RatPoly(vec![rat(1, 15), rat(1, 12), rat(1, 48)]);
    let q4 = RatPoly(vec![rat(34, 1155), rat(17, 360), rat(1, 48), rat(1, 384)]);
    let rem = q4.rem(&p3);
    if rem.0.len() != 2 {
        return Err(Error::Internal("remainder is not linear".into()));
    }
    let r_forced = -rem.0[0].clone() / rem.0[1].clone();

    let cv = [
        c1.eval(&r_forced),
        c2.eval(&r_forced),
        c3.eval(&r_forced),
        c4.eval(&r_forced),
    ];
    let n3: u64 = cv[2].numer().abs().try_into().expect("small numerator");
    let n4: u64 = cv[3].numer().abs().try_into().expect("small numerator");
    let numerator_gcd = num_integer::gcd(n3, n4);
    let gcd_factorization = factorize_full(numerator_gcd);
    let p_divides_gcd = numerator_gcd.is_multiple_of(p);

    let minimal_poly = if p_divides_gcd {
        // the only prime ≥ 13 dividing the gcd; split x² - c1 x + c2
        let c1p = rational_mod_p(&cv[0], p)
            .ok_or_else(|| Error::Internal("c1 denominator divisible by p".into()))?;
        let c2p = rational_mod_p(&cv[1], p)
            .ok_or_else(|| Error::Internal("c2 denominator divisible by p".into()))?;
        let mut roots = Vec::new();
        for x in 0..p {
            if (x * x % p + c2p) % p == c1p * x % p {
                roots.push(x);
            }
        }
        if roots.len() != 2 {
            return Err(Error::Internal(format!(
                "x² - {}x + {} does not split over F_{}",
                c1p, c2p, p
            )));
        }
        Some(MinimalPolyFactorization {
            c1: c1p,
            c2: c2p,
            roots: (roots[0], roots[1]),
        })
    } else {
        None
    };

    Ok(SubfieldReport {
        p,
        m,
        // either p fails to divide gcd(numerators), contradicting
        // c3 ≡ c4 ≡ 0, or (p = 821) the minimal polynomial splits and a
        // would lie in F_p after all
        excluded: true,
        branch: SubfieldBranch::Generic {
            r_residue,
            r_forced: r_forced.to_string(),
            c_values: [
                cv[0].to_string(),
                cv[1].to_string(),
                cv[2].to_string(),
                cv[3].to_string(),
            ],
            numerator_gcd,
            gcd_factorization,
            p_divides_gcd,
            minimal_poly,
        },
    })
}

/// The field-level symmetric-sum targets implied by the trace conditions:
/// `Σ_{i<j} a^{p^i+p^j} = 7/24`, `Σ_{i<j<k} = -41/240`,
/// `Σ_{i<j<k<l} = 8879/88704`, as residues mod p where the denominator
/// permits (88704 = 2^7·3²·7·11 knocks out the third for p ∈ {7, 11}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetricTargets {
    pub pair_sum: Option<u64>,
    pub triple_sum: Option<u64>,
    pub quad_sum: Option<u64>,
}

pub fn symmetric_targets(p: u64) -> Result<SymmetricTargets> {
    if p < 7 {
        return Err(Error::PrimeTooSmall { got: p, min: 7 });
    }
    let reduce = |num: i64, den: u64| -> Option<u64> {
        if den.is_multiple_of(p) {
            None
        } else {
            let n = num.rem_euclid(p as i64) as u64;
            Some(n * mod_inv(den % p, p) % p)
        }
    };
    Ok(SymmetricTargets {
        pair_sum: reduce(7, 24),
        triple_sum: reduce(-41, 240),
        quad_sum: reduce(8879, 88704),
    })
}
