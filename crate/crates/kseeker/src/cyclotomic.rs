//! Exact arithmetic in `Z[ζ_p]`, the carrier for exact Kloosterman values,
//! Walsh coefficients and the special values `1 - 2/(ζ^b + ζ^{-b})`.
//!
//! Elements are reduced coordinate vectors over the basis
//! `1, ζ, ..., ζ^{p-2}` modulo `Φ_p(x) = 1 + x + ... + x^{p-1}`, with
//! arbitrary-precision integer coefficients, so equality is coordinate-wise
//! and no modular shortcut ever enters the exact layer.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::fields::{is_prime, mod_pow};
use crate::{Error, Result};

/// An element of `Z[ζ_p]` in the canonical basis `1, ζ, ..., ζ^{p-2}`.
/// Serializes with the coefficients as decimal strings (they outgrow i64
/// in Walsh sums and unit inverses).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycInt {
    p: u64,
    #[serde(serialize_with = "serialize_bigints")]
    coeffs: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

pub(crate) fn serialize_bigint<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl CycInt {
    pub fn zero(p: u64) -> CycInt {
        CycInt {
            p,
            coeffs: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u64) -> CycInt {
        CycInt::scalar(p, BigInt::one())
    }

    pub fn scalar(p: u64, v: impl Into<BigInt>) -> CycInt {
        let mut e = CycInt::zero(p);
        e.coeffs[0] = v.into();
        e
    }

    /// `ζ^e`, reduced: for `e = p-1` this is `-(1 + ζ + ... + ζ^{p-2})`.
    pub fn zeta_pow(p: u64, e: u64) -> CycInt {
        let e = (e % p) as usize;
        let mut out = CycInt::zero(p);
        if e < (p - 1) as usize {
            out.coeffs[e] = BigInt::one();
        } else {
            for c in out.coeffs.iter_mut() {
                *c = -BigInt::one();
            }
        }
        out
    }

    /// `Σ_c counts[c] ζ^c` for a length-p exponent histogram.
    pub fn from_exponent_counts(p: u64, counts: &[u64]) -> Result<CycInt> {
        if counts.len() != p as usize {
            return Err(Error::BadCountsLength {
                got: counts.len(),
                expected: p as usize,
            });
        }
        let last = BigInt::from(counts[(p - 1) as usize]);
        let coeffs = counts[..(p - 1) as usize]
            .iter()
            .map(|&c| BigInt::from(c) - &last)
            .collect();
        Ok(CycInt { p, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Is this a rational integer (all non-constant coordinates zero)?
    pub fn as_scalar(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.p, other.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt { p: self.p, coeffs }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.p, other.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycInt { p: self.p, coeffs }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        // convolve in the redundant exponent space 0..p, then fold the
        // ζ^{p-1} coordinate back using Σ ζ^c = 0
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = (i + j) % p;
                acc[e] += a * b;
            }
        }
        let last = acc.pop().unwrap();
        for c in acc.iter_mut() {
            *c -= &last;
        }
        CycInt {
            p: self.p,
            coeffs: acc,
        }
    }

    pub fn mul_scalar(&self, v: &BigInt) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * v).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycInt {
        let mut result = CycInt::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// The Galois action `σ_i : ζ -> ζ^i` for `i` coprime to p. Negative
    /// `i` is reduced mod p, so `galois(e, -1)` is complex conjugation.
    pub fn galois(&self, i: i64) -> Result<CycInt> {
        let p = self.p;
        let i = i.rem_euclid(p as i64) as u64;
        if i == 0 {
            return Err(Error::GaloisIndexZero);
        }
        let mut acc = vec![BigInt::zero(); p as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[(e as u64 * i % p) as usize] += c;
            }
        }
        let last = acc.pop().unwrap();
        for c in acc.iter_mut() {
            *c -= &last;
        }
        Ok(CycInt {
            p: self.p,
            coeffs: acc,
        })
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> CycInt {
        self.galois(-1).expect("-1 is a unit mod p")
    }

    /// Inverse of a unit of `Z[ζ_p]`, via the adjugate: the product of all
    /// nontrivial Galois conjugates divided by the (rational integer) norm.
    /// Errors unless the norm is ±1.
    pub fn inverse(&self) -> Result<CycInt> {
        let mut adj = CycInt::one(self.p);
        for i in 2..self.p {
            adj = adj.mul(&self.galois(i as i64)?);
        }
        let norm = self.mul(&adj);
        let nv = norm
            .as_scalar()
            .ok_or_else(|| Error::Internal("norm is not rational".into()))?;
        if nv.is_one() {
            Ok(adj)
        } else if (-nv).is_one() {
            Ok(adj.neg())
        } else {
            Err(Error::NotAUnit)
        }
    }
}

/// Does `k` equal `1 - 2/(ζ^b + ζ^{-b})` exactly in `Q(ζ_p)`?
///
/// Tested without division as `(ζ^b + ζ^{-b})·(k - 1) + 2 = 0`, valid since
/// `ζ^b + ζ^{-b}` is a unit for `b ≢ 0`; for `b ≡ 0` the condition is
/// `k = 0` (the value `1 - 2/2`).
pub fn is_special_value(k: &CycInt, b: u64) -> bool {
    let p = k.p();
    let b = b % p;
    if b == 0 {
        return k.is_zero();
    }
    let u = CycInt::zeta_pow(p, b).add(&CycInt::zeta_pow(p, p - b));
    let km1 = k.sub(&CycInt::one(p));
    u.mul(&km1).add(&CycInt::scalar(p, 2)).is_zero()
}

/// Histogram fast path for [`is_special_value`] on a Kloosterman count
/// vector: expands `(ζ^b + ζ^{-b})(Σ N_c ζ^c - 1) + 2 = 0` into the
/// condition that all p redundant coordinates coincide. Integer-only.
pub fn special_hit_from_counts(p: u64, counts: &[u64], b: u64) -> bool {
    let b = b % p;
    let pu = p as usize;
    if b == 0 {
        let first = counts[0];
        return counts.iter().all(|&c| c == first);
    }
    let mut first = 0i64;
    for c in 0..pu {
        let cm = (c + pu - b as usize) % pu;
        let cp = (c + b as usize) % pu;
        let mut v = counts[cm] as i64 + counts[cp] as i64;
        if c == b as usize {
            v -= 1;
        }
        if c == (pu - b as usize) % pu {
            v -= 1;
        }
        if c == 0 {
            v += 2;
        }
        if c == 0 {
            first = v;
        } else if v != first {
            return false;
        }
    }
    true
}

/// Legendre symbol by Euler's criterion: `a^{(p-1)/2} mod p` mapped to
/// `{-1, 0, +1}`.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Result of the product congruence check
/// `Π_{i=1}^{(p-1)/2} (1 - 2/(ζ^i + ζ^{-i})) ≡ (-2/p)·p mod p²`.
#[derive(Debug, Clone, Serialize)]
pub struct ProductCheck {
    pub p: u64,
    /// the exact rational-integer product
    #[serde(serialize_with = "serialize_bigint")]
    pub product: BigInt,
    /// product reduced mod p²
    pub lhs_mod_p2: u64,
    /// `(-2/p)·p` reduced mod p²
    pub rhs_mod_p2: u64,
    pub legendre_minus_two: i32,
    pub congruent: bool,
}

/// Exact product of the (p-1)/2 special values, both sides mod p².
/// Refuses p ≤ 11 (outside the stated range); see
/// [`special_value_product_forced`] for a debug escape hatch.
pub fn special_value_product(p: u64) -> Result<ProductCheck> {
    if p < 13 {
        return Err(Error::OutsideStatedRange(p));
    }
    special_value_product_forced(p)
}

/// Same computation without the p ≥ 13 range guard.
pub fn special_value_product_forced(p: u64) -> Result<ProductCheck> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut prod = CycInt::one(p);
    for i in 1..=(p - 1) / 2 {
        let u = CycInt::zeta_pow(p, i).add(&CycInt::zeta_pow(p, p - i));
        let f = CycInt::one(p).sub(&u.inverse()?.mul_scalar(&BigInt::from(2)));
        prod = prod.mul(&f);
    }
    let product = prod
        .as_scalar()
        .ok_or_else(|| Error::Internal("special-value product is not rational".into()))?
        .clone();
    let p2 = BigInt::from(p * p);
    let lhs = ((&product % &p2) + &p2) % &p2;
    let lhs_mod_p2: u64 = lhs.try_into().expect("residue fits u64");
    let sym = legendre(-2, p);
    let rhs_mod_p2 = if sym >= 0 { sym as u64 * p } else { p * p - p };
    Ok(ProductCheck {
        p,
        product,
        lhs_mod_p2,
        rhs_mod_p2,
        legendre_minus_two: sym,
        congruent: lhs_mod_p2 == rhs_mod_p2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_counts_sum_to_zero() {
        let counts = vec![4u64; 7];
        assert!(CycInt::from_exponent_counts(7, &counts).unwrap().is_zero());
    }

    #[test]
    fn unit_count_vector_is_one() {
        let mut counts = vec![0u64; 7];
        counts[0] = 1;
        let e = CycInt::from_exponent_counts(7, &counts).unwrap();
        assert_eq!(e, CycInt::one(7));
    }

    #[test]
    fn count_vector_matches_term_by_term_sum() {
        // K_7(1) histogram: naive term-by-term symbolic summation over F_7
        let p = 7u64;
        let mut counts = vec![0u64; 7];
        counts[0] += 1; // x = 0
        for x in 1..p {
            let inv = mod_pow(x, p - 2, p);
            counts[((inv + x) % p) as usize] += 1;
        }
        let via_counts = CycInt::from_exponent_counts(p, &counts).unwrap();
        let mut direct = CycInt::one(p); // the x = 0 term is ζ^0
        for x in 1..p {
            let inv = mod_pow(x, p - 2, p);
            direct = direct.add(&CycInt::zeta_pow(p, (inv + x) % p));
        }
        assert_eq!(via_counts, direct);
    }

    #[test]
    fn wrong_count_length_rejected() {
        assert!(CycInt::from_exponent_counts(7, &[0; 6]).is_err());
    }

    #[test]
    fn galois_minus_one_is_top_exponent() {
        let p = 11;
        let z = CycInt::zeta_pow(p, 1);
        assert_eq!(z.galois(-1).unwrap(), CycInt::zeta_pow(p, p - 1));
    }

    #[test]
    fn galois_composition_exhaustive_p11() {
        let p = 11u64;
        // a fixed non-symmetric element
        let mut e = CycInt::zero(p);
        for (k, c) in e.coeffs.iter_mut().enumerate() {
            *c = BigInt::from((k * k + 3 * k + 1) as u64);
        }
        for i in 1..p {
            for j in 1..p {
                let lhs = e.galois(i as i64).unwrap().galois(j as i64).unwrap();
                let rhs = e.galois((i * j % p) as i64).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(e.galois(1).unwrap(), e);
        assert!(e.galois(11).is_err());
    }

    #[test]
    fn special_value_k_zero_b_zero() {
        assert!(is_special_value(&CycInt::zero(7), 0));
        assert!(!is_special_value(&CycInt::one(7), 0));
    }

    #[test]
    fn special_value_p3_is_three() {
        // ζ + ζ^{-1} = -1 at p=3 forces 1 - 2/(-1) = 3
        assert!(is_special_value(&CycInt::scalar(3, 3), 1));
        assert!(!is_special_value(&CycInt::scalar(3, 2), 1));
    }

    #[test]
    fn special_value_rescaling_symmetry() {
        // is_special_value(K, b) == is_special_value(galois(K, i), b·i)
        let p = 11u64;
        let mut k = CycInt::zero(p);
        for (idx, c) in k.coeffs.iter_mut().enumerate() {
            *c = BigInt::from((idx * 3 + 1) as u64);
        }
        for b in 1..p {
            for i in 1..p {
                assert_eq!(
                    is_special_value(&k, b),
                    is_special_value(&k.galois(i as i64).unwrap(), b * i % p)
                );
            }
        }
    }

    #[test]
    fn fast_hit_agrees_with_exact_test() {
        let p = 7u64;
        // exercise both a hit-shaped histogram and arbitrary ones
        let mut histograms: Vec<Vec<u64>> = vec![vec![1; 7], vec![3, 0, 0, 0, 0, 0, 0]];
        let mut seed = 1u64;
        for _ in 0..200 {
            let mut h = vec![0u64; 7];
            for slot in h.iter_mut() {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                *slot = seed >> 60;
            }
            histograms.push(h);
        }
        for h in &histograms {
            let k = CycInt::from_exponent_counts(p, h).unwrap();
            for b in 0..p {
                assert_eq!(
                    special_hit_from_counts(p, h, b),
                    is_special_value(&k, b),
                    "histogram {:?}, b = {}",
                    h,
                    b
                );
            }
        }
    }

    #[test]
    fn inverse_of_unit() {
        let p = 13u64;
        let u = CycInt::zeta_pow(p, 1).add(&CycInt::zeta_pow(p, p - 1));
        let inv = u.inverse().unwrap();
        assert_eq!(u.mul(&inv), CycInt::one(p));
        // a rational integer > 1 is not a unit
        assert!(CycInt::scalar(p, 5).inverse().is_err());
    }

    #[test]
    fn ring_axioms_sampled() {
        let p = 13u64;
        let mk = |s: u64| {
            let mut e = CycInt::zero(p);
            let mut x = s;
            for c in e.coeffs.iter_mut() {
                x = x.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                *c = BigInt::from((x >> 58) as i64 - 16);
            }
            e
        };
        for s in 0..20u64 {
            let (a, b, c) = (mk(s), mk(s + 100), mk(s + 200));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(
                a.galois(5).unwrap().mul(&b.galois(5).unwrap()),
                a.mul(&b).galois(5).unwrap()
            );
        }
    }

    #[test]
    fn legendre_matches_square_table() {
        for p in [13u64, 17] {
            let mut squares = vec![false; p as usize];
            for x in 1..p {
                squares[(x * x % p) as usize] = true;
            }
            for a in 0..p {
                let expect = if a == 0 {
                    0
                } else if squares[a as usize] {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a as i64, p), expect);
            }
        }
        assert_eq!(legendre(1, 23), 1);
        assert_eq!(legendre(0, 23), 0);
    }

    #[test]
    fn product_congruence_p13_and_p17() {
        let r = special_value_product(13).unwrap();
        assert!(r.congruent, "{:?}", r);
        assert_eq!(r.lhs_mod_p2, 156); // (-2/13) = -1, so -13 mod 169
        let r = special_value_product(17).unwrap();
        assert!(r.congruent);
        assert_eq!(r.lhs_mod_p2, 17); // (-2/17) = +1
    }

    #[test]
    fn product_refuses_small_p_unless_forced() {
        assert!(matches!(
            special_value_product(11),
            Err(Error::OutsideStatedRange(11))
        ));
        // forced variant still computes
        assert!(special_value_product_forced(11).is_ok());
    }
}
