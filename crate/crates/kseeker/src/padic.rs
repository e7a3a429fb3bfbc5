//! Truncated exact arithmetic in the ramified extension
//! `Z_p[π]/(π^{p-1} + p)`, Teichmüller lifts in the unramified extension,
//! and π-adic digit expansions.
//!
//! A [`RamifiedElem`] stores `p-1` coordinates mod `p^K` over the basis
//! `1, π, ..., π^{p-2}` with the reduction `π^{p-1} -> -p`; every operation
//! is faithful mod `π^N` for `N = K(p-1)`. Digit expansions use Teichmüller
//! digits (fixed points of `x -> x^p` mod `p^K`), which are uniquely
//! determined by their residue mod p.

use serde::Serialize;

use crate::fields::{is_prime, mod_inv, mod_pow, FFElem, FieldSpec};
use crate::{Error, Result};

/// Truncated element of `Z_p[π]/(π^{p-1} + p)` at precision `(π^{K(p-1)}, p^K)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamifiedElem {
    p: u64,
    #[serde(rename = "K")]
    k: u32,
    #[serde(skip)]
    pk: u64,
    coeffs: Vec<u64>,
}

/// Teichmüller digit sequence `a_0, a_1, ...` of a ramified element.
/// Digits satisfy `d^p = d` in `Z/p^K`; for `K = 1` they are plain
/// residues. Serializes as the bare digit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    pub p: u64,
    pub k: u32,
    pub digits: Vec<u64>,
}

impl Serialize for DigitExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.digits.iter())
    }
}

impl DigitExpansion {
    pub fn digits_mod_p(&self) -> Vec<u64> {
        self.digits.iter().map(|&d| d % self.p).collect()
    }

    /// `Σ d_i π^i` at the stored precision.
    pub fn reconstruct(&self) -> RamifiedElem {
        let mut acc = RamifiedElem::zero(self.p, self.k);
        for (i, &d) in self.digits.iter().enumerate() {
            if d != 0 {
                acc = acc.add(&RamifiedElem::pi_power(self.p, self.k, i as u32).scalar_mul(d));
            }
        }
        acc
    }
}

/// The multiplicative Teichmüller lift of a residue: the unique fixed point
/// of `x -> x^p` in `Z/p^K` congruent to `u` mod p.
pub fn teichmuller_scalar(p: u64, u: u64, k: u32) -> u64 {
    let pk = p.pow(k);
    let mut x = u % pk;
    for _ in 0..=k {
        let next = mod_pow(x, p, pk);
        if next == x {
            break;
        }
        x = next;
    }
    debug_assert_eq!(mod_pow(x, p, pk), x);
    x
}

impl RamifiedElem {
    pub fn zero(p: u64, k: u32) -> RamifiedElem {
        RamifiedElem {
            p,
            k,
            pk: p.pow(k),
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn one(p: u64, k: u32) -> RamifiedElem {
        RamifiedElem::scalar(p, k, 1)
    }

    pub fn scalar(p: u64, k: u32, c: u64) -> RamifiedElem {
        let mut e = RamifiedElem::zero(p, k);
        e.coeffs[0] = c % e.pk;
        e
    }

    /// `π^j` with the `π^{p-1} = -p` wrap applied.
    pub fn pi_power(p: u64, k: u32, j: u32) -> RamifiedElem {
        let mut e = RamifiedElem::zero(p, k);
        let wraps = j / (p as u32 - 1);
        let pos = (j % (p as u32 - 1)) as usize;
        let mut c = 1u64;
        for _ in 0..wraps {
            c = (c as u128 * (e.pk - p % e.pk) as u128 % e.pk as u128) as u64;
        }
        e.coeffs[pos] = c;
        e
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The p-adic precision exponent K.
    pub fn precision(&self) -> u32 {
        self.k
    }

    /// π-adic precision `N = K(p-1)` of the representation.
    pub fn pi_precision(&self) -> u32 {
        self.k * (self.p as u32 - 1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn assert_compat(&self, other: &RamifiedElem) {
        assert_eq!(self.p, other.p, "mixed primes");
        assert_eq!(self.k, other.k, "mixed precisions");
    }

    pub fn add(&self, other: &RamifiedElem) -> RamifiedElem {
        self.assert_compat(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % self.pk)
            .collect();
        RamifiedElem {
            coeffs,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &RamifiedElem) -> RamifiedElem {
        self.assert_compat(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + self.pk - b) % self.pk)
            .collect();
        RamifiedElem {
            coeffs,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> RamifiedElem {
        let coeffs = self.coeffs.iter().map(|&a| (self.pk - a) % self.pk).collect();
        RamifiedElem {
            coeffs,
            ..self.clone()
        }
    }

    pub fn scalar_mul(&self, c: u64) -> RamifiedElem {
        let c = (c % self.pk) as u128;
        let pk = self.pk as u128;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| (a as u128 * c % pk) as u64)
            .collect();
        RamifiedElem {
            coeffs,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &RamifiedElem) -> RamifiedElem {
        self.assert_compat(other);
        let d = (self.p - 1) as usize;
        let pk = self.pk as u128;
        let minus_p = (self.pk - self.p % self.pk) as u128;
        let mut acc = vec![0u128; d];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let v = a as u128 * b as u128 % pk;
                let e = i + j;
                if e < d {
                    acc[e] = (acc[e] + v) % pk;
                } else {
                    acc[e - d] = (acc[e - d] + v * minus_p) % pk;
                }
            }
        }
        RamifiedElem {
            coeffs: acc.into_iter().map(|v| v as u64).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, mut e: u64) -> RamifiedElem {
        let mut result = RamifiedElem::one(self.p, self.k);
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

    /// Inverse of a unit (constant coordinate prime to p), by Newton
    /// iteration `x <- x(2 - ux)`.
    pub fn invert_unit(&self) -> Result<RamifiedElem> {
        if self.coeffs[0].is_multiple_of(self.p) {
            return Err(Error::NotAUnit);
        }
        let mut x = RamifiedElem::scalar(self.p, self.k, mod_inv(self.coeffs[0], self.pk));
        let one = RamifiedElem::one(self.p, self.k);
        let two = RamifiedElem::scalar(self.p, self.k, 2);
        for _ in 0..64 {
            let ux = self.mul(&x);
            if ux == one {
                return Ok(x);
            }
            x = x.mul(&two.sub(&ux));
        }
        Err(Error::Internal("unit inversion did not converge".into()))
    }

    /// The Galois action `σ_i` determined by `σ_i(ζ) = ζ^i`: multiplies the
    /// j-th π-coordinate by `ω(i)^j`. In particular `σ_{-1}(π) = -π`.
    pub fn sigma_apply(&self, i: i64) -> Result<RamifiedElem> {
        let p = self.p;
        let i = i.rem_euclid(p as i64) as u64;
        if i == 0 {
            return Err(Error::GaloisIndexZero);
        }
        let w = teichmuller_scalar(p, i, self.k);
        let pk = self.pk as u128;
        let mut factor = 1u128;
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut() {
            *c = (*c as u128 * factor % pk) as u64;
            factor = factor * w as u128 % pk;
        }
        Ok(RamifiedElem {
            coeffs,
            ..self.clone()
        })
    }

    /// Greedy extraction of the first `n` Teichmüller digits: take the digit
    /// congruent to the constant coordinate mod p, subtract, divide by π
    /// (using `π^{p-1} = -p` for the carry), repeat.
    pub fn digits(&self, n: usize) -> Result<DigitExpansion> {
        let max = self.pi_precision() as usize;
        if n > max {
            return Err(Error::PrecisionTooLarge {
                got: n as u32,
                max: max as u32,
            });
        }
        let p = self.p;
        let pk = self.pk;
        let d = (p - 1) as usize;
        let mut w = self.coeffs.clone();
        let mut digits = Vec::with_capacity(n);
        for _ in 0..n {
            let dig = teichmuller_scalar(p, w[0] % p, self.k);
            digits.push(dig);
            let diff = (w[0] + pk - dig) % pk; // ≡ 0 mod p
            debug_assert_eq!(diff % p, 0);
            let carry = (pk - diff / p) % pk; // -(c_0 - d)/p
            w.rotate_left(1);
            w[d - 1] = carry;
        }
        Ok(DigitExpansion {
            p,
            k: self.k,
            digits,
        })
    }

    /// Drop to a lower p-adic precision.
    pub fn truncate(&self, k: u32) -> RamifiedElem {
        assert!(k <= self.k);
        let pk = self.p.pow(k);
        RamifiedElem {
            p: self.p,
            k,
            pk,
            coeffs: self.coeffs.iter().map(|&c| c % pk).collect(),
        }
    }
}

fn precision_for(p: u64, n: u32) -> u32 {
    n.div_ceil(p as u32 - 1)
}

/// The π-adic expansion of the p-th root of unity normalized by
/// `ζ ≡ 1 + π mod π²`, solved digit by digit: each new coefficient is fixed
/// by forcing the next π-power of `z^p - 1` to vanish.
///
/// Supports `n ≤ 2(p-1)`; the returned element is faithful mod
/// `π^{K(p-1)} ⊇ π^n` with `K = ceil(n/(p-1))`.
pub fn zeta_expansion(p: u64, n: u32) -> Result<RamifiedElem> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if n > 2 * (p as u32 - 1) {
        return Err(Error::PrecisionTooLarge {
            got: n,
            max: 2 * (p as u32 - 1),
        });
    }
    let k = precision_for(p, n.max(1));
    let m = k * (p as u32 - 1); // solve to the full representation precision
    let kw = k + 1;
    let mut z = RamifiedElem::one(p, kw).add(&RamifiedElem::pi_power(p, kw, 1));
    for j in 2..m {
        let w = z.pow(p).sub(&RamifiedElem::one(p, kw));
        let dg = w.digits((p as usize - 1) + j as usize + 1)?;
        let d = dg.digits[(p as usize - 1) + j as usize] % p;
        if d != 0 {
            let t = teichmuller_scalar(p, d, kw);
            z = z.add(&RamifiedElem::pi_power(p, kw, j).scalar_mul(t));
        }
    }
    let check = z.pow(p).sub(&RamifiedElem::one(p, kw));
    if !check.digits(m as usize)?.digits.iter().all(|&d| d == 0) {
        return Err(Error::Internal("zeta solver failed to reach z^p = 1".into()));
    }
    Ok(z.truncate(k))
}

/// Exact truncated expansion of `1 - 2/(ζ^b + ζ^{-b})` for `b ≢ 0`.
pub fn special_value_expansion(p: u64, b: u64, n: u32) -> Result<RamifiedElem> {
    let b = b % p;
    if b == 0 {
        return Err(Error::ZeroResidue);
    }
    if n > 10 {
        return Err(Error::PrecisionTooLarge { got: n, max: 10 });
    }
    let k = precision_for(p, n.max(1));
    let z = zeta_expansion(p, k * (p as u32 - 1))?;
    let u = z.pow(b).add(&z.pow(p - b));
    let two_over = u.invert_unit()?.scalar_mul(2);
    Ok(RamifiedElem::one(p, k).sub(&two_over))
}

/// The unramified extension `Z_q = Z_p[y]/(h(y), p^K)` where `h` is the
/// exact integer lift of a field modulus. Hosts Teichmüller lifts of
/// `F_{p^m}` elements.
#[derive(Debug)]
pub struct UnramifiedRing {
    p: u64,
    m: usize,
    k: u32,
    pk: u64,
    modulus: Vec<u64>,
}

/// Element of an [`UnramifiedRing`]: `m` coordinates mod `p^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnramifiedElem {
    pub coeffs: Vec<u64>,
}

impl UnramifiedRing {
    pub fn new(fs: &FieldSpec, k: u32) -> UnramifiedRing {
        UnramifiedRing {
            p: fs.p(),
            m: fs.m(),
            k,
            pk: fs.p().pow(k),
            modulus: fs.modulus().to_vec(),
        }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn zero(&self) -> UnramifiedElem {
        UnramifiedElem {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> UnramifiedElem {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// Naive lift: the same coordinates read as integers mod `p^K`.
    pub fn lift(&self, a: &FFElem) -> UnramifiedElem {
        UnramifiedElem {
            coeffs: a.coeffs().to_vec(),
        }
    }

    pub fn add(&self, a: &UnramifiedElem, b: &UnramifiedElem) -> UnramifiedElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.pk)
            .collect();
        UnramifiedElem { coeffs }
    }

    pub fn mul(&self, a: &UnramifiedElem, b: &UnramifiedElem) -> UnramifiedElem {
        let m = self.m;
        let pk = self.pk as u128;
        let mut prod = vec![0u128; 2 * m];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u128 * bj as u128) % pk;
            }
        }
        for d in (m..2 * m).rev() {
            let c = prod[d];
            if c != 0 {
                prod[d] = 0;
                for i in 0..m {
                    let neg = (self.pk - self.modulus[i] % self.pk) as u128 % pk;
                    prod[d - m + i] = (prod[d - m + i] + c * neg) % pk;
                }
            }
        }
        prod.truncate(m);
        UnramifiedElem {
            coeffs: prod.into_iter().map(|v| v as u64).collect(),
        }
    }

    pub fn pow(&self, a: &UnramifiedElem, mut e: u64) -> UnramifiedElem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Teichmüller lift `ω(a)`: the fixed point of `x -> x^q` reached by
    /// Hensel iteration from the naive lift. At most K iterations.
    pub fn teichmuller(&self, a: &FFElem) -> UnramifiedElem {
        let mut x = self.lift(a);
        for _ in 0..=self.k {
            let next = self.pow(&x, self.q());
            if next == x {
                break;
            }
            x = next;
        }
        debug_assert_eq!(self.pow(&x, self.q()), x);
        x
    }

    pub fn as_scalar(&self, a: &UnramifiedElem) -> Option<u64> {
        if a.coeffs[1..].iter().all(|&c| c == 0) {
            Some(a.coeffs[0])
        } else {
            None
        }
    }
}

/// The lifted trace `Σ_{i<m} ω(a^kpow)^{p^i}`, a Galois-stable element of
/// `Z/p^K` congruent to `Tr(a^kpow)` mod p.
pub fn lifted_trace(fs: &FieldSpec, a: &FFElem, kpow: u32, k: u32) -> Result<u64> {
    let ring = UnramifiedRing::new(fs, k);
    let w = ring.teichmuller(&fs.pow(a, kpow as u64));
    let mut acc = w.clone();
    let mut t = w;
    for _ in 1..fs.m() {
        t = ring.pow(&t, fs.p());
        acc = ring.add(&acc, &t);
    }
    ring.as_scalar(&acc)
        .ok_or_else(|| Error::Internal("lifted trace is not Galois-stable".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    #[test]
    fn defining_relation_pi_times_pi_pm2() {
        for (p, k) in [(7u64, 2u32), (13, 1), (13, 2)] {
            let pi = RamifiedElem::pi_power(p, k, 1);
            let rest = RamifiedElem::pi_power(p, k, p as u32 - 2);
            let pk = p.pow(k);
            assert_eq!(pi.mul(&rest), RamifiedElem::scalar(p, k, pk - p));
        }
    }

    #[test]
    fn invert_unit_basics() {
        let one = RamifiedElem::one(13, 2);
        assert_eq!(one.invert_unit().unwrap(), one);
        let pi = RamifiedElem::pi_power(13, 2, 1);
        assert!(pi.invert_unit().is_err());
    }

    #[test]
    fn zeta_p37_digit_sequence() {
        let z = zeta_expansion(37, 9).unwrap();
        let dg = z.digits(9).unwrap().digits_mod_p();
        // (1, 1, -18, -6, 17, -4, -13, 14, 11) mod 37
        assert_eq!(dg, vec![1, 1, 19, 31, 17, 33, 24, 14, 11]);
    }

    #[test]
    fn zeta_inverse_factorial_law() {
        for p in [13u64, 17, 37] {
            let z = zeta_expansion(p, 9).unwrap();
            let dg = z.digits(9).unwrap().digits_mod_p();
            let mut fact = 1u64;
            for (i, &d) in dg.iter().enumerate() {
                if i > 1 {
                    fact = fact * i as u64 % p;
                }
                assert_eq!(d, mod_inv(fact, p), "digit {} at p = {}", i, p);
            }
        }
    }

    #[test]
    fn zeta_normalization_digits() {
        for p in [7u64, 11, 13, 23] {
            let z = zeta_expansion(p, 4).unwrap();
            let dg = z.digits(2).unwrap().digits_mod_p();
            assert_eq!(&dg, &[1, 1]);
        }
    }

    #[test]
    fn zeta_pth_power_is_one() {
        for p in [7u64, 11, 13, 37] {
            let n = if p == 7 { 12 } else { p as u32 - 1 };
            let z = zeta_expansion(p, n).unwrap();
            let w = z.pow(p).sub(&RamifiedElem::one(p, z.precision()));
            let dg = w.digits(n as usize).unwrap();
            assert!(dg.digits.iter().all(|&d| d == 0), "p = {}: {:?}", p, dg);
        }
    }

    #[test]
    fn zeta_times_zeta_inverse_is_one() {
        let p = 13u64;
        let z = zeta_expansion(p, 12).unwrap();
        let zinv = z.pow(p - 1);
        assert_eq!(z.mul(&zinv), RamifiedElem::one(p, 1));
    }

    #[test]
    fn special_value_b1_digit_positions() {
        for p in [13u64, 17, 37] {
            let e = special_value_expansion(p, 1, 10).unwrap();
            let dg = e.digits(10).unwrap().digits_mod_p();
            let expect = |num: i64, den: u64| {
                (num.rem_euclid(p as i64) as u64) * mod_inv(den % p, p) % p
            };
            assert_eq!(dg[0], 0);
            assert_eq!(dg[2], expect(1, 2));
            assert_eq!(dg[4], expect(-5, 24));
            assert_eq!(dg[6], expect(61, 720));
            assert_eq!(dg[8], expect(-277, 8064));
            for i in [1, 3, 5, 7, 9] {
                assert_eq!(dg[i], 0, "odd digit {} nonzero at p = {}", i, p);
            }
        }
    }

    #[test]
    fn special_value_general_b_leading_digit() {
        let p = 17u64;
        for b in 1..p {
            let e = special_value_expansion(p, b, 4).unwrap();
            let dg = e.digits(4).unwrap().digits_mod_p();
            assert_eq!(dg[2], b * b % p * mod_inv(2, p) % p, "b = {}", b);
        }
        assert!(special_value_expansion(17, 0, 4).is_err());
    }

    #[test]
    fn zeta_plus_inverse_digits() {
        let p = 19u64;
        let z = zeta_expansion(p, p as u32 - 1).unwrap();
        let u = z.add(&z.pow(p - 1));
        let dg = u.digits(10).unwrap().digits_mod_p();
        assert_eq!(dg[0], 2);
        assert_eq!(dg[2], 1);
        assert_eq!(dg[4], mod_inv(12, p));
        assert_eq!(dg[6], mod_inv(360 % p, p));
        assert_eq!(dg[8], mod_inv(20160 % p, p));
        for i in [1, 3, 5, 7, 9] {
            assert_eq!(dg[i], 0);
        }
    }

    #[test]
    fn teichmuller_scalar_fixed_points() {
        for (p, k) in [(13u64, 1u32), (13, 2), (7, 2)] {
            let pk = p.pow(k);
            assert_eq!(teichmuller_scalar(p, 0, k), 0);
            assert_eq!(teichmuller_scalar(p, 1, k), 1);
            assert_eq!(teichmuller_scalar(p, p - 1, k), pk - 1);
        }
        // p = 13, K = 2, u = 2: the fixed point of x -> x^13 mod 169,
        // a (p-1)-st root of unity
        let w = teichmuller_scalar(13, 2, 2);
        assert_eq!(w % 13, 2);
        assert_eq!(mod_pow(w, 13, 169), w);
        assert_eq!(mod_pow(w, 12, 169), 1);
    }

    #[test]
    fn teichmuller_multiplicative() {
        let (p, k) = (13u64, 2u32);
        let pk = p.pow(k);
        for u in 0..p {
            for v in 0..p {
                let lhs = teichmuller_scalar(p, u * v % p, k);
                let rhs = teichmuller_scalar(p, u, k) * teichmuller_scalar(p, v, k) % pk;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sigma_basics() {
        let p = 13u64;
        let z = zeta_expansion(p, 12).unwrap();
        assert_eq!(z.sigma_apply(1).unwrap(), z);
        let pi = RamifiedElem::pi_power(p, 1, 1);
        assert_eq!(pi.sigma_apply(-1).unwrap(), pi.neg());
        assert!(pi.sigma_apply(13).is_err());
    }

    #[test]
    fn sigma_on_zeta_is_powering() {
        let p = 13u64;
        let z = zeta_expansion(p, 12).unwrap();
        for b in 1..p {
            assert_eq!(z.sigma_apply(b as i64).unwrap(), z.pow(b), "b = {}", b);
        }
    }

    #[test]
    fn sigma_composition() {
        let p = 11u64;
        let e = zeta_expansion(p, 10).unwrap().pow(3);
        for i in 1..p {
            for j in 1..p {
                let lhs = e.sigma_apply(i as i64).unwrap().sigma_apply(j as i64).unwrap();
                let rhs = e.sigma_apply((i * j % p) as i64).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn digits_of_zero_and_k1_passthrough() {
        let z = RamifiedElem::zero(11, 1);
        assert!(z.digits(10).unwrap().digits.iter().all(|&d| d == 0));
        let mut e = RamifiedElem::zero(11, 1);
        e.coeffs = vec![3, 1, 4, 1, 5, 9, 2, 6, 5, 3];
        assert_eq!(e.digits(10).unwrap().digits, e.coeffs);
    }

    #[test]
    fn digit_roundtrip_p7_k2() {
        let (p, k) = (7u64, 2u32);
        let mut seed = 99u64;
        for _ in 0..50 {
            let mut e = RamifiedElem::zero(p, k);
            for c in e.coeffs.iter_mut() {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *c = seed % 49;
            }
            let dg = e.digits(12).unwrap();
            assert_eq!(dg.reconstruct(), e);
            let dg2 = dg.reconstruct().digits(12).unwrap();
            assert_eq!(dg2, dg);
        }
    }

    #[test]
    fn lifted_trace_properties() {
        let fs = make_field(13, 3, None).unwrap();
        // scalars: lifted trace = m * ω(a)
        for c in 0..13u64 {
            let lt = lifted_trace(&fs, &fs.scalar(c), 1, 2).unwrap();
            assert_eq!(lt, 3 * teichmuller_scalar(13, c, 2) % 169);
        }
        // K = 1 reduces to the ordinary trace
        for idx in [1u64, 100, 555, 2000] {
            let a = fs.element_from_index(idx % fs.q());
            assert_eq!(lifted_trace(&fs, &a, 1, 1).unwrap(), fs.trace(&a));
            assert_eq!(lifted_trace(&fs, &a, 3, 1).unwrap(), fs.power_traces(&a, 3)[2]);
        }
    }

    #[test]
    fn lifted_trace_matches_conjugate_sum() {
        let fs = make_field(13, 2, None).unwrap();
        let ring = UnramifiedRing::new(&fs, 2);
        for idx in [1u64, 7, 60, 121] {
            let a = fs.element_from_index(idx % fs.q());
            let w = ring.teichmuller(&a);
            let direct = ring.add(&w, &ring.pow(&w, 13));
            assert_eq!(
                ring.as_scalar(&direct).unwrap(),
                lifted_trace(&fs, &a, 1, 2).unwrap()
            );
        }
    }

    #[test]
    fn precision_guards() {
        assert!(zeta_expansion(13, 25).is_err());
        assert!(special_value_expansion(13, 1, 11).is_err());
        let e = RamifiedElem::zero(11, 1);
        assert!(e.digits(11).is_err());
    }
}
