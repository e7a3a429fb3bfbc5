//! Exact arithmetic in `F_p` and `F_{p^m}`.
//!
//! Elements are coefficient vectors in the power basis of the modulus root
//! (low degree first). A [`FieldSpec`] owns the modulus, a fixed generator of
//! the multiplicative group, and lazily built discrete-log and trace tables
//! that turn the inner loops of an exhaustive search into pure lookups.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Tables above this size are never built; operations fall back to direct
/// computation and `dlog` reports the cap.
pub const TABLE_CAP: u64 = 1 << 24;

/// An element of `F_{p^m}`: `m` coordinates in `[0, p)`, low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FFElem {
    coeffs: Vec<u64>,
}

impl FFElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Precomputed lookup tables for a field with `q <= TABLE_CAP`.
///
/// Indices are mixed-radix encodings of coefficient vectors
/// (`index = Σ coeffs[i] p^i`), so index 0 is the zero element.
#[derive(Debug)]
pub struct Tables {
    /// exponent k -> index of generator^k, length q-1
    pub antilog: Vec<u32>,
    /// element index -> exponent, with u32::MAX at index 0
    pub log: Vec<u32>,
    /// element index -> trace in [0, p)
    pub trace: Vec<u32>,
}

/// A concrete `F_{p^m}` with a validated modulus and generator.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    generator: FFElem,
    tables: OnceLock<Option<Tables>>,
}

/// On-disk form used by the CLI and test fixtures:
/// `{"p": .., "m": .., "modulus": [c0, .., cm]}` with coefficients low
/// degree first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSpecFile {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Construct a field, validating everything up front. With `modulus = None`
/// the lexicographically smallest monic irreducible of degree `m` is chosen
/// (coefficients compared low degree first); for `m = 1` the modulus is
/// `x - g` for the smallest primitive root `g`, so the basis root generates.
pub fn make_field(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
    FieldSpec::new(p, m, modulus)
}

impl FieldSpec {
    pub fn new(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if m == 0 {
            return Err(Error::BadModulus {
                expected: 1,
                got: 0,
            });
        }
        let modulus = match modulus {
            Some(mv) => {
                if mv.len() != m + 1 || mv[m] != 1 {
                    return Err(Error::BadModulus {
                        expected: m,
                        got: mv.len().saturating_sub(1),
                    });
                }
                if let Some(&bad) = mv.iter().find(|&&c| c >= p) {
                    return Err(Error::CoefficientOutOfRange { value: bad, p });
                }
                if let Some(d) = reducible_factor_degree(p, &mv) {
                    return Err(Error::ReducibleModulus { factor_degree: d });
                }
                mv
            }
            None => default_modulus(p, m),
        };
        let mut fs = FieldSpec {
            p,
            m,
            modulus,
            generator: FFElem {
                coeffs: vec![0; m],
            },
            tables: OnceLock::new(),
        };
        fs.generator = fs.find_generator()?;
        Ok(fs)
    }

    pub fn from_file(file: &FieldSpecFile) -> Result<FieldSpec> {
        FieldSpec::new(file.p, file.m, Some(file.modulus.clone()))
    }

    pub fn to_file(&self) -> FieldSpecFile {
        FieldSpecFile {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &FFElem {
        &self.generator
    }

    pub fn zero(&self) -> FFElem {
        FFElem {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FFElem {
        self.scalar(1)
    }

    /// Embed a scalar from `F_p`.
    pub fn scalar(&self, c: u64) -> FFElem {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c % self.p;
        FFElem { coeffs }
    }

    /// The basis root β of the modulus (the degree-1 monomial for `m >= 2`).
    pub fn beta(&self) -> FFElem {
        if self.m == 1 {
            // modulus is x - g: the root is g itself
            self.scalar(self.p - self.modulus[0])
        } else {
            let mut coeffs = vec![0; self.m];
            coeffs[1] = 1;
            FFElem { coeffs }
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FFElem> {
        if coeffs.len() != self.m {
            return Err(Error::BadElementLength {
                got: coeffs.len(),
                expected: self.m,
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::CoefficientOutOfRange { value: bad, p: self.p });
        }
        Ok(FFElem {
            coeffs: coeffs.to_vec(),
        })
    }

    /// Mixed-radix index of an element: `Σ coeffs[i] p^i`.
    pub fn index_of(&self, a: &FFElem) -> u64 {
        let mut idx = 0;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn element_from_index(&self, mut idx: u64) -> FFElem {
        let mut coeffs = vec![0; self.m];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        FFElem { coeffs }
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FFElem { coeffs }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FFElem { coeffs }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FFElem { coeffs }
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let m = self.m;
        let p = self.p;
        let mut prod = vec![0u64; 2 * m];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        // reduce by the monic modulus, high degree down
        for d in (m..2 * m).rev() {
            let c = prod[d];
            if c != 0 {
                prod[d] = 0;
                for i in 0..m {
                    prod[d - m + i] = (prod[d - m + i] + (p - self.modulus[i]) % p * c) % p;
                }
            }
        }
        prod.truncate(m);
        FFElem { coeffs: prod }
    }

    pub fn pow(&self, a: &FFElem, mut e: u64) -> FFElem {
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

    /// Multiplicative inverse. Errors on zero; use [`FieldSpec::inv_map`]
    /// for the `x^{q-2}` convention that sends 0 to 0.
    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    /// `x -> x^{q-2}`: the inversion map extended by 0 -> 0.
    pub fn inv_map(&self, a: &FFElem) -> FFElem {
        self.pow(a, self.q() - 2)
    }

    /// Absolute trace `Tr^m_1(a) = a + a^p + ... + a^{p^{m-1}}` as a residue
    /// mod p.
    pub fn trace(&self, a: &FFElem) -> u64 {
        let mut sum = self.zero();
        let mut x = a.clone();
        for _ in 0..self.m {
            sum = self.add(&sum, &x);
            x = self.pow(&x, self.p);
        }
        debug_assert!(sum.coeffs[1..].iter().all(|&c| c == 0));
        sum.coeffs[0]
    }

    /// `(Tr(a), Tr(a^2), ..., Tr(a^kmax))`.
    pub fn power_traces(&self, a: &FFElem, kmax: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(kmax);
        let mut x = self.one();
        for _ in 0..kmax {
            x = self.mul(&x, a);
            out.push(self.trace_fast(&x));
        }
        out
    }

    /// Trace via the table when available.
    pub fn trace_fast(&self, a: &FFElem) -> u64 {
        match self.tables() {
            Some(t) => t.trace[self.index_of(a) as usize] as u64,
            None => self.trace(a),
        }
    }

    /// Discrete log base the field generator. Requires tables.
    pub fn dlog(&self, a: &FFElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroDlog);
        }
        let t = self.tables().ok_or(Error::TablesUnavailable {
            q: self.q(),
            cap: TABLE_CAP,
        })?;
        Ok(t.log[self.index_of(a) as usize] as u64)
    }

    /// The lazily built tables, or `None` above the cap.
    pub fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                if self.q() > TABLE_CAP {
                    None
                } else {
                    Some(self.build_tables())
                }
            })
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let q = self.q() as usize;
        let p = self.p;
        let m = self.m;
        // traces of the power basis; trace is F_p-linear
        let mut basis_traces = vec![0u64; m];
        for (i, bt) in basis_traces.iter_mut().enumerate() {
            let mut coeffs = vec![0; m];
            coeffs[i] = 1;
            *bt = self.trace(&FFElem { coeffs });
        }
        let mut trace = vec![0u32; q];
        for (idx, tr) in trace.iter_mut().enumerate() {
            let mut rem = idx as u64;
            let mut acc = 0u64;
            for &bt in &basis_traces {
                acc += (rem % p) * bt;
                rem /= p;
            }
            *tr = (acc % p) as u32;
        }
        let mut antilog = vec![0u32; q - 1];
        let mut log = vec![u32::MAX; q];
        let mut x = self.one();
        for (k, slot) in antilog.iter_mut().enumerate() {
            let idx = self.index_of(&x) as u32;
            *slot = idx;
            log[idx as usize] = k as u32;
            x = self.mul(&x, &self.generator);
        }
        Tables {
            antilog,
            log,
            trace,
        }
    }

    /// Multiplicative order check: does `a` generate `F_q^*`?
    pub fn is_generator(&self, a: &FFElem) -> bool {
        if a.is_zero() {
            return false;
        }
        let order = self.q() - 1;
        factorize(order)
            .iter()
            .all(|&f| self.pow(a, order / f) != self.one())
    }

    fn find_generator(&self) -> Result<FFElem> {
        // smallest element in basis order (mixed-radix index) that generates;
        // for m >= 2 the constants can never generate, so β is tried first
        // among the non-constants.
        for idx in 1..self.q() {
            let cand = self.element_from_index(idx);
            if self.is_generator(&cand) {
                return Ok(cand);
            }
        }
        Err(Error::Internal("no generator found".into()))
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.q()).map(move |i| self.element_from_index(i))
    }
}

/// Degree of a nontrivial monic factor, or `None` when irreducible.
/// Trial division by every monic polynomial of degree `<= deg/2`.
fn reducible_factor_degree(p: u64, f: &[u64]) -> Option<usize> {
    let deg = f.len() - 1;
    if deg == 1 {
        return None;
    }
    for d in 1..=deg / 2 {
        let mut div = vec![0u64; d + 1];
        div[d] = 1;
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut rem = idx;
            for c in div.iter_mut().take(d) {
                *c = rem % p;
                rem /= p;
            }
            if poly_divides(p, &div, f) {
                return Some(d);
            }
        }
    }
    None
}

/// Does monic `g` divide `f` over `F_p`?
fn poly_divides(p: u64, g: &[u64], f: &[u64]) -> bool {
    let dg = g.len() - 1;
    let mut r: Vec<u64> = f.to_vec();
    while r.len() > dg {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - gc) % p * lead) % p;
            }
        }
        r.pop();
        while r.len() > dg && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    r.iter().all(|&c| c == 0)
}

fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        // x - g for the smallest primitive root g
        let g = (2..p)
            .find(|&g| {
                factorize(p - 1)
                    .iter()
                    .all(|&f| mod_pow(g, (p - 1) / f, p) != 1)
            })
            .expect("odd prime has a primitive root");
        return vec![p - g, 1];
    }
    // lexicographically smallest (low-degree-first) monic irreducible
    let count = p.pow(m as u32);
    for idx in 0..count {
        let mut cand = vec![0u64; m + 1];
        cand[m] = 1;
        let mut rem = idx;
        for c in cand.iter_mut().take(m) {
            *c = rem % p;
            rem /= p;
        }
        if reducible_factor_degree(p, &cand).is_none() {
            return cand;
        }
    }
    unreachable!("irreducibles of every degree exist")
}

/// `base^e mod modulus` by square-and-multiply.
pub fn mod_pow(mut base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut result = 1u128;
    let mut b = (base % modulus) as u128;
    let md = modulus as u128;
    base %= modulus;
    let _ = base;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % md;
        }
        b = b * b % md;
        e >>= 1;
    }
    result as u64
}

/// Modular inverse of a unit mod `n` (extended Euclid). Panics on
/// non-units.
pub fn mod_inv(a: u64, n: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "not a unit: {} mod {}", a, n);
    ((t % n as i128 + n as i128) % n as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_field() -> FieldSpec {
        FieldSpec::new(11, 4, Some(vec![2, 10, 8, 0, 1])).unwrap()
    }

    #[test]
    fn rejects_non_prime_and_even() {
        assert!(matches!(FieldSpec::new(15, 2, None), Err(Error::NotOddPrime(15))));
        assert!(matches!(FieldSpec::new(2, 3, None), Err(Error::NotOddPrime(2))));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 - 4 = (x-2)(x+2) over F_17
        let err = FieldSpec::new(17, 2, Some(vec![13, 0, 1])).unwrap_err();
        assert_eq!(err, Error::ReducibleModulus { factor_degree: 1 });
    }

    #[test]
    fn paper_field_constructs_with_beta_as_generator() {
        let fs = paper_field();
        assert_eq!(fs.q(), 14641);
        // β itself is primitive here, so the basis-order search returns it
        assert_eq!(fs.generator(), &fs.beta());
    }

    #[test]
    fn prime_field_trace_is_identity() {
        let fs = FieldSpec::new(13, 1, None).unwrap();
        for c in 0..13 {
            assert_eq!(fs.trace(&fs.scalar(c)), c);
        }
        // modulus is x - g for the generator
        let g = fs.p() - fs.modulus()[0];
        assert!(fs.is_generator(&fs.scalar(g)));
        assert_eq!(fs.generator(), &fs.scalar(2)); // 2 generates F_13^*
    }

    #[test]
    fn degree_two_default_modulus_is_irreducible_by_root_exhaustion() {
        let fs = FieldSpec::new(7, 2, None).unwrap();
        let md = fs.modulus();
        // no root in F_7
        for x in 0..7u64 {
            let v = (md[0] + md[1] * x + x * x) % 7;
            assert_ne!(v, 0, "root {} found", x);
        }
    }

    #[test]
    fn paper_power_traces() {
        let fs = paper_field();
        let a = fs.pow(&fs.beta(), 2092);
        assert_eq!(fs.trace(&a), 7);
        assert_eq!(fs.power_traces(&a, 4), vec![7, 4, 4, 8]);
    }

    #[test]
    fn trace_of_zero_powers() {
        let fs = FieldSpec::new(13, 3, None).unwrap();
        assert_eq!(fs.power_traces(&fs.zero(), 4), vec![0, 0, 0, 0]);
    }

    #[test]
    fn trace_of_embedded_scalar_is_m_times() {
        let fs = FieldSpec::new(11, 4, Some(vec![2, 10, 8, 0, 1])).unwrap();
        for c in 0..11 {
            assert_eq!(fs.trace(&fs.scalar(c)), 4 * c % 11);
        }
    }

    #[test]
    fn trace_matches_repeated_squaring_oracle() {
        let fs = FieldSpec::new(13, 2, None).unwrap();
        for idx in [1u64, 5, 17, 29, 100, 168] {
            let a = fs.element_from_index(idx);
            // independent oracle: a + a^13 by direct powering
            let frob = fs.pow(&a, 13);
            let s = fs.add(&a, &frob);
            assert!(s.coeffs()[1..].iter().all(|&c| c == 0));
            assert_eq!(fs.trace(&a), s.coeffs()[0]);
        }
    }

    #[test]
    fn power_traces_match_naive_loop() {
        let fs = FieldSpec::new(13, 3, None).unwrap();
        let a = fs.element_from_index(1234 % fs.q());
        let traces = fs.power_traces(&a, 5);
        let mut x = fs.one();
        for t in traces {
            x = fs.mul(&x, &a);
            assert_eq!(fs.trace(&x), t);
        }
    }

    #[test]
    fn inv_and_dlog() {
        let fs = paper_field();
        assert_eq!(fs.inv(&fs.one()).unwrap(), fs.one());
        assert!(fs.inv(&fs.zero()).is_err());
        assert!(fs.dlog(&fs.zero()).is_err());
        let a = fs.pow(&fs.beta(), 2092);
        assert_eq!(fs.dlog(&a).unwrap(), 2092);
        assert_eq!(fs.inv_map(&fs.zero()), fs.zero());
    }

    #[test]
    fn mul_inv_identity_on_random_nonzero() {
        let fs = FieldSpec::new(7, 3, None).unwrap();
        let mut idx = 1u64;
        for _ in 0..100 {
            idx = (idx * 31 + 17) % fs.q();
            if idx == 0 {
                idx = 1;
            }
            let x = fs.element_from_index(idx);
            assert_eq!(fs.mul(&x, &fs.inv(&x).unwrap()), fs.one());
        }
    }

    #[test]
    fn frobenius_trace_invariance_exhaustive() {
        let fs = FieldSpec::new(7, 3, None).unwrap();
        for a in fs.elements() {
            let ap = fs.pow(&a, 7);
            assert_eq!(fs.trace(&a), fs.trace(&ap));
        }
    }

    #[test]
    fn trace_linearity_and_fiber_sizes() {
        let fs = FieldSpec::new(7, 2, None).unwrap();
        let p = fs.p();
        let mut fibers = vec![0u64; p as usize];
        for a in fs.elements() {
            fibers[fs.trace(&a) as usize] += 1;
            for b in [fs.element_from_index(3), fs.element_from_index(11)] {
                assert_eq!(
                    fs.trace(&fs.add(&a, &b)),
                    (fs.trace(&a) + fs.trace(&b)) % p
                );
            }
            for c in 0..p {
                let ca = fs.mul(&fs.scalar(c), &a);
                assert_eq!(fs.trace(&ca), c * fs.trace(&a) % p);
            }
        }
        assert!(fibers.iter().all(|&n| n == fs.q() / p));
    }

    #[test]
    fn dlog_pow_roundtrip() {
        let fs = FieldSpec::new(13, 2, None).unwrap();
        for k in 0..fs.q() - 1 {
            let x = fs.pow(fs.generator(), k);
            assert_eq!(fs.dlog(&x).unwrap(), k);
        }
    }

    #[test]
    fn table_trace_agrees_with_power_sum() {
        let fs = FieldSpec::new(11, 2, None).unwrap();
        let t = fs.tables().unwrap();
        for a in fs.elements() {
            assert_eq!(t.trace[fs.index_of(&a) as usize] as u64, fs.trace(&a));
        }
    }

    #[test]
    fn field_file_roundtrip() {
        let fs = paper_field();
        let json = serde_json::to_string(&fs.to_file()).unwrap();
        let file: FieldSpecFile = serde_json::from_str(&json).unwrap();
        let fs2 = FieldSpec::from_file(&file).unwrap();
        assert_eq!(fs2.modulus(), fs.modulus());
        assert_eq!(fs2.generator(), fs.generator());
    }
}
