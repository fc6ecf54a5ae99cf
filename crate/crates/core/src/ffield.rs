//! Prime fields `F_p` and extensions `F_{p^k} = F_p[t]/(m(t))`.
//!
//! A [`FieldCtx`] is cheap to clone and immutable. Elements ([`Fel`]) are
//! plain `Copy` values that carry a tag identifying the field they belong to;
//! all arithmetic goes through the context, which checks the tag.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_EXT: usize = 24;

/// Characteristic must stay below this so products of residues fit in `u64`.
const MAX_CHAR: u64 = 1 << 31;

const IRREDUCIBLE_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic {0} is too small (need p >= 5)")]
    SmallCharacteristic(u64),
    #[error("characteristic {0} is too large (need p < 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree {0} outside 1..={MAX_EXT}")]
    BadDegree(usize),
    #[error("no irreducible polynomial of degree {k} over F_{p} found within the retry bound")]
    IrreducibleSearchExhausted { p: u64, k: usize },
    #[error("modulus is not monic irreducible")]
    ReducibleModulus,
    #[error("field order p^k exceeds 2^126")]
    OrderTooLarge,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    ContextMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

/// An element of some finite field; meaningful only together with its [`FieldCtx`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fel {
    tag: u32,
    c: [u32; MAX_EXT],
}

impl Fel {
    /// Residues in `[0, p)`, low degree first. Only the first `k` are meaningful.
    pub fn coeffs(&self) -> &[u32; MAX_EXT] {
        &self.c
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }
}

impl fmt::Debug for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).unwrap_or(0);
        write!(f, "Fel{:?}", &self.c[..=last])
    }
}

struct Inner {
    p: u64,
    k: usize,
    /// Monic modulus, low degree first, length `k + 1`. `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    tag: u32,
    order: u128,
}

#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for FieldCtx {}

impl Hash for FieldCtx {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.k)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn fnv_tag(p: u64, modulus: &[u64]) -> u32 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    (h ^ (h >> 32)) as u32
}

fn check_char(p: u64) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if p < 5 {
        return Err(FieldError::SmallCharacteristic(p));
    }
    if p >= MAX_CHAR {
        return Err(FieldError::CharacteristicTooLarge(p));
    }
    Ok(())
}

fn checked_order(p: u64, k: usize) -> Result<u128, FieldError> {
    let mut q: u128 = 1;
    for _ in 0..k {
        q = q
            .checked_mul(u128::from(p))
            .filter(|&q| q < (1 << 126))
            .ok_or(FieldError::OrderTooLarge)?;
    }
    Ok(q)
}

impl FieldCtx {
    /// Builds `F_p` (k = 1) or `F_{p^k}` with a monic irreducible modulus chosen
    /// deterministically from `seed`.
    pub fn make(p: u64, k: usize, seed: u64) -> Result<Self, FieldError> {
        check_char(p)?;
        if k == 0 || k > MAX_EXT {
            return Err(FieldError::BadDegree(k));
        }
        if k == 1 {
            return Self::from_parts(p, vec![0, 1]);
        }
        checked_order(p, k)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ (k as u64));
        for _ in 0..IRREDUCIBLE_ATTEMPTS {
            let mut m: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            m.push(1);
            if m[0] != 0 && fp_poly::is_irreducible(&m, p) {
                return Self::from_parts(p, m);
            }
        }
        Err(FieldError::IrreducibleSearchExhausted { p, k })
    }

    /// `F_p[t]/(modulus)`; the modulus must be monic and irreducible over `F_p`.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self, FieldError> {
        check_char(p)?;
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        let k = m.len().saturating_sub(1);
        if k == 0 || k > MAX_EXT {
            return Err(FieldError::BadDegree(k));
        }
        if m[k] != 1 || !fp_poly::is_irreducible(&m, p) {
            return Err(FieldError::ReducibleModulus);
        }
        if k == 1 {
            // every linear modulus presents the prime field itself
            return Self::from_parts(p, vec![0, 1]);
        }
        Self::from_parts(p, m)
    }

    fn from_parts(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        let k = modulus.len() - 1;
        let order = checked_order(p, k)?;
        let tag = fnv_tag(p, &modulus);
        Ok(FieldCtx(Arc::new(Inner {
            p,
            k,
            modulus,
            tag,
            order,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn owns(&self, a: &Fel) -> bool {
        a.tag == self.0.tag
    }

    fn blank(&self) -> Fel {
        Fel {
            tag: self.0.tag,
            c: [0; MAX_EXT],
        }
    }

    pub fn zero(&self) -> Fel {
        self.blank()
    }

    pub fn one(&self) -> Fel {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Fel {
        let mut a = self.blank();
        a.c[0] = (n % self.0.p) as u32;
        a
    }

    pub fn from_i64(&self, n: i64) -> Fel {
        let p = self.0.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Element with the given coefficient vector (reduced mod p, truncated to k).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fel {
        let mut a = self.blank();
        for (dst, &src) in a.c.iter_mut().zip(coeffs.iter().take(self.0.k)) {
            *dst = (src % self.0.p) as u32;
        }
        a
    }

    /// The class of `t` (a root of the modulus). For a prime field this is 0.
    pub fn generator(&self) -> Fel {
        if self.0.k == 1 {
            self.zero()
        } else {
            self.from_coeffs(&[0, 1])
        }
    }

    /// Enumerates the field: index in `0..order` read as base-p digits.
    pub fn from_index(&self, mut idx: u64) -> Fel {
        let mut a = self.blank();
        for i in 0..self.0.k {
            a.c[i] = (idx % self.0.p) as u32;
            idx /= self.0.p;
        }
        a
    }

    /// All elements in index order. Panics for fields with more than 2^64 elements.
    pub fn elements(&self) -> impl Iterator<Item = Fel> + '_ {
        let n = u64::try_from(self.0.order).expect("field too large to enumerate");
        (0..n).map(move |i| self.from_index(i))
    }

    /// The prime-field value of `a`, if `a` lies in `F_p`.
    pub fn as_prime(&self, a: &Fel) -> Option<u64> {
        if a.c[1..self.0.k].iter().all(|&x| x == 0) {
            Some(u64::from(a.c[0]))
        } else {
            None
        }
    }

    /// Maps an element of another field into this one. Only the prime subfield
    /// is embedded canonically, so `a` must come from `F_p` itself or be prime.
    pub fn embed(&self, from: &FieldCtx, a: &Fel) -> Result<Fel, FieldError> {
        if from.0.tag == self.0.tag && from == self {
            return Ok(*a);
        }
        if from.0.p != self.0.p {
            return Err(FieldError::ContextMismatch);
        }
        match from.as_prime(a) {
            Some(v) => Ok(self.from_u64(v)),
            None => Err(FieldError::ContextMismatch),
        }
    }

    pub fn is_zero(&self, a: &Fel) -> bool {
        a.c[..self.0.k].iter().all(|&x| x == 0)
    }

    pub fn is_one(&self, a: &Fel) -> bool {
        a.c[0] == 1 && a.c[1..self.0.k].iter().all(|&x| x == 0)
    }

    #[inline]
    fn check(&self, a: &Fel) {
        debug_assert_eq!(a.tag, self.0.tag, "field element from another context");
    }

    pub fn add(&self, a: &Fel, b: &Fel) -> Fel {
        self.check(a);
        self.check(b);
        let p = self.0.p as u32;
        let mut r = self.blank();
        for i in 0..self.0.k {
            let s = a.c[i] + b.c[i];
            r.c[i] = if s >= p { s - p } else { s };
        }
        r
    }

    pub fn sub(&self, a: &Fel, b: &Fel) -> Fel {
        self.check(a);
        self.check(b);
        let p = self.0.p as u32;
        let mut r = self.blank();
        for i in 0..self.0.k {
            r.c[i] = if a.c[i] >= b.c[i] {
                a.c[i] - b.c[i]
            } else {
                a.c[i] + p - b.c[i]
            };
        }
        r
    }

    pub fn neg(&self, a: &Fel) -> Fel {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Fel, b: &Fel) -> Fel {
        self.check(a);
        self.check(b);
        let p = self.0.p;
        let k = self.0.k;
        if k == 1 {
            let mut r = self.blank();
            r.c[0] = ((u64::from(a.c[0]) * u64::from(b.c[0])) % p) as u32;
            return r;
        }
        let mut prod = [0u64; 2 * MAX_EXT];
        for i in 0..k {
            let ai = u64::from(a.c[i]);
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + ai * u64::from(b.c[j])) % p;
            }
        }
        let m = &self.0.modulus;
        for d in (k..2 * k - 1).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            // t^k = -(m_0 + ... + m_{k-1} t^{k-1})
            for (j, &mj) in m.iter().enumerate().take(k) {
                if mj != 0 {
                    let idx = d - k + j;
                    prod[idx] = (prod[idx] + (p - mj) * lead) % p;
                }
            }
        }
        let mut r = self.blank();
        for i in 0..k {
            r.c[i] = prod[i] as u32;
        }
        r
    }

    pub fn scale(&self, a: &Fel, n: u64) -> Fel {
        self.mul(a, &self.from_u64(n))
    }

    pub fn pow(&self, a: &Fel, e: u64) -> Fel {
        self.pow_u128(a, u128::from(e))
    }

    pub fn pow_u128(&self, a: &Fel, mut e: u128) -> Fel {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^times)`.
    pub fn frobenius(&self, a: &Fel, times: usize) -> Fel {
        let mut r = *a;
        for _ in 0..times % self.0.k {
            r = self.pow(&r, self.0.p);
        }
        r
    }

    /// Smallest `d | k` with `a^(p^d) = a`.
    pub fn min_degree(&self, a: &Fel) -> usize {
        let k = self.0.k;
        (1..=k)
            .filter(|d| k % d == 0)
            .find(|&d| self.frobenius(a, d) == *a)
            .unwrap_or(k)
    }

    pub fn inv(&self, a: &Fel) -> Result<Fel, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_u128(a, self.0.order - 2))
    }

    pub fn div(&self, a: &Fel, b: &Fel) -> Result<Fel, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked entry point: verifies both operands belong to this field.
    pub fn arith(&self, a: &Fel, b: &Fel, op: ArithOp) -> Result<Fel, FieldError> {
        if a.tag != self.0.tag || b.tag != self.0.tag {
            return Err(FieldError::ContextMismatch);
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow(e) => Ok(self.pow(a, e)),
        }
    }

    /// Euler's criterion.
    pub fn is_square(&self, a: &Fel) -> bool {
        self.is_zero(a) || self.is_one(&self.pow_u128(a, (self.0.order - 1) / 2))
    }

    pub fn display(&self, a: &Fel) -> String {
        if self.0.k == 1 {
            return a.c[0].to_string();
        }
        let mut parts = Vec::new();
        for i in 0..self.0.k {
            let c = a.c[i];
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// Dense polynomials over `F_p` (low degree first), just enough to test
/// irreducibility before a field context exists.
mod fp_poly {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p);
        while r.len() > dm {
            let d = r.len() - 1;
            let q = r[d] * lc_inv % p;
            for (j, &mj) in m.iter().enumerate() {
                let idx = d - dm + j;
                r[idx] = (r[idx] + (p - q) * mj % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// `x^(p^i) mod m` for i = 0..=k.
    fn frobenius_chain(m: &[u64], p: u64, k: usize) -> Vec<Vec<u64>> {
        let mut out = vec![rem(&[0, 1], m, p)];
        for _ in 0..k {
            let last = out.last().unwrap().clone();
            out.push(powmod(&last, p, m, p));
        }
        out
    }

    /// Monic `m` of degree k is irreducible iff `x^(p^k) = x (mod m)` and
    /// `gcd(x^(p^d) - x, m) = 1` for every proper divisor d of k.
    pub(super) fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        if k == 1 {
            return true;
        }
        let chain = frobenius_chain(m, p, k);
        let x = rem(&[0, 1], m, p);
        if chain[k] != x {
            return false;
        }
        for d in (1..k).filter(|d| k % d == 0) {
            let mut h = chain[d].clone();
            h.resize(h.len().max(2), 0);
            h[1] = (h[1] + p - 1) % p;
            trim(&mut h);
            let g = gcd(m, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f7 = FieldCtx::make(7, 1, 0).unwrap();
        assert_eq!(f7.order(), 7);
        let a = f7.from_u64(3);
        let b = f7.from_u64(5);
        assert_eq!(f7.mul(&a, &b), f7.one());
        assert_eq!(f7.inv(&a).unwrap(), b);
    }

    #[test]
    fn small_characteristic_rejected() {
        assert_eq!(
            FieldCtx::make(3, 1, 0).unwrap_err(),
            FieldError::SmallCharacteristic(3)
        );
        assert_eq!(FieldCtx::make(9, 1, 0).unwrap_err(), FieldError::NonPrime(9));
    }

    #[test]
    fn gaussian_integers_mod_7() {
        // -1 is a non-square mod 7: scan squares of 1..6
        let squares: Vec<u64> = (1..7u64).map(|x| x * x % 7).collect();
        assert!(!squares.contains(&6));
        let f49 = FieldCtx::with_modulus(7, &[1, 0, 1]).unwrap();
        let t = f49.generator();
        assert_eq!(f49.mul(&t, &t), f49.from_u64(6));
        assert_eq!(f49.order(), 49);
    }

    #[test]
    fn seeded_extension_is_reproducible_and_irreducible() {
        let a = FieldCtx::make(7, 2, 0).unwrap();
        let b = FieldCtx::make(7, 2, 0).unwrap();
        assert_eq!(a, b);
        let m = a.modulus();
        assert_eq!(m.len(), 3);
        // brute force: no root in F_7
        for x in 0..7u64 {
            assert_ne!((m[0] + m[1] * x + m[2] * x * x) % 7, 0);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 - 1 = (t-1)(t+1)
        assert_eq!(
            FieldCtx::with_modulus(7, &[6, 0, 1]).unwrap_err(),
            FieldError::ReducibleModulus
        );
    }

    #[test]
    fn context_mismatch_and_zero_division() {
        let f7 = FieldCtx::make(7, 1, 0).unwrap();
        let f11 = FieldCtx::make(11, 1, 0).unwrap();
        let a = f7.from_u64(2);
        let b = f11.from_u64(2);
        assert_eq!(
            f7.arith(&a, &b, ArithOp::Add).unwrap_err(),
            FieldError::ContextMismatch
        );
        assert_eq!(
            f7.arith(&a, &f7.zero(), ArithOp::Div).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn inverses_exhaustive_small_fields() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            for k in 1..=2 {
                let f = FieldCtx::make(p, k, 1).unwrap();
                for a in f.elements().skip(1) {
                    let ai = f.inv(&a).unwrap();
                    assert!(f.is_one(&f.mul(&a, &ai)), "p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_everything() {
        let f = FieldCtx::make(5, 3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow_u128(&a, f.order()), a);
            assert_eq!(f.frobenius(&a, 3), a);
        }
        let f13 = FieldCtx::make(13, 1, 0).unwrap();
        for a in f13.elements() {
            assert_eq!(f13.pow(&a, 13), a);
        }
    }

    #[test]
    fn min_degree_detects_subfield() {
        let f = FieldCtx::make(7, 4, 0).unwrap();
        assert_eq!(f.min_degree(&f.from_u64(3)), 1);
        assert_eq!(f.min_degree(&f.generator()), 4);
        let g = f.generator();
        // g^(1+p^2) is the norm to F_{p^2}
        let n = f.mul(&g, &f.frobenius(&g, 2));
        assert!(f.min_degree(&n) <= 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn field_axioms(k in 1usize..5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
                let f = FieldCtx::make(7, k, 1).unwrap();
                let q = f.order() as u64;
                let (a, b, c) = (f.from_index(a % q), f.from_index(b % q), f.from_index(c % q));
                prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
                if !f.is_zero(&b) {
                    prop_assert_eq!(f.mul(&f.div(&a, &b).unwrap(), &b), a);
                }
            }

            #[test]
            fn frobenius_is_a_ring_map_of_order_k(k in 1usize..7, a in any::<u64>(), b in any::<u64>()) {
                let f = FieldCtx::make(5, k, 0).unwrap();
                let q = f.order() as u64;
                let (a, b) = (f.from_index(a % q), f.from_index(b % q));
                prop_assert_eq!(f.frobenius(&f.add(&a, &b), 1), f.add(&f.frobenius(&a, 1), &f.frobenius(&b, 1)));
                prop_assert_eq!(f.frobenius(&f.mul(&a, &b), 1), f.mul(&f.frobenius(&a, 1), &f.frobenius(&b, 1)));
                prop_assert_eq!(f.frobenius(&a, 1), f.pow(&a, 5));
                prop_assert_eq!(f.frobenius(&a, k), a);
                prop_assert_eq!(k % f.min_degree(&a), 0);
            }
        }
    }
}
