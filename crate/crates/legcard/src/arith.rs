//! Exact arithmetic: small finite fields, the quadratic extension `Q(√q)`,
//! and Laurent polynomials over `Z`.
//!
//! Finite fields are realized through dense lookup tables, so all element
//! operations are branch-free table reads. Field elements are `u8` indices
//! encoding the coefficient vector of the element over the prime field in
//! base `p` (index `d_0 + d_1 p + … + d_{k-1} p^{k-1}` for the element
//! `d_0 + d_1 x + … + d_{k-1} x^{k-1}`). The modulus polynomial for each
//! extension field is fixed once and for all (see [`irreducible_poly`]) so
//! that element indices mean the same thing in every run.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Largest permitted field order. Lookup tables stay tiny below this bound.
pub const MAX_Q: u32 = 32;

/// Field element: index into an [`Fq`]'s tables. See the module docs for the
/// encoding. The zero element is always index `0` and the one element is
/// always index `1`.
pub type FqElem = u8;

/// Errors from finite-field construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {q} exceeds the supported bound {max}")]
    BoundExceeded { q: u32, max: u32 },
    #[error("invalid extension degree {0}")]
    BadDegree(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Fixed monic modulus polynomial for `F_{p^k}`, coefficients low to high
/// (length `k + 1`, leading coefficient 1). Only orders `≤ MAX_Q` appear.
fn irreducible_poly(p: u32, k: u32) -> Option<Vec<u32>> {
    Some(match (p, k) {
        (2, 2) => vec![1, 1, 1],          // x^2 + x + 1
        (2, 3) => vec![1, 1, 0, 1],       // x^3 + x + 1
        (2, 4) => vec![1, 1, 0, 0, 1],    // x^4 + x + 1
        (2, 5) => vec![1, 0, 1, 0, 0, 1], // x^5 + x^2 + 1
        (3, 2) => vec![2, 2, 1],          // x^2 + 2x + 2
        (3, 3) => vec![1, 2, 0, 1],       // x^3 + 2x + 1
        (5, 2) => vec![2, 4, 1],          // x^2 + 4x + 2
        _ => return None,
    })
}

/// A finite field `F_q`, `q = p^k ≤ MAX_Q`, with dense operation tables.
#[derive(Debug, Clone)]
pub struct Fq {
    p: u32,
    k: u32,
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Builds the field `F_{p^k}`. Fails if `p` is not prime, the degree is 0,
/// or `p^k` exceeds [`MAX_Q`].
pub fn fq_make(p: u32, k: u32) -> Result<Fq, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if k == 0 {
        return Err(ArithError::BadDegree(k));
    }
    let mut q: u64 = 1;
    for _ in 0..k {
        q *= p as u64;
        if q > MAX_Q as u64 {
            return Err(ArithError::BoundExceeded { q: q.min(u32::MAX as u64) as u32, max: MAX_Q });
        }
    }
    let q = q as u32;
    let modulus = if k == 1 {
        vec![0, 1] // irrelevant placeholder; arithmetic is mod p directly
    } else {
        irreducible_poly(p, k).expect("modulus table covers all orders <= MAX_Q")
    };

    let digits = |i: u32| -> Vec<u32> {
        let mut v = Vec::with_capacity(k as usize);
        let mut i = i;
        for _ in 0..k {
            v.push(i % p);
            i /= p;
        }
        v
    };
    let index = |d: &[u32]| -> u32 {
        let mut i = 0;
        for &c in d.iter().rev() {
            i = i * p + (c % p);
        }
        i
    };

    let n = (q * q) as usize;
    let mut add = vec![0u8; n];
    let mut mul = vec![0u8; n];
    let mut neg = vec![0u8; q as usize];
    let mut inv = vec![0u8; q as usize];

    for a in 0..q {
        let da = digits(a);
        let dn: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
        neg[a as usize] = index(&dn) as u8;
        for b in 0..q {
            let db = digits(b);
            let ds: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = index(&ds) as u8;
            // Polynomial product reduced modulo the modulus polynomial.
            let mut prod = vec![0u32; (2 * k - 1) as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for d in (k as usize..prod.len()).rev() {
                let c = prod[d];
                if c != 0 {
                    prod[d] = 0;
                    for (i, &mc) in modulus.iter().enumerate().take(k as usize) {
                        let idx = d - k as usize + i;
                        prod[idx] = (prod[idx] + c * ((p - mc % p) % p)) % p;
                    }
                }
            }
            mul[(a * q + b) as usize] = index(&prod[..k as usize]) as u8;
        }
    }
    for a in 1..q {
        for b in 1..q {
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b as u8;
                break;
            }
        }
    }
    Ok(Fq { p, k, q, add, mul, neg, inv })
}

impl Fq {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn zero(&self) -> FqElem {
        0
    }
    pub fn one(&self) -> FqElem {
        1
    }
    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        self.neg[a as usize]
    }
    /// Multiplicative inverse. Panics on zero (a programming error here).
    #[inline]
    pub fn inv(&self, a: FqElem) -> FqElem {
        assert!(a != 0, "inverse of zero in F_{}", self.q);
        self.inv[a as usize]
    }
    /// Image of an integer under `Z → F_p ⊆ F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        n.rem_euclid(self.p as i64) as FqElem
    }
    /// `a^e` for any integer exponent (negative allowed for units).
    pub fn pow(&self, a: FqElem, e: i64) -> FqElem {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
    /// All field elements, `0` first.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(|i| i as FqElem)
    }
    /// All units, in increasing index order.
    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(|i| i as FqElem)
    }
}

/// An element `a + b·√q` of `Q(√q)` with exact rational coordinates.
///
/// When `q` is a perfect square the value is normalized to have `b = 0`.
/// Mixed-`q` arithmetic is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSqrt {
    q: u32,
    a: BigRational,
    b: BigRational,
}

fn isqrt_exact(q: u32) -> Option<u32> {
    let r = (q as f64).sqrt().round() as u32;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == q {
            return Some(c);
        }
    }
    None
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `base^e` as an exact rational, for `base ≥ 1` and any integer `e`.
fn rat_pow(base: u32, e: i64) -> BigRational {
    let b = BigInt::from(base);
    let p = b.pow(u32::try_from(e.unsigned_abs()).expect("exponent out of range"));
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl QSqrt {
    /// Builds `a + b√q`, normalizing perfect-square radicands.
    pub fn new(q: u32, a: BigRational, b: BigRational) -> Self {
        assert!(q >= 1, "radicand must be positive");
        if let Some(s) = isqrt_exact(q) {
            let a = a + &b * rat_int(s as i64);
            return QSqrt { q, a, b: BigRational::zero() };
        }
        QSqrt { q, a, b }
    }
    pub fn from_rational(q: u32, a: BigRational) -> Self {
        QSqrt::new(q, a, BigRational::zero())
    }
    pub fn from_int(q: u32, n: i64) -> Self {
        QSqrt::from_rational(q, rat_int(n))
    }
    pub fn zero(q: u32) -> Self {
        QSqrt::from_int(q, 0)
    }
    pub fn one(q: u32) -> Self {
        QSqrt::from_int(q, 1)
    }
    /// `√q` itself.
    pub fn sqrt_q(q: u32) -> Self {
        QSqrt::new(q, BigRational::zero(), BigRational::one())
    }
    /// `q^{e/2}` for any integer `e` (so `e = 1` gives `√q`).
    pub fn q_pow_half(q: u32, e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            QSqrt::from_rational(q, rat_pow(q, e / 2))
        } else {
            QSqrt::new(q, BigRational::zero(), rat_pow(q, (e - 1) / 2))
        }
    }
    pub fn radicand(&self) -> u32 {
        self.q
    }
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }
    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
    fn assert_same(&self, other: &QSqrt) {
        assert_eq!(self.q, other.q, "mixed Q(sqrt q) arithmetic");
    }
    pub fn add(&self, other: &QSqrt) -> QSqrt {
        self.assert_same(other);
        QSqrt { q: self.q, a: &self.a + &other.a, b: &self.b + &other.b }
    }
    pub fn sub(&self, other: &QSqrt) -> QSqrt {
        self.assert_same(other);
        QSqrt { q: self.q, a: &self.a - &other.a, b: &self.b - &other.b }
    }
    pub fn neg(&self) -> QSqrt {
        QSqrt { q: self.q, a: -self.a.clone(), b: -self.b.clone() }
    }
    pub fn mul(&self, other: &QSqrt) -> QSqrt {
        self.assert_same(other);
        let qr = rat_int(self.q as i64);
        QSqrt {
            q: self.q,
            a: &self.a * &other.a + &self.b * &other.b * &qr,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }
    /// Galois conjugate `a - b√q`.
    pub fn conj(&self) -> QSqrt {
        QSqrt { q: self.q, a: self.a.clone(), b: -self.b.clone() }
    }
    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> QSqrt {
        let norm = &self.a * &self.a - &self.b * &self.b * rat_int(self.q as i64);
        assert!(!norm.is_zero(), "inverse of zero in Q(sqrt q)");
        let c = self.conj();
        QSqrt { q: self.q, a: c.a / &norm, b: c.b / &norm }
    }
    pub fn div(&self, other: &QSqrt) -> QSqrt {
        self.mul(&other.inv())
    }
    pub fn pow(&self, e: i64) -> QSqrt {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = QSqrt::one(self.q);
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
    pub fn scale(&self, r: &BigRational) -> QSqrt {
        QSqrt { q: self.q, a: &self.a * r, b: &self.b * r }
    }
}

impl fmt::Display for QSqrt {
    /// Canonical form `a + b*sqrt(q)` with reduced fractions; pure-rational
    /// values print as `a`, pure-irrational ones as `b*sqrt(q)` (coefficient
    /// 1 omitted), and the zero value as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sqrt_term = |b: &BigRational| -> String {
            if b.is_one() {
                format!("sqrt({})", self.q)
            } else if (-b.clone()).is_one() {
                format!("-sqrt({})", self.q)
            } else {
                format!("{}*sqrt({})", b, self.q)
            }
        };
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}", sqrt_term(&self.b))
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, sqrt_term(&-self.b.clone()).trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", self.a, sqrt_term(&self.b))
        }
    }
}

/// A Laurent polynomial over `Z` in one variable `z`, stored sparsely with
/// no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }
    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(exp, coeff);
        p
    }
    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Coefficient–exponent pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }
    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e, c) in self.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: terms in increasing exponent order, `c*z^k` with the
    /// unit coefficient and the exponents 0, 1 abbreviated (`z^-1`, `3`,
    /// `2*z`, …). The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let mag = c.abs();
            let sign_neg = c.is_negative();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match e {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", e),
            };
            if var.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", var)?;
            } else {
                write!(f, "{}*{}", mag, var)?;
            }
        }
        Ok(())
    }
}

/// Evaluates a Laurent polynomial at `z = √q − 1/√q = (q−1)/√q`, exactly in
/// `Q(√q)`. Negative powers use `z^{-1} = √q/(q−1)`, so `q = 1` is rejected.
pub fn qsqrt_eval_laurent(p: &LaurentPoly, q: u32) -> QSqrt {
    assert!(q >= 2, "evaluation point is undefined for q = {}", q);
    // w = (q-1)/q * sqrt(q)
    let w =
        QSqrt::new(q, BigRational::zero(), BigRational::new(BigInt::from(q - 1), BigInt::from(q)));
    let mut acc = QSqrt::zero(q);
    for (e, c) in p.terms() {
        let term = w.pow(e).scale(&BigRational::from_integer(c.clone()));
        acc = acc.add(&term);
    }
    acc
}
