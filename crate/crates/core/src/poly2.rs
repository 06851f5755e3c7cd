//! Exact arithmetic and classification of polynomials over GF(2).
//!
//! A polynomial is a bit mask: bit `i` holds the coefficient of x^i, so
//! `0x13` is x^4 + x + 1. Degrees are capped at 63 (one machine word), which
//! covers every construction this crate targets.
//!
//! Classification computes the multiplicative order e of a root of an
//! irreducible polynomial of degree k by factoring 2^k - 1 and stripping
//! prime factors; t = (2^k - 1)/e counts the cyclotomic classes the
//! polynomial splits the field into. Primitive means e = 2^k - 1.

use crate::arith;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

pub const MAX_DEGREE: u32 = 63;

/// Polynomial over GF(2), lowest coefficient in bit 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly2(u64);

impl Poly2 {
    pub const ZERO: Poly2 = Poly2(0);
    pub const ONE: Poly2 = Poly2(1);
    pub const X: Poly2 = Poly2(2);

    pub const fn from_mask(mask: u64) -> Poly2 {
        Poly2(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Degree, or None for the zero polynomial.
    pub const fn degree(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    pub const fn constant_term(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn add(self, other: Poly2) -> Poly2 {
        Poly2(self.0 ^ other.0)
    }
}

impl std::ops::Add for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        Poly2(self.0 ^ rhs.0)
    }
}

fn mul_wide(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let a = a as u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn rem_wide(mut a: u128, m: u64) -> u64 {
    debug_assert!(m != 0);
    let dm = 127 - (m as u128).leading_zeros();
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= (m as u128) << (da - dm);
    }
    a as u64
}

/// Remainder of `a` modulo `m`.
pub fn poly_rem(a: Poly2, m: Poly2) -> Result<Poly2> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    Ok(Poly2(rem_wide(a.0 as u128, m.0)))
}

/// Product of `a` and `b` reduced modulo `m`.
pub fn mul_mod(a: Poly2, b: Poly2, m: Poly2) -> Result<Poly2> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    Ok(Poly2(rem_wide(mul_wide(a.0, b.0), m.0)))
}

/// Carry-less product without reduction; errors if the result would exceed
/// degree 63.
pub fn mul(a: Poly2, b: Poly2) -> Result<Poly2> {
    let wide = mul_wide(a.0, b.0);
    if wide >> 64 != 0 {
        let da = a.degree().unwrap_or(0);
        let db = b.degree().unwrap_or(0);
        return Err(Error::DegreeTooLarge(da + db, MAX_DEGREE));
    }
    Ok(Poly2(wide as u64))
}

/// Monic greatest common divisor. GF(2) polynomials are monic whenever
/// nonzero, so plain Euclid suffices.
pub fn gcd(a: Poly2, b: Poly2) -> Result<Poly2> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (a.0, b.0);
    while b != 0 {
        let r = rem_wide(a as u128, b);
        a = b;
        b = r;
    }
    Ok(Poly2(a))
}

/// x^(2^count) modulo m, by repeated squaring.
fn frobenius_pow(count: u32, m: Poly2) -> Poly2 {
    let mut h = Poly2::X;
    for _ in 0..count {
        h = Poly2(rem_wide(mul_wide(h.0, h.0), m.0));
    }
    h
}

/// Irreducibility over GF(2) via Rabin's test: x^(2^n) = x mod f, and for
/// every prime divisor p of n the polynomial x^(2^(n/p)) - x is coprime to f.
pub fn is_irreducible(a: Poly2) -> Result<bool> {
    let n = match a.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    if !a.constant_term() {
        // divisible by x
        return Ok(false);
    }
    if frobenius_pow(n, a) != poly_rem(Poly2::X, a)? {
        return Ok(false);
    }
    for (p, _) in arith::factor(n as u64) {
        let h = frobenius_pow(n / p as u32, a);
        let g = gcd(h + poly_rem(Poly2::X, a)?, a)?;
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn mersenne_factors(k: u32) -> Vec<(u64, u32)> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<(u64, u32)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(k)
        .or_insert_with(|| arith::factor(((1u128 << k) - 1) as u64))
        .clone()
}

/// x^e modulo m.
pub fn x_pow_mod(mut e: u64, m: Poly2) -> Result<Poly2> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let mut acc = poly_rem(Poly2::ONE, m)?;
    let mut base = poly_rem(Poly2::X, m)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = Poly2(rem_wide(mul_wide(acc.0, base.0), m.0));
        }
        base = Poly2(rem_wide(mul_wide(base.0, base.0), m.0));
        e >>= 1;
    }
    Ok(acc)
}

/// Multiplicative order of a root: least e with x^e = 1 mod a.
///
/// Starts from 2^k - 1 and strips prime factors, so the cost is the
/// (memoized) factorization of 2^k - 1 plus a few modular exponentiations.
pub fn poly_order(a: Poly2) -> Result<u64> {
    let k = match a.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(k) => k,
    };
    if !is_irreducible(a)? {
        return Err(Error::Reducible(a.to_string()));
    }
    if !a.constant_term() {
        return Err(Error::ZeroConstantTerm(a.to_string()));
    }
    let mut e = ((1u128 << k) - 1) as u64;
    for (p, _) in mersenne_factors(k) {
        while e % p == 0 && x_pow_mod(e / p, a)? == Poly2::ONE {
            e /= p;
        }
    }
    debug_assert_eq!(x_pow_mod(e, a)?, Poly2::ONE);
    Ok(e)
}

/// True iff `a` is irreducible with a primitive root, i.e. order 2^deg - 1.
pub fn is_primitive(a: Poly2) -> bool {
    match a.degree() {
        None | Some(0) => false,
        Some(k) => {
            a.constant_term()
                && is_irreducible(a).unwrap_or(false)
                && poly_order(a) == Ok(((1u128 << k) - 1) as u64)
        }
    }
}

/// Classification bundle: irreducibility, primitivity, root order e and the
/// cyclotomic class count t = (2^deg - 1)/e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyClass {
    pub degree: u32,
    pub irreducible: bool,
    pub primitive: bool,
    pub order: Option<u64>,
    pub cofactor_t: Option<u64>,
}

pub fn classify(a: Poly2) -> Result<PolyClass> {
    let degree = match a.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(k) => k,
    };
    let irreducible = is_irreducible(a)?;
    if !irreducible || !a.constant_term() {
        return Ok(PolyClass {
            degree,
            irreducible,
            primitive: false,
            order: None,
            cofactor_t: None,
        });
    }
    let order = poly_order(a)?;
    let full = ((1u128 << degree) - 1) as u64;
    Ok(PolyClass {
        degree,
        irreducible,
        primitive: order == full,
        order: Some(order),
        cofactor_t: Some(full / order),
    })
}

/// The primitive polynomial of degree k with the smallest mask; this is the
/// canonical field generator used whenever a non-primitive irreducible needs
/// an ambient field.
pub fn lowest_primitive(k: u32) -> Result<Poly2> {
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(k, MAX_DEGREE));
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Poly2>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&k) {
        return Ok(*p);
    }
    let mut mask = (1u64 << k) | 1;
    let found = loop {
        let cand = Poly2(mask);
        if is_primitive(cand) {
            break cand;
        }
        mask += 2;
        assert!(mask < (1u64 << (k + 1)), "no primitive polynomial found");
    };
    cache.lock().unwrap().insert(k, found);
    Ok(found)
}

/// Number of irreducible polynomials of degree n (Gauss' formula).
pub fn irreducible_count(n: u32) -> u64 {
    let moebius = |d: u64| -> i64 {
        let mut m = 1i64;
        for (_, mult) in arith::factor(d) {
            if mult > 1 {
                return 0;
            }
            m = -m;
        }
        m
    };
    let mut sum = 0i128;
    for d in 1..=n as u64 {
        if n as u64 % d == 0 {
            sum += moebius(d) as i128 * (1i128 << (n as u64 / d));
        }
    }
    (sum / n as i128) as u64
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({:#x} = {})", self.0, self)
    }
}

impl fmt::LowerHex for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..64).rev() {
            if self.0 >> i & 1 == 1 {
                if !first {
                    write!(f, "+")?;
                }
                match i {
                    0 => write!(f, "1")?,
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{i}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    /// Accepts the hex mask form ("0x13") and the written form ("x^4+x+1").
    fn from_str(s: &str) -> Result<Poly2> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let mask = u64::from_str_radix(hex, 16)
                .map_err(|e| Error::Parse(format!("bad hex mask {s:?}: {e}")))?;
            return Ok(Poly2(mask));
        }
        if s == "0" {
            return Ok(Poly2::ZERO);
        }
        let mut mask = 0u64;
        for term in s.split('+') {
            let term = term.trim();
            let bit = if term == "1" {
                0
            } else if term == "x" {
                1
            } else if let Some(exp) = term.strip_prefix("x^") {
                exp.parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad exponent in {term:?}: {e}")))?
            } else {
                return Err(Error::Parse(format!("bad term {term:?}")));
            };
            if bit > MAX_DEGREE {
                return Err(Error::DegreeTooLarge(bit, MAX_DEGREE));
            }
            mask ^= 1 << bit;
        }
        Ok(Poly2(mask))
    }
}
