//! Exact rational arithmetic and the number-theoretic kernels used by the
//! invariant calculators: extended gcd, Hirzebruch-Jung expansions, sawtooth
//! and Dedekind sums, residue tests and integer roots of monic quadratics.

mod rational;

pub use rational::{q, Rational};
pub(crate) use rational::ratio;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(|a|, |b|) >= 0` and `a*x + b*y = g`.
pub fn gcd_ext(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::domain("gcd_ext(0, 0) is undefined"));
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quot = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
        (old_t, t) = (t, old_t - quot * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    Ok((old_r as i64, old_s as i64, old_t as i64))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `m > 0`, reduced into `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m <= 0 {
        return Err(Error::domain(format!("modulus must be positive, got {m}")));
    }
    if m == 1 {
        return Ok(0);
    }
    let (g, x, _) = gcd_ext(a.rem_euclid(m), m)?;
    if g != 1 {
        return Err(Error::domain(format!("{a} is not a unit modulo {m}")));
    }
    Ok(x.rem_euclid(m))
}

/// Hirzebruch-Jung (negative) continued fraction `[a1, ..., ar]` with every `ai >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjExpansion {
    terms: Vec<i64>,
}

impl HjExpansion {
    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// `a1 - 1/(a2 - 1/(... - 1/ar))`
    pub fn evaluate(&self) -> Rational {
        let mut iter = self.terms.iter().rev();
        let last = *iter.next().expect("expansion is never empty");
        iter.fold(Rational::from_int(last), |acc, &a| Rational::from_int(a) - acc.recip())
    }
}

/// Expansion of `p/q` for coprime `p > q > 0` via `a = ceil(p/q)`, `(p, q) <- (q, a*q - p)`.
pub fn hj_expansion(p: i64, q: i64) -> Result<HjExpansion> {
    if !(p > q && q > 0) {
        return Err(Error::domain(format!("hj_expansion needs p > q > 0, got ({p}, {q})")));
    }
    if gcd(p, q) != 1 {
        return Err(Error::domain(format!("hj_expansion needs coprime input, got ({p}, {q})")));
    }
    let (mut num, mut den) = (p, q);
    let mut terms = Vec::new();
    while den != 0 {
        let a = Integer::div_ceil(&num, &den);
        terms.push(a);
        (num, den) = (den, a * den - num);
    }
    Ok(HjExpansion { terms })
}

/// `((x))`: `x - floor(x) - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - Rational::from(x.floor()) - q(1, 2)
}

fn check_coprime(q: i64, p: i64) -> Result<()> {
    if p == 0 {
        return Err(Error::domain("Dedekind sum with p = 0"));
    }
    if gcd(p, q) != 1 {
        return Err(Error::domain(format!("Dedekind sum needs gcd(p, q) = 1, got s({q}, {p})")));
    }
    Ok(())
}

/// Dedekind sum `s(q, p)` straight from the definition, `O(|p|)` terms.
///
/// For `0 < k < p` both sawtooth factors are off the integers, so each term is
/// `(2k - p)(2(kq mod p) - p) / (4p^2)` and the sum is taken over one integer numerator.
pub fn dedekind_direct(q: i64, p: i64) -> Result<Rational> {
    check_coprime(q, p)?;
    let abs_p = p.abs() as i128;
    let qq = q as i128;
    let numerator: i128 = (1..abs_p).map(|k| (2 * k - abs_p) * (2 * (k * qq).rem_euclid(abs_p) - abs_p)).sum();
    let total = ratio(numerator, 4 * abs_p * abs_p);
    Ok(if p < 0 { -total } else { total })
}

/// Dedekind sum `s(q, p)` through the Hirzebruch-Jung expansion of `p/q`.
///
/// `q` is first reduced into `[0, p)`; a negative `p` uses `s(q, -p) = -s(q, p)`.
pub fn dedekind_fast(q: i64, p: i64) -> Result<Rational> {
    check_coprime(q, p)?;
    if p < 0 {
        return dedekind_fast(q, -p).map(|s| -s);
    }
    let q_red = q.rem_euclid(p);
    if q_red == 0 {
        // only reachable for p = 1
        return Ok(Rational::zero());
    }
    let expansion = hj_expansion(p, q_red)?;
    let q_inv = mod_inverse(q_red, p)?;
    let tail: i64 = expansion.terms().iter().map(|a| a - 3).sum();
    Ok((ratio(q_red, p) + ratio(q_inv, p) + Rational::from_int(tail)) / 12)
}

/// Searches for a unit `x` modulo `p` with `x^2 = a (mod p)`, returning the
/// smallest such `x` in `1..=p`. Brute force; moduli here are small.
pub fn is_quadratic_residue(a: i64, p: i64) -> Result<Option<i64>> {
    if p < 1 {
        return Err(Error::domain(format!("modulus must be at least 1, got {p}")));
    }
    let target = a.rem_euclid(p) as i128;
    let m = p as i128;
    Ok((1..=p).find(|&x| gcd(x, p) == 1 && ((x as i128) * (x as i128)).rem_euclid(m) == target))
}

/// Every integer root of `j^2 + b*j + c = 0`, ascending and without repeats.
pub fn integer_roots_monic_quadratic(b: i64, c: i64) -> Vec<i64> {
    let (b, c) = (b as i128, c as i128);
    let disc = b * b - 4 * c;
    if disc < 0 {
        return Vec::new();
    }
    let root = disc.sqrt();
    if root * root != disc {
        return Vec::new();
    }
    let mut roots: Vec<i64> = [-b - root, -b + root]
        .into_iter()
        .filter(|v| v.rem_euclid(2) == 0)
        .map(|v| (v / 2) as i64)
        .collect();
    roots.dedup();
    roots
}

/// Exact square test on non-negative integers.
pub fn is_perfect_square(n: i128) -> bool {
    n >= 0 && {
        let r = n.sqrt();
        r * r == n
    }
}
