//! Genus-0 Seifert fibered spaces `M(0,0; b1/a1, ..., br/ar)`: Euler number,
//! order of H1, Lescop's Casson-Walker formula, the Lisca-Stipsicz L-space
//! criterion, and the space produced by surgery on a simple knot in L(n,1).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{dedekind_fast, gcd, ratio, Rational};
use crate::lens::LensSpace;

/// One exceptional fiber with invariant `b/a`, `a > 1`, `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fiber {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertData {
    fibers: Vec<Fiber>,
}

impl SeifertData {
    /// Fibers given as `(a, b)` pairs. Orientation reversal negates every `b`.
    pub fn new(fibers: &[(i64, i64)]) -> Result<Self> {
        let fibers = fibers
            .iter()
            .map(|&(a, b)| {
                if a < 2 {
                    Err(Error::domain(format!("fiber {b}/{a}: multiplicity must be at least 2")))
                } else if gcd(a, b) != 1 {
                    Err(Error::domain(format!("fiber {b}/{a}: gcd(a, b) must be 1")))
                } else {
                    Ok(Fiber { a, b })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeifertData { fibers })
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn reverse(&self) -> Self {
        SeifertData { fibers: self.fibers.iter().map(|f| Fiber { a: f.a, b: -f.b }).collect() }
    }

    pub fn euler_number(&self) -> Rational {
        self.fibers.iter().map(|f| ratio(f.b, f.a)).sum()
    }

    fn product_a(&self) -> i128 {
        self.fibers.iter().map(|f| f.a as i128).product()
    }

    fn nonzero_euler(&self) -> Result<Rational> {
        let e = self.euler_number();
        if e.is_zero() {
            return Err(Error::NotRationalHomologySphere(format!("{self} has Euler number 0")));
        }
        Ok(e)
    }

    /// `|H1| = |e| * prod(a_i)`.
    pub fn h1_order(&self) -> Result<i64> {
        let e = self.nonzero_euler()?;
        let h = e.abs() * Rational::from(num_bigint::BigInt::from(self.product_a()));
        h.to_i64()
            .filter(|v| *v > 0)
            .ok_or_else(|| Error::internal(format!("|H1| of {self} is not a positive integer: {h}")))
    }

    /// Lescop's formula:
    /// `lambda = (1/|H1|) (sign(e)/24 (2 - r + sum 1/a^2) + e|e|/24 - e/8 - |e|/2 sum s(b,a)) |prod a|`.
    pub fn casson_walker(&self) -> Result<Rational> {
        let e = self.nonzero_euler()?;
        let h1 = Rational::from_int(self.h1_order()?);
        let r = self.fibers.len() as i64;
        let inv_sq: Rational = self.fibers.iter().map(|f| ratio(1, f.a as i128 * f.a as i128)).sum();
        let dedekind: Rational = self
            .fibers
            .iter()
            .map(|f| dedekind_fast(f.b, f.a))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        let abs_e = e.abs();
        let bracket = Rational::from_int(e.signum() as i64) / 24 * (Rational::from_int(2 - r) + inv_sq)
            + &e * &abs_e / 24
            - &e / 8
            - &abs_e / 2 * dedekind;
        let prod = Rational::from(num_bigint::BigInt::from(self.product_a()));
        Ok(bracket * prod / h1)
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fibers.iter().map(|x| format!("{}/{}", x.b, x.a)).collect();
        write!(f, "M(0,0;{})", parts.join(","))
    }
}

/// `M(0,0; 1/p1, 1/p2, -1/p3)` is an L-space iff `p3 >= min(p1,p2)`, or
/// `p3 = min(p1,p2) - 1` and `max(p1,p2) <= 2 p3 + 1`.
pub fn is_lspace_three_fibers(p1: i64, p2: i64, p3: i64) -> Result<bool> {
    if p1 < 2 || p2 < 2 || p3 < 2 {
        return Err(Error::domain(format!("fiber multiplicities must be >= 2, got ({p1}, {p2}, {p3})")));
    }
    let (lo, hi) = (p1.min(p2), p1.max(p2));
    Ok(p3 >= lo || (p3 == lo - 1 && hi <= 2 * p3 + 1))
}

/// The space obtained by surgery on the simple knot: a genuine Seifert space,
/// or a lens space when a fiber degenerates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurgeryModel {
    Seifert(SeifertData),
    Lens(LensSpace),
}

impl SurgeryModel {
    pub fn casson_walker(&self) -> Result<Rational> {
        match self {
            SurgeryModel::Seifert(m) => m.casson_walker(),
            SurgeryModel::Lens(l) => Ok(l.casson_walker()),
        }
    }

    pub fn h1_order(&self) -> Result<i64> {
        match self {
            SurgeryModel::Seifert(m) => m.h1_order(),
            SurgeryModel::Lens(l) => Ok(l.order()),
        }
    }
}

impl fmt::Display for SurgeryModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryModel::Seifert(m) => write!(f, "{m}"),
            SurgeryModel::Lens(l) => write!(f, "{l}"),
        }
    }
}

/// `M(0,0; 1/(n-k), 1/k, 1/(m-k))`, with `m = k-1` resolved to `L(nk-n-k^2, k-1)`.
pub fn surgery_model(n: i64, k: i64, m: i64) -> Result<SurgeryModel> {
    if !(k >= 2 && 2 * k <= n) {
        return Err(Error::domain(format!("surgery_model needs 2 <= k <= n/2, got n={n}, k={k}")));
    }
    if m as i128 * n as i128 == k as i128 * k as i128 {
        return Err(Error::NotRationalHomologySphere(format!("mn = k^2 for (n,k,m) = ({n},{k},{m})")));
    }
    match m - k {
        -1 => Ok(SurgeryModel::Lens(LensSpace::new(n * k - n - k * k, k - 1)?)),
        0 | 1 => Err(Error::UnsupportedDegeneration(format!(
            "m - k = {} for (n,k,m) = ({n},{k},{m}) has no Seifert model here",
            m - k
        ))),
        diff => {
            let third = if diff < 0 { (-diff, -1) } else { (diff, 1) };
            Ok(SurgeryModel::Seifert(SeifertData::new(&[(n - k, 1), (k, 1), third])?))
        }
    }
}

/// Specialised Lisca-Stipsicz criterion: `m <= 0`, or `m = 1` and `3k >= n + 1`.
pub fn is_lspace_surgery_model(n: i64, k: i64, m: i64) -> Result<bool> {
    if !(k - m >= 3 && n - k >= k && k >= 2) {
        return Err(Error::domain(format!(
            "is_lspace_surgery_model needs k - m >= 3 and n - k >= k >= 2, got ({n},{k},{m})"
        )));
    }
    Ok(m <= 0 || (m == 1 && 3 * k >= n + 1))
}

/// Outcome of comparing Casson-Walker invariants of a surgery and its model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CassonWalkerCheck {
    pub delta: Rational,
    pub h1: i64,
    pub sign_ok: bool,
    pub integral_ok: bool,
}

impl CassonWalkerCheck {
    pub fn passes(&self, require_integral: bool) -> bool {
        self.sign_ok && (!require_integral || self.integral_ok)
    }
}

/// `delta = lambda_target - lambda_model`; needs `delta >= 0` and `h1 * delta` a non-negative integer.
pub fn casson_walker_obstruction(lambda_target: &Rational, lambda_model: &Rational, h1: i64) -> CassonWalkerCheck {
    let delta = lambda_target - lambda_model;
    let scaled = &delta * h1;
    CassonWalkerCheck { sign_ok: !delta.is_negative(), integral_ok: scaled.is_nonneg_integer(), delta, h1 }
}
