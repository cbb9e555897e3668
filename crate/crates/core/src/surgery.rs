//! Homological bookkeeping for surgeries on knots in L(n,1): winding number
//! `k`, slope `m`, order of H1 after surgery, framing sign, the parity and
//! cyclicity constraints, and enumeration of candidate `(k, m)` pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, gcd_ext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(v: i128) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

/// `mn - k^2` as a wide integer.
pub fn framing_determinant(n: i64, k: i64, m: i64) -> i128 {
    m as i128 * n as i128 - k as i128 * k as i128
}

/// `|mn - k^2|` for essential knots, `n|m|` for null-homologous ones (`k = 0`).
pub fn h1_after_surgery(n: i64, k: i64, m: i64) -> Result<i64> {
    let order = if k == 0 { n as i128 * (m as i128).abs() } else { framing_determinant(n, k, m).abs() };
    if order == 0 {
        return Err(Error::DegenerateSurgery(format!("H1 is infinite for (n,k,m) = ({n},{k},{m})")));
    }
    i64::try_from(order).map_err(|_| Error::domain(format!("|H1| overflows for ({n},{k},{m})")))
}

/// Sign of `mn - k^2`, or of `m` when `k = 0`.
pub fn framing_sign(n: i64, k: i64, m: i64) -> Result<Sign> {
    let v = if k == 0 { m as i128 } else { framing_determinant(n, k, m) };
    Sign::of(v).ok_or_else(|| Error::DegenerateSurgery(format!("zero framing for (n,k,m) = ({n},{k},{m})")))
}

/// Which parity clause applied, and whether it admits `(k, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCheck {
    pub admissible: bool,
    /// 1: n and s odd, k and m must differ in parity. 2: n and s even, k even and m odd.
    pub clause: u8,
}

pub fn parity_admissible(n: i64, s: i64, k: i64, m: i64) -> Result<ParityCheck> {
    if (n - s).rem_euclid(2) != 0 {
        return Err(Error::Routing(format!("({n}, {s}) have different parities")));
    }
    if k < 1 {
        return Err(Error::domain(format!("parity lemma needs k >= 1, got {k}")));
    }
    Ok(if n.rem_euclid(2) == 1 {
        ParityCheck { admissible: (k - m).rem_euclid(2) == 1, clause: 1 }
    } else {
        ParityCheck { admissible: k % 2 == 0 && m.rem_euclid(2) == 1, clause: 2 }
    })
}

/// Data behind the cyclicity condition `gcd((mn-k^2)/d, kk' - n'm, d) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicityCheck {
    pub d: i64,
    pub first: i64,
    pub middle: i64,
    pub gcd: i64,
}

impl CyclicityCheck {
    pub fn admissible(&self) -> bool {
        self.gcd == 1
    }
}

/// Evaluates the cyclicity gcd with an explicit Bezout pair `(n/d) k' - (k/d) n' = 1`.
pub fn cyclicity_with_bezout(n: i64, k: i64, m: i64, n_prime: i64, k_prime: i64) -> Result<CyclicityCheck> {
    if k < 1 || n < 1 {
        return Err(Error::domain(format!("cyclicity needs n, k >= 1, got ({n}, {k})")));
    }
    let d = gcd(n, k);
    if (n / d) as i128 * k_prime as i128 - (k / d) as i128 * n_prime as i128 != 1 {
        return Err(Error::domain(format!("({n_prime}, {k_prime}) is not a Bezout pair for ({n}, {k})")));
    }
    let first = framing_determinant(n, k, m) / d as i128;
    let middle = k as i128 * k_prime as i128 - n_prime as i128 * m as i128;
    let g = gcd128(gcd128(first, middle), d as i128);
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::domain("cyclicity data overflows"));
    Ok(CyclicityCheck { d, first: narrow(first)?, middle: narrow(middle)?, gcd: narrow(g)? })
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn cyclicity_admissible(n: i64, k: i64, m: i64) -> Result<CyclicityCheck> {
    let d = gcd(n, k);
    if d == 0 {
        return Err(Error::domain("cyclicity needs n, k >= 1"));
    }
    // (n/d) x + (k/d) y = 1  gives  k' = x, n' = -y
    let (_, x, y) = gcd_ext(n / d, k / d)?;
    cyclicity_with_bezout(n, k, m, -y, x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    A,
    B,
    C,
    D,
    E,
    F,
    #[serde(rename = "parity-excluded")]
    ParityExcluded,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
            CaseTag::D => "D",
            CaseTag::E => "E",
            CaseTag::F => "F",
            CaseTag::ParityExcluded => "parity-excluded",
        };
        f.write_str(s)
    }
}

/// A homological surgery hypothesis `L(n,1) --(k, m)--> L(s,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryCandidate {
    pub n: i64,
    pub k: i64,
    pub m: i64,
    pub s: i64,
    pub tag: CaseTag,
    pub framing: Sign,
    /// Absent for null-homologous candidates.
    pub parity: Option<ParityCheck>,
    pub cyclicity: Option<CyclicityCheck>,
}

/// Tag for an essential candidate, parity first, then C, D, E, F by `(k, m)`.
pub fn case_tag(parity: &ParityCheck, k: i64, m: i64) -> CaseTag {
    if !parity.admissible {
        CaseTag::ParityExcluded
    } else if k == 1 {
        CaseTag::C
    } else if m >= k + 1 {
        CaseTag::D
    } else if m == k - 1 {
        CaseTag::E
    } else if m <= k - 3 {
        CaseTag::F
    } else {
        unreachable!("m in {{k, k-2}} always fails the parity lemma")
    }
}

/// Every `(k, m)` with `1 <= k <= n/2` and `|mn - k^2| = |s|`, plus the
/// null-homologous slopes `m = 1, -1` when `|s| = n`.
pub fn enumerate_candidates(n: i64, s: i64) -> Result<Vec<SurgeryCandidate>> {
    if !(n >= s.abs() && s != 0) {
        return Err(Error::domain(format!("enumerate_candidates needs n >= |s| > 0, got ({n}, {s})")));
    }
    if (n - s).rem_euclid(2) != 0 {
        return Err(Error::Routing(format!("({n}, {s}) have different parities")));
    }
    let mut out = Vec::new();
    if s.abs() == n {
        for m in [1, -1] {
            out.push(SurgeryCandidate {
                n,
                k: 0,
                m,
                s,
                tag: CaseTag::B,
                framing: framing_sign(n, 0, m)?,
                parity: None,
                cyclicity: None,
            });
        }
    }
    let abs_s = s.abs() as i128;
    for k in 1..=n / 2 {
        let k2 = k as i128 * k as i128;
        let mut slopes: Vec<i64> = [k2 + abs_s, k2 - abs_s]
            .into_iter()
            .filter(|v| v.rem_euclid(n as i128) == 0)
            .map(|v| (v.div_euclid(n as i128)) as i64)
            .collect();
        slopes.sort_unstable_by(|a, b| b.cmp(a));
        slopes.dedup();
        for m in slopes {
            let parity = parity_admissible(n, s, k, m)?;
            out.push(SurgeryCandidate {
                n,
                k,
                m,
                s,
                tag: case_tag(&parity, k, m),
                framing: framing_sign(n, k, m)?,
                parity: Some(parity),
                cyclicity: Some(cyclicity_admissible(n, k, m)?),
            });
        }
    }
    Ok(out)
}
