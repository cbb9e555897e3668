//! Oriented lens spaces L(p,q): d-invariants, self-conjugate Spin^c
//! structures, linking forms and the Casson-Walker invariant.
//!
//! Spin^c structures are labelled by `0..|p|` through the d-invariant
//! recursion. Reversing orientation keeps the labels and negates every d-value.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{self, gcd, q, ratio, Rational};

/// Canonical oriented lens space: `p >= 1`, `0 <= q < p`, plus an orientation flag.
///
/// `L(-p, q)` is stored as the reverse of `L(p, q)`; `L(1, q)` is the 3-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
    reversed: bool,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("L(0, q) is not a rational homology sphere"));
        }
        if gcd(p, q) != 1 {
            return Err(Error::domain(format!("L({p}, {q}) needs gcd(p, q) = 1")));
        }
        let abs_p = p.abs();
        if abs_p == 1 {
            return Ok(LensSpace::sphere());
        }
        Ok(LensSpace { p: abs_p, q: q.rem_euclid(abs_p), reversed: p < 0 })
    }

    pub fn sphere() -> Self {
        LensSpace { p: 1, q: 0, reversed: false }
    }

    /// `L(n, 1)` for any nonzero `n`, negative `n` meaning the reversed orientation.
    pub fn n1(n: i64) -> Result<Self> {
        LensSpace::new(n, 1)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// Order of the first homology group.
    pub fn order(&self) -> i64 {
        self.p
    }

    pub fn reverse(&self) -> Self {
        if self.p == 1 {
            return *self;
        }
        LensSpace { reversed: !self.reversed, ..*self }
    }

    fn orientation_sign(&self) -> i64 {
        if self.reversed {
            -1
        } else {
            1
        }
    }

    fn check_index(&self, i: i64) -> Result<()> {
        if (0..self.p).contains(&i) {
            Ok(())
        } else {
            Err(Error::domain(format!("Spin^c index {i} out of range for {self}")))
        }
    }

    /// d-invariants for every Spin^c index, with orientation applied.
    pub fn d_values(&self) -> Vec<Rational> {
        let table = d_table(self.p, self.q);
        if self.reversed {
            table.iter().map(|d| -d).collect()
        } else {
            table.as_ref().clone()
        }
    }

    pub fn d_invariant(&self, i: i64) -> Result<Rational> {
        self.check_index(i)?;
        let d = d_table(self.p, self.q)[i as usize].clone();
        Ok(if self.reversed { -d } else { d })
    }

    /// Indices fixed by conjugation: the integers among `(p+q-1)/2` and `(q-1)/2`, mod p.
    pub fn self_conjugate_spincs(&self) -> Vec<i64> {
        let (p, qq) = (self.p, if self.p == 1 { 1 } else { self.q });
        let mut out: Vec<i64> = [p + qq - 1, qq - 1]
            .into_iter()
            .filter(|v| v.rem_euclid(2) == 0)
            .map(|v| (v / 2).rem_euclid(p))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn linking_form(&self) -> LinkingForm {
        LinkingForm { p: self.p, q: (self.orientation_sign() * self.q) % self.p.max(1) }
    }

    /// `lambda(L(p,q)) = -s(q,p)/2`, negated under reversal.
    pub fn casson_walker(&self) -> Rational {
        if self.p == 1 {
            return Rational::zero();
        }
        let s = exactmath::dedekind_fast(self.q, self.p).expect("canonical lens data is coprime");
        let lambda = -s / 2;
        if self.reversed {
            -lambda
        } else {
            lambda
        }
    }

    pub fn sum_d_invariants(&self) -> Rational {
        self.d_values().iter().sum()
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = if self.p == 1 { 1 } else { self.q };
        if self.reversed {
            write!(f, "-L({}, {})", self.p, q)
        } else {
            write!(f, "L({}, {})", self.p, q)
        }
    }
}

/// Linking form `q/p` of a lens space, as a residue datum: `q` is kept with its sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingForm {
    pub p: i64,
    pub q: i64,
}

impl LinkingForm {
    pub fn value(&self) -> Rational {
        ratio(self.q, self.p)
    }

    pub fn residue(&self) -> i64 {
        self.q.rem_euclid(self.p)
    }
}

impl fmt::Display for LinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Whether the forms `q1/p` and `q2/p` are isomorphic, i.e. `q1 = q2 * a^2 (mod p)`
/// for a unit `a`. Returns the smallest such `a` on success.
pub fn linking_forms_isomorphic(p: i64, q1: i64, q2: i64) -> Result<Option<i64>> {
    if p < 1 {
        return Err(Error::domain(format!("linking form modulus must be positive, got {p}")));
    }
    if gcd(q1, p) != 1 || gcd(q2, p) != 1 {
        return Err(Error::domain(format!("{q1} and {q2} must both be units modulo {p}")));
    }
    let (m, q1, q2) = (p as i128, q1 as i128, q2 as i128);
    Ok((1..=p).find(|&a| {
        let a = a as i128;
        gcd(a as i64, p) == 1 && (q2 * a * a - q1).rem_euclid(m) == 0
    }))
}

/// `d(L(n,1), i) = -1/4 + (2i - n)^2 / (4n)`.
pub fn d_closed_form_n1(n: i64, i: i64) -> Result<Rational> {
    if n < 1 || !(0..n).contains(&i) {
        return Err(Error::domain(format!("d_closed_form_n1 needs n >= 1 and 0 <= i < n, got ({n}, {i})")));
    }
    let t = 2 * i as i128 - n as i128;
    Ok(q(-1, 4) + ratio(t * t, 4 * n as i128))
}

type DTable = Arc<Vec<Rational>>;

fn memo() -> &'static RwLock<HashMap<(i64, i64), DTable>> {
    static MEMO: OnceLock<RwLock<HashMap<(i64, i64), DTable>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// d-invariants of `L(p, q)` (canonical, positively oriented) through the recursion
/// `d(L(p,q),i) = -1/4 + (2i+1-p-q)^2/(4pq) - d(L(q, p mod q), i mod q)`.
fn d_table(p: i64, q_: i64) -> DTable {
    if p == 1 {
        return Arc::new(vec![Rational::zero()]);
    }
    if let Some(t) = memo().read().expect("d memo poisoned").get(&(p, q_)) {
        return t.clone();
    }
    let inner = d_table(q_, p % q_);
    let pq = 4 * p as i128 * q_ as i128;
    let values: Vec<Rational> = (0..p)
        .map(|i| {
            let t = 2 * i as i128 + 1 - p as i128 - q_ as i128;
            q(-1, 4) + ratio(t * t, pq) - &inner[(i % q_) as usize]
        })
        .collect();
    let table = Arc::new(values);
    memo().write().expect("d memo poisoned").entry((p, q_)).or_insert(table).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(p: i64, qq: i64) -> LensSpace {
        LensSpace::new(p, qq).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(l(1, 7), LensSpace::sphere());
        assert_eq!(l(-1, 1), LensSpace::sphere());
        let m = l(-5, 1);
        assert!(m.is_reversed());
        assert_eq!((m.p(), m.q()), (5, 1));
        assert_eq!(l(7, 9), l(7, 2));
        assert_eq!(m.reverse().reverse(), m);
        assert!(LensSpace::new(0, 1).is_err());
        assert!(LensSpace::new(6, 4).is_err());
    }

    #[test]
    fn d_invariant_examples() {
        assert_eq!(l(1, 1).d_invariant(0).unwrap(), Rational::zero());
        assert_eq!(l(3, 1).d_invariant(1).unwrap(), q(-1, 6));
        assert_eq!(l(7, 2).d_invariant(0).unwrap(), q(9, 14));
        assert_eq!(l(2, 1).d_values(), vec![q(1, 4), q(-1, 4)]);
        assert_eq!(l(-3, 1).d_invariant(0).unwrap(), q(-1, 2));
        assert!(l(3, 1).d_invariant(3).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(d_closed_form_n1(3, 0).unwrap(), q(1, 2));
        assert_eq!(d_closed_form_n1(5, 0).unwrap(), Rational::one());
        assert_eq!(d_closed_form_n1(8, 4).unwrap(), q(-1, 4));
        assert!(d_closed_form_n1(0, 0).is_err());
    }

    #[test]
    fn self_conjugate_examples() {
        assert_eq!(l(5, 1).self_conjugate_spincs(), vec![0]);
        assert_eq!(l(6, 1).self_conjugate_spincs(), vec![0, 3]);
        assert_eq!(l(7, 2).self_conjugate_spincs(), vec![4]);
        assert_eq!(LensSpace::sphere().self_conjugate_spincs(), vec![0]);
        assert_eq!(l(-6, 1).self_conjugate_spincs(), vec![0, 3]);
    }

    #[test]
    fn linking_form_examples() {
        assert_eq!(l(8, 3).linking_form().to_string(), "3/8");
        assert_eq!(l(-8, 1).linking_form().to_string(), "-1/8");
        assert_eq!(l(-8, 1).linking_form().residue(), 7);
        assert_eq!(LensSpace::sphere().linking_form().value(), Rational::zero());
    }

    #[test]
    fn linking_isomorphism_examples() {
        assert_eq!(linking_forms_isomorphic(8, -1, 3).unwrap(), None);
        assert_eq!(linking_forms_isomorphic(5, 1, 4).unwrap(), Some(2));
        assert_eq!(linking_forms_isomorphic(5, 4, 1).unwrap(), Some(2));
        assert_eq!(linking_forms_isomorphic(9, 2, 2).unwrap(), Some(1));
        assert!(linking_forms_isomorphic(8, 2, 3).is_err());
    }

    #[test]
    fn casson_walker_examples() {
        assert_eq!(l(2, 1).casson_walker(), Rational::zero());
        assert_eq!(l(3, 1).casson_walker(), q(-1, 36));
        assert_eq!(l(4, 1).casson_walker(), q(-1, 16));
        assert_eq!(l(-4, 1).casson_walker(), q(1, 16));
    }

    #[test]
    fn d_sum_examples() {
        assert_eq!(l(3, 1).sum_d_invariants(), q(1, 6));
        assert_eq!(LensSpace::sphere().sum_d_invariants(), Rational::zero());
        assert_eq!(l(2, 1).sum_d_invariants(), Rational::zero());
    }
}
