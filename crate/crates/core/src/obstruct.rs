//! Classification of distance one surgeries `L(n,1) -> L(s,1)`.
//!
//! Every pair is normalized to `n >= |s| > 0`, split into routes (the
//! different-parity route, null-homologous slopes, or essential `(k, m)`
//! candidates), and each route is either excluded by certificates or
//! survives with its passing data.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{integer_roots_monic_quadratic, q, Rational};
use crate::lens::{linking_forms_isomorphic, LensSpace};
use crate::seifert::{casson_walker_obstruction, is_lspace_surgery_model, surgery_model, SurgeryModel};
use crate::surgery::{
    cyclicity_admissible, enumerate_candidates, h1_after_surgery, parity_admissible, CaseTag, Sign,
    SurgeryCandidate,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    PaperFaithful,
    /// Also requires `h1 * delta` to be an integer in Casson-Walker comparisons.
    Strict,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper-faithful" | "paper_faithful" => Ok(Mode::PaperFaithful),
            "strict" => Ok(Mode::Strict),
            other => Err(Error::domain(format!("unknown mode '{other}'"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::PaperFaithful => "paper-faithful",
            Mode::Strict => "strict",
        })
    }
}

/// Results taken from the literature rather than recomputed here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CitedRule {
    pub tag: &'static str,
    pub statement: &'static str,
}

pub const CITED_RULES: &[CitedRule] = &[
    CitedRule {
        tag: "moore-vazquez",
        statement: "for odd n, a null-homologous distance one surgery L(n,1) -> L(-n,1) exists iff n = 1 or 5",
    },
    CitedRule {
        tag: "lidman-moore-vazquez",
        statement: "for even t, a distance one surgery L(3,1) -> L(t,1) exists iff t is -6, -2, 2 or 4",
    },
    CitedRule {
        tag: "lin-quarter",
        statement: "a distance one surgery from L(n,1), n odd, to L(s,1), s even, forces \
                    d(L(s,1), i) - d(L(n,1), 0) = 1/4 or -1/4 for a self-conjugate i",
    },
    CitedRule {
        tag: "genus-bound",
        statement: "a null-homologous knot in L(n,1) whose +-1 surgery is -L(n,1) has genus 0 or 1, \
                    so every V-value in the null-homologous d-invariant identity is 0 or 1",
    },
];

pub fn cited_rule(tag: &str) -> Option<&'static CitedRule> {
    CITED_RULES.iter().find(|r| r.tag == tag)
}

/// The decision a cited rule makes for `(n, s)`, when it speaks about the pair at all.
pub fn cited_decision(tag: &str, n: i64, s: i64) -> Option<bool> {
    match tag {
        "moore-vazquez" if n % 2 == 1 && s == -n => Some(n == 1 || n == 5),
        "lidman-moore-vazquez" => lmv_target(n, s).map(|t| [-6, -2, 2, 4].contains(&t)),
        _ => None,
    }
}

/// `t` with the pair equivalent to `L(3,1) -> L(t,1)`, for different-parity pairs involving 3.
fn lmv_target(n: i64, s: i64) -> Option<i64> {
    if (n - s).rem_euclid(2) == 0 {
        None
    } else if n == 3 {
        Some(s)
    } else if s.abs() == 3 && n % 2 == 0 {
        Some(n * s.signum())
    } else {
        None
    }
}

/// A re-checkable reason for excluding a route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// No winding number and slope give `|H1| = |s|`, and `|s| != n`.
    NoHomologicalSlope { n: i64, s: i64 },
    MagnitudeExceeds { n: i64, k: i64, m: i64, h1: i64 },
    ParityExcluded { n: i64, s: i64, k: i64, m: i64, clause: u8 },
    CyclicityFailed { n: i64, k: i64, m: i64, d: i64, first: i64, middle: i64, gcd: i64 },
    NotLSpaceSeifert { n: i64, k: i64, m: i64 },
    CassonWalkerNegative { target: LensSpace, model: SurgeryModel, h1: i64, delta: Rational },
    CassonWalkerNonInteger { target: LensSpace, model: SurgeryModel, h1: i64, scaled: Rational },
    N0Negative { matching: String, target: LensSpace, model: LensSpace, t: i64, t_model: i64, n0: Rational },
    N0NonInteger { matching: String, target: LensSpace, model: LensSpace, t: i64, t_model: i64, n0: Rational },
    QuadraticNoIntegerRoot {
        equation: String,
        n: i64,
        model: LensSpace,
        shifted_index: i64,
        n1: Rational,
        b: i64,
        c: Rational,
    },
    LinkingFormMismatch { p: i64, q1: i64, q2: i64 },
    /// `differences[j] = d(target, i_j) - d(source, 0)` over the target's self-conjugate `i_j`.
    SpinQuarterUnsolvable { source: LensSpace, target: LensSpace, differences: Vec<Rational> },
    NiWuInfeasible { subcase: String, source: LensSpace, target: LensSpace, t: i64, t_target: i64, value: Rational },
    CitedResult { source: String, n: i64, s: i64 },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NoHomologicalSlope { .. } => "NoHomologicalSlope",
            Certificate::MagnitudeExceeds { .. } => "MagnitudeExceeds",
            Certificate::ParityExcluded { .. } => "ParityExcluded",
            Certificate::CyclicityFailed { .. } => "CyclicityFailed",
            Certificate::NotLSpaceSeifert { .. } => "NotLSpaceSeifert",
            Certificate::CassonWalkerNegative { .. } => "CassonWalkerNegative",
            Certificate::CassonWalkerNonInteger { .. } => "CassonWalkerNonInteger",
            Certificate::N0Negative { .. } => "N0Negative",
            Certificate::N0NonInteger { .. } => "N0NonInteger",
            Certificate::QuadraticNoIntegerRoot { .. } => "QuadraticNoIntegerRoot",
            Certificate::LinkingFormMismatch { .. } => "LinkingFormMismatch",
            Certificate::SpinQuarterUnsolvable { .. } => "SpinQuarterUnsolvable",
            Certificate::NiWuInfeasible { .. } => "NiWuInfeasible",
            Certificate::CitedResult { .. } => "CitedResult",
        }
    }

    /// Recomputes the witness from scratch and checks that it still excludes the route.
    pub fn reverify(&self) -> Result<bool> {
        Ok(match self {
            Certificate::NoHomologicalSlope { n, s } => {
                let (n, abs_s) = (*n as i128, s.abs() as i128);
                abs_s != n
                    && (1..=n / 2).all(|k| (k * k + abs_s) % n != 0 && (k * k - abs_s).rem_euclid(n) != 0)
            }
            Certificate::MagnitudeExceeds { n, k, m, h1 } => {
                let order = h1_after_surgery(*n, *k, *m)?;
                order == *h1 && order > *n
            }
            Certificate::ParityExcluded { n, s, k, m, clause } => {
                let check = parity_admissible(*n, *s, *k, *m)?;
                !check.admissible && check.clause == *clause
            }
            Certificate::CyclicityFailed { n, k, m, d, first, middle, gcd } => {
                let c = cyclicity_admissible(*n, *k, *m)?;
                !c.admissible() && (c.d, c.first, c.middle, c.gcd) == (*d, *first, *middle, *gcd)
            }
            Certificate::NotLSpaceSeifert { n, k, m } => !is_lspace_surgery_model(*n, *k, *m)?,
            Certificate::CassonWalkerNegative { target, model, h1, delta } => {
                let check = casson_walker_obstruction(&target.casson_walker(), &model.casson_walker()?, *h1);
                check.delta == *delta && delta.is_negative()
            }
            Certificate::CassonWalkerNonInteger { target, model, h1, scaled } => {
                let check = casson_walker_obstruction(&target.casson_walker(), &model.casson_walker()?, *h1);
                &check.delta * *h1 == *scaled && !scaled.is_nonneg_integer()
            }
            Certificate::N0Negative { target, model, t, t_model, n0, .. } => {
                let value = (model.d_invariant(*t_model)? - target.d_invariant(*t)?) / 2;
                value == *n0 && value.is_negative()
            }
            Certificate::N0NonInteger { target, model, t, t_model, n0, .. } => {
                let value = (model.d_invariant(*t_model)? - target.d_invariant(*t)?) / 2;
                value == *n0 && !value.is_integer()
            }
            Certificate::QuadraticNoIntegerRoot { n, model, shifted_index, n1, b, c, .. } => {
                let (b2, c2) = quadratic_coefficients(model, *shifted_index, n1)?;
                b2 == *b && c2 == *c && model.order() == *n - 4 && quadratic_roots(*b, c).is_empty()
            }
            Certificate::LinkingFormMismatch { p, q1, q2 } => linking_forms_isomorphic(*p, *q1, *q2)?.is_none(),
            Certificate::SpinQuarterUnsolvable { source, target, differences } => {
                let fresh = quarter_differences(source, target)?;
                fresh == *differences && !fresh.iter().any(is_quarter)
            }
            Certificate::NiWuInfeasible { source, target, t, t_target, value, .. } => {
                let fresh = (source.d_invariant(*t)? - target.d_invariant(*t_target)?) / 2;
                fresh == *value && !genus_admissible(&fresh)
            }
            Certificate::CitedResult { source, n, s } => {
                cited_rule(source).is_some() && cited_decision(source, *n, *s) == Some(false)
            }
        })
    }
}

/// What a surviving route passed with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Passing {
    Trivial { reason: String },
    Cited { source: String },
    QuarterSolution { index: i64, difference: Rational },
    VValues { subcase: String, values: Vec<Rational> },
    CassonWalker { delta: Rational },
    N0 { matching: String, n0: Rational },
    N1 { matching: String, equation: String, n0: Rational, n1: Rational, root: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteStatus {
    Excluded,
    Survives,
}

/// One way the surgery could exist: a Case A route, a null-homologous slope, or an essential `(k, m)`.
///
/// `k` and `m` are absent for the different-parity route and for the empty-enumeration route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteReport {
    pub k: Option<i64>,
    pub m: Option<i64>,
    pub tag: CaseTag,
    pub status: RouteStatus,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub passing: Vec<Passing>,
}

impl RouteReport {
    fn new(k: Option<i64>, m: Option<i64>, tag: CaseTag) -> Self {
        RouteReport { k, m, tag, status: RouteStatus::Survives, certificates: Vec::new(), passing: Vec::new() }
    }

    fn essential(c: &SurgeryCandidate) -> Self {
        RouteReport::new(Some(c.k), Some(c.m), c.tag)
    }

    fn exclude(mut self, cert: Certificate) -> Self {
        self.certificates.push(cert);
        self.status = RouteStatus::Excluded;
        self
    }

    fn pass(mut self, passing: Passing) -> Self {
        self.passing.push(passing);
        self
    }

    pub fn survives(&self) -> bool {
        self.status == RouteStatus::Survives
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub name: String,
    pub figure: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    Realized,
    Obstructed,
    Unresolved,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Realized => "Realized",
            VerdictKind::Obstructed => "Obstructed",
            VerdictKind::Unresolved => "Unresolved",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: i64,
    pub s: i64,
    /// The pair as given, when normalization changed it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<(i64, i64)>,
    pub verdict: VerdictKind,
    pub mode: Mode,
    pub candidates: Vec<RouteReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == VerdictKind::Obstructed
    }

    pub fn surviving(&self) -> impl Iterator<Item = &RouteReport> {
        self.candidates.iter().filter(|r| r.survives())
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.candidates.iter().flat_map(|r| r.certificates.iter())
    }
}

/// Maps any pair with `n > 0, s != 0` into `n >= |s|` using the dual surgery and mirror symmetries.
pub fn normalize(n: i64, s: i64) -> Result<(i64, i64)> {
    if n <= 0 || s == 0 {
        return Err(Error::domain(format!("classify needs n >= 1 and s != 0, got ({n}, {s})")));
    }
    if s.abs() <= n {
        Ok((n, s))
    } else {
        Ok((s.abs(), n * s.signum()))
    }
}

fn construction(name: &str, figure: &str) -> Construction {
    Construction { name: name.to_string(), figure: figure.to_string() }
}

/// Known distance one surgeries, all lifted from band surgeries between `T(2,n)` and `T(2,s)`.
pub fn realized_constructions(n: i64, s: i64) -> Option<Construction> {
    if !(n >= s.abs() && s != 0) {
        return None;
    }
    Some(match (n, s) {
        _ if s == n => construction("trivial band surgery T(2,n) -> T(2,n)", "Figure 1a"),
        _ if s == n - 1 => construction("band surgery T(2,n) -> T(2,n-1)", "Figure 1d"),
        _ if s == n - 4 => construction("band surgery T(2,n) -> T(2,n-4)", "Figure 1b"),
        _ if s.abs() == 1 => construction("band surgery T(2,n) -> unknot", "Figure 1e"),
        (3, -2) => construction("band surgery T(2,3) -> T(2,2), as L(-2,1) = L(2,1)", "Figure 1d"),
        (5, -5) => construction("chirally cosmetic banding of T(2,5) (Zekovic)", "Figure 1c"),
        (6, -2) => construction("band surgery T(2,6) -> T(2,2), as L(-2,1) = L(2,1)", "Figure 1b"),
        (6, -3) => construction("band surgery T(2,6) -> T(2,-3)", "Figure 1f"),
        _ => return None,
    })
}

fn is_quarter(x: &Rational) -> bool {
    *x == q(1, 4) || *x == q(-1, 4)
}

fn genus_admissible(x: &Rational) -> bool {
    x.is_zero() || *x == Rational::one()
}

fn quarter_differences(source: &LensSpace, target: &LensSpace) -> Result<Vec<Rational>> {
    let base = source.d_invariant(0)?;
    target.self_conjugate_spincs().into_iter().map(|i| Ok(target.d_invariant(i)? - &base)).collect()
}

fn different_parity(n: i64, s: i64) -> Result<()> {
    if (n - s).rem_euclid(2) == 0 {
        return Err(Error::Routing(format!("({n}, {s}) have the same parity")));
    }
    Ok(())
}

/// Different parities: the odd side is 1, 3, or at least 5.
pub fn case_a(n: i64, s: i64) -> Result<RouteReport> {
    different_parity(n, s)?;
    if !(n >= s.abs() && s != 0) {
        return Err(Error::domain(format!("case_a needs n >= |s| > 0, got ({n}, {s})")));
    }
    let route = RouteReport::new(None, None, CaseTag::A);
    let odd = if n % 2 == 1 { n } else { s.abs() };
    if odd == 1 {
        return Ok(route.pass(Passing::Trivial { reason: "surgery to or from the 3-sphere".into() }));
    }
    if odd == 3 {
        let source = "lidman-moore-vazquez";
        return Ok(match cited_decision(source, n, s) {
            Some(true) => route.pass(Passing::Cited { source: source.into() }),
            Some(false) => route.exclude(Certificate::CitedResult { source: source.into(), n, s }),
            None => return Err(Error::internal(format!("no cited decision for ({n}, {s})"))),
        });
    }
    let (source, target) = if n % 2 == 1 {
        (LensSpace::n1(n)?, LensSpace::n1(s)?)
    } else {
        (LensSpace::n1(s.abs())?, LensSpace::n1(n * s.signum())?)
    };
    let differences = quarter_differences(&source, &target)?;
    let indices = target.self_conjugate_spincs();
    match differences.iter().position(is_quarter) {
        Some(j) => Ok(route.pass(Passing::QuarterSolution { index: indices[j], difference: differences[j].clone() })),
        None => Ok(route.exclude(Certificate::SpinQuarterUnsolvable { source, target, differences })),
    }
}

/// Null-homologous routes, slopes `m = 1` and `m = -1`.
pub fn case_b_null(n: i64, s: i64) -> Result<Vec<RouteReport>> {
    if s.abs() != n || n < 1 {
        return Err(Error::Routing(format!("null-homologous routes need |s| = n, got ({n}, {s})")));
    }
    [1, -1].into_iter().map(|m| case_b_slope(n, s, m)).collect()
}

fn case_b_slope(n: i64, s: i64, m: i64) -> Result<RouteReport> {
    let route = RouteReport::new(Some(0), Some(m), CaseTag::B);
    if s == n {
        return Ok(route.pass(Passing::Trivial { reason: "surgery on an unknot in a ball".into() }));
    }
    if n % 2 == 1 {
        let source = "moore-vazquez";
        return Ok(if cited_decision(source, n, s) == Some(true) {
            route.pass(Passing::Cited { source: source.into() })
        } else {
            route.exclude(Certificate::CitedResult { source: source.into(), n, s })
        });
    }
    let (src, tgt) = if m == 1 {
        (LensSpace::n1(n)?, LensSpace::n1(-n)?)
    } else {
        (LensSpace::n1(-n)?, LensSpace::n1(n)?)
    };
    let prefix = if m == 1 { "1" } else { "2" };
    let spins = src.self_conjugate_spincs();
    let mut route = route;
    let mut certs = Vec::new();
    for (suffix, swap) in [("a", false), ("b", true)] {
        let subcase = format!("{prefix}{suffix}");
        let mut values = Vec::new();
        let mut worst: Option<(i64, i64, Rational)> = None;
        for (j, &t) in spins.iter().enumerate() {
            let t_target = if swap { spins[spins.len() - 1 - j] } else { t };
            let value = (src.d_invariant(t)? - tgt.d_invariant(t_target)?) / 2;
            if !genus_admissible(&value) && worst.as_ref().is_none_or(|w| value < w.2) {
                worst = Some((t, t_target, value.clone()));
            }
            values.push(value);
        }
        match worst {
            None => {
                route.passing.push(Passing::VValues { subcase, values });
            }
            Some((t, t_target, value)) => {
                certs.push(Certificate::NiWuInfeasible { subcase, source: src, target: tgt, t, t_target, value })
            }
        }
    }
    if route.passing.is_empty() {
        route.status = RouteStatus::Excluded;
    }
    route.certificates = certs;
    Ok(route)
}

/// `(b, c)` of `j^2 + b j + c` from the shifted d-invariant of `model = L(p, 1)` and `N1`.
fn quadratic_coefficients(model: &LensSpace, shifted: i64, n1: &Rational) -> Result<(i64, Rational)> {
    let p = model.order();
    let big_c = (n1 * 2 - model.d_invariant(shifted)? + q(1, 4)) * (4 * p);
    let c = (Rational::from_int(p) * p - big_c) / 4;
    Ok((-p, c))
}

fn quadratic_roots(b: i64, c: &Rational) -> Vec<i64> {
    match c.to_i64() {
        Some(c) => integer_roots_monic_quadratic(b, c),
        None => Vec::new(),
    }
}

/// `m = k - 1`: compare with the lens space `M = L(nk - n - k^2, k - 1)`.
pub fn case_e(n: i64, k: i64, s: i64, mode: Mode) -> Result<RouteReport> {
    let p = n * k - n - k * k;
    let in_range = (k == 2 && n >= 5) || (k == 3 && (6..=9).contains(&n)) || (k == 4 && n == 8);
    if !in_range || p != s.abs() {
        return Err(Error::internal(format!("case_e outside its range: n={n}, k={k}, s={s}")));
    }
    let route = RouteReport::new(Some(k), Some(k - 1), CaseTag::E);
    let model = LensSpace::new(p, k - 1)?;
    if s > 0 {
        let target = LensSpace::n1(s)?;
        return casson_walker_route(route, target, SurgeryModel::Lens(model), p, mode);
    }
    let target = LensSpace::n1(s)?;
    let mut route = route;
    let (q1, q2) = ((-1i64).rem_euclid(p), (k - 1).rem_euclid(p));
    let forms_match = linking_forms_isomorphic(p, q1, q2)?.is_some();
    if !forms_match {
        route.certificates.push(Certificate::LinkingFormMismatch { p, q1, q2 });
    }
    let ys = target.self_conjugate_spincs();
    let ms = model.self_conjugate_spincs();
    if ys.len() != ms.len() {
        return Err(Error::internal(format!("self-conjugate counts differ for {target} and {model}")));
    }
    let matchings: Vec<(String, Vec<i64>)> = if ms.len() == 1 {
        vec![("1a".into(), ms.clone())]
    } else {
        vec![("2a".into(), ms.clone()), ("2b".into(), ms.iter().rev().copied().collect())]
    };
    let mut passing = Vec::new();
    'matching: for (label, image) in matchings {
        let mut n0 = None;
        for (&t, &t_model) in ys.iter().zip(&image) {
            let value = (model.d_invariant(t_model)? - target.d_invariant(t)?) / 2;
            let witness = |value: Rational| (label.clone(), target, model, t, t_model, value);
            if value.is_negative() {
                let (matching, target, model, t, t_model, n0) = witness(value);
                route.certificates.push(Certificate::N0Negative { matching, target, model, t, t_model, n0 });
                continue 'matching;
            }
            if !value.is_integer() {
                let (matching, target, model, t, t_model, n0) = witness(value);
                route.certificates.push(Certificate::N0NonInteger { matching, target, model, t, t_model, n0 });
                continue 'matching;
            }
            if t == 0 {
                n0 = Some((t_model, value));
            }
        }
        let (t_model, n0) = n0.ok_or_else(|| Error::internal("index 0 is always self-conjugate on L(p,1)"))?;
        if n0 <= Rational::one() {
            passing.push(Passing::N0 { matching: label, n0 });
            continue;
        }
        if k != 2 {
            return Err(Error::internal(format!("N0 = {n0} >= 2 for k = {k}, n = {n}")));
        }
        let shifted = (t_model + 2).rem_euclid(p);
        let mut failures = Vec::new();
        let mut solved = None;
        for (suffix, n1) in [("N0", n0.clone()), ("N0minus1", &n0 - 1)] {
            let equation = format!("{label}-{suffix}");
            let (b, c) = quadratic_coefficients(&model, shifted, &n1)?;
            match quadratic_roots(b, &c).first() {
                Some(&root) => {
                    solved = Some(Passing::N1 { matching: label.clone(), equation, n0: n0.clone(), n1, root });
                    break;
                }
                None => failures.push(Certificate::QuadraticNoIntegerRoot {
                    equation,
                    n,
                    model,
                    shifted_index: shifted,
                    n1,
                    b,
                    c,
                }),
            }
        }
        match solved {
            Some(pass) => passing.push(pass),
            None => route.certificates.extend(failures),
        }
    }
    if forms_match && !passing.is_empty() {
        route.passing = passing;
    } else {
        route.status = RouteStatus::Excluded;
    }
    Ok(route)
}

fn casson_walker_route(
    mut route: RouteReport,
    target: LensSpace,
    model: SurgeryModel,
    h1: i64,
    mode: Mode,
) -> Result<RouteReport> {
    let check = casson_walker_obstruction(&target.casson_walker(), &model.casson_walker()?, h1);
    if !check.sign_ok {
        route.certificates.push(Certificate::CassonWalkerNegative {
            target,
            model: model.clone(),
            h1,
            delta: check.delta.clone(),
        });
    }
    if mode == Mode::Strict && !check.integral_ok {
        route.certificates.push(Certificate::CassonWalkerNonInteger {
            target,
            model,
            h1,
            scaled: &check.delta * h1,
        });
    }
    if route.certificates.is_empty() {
        Ok(route.pass(Passing::CassonWalker { delta: check.delta }))
    } else {
        route.status = RouteStatus::Excluded;
        Ok(route)
    }
}

fn reverse_model(model: &SurgeryModel) -> SurgeryModel {
    match model {
        SurgeryModel::Seifert(m) => SurgeryModel::Seifert(m.reverse()),
        SurgeryModel::Lens(l) => SurgeryModel::Lens(l.reverse()),
    }
}

/// `m <= k - 3`: Seifert L-space gate, magnitude gate, then Casson-Walker after reversing orientation.
pub fn case_f(n: i64, k: i64, m: i64, s: i64, mode: Mode) -> Result<RouteReport> {
    if !(m <= k - 3 && k >= 2 && 2 * k <= n) {
        return Err(Error::internal(format!("case_f outside its range: n={n}, k={k}, m={m}")));
    }
    let route = RouteReport::new(Some(k), Some(m), CaseTag::F);
    if !is_lspace_surgery_model(n, k, m)? {
        return Ok(route.exclude(Certificate::NotLSpaceSeifert { n, k, m }));
    }
    let h1 = h1_after_surgery(n, k, m)?;
    if m <= -1 {
        return Ok(route.exclude(Certificate::MagnitudeExceeds { n, k, m, h1 }));
    }
    if crate::surgery::framing_sign(n, k, m)? != Sign::Negative || h1 != s.abs() {
        return Err(Error::internal(format!("case_f expects negative framing and |H1| = |s| at ({n},{k},{m},{s})")));
    }
    let model = reverse_model(&surgery_model(n, k, m)?);
    casson_walker_route(route, LensSpace::n1(s)?.reverse(), model, h1, mode)
}

fn essential_route(c: &SurgeryCandidate, mode: Mode) -> Result<RouteReport> {
    let route = RouteReport::essential(c);
    if let Some(parity) = c.parity.filter(|p| !p.admissible) {
        return Ok(route.exclude(Certificate::ParityExcluded { n: c.n, s: c.s, k: c.k, m: c.m, clause: parity.clause }));
    }
    if let Some(cy) = c.cyclicity.filter(|cy| !cy.admissible()) {
        return Ok(route.exclude(Certificate::CyclicityFailed {
            n: c.n,
            k: c.k,
            m: c.m,
            d: cy.d,
            first: cy.first,
            middle: cy.middle,
            gcd: cy.gcd,
        }));
    }
    match c.tag {
        CaseTag::C => Ok(if c.m == 0 {
            route.pass(Passing::Trivial { reason: "k = 1, m = 0 gives |s| = 1".into() })
        } else {
            let h1 = h1_after_surgery(c.n, c.k, c.m)?;
            route.exclude(Certificate::MagnitudeExceeds { n: c.n, k: c.k, m: c.m, h1 })
        }),
        CaseTag::D => {
            let h1 = h1_after_surgery(c.n, c.k, c.m)?;
            Ok(route.exclude(Certificate::MagnitudeExceeds { n: c.n, k: c.k, m: c.m, h1 }))
        }
        CaseTag::E => case_e(c.n, c.k, c.s, mode),
        CaseTag::F => case_f(c.n, c.k, c.m, c.s, mode),
        other => Err(Error::internal(format!("unexpected tag {other} for an essential candidate"))),
    }
}

fn same_parity_routes(n: i64, s: i64, mode: Mode) -> Result<Vec<RouteReport>> {
    let candidates = enumerate_candidates(n, s)?;
    if candidates.is_empty() {
        return Ok(vec![RouteReport::new(None, None, CaseTag::B).exclude(Certificate::NoHomologicalSlope { n, s })]);
    }
    let mut routes = Vec::new();
    if s.abs() == n {
        routes.extend(case_b_null(n, s)?);
    }
    for c in candidates.iter().filter(|c| c.k > 0) {
        routes.push(essential_route(c, mode)?);
    }
    Ok(routes)
}

pub fn classify(n: i64, s: i64) -> Result<Verdict> {
    classify_with(n, s, Mode::default())
}

pub fn classify_with(n: i64, s: i64, mode: Mode) -> Result<Verdict> {
    let (nn, ss) = normalize(n, s)?;
    let candidates = if (nn - ss).rem_euclid(2) == 1 { vec![case_a(nn, ss)?] } else { same_parity_routes(nn, ss, mode)? };
    let construction = realized_constructions(nn, ss);
    let any_survivor = candidates.iter().any(RouteReport::survives);
    let verdict = match (&construction, any_survivor) {
        (Some(_), true) => VerdictKind::Realized,
        (Some(_), false) => {
            return Err(Error::internal(format!("({nn}, {ss}) is realized but every route was excluded")));
        }
        (None, true) => VerdictKind::Unresolved,
        (None, false) => VerdictKind::Obstructed,
    };
    Ok(Verdict {
        n: nn,
        s: ss,
        input: ((nn, ss) != (n, s)).then_some((n, s)),
        verdict,
        mode,
        candidates,
        construction,
    })
}

/// All pairs `1 <= |s| <= n <= n_max`, ordered by `n` ascending then `s` descending.
pub fn table_pairs(n_max: i64) -> Vec<(i64, i64)> {
    (1..=n_max).flat_map(|n| (-n..=n).rev().filter(|&s| s != 0).map(move |s| (n, s))).collect()
}

pub fn table(n_max: i64, mode: Mode) -> Result<Vec<Verdict>> {
    if n_max < 1 {
        return Err(Error::domain(format!("table needs n_max >= 1, got {n_max}")));
    }
    table_pairs(n_max).into_par_iter().map(|(n, s)| classify_with(n, s, mode)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(v: &Verdict) -> Vec<&'static str> {
        v.certificates().map(Certificate::kind).collect()
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(3, 7).unwrap(), (7, 3));
        assert_eq!(normalize(3, -7).unwrap(), (7, -3));
        assert_eq!(normalize(7, -3).unwrap(), (7, -3));
        assert!(normalize(0, 1).is_err());
        assert!(normalize(4, 0).is_err());
    }

    #[test]
    fn realized_lookup() {
        assert_eq!(realized_constructions(8, 4).unwrap().figure, "Figure 1b");
        assert_eq!(realized_constructions(5, -5).unwrap().figure, "Figure 1c");
        for (n, s) in [(9, -5), (9, -9), (10, -10), (14, -10), (7, -7)] {
            assert!(realized_constructions(n, s).is_none(), "({n}, {s})");
        }
    }

    #[test]
    fn case_a_examples() {
        assert!(case_a(7, 6).unwrap().survives());
        assert!(case_a(3, -2).unwrap().survives());
        let r = case_a(7, -4).unwrap();
        assert!(!r.survives());
        assert_eq!(r.certificates[0].kind(), "SpinQuarterUnsolvable");
        assert!(r.certificates[0].reverify().unwrap());
        assert!(matches!(case_a(7, 5), Err(Error::Routing(_))));
    }

    #[test]
    fn case_b_examples() {
        let routes = case_b_null(10, -10).unwrap();
        assert!(routes[0].survives());
        assert!(routes[0].passing.contains(&Passing::VValues { subcase: "1b".into(), values: vec![Rational::one(); 2] }));
        let six = case_b_null(6, -6).unwrap();
        assert!(six.iter().all(|r| !r.survives()));
        let values: Vec<(String, Rational)> = six
            .iter()
            .flat_map(|r| &r.certificates)
            .map(|c| match c {
                Certificate::NiWuInfeasible { subcase, value, .. } => (subcase.clone(), value.clone()),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(
            values,
            vec![("1a".into(), q(-1, 4)), ("1b".into(), q(1, 2)), ("2a".into(), q(-5, 4)), ("2b".into(), q(-1, 2))]
        );
        assert!(case_b_null(6, -4).is_err());
    }

    #[test]
    fn case_e_examples() {
        let r = case_e(9, 2, -5, Mode::PaperFaithful).unwrap();
        assert_eq!(r.passing, vec![Passing::N0 { matching: "1a".into(), n0: Rational::one() }]);
        let r = case_e(7, 3, -5, Mode::PaperFaithful).unwrap();
        assert!(r.certificates.iter().any(|c| matches!(c, Certificate::N0NonInteger { n0, .. } if *n0 == q(1, 2))));
        let r = case_e(8, 4, -8, Mode::PaperFaithful).unwrap();
        assert_eq!(r.certificates[0], Certificate::LinkingFormMismatch { p: 8, q1: 7, q2: 3 });
        assert!(!r.survives());
        assert!(case_e(20, 3, -5, Mode::PaperFaithful).unwrap_err().is_internal());
    }

    #[test]
    fn case_e_quadratics() {
        let r = case_e(13, 2, -9, Mode::PaperFaithful).unwrap();
        let eqs: Vec<(String, i64, Rational)> = r
            .certificates
            .iter()
            .filter_map(|c| match c {
                Certificate::QuadraticNoIntegerRoot { equation, b, c, .. } => Some((equation.clone(), *b, c.clone())),
                _ => None,
            })
            .collect();
        assert_eq!(eqs, vec![("1a-N0".into(), -9, Rational::from_int(-14)), ("1a-N0minus1".into(), -9, Rational::from_int(4))]);
        let r = case_e(22, 2, -18, Mode::PaperFaithful).unwrap();
        let cs: Vec<Rational> = r
            .certificates
            .iter()
            .filter_map(|c| match c {
                Certificate::QuadraticNoIntegerRoot { c, .. } => Some(c.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(cs, vec![Rational::from_int(4), Rational::from_int(40)]);
    }

    #[test]
    fn case_f_examples() {
        let r = case_f(10, 3, 0, 9, Mode::PaperFaithful).unwrap();
        assert!(matches!(&r.certificates[..], [Certificate::CassonWalkerNegative { delta, .. }] if *delta == q(-7, 27)));
        let r = case_f(8, 4, 1, -8, Mode::PaperFaithful).unwrap();
        assert!(matches!(&r.certificates[..], [Certificate::CassonWalkerNegative { delta, .. }] if *delta == q(-5, 8)));
        let r = case_f(12, 4, 1, 4, Mode::PaperFaithful).unwrap();
        assert_eq!(r.certificates, vec![Certificate::NotLSpaceSeifert { n: 12, k: 4, m: 1 }]);
    }

    #[test]
    fn classify_examples() {
        let v = classify(7, -7).unwrap();
        assert_eq!(v.verdict, VerdictKind::Obstructed);
        assert_eq!(kinds(&v), vec!["CitedResult", "CitedResult"]);
        let v = classify(9, -9).unwrap();
        assert_eq!(v.verdict, VerdictKind::Unresolved);
        let survivor: Vec<_> = v.surviving().collect();
        assert_eq!(survivor.len(), 1);
        assert_eq!((survivor[0].k, survivor[0].m), (Some(3), Some(2)));
        assert_eq!(survivor[0].passing, vec![Passing::N0 { matching: "1a".into(), n0: Rational::one() }]);
        assert_eq!(classify(12, 12).unwrap().verdict, VerdictKind::Realized);
        assert_eq!(classify(8, -6).unwrap().verdict, VerdictKind::Obstructed);
        assert!(classify(0, 1).is_err());
    }

    #[test]
    fn normalized_input_is_recorded() {
        let v = classify(4, 9).unwrap();
        assert_eq!((v.n, v.s, v.input), (9, 4, Some((4, 9))));
    }

    #[test]
    fn small_table_order() {
        let t = table(2, Mode::PaperFaithful).unwrap();
        let pairs: Vec<(i64, i64)> = t.iter().map(|v| (v.n, v.s)).collect();
        assert_eq!(pairs, vec![(1, 1), (1, -1), (2, 2), (2, 1), (2, -1), (2, -2)]);
        assert!(t.iter().all(|v| v.verdict == VerdictKind::Realized));
    }

    #[test]
    fn verdict_json_round_trip() {
        let v = classify(9, -5).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("\"verdict\":\"Unresolved\""));
        let back: Verdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }
}
