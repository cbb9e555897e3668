//! Symbolic mapping cones in Rasmussen's notation.
//!
//! A [`KnotProfile`] stores `V` and `H` on a finite window of one orbit of
//! relative Spin^c structures, extended outside the window by the canonical
//! staircases. A framing step `g` picks a sub-orbit `xi + n g`, whose symbols
//! form a [`ConePattern`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    /// `v` nontrivial, `h` trivial: `V = 0, H > 0`.
    Plus,
    /// `h` nontrivial, `v` trivial: `V > 0, H = 0`.
    Minus,
    /// both nontrivial: `V = H = 0`.
    Circle,
    /// both trivial: `V, H > 0`.
    Star,
}

impl Symbol {
    pub fn from_vh(v: i64, h: i64) -> Symbol {
        match (v == 0, h == 0) {
            (true, false) => Symbol::Plus,
            (false, true) => Symbol::Minus,
            (true, true) => Symbol::Circle,
            (false, false) => Symbol::Star,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Plus => '+',
            Symbol::Minus => '-',
            Symbol::Circle => 'o',
            Symbol::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '+' => Some(Symbol::Plus),
            '-' | '−' => Some(Symbol::Minus),
            'o' | '∘' => Some(Symbol::Circle),
            '*' | '∗' => Some(Symbol::Star),
            _ => None,
        }
    }

    fn has_vertical(self) -> bool {
        matches!(self, Symbol::Plus | Symbol::Circle)
    }

    fn has_diagonal(self) -> bool {
        matches!(self, Symbol::Minus | Symbol::Circle)
    }
}

/// `V` and `H` on the window `lo..lo+len`, staircase-extended outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotProfile {
    lo: i64,
    v: Vec<i64>,
    h: Vec<i64>,
}

impl KnotProfile {
    pub fn new(lo: i64, v: Vec<i64>, h: Vec<i64>) -> Result<Self> {
        if v.is_empty() || v.len() != h.len() {
            return Err(Error::domain("profile window must be non-empty with matching V and H lengths"));
        }
        if v.iter().chain(&h).any(|x| *x < 0) {
            return Err(Error::domain("V and H must be non-negative"));
        }
        for j in 1..v.len() {
            let xi = lo + j as i64;
            if !(v[j] <= v[j - 1] && v[j] >= v[j - 1] - 1) {
                return Err(Error::domain(format!("V is not a staircase at xi = {xi}")));
            }
            if !(h[j] >= h[j - 1] && h[j] <= h[j - 1] + 1) {
                return Err(Error::domain(format!("H is not a staircase at xi = {xi}")));
            }
        }
        Ok(KnotProfile { lo, v, h })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.v.len() as i64 - 1
    }

    pub fn window_v(&self) -> &[i64] {
        &self.v
    }

    pub fn window_h(&self) -> &[i64] {
        &self.h
    }

    pub fn vh(&self, xi: i64) -> (i64, i64) {
        let (lo, hi) = (self.lo, self.hi());
        if xi < lo {
            let (v0, h0) = (self.v[0], self.h[0]);
            let t = lo - xi;
            (v0 + (t - h0).max(0), (h0 - t).max(0))
        } else if xi > hi {
            let last = self.v.len() - 1;
            let (v1, h1) = (self.v[last], self.h[last]);
            let t = xi - hi;
            ((v1 - t).max(0), h1 + (t - v1).max(0))
        } else {
            let j = (xi - lo) as usize;
            (self.v[j], self.h[j])
        }
    }

    pub fn v(&self, xi: i64) -> i64 {
        self.vh(xi).0
    }

    pub fn h(&self, xi: i64) -> i64 {
        self.vh(xi).1
    }

    pub fn symbol(&self, xi: i64) -> Symbol {
        let (v, h) = self.vh(xi);
        Symbol::from_vh(v, h)
    }

    /// Range outside of which every symbol is a pure tail (`-` left, `+` right)
    /// and `min(V, H) = 0`.
    pub fn active_range(&self) -> (i64, i64) {
        let last = self.v.len() - 1;
        (self.lo - self.h[0] - 1, self.hi() + self.v[last] + 1)
    }

    /// The V-H difference at `xi`, preserved between homologous knots.
    pub fn difference(&self, xi: i64) -> i64 {
        let (v, h) = self.vh(xi);
        v - h
    }
}

/// Translation step `g` of the framing on the index line; positive `g` is a positive framing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Framing(i64);

impl Framing {
    pub fn new(g: i64) -> Result<Self> {
        if g == 0 {
            return Err(Error::domain("framing step must be nonzero"));
        }
        Ok(Framing(g))
    }

    pub fn g(&self) -> i64 {
        self.0
    }
}

fn orbit(profile: &KnotProfile, framing: Framing, coset: i64, margin: i64) -> Vec<i64> {
    let step = framing.g().abs();
    let (a, b) = profile.active_range();
    let (a, b) = (a - margin, b + margin);
    let c = coset.rem_euclid(step);
    let first = a + (c - a).rem_euclid(step);
    (0..).map(|j| first + j * step).take_while(|xi| *xi <= b).collect()
}

/// Symbols along one framing orbit, ordered left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConePattern {
    symbols: Vec<Symbol>,
}

impl ConePattern {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        ConePattern { symbols }
    }

    /// Pattern of the orbit `coset + Z g`, truncated `2|g|` beyond the pure tails.
    pub fn from_profile(profile: &KnotProfile, framing: Framing, coset: i64) -> Result<Self> {
        if framing.g() < 0 {
            return Err(Error::domain("cone patterns are built for positive framings; reverse orientation first"));
        }
        let margin = 2 * framing.g();
        let symbols = orbit(profile, framing, coset, margin).into_iter().map(|xi| profile.symbol(xi)).collect();
        Ok(ConePattern { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    fn check_tails(&self) -> Result<()> {
        match (self.symbols.first(), self.symbols.last()) {
            (Some(Symbol::Minus), Some(Symbol::Plus)) => Ok(()),
            _ => Err(Error::domain(format!("pattern {self} must start with '-' and end with '+'"))),
        }
    }
}

impl fmt::Display for ConePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.symbols.iter().map(|s| s.as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for ConePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',' && *c != '[' && *c != ']')
            .map(|c| Symbol::from_char(c).ok_or_else(|| Error::domain(format!("unknown cone symbol {c:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(ConePattern::new)
    }
}

/// L-space test on a pattern, with the violated clauses:
/// 1 (at most one `*`), 2 (no `-` right of a `+` or `*`), 3 (no `+` left of a `-` or `*`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSpaceCheck {
    pub is_lspace: bool,
    pub violated: Vec<u8>,
}

pub fn is_lspace_pattern(pattern: &ConePattern) -> Result<LSpaceCheck> {
    pattern.check_tails()?;
    let syms = pattern.symbols();
    let stars = syms.iter().filter(|s| **s == Symbol::Star).count();
    let first_plus_or_star = syms.iter().position(|s| matches!(s, Symbol::Plus | Symbol::Star));
    let last_minus = syms.iter().rposition(|s| *s == Symbol::Minus);
    let last_minus_or_star = syms.iter().rposition(|s| matches!(s, Symbol::Minus | Symbol::Star));
    let first_plus = syms.iter().position(|s| *s == Symbol::Plus);

    let mut violated = Vec::new();
    if stars > 1 {
        violated.push(1);
    }
    if matches!((first_plus_or_star, last_minus), (Some(a), Some(b)) if b > a) {
        violated.push(2);
    }
    if matches!((first_plus, last_minus_or_star), (Some(a), Some(b)) if b > a) {
        violated.push(3);
    }
    Ok(LSpaceCheck { is_lspace: violated.is_empty(), violated })
}

/// Rank of `ker + coker` of the hat cone map over F2, by elimination.
///
/// Columns are `A_0..A_{L-1}`, rows `B_1..B_{L-1}`; `A_j` maps to `B_j` when its
/// vertical map is nontrivial and to `B_{j+1}` when its diagonal map is.
pub fn homology_rank(pattern: &ConePattern) -> Result<usize> {
    pattern.check_tails()?;
    let cols = pattern.len();
    let rows = cols - 1;
    // one bitset row per B, one bit per A
    let words = cols.div_ceil(64);
    let mut matrix = vec![vec![0u64; words]; rows];
    for (j, s) in pattern.symbols().iter().enumerate() {
        if s.has_vertical() && j >= 1 {
            matrix[j - 1][j / 64] |= 1 << (j % 64);
        }
        if s.has_diagonal() && j < rows {
            matrix[j][j / 64] |= 1 << (j % 64);
        }
    }
    let rank = f2_rank(&mut matrix, cols);
    Ok(cols - rank + rows - rank)
}

fn f2_rank(matrix: &mut [Vec<u64>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pivot) = (rank..matrix.len()).find(|&r| matrix[r][w] & bit != 0) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let pivot_row = matrix[rank].clone();
        for (r, row) in matrix.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank by counting: each `*`, plus one per interval `[-,+]`, `[+,-]`, `[+,*]`,
/// `[*,-]` or `[*,*]` between consecutive non-`o` symbols.
pub fn homology_rank_by_intervals(pattern: &ConePattern) -> Result<usize> {
    pattern.check_tails()?;
    let marked: Vec<Symbol> = pattern.symbols().iter().copied().filter(|s| *s != Symbol::Circle).collect();
    let stars = marked.iter().filter(|s| **s == Symbol::Star).count();
    let intervals = marked
        .windows(2)
        .filter(|w| {
            matches!(
                (w[0], w[1]),
                (Symbol::Minus, Symbol::Plus)
                    | (Symbol::Plus, Symbol::Minus)
                    | (Symbol::Plus, Symbol::Star)
                    | (Symbol::Star, Symbol::Minus)
                    | (Symbol::Star, Symbol::Star)
            )
        })
        .count();
    Ok(stars + intervals)
}

/// `N = max over the orbit xi + n g of min(V, H)`.
pub fn grading_shift_n(profile: &KnotProfile, framing: Framing, coset: i64) -> i64 {
    orbit(profile, framing, coset, 0)
        .into_iter()
        .map(|xi| {
            let (v, h) = profile.vh(xi);
            v.min(h)
        })
        .max()
        .unwrap_or(0)
}

/// `small <= big` when `V(small) <= V(big)` everywhere. Requires equal V-H.
pub fn profile_partial_order(small: &KnotProfile, big: &KnotProfile) -> Result<bool> {
    let (a1, b1) = small.active_range();
    let (a2, b2) = big.active_range();
    let (a, b) = (a1.min(a2) - 1, b1.max(b2) + 1);
    if let Some(xi) = (a..=b).find(|&xi| small.difference(xi) != big.difference(xi)) {
        return Err(Error::IncomparableProfiles(format!(
            "V-H differs at xi = {xi}: {} vs {}",
            small.difference(xi),
            big.difference(xi)
        )));
    }
    Ok((a..=b).all(|xi| small.v(xi) <= big.v(xi)))
}

/// `d(Y_g(K), s) = d(Y_g(K'), s) + 2 N(K') - 2 N(K)`.
pub fn d_from_surgery_formula(d_model: &Rational, n_model: i64, n_knot: i64) -> Rational {
    d_model + Rational::from_int(2 * n_model - 2 * n_knot)
}

/// Parses the text format: a `g=<int>` header, then `xi V H` lines over a
/// contiguous window. Blank lines and `#` comments are skipped.
pub fn parse_profile(text: &str) -> Result<(KnotProfile, Framing)> {
    let mut framing = None;
    let mut rows: Vec<(i64, i64, i64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("g=") {
            let g = rest
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::domain(format!("line {line_no}: bad framing {rest:?}")))?;
            framing = Some(Framing::new(g).map_err(|e| Error::domain(format!("line {line_no}: {e}")))?);
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::domain(format!("line {line_no}: expected three integers \"xi V H\"")))?;
        let [xi, v, h] = nums[..] else {
            return Err(Error::domain(format!("line {line_no}: expected three integers \"xi V H\"")));
        };
        if let Some(&(prev, _, _)) = rows.last() {
            if xi != prev + 1 {
                return Err(Error::domain(format!("line {line_no}: indices must be consecutive")));
            }
        }
        rows.push((xi, v, h));
    }
    let framing = framing.ok_or_else(|| Error::domain("missing \"g=<int>\" header"))?;
    let lo = rows.first().map(|r| r.0).ok_or_else(|| Error::domain("profile has no rows"))?;
    let profile = KnotProfile::new(lo, rows.iter().map(|r| r.1).collect(), rows.iter().map(|r| r.2).collect())?;
    Ok((profile, framing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn pat(s: &str) -> ConePattern {
        s.parse().unwrap()
    }

    /// Simple profile: V = max(0, -xi), H = max(0, xi).
    fn simple() -> KnotProfile {
        KnotProfile::new(-2, vec![2, 1, 0, 0, 0], vec![0, 0, 0, 1, 2]).unwrap()
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(Symbol::from_vh(0, 3), Symbol::Plus);
        assert_eq!(Symbol::from_vh(0, 0), Symbol::Circle);
        assert_eq!(Symbol::from_vh(2, 3), Symbol::Star);
        assert_eq!(Symbol::from_vh(1, 0), Symbol::Minus);
    }

    #[test]
    fn staircase_extension() {
        let p = KnotProfile::new(0, vec![2], vec![1]).unwrap();
        assert_eq!(p.vh(1), (1, 1));
        assert_eq!(p.vh(3), (0, 2));
        assert_eq!(p.vh(-1), (2, 0));
        assert_eq!(p.vh(-3), (4, 0));
        for xi in -6..6 {
            assert_eq!(p.difference(xi), 1 - xi);
        }
    }

    #[test]
    fn rejects_non_monotone_profiles() {
        assert!(KnotProfile::new(0, vec![1, 2], vec![0, 0]).is_err());
        assert!(KnotProfile::new(0, vec![3, 1], vec![0, 0]).is_err());
        assert!(KnotProfile::new(0, vec![1, 1], vec![0, 2]).is_err());
        assert!(KnotProfile::new(0, vec![-1], vec![0]).is_err());
        assert!(KnotProfile::new(0, vec![], vec![]).is_err());
    }

    #[test]
    fn figure_patterns() {
        let fig4 = pat("--o+o**o++");
        assert_eq!(is_lspace_pattern(&fig4).unwrap().violated, vec![1, 3]);
        assert_eq!(homology_rank(&fig4).unwrap(), 5);
        let fig5 = pat("---o*o+o++");
        assert!(is_lspace_pattern(&fig5).unwrap().is_lspace);
        assert_eq!(homology_rank(&fig5).unwrap(), 1);
        let fig7 = pat("--o--o++oo+");
        assert_eq!(homology_rank(&fig7).unwrap(), 1);
        assert_eq!(homology_rank_by_intervals(&fig7).unwrap(), 1);
    }

    #[test]
    fn malformed_tails_rejected() {
        assert!(is_lspace_pattern(&pat("o+")).is_err());
        assert!(homology_rank(&pat("-o")).is_err());
        assert!(is_lspace_pattern(&pat("-ooo+")).unwrap().is_lspace);
    }

    #[test]
    fn grading_shift_examples() {
        let g1 = Framing::new(1).unwrap();
        assert_eq!(grading_shift_n(&simple(), g1, 0), 0);
        let star = KnotProfile::new(0, vec![3, 2, 1], vec![1, 2, 3]).unwrap();
        assert_eq!(grading_shift_n(&star, Framing::new(5).unwrap(), 1), 2);
        assert_eq!(grading_shift_n(&star, Framing::new(5).unwrap(), 3), 0);
    }

    #[test]
    fn partial_order_examples() {
        let s = simple();
        assert!(profile_partial_order(&s, &s).unwrap());
        let mut v = s.window_v().to_vec();
        let mut h = s.window_h().to_vec();
        v[2] += 1;
        h[2] += 1;
        let bumped = KnotProfile::new(-2, v, h).unwrap();
        assert!(profile_partial_order(&s, &bumped).unwrap());
        assert!(!profile_partial_order(&bumped, &s).unwrap());
        let shifted = KnotProfile::new(0, vec![1], vec![0]).unwrap();
        assert!(matches!(profile_partial_order(&s, &shifted), Err(Error::IncomparableProfiles(_))));
    }

    #[test]
    fn surgery_formula_examples() {
        assert_eq!(d_from_surgery_formula(&q(5, 4), 0, 0), q(5, 4));
        assert_eq!(d_from_surgery_formula(&q(1, 4), 0, 1), q(-7, 4));
    }

    #[test]
    fn parses_profile_text() {
        let (p, g) = parse_profile("g=3\n# window\n-1 1 0\n0 0 0\n1 0 1\n").unwrap();
        assert_eq!(g.g(), 3);
        assert_eq!((p.lo(), p.hi()), (-1, 1));
        let err = parse_profile("g=3\n0 0 0\n2 0 1\n").unwrap_err();
        assert!(err.to_string().contains("line 3"));
        assert!(parse_profile("0 0 0\n").is_err());
        assert!(parse_profile("g=0\n0 0 0\n").is_err());
    }

    #[test]
    fn simple_profile_pattern_is_lspace() {
        let pattern = ConePattern::from_profile(&simple(), Framing::new(2).unwrap(), 0).unwrap();
        assert!(is_lspace_pattern(&pattern).unwrap().is_lspace);
        assert_eq!(homology_rank(&pattern).unwrap(), 1);
    }
}
