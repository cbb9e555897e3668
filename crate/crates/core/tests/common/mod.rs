//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use lenslab::conemodel::{ConePattern, KnotProfile, Symbol};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub const FIG4: &str = "--o+o**o++";
pub const FIG5: &str = "---o*o+o++";
pub const FIG7: &str = "--o--o++oo+";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The pairs listed in the classification theorem, for `n >= |s| > 0`.
pub fn theorem_pairs(n: i64, s: i64) -> bool {
    let family = [1, -1, n, n - 1, n - 4].contains(&s);
    let sporadic = [(3, -2), (5, -5), (6, -2), (6, -3), (9, -5), (9, -9), (10, -10), (14, -10)].contains(&(n, s));
    n >= s.abs() && s != 0 && (family || sporadic)
}

pub const UNRESOLVED: [(i64, i64); 4] = [(9, -5), (9, -9), (10, -10), (14, -10)];

/// Any symbol string starting with `-` and ending with `+`.
pub fn random_pattern(rng: &mut impl Rng, max_inner: usize) -> ConePattern {
    let all = [Symbol::Plus, Symbol::Minus, Symbol::Circle, Symbol::Star];
    let inner = rng.gen_range(0..=max_inner);
    let mut symbols = vec![Symbol::Minus];
    symbols.extend((0..inner).map(|_| all[rng.gen_range(0..4)]));
    symbols.push(Symbol::Plus);
    ConePattern::new(symbols)
}

/// A staircase profile with `V - H = c - xi` on a random window.
pub fn random_profile(rng: &mut impl Rng) -> KnotProfile {
    let len = rng.gen_range(1..=12usize);
    let lo = rng.gen_range(-8..=2i64);
    let c = rng.gen_range(-3..=3i64);
    let d0 = c - lo;
    let mut v = vec![d0.max(0) + rng.gen_range(0..=3)];
    let mut h = vec![v[0] - d0];
    for j in 1..len {
        let prev = v[j - 1];
        let drop = if prev >= 1 && rng.gen_bool(0.5) { 1 } else { 0 };
        v.push(prev - drop);
        h.push(h[j - 1] + 1 - drop);
    }
    KnotProfile::new(lo, v, h).expect("generator keeps the staircase conditions")
}

/// Lowers `V` and `H` together at interior window points, keeping a valid profile.
pub fn shrink_profile(rng: &mut impl Rng, big: &KnotProfile) -> KnotProfile {
    let (mut v, mut h) = (big.window_v().to_vec(), big.window_h().to_vec());
    let len = v.len();
    if len < 3 {
        return big.clone();
    }
    for _ in 0..rng.gen_range(1..=4) {
        let j = rng.gen_range(1..len - 1);
        if v[j] == 0 || h[j] == 0 {
            continue;
        }
        let (mut v2, mut h2) = (v.clone(), h.clone());
        v2[j] -= 1;
        h2[j] -= 1;
        if KnotProfile::new(big.lo(), v2.clone(), h2.clone()).is_ok() {
            (v, h) = (v2, h2);
        }
    }
    KnotProfile::new(big.lo(), v, h).expect("only valid edits are kept")
}

/// Rank of the hat cone by building the dense F2 matrix and row reducing with `Vec<bool>`.
pub fn dense_rank_oracle(pattern: &ConePattern) -> usize {
    let syms = pattern.symbols();
    let cols = syms.len();
    let rows = cols - 1;
    let mut m = vec![vec![false; cols]; rows];
    for (j, s) in syms.iter().enumerate() {
        let vertical = matches!(s, Symbol::Plus | Symbol::Circle);
        let diagonal = matches!(s, Symbol::Minus | Symbol::Circle);
        if vertical && j >= 1 {
            m[j - 1][j] = true;
        }
        if diagonal && j < rows {
            m[j][j] = true;
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows).find(|&r| m[r][c]) {
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && m[r][c] {
                    let pivot = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
    }
    cols - rank + rows - rank
}
