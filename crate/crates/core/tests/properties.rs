mod common;

use lenslab::conemodel::{homology_rank, homology_rank_by_intervals, is_lspace_pattern};
use lenslab::exactmath::{gcd, gcd_ext, hj_expansion, mod_inverse};
use lenslab::lens::{d_closed_form_n1, LensSpace};
use lenslab::{q, Rational};
use proptest::prelude::*;

fn frac(a: i64, b: i64) -> (i128, i128) {
    let g = gcd(a, b) as i128;
    let (mut a, mut b) = (a as i128 / g, b as i128 / g);
    if b < 0 {
        (a, b) = (-a, -b);
    }
    (a, b)
}

proptest! {
    #[test]
    fn rational_ops_match_cross_multiplication(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let (x, y) = (q(a, b), q(c, d));
        let sum = &x + &y;
        let (n, m) = frac(a * d + c * b, b * d);
        prop_assert_eq!(sum.to_string(), if m == 1 { n.to_string() } else { format!("{n}/{m}") });
        prop_assert_eq!(&x * &y, q(a * c, b * d));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        let parsed: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn bezout_holds(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assume!(a != 0 || b != 0);
        let (g, x, y) = gcd_ext(a, b).unwrap();
        prop_assert_eq!(a as i128 * x as i128 + b as i128 * y as i128, g as i128);
        prop_assert_eq!(g, gcd(a, b));
    }

    #[test]
    fn inverse_and_expansion(p in 2i64..2000, qq in 1i64..2000) {
        prop_assume!(qq < p && gcd(p, qq) == 1);
        let inv = mod_inverse(qq, p).unwrap();
        prop_assert_eq!((inv as i128 * qq as i128) % p as i128, 1);
        let hj = hj_expansion(p, qq).unwrap();
        prop_assert!(hj.terms().iter().all(|a| *a >= 2));
        prop_assert_eq!(hj.evaluate(), q(p, qq));
    }

    #[test]
    fn d_invariants_are_conjugation_symmetric(n in 1i64..300, i in 0i64..300) {
        prop_assume!(i < n);
        let lens = LensSpace::n1(n).unwrap();
        let j = (n - i) % n;
        prop_assert_eq!(lens.d_invariant(i).unwrap(), lens.d_invariant(j).unwrap());
        prop_assert_eq!(lens.reverse().d_invariant(i).unwrap(), -d_closed_form_n1(n, i).unwrap());
    }

    #[test]
    fn casson_walker_reverses_sign(p in 2i64..400, qq in 1i64..400) {
        prop_assume!(qq < p && gcd(p, qq) == 1);
        let lens = LensSpace::new(p, qq).unwrap();
        prop_assert_eq!(lens.reverse().casson_walker(), -lens.casson_walker());
        // L(p, q) and L(p, q') with q q' = 1 (mod p) are homeomorphic
        let other = LensSpace::new(p, mod_inverse(qq, p).unwrap()).unwrap();
        prop_assert_eq!(other.casson_walker(), lens.casson_walker());
    }

    #[test]
    fn pattern_rank_by_counting_matches_elimination(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let pattern = common::random_pattern(&mut r, 40);
        let rank = homology_rank(&pattern).unwrap();
        prop_assert_eq!(rank, homology_rank_by_intervals(&pattern).unwrap());
        prop_assert_eq!(rank, common::dense_rank_oracle(&pattern));
        prop_assert_eq!(is_lspace_pattern(&pattern).unwrap().is_lspace, rank == 1);
    }
}
