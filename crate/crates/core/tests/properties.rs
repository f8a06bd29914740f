use std::collections::BTreeSet;

use proptest::prelude::*;
use sumsetlab_core::*;

fn set_strategy(lo: i64, hi: i64, max_len: usize) -> impl Strategy<Value = IntSet> {
    prop::collection::vec(lo..=hi, 1..=max_len).prop_map(|v| IntSet::new(v).unwrap())
}

/// Normalized pair with `diam A >= diam B`.
fn pair_strategy(max_diam: i64) -> impl Strategy<Value = (IntSet, IntSet)> {
    (set_strategy(0, max_diam, 14), set_strategy(0, max_diam, 14)).prop_map(|(a, b)| {
        let (a, _) = normalize(&a);
        let (b, _) = normalize(&b);
        if a.max() >= b.max() {
            (a, b)
        } else {
            (b, a)
        }
    })
}

fn naive_sumset(a: &IntSet, b: &IntSet) -> BTreeSet<i64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x + y))
        .collect()
}

fn to_vec(s: &IntSet) -> Vec<i64> {
    s.iter().collect()
}

proptest! {
    #[test]
    fn sumset_matches_pairwise(a in set_strategy(-60, 60, 12), b in set_strategy(-60, 60, 12)) {
        let s = sumset(&a, &b).unwrap();
        prop_assert_eq!(to_vec(&s), naive_sumset(&a, &b).into_iter().collect::<Vec<_>>());
        prop_assert!(s.len() >= a.len() + b.len() - 1);
    }

    #[test]
    fn sumset_commutes_and_associates(
        a in set_strategy(-20, 20, 6),
        b in set_strategy(-20, 20, 6),
        c in set_strategy(-20, 20, 6),
    ) {
        prop_assert_eq!(sumset(&a, &b).unwrap(), sumset(&b, &a).unwrap());
        let left = sumset(&sumset(&a, &b).unwrap(), &c).unwrap();
        let right = sumset(&a, &sumset(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(sumset(&a, &IntSet::singleton(0)).unwrap(), a);
    }

    #[test]
    fn sumset_covariance(a in set_strategy(-30, 30, 10), b in set_strategy(-30, 30, 10), t in -40i64..40) {
        let s = sumset(&a, &b).unwrap();
        prop_assert_eq!(sumset(&a.translate(t).unwrap(), &b).unwrap(), s.translate(t).unwrap());
        // Reflection about each set's own midpoint reflects the sumset about its midpoint.
        prop_assert_eq!(sumset(&a.reflect(), &b.reflect()).unwrap(), s.reflect());
    }

    #[test]
    fn hole_count_of_hull(s in set_strategy(-50, 50, 20)) {
        prop_assert_eq!(holes_default(&s) as i64, diam(&s) + 1 - s.len() as i64);
    }

    #[test]
    fn gcd_star_invariance(s in set_strategy(-50, 50, 8), t in -30i64..30) {
        let g = gcd_star(&s);
        prop_assert_eq!(gcd_star(&s.translate(t).unwrap()), g);
        prop_assert_eq!(gcd_star(&s.reflect()), g);
        if g > 0 {
            prop_assert!(s.iter().all(|x| (x - s.min()) % g as i64 == 0));
        }
    }

    #[test]
    fn delta_translation_invariant(a in set_strategy(0, 12, 5), b in set_strategy(0, 12, 8), t in -10i64..10) {
        let naive = (b.min() - a.max()..=b.max() - a.min())
            .any(|x| a.iter().all(|y| b.contains(x + y)));
        prop_assert_eq!(delta(&a, &b), naive);
        prop_assert_eq!(delta(&a.translate(t).unwrap(), &b), naive);
    }

    #[test]
    fn progression_search(s in set_strategy(-40, 40, 25), d in 1u64..6) {
        prop_assert_eq!(longest_ap(&s, 1).unwrap(), longest_run(&s));
        let p = longest_ap(&s, d).unwrap();
        prop_assert!(p.length >= 1);
        for i in 0..p.length as i64 {
            prop_assert!(s.contains(p.start + i * d as i64));
        }
        // No longer progression with difference d exists.
        let best = s
            .iter()
            .map(|x| (0..).take_while(|i| s.contains(x + i * d as i64)).count() as u64)
            .max()
            .unwrap();
        prop_assert_eq!(p.length, best);
    }

    #[test]
    fn contraction(s in set_strategy(-20, 20, 8), d in 2i64..5) {
        let scaled = IntSet::new(s.iter().map(|x| x * d)).unwrap();
        prop_assert_eq!(scaled.contract(d), Some(s.clone()));
        if s.len() > 1 && gcd_star(&s) == 1 && s.iter().any(|x| x % d != 0) {
            prop_assert_eq!(s.contract(d), None);
        }
    }

    #[test]
    fn literal_round_trip(s in set_strategy(-1000, 1000, 15)) {
        prop_assert_eq!(s.to_string().parse::<IntSet>().unwrap(), s.clone());
        let json = serde_json::to_string(&to_vec(&s)).unwrap();
        prop_assert_eq!(json.parse::<IntSet>().unwrap(), s);
    }

    #[test]
    fn pair_identities((a, b) in pair_strategy(30)) {
        let pair = NormalizedPair::new(&a, &b).unwrap();
        let p = pair.profile();
        prop_assert_eq!(p.m, p.size_a + p.h_a - 1);
        prop_assert_eq!(p.n, p.size_b + p.h_b - 1);
        prop_assert_eq!(p.h_ab, p.h_a + p.h_b - p.r);
        for pred in Predicate::ALL {
            let rep = pair.check(pred);
            prop_assert!(!rep.falsified(), "{:?}: {:?}", pred, rep.violations);
        }
    }

    #[test]
    fn theorem_when_hypotheses_hold((a, b) in pair_strategy(24)) {
        let pair = NormalizedPair::new(&a, &b).unwrap();
        let v = pair.theorem_verdict();
        if v.hypotheses_hold {
            let s = sumset(&a, &b).unwrap();
            prop_assert!(longest_run(&s).length as usize >= a.len() + b.len() - 1);
            let f = pair.frontier();
            prop_assert!(f.j_len as usize >= a.len() + b.len() - 1);
            prop_assert!((f.j.lo..=f.j.hi).all(|x| s.contains(x)));
        }
    }

    #[test]
    fn family_one_members(k in 3u32..40, r_frac in 0.0f64..1.0) {
        let r = ((k - 3) as f64 * r_frac).round() as u32;
        let s = family_one(k, r).unwrap();
        prop_assert_eq!(s.len(), k as usize);
        prop_assert_eq!(diam(&s), (k + r - 1) as i64);
        let claims = family_claims_check(FamilySpec::One { k, r }).unwrap();
        prop_assert!(claims.holds());
    }
}
