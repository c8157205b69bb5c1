mod common;

use common::{all_forests_upto, brute_leq, count_classes};
use fhier::forest::{canonical, enumerate_upto, equiv_h, leq_h, Forest};

#[test]
fn brute_force_agrees_on_small_pairs() {
    let all = all_forests_upto(0, 2, 4);
    for f in &all {
        for g in &all {
            assert_eq!(leq_h(f, g).unwrap(), brute_leq(&f.trees, &g.trees), "{f} vs {g}");
        }
    }
}

#[test]
fn brute_force_agrees_on_level1() {
    let all = all_forests_upto(1, 2, 3);
    for f in &all {
        for g in &all {
            assert_eq!(leq_h(f, g).unwrap(), brute_leq(&f.trees, &g.trees), "{f} vs {g}");
        }
    }
}

fn check_canonical_unique(all: &[Forest]) {
    let canon: Vec<Forest> = all.iter().map(canonical).collect();
    for (f, c) in all.iter().zip(&canon) {
        assert!(equiv_h(f, c).unwrap(), "{f} -> {c}");
        assert_eq!(&canonical(c), c, "not idempotent on {f}");
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let eq = equiv_h(&all[i], &all[j]).unwrap();
            assert_eq!(
                eq,
                canon[i] == canon[j],
                "{} [{}] vs {} [{}]",
                all[i],
                canon[i],
                all[j],
                canon[j]
            );
        }
    }
}

#[test]
fn canonical_is_unique_level0() {
    check_canonical_unique(&all_forests_upto(0, 2, 5));
}

#[test]
fn canonical_is_unique_level0_k3() {
    check_canonical_unique(&all_forests_upto(0, 3, 4));
}

#[test]
fn canonical_is_unique_level1() {
    check_canonical_unique(&all_forests_upto(1, 2, 4));
}

#[test]
fn enumeration_counts_match_class_counts() {
    for (level, k, max) in [(0, 2, 5), (0, 3, 4), (1, 2, 4)] {
        let all = all_forests_upto(level, k, max);
        let expected = count_classes(&all, |a, b| brute_leq(&a.trees, &b.trees));
        let got: Vec<Forest> = enumerate_upto(level, k as usize, max).collect();
        assert_eq!(got.len(), expected, "level {level} k {k} max {max}");
        for i in 0..got.len() {
            for j in i + 1..got.len() {
                assert!(!equiv_h(&got[i], &got[j]).unwrap(), "{} ≡ {}", got[i], got[j]);
            }
        }
    }
}
