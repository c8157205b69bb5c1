mod common;

use common::*;
use fhier::builder::{build_oplus, build_p, build_plus, build_q};
use fhier::muller::UpWord;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_words(max: usize) -> Vec<UpWord> {
    let ws = words_upto(max);
    let mut out = Vec::new();
    for u in &ws {
        for v in ws.iter().filter(|v| !v.is_empty()) {
            out.push(UpWord::new(u.clone(), v.clone()).unwrap());
        }
    }
    out
}

fn coded_words() -> Vec<UpWord> {
    let ts = ternary_upto(3);
    let mut out = Vec::new();
    for s in &ts {
        for p in ts.iter().filter(|p| !p.is_empty() && p.len() <= 2) {
            out.push(UpWord::new(encode(s), encode(p)).unwrap());
        }
    }
    out
}

#[test]
fn p_q_plus_match_definitions_on_short_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let words = all_words(5);
    let coded = coded_words();
    for round in 0..6 {
        let k = 2 + round % 2;
        let a = random_acceptor(&mut rng, 1 + round % 3, k);
        let b = random_acceptor(&mut rng, 1 + (round + 1) % 3, k);
        let i = (round % k) as u32;
        let p = build_p(i, &a).unwrap();
        let q = build_q(i, &a).unwrap();
        let s = build_plus(&a, &b).unwrap();
        for w in words.iter().chain(&coded) {
            assert_eq!(p.evaluate(w).unwrap(), p_oracle(i, &a, w), "p {w}");
            assert_eq!(q.evaluate(w).unwrap(), q_oracle(i, &a, w), "q {w}");
            assert_eq!(s.evaluate(w).unwrap(), plus_oracle(&a, &b, w), "+ {w}");
        }
    }
}

#[test]
fn oplus_routes_by_prefix() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let words = all_words(4);
    for n in 1..=3 {
        let parts: Vec<_> = (0..n).map(|j| random_acceptor(&mut rng, 1 + j % 3, 3)).collect();
        let sum = build_oplus(&parts).unwrap();
        for (j, part) in parts.iter().enumerate() {
            for w in &words {
                let mut u = vec![1; j];
                u.push(0);
                u.extend(&w.u);
                let routed = UpWord::new(u, w.v.clone()).unwrap();
                assert_eq!(sum.evaluate(&routed).unwrap(), part.evaluate(w).unwrap());
            }
        }
        let fallback = parts[0].evaluate(&UpWord::periodic(&[0])).unwrap();
        assert_eq!(sum.evaluate(&UpWord::periodic(&[1])).unwrap(), fallback);
    }
}
