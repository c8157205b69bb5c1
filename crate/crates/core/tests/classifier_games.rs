mod common;

use fhier::builder::{build_p, build_plus, build_rho};
use fhier::classifier::{degree, degree_by_search, leq_da};
use fhier::forest::{enumerate_upto, equiv_h, leq_h, DegreeInvariant};
use fhier::games::leq_ca;
use fhier::muller::Acceptor;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn invariants(k: usize, max: usize) -> Vec<DegreeInvariant> {
    enumerate_upto(1, k, max).map(|f| DegreeInvariant::new(f).unwrap()).collect()
}

#[test]
fn degree_inverts_rho() {
    for k in 2..=3 {
        for t in invariants(k, 4) {
            let a = build_rho(&t, k).unwrap();
            let d = degree(&a).unwrap();
            assert!(equiv_h(d.forest(), t.forest()).unwrap(), "k={k} {t} gave {d}");
        }
    }
}

#[test]
fn games_match_forests_k2() {
    let ts = invariants(2, 3);
    let accs: Vec<_> = ts.iter().map(|t| build_rho(t, 2).unwrap()).collect();
    for (i, t) in ts.iter().enumerate() {
        for (j, s) in ts.iter().enumerate() {
            let want = leq_h(t.forest(), s.forest()).unwrap();
            assert_eq!(leq_ca(&accs[i], &accs[j]).unwrap(), want, "{t} vs {s}");
        }
    }
}

#[test]
fn leq_da_matches_games_on_random_acceptors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let a = common::random_acceptor(&mut rng, 3, 2);
        let b = common::random_acceptor(&mut rng, 3, 2);
        assert_eq!(leq_da(&a, &b).unwrap(), leq_ca(&a, &b).unwrap(), "\n{a}\n{b}");
    }
}

#[test]
fn search_agrees_with_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let a = common::random_acceptor(&mut rng, 3, 2);
        let d = degree(&a).unwrap();
        if d.forest().size() <= 4 {
            let s = degree_by_search(&a, 4).unwrap();
            assert!(equiv_h(d.forest(), s.forest()).unwrap());
        }
    }
}

fn equiv_ca(a: &Acceptor, b: &Acceptor) -> bool {
    leq_ca(a, b).unwrap() && leq_ca(b, a).unwrap()
}

#[test]
fn sums_and_prefixes_in_the_game_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..30 {
        let k = rand::Rng::gen_range(&mut rng, 2..=3);
        let a = common::random_acceptor(&mut rng, 2, k);
        let b = common::random_acceptor(&mut rng, 2, k);
        let sum = build_plus(&a, &b).unwrap();
        assert!(leq_ca(&a, &sum).unwrap(), "\n{a}\n{b}");
        assert!(leq_ca(&b, &sum).unwrap(), "\n{a}\n{b}");
        for i in 0..k as u32 {
            let c = Acceptor::constant(k, i).unwrap();
            let via_sum = build_plus(&c, &a).unwrap();
            assert!(equiv_ca(&via_sum, &build_p(i, &a).unwrap()), "i={i}\n{a}");
        }
    }
}

#[test]
fn game_order_is_a_preorder_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let accs: Vec<Acceptor> = (0..8).map(|_| common::random_acceptor(&mut rng, 3, 2)).collect();
    let le: Vec<Vec<bool>> = accs
        .iter()
        .map(|a| accs.iter().map(|b| leq_ca(a, b).unwrap()).collect())
        .collect();
    for i in 0..accs.len() {
        assert!(le[i][i]);
        for j in 0..accs.len() {
            for l in 0..accs.len() {
                if le[i][j] && le[j][l] {
                    assert!(le[i][l], "{i} {j} {l}");
                }
            }
        }
    }
}
