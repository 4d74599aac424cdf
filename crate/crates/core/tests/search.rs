use divlab_core::canon::is_isomorphic;
use divlab_core::constructions::t0;
use divlab_core::search::{classify_lemma31, run_search, Budget, Mode, SearchTask};
use divlab_core::Family;

fn max_gamma(ell: usize, n_max: usize) -> usize {
    let mut t = SearchTask::new(3, ell, n_max, Mode::MaxGamma);
    t.tau_min = 3;
    let r = run_search(&t).unwrap();
    assert!(r.exhausted);
    r.optimum_value().unwrap()
}

#[test]
fn pair_optimum_stable_in_scope() {
    let vals: Vec<usize> = (7..=9).map(|n| max_gamma(2, n)).collect();
    assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(vals, vec![2, 2, 2]);
}

#[test]
fn classification_up_to_nine() {
    for n in [7, 9] {
        let r = classify_lemma31(n, Budget::default(), 0).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.unknown_witnesses().count(), 0, "n_max = {n}");
    }
}

#[test]
fn t0_minus_an_edge_fails_the_pair_condition() {
    let full = t0();
    for drop in 0..full.len() {
        let mut e = full.edges().to_vec();
        e.remove(drop);
        let f = Family::new(full.n(), 3, e).unwrap();
        let every_pair_avoided_twice = f
            .edges()
            .iter()
            .all(|&edge| divlab_core::bits::subsets_of(edge, 2).all(|s| f.count_avoiding(s) >= 2));
        assert!(!every_pair_avoided_twice || is_isomorphic(&f, &full));
    }
}

#[test]
fn witnesses_revalidate() {
    let mut t = SearchTask::new(3, 1, 8, Mode::MaxGamma);
    t.tau_min = 3;
    let r = run_search(&t).unwrap();
    assert!(r.witnesses.iter().all(|w| w.revalidated));
    assert_eq!(r.witnesses.len(), 1);
    assert_eq!(r.witnesses[0].known_as, None);
    let edges: Vec<Vec<usize>> = r.witnesses[0].edges.clone();
    let slices: Vec<&[usize]> = edges.iter().map(|e| e.as_slice()).collect();
    let w = Family::from_one_based(r.witnesses[0].support, 3, &slices).unwrap();
    assert!(is_isomorphic(&w, &t0()));
}
