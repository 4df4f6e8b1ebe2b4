use std::time::Duration;

use hypercube_trees::broadcast::{broadcast_time, link_load, link_load_of, tree_depths};
use hypercube_trees::construct::{construct, construct_even, construct_even_traced, construct_odd};
use hypercube_trees::verify::{
    forest_components, is_matching, is_spanning_tree, verify_decomposition,
};
use hypercube_trees::{Decomposition, Dimension, Kind};

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

#[test]
fn verifier_accepts_every_small_construction() {
    for n in 1..=12 {
        let d = construct(dim(n));
        let r = verify_decomposition(&d).unwrap();
        assert!(r.overall, "n={n}\n{r}");
        assert_eq!(r.k, n / 2);
    }
}

#[test]
fn trees_leftovers_through_16() {
    for n in 2..=16 {
        let d = construct(dim(n));
        for j in 1..=d.k {
            assert!(is_spanning_tree(&d.tree(j)), "n={n} tree {j}");
        }
        let left = d.leftover();
        let k = u64::from(n / 2);
        match d.kind {
            Kind::Even => {
                assert!(is_matching(&left));
                assert_eq!(left.len() as u64, k);
            }
            Kind::Odd => {
                let f = forest_components(&left);
                assert!(f.is_forest);
                assert_eq!(f.components, k);
                assert_eq!(left.len() as u64, (1 << (2 * k)) + k);
            }
        }
    }
}

#[test]
fn leftover_of_q8_is_matching_of_four() {
    let left = construct(dim(8)).leftover();
    assert!(is_matching(&left));
    assert_eq!(left.len(), 4);
}

#[test]
fn odd_leftover_components() {
    assert_eq!(
        forest_components(&construct(dim(3)).leftover()).components,
        1
    );
    assert_eq!(
        forest_components(&construct(dim(5)).leftover()).components,
        2
    );
    let t = construct(dim(3)).tree(1);
    let f = forest_components(&t);
    assert!(f.is_forest);
    assert_eq!(f.components, 1);
}

#[test]
fn forest_components_of_trees_and_matchings() {
    for n in 2..=9 {
        let d = construct(dim(n));
        for j in 1..=d.k {
            let f = forest_components(&d.tree(j));
            assert!(f.is_forest && f.components == 1);
        }
        if d.kind == Kind::Even {
            let f = forest_components(&d.leftover());
            assert!(f.is_forest);
            assert_eq!(f.components, u64::from(d.k));
        }
    }
}

#[test]
fn even_step_identities() {
    let (_, steps) = construct_even_traced(8).unwrap();
    assert_eq!(steps.len(), 7);
    for s in steps {
        let full = s.spanning_size();
        assert_eq!(s.carried_formula(), full);
        assert_eq!(s.bridging_formula(), full);
        assert_eq!(s.closing_formula(), full);
        assert!(s.carried.iter().all(|&c| c == full));
        assert_eq!(s.bridging, full);
        assert_eq!(s.closing, full);
        assert_eq!(s.leftover, u64::from(s.k) + 1);
    }
}

#[test]
fn q6_verifies_with_leftover_three() {
    let d = construct_even(3).unwrap();
    let r = verify_decomposition(&d).unwrap();
    assert!(r.overall);
    assert_eq!(r.leftover.size, 3);
}

#[test]
fn odd_construction_sizes() {
    let d = construct_odd(2).unwrap();
    assert_eq!(d.label_sizes(), vec![18, 31, 31]);
}

fn mutations_rejected(d: &Decomposition) -> usize {
    let mut checked = 0;
    for i in 0..d.labels.len() {
        for l in 0..=d.k as u8 {
            if l == d.labels[i] {
                continue;
            }
            let mut m = d.clone();
            m.labels[i] = l;
            let r = verify_decomposition(&m).unwrap();
            assert!(!r.overall, "n={} edge {i} -> {l} slipped through", d.n);
            checked += 1;
        }
    }
    checked
}

#[test]
fn single_label_mutations_exhaustive_to_6() {
    for n in 2..=6 {
        let d = construct(dim(n));
        let k = d.k as usize;
        assert_eq!(mutations_rejected(&d), d.labels.len() * k);
    }
}

#[test]
fn single_label_mutations_sampled_7_and_8() {
    for n in [7, 8] {
        let d = construct(dim(n));
        let len = d.labels.len();
        // deterministic stride sample
        for i in (0..len).step_by(37) {
            for l in 0..=d.k as u8 {
                if l == d.labels[i] {
                    continue;
                }
                let mut m = d.clone();
                m.labels[i] = l;
                assert!(!verify_decomposition(&m).unwrap().overall);
            }
        }
    }
}

#[test]
fn moving_a_tree_edge_to_leftover_in_q4() {
    let d = construct(dim(4));
    let i = d.labels.iter().position(|&l| l == 1).unwrap();
    let mut m = d.clone();
    m.labels[i] = 0;
    let r = verify_decomposition(&m).unwrap();
    assert!(!r.overall);
    assert_eq!(r.trees[0].edges, 14);
    assert!(!r.leftover.ok);
}

#[test]
fn link_load_is_one() {
    for n in 2..=12 {
        assert_eq!(link_load(&construct(dim(n))), 1);
    }
    let d = construct(dim(5));
    assert_eq!(link_load_of(&[d.labels.clone(), d.labels]), 2);
}

#[test]
fn broadcast_regressions() {
    let d6 = construct(dim(6));
    assert_eq!(tree_depths(&d6, 0).unwrap(), vec![10, 9, 10]);
    let d4 = construct(dim(4));
    assert_eq!(tree_depths(&d4, 0).unwrap(), vec![7, 5]);
    assert_eq!(
        broadcast_time(&d4, 0, 1, Duration::from_micros(1)).unwrap(),
        Duration::from_micros(7)
    );
}

#[test]
fn depths_at_least_diameter() {
    for n in 2..=10 {
        let d = construct(dim(n));
        for root in [0u64, 1, (1 << n) - 1] {
            for depth in tree_depths(&d, root).unwrap() {
                assert!(depth >= n);
            }
        }
    }
}

#[test]
fn broadcast_time_monotone() {
    let d = construct(dim(7));
    let mut prev = Duration::ZERO;
    for parts in 1..10 {
        for hop in [1u64, 5, 50] {
            let t = broadcast_time(&d, 3, parts, Duration::from_nanos(hop)).unwrap();
            let t_more = broadcast_time(&d, 3, parts, Duration::from_nanos(hop + 1)).unwrap();
            assert!(t_more >= t);
        }
        let t = broadcast_time(&d, 3, parts, Duration::from_nanos(1)).unwrap();
        assert!(t >= prev);
        prev = t;
    }
}
