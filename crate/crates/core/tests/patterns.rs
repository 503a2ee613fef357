use proptest::prelude::*;

use sharklab::construct::stefan_pattern;
use sharklab::order::{shark_tail, SharkClass};
use sharklab::pattern::{
    all_cyclic_patterns, connect_the_dots, cover_digraph, is_stefan, loops, OrbitPattern,
    DEFAULT_LOOP_BUDGET,
};
use sharklab::periodic::{check_covering, least_period, period_set, realize_loop, IntervalCycle};
use sharklab::PieceBudget;

fn budget() -> PieceBudget {
    PieceBudget::default()
}

fn pattern(max_m: usize) -> impl Strategy<Value = OrbitPattern> {
    (2..=max_m)
        .prop_flat_map(|m| Just((2..=m).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|order| {
            let m = order.len() + 1;
            let mut sigma = vec![0; m];
            let mut prev = 1;
            for v in order {
                sigma[prev - 1] = v;
                prev = v;
            }
            sigma[prev - 1] = 1;
            OrbitPattern::new(sigma).unwrap()
        })
}

#[test]
fn digraph_agrees_with_covering_up_to_seven() {
    for m in 2..=7 {
        for p in all_cyclic_patterns(m) {
            let f = connect_the_dots(&p);
            let g = cover_digraph(&p);
            for i in 1..m {
                for j in 1..m {
                    assert_eq!(
                        g.has_edge(i, j),
                        check_covering(&f, &p.gap(i), &p.gap(j)).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn connect_the_dots_carries_the_orbit() {
    for p in all_cyclic_patterns(6) {
        let f = connect_the_dots(&p);
        let x1 = p.node(1);
        assert_eq!(least_period(&f, &x1, 6).unwrap(), 6);
    }
}

#[test]
fn stefan_patterns_have_stefan_period_sets() {
    for m in [3usize, 5, 7, 9] {
        let candidates: Vec<OrbitPattern> = if m <= 7 {
            all_cyclic_patterns(m)
                .into_iter()
                .filter(is_stefan)
                .collect()
        } else {
            vec![stefan_pattern((m - 1) / 2).unwrap()]
        };
        assert!(!candidates.is_empty());
        for p in candidates {
            let bound = (m + 4) as u64;
            let got = period_set(&connect_the_dots(&p), bound, budget())
                .unwrap()
                .periods();
            assert_eq!(got, shark_tail(SharkClass::Finite(m as u64), bound), "{p}");
        }
    }
}

#[test]
fn stefan_pattern_and_its_mirror() {
    for k in 1..=4 {
        let p = stefan_pattern(k).unwrap();
        assert!(is_stefan(&p));
        let m = p.m();
        let mirror: Vec<usize> = (1..=m).rev().map(|i| m + 1 - p.image(i)).collect();
        assert!(is_stefan(&OrbitPattern::new(mirror).unwrap()));
    }
}

#[test]
fn every_walk_of_small_patterns_is_realized() {
    for m in 2..=5 {
        for p in all_cyclic_patterns(m) {
            let f = connect_the_dots(&p);
            let g = cover_digraph(&p);
            for n in 1..=4 {
                for w in loops(&g, n, DEFAULT_LOOP_BUDGET).unwrap() {
                    let cert = realize_loop(&f, &w.to_cycle(&p), budget()).unwrap();
                    cert.validate(&f).unwrap();
                }
            }
        }
    }
}

#[test]
fn f2_loop_through_four_gaps() {
    let p = make_fn_pattern();
    let f = connect_the_dots(&p);
    let cycle = IntervalCycle::new([1, 3, 2, 4].iter().map(|&i| p.gap(i)).collect()).unwrap();
    let cert = realize_loop(&f, &cycle, budget()).unwrap();
    cert.validate(&f).unwrap();
    assert_eq!(f.eval_iter(&cert.witness, 4).unwrap(), cert.witness);
    for (y, j) in cert.itinerary(&f).unwrap().iter().zip(cycle.intervals()) {
        assert!(j.contains(y), "{y} not in {j}");
    }
}

fn make_fn_pattern() -> OrbitPattern {
    "3 5 4 2 1".parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pattern_text_round_trip(p in pattern(9)) {
        prop_assert_eq!(p.to_string().parse::<OrbitPattern>().unwrap(), p);
    }

    #[test]
    fn walks_are_canonical_closed_walks(p in pattern(6), n in 1usize..=5) {
        let g = cover_digraph(&p);
        let walks = loops(&g, n, DEFAULT_LOOP_BUDGET).unwrap();
        for w in &walks {
            let v = w.nodes();
            prop_assert_eq!(v.len(), n);
            for k in 0..n {
                prop_assert!(g.has_edge(v[k], v[(k + 1) % n]));
            }
            for r in 1..n {
                let rotated: Vec<usize> = v[r..].iter().chain(&v[..r]).copied().collect();
                prop_assert!(v <= rotated.as_slice());
            }
        }
        let mut sorted = walks.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), walks.len());
    }

    #[test]
    fn digraph_always_has_an_edge(p in pattern(9)) {
        prop_assert!(cover_digraph(&p).edges().count() >= 1);
    }

    #[test]
    fn non_stefan_odd_patterns_force_a_smaller_odd_period(p in pattern(7)) {
        let m = p.m();
        prop_assume!(m % 2 == 1 && m >= 5 && !is_stefan(&p));
        let r = period_set(&connect_the_dots(&p), m as u64, budget()).unwrap();
        prop_assert!((3..m as u64).step_by(2).any(|q| r.has_period(q)), "{}", p);
    }
}
