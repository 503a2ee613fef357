use super::*;
use crate::rational::{int, ratio};

fn tent() -> PlMap {
    PlMap::from_pairs([(int(0), int(0)), (ratio(1, 2), int(1)), (int(1), int(0))]).unwrap()
}

fn h() -> PlMap {
    PlMap::from_pairs([
        (int(0), ratio(1, 2)),
        (ratio(1, 4), int(1)),
        (ratio(1, 2), ratio(1, 2)),
        (int(1), int(0)),
    ])
    .unwrap()
}

fn zero() -> PlMap {
    PlMap::constant(int(0), int(1), int(0)).unwrap()
}

fn budget() -> PieceBudget {
    PieceBudget::default()
}

#[test]
fn fixed_point_examples() {
    let t = fixed_points(&tent());
    assert_eq!(t.isolated, vec![int(0), ratio(2, 3)]);
    assert!(t.segments.is_empty());
    let id = fixed_points(&PlMap::identity(int(0), int(1)).unwrap());
    assert!(id.isolated.is_empty());
    assert_eq!(id.segments, vec![Interval::new(int(0), int(1)).unwrap()]);
    let hf = fixed_points(&h());
    assert_eq!(hf.isolated, vec![ratio(1, 2)]);
    assert!(hf.segments.is_empty());
}

#[test]
fn fixed_points_merge_collinear_diagonal() {
    let m = PlMap::from_pairs([
        (int(0), ratio(1, 4)),
        (ratio(1, 4), ratio(1, 4)),
        (ratio(1, 2), ratio(1, 2)),
        (int(1), int(1)),
    ])
    .unwrap();
    let fs = fixed_points(&m);
    assert!(fs.isolated.is_empty());
    assert_eq!(
        fs.segments,
        vec![Interval::new(ratio(1, 4), int(1)).unwrap()]
    );
}

#[test]
fn least_period_examples() {
    assert_eq!(least_period(&tent(), &ratio(2, 3), 6).unwrap(), 1);
    assert_eq!(least_period(&tent(), &ratio(2, 5), 2).unwrap(), 2);
    assert_eq!(least_period(&h(), &ratio(5, 14), 6).unwrap(), 6);
    assert!(matches!(
        least_period(&tent(), &ratio(1, 3), 2),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn period_set_examples() {
    let r = period_set(&h(), 8, budget()).unwrap();
    assert_eq!(r.periods(), vec![1, 2, 4, 6, 8]);
    assert_eq!(period_set(&zero(), 5, budget()).unwrap().periods(), vec![1]);
    let t = period_set(&tent(), 5, budget()).unwrap();
    assert_eq!(t.periods(), vec![1, 2, 3, 4, 5]);
    // the smallest period-3 point of the tent map
    assert_eq!(t.entries[&3], ratio(2, 9));
}

#[test]
fn witnesses_are_sound() {
    for f in [tent(), h(), zero()] {
        let r = period_set(&f, 8, budget()).unwrap();
        for (&n, w) in &r.entries {
            assert_eq!(f.eval_iter(w, n).unwrap(), *w);
            for d in (1..n).filter(|d| n % d == 0) {
                assert_ne!(f.eval_iter(w, d).unwrap(), *w);
            }
        }
    }
}

#[test]
fn segment_periods_are_counted_once() {
    // 1 - x: fixed point 1/2 and every other point has period 2
    let flip = PlMap::from_pairs([(int(0), int(1)), (int(1), int(0))]).unwrap();
    let r = period_set(&flip, 6, budget()).unwrap();
    assert_eq!(r.periods(), vec![1, 2]);
    assert_eq!(r.entries[&1], ratio(1, 2));
    assert_eq!(r.entries[&2], int(0));
    let pts = periodic_points(&flip, 2, budget()).unwrap();
    assert!(pts.points.is_empty());
    assert_eq!(pts.segments, vec![Interval::new(int(0), int(1)).unwrap()]);
    // with a collinear breakpoint at the fixed point the segment is still one
    let split = PlMap::from_pairs([
        (int(0), int(1)),
        (ratio(1, 2), ratio(1, 2)),
        (int(1), int(0)),
    ])
    .unwrap();
    let fs = fixed_points_of_iterate(&split, 2, &split.domain(), budget()).unwrap();
    assert_eq!(fs.segments, vec![Interval::new(int(0), int(1)).unwrap()]);
    assert!(fs.isolated.is_empty());
}

#[test]
fn identity_has_only_fixed_points() {
    let id = PlMap::identity(int(0), int(1)).unwrap();
    let r = period_set(&id, 4, budget()).unwrap();
    assert_eq!(r.periods(), vec![1]);
    assert_eq!(r.entries[&1], int(0));
}

#[test]
fn iterate_and_walk_agree_on_fixed_sets() {
    for f in [tent(), h(), zero()] {
        for n in 1..=6 {
            let fn_ = crate::map::iterate(&f, n, budget()).unwrap();
            let direct = fixed_points(&fn_);
            let walked = fixed_points_of_iterate(&f, n, &f.domain(), budget()).unwrap();
            assert_eq!(direct, walked, "n = {n}");
        }
    }
}

#[test]
fn periodic_orbits_of_the_tent_map() {
    let pts = periodic_points(&tent(), 3, budget()).unwrap();
    let orbits = pts.orbits(&tent()).unwrap();
    assert_eq!(
        orbits,
        vec![
            vec![ratio(2, 9), ratio(4, 9), ratio(8, 9)],
            vec![ratio(2, 7), ratio(4, 7), ratio(6, 7)],
        ]
    );
}

#[test]
fn verify_examples() {
    let r = verify_sharkovsky(&tent(), 6, budget()).unwrap();
    assert!(r.passes());
    assert_eq!(r.tail_class, Some(SharkClass::Finite(3)));
    let r = verify_sharkovsky(&h(), 12, budget()).unwrap();
    assert_eq!(r.tail_class, Some(SharkClass::Finite(6)));
    let r = verify_sharkovsky(&zero(), 4, budget()).unwrap();
    assert_eq!(r.tail_class, Some(SharkClass::Finite(1)));
    assert!(!r.ambiguous_at_bound);
}

#[test]
fn report_json_shape() {
    let r = period_set(&h(), 8, budget()).unwrap();
    let v = r.to_json();
    assert_eq!(v["bound"], 8);
    assert_eq!(v["pass"], true);
    assert_eq!(v["periods"][3]["period"], 6);
    assert_eq!(v["tailClass"], "6");
    assert_eq!(v["periods"][0]["witness"], "1/2");
}

#[test]
fn power_and_lift_examples() {
    assert_eq!(power_period(6, 2), 3);
    assert_eq!(power_period(7, 1), 7);
    assert_eq!(power_period(5, 10), 1);
    assert_eq!(lift_period(3, 2), BTreeSet::from([3, 6]));
    assert_eq!(lift_period(5, 1), BTreeSet::from([5]));
    assert_eq!(lift_period(2, 4), BTreeSet::from([8]));
}

#[test]
fn covering_examples() {
    let half = Interval::new(int(0), ratio(1, 2)).unwrap();
    let unit = Interval::new(int(0), int(1)).unwrap();
    assert!(check_covering(&tent(), &half, &unit).unwrap());
    let id = PlMap::identity(int(0), int(1)).unwrap();
    assert!(check_covering(&id, &half, &half).unwrap());
    let j = Interval::new(ratio(1, 4), ratio(1, 2)).unwrap();
    let l = Interval::new(int(0), ratio(1, 8)).unwrap();
    assert!(!check_covering(&zero(), &j, &l).unwrap());
}

#[test]
fn realize_loop_examples() {
    let cycle = IntervalCycle::new(vec![
        Interval::new(int(0), ratio(1, 2)).unwrap(),
        Interval::new(ratio(1, 2), int(1)).unwrap(),
    ])
    .unwrap();
    let cert = realize_loop(&tent(), &cycle, budget()).unwrap();
    assert_eq!(cert.witness, ratio(2, 5));
    assert_eq!(
        cert.nested[0],
        Interval::new(ratio(3, 8), ratio(1, 2)).unwrap()
    );
    assert_eq!(cert.nested[1], Interval::new(ratio(3, 4), int(1)).unwrap());
    cert.validate(&tent()).unwrap();

    let z = ratio(2, 3);
    let single = IntervalCycle::new(vec![Interval::point(z.clone())]).unwrap();
    let cert = realize_loop(&tent(), &single, budget()).unwrap();
    assert_eq!(cert.witness, z);
    cert.validate(&tent()).unwrap();
}

#[test]
fn realize_loop_names_failing_index() {
    let cycle = IntervalCycle::new(vec![
        Interval::new(int(0), ratio(1, 4)).unwrap(),
        Interval::new(ratio(1, 2), int(1)).unwrap(),
    ])
    .unwrap();
    let err = realize_loop(&tent(), &cycle, budget()).unwrap_err();
    assert!(err.to_string().contains("index 0"), "{err}");
}

#[test]
fn tampered_certificate_is_rejected() {
    let cycle = IntervalCycle::new(vec![
        Interval::new(int(0), ratio(1, 2)).unwrap(),
        Interval::new(ratio(1, 2), int(1)).unwrap(),
    ])
    .unwrap();
    let mut cert = realize_loop(&tent(), &cycle, budget()).unwrap();
    cert.witness = ratio(1, 2);
    assert!(cert.validate(&tent()).is_err());
}

#[test]
fn pull_back_hits_exactly() {
    let j = Interval::new(int(0), int(1)).unwrap();
    let l = Interval::new(ratio(1, 3), ratio(2, 3)).unwrap();
    let k = pull_back(&h(), &j, &l).unwrap();
    assert!(k.is_subset_of(&j));
    assert_eq!(h().image(&k).unwrap(), l);
}

#[test]
fn lemma6_examples() {
    let w = lemma6_search(&tent(), budget()).unwrap().unwrap();
    assert_eq!(w.z, ratio(2, 3));
    assert_eq!(w.variant, Lemma6Variant::Left);
    assert_eq!(w.d, ratio(5, 12));
    assert!(w.holds_for(&tent()).unwrap());
    let other = Lemma6Witness {
        d: ratio(9, 20),
        z: ratio(2, 3),
        variant: Lemma6Variant::Left,
    };
    assert!(other.holds_for(&tent()).unwrap());

    assert_eq!(lemma6_search(&zero(), budget()).unwrap(), None);

    let w = lemma6_search(&h(), budget()).unwrap().unwrap();
    assert_eq!(w.z, ratio(1, 2));
    assert!(w.holds_for(&h()).unwrap());
    assert_eq!(lemma6_consequence(&h(), 12, budget()).unwrap(), Some(true));
    assert_eq!(lemma6_consequence(&zero(), 12, budget()).unwrap(), None);
}

#[test]
fn abc_examples() {
    let r = check_abc(&tent(), 10, budget()).unwrap();
    assert!(r.passes());
    assert!(r.checks.contains(&AbcCheck {
        rule: AbcRule::A,
        from: 3,
        requires: 2,
        status: AbcStatus::Pass
    }));
    assert!(r.checks.contains(&AbcCheck {
        rule: AbcRule::B,
        from: 3,
        requires: 5,
        status: AbcStatus::Pass
    }));
    assert!(r.checks.contains(&AbcCheck {
        rule: AbcRule::C,
        from: 3,
        requires: 6,
        status: AbcStatus::Pass
    }));
    assert!(r.checks.contains(&AbcCheck {
        rule: AbcRule::B,
        from: 9,
        requires: 11,
        status: AbcStatus::Skipped
    }));

    let r = check_abc(&h(), 12, budget()).unwrap();
    assert!(r.passes());
    assert_eq!(r.exercised(AbcRule::A), 1);
    assert_eq!(r.exercised(AbcRule::B) + r.exercised(AbcRule::C), 0);

    let r = check_abc(&zero(), 12, budget()).unwrap();
    assert!(r.checks.is_empty());
}

#[test]
fn abc_detects_a_broken_report() {
    let fake = PeriodReport {
        bound: 6,
        entries: [(1, int(0)), (3, int(0))].into_iter().collect(),
        tail_class: None,
        ambiguous_at_bound: false,
    };
    assert!(!AbcReport::from_periods(&fake).passes());
}
