mod common;

use std::collections::BTreeSet;

use closext::{
    enumerate_closed, extend_family_step, largest_extension_bruteforce, AttrSet, ExtensionTrace,
    MeetFamily, UnitTable, DEFAULT_GUARD,
};
use common::*;
use proptest::prelude::*;

fn check_trace(trace: &ExtensionTrace) -> Result<(), TestCaseError> {
    let mut previous = trace.initial.clone();
    let mut seen_in_m3 = BTreeSet::new();
    for step in &trace.steps {
        let p = &step.partition;
        prop_assert!(step.result.len() >= previous.len());
        prop_assert_eq!(
            step.result.len(),
            p.m1.len() + p.m2.len() + 2 * p.m3.len() + p.m4.len() + p.m5.len() + p.m6.len()
        );
        for m in &p.m3 {
            prop_assert!(seen_in_m3.insert(*m), "{:?} in M3 twice", m);
        }
        // ground truth for the step
        let family = enumerate_closed(&previous, DEFAULT_GUARD).unwrap();
        let stepped = extend_family_step(&family, step.pivot, p.star).unwrap();
        let expected = MeetFamily::from_family(&stepped.meets_of_family().unwrap());
        prop_assert_eq!(&step.result, &expected);
        previous = step.result.clone();
    }
    prop_assert_eq!(&previous, &trace.final_meets);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn steps_match_family_level_ground_truth(base in arb_generated(2, 7, 10)) {
        let meets = MeetFamily::of_closure(&base, DEFAULT_GUARD).unwrap();
        prop_assert!(meets.is_reduced());
        let trace = meets.largest_extension();
        check_trace(&trace)?;
        let fmax = largest_extension_bruteforce(&base, DEFAULT_GUARD).unwrap();
        prop_assert_eq!(trace.final_meets.closed_sets(DEFAULT_GUARD).unwrap(), fmax);
    }

    #[test]
    fn arbitrary_meet_families(meets in arb_meets(1, 6, 10)) {
        let trace = meets.largest_extension();
        check_trace(&trace)?;
        let fmax = largest_extension_bruteforce(&meets, DEFAULT_GUARD).unwrap();
        prop_assert_eq!(&trace.final_meets.closed_sets(DEFAULT_GUARD).unwrap(), &fmax);
        prop_assert_eq!(
            &trace.final_meets,
            &MeetFamily::from_family(&fmax.meets_of_family().unwrap())
        );
    }

    #[test]
    fn single_step_from_any_pivot(base in arb_generated(2, 7, 10)) {
        let meets = MeetFamily::of_closure(&base, DEFAULT_GUARD).unwrap();
        let family = enumerate_closed(&meets, DEFAULT_GUARD).unwrap();
        let units = UnitTable::compute(&meets);
        for &x in units.pivots() {
            let p = meets.partition(x).unwrap();
            let all: BTreeSet<AttrSet> = p.buckets()[..5].iter().flat_map(|b| b.iter().copied()).collect();
            prop_assert_eq!(all.len(), meets.len());
            for m in &p.m1 { prop_assert!(units.closure(x).is_subset(*m)); }
            for m in &p.m2 { prop_assert!(p.star.is_subset(*m) && !m.contains(x)); }
            for f in &p.m6 { prop_assert!(!p.star.is_subset(*f)); }

            let expected = extend_family_step(&family, x, units.star(x)).unwrap();
            prop_assert_eq!(
                meets.step(x).unwrap(),
                MeetFamily::from_family(&expected.meets_of_family().unwrap())
            );
        }
    }

    #[test]
    fn reduce_keeps_generated_system(meets in arb_meets(1, 6, 12)) {
        let reduced = meets.reduce();
        prop_assert!(reduced.is_reduced());
        prop_assert_eq!(
            reduced.closed_sets(DEFAULT_GUARD).unwrap(),
            meets.closed_sets(DEFAULT_GUARD).unwrap()
        );
    }
}

#[test]
fn pivot_order_does_not_change_final_family() {
    for seed in 0..200u64 {
        let n = 2 + (seed % 5) as usize;
        let k = (seed % 9) as usize;
        let Ok(base) = closext::random_base(n, k, seed) else {
            continue;
        };
        let meets = MeetFamily::of_closure(&base, DEFAULT_GUARD).unwrap();
        let reference = meets.largest_extension();
        let pivots: Vec<usize> = reference.steps.iter().map(|s| s.pivot).collect();
        if pivots.len() > 4 {
            continue;
        }
        let mut order = pivots.clone();
        order.reverse();
        let reversed = meets.largest_extension_ordered(&order).unwrap();
        assert_eq!(reversed.final_meets, reference.final_meets, "seed {seed}");
    }
}
