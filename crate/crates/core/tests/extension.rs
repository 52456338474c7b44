mod common;

use closext::{
    check_largest, enumerate_closed, extend_family_step, is_atomistic, largest_extension_base,
    largest_extension_bruteforce, remove_unitary_step, AttrSet, ImplicationalBase, UnitTable,
    DEFAULT_GUARD,
};
use common::*;
use proptest::prelude::*;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn remove_all(base: &ImplicationalBase, order: &[usize]) -> ImplicationalBase {
    order.iter().fold(base.clone(), |b, &x| {
        remove_unitary_step(&b, x).expect("preconditions hold along the walk")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn recognizer_sound_and_complete(base in arb_base(1, 7, 8)) {
        prop_assume!(!base.has_empty_premise());
        let report = check_largest(&base).unwrap();
        let nu = enumerate_closed(&base.non_unitary(), DEFAULT_GUARD).unwrap();
        let fmax = largest_extension_bruteforce(&base, DEFAULT_GUARD).unwrap();
        prop_assert_eq!(report.verdict, nu == fmax, "{}", base.to_text());
    }

    #[test]
    fn recognizer_on_generated_bases(base in arb_generated(2, 7, 10)) {
        let report = check_largest(&base).unwrap();
        let nu = enumerate_closed(&base.non_unitary(), DEFAULT_GUARD).unwrap();
        let fmax = largest_extension_bruteforce(&base, DEFAULT_GUARD).unwrap();
        prop_assert_eq!(report.verdict, nu == fmax, "{}", base.to_text());
    }

    #[test]
    fn saturated_bases_are_recognized(base in arb_base(1, 7, 8)) {
        prop_assume!(!base.has_empty_premise());
        prop_assert!(check_largest(&base.saturate()).unwrap().verdict);
    }

    #[test]
    fn unitary_removal_matches_family_step(base in arb_generated(2, 7, 8)) {
        let sat = base.saturate();
        let units = UnitTable::compute(&sat);
        let f = enumerate_closed(&sat, DEFAULT_GUARD).unwrap();
        for &x in units.pivots() {
            let stepped = remove_unitary_step(&sat, x).unwrap();
            let by_base = enumerate_closed(&stepped, DEFAULT_GUARD).unwrap();
            let by_family = extend_family_step(&f, x, units.star(x)).unwrap();
            prop_assert_eq!(&by_base, &by_family);

            let after = UnitTable::compute(&stepped);
            for y in (0..base.ground().len()).filter(|&y| y != x) {
                prop_assert_eq!(after.closure(y), units.closure(y));
            }
            prop_assert_eq!(after.closure(x), AttrSet::singleton(x));
        }
    }

    #[test]
    fn base_pipeline_reaches_largest_extension(base in arb_base(1, 7, 8)) {
        let out = largest_extension_base(&base);
        prop_assert!(!out.has_empty_premise());
        prop_assert!(out.implications().iter().all(|i| i.premise.len() > 1));
        let family = enumerate_closed(&out, DEFAULT_GUARD).unwrap();
        prop_assert!(is_atomistic(&family));
        prop_assert_eq!(family, largest_extension_bruteforce(&base, DEFAULT_GUARD).unwrap());

        // result plus the unit rules x → Φ(x) is recognized
        let units = UnitTable::compute(&base.saturate());
        let with_units = ImplicationalBase::new(
            base.ground().clone(),
            base.saturate().implications().iter().copied().filter(|i| i.premise.len() == 1)
                .chain(out.implications().iter().copied()),
        ).unwrap();
        if units.bottom().is_empty() {
            prop_assert!(check_largest(&with_units).unwrap().verdict);
        }
    }
}

#[test]
fn removal_order_is_irrelevant() {
    let mut instances = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed % 5) as usize;
        let k = (seed % 9) as usize;
        let Ok(base) = closext::random_base(n, k, seed) else {
            continue;
        };
        let sat = base.saturate();
        let pivots = UnitTable::compute(&sat).pivots().to_vec();
        if pivots.len() > 5 {
            continue;
        }
        instances += 1;
        let reference = enumerate_closed(&remove_all(&sat, &pivots), DEFAULT_GUARD).unwrap();
        for order in permutations(&pivots) {
            let family = enumerate_closed(&remove_all(&sat, &order), DEFAULT_GUARD).unwrap();
            assert_eq!(family, reference, "seed {seed} order {order:?}");
        }
        assert_eq!(
            reference,
            largest_extension_bruteforce(&base, DEFAULT_GUARD).unwrap()
        );
    }
    assert!(instances > 150);
}

#[test]
fn removing_c_adds_c_and_bc() {
    let sat = example1().saturate();
    let f = enumerate_closed(&sat, DEFAULT_GUARD).unwrap();
    let fc = enumerate_closed(&remove_unitary_step(&sat, 2).unwrap(), DEFAULT_GUARD).unwrap();
    let g = g4();
    assert_eq!(
        fc,
        f.with([g.parse_set("c").unwrap(), g.parse_set("b c").unwrap()])
    );
}
