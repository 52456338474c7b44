#![allow(dead_code)]

use closext::{AttrSet, GroundSet, Implication, ImplicationalBase, MeetFamily, SetFamily};
use proptest::prelude::*;

/// Arbitrary base over `a..` with any premise/conclusion, including
/// empty-premise and trivial rules.
pub fn arb_base(
    min_n: usize,
    max_n: usize,
    max_k: usize,
) -> impl Strategy<Value = ImplicationalBase> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let full = (1u64 << n) - 1;
        proptest::collection::vec((0..=full, 0..=full), 0..=max_k).prop_map(move |rules| {
            let imps = rules
                .into_iter()
                .map(|(l, r)| Implication::new(AttrSet::from_bits(l), AttrSet::from_bits(r)));
            ImplicationalBase::new(GroundSet::alphabetic(n).unwrap(), imps).unwrap()
        })
    })
}

/// Generator-shaped base: no empty premise, no trivial rule.
pub fn arb_generated(
    min_n: usize,
    max_n: usize,
    max_k: usize,
) -> impl Strategy<Value = ImplicationalBase> {
    (min_n..=max_n, 0..=max_k, any::<u64>()).prop_filter_map("too many rules", |(n, k, seed)| {
        closext::random_base(n, k, seed).ok()
    })
}

/// Arbitrary meet family from random sets; generally not reduced and may
/// have Φ(∅) ≠ ∅.
pub fn arb_meets(min_n: usize, max_n: usize, max_m: usize) -> impl Strategy<Value = MeetFamily> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let full = (1u64 << n) - 1;
        proptest::collection::vec(0..=full, 0..=max_m).prop_map(move |sets| {
            MeetFamily::new(
                GroundSet::alphabetic(n).unwrap(),
                sets.into_iter().map(AttrSet::from_bits),
            )
            .unwrap()
        })
    })
}

pub fn powerset(n: usize) -> SetFamily {
    SetFamily::new(
        GroundSet::alphabetic(n).unwrap(),
        (0..1u64 << n).map(AttrSet::from_bits),
    )
    .unwrap()
}

pub fn g4() -> GroundSet {
    GroundSet::alphabetic(4).unwrap()
}

pub fn example1() -> ImplicationalBase {
    ImplicationalBase::from_rules(
        g4(),
        &[("c", "a"), ("d", "a"), ("a b", "c d"), ("a c d", "b")],
    )
    .unwrap()
}
