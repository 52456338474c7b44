//! Seeded random implicational bases.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{Implication, ImplicationalBase};
use crate::error::{Error, Result};
use crate::set::{AttrSet, GroundSet};

const MAX_ATTEMPTS: usize = 10_000;

/// `k` distinct non-trivial rules over `a, b, c, ...` with single-element
/// conclusions. The first `min(k, ⌈n/3⌉)` rules are unitary so that most
/// instances have pivots; the remaining premises have 1 to 3 elements,
/// uniformly. Identical arguments give identical bases.
pub fn random_base(n: usize, k: usize, seed: u64) -> Result<ImplicationalBase> {
    let ground = GroundSet::alphabetic(n)?;
    if k > 0 && n < 2 {
        return Err(Error::Generate(format!(
            "no non-trivial implication exists over {n} element(s)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit_quota = k.min(n.div_ceil(3));
    let max_premise = 3.min(n.saturating_sub(1));
    let mut seen = HashSet::new();
    let mut rules = Vec::with_capacity(k);
    for i in 0..k {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > MAX_ATTEMPTS {
                return Err(Error::Generate(format!(
                    "could not find {k} distinct rules over {n} elements"
                )));
            }
            let size = if i < unit_quota {
                1
            } else {
                rng.random_range(1..=max_premise)
            };
            let premise: AttrSet = sample(&mut rng, n, size).into_iter().collect();
            let outside: Vec<usize> = (0..n).filter(|&x| !premise.contains(x)).collect();
            let conclusion = AttrSet::singleton(outside[rng.random_range(0..outside.len())]);
            let rule = Implication::new(premise, conclusion);
            if seen.insert(rule) {
                rules.push(rule);
                break;
            }
        }
    }
    ImplicationalBase::new(ground, rules)
}
