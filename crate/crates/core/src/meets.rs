//! Largest extension on the meet-irreducible side.
//!
//! Removing one pivot x (an element with Φ(x) ≠ {x}) adds a copy F ∪ {x}
//! of every closed set F missing Φ_*(x). The meet-irreducibles of the new
//! system follow from a six-way split of the current ones:
//!
//! | bucket | members M of 𝕄 with                                     | kept | M ∪ {x} added |
//! |--------|----------------------------------------------------------|------|---------------|
//! | M1     | Φ(x) ⊆ M                                                 | yes  |               |
//! | M2     | Φ_*(x) ⊆ M, x ∉ M                                        | yes  |               |
//! | M3     | otherwise, x ∈ M* (M* the unique cover)                  | yes  | yes           |
//! | M4     | otherwise, Φ_*(x) ⊆ M*, x ∉ M*                           |      | yes           |
//! | M5     | the rest                                                 |      | yes           |
//! | M6     | new: M′ ∩ M″ (M′ ∈ M3 ∪ M4, M″ ∈ M2) with one cover F₁   |      | yes           |
//! |        | missing Φ_*(x) and Φ(F ∪ {x}) = Φ(F₁ ∪ {x})              |      |               |

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::closure::{ClosureOperator, UnitTable};
use crate::error::{Error, Result};
use crate::family::{enumerate_closed, SetFamily};
use crate::set::{AttrSet, GroundSet};

/// 𝕄: a family of closed sets other than S whose intersection closure is
/// the represented closure system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetFamily {
    ground: GroundSet,
    meets: BTreeSet<AttrSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetPartition {
    pub pivot: usize,
    pub star: AttrSet,
    pub m1: Vec<AttrSet>,
    pub m2: Vec<AttrSet>,
    pub m3: Vec<AttrSet>,
    pub m4: Vec<AttrSet>,
    pub m5: Vec<AttrSet>,
    pub m6: Vec<AttrSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub pivot: usize,
    pub partition: MeetPartition,
    pub result: MeetFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionTrace {
    /// Input after reduction and, when Φ(∅) ≠ ∅, with ∅ adjoined.
    pub initial: MeetFamily,
    pub adjoined_empty: bool,
    pub steps: Vec<TraceStep>,
    pub final_meets: MeetFamily,
}

impl MeetFamily {
    /// Drops S and duplicates.
    pub fn new<I>(ground: GroundSet, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = AttrSet>,
    {
        let family = SetFamily::new(ground, sets)?;
        Ok(MeetFamily::from_family(&family))
    }

    pub fn from_family(family: &SetFamily) -> Self {
        let full = family.ground().full();
        MeetFamily {
            ground: family.ground().clone(),
            meets: family.iter().filter(|&m| m != full).collect(),
        }
    }

    pub fn from_tokens(ground: GroundSet, sets: &[&str]) -> Result<Self> {
        Ok(MeetFamily::from_family(&SetFamily::from_tokens(
            ground, sets,
        )?))
    }

    /// Meet-irreducibles of the closure system of `closure`, computed by
    /// enumeration.
    pub fn of_closure<C: ClosureOperator + ?Sized>(closure: &C, guard: usize) -> Result<Self> {
        let family = enumerate_closed(closure, guard)?;
        Ok(MeetFamily::from_family(&family.meets_of_family()?))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(MeetFamily::from_family(&SetFamily::parse(text)?))
    }

    pub fn to_text(&self) -> String {
        self.as_family().to_text()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.meets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.meets.is_empty()
    }

    pub fn contains(&self, set: AttrSet) -> bool {
        self.meets.contains(&set)
    }

    pub fn iter(&self) -> impl Iterator<Item = AttrSet> + '_ {
        self.meets.iter().copied()
    }

    pub fn as_family(&self) -> SetFamily {
        SetFamily::from_parts(self.ground.clone(), self.meets.clone())
    }

    /// The generated closure system, by enumeration.
    pub fn closed_sets(&self, guard: usize) -> Result<SetFamily> {
        enumerate_closed(self, guard)
    }

    /// ∩{M ∈ 𝕄 : X ⊆ M}; S on empty intersection.
    pub fn closure(&self, set: AttrSet) -> AttrSet {
        self.meets
            .iter()
            .filter(|m| set.is_subset(**m))
            .fold(self.ground.full(), |acc, m| acc & *m)
    }

    /// Closed sets covering `f`: the ⊆-minimal among Φ(f ∪ {a}), a ∉ f.
    pub fn covers(&self, f: AttrSet) -> Result<Vec<AttrSet>> {
        if self.closure(f) != f {
            return Err(Error::NotClosed);
        }
        Ok(self.covers_of_closed(f))
    }

    fn covers_of_closed(&self, f: AttrSet) -> Vec<AttrSet> {
        let candidates: BTreeSet<AttrSet> = (self.ground.full() - f)
            .iter()
            .map(|a| self.closure(f.with(a)))
            .collect();
        candidates
            .iter()
            .copied()
            .filter(|c| !candidates.iter().any(|d| d.is_strict_subset(*c)))
            .collect()
    }

    /// Every member has a unique cover in the generated system.
    pub fn is_reduced(&self) -> bool {
        self.iter().all(|m| self.covers_of_closed(m).len() == 1)
    }

    /// Keeps only the members with a unique cover. The others are
    /// intersections of strictly larger members, so the generated system
    /// does not change.
    pub fn reduce(&self) -> MeetFamily {
        MeetFamily {
            ground: self.ground.clone(),
            meets: self
                .iter()
                .filter(|&m| self.covers_of_closed(m).len() == 1)
                .collect(),
        }
    }

    fn pivot_closure(&self, x: usize) -> Result<AttrSet> {
        if x >= self.ground.len() {
            return Err(Error::Precondition(format!(
                "element index {x} out of range"
            )));
        }
        let unit = self.closure(AttrSet::singleton(x));
        if unit == AttrSet::singleton(x) {
            return Err(Error::NotPivot(self.ground.name(x).to_string()));
        }
        Ok(unit)
    }

    /// Splits 𝕄 relative to pivot `x` and finds the M6 candidates.
    pub fn partition(&self, x: usize) -> Result<MeetPartition> {
        let unit = self.pivot_closure(x)?;
        self.partition_with(x, unit)
    }

    fn unique_cover(&self, m: AttrSet) -> Result<AttrSet> {
        match self.covers_of_closed(m).as_slice() {
            [one] => Ok(*one),
            other => Err(Error::NotReduced {
                covers: other.len(),
            }),
        }
    }

    fn partition_with(&self, x: usize, unit: AttrSet) -> Result<MeetPartition> {
        let star = unit.without(x);
        let mut p = MeetPartition {
            pivot: x,
            star,
            m1: Vec::new(),
            m2: Vec::new(),
            m3: Vec::new(),
            m4: Vec::new(),
            m5: Vec::new(),
            m6: Vec::new(),
        };
        for m in self.iter() {
            if star.is_subset(m) {
                if m.contains(x) {
                    p.m1.push(m);
                } else {
                    p.m2.push(m);
                }
                continue;
            }
            let cover = self.unique_cover(m)?;
            if cover.contains(x) {
                p.m3.push(m);
            } else if star.is_subset(cover) {
                p.m4.push(m);
            } else {
                p.m5.push(m);
            }
        }

        let candidates: BTreeSet<AttrSet> =
            p.m3.iter()
                .chain(p.m4.iter())
                .flat_map(|&m1| p.m2.iter().map(move |&m2| m1 & m2))
                .filter(|f| !self.contains(*f))
                .collect();
        for f in candidates {
            let outside: Vec<AttrSet> = self
                .covers_of_closed(f)
                .into_iter()
                .filter(|c| !star.is_subset(*c))
                .collect();
            if let [first] = outside.as_slice() {
                if self.closure(f.with(x)) == self.closure(first.with(x)) {
                    p.m6.push(f);
                }
            }
        }

        p.assert_valid(self);
        Ok(p)
    }

    /// 𝕄_x̄ = M1 ∪ M2 ∪ M3 ∪ { M ∪ {x} : M ∈ M3 ∪ M4 ∪ M5 ∪ M6 }.
    pub fn step(&self, x: usize) -> Result<MeetFamily> {
        Ok(self.apply(&self.partition(x)?))
    }

    fn apply(&self, p: &MeetPartition) -> MeetFamily {
        let kept = p.m1.iter().chain(&p.m2).chain(&p.m3).copied();
        let copied =
            p.m3.iter()
                .chain(&p.m4)
                .chain(&p.m5)
                .chain(&p.m6)
                .map(|m| m.with(p.pivot));
        MeetFamily {
            ground: self.ground.clone(),
            meets: kept.chain(copied).collect(),
        }
    }

    /// Incremental largest extension, pivots in ground order.
    pub fn largest_extension(&self) -> ExtensionTrace {
        let (start, adjoined) = self.normalized();
        let order = UnitTable::compute(&start).pivots().to_vec();
        start
            .extend_along(&order, adjoined)
            .expect("pivots of a reduced family are valid steps")
    }

    /// Same as [`MeetFamily::largest_extension`] with an explicit pivot
    /// order, which must be a permutation of U_Φ.
    pub fn largest_extension_ordered(&self, order: &[usize]) -> Result<ExtensionTrace> {
        let (start, adjoined) = self.normalized();
        let mut expected = UnitTable::compute(&start).pivots().to_vec();
        let mut given = order.to_vec();
        expected.sort_unstable();
        given.sort_unstable();
        if expected != given {
            return Err(Error::Precondition(
                "order is not a permutation of the pivots".into(),
            ));
        }
        start.extend_along(order, adjoined)
    }

    fn normalized(&self) -> (MeetFamily, bool) {
        let mut start = self.reduce();
        let adjoin = !start.closure(AttrSet::EMPTY).is_empty();
        if adjoin {
            // ∅ has the single cover Φ(∅)
            start.meets.insert(AttrSet::EMPTY);
        }
        (start, adjoin)
    }

    fn extend_along(&self, order: &[usize], adjoined_empty: bool) -> Result<ExtensionTrace> {
        let units = UnitTable::compute(self);
        let mut current = self.clone();
        let mut steps = Vec::with_capacity(order.len());
        for &x in order {
            debug_assert_eq!(current.closure(AttrSet::singleton(x)), units.closure(x));
            let partition = current.partition_with(x, units.closure(x))?;
            let next = current.apply(&partition);
            debug_assert!((0..self.ground.len())
                .filter(|&y| y != x)
                .all(|y| next.closure(AttrSet::singleton(y))
                    == current.closure(AttrSet::singleton(y))));
            steps.push(TraceStep {
                pivot: x,
                partition,
                result: next.clone(),
            });
            current = next;
        }
        Ok(ExtensionTrace {
            adjoined_empty,
            initial: self.clone(),
            steps,
            final_meets: current,
        })
    }
}

impl ClosureOperator for MeetFamily {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn close(&self, set: AttrSet) -> AttrSet {
        self.closure(set)
    }
}

impl MeetPartition {
    pub fn buckets(&self) -> [&[AttrSet]; 6] {
        [&self.m1, &self.m2, &self.m3, &self.m4, &self.m5, &self.m6]
    }

    fn assert_valid(&self, meets: &MeetFamily) {
        let first_five: usize = self.buckets()[..5].iter().map(|b| b.len()).sum();
        let union: BTreeSet<AttrSet> = self.buckets()[..5]
            .iter()
            .flat_map(|b| b.iter().copied())
            .collect();
        assert_eq!(first_five, union.len(), "M1..M5 overlap");
        assert_eq!(union, meets.meets, "M1..M5 do not cover the family");
        assert!(
            self.m6.iter().all(|f| !meets.contains(*f)),
            "M6 meets the family"
        );
    }

    pub fn render_text(&self, ground: &GroundSet) -> String {
        let mut out = String::new();
        for (i, bucket) in self.buckets().iter().enumerate() {
            let parts: Vec<String> = bucket.iter().map(|s| ground.compact(*s)).collect();
            let _ = writeln!(out, "M{} = {{{}}}", i + 1, parts.join(", "));
        }
        out
    }

    pub fn to_json(&self, ground: &GroundSet) -> Value {
        let bucket = |b: &[AttrSet]| b.iter().map(|s| ground.tokens(*s)).collect::<Vec<_>>();
        json!({
            "pivot": ground.name(self.pivot),
            "star": ground.tokens(self.star),
            "m1": bucket(&self.m1),
            "m2": bucket(&self.m2),
            "m3": bucket(&self.m3),
            "m4": bucket(&self.m4),
            "m5": bucket(&self.m5),
            "m6": bucket(&self.m6),
        })
    }
}

impl ExtensionTrace {
    pub fn render_text(&self) -> String {
        let ground = self.initial.ground();
        let mut out = String::new();
        let _ = writeln!(out, "initial M = {}", self.initial.as_family().compact());
        if self.adjoined_empty {
            let _ = writeln!(out, "adjoined ∅");
        }
        for (i, step) in self.steps.iter().enumerate() {
            let x = step.pivot;
            let _ = writeln!(
                out,
                "step {}: pivot {}, Φ_*({}) = {}",
                i + 1,
                ground.name(x),
                ground.name(x),
                ground.compact(step.partition.star)
            );
            out.push_str(&step.partition.render_text(ground));
            let _ = writeln!(out, "M_{} = {}", i + 1, step.result.as_family().compact());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let ground = self.initial.ground();
        let fam = |m: &MeetFamily| m.iter().map(|s| ground.tokens(s)).collect::<Vec<_>>();
        json!({
            "initial": fam(&self.initial),
            "adjoined_empty": self.adjoined_empty,
            "steps": self.steps.iter().map(|s| json!({
                "pivot": ground.name(s.pivot),
                "partition": s.partition.to_json(ground),
                "result": fam(&s.result),
            })).collect::<Vec<_>>(),
            "final": fam(&self.final_meets),
        })
    }
}
