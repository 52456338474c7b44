//! Closure-query capability and the per-element unit table.

use crate::set::{AttrSet, GroundSet};

/// Anything that answers Φ(X) over a fixed ground set: an implicational
/// base, a meet family, or an explicit set family.
pub trait ClosureOperator {
    fn ground(&self) -> &GroundSet;
    fn close(&self, set: AttrSet) -> AttrSet;
}

impl<T: ClosureOperator + ?Sized> ClosureOperator for &T {
    fn ground(&self) -> &GroundSet {
        (**self).ground()
    }
    fn close(&self, set: AttrSet) -> AttrSet {
        (**self).close(set)
    }
}

/// Unit closures Φ(x) for every element, the pivots U_Φ = {x : Φ(x) ≠ {x}},
/// and the bottom Φ(∅).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitTable {
    pivots: Vec<usize>,
    unit_closure: Vec<AttrSet>,
    bottom: AttrSet,
}

impl UnitTable {
    pub fn compute<C: ClosureOperator + ?Sized>(closure: &C) -> Self {
        let n = closure.ground().len();
        let unit_closure: Vec<AttrSet> = (0..n)
            .map(|x| closure.close(AttrSet::singleton(x)))
            .collect();
        let pivots = (0..n)
            .filter(|&x| unit_closure[x] != AttrSet::singleton(x))
            .collect();
        UnitTable {
            pivots,
            unit_closure,
            bottom: closure.close(AttrSet::EMPTY),
        }
    }

    /// U_Φ in ground order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, x: usize) -> bool {
        self.unit_closure[x] != AttrSet::singleton(x)
    }

    pub fn closure(&self, x: usize) -> AttrSet {
        self.unit_closure[x]
    }

    /// Φ_*(x) = Φ(x) \ {x}; empty for non-pivots.
    pub fn star(&self, x: usize) -> AttrSet {
        self.unit_closure[x].without(x)
    }

    pub fn bottom(&self) -> AttrSet {
        self.bottom
    }

    /// Φ_u(L) = ∪_{x∈L} Φ(x).
    pub fn unit_union(&self, set: AttrSet) -> AttrSet {
        set.iter()
            .fold(AttrSet::EMPTY, |acc, x| acc | self.unit_closure[x])
    }

    /// True when every member's unit closure stays inside `set`.
    pub fn is_unit_closed(&self, set: AttrSet) -> bool {
        self.unit_union(set).is_subset(set)
    }
}
