//! Explicit set families and the exponential-time reference computations
//! every fast path is checked against.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::base::strip_comment;
use crate::closure::ClosureOperator;
use crate::error::{Error, Result};
use crate::set::{validate_token, AttrSet, GroundSet};

pub const DEFAULT_GUARD: usize = 16;
pub const MAX_GUARD: usize = 20;

/// Largest ground set for which the superset-intersection table is built.
const TABLE_LIMIT: usize = MAX_GUARD;

/// A duplicate-free family of subsets in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: GroundSet,
    sets: BTreeSet<AttrSet>,
}

/// Why `is_extension` answered false. Reports the first violation in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionWitness {
    Missing(AttrSet),
    Pair {
        first: AttrSet,
        second: AttrSet,
        base_closure: AttrSet,
        ext_closure: AttrSet,
    },
}

impl SetFamily {
    pub fn new<I>(ground: GroundSet, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = AttrSet>,
    {
        let full = ground.full();
        let mut out = BTreeSet::new();
        for s in sets {
            if !s.is_subset(full) {
                return Err(Error::Precondition(
                    "set mentions an element outside the ground set".into(),
                ));
            }
            out.insert(s);
        }
        Ok(SetFamily { ground, sets: out })
    }

    pub(crate) fn from_parts(ground: GroundSet, sets: BTreeSet<AttrSet>) -> Self {
        SetFamily { ground, sets }
    }

    /// Builds a family from `"a c"` style token strings; `"{}"` is ∅.
    pub fn from_tokens(ground: GroundSet, sets: &[&str]) -> Result<Self> {
        let parsed = sets
            .iter()
            .map(|s| ground.parse_set(s))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, parsed)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: AttrSet) -> bool {
        self.sets.contains(&set)
    }

    pub fn iter(&self) -> impl Iterator<Item = AttrSet> + '_ {
        self.sets.iter().copied()
    }

    pub fn sets(&self) -> &BTreeSet<AttrSet> {
        &self.sets
    }

    pub fn with(&self, extra: impl IntoIterator<Item = AttrSet>) -> SetFamily {
        let mut sets = self.sets.clone();
        sets.extend(extra);
        SetFamily::from_parts(self.ground.clone(), sets)
    }

    /// Members of `self` not in `other`, in canonical order.
    pub fn difference(&self, other: &SetFamily) -> Vec<AttrSet> {
        self.sets.difference(&other.sets).copied().collect()
    }

    /// ∩{F ∈ family : X ⊆ F}; S when no member contains X.
    pub fn closure_from_family(&self, set: AttrSet) -> AttrSet {
        self.sets
            .iter()
            .filter(|f| set.is_subset(**f))
            .fold(self.ground.full(), |acc, f| acc & *f)
    }

    /// Closes `sets ∪ {S}` under pairwise intersection.
    pub fn generated_by<I>(ground: GroundSet, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = AttrSet>,
    {
        let seed = SetFamily::new(ground, sets)?;
        let mut all: BTreeSet<AttrSet> = seed.sets.clone();
        all.insert(seed.ground.full());
        let mut frontier: Vec<AttrSet> = all.iter().copied().collect();
        while !frontier.is_empty() {
            let snapshot: Vec<AttrSet> = all.iter().copied().collect();
            let mut next = Vec::new();
            for &f in &frontier {
                for &g in &snapshot {
                    let m = f & g;
                    if all.insert(m) {
                        next.push(m);
                    }
                }
            }
            frontier = next;
        }
        Ok(SetFamily::from_parts(seed.ground, all))
    }

    fn table(&self) -> Option<ClosureTable> {
        (self.ground.len() <= TABLE_LIMIT).then(|| ClosureTable::build(self))
    }

    /// Checks that the family contains S and is closed under intersection.
    pub fn check_closure_system(&self) -> Result<()> {
        let full = self.ground.full();
        if !self.contains(full) {
            return Err(Error::NotClosureSystem("missing the ground set".into()));
        }
        match self.table() {
            Some(t) if self.len() > 64 => {
                for bits in 0..t.up.len() as u64 {
                    let m = t.up[bits as usize];
                    if !self.contains(m) {
                        return Err(Error::NotClosureSystem(format!(
                            "{} is an intersection of members but not a member",
                            self.ground.compact(m)
                        )));
                    }
                }
                Ok(())
            }
            _ => self.check_pairwise(),
        }
    }

    fn check_pairwise(&self) -> Result<()> {
        let sets: Vec<AttrSet> = self.iter().collect();
        for (i, &f) in sets.iter().enumerate() {
            for &g in &sets[i + 1..] {
                if !self.contains(f & g) {
                    return Err(Error::NotClosureSystem(format!(
                        "{} ∩ {} = {} is not a member",
                        self.ground.compact(f),
                        self.ground.compact(g),
                        self.ground.compact(f & g)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_closure_system(&self) -> bool {
        self.check_closure_system().is_ok()
    }

    /// Minimal members strictly containing `f`.
    pub fn covers_in_family(&self, f: AttrSet) -> Result<Vec<AttrSet>> {
        if !self.contains(f) {
            return Err(Error::NotMember);
        }
        let above: Vec<AttrSet> = self.iter().filter(|g| f.is_strict_subset(*g)).collect();
        Ok(above
            .iter()
            .copied()
            .filter(|g| !above.iter().any(|h| h.is_strict_subset(*g)))
            .collect())
    }

    /// Meet-irreducible members: M ≠ S that differ from the intersection of
    /// the members strictly above them (equivalently, with a unique cover).
    pub fn meets_of_family(&self) -> Result<SetFamily> {
        self.check_closure_system()?;
        let full = self.ground.full();
        let sets = match self.table() {
            Some(t) if self.len() > 64 => self
                .iter()
                .filter(|&m| m != full)
                .filter(|&m| {
                    let above = (full - m)
                        .iter()
                        .fold(full, |acc, a| acc & t.up[m.with(a).bits() as usize]);
                    above != m
                })
                .collect(),
            _ => self
                .iter()
                .filter(|&m| m != full)
                .filter(|&m| {
                    let above = self
                        .iter()
                        .filter(|g| m.is_strict_subset(*g))
                        .fold(full, |acc, g| acc & g);
                    above != m
                })
                .collect(),
        };
        Ok(SetFamily::from_parts(self.ground.clone(), sets))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ground: Option<GroundSet> = None;
        let mut sets = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match &ground {
                None => {
                    let rest = line
                        .strip_prefix("elements:")
                        .ok_or_else(|| perr("expected `elements:` header".into()))?;
                    let mut g = GroundSet::new(Vec::<String>::new())?;
                    for tok in rest.split_whitespace() {
                        validate_token(tok).map_err(|e| perr(e.to_string()))?;
                        if g.index_of(tok).is_some() {
                            return Err(perr(format!("duplicate element `{tok}` in header")));
                        }
                        g.push(tok.to_string()).map_err(|e| perr(e.to_string()))?;
                    }
                    ground = Some(g);
                }
                Some(g) => {
                    if line.starts_with("elements:") {
                        return Err(perr("duplicate `elements:` header".into()));
                    }
                    let set = if line == "{}" {
                        AttrSet::EMPTY
                    } else {
                        let mut s = AttrSet::EMPTY;
                        for tok in line.split_whitespace() {
                            let i = g
                                .index_of(tok)
                                .ok_or_else(|| perr(format!("unknown element `{tok}`")))?;
                            s.insert(i);
                        }
                        s
                    };
                    sets.insert(set);
                }
            }
        }
        let ground = ground.ok_or(Error::Parse {
            line: 0,
            message: "missing `elements:` header".into(),
        })?;
        Ok(SetFamily::from_parts(ground, sets))
    }

    /// Header line, then one member per line in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::from("elements:");
        for name in self.ground.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for &s in &self.sets {
            let _ = writeln!(out, "{}", self.ground.render(s));
        }
        out
    }

    /// `{∅, a, b, ac}` style, for diagnostics.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self.iter().map(|s| self.ground.compact(s)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl ClosureOperator for SetFamily {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn close(&self, set: AttrSet) -> AttrSet {
        self.closure_from_family(set)
    }
}

/// `up[X]` = ∩{F ∈ family : X ⊆ F}, for every X ⊆ S, filled from the top.
struct ClosureTable {
    up: Vec<AttrSet>,
}

impl ClosureTable {
    fn build(family: &SetFamily) -> Self {
        let n = family.ground.len();
        let size = 1usize << n;
        let full = family.ground.full();
        let mut present = vec![false; size];
        for s in family.iter() {
            present[s.bits() as usize] = true;
        }
        let mut up = vec![full; size];
        for bits in (0..size).rev() {
            let x = AttrSet::from_bits(bits as u64);
            up[bits] = if present[bits] {
                x
            } else {
                (full - x)
                    .iter()
                    .fold(full, |acc, a| acc & up[x.with(a).bits() as usize])
            };
        }
        ClosureTable { up }
    }

    fn close(&self, set: AttrSet) -> AttrSet {
        self.up[set.bits() as usize]
    }
}

fn check_guard(ground: &GroundSet, guard: usize) -> Result<()> {
    let n = ground.len();
    if n > guard || n > MAX_GUARD {
        return Err(Error::GuardExceeded {
            n,
            guard: guard.min(MAX_GUARD),
        });
    }
    Ok(())
}

/// All closed sets { F ⊆ S : Φ(F) = F }.
pub fn enumerate_closed<C: ClosureOperator + ?Sized>(
    closure: &C,
    guard: usize,
) -> Result<SetFamily> {
    let ground = closure.ground();
    check_guard(ground, guard)?;
    let sets = (0..1u64 << ground.len())
        .map(AttrSet::from_bits)
        .filter(|&x| closure.close(x) == x)
        .collect();
    Ok(SetFamily::from_parts(ground.clone(), sets))
}

/// Is `ext` an extension of `base`: `base ⊆ ext` and, for every pair of
/// members of `base`, both families close their union to the same set.
/// `Ok(None)` means yes; otherwise the first violation.
pub fn is_extension(base: &SetFamily, ext: &SetFamily) -> Result<Option<ExtensionWitness>> {
    if base.ground != ext.ground {
        return Err(Error::GroundMismatch);
    }
    base.check_closure_system()?;
    ext.check_closure_system()?;
    if let Some(missing) = base.iter().find(|f| !ext.contains(*f)) {
        return Ok(Some(ExtensionWitness::Missing(missing)));
    }
    let (bt, et) = (base.table(), ext.table());
    let close = |fam: &SetFamily, t: &Option<ClosureTable>, x: AttrSet| match t {
        Some(t) => t.close(x),
        None => fam.closure_from_family(x),
    };
    let members: Vec<AttrSet> = base.iter().collect();
    let mut checked = HashSet::new();
    for (i, &first) in members.iter().enumerate() {
        for &second in &members[i..] {
            let union = first | second;
            if !checked.insert(union) {
                continue;
            }
            let base_closure = close(base, &bt, union);
            let ext_closure = close(ext, &et, union);
            if base_closure != ext_closure {
                return Ok(Some(ExtensionWitness::Pair {
                    first,
                    second,
                    base_closure,
                    ext_closure,
                }));
            }
        }
    }
    Ok(None)
}

/// The largest extension by direct membership test: F is kept iff
/// Φ'(A_F) ⊆ F where A_F = { a : Φ(a) ⊆ F } and Φ' is Φ with Φ'(∅) = ∅.
///
/// Φ' is the operator of 𝔽 ∪ {∅}, which is itself an extension of 𝔽, so
/// both have the same largest extension.
pub fn largest_extension_bruteforce<C: ClosureOperator + ?Sized>(
    closure: &C,
    guard: usize,
) -> Result<SetFamily> {
    let ground = closure.ground();
    check_guard(ground, guard)?;
    let n = ground.len();
    let units: Vec<AttrSet> = (0..n)
        .map(|a| closure.close(AttrSet::singleton(a)))
        .collect();
    let sets: BTreeSet<AttrSet> = (0..1u64 << n)
        .map(AttrSet::from_bits)
        .filter(|&f| {
            let generators: AttrSet = (0..n).filter(|&a| units[a].is_subset(f)).collect();
            generators.is_empty() || closure.close(generators).is_subset(f)
        })
        .collect();
    let family = SetFamily::from_parts(ground.clone(), sets);
    family.check_closure_system()?;
    Ok(family)
}

/// True when ∅ and every singleton are members.
pub fn is_atomistic(family: &SetFamily) -> bool {
    family.contains(AttrSet::EMPTY)
        && (0..family.ground.len()).all(|x| family.contains(AttrSet::singleton(x)))
}
