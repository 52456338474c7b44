//! Ground sets and bit-indexed subsets.
//!
//! An [`AttrSet`] is a subset of a ground set of at most [`MAX_ELEMENTS`]
//! elements, stored as a machine word. It does not carry its ground set;
//! the owning [`GroundSet`] is responsible for naming and rendering it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 64;

/// Named, ordered universe. The index of a name is its position.
#[derive(Clone, Debug)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for GroundSet {}

pub(crate) fn validate_token(token: &str) -> Result<()> {
    if token.is_empty()
        || token.chars().any(char::is_whitespace)
        || token == "->"
        || token == "{}"
        || token.starts_with('#')
    {
        return Err(Error::InvalidToken(token.to_string()));
    }
    Ok(())
}

impl GroundSet {
    pub fn new<I, T>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let mut out = GroundSet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            validate_token(&name)?;
            if out.index.contains_key(&name) {
                return Err(Error::DuplicateElement(name));
            }
            out.push(name)?;
        }
        Ok(out)
    }

    /// Ground set `a, b, c, ...` used throughout tests and generated instances.
    /// Beyond 26 elements names continue as `x26, x27, ...`.
    pub fn alphabetic(n: usize) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        GroundSet::new((0..n).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        }))
    }

    pub(crate) fn push(&mut self, name: String) -> Result<usize> {
        if self.names.len() == MAX_ELEMENTS {
            return Err(Error::TooManyElements(self.names.len() + 1));
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn full(&self) -> AttrSet {
        AttrSet::full(self.len())
    }

    /// Resolves whitespace-separated tokens. `{}` alone denotes the empty set.
    pub fn parse_set(&self, text: &str) -> Result<AttrSet> {
        let text = text.trim();
        if text == "{}" {
            return Ok(AttrSet::EMPTY);
        }
        self.set_of(text.split_whitespace())
    }

    pub fn set_of<'a, I>(&self, tokens: I) -> Result<AttrSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = AttrSet::EMPTY;
        for tok in tokens {
            let i = self
                .index_of(tok)
                .ok_or_else(|| Error::UnknownElement(tok.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Space-separated names in ground order, or `{}` for the empty set.
    pub fn render(&self, set: AttrSet) -> String {
        if set.is_empty() {
            return "{}".to_string();
        }
        self.tokens(set).join(" ")
    }

    pub fn tokens(&self, set: AttrSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Compact form used in diagnostics: `ac`, `abcd`, `∅`. Separates with
    /// spaces when some name is longer than one character.
    pub fn compact(&self, set: AttrSet) -> String {
        if set.is_empty() {
            return "∅".to_string();
        }
        if self.names.iter().all(|n| n.chars().count() == 1) {
            set.iter().map(|i| self.names[i].as_str()).collect()
        } else {
            self.render(set)
        }
    }
}

/// Subset of a ground set, one bit per element index.
///
/// Ordering is the canonical family order: by cardinality, then
/// lexicographically on the sorted index sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AttrSet(u64);

impl AttrSet {
    pub const EMPTY: AttrSet = AttrSet(0);

    pub fn from_bits(bits: u64) -> Self {
        AttrSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            AttrSet(u64::MAX)
        } else {
            AttrSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        AttrSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = AttrSet::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(self, i: usize) -> Self {
        AttrSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        AttrSet(self.0 & !(1u64 << i))
    }

    pub fn is_subset(self, other: AttrSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: AttrSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn iter(self) -> Indices {
        Indices(self.0)
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

impl BitOr for AttrSet {
    type Output = AttrSet;
    fn bitor(self, rhs: AttrSet) -> AttrSet {
        AttrSet(self.0 | rhs.0)
    }
}

impl BitAnd for AttrSet {
    type Output = AttrSet;
    fn bitand(self, rhs: AttrSet) -> AttrSet {
        AttrSet(self.0 & rhs.0)
    }
}

impl Sub for AttrSet {
    type Output = AttrSet;
    fn sub(self, rhs: AttrSet) -> AttrSet {
        AttrSet(self.0 & !rhs.0)
    }
}

impl std::ops::BitOrAssign for AttrSet {
    fn bitor_assign(&mut self, rhs: AttrSet) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAndAssign for AttrSet {
    fn bitand_assign(&mut self, rhs: AttrSet) {
        self.0 &= rhs.0;
    }
}

impl Ord for AttrSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the smallest differing index belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for AttrSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for AttrSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        AttrSet::from_indices(iter)
    }
}
