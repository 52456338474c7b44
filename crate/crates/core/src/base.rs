//! Implicational bases: the `.imp` text format, Σ-closure, the
//! unitary/non-unitary split and saturation.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::closure::{ClosureOperator, UnitTable};
use crate::error::{Error, Result};
use crate::set::{validate_token, AttrSet, GroundSet};

/// A rule `premise -> conclusion`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: AttrSet,
    pub conclusion: AttrSet,
}

impl Implication {
    pub fn new(premise: AttrSet, conclusion: AttrSet) -> Self {
        Implication {
            premise,
            conclusion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.conclusion.is_subset(self.premise)
    }

    pub fn is_unitary(&self) -> bool {
        self.premise.len() == 1
    }

    pub fn has_empty_premise(&self) -> bool {
        self.premise.is_empty()
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        let mut line = String::new();
        for i in self.premise.iter() {
            line.push_str(ground.name(i));
            line.push(' ');
        }
        line.push_str("->");
        for i in self.conclusion.iter() {
            line.push(' ');
            line.push_str(ground.name(i));
        }
        line
    }

    /// `ab→cd` style, for diagnostics.
    pub fn compact(&self, ground: &GroundSet) -> String {
        let p = if self.premise.is_empty() {
            String::new()
        } else {
            ground.compact(self.premise)
        };
        format!("{p}→{}", ground.compact(self.conclusion))
    }
}

/// Σ: an ordered, duplicate-free list of implications over a ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationalBase {
    ground: GroundSet,
    implications: Vec<Implication>,
}

impl ImplicationalBase {
    pub fn new<I>(ground: GroundSet, implications: I) -> Result<Self>
    where
        I: IntoIterator<Item = Implication>,
    {
        let full = ground.full();
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for imp in implications {
            if !(imp.premise | imp.conclusion).is_subset(full) {
                return Err(Error::Precondition(
                    "implication mentions an element outside the ground set".into(),
                ));
            }
            if seen.insert(imp) {
                list.push(imp);
            }
        }
        Ok(ImplicationalBase {
            ground,
            implications: list,
        })
    }

    pub fn empty(ground: GroundSet) -> Self {
        ImplicationalBase {
            ground,
            implications: Vec::new(),
        }
    }

    /// Builds a base from `("a b", "c")` style token pairs.
    pub fn from_rules(ground: GroundSet, rules: &[(&str, &str)]) -> Result<Self> {
        let imps = rules
            .iter()
            .map(|(l, r)| Ok(Implication::new(ground.parse_set(l)?, ground.parse_set(r)?)))
            .collect::<Result<Vec<_>>>()?;
        ImplicationalBase::new(ground, imps)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    fn sub_base(&self, keep: impl Fn(&Implication) -> bool) -> ImplicationalBase {
        ImplicationalBase {
            ground: self.ground.clone(),
            implications: self.implications.iter().copied().filter(keep).collect(),
        }
    }

    /// X^Σ by forward chaining; each implication fires at most once.
    pub fn closure(&self, set: AttrSet) -> AttrSet {
        let mut current = set;
        let mut fired = vec![false; self.implications.len()];
        loop {
            let mut changed = false;
            for (imp, done) in self.implications.iter().zip(fired.iter_mut()) {
                if !*done && imp.premise.is_subset(current) {
                    *done = true;
                    if !imp.conclusion.is_subset(current) {
                        current |= imp.conclusion;
                        changed = true;
                    }
                }
            }
            if !changed {
                return current;
            }
        }
    }

    pub fn is_closed(&self, set: AttrSet) -> bool {
        self.implications
            .iter()
            .all(|imp| !imp.premise.is_subset(set) || imp.conclusion.is_subset(set))
    }

    /// Partitions Σ by premise size into (|L| = 1, |L| > 1, |L| = 0).
    pub fn split_unitary(&self) -> (ImplicationalBase, ImplicationalBase, ImplicationalBase) {
        (
            self.sub_base(|i| i.premise.len() == 1),
            self.sub_base(|i| i.premise.len() > 1),
            self.sub_base(|i| i.premise.is_empty()),
        )
    }

    pub fn unitary(&self) -> ImplicationalBase {
        self.sub_base(Implication::is_unitary)
    }

    pub fn non_unitary(&self) -> ImplicationalBase {
        self.sub_base(|i| i.premise.len() > 1)
    }

    pub fn has_empty_premise(&self) -> bool {
        self.implications.iter().any(Implication::has_empty_premise)
    }

    /// Equivalent base with `∅ → Φ(∅)` (when non-empty), `x → Φ(x)` for each
    /// pivot in ground order, then `Φ_u(L) → Φ(L)` for each non-unitary rule in
    /// input order. Lifted rules that became trivial are dropped.
    pub fn saturate(&self) -> ImplicationalBase {
        let units = UnitTable::compute(self);
        let mut out = Vec::new();
        if !units.bottom().is_empty() {
            out.push(Implication::new(AttrSet::EMPTY, units.bottom()));
        }
        for &x in units.pivots() {
            out.push(Implication::new(AttrSet::singleton(x), units.closure(x)));
        }
        for imp in self.implications.iter().filter(|i| i.premise.len() > 1) {
            let lifted = units.unit_union(imp.premise);
            let closed = self.closure(imp.premise);
            if !closed.is_subset(lifted) {
                out.push(Implication::new(lifted, closed));
            }
        }
        ImplicationalBase::new(self.ground.clone(), out).expect("subsets of the same ground set")
    }

    /// Same implications regardless of order.
    pub fn same_rules(&self, other: &ImplicationalBase) -> bool {
        let a: HashSet<_> = self.implications.iter().collect();
        let b: HashSet<_> = other.implications.iter().collect();
        self.ground == other.ground && a == b
    }

    pub fn without(&self, imp: &Implication) -> ImplicationalBase {
        self.sub_base(|i| i != imp)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut declared: Option<GroundSet> = None;
        let mut inferred = GroundSet::new(Vec::<String>::new())?;
        let mut rules: Vec<(Vec<&str>, Vec<&str>, usize)> = Vec::new();
        let mut seen_content = false;

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
            if let Some(rest) = line.strip_prefix("elements:") {
                if seen_content {
                    return Err(perr("`elements:` header must come first".into()));
                }
                seen_content = true;
                let mut g = GroundSet::new(Vec::<String>::new())?;
                for tok in rest.split_whitespace() {
                    validate_token(tok).map_err(|e| perr(e.to_string()))?;
                    if g.index_of(tok).is_some() {
                        return Err(perr(format!("duplicate element `{tok}` in header")));
                    }
                    g.push(tok.to_string()).map_err(|e| perr(e.to_string()))?;
                }
                declared = Some(g);
                continue;
            }
            seen_content = true;
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| perr("expected `premise -> conclusion`".into()))?;
            if rhs.contains("->") {
                return Err(perr("more than one `->`".into()));
            }
            let premise: Vec<&str> = lhs.split_whitespace().collect();
            let conclusion: Vec<&str> = rhs.split_whitespace().collect();
            for &tok in premise.iter().chain(conclusion.iter()) {
                match &declared {
                    Some(g) => {
                        if g.index_of(tok).is_none() {
                            return Err(perr(format!("unknown element `{tok}`")));
                        }
                    }
                    None => {
                        validate_token(tok).map_err(|e| perr(e.to_string()))?;
                        if inferred.index_of(tok).is_none() {
                            inferred
                                .push(tok.to_string())
                                .map_err(|e| perr(e.to_string()))?;
                        }
                    }
                }
            }
            rules.push((premise, conclusion, line_no));
        }

        let ground = declared.unwrap_or(inferred);
        let mut imps = Vec::with_capacity(rules.len());
        for (premise, conclusion, _) in rules {
            imps.push(Implication::new(
                ground.set_of(premise)?,
                ground.set_of(conclusion)?,
            ));
        }
        ImplicationalBase::new(ground, imps)
    }

    /// `.imp` text: header line, then one implication per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("elements:");
        for name in self.ground.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for imp in &self.implications {
            let _ = writeln!(out, "{}", imp.render(&self.ground));
        }
        out
    }
}

impl ClosureOperator for ImplicationalBase {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn close(&self, set: AttrSet) -> AttrSet {
        self.closure(set)
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g4() -> GroundSet {
        GroundSet::alphabetic(4).unwrap()
    }

    fn example1() -> ImplicationalBase {
        ImplicationalBase::from_rules(
            g4(),
            &[("c", "a"), ("d", "a"), ("a b", "c d"), ("a c d", "b")],
        )
        .unwrap()
    }

    fn sigma1() -> ImplicationalBase {
        ImplicationalBase::from_rules(g4(), &[("a b", "c"), ("c", "d")]).unwrap()
    }

    fn sigma2() -> ImplicationalBase {
        ImplicationalBase::from_rules(g4(), &[("a b", "c"), ("b", "d")]).unwrap()
    }

    fn set(s: &str) -> AttrSet {
        g4().parse_set(s).unwrap()
    }

    #[test]
    fn parse_example1() {
        let text = "elements: a b c d\nc -> a\nd -> a\na b -> c d\na c d -> b\n";
        let base = ImplicationalBase::parse(text).unwrap();
        assert_eq!(base, example1());
        assert_eq!(base.len(), 4);
        assert_eq!(base.to_text(), text);
    }

    #[test]
    fn parse_header_only_and_empty_premise() {
        let base = ImplicationalBase::parse("elements: a\n").unwrap();
        assert_eq!(base.ground().len(), 1);
        assert!(base.is_empty());

        let base = ImplicationalBase::parse("-> a").unwrap();
        assert_eq!(base.implications()[0].premise, AttrSet::EMPTY);
        assert_eq!(base.implications()[0].conclusion, AttrSet::singleton(0));
        assert_eq!(base.to_text(), "elements: a\n-> a\n");
    }

    #[test]
    fn parse_infers_ground_and_dedups() {
        let text = "# comment\n\nb a -> c   # trailing\na b -> c\n";
        let base = ImplicationalBase::parse(text).unwrap();
        assert_eq!(base.ground().names(), ["b", "a", "c"]);
        assert_eq!(base.len(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = ImplicationalBase::parse("elements: a b\na b\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "expected `premise -> conclusion`".into()
            }
        );
        let err = ImplicationalBase::parse("elements: a b\n\na -> z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = ImplicationalBase::parse("elements: a b a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = ImplicationalBase::parse("a -> b\nelements: a b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(ImplicationalBase::parse("a -> b -> c").is_err());
    }

    #[test]
    fn serialize_sigma1_and_empty() {
        assert_eq!(sigma1().to_text(), "elements: a b c d\na b -> c\nc -> d\n");
        let empty = ImplicationalBase::empty(GroundSet::new(["a"]).unwrap());
        assert_eq!(empty.to_text(), "elements: a\n");
    }

    #[test]
    fn closure_examples() {
        assert_eq!(sigma1().closure(set("a b")), set("a b c d"));
        let (_, nu, _) = sigma1().split_unitary();
        assert_eq!(nu.closure(set("a b")), set("a b c"));
        assert_eq!(example1().closure(AttrSet::EMPTY), AttrSet::EMPTY);
        assert_eq!(example1().closure(set("a b")), set("a b c d"));
    }

    #[test]
    fn split_examples() {
        let (u, nu, e) = sigma1().split_unitary();
        assert_eq!(
            u,
            ImplicationalBase::from_rules(g4(), &[("c", "d")]).unwrap()
        );
        assert_eq!(
            nu,
            ImplicationalBase::from_rules(g4(), &[("a b", "c")]).unwrap()
        );
        assert!(e.is_empty());

        let (u, nu, e) = example1().split_unitary();
        assert_eq!(u.len(), 2);
        assert_eq!(nu.len(), 2);
        assert!(e.is_empty());

        let only = ImplicationalBase::parse("-> a").unwrap();
        let (u, nu, e) = only.split_unitary();
        assert!(u.is_empty() && nu.is_empty());
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn unit_table_examples() {
        let t = UnitTable::compute(&example1());
        assert_eq!(t.pivots(), &[2, 3]);
        assert_eq!(t.closure(2), set("a c"));
        assert_eq!(t.star(2), set("a"));
        assert_eq!(t.closure(3), set("a d"));
        assert_eq!(t.star(3), set("a"));
        assert_eq!(t.bottom(), AttrSet::EMPTY);

        let nu = ImplicationalBase::from_rules(g4(), &[("a b", "c")]).unwrap();
        assert!(UnitTable::compute(&nu).pivots().is_empty());
    }

    #[test]
    fn saturate_examples() {
        let expected = ImplicationalBase::from_rules(
            g4(),
            &[
                ("c", "a c"),
                ("d", "a d"),
                ("a b", "a b c d"),
                ("a c d", "a b c d"),
            ],
        )
        .unwrap();
        assert_eq!(example1().saturate(), expected);

        let expected =
            ImplicationalBase::from_rules(g4(), &[("b", "b d"), ("a b d", "a b c d")]).unwrap();
        assert_eq!(sigma2().saturate(), expected);

        assert_eq!(expected.saturate(), expected);

        let with_bottom = ImplicationalBase::parse("elements: a b c\n-> a\nb c -> a\n").unwrap();
        let sat = with_bottom.saturate();
        assert_eq!(
            sat.implications()[0],
            Implication::new(AttrSet::EMPTY, AttrSet::singleton(0))
        );
        // every element is a pivot once Φ(∅) = {a}, except a itself
        assert_eq!(sat.unitary().len(), 2);
    }

    pub(crate) fn arb_base(max_n: usize, max_k: usize) -> impl Strategy<Value = ImplicationalBase> {
        (1..=max_n).prop_flat_map(move |n| {
            let full = (1u64 << n) - 1;
            proptest::collection::vec((0..=full, 0..=full), 0..=max_k).prop_map(move |rules| {
                let ground = GroundSet::alphabetic(n).unwrap();
                let imps = rules
                    .into_iter()
                    .map(|(l, r)| Implication::new(AttrSet::from_bits(l), AttrSet::from_bits(r)));
                ImplicationalBase::new(ground, imps).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn closure_axioms(base in arb_base(10, 12), x in any::<u64>(), y in any::<u64>()) {
            let full = base.ground().full().bits();
            let x = AttrSet::from_bits(x & full);
            let y = AttrSet::from_bits(y & full) | x;
            let cx = base.closure(x);
            prop_assert!(x.is_subset(cx));
            prop_assert!(cx.is_subset(base.closure(y)));
            prop_assert_eq!(base.closure(cx), cx);
            prop_assert!(base.is_closed(cx));
        }

        #[test]
        fn split_partitions(base in arb_base(8, 12)) {
            let (u, nu, e) = base.split_unitary();
            prop_assert_eq!(u.len() + nu.len() + e.len(), base.len());
            for imp in base.implications() {
                let hits = [&u, &nu, &e]
                    .iter()
                    .filter(|b| b.implications().contains(imp))
                    .count();
                prop_assert_eq!(hits, 1);
            }
        }

        #[test]
        fn saturate_preserves_closed_sets(base in arb_base(7, 10)) {
            let sat = base.saturate();
            for bits in 0..(1u64 << base.ground().len()) {
                let x = AttrSet::from_bits(bits);
                prop_assert_eq!(base.closure(x), sat.closure(x));
            }
            let units = UnitTable::compute(&base);
            for &x in units.pivots() {
                let rules: Vec<_> = sat
                    .implications()
                    .iter()
                    .filter(|i| i.premise == AttrSet::singleton(x))
                    .collect();
                prop_assert_eq!(rules.len(), 1);
                prop_assert_eq!(rules[0].conclusion, units.closure(x));
            }
        }

        #[test]
        fn text_round_trip(base in arb_base(8, 10)) {
            let text = base.to_text();
            let back = ImplicationalBase::parse(&text).unwrap();
            prop_assert_eq!(&back.to_text(), &text);
            prop_assert_eq!(back, base);
        }
    }
}
