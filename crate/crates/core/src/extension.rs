//! Largest extension on the implicational-base side.
//!
//! A base Σ splits into unitary rules Σ_u (|L| = 1) and non-unitary rules
//! Σ_nu (|L| > 1). Σ_nu is a base of the largest extension exactly when
//! Σ is ideal-closed (Φ_nu(L) absorbs Φ(x) for every x it contains) and
//! every premise element's Φ_*(x) is already forced by the rest of its
//! premise under Σ_nu.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::base::{Implication, ImplicationalBase};
use crate::closure::UnitTable;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{AttrSet, GroundSet};

/// Φ_nu(L) misses part of Φ(unit) although it contains `unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealClosedViolation {
    pub implication: Implication,
    pub nu_closure: AttrSet,
    pub unit: usize,
    pub unit_closure: AttrSet,
}

/// Φ_*(element) ⊄ Φ_nu(L \ {element}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseViolation {
    pub implication: Implication,
    pub element: usize,
    pub star: AttrSet,
    pub nu_closure_without: AttrSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizerReport {
    pub verdict: bool,
    pub ideal_closed_violations: Vec<IdealClosedViolation>,
    pub premise_violations: Vec<PremiseViolation>,
}

impl RecognizerReport {
    pub fn render_text(&self, ground: &GroundSet) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.verdict {
                "largest"
            } else {
                "not-largest"
            }
        );
        for v in &self.ideal_closed_violations {
            let _ = writeln!(
                out,
                "ideal-closed violation: {}  Φ_nu(L) = {}  unit {} has Φ = {}",
                v.implication.compact(ground),
                ground.compact(v.nu_closure),
                ground.name(v.unit),
                ground.compact(v.unit_closure),
            );
        }
        for v in &self.premise_violations {
            let _ = writeln!(
                out,
                "premise violation: {}  element {}  Φ_* = {}  Φ_nu(L\\{{{}}}) = {}",
                v.implication.compact(ground),
                ground.name(v.element),
                ground.compact(v.star),
                ground.name(v.element),
                ground.compact(v.nu_closure_without),
            );
        }
        out
    }

    pub fn to_json(&self, ground: &GroundSet) -> Value {
        let imp = |i: &Implication| {
            json!({
                "premise": ground.tokens(i.premise),
                "conclusion": ground.tokens(i.conclusion),
            })
        };
        json!({
            "verdict": self.verdict,
            "ideal_closed_violations": self.ideal_closed_violations.iter().map(|v| json!({
                "implication": imp(&v.implication),
                "nu_closure": ground.tokens(v.nu_closure),
                "unit": ground.name(v.unit),
                "unit_closure": ground.tokens(v.unit_closure),
            })).collect::<Vec<_>>(),
            "premise_violations": self.premise_violations.iter().map(|v| json!({
                "implication": imp(&v.implication),
                "element": ground.name(v.element),
                "star": ground.tokens(v.star),
                "nu_closure_without": ground.tokens(v.nu_closure_without),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Non-unitary, non-trivial rules: the ones both conditions range over.
fn checked_rules(base: &ImplicationalBase) -> impl Iterator<Item = &Implication> {
    base.implications()
        .iter()
        .filter(|i| i.premise.len() > 1 && !i.is_trivial())
}

/// For each non-unitary rule L→R, every x ∈ Φ_nu(L) must have Φ(x) ⊆ Φ_nu(L).
/// Returns all violations; empty means ideal-closed.
pub fn is_ideal_closed(base: &ImplicationalBase) -> Vec<IdealClosedViolation> {
    let units = UnitTable::compute(base);
    let nu = base.non_unitary();
    let mut out = Vec::new();
    for imp in checked_rules(base) {
        let nu_closure = nu.closure(imp.premise);
        for unit in nu_closure.iter() {
            let unit_closure = units.closure(unit);
            if !unit_closure.is_subset(nu_closure) {
                out.push(IdealClosedViolation {
                    implication: *imp,
                    nu_closure,
                    unit,
                    unit_closure,
                });
            }
        }
    }
    out
}

/// Decides whether Σ_nu is a base of the largest extension of Σ's closure
/// system. Rejects bases with an empty-premise rule.
pub fn check_largest(base: &ImplicationalBase) -> Result<RecognizerReport> {
    if base.has_empty_premise() {
        return Err(Error::EmptyPremise);
    }
    let units = UnitTable::compute(base);
    let nu = base.non_unitary();
    let ideal_closed_violations = is_ideal_closed(base);
    let mut premise_violations = Vec::new();
    for imp in checked_rules(base) {
        for element in imp.premise.iter() {
            let star = units.star(element);
            let nu_closure_without = nu.closure(imp.premise.without(element));
            if !star.is_subset(nu_closure_without) {
                premise_violations.push(PremiseViolation {
                    implication: *imp,
                    element,
                    star,
                    nu_closure_without,
                });
            }
        }
    }
    Ok(RecognizerReport {
        verdict: ideal_closed_violations.is_empty() && premise_violations.is_empty(),
        ideal_closed_violations,
        premise_violations,
    })
}

/// Drops the unitary rule `x → Φ(x)` from a saturated base whose
/// non-unitary rules meet both recognizer conditions. The closed sets of
/// the result are 𝔽 ∪ { F ∪ {x} : F ∈ 𝔽, Φ_*(x) ⊄ F }.
pub fn remove_unitary_step(base: &ImplicationalBase, x: usize) -> Result<ImplicationalBase> {
    let ground = base.ground();
    if x >= ground.len() {
        return Err(Error::Precondition(format!(
            "element index {x} out of range"
        )));
    }
    if base.has_empty_premise() {
        return Err(Error::EmptyPremise);
    }
    let units = UnitTable::compute(base);
    if !units.is_pivot(x) {
        return Err(Error::NotPivot(ground.name(x).to_string()));
    }
    if !base.same_rules(&base.saturate()) {
        return Err(Error::Precondition(
            "base is not saturated (expected x → Φ(x) for each pivot and Φ_u(L) → Φ(L) otherwise)"
                .into(),
        ));
    }
    let report = check_largest(base)?;
    if !report.ideal_closed_violations.is_empty() {
        return Err(Error::Precondition("base is not ideal-closed".into()));
    }
    if !report.premise_violations.is_empty() {
        return Err(Error::Precondition(
            "a premise element has Φ_*(x) ⊄ Φ_nu(L \\ {x})".into(),
        ));
    }
    let unit_rule = Implication::new(AttrSet::singleton(x), units.closure(x));
    Ok(base.without(&unit_rule))
}

/// 𝔽 ∪ Δᶜ_x(𝔽) where Δ_x(𝔽) = { F ∈ 𝔽 : Φ_*(x) ⊄ F }.
pub fn extend_family_step(family: &SetFamily, x: usize, star: AttrSet) -> Result<SetFamily> {
    let ground = family.ground();
    if x >= ground.len() {
        return Err(Error::Precondition(format!(
            "element index {x} out of range"
        )));
    }
    family.check_closure_system()?;
    let unit = family.closure_from_family(AttrSet::singleton(x));
    if unit == AttrSet::singleton(x) {
        return Err(Error::NotPivot(ground.name(x).to_string()));
    }
    if unit.without(x) != star {
        return Err(Error::Precondition(format!(
            "given Φ_*({}) = {} but the family has {}",
            ground.name(x),
            ground.compact(star),
            ground.compact(unit.without(x))
        )));
    }
    let added: Vec<AttrSet> = family
        .iter()
        .filter(|f| !star.is_subset(*f))
        .map(|f| f.with(x))
        .collect();
    let out = family.with(added);
    out.check_closure_system()?;
    Ok(out)
}

/// Base of the largest extension: `Φ_u(L) → Φ(L)` for every non-unitary
/// rule whose lifted form is not trivial. Unitary and empty-premise rules
/// are gone.
pub fn largest_extension_base(base: &ImplicationalBase) -> ImplicationalBase {
    base.saturate().non_unitary()
}
