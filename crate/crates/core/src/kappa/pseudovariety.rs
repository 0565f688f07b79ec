use std::collections::BTreeMap;

use serde::Serialize;

use super::parse::parse_pseudoidentities;
use super::term::{satisfies, Assignment, Pseudoidentity};
use crate::error::{Error, Result};
use crate::semigroup::{structural_predicates, FiniteSemigroup};

/// A pseudovariety given by a finite basis of pseudoidentities, optionally
/// paired with a structural predicate it is expected to agree with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudovarietyDef {
    pub name: String,
    pub basis: Vec<Pseudoidentity>,
    /// Name of a predicate understood by [`crate::semigroup::StructuralPredicates::get`].
    pub structural_check: Option<String>,
}

impl PseudovarietyDef {
    /// Builds a definition from equation strings (chains allowed).
    pub fn from_equations(
        name: &str,
        equations: &[&str],
        structural_check: Option<&str>,
    ) -> Result<Self> {
        let mut basis = Vec::new();
        for eq in equations {
            basis.extend(parse_pseudoidentities(eq)?);
        }
        Ok(PseudovarietyDef {
            name: name.to_string(),
            basis,
            structural_check: structural_check.map(str::to_string),
        })
    }

    /// Structural membership, when a check is attached.
    pub fn structural_member(&self, s: &FiniteSemigroup) -> Option<bool> {
        let check = self.structural_check.as_deref()?;
        structural_predicates(s).get(check)
    }
}

/// Result of a membership test. On failure, `failed` names the first basis
/// element that does not hold and the falsifying assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub failed: Option<FailedIdentity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedIdentity {
    pub identity: String,
    pub assignment: Assignment,
}

pub fn member(s: &FiniteSemigroup, v: &PseudovarietyDef) -> Membership {
    for pid in &v.basis {
        let r = satisfies(s, pid);
        if !r.holds {
            return Membership {
                member: false,
                failed: Some(FailedIdentity {
                    identity: pid.to_string(),
                    assignment: r.witness.unwrap_or_default(),
                }),
            };
        }
    }
    Membership {
        member: true,
        failed: None,
    }
}

const BUILTIN: &[(&str, &[&str], &str)] = &[
    ("S", &[], "always"),
    ("I", &["x = y"], "isTrivial"),
    ("A", &["x^(w+1) = x^w"], "isAperiodic"),
    ("G", &["x^w y = y", "y x^w = y"], "isGroup"),
    ("J", &["(xy)^w x = (xy)^w = y(xy)^w"], "isJTrivial"),
    ("Sl", &["x^2 = x", "xy = yx"], "isSemilattice"),
    ("N", &["x^w y = x^w = y x^w"], "isNilpotent"),
    ("CR", &["x^(w+1) = x"], "isCompletelyRegular"),
];

/// Locally a semilattice: every local monoid `eSe` is a semilattice.
/// Carried without a structural cross-check.
const EXPERIMENTAL: &[(&str, &[&str])] = &[(
    "LSl",
    &[
        "x^w y x^w = (x^w y x^w)^2",
        "x^w y x^w z x^w = x^w z x^w y x^w",
    ],
)];

/// The built-in pseudovarieties, keyed by name.
pub fn registry() -> BTreeMap<String, PseudovarietyDef> {
    BUILTIN
        .iter()
        .map(|(name, eqs, check)| {
            let def = PseudovarietyDef::from_equations(name, eqs, Some(check))
                .expect("built-in bases parse");
            (name.to_string(), def)
        })
        .collect()
}

/// [`registry`] plus definitions that have no structural cross-check.
pub fn registry_with_experimental() -> BTreeMap<String, PseudovarietyDef> {
    let mut all = registry();
    for (name, eqs) in EXPERIMENTAL {
        let def = PseudovarietyDef::from_equations(name, eqs, None).expect("built-in bases parse");
        all.insert(name.to_string(), def);
    }
    all
}

pub fn lookup(name: &str) -> Result<PseudovarietyDef> {
    registry_with_experimental()
        .remove(name)
        .ok_or_else(|| Error::NotFound(format!("pseudovariety {name:?}")))
}
