use serde::Serialize;

use super::{green_relations, monogenic_profile, FiniteSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub is_group: bool,
    pub is_aperiodic: bool,
    pub is_j_trivial: bool,
    pub is_semilattice: bool,
    pub is_nilpotent: bool,
    pub is_completely_regular: bool,
    pub is_trivial: bool,
}

impl StructuralPredicates {
    /// Looks a predicate up by the name used in pseudovariety definitions.
    pub fn get(&self, name: &str) -> Option<bool> {
        Some(match name {
            "isGroup" => self.is_group,
            "isAperiodic" => self.is_aperiodic,
            "isJTrivial" => self.is_j_trivial,
            "isSemilattice" => self.is_semilattice,
            "isNilpotent" => self.is_nilpotent,
            "isCompletelyRegular" => self.is_completely_regular,
            "isTrivial" => self.is_trivial,
            "always" => true,
            _ => return None,
        })
    }
}

pub fn structural_predicates(s: &FiniteSemigroup) -> StructuralPredicates {
    let green = green_relations(s);
    let idempotents = s.idempotents();
    let group_classes: Vec<&Vec<usize>> = green.group_h_classes(s).collect();

    let is_aperiodic = group_classes.iter().all(|c| c.len() == 1);
    debug_assert_eq!(
        is_aperiodic,
        s.elements().all(|x| monogenic_profile(s, x).period == 1)
    );
    let is_group = green.h.len() == 1 && !idempotents.is_empty();
    let is_j_trivial = green.j.classes.iter().all(|c| c.len() == 1);
    let is_semilattice = idempotents.len() == s.order() && s.is_commutative();
    let is_nilpotent = idempotents.len() == 1 && s.zero() == Some(idempotents[0]);
    let is_completely_regular = green
        .h
        .classes
        .iter()
        .all(|c| c.iter().any(|&e| s.is_idempotent(e)));

    StructuralPredicates {
        is_group,
        is_aperiodic,
        is_j_trivial,
        is_semilattice,
        is_nilpotent,
        is_completely_regular,
        is_trivial: s.order() == 1,
    }
}
