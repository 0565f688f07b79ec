use std::collections::BTreeSet;

use serde::Serialize;

use super::progroup::pro_g_closure;
use crate::error::{Error, Result};
use crate::freegroup::GroupWord;
use crate::kappa::{member, Membership, PseudovarietyDef};
use crate::language::{Alphabet, Dfa, Morphism};
use crate::semigroup::{Element, FiniteSemigroup};

/// How an element entered the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum KernelStep {
    Identity {
        element: Element,
    },
    Idempotent {
        element: Element,
    },
    Product {
        element: Element,
        left: Element,
        right: Element,
    },
    /// `element = a·m·b` where `aba = a` or `bab = b`.
    WeakConjugate {
        element: Element,
        a: Element,
        m: Element,
        b: Element,
    },
}

impl KernelStep {
    pub fn element(&self) -> Element {
        match *self {
            KernelStep::Identity { element }
            | KernelStep::Idempotent { element }
            | KernelStep::Product { element, .. }
            | KernelStep::WeakConjugate { element, .. } => element,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub monoid: FiniteSemigroup,
    pub kernel: BTreeSet<Element>,
    /// One step per element, in the order elements were added.
    pub trace: Vec<KernelStep>,
}

/// Pairs `(a, b)` with `aba = a` or `bab = b`.
pub fn weak_inverse_pairs(m: &FiniteSemigroup) -> Vec<(Element, Element)> {
    let mut pairs = Vec::new();
    for a in m.elements() {
        for b in m.elements() {
            let aba = m.mul(m.mul(a, b), a);
            let bab = m.mul(m.mul(b, a), b);
            if aba == a || bab == b {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// The smallest submonoid containing the idempotents and closed under
/// `m ↦ amb` for every pair with `aba = a` or `bab = b`.
pub fn kernel_g(m: &FiniteSemigroup) -> Result<KernelResult> {
    let one = m
        .identity()
        .ok_or_else(|| Error::Domain("the kernel is defined for monoids only".into()))?;
    let pairs = weak_inverse_pairs(m);
    let mut inside = vec![false; m.order()];
    let mut members: Vec<Element> = Vec::new();
    let mut trace = Vec::new();
    let mut queue = Vec::new();
    let mut add = |step: KernelStep,
                   inside: &mut Vec<bool>,
                   members: &mut Vec<Element>,
                   queue: &mut Vec<Element>| {
        let e = step.element();
        if !inside[e] {
            inside[e] = true;
            members.push(e);
            queue.push(e);
            trace.push(step);
        }
    };
    add(
        KernelStep::Identity { element: one },
        &mut inside,
        &mut members,
        &mut queue,
    );
    for e in m.idempotents() {
        add(
            KernelStep::Idempotent { element: e },
            &mut inside,
            &mut members,
            &mut queue,
        );
    }
    let mut next = 0;
    while next < queue.len() {
        let x = queue[next];
        next += 1;
        let mut fresh = Vec::new();
        for &y in &members {
            fresh.push(KernelStep::Product {
                element: m.mul(x, y),
                left: x,
                right: y,
            });
            fresh.push(KernelStep::Product {
                element: m.mul(y, x),
                left: y,
                right: x,
            });
        }
        for &(a, b) in &pairs {
            let element = m.mul(m.mul(a, x), b);
            fresh.push(KernelStep::WeakConjugate {
                element,
                a,
                m: x,
                b,
            });
        }
        for step in fresh {
            add(step, &mut inside, &mut members, &mut queue);
        }
    }
    Ok(KernelResult {
        monoid: m.clone(),
        kernel: members.into_iter().collect(),
        trace,
    })
}

/// Letters `a, b, c, ...` (then `A..Z`, `0..9`) for the non-identity
/// elements in ascending order.
pub fn canonical_generators(m: &FiniteSemigroup) -> Result<Morphism> {
    let one = m
        .identity()
        .ok_or_else(|| Error::Domain("a monoid is required".into()))?;
    let names: Vec<char> = ('a'..='z').chain('A'..='Z').chain('0'..='9').collect();
    let others: Vec<Element> = m.elements().filter(|&x| x != one).collect();
    if others.len() > names.len() {
        return Err(Error::Unsupported(format!(
            "{} generators exceed the available letter names",
            others.len()
        )));
    }
    let alphabet = Alphabet::new(names[..others.len()].iter().copied())?;
    Morphism::new(alphabet, m.clone(), others)
}

/// The Cayley automaton of `φ: A* → M`: states are elements, the initial
/// state is the identity and no state is final.
pub(crate) fn cayley_dfa(phi: &Morphism) -> Result<Dfa> {
    let m = &phi.codomain;
    let one = m
        .identity()
        .ok_or_else(|| Error::Domain("the morphism must land in a monoid".into()))?;
    let mut hit = phi.range();
    hit.insert(one);
    if hit.len() != m.order() {
        let missing: Vec<Element> = m.elements().filter(|x| !hit.contains(x)).collect();
        return Err(Error::Domain(format!(
            "morphism is not onto: {missing:?} never reached"
        )));
    }
    Ok(Dfa {
        alphabet: phi.alphabet.clone(),
        transitions: m
            .elements()
            .map(|q| phi.letter_image.iter().map(|&x| m.mul(q, x)).collect())
            .collect(),
        initial: one,
        finals: vec![false; m.order()],
    })
}

/// Expression for `φ⁻¹(x)` as a subset of `A*`, with `ε ↦ 1`.
pub(crate) fn preimage_regex(cayley: &Dfa, x: Element) -> crate::language::Regex {
    let mut d = cayley.clone();
    d.finals[x] = true;
    d.minimize().to_nfa().to_regex()
}

/// Elements `m` whose preimage has the empty word in its pro-group closure.
pub fn kernel_via_closure(phi: &Morphism) -> Result<BTreeSet<Element>> {
    let cayley = cayley_dfa(phi)?;
    Ok(phi
        .codomain
        .elements()
        .filter(|&x| pro_g_closure(&preimage_regex(&cayley, x)).contains(&GroupWord::identity()))
        .collect())
}

/// Membership of the Mal'cev product `W ⓜ G`: the kernel, with its induced
/// multiplication, must lie in `W`.
pub fn malcev_membership(m: &FiniteSemigroup, w: &PseudovarietyDef) -> Result<Membership> {
    let k = kernel_g(m)?;
    let sub = m
        .induced(&k.kernel)
        .map_err(|e| Error::Internal(format!("kernel is not a subsemigroup: {e}")))?;
    Ok(member(&sub, w))
}
