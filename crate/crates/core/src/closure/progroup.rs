use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::freegroup::{rational_membership, GroupAutomaton, GroupWord, SignedLetter};
use crate::language::{to_minimal_dfa, Alphabet, Dfa, Nfa, Regex};
use crate::semigroup::{Element, FiniteSemigroup};

/// Closure of a regular language in the pro-group topology, kept as a
/// saturated rational subset of the free group and queried lazily.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub automaton: GroupAutomaton,
    pub source_regex: Regex,
}

impl ClosureResult {
    /// Membership of an arbitrary reduced group word.
    pub fn contains(&self, w: &GroupWord) -> bool {
        rational_membership(&self.automaton, w)
    }

    /// Membership of a positive word given as text; `""` is the empty word.
    pub fn contains_word(&self, w: &str) -> bool {
        self.contains(&GroupWord::positive(w))
    }

    /// The positive words in the closure, as an automaton over `alphabet`.
    pub fn positive_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let positive = self.automaton.positive_part();
        let mut nfa = Nfa::new(alphabet.clone());
        for q in 0..positive.num_states() {
            nfa.add_state(positive.finals().contains(&q));
        }
        for (p, l, q) in positive.edges() {
            match l {
                None => nfa.add_edge(p, None, q),
                Some(x) => {
                    if let Some(a) = alphabet.index(x.letter) {
                        nfa.add_edge(p, Some(a), q);
                    }
                }
            }
        }
        nfa.initial = positive.initial().iter().copied().collect();
        nfa
    }

    /// An expression for the positive words in the closure.
    pub fn positive_regex(&self, alphabet: &Alphabet) -> Regex {
        self.positive_nfa(alphabet)
            .determinize()
            .minimize()
            .to_nfa()
            .to_regex()
    }
}

fn translate(r: &Regex) -> GroupAutomaton {
    match r {
        Regex::Empty => GroupAutomaton::empty(),
        Regex::Epsilon => GroupAutomaton::epsilon(),
        Regex::Letter(c) => GroupAutomaton::raw_word(&[SignedLetter::pos(*c)]),
        Regex::Union(a, b) => translate(a).union(&translate(b)),
        Regex::Concat(a, b) => translate(a).concat(&translate(b)),
        // ε lies in every subgroup, so K* needs no extra union
        Regex::Star(k) => translate(k).subgroup_graph(),
        // K⁺ = K·K*, whose closure K·⟨K⟩ is ⟨K⟩ unless K is empty
        Regex::Plus(k) => {
            let inner = translate(k);
            if inner.is_empty() {
                GroupAutomaton::empty()
            } else {
                inner.subgroup_graph()
            }
        }
    }
}

/// Closure of the language of `r` in the free group for the pro-group
/// topology, with stars and pluses replaced by generated subgroups.
pub fn pro_g_closure(r: &Regex) -> ClosureResult {
    ClosureResult {
        automaton: translate(r).saturate(),
        source_regex: r.clone(),
    }
}

/// Whether the positive word `w` can be separated from the language of `r`
/// by a language recognized by a finite group.
pub fn separable_by_group_language(w: &str, r: &Regex) -> bool {
    !pro_g_closure(r).contains_word(w)
}

/// A morphism onto a small group under which `w` and the language are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    pub group: String,
    pub order: usize,
    pub letter_image: Vec<(char, Element)>,
    pub word_image: Element,
    pub language_image: BTreeSet<Element>,
}

/// The groups of order at most six, each with a display name.
pub fn small_groups() -> Vec<(String, FiniteSemigroup)> {
    let mut out: Vec<(String, FiniteSemigroup)> = (1..=6)
        .map(|n| (format!("C{n}"), FiniteSemigroup::cyclic_group(n)))
        .collect();
    let c2 = FiniteSemigroup::cyclic_group(2);
    out.insert(4, ("C2xC2".into(), c2.direct_product(&c2)));
    out.push(("S3".into(), FiniteSemigroup::symmetric_group_3()));
    out
}

/// Image of the language of `dfa` in a group under the given letter images.
pub fn language_image(
    dfa: &Dfa,
    group: &FiniteSemigroup,
    letter_image: &[Element],
) -> BTreeSet<Element> {
    let one = group.identity().expect("groups have an identity");
    let n = group.order();
    let mut seen = vec![false; dfa.num_states() * n];
    let mut queue = VecDeque::from([(dfa.initial, one)]);
    seen[dfa.initial * n + one] = true;
    let mut image = BTreeSet::new();
    while let Some((q, g)) = queue.pop_front() {
        if dfa.finals[q] {
            image.insert(g);
        }
        for (a, &r) in dfa.transitions[q].iter().enumerate() {
            let h = group.mul(g, letter_image[a]);
            if !seen[r * n + h] {
                seen[r * n + h] = true;
                queue.push_back((r, h));
            }
        }
    }
    image
}

/// Searches the groups of [`small_groups`] with orders up to `max_order`,
/// and every assignment of letters, for a morphism separating `w` from `r`.
pub fn find_group_certificate(
    w: &str,
    r: &Regex,
    alphabet: &Alphabet,
    max_order: usize,
) -> crate::Result<Option<SeparationCertificate>> {
    let word = alphabet.encode(w)?;
    let dfa = to_minimal_dfa(r, alphabet);
    let k = alphabet.len();
    for (name, group) in small_groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= max_order)
    {
        let n = group.order();
        let mut images = vec![0; k];
        loop {
            let one = group.identity().expect("groups have an identity");
            let word_image = word.iter().fold(one, |g, &a| group.mul(g, images[a]));
            let language = language_image(&dfa, &group, &images);
            if !language.contains(&word_image) {
                return Ok(Some(SeparationCertificate {
                    group: name,
                    order: n,
                    letter_image: alphabet
                        .letters()
                        .iter()
                        .copied()
                        .zip(images.iter().copied())
                        .collect(),
                    word_image,
                    language_image: language,
                }));
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                images[i] += 1;
                if images[i] < n {
                    break;
                }
                images[i] = 0;
            }
            if images.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Ok(None)
}
