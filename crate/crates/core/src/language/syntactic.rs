use std::collections::{BTreeSet, HashMap};

use super::automaton::{to_minimal_dfa, Dfa};
use super::regex::{Alphabet, Regex};
use crate::error::{Error, Result};
use crate::semigroup::{Element, FiniteSemigroup};

/// A morphism `A+ -> S` determined by the images of the letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub alphabet: Alphabet,
    pub codomain: FiniteSemigroup,
    pub letter_image: Vec<Element>,
}

impl Morphism {
    pub fn new(
        alphabet: Alphabet,
        codomain: FiniteSemigroup,
        letter_image: Vec<Element>,
    ) -> Result<Self> {
        if letter_image.len() != alphabet.len() {
            return Err(Error::Domain(format!(
                "{} letter images for an alphabet of {} letters",
                letter_image.len(),
                alphabet.len()
            )));
        }
        if letter_image.iter().any(|&e| e >= codomain.order()) {
            return Err(Error::Domain("letter image out of range".into()));
        }
        Ok(Morphism {
            alphabet,
            codomain,
            letter_image,
        })
    }

    /// Image of a nonempty word given as letter indices.
    pub fn image(&self, word: &[usize]) -> Result<Element> {
        self.codomain
            .product(word.iter().map(|&a| self.letter_image[a]))
            .ok_or_else(|| Error::Domain("the empty word has no image in a semigroup".into()))
    }

    pub fn image_of_str(&self, word: &str) -> Result<Element> {
        self.image(&self.alphabet.encode(word)?)
    }

    /// Elements hit by some nonempty word.
    pub fn range(&self) -> BTreeSet<Element> {
        self.codomain.closure(&self.letter_image, &[])
    }
}

/// Whether the image of the nonempty word `w` lies in `accept`.
pub fn recognizes(m: &Morphism, accept: &BTreeSet<Element>, w: &str) -> Result<bool> {
    Ok(accept.contains(&m.image_of_str(w)?))
}

/// Transformation semigroup of a complete DFA, with words acting left to right.
///
/// Elements are numbered in shortlex order of their shortest representative,
/// which also serves as the element label. With `with_identity` the identity
/// transformation is included (labelled `1` unless a nonempty word induces it).
pub fn transition_semigroup(dfa: &Dfa, with_identity: bool) -> (FiniteSemigroup, Morphism) {
    let (s, m, _) = transition_semigroup_with_words(dfa, with_identity);
    (s, m)
}

/// As [`transition_semigroup`], also returning a shortest representative word per element.
pub fn transition_semigroup_with_words(
    dfa: &Dfa,
    with_identity: bool,
) -> (FiniteSemigroup, Morphism, Vec<Vec<usize>>) {
    let n = dfa.num_states();
    let k = dfa.alphabet.len();
    let letter_maps: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..n).map(|q| dfa.transitions[q][a]).collect())
        .collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();

    if with_identity {
        let id: Vec<usize> = (0..n).collect();
        index.insert(id.clone(), 0);
        maps.push(id);
        words.push(Vec::new());
    } else {
        for (a, m) in letter_maps.iter().enumerate() {
            if !index.contains_key(m) {
                index.insert(m.clone(), maps.len());
                maps.push(m.clone());
                words.push(vec![a]);
            }
        }
    }
    // breadth-first extension by letters on the right
    let mut i = 0;
    while i < maps.len() {
        for (a, m) in letter_maps.iter().enumerate() {
            let composed: Vec<usize> = maps[i].iter().map(|&q| m[q]).collect();
            if !index.contains_key(&composed) {
                let mut w = words[i].clone();
                w.push(a);
                index.insert(composed.clone(), maps.len());
                maps.push(composed);
                words.push(w);
            }
        }
        i += 1;
    }
    let size = maps.len();
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            let composed: Vec<usize> = maps[x].iter().map(|&q| maps[y][q]).collect();
            table.push(index[&composed]);
        }
    }
    let labels = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                dfa.alphabet.decode(w)
            }
        })
        .collect();
    let semigroup = FiniteSemigroup::from_flat_unchecked(size, table)
        .with_labels(labels)
        .expect("one label per element");
    let letter_image = letter_maps.iter().map(|m| index[m]).collect();
    let morphism = Morphism {
        alphabet: dfa.alphabet.clone(),
        codomain: semigroup.clone(),
        letter_image,
    };
    (semigroup, morphism, words)
}

/// Syntactic semigroup of a regular language together with its syntactic morphism.
#[derive(Debug, Clone)]
pub struct Syntactic {
    pub semigroup: FiniteSemigroup,
    pub morphism: Morphism,
    /// Images of the words of the language.
    pub accepting: BTreeSet<Element>,
    /// Whether the empty word is in the language. When it is, `semigroup` is
    /// the syntactic monoid (identity included).
    pub contains_empty: bool,
    pub dfa: Dfa,
}

impl Syntactic {
    pub fn recognizes(&self, w: &str) -> Result<bool> {
        recognizes(&self.morphism, &self.accepting, w)
    }
}

pub fn syntactic_semigroup(r: &Regex, alphabet: &Alphabet) -> Syntactic {
    let dfa = to_minimal_dfa(r, alphabet);
    syntactic_of_minimal_dfa(dfa)
}

/// The transition semigroup of a minimal DFA, which is the syntactic semigroup of its language.
pub fn syntactic_of_minimal_dfa(dfa: Dfa) -> Syntactic {
    let contains_empty = dfa.finals[dfa.initial];
    let (semigroup, morphism, words) = transition_semigroup_with_words(&dfa, contains_empty);
    let accepting = semigroup
        .elements()
        .filter(|&e| dfa.accepts(&words[e]))
        .collect();
    Syntactic {
        semigroup,
        morphism,
        accepting,
        contains_empty,
        dfa,
    }
}
