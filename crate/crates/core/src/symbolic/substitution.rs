use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::language::Alphabet;

/// An endomorphism of `A+` given by nonempty letter images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Vec<usize>>,
}

impl Substitution {
    /// `images[i]` is the image of the `i`-th letter of `alphabet`.
    pub fn new(alphabet: Alphabet, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::Domain("one image per letter is required".into()));
        }
        if alphabet.is_empty() {
            return Err(Error::Domain("empty alphabet".into()));
        }
        if let Some(i) = images.iter().position(Vec::is_empty) {
            return Err(Error::Domain(format!(
                "image of {} is empty",
                alphabet.letter(i)
            )));
        }
        if images.iter().flatten().any(|&b| b >= alphabet.len()) {
            return Err(Error::Domain("image letter out of range".into()));
        }
        Ok(Substitution { alphabet, images })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, letter: usize) -> &[usize] {
        &self.images[letter]
    }

    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter()
            .flat_map(|&a| self.images[a].iter().copied())
            .collect()
    }

    /// `φ^k(word)`.
    pub fn iterate(&self, word: &[usize], k: usize) -> Vec<usize> {
        (0..k).fold(word.to_vec(), |w, _| self.apply(&w))
    }

    /// `m[b][a]` counts the occurrences of `b` in the image of `a`.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.alphabet.len();
        let mut m = vec![vec![0; n]; n];
        for (a, image) in self.images.iter().enumerate() {
            for &b in image {
                m[b][a] += 1;
            }
        }
        m
    }

    /// Exponent beyond which a primitive nonnegative matrix is positive.
    pub fn wielandt_bound(&self) -> usize {
        let n = self.alphabet.len();
        (n - 1) * (n - 1) + 1
    }
}

impl FromStr for Substitution {
    type Err = Error;

    /// Parses rules such as `a->ab; b->ba`.
    fn from_str(text: &str) -> Result<Self> {
        let mut rules: Vec<(char, String)> = Vec::new();
        let mut offset = 0;
        for part in text.split(';') {
            let here = offset;
            offset += part.len() + 1;
            if part.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = part.split_once("->").ok_or_else(|| Error::Syntax {
                offset: here,
                message: "expected a rule of the form `a->word`".into(),
            })?;
            let mut lhs_chars = lhs.trim().chars();
            let letter = match (lhs_chars.next(), lhs_chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::Syntax {
                        offset: here,
                        message: "the left side must be a single letter".into(),
                    })
                }
            };
            if rules.iter().any(|(c, _)| *c == letter) {
                return Err(Error::Syntax {
                    offset: here,
                    message: format!("letter {letter:?} has two rules"),
                });
            }
            rules.push((letter, rhs.chars().filter(|c| !c.is_whitespace()).collect()));
        }
        let alphabet = Alphabet::new(rules.iter().map(|(c, _)| *c))?;
        let mut images = vec![Vec::new(); alphabet.len()];
        for (c, image) in &rules {
            images[alphabet.index(*c).expect("rule letter")] = alphabet.encode(image)?;
        }
        Substitution::new(alphabet, images)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, image) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, "; ")?;
            }
            write!(
                f,
                "{}->{}",
                self.alphabet.letter(a),
                self.alphabet.decode(image)
            )?;
        }
        Ok(())
    }
}

fn boolean_product(x: &[Vec<bool>], y: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| x[i][k] && y[k][j])).collect())
        .collect()
}

/// Whether the incidence matrix is primitive, by positivity of its power at
/// the Wielandt exponent.
pub fn is_primitive(s: &Substitution) -> bool {
    let m: Vec<Vec<bool>> = s
        .incidence_matrix()
        .iter()
        .map(|row| row.iter().map(|&x| x > 0).collect())
        .collect();
    let mut power = m.clone();
    for _ in 1..s.wielandt_bound() {
        power = boolean_product(&power, &m);
    }
    power.iter().all(|row| row.iter().all(|&x| x))
}

/// Least `n` up to the Wielandt exponent such that every letter occurs in
/// every `φⁿ(a)`, tracked through letter sets.
pub fn primitivity_exponent(s: &Substitution) -> Option<usize> {
    let k = s.alphabet.len();
    let mut sets: Vec<BTreeSet<usize>> = (0..k).map(|a| BTreeSet::from([a])).collect();
    for n in 1..=s.wielandt_bound() {
        sets = sets
            .iter()
            .map(|set| {
                set.iter()
                    .flat_map(|&b| s.images[b].iter().copied())
                    .collect()
            })
            .collect();
        if sets.iter().all(|set| set.len() == k) {
            return Some(n);
        }
    }
    None
}

fn factors_up_to(word: &[usize], n: usize, out: &mut BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut fresh = Vec::new();
    for i in 0..word.len() {
        for j in i + 1..=word.len().min(i + n) {
            if out.insert(word[i..j].to_vec()) {
                fresh.push(word[i..j].to_vec());
            }
        }
    }
    fresh
}

/// The blocks of length `n` of the subshift of a primitive substitution: the
/// length-`n` factors of the words `φᵏ(a)`.
///
/// A window of length `n` in `φ(u)` lies inside `φ(v)` for a factor `v` of
/// `u` of length at most `n`, so closing the letters under
/// `v ↦ factors≤n(φ(v))` reaches every such factor.
pub fn substitution_blocks(s: &Substitution, n: usize) -> Result<BTreeSet<Vec<usize>>> {
    if !is_primitive(s) {
        return Err(Error::Domain("the substitution is not primitive".into()));
    }
    if n == 0 {
        return Ok(BTreeSet::from([Vec::new()]));
    }
    let mut all: BTreeSet<Vec<usize>> = (0..s.alphabet.len()).map(|a| vec![a]).collect();
    let mut queue: Vec<Vec<usize>> = all.iter().cloned().collect();
    while let Some(v) = queue.pop() {
        let image = s.apply(&v);
        queue.extend(factors_up_to(&image, n, &mut all));
    }
    Ok(all.into_iter().filter(|w| w.len() == n).collect())
}
