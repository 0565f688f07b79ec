use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator or its inverse. Ordering is `a < a' < b < b' < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter {
    pub letter: char,
    pub inverse: bool,
}

impl SignedLetter {
    pub fn pos(letter: char) -> Self {
        SignedLetter {
            letter,
            inverse: false,
        }
    }

    pub fn neg(letter: char) -> Self {
        SignedLetter {
            letter,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        SignedLetter {
            letter: self.letter,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}'", self.letter)
        } else {
            write!(f, "{}", self.letter)
        }
    }
}

/// A freely reduced word in the free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord(Vec<SignedLetter>);

/// Free reduction by a single left-to-right stack pass.
pub fn reduce<I: IntoIterator<Item = SignedLetter>>(raw: I) -> GroupWord {
    let mut stack: Vec<SignedLetter> = Vec::new();
    for x in raw {
        if stack.last() == Some(&x.inv()) {
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    GroupWord(stack)
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    /// A positive word.
    pub fn positive(letters: &str) -> Self {
        reduce(letters.chars().map(SignedLetter::pos))
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|x| x.inv()).collect())
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(GroupWord::identity(), |acc, _| acc.mul(&base))
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| !x.inverse)
    }

    /// Every reduced word of length exactly `n` over `letters`.
    pub fn all_of_length(letters: &[char], n: usize) -> Vec<GroupWord> {
        let signed: Vec<SignedLetter> = letters
            .iter()
            .flat_map(|&c| [SignedLetter::pos(c), SignedLetter::neg(c)])
            .collect();
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Vec<SignedLetter>| {
                    signed
                        .iter()
                        .filter(|&&x| w.last() != Some(&x.inv()))
                        .map(|&x| {
                            let mut w = w.clone();
                            w.push(x);
                            w
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        out.into_iter().map(GroupWord).collect()
    }

    /// Every reduced word of length at most `n`, shortlex ordered.
    pub fn all_up_to(letters: &[char], n: usize) -> Vec<GroupWord> {
        (0..=n)
            .flat_map(|k| Self::all_of_length(letters, k))
            .collect()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "~");
        }
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Letters with an optional `'` suffix for the inverse; `~` is the empty word.
    /// The input is freely reduced.
    fn from_str(text: &str) -> Result<Self> {
        let mut raw = Vec::new();
        let mut chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .peekable();
        while let Some((offset, c)) = chars.next() {
            match c {
                '~' => {}
                c if c.is_ascii_alphanumeric() => {
                    if chars.peek().map(|&(_, c)| c) == Some('\'') {
                        chars.next();
                        raw.push(SignedLetter::neg(c));
                    } else {
                        raw.push(SignedLetter::pos(c));
                    }
                }
                other => {
                    return Err(Error::Syntax {
                        offset,
                        message: format!("unexpected {other:?} in group word"),
                    })
                }
            }
        }
        Ok(reduce(raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> GroupWord {
        text.parse().unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("aa'"), GroupWord::identity());
        assert_eq!(w("abb'a"), w("aa"));
        assert_eq!(w("ba'ab'a"), w("a"));
        assert_eq!(w("ab'a").to_string(), "ab'a");
        assert_eq!(GroupWord::identity().to_string(), "~");
        assert!(matches!(
            "a-b".parse::<GroupWord>(),
            Err(Error::Syntax { offset: 1, .. })
        ));
    }

    #[test]
    fn signed_letter_order() {
        let mut v = vec![
            SignedLetter::pos('b'),
            SignedLetter::neg('a'),
            SignedLetter::pos('a'),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                SignedLetter::pos('a'),
                SignedLetter::neg('a'),
                SignedLetter::pos('b')
            ]
        );
    }

    #[test]
    fn reduced_word_counts() {
        // 1, 4, 12, 36 reduced words of length 0..3 over two letters
        let counts: Vec<usize> = (0..4)
            .map(|n| GroupWord::all_of_length(&['a', 'b'], n).len())
            .collect();
        assert_eq!(counts, vec![1, 4, 12, 36]);
    }

    fn raw_word() -> impl Strategy<Value = Vec<SignedLetter>> {
        proptest::collection::vec(
            (prop_oneof![Just('a'), Just('b')], any::<bool>())
                .prop_map(|(letter, inverse)| SignedLetter { letter, inverse }),
            0..14,
        )
    }

    proptest! {
        // cancelling any adjacent inverse pair first leads to the same normal form
        #[test]
        fn reduction_is_confluent(raw in raw_word(), pick in any::<usize>()) {
            let direct = reduce(raw.clone());
            let pairs: Vec<usize> = (0..raw.len().saturating_sub(1))
                .filter(|&i| raw[i + 1] == raw[i].inv())
                .collect();
            if !pairs.is_empty() {
                let i = pairs[pick % pairs.len()];
                let mut shorter = raw.clone();
                shorter.drain(i..i + 2);
                prop_assert_eq!(reduce(shorter), direct.clone());
            }
            let letters = direct.letters();
            prop_assert!(letters.windows(2).all(|p| p[1] != p[0].inv()));
        }

        #[test]
        fn inverse_cancels(raw in raw_word()) {
            let g = reduce(raw);
            prop_assert!(g.mul(&g.inverse()).is_empty());
        }
    }
}
