use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite alphabet of single ASCII alphanumeric letters, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self> {
        let mut v: Vec<char> = letters.into_iter().collect();
        if let Some(&c) = v.iter().find(|c| !c.is_ascii_alphanumeric()) {
            return Err(Error::ForeignLetter(c));
        }
        v.sort_unstable();
        v.dedup();
        Ok(Alphabet(v))
    }

    /// Parses an alphabet from a string such as `"ab"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.chars().filter(|c| !c.is_whitespace() && *c != ','))
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, c: char) -> Option<usize> {
        self.0.binary_search(&c).ok()
    }

    pub fn letter(&self, i: usize) -> char {
        self.0[i]
    }

    /// Maps a word to letter indices, rejecting foreign letters.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .map(|c| self.index(c).ok_or(Error::ForeignLetter(c)))
            .collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.0[i]).collect()
    }

    /// Every word of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Vec<usize>> {
        let k = self.len();
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..k).map(move |a| {
                        let mut w = w.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Every nonempty word of length at most `n`, shortlex ordered.
    pub fn words_up_to(&self, n: usize) -> Vec<Vec<usize>> {
        (1..=n).flat_map(|len| self.words_of_length(len)).collect()
    }
}

/// Regular expressions over single-letter symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(char),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    pub fn plus(a: Regex) -> Regex {
        Regex::Plus(Box::new(a))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => 1,
            Regex::Union(a, b) | Regex::Concat(a, b) => 1 + a.size() + b.size(),
            Regex::Star(a) | Regex::Plus(a) => 1 + a.size(),
        }
    }

    pub fn letters(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_letters(&self, out: &mut Vec<char>) {
        match self {
            Regex::Letter(c) => out.push(*c),
            Regex::Union(a, b) | Regex::Concat(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            Regex::Star(a) | Regex::Plus(a) => a.collect_letters(out),
            Regex::Empty | Regex::Epsilon => {}
        }
    }

    /// Whether the empty word belongs to the language.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Letter(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Union(a, b) => a.nullable() || b.nullable(),
            Regex::Concat(a, b) => a.nullable() && b.nullable(),
            Regex::Plus(a) => a.nullable(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) | Regex::Plus(_) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, r: &Regex, min: u8) -> fmt::Result {
            if r.precedence() < min {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        }
        match self {
            Regex::Empty => write!(f, "#"),
            Regex::Epsilon => write!(f, "~"),
            Regex::Letter(c) => write!(f, "{c}"),
            // left-associative: the right operand needs strictly higher precedence
            Regex::Union(a, b) => {
                child(f, a, 0)?;
                write!(f, "|")?;
                child(f, b, 1)
            }
            Regex::Concat(a, b) => {
                child(f, a, 1)?;
                child(f, b, 2)
            }
            Regex::Star(a) => {
                child(f, a, 3)?;
                write!(f, "*")
            }
            Regex::Plus(a) => {
                child(f, a, 3)?;
                write!(f, "+")
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut left = self.postfix()?;
        while matches!(self.peek(), Some(c) if c == '(' || c == '~' || c == '#' || c.is_ascii_alphanumeric())
        {
            let right = self.postfix()?;
            left = Regex::concat(left, right);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => r = Regex::star(r),
                Some('+') => r = Regex::plus(r),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('~') => {
                self.pos += 1;
                Ok(Regex::Epsilon)
            }
            Some('#') => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                if self.alphabet.index(c).is_none() {
                    return Err(Error::ForeignLetter(c));
                }
                self.pos += 1;
                Ok(Regex::Letter(c))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
        }
    }
}

/// Parses a regular expression. Juxtaposition is concatenation, `|` union,
/// postfix `*` and `+` iteration, `~` the empty word and `#` the empty language.
/// Whitespace is ignored; offsets in errors are byte offsets into `text`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let mut parser = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        pos: 0,
        len: text.len(),
        alphabet,
    };
    let r = parser.union()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(r)
}
