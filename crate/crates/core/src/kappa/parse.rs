use super::term::{KappaTerm, Pseudoidentity};
use crate::error::{Error, Result};

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            len: text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.chars.get(self.pos).map_or(self.len, |&(o, _)| o),
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn term(&mut self) -> Result<KappaTerm> {
        let mut t = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    t = KappaTerm::mul(t, rhs);
                }
                Some(c) if c == '(' || is_variable(c) => {
                    let rhs = self.factor()?;
                    t = KappaTerm::mul(t, rhs);
                }
                _ => return Ok(t),
            }
        }
    }

    fn factor(&mut self) -> Result<KappaTerm> {
        let mut t = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            t = self.exponent(t)?;
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<KappaTerm> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(c) if is_variable(c) => {
                self.pos += 1;
                Ok(KappaTerm::Var(c))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d))
                .ok_or_else(|| self.error("exponent too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok(value)
    }

    fn exponent(&mut self, base: KappaTerm) -> Result<KappaTerm> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                Ok(KappaTerm::omega(base))
            }
            Some('(') => {
                self.pos += 1;
                self.expect('w')?;
                let offset = match self.peek() {
                    Some('+') => {
                        self.pos += 1;
                        i64::from(self.number()?)
                    }
                    Some('-') => {
                        self.pos += 1;
                        -i64::from(self.number()?)
                    }
                    _ => 0,
                };
                self.expect(')')?;
                Ok(KappaTerm::omega_plus(base, offset))
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.number()?;
                if k == 0 {
                    return Err(self.error("exponent must be positive"));
                }
                Ok(KappaTerm::power(base, k as usize))
            }
            _ => Err(self.error("expected an exponent")),
        }
    }
}

/// Variables are ASCII letters other than `w`, which is reserved for ω.
fn is_variable(c: char) -> bool {
    c.is_ascii_alphabetic() && c != 'w'
}

/// Parses a term: juxtaposition or `*` for products, `^w`, `^(w+q)`, `^(w-q)`
/// for ω-powers and `^k` for ordinary powers.
pub fn parse_term(text: &str) -> Result<KappaTerm> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

/// Parses `lhs = rhs`, or a chain `t1 = t2 = ... = tn` which yields the
/// pseudoidentities `t1 = t2, t2 = t3, ...`.
pub fn parse_pseudoidentities(text: &str) -> Result<Vec<Pseudoidentity>> {
    let mut p = Parser::new(text);
    let mut terms = vec![p.term()?];
    while p.peek() == Some('=') {
        p.pos += 1;
        terms.push(p.term()?);
    }
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    if terms.len() < 2 {
        return Err(p.error("expected '='"));
    }
    Ok(terms
        .windows(2)
        .map(|w| Pseudoidentity::new(w[0].clone(), w[1].clone()))
        .collect())
}

pub fn parse_pseudoidentity(text: &str) -> Result<Pseudoidentity> {
    let mut all = parse_pseudoidentities(text)?;
    if all.len() != 1 {
        return Err(Error::Syntax {
            offset: 0,
            message: "expected a single equation".into(),
        });
    }
    Ok(all.remove(0))
}
