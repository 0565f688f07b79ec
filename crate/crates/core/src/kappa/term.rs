use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::semigroup::{monogenic_profile, Element, FiniteSemigroup};

/// A term over multiplication and the ω-powers `t^(ω+q)`.
///
/// The primitive operations are multiplication and `t^(ω-1)`; every other
/// offset is expressible through them (see [`KappaTerm::expand_primitive`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KappaTerm {
    Var(char),
    Mul(Box<KappaTerm>, Box<KappaTerm>),
    /// `OmegaPow(t, q)` is `t^(ω+q)`.
    OmegaPow(Box<KappaTerm>, i64),
}

pub type Assignment = BTreeMap<char, Element>;

impl KappaTerm {
    pub fn var(c: char) -> Self {
        KappaTerm::Var(c)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: KappaTerm, b: KappaTerm) -> Self {
        KappaTerm::Mul(Box::new(a), Box::new(b))
    }

    pub fn omega(t: KappaTerm) -> Self {
        KappaTerm::OmegaPow(Box::new(t), 0)
    }

    pub fn omega_plus(t: KappaTerm, q: i64) -> Self {
        KappaTerm::OmegaPow(Box::new(t), q)
    }

    /// `t^k` for `k >= 1` as an iterated product.
    pub fn power(t: KappaTerm, k: usize) -> Self {
        assert!(k >= 1);
        let mut acc = t.clone();
        for _ in 1..k {
            acc = KappaTerm::mul(acc, t.clone());
        }
        acc
    }

    /// Product of a nonempty list of factors, associated to the left.
    pub fn product(factors: Vec<KappaTerm>) -> Self {
        factors
            .into_iter()
            .reduce(KappaTerm::mul)
            .expect("product of at least one factor")
    }

    pub fn variables(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<char>) {
        match self {
            KappaTerm::Var(c) => out.push(*c),
            KappaTerm::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            KappaTerm::OmegaPow(t, _) => t.collect_vars(out),
        }
    }

    /// Rewrites every ω-power into multiplications and `(ω-1)`-powers:
    /// `t^ω = t^(ω-1) t`, `t^(ω+q) = t^ω t^q` and `t^(ω-q) = (t^(ω-1))^q`.
    pub fn expand_primitive(&self) -> KappaTerm {
        match self {
            KappaTerm::Var(c) => KappaTerm::Var(*c),
            KappaTerm::Mul(a, b) => KappaTerm::mul(a.expand_primitive(), b.expand_primitive()),
            KappaTerm::OmegaPow(t, q) => {
                let base = t.expand_primitive();
                let inverse = KappaTerm::omega_plus(base.clone(), -1);
                let omega = KappaTerm::mul(inverse.clone(), base.clone());
                match *q {
                    -1 => inverse,
                    0 => omega,
                    q if q > 0 => KappaTerm::mul(omega, KappaTerm::power(base, q as usize)),
                    q => KappaTerm::power(inverse, q.unsigned_abs() as usize),
                }
            }
        }
    }

    pub fn is_primitive(&self) -> bool {
        match self {
            KappaTerm::Var(_) => true,
            KappaTerm::Mul(a, b) => a.is_primitive() && b.is_primitive(),
            KappaTerm::OmegaPow(t, q) => *q == -1 && t.is_primitive(),
        }
    }
}

/// Evaluates `t` in `s` under `assignment`.
pub fn eval_term(t: &KappaTerm, s: &FiniteSemigroup, assignment: &Assignment) -> Result<Element> {
    eval_with(t, s, &|c| assignment.get(&c).copied())
}

pub(crate) fn eval_with(
    t: &KappaTerm,
    s: &FiniteSemigroup,
    lookup: &dyn Fn(char) -> Option<Element>,
) -> Result<Element> {
    match t {
        KappaTerm::Var(c) => lookup(*c).ok_or(Error::UnboundVariable(*c)),
        KappaTerm::Mul(a, b) => Ok(s.mul(eval_with(a, s, lookup)?, eval_with(b, s, lookup)?)),
        KappaTerm::OmegaPow(base, q) => {
            let x = eval_with(base, s, lookup)?;
            let profile = monogenic_profile(s, x);
            Ok(s.pow(x, profile.cycle_exponent(*q)))
        }
    }
}

impl fmt::Display for KappaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaTerm::Var(c) => write!(f, "{c}"),
            KappaTerm::Mul(a, b) => {
                write!(f, "{a}")?;
                // right operand of a left-nested product needs grouping when it is itself a product
                match **b {
                    KappaTerm::Mul(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            KappaTerm::OmegaPow(t, q) => {
                match **t {
                    KappaTerm::Var(_) => write!(f, "{t}")?,
                    _ => write!(f, "({t})")?,
                }
                match q {
                    0 => write!(f, "^w"),
                    q if *q > 0 => write!(f, "^(w+{q})"),
                    q => write!(f, "^(w-{})", q.unsigned_abs()),
                }
            }
        }
    }
}

/// A formal equality between two terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pseudoidentity {
    pub lhs: KappaTerm,
    pub rhs: KappaTerm,
    pub variables: Vec<char>,
}

impl Pseudoidentity {
    pub fn new(lhs: KappaTerm, rhs: KappaTerm) -> Self {
        let mut variables = lhs.variables();
        variables.extend(rhs.variables());
        variables.sort_unstable();
        variables.dedup();
        Pseudoidentity {
            lhs,
            rhs,
            variables,
        }
    }
}

impl fmt::Display for Pseudoidentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Outcome of a satisfaction check; `witness` is a falsifying assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satisfaction {
    pub holds: bool,
    pub witness: Option<Assignment>,
}

/// Checks `pid` under every assignment of its variables, in lexicographic
/// order of the assignment vectors; the first failure is returned as witness.
pub fn satisfies(s: &FiniteSemigroup, pid: &Pseudoidentity) -> Satisfaction {
    let vars = &pid.variables;
    let n = s.order();
    let mut values = vec![0; vars.len()];
    loop {
        let lookup = |c: char| vars.iter().position(|&v| v == c).map(|i| values[i]);
        let l = eval_with(&pid.lhs, s, &lookup).expect("variables are bound");
        let r = eval_with(&pid.rhs, s, &lookup).expect("variables are bound");
        if l != r {
            return Satisfaction {
                holds: false,
                witness: Some(vars.iter().copied().zip(values.iter().copied()).collect()),
            };
        }
        // odometer with the last variable fastest
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Satisfaction {
                    holds: true,
                    witness: None,
                };
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}
