//! The pro-V pseudo-ultrametric on words: the least size of a semigroup in V
//! separating two words, searched exhaustively over small semigroups.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kappa::{member, PseudovarietyDef};
use crate::semigroup::{enumerate_semigroups, Element, FiniteSemigroup};

/// Largest order searched.
pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Rank {
    Exact(usize),
    /// No semigroup of order at most the bound separates the words.
    ExceedsBound(usize),
    /// The words are equal, so nothing separates them.
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub semigroup: FiniteSemigroup,
    pub letter_image: Vec<(char, Element)>,
}

impl Witness {
    pub fn image(&self, w: &str) -> Option<Element> {
        self.semigroup.product(w.chars().map(|c| {
            self.letter_image
                .iter()
                .find(|(l, _)| *l == c)
                .map(|&(_, e)| e)
                .expect("letter has an image")
        }))
    }

    pub fn separates(&self, u: &str, v: &str) -> bool {
        self.image(u) != self.image(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankResult {
    pub rank: Rank,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Distance {
    Exact {
        value: f64,
    },
    /// The true distance lies in `[lower, upper]`.
    Interval {
        lower: f64,
        upper: f64,
    },
}

impl Distance {
    pub fn upper(&self) -> f64 {
        match *self {
            Distance::Exact { value } => value,
            Distance::Interval { upper, .. } => upper,
        }
    }
}

fn catalog(n: usize) -> &'static [FiniteSemigroup] {
    static CATALOG: [OnceLock<Vec<FiniteSemigroup>>; MAX_ORDER] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    CATALOG[n - 1]
        .get_or_init(|| enumerate_semigroups(n, true).expect("orders up to four are supported"))
}

fn check_word(w: &str) -> Result<()> {
    if w.is_empty() {
        return Err(Error::Domain("words must be nonempty".into()));
    }
    if let Some(c) = w.chars().find(|c| !c.is_ascii_alphanumeric()) {
        return Err(Error::ForeignLetter(c));
    }
    Ok(())
}

/// Least order of a semigroup in `v` (up to `max_order`) with a letter
/// assignment separating `u` from `w`. Candidates are tried by order, then in
/// enumeration order, then assignments in lexicographic order.
pub fn separation_rank(
    u: &str,
    w: &str,
    v: &PseudovarietyDef,
    max_order: usize,
) -> Result<RankResult> {
    check_word(u)?;
    check_word(w)?;
    if max_order == 0 || max_order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(max_order));
    }
    if u == w {
        return Ok(RankResult {
            rank: Rank::Infinite,
            witness: None,
        });
    }
    let letters: Vec<char> = u
        .chars()
        .chain(w.chars())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let encode = |x: &str| -> Vec<usize> {
        x.chars()
            .map(|c| letters.binary_search(&c).expect("letter collected"))
            .collect()
    };
    let (eu, ew) = (encode(u), encode(w));
    for n in 1..=max_order {
        for s in catalog(n) {
            if !member(s, v).member {
                continue;
            }
            let mut images = vec![0; letters.len()];
            loop {
                let image = |word: &[usize]| s.product(word.iter().map(|&i| images[i]));
                if image(&eu) != image(&ew) {
                    return Ok(RankResult {
                        rank: Rank::Exact(n),
                        witness: Some(Witness {
                            semigroup: s.clone(),
                            letter_image: letters
                                .iter()
                                .copied()
                                .zip(images.iter().copied())
                                .collect(),
                        }),
                    });
                }
                let mut i = images.len();
                while i > 0 {
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
    }
    Ok(RankResult {
        rank: Rank::ExceedsBound(max_order),
        witness: None,
    })
}

/// `2^-rank` when the rank is exact (0 for equal words); otherwise only the
/// interval `[0, 2^-(max_order+1)]` is known.
pub fn distance_of(rank: Rank) -> Distance {
    match rank {
        Rank::Exact(n) => Distance::Exact {
            value: 2f64.powi(-(n as i32)),
        },
        Rank::Infinite => Distance::Exact { value: 0.0 },
        Rank::ExceedsBound(n) => Distance::Interval {
            lower: 0.0,
            upper: 2f64.powi(-(n as i32 + 1)),
        },
    }
}

pub fn distance(u: &str, w: &str, v: &PseudovarietyDef, max_order: usize) -> Result<Distance> {
    Ok(distance_of(separation_rank(u, w, v, max_order)?.rank))
}
