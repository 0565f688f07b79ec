//! Finite automata over an [`Alphabet`]: Thompson construction, subset
//! construction, minimization, products and conversion back to expressions.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::regex::{Alphabet, Regex};

/// A nondeterministic automaton with ε-edges. `None` labels are ε.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub edges: Vec<Vec<(Option<usize>, usize)>>,
    pub initial: Vec<usize>,
    pub finals: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            edges: Vec::new(),
            initial: Vec::new(),
            finals: Vec::new(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn add_state(&mut self, is_final: bool) -> usize {
        self.edges.push(Vec::new());
        self.finals.push(is_final);
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, label: Option<usize>, to: usize) {
        if !self.edges[from].contains(&(label, to)) {
            self.edges[from].push((label, to));
        }
    }

    /// Thompson-style construction.
    pub fn from_regex(r: &Regex, alphabet: &Alphabet) -> Nfa {
        let mut nfa = Nfa::new(alphabet.clone());
        let start = nfa.add_state(false);
        let end = nfa.add_state(true);
        nfa.build(r, start, end);
        nfa.initial = vec![start];
        nfa
    }

    fn build(&mut self, r: &Regex, from: usize, to: usize) {
        match r {
            Regex::Empty => {}
            Regex::Epsilon => self.add_edge(from, None, to),
            Regex::Letter(c) => {
                let a = self
                    .alphabet
                    .index(*c)
                    .expect("regex letters are validated against the alphabet");
                self.add_edge(from, Some(a), to);
            }
            Regex::Union(a, b) => {
                self.build(a, from, to);
                self.build(b, from, to);
            }
            Regex::Concat(a, b) => {
                let mid = self.add_state(false);
                self.build(a, from, mid);
                self.build(b, mid, to);
            }
            Regex::Star(a) | Regex::Plus(a) => {
                let enter = self.add_state(false);
                let exit = self.add_state(false);
                self.add_edge(from, None, enter);
                self.build(a, enter, exit);
                self.add_edge(exit, None, enter);
                self.add_edge(exit, None, to);
                if matches!(r, Regex::Star(_)) {
                    self.add_edge(from, None, to);
                }
            }
        }
    }

    pub fn epsilon_closure(&self, states: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = states.clone();
        let mut stack: Vec<usize> = states.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(label, q) in &self.edges[p] {
                if label.is_none() && out.insert(q) {
                    stack.push(q);
                }
            }
        }
        out
    }

    fn step(&self, states: &BTreeSet<usize>, a: usize) -> BTreeSet<usize> {
        let moved: BTreeSet<usize> = states
            .iter()
            .flat_map(|&p| {
                self.edges[p]
                    .iter()
                    .filter(move |&&(l, _)| l == Some(a))
                    .map(|&(_, q)| q)
            })
            .collect();
        self.epsilon_closure(&moved)
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current = self.epsilon_closure(&self.initial.iter().copied().collect());
        for &a in word {
            current = self.step(&current, a);
        }
        current.iter().any(|&q| self.finals[q])
    }

    /// Subset construction; the result is complete (the empty subset becomes a sink).
    pub fn determinize(&self) -> Dfa {
        let start = self.epsilon_closure(&self.initial.iter().copied().collect());
        let k = self.alphabet.len();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = self.step(&subsets[i], a);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    subsets.len() - 1
                });
                row.push(id);
            }
            transitions.push(row);
            i += 1;
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            transitions,
            initial: 0,
            finals,
        }
    }

    /// Converts to an expression by state elimination.
    pub fn to_regex(&self) -> Regex {
        // generalized automaton: states 0..n plus fresh start s and end t
        let n = self.num_states();
        let (s, t) = (n, n + 1);
        let mut label: BTreeMap<(usize, usize), Regex> = BTreeMap::new();
        let add = |label: &mut BTreeMap<(usize, usize), Regex>, p: usize, q: usize, r: Regex| {
            let merged = match label.remove(&(p, q)) {
                Some(old) => simplify_union(old, r),
                None => r,
            };
            label.insert((p, q), merged);
        };
        for p in 0..n {
            for &(l, q) in &self.edges[p] {
                let r = match l {
                    None => Regex::Epsilon,
                    Some(a) => Regex::Letter(self.alphabet.letter(a)),
                };
                add(&mut label, p, q, r);
            }
            if self.finals[p] {
                add(&mut label, p, t, Regex::Epsilon);
            }
        }
        for &i in &self.initial {
            add(&mut label, s, i, Regex::Epsilon);
        }
        // eliminate the state with the fewest in-out pairs first (lowest index on ties)
        let mut remaining: BTreeSet<usize> = (0..n).collect();
        while let Some(k) = remaining.iter().copied().min_by_key(|&k| {
            let ins = label.keys().filter(|&&(p, q)| q == k && p != k).count();
            let outs = label.keys().filter(|&&(p, q)| p == k && q != k).count();
            ins * outs
        }) {
            remaining.remove(&k);
            let self_loop = label.remove(&(k, k));
            let incoming: Vec<(usize, Regex)> = label
                .iter()
                .filter(|(&(p, q), _)| q == k && p != k)
                .map(|(&(p, _), r)| (p, r.clone()))
                .collect();
            let outgoing: Vec<(usize, Regex)> = label
                .iter()
                .filter(|(&(p, q), _)| p == k && q != k)
                .map(|(&(_, q), r)| (q, r.clone()))
                .collect();
            label.retain(|&(p, q), _| p != k && q != k);
            let middle = self_loop.map(simplify_star);
            for (p, rin) in &incoming {
                for (q, rout) in &outgoing {
                    let mut path = rin.clone();
                    if let Some(m) = &middle {
                        path = simplify_concat(path, m.clone());
                    }
                    path = simplify_concat(path, rout.clone());
                    add(&mut label, *p, *q, path);
                }
            }
        }
        label.remove(&(s, t)).unwrap_or(Regex::Empty)
    }
}

fn simplify_union(a: Regex, b: Regex) -> Regex {
    match (a, b) {
        (Regex::Empty, r) | (r, Regex::Empty) => r,
        (a, b) if a == b => a,
        (a, b) => Regex::union(a, b),
    }
}

fn simplify_concat(a: Regex, b: Regex) -> Regex {
    match (a, b) {
        (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
        (Regex::Epsilon, r) | (r, Regex::Epsilon) => r,
        (a, b) => Regex::concat(a, b),
    }
}

fn simplify_star(r: Regex) -> Regex {
    match r {
        Regex::Empty | Regex::Epsilon => Regex::Epsilon,
        Regex::Star(inner) => Regex::Star(inner),
        r => Regex::star(r),
    }
}

/// A complete deterministic automaton; `transitions[q][a]` is the successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub transitions: Vec<Vec<usize>>,
    pub initial: usize,
    pub finals: Vec<bool>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn run_from(&self, state: usize, word: &[usize]) -> usize {
        word.iter().fold(state, |q, &a| self.transitions[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }

    /// Drops states unreachable from the initial state.
    pub fn reachable(&self) -> Dfa {
        let n = self.num_states();
        let mut order = vec![self.initial];
        let mut id = vec![usize::MAX; n];
        id[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            for &q in &self.transitions[order[i]] {
                if id[q] == usize::MAX {
                    id[q] = order.len();
                    order.push(q);
                }
            }
            i += 1;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            transitions: order
                .iter()
                .map(|&p| self.transitions[p].iter().map(|&q| id[q]).collect())
                .collect(),
            initial: 0,
            finals: order.iter().map(|&p| self.finals[p]).collect(),
        }
    }

    /// Minimal complete automaton by partition refinement (Moore), with states
    /// numbered in breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        let d = self.reachable();
        let n = d.num_states();
        let k = d.alphabet.len();
        let mut block: Vec<usize> = d.finals.iter().map(|&f| usize::from(f)).collect();
        loop {
            let mut signature_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(block[q]);
                sig.extend(d.transitions[q].iter().map(|&r| block[r]));
                let fresh = signature_ids.len();
                next[q] = *signature_ids.entry(sig).or_insert(fresh);
            }
            let before = block.iter().collect::<BTreeSet<_>>().len();
            let after = signature_ids.len();
            block = next;
            if before == after {
                break;
            }
        }
        let count = block.iter().collect::<BTreeSet<_>>().len();
        let mut rep = vec![usize::MAX; count];
        for q in 0..n {
            if rep[block[q]] == usize::MAX {
                rep[block[q]] = q;
            }
        }
        let quotient = Dfa {
            alphabet: d.alphabet.clone(),
            transitions: (0..count)
                .map(|b| d.transitions[rep[b]].iter().map(|&r| block[r]).collect())
                .collect(),
            initial: block[d.initial],
            finals: (0..count).map(|b| d.finals[rep[b]]).collect(),
        };
        quotient.reachable()
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            nfa.add_state(self.finals[q]);
        }
        for (q, row) in self.transitions.iter().enumerate() {
            for (a, &r) in row.iter().enumerate() {
                nfa.add_edge(q, Some(a), r);
            }
        }
        nfa.initial = vec![self.initial];
        nfa
    }

    /// Product automaton accepting the words where `combine` of the two verdicts holds.
    pub fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(
            self.alphabet, other.alphabet,
            "product needs a shared alphabet"
        );
        let m = other.num_states();
        let n = self.num_states() * m;
        let transitions = (0..n)
            .map(|x| {
                let (p, q) = (x / m, x % m);
                (0..self.alphabet.len())
                    .map(|a| self.transitions[p][a] * m + other.transitions[q][a])
                    .collect()
            })
            .collect();
        let finals = (0..n)
            .map(|x| combine(self.finals[x / m], other.finals[x % m]))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            transitions,
            initial: self.initial * m + other.initial,
            finals,
        }
        .reachable()
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for f in &mut d.finals {
            *f = !*f;
        }
        d
    }

    /// A shortest accepted word, if any (lexicographically least among shortest).
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    word.push(a);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for (a, &r) in self.transitions[q].iter().enumerate() {
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, a));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.product(other, |x, y| x != y).is_empty()
    }

    /// Words of every length are accepted: `A*`.
    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Dfa {
            alphabet: alphabet.clone(),
            transitions: vec![vec![0; alphabet.len()]],
            initial: 0,
            finals: vec![true],
        }
    }

    /// Words that do not contain `factor`.
    pub fn avoiding(alphabet: &Alphabet, factor: &[usize]) -> Dfa {
        // KMP-style automaton: state = length of the longest suffix that is a prefix of `factor`
        let m = factor.len();
        let longest = |w: &[usize]| {
            (0..=w.len().min(m))
                .rev()
                .find(|&l| l <= m && w[w.len() - l..] == factor[..l])
                .unwrap_or(0)
        };
        let transitions = (0..=m)
            .map(|q| {
                (0..alphabet.len())
                    .map(|a| {
                        if q == m {
                            return m;
                        }
                        let mut w = factor[..q].to_vec();
                        w.push(a);
                        longest(&w)
                    })
                    .collect()
            })
            .collect();
        Dfa {
            alphabet: alphabet.clone(),
            transitions,
            initial: 0,
            finals: (0..=m).map(|q| q < m).collect(),
        }
    }
}

/// Minimal complete DFA for the language of `r`.
pub fn to_minimal_dfa(r: &Regex, alphabet: &Alphabet) -> Dfa {
    Nfa::from_regex(r, alphabet).determinize().minimize()
}
