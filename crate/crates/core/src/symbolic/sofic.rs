use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::language::{to_minimal_dfa, Alphabet, Dfa, Nfa, Regex};

/// A sofic shift, given by a presentation and the minimal DFA of its blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoficShift {
    pub presentation: Dfa,
    /// Minimal complete DFA of the block language.
    pub block_dfa: Dfa,
}

/// Edges `(p, a, q)` of `dfa` among the states lying on a biinfinite path of
/// its useful part.
fn live_core(dfa: &Dfa) -> (BTreeSet<usize>, Vec<(usize, usize, usize)>) {
    let n = dfa.num_states();
    let edges: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|p| {
            dfa.transitions[p]
                .iter()
                .enumerate()
                .map(move |(a, &q)| (p, a, q))
        })
        .collect();
    // useful: reachable from the initial state and co-reachable to a final one
    let mut reach = BTreeSet::from([dfa.initial]);
    let mut stack = vec![dfa.initial];
    while let Some(p) = stack.pop() {
        for &q in &dfa.transitions[p] {
            if reach.insert(q) {
                stack.push(q);
            }
        }
    }
    let mut coreach: BTreeSet<usize> = (0..n).filter(|&q| dfa.finals[q]).collect();
    loop {
        let before = coreach.len();
        for &(p, _, q) in &edges {
            if coreach.contains(&q) {
                coreach.insert(p);
            }
        }
        if coreach.len() == before {
            break;
        }
    }
    let mut live: BTreeSet<usize> = reach.intersection(&coreach).copied().collect();
    // drop states without a live predecessor or successor until stable
    loop {
        let keep: BTreeSet<usize> = live
            .iter()
            .copied()
            .filter(|&s| {
                let has_out = edges.iter().any(|&(p, _, q)| p == s && live.contains(&q));
                let has_in = edges.iter().any(|&(p, _, q)| q == s && live.contains(&p));
                has_out && has_in
            })
            .collect();
        if keep.len() == live.len() {
            break;
        }
        live = keep;
    }
    let core_edges = edges
        .into_iter()
        .filter(|(p, _, q)| live.contains(p) && live.contains(q))
        .collect();
    (live, core_edges)
}

/// Path labels of a graph restricted to `states`, every state initial and final.
fn path_language(
    alphabet: &Alphabet,
    states: &BTreeSet<usize>,
    edges: &[(usize, usize, usize)],
) -> Dfa {
    let index: Vec<usize> = states.iter().copied().collect();
    let pos = |s: usize| index.binary_search(&s).ok();
    let mut nfa = Nfa::new(alphabet.clone());
    for _ in &index {
        nfa.add_state(true);
    }
    for &(p, a, q) in edges {
        if let (Some(i), Some(j)) = (pos(p), pos(q)) {
            nfa.add_edge(i, Some(a), j);
        }
    }
    nfa.initial = (0..index.len()).collect();
    nfa.determinize().minimize()
}

/// Restricts the language of `dfa` to its factorial, prolongable core: the
/// labels of paths through states that lie on a biinfinite path.
pub fn factorial_trim(dfa: &Dfa) -> Result<SoficShift> {
    let (live, edges) = live_core(dfa);
    if live.is_empty() {
        return Err(Error::Domain(
            "no biinfinite path: the presentation defines no subshift".into(),
        ));
    }
    Ok(SoficShift {
        presentation: dfa.clone(),
        block_dfa: path_language(&dfa.alphabet, &live, &edges),
    })
}

/// The subshift whose blocks are the factorial core of the language of `r`.
pub fn sofic_from_regex(r: &Regex, alphabet: &Alphabet) -> Result<SoficShift> {
    factorial_trim(&to_minimal_dfa(r, alphabet))
}

impl SoficShift {
    pub fn alphabet(&self) -> &Alphabet {
        &self.block_dfa.alphabet
    }

    pub fn is_block(&self, w: &[usize]) -> bool {
        self.block_dfa.accepts(w)
    }

    /// Number of blocks of length `n`.
    pub fn block_count(&self, n: usize) -> f64 {
        let d = &self.block_dfa;
        let mut counts = vec![0f64; d.num_states()];
        counts[d.initial] = 1.0;
        for _ in 0..n {
            let mut next = vec![0f64; d.num_states()];
            for (q, &c) in counts.iter().enumerate() {
                if c == 0.0 || !d.finals[q] {
                    continue;
                }
                for &r in &d.transitions[q] {
                    next[r] += c;
                }
            }
            counts = next;
        }
        counts
            .iter()
            .enumerate()
            .filter(|&(q, _)| d.finals[q])
            .map(|(_, c)| c)
            .sum()
    }

    /// The blocks of length `n`, in lexicographic order.
    pub fn blocks(&self, n: usize) -> Vec<Vec<usize>> {
        self.alphabet()
            .words_of_length(n)
            .into_iter()
            .filter(|w| self.is_block(w))
            .collect()
    }

    /// Accepting states of the block automaton and the edges among them.
    fn block_graph(&self) -> (BTreeSet<usize>, Vec<(usize, usize, usize)>) {
        let d = &self.block_dfa;
        let states: BTreeSet<usize> = (0..d.num_states()).filter(|&q| d.finals[q]).collect();
        let edges = states
            .iter()
            .flat_map(|&p| {
                d.transitions[p]
                    .iter()
                    .enumerate()
                    .map(move |(a, &q)| (p, a, q))
            })
            .filter(|(_, _, q)| states.contains(q))
            .collect();
        (states, edges)
    }

    fn components(&self) -> Vec<BTreeSet<usize>> {
        let (states, edges) = self.block_graph();
        let index: Vec<usize> = states.iter().copied().collect();
        let mut g = DiGraph::<usize, ()>::new();
        let nodes: Vec<_> = index.iter().map(|&s| g.add_node(s)).collect();
        for &(p, _, q) in &edges {
            let (i, j) = (
                index.binary_search(&p).unwrap(),
                index.binary_search(&q).unwrap(),
            );
            g.add_edge(nodes[i], nodes[j], ());
        }
        tarjan_scc(&g)
            .into_iter()
            .map(|c| c.into_iter().map(|n| g[n]).collect::<BTreeSet<usize>>())
            .filter(|c| edges.iter().any(|(p, _, q)| c.contains(p) && c.contains(q)))
            .collect()
    }
}

/// Whether some strongly connected component of the block automaton already
/// presents every block.
pub fn is_irreducible(x: &SoficShift) -> bool {
    let (_, edges) = x.block_graph();
    x.components()
        .iter()
        .any(|c| path_language(x.alphabet(), c, &edges).equivalent(&x.block_dfa))
}

/// Direct check of the definition on short blocks: every pair `u, v` of
/// blocks of length at most `max_block` is joined by some `w` of length at
/// most `max_gap` with `uwv` a block.
pub fn is_irreducible_by_definition(x: &SoficShift, max_block: usize, max_gap: usize) -> bool {
    let blocks: Vec<Vec<usize>> = (1..=max_block).flat_map(|n| x.blocks(n)).collect();
    let gaps = x.alphabet().words_up_to(max_gap);
    blocks.iter().all(|u| {
        blocks.iter().all(|v| {
            gaps.iter().any(|w| {
                let mut uwv = u.clone();
                uwv.extend(w);
                uwv.extend(v);
                x.is_block(&uwv)
            })
        })
    })
}

/// Spectral radius of a nonnegative irreducible matrix, by power iteration
/// on `I + A` with Collatz–Wielandt bounds.
fn irreducible_spectral_radius(a: &[Vec<f64>], tolerance: f64) -> f64 {
    let n = a.len();
    let mut x = vec![1.0; n];
    let mut best: (f64, f64) = (0.0, f64::INFINITY);
    for _ in 0..1_000_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + (0..n).map(|j| a[i][j] * x[j]).sum::<f64>())
            .collect();
        let ratios = (0..n).map(|i| y[i] / x[i]);
        let lower = ratios.clone().fold(f64::INFINITY, f64::min);
        let upper = ratios.fold(0.0, f64::max);
        best = (best.0.max(lower), best.1.min(upper));
        if best.1 - best.0 <= tolerance * best.1 {
            break;
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.iter().map(|v| v / norm).collect();
    }
    (best.0 + best.1) / 2.0 - 1.0
}

/// Spectral radius of a nonnegative matrix: the largest over its strongly
/// connected components.
pub fn spectral_radius(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] > 0.0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let idx: Vec<usize> = c.into_iter().map(|v| g[v]).collect();
            let sub: Vec<Vec<f64>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| a[i][j]).collect())
                .collect();
            if sub.iter().flatten().all(|&v| v == 0.0) {
                0.0
            } else {
                irreducible_spectral_radius(&sub, 1e-13)
            }
        })
        .fold(0.0, f64::max)
}

/// Topological entropy `lim (1/n) log₂ |B(X) ∩ Aⁿ|`, from the adjacency
/// matrix of the deterministic block automaton.
pub fn entropy(x: &SoficShift) -> f64 {
    let (states, edges) = x.block_graph();
    let index: Vec<usize> = states.iter().copied().collect();
    let n = index.len();
    let mut a = vec![vec![0.0; n]; n];
    for &(p, _, q) in &edges {
        a[index.binary_search(&p).unwrap()][index.binary_search(&q).unwrap()] += 1.0;
    }
    spectral_radius(&a).log2().max(0.0)
}

/// Block counts over a window of lengths; a constant run hints at (but does
/// not prove) a periodic subshift.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityProbe {
    pub counts: Vec<(usize, usize)>,
    pub bounded_in_window: bool,
}

pub fn complexity_probe(
    s: &super::Substitution,
    window: std::ops::RangeInclusive<usize>,
) -> Result<ComplexityProbe> {
    let mut counts = Vec::new();
    for n in window {
        counts.push((n, super::substitution_blocks(s, n)?.len()));
    }
    let bounded_in_window = counts.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(ComplexityProbe {
        counts,
        bounded_in_window,
    })
}
