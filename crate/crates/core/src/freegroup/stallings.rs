//! Subgroup graphs of finitely generated subgroups, obtained by folding the
//! bouquet of generator loops and trimming hanging trees.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::automaton::GroupAutomaton;
use super::word::{GroupWord, SignedLetter};
use crate::error::{Error, Result};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// The folded core graph of `⟨gens⟩`, base state 0. Edges are stored in both
/// directions: `p -a-> q` comes with `q -a'-> p`.
pub fn stallings_graph(gens: &[GroupWord]) -> GroupAutomaton {
    // bouquet of loops at 0; edges are kept with a positive label
    let mut states = 1;
    let mut edges: Vec<(usize, char, usize)> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_empty()) {
        let letters = g.letters();
        let mut prev = 0;
        for (i, x) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                states += 1;
                states - 1
            };
            if x.inverse {
                edges.push((next, x.letter, prev));
            } else {
                edges.push((prev, x.letter, next));
            }
            prev = next;
        }
    }

    let mut parent: Vec<usize> = (0..states).collect();
    loop {
        let mut merged = false;
        let mut seen: BTreeMap<(usize, SignedLetter), usize> = BTreeMap::new();
        for &(p, a, q) in &edges {
            let p = find(&mut parent, p);
            let q = find(&mut parent, q);
            for (from, label, to) in [(p, SignedLetter::pos(a), q), (q, SignedLetter::neg(a), p)] {
                match seen.get(&(from, label)) {
                    Some(&other) => {
                        let r1 = find(&mut parent, other);
                        let r2 = find(&mut parent, to);
                        if r1 != r2 {
                            // keep the smaller root so the base stays 0
                            let (lo, hi) = (r1.min(r2), r1.max(r2));
                            parent[hi] = lo;
                            merged = true;
                        }
                    }
                    None => {
                        seen.insert((from, label), to);
                    }
                }
            }
        }
        let mut canonical: BTreeSet<(usize, char, usize)> = BTreeSet::new();
        for &(p, a, q) in &edges {
            canonical.insert((find(&mut parent, p), a, find(&mut parent, q)));
        }
        edges = canonical.into_iter().collect();
        if !merged {
            break;
        }
    }

    // core: drop non-base vertices of degree one until none remain
    loop {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(p, _, q) in &edges {
            *degree.entry(p).or_default() += 1;
            *degree.entry(q).or_default() += 1;
        }
        let leaves: BTreeSet<usize> = degree
            .iter()
            .filter(|&(&v, &d)| v != 0 && d == 1)
            .map(|(&v, _)| v)
            .collect();
        if leaves.is_empty() {
            break;
        }
        edges.retain(|(p, _, q)| !leaves.contains(p) && !leaves.contains(q));
    }

    // renumber breadth-first from the base, following signed letters in order
    let mut adjacency: BTreeMap<usize, BTreeMap<SignedLetter, usize>> = BTreeMap::new();
    for &(p, a, q) in &edges {
        adjacency
            .entry(p)
            .or_default()
            .insert(SignedLetter::pos(a), q);
        adjacency
            .entry(q)
            .or_default()
            .insert(SignedLetter::neg(a), p);
    }
    let mut number: BTreeMap<usize, usize> = BTreeMap::from([(0, 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(p) = queue.pop_front() {
        for &q in adjacency.get(&p).into_iter().flat_map(|m| m.values()) {
            if !number.contains_key(&q) {
                number.insert(q, number.len());
                queue.push_back(q);
            }
        }
    }
    let mut out_edges = Vec::new();
    for (p, out) in &adjacency {
        for (&x, q) in out {
            out_edges.push((number[p], Some(x), number[q]));
        }
    }
    out_edges.sort();
    GroupAutomaton::from_parts(number.len(), out_edges, [0], [0])
}

/// Deterministic, ε-free, closed under edge inversion, with a single state
/// that is both initial and final.
pub fn is_folded(g: &GroupAutomaton) -> bool {
    if g.initial().len() != 1 || g.initial() != g.finals() {
        return false;
    }
    let mut seen: BTreeSet<(usize, SignedLetter)> = BTreeSet::new();
    let all: BTreeSet<(usize, SignedLetter, usize)> = g
        .edges()
        .filter_map(|(p, l, q)| l.map(|x| (p, x, q)))
        .collect();
    if all.len() != g.num_edges() {
        return false;
    }
    for &(p, x, q) in &all {
        if !seen.insert((p, x)) || !all.contains(&(q, x.inv(), p)) {
            return false;
        }
    }
    true
}

/// Whether `w` reads a loop at the base of the folded graph `g`.
pub fn subgroup_contains(g: &GroupAutomaton, w: &GroupWord) -> Result<bool> {
    if !is_folded(g) {
        return Err(Error::Contract("subgroup graph is not folded".into()));
    }
    let base = *g.initial().iter().next().expect("one base state");
    let mut p = base;
    for &x in w.letters() {
        match g.out_edges(p).iter().find(|&&(l, _)| l == Some(x)) {
            Some(&(_, q)) => p = q,
            None => return Ok(false),
        }
    }
    Ok(p == base)
}
