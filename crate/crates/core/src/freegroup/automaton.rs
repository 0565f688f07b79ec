//! Automata over the doubled alphabet `A ∪ A⁻¹`, used both for subgroup
//! graphs and for rational subsets of the free group.
//!
//! A rational subset is represented by any automaton whose accepted words
//! reduce to its elements. After Benois saturation the reduced elements are
//! exactly the reduced words labelling an accepting path (ε-edges allowed),
//! which gives membership, intersection and emptiness.

use std::collections::BTreeSet;

use super::word::{GroupWord, SignedLetter};

/// Edge label; `None` is ε.
pub type Label = Option<SignedLetter>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAutomaton {
    edges: Vec<Vec<(Label, usize)>>,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    saturated: bool,
}

impl GroupAutomaton {
    fn with_states(n: usize) -> Self {
        GroupAutomaton {
            edges: vec![Vec::new(); n],
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
            saturated: false,
        }
    }

    /// Accepts nothing.
    pub fn empty() -> Self {
        let mut m = Self::with_states(1);
        m.initial.insert(0);
        m.saturated = true;
        m
    }

    /// Accepts only the empty word.
    pub fn epsilon() -> Self {
        Self::word(&GroupWord::identity())
    }

    /// A single path spelling `w`.
    pub fn word(w: &GroupWord) -> Self {
        Self::raw_word(w.letters())
    }

    /// A single path spelling an arbitrary (not necessarily reduced) sequence.
    pub fn raw_word(letters: &[SignedLetter]) -> Self {
        let mut m = Self::with_states(letters.len() + 1);
        for (i, &x) in letters.iter().enumerate() {
            m.edges[i].push((Some(x), i + 1));
        }
        m.initial.insert(0);
        m.finals.insert(letters.len());
        m
    }

    /// Builds an automaton from explicit parts.
    pub fn from_parts(
        num_states: usize,
        edges: impl IntoIterator<Item = (usize, Label, usize)>,
        initial: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut m = Self::with_states(num_states);
        for (p, l, q) in edges {
            m.add_edge(p, l, q);
        }
        m.initial = initial.into_iter().collect();
        m.finals = finals.into_iter().collect();
        m
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, Label, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(p, out)| out.iter().map(move |&(l, q)| (p, l, q)))
    }

    pub fn out_edges(&self, p: usize) -> &[(Label, usize)] {
        &self.edges[p]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    fn add_edge(&mut self, p: usize, l: Label, q: usize) -> bool {
        if self.edges[p].contains(&(l, q)) {
            false
        } else {
            self.edges[p].push((l, q));
            true
        }
    }

    /// Letters (without sign) occurring on edges.
    pub fn letters(&self) -> BTreeSet<char> {
        self.edges()
            .filter_map(|(_, l, _)| l.map(|x| x.letter))
            .collect()
    }

    /// Appends `other`'s states after ours, returning the offset.
    fn absorb(&mut self, other: &GroupAutomaton) -> usize {
        let offset = self.num_states();
        for out in &other.edges {
            self.edges
                .push(out.iter().map(|&(l, q)| (l, q + offset)).collect());
        }
        offset
    }

    pub fn union(&self, other: &GroupAutomaton) -> GroupAutomaton {
        let mut m = self.clone();
        let offset = m.absorb(other);
        m.initial.extend(other.initial.iter().map(|q| q + offset));
        m.finals.extend(other.finals.iter().map(|q| q + offset));
        m.saturated = false;
        m
    }

    pub fn concat(&self, other: &GroupAutomaton) -> GroupAutomaton {
        let mut m = self.clone();
        let offset = m.absorb(other);
        for &f in &self.finals {
            for &i in &other.initial {
                m.add_edge(f, None, i + offset);
            }
        }
        m.finals = other.finals.iter().map(|q| q + offset).collect();
        m.saturated = false;
        m
    }

    /// Kleene star: a fresh state that is both initial and final.
    pub fn star(&self) -> GroupAutomaton {
        let mut m = self.clone();
        let hub = m.num_states();
        m.edges.push(Vec::new());
        for &i in &self.initial {
            m.add_edge(hub, None, i);
        }
        for &f in &self.finals {
            m.add_edge(f, None, hub);
        }
        m.initial = BTreeSet::from([hub]);
        m.finals = BTreeSet::from([hub]);
        m.saturated = false;
        m
    }

    /// Accepts the formal inverses `w⁻¹` of accepted words.
    pub fn invert(&self) -> GroupAutomaton {
        let mut m = Self::with_states(self.num_states());
        for (p, l, q) in self.edges() {
            m.add_edge(q, l.map(SignedLetter::inv), p);
        }
        m.initial = self.finals.clone();
        m.finals = self.initial.clone();
        m.saturated = self.saturated;
        m
    }

    /// The subgroup generated by the accepted set, saturated.
    pub fn generated_subgroup(&self) -> GroupAutomaton {
        self.subgroup_graph().saturate()
    }

    /// Whether no path leads from an initial to a final state.
    pub fn is_empty(&self) -> bool {
        let mut seen: BTreeSet<usize> = self.initial.clone();
        let mut stack: Vec<usize> = seen.iter().copied().collect();
        while let Some(p) = stack.pop() {
            if self.finals.contains(&p) {
                return false;
            }
            for &(_, q) in &self.edges[p] {
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        true
    }

    /// Unsaturated automaton for the generated subgroup, linear in size.
    ///
    /// A fresh base is joined by ε-edges to the initial states and from the
    /// final states; after trimming, every edge `p -x-> q` also gets its
    /// reverse `q -x⁻¹-> p`. With `α_p` a path from the base to `p` and `β_q`
    /// one from `q` back to it, the edge contributes
    /// `α_p x α_q⁻¹ = (α_p x β_q)(α_q β_q)⁻¹`, a product of accepted words and
    /// inverses, so the loops at the base spell exactly the subgroup.
    pub fn subgroup_graph(&self) -> GroupAutomaton {
        let n = self.num_states();
        let base = n;
        let mut forward: Vec<Vec<(Label, usize)>> = self.edges.clone();
        forward.push(self.initial.iter().map(|&i| (None, i)).collect());
        for &f in &self.finals {
            forward[f].push((None, base));
        }
        let mut backward: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (p, out) in forward.iter().enumerate() {
            for &(_, q) in out {
                backward[q].push(p);
            }
        }
        let reach = |next: &dyn Fn(usize) -> Vec<usize>| {
            let mut seen = vec![false; n + 1];
            seen[base] = true;
            let mut stack = vec![base];
            while let Some(p) = stack.pop() {
                for q in next(p) {
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
            seen
        };
        let accessible = reach(&|p| forward[p].iter().map(|&(_, q)| q).collect());
        let coaccessible = reach(&|p| backward[p].clone());
        let mut index = vec![usize::MAX; n + 1];
        index[base] = 0;
        let mut count = 1;
        for p in 0..n {
            if accessible[p] && coaccessible[p] {
                index[p] = count;
                count += 1;
            }
        }
        let mut m = Self::with_states(count);
        for (p, out) in forward.iter().enumerate() {
            for &(l, q) in out {
                if index[p] != usize::MAX && index[q] != usize::MAX {
                    m.add_edge(index[p], l, index[q]);
                    m.add_edge(index[q], l.map(SignedLetter::inv), index[p]);
                }
            }
        }
        m.initial = BTreeSet::from([0]);
        m.finals = BTreeSet::from([0]);
        m
    }

    fn epsilon_closures(&self) -> Vec<BTreeSet<usize>> {
        (0..self.num_states())
            .map(|p| {
                let mut seen = BTreeSet::from([p]);
                let mut stack = vec![p];
                while let Some(x) = stack.pop() {
                    for &(l, y) in &self.edges[x] {
                        if l.is_none() && seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Benois saturation: adds an ε-edge `p -> q` whenever `p -x-> r`,
    /// `r =ε*=> r'` and `r' -x⁻¹-> q`, until nothing changes.
    pub fn saturate(&self) -> GroupAutomaton {
        let mut m = self.clone();
        if m.saturated {
            return m;
        }
        loop {
            let closures = m.epsilon_closures();
            let mut fresh = Vec::new();
            for p in 0..m.num_states() {
                for &(l, r) in &m.edges[p] {
                    let Some(x) = l else { continue };
                    for &r2 in &closures[r] {
                        for &(l2, q) in &m.edges[r2] {
                            if l2 == Some(x.inv()) && !closures[p].contains(&q) {
                                fresh.push((p, q));
                            }
                        }
                    }
                }
            }
            let mut changed = false;
            for (p, q) in fresh {
                changed |= m.add_edge(p, None, q);
            }
            if !changed {
                break;
            }
        }
        m.saturated = true;
        m
    }

    fn closure_of(&self, states: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = states.clone();
        let mut stack: Vec<usize> = states.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(l, q) in &self.edges[p] {
                if l.is_none() && out.insert(q) {
                    stack.push(q);
                }
            }
        }
        out
    }

    /// Whether some accepting path (ε-edges allowed) spells exactly `letters`.
    pub fn reads(&self, letters: &[SignedLetter]) -> bool {
        let mut current = self.closure_of(&self.initial);
        for &x in letters {
            let moved: BTreeSet<usize> = current
                .iter()
                .flat_map(|&p| {
                    self.edges[p]
                        .iter()
                        .filter(|&&(l, _)| l == Some(x))
                        .map(|&(_, q)| q)
                })
                .collect();
            if moved.is_empty() {
                return false;
            }
            current = self.closure_of(&moved);
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    /// Whether `w` is the free reduction of some accepted word.
    pub fn contains(&self, w: &GroupWord) -> bool {
        if self.saturated {
            self.reads(w.letters())
        } else {
            self.saturate().reads(w.letters())
        }
    }

    /// Restriction to positive letters and ε-edges. For a saturated automaton
    /// this accepts exactly the positive words in the represented subset.
    pub fn positive_part(&self) -> GroupAutomaton {
        let mut m = self.clone();
        for out in &mut m.edges {
            out.retain(|(l, _)| l.is_none_or(|x| !x.inverse));
        }
        m.saturated = false;
        m
    }
}

/// Whether the reduced word `w` lies in the rational subset represented by `m`.
pub fn rational_membership(m: &GroupAutomaton, w: &GroupWord) -> bool {
    m.contains(w)
}

/// A shortest reduced word in both subsets, lexicographically least among the
/// shortest (`a < a' < b < ...`), or `None` when the intersection is empty.
pub fn rational_intersection_nonempty(
    m1: &GroupAutomaton,
    m2: &GroupAutomaton,
) -> Option<GroupWord> {
    rational_intersection_witness(&[m1.clone(), m2.clone()])
}

/// As [`rational_intersection_nonempty`] for any number of subsets. With no
/// subsets at all the intersection is the whole group and ε is returned.
pub fn rational_intersection_witness(ms: &[GroupAutomaton]) -> Option<GroupWord> {
    let saturated: Vec<GroupAutomaton> = ms.iter().map(GroupAutomaton::saturate).collect();
    let closures: Vec<Vec<BTreeSet<usize>>> =
        saturated.iter().map(|m| m.epsilon_closures()).collect();
    let letters: BTreeSet<SignedLetter> = saturated
        .iter()
        .flat_map(|m| m.edges().filter_map(|(_, l, _)| l))
        .collect();
    let successors = |i: usize, p: usize, x: SignedLetter| -> Vec<usize> {
        let out: BTreeSet<usize> = closures[i][p]
            .iter()
            .flat_map(|&r| saturated[i].out_edges(r))
            .filter(|&&(l, _)| l == Some(x))
            .map(|&(_, q)| q)
            .collect();
        out.into_iter().collect()
    };
    let is_accepting = |(states, _): &Node| {
        states.iter().enumerate().all(|(i, &p)| {
            closures[i][p]
                .iter()
                .any(|q| saturated[i].finals.contains(q))
        })
    };

    // Layered search: every group of product states is labelled by the
    // least word reaching them first, so groups appear in shortlex order.
    type Node = (Vec<usize>, Option<SignedLetter>);
    let mut start: Vec<Node> = vec![(Vec::new(), None)];
    for m in &saturated {
        start = start
            .into_iter()
            .flat_map(|(states, _)| {
                m.initial.iter().map(move |&i| {
                    let mut next = states.clone();
                    next.push(i);
                    (next, None)
                })
            })
            .collect();
    }
    let mut seen: BTreeSet<Node> = start.iter().cloned().collect();
    if start.iter().any(is_accepting) {
        return Some(GroupWord::identity());
    }
    let mut layer: Vec<(Vec<SignedLetter>, Vec<Node>)> = vec![(Vec::new(), start)];
    while !layer.is_empty() {
        let mut next_layer = Vec::new();
        for (word, nodes) in &layer {
            for &x in &letters {
                let mut group = Vec::new();
                for (states, last) in nodes {
                    if *last == Some(x.inv()) {
                        continue;
                    }
                    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
                    for (i, &p) in states.iter().enumerate() {
                        let succ = successors(i, p, x);
                        tuples = tuples
                            .into_iter()
                            .flat_map(|t| {
                                succ.iter().map(move |&q| {
                                    let mut t = t.clone();
                                    t.push(q);
                                    t
                                })
                            })
                            .collect();
                        if tuples.is_empty() {
                            break;
                        }
                    }
                    for t in tuples {
                        let node = (t, Some(x));
                        if seen.insert(node.clone()) {
                            group.push(node);
                        }
                    }
                }
                if group.is_empty() {
                    continue;
                }
                let mut extended = word.clone();
                extended.push(x);
                if group.iter().any(is_accepting) {
                    return Some(super::word::reduce(extended));
                }
                next_layer.push((extended, group));
            }
        }
        layer = next_layer;
    }
    None
}
