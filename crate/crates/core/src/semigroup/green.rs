use serde::Serialize;

use super::{Element, FiniteSemigroup};

/// A partition of the elements; `class_of[x]` indexes into `classes`.
/// Classes are listed in order of their least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub classes: Vec<Vec<Element>>,
    pub class_of: Vec<usize>,
}

impl Partition {
    /// Groups elements with equal keys.
    fn by_key<K: PartialEq>(keys: &[K]) -> Partition {
        let mut classes: Vec<Vec<Element>> = Vec::new();
        let mut class_of = vec![0; keys.len()];
        let mut reps: Vec<Element> = Vec::new();
        for (x, key) in keys.iter().enumerate() {
            match reps.iter().position(|&r| keys[r] == *key) {
                Some(c) => {
                    classes[c].push(x);
                    class_of[x] = c;
                }
                None => {
                    class_of[x] = classes.len();
                    reps.push(x);
                    classes.push(vec![x]);
                }
            }
        }
        Partition { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same(&self, a: Element, b: Element) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Common refinement of two partitions.
    pub fn meet(&self, other: &Partition) -> Partition {
        let keys: Vec<(usize, usize)> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::by_key(&keys)
    }

    /// Finest partition coarser than both.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.class_of.len();
        let mut label: Vec<usize> = (0..n).collect();
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    if (self.same(x, y) || other.same(x, y)) && label[x] != label[y] {
                        let m = label[x].min(label[y]);
                        label[x] = m;
                        label[y] = m;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Partition::by_key(&label)
    }
}

/// Green's relations of a finite semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenData {
    pub r: Partition,
    pub l: Partition,
    pub j: Partition,
    pub h: Partition,
    /// `j_order[a][b]` iff J-class `a` lies below J-class `b`,
    /// i.e. `S^1 a S^1 ⊆ S^1 b S^1`.
    pub j_order: Vec<Vec<bool>>,
}

impl GreenData {
    pub fn j_below(&self, a: Element, b: Element) -> bool {
        self.j_order[self.j.class_of[a]][self.j.class_of[b]]
    }

    /// H-classes that contain an idempotent (the maximal subgroups).
    pub fn group_h_classes<'a>(
        &'a self,
        s: &'a FiniteSemigroup,
    ) -> impl Iterator<Item = &'a Vec<Element>> + 'a {
        self.h
            .classes
            .iter()
            .filter(move |c| c.iter().any(|&e| s.is_idempotent(e)))
    }
}

type Ideal = Vec<bool>;

pub fn green_relations(s: &FiniteSemigroup) -> GreenData {
    let n = s.order();
    let (m, _) = s.monoid_closure();
    let right: Vec<Ideal> = (0..n)
        .map(|a| {
            let mut set = vec![false; n];
            for x in m.elements() {
                let p = m.mul(a, x);
                if p < n {
                    set[p] = true;
                }
            }
            set
        })
        .collect();
    let left: Vec<Ideal> = (0..n)
        .map(|a| {
            let mut set = vec![false; n];
            for x in m.elements() {
                let p = m.mul(x, a);
                if p < n {
                    set[p] = true;
                }
            }
            set
        })
        .collect();
    let two_sided: Vec<Ideal> = (0..n)
        .map(|a| {
            let mut set = vec![false; n];
            for x in m.elements() {
                for y in m.elements() {
                    let p = m.mul(m.mul(x, a), y);
                    if p < n {
                        set[p] = true;
                    }
                }
            }
            set
        })
        .collect();
    let r = Partition::by_key(&right);
    let l = Partition::by_key(&left);
    let j = Partition::by_key(&two_sided);
    let h = r.meet(&l);
    let k = j.len();
    let mut j_order = vec![vec![false; k]; k];
    for (ca, class_a) in j.classes.iter().enumerate() {
        for (cb, class_b) in j.classes.iter().enumerate() {
            let (a, b) = (class_a[0], class_b[0]);
            j_order[ca][cb] = two_sided[a]
                .iter()
                .zip(&two_sided[b])
                .all(|(&in_a, &in_b)| !in_a || in_b);
        }
    }
    GreenData {
        r,
        l,
        j,
        h,
        j_order,
    }
}
