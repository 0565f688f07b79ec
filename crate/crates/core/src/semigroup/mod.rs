//! Finite semigroups given by their multiplication table.
//!
//! Elements are indices `0..order`. The table is stored row-major with the
//! row index as the left factor, so `mul(a, b) = table[a][b]`.

mod enumerate;
mod green;
mod monogenic;
mod predicates;

pub use enumerate::{
    canonical_table, count_associative_tables_naive, enumerate_semigroups,
    enumerate_semigroups_with_threads,
};
pub use green::{green_relations, GreenData, Partition};
pub use monogenic::{monogenic_profile, MonogenicProfile};
pub use predicates::{structural_predicates, StructuralPredicates};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a finite semigroup, identified by its index in the table.
pub type Element = usize;

/// A finite semigroup together with optional display metadata.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<Element>,
    identity: Option<Element>,
    labels: Option<Vec<String>>,
    generators: Option<Vec<Element>>,
}

/// Interchange form of a semigroup. `identity` is recomputed from the table
/// and checked against the declared value when one is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: Option<usize>,
    pub labels: Option<Vec<String>>,
    pub generators: Option<Vec<usize>>,
}

impl Serialize for FiniteSemigroup {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Checks that every entry of a square table is in range and that the
/// product it describes is associative.
pub fn check_associativity(rows: &[Vec<usize>]) -> Result<bool> {
    let n = validate_shape(rows)?;
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    Ok(first_associativity_failure(&flat, n).is_none())
}

fn validate_shape(rows: &[Vec<usize>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::MalformedTable(format!(
                "entry ({i},{j}) = {v} is out of range for order {n}"
            )));
        }
    }
    Ok(n)
}

fn first_associativity_failure(table: &[usize], n: usize) -> Option<(usize, usize, usize)> {
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

fn detect_identity(table: &[usize], n: usize) -> Option<Element> {
    (0..n).find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
}

impl FiniteSemigroup {
    /// Builds a semigroup from table rows, validating range and associativity.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = validate_shape(&rows)?;
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        Self::from_flat(n, table)
    }

    /// Builds a semigroup from a flattened row-major table.
    pub fn from_flat(order: usize, table: Vec<Element>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::MalformedTable(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                table.len()
            )));
        }
        if let Some(v) = table.iter().find(|&&v| v >= order) {
            return Err(Error::MalformedTable(format!("entry {v} out of range")));
        }
        if let Some((a, b, c)) = first_associativity_failure(&table, order) {
            return Err(Error::NotAssociative { a, b, c });
        }
        Ok(Self::from_flat_unchecked(order, table))
    }

    /// Skips the associativity check. The caller guarantees the table is a semigroup.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<Element>) -> Self {
        let identity = detect_identity(&table, order);
        FiniteSemigroup {
            order,
            table,
            identity,
            labels: None,
            generators: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::MalformedTable(format!(
                "{} labels for {} elements",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Attaches a generating set; fails if the generators do not generate everything.
    pub fn with_generators(mut self, generators: Vec<Element>) -> Result<Self> {
        if generators.is_empty() || generators.iter().any(|&g| g >= self.order) {
            return Err(Error::MalformedTable("invalid generator list".into()));
        }
        let closure = self.closure(&generators, &[]);
        if closure.len() != self.order {
            return Err(Error::MalformedTable(format!(
                "generators span {} of {} elements",
                closure.len(),
                self.order
            )));
        }
        self.generators = Some(generators);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    /// Product of a nonempty sequence, left to right.
    pub fn product<I: IntoIterator<Item = Element>>(&self, items: I) -> Option<Element> {
        items.into_iter().reduce(|acc, x| self.mul(acc, x))
    }

    /// `s^k` for `k >= 1`.
    pub fn pow(&self, s: Element, k: usize) -> Element {
        assert!(k >= 1, "semigroup powers start at 1");
        let mut acc = s;
        for _ in 1..k {
            acc = self.mul(acc, s);
        }
        acc
    }

    pub fn identity(&self) -> Option<Element> {
        self.identity
    }

    /// A two-sided zero, if there is one.
    pub fn zero(&self) -> Option<Element> {
        self.elements().find(|&z| {
            self.elements()
                .all(|x| self.mul(z, x) == z && self.mul(x, z) == z)
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn generators(&self) -> Option<&[Element]> {
        self.generators.as_deref()
    }

    pub fn label(&self, e: Element) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    pub fn is_idempotent(&self, e: Element) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<Element> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least superset of `seed` closed under the product and every unary rule.
    pub fn closure(
        &self,
        seed: &[Element],
        rules: &[&dyn Fn(Element) -> Vec<Element>],
    ) -> BTreeSet<Element> {
        let mut inside = vec![false; self.order];
        let mut members: Vec<Element> = Vec::new();
        let mut queue: Vec<Element> = Vec::new();
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            let mut fresh = Vec::new();
            for &y in &members {
                fresh.push(self.mul(x, y));
                fresh.push(self.mul(y, x));
            }
            for rule in rules {
                fresh.extend(rule(x));
            }
            for z in fresh {
                if !inside[z] {
                    inside[z] = true;
                    members.push(z);
                    queue.push(z);
                }
            }
        }
        members.into_iter().collect()
    }

    /// The subsemigroup on `elements` (which must be closed under the product),
    /// relabelled `0..k` in ascending order of the original indices.
    pub fn induced(&self, elements: &BTreeSet<Element>) -> Result<FiniteSemigroup> {
        let index: Vec<Element> = elements.iter().copied().collect();
        if index.is_empty() {
            return Err(Error::Domain("empty subset".into()));
        }
        let position = |x: Element| index.binary_search(&x).ok();
        let k = index.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &index {
            for &b in &index {
                let p = position(self.mul(a, b))
                    .ok_or_else(|| Error::Domain(format!("subset not closed: {a}*{b} escapes")))?;
                table.push(p);
            }
        }
        let mut sub = FiniteSemigroup::from_flat_unchecked(k, table);
        if let Some(labels) = &self.labels {
            sub.labels = Some(index.iter().map(|&i| labels[i].clone()).collect());
        }
        Ok(sub)
    }

    /// `S^1`: returns `self` unchanged when it already has an identity,
    /// otherwise adjoins a fresh identity as the last element.
    pub fn monoid_closure(&self) -> (FiniteSemigroup, Element) {
        match self.identity {
            Some(e) => (self.clone(), e),
            None => {
                let m = self.adjoin_identity();
                let e = self.order;
                (m, e)
            }
        }
    }

    /// `S^I`: always adjoins a fresh identity as the last element.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        let n = self.order;
        let m = n + 1;
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push(if a == n {
                    b
                } else if b == n {
                    a
                } else {
                    self.mul(a, b)
                });
            }
        }
        let mut out = FiniteSemigroup::from_flat_unchecked(m, table);
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            l.push("1".into());
            out.labels = Some(l);
        }
        out
    }

    /// Direct product with `other`; element `(a, b)` has index `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let (n, m) = (self.order, other.order);
        let k = n * m;
        let mut table = Vec::with_capacity(k * k);
        for x in 0..k {
            for y in 0..k {
                let (a1, b1) = (x / m, x % m);
                let (a2, b2) = (y / m, y % m);
                table.push(self.mul(a1, a2) * m + other.mul(b1, b2));
            }
        }
        FiniteSemigroup::from_flat_unchecked(k, table)
    }

    /// Quotient by the smallest congruence identifying the given pairs.
    /// Returns the quotient and the projection map.
    pub fn quotient(&self, pairs: &[(Element, Element)]) -> (FiniteSemigroup, Vec<Element>) {
        let n = self.order;
        let mut class: Vec<usize> = (0..n).collect();
        fn find(class: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while class[r] != r {
                r = class[r];
            }
            let mut y = x;
            while class[y] != r {
                let next = class[y];
                class[y] = r;
                y = next;
            }
            r
        }
        let mut pending: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((a, b)) = pending.pop() {
            let (ra, rb) = (find(&mut class, a), find(&mut class, b));
            if ra == rb {
                continue;
            }
            class[ra] = rb;
            // compatibility on both sides, recomputed lazily through the pending list
            for x in 0..n {
                pending.push((self.mul(a, x), self.mul(b, x)));
                pending.push((self.mul(x, a), self.mul(x, b)));
            }
        }
        let mut rep = vec![usize::MAX; n];
        let mut projection = vec![0; n];
        let mut count = 0;
        for (x, slot) in projection.iter_mut().enumerate() {
            let r = find(&mut class, x);
            if rep[r] == usize::MAX {
                rep[r] = count;
                count += 1;
            }
            *slot = rep[r];
        }
        let mut witness = vec![0; count];
        for x in (0..n).rev() {
            witness[projection[x]] = x;
        }
        let mut table = vec![0; count * count];
        for a in 0..count {
            for b in 0..count {
                table[a * count + b] = projection[self.mul(witness[a], witness[b])];
            }
        }
        (
            FiniteSemigroup::from_flat_unchecked(count, table),
            projection,
        )
    }

    pub fn to_json(&self) -> SemigroupJson {
        SemigroupJson {
            order: self.order,
            table: self.rows(),
            identity: self.identity,
            labels: self.labels.clone(),
            generators: self.generators.clone(),
        }
    }

    pub fn from_json(json: SemigroupJson) -> Result<Self> {
        if json.table.len() != json.order {
            return Err(Error::MalformedTable(format!(
                "order is {} but table has {} rows",
                json.order,
                json.table.len()
            )));
        }
        let mut s = FiniteSemigroup::new(json.table)?;
        if let Some(declared) = json.identity {
            if s.identity != Some(declared) {
                return Err(Error::MalformedTable(format!(
                    "declared identity {declared} is not an identity of the table"
                )));
            }
        }
        if let Some(labels) = json.labels {
            s = s.with_labels(labels)?;
        }
        if let Some(gens) = json.generators {
            s = s.with_generators(gens)?;
        }
        Ok(s)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: SemigroupJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedTable(e.to_string()))?;
        Self::from_json(json)
    }

    /// Cyclic group of order `n` with generator `1` and identity `0`.
    pub fn cyclic_group(n: usize) -> FiniteSemigroup {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteSemigroup::from_flat_unchecked(n, table)
    }

    /// Monogenic semigroup `<a : a^(index+period) = a^index>`; element `k` is `a^(k+1)`.
    pub fn monogenic(index: usize, period: usize) -> FiniteSemigroup {
        assert!(index >= 1 && period >= 1);
        let n = index + period - 1;
        let reduce = |e: usize| {
            if e <= n {
                e
            } else {
                index + (e - index) % period
            }
        };
        let mut table = Vec::with_capacity(n * n);
        for a in 1..=n {
            for b in 1..=n {
                table.push(reduce(a + b) - 1);
            }
        }
        FiniteSemigroup::from_flat_unchecked(n, table)
    }

    /// Left-zero semigroup: `xy = x`.
    pub fn left_zero(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_flat_unchecked(n, (0..n * n).map(|i| i / n).collect())
    }

    /// The monoid `U1 = {1, 0}`; element 0 is the zero, element 1 the identity.
    pub fn u1() -> FiniteSemigroup {
        FiniteSemigroup::from_flat_unchecked(2, vec![0, 0, 0, 1])
    }

    /// Symmetric group on three points, elements ordered lexicographically by permutation.
    pub fn symmetric_group_3() -> FiniteSemigroup {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let mut table = Vec::with_capacity(36);
        for p in perms {
            for q in perms {
                // apply p then q
                table.push(index([q[p[0]], q[p[1]], q[p[2]]]));
            }
        }
        FiniteSemigroup::from_flat_unchecked(6, table)
    }
}
