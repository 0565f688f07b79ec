//! Backtracking enumeration of semigroup tables of order at most 4.

use std::collections::BTreeSet;

use super::{first_associativity_failure, FiniteSemigroup};
use crate::error::{Error, Result};

const MAX_ORDER: usize = 4;
const UNSET: usize = usize::MAX;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lexicographically least flattened table over all relabellings.
pub fn canonical_table(table: &[usize], n: usize) -> Vec<usize> {
    canonical_with(table, n, &permutations(n))
}

fn canonical_with(table: &[usize], n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut candidate = vec![0; n * n];
    for p in perms {
        for a in 0..n {
            for b in 0..n {
                candidate[p[a] * n + p[b]] = p[table[a * n + b]];
            }
        }
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate.clone());
        }
    }
    best.expect("at least one permutation")
}

/// True when no triple whose products are all defined violates associativity.
fn consistent(table: &[usize], n: usize) -> bool {
    let get = |a: usize, b: usize| table[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = get(a, b);
            if ab == UNSET {
                continue;
            }
            for c in 0..n {
                let bc = get(b, c);
                if bc == UNSET {
                    continue;
                }
                let (left, right) = (get(ab, c), get(a, bc));
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}

fn search(table: &mut Vec<usize>, n: usize, cell: usize, out: &mut Vec<Vec<usize>>) {
    if cell == n * n {
        debug_assert!(first_associativity_failure(table, n).is_none());
        out.push(table.clone());
        return;
    }
    for v in 0..n {
        table[cell] = v;
        if consistent(table, n) {
            search(table, n, cell + 1, out);
        }
    }
    table[cell] = UNSET;
}

fn all_tables(n: usize, threads: usize) -> Vec<Vec<usize>> {
    let branch = |first: usize| {
        let mut table = vec![UNSET; n * n];
        table[0] = first;
        let mut out = Vec::new();
        if consistent(&table, n) {
            search(&mut table, n, 1, &mut out);
        }
        out
    };
    let mut tables: Vec<Vec<usize>> = if threads <= 1 {
        (0..n).flat_map(branch).collect()
    } else {
        let chunks: Vec<Vec<usize>> = (0..threads)
            .map(|t| (0..n).filter(|v| v % threads == t).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| {
                    scope.spawn(|| chunk.iter().flat_map(|&v| branch(v)).collect::<Vec<_>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };
    tables.sort();
    tables
}

/// All semigroups of order `n` (every associative table, or one canonical
/// representative per isomorphism class), in lexicographic order of tables.
pub fn enumerate_semigroups(n: usize, upto_iso: bool) -> Result<Vec<FiniteSemigroup>> {
    enumerate_semigroups_with_threads(n, upto_iso, 1)
}

pub fn enumerate_semigroups_with_threads(
    n: usize,
    upto_iso: bool,
    threads: usize,
) -> Result<Vec<FiniteSemigroup>> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    let tables = all_tables(n, threads.max(1));
    let tables: Vec<Vec<usize>> = if upto_iso {
        let perms = permutations(n);
        tables
            .iter()
            .map(|t| canonical_with(t, n, &perms))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    } else {
        tables
    };
    Ok(tables
        .into_iter()
        .map(|t| FiniteSemigroup::from_flat_unchecked(n, t))
        .collect())
}

/// Counts associative tables by testing every one of the `n^(n^2)` tables.
/// Reference oracle for small `n`.
pub fn count_associative_tables_naive(n: usize, upto_iso: bool) -> usize {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    let mut count = 0;
    let mut table = vec![0; cells];
    for code in 0..total {
        let mut c = code;
        for cell in table.iter_mut() {
            *cell = c % n;
            c /= n;
        }
        if first_associativity_failure(&table, n).is_none() {
            count += 1;
            if upto_iso {
                classes.insert(canonical_with(&table, n, &perms));
            }
        }
    }
    if upto_iso {
        classes.len()
    } else {
        count
    }
}
