use serde::Serialize;

use super::{Element, FiniteSemigroup};

/// Index, period and the ω-related powers of one element.
///
/// `s^index` is the first power that lies in the cycle of the monogenic
/// subsemigroup, and the cycle has length `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonogenicProfile {
    pub element: Element,
    pub index: usize,
    pub period: usize,
    /// `s^ω`, the unique idempotent power of `s`.
    pub omega: Element,
    /// `s^(ω-1)`, the inverse of `s^(ω+1)` in the maximal subgroup at `s^ω`.
    pub omega_minus_one: Element,
}

impl MonogenicProfile {
    /// Least exponent `e >= max(index, 1)` congruent to `offset` modulo the period.
    pub fn cycle_exponent(&self, offset: i64) -> usize {
        let p = self.period as i64;
        let lo = self.index as i64;
        let r = offset.rem_euclid(p);
        let base = lo + (r - lo).rem_euclid(p);
        base as usize
    }
}

pub fn monogenic_profile(s: &FiniteSemigroup, x: Element) -> MonogenicProfile {
    // powers[k] = x^(k+1)
    let mut powers: Vec<Element> = vec![x];
    let mut seen = vec![usize::MAX; s.order()];
    seen[x] = 0;
    let (index, period) = loop {
        let next = s.mul(*powers.last().unwrap(), x);
        let k = powers.len();
        if seen[next] != usize::MAX {
            let first = seen[next];
            break (first + 1, k - first);
        }
        seen[next] = k;
        powers.push(next);
    };
    let mut profile = MonogenicProfile {
        element: x,
        index,
        period,
        omega: x,
        omega_minus_one: x,
    };
    let power = |e: usize| powers[index - 1 + (e - index) % period];
    profile.omega = power(profile.cycle_exponent(0));
    profile.omega_minus_one = power(profile.cycle_exponent(-1));
    profile
}

/// `x^e` for `e >= 1`, computed through the profile.
#[cfg(test)]
fn power_via_profile(s: &FiniteSemigroup, profile: &MonogenicProfile, e: usize) -> Element {
    let e = if e < profile.index {
        e
    } else {
        profile.index + (e - profile.index) % profile.period
    };
    s.pow(profile.element, e)
}
