//! Seeded random generator families.

#![allow(dead_code)]

use rand::Rng;

/// Up to `max_gens` reduced words over `k` letters, `max_total` letters overall.
pub fn family(rng: &mut impl Rng, k: usize, max_gens: usize, max_total: usize) -> Vec<Vec<i32>> {
    let count = rng.random_range(1..=max_gens);
    let mut budget = max_total;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let len = rng.random_range(0..=budget.min(5));
        budget -= len;
        let mut w: Vec<i32> = Vec::with_capacity(len);
        while w.len() < len {
            let v = rng.random_range(1..=k as i32) * if rng.random_bool(0.5) { 1 } else { -1 };
            if w.last() != Some(&-v) {
                w.push(v);
            }
        }
        out.push(w);
    }
    out
}
