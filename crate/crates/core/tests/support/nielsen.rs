//! Brute-force Nielsen reduction over plain integer words.
//!
//! A letter `i` is `i + 1`, its inverse `-(i + 1)`. The search explores every
//! state reachable by elementary Nielsen moves that do not raise the total
//! length. Nielsen's reduction never needs to raise it, so the reduced form of
//! the family is always among the reachable states.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use dendric::{GroupWord, Syllable};

pub type Raw = Vec<i32>;

pub fn raw(g: &GroupWord) -> Raw {
    g.syllables()
        .iter()
        .map(|s| {
            let v = s.letter.index() as i32 + 1;
            if s.inverse {
                -v
            } else {
                v
            }
        })
        .collect()
}

pub fn group(w: &[i32]) -> GroupWord {
    GroupWord::from_syllables(w.iter().map(|&v| {
        let l = dendric::Letter(v.unsigned_abs() - 1);
        if v < 0 {
            Syllable::neg(l)
        } else {
            Syllable::pos(l)
        }
    }))
}

fn reduce(w: impl IntoIterator<Item = i32>) -> Raw {
    let mut out: Raw = Vec::new();
    for v in w {
        if out.last() == Some(&-v) {
            out.pop();
        } else {
            out.push(v);
        }
    }
    out
}

fn inv(w: &[i32]) -> Raw {
    w.iter().rev().map(|v| -v).collect()
}

/// Each element up to inversion, then the multiset sorted.
fn canonical(state: &[Raw]) -> Vec<Raw> {
    let mut s: Vec<Raw> = state
        .iter()
        .map(|w| {
            let i = inv(w);
            if i < *w {
                i
            } else {
                w.clone()
            }
        })
        .collect();
    s.sort();
    s
}

fn weight(state: &[Raw]) -> usize {
    state.iter().map(Vec::len).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub free: bool,
    pub basis: bool,
}

pub fn nielsen(family: &[Raw], alphabet_len: usize) -> Verdict {
    let start = canonical(family);
    let bound = weight(&start);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if state.iter().any(Vec::is_empty) {
            // a dependent family is never a basis
            return Verdict {
                free: false,
                basis: false,
            };
        }
        let letters: BTreeSet<i32> = state
            .iter()
            .filter(|w| w.len() == 1)
            .map(|w| w[0].abs())
            .collect();
        if family.len() == alphabet_len
            && letters.len() == alphabet_len
            && state.iter().all(|w| w.len() == 1)
        {
            return Verdict {
                free: true,
                basis: true,
            };
        }
        for i in 0..state.len() {
            for j in 0..state.len() {
                if i == j {
                    continue;
                }
                for other in [state[j].clone(), inv(&state[j])] {
                    for product in [
                        reduce(state[i].iter().chain(&other).copied()),
                        reduce(other.iter().chain(&state[i]).copied()),
                    ] {
                        let mut next = state.clone();
                        next[i] = product;
                        let next = canonical(&next);
                        if weight(&next) <= bound && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    Verdict {
        free: true,
        basis: false,
    }
}
