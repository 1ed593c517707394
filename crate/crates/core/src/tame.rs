//! Tame bases: positive bases reachable from the alphabet by permutations
//! and the elementary morphisms `α_{a,b}: a ↦ ab` and `α̃_{a,b}: a ↦ ba`.
//!
//! A basis is stored as a vector indexed by the alphabet, `V[c] = φ(c)`.
//! Applying a move `μ` replaces `φ` by `φ ∘ μ`, so a certificate replayed
//! top to bottom from the identity yields the composition of its moves.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::is_basis_of_free_group;
use crate::words::{Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryMove {
    /// `images[i]` is the image of the `i`-th letter.
    Permutation(Vec<Letter>),
    /// `a ↦ ab`.
    Alpha(Letter, Letter),
    /// `a ↦ ba`.
    AlphaTilde(Letter, Letter),
}

impl ElementaryMove {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            ElementaryMove::Permutation(images) => {
                let names: Vec<&str> = images.iter().map(|&l| alphabet.name(l)).collect();
                format!("perm ({})", names.join(" "))
            }
            ElementaryMove::Alpha(a, b) => {
                format!("alpha {} {}", alphabet.name(*a), alphabet.name(*b))
            }
            ElementaryMove::AlphaTilde(a, b) => {
                format!("alphatilde {} {}", alphabet.name(*a), alphabet.name(*b))
            }
        }
    }

    pub fn parse(line: &str, alphabet: &Alphabet) -> Result<Self> {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("perm") {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Input(format!("malformed permutation: {line}")))?;
            let images = inner
                .split_whitespace()
                .map(|n| alphabet.letter(n))
                .collect::<Result<Vec<_>>>()?;
            return Ok(ElementaryMove::Permutation(images));
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["alpha", a, b] => Ok(ElementaryMove::Alpha(
                alphabet.letter(a)?,
                alphabet.letter(b)?,
            )),
            ["alphatilde", a, b] => Ok(ElementaryMove::AlphaTilde(
                alphabet.letter(a)?,
                alphabet.letter(b)?,
            )),
            _ => Err(Error::Input(format!("unknown move: {line}"))),
        }
    }
}

pub fn apply_move(basis: &[Word], mv: &ElementaryMove) -> Result<Vec<Word>> {
    let k = basis.len();
    let in_range = |l: &Letter| l.index() < k;
    match mv {
        ElementaryMove::Permutation(images) => {
            let distinct: HashSet<&Letter> = images.iter().collect();
            if images.len() != k || distinct.len() != k || !images.iter().all(in_range) {
                return Err(Error::Input(
                    "permutation is not a bijection of the alphabet".into(),
                ));
            }
            Ok(images.iter().map(|l| basis[l.index()].clone()).collect())
        }
        ElementaryMove::Alpha(a, b) | ElementaryMove::AlphaTilde(a, b) => {
            if a == b {
                return Err(Error::Input(
                    "elementary move needs two distinct letters".into(),
                ));
            }
            if !in_range(a) || !in_range(b) {
                return Err(Error::UnknownLetter(format!("#{}", a.0.max(b.0))));
            }
            let mut out = basis.to_vec();
            out[a.index()] = match mv {
                ElementaryMove::Alpha(..) => basis[a.index()].concat(&basis[b.index()]),
                _ => basis[b.index()].concat(&basis[a.index()]),
            };
            Ok(out)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TameCertificate {
    pub moves: Vec<ElementaryMove>,
}

impl TameCertificate {
    /// Replays the moves from the alphabet.
    pub fn replay(&self, alphabet: &Alphabet) -> Result<Vec<Word>> {
        let mut v: Vec<Word> = alphabet.letters().map(|l| Word(vec![l])).collect();
        for mv in &self.moves {
            v = apply_move(&v, mv)?;
        }
        Ok(v)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.moves
            .iter()
            .map(|m| format!("{}\n", m.render(alphabet)))
            .collect()
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let moves = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| ElementaryMove::parse(l, alphabet))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { moves })
    }
}

impl fmt::Display for TameCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} moves", self.moves.len())
    }
}

pub fn verify_certificate(cert: &TameCertificate, target: &[Word], alphabet: &Alphabet) -> bool {
    match cert.replay(alphabet) {
        Ok(v) => {
            v.into_iter().collect::<BTreeSet<_>>()
                == target.iter().cloned().collect::<BTreeSet<_>>()
        }
        Err(_) => false,
    }
}

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameOutcome {
    Found(TameCertificate),
    /// Budget exhausted; says nothing about tameness.
    NotFound {
        nodes: usize,
    },
}

impl TameOutcome {
    pub fn certificate(&self) -> Option<&TameCertificate> {
        match self {
            TameOutcome::Found(c) => Some(c),
            TameOutcome::NotFound { .. } => None,
        }
    }
}

struct Search<'a> {
    alphabet: &'a Alphabet,
    budget: usize,
    nodes: usize,
    visited: HashSet<BTreeSet<Word>>,
    /// Forward moves, in the order the backward search discovered them.
    trail: Vec<ElementaryMove>,
}

impl Search<'_> {
    /// Depth-first backward stripping. Returns the final all-letters state.
    fn run(&mut self, state: Vec<Word>) -> Option<Vec<Word>> {
        if state.iter().all(|w| w.len() == 1) {
            return Some(state);
        }
        if self.nodes >= self.budget || !self.visited.insert(state.iter().cloned().collect()) {
            return None;
        }
        self.nodes += 1;
        debug_assert!(is_basis_of_free_group(
            &state.iter().map(Word::to_group).collect::<Vec<_>>(),
            self.alphabet
        ));

        // (strip length, x, y, prefix?)
        let mut candidates: Vec<(usize, usize, usize, bool)> = Vec::new();
        for (i, x) in state.iter().enumerate() {
            for (j, y) in state.iter().enumerate() {
                if i == j || y.len() >= x.len() {
                    continue;
                }
                if x.starts_with(y) {
                    candidates.push((y.len(), i, j, true));
                }
                if x.ends_with(y) {
                    candidates.push((y.len(), i, j, false));
                }
            }
        }
        candidates.sort_by(|p, q| q.0.cmp(&p.0).then((p.1, p.2, !p.3).cmp(&(q.1, q.2, !q.3))));

        for (strip, i, j, prefix) in candidates {
            let x = &state[i];
            let rest = if prefix {
                x.factor(strip, x.len() - strip)
            } else {
                x.factor(0, x.len() - strip)
            };
            let mut next = state.clone();
            next[i] = rest;
            let (a, b) = (Letter(i as u32), Letter(j as u32));
            self.trail.push(if prefix {
                ElementaryMove::AlphaTilde(a, b)
            } else {
                ElementaryMove::Alpha(a, b)
            });
            if let Some(done) = self.run(next) {
                return Some(done);
            }
            self.trail.pop();
            if self.nodes >= self.budget {
                return None;
            }
        }
        None
    }
}

/// Searches for a tame decomposition of a positive basis by stripping a
/// prefix or suffix equal to another basis element, longest strip first.
pub fn tame_decompose(basis: &[Word], alphabet: &Alphabet, budget: usize) -> Result<TameOutcome> {
    if basis.iter().any(Word::is_empty)
        || !is_basis_of_free_group(
            &basis.iter().map(Word::to_group).collect::<Vec<_>>(),
            alphabet,
        )
    {
        return Err(Error::NotABasis);
    }
    if budget == 0 {
        return Err(Error::Input("budget must be at least 1".into()));
    }
    let mut search = Search {
        alphabet,
        budget,
        nodes: 0,
        visited: HashSet::new(),
        trail: Vec::new(),
    };
    let Some(letters) = search.run(basis.to_vec()) else {
        return Ok(TameOutcome::NotFound {
            nodes: search.nodes,
        });
    };
    let images: Vec<Letter> = letters.iter().map(|w| w.0[0]).collect();
    let mut moves = Vec::with_capacity(search.trail.len() + 1);
    if images.iter().enumerate().any(|(i, l)| l.index() != i) {
        moves.push(ElementaryMove::Permutation(images));
    }
    moves.extend(search.trail.into_iter().rev());
    let cert = TameCertificate { moves };
    if !verify_certificate(&cert, basis, alphabet) {
        return Err(Error::Invariant("tame certificate does not replay".into()));
    }
    Ok(TameOutcome::Found(cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(a: &Alphabet, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| a.parse_word(w).unwrap()).collect()
    }

    #[test]
    fn alpha_moves() {
        let a = Alphabet::from_chars("abc").unwrap();
        let v = words(&a, &["a", "b", "c"]);
        let out = apply_move(&v, &ElementaryMove::Alpha(Letter(0), Letter(1))).unwrap();
        assert_eq!(out, words(&a, &["ab", "b", "c"]));

        let ab = Alphabet::from_chars("ab").unwrap();
        let v = words(&ab, &["a", "b"]);
        let out = apply_move(&v, &ElementaryMove::AlphaTilde(Letter(0), Letter(1))).unwrap();
        assert_eq!(out, words(&ab, &["ba", "b"]));

        let id = ElementaryMove::Permutation(vec![Letter(0), Letter(1)]);
        assert_eq!(apply_move(&v, &id).unwrap(), v);
    }

    #[test]
    fn invalid_moves() {
        let a = Alphabet::from_chars("ab").unwrap();
        let v = words(&a, &["a", "b"]);
        assert!(apply_move(&v, &ElementaryMove::Alpha(Letter(0), Letter(0))).is_err());
        assert!(apply_move(&v, &ElementaryMove::Permutation(vec![Letter(0), Letter(0)])).is_err());
        assert!(apply_move(&v, &ElementaryMove::Permutation(vec![Letter(0)])).is_err());
    }

    #[test]
    fn decompose_tribonacci_returns() {
        let a = Alphabet::from_chars("abc").unwrap();
        let w = words(&a, &["ab", "aba", "abac"]);
        let cert = tame_decompose(&w, &a, DEFAULT_BUDGET)
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        assert!(verify_certificate(&cert, &w, &a));
    }

    #[test]
    fn alphabet_has_empty_certificate() {
        let a = Alphabet::from_chars("abc").unwrap();
        let w = words(&a, &["a", "b", "c"]);
        let outcome = tame_decompose(&w, &a, DEFAULT_BUDGET).unwrap();
        assert_eq!(outcome, TameOutcome::Found(TameCertificate::default()));
        assert!(verify_certificate(&TameCertificate::default(), &w, &a));
    }

    #[test]
    fn non_basis_is_rejected() {
        let a = Alphabet::from_chars("ab").unwrap();
        assert_eq!(
            tame_decompose(&words(&a, &["ab", "ba"]), &a, 10),
            Err(Error::NotABasis)
        );
    }

    #[test]
    fn single_alpha_certificate() {
        let a = Alphabet::from_chars("ab").unwrap();
        let cert = TameCertificate {
            moves: vec![ElementaryMove::Alpha(Letter(0), Letter(1))],
        };
        assert!(verify_certificate(&cert, &words(&a, &["ab", "b"]), &a));
        assert!(!verify_certificate(&cert, &words(&a, &["ba", "b"]), &a));
    }

    #[test]
    fn certificate_text_round_trip() {
        let a = Alphabet::from_chars("abc").unwrap();
        let cert = TameCertificate {
            moves: vec![
                ElementaryMove::Permutation(vec![Letter(2), Letter(0), Letter(1)]),
                ElementaryMove::Alpha(Letter(0), Letter(1)),
                ElementaryMove::AlphaTilde(Letter(2), Letter(0)),
            ],
        };
        let text = cert.render(&a);
        assert_eq!(text, "perm (c a b)\nalpha a b\nalphatilde c a\n");
        assert_eq!(TameCertificate::parse(&text, &a).unwrap(), cert);
    }

    #[test]
    fn permuted_target_needs_permutation() {
        let a = Alphabet::from_chars("ab").unwrap();
        // {ba, a}: strip a from ba leaves b at index 0
        let w = words(&a, &["ba", "a"]);
        let cert = tame_decompose(&w, &a, DEFAULT_BUDGET)
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        assert!(matches!(cert.moves[0], ElementaryMove::Permutation(_)));
        assert!(verify_certificate(&cert, &w, &a));
    }

    #[test]
    fn tiny_budget_reports_not_found() {
        let a = Alphabet::from_chars("abc").unwrap();
        let w = words(&a, &["ab", "aba", "abac"]);
        assert!(matches!(
            tame_decompose(&w, &a, 1).unwrap(),
            TameOutcome::NotFound { .. }
        ));
    }
}
