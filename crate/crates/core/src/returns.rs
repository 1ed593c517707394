//! Return words, derived shifts and the maps between their extension graphs.
//!
//! A complete return to `w` is a factor `v` that starts and ends with `w`
//! and has no other occurrence of `w` strictly inside. The left return word
//! is `v` minus its suffix `w`, the right return word is `v` minus its
//! prefix `w`. Both sets are read off the same list of complete returns, so
//! index `i` of one corresponds to index `i` of the other.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::language::{extension_graph, LanguageApprox, Source};
use crate::words::{Alphabet, GroupWord, Letter, Substitution, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnSet {
    pub base_word: Word,
    pub side: Side,
    /// In order of first occurrence in the language's reference stream.
    pub returns: Vec<Word>,
    /// Every factor of this length contains the base word.
    pub window: usize,
}

impl ReturnSet {
    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> + '_ {
        self.returns.iter()
    }

    pub fn max_len(&self) -> usize {
        self.returns.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn as_set(&self) -> BTreeSet<Word> {
        self.returns.iter().cloned().collect()
    }

    pub fn group_words(&self) -> Vec<GroupWord> {
        self.returns.iter().map(Word::to_group).collect()
    }

    pub fn report(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for r in &self.returns {
            let _ = writeln!(out, "{}", alphabet.render(r));
        }
        out
    }
}

/// Smallest `K` such that every factor of length `K` contains `w`.
fn recurrence_window(lang: &LanguageApprox, w: &Word) -> Result<usize> {
    (w.len()..lang.max_len())
        .find(|&k| lang.level(k).iter().all(|v| v.contains_factor(w)))
        .ok_or_else(|| {
            Error::Range(format!(
                "cannot bound the gaps between occurrences of {} within length {}",
                lang.render(w),
                lang.max_len()
            ))
        })
}

fn is_complete_return(v: &Word, w: &Word) -> bool {
    v.len() > w.len()
        && v.starts_with(w)
        && v.ends_with(w)
        && (1..v.len() - w.len()).all(|i| v.0[i..i + w.len()] != w.0[..])
}

/// Complete returns `v` to `w`, ordered by first occurrence in the
/// reference stream; any not seen there follow in canonical order.
fn complete_returns(lang: &LanguageApprox, w: &Word) -> Result<(Vec<Word>, usize)> {
    lang.require_member(w)?;
    let window = recurrence_window(lang, w)?;
    let found: BTreeSet<Word> = (w.len() + 1..=window + 1)
        .flat_map(|n| lang.level(n).iter())
        .filter(|v| is_complete_return(v, w))
        .cloned()
        .collect();

    let stream = lang.stream();
    let occ = stream.occurrences(w);
    let mut ordered: Vec<Word> = Vec::with_capacity(found.len());
    for pair in occ.windows(2) {
        let v = stream.factor(pair[0], pair[1] - pair[0] + w.len());
        if !found.contains(&v) {
            return Err(Error::Invariant(format!(
                "stream gap {} is not a return word",
                lang.render(&v)
            )));
        }
        if !ordered.contains(&v) {
            ordered.push(v);
            if ordered.len() == found.len() {
                break;
            }
        }
    }
    for v in &found {
        if !ordered.contains(v) {
            ordered.push(v.clone());
        }
    }
    Ok((ordered, window))
}

/// Left return words: `r` with `rw ∈ L ∩ wA*` and no interior occurrence of `w`.
pub fn return_words(lang: &LanguageApprox, w: &Word) -> Result<ReturnSet> {
    let (complete, window) = complete_returns(lang, w)?;
    Ok(ReturnSet {
        base_word: w.clone(),
        side: Side::Left,
        returns: complete
            .iter()
            .map(|v| v.factor(0, v.len() - w.len()))
            .collect(),
        window,
    })
}

/// Right return words: `r'` with `wr' ∈ L ∩ A*w` and no interior occurrence of `w`.
pub fn right_return_words(lang: &LanguageApprox, w: &Word) -> Result<ReturnSet> {
    let (complete, window) = complete_returns(lang, w)?;
    Ok(ReturnSet {
        base_word: w.clone(),
        side: Side::Right,
        returns: complete
            .iter()
            .map(|v| v.factor(w.len(), v.len() - w.len()))
            .collect(),
        window,
    })
}

/// The derived shift with respect to a word, recoded over fresh letters.
#[derive(Clone, Debug)]
pub struct DerivedSystem {
    pub base_word: Word,
    /// `θ_w`, mapping derived letter `i` to the `i`-th left return word.
    pub theta: Substitution,
    /// `θ'_w`, mapping derived letter `i` to the `i`-th right return word.
    pub right_theta: Substitution,
    pub language: LanguageApprox,
}

impl DerivedSystem {
    pub fn alphabet(&self) -> &Alphabet {
        self.theta.domain()
    }

    pub fn base_alphabet(&self) -> &Alphabet {
        self.theta.codomain()
    }

    /// Derived letter whose return word is `r`.
    pub fn letter_for(&self, r: &Word) -> Option<Letter> {
        self.alphabet()
            .letters()
            .find(|&b| self.theta.image(b) == r)
    }

    /// Lines `r1 = ab`, one per derived letter.
    pub fn theta_table(&self) -> String {
        let mut out = String::new();
        for b in self.alphabet().letters() {
            let _ = writeln!(
                out,
                "{} = {}",
                self.alphabet().name(b),
                self.base_alphabet().render(self.theta.image(b))
            );
        }
        out
    }

    /// `θ_w(z) w`, the base-language witness for a derived word.
    pub fn witness(&self, z: &Word) -> Word {
        self.theta.apply(z).concat(&self.base_word)
    }
}

/// Longest derived length supported by `lang` for base word `w`.
pub fn derived_capacity(lang: &LanguageApprox, w: &Word) -> Result<usize> {
    let returns = return_words(lang, w)?;
    Ok((lang.max_len() - w.len()) / returns.max_len())
}

/// Derived language `{z : θ_w(z)w ∈ L}` up to length `n`.
pub fn derive(lang: &LanguageApprox, w: &Word, n: usize) -> Result<DerivedSystem> {
    let returns = return_words(lang, w)?;
    let right = right_return_words(lang, w)?;
    let needed = n * returns.max_len() + w.len();
    if needed > lang.max_len() {
        return Err(Error::Range(format!(
            "derived length {n} for {} needs max_len ≥ {needed}, have {}",
            lang.render(w),
            lang.max_len()
        )));
    }
    let base = lang.alphabet().clone();
    let derived = Alphabet::numbered("r", returns.len())?;
    let tag = lang.render(w);
    let theta = Substitution::new(
        format!("theta_{tag}"),
        derived.clone(),
        base.clone(),
        returns.returns.clone(),
    )?;
    let right_theta = Substitution::new(
        format!("theta'_{tag}"),
        derived.clone(),
        base,
        right.returns,
    )?;

    let mut levels: Vec<BTreeSet<Word>> = vec![BTreeSet::from([Word::empty()])];
    for _ in 0..n {
        let next: BTreeSet<Word> = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|z| {
                derived.letters().map(move |b| {
                    let mut zb = z.clone();
                    zb.push(b);
                    zb
                })
            })
            .filter(|zb| lang.contains(&theta.apply(zb).concat(w)))
            .collect();
        levels.push(next);
    }

    let stream = decode_stream(lang.stream(), w, &theta);
    let language = LanguageApprox::from_levels(
        derived,
        levels,
        stream,
        Source::Derived {
            parent: lang.source().to_string(),
            base_word: tag,
        },
    )?;
    Ok(DerivedSystem {
        base_word: w.clone(),
        theta,
        right_theta,
        language,
    })
}

/// Recodes the gaps between consecutive occurrences of `w` as derived letters.
fn decode_stream(stream: &Word, w: &Word, theta: &Substitution) -> Word {
    let lookup: HashMap<&[Letter], Letter> = theta
        .domain()
        .letters()
        .map(|b| (&theta.image(b).0[..], b))
        .collect();
    let occ = stream.occurrences(w);
    Word(
        occ.windows(2)
            .map_while(|p| lookup.get(&stream.0[p[0]..p[1]]).copied())
            .collect(),
    )
}

/// Both sides of `θ_w(R_{D_w(X)}(u)) = R_X(θ_w(u)w)`.
#[derive(Clone, Debug)]
pub struct DurandReport {
    pub derived_word: Word,
    pub image_of_derived_returns: BTreeSet<Word>,
    pub base_returns: BTreeSet<Word>,
}

impl DurandReport {
    pub fn holds(&self) -> bool {
        self.image_of_derived_returns == self.base_returns
    }
}

pub fn check_durand(
    lang: &LanguageApprox,
    derived: &DerivedSystem,
    u: &Word,
) -> Result<DurandReport> {
    let derived_returns = return_words(&derived.language, u)?;
    let base_returns = return_words(lang, &derived.witness(u))?;
    Ok(DurandReport {
        derived_word: u.clone(),
        image_of_derived_returns: derived_returns
            .iter()
            .map(|r| derived.theta.apply(r))
            .collect(),
        base_returns: base_returns.as_set(),
    })
}

/// The vertex map from `𝓔_{D_w(X)}(ε)` onto `𝓔_X(w)`.
#[derive(Clone, Debug)]
pub struct ThetaMorphismReport {
    /// Derived left vertex to the last letter of its return word.
    pub left_map: Vec<(Letter, Letter)>,
    /// Derived right vertex to the first letter of its right return word.
    pub right_map: Vec<(Letter, Letter)>,
    pub derived_edges: usize,
    pub target_edges: usize,
}

/// Builds Θ and checks it is a graph morphism onto `𝓔_X(w)`. Any failure is
/// an invariant violation.
pub fn theta_morphism(
    lang: &LanguageApprox,
    derived: &DerivedSystem,
) -> Result<ThetaMorphismReport> {
    let source = extension_graph(&derived.language, &Word::empty())?;
    let target = extension_graph(lang, &derived.base_word)?;
    let left = |r: Letter| derived.theta.image(r).last().unwrap();
    let right = |s: Letter| derived.right_theta.image(s).first().unwrap();
    let render = |l: Letter| lang.alphabet().name(l).to_string();

    for &r in &source.left {
        if !target.left.contains(&left(r)) {
            return Err(Error::Invariant(format!(
                "left vertex {} leaves E(w)",
                render(left(r))
            )));
        }
    }
    for &s in &source.right {
        if !target.right.contains(&right(s)) {
            return Err(Error::Invariant(format!(
                "right vertex {} leaves E(w)",
                render(right(s))
            )));
        }
    }
    let image: BTreeSet<(Letter, Letter)> = source
        .edges
        .iter()
        .map(|&(r, s)| (left(r), right(s)))
        .collect();
    for e in &image {
        if !target.edges.contains(e) {
            return Err(Error::Invariant(format!(
                "edge {}{} is not in E(w)",
                render(e.0),
                render(e.1)
            )));
        }
    }
    let left_image: BTreeSet<Letter> = source.left.iter().map(|&r| left(r)).collect();
    let right_image: BTreeSet<Letter> = source.right.iter().map(|&s| right(s)).collect();
    if left_image.len() != target.left.len() || right_image.len() != target.right.len() {
        return Err(Error::Invariant(
            "Θ is not onto the vertices of E(w)".into(),
        ));
    }
    if image.len() != target.edges.len() {
        return Err(Error::Invariant("Θ is not onto the edges of E(w)".into()));
    }
    Ok(ThetaMorphismReport {
        left_map: source.left.iter().map(|&r| (r, left(r))).collect(),
        right_map: source.right.iter().map(|&s| (s, right(s))).collect(),
        derived_edges: source.edges.len(),
        target_edges: target.edges.len(),
    })
}
