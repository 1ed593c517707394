//! Alphabets, positive words, reduced group words and substitutions.
//!
//! Letters are indices into an [`Alphabet`]; the alphabet carries the display
//! names. The ordering of letters is the ordering of the alphabet, and every
//! canonical ordering downstream (factor sets, reports, DOT output) derives
//! from it.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A letter, identified by its position in an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A nonempty ordered set of named symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) {
                return Err(Error::Input(format!("invalid letter name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("duplicate letter {n:?}")));
            }
        }
        Ok(Self { names })
    }

    /// Single-character letters, in the order given.
    pub fn from_chars(letters: &str) -> Result<Self> {
        Self::new(letters.chars().map(String::from))
    }

    /// Fresh symbols `{prefix}1 .. {prefix}k`.
    pub fn numbered(prefix: &str, k: usize) -> Result<Self> {
        Self::new((1..=k).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        (0..self.names.len() as u32).map(Letter)
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u32))
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// True when every symbol name is a single character, so words can be
    /// written without separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word. Compact alphabets accept `abc`; otherwise letters are
    /// separated by whitespace or `.`. `eps` and `ε` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "eps" || text == "ε" || text.is_empty() {
            return Ok(Word::empty());
        }
        let letters = if self.is_compact() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| self.letter(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split(|c: char| c.is_whitespace() || c == '.')
                .filter(|s| !s.is_empty())
                .map(|s| self.letter(s))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    /// Parses a group word: positive letters, with `^-1` or a trailing `'`
    /// marking an inverse letter (`ab^-1c`, `a b' c`).
    pub fn parse_group_word(&self, text: &str) -> Result<GroupWord> {
        let text = text.trim();
        if text == "eps" || text == "ε" || text.is_empty() {
            return Ok(GroupWord::identity());
        }
        let mut raw = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '.');
            if rest.is_empty() {
                break;
            }
            let name_len = if self.is_compact() {
                rest.chars().next().map_or(0, char::len_utf8)
            } else {
                rest.find(|c: char| c.is_whitespace() || c == '.' || c == '^' || c == '\'')
                    .unwrap_or(rest.len())
            };
            let letter = self.letter(&rest[..name_len])?;
            rest = &rest[name_len..];
            let inverse = if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                true
            } else if let Some(r) = rest.strip_prefix('\'') {
                rest = r;
                true
            } else {
                false
            };
            raw.push(Syllable { letter, inverse });
        }
        GroupWord::reduce(self, raw)
    }

    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "eps".to_string();
        }
        let sep = if self.is_compact() { "" } else { "." };
        word.iter()
            .map(|l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn render_group(&self, word: &GroupWord) -> String {
        if word.is_identity() {
            return "eps".to_string();
        }
        let sep = if self.is_compact() { "" } else { "." };
        word.syllables()
            .iter()
            .map(|s| {
                if s.inverse {
                    format!("{}^-1", self.name(s.letter))
                } else {
                    self.name(s.letter).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(sep)
    }

    fn check(&self, letter: Letter) -> Result<()> {
        if letter.index() < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownLetter(format!("#{}", letter.0)))
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

/// A finite, possibly empty, sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Every position `i` with `self[i..i + |w|] == w`, overlapping occurrences included.
    pub fn occurrences(&self, w: &Word) -> Vec<usize> {
        if w.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - w.len())
            .filter(|&i| self.0[i..i + w.len()] == w.0[..])
            .collect()
    }

    pub fn contains_factor(&self, w: &Word) -> bool {
        w.is_empty() || self.0.windows(w.len()).any(|x| x == &w.0[..])
    }

    pub fn to_group(&self) -> GroupWord {
        GroupWord(
            self.iter()
                .map(|letter| Syllable {
                    letter,
                    inverse: false,
                })
                .collect(),
        )
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// A letter or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub letter: Letter,
    pub inverse: bool,
}

impl Syllable {
    pub fn pos(letter: Letter) -> Self {
        Self {
            letter,
            inverse: false,
        }
    }

    pub fn neg(letter: Letter) -> Self {
        Self {
            letter,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Self {
            letter: self.letter,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Syllable) -> bool {
        self.letter == other.letter && self.inverse != other.inverse
    }
}

/// An element of the free group, always stored freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(Vec<Syllable>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(letter: Letter) -> Self {
        GroupWord(vec![Syllable::pos(letter)])
    }

    /// Free reduction of an arbitrary syllable sequence, validating letters
    /// against `alphabet`.
    pub fn reduce(alphabet: &Alphabet, raw: impl IntoIterator<Item = Syllable>) -> Result<Self> {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            alphabet.check(s.letter)?;
            push_reduced(&mut out, s);
        }
        Ok(GroupWord(out))
    }

    /// Free reduction without alphabet validation.
    pub fn from_syllables(raw: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out = Vec::new();
        for s in raw {
            push_reduced(&mut out, s);
        }
        GroupWord(out)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|s| s.inverted()).collect())
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.0.clone();
        for &s in &other.0 {
            push_reduced(&mut out, s);
        }
        GroupWord(out)
    }

    pub fn push(&mut self, s: Syllable) {
        push_reduced(&mut self.0, s);
    }

    /// The positive word, if no syllable is inverted.
    pub fn to_positive(&self) -> Option<Word> {
        self.0
            .iter()
            .map(|s| (!s.inverse).then_some(s.letter))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

fn push_reduced(out: &mut Vec<Syllable>, s: Syllable) {
    if out.last().is_some_and(|&t| t.cancels(s)) {
        out.pop();
    } else {
        out.push(s);
    }
}

impl From<&Word> for GroupWord {
    fn from(w: &Word) -> Self {
        w.to_group()
    }
}

/// A monoid morphism from `domain*` to `codomain*` with nonempty images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    name: String,
    domain: Alphabet,
    codomain: Alphabet,
    rules: Vec<Word>,
}

impl Substitution {
    pub fn new(
        name: impl Into<String>,
        domain: Alphabet,
        codomain: Alphabet,
        rules: Vec<Word>,
    ) -> Result<Self> {
        if rules.len() != domain.len() {
            return Err(Error::Input(format!(
                "{} rules for an alphabet of {} letters",
                rules.len(),
                domain.len()
            )));
        }
        for (i, r) in rules.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::Input(format!(
                    "empty image for letter {}",
                    domain.names[i]
                )));
            }
            for l in r.iter() {
                codomain.check(l)?;
            }
        }
        Ok(Self {
            name: name.into(),
            domain,
            codomain,
            rules,
        })
    }

    /// An endomorphism of `alphabet*`.
    pub fn endomorphism(
        name: impl Into<String>,
        alphabet: Alphabet,
        rules: Vec<Word>,
    ) -> Result<Self> {
        Self::new(name, alphabet.clone(), alphabet, rules)
    }

    /// Builds an endomorphism over single-character letters from `(letter, image)` pairs.
    pub fn from_rules(name: &str, rules: &[(char, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(rules.iter().map(|(c, _)| c.to_string()))?;
        let images = rules
            .iter()
            .map(|(_, img)| alphabet.parse_word(img))
            .collect::<Result<Vec<_>>>()?;
        Self::endomorphism(name, alphabet, images)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let rules = alphabet.letters().map(|l| Word(vec![l])).collect();
        Self {
            name: "id".into(),
            domain: alphabet.clone(),
            codomain: alphabet.clone(),
            rules,
        }
    }

    /// Parses the `x -> w` text format. The alphabet is the set of
    /// left-hand sides, in order of appearance.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut lhs: Vec<char> = Vec::new();
        let mut rhs: Vec<(usize, Vec<char>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse {
                line: lineno + 1,
                message: msg.to_string(),
            };
            let (left, right) = line
                .split_once("->")
                .ok_or_else(|| parse_err("expected `x -> w`"))?;
            let mut left_chars = left.trim().chars();
            let letter = match (left_chars.next(), left_chars.next()) {
                (Some(c), None) => c,
                _ => return Err(parse_err("left-hand side must be a single character")),
            };
            if lhs.contains(&letter) {
                return Err(parse_err(&format!("duplicate rule for {letter}")));
            }
            let image: Vec<char> = right.chars().filter(|c| !c.is_whitespace()).collect();
            if image.is_empty() {
                return Err(parse_err("right-hand side must be nonempty"));
            }
            lhs.push(letter);
            rhs.push((lineno + 1, image));
        }
        if lhs.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no rules".into(),
            });
        }
        let alphabet = Alphabet::new(lhs.iter().map(|c| c.to_string()))?;
        let mut rules = Vec::with_capacity(lhs.len());
        for (line, image) in rhs {
            let word = image
                .iter()
                .map(|&c| {
                    alphabet
                        .letter(c.encode_utf8(&mut [0; 4]))
                        .map_err(|_| Error::Parse {
                            line,
                            message: format!("letter {c} has no rule"),
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            rules.push(Word(word));
        }
        Self::endomorphism(name, alphabet, rules)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.rules[letter.index()]
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len() * 2);
        for l in w.iter() {
            out.extend_from_slice(&self.rules[l.index()].0);
        }
        Word(out)
    }

    /// Checked variant of [`apply`](Self::apply) for words of unknown provenance.
    pub fn try_apply(&self, w: &Word) -> Result<Word> {
        for l in w.iter() {
            self.domain.check(l).map_err(|_| Error::AlphabetMismatch)?;
        }
        Ok(self.apply(w))
    }

    /// Image under the group morphism extending the substitution.
    pub fn apply_group(&self, g: &GroupWord) -> GroupWord {
        let mut out = GroupWord::identity();
        for s in g.syllables() {
            let img = &self.rules[s.letter.index()];
            if s.inverse {
                for l in img.iter().rev() {
                    out.push(Syllable::neg(l));
                }
            } else {
                for l in img.iter() {
                    out.push(Syllable::pos(l));
                }
            }
        }
        out
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Substitution) -> Result<Substitution> {
        if inner.codomain != self.domain {
            return Err(Error::AlphabetMismatch);
        }
        let rules = inner.rules.iter().map(|r| self.apply(r)).collect();
        Ok(Substitution {
            name: format!("{}∘{}", self.name, inner.name),
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            rules,
        })
    }

    pub fn power(&self, k: usize) -> Result<Substitution> {
        if !self.is_endomorphism() {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = Substitution::identity(&self.domain);
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out.with_name(format!("{}^{k}", self.name)))
    }

    /// Occurrence matrix powers up to the Wielandt bound `(k-1)^2 + 1`.
    pub fn is_primitive(&self) -> bool {
        self.primitivity_exponent().is_some()
    }

    /// Smallest `p` such that every letter occurs in every `σ^p(a)`.
    pub fn primitivity_exponent(&self) -> Option<usize> {
        if !self.is_endomorphism() {
            return None;
        }
        let k = self.domain.len();
        let bound = (k - 1) * (k - 1) + 1;
        let direct: Vec<Vec<bool>> = self
            .rules
            .iter()
            .map(|img| {
                let mut row = vec![false; k];
                for l in img.iter() {
                    row[l.index()] = true;
                }
                row
            })
            .collect();
        let mut reach = direct.clone();
        for p in 1..=bound {
            if reach.iter().all(|row| row.iter().all(|&x| x)) {
                return Some(p);
            }
            reach = reach
                .iter()
                .map(|row| {
                    let mut next = vec![false; k];
                    for (j, _) in row.iter().enumerate().filter(|(_, &x)| x) {
                        for (t, &y) in direct[j].iter().enumerate() {
                            next[t] |= y;
                        }
                    }
                    next
                })
                .collect();
        }
        None
    }

    /// Text form, one `x -> w` per line. Only for single-character alphabets.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in self.domain.letters() {
            s.push_str(&format!(
                "{} -> {}\n",
                self.domain.name(l),
                self.codomain.render(self.image(l))
            ));
        }
        s
    }
}

/// Maps between two alphabets by symbol name, when both contain the name.
pub fn letter_map(from: &Alphabet, to: &Alphabet) -> HashMap<Letter, Letter> {
    from.letters()
        .filter_map(|l| to.letter(from.name(l)).ok().map(|t| (l, t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::from_chars("abc").unwrap()
    }

    fn tribonacci() -> Substitution {
        Substitution::from_rules("tribonacci", &[('a', "ab"), ('b', "ac"), ('c', "a")]).unwrap()
    }

    fn gw(a: &Alphabet, s: &str) -> GroupWord {
        a.parse_group_word(s).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_pair() {
        let a = abc();
        assert_eq!(gw(&a, "abb^-1c"), gw(&a, "ac"));
        assert_eq!(gw(&a, "eps"), GroupWord::identity());
    }

    #[test]
    fn reduce_inverse_product() {
        let a = abc();
        let ab = gw(&a, "ab");
        let aba = gw(&a, "aba");
        assert_eq!(ab.inverse().mul(&aba), gw(&a, "a"));
    }

    #[test]
    fn reduce_rejects_unknown_letter() {
        let a = abc();
        let bad = [Syllable::pos(Letter(7))];
        assert!(matches!(
            GroupWord::reduce(&a, bad),
            Err(Error::UnknownLetter(_))
        ));
        assert!(a.parse_word("abd").is_err());
    }

    #[test]
    fn apply_tribonacci() {
        let s = tribonacci();
        let a = s.domain().clone();
        assert_eq!(a.render(&s.apply(&a.parse_word("a").unwrap())), "ab");
        assert_eq!(s.apply(&Word::empty()), Word::empty());
        let s2 = s.power(2).unwrap();
        assert_eq!(a.render(&s2.apply(&a.parse_word("a").unwrap())), "abac");
    }

    #[test]
    fn apply_group_examples() {
        let s = tribonacci();
        let a = s.domain().clone();
        assert_eq!(s.apply_group(&gw(&a, "a^-1")), gw(&a, "b^-1a^-1"));
        assert_eq!(s.apply_group(&gw(&a, "aa^-1")), GroupWord::identity());
        assert_eq!(s.apply_group(&gw(&a, "b^-1a")), gw(&a, "c^-1b"));
    }

    #[test]
    fn compose_examples() {
        let s = tribonacci();
        let id = Substitution::identity(s.domain());
        assert_eq!(s.compose(&id).unwrap().rules(), s.rules());

        let alpha = Substitution::from_rules("alpha", &[('a', "ab"), ('b', "b")]).unwrap();
        let aa = alpha.compose(&alpha).unwrap();
        let ab = alpha.domain().clone();
        assert_eq!(ab.render(aa.image(Letter(0))), "abb");
        assert_eq!(ab.render(aa.image(Letter(1))), "b");

        let s2 = s.compose(&s).unwrap();
        let a = s.domain();
        let rendered: Vec<_> = a.letters().map(|l| a.render(s2.image(l))).collect();
        assert_eq!(rendered, ["abac", "aba", "ab"]);
    }

    #[test]
    fn compose_alphabet_mismatch() {
        let s = tribonacci();
        let fib = Substitution::from_rules("fib", &[('a', "ab"), ('b', "a")]).unwrap();
        assert!(matches!(s.compose(&fib), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn primitivity() {
        assert!(tribonacci().is_primitive());
        let fib = Substitution::from_rules("fib", &[('a', "ab"), ('b', "a")]).unwrap();
        assert!(fib.is_primitive());
        let split = Substitution::from_rules("split", &[('a', "aa"), ('b', "bb")]).unwrap();
        assert!(!split.is_primitive());
        // σ²(b) = aba misses c; σ³ of every letter contains a, b and c
        assert_eq!(tribonacci().primitivity_exponent(), Some(3));
    }

    #[test]
    fn parse_text_format() {
        let s = Substitution::parse("t", "# tribonacci\na -> ab\n\nb -> ac  # comment\nc -> a\n")
            .unwrap();
        assert_eq!(s.rules(), tribonacci().rules());
        assert_eq!(s.domain().names(), ["a", "b", "c"]);
        assert_eq!(s.to_text(), "a -> ab\nb -> ac\nc -> a\n");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Substitution::parse("t", "a -> ab\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Substitution::parse("t", "a -> a\nb ->\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Substitution::parse("t", "ab -> a\n").is_err());
        assert!(Substitution::parse("t", "# nothing\n").is_err());
    }

    #[test]
    fn group_word_parsing_and_rendering() {
        let a = abc();
        let g = gw(&a, "a b' c");
        assert_eq!(a.render_group(&g), "ab^-1c");
        let b = Alphabet::numbered("r", 3).unwrap();
        let h = b.parse_group_word("r1^-1.r2").unwrap();
        assert_eq!(b.render_group(&h), "r1^-1.r2");
    }
}
