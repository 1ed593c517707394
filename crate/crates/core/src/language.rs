//! Finite approximations of the language of a minimal shift space.
//!
//! A [`LanguageApprox`] holds every factor of length at most `max_len`,
//! grouped by length and sorted lexicographically inside each level. Every
//! question asked of it (extensions, return words, Rauzy graphs) is refused
//! with a range error when the answer could depend on longer factors.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::sweep;
use crate::words::{Alphabet, Letter, Substitution, Word};

/// Where a language approximation came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Substitution(String),
    /// Decoded along return words to `base_word` in `parent`.
    Derived {
        parent: String,
        base_word: String,
    },
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Substitution(name) => write!(f, "{name}"),
            Source::Derived { parent, base_word } => write!(f, "D_{base_word}({parent})"),
        }
    }
}

/// `L(X) ∩ A^{≤n}` for a minimal shift space `X`.
#[derive(Clone, Debug)]
pub struct LanguageApprox {
    alphabet: Alphabet,
    levels: Vec<BTreeSet<Word>>,
    stream: Word,
    source: Source,
}

impl LanguageApprox {
    /// Builds an approximation from explicit levels and checks factor
    /// closure and two-sided prolongability.
    ///
    /// `stream` is a prefix of a one-sided sequence of the shift; it fixes
    /// the first-occurrence order of return words.
    pub fn from_levels(
        alphabet: Alphabet,
        levels: Vec<BTreeSet<Word>>,
        stream: Word,
        source: Source,
    ) -> Result<Self> {
        let lang = Self {
            alphabet,
            levels,
            stream,
            source,
        };
        lang.validate()?;
        Ok(lang)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn stream(&self) -> &Word {
        &self.stream
    }

    /// Factors of length exactly `n`, in lexicographic order.
    pub fn level(&self, n: usize) -> &BTreeSet<Word> {
        &self.levels[n]
    }

    /// All factors in (length, lexicographic) order.
    pub fn factors(&self) -> impl Iterator<Item = &Word> + '_ {
        self.levels.iter().flatten()
    }

    /// Factors with length at most `n`, in canonical order.
    pub fn factors_up_to(&self, n: usize) -> impl Iterator<Item = &Word> + '_ {
        self.levels.iter().take(n + 1).flatten()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.levels.get(w.len()).is_some_and(|l| l.contains(w))
    }

    pub fn count(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    /// The same language cut down to length `m ≤ max_len`.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.max_len() {
            return Err(Error::Range(format!(
                "cannot extend a length-{} approximation to {m}",
                self.max_len()
            )));
        }
        Ok(Self {
            alphabet: self.alphabet.clone(),
            levels: self.levels[..=m].to_vec(),
            stream: self.stream.clone(),
            source: self.source.clone(),
        })
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    /// Factor closure, and every word shorter than `max_len` extends by one
    /// letter on each side.
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty()
            || self.levels[0].len() != 1
            || !self.levels[0].contains(&Word::empty())
        {
            return Err(Error::Invariant("level 0 must be exactly {ε}".into()));
        }
        for (n, level) in self.levels.iter().enumerate().skip(1) {
            for w in level {
                if w.len() != n {
                    return Err(Error::Invariant(format!(
                        "word of length {} stored at level {n}",
                        w.len()
                    )));
                }
                let prefix = w.factor(0, n - 1);
                let suffix = w.factor(1, n - 1);
                if !self.levels[n - 1].contains(&prefix) || !self.levels[n - 1].contains(&suffix) {
                    return Err(Error::Invariant(format!(
                        "{} has a factor outside the language",
                        self.render(w)
                    )));
                }
            }
        }
        for n in 0..self.max_len() {
            let longer = &self.levels[n + 1];
            let right: HashSet<&[Letter]> = longer.iter().map(|w| &w.0[..n]).collect();
            let left: HashSet<&[Letter]> = longer.iter().map(|w| &w.0[1..]).collect();
            for w in &self.levels[n] {
                if !right.contains(&w.0[..]) || !left.contains(&w.0[..]) {
                    return Err(Error::Invariant(format!(
                        "{} is not bi-extendable",
                        self.render(w)
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn require_member(&self, w: &Word) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::NotInLanguage(self.render(w)))
        }
    }
}

/// Generates `L(X) ∩ A^{≤n}` for the shift of a primitive substitution.
///
/// Length-2 factors are the least set closed under "length-2 factors of
/// `σ(x)σ(y)`". Once every `σ^k(b)` has length at least `n - 1`, each factor
/// of length at most `n` lies inside some `σ^k(xy)` with `xy` a length-2
/// factor, so the result is exact.
pub fn generate_language(s: &Substitution, n: usize) -> Result<LanguageApprox> {
    if !s.is_endomorphism() {
        return Err(Error::AlphabetMismatch);
    }
    if !s.is_primitive() {
        return Err(Error::NotPrimitive(s.name().to_string()));
    }
    let alphabet = s.domain().clone();
    if alphabet.len() == 1 && s.image(Letter(0)).len() == 1 {
        return Err(Error::Input(format!(
            "{} is the identity on one letter",
            s.name()
        )));
    }

    let pairs = length_two_factors(s);
    let mut power = Substitution::identity(&alphabet);
    while n >= 2 && alphabet.letters().any(|l| power.image(l).len() + 1 < n) {
        power = s.compose(&power)?;
    }
    let images: Vec<Word> = if n >= 2 {
        pairs.iter().map(|p| power.apply(p)).collect()
    } else {
        alphabet.letters().map(|l| Word(vec![l])).collect()
    };

    let mut seen: Vec<HashSet<&[Letter]>> = vec![HashSet::new(); n + 1];
    seen[0].insert(&[]);
    for img in &images {
        for start in 0..img.len() {
            let longest = n.min(img.len() - start);
            for (len, level) in seen.iter_mut().enumerate().take(longest + 1).skip(1) {
                level.insert(&img.0[start..start + len]);
            }
        }
    }
    let levels: Vec<BTreeSet<Word>> = seen
        .into_iter()
        .map(|level| level.into_iter().map(|x| Word(x.to_vec())).collect())
        .collect();

    let stream = reference_stream(s, &levels[n])?;
    LanguageApprox::from_levels(
        alphabet,
        levels,
        stream,
        Source::Substitution(s.name().to_string()),
    )
}

fn length_two_factors(s: &Substitution) -> BTreeSet<Word> {
    let mut found: BTreeSet<Word> = BTreeSet::new();
    for l in s.domain().letters() {
        for w in s.image(l).0.windows(2) {
            found.insert(Word(w.to_vec()));
        }
    }
    loop {
        let mut added = Vec::new();
        for p in &found {
            let (x, y) = (p.0[0], p.0[1]);
            let junction = Word(vec![
                s.image(x).last().unwrap(),
                s.image(y).first().unwrap(),
            ]);
            if !found.contains(&junction) {
                added.push(junction);
            }
        }
        if added.is_empty() {
            return found;
        }
        found.extend(added);
    }
}

/// Prefix of a one-sided fixed point of a power of `s`, long enough that
/// every word of `top_level` occurs in it.
fn reference_stream(s: &Substitution, top_level: &BTreeSet<Word>) -> Result<Word> {
    let alphabet = s.domain();
    let first_letter = |l: Letter| s.image(l).first().unwrap();
    // smallest letter lying on a cycle of the first-letter map
    let start = alphabet
        .letters()
        .find(|&l| {
            let mut x = first_letter(l);
            for _ in 0..alphabet.len() {
                if x == l {
                    return true;
                }
                x = first_letter(x);
            }
            false
        })
        .expect("the first-letter map of a finite alphabet has a cycle");
    let mut period = 1;
    let mut x = first_letter(start);
    while x != start {
        x = first_letter(x);
        period += 1;
    }
    let tau = s.power(period)?;
    let n = top_level.iter().next().map_or(0, Word::len);
    let mut stream = Word(vec![start]);
    loop {
        if n <= stream.len() {
            let windows: HashSet<&[Letter]> = stream.0.windows(n.max(1)).collect();
            if n == 0 || top_level.iter().all(|w| windows.contains(&w.0[..])) {
                return Ok(stream);
            }
        }
        let next = tau.apply(&stream);
        if next.len() <= stream.len() {
            return Err(Error::Invariant("reference stream stopped growing".into()));
        }
        stream = next;
    }
}

/// The bipartite graph of two-sided extensions of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGraph {
    pub word: Word,
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub edges: Vec<(Letter, Letter)>,
}

/// Sign of the multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    Strong,
    Neutral,
    Weak,
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strength::Strong => "strong",
            Strength::Neutral => "neutral",
            Strength::Weak => "weak",
        })
    }
}

impl ExtensionGraph {
    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// No extensions at all; the word is not bi-extendable.
    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let left_index = |a: Letter| self.left.binary_search(&a).unwrap();
        let right_index = |b: Letter| self.left.len() + self.right.binary_search(&b).unwrap();
        let mut uf = UnionFind::<usize>::new(self.vertex_count());
        let mut components = self.vertex_count();
        for &(a, b) in &self.edges {
            if uf.union(left_index(a), right_index(b)) {
                components -= 1;
            }
        }
        components == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertex_count()
    }

    /// `#E - #E⁻ - #E⁺ + 1`.
    pub fn multiplicity(&self) -> i64 {
        self.edges.len() as i64 - self.left.len() as i64 - self.right.len() as i64 + 1
    }

    pub fn strength(&self) -> Strength {
        match self.multiplicity() {
            m if m > 0 => Strength::Strong,
            0 => Strength::Neutral,
            _ => Strength::Weak,
        }
    }

    /// Undirected DOT; left vertices `L_x`, right vertices `R_x`.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("graph \"{}\" {{\n", alphabet.render(&self.word));
        for &a in &self.left {
            out.push_str(&format!(
                "  L_{} [label=\"{}\"];\n",
                alphabet.name(a),
                alphabet.name(a)
            ));
        }
        for &b in &self.right {
            out.push_str(&format!(
                "  R_{} [label=\"{}\"];\n",
                alphabet.name(b),
                alphabet.name(b)
            ));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "  L_{} -- R_{};\n",
                alphabet.name(a),
                alphabet.name(b)
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn extension_graph(lang: &LanguageApprox, w: &Word) -> Result<ExtensionGraph> {
    if w.len() + 2 > lang.max_len() {
        return Err(Error::Range(format!(
            "extension graph of a length-{} word needs max_len ≥ {}, have {}",
            w.len(),
            w.len() + 2,
            lang.max_len()
        )));
    }
    lang.require_member(w)?;
    let alphabet = lang.alphabet();
    let extend = |a: Option<Letter>, b: Option<Letter>| {
        let mut v = Vec::with_capacity(w.len() + 2);
        v.extend(a);
        v.extend_from_slice(&w.0);
        v.extend(b);
        lang.contains(&Word(v))
    };
    let left: Vec<Letter> = alphabet
        .letters()
        .filter(|&a| extend(Some(a), None))
        .collect();
    let right: Vec<Letter> = alphabet
        .letters()
        .filter(|&b| extend(None, Some(b)))
        .collect();
    let mut edges = Vec::new();
    for &a in &left {
        for &b in &right {
            if extend(Some(a), Some(b)) {
                edges.push((a, b));
            }
        }
    }
    Ok(ExtensionGraph {
        word: w.clone(),
        left,
        right,
        edges,
    })
}

/// Factor complexity and its first two differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complexity {
    /// `p(n)` for `0 ≤ n ≤ max_len`.
    pub p: Vec<usize>,
    /// `s(n) = p(n+1) - p(n)` for `0 ≤ n < max_len`.
    pub s: Vec<i64>,
    /// `b(n) = s(n+1) - s(n)` for `0 ≤ n < max_len - 1`.
    pub b: Vec<i64>,
}

pub fn complexity(lang: &LanguageApprox) -> Complexity {
    let p: Vec<usize> = (0..=lang.max_len()).map(|n| lang.count(n)).collect();
    let s: Vec<i64> = p.windows(2).map(|x| x[1] as i64 - x[0] as i64).collect();
    let b: Vec<i64> = s.windows(2).map(|x| x[1] - x[0]).collect();
    Complexity { p, s, b }
}

/// Both sides of the bilateral-order identity at one length.
#[derive(Clone, Debug)]
pub struct BilateralReport {
    pub n: usize,
    pub b: i64,
    pub terms: Vec<(Word, i64)>,
    pub sum: i64,
}

impl BilateralReport {
    pub fn holds(&self) -> bool {
        self.b == self.sum
    }
}

/// Checks `b(n) = Σ_{w ∈ L_n} m(w)`.
pub fn check_bilateral_sum(lang: &LanguageApprox, n: usize) -> Result<BilateralReport> {
    if n + 2 > lang.max_len() {
        return Err(Error::Range(format!(
            "need max_len ≥ {}, have {}",
            n + 2,
            lang.max_len()
        )));
    }
    let b = lang.count(n + 2) as i64 - 2 * lang.count(n + 1) as i64 + lang.count(n) as i64;
    let words: Vec<&Word> = lang.level(n).iter().collect();
    let terms = sweep::map(&words, |w| {
        extension_graph(lang, w).map(|g| ((*w).clone(), g.multiplicity()))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let sum = terms.iter().map(|(_, m)| m).sum();
    Ok(BilateralReport { n, b, terms, sum })
}

#[derive(Clone, Debug)]
pub struct DendricRow {
    pub graph: ExtensionGraph,
    pub connected: bool,
    pub tree: bool,
    pub multiplicity: i64,
}

#[derive(Clone, Debug)]
pub struct DendricReport {
    pub up_to: usize,
    pub rows: Vec<DendricRow>,
}

impl DendricReport {
    pub fn is_dendric(&self) -> bool {
        self.rows.iter().all(|r| r.tree)
    }

    /// Shortest non-tree word, lexicographically first among equals.
    pub fn first_non_tree(&self) -> Option<&DendricRow> {
        self.rows.iter().find(|r| !r.tree)
    }
}

/// Extension-graph table for every factor of length at most `up_to`.
pub fn dendric_report(lang: &LanguageApprox, up_to: usize) -> Result<DendricReport> {
    if up_to + 2 > lang.max_len() {
        return Err(Error::Range(format!(
            "need max_len ≥ {}, have {}",
            up_to + 2,
            lang.max_len()
        )));
    }
    let words: Vec<&Word> = lang.factors_up_to(up_to).collect();
    let rows = sweep::map(&words, |w| {
        extension_graph(lang, w).map(|graph| DendricRow {
            connected: graph.is_connected(),
            tree: graph.is_tree(),
            multiplicity: graph.multiplicity(),
            graph,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(DendricReport { up_to, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    fn render_level(lang: &LanguageApprox, n: usize) -> Vec<String> {
        lang.level(n).iter().map(|w| lang.render(w)).collect()
    }

    fn letters(lang: &LanguageApprox, ls: &[Letter]) -> String {
        ls.iter().map(|&l| lang.alphabet().name(l)).collect()
    }

    #[test]
    fn tribonacci_short_factors() {
        let lang = generate_language(&systems::tribonacci(), 2).unwrap();
        assert_eq!(render_level(&lang, 0), ["eps"]);
        assert_eq!(render_level(&lang, 1), ["a", "b", "c"]);
        assert_eq!(render_level(&lang, 2), ["aa", "ab", "ac", "ba", "ca"]);
    }

    #[test]
    fn fibonacci_short_factors() {
        let lang = generate_language(&systems::fibonacci(), 2).unwrap();
        assert_eq!(render_level(&lang, 2), ["aa", "ab", "ba"]);
    }

    #[test]
    fn rejects_non_primitive() {
        let s = Substitution::from_rules("split", &[('a', "aa"), ('b', "bb")]).unwrap();
        assert!(matches!(
            generate_language(&s, 3),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn single_letter_lengths() {
        for s in [
            systems::tribonacci(),
            systems::fibonacci(),
            systems::thue_morse(),
        ] {
            let lang = generate_language(&s, 1).unwrap();
            assert_eq!(lang.count(1), s.domain().len());
        }
    }

    #[test]
    fn tribonacci_extension_graph_of_a() {
        let lang = generate_language(&systems::tribonacci(), 5).unwrap();
        let g = extension_graph(&lang, &lang.parse_word("a").unwrap()).unwrap();
        assert_eq!(letters(&lang, &g.left), "abc");
        assert_eq!(letters(&lang, &g.right), "abc");
        let edges: Vec<String> = g
            .edges
            .iter()
            .map(|&(x, y)| letters(&lang, &[x, y]))
            .collect();
        assert_eq!(edges, ["ab", "ba", "bb", "bc", "cb"]);
        assert!(g.is_tree());
        assert_eq!(g.multiplicity(), 0);
        assert_eq!(g.strength(), Strength::Neutral);
    }

    #[test]
    fn thue_morse_empty_word_is_complete_bipartite() {
        let lang = generate_language(&systems::thue_morse(), 4).unwrap();
        let g = extension_graph(&lang, &Word::empty()).unwrap();
        assert_eq!(g.edges.len(), 4);
        assert!(g.is_connected());
        assert!(!g.is_tree());
        assert_eq!(g.multiplicity(), 1);
        assert_eq!(g.strength(), Strength::Strong);
    }

    #[test]
    fn fibonacci_b_has_single_extension() {
        let lang = generate_language(&systems::fibonacci(), 4).unwrap();
        let g = extension_graph(&lang, &lang.parse_word("b").unwrap()).unwrap();
        assert_eq!(letters(&lang, &g.left), "a");
        assert_eq!(letters(&lang, &g.right), "a");
        assert_eq!(g.edges.len(), 1);
        assert!(g.is_tree());
    }

    #[test]
    fn extension_graph_range_and_membership_errors() {
        let lang = generate_language(&systems::fibonacci(), 4).unwrap();
        assert!(matches!(
            extension_graph(&lang, &lang.parse_word("aba").unwrap()),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            extension_graph(&lang, &lang.parse_word("bb").unwrap()),
            Err(Error::NotInLanguage(_))
        ));
    }

    #[test]
    fn empty_graph_is_not_connected() {
        let g = ExtensionGraph {
            word: Word::empty(),
            left: vec![],
            right: vec![],
            edges: vec![],
        };
        assert!(g.is_empty());
        assert!(!g.is_connected());
        assert!(!g.is_tree());
    }

    #[test]
    fn single_edge_is_tree() {
        let g = ExtensionGraph {
            word: Word::empty(),
            left: vec![Letter(0)],
            right: vec![Letter(1)],
            edges: vec![(Letter(0), Letter(1))],
        };
        assert!(g.is_tree());
        assert_eq!(g.multiplicity(), 0);
    }

    #[test]
    fn complexity_laws() {
        let trib = complexity(&generate_language(&systems::tribonacci(), 12).unwrap());
        assert_eq!(trib.p[0], 1);
        for n in 1..=12 {
            assert_eq!(trib.p[n], 2 * n + 1);
        }
        let fib = complexity(&generate_language(&systems::fibonacci(), 12).unwrap());
        for n in 0..=12 {
            assert_eq!(fib.p[n], n + 1);
        }
    }

    #[test]
    fn bilateral_sum_tribonacci_all_neutral() {
        let lang = generate_language(&systems::tribonacci(), 10).unwrap();
        for n in 1..=6 {
            let r = check_bilateral_sum(&lang, n).unwrap();
            assert!(r.holds());
            assert!(r.terms.iter().all(|(_, m)| *m == 0));
        }
        assert!(matches!(
            check_bilateral_sum(&lang, 9),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn bilateral_sum_at_zero_is_single_term() {
        let lang = generate_language(&systems::thue_morse(), 4).unwrap();
        let r = check_bilateral_sum(&lang, 0).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.b, r.terms[0].1);
    }

    #[test]
    fn bilateral_sum_thue_morse_mixed_terms() {
        let lang = generate_language(&systems::thue_morse(), 6).unwrap();
        let r = check_bilateral_sum(&lang, 2).unwrap();
        assert!(r.holds());
        // p = 1,2,4,6,10: b(2) = 10 - 12 + 4 = 2, carried by ab and ba
        assert_eq!(r.b, 2);
        let strong: Vec<String> = r
            .terms
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(w, _)| lang.render(w))
            .collect();
        assert_eq!(strong, ["ab", "ba"]);
        // weak words first appear at length 3: aba and bab
        let r = check_bilateral_sum(&lang, 3).unwrap();
        assert!(r.holds());
        assert_eq!(r.b, -2);
        let weak: Vec<String> = r
            .terms
            .iter()
            .filter(|(_, m)| *m < 0)
            .map(|(w, _)| lang.render(w))
            .collect();
        assert_eq!(weak, ["aba", "bab"]);
    }

    #[test]
    fn dendric_reports() {
        let trib = generate_language(&systems::tribonacci(), 8).unwrap();
        assert!(dendric_report(&trib, 6).unwrap().is_dendric());
        let fib = generate_language(&systems::fibonacci(), 8).unwrap();
        assert!(dendric_report(&fib, 6).unwrap().is_dendric());
        let tm = generate_language(&systems::thue_morse(), 4).unwrap();
        let report = dendric_report(&tm, 2).unwrap();
        assert!(!report.is_dendric());
        assert!(report.first_non_tree().unwrap().graph.word.is_empty());
    }

    #[test]
    fn stream_contains_top_level() {
        let lang = generate_language(&systems::tribonacci(), 9).unwrap();
        for w in lang.level(9) {
            assert!(lang.stream().contains_factor(w));
        }
        assert!(lang
            .stream()
            .starts_with(&lang.parse_word("abacaba").unwrap()));
    }

    #[test]
    fn truncation_matches_direct_generation() {
        let long = generate_language(&systems::thue_morse(), 9).unwrap();
        let short = generate_language(&systems::thue_morse(), 5).unwrap();
        let cut = long.truncate(5).unwrap();
        assert!(cut.factors().eq(short.factors()));
    }

    #[test]
    fn extension_dot_format() {
        let lang = generate_language(&systems::fibonacci(), 4).unwrap();
        let g = extension_graph(&lang, &lang.parse_word("b").unwrap()).unwrap();
        assert_eq!(
            g.to_dot(lang.alphabet()),
            "graph \"b\" {\n  L_a [label=\"a\"];\n  R_a [label=\"a\"];\n  L_a -- R_a;\n}\n"
        );
        let g = extension_graph(&lang, &Word::empty()).unwrap();
        assert!(g.to_dot(lang.alphabet()).starts_with("graph \"eps\" {"));
    }
}
