//! Rauzy graphs, Rauzy groups and the return-set connectivity criterion.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::freegroup::{
    generates_free_group, is_free_family, stallings, subgroup_equals, StallingsGraph,
};
use crate::language::{extension_graph, LanguageApprox};
use crate::returns::{derive, derived_capacity, return_words, DerivedSystem};
use crate::words::{Alphabet, GroupWord, Letter, Syllable, Word};

/// Edge `u -a-> v` whenever `ub = av` is a factor of length `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyEdge {
    pub src: usize,
    pub label: Letter,
    pub dst: usize,
}

#[derive(Clone, Debug)]
pub struct RauzyGraph {
    pub order: usize,
    pub vertices: Vec<Word>,
    pub edges: Vec<RauzyEdge>,
}

pub fn rauzy_graph(lang: &LanguageApprox, m: usize) -> Result<RauzyGraph> {
    if m + 1 > lang.max_len() {
        return Err(Error::Range(format!(
            "Rauzy graph of order {m} needs max_len ≥ {}, have {}",
            m + 1,
            lang.max_len()
        )));
    }
    let vertices: Vec<Word> = lang.level(m).iter().cloned().collect();
    let index = |w: &Word| vertices.binary_search(w).expect("factor closure");
    let edges = lang
        .level(m + 1)
        .iter()
        .map(|x| RauzyEdge {
            src: index(&x.factor(0, m)),
            label: x.first().unwrap(),
            dst: index(&x.factor(1, m)),
        })
        .collect();
    Ok(RauzyGraph {
        order: m,
        vertices,
        edges,
    })
}

impl RauzyGraph {
    pub fn vertex(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    /// Label of a path given as edge indices.
    pub fn path_label(&self, path: &[usize]) -> Word {
        Word(path.iter().map(|&e| self.edges[e].label).collect())
    }

    /// Breadth-first spanning tree of the underlying undirected graph,
    /// lexicographic tie-breaking. Returns, per vertex, the label of the
    /// tree path from `base` (None outside the component of `base`), and the
    /// tree edges.
    fn spanning_tree(&self, base: usize) -> (Vec<Option<GroupWord>>, BTreeSet<usize>) {
        let mut incident: Vec<Vec<(Letter, bool, usize, usize)>> =
            vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.src].push((e.label, false, e.dst, i));
            incident[e.dst].push((e.label, true, e.src, i));
        }
        for list in &mut incident {
            list.sort();
        }
        let mut potential: Vec<Option<GroupWord>> = vec![None; self.vertices.len()];
        let mut tree = BTreeSet::new();
        potential[base] = Some(GroupWord::identity());
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            let here = potential[v].clone().unwrap();
            for &(label, backward, t, id) in &incident[v] {
                if potential[t].is_none() {
                    let step = if backward {
                        Syllable::neg(label)
                    } else {
                        Syllable::pos(label)
                    };
                    let mut p = here.clone();
                    p.push(step);
                    potential[t] = Some(p);
                    tree.insert(id);
                    queue.push_back(t);
                }
            }
        }
        (potential, tree)
    }

    /// Generators `P(u) a P(v)⁻¹` of the loop-label subgroup at `base`, one
    /// per non-tree edge of the component of `base`.
    pub fn loop_generators(&self, base: usize) -> Vec<GroupWord> {
        let (potential, tree) = self.spanning_tree(base);
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !tree.contains(i))
            .filter_map(|(_, e)| {
                let pu = potential[e.src].as_ref()?;
                let pv = potential[e.dst].as_ref()?;
                Some(pu.mul(&GroupWord::generator(e.label)).mul(&pv.inverse()))
            })
            .collect()
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.vertices.is_empty() || self.spanning_tree(0).0.iter().all(Option::is_some)
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("digraph rauzy_{} {{\n", self.order);
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", alphabet.render(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.src,
                e.dst,
                alphabet.name(e.label)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Stallings graph of the subgroup generated by labels of loops at `base`.
pub fn rauzy_group(graph: &RauzyGraph, base: &Word, alphabet: &Alphabet) -> Result<StallingsGraph> {
    let b = graph.vertex(base).ok_or_else(|| {
        Error::Input(format!(
            "{} is not a vertex of the Rauzy graph",
            alphabet.render(base)
        ))
    })?;
    Ok(stallings(&graph.loop_generators(b), alphabet))
}

/// Outcome of the return-set connectivity criterion for one word.
#[derive(Clone, Debug)]
pub struct ReturnCriterionReport {
    pub word: Word,
    pub returns: Vec<Word>,
    /// `R(w)` freely generates `⟨R(w)⟩`.
    pub free: bool,
    /// First `u = rw` with `⟨R(u)⟩ = ⟨R(w)⟩`.
    pub witness: Option<Word>,
    /// Candidates whose return sets could not be computed within range.
    pub skipped: Vec<Word>,
    /// `𝓔(w)` is connected.
    pub connected: bool,
    /// Facts from the derived system, when the hypotheses hold.
    pub derived: Option<DerivedFacts>,
}

#[derive(Clone, Debug)]
pub struct DerivedFacts {
    pub letter: Letter,
    /// `⟨R_{D_w(X)}(a)⟩ = F_B`.
    pub derived_returns_generate: bool,
    /// The Rauzy group of `Γ_1(D_w(X))` at `a` is `F_B`.
    pub rauzy_group_full: bool,
    /// `𝓔_{D_w(X)}(ε)` is connected.
    pub derived_connected: bool,
}

impl ReturnCriterionReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.free && self.witness.is_some()
    }

    /// True when the hypotheses hold and every conclusion checked out;
    /// `None` when the hypotheses were not established.
    pub fn verified(&self) -> Option<bool> {
        if !self.hypotheses_hold() {
            return None;
        }
        let facts = self.derived.as_ref().is_some_and(|d| {
            d.derived_returns_generate && d.rauzy_group_full && d.derived_connected
        });
        Some(self.connected && facts)
    }
}

/// Evaluates both hypotheses for `w`; when they hold, checks connectivity of
/// `𝓔(w)` and the intermediate facts on the derived system.
pub fn check_return_criterion(lang: &LanguageApprox, w: &Word) -> Result<ReturnCriterionReport> {
    let alphabet = lang.alphabet();
    let returns = return_words(lang, w)?;
    let generators = returns.group_words();
    let free = is_free_family(&generators, alphabet);

    let mut witness = None;
    let mut skipped = Vec::new();
    for r in returns.iter() {
        let u = r.concat(w);
        match return_words(lang, &u) {
            Ok(ru) => {
                if subgroup_equals(&ru.group_words(), &generators, alphabet) {
                    witness = Some(u);
                    break;
                }
            }
            Err(Error::Range(_)) => skipped.push(u),
            Err(e) => return Err(e),
        }
    }
    let connected = extension_graph(lang, w)?.is_connected();

    let derived = match (&witness, free) {
        (Some(u), true) => Some(derived_facts(lang, w, u)?),
        _ => None,
    };
    let report = ReturnCriterionReport {
        word: w.clone(),
        returns: returns.returns,
        free,
        witness,
        skipped,
        connected,
        derived,
    };
    if report.verified() == Some(false) {
        return Err(Error::Invariant(format!(
            "return-set criterion failed for {}",
            lang.render(w)
        )));
    }
    Ok(report)
}

fn derived_facts(lang: &LanguageApprox, w: &Word, u: &Word) -> Result<DerivedFacts> {
    let n = derived_capacity(lang, w)?;
    let system: DerivedSystem = derive(lang, w, n)?;
    let r = u.factor(0, u.len() - w.len());
    let letter = system
        .letter_for(&r)
        .ok_or_else(|| Error::Invariant("witness is not a return word".into()))?;
    let b = system.alphabet();
    let a = Word(vec![letter]);
    let derived_returns = return_words(&system.language, &a)?;
    let graph = rauzy_graph(&system.language, 1)?;
    let h = rauzy_group(&graph, &a, b)?;
    Ok(DerivedFacts {
        letter,
        derived_returns_generate: generates_free_group(&derived_returns.group_words(), b),
        rauzy_group_full: h.is_full_rose(),
        derived_connected: extension_graph(&system.language, &Word::empty())?.is_connected(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::is_basis_of_free_group;
    use crate::language::generate_language;
    use crate::systems;

    #[test]
    fn fibonacci_order_one() {
        let lang = generate_language(&systems::fibonacci(), 4).unwrap();
        let g = rauzy_graph(&lang, 1).unwrap();
        assert_eq!(g.vertices.len(), 2);
        let edges: Vec<(String, String, String)> = g
            .edges
            .iter()
            .map(|e| {
                (
                    lang.render(&g.vertices[e.src]),
                    lang.alphabet().name(e.label).to_string(),
                    lang.render(&g.vertices[e.dst]),
                )
            })
            .collect();
        let s = |x: &str| x.to_string();
        assert_eq!(
            edges,
            [
                (s("a"), s("a"), s("a")),
                (s("a"), s("a"), s("b")),
                (s("b"), s("b"), s("a"))
            ]
        );
    }

    #[test]
    fn tribonacci_order_one_has_five_edges() {
        let lang = generate_language(&systems::tribonacci(), 4).unwrap();
        assert_eq!(rauzy_graph(&lang, 1).unwrap().edges.len(), 5);
    }

    #[test]
    fn order_zero_is_a_rose() {
        let lang = generate_language(&systems::tribonacci(), 4).unwrap();
        let g = rauzy_graph(&lang, 0).unwrap();
        assert_eq!(g.vertices, [Word::empty()]);
        assert_eq!(g.edges.len(), 3);
        assert!(rauzy_group(&g, &Word::empty(), lang.alphabet())
            .unwrap()
            .is_full_rose());
    }

    #[test]
    fn fibonacci_rauzy_group() {
        let lang = generate_language(&systems::fibonacci(), 4).unwrap();
        let g = rauzy_graph(&lang, 1).unwrap();
        let a = lang.alphabet();
        let gens = g.loop_generators(0);
        let rendered: Vec<String> = gens.iter().map(|x| a.render_group(x)).collect();
        assert_eq!(rendered, ["a", "ab"]);
        assert!(rauzy_group(&g, &lang.parse_word("a").unwrap(), a)
            .unwrap()
            .is_full_rose());
    }

    #[test]
    fn thue_morse_rauzy_group() {
        let lang = generate_language(&systems::thue_morse(), 4).unwrap();
        let g = rauzy_graph(&lang, 1).unwrap();
        assert_eq!(g.loop_generators(0).len(), 3);
        let h = rauzy_group(&g, &lang.parse_word("a").unwrap(), lang.alphabet()).unwrap();
        assert!(h.is_full_rose());
    }

    #[test]
    fn rauzy_range_and_vertex_errors() {
        let lang = generate_language(&systems::fibonacci(), 4).unwrap();
        assert!(matches!(rauzy_graph(&lang, 4), Err(Error::Range(_))));
        let g = rauzy_graph(&lang, 1).unwrap();
        assert!(matches!(
            rauzy_group(&g, &lang.parse_word("ab").unwrap(), lang.alphabet()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn return_words_label_loops() {
        let lang = generate_language(&systems::tribonacci(), 20).unwrap();
        let g = rauzy_graph(&lang, 1).unwrap();
        for letter in lang.alphabet().letters() {
            let a = Word(vec![letter]);
            let h = rauzy_group(&g, &a, lang.alphabet()).unwrap();
            for r in return_words(&lang, &a).unwrap().iter() {
                assert!(h.contains(&r.to_group()));
            }
        }
    }

    #[test]
    fn return_criterion_tribonacci_a() {
        let lang = generate_language(&systems::tribonacci(), 60).unwrap();
        let report = check_return_criterion(&lang, &lang.parse_word("a").unwrap()).unwrap();
        assert!(report.hypotheses_hold());
        assert_eq!(report.verified(), Some(true));
    }

    #[test]
    fn return_criterion_empty_word_fibonacci() {
        let lang = generate_language(&systems::fibonacci(), 30).unwrap();
        let report = check_return_criterion(&lang, &Word::empty()).unwrap();
        let a = lang.alphabet();
        assert!(is_basis_of_free_group(
            &report
                .returns
                .iter()
                .map(Word::to_group)
                .collect::<Vec<_>>(),
            a
        ));
        assert!(report.hypotheses_hold());
        assert!(report.connected);
    }

    #[test]
    fn return_criterion_thue_morse_does_not_assert_without_hypotheses() {
        let lang = generate_language(&systems::thue_morse(), 40).unwrap();
        let mut unestablished = 0;
        for w in lang.factors_up_to(3) {
            let report = check_return_criterion(&lang, w).unwrap();
            if !report.hypotheses_hold() {
                assert_eq!(report.verified(), None);
                unestablished += 1;
            }
        }
        assert!(unestablished > 0);
    }

    #[test]
    fn rauzy_dot() {
        let lang = generate_language(&systems::fibonacci(), 4).unwrap();
        let dot = rauzy_graph(&lang, 1).unwrap().to_dot(lang.alphabet());
        assert!(dot.starts_with("digraph rauzy_1 {"));
        assert_eq!(dot.matches(" -> ").count(), 3);
    }
}
