//! Stallings graphs of finitely generated subgroups of a free group.
//!
//! Every edge carries a trace: a word over the generator symbols. With a
//! potential `P(v)` in the free group on the letters (`P(base) = 1`), each
//! edge `(s, x, t)` satisfies `θ(trace) = P(s) x P(t)⁻¹`, where `θ` sends
//! generator symbol `i` to the `i`-th generator. Folding keeps this true, so
//! the trace read along any basepoint loop expresses the loop's label in the
//! generators.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{Alphabet, GroupWord, Letter, Syllable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub letter: Letter,
    pub dst: usize,
    /// Word over the generator symbols.
    pub trace: GroupWord,
}

/// Which clash gets folded first. All orders give the same graph up to
/// vertex renaming; the choice only matters for reproducibility tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FoldOrder {
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

/// Folded core graph with basepoint `0`.
#[derive(Clone, Debug)]
pub struct StallingsGraph {
    letters: usize,
    generators: Vec<GroupWord>,
    vertex_count: usize,
    edges: Vec<Edge>,
    outgoing: HashMap<(usize, Letter), usize>,
    incoming: HashMap<(usize, Letter), usize>,
}

pub const BASEPOINT: usize = 0;

struct Builder {
    alive: Vec<bool>,
    edges: Vec<Option<Edge>>,
}

impl Builder {
    fn new() -> Self {
        Self {
            alive: vec![true],
            edges: Vec::new(),
        }
    }

    fn add_vertex(&mut self) -> usize {
        self.alive.push(true);
        self.alive.len() - 1
    }

    fn add_edge(&mut self, src: usize, letter: Letter, dst: usize, trace: GroupWord) {
        self.edges.push(Some(Edge {
            src,
            letter,
            dst,
            trace,
        }));
    }

    /// A petal reading `g`, whose closing edge carries generator `index`.
    fn add_petal(&mut self, g: &GroupWord, index: usize) {
        let syl = g.syllables();
        if syl.is_empty() {
            return;
        }
        let mut cur = BASEPOINT;
        for (i, s) in syl.iter().enumerate() {
            let last = i + 1 == syl.len();
            let next = if last { BASEPOINT } else { self.add_vertex() };
            let symbol = Letter(index as u32);
            if s.inverse {
                let trace = if last {
                    GroupWord::from_syllables([Syllable::neg(symbol)])
                } else {
                    GroupWord::identity()
                };
                self.add_edge(next, s.letter, cur, trace);
            } else {
                let trace = if last {
                    GroupWord::generator(symbol)
                } else {
                    GroupWord::identity()
                };
                self.add_edge(cur, s.letter, next, trace);
            }
            cur = next;
        }
    }

    /// `(vertex, letter, incoming?)` of the chosen clash and its two edges.
    fn find_clash(&self, order: FoldOrder) -> Option<(usize, usize, bool)> {
        let mut groups: BTreeMap<(usize, Letter, bool), Vec<usize>> = BTreeMap::new();
        for (id, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                groups.entry((e.src, e.letter, false)).or_default().push(id);
                groups.entry((e.dst, e.letter, true)).or_default().push(id);
            }
        }
        let mut clashes = groups.into_iter().filter(|(_, ids)| ids.len() > 1);
        let (key, ids) = match order {
            FoldOrder::Lexicographic => clashes.next()?,
            FoldOrder::ReverseLexicographic => clashes.next_back()?,
        };
        Some((ids[0], ids[1], key.2))
    }

    fn fold(&mut self, keep_id: usize, drop_id: usize, incoming: bool) {
        let keep = self.edges[keep_id].clone().unwrap();
        let drop = self.edges[drop_id].clone().unwrap();
        let (v1, v2, delta) = if incoming {
            (keep.src, drop.src, keep.trace.mul(&drop.trace.inverse()))
        } else {
            (keep.dst, drop.dst, keep.trace.inverse().mul(&drop.trace))
        };
        if v1 != v2 {
            // merge `gone` into `stay`; θ(delta) = P(stay) P(gone)⁻¹
            let (stay, gone, delta) = if v2 == BASEPOINT {
                (v2, v1, delta.inverse())
            } else {
                (v1, v2, delta)
            };
            let delta_inv = delta.inverse();
            for e in self.edges.iter_mut().flatten() {
                if e.src == gone {
                    e.src = stay;
                    e.trace = delta.mul(&e.trace);
                }
                if e.dst == gone {
                    e.dst = stay;
                    e.trace = e.trace.mul(&delta_inv);
                }
            }
            self.alive[gone] = false;
        }
        self.edges[drop_id] = None;
    }

    fn prune(&mut self) {
        loop {
            let mut degree = vec![0usize; self.alive.len()];
            for e in self.edges.iter().flatten() {
                degree[e.src] += 1;
                degree[e.dst] += 1;
            }
            let leaves: Vec<usize> = (1..self.alive.len())
                .filter(|&v| self.alive[v] && degree[v] <= 1)
                .collect();
            if leaves.is_empty() {
                return;
            }
            for v in leaves {
                self.alive[v] = false;
                for slot in self.edges.iter_mut() {
                    if slot.as_ref().is_some_and(|e| e.src == v || e.dst == v) {
                        *slot = None;
                    }
                }
            }
        }
    }
}

impl StallingsGraph {
    /// Folds the bouquet of petals for `generators`.
    pub fn build(generators: &[GroupWord], alphabet: &Alphabet) -> Self {
        Self::build_with_order(generators, alphabet, FoldOrder::default())
    }

    pub fn build_with_order(
        generators: &[GroupWord],
        alphabet: &Alphabet,
        order: FoldOrder,
    ) -> Self {
        let mut b = Builder::new();
        for (i, g) in generators.iter().enumerate() {
            b.add_petal(g, i);
        }
        while let Some((keep, drop, incoming)) = b.find_clash(order) {
            b.fold(keep, drop, incoming);
        }
        b.prune();
        Self::canonical(alphabet.len(), generators.to_vec(), b)
    }

    /// Renumbers vertices in breadth-first order from the basepoint.
    fn canonical(letters: usize, generators: Vec<GroupWord>, b: Builder) -> Self {
        let edges: Vec<Edge> = b.edges.into_iter().flatten().collect();
        let mut adjacency: BTreeMap<usize, Vec<(Letter, bool, usize)>> = BTreeMap::new();
        for e in &edges {
            adjacency
                .entry(e.src)
                .or_default()
                .push((e.letter, false, e.dst));
            adjacency
                .entry(e.dst)
                .or_default()
                .push((e.letter, true, e.src));
        }
        for list in adjacency.values_mut() {
            list.sort();
        }
        let mut number: HashMap<usize, usize> = HashMap::from([(BASEPOINT, 0)]);
        let mut queue = VecDeque::from([BASEPOINT]);
        while let Some(v) = queue.pop_front() {
            for &(_, _, t) in adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if !number.contains_key(&t) {
                    number.insert(t, number.len());
                    queue.push_back(t);
                }
            }
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| Edge {
                src: number[&e.src],
                dst: number[&e.dst],
                ..e
            })
            .collect();
        edges.sort_by_key(|e| (e.src, e.letter, e.dst));
        let outgoing = edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.src, e.letter), i))
            .collect();
        let incoming = edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.dst, e.letter), i))
            .collect();
        Self {
            letters,
            generators,
            vertex_count: number.len(),
            edges,
            outgoing,
            incoming,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn generators(&self) -> &[GroupWord] {
        &self.generators
    }

    /// Rank of the subgroup: cycle rank of the core graph.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    /// One vertex carrying a loop for every letter: the whole free group.
    pub fn is_full_rose(&self) -> bool {
        self.vertex_count == 1 && self.edges.len() == self.letters
    }

    /// Follows `g` from the basepoint; returns the end vertex and the trace.
    fn read(&self, g: &GroupWord) -> Option<(usize, GroupWord)> {
        let mut v = BASEPOINT;
        let mut trace = GroupWord::identity();
        for s in g.syllables() {
            if s.inverse {
                let e = &self.edges[*self.incoming.get(&(v, s.letter))?];
                trace = trace.mul(&e.trace.inverse());
                v = e.src;
            } else {
                let e = &self.edges[*self.outgoing.get(&(v, s.letter))?];
                trace = trace.mul(&e.trace);
                v = e.dst;
            }
        }
        Some((v, trace))
    }

    pub fn contains(&self, g: &GroupWord) -> bool {
        matches!(self.read(g), Some((BASEPOINT, _)))
    }

    /// Writes a member of the subgroup as a word over the generator symbols
    /// (`Letter(i)` stands for generator `i`).
    pub fn express(&self, g: &GroupWord) -> Result<GroupWord> {
        match self.read(g) {
            Some((BASEPOINT, trace)) => {
                if evaluate(&self.generators, &trace) != *g {
                    return Err(Error::Invariant(
                        "expression does not evaluate to the target".into(),
                    ));
                }
                Ok(trace)
            }
            _ => Err(Error::NotMember),
        }
    }

    /// Directed DOT with letter labels; the basepoint is double-circled.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph stallings {\n");
        for v in 0..self.vertex_count {
            let shape = if v == BASEPOINT {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  v{v} [shape={shape}];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.src,
                e.dst,
                alphabet.name(e.letter)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Image of a word over generator symbols.
pub fn evaluate(generators: &[GroupWord], expr: &GroupWord) -> GroupWord {
    expr.syllables()
        .iter()
        .fold(GroupWord::identity(), |acc, s| {
            let g = &generators[s.letter.index()];
            if s.inverse {
                acc.mul(&g.inverse())
            } else {
                acc.mul(g)
            }
        })
}

pub fn stallings(generators: &[GroupWord], alphabet: &Alphabet) -> StallingsGraph {
    StallingsGraph::build(generators, alphabet)
}

pub fn rank(generators: &[GroupWord], alphabet: &Alphabet) -> usize {
    stallings(generators, alphabet).rank()
}

/// `|W| = |A|` and `⟨W⟩ = F_A`; a generating set of the right size is a
/// basis because free groups of finite rank are Hopfian.
pub fn is_basis_of_free_group(generators: &[GroupWord], alphabet: &Alphabet) -> bool {
    generators.len() == alphabet.len() && stallings(generators, alphabet).is_full_rose()
}

/// `W` freely generates `⟨W⟩`.
pub fn is_free_family(generators: &[GroupWord], alphabet: &Alphabet) -> bool {
    stallings(generators, alphabet).rank() == generators.len()
}

pub fn subgroup_equals(left: &[GroupWord], right: &[GroupWord], alphabet: &Alphabet) -> bool {
    let gl = stallings(left, alphabet);
    let gr = stallings(right, alphabet);
    left.iter().all(|g| gr.contains(g)) && right.iter().all(|g| gl.contains(g))
}

/// `⟨W⟩ = F_A`, whatever the size of `W`.
pub fn generates_free_group(generators: &[GroupWord], alphabet: &Alphabet) -> bool {
    stallings(generators, alphabet).is_full_rose()
}

pub fn express(
    generators: &[GroupWord],
    target: &GroupWord,
    alphabet: &Alphabet,
) -> Result<GroupWord> {
    stallings(generators, alphabet).express(target)
}
