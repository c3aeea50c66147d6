//! Heaps of pieces over a graph's dependency relation.
//!
//! A heap is stored in its canonical geometric form: a sequence of levels,
//! each a sorted independent set of vertices. Level `i` is exactly block `i`
//! of the Cartier–Foata normal form, so equality and hashing of the level
//! sequence decide heap equality for free.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, Limits};

/// One piece occurrence inside a heap, identified by its vertex and its
/// bottom-up ordinal among occurrences of that vertex (0-based). Equal
/// vertices are mutually dependent, hence totally ordered by level, which
/// makes this identification sound across heap, word and rack views.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub vertex: usize,
    pub index: usize,
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.vertex, self.index)
    }
}

/// A heap of pieces over a fixed graph, in canonical level form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Heap {
    graph: Graph,
    levels: Vec<Vec<usize>>,
}

impl Heap {
    pub fn empty(graph: &Graph) -> Heap {
        Heap {
            graph: graph.clone(),
            levels: Vec::new(),
        }
    }

    /// Builds the heap of a word by dropping each piece, left to right, to
    /// the lowest level consistent with the pieces already placed.
    pub fn from_word(graph: &Graph, word: &[usize]) -> Result<Heap> {
        // ceiling[v] = one above the highest level currently holding v.
        let mut ceiling = vec![0usize; graph.n()];
        let mut levels: Vec<Vec<usize>> = Vec::new();
        for &v in word {
            if v >= graph.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: graph.n(),
                });
            }
            let mut level = ceiling[v];
            let mut mask = graph.neighbors_mask(v);
            while mask != 0 {
                let u = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                level = level.max(ceiling[u]);
            }
            if level == levels.len() {
                levels.push(Vec::new());
            }
            levels[level].push(v);
            ceiling[v] = level + 1;
        }
        for level in &mut levels {
            level.sort_unstable();
        }
        Ok(Heap {
            graph: graph.clone(),
            levels,
        })
    }

    /// The trivial heap on a nonempty independent set.
    pub fn trivial(graph: &Graph, vertices: &[usize]) -> Result<Heap> {
        if vertices.is_empty() {
            return Err(Error::InvalidHeap(
                "a trivial heap must be nonempty".to_string(),
            ));
        }
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidHeap(format!("vertex {} repeated", w[0])));
            }
        }
        for &v in &vs {
            if v >= graph.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: graph.n(),
                });
            }
        }
        if !graph.is_independent(vs.iter().copied()) {
            return Err(Error::InvalidHeap(format!(
                "vertices {vs:?} are not independent"
            )));
        }
        Ok(Heap {
            graph: graph.clone(),
            levels: vec![vs],
        })
    }

    /// Builds a heap directly from levels, validating the geometric
    /// conditions: levels are nonempty independent sets without repeats, and
    /// every piece above level 0 rests on a dependent piece one level down.
    pub fn from_levels(graph: &Graph, levels: Vec<Vec<usize>>) -> Result<Heap> {
        let mut sorted = levels;
        for level in &mut sorted {
            level.sort_unstable();
        }
        for (i, level) in sorted.iter().enumerate() {
            if level.is_empty() {
                return Err(Error::InvalidHeap(format!("level {i} is empty")));
            }
            for &v in level {
                if v >= graph.n() {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n: graph.n(),
                    });
                }
            }
            for (a, b) in level.iter().tuple_combinations() {
                if graph.dependent(*a, *b) {
                    return Err(Error::InvalidHeap(format!(
                        "dependent pieces {a} and {b} share level {i}"
                    )));
                }
            }
            if i > 0 {
                for &v in level {
                    let supported = sorted[i - 1].iter().any(|&u| graph.dependent(u, v));
                    if !supported {
                        return Err(Error::InvalidHeap(format!(
                            "piece {v} at level {i} has no dependent piece below"
                        )));
                    }
                }
            }
        }
        Ok(Heap {
            graph: graph.clone(),
            levels: sorted,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// The Cartier–Foata normal form: block `i` is level `i`.
    pub fn cf_normal_form(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Total number of piece occurrences, |F|.
    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Distinct vertices occurring in the heap, ascending.
    pub fn support(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.levels.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn multiplicity(&self, v: usize) -> usize {
        self.levels
            .iter()
            .map(|level| level.iter().filter(|&&u| u == v).count())
            .sum()
    }

    /// A word regenerating the heap: pieces listed level by level. Any level
    /// order is a linear extension of the heap order, so this is canonical
    /// input for `from_word`.
    pub fn level_word(&self) -> Vec<usize> {
        self.levels.iter().flatten().copied().collect()
    }

    /// Occurrences in level order, each tagged with its level.
    pub(crate) fn occurrences_with_levels(&self) -> Vec<(Occurrence, usize)> {
        let mut seen = vec![0usize; self.graph.n()];
        let mut out = Vec::with_capacity(self.len());
        for (level_idx, level) in self.levels.iter().enumerate() {
            for &v in level {
                out.push((
                    Occurrence {
                        vertex: v,
                        index: seen[v],
                    },
                    level_idx,
                ));
                seen[v] += 1;
            }
        }
        out
    }

    /// Stacks `other` on top of `self` and re-settles: the heap of the
    /// concatenated words.
    pub fn multiply(&self, other: &Heap) -> Result<Heap> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch);
        }
        let mut word = self.level_word();
        word.extend(other.level_word());
        Heap::from_word(&self.graph, &word)
    }

    /// Equality with the graph-mismatch check the plain `==` cannot report.
    pub fn try_equals(&self, other: &Heap) -> Result<bool> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch);
        }
        Ok(self.levels == other.levels)
    }

    /// The lexicographic (Knuth) normal form: repeatedly extract the
    /// smallest minimal piece under the graph's vertex order.
    pub fn lex_normal_form(&self) -> Vec<usize> {
        self.lex_occurrences().iter().map(|o| o.vertex).collect()
    }

    /// The lex extraction sequence as occurrences. Position in this sequence
    /// is the piece's lexicographic rank, used by the rack machinery.
    pub fn lex_occurrences(&self) -> Vec<Occurrence> {
        let occs = self.occurrences_with_levels();
        let p = occs.len();
        // Generating predecessors: i precedes j when i lies strictly below j
        // and their vertices are dependent. During ideal-respecting
        // extraction, "all generating predecessors removed" is exactly
        // minimality in the remaining poset.
        let preds = self.generating_predecessors(&occs);
        let order = self.graph.order();
        let mut removed = vec![false; p];
        let mut out = Vec::with_capacity(p);
        for _ in 0..p {
            let next = (0..p)
                .filter(|&j| !removed[j] && preds[j].iter().all(|&i| removed[i]))
                .min_by_key(|&j| order.rank(occs[j].0.vertex))
                .expect("nonempty heap always has a minimal piece");
            removed[next] = true;
            out.push(occs[next].0);
        }
        out
    }

    pub(crate) fn generating_predecessors(&self, occs: &[(Occurrence, usize)]) -> Vec<Vec<usize>> {
        let p = occs.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); p];
        for j in 0..p {
            for i in 0..j {
                if occs[i].1 < occs[j].1 && self.graph.dependent(occs[i].0.vertex, occs[j].0.vertex)
                {
                    preds[j].push(i);
                }
            }
        }
        preds
    }

    /// True iff the heap order puts `a` strictly below `b`.
    pub fn below(&self, a: Occurrence, b: Occurrence) -> bool {
        let occs = self.occurrences_with_levels();
        let pos = |o: Occurrence| occs.iter().position(|&(x, _)| x == o);
        let (Some(ai), Some(bi)) = (pos(a), pos(b)) else {
            return false;
        };
        let preds = self.generating_predecessors(&occs);
        // Walk down the generating relation from b.
        let mut reach = vec![false; occs.len()];
        let mut stack = vec![bi];
        while let Some(j) = stack.pop() {
            for &i in &preds[j] {
                if !reach[i] {
                    reach[i] = true;
                    stack.push(i);
                }
            }
        }
        reach[ai]
    }

    /// Trivial: nonempty and entirely at level 0.
    pub fn is_trivial(&self) -> bool {
        self.levels.len() == 1
    }

    /// Multilinear: every vertex of the graph occurs exactly once.
    pub fn is_multilinear(&self) -> bool {
        self.len() == self.graph.n() && self.support().len() == self.graph.n()
    }

    /// Antipyramid: exactly one piece in the lowermost level.
    pub fn is_antipyramid(&self) -> bool {
        self.levels.first().is_some_and(|l| l.len() == 1)
    }
}

impl fmt::Display for Heap {
    /// CF blocks, e.g. `[0 3][1][2][1]`; the empty heap prints `(empty)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        for level in &self.levels {
            write!(f, "[{}]", level.iter().join(" "))?;
        }
        Ok(())
    }
}

/// Parses the heap word format: whitespace-separated vertex ids.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::InvalidHeap(format!("bad vertex id {tok:?} in word")))
        })
        .collect()
}

/// All multilinear heaps on `g`, obtained by deduplicating the heaps of all
/// `n!` permutation words. Deliberately not routed through the orientation
/// bijection so that |M(G)| = |A(G)| stays an independent check.
pub fn enumerate_multilinear_heaps(g: &Graph, limits: &Limits) -> Result<Vec<Heap>> {
    limits.check_words(g.n())?;
    let mut set: BTreeSet<Heap> = BTreeSet::new();
    for word in (0..g.n()).permutations(g.n()) {
        set.insert(Heap::from_word(g, &word)?);
    }
    Ok(set.into_iter().collect())
}
