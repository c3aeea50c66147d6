//! Edge orientations, acyclicity, and the bijection between acyclic
//! orientations and multilinear heaps.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Limits};
use crate::heap::Heap;

/// An orientation of a graph's edges, stored as one bit per edge in the
/// graph's canonical edge order: bit `i` clear orients edge `(u, v)` (with
/// `u < v`) as `u -> v`, set as `v -> u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    bits: u64,
}

impl Orientation {
    pub fn new(g: &Graph, bits: u64) -> Result<Orientation> {
        if g.m() < 64 && bits >> g.m() != 0 {
            return Err(Error::InvalidOrientation(format!(
                "direction bits {bits:#b} cover more than {} edges",
                g.m()
            )));
        }
        Ok(Orientation { bits })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Directed edges as `(tail, head)` pairs, in the graph's edge order.
    pub fn directed_edges<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = (usize, usize)> + 'a {
        g.edges().iter().enumerate().map(move |(i, &(u, v))| {
            if (self.bits >> i) & 1 == 0 {
                (u, v)
            } else {
                (v, u)
            }
        })
    }

    /// Renders one `u > v` line per directed edge `u -> v`.
    pub fn to_text(&self, g: &Graph) -> String {
        self.directed_edges(g)
            .map(|(t, h)| format!("{t} > {h}\n"))
            .collect()
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:b}", self.bits)
    }
}

/// All `2^m` orientations, each exactly once, in ascending bit order.
pub fn enumerate_orientations(g: &Graph, limits: &Limits) -> Result<Vec<Orientation>> {
    limits.check_orientations(g.m())?;
    let count = 1u64
        .checked_shl(g.m() as u32)
        .expect("guard keeps 2^m within u64");
    Ok((0..count).map(|bits| Orientation { bits }).collect())
}

/// All acyclic orientations, in ascending bit order.
pub fn acyclic_orientations(g: &Graph, limits: &Limits) -> Result<Vec<Orientation>> {
    Ok(enumerate_orientations(g, limits)?
        .into_iter()
        .filter(|o| is_acyclic(g, o))
        .collect())
}

fn in_degrees(g: &Graph, o: &Orientation) -> Vec<usize> {
    let mut indeg = vec![0usize; g.n()];
    for (_, head) in o.directed_edges(g) {
        indeg[head] += 1;
    }
    indeg
}

/// Cycle detection by repeated source elimination (Kahn's algorithm).
pub fn is_acyclic(g: &Graph, o: &Orientation) -> bool {
    let mut indeg = in_degrees(g, o);
    let mut queue: Vec<usize> = (0..g.n()).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0usize;
    while let Some(v) = queue.pop() {
        seen += 1;
        for (tail, head) in o.directed_edges(g) {
            if tail == v {
                indeg[head] -= 1;
                if indeg[head] == 0 {
                    queue.push(head);
                }
            }
        }
    }
    seen == g.n()
}

/// Vertices with no incoming edge, ascending.
pub fn sources(g: &Graph, o: &Orientation) -> Vec<usize> {
    in_degrees(g, o)
        .into_iter()
        .enumerate()
        .filter_map(|(v, d)| (d == 0).then_some(v))
        .collect()
}

/// True iff `o` is acyclic with `v` as its only source.
pub fn unique_source_at(g: &Graph, o: &Orientation, v: usize) -> bool {
    is_acyclic(g, o) && sources(g, o) == [v]
}

/// The orientation of a multilinear heap: each edge points from the earlier
/// to the later endpoint of the lexicographic word. Adjacent vertices are
/// comparable in the heap, so any linear extension gives the same result.
pub fn orientation_of_heap(h: &Heap) -> Result<Orientation> {
    if !h.is_multilinear() {
        return Err(Error::NotMultilinear);
    }
    let g = h.graph();
    let word = h.lex_normal_form();
    let mut position = vec![0usize; g.n()];
    for (i, &v) in word.iter().enumerate() {
        position[v] = i;
    }
    let mut bits = 0u64;
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if position[u] > position[v] {
            bits |= 1 << i;
        }
    }
    Ok(Orientation { bits })
}

/// The multilinear heap of an acyclic orientation: repeatedly delete the
/// smallest remaining source (under the graph's vertex order) and append it
/// to the word.
pub fn heap_of_orientation(g: &Graph, o: &Orientation) -> Result<Heap> {
    let mut indeg = in_degrees(g, o);
    let mut removed = vec![false; g.n()];
    let mut word = Vec::with_capacity(g.n());
    for _ in 0..g.n() {
        let source = g
            .order()
            .min_vertex((0..g.n()).filter(|&v| !removed[v] && indeg[v] == 0))
            .ok_or(Error::CyclicOrientation)?;
        removed[source] = true;
        for (tail, head) in o.directed_edges(g) {
            if tail == source && !removed[head] {
                indeg[head] -= 1;
            }
        }
        word.push(source);
    }
    Heap::from_word(g, &word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::enumerate_multilinear_heaps;

    fn k3() -> Graph {
        Graph::complete(3).unwrap()
    }

    fn orientation(g: &Graph, directed: &[(usize, usize)]) -> Orientation {
        let mut bits = 0u64;
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if directed.contains(&(v, u)) {
                bits |= 1 << i;
            } else {
                assert!(directed.contains(&(u, v)), "edge ({u},{v}) missing");
            }
        }
        Orientation { bits }
    }

    #[test]
    fn acyclicity_and_sources() {
        let g = k3();
        let cyclic = orientation(&g, &[(0, 1), (1, 2), (2, 0)]);
        assert!(!is_acyclic(&g, &cyclic));
        let transitive = orientation(&g, &[(0, 1), (0, 2), (1, 2)]);
        assert!(is_acyclic(&g, &transitive));
        assert_eq!(sources(&g, &transitive), vec![0]);

        let edgeless = Graph::edgeless(3).unwrap();
        let empty = Orientation::new(&edgeless, 0).unwrap();
        assert!(is_acyclic(&edgeless, &empty));
        assert_eq!(sources(&edgeless, &empty), vec![0, 1, 2]);
    }

    #[test]
    fn enumeration_counts() {
        let limits = Limits::default();
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(enumerate_orientations(&k1, &limits).unwrap().len(), 1);
        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_orientations(&edge, &limits).unwrap().len(), 2);
        // Trees are always acyclic: P4 has 2^3 = 8 orientations, all acyclic.
        let p4 = Graph::path(4).unwrap();
        let all = enumerate_orientations(&p4, &limits).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|o| is_acyclic(&p4, o)));

        let tight = Limits {
            max_orientations: 4,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_orientations(&p4, &tight),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn edge_orientation_follows_word_order() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let h01 = Heap::from_word(&g, &[0, 1]).unwrap();
        let h10 = Heap::from_word(&g, &[1, 0]).unwrap();
        assert_eq!(
            orientation_of_heap(&h01)
                .unwrap()
                .directed_edges(&g)
                .collect::<Vec<_>>(),
            vec![(0, 1)]
        );
        assert_eq!(
            orientation_of_heap(&h10)
                .unwrap()
                .directed_edges(&g)
                .collect::<Vec<_>>(),
            vec![(1, 0)]
        );
        let not_multi = Heap::from_word(&g, &[0]).unwrap();
        assert!(matches!(
            orientation_of_heap(&not_multi),
            Err(Error::NotMultilinear)
        ));
    }

    #[test]
    fn source_extraction_builds_the_heap() {
        let g = k3();
        let o = orientation(&g, &[(0, 1), (0, 2), (1, 2)]);
        let h = heap_of_orientation(&g, &o).unwrap();
        assert_eq!(h.lex_normal_form(), vec![0, 1, 2]);
        assert!(h.is_multilinear());

        let cyclic = orientation(&g, &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(
            heap_of_orientation(&g, &cyclic),
            Err(Error::CyclicOrientation)
        ));

        let edgeless = Graph::edgeless(3).unwrap();
        let empty = Orientation::new(&edgeless, 0).unwrap();
        let trivial = heap_of_orientation(&edgeless, &empty).unwrap();
        assert!(trivial.is_trivial());
        assert_eq!(trivial.support(), vec![0, 1, 2]);
    }

    #[test]
    fn unique_source_cases() {
        let g = k3();
        let o = orientation(&g, &[(2, 0), (2, 1), (1, 0)]);
        assert!(unique_source_at(&g, &o, 2));
        assert!(!unique_source_at(&g, &o, 0));
        let cyclic = orientation(&g, &[(0, 1), (1, 2), (2, 0)]);
        for v in 0..3 {
            assert!(!unique_source_at(&g, &cyclic, v));
        }
        let k1 = Graph::new(1, &[]).unwrap();
        assert!(unique_source_at(&k1, &Orientation::new(&k1, 0).unwrap(), 0));
    }

    #[test]
    fn bijection_round_trips_on_small_graphs() {
        let limits = Limits::default();
        for g in [
            k3(),
            Graph::path(4).unwrap(),
            Graph::cycle(4).unwrap(),
            Graph::edgeless(3).unwrap(),
        ] {
            let heaps = enumerate_multilinear_heaps(&g, &limits).unwrap();
            let acyclic = acyclic_orientations(&g, &limits).unwrap();
            assert_eq!(heaps.len(), acyclic.len(), "graph {g}");
            for h in &heaps {
                let o = orientation_of_heap(h).unwrap();
                assert!(
                    is_acyclic(&g, &o),
                    "multilinear heaps must map to acyclic orientations"
                );
                assert_eq!(
                    &heap_of_orientation(&g, &o).unwrap(),
                    h,
                    "heap round trip must be the identity on {g}"
                );
            }
            for o in &acyclic {
                let h = heap_of_orientation(&g, o).unwrap();
                assert!(h.is_multilinear());
                assert_eq!(
                    &orientation_of_heap(&h).unwrap(),
                    o,
                    "orientation round trip must be the identity on {g}"
                );
            }
        }
    }

    #[test]
    fn source_extraction_respects_custom_order() {
        // On the edgeless pair with order 1 < 0, sources are consumed in that order.
        let g = Graph::edgeless(2).unwrap().with_order(&[1, 0]).unwrap();
        let o = Orientation::new(&g, 0).unwrap();
        assert_eq!(
            heap_of_orientation(&g, &o).unwrap().lex_normal_form(),
            vec![1, 0]
        );
    }
}
