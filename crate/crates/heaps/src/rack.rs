//! Racks (trivial layer factorisations) and general layer factorisations of
//! a heap, together with the sign-reversing involution on racks.
//!
//! The involution numbers the pieces of a rack by the heap's lexicographic
//! order, finds the smallest piece that is either not lonely or lonely in the
//! wrong layer, and moves it: a lonely transfer piece merges into the layer
//! below, a non-lonely one is extracted into a fresh singleton layer just
//! above its old layer. Its unique fixed point is the lexicographic rack.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Limits;
use crate::heap::{Heap, Occurrence};

/// An ordered factorisation of a heap into trivial layers (independent
/// vertex sets), bottom first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rack {
    heap: Heap,
    layers: Vec<Vec<usize>>,
}

/// The piece the involution moves, reported with its rack layer, its heap
/// occurrence, and its lexicographic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransferPiece {
    pub layer: usize,
    pub vertex: usize,
    pub occurrence: usize,
    pub number: usize,
    pub lonely: bool,
}

impl Rack {
    /// Validates that the layers are nonempty independent sets multiplying
    /// to `heap`, bottom first.
    pub fn new(heap: Heap, layers: Vec<Vec<usize>>) -> Result<Rack> {
        let mut sorted = layers;
        for layer in &mut sorted {
            layer.sort_unstable();
        }
        let mut product = Heap::empty(heap.graph());
        for layer in &sorted {
            let trivial = Heap::trivial(heap.graph(), layer)
                .map_err(|e| Error::InvalidRack(format!("bad layer {layer:?}: {e}")))?;
            product = product.multiply(&trivial)?;
        }
        if product != heap {
            return Err(Error::InvalidRack(format!(
                "layers multiply to {product}, not to {heap}"
            )));
        }
        Ok(Rack {
            heap,
            layers: sorted,
        })
    }

    /// Construction from the enumerator, which only produces valid racks.
    pub(crate) fn from_enumeration(heap: &Heap, layers: &[Vec<usize>]) -> Rack {
        debug_assert!(
            Rack::new(heap.clone(), layers.to_vec()).is_ok(),
            "enumerated rack failed validation"
        );
        Rack {
            heap: heap.clone(),
            layers: layers.to_vec(),
        }
    }

    /// The all-singleton rack following the lexicographic normal form.
    pub fn lexicographic(heap: &Heap) -> Result<Rack> {
        if heap.is_empty() {
            return Err(Error::EmptyHeap);
        }
        let layers = heap
            .lex_normal_form()
            .into_iter()
            .map(|v| vec![v])
            .collect();
        Ok(Rack {
            heap: heap.clone(),
            layers,
        })
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// Number of layers, #(T).
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// The heap occurrence of the piece at `position` within `layer`:
    /// its bottom-up index is the number of equal vertices in lower layers.
    pub fn occurrence_at(&self, layer: usize, position: usize) -> Occurrence {
        let vertex = self.layers[layer][position];
        let index = self.layers[..layer]
            .iter()
            .map(|l| l.iter().filter(|&&u| u == vertex).count())
            .sum();
        Occurrence { vertex, index }
    }

    /// Each rack piece's rank in the heap's lexicographic order, as a vector
    /// parallel to `layers()`. Numbers depend only on the heap, not on the
    /// rack.
    pub fn occurrence_numbers(&self) -> Vec<Vec<usize>> {
        let rank: HashMap<Occurrence, usize> = self
            .heap
            .lex_occurrences()
            .into_iter()
            .enumerate()
            .map(|(i, o)| (o, i))
            .collect();
        let numbers: Vec<Vec<usize>> = self
            .layers
            .iter()
            .enumerate()
            .map(|(li, layer)| {
                (0..layer.len())
                    .map(|pi| rank[&self.occurrence_at(li, pi)])
                    .collect()
            })
            .collect();
        debug_assert!(
            {
                let mut all: Vec<usize> = numbers.iter().flatten().copied().collect();
                all.sort_unstable();
                all == (0..self.heap.len()).collect::<Vec<_>>()
            },
            "occurrence numbers must be a permutation of 0..|F|"
        );
        numbers
    }

    /// The transfer set holds non-lonely pieces and lonely pieces whose
    /// number differs from their layer index; the transfer piece is its
    /// minimum-numbered member. `None` exactly at the lexicographic rack.
    pub fn transfer_piece(&self) -> Option<TransferPiece> {
        let numbers = self.occurrence_numbers();
        let mut best: Option<TransferPiece> = None;
        for (li, layer) in self.layers.iter().enumerate() {
            let lonely = layer.len() == 1;
            for (pi, &number) in numbers[li].iter().enumerate() {
                if lonely && number == li {
                    continue;
                }
                if best.is_none_or(|b| number < b.number) {
                    let occ = self.occurrence_at(li, pi);
                    best = Some(TransferPiece {
                        layer: li,
                        vertex: occ.vertex,
                        occurrence: occ.index,
                        number,
                        lonely,
                    });
                }
            }
        }
        best
    }

    /// One step of the rack involution. Fixed points are returned
    /// unchanged; the result is always a valid rack of the same heap.
    pub fn involute(&self) -> Rack {
        let Some(tp) = self.transfer_piece() else {
            return self.clone();
        };
        let mut layers = self.layers.clone();
        if tp.lonely {
            // A lonely transfer piece can never sit in layer 0: the piece
            // numbered 0 would have to be lonely in layer 0 as well.
            assert!(tp.layer > 0, "lonely transfer piece in the bottom layer");
            layers[tp.layer - 1].push(tp.vertex);
            layers[tp.layer - 1].sort_unstable();
            layers.remove(tp.layer);
        } else {
            layers[tp.layer].retain(|&v| v != tp.vertex);
            layers.insert(tp.layer + 1, vec![tp.vertex]);
        }
        Rack::new(self.heap.clone(), layers).expect("involution produced an invalid rack")
    }

    /// True iff the largest vertex of the heap's support (under the graph's
    /// vertex order) occurs in the bottom layer.
    pub fn is_lower_special(&self) -> bool {
        let Some(max) = self.heap.graph().order().max_vertex(self.heap.support()) else {
            return false;
        };
        self.layers.first().is_some_and(|l| l.contains(&max))
    }
}

impl fmt::Display for Rack {
    /// Layers bottom-to-top separated by `|`, e.g. `0 3 | 1 | 2 | 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "(empty)");
        }
        let rendered = self
            .layers
            .iter()
            .map(|layer| layer.iter().join(" "))
            .join(" | ");
        write!(f, "{rendered}")
    }
}

/// Parses the rack text format `0 3 | 1 | 2 | 1` into layers.
pub fn parse_layers(text: &str) -> Result<Vec<Vec<usize>>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split('|')
        .map(|part| {
            let layer: Vec<usize> = part
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::InvalidRack(format!("bad vertex id {tok:?}")))
                })
                .collect::<Result<_>>()?;
            if layer.is_empty() {
                return Err(Error::InvalidRack("empty layer".to_string()));
            }
            Ok(layer)
        })
        .collect()
}

/// Streams every rack of `h` (as layer slices) through `visit`, in a
/// deterministic order. Layer 0 ranges over the nonempty subsets of the
/// minimal pieces; the enumeration recurses on the re-settled residual heap.
pub(crate) fn visit_racks<F: FnMut(&[Vec<usize>])>(
    h: &Heap,
    limits: &Limits,
    mut visit: F,
) -> Result<()> {
    limits.check_heap_pieces(h.len())?;
    let mut budget = limits.max_racks;
    let mut layers: Vec<Vec<usize>> = Vec::new();
    visit_rec(h, limits, &mut layers, &mut budget, &mut visit)
}

fn visit_rec<F: FnMut(&[Vec<usize>])>(
    h: &Heap,
    limits: &Limits,
    layers: &mut Vec<Vec<usize>>,
    budget: &mut u64,
    visit: &mut F,
) -> Result<()> {
    if h.is_empty() {
        if *budget == 0 {
            return Err(Error::GuardExceeded {
                quantity: "racks per heap",
                actual: limits.max_racks as u128 + 1,
                limit: limits.max_racks as u128,
            });
        }
        *budget -= 1;
        visit(layers);
        return Ok(());
    }
    let bottom = h.levels()[0].clone();
    for mask in 1u32..1 << bottom.len() {
        let layer: Vec<usize> = (0..bottom.len())
            .filter(|i| (mask >> i) & 1 == 1)
            .map(|i| bottom[i])
            .collect();
        let residual = remove_bottom(h, &layer);
        layers.push(layer);
        visit_rec(&residual, limits, layers, budget, visit)?;
        layers.pop();
    }
    Ok(())
}

/// Removes one level-0 occurrence of each vertex in `layer` and re-settles.
fn remove_bottom(h: &Heap, layer: &[usize]) -> Heap {
    let mut word = Vec::with_capacity(h.len() - layer.len());
    for (idx, level) in h.levels().iter().enumerate() {
        for &v in level {
            if idx == 0 && layer.contains(&v) {
                continue;
            }
            word.push(v);
        }
    }
    Heap::from_word(h.graph(), &word).expect("residual word is in range")
}

/// All racks of `h`, each exactly once, in enumeration order.
pub fn enumerate_racks(h: &Heap, limits: &Limits) -> Result<Vec<Rack>> {
    let mut out = Vec::new();
    visit_racks(h, limits, |layers| {
        out.push(Rack::from_enumeration(h, layers));
    })?;
    Ok(out)
}

/// `counts[k]` = number of racks of `h` with `k` layers. The empty heap has
/// one empty rack, so `counts[0] = 1` there.
pub fn rack_counts(h: &Heap, limits: &Limits) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; h.len() + 1];
    visit_racks(h, limits, |layers| {
        counts[layers.len()] += 1;
    })?;
    Ok(counts)
}

/// Number of racks of `h` with exactly `k` layers (0 beyond |h|).
pub fn rack_count(h: &Heap, k: usize, limits: &Limits) -> Result<u64> {
    Ok(rack_counts(h, limits)?.get(k).copied().unwrap_or(0))
}

/// An ordered factorisation of a heap into nonempty factor heaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerFactorisation {
    heap: Heap,
    factors: Vec<Heap>,
}

impl LayerFactorisation {
    pub fn new(heap: Heap, factors: Vec<Heap>) -> Result<LayerFactorisation> {
        let mut product = Heap::empty(heap.graph());
        for factor in &factors {
            if factor.is_empty() {
                return Err(Error::InvalidRack("empty factor".to_string()));
            }
            product = product.multiply(factor)?;
        }
        if product != heap {
            return Err(Error::InvalidRack(format!(
                "factors multiply to {product}, not to {heap}"
            )));
        }
        Ok(LayerFactorisation { heap, factors })
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn factors(&self) -> &[Heap] {
        &self.factors
    }
}

/// The occurrence poset's order ideals as bitmasks over the level-order
/// occurrence list. Factorisations `F = F_0 ⊙ … ⊙ F_{k-1}` correspond to
/// strictly increasing chains of ideals `∅ ⊂ I_1 ⊂ … ⊂ I_k = E`.
fn order_ideals(h: &Heap) -> Vec<u32> {
    let occs = h.occurrences_with_levels();
    let p = occs.len();
    let preds = h.generating_predecessors(&occs);
    let pred_masks: Vec<u32> = preds
        .iter()
        .map(|list| list.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    (0u32..1 << p)
        .filter(|&mask| (0..p).all(|j| (mask >> j) & 1 == 0 || pred_masks[j] & !mask == 0))
        .collect()
}

/// `counts[k]` = number of layer factorisations of `h` into `k` factors,
/// via a chain count over the ideal lattice.
pub fn factorisation_counts(h: &Heap, limits: &Limits) -> Result<Vec<u64>> {
    limits.check_heap_pieces(h.len())?;
    let p = h.len();
    let ideals = order_ideals(h);
    let full: u32 = if p == 0 { 0 } else { (1 << p) - 1 };
    let full_idx = ideals
        .iter()
        .position(|&m| m == full)
        .expect("the whole heap is an ideal");
    let mut counts = vec![0u64; p + 1];
    // chains[i] = number of chains ∅ = I_0 ⊂ … ⊂ I_k = ideals[i] for the
    // current k.
    let mut chains: Vec<u64> = ideals.iter().map(|&m| u64::from(m == 0)).collect();
    counts[0] = chains[full_idx];
    for slot in counts.iter_mut().skip(1) {
        let mut next = vec![0u64; ideals.len()];
        for (jdx, &upper) in ideals.iter().enumerate() {
            let mut sum = 0u64;
            for (idx, &lower) in ideals.iter().enumerate() {
                if lower != upper && lower & !upper == 0 {
                    sum += chains[idx];
                }
            }
            next[jdx] = sum;
        }
        *slot = next[full_idx];
        chains = next;
        if chains.iter().all(|&c| c == 0) {
            break;
        }
    }
    Ok(counts)
}

/// Number of layer factorisations of `h` with exactly `k` factors.
pub fn factorisation_count(h: &Heap, k: usize, limits: &Limits) -> Result<u64> {
    Ok(factorisation_counts(h, limits)?
        .get(k)
        .copied()
        .unwrap_or(0))
}

/// Materialises every layer factorisation of `h` from the ideal chains.
pub fn enumerate_layer_factorisations(
    h: &Heap,
    limits: &Limits,
) -> Result<Vec<LayerFactorisation>> {
    limits.check_heap_pieces(h.len())?;
    let p = h.len();
    let mut walker = ChainWalker {
        heap: h,
        occurrence_vertices: h
            .occurrences_with_levels()
            .iter()
            .map(|(o, _)| o.vertex)
            .collect(),
        ideals: order_ideals(h),
        full: if p == 0 { 0 } else { (1 << p) - 1 },
        factors: Vec::new(),
        budget: limits.max_racks,
        cap: limits.max_racks,
        out: Vec::new(),
    };
    walker.walk(0)?;
    Ok(walker.out)
}

/// Depth-first walk over strictly increasing ideal chains, materialising the
/// factor heap of each ideal difference along the way.
struct ChainWalker<'a> {
    heap: &'a Heap,
    occurrence_vertices: Vec<usize>,
    ideals: Vec<u32>,
    full: u32,
    factors: Vec<Heap>,
    budget: u64,
    cap: u64,
    out: Vec<LayerFactorisation>,
}

impl ChainWalker<'_> {
    fn factor_of(&self, mask: u32) -> Heap {
        let word: Vec<usize> = self
            .occurrence_vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        Heap::from_word(self.heap.graph(), &word).expect("factor word is in range")
    }

    fn walk(&mut self, current: u32) -> Result<()> {
        if current == self.full {
            if self.budget == 0 {
                return Err(Error::GuardExceeded {
                    quantity: "layer factorisations per heap",
                    actual: self.cap as u128 + 1,
                    limit: self.cap as u128,
                });
            }
            self.budget -= 1;
            self.out.push(LayerFactorisation {
                heap: self.heap.clone(),
                factors: self.factors.clone(),
            });
            return Ok(());
        }
        for idx in 0..self.ideals.len() {
            let next = self.ideals[idx];
            if next != current && current & !next == 0 {
                self.factors.push(self.factor_of(next & !current));
                self.walk(next)?;
                self.factors.pop();
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn limits() -> Limits {
        Limits::default()
    }

    fn pair() -> Graph {
        Graph::edgeless(2).unwrap()
    }

    fn pair_heap() -> Heap {
        Heap::from_word(&pair(), &[0, 1]).unwrap()
    }

    #[test]
    fn lexicographic_rack_of_worked_example() {
        let g = Graph::path(4).unwrap();
        let h = Heap::from_word(&g, &[0, 1, 3, 2, 1]).unwrap();
        let lex = Rack::lexicographic(&h).unwrap();
        assert_eq!(lex.layers(), [vec![0], vec![1], vec![3], vec![2], vec![1]]);
        assert_eq!(lex.to_string(), "0 | 1 | 3 | 2 | 1");
        // Fixed point of the involution.
        assert_eq!(lex.transfer_piece(), None);
        assert_eq!(lex.involute(), lex);
        // Piece in layer i carries number i by construction.
        let numbers = lex.occurrence_numbers();
        for (i, layer_numbers) in numbers.iter().enumerate() {
            assert_eq!(layer_numbers, &vec![i]);
        }
        assert!(matches!(
            Rack::lexicographic(&Heap::empty(&g)),
            Err(Error::EmptyHeap)
        ));
    }

    #[test]
    fn rack_enumeration_on_edgeless_pair() {
        let h = pair_heap();
        let racks = enumerate_racks(&h, &limits()).unwrap();
        let layer_sets: Vec<Vec<Vec<usize>>> = racks.iter().map(|r| r.layers().to_vec()).collect();
        assert_eq!(racks.len(), 3);
        assert!(layer_sets.contains(&vec![vec![0, 1]]));
        assert!(layer_sets.contains(&vec![vec![0], vec![1]]));
        assert!(layer_sets.contains(&vec![vec![1], vec![0]]));
        let beta = rack_counts(&h, &limits()).unwrap();
        assert_eq!(beta, vec![0, 1, 2]);
    }

    #[test]
    fn rack_enumeration_on_dependent_chain() {
        // Heap "0 1" on a single edge: 1 sits above 0, only one rack.
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let h = Heap::from_word(&g, &[0, 1]).unwrap();
        let racks = enumerate_racks(&h, &limits()).unwrap();
        assert_eq!(racks.len(), 1);
        assert_eq!(racks[0].layers(), [vec![0], vec![1]]);

        let single = Heap::from_word(&g, &[1]).unwrap();
        assert_eq!(enumerate_racks(&single, &limits()).unwrap().len(), 1);
    }

    #[test]
    fn beta_and_b_vanish_beyond_heap_size() {
        let h = pair_heap();
        assert_eq!(rack_count(&h, 3, &limits()).unwrap(), 0);
        assert_eq!(factorisation_count(&h, 3, &limits()).unwrap(), 0);
        assert_eq!(rack_count(&h, 17, &limits()).unwrap(), 0);
    }

    #[test]
    fn layer_factorisations_of_edgeless_pair() {
        let h = pair_heap();
        let b = factorisation_counts(&h, &limits()).unwrap();
        assert_eq!(b, vec![0, 1, 2]);
        let all = enumerate_layer_factorisations(&h, &limits()).unwrap();
        assert_eq!(all.len(), 3);
        for f in &all {
            let product = f
                .factors()
                .iter()
                .fold(Heap::empty(h.graph()), |acc, x| acc.multiply(x).unwrap());
            assert_eq!(&product, f.heap());
        }
    }

    #[test]
    fn factorisations_outnumber_racks_when_factors_stack() {
        // Heap "0 1" on an edge has one rack but two factorisations
        // ([0][1] and [01] as a single non-trivial factor).
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let h = Heap::from_word(&g, &[0, 1]).unwrap();
        assert_eq!(rack_counts(&h, &limits()).unwrap(), vec![0, 0, 1]);
        assert_eq!(factorisation_counts(&h, &limits()).unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn empty_heap_conventions() {
        let g = pair();
        let empty = Heap::empty(&g);
        assert_eq!(rack_counts(&empty, &limits()).unwrap(), vec![1]);
        assert_eq!(factorisation_counts(&empty, &limits()).unwrap(), vec![1]);
        let racks = enumerate_racks(&empty, &limits()).unwrap();
        assert_eq!(racks.len(), 1);
        assert_eq!(racks[0].layer_count(), 0);
    }

    #[test]
    fn occurrence_numbers_depend_on_heap_not_rack() {
        let h = pair_heap();
        let merged = Rack::new(h.clone(), vec![vec![0, 1]]).unwrap();
        assert_eq!(merged.occurrence_numbers(), vec![vec![0, 1]]);
        let reversed = Rack::new(h.clone(), vec![vec![1], vec![0]]).unwrap();
        assert_eq!(reversed.occurrence_numbers(), vec![vec![1], vec![0]]);
    }

    #[test]
    fn transfer_piece_cases_from_the_worked_pair() {
        let h = pair_heap();
        // Both pieces share a layer: both are non-lonely, 0 is smaller.
        let merged = Rack::new(h.clone(), vec![vec![0, 1]]).unwrap();
        let tp = merged.transfer_piece().unwrap();
        assert_eq!((tp.vertex, tp.number, tp.lonely), (0, 0, false));
        // Reversed singletons: 0 is lonely at layer 1 with number 0.
        let reversed = Rack::new(h.clone(), vec![vec![1], vec![0]]).unwrap();
        let tp = reversed.transfer_piece().unwrap();
        assert_eq!((tp.vertex, tp.layer, tp.number, tp.lonely), (0, 1, 0, true));
    }

    #[test]
    fn involution_on_the_worked_pair() {
        let h = pair_heap();
        let merged = Rack::new(h.clone(), vec![vec![0, 1]]).unwrap();
        let reversed = Rack::new(h.clone(), vec![vec![1], vec![0]]).unwrap();
        let lex = Rack::lexicographic(&h).unwrap();

        assert_eq!(merged.involute(), reversed);
        assert_eq!(reversed.involute(), merged);
        assert_eq!(lex.involute(), lex);

        // Layer counts step by exactly one off the fixed point.
        assert_eq!(
            merged
                .layer_count()
                .abs_diff(merged.involute().layer_count()),
            1
        );
    }

    #[test]
    fn lower_special_detection() {
        let h = pair_heap();
        assert!(Rack::new(h.clone(), vec![vec![1], vec![0]])
            .unwrap()
            .is_lower_special());
        assert!(!Rack::new(h.clone(), vec![vec![0], vec![1]])
            .unwrap()
            .is_lower_special());
        assert!(Rack::new(h.clone(), vec![vec![0, 1]])
            .unwrap()
            .is_lower_special());
    }

    #[test]
    fn lower_special_respects_order() {
        // Under order 1 < 0 the largest piece is 0.
        let g = pair().with_order(&[1, 0]).unwrap();
        let h = Heap::from_word(&g, &[0, 1]).unwrap();
        assert!(Rack::new(h.clone(), vec![vec![0], vec![1]])
            .unwrap()
            .is_lower_special());
        assert!(!Rack::new(h, vec![vec![1], vec![0]])
            .unwrap()
            .is_lower_special());
    }

    #[test]
    fn rack_validation_rejects_garbage() {
        let h = pair_heap();
        // Wrong product.
        assert!(matches!(
            Rack::new(h.clone(), vec![vec![0]]),
            Err(Error::InvalidRack(_))
        ));
        // Dependent layer on a graph with an edge.
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let chained = Heap::from_word(&g, &[0, 1]).unwrap();
        assert!(matches!(
            Rack::new(chained, vec![vec![0, 1]]),
            Err(Error::InvalidRack(_))
        ));
    }

    #[test]
    fn rack_parsing() {
        assert_eq!(
            parse_layers("0 3 | 1 | 2 | 1").unwrap(),
            vec![vec![0, 3], vec![1], vec![2], vec![1]]
        );
        assert_eq!(parse_layers("  ").unwrap(), Vec::<Vec<usize>>::new());
        assert!(parse_layers("0 | | 1").is_err());
        assert!(parse_layers("0 x").is_err());
    }

    #[test]
    fn enumeration_guard_trips() {
        let g = Graph::edgeless(4).unwrap();
        let h = Heap::from_word(&g, &[0, 1, 2, 3]).unwrap();
        let tight = Limits {
            max_racks: 10,
            ..Limits::default()
        };
        // The 4-antichain has 75 racks (ordered set partitions of 4).
        assert!(matches!(
            enumerate_racks(&h, &tight),
            Err(Error::GuardExceeded { .. })
        ));
        assert_eq!(enumerate_racks(&h, &limits()).unwrap().len(), 75);

        let too_many_pieces = Limits {
            max_heap_pieces: 3,
            ..Limits::default()
        };
        assert!(matches!(
            rack_counts(&h, &too_many_pieces),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn racks_are_a_subset_of_factorisations() {
        // beta_h(k) <= b_h(k) pointwise: every rack is a layer factorisation.
        let p4 = Graph::path(4).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let words: [(&Graph, &[usize]); 6] = [
            (&p4, &[0, 1, 3, 2, 1]),
            (&p4, &[0, 1, 2, 3]),
            (&p4, &[2, 2, 2]),
            (&p4, &[3, 1, 0, 2, 0]),
            (&k3, &[0, 1, 2, 0]),
            (&k3, &[2, 1]),
        ];
        for (g, word) in words {
            let h = Heap::from_word(g, word).unwrap();
            let beta = rack_counts(&h, &limits()).unwrap();
            let b = factorisation_counts(&h, &limits()).unwrap();
            for k in 0..beta.len() {
                assert!(
                    beta[k] <= b[k],
                    "rack count exceeds factorisation count at k = {k} for {h}"
                );
            }
            // Total factorisation count agrees with the materialised list,
            // and every listed factorisation multiplies back to the heap.
            let total: u64 = b.iter().sum();
            let listed = enumerate_layer_factorisations(&h, &limits()).unwrap();
            assert_eq!(
                total,
                listed.len() as u64,
                "chain DP vs enumeration for {h}"
            );
            for f in &listed {
                LayerFactorisation::new(h.clone(), f.factors().to_vec())
                    .unwrap_or_else(|e| panic!("invalid factorisation of {h}: {e}"));
            }
        }
    }

    #[test]
    fn involution_suite_on_worked_heap() {
        let g = Graph::path(4).unwrap();
        let h = Heap::from_word(&g, &[0, 1, 3, 2, 1]).unwrap();
        let racks = enumerate_racks(&h, &limits()).unwrap();
        let lex = Rack::lexicographic(&h).unwrap();
        let mut fixed = 0;
        for r in &racks {
            let image = r.involute();
            assert_eq!(image.involute(), *r, "f(f(T)) = T failed at {r}");
            if image == *r {
                fixed += 1;
                assert_eq!(*r, lex);
            } else {
                assert_eq!(r.layer_count().abs_diff(image.layer_count()), 1);
            }
        }
        assert_eq!(fixed, 1);
    }
}
