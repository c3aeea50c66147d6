//! The chromatic polynomial assembled from racks of multilinear heaps, its
//! weak-pair counterpart, and the coefficient identities built from Stirling
//! numbers, keychains and lower-special racks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{binomial, factorial, partitions_into_blocks, Graph, Limits};
use crate::heap::enumerate_multilinear_heaps;
use crate::orient::{acyclic_orientations, sources, unique_source_at};
use crate::poly::IntPolynomial;
use crate::rack::{factorisation_counts, rack_counts, visit_racks};

/// Unsigned Stirling numbers of the first kind |s(k, r)| for
/// `0 <= r <= k <= max_k`; the signed value is `(-1)^(k-r) |s(k, r)|`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    unsigned: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_k: usize) -> StirlingTable {
        let mut unsigned: Vec<Vec<BigInt>> = Vec::with_capacity(max_k + 1);
        unsigned.push(vec![BigInt::one()]);
        for k in 1..=max_k {
            let mut row = vec![BigInt::zero(); k + 1];
            for r in 1..=k {
                // |s(k, r)| = |s(k-1, r-1)| + (k-1) |s(k-1, r)|
                let carry = unsigned[k - 1][r - 1].clone();
                let scaled = unsigned[k - 1]
                    .get(r)
                    .map(|x| x * BigInt::from(k as u64 - 1))
                    .unwrap_or_else(BigInt::zero);
                row[r] = carry + scaled;
            }
            unsigned.push(row);
        }
        StirlingTable { unsigned }
    }

    pub fn max_k(&self) -> usize {
        self.unsigned.len() - 1
    }

    /// |s(k, r)|, zero outside the triangle.
    pub fn unsigned(&self, k: usize, r: usize) -> BigInt {
        self.unsigned
            .get(k)
            .and_then(|row| row.get(r))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// s(k, r) = (-1)^(k-r) |s(k, r)|.
    pub fn signed(&self, k: usize, r: usize) -> BigInt {
        let u = self.unsigned(k, r);
        if r <= k && (k - r) % 2 == 1 {
            -u
        } else {
            u
        }
    }
}

/// `sums[k]` = Σ over multilinear heaps F of β_F(k): the total number of
/// k-layer racks across all of M(G).
pub fn rack_layer_sums(g: &Graph, limits: &Limits) -> Result<Vec<BigInt>> {
    let mut sums = vec![BigInt::zero(); g.n() + 1];
    for h in enumerate_multilinear_heaps(g, limits)? {
        for (k, c) in rack_counts(&h, limits)?.iter().enumerate() {
            if *c > 0 {
                sums[k] += BigInt::from(*c);
            }
        }
    }
    Ok(sums)
}

/// The chromatic polynomial as Σ_F Σ_k β_F(k) · x(x-1)…(x-k+1) / k!.
///
/// The k! division is only exact after summing over all multilinear heaps
/// (the quotient is the number of partitions into k independent sets), so the
/// assembly aggregates first and divides with an asserted-exact integer
/// division; no rational arithmetic is involved.
pub fn chromatic_via_racks(g: &Graph, limits: &Limits) -> Result<IntPolynomial> {
    limits.check_graph_size(g.n())?;
    let sums = rack_layer_sums(g, limits)?;
    let mut chi = IntPolynomial::zero();
    for (k, total) in sums.iter().enumerate() {
        if total.is_zero() {
            continue;
        }
        let (q, rem) = total.div_rem(&factorial(k));
        assert!(
            rem.is_zero(),
            "rack totals for k = {k} must be divisible by k!"
        );
        chi = &chi + &IntPolynomial::falling_factorial(k).scale(&q);
    }
    Ok(chi)
}

/// Brute-force count of pairs (σ: V -> {1..λ}, acyclic orientation) with
/// σ(u) > σ(v) (strict) or σ(u) >= σ(v) (weak) along every directed edge
/// u -> v.
pub fn count_compatible_pairs(
    g: &Graph,
    lambda: u64,
    strict: bool,
    limits: &Limits,
) -> Result<BigInt> {
    limits.check_pair_weight(g.n(), g.m(), lambda)?;
    if g.n() == 0 {
        // The empty map and the empty orientation form the single pair.
        return Ok(BigInt::one());
    }
    if lambda == 0 {
        return Ok(BigInt::zero());
    }
    let acyclic = acyclic_orientations(g, limits)?;
    let mut total: u64 = 0;
    let mut coloring = vec![0u64; g.n()];
    for o in &acyclic {
        let directed: Vec<(usize, usize)> = o.directed_edges(g).collect();
        coloring.fill(0);
        loop {
            let ok = directed.iter().all(|&(tail, head)| {
                if strict {
                    coloring[tail] > coloring[head]
                } else {
                    coloring[tail] >= coloring[head]
                }
            });
            if ok {
                total += 1;
            }
            let mut pos = 0;
            loop {
                if pos == g.n() {
                    break;
                }
                coloring[pos] += 1;
                if coloring[pos] < lambda {
                    break;
                }
                coloring[pos] = 0;
                pos += 1;
            }
            if pos == g.n() {
                break;
            }
        }
    }
    Ok(BigInt::from(total))
}

/// The weak-inequality counting polynomial evaluated at `lambda`:
/// Σ_F Σ_j 𝔟_F(j) · C(λ, j), exactly.
pub fn chromatic_bar(g: &Graph, lambda: u64, limits: &Limits) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for h in enumerate_multilinear_heaps(g, limits)? {
        for (j, c) in factorisation_counts(&h, limits)?.iter().enumerate() {
            if *c > 0 {
                total += BigInt::from(*c) * binomial(lambda, j);
            }
        }
    }
    Ok(total)
}

/// The coefficient of λ^r in the chromatic polynomial via the Stirling
/// formula a_r = Σ_k (-1)^(k-r) π_G(k) |s(k, r)|.
pub fn chromatic_coefficient(g: &Graph, r: usize, limits: &Limits) -> Result<BigInt> {
    if r > g.n() {
        return Err(Error::OutOfRange {
            what: "coefficient degree r",
            value: r,
            expected: format!("0..={}", g.n()),
        });
    }
    let pi = g.independent_partition_counts(limits)?;
    let table = StirlingTable::new(g.n());
    let mut a = BigInt::zero();
    for (k, &count) in pi.iter().enumerate() {
        if count > 0 {
            a += table.signed(k, r) * BigInt::from(count);
        }
    }
    Ok(a)
}

/// Number of r-keychains over all independent-set partitions of size k:
/// π_G(k) · |s(k, r)|. Zero outside `r <= k <= n`.
pub fn keychain_count(g: &Graph, k: usize, r: usize, limits: &Limits) -> Result<BigInt> {
    if k > g.n() || r > k {
        return Ok(BigInt::zero());
    }
    let pi = g.independent_partition_counts(limits)?;
    let table = StirlingTable::new(k);
    Ok(BigInt::from(pi[k]) * table.unsigned(k, r))
}

/// Number of chains (1-keychains) of size k: π_G(k) · (k-1)! for k >= 1.
pub fn chain_count(g: &Graph, k: usize, limits: &Limits) -> Result<BigInt> {
    if k == 0 || k > g.n() {
        return Ok(BigInt::zero());
    }
    let pi = g.independent_partition_counts(limits)?;
    Ok(BigInt::from(pi[k]) * factorial(k - 1))
}

/// Number of k-layer racks, over all multilinear heaps, whose bottom layer
/// contains the largest vertex. Matches `chain_count` for every k.
pub fn lower_special_rack_count(g: &Graph, k: usize, limits: &Limits) -> Result<BigInt> {
    let mut count: u64 = 0;
    for h in enumerate_multilinear_heaps(g, limits)? {
        let Some(max) = g.order().max_vertex(h.support()) else {
            continue;
        };
        visit_racks(&h, limits, |layers| {
            if layers.len() == k && layers.first().is_some_and(|l| l.contains(&max)) {
                count += 1;
            }
        })?;
    }
    Ok(BigInt::from(count))
}

/// Acyclic orientations of the subgraph induced by `block` having their
/// unique source at the block's largest vertex.
fn unique_source_at_block_max(g: &Graph, block: &[usize], limits: &Limits) -> Result<u64> {
    let (sub, _) = g.induced_subgraph(block)?;
    let target = sub
        .order()
        .max_vertex(sub.vertices())
        .expect("blocks are nonempty");
    let mut count = 0u64;
    for o in acyclic_orientations(&sub, limits)? {
        if sources(&sub, &o) == [target] {
            count += 1;
        }
    }
    Ok(count)
}

/// Both unique-source counts over the partitions of V into r nonempty
/// blocks: the (partition, orientation-tuple) pair count
/// Σ Π_i |{unique-source-at-max orientations of G(V_i)}| — which equals
/// (-1)^(n-r) a_r — and, as a side readout, the number of partitions where
/// every block admits at least one such orientation.
pub fn unique_source_partition_counts(
    g: &Graph,
    r: usize,
    limits: &Limits,
) -> Result<(BigInt, BigInt)> {
    if r == 0 || r > g.n() {
        return Err(Error::OutOfRange {
            what: "block count r",
            value: r,
            expected: format!("1..={}", g.n()),
        });
    }
    limits.check_graph_size(g.n())?;
    let mut cache: HashMap<Vec<usize>, u64> = HashMap::new();
    let mut pairs = BigInt::zero();
    let mut witnessed_partitions = BigInt::zero();
    for partition in partitions_into_blocks(g.n(), r) {
        let mut product: u64 = 1;
        for block in &partition {
            let count = match cache.get(block) {
                Some(&c) => c,
                None => {
                    let c = unique_source_at_block_max(g, block, limits)?;
                    cache.insert(block.clone(), c);
                    c
                }
            };
            product = product.saturating_mul(count);
            if product == 0 {
                break;
            }
        }
        if product > 0 {
            pairs += BigInt::from(product);
            witnessed_partitions += BigInt::one();
        }
    }
    Ok((pairs, witnessed_partitions))
}

/// The (partition, orientation-tuple) pair count of `unique_source_partition_counts`.
pub fn unique_source_partition_count(g: &Graph, r: usize, limits: &Limits) -> Result<BigInt> {
    Ok(unique_source_partition_counts(g, r, limits)?.0)
}

/// Acyclic orientations of the whole graph with unique source at `v`, by
/// brute force.
pub fn unique_source_count(g: &Graph, v: usize, limits: &Limits) -> Result<BigInt> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let mut count = 0u64;
    for o in acyclic_orientations(g, limits)? {
        if unique_source_at(g, &o, v) {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::enumerate_orientations;

    fn limits() -> Limits {
        Limits::default()
    }

    fn k3() -> Graph {
        Graph::complete(3).unwrap()
    }

    fn p4() -> Graph {
        Graph::path(4).unwrap()
    }

    #[test]
    fn stirling_table_values() {
        let t = StirlingTable::new(6);
        assert_eq!(t.unsigned(0, 0), BigInt::one());
        assert_eq!(t.unsigned(3, 0), BigInt::zero());
        assert_eq!(t.unsigned(3, 1), BigInt::from(2));
        assert_eq!(t.unsigned(5, 1), BigInt::from(24));
        assert_eq!(t.unsigned(5, 2), BigInt::from(50));
        assert_eq!(t.unsigned(6, 3), BigInt::from(225));
        assert_eq!(t.unsigned(4, 4), BigInt::one());
        assert_eq!(t.signed(5, 2), BigInt::from(-50));
        assert_eq!(t.signed(5, 3), BigInt::from(35));
        // Row sums: Σ_r |s(k, r)| = k!.
        for k in 0..=6 {
            let sum: BigInt = (0..=k).map(|r| t.unsigned(k, r)).sum();
            assert_eq!(sum, factorial(k));
        }
    }

    #[test]
    fn chromatic_via_racks_matches_known_polynomials() {
        let l = limits();
        assert_eq!(
            chromatic_via_racks(&k3(), &l).unwrap(),
            IntPolynomial::from_i64_coeffs(&[0, 2, -3, 1])
        );
        assert_eq!(
            chromatic_via_racks(&p4(), &l).unwrap(),
            IntPolynomial::from_i64_coeffs(&[0, -1, 3, -3, 1])
        );
        assert_eq!(
            chromatic_via_racks(&Graph::new(1, &[]).unwrap(), &l).unwrap(),
            IntPolynomial::from_i64_coeffs(&[0, 1])
        );
        assert_eq!(
            chromatic_via_racks(&Graph::new(0, &[]).unwrap(), &l).unwrap(),
            IntPolynomial::one()
        );
    }

    #[test]
    fn strict_pairs_equal_proper_colorings() {
        let l = limits();
        for g in [k3(), p4()] {
            for lambda in 0..=3u64 {
                assert_eq!(
                    count_compatible_pairs(&g, lambda, true, &l).unwrap(),
                    BigInt::from(g.count_colorings(lambda, &l).unwrap()),
                    "graph {g}, lambda {lambda}"
                );
            }
        }
        let k1 = Graph::new(1, &[]).unwrap();
        for lambda in 0..=4u64 {
            assert_eq!(
                count_compatible_pairs(&k1, lambda, true, &l).unwrap(),
                BigInt::from(lambda)
            );
        }
    }

    #[test]
    fn weak_pairs_at_one_count_acyclic_orientations() {
        let l = limits();
        for g in [k3(), p4(), Graph::cycle(4).unwrap()] {
            let acyclic = acyclic_orientations(&g, &l).unwrap().len();
            assert_eq!(
                count_compatible_pairs(&g, 1, false, &l).unwrap(),
                BigInt::from(acyclic as u64)
            );
            assert_eq!(
                chromatic_bar(&g, 1, &l).unwrap(),
                BigInt::from(acyclic as u64)
            );
        }
    }

    #[test]
    fn chromatic_bar_matches_weak_pairs() {
        let l = limits();
        for g in [k3(), p4()] {
            for lambda in 0..=4u64 {
                assert_eq!(
                    chromatic_bar(&g, lambda, &l).unwrap(),
                    count_compatible_pairs(&g, lambda, false, &l).unwrap(),
                    "graph {g}, lambda {lambda}"
                );
            }
        }
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(chromatic_bar(&k1, 5, &l).unwrap(), BigInt::from(5));
    }

    #[test]
    fn coefficients_match_oracle() {
        let l = limits();
        assert_eq!(
            chromatic_coefficient(&p4(), 2, &l).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            chromatic_coefficient(&k3(), 1, &l).unwrap(),
            BigInt::from(2)
        );
        for g in [k3(), p4(), Graph::cycle(4).unwrap()] {
            assert_eq!(chromatic_coefficient(&g, g.n(), &l).unwrap(), BigInt::one());
            let chi = g.chromatic_oracle(&l).unwrap();
            for r in 0..=g.n() {
                assert_eq!(
                    chromatic_coefficient(&g, r, &l).unwrap(),
                    chi.coeff(r),
                    "graph {g}, r {r}"
                );
            }
        }
        assert!(chromatic_coefficient(&k3(), 4, &l).is_err());
    }

    #[test]
    fn keychain_and_chain_examples() {
        let l = limits();
        assert_eq!(keychain_count(&k3(), 3, 1, &l).unwrap(), BigInt::from(2));
        assert_eq!(keychain_count(&k3(), 3, 3, &l).unwrap(), BigInt::one());
        assert_eq!(keychain_count(&p4(), 2, 1, &l).unwrap(), BigInt::one());
        assert_eq!(keychain_count(&p4(), 1, 2, &l).unwrap(), BigInt::zero());

        assert_eq!(chain_count(&k3(), 3, &l).unwrap(), BigInt::from(2));
        assert_eq!(chain_count(&p4(), 2, &l).unwrap(), BigInt::one());
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(chain_count(&k1, 1, &l).unwrap(), BigInt::one());
        assert_eq!(chain_count(&k3(), 0, &l).unwrap(), BigInt::zero());
    }

    #[test]
    fn chains_equal_lower_special_racks() {
        let l = limits();
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(lower_special_rack_count(&k1, 1, &l).unwrap(), BigInt::one());
        let pair = Graph::edgeless(2).unwrap();
        assert_eq!(
            lower_special_rack_count(&pair, 2, &l).unwrap(),
            BigInt::one()
        );
        for g in [k3(), p4(), pair] {
            for k in 0..=g.n() {
                assert_eq!(
                    lower_special_rack_count(&g, k, &l).unwrap(),
                    chain_count(&g, k, &l).unwrap(),
                    "graph {g}, k {k}"
                );
            }
        }
    }

    #[test]
    fn partition_counts_match_signed_coefficients() {
        let l = limits();
        let (pairs, _) = unique_source_partition_counts(&k3(), 1, &l).unwrap();
        assert_eq!(pairs, BigInt::from(2));
        for g in [k3(), p4(), Graph::cycle(4).unwrap()] {
            assert_eq!(
                unique_source_partition_count(&g, g.n(), &l).unwrap(),
                BigInt::one()
            );
            for r in 1..=g.n() {
                let a = chromatic_coefficient(&g, r, &l).unwrap();
                let signed = if (g.n() - r) % 2 == 1 { -a } else { a };
                assert_eq!(
                    unique_source_partition_count(&g, r, &l).unwrap(),
                    signed,
                    "graph {g}, r {r}"
                );
            }
        }
        assert!(unique_source_partition_count(&k3(), 0, &l).is_err());
        assert!(unique_source_partition_count(&k3(), 4, &l).is_err());
    }

    #[test]
    fn unique_source_counts() {
        let l = limits();
        assert_eq!(unique_source_count(&k3(), 0, &l).unwrap(), BigInt::from(2));
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(unique_source_count(&k1, 0, &l).unwrap(), BigInt::one());
        let total: BigInt = (0..4)
            .map(|v| unique_source_count(&p4(), v, &l).unwrap())
            .sum();
        let acyclic = enumerate_orientations(&p4(), &l).unwrap().len();
        assert!(total <= BigInt::from(acyclic as u64));
        assert!(unique_source_count(&k3(), 5, &l).is_err());
    }

    #[test]
    fn rack_partition_bridge() {
        // Σ_F β_F(k) = k! · π_G(k).
        let l = limits();
        for g in [k3(), p4(), Graph::cycle(4).unwrap()] {
            let sums = rack_layer_sums(&g, &l).unwrap();
            let pi = g.independent_partition_counts(&l).unwrap();
            for k in 0..=g.n() {
                assert_eq!(
                    sums[k],
                    factorial(k) * BigInt::from(pi[k]),
                    "graph {g}, k {k}"
                );
            }
        }
    }

    #[test]
    fn reciprocity_on_small_graphs() {
        let l = limits();
        for g in [k3(), p4()] {
            let chi = chromatic_via_racks(&g, &l).unwrap();
            let acyclic = acyclic_orientations(&g, &l).unwrap().len();
            let sign = if g.n() % 2 == 1 {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            assert_eq!(
                sign.clone() * chi.eval_i64(-1),
                BigInt::from(acyclic as u64)
            );
            for lambda in 0..=4i64 {
                assert_eq!(
                    chromatic_bar(&g, lambda as u64, &l).unwrap(),
                    sign.clone() * chi.eval_i64(-lambda),
                    "graph {g}, lambda {lambda}"
                );
            }
        }
    }
}
