//! Simple undirected graphs with a total vertex order, the edge-list file
//! format, independent-set machinery, and the exhaustive oracles the rest of
//! the crate is cross-checked against.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, ParseError, Result};
use crate::poly::IntPolynomial;

/// Largest representable vertex count (adjacency is kept in `u64` bitmasks).
pub const MAX_VERTICES: usize = 64;

/// Size guards for the exhaustive enumerations. Violations are hard errors,
/// never silent truncation; defaults are sized for desk-scale verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Vertex-count bound for oracle computations (`n <= max_n`).
    pub max_n: usize,
    /// Bound on `2^m` when enumerating orientations.
    pub max_orientations: u128,
    /// Bound on `lambda^n` when enumerating colourings.
    pub max_colorings: u128,
    /// Bound on `n!` when enumerating permutation words.
    pub max_words: u128,
    /// Bound on heap pieces for rack / layer-factorisation machinery.
    pub max_heap_pieces: usize,
    /// Bound on the number of racks visited per heap.
    pub max_racks: u64,
    /// Bound on `lambda^n * 2^m` for compatible-pair counting.
    pub max_pair_weight: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 10,
            max_orientations: 1 << 20,
            max_colorings: 10_000_000,
            max_words: 3_628_800, // 10!
            max_heap_pieces: 12,
            max_racks: 10_000_000,
            max_pair_weight: 1_000_000_000,
        }
    }
}

impl Limits {
    fn guard(quantity: &'static str, actual: u128, limit: u128) -> Result<()> {
        if actual > limit {
            return Err(Error::GuardExceeded {
                quantity,
                actual,
                limit,
            });
        }
        Ok(())
    }

    pub fn check_graph_size(&self, n: usize) -> Result<()> {
        Self::guard("vertex count n", n as u128, self.max_n as u128)
    }

    pub fn check_orientations(&self, m: usize) -> Result<()> {
        let count = (1u128).checked_shl(m as u32).ok_or(Error::GuardExceeded {
            quantity: "orientation count 2^m",
            actual: u128::MAX,
            limit: self.max_orientations,
        })?;
        Self::guard("orientation count 2^m", count, self.max_orientations)
    }

    pub fn check_colorings(&self, n: usize, lambda: u64) -> Result<()> {
        Self::guard(
            "colouring count lambda^n",
            checked_pow(lambda as u128, n, self.max_colorings),
            self.max_colorings,
        )
    }

    pub fn check_words(&self, n: usize) -> Result<()> {
        let mut f: u128 = 1;
        for i in 1..=n as u128 {
            f = f.saturating_mul(i);
        }
        Self::guard("permutation words n!", f, self.max_words)
    }

    pub fn check_heap_pieces(&self, pieces: usize) -> Result<()> {
        Self::guard("heap pieces", pieces as u128, self.max_heap_pieces as u128)
    }

    pub fn check_pair_weight(&self, n: usize, m: usize, lambda: u64) -> Result<()> {
        let colorings = checked_pow(lambda as u128, n, u128::MAX / 2);
        let orientations = (1u128).checked_shl(m as u32).unwrap_or(u128::MAX / 2);
        Self::guard(
            "pair weight lambda^n * 2^m",
            colorings.saturating_mul(orientations),
            self.max_pair_weight,
        )
    }
}

/// `base^exp` saturating just above `cap` (enough to fail a guard check).
fn checked_pow(base: u128, exp: usize, cap: u128) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc > cap {
            return acc;
        }
    }
    acc
}

/// A total order on the vertices `0..n-1`. The natural order is the identity;
/// any permutation can be installed to re-run order-sensitive computations
/// (normal forms, the involution, lower-special racks, block maxima).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexOrder {
    /// `rank_to_vertex[r]` = the vertex with rank `r` (rank 0 = smallest).
    rank_to_vertex: Vec<usize>,
    /// `vertex_to_rank[v]` = rank of vertex `v`.
    vertex_to_rank: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        VertexOrder {
            rank_to_vertex: (0..n).collect(),
            vertex_to_rank: (0..n).collect(),
        }
    }

    /// Builds an order from a permutation listed smallest-first:
    /// `perm[r]` is the vertex with rank `r`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut vertex_to_rank = vec![usize::MAX; n];
        for (rank, &v) in perm.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrder(format!(
                    "entry {v} out of range for a permutation of 0..{n}"
                )));
            }
            if vertex_to_rank[v] != usize::MAX {
                return Err(Error::InvalidOrder(format!("vertex {v} listed twice")));
            }
            vertex_to_rank[v] = rank;
        }
        Ok(VertexOrder {
            rank_to_vertex: perm.to_vec(),
            vertex_to_rank,
        })
    }

    pub fn len(&self) -> usize {
        self.rank_to_vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank_to_vertex.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.vertex_to_rank[v]
    }

    pub fn vertex_at_rank(&self, r: usize) -> usize {
        self.rank_to_vertex[r]
    }

    pub fn min_vertex(&self, vs: impl IntoIterator<Item = usize>) -> Option<usize> {
        vs.into_iter().min_by_key(|&v| self.rank(v))
    }

    pub fn max_vertex(&self, vs: impl IntoIterator<Item = usize>) -> Option<usize> {
        vs.into_iter().max_by_key(|&v| self.rank(v))
    }
}

/// A simple, loop-free undirected graph on vertices `0..n-1` together with a
/// total vertex order. Vertices are the basic pieces; the dependency relation
/// is adjacency plus reflexivity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    /// Sorted, deduplicated, each stored as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    /// Neighbour bitmask per vertex.
    neighbors: Vec<u64>,
    order: VertexOrder,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::GuardExceeded {
                quantity: "vertex count n (bitmask representation cap)",
                actual: n as u128,
                limit: MAX_VERTICES as u128,
            });
        }
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(Error::Loop { vertex: a });
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        let mut neighbors = vec![0u64; n];
        for &(u, v) in &normalized {
            neighbors[u] |= 1 << v;
            neighbors[v] |= 1 << u;
        }
        Ok(Graph {
            n,
            edges: normalized,
            neighbors,
            order: VertexOrder::identity(n),
        })
    }

    /// Replaces the vertex order; `perm` lists the vertices smallest-first.
    pub fn with_order(mut self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidOrder(format!(
                "permutation has {} entries, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        self.order = VertexOrder::from_permutation(perm)?;
        Ok(self)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange {
                what: "cycle length",
                value: n,
                expected: "at least 3".to_string(),
            });
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.neighbors[u] >> v) & 1 == 1
    }

    /// The dependency relation: adjacency plus reflexivity.
    pub fn dependent(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].count_ones() as usize
    }

    /// True iff no edge has both endpoints in `vs`. Out-of-range vertices are
    /// a caller bug, so they panic.
    pub fn is_independent<I>(&self, vs: I) -> bool
    where
        I: IntoIterator<Item = usize>,
    {
        let mut mask: u64 = 0;
        for v in vs {
            assert!(v < self.n, "vertex {v} out of range for n = {}", self.n);
            mask |= 1 << v;
        }
        (0..self.n)
            .filter(|&v| (mask >> v) & 1 == 1)
            .all(|v| self.neighbors[v] & mask == 0)
    }

    /// The subgraph induced by `vs`. Vertices are re-indexed `0..vs.len()` in
    /// ascending original id; the returned map sends new ids back to original
    /// ids. The vertex order is inherited from the original graph.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut kept: Vec<usize> = vs.to_vec();
        kept.sort_unstable();
        kept.dedup();
        for &v in &kept {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        let new_id: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|(u, v)| new_id.contains_key(u) && new_id.contains_key(v))
            .map(|(u, v)| (new_id[u], new_id[v]))
            .collect();
        let mut graph = Graph::new(kept.len(), &edges)?;
        // Inherit the order: new ids sorted by the rank of their original id.
        let mut perm: Vec<usize> = (0..kept.len()).collect();
        perm.sort_by_key(|&i| self.order.rank(kept[i]));
        graph = graph.with_order(&perm)?;
        Ok((graph, kept))
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = 1u64;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let mut fresh = self.neighbors[v] & !seen;
            seen |= fresh;
            while fresh != 0 {
                let u = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                stack.push(u);
            }
        }
        seen.count_ones() as usize == self.n
    }

    /// Renders the graph in the edge-list file format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Number of proper colourings with colours `{1..lambda}`, by exhaustive
    /// enumeration of all `lambda^n` maps.
    pub fn count_colorings(&self, lambda: u64, limits: &Limits) -> Result<u64> {
        limits.check_colorings(self.n, lambda)?;
        if self.n == 0 {
            return Ok(1);
        }
        if lambda == 0 {
            return Ok(0);
        }
        let mut coloring = vec![0u64; self.n];
        let mut count = 0u64;
        loop {
            let proper = self.edges.iter().all(|&(u, v)| coloring[u] != coloring[v]);
            if proper {
                count += 1;
            }
            // Odometer increment over base-lambda strings.
            let mut pos = 0;
            loop {
                if pos == self.n {
                    return Ok(count);
                }
                coloring[pos] += 1;
                if coloring[pos] < lambda {
                    break;
                }
                coloring[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Exact chromatic polynomial by deletion–contraction, memoised on the
    /// edge set. This is the independent oracle the rack-based expression is
    /// checked against.
    pub fn chromatic_oracle(&self, limits: &Limits) -> Result<IntPolynomial> {
        limits.check_graph_size(self.n)?;
        let mut memo = ChromaticMemo::new();
        Ok(deletion_contraction(self.n, self.edges.clone(), &mut memo))
    }

    /// All partitions of the vertex set into exactly `k` nonempty independent
    /// blocks, in restricted-growth-string order. Blocks are sorted, as is
    /// each block's vertex list.
    pub fn independent_partitions(&self, k: usize) -> Vec<Vec<Vec<usize>>> {
        partitions_into_blocks(self.n, k)
            .into_iter()
            .filter(|p| {
                p.iter()
                    .all(|block| self.is_independent(block.iter().copied()))
            })
            .collect()
    }

    /// `pi[k]` = number of partitions of V into `k` independent sets, for
    /// `k = 0..=n`.
    pub fn independent_partition_counts(&self, limits: &Limits) -> Result<Vec<u64>> {
        limits.check_graph_size(self.n)?;
        let mut pi = vec![0u64; self.n + 1];
        if self.n == 0 {
            pi[0] = 1;
            return Ok(pi);
        }
        for rgs in restricted_growth_strings(self.n) {
            let blocks = rgs_blocks(&rgs);
            if blocks
                .iter()
                .all(|block| self.is_independent(block.iter().copied()))
            {
                pi[blocks.len()] += 1;
            }
        }
        Ok(pi)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={}", self.n, self.m())
    }
}

type ChromaticMemo = HashMap<(usize, Vec<(usize, usize)>), IntPolynomial>;

fn deletion_contraction(
    n: usize,
    edges: Vec<(usize, usize)>,
    memo: &mut ChromaticMemo,
) -> IntPolynomial {
    if edges.is_empty() {
        return IntPolynomial::monomial(n);
    }
    let key = (n, edges.clone());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let (u, v) = edges[0];
    // Deletion: drop the edge.
    let deleted: Vec<_> = edges[1..].to_vec();
    // Contraction: merge v into u, dropping loops and parallel edges.
    let mut contracted: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    let relabel = |w: usize| {
        let w = if w == v { u } else { w };
        if w > v {
            w - 1
        } else {
            w
        }
    };
    for &(a, b) in &edges[1..] {
        let (a, b) = (relabel(a), relabel(b));
        if a != b {
            contracted.push((a.min(b), a.max(b)));
        }
    }
    contracted.sort_unstable();
    contracted.dedup();
    let chi =
        &deletion_contraction(n, deleted, memo) - &deletion_contraction(n - 1, contracted, memo);
    memo.insert(key, chi.clone());
    chi
}

/// Parses the edge-list file format: optional `#` comment lines, the first
/// data line is `n`, each subsequent data line is `u v` (0-based). Blank
/// lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if tokens.len() != 1 {
                    return Err(ParseError::MalformedLine {
                        line: line_no,
                        content: raw.to_string(),
                    }
                    .into());
                }
                n = Some(parse_usize(tokens[0], line_no, raw)?);
            }
            Some(n) => {
                if tokens.len() != 2 {
                    return Err(ParseError::MalformedLine {
                        line: line_no,
                        content: raw.to_string(),
                    }
                    .into());
                }
                let u = parse_usize(tokens[0], line_no, raw)?;
                let v = parse_usize(tokens[1], line_no, raw)?;
                for w in [u, v] {
                    if w >= n {
                        return Err(ParseError::VertexOutOfRange {
                            line: line_no,
                            vertex: w,
                            n,
                        }
                        .into());
                    }
                }
                if u == v {
                    return Err(ParseError::Loop {
                        line: line_no,
                        vertex: u,
                    }
                    .into());
                }
                let e = (u.min(v), u.max(v));
                if edges.contains(&e) {
                    return Err(ParseError::DuplicateEdge {
                        line: line_no,
                        u: e.0,
                        v: e.1,
                    }
                    .into());
                }
                edges.push(e);
            }
        }
    }
    let n = n.ok_or(ParseError::MissingVertexCount)?;
    Graph::new(n, &edges)
}

fn parse_usize(token: &str, line: usize, raw: &str) -> Result<usize> {
    token.parse().map_err(|_| {
        ParseError::MalformedLine {
            line,
            content: raw.to_string(),
        }
        .into()
    })
}

/// All restricted growth strings of length `n` (i.e. all set partitions of
/// `{0..n-1}`), in lexicographic RGS order.
fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(rgs: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        let n = rgs.len();
        if pos == n {
            out.push(rgs.clone());
            return;
        }
        for value in 0..=max_used + 1 {
            rgs[pos] = value;
            rec(rgs, pos + 1, max_used.max(value), out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    // rgs[0] is always 0.
    rec(&mut rgs, 1, 0, &mut out);
    out
}

fn rgs_blocks(rgs: &[usize]) -> Vec<Vec<usize>> {
    let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); k];
    for (v, &b) in rgs.iter().enumerate() {
        blocks[b].push(v);
    }
    blocks
}

/// All partitions of `{0..n-1}` into exactly `k` nonempty blocks, in RGS
/// order. Each block is ascending; blocks are ordered by smallest element.
pub fn partitions_into_blocks(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if k == 0 || k > n {
        return Vec::new();
    }
    restricted_growth_strings(n)
        .into_iter()
        .map(|rgs| rgs_blocks(&rgs))
        .filter(|blocks| blocks.len() == k)
        .collect()
}

/// `lambda choose j` as an exact integer.
pub fn binomial(lambda: u64, j: usize) -> BigInt {
    if (j as u128) > lambda as u128 {
        return BigInt::zero();
    }
    let mut acc = BigInt::from(1);
    for i in 0..j as u64 {
        acc = acc * BigInt::from(lambda - i) / BigInt::from(i + 1);
    }
    acc
}

/// `k!` as an exact integer.
pub fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=k as u64 {
        acc *= BigInt::from(i);
    }
    acc
}
