//! Simple undirected graphs as symmetric adjacency bit-matrices, plus
//! vertex bit-sets over a fixed universe.
//!
//! Rows are packed into `u64` words, so sparse graphs up to ~100k vertices
//! are fine; the expensive backtracking operations (canonization, embedding)
//! are gated separately, see [`crate::canon::CanonConfig`].

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertices of a graph on `universe` vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for v in iter {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    index: v,
                    n: universe,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.words[v / WORD] &= !(1 << (v % WORD));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + b)
                }
            })
        })
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Simple undirected graph without loops, stored as a symmetric bit-matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    wpr: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices (`n = 0` is allowed).
    pub fn empty(n: usize) -> Self {
        let wpr = words_for(n);
        Graph {
            n,
            wpr,
            bits: vec![0; n * wpr],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..n {
            g.set_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.set_edge(n - 1, 0);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Disjoint union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n);
        }
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = self.bits.iter().map(|w| w.count_ones() as u64).sum();
        total / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.wpr + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.wpr + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.wpr + u / WORD] |= 1 << (u % WORD);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.wpr + v / WORD] &= !(1 << (v % WORD));
        self.bits[v * self.wpr + u / WORD] &= !(1 << (u % WORD));
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.wpr..(v + 1) * self.wpr]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbors of `v` inside `set` (given as words over the same universe).
    #[inline]
    pub(crate) fn degree_into(&self, v: usize, set_words: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(set_words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(v);
        row.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + b)
                }
            })
        })
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count() as usize);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edge count of the subgraph induced on `set_words`.
    pub(crate) fn edges_within(&self, set_words: &[u64]) -> u64 {
        let mut total = 0u64;
        for (v, _) in set_words
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| {
                let mut w = w;
                std::iter::from_fn(move || {
                    if w == 0 {
                        None
                    } else {
                        let b = w.trailing_zeros() as usize;
                        w &= w - 1;
                        Some(i * WORD + b)
                    }
                })
            })
            .map(|v| (v, ()))
        {
            total += self.degree_into(v, set_words) as u64;
        }
        total / 2
    }

    /// Graph with vertex `v` relabeled to `perm[v]`. Test helper and
    /// canonization building block; `perm` must be a permutation of `0..n`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Induced subgraph `g[s]`; result vertices follow ascending original indices.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph> {
    if s.universe() != g.vertex_count() {
        return Err(Error::Domain(format!(
            "vertex set universe {} does not match graph order {}",
            s.universe(),
            g.vertex_count()
        )));
    }
    let verts: Vec<usize> = s.iter().collect();
    Ok(induced_on(g, &verts))
}

/// Induced subgraph on an explicit ascending vertex list (internal fast path).
pub(crate) fn induced_on(g: &Graph, verts: &[usize]) -> Graph {
    let k = verts.len();
    let mut h = Graph::empty(k);
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(verts[i], verts[j]) {
                h.set_edge(i, j);
            }
        }
    }
    h
}

/// Partition of `V(g)` into maximal connected sets, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = VertexSet::empty(n);
        queue.push(start);
        seen[start] = true;
        while let Some(v) = queue.pop() {
            comp.insert(v);
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push(u);
                }
            }
        }
        comps.push(comp);
    }
    comps
}
