//! Canonical certificates for isomorphism classes.
//!
//! A [`Certificate`] is the byte string `n` (8 bytes, big-endian) followed by
//! the packed upper triangle (row-major, MSB-first) of the adjacency matrix
//! under a canonical vertex order. Certificates of two graphs are equal iff
//! the graphs are isomorphic; the representative graph can be decoded back
//! from the bytes.
//!
//! Canonization is component-wise: each connected component is canonized by
//! iterated color refinement plus individualization-and-refinement
//! backtracking (the lexicographically smallest serialization over all
//! discrete refinements wins), components are then sorted by their local
//! certificates and concatenated. Automorphisms discovered from tied leaves
//! prune the search; only automorphisms fixing the current individualization
//! prefix pointwise are used, which keeps the pruning sound.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{connected_components, induced_on, Graph};

/// Gates for the exponential part of canonization. The component order gate
/// exists because refinement backtracking is the dense operation; a large
/// graph whose components are all small canonizes fine.
#[derive(Clone, Debug)]
pub struct CanonConfig {
    /// Largest connected component the search will accept.
    pub max_component_order: usize,
    /// Search-tree node budget per component.
    pub max_search_nodes: u64,
}

impl Default for CanonConfig {
    fn default() -> Self {
        CanonConfig {
            max_component_order: 64,
            max_search_nodes: 5_000_000,
        }
    }
}

impl CanonConfig {
    pub fn with_component_gate(order: usize) -> Self {
        CanonConfig {
            max_component_order: order,
            ..Self::default()
        }
    }
}

/// Canonical byte string identifying an isomorphism class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Certificate {
    bytes: Vec<u8>,
}

impl Certificate {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Vertex count encoded in the prefix.
    pub fn order(&self) -> usize {
        let mut b = [0u8; 8];
        b.copy_from_slice(&self.bytes[..8]);
        u64::from_be_bytes(b) as usize
    }

    pub fn edge_count(&self) -> u64 {
        self.bytes[8..]
            .iter()
            .map(|b| b.count_ones() as u64)
            .sum()
    }

    /// Decode the canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        let mut idx = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                let byte = self.bytes[8 + idx / 8];
                if byte >> (7 - idx % 8) & 1 == 1 {
                    g.set_edge(i, j);
                }
                idx += 1;
            }
        }
        g
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.bytes.len() * 2);
        for b in &self.bytes {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(hex: &str) -> Result<Self> {
        if hex.len() % 2 != 0 || hex.len() < 16 {
            return Err(Error::Domain(format!(
                "certificate hex has invalid length {}",
                hex.len()
            )));
        }
        let mut bytes = Vec::with_capacity(hex.len() / 2);
        for i in (0..hex.len()).step_by(2) {
            let b = u8::from_str_radix(&hex[i..i + 2], 16)
                .map_err(|e| Error::Domain(format!("certificate hex: {e}")))?;
            bytes.push(b);
        }
        Ok(Certificate { bytes })
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Certificate::from_hex(&s).map_err(D::Error::custom)
    }
}

/// Certificate under the default gates.
pub fn canonical_certificate(g: &Graph) -> Result<Certificate> {
    canonical_certificate_with(g, &CanonConfig::default())
}

pub fn canonical_certificate_with(g: &Graph, cfg: &CanonConfig) -> Result<Certificate> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Certificate {
            bytes: serialize_by(&|_, _| false, 0),
        });
    }
    let comps = connected_components(g);
    let mut items: Vec<(Vec<u8>, Vec<usize>)> = Vec::with_capacity(comps.len());
    for comp in &comps {
        let verts: Vec<usize> = comp.iter().collect();
        if verts.len() > cfg.max_component_order {
            return Err(Error::CanonGate {
                order: verts.len(),
                limit: cfg.max_component_order,
            });
        }
        let local = induced_on(g, &verts);
        let (bytes, position_of) = canonize_component(&local, cfg)?;
        let mut order = vec![0usize; verts.len()];
        for (local_v, &orig) in verts.iter().enumerate() {
            order[position_of[local_v]] = orig;
        }
        items.push((bytes, order));
    }
    items.sort();
    let mut global_order = Vec::with_capacity(n);
    for (_, order) in items {
        global_order.extend(order);
    }
    let bytes = serialize_by(&|i, j| g.has_edge(global_order[i], global_order[j]), n);
    Ok(Certificate { bytes })
}

/// Pack the upper triangle of an n-vertex adjacency predicate, prefixed by n.
fn serialize_by(adj: &dyn Fn(usize, usize) -> bool, n: usize) -> Vec<u8> {
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(8 + bits.div_ceil(8));
    out.extend_from_slice(&(n as u64).to_be_bytes());
    let mut acc = 0u8;
    let mut filled = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            acc = (acc << 1) | u8::from(adj(i, j));
            filled += 1;
            if filled == 8 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (8 - filled));
    }
    out
}

type Cells = Vec<Vec<usize>>;

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    /// (serialization, vertex -> position) of the smallest leaf so far.
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// Automorphisms discovered from tied leaves, as vertex maps.
    gens: Vec<Vec<usize>>,
    prefix: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    exceeded: bool,
}

fn canonize_component(g: &Graph, cfg: &CanonConfig) -> Result<(Vec<u8>, Vec<usize>)> {
    let n = g.vertex_count();
    let mut searcher = Searcher {
        g,
        n,
        best: None,
        gens: Vec::new(),
        prefix: Vec::new(),
        nodes: 0,
        max_nodes: cfg.max_search_nodes,
        exceeded: false,
    };
    let mut cells: Cells = vec![(0..n).collect()];
    refine(g, &mut cells);
    searcher.dfs(cells);
    if searcher.exceeded {
        return Err(Error::CanonBudget {
            nodes: searcher.nodes,
        });
    }
    let (bytes, perm) = searcher.best.expect("search always reaches a leaf");
    Ok((bytes, perm))
}

/// One-round-at-a-time equitable refinement. Within a pass every cell is
/// split by the vector of neighbor counts into all current cells; the parts
/// are ordered by that key vector, which keeps the ordered partition a
/// function of the isomorphism class alone.
fn refine(g: &Graph, cells: &mut Cells) {
    let wpr = g.vertex_count().div_ceil(64);
    loop {
        let masks: Vec<Vec<u64>> = cells
            .iter()
            .map(|cell| {
                let mut m = vec![0u64; wpr];
                for &v in cell {
                    m[v / 64] |= 1 << (v % 64);
                }
                m
            })
            .collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() <= 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key: Vec<usize> =
                        masks.iter().map(|m| g.degree_into(v, m)).collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut group: Vec<usize> = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[0].0 == w[1].0 {
                    group.push(w[1].1);
                } else {
                    next.push(std::mem::take(&mut group));
                    group.push(w[1].1);
                    changed = true;
                }
            }
            next.push(group);
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

impl Searcher<'_> {
    fn dfs(&mut self, cells: Cells) {
        if self.exceeded {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exceeded = true;
            return;
        }
        let target = cells.iter().position(|c| c.len() > 1);
        let Some(ti) = target else {
            self.handle_leaf(&cells);
            return;
        };
        let candidates = cells[ti].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if self.exceeded {
                return;
            }
            if self.in_explored_orbit(v, &explored) {
                continue;
            }
            let mut child: Cells = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == ti {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            refine(self.g, &mut child);
            self.prefix.push(v);
            self.dfs(child);
            self.prefix.pop();
            explored.push(v);
        }
    }

    /// Orbit pruning: skip `v` if an automorphism product fixing the current
    /// prefix pointwise maps it into an already explored candidate.
    fn in_explored_orbit(&self, v: usize, explored: &[usize]) -> bool {
        if explored.is_empty() || self.gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gen in &self.gens {
            if self.prefix.iter().any(|&p| gen[p] != p) {
                continue;
            }
            for x in 0..self.n {
                let a = find(&mut parent, x);
                let b = find(&mut parent, gen[x]);
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    fn handle_leaf(&mut self, cells: &Cells) {
        let mut position_of = vec![0usize; self.n];
        let mut vertex_at = vec![0usize; self.n];
        for (pos, cell) in cells.iter().enumerate() {
            position_of[cell[0]] = pos;
            vertex_at[pos] = cell[0];
        }
        let bytes = serialize_by(
            &|i, j| self.g.has_edge(vertex_at[i], vertex_at[j]),
            self.n,
        );
        match &self.best {
            None => self.best = Some((bytes, position_of)),
            Some((best_bytes, best_perm)) => {
                if bytes < *best_bytes {
                    self.best = Some((bytes, position_of));
                } else if bytes == *best_bytes {
                    // leaf ties the best: position_of and best_perm label the
                    // same matrix, so best_perm^{-1} . position_of is an
                    // automorphism
                    let mut best_inv = vec![0usize; self.n];
                    for (v, &pos) in best_perm.iter().enumerate() {
                        best_inv[pos] = v;
                    }
                    let gen: Vec<usize> =
                        (0..self.n).map(|v| best_inv[position_of[v]]).collect();
                    if gen.iter().enumerate().any(|(v, &w)| v != w)
                        && self.gens.len() < 256
                    {
                        self.gens.push(gen);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::random::{sample_gnp, Seed};

    #[test]
    fn relabeling_invariance_k3() {
        let k3 = Graph::complete(3);
        let c = canonical_certificate(&k3).unwrap();
        for perm in [[0, 1, 2], [1, 2, 0], [2, 1, 0], [0, 2, 1], [1, 0, 2], [2, 0, 1]] {
            let h = k3.relabeled(&perm);
            assert_eq!(canonical_certificate(&h).unwrap(), c);
        }
    }

    #[test]
    fn p3_and_star_share_certificate() {
        let p3 = Graph::path(3);
        let s2 = Graph::from_edges(3, &[(1, 0), (1, 2)]).unwrap();
        assert_eq!(
            canonical_certificate(&p3).unwrap(),
            canonical_certificate(&s2).unwrap()
        );
    }

    #[test]
    fn determinism() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let a = canonical_certificate(&g).unwrap();
        let b = canonical_certificate(&g).unwrap();
        assert_eq!(a.bytes(), b.bytes());
    }

    #[test]
    fn empty_graph_sentinel() {
        let c = canonical_certificate(&Graph::empty(0)).unwrap();
        assert_eq!(c.bytes(), &[0u8; 8]);
        assert_eq!(c.order(), 0);
    }

    #[test]
    fn certificate_round_trips_to_representative() {
        let g = Graph::cycle(7).disjoint_union(&Graph::complete(4));
        let c = canonical_certificate(&g).unwrap();
        let rep = c.to_graph();
        assert!(are_isomorphic(&g, &rep));
        assert_eq!(canonical_certificate(&rep).unwrap(), c);
        assert_eq!(c.edge_count(), g.edge_count());
    }

    #[test]
    fn hex_round_trip() {
        let c = canonical_certificate(&Graph::cycle(5)).unwrap();
        assert_eq!(Certificate::from_hex(&c.to_hex()).unwrap(), c);
    }

    #[test]
    fn agrees_with_oracle_on_random_pairs() {
        let mut graphs = Vec::new();
        for i in 0..40u64 {
            let n = 3 + (i % 6) as usize;
            graphs.push(sample_gnp(n, 0.4, Seed(1000 + i)).unwrap());
        }
        let certs: Vec<_> = graphs
            .iter()
            .map(|g| canonical_certificate(g).unwrap())
            .collect();
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                assert_eq!(
                    are_isomorphic(&graphs[i], &graphs[j]),
                    certs[i] == certs[j],
                    "certificate/oracle disagreement on pair ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn vertex_transitive_graphs_canonize() {
        // highly symmetric inputs exercise the orbit pruning
        let k12 = Graph::complete(12);
        assert_eq!(canonical_certificate(&k12).unwrap().edge_count(), 66);
        let c20 = Graph::cycle(20);
        let shifted = c20.relabeled(&(0..20).map(|v| (v + 7) % 20).collect::<Vec<_>>());
        assert_eq!(
            canonical_certificate(&c20).unwrap(),
            canonical_certificate(&shifted).unwrap()
        );
        let petersen = petersen_graph();
        let c = canonical_certificate(&petersen).unwrap();
        assert_eq!(c.edge_count(), 15);
    }

    #[test]
    fn component_gate_refuses_large_components() {
        let g = Graph::complete(80);
        match canonical_certificate(&g) {
            Err(Error::CanonGate { order: 80, .. }) => {}
            other => panic!("expected gate refusal, got {other:?}"),
        }
        // with the gate raised, a large sparse component canonizes fine
        let p100 = Graph::path(100);
        assert!(canonical_certificate(&p100).is_err());
        let cfg = CanonConfig::with_component_gate(128);
        let c = canonical_certificate_with(&p100, &cfg).unwrap();
        let relabeled = p100.relabeled(&(0..100).map(|v| 99 - v).collect::<Vec<_>>());
        assert_eq!(canonical_certificate_with(&relabeled, &cfg).unwrap(), c);
    }

    #[test]
    fn search_budget_refusal() {
        let cfg = CanonConfig {
            max_component_order: 64,
            max_search_nodes: 10,
        };
        match canonical_certificate_with(&Graph::complete(30), &cfg) {
            Err(Error::CanonBudget { .. }) => {}
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    pub(crate) fn petersen_graph() -> Graph {
        Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap()
    }
}
