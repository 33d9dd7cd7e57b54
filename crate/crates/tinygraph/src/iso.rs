//! Backtracking isomorphism oracle and embedding searches.
//!
//! `are_isomorphic` is deliberately independent of the canonizer: it is the
//! reference the certificate machinery is validated against, so it shares no
//! refinement code with [`crate::canon`].

use crate::graph::Graph;

/// True iff some vertex bijection preserves adjacency and non-adjacency.
///
/// Degree-refined backtracking: vertices of `g` are matched in an order that
/// keeps the partial map connected where possible, candidates are filtered
/// by degree and checked against every previously placed vertex.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    {
        let mut a = dg.clone();
        let mut b = dh.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
    }
    dg.shrink_to_fit();
    dh.shrink_to_fit();

    let order = match_order(g);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_iso(g, h, &dg, &dh, &order, 0, &mut map, &mut used)
}

/// Matching order: repeatedly pick the unplaced vertex with the most placed
/// neighbors, breaking ties by degree. Keeps the frontier connected.
fn match_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for v in 0..n {
            if placed[v] {
                continue;
            }
            let anchored = g.neighbors(v).filter(|&u| placed[u]).count();
            let key = (anchored, g.degree(v));
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        placed[best] = true;
        order.push(best);
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    g: &Graph,
    h: &Graph,
    dg: &[usize],
    dh: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'cand: for w in 0..h.vertex_count() {
        if used[w] || dh[w] != dg[v] {
            continue;
        }
        for &p in &order[..depth] {
            if g.has_edge(v, p) != h.has_edge(w, map[p]) {
                continue 'cand;
            }
        }
        map[v] = w;
        used[w] = true;
        if extend_iso(g, h, dg, dh, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// First induced embedding of `h` into `u` (pattern vertex `i` maps to
/// `result[i]`), or `None`. Lexicographically first in the search order,
/// hence deterministic.
pub fn find_induced_embedding(h: &Graph, u: &Graph) -> Option<Vec<usize>> {
    find_embedding(h, u, true)
}

/// True iff `h` is an induced subgraph of `u`.
pub fn is_induced_embeddable(h: &Graph, u: &Graph) -> bool {
    find_induced_embedding(h, u).is_some()
}

/// First (not necessarily induced) subgraph embedding: edges of `h` must map
/// to edges of `u`, non-edges are unconstrained.
pub fn find_monomorphism(h: &Graph, u: &Graph) -> Option<Vec<usize>> {
    find_embedding(h, u, false)
}

fn find_embedding(h: &Graph, u: &Graph, induced: bool) -> Option<Vec<usize>> {
    let k = h.vertex_count();
    if k > u.vertex_count() {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let order = match_order(h);
    let dh = h.degrees();
    let du = u.degrees();
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; u.vertex_count()];
    if extend_embed(h, u, &dh, &du, &order, 0, &mut map, &mut used, induced) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_embed(
    h: &Graph,
    u: &Graph,
    dh: &[usize],
    du: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    induced: bool,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'cand: for w in 0..u.vertex_count() {
        if used[w] || du[w] < dh[v] {
            continue;
        }
        for &p in &order[..depth] {
            let need = h.has_edge(v, p);
            let have = u.has_edge(w, map[p]);
            if need && !have || induced && !need && have {
                continue 'cand;
            }
        }
        map[v] = w;
        used[w] = true;
        if extend_embed(h, u, dh, du, order, depth + 1, map, used, induced) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn permuted_c4_is_isomorphic() {
        let c4 = Graph::cycle(4);
        let perm = c4.relabeled(&[2, 0, 3, 1]);
        assert!(are_isomorphic(&c4, &perm));
    }

    #[test]
    fn different_edge_counts_reject() {
        let a = Graph::complete(3).disjoint_union(&Graph::empty(1));
        let b = Graph::path(4);
        assert!(!are_isomorphic(&a, &b));
    }

    #[test]
    fn same_degree_sequence_still_rejected() {
        // C6 and 2K3 are both 2-regular on 6 vertices
        let c6 = Graph::cycle(6);
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(!are_isomorphic(&c6, &two_k3));
    }

    #[test]
    fn p3_equals_star_s2() {
        let p3 = Graph::path(3);
        let s2 = Graph::from_edges(3, &[(1, 0), (1, 2)]).unwrap();
        assert!(are_isomorphic(&p3, &s2));
    }

    #[test]
    fn empty_graphs() {
        assert!(are_isomorphic(&Graph::empty(0), &Graph::empty(0)));
        assert!(are_isomorphic(&Graph::empty(3), &Graph::empty(3)));
        assert!(!are_isomorphic(&Graph::empty(3), &Graph::empty(4)));
    }

    #[test]
    fn induced_embedding_examples() {
        assert!(is_induced_embeddable(&Graph::path(4), &Graph::cycle(5)));
        assert!(!is_induced_embeddable(&Graph::complete(3), &Graph::cycle(5)));
        assert!(is_induced_embeddable(&Graph::empty(2), &Graph::path(4)));
        // size fast path
        assert!(!is_induced_embeddable(&Graph::path(6), &Graph::cycle(5)));
    }

    #[test]
    fn monomorphism_vs_induced() {
        // P3 is a subgraph of K3 but not an induced one
        let p3 = Graph::path(3);
        let k3 = Graph::complete(3);
        assert!(find_monomorphism(&p3, &k3).is_some());
        assert!(find_induced_embedding(&p3, &k3).is_none());
    }

    #[test]
    fn embedding_maps_edges_correctly() {
        let h = Graph::path(3);
        let u = Graph::cycle(5);
        let m = find_induced_embedding(&h, &u).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(h.has_edge(i, j), u.has_edge(m[i], m[j]));
            }
        }
    }
}
