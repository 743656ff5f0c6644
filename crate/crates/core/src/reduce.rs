//! Initial solution and graph reductions ahead of the search.

use std::collections::VecDeque;
use std::time::Instant;

use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::order::{colorful_degeneracy_ordering, colorful_s_core, Coloring};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub n_before: usize,
    pub m_before: usize,
    pub n_after: usize,
    pub m_after: usize,
    /// Core and truss passes that removed something.
    pub rounds: usize,
    pub elapsed_ms: u64,
}

/// Longest suffix of the colorful degeneracy ordering that is a
/// `k`-defective clique.
pub fn initial_solution(g: &Graph, chi: &Coloring, k: usize) -> VertexSet {
    let order = colorful_degeneracy_ordering(g, chi);
    let mut inside = vec![false; g.n()];
    let mut missing = 0;
    let mut taken = 0;
    for &v in order.iter().rev() {
        let adjacent = g
            .neighbors(v)
            .iter()
            .filter(|&&w| inside[w as usize])
            .count();
        let added = taken - adjacent;
        if missing + added > k {
            break;
        }
        missing += added;
        inside[v as usize] = true;
        taken += 1;
    }
    VertexSet::from_vertices(g.n(), order[order.len() - taken..].iter().copied())
}

/// Vertices that can belong to a `k`-defective clique of size `q`: the
/// colorful `(q - k - 1)`-core.
pub fn colorful_core_reduce(g: &Graph, chi: &Coloring, k: usize, q: usize) -> VertexSet {
    colorful_s_core(g, chi, q.saturating_sub(k + 1))
}

/// Edges whose endpoints end up with at most `q - k - 3` common neighbors
/// after repeatedly deleting such edges. No edge of a `k`-defective clique
/// with `q` or more vertices is among them. Returned with `u < v`, sorted.
pub fn truss_reduce(g: &Graph, k: usize, q: usize) -> Vec<(u32, u32)> {
    let Some(limit) = q.checked_sub(k + 3) else {
        return Vec::new();
    };
    let n = g.n();
    let mut offset = vec![0usize; n + 1];
    for v in g.vertices() {
        offset[v as usize + 1] = offset[v as usize] + g.degree(v);
    }
    // slot i of vertex u is its i-th neighbor; both slots of an edge share an id
    let mut edge_of = vec![0u32; offset[n]];
    let mut ends = Vec::with_capacity(g.m());
    for u in g.vertices() {
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            if u < v {
                edge_of[offset[u as usize] + i] = ends.len() as u32;
                ends.push((u, v));
            } else {
                let j = g.neighbors(v).binary_search(&u).unwrap();
                edge_of[offset[u as usize] + i] = edge_of[offset[v as usize] + j];
            }
        }
    }

    let mut alive = vec![true; ends.len()];
    // calls `f(e_uw, e_vw)` for each common neighbor w over live edges
    let common = |alive: &[bool], u: u32, v: u32, f: &mut dyn FnMut(u32, u32)| {
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let a = edge_of[offset[u as usize] + i];
                    let b = edge_of[offset[v as usize] + j];
                    if alive[a as usize] && alive[b as usize] {
                        f(a, b);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    };

    let mut support: Vec<usize> = ends
        .iter()
        .map(|&(u, v)| {
            let mut count = 0;
            common(&alive, u, v, &mut |_, _| count += 1);
            count
        })
        .collect();
    let mut queued = vec![false; ends.len()];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for (e, &s) in support.iter().enumerate() {
        if s <= limit {
            queued[e] = true;
            queue.push_back(e as u32);
        }
    }
    let mut removed = Vec::new();
    while let Some(e) = queue.pop_front() {
        let (u, v) = ends[e as usize];
        let mut touched = Vec::new();
        common(&alive, u, v, &mut |a, b| touched.extend([a, b]));
        alive[e as usize] = false;
        removed.push((u, v));
        for f in touched {
            support[f as usize] -= 1;
            if support[f as usize] <= limit && !queued[f as usize] {
                queued[f as usize] = true;
                queue.push_back(f);
            }
        }
    }
    removed.sort_unstable();
    removed
}

/// A reduced graph. Vertex `i` of `graph` is vertex `origin[i]` of the
/// input; labels are carried over.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub graph: Graph,
    pub origin: Vec<u32>,
    pub coloring: Coloring,
    pub report: ReductionReport,
}

/// Alternates the colorful core and (for `q ≥ k + 2`) the truss reduction
/// until neither removes anything. Every `k`-defective clique with at least
/// `q` vertices survives with all of its edges.
pub fn reduce_pipeline(g: &Graph, k: usize, q: usize, chi: &Coloring) -> Reduced {
    let start = Instant::now();
    let mut graph = g.clone();
    let mut origin: Vec<u32> = g.vertices().collect();
    let mut coloring = chi.clone();
    let mut rounds = 0;
    loop {
        let mut changed = false;
        let core = colorful_core_reduce(&graph, &coloring, k, q);
        if core.len() < graph.n() {
            let (sub, map) = graph.induced(core.as_slice());
            origin = map.iter().map(|&v| origin[v as usize]).collect();
            coloring = coloring.restrict(&map);
            graph = sub;
            changed = true;
            rounds += 1;
        }
        if q >= k + 2 {
            let dropped = truss_reduce(&graph, k, q);
            if !dropped.is_empty() {
                graph = graph.without_edges(&dropped);
                changed = true;
                rounds += 1;
            }
        }
        if !changed {
            break;
        }
    }
    let report = ReductionReport {
        n_before: g.n(),
        m_before: g.m(),
        n_after: graph.n(),
        m_after: graph.m(),
        rounds,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Reduced {
        graph,
        origin,
        coloring,
        report,
    }
}
