//! Peeling orders, greedy coloring, and (colorful) cores.

use std::cmp::Reverse;
use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, VertexSet};

/// Vertices ordered so that each one has minimum degree among itself and
/// everything after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    pub order: Vec<u32>,
    /// `rank[v]` is the position of `v` in `order`.
    pub rank: Vec<u32>,
    pub degeneracy: usize,
}

impl DegeneracyOrdering {
    /// Builds the ordering record from an explicit permutation. The
    /// degeneracy is recomputed as the largest removal degree.
    pub fn from_order(g: &Graph, order: Vec<u32>) -> DegeneracyOrdering {
        let mut rank = vec![0u32; g.n()];
        for (i, &v) in order.iter().enumerate() {
            rank[v as usize] = i as u32;
        }
        let degeneracy = order
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| rank[w as usize] > rank[v as usize])
                    .count()
            })
            .max()
            .unwrap_or(0);
        DegeneracyOrdering {
            order,
            rank,
            degeneracy,
        }
    }

    /// Neighbors of `v` that come later in the ordering.
    pub fn forward_neighbors<'g>(&'g self, g: &'g Graph, v: u32) -> impl Iterator<Item = u32> + 'g {
        let r = self.rank[v as usize];
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| self.rank[w as usize] > r)
    }
}

/// Minimum-degree peeling; ties go to the smallest vertex id.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, u32)> = g.vertices().map(|v| (degree[v as usize], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v as usize] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                let dw = &mut degree[w as usize];
                queue.remove(&(*dw, w));
                *dw -= 1;
                queue.insert((*dw, w));
            }
        }
    }
    let mut rank = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    DegeneracyOrdering {
        order,
        rank,
        degeneracy,
    }
}

/// A proper vertex coloring with colors `1..=num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub color: Vec<u32>,
    pub num_colors: usize,
}

impl Coloring {
    #[inline]
    pub fn of(&self, v: u32) -> u32 {
        self.color[v as usize]
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.of(u) != self.of(v))
    }

    /// Restriction to an induced subgraph whose vertex `i` is our `origin[i]`.
    pub fn restrict(&self, origin: &[u32]) -> Coloring {
        let color: Vec<u32> = origin.iter().map(|&v| self.of(v)).collect();
        let num_colors = color.iter().copied().max().unwrap_or(0) as usize;
        Coloring { color, num_colors }
    }
}

/// Colors `v_n` down to `v_1`, each with the smallest color not already
/// taken by a colored neighbor.
pub fn greedy_coloring(g: &Graph, ord: &DegeneracyOrdering) -> Coloring {
    let mut color = vec![0u32; g.n()];
    let mut taken: Vec<usize> = vec![usize::MAX; g.n() + 2];
    let mut num_colors = 0;
    for (step, &v) in ord.order.iter().rev().enumerate() {
        for &w in g.neighbors(v) {
            let c = color[w as usize];
            if c != 0 {
                taken[c as usize] = step;
            }
        }
        let c = (1..).find(|&c| taken[c] != step).unwrap();
        color[v as usize] = c as u32;
        num_colors = num_colors.max(c);
    }
    Coloring { color, num_colors }
}

/// The `s`-core: largest vertex set in which every member has at least `s`
/// neighbors inside the set.
pub fn s_core(g: &Graph, s: usize) -> VertexSet {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<u32> = g.vertices().filter(|&v| degree[v as usize] < s).collect();
    for &v in &queue {
        alive[v as usize] = false;
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if alive[w as usize] {
                degree[w as usize] -= 1;
                if degree[w as usize] < s {
                    alive[w as usize] = false;
                    queue.push_back(w);
                }
            }
        }
    }
    VertexSet::from_vertices(n, g.vertices().filter(|&v| alive[v as usize]))
}

/// Number of distinct colors among the neighbors of `u` that lie in `within`.
pub fn colorful_degree(g: &Graph, chi: &Coloring, u: u32, within: &VertexSet) -> usize {
    let mut colors: Vec<u32> = g
        .neighbors(u)
        .iter()
        .filter(|&&v| within.contains(v))
        .map(|&v| chi.of(v))
        .collect();
    colors.sort_unstable();
    colors.dedup();
    colors.len()
}

/// Per-vertex color histograms over surviving neighbors. Uses `n * |chi|`
/// counters.
struct ColorCounters {
    stride: usize,
    counts: Vec<u32>,
    distinct: Vec<usize>,
}

impl ColorCounters {
    fn new(g: &Graph, chi: &Coloring) -> ColorCounters {
        let stride = chi.num_colors + 1;
        let mut counts = vec![0u32; g.n() * stride];
        let mut distinct = vec![0usize; g.n()];
        for u in g.vertices() {
            let row = u as usize * stride;
            for &v in g.neighbors(u) {
                let slot = &mut counts[row + chi.of(v) as usize];
                if *slot == 0 {
                    distinct[u as usize] += 1;
                }
                *slot += 1;
            }
        }
        ColorCounters {
            stride,
            counts,
            distinct,
        }
    }

    /// Forget neighbor `gone` (of color `c`) at `u`; returns true if `u`
    /// lost a color.
    fn drop_neighbor(&mut self, u: u32, c: u32) -> bool {
        let slot = &mut self.counts[u as usize * self.stride + c as usize];
        *slot -= 1;
        if *slot == 0 {
            self.distinct[u as usize] -= 1;
            true
        } else {
            false
        }
    }
}

/// Largest vertex set in which every member sees at least `s` distinct
/// colors among its neighbors inside the set.
pub fn colorful_s_core(g: &Graph, chi: &Coloring, s: usize) -> VertexSet {
    let n = g.n();
    if s == 0 {
        return VertexSet::full(n);
    }
    let mut counters = ColorCounters::new(g, chi);
    let mut alive = vec![true; n];
    let mut queue: VecDeque<u32> = g
        .vertices()
        .filter(|&v| counters.distinct[v as usize] < s)
        .collect();
    for &v in &queue {
        alive[v as usize] = false;
    }
    while let Some(v) = queue.pop_front() {
        let c = chi.of(v);
        for &w in g.neighbors(v) {
            if alive[w as usize]
                && counters.drop_neighbor(w, c)
                && counters.distinct[w as usize] < s
            {
                alive[w as usize] = false;
                queue.push_back(w);
            }
        }
    }
    VertexSet::from_vertices(n, g.vertices().filter(|&v| alive[v as usize]))
}

/// Repeatedly removes a vertex of minimum colorful degree in the remaining
/// graph. Ties go to the largest vertex id.
pub fn colorful_degeneracy_ordering(g: &Graph, chi: &Coloring) -> Vec<u32> {
    let n = g.n();
    let mut counters = ColorCounters::new(g, chi);
    let mut queue: BTreeSet<(usize, Reverse<u32>)> = g
        .vertices()
        .map(|v| (counters.distinct[v as usize], Reverse(v)))
        .collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, Reverse(v))) = queue.pop_first() {
        removed[v as usize] = true;
        order.push(v);
        let c = chi.of(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                let before = counters.distinct[w as usize];
                if counters.drop_neighbor(w, c) {
                    queue.remove(&(before, Reverse(w)));
                    queue.insert((before - 1, Reverse(w)));
                }
            }
        }
    }
    order
}

/// Checks by brute force that every `order[i]` has minimum colorful degree
/// in the subgraph induced by `order[i..]`.
pub fn is_valid_colorful_ordering(g: &Graph, chi: &Coloring, order: &[u32]) -> bool {
    is_valid_peeling(g, order, |u, rest| colorful_degree(g, chi, u, rest))
}

/// Checks by brute force that `order` is a degeneracy ordering of `g`.
pub fn is_valid_degeneracy_ordering(g: &Graph, order: &[u32]) -> bool {
    is_valid_peeling(g, order, |u, rest| {
        g.neighbors(u).iter().filter(|&&v| rest.contains(v)).count()
    })
}

fn is_valid_peeling<F>(g: &Graph, order: &[u32], degree_in: F) -> bool
where
    F: Fn(u32, &VertexSet) -> usize,
{
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.vertices().collect::<Vec<_>>() {
        return false;
    }
    (0..order.len()).all(|i| {
        let rest = VertexSet::from_vertices(g.n(), order[i..].iter().copied());
        let head = degree_in(order[i], &rest);
        order[i..].iter().all(|&u| degree_in(u, &rest) >= head)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_graph, moon_moser, ExampleGraph};

    fn fig2a() -> Graph {
        example_graph(ExampleGraph::Fig2a)
    }

    fn fig6() -> Graph {
        example_graph(ExampleGraph::Fig6)
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy_ordering(&fig2a()).degeneracy, 3);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(degeneracy_ordering(&tri).degeneracy, 2);
        assert_eq!(degeneracy_ordering(&moon_moser(3)).degeneracy, 6);
    }

    #[test]
    fn fig6_ordering_and_coloring() {
        let g = fig6();
        let ord = degeneracy_ordering(&g);
        assert_eq!(ord.order, (0..9).collect::<Vec<u32>>());
        let chi = greedy_coloring(&g, &ord);
        // u1..u9
        assert_eq!(chi.color, vec![4, 3, 1, 1, 2, 3, 3, 2, 1]);
        assert_eq!(chi.num_colors, 4);
    }

    #[test]
    fn coloring_edge_cases() {
        let edgeless = Graph::from_edges(4, []);
        let chi = greedy_coloring(&edgeless, &degeneracy_ordering(&edgeless));
        assert!(chi.color.iter().all(|&c| c == 1));

        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let ord = degeneracy_ordering(&k4);
        let chi = greedy_coloring(&k4, &ord);
        let mut colors = chi.color.clone();
        colors.sort_unstable();
        assert_eq!(colors, vec![1, 2, 3, 4]);
        // reverse order assignment: last vertex of the ordering gets color 1
        assert_eq!(chi.of(*ord.order.last().unwrap()), 1);
        assert_eq!(chi.of(ord.order[0]), 4);
    }

    #[test]
    fn plain_cores_fig2a() {
        let g = fig2a();
        assert_eq!(s_core(&g, 3).as_slice(), &[3, 4, 5, 6, 7]);
        assert!(s_core(&g, 4).is_empty());
        assert_eq!(s_core(&g, 0).len(), 8);
        assert_eq!(s_core(&g, 2).len(), 8);
    }

    #[test]
    fn colorful_degrees_fig6() {
        let g = fig6();
        let chi = greedy_coloring(&g, &degeneracy_ordering(&g));
        let all = VertexSet::full(g.n());
        for u in 0..5 {
            assert_eq!(colorful_degree(&g, &chi, u, &all), 3, "u{}", u + 1);
        }
        for u in 5..9 {
            assert_eq!(colorful_degree(&g, &chi, u, &all), 2, "u{}", u + 1);
        }
        let isolated = Graph::from_edges(2, []);
        let chi1 = greedy_coloring(&isolated, &degeneracy_ordering(&isolated));
        assert_eq!(colorful_degree(&isolated, &chi1, 0, &VertexSet::full(2)), 0);
    }

    #[test]
    fn colorful_cores_fig6() {
        let g = fig6();
        let chi = greedy_coloring(&g, &degeneracy_ordering(&g));
        assert_eq!(colorful_s_core(&g, &chi, 3).as_slice(), &[0, 1, 2, 3, 4]);
        assert!(colorful_s_core(&g, &chi, 4).is_empty());
        assert_eq!(colorful_s_core(&g, &chi, 2).len(), 9);
        assert_eq!(colorful_s_core(&g, &chi, 0).len(), 9);
    }

    #[test]
    fn colorful_ordering_fig6() {
        let g = fig6();
        let chi = greedy_coloring(&g, &degeneracy_ordering(&g));
        let order = colorful_degeneracy_ordering(&g, &chi);
        assert_eq!(order, vec![8, 7, 6, 5, 4, 3, 2, 1, 0]);
        assert!(is_valid_colorful_ordering(&g, &chi, &order));
        // the smallest-id-first peel is also valid, just different
        let alt = vec![5, 6, 7, 8, 0, 1, 2, 3, 4];
        assert!(is_valid_colorful_ordering(&g, &chi, &alt));
        assert!(!is_valid_colorful_ordering(
            &g,
            &chi,
            &[0, 1, 2, 3, 4, 5, 6, 7, 8]
        ));
    }

    #[test]
    fn colorful_ordering_trivial_graphs() {
        let edgeless = Graph::from_edges(3, []);
        let chi = greedy_coloring(&edgeless, &degeneracy_ordering(&edgeless));
        assert!(is_valid_colorful_ordering(&edgeless, &chi, &[2, 0, 1]));
        let edge = Graph::from_edges(2, [(0, 1)]);
        let chi = greedy_coloring(&edge, &degeneracy_ordering(&edge));
        assert!(is_valid_colorful_ordering(&edge, &chi, &[0, 1]));
        assert!(is_valid_colorful_ordering(&edge, &chi, &[1, 0]));
        assert!(is_valid_colorful_ordering(
            &edge,
            &chi,
            &colorful_degeneracy_ordering(&edge, &chi)
        ));
    }
}
