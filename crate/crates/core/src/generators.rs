//! Deterministic graph constructors for tests and benchmarks.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::graph::Graph;

/// Complement of `t` disjoint triangles: vertex `v` is adjacent to every
/// vertex except those with the same `v / 3`.
pub fn moon_moser(t: usize) -> Graph {
    let n = 3 * t as u32;
    let edges = (0..n).flat_map(|u| {
        ((u + 1)..n)
            .filter(move |v| u / 3 != v / 3)
            .map(move |v| (u, v))
    });
    Graph::from_edges(n as usize, edges.collect::<Vec<_>>())
}

/// Erdős–Rényi `G(n, p)`.
///
/// The stream is SplitMix64 seeded with `seed` (state increment
/// `0x9E3779B97F4A7C15`, output mix constants `0xBF58476D1CE4E5B9` and
/// `0x94D049BB133111EB`). Pairs `(u, v)` with `u < v` are visited in
/// lexicographic order; each draws one `u64` `x` and becomes an edge iff
/// `(x >> 11) * 2^-53 < p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::from_seed(seed.to_le_bytes());
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            let x = rng.next_u64();
            let unit = (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if unit < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleGraph {
    /// 8 vertices, 15 edges; the small enumeration example.
    Fig2a,
    /// 9 vertices, 21 edges; the small reduction example.
    Fig6,
}

const FIG2A: [(u32, u32); 15] = [
    (1, 2),
    (1, 3),
    (2, 4),
    (2, 8),
    (3, 5),
    (3, 8),
    (4, 6),
    (4, 7),
    (4, 8),
    (5, 6),
    (5, 7),
    (5, 8),
    (6, 7),
    (6, 8),
    (7, 8),
];

const FIG6: [(u32, u32); 21] = [
    (3, 8),
    (4, 8),
    (8, 6),
    (8, 7),
    (6, 3),
    (6, 5),
    (7, 4),
    (7, 5),
    (3, 1),
    (3, 2),
    (3, 5),
    (4, 1),
    (4, 2),
    (4, 5),
    (1, 2),
    (1, 5),
    (2, 5),
    (9, 8),
    (9, 6),
    (9, 7),
    (9, 5),
];

/// Vertex `u_i` is internal id `i - 1` with label `i`.
pub fn example_graph(which: ExampleGraph) -> Graph {
    let (n, edges): (usize, &[(u32, u32)]) = match which {
        ExampleGraph::Fig2a => (8, &FIG2A),
        ExampleGraph::Fig6 => (9, &FIG6),
    };
    Graph::from_edges_labelled(
        (1..=n as u64).collect(),
        edges.iter().map(|&(u, v)| (u - 1, v - 1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moon_moser_shapes() {
        let g = moon_moser(3);
        assert_eq!((g.n(), g.m()), (9, 27));
        assert!(g.vertices().all(|v| g.degree(v) == 6));
        let g1 = moon_moser(1);
        assert_eq!((g1.n(), g1.m()), (3, 0));
        for t in 1..6 {
            let g = moon_moser(t);
            assert_eq!(g.m(), 3 * t * (3 * t - 3) / 2);
        }
    }

    #[test]
    fn moon_moser_complement_is_triangles() {
        for t in 1..5 {
            let g = moon_moser(t);
            let n = g.n() as u32;
            // complement components via union-find over non-edges
            let mut parent: Vec<u32> = (0..n).collect();
            fn find(p: &mut [u32], x: u32) -> u32 {
                let mut x = x;
                while p[x as usize] != x {
                    x = p[x as usize];
                }
                x
            }
            let mut non_edges = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if !g.has_edge(u, v) {
                        non_edges += 1;
                        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                        parent[a as usize] = b;
                    }
                }
            }
            let mut roots: Vec<u32> = (0..n).map(|v| find(&mut parent, v)).collect();
            roots.sort_unstable();
            roots.dedup();
            assert_eq!(roots.len(), t);
            assert_eq!(non_edges, 3 * t);
        }
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(gnp(10, 0.0, 1).m(), 0);
        assert_eq!(gnp(10, 1.0, 1).m(), 45);
        assert_eq!(gnp(10, 0.5, 42), gnp(10, 0.5, 42));
        assert_ne!(gnp(30, 0.5, 1), gnp(30, 0.5, 2));
    }

    #[test]
    fn splitmix_reference_stream() {
        // First outputs of SplitMix64 seeded with 0, as published with the
        // reference implementation.
        let mut rng = SplitMix64::from_seed(0u64.to_le_bytes());
        assert_eq!(rng.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(rng.next_u64(), 0x6E789E6AA1B965F4);
    }

    #[test]
    fn example_graph_sizes() {
        let a = example_graph(ExampleGraph::Fig2a);
        assert_eq!((a.n(), a.m()), (8, 15));
        let b = example_graph(ExampleGraph::Fig6);
        assert_eq!((b.n(), b.m()), (9, 21));
        assert_eq!(b.degree(4), 7);
        assert_eq!(b.label(4), 5);
    }
}
