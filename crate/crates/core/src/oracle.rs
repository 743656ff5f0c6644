//! Slow reference implementations used for differential testing.
//!
//! Nothing here shares code with the search engine: no pivoting, no bounds,
//! no reductions.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph the brute-force routines accept.
pub const ORACLE_LIMIT: usize = 25;

fn masks(g: &Graph) -> Result<Vec<u32>> {
    if g.n() > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            n: g.n(),
            limit: ORACLE_LIMIT,
        });
    }
    Ok(g.vertices()
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect())
}

/// Calls `visit(mask, missing)` for every `k`-defective vertex subset.
fn for_each_defective(adj: &[u32], k: usize, mut visit: impl FnMut(u32, usize)) {
    fn rec(
        adj: &[u32],
        k: usize,
        i: usize,
        mask: u32,
        missing: usize,
        visit: &mut dyn FnMut(u32, usize),
    ) {
        if i == adj.len() {
            visit(mask, missing);
            return;
        }
        rec(adj, k, i + 1, mask, missing, visit);
        let added = (mask.count_ones() - (adj[i] & mask).count_ones()) as usize;
        if missing + added <= k {
            rec(adj, k, i + 1, mask | (1 << i), missing + added, visit);
        }
    }
    rec(adj, k, 0, 0, 0, &mut visit);
}

fn mask_to_vec(mask: u32) -> Vec<u32> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// All maximal `k`-defective cliques with at least `q` vertices, each sorted
/// ascending, the list sorted lexicographically.
pub fn brute_maximal(g: &Graph, k: usize, q: usize) -> Result<Vec<Vec<u32>>> {
    let adj = masks(g)?;
    let n = adj.len();
    let mut out = Vec::new();
    for_each_defective(&adj, k, |mask, missing| {
        if (mask.count_ones() as usize) < q {
            return;
        }
        let size = mask.count_ones();
        let extendable = (0..n).any(|u| {
            mask & (1 << u) == 0 && missing + (size - (adj[u] & mask).count_ones()) as usize <= k
        });
        if !extendable {
            out.push(mask_to_vec(mask));
        }
    });
    out.sort();
    Ok(out)
}

/// Size of a largest `k`-defective clique.
pub fn brute_maximum(g: &Graph, k: usize) -> Result<usize> {
    let adj = masks(g)?;
    let mut best = 0;
    for_each_defective(&adj, k, |mask, _| {
        best = best.max(mask.count_ones() as usize)
    });
    Ok(best)
}

/// Maximal cliques by Bron–Kerbosch with Tomita pivoting (pivot from
/// `P ∪ X` maximizing `|P ∩ N(u)|`). Canonically sorted.
pub fn bk_maximal_cliques(g: &Graph) -> Vec<Vec<u32>> {
    fn rec(g: &Graph, r: &mut Vec<u32>, p: Vec<u32>, x: Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut clique = r.clone();
                clique.sort_unstable();
                out.push(clique);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
            .unwrap();
        let branch: Vec<u32> = p
            .iter()
            .copied()
            .filter(|&v| !g.has_edge(pivot, v))
            .collect();
        let mut p = p;
        let mut x = x;
        for v in branch {
            let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            r.push(v);
            rec(g, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    if g.n() > 0 {
        rec(
            g,
            &mut Vec::new(),
            g.vertices().collect(),
            Vec::new(),
            &mut out,
        );
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_graph, gnp, moon_moser, ExampleGraph};

    #[test]
    fn fig2a_five_solutions() {
        let g = example_graph(ExampleGraph::Fig2a);
        let sols = brute_maximal(&g, 1, 4).unwrap();
        let expected: Vec<Vec<u32>> = vec![
            vec![1, 3, 5, 7],
            vec![1, 3, 6, 7],
            vec![2, 4, 5, 7],
            vec![2, 4, 6, 7],
            vec![3, 4, 5, 6, 7],
        ];
        assert_eq!(sols, expected);
    }

    #[test]
    fn moon_moser_two_counts() {
        let g = moon_moser(2);
        assert_eq!(brute_maximal(&g, 1, 1).unwrap().len(), 18);
        assert_eq!(bk_maximal_cliques(&g).len(), 9);
        assert_eq!(brute_maximum(&g, 0).unwrap(), 2);
    }

    #[test]
    fn triangle() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(brute_maximal(&g, 1, 1).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(bk_maximal_cliques(&g), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn maximum_values() {
        let g = example_graph(ExampleGraph::Fig2a);
        assert_eq!(brute_maximum(&g, 1).unwrap(), 5);
        assert_eq!(brute_maximum(&g, 0).unwrap(), 4);
        assert_eq!(brute_maximum(&g, 28).unwrap(), 8);
        let edgeless = Graph::from_edges(4, []);
        assert_eq!(brute_maximum(&edgeless, 1).unwrap(), 2);
    }

    #[test]
    fn cross_oracle_agreement() {
        let g = example_graph(ExampleGraph::Fig2a);
        assert_eq!(brute_maximal(&g, 0, 1).unwrap(), bk_maximal_cliques(&g));
        for seed in 0..20 {
            let g = gnp(12, 0.5, seed);
            let cliques = bk_maximal_cliques(&g);
            for q in 1..5 {
                let filtered: Vec<_> = cliques.iter().filter(|c| c.len() >= q).cloned().collect();
                assert_eq!(brute_maximal(&g, 0, q).unwrap(), filtered);
            }
            for k in 0..3 {
                let best = brute_maximal(&g, k, 1)
                    .unwrap()
                    .iter()
                    .map(Vec::len)
                    .max()
                    .unwrap();
                assert_eq!(brute_maximum(&g, k).unwrap(), best);
            }
        }
    }

    #[test]
    fn size_guard() {
        let g = Graph::from_edges(26, []);
        assert!(matches!(
            brute_maximal(&g, 1, 1),
            Err(Error::OracleTooLarge { n: 26, .. })
        ));
        assert!(matches!(
            brute_maximum(&g, 1),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
