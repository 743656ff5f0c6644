//! Maximum `k`-defective clique search.

use std::time::Instant;

use crate::bnb::{BestCell, BnbOptions, Instance, NoProbe, SearchProbe};
use crate::decomp::{maximize_decomposed, DecompOptions};
use crate::error::Result;
use crate::graph::{missing_edges_of, Graph};
use crate::order::{degeneracy_ordering, greedy_coloring};
use crate::reduce::{initial_solution, reduce_pipeline, ReductionReport};
use crate::sink::SearchStats;

#[derive(Debug, Clone, Copy)]
pub struct MaxOptions {
    pub pivot: bool,
    pub threads: usize,
    /// Prune against the best size found so far. When off, pruning uses
    /// the threshold from the initial solution throughout.
    pub dynamic_q: bool,
}

impl Default for MaxOptions {
    fn default() -> Self {
        MaxOptions {
            pivot: true,
            threads: 1,
            dynamic_q: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Ids of the input graph, ascending.
    pub vertices: Vec<u32>,
    pub missing_edges: usize,
}

#[derive(Debug, Clone)]
pub struct MaxOutcome {
    pub solution: Solution,
    pub initial_size: usize,
    pub stats: SearchStats,
    pub reduction: ReductionReport,
    pub n_reduced: usize,
    pub m_reduced: usize,
    pub time_build_ms: u64,
}

/// A largest `k`-defective clique of `g`.
pub fn find_maximum(g: &Graph, k: usize, opts: &MaxOptions) -> Result<MaxOutcome> {
    find_maximum_probed(g, k, opts, &mut NoProbe)
}

/// [`find_maximum`] reporting branch choices and best-size updates to
/// `probe` (single-threaded runs only).
pub fn find_maximum_probed(
    g: &Graph,
    k: usize,
    opts: &MaxOptions,
    probe: &mut dyn SearchProbe,
) -> Result<MaxOutcome> {
    let n = g.n();
    let unreduced = |vertices: Vec<u32>, time_build_ms| {
        let solution = Solution {
            missing_edges: missing_edges_of(g, &vertices),
            vertices,
        };
        MaxOutcome {
            initial_size: solution.vertices.len(),
            solution,
            stats: SearchStats::default(),
            reduction: ReductionReport {
                n_before: n,
                m_before: g.m(),
                n_after: n,
                m_after: g.m(),
                ..Default::default()
            },
            n_reduced: n,
            m_reduced: g.m(),
            time_build_ms,
        }
    };
    if n * n.saturating_sub(1) / 2 - g.m() <= k {
        return Ok(unreduced(g.vertices().collect(), 0));
    }

    let start = Instant::now();
    let ord = degeneracy_ordering(g);
    let chi = greedy_coloring(g, &ord);
    let initial = initial_solution(g, &chi, k).as_slice().to_vec();
    let time_build_ms = start.elapsed().as_millis() as u64;
    let initial_size = initial.len();
    let q = initial_size + 1;

    let reduced = reduce_pipeline(g, k, q, &chi);
    let mut stats = SearchStats {
        time_reduce_ms: reduced.report.elapsed_ms,
        ..Default::default()
    };
    let mut outcome = unreduced(initial.clone(), time_build_ms);
    outcome.reduction = reduced.report.clone();
    outcome.n_reduced = reduced.graph.n();
    outcome.m_reduced = reduced.graph.m();
    if reduced.graph.n() == 0 {
        outcome.stats = stats;
        return Ok(outcome);
    }

    let start = Instant::now();
    // the cell starts out holding input ids; anything it installs later
    // comes from the reduced graph
    let best = BestCell::new(initial);
    let frozen_q = (!opts.dynamic_q).then_some(q);
    let bnb = BnbOptions { pivot: opts.pivot };
    let work = &reduced.graph;
    if q >= k + 2 {
        let work_ord = degeneracy_ordering(work);
        let decomp = DecompOptions {
            bnb,
            threads: opts.threads,
        };
        maximize_decomposed(
            work,
            &reduced.coloring,
            &work_ord,
            k,
            &best,
            frozen_q,
            &decomp,
            &mut stats,
            probe,
        )?;
    } else {
        Instance::root(work, &reduced.coloring, k)
            .maximize(&best, frozen_q, &bnb, &mut stats, probe);
    }
    stats.time_search_ms = start.elapsed().as_millis() as u64;

    let improved = best.size() > initial_size;
    let mut vertices = best.into_inner();
    if improved {
        vertices = vertices
            .iter()
            .map(|&v| reduced.origin[v as usize])
            .collect();
        vertices.sort_unstable();
    }
    outcome.solution = Solution {
        missing_edges: missing_edges_of(g, &vertices),
        vertices,
    };
    outcome.stats = stats;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_graph, gnp, moon_moser, ExampleGraph};
    use crate::oracle::brute_maximum;

    #[test]
    fn small_examples() {
        let fig6 = example_graph(ExampleGraph::Fig6);
        let out = find_maximum(&fig6, 1, &MaxOptions::default()).unwrap();
        assert_eq!(out.solution.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(out.stats.tree_nodes, 0);
        assert_eq!(out.n_reduced, 0);

        let fig = example_graph(ExampleGraph::Fig2a);
        assert_eq!(
            find_maximum(&fig, 1, &MaxOptions::default())
                .unwrap()
                .solution
                .vertices
                .len(),
            5
        );
        assert_eq!(
            find_maximum(&fig, 0, &MaxOptions::default())
                .unwrap()
                .solution
                .vertices
                .len(),
            4
        );
        assert_eq!(
            find_maximum(&moon_moser(3), 2, &MaxOptions::default())
                .unwrap()
                .solution
                .vertices
                .len(),
            5
        );
    }

    #[test]
    fn trivial_inputs() {
        let out = find_maximum(&Graph::empty(), 1, &MaxOptions::default()).unwrap();
        assert!(out.solution.vertices.is_empty());
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]);
        let out = find_maximum(&g, 1, &MaxOptions::default()).unwrap();
        assert_eq!(out.solution.vertices, vec![0, 1, 2, 3]);
        assert_eq!(out.solution.missing_edges, 1);
        let single = Graph::from_edges(1, []);
        assert_eq!(
            find_maximum(&single, 0, &MaxOptions::default())
                .unwrap()
                .solution
                .vertices,
            vec![0]
        );
    }

    struct Monotone {
        last: usize,
        ok: bool,
        updates: usize,
    }

    impl SearchProbe for Monotone {
        fn on_best_update(&mut self, old: usize, new: usize) {
            self.ok &= new > old && old >= self.last;
            self.last = new;
            self.updates += 1;
        }
    }

    #[test]
    fn oracle_agreement() {
        for seed in 0..60 {
            let n = 6 + seed as usize % 11;
            let g = gnp(n, [0.3, 0.5, 0.7][seed as usize % 3], seed);
            for k in 0..=4 {
                let expected = brute_maximum(&g, k).unwrap();
                let mut probe = Monotone {
                    last: 0,
                    ok: true,
                    updates: 0,
                };
                let out = find_maximum_probed(&g, k, &MaxOptions::default(), &mut probe).unwrap();
                assert!(probe.ok);
                assert_eq!(out.solution.vertices.len(), expected, "seed {seed} k {k}");
                assert!(out.solution.missing_edges <= k);
                assert!(out.solution.vertices.len() >= out.initial_size);
                let frozen = find_maximum(
                    &g,
                    k,
                    &MaxOptions {
                        dynamic_q: false,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(frozen.solution.vertices.len(), expected);
                let par = find_maximum(
                    &g,
                    k,
                    &MaxOptions {
                        threads: 3,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(par.solution.vertices.len(), expected);
                let nopivot = find_maximum(
                    &g,
                    k,
                    &MaxOptions {
                        pivot: false,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(nopivot.solution.vertices.len(), expected);
            }
        }
    }
}
