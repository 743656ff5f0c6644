//! Enumeration entry point: build, reduce, search.

use std::time::Instant;

use crate::bnb::{BnbOptions, Instance};
use crate::decomp::{enumerate_decomposed, DecompOptions};
use crate::error::{Error, Result};
use crate::graph::{is_maximal_defective, Graph};
use crate::order::{degeneracy_ordering, greedy_coloring};
use crate::reduce::{reduce_pipeline, ReductionReport};
use crate::sink::{SearchStats, SolutionSink};

#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub pivot: bool,
    pub reduce: bool,
    pub decompose: bool,
    pub threads: usize,
    /// Re-check every solution for maximality in the input graph.
    pub verify: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            pivot: true,
            reduce: true,
            decompose: true,
            threads: 1,
            verify: cfg!(debug_assertions),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct EnumOutcome {
    pub stats: SearchStats,
    pub reduction: Option<ReductionReport>,
    pub n_reduced: usize,
    pub m_reduced: usize,
    pub time_build_ms: u64,
}

/// Reports every maximal `k`-defective clique of `g` with at least `q`
/// vertices to `sink`, in ids of `g`. Decomposition needs `q ≥ k + 2`.
pub fn enumerate(
    g: &Graph,
    k: usize,
    q: usize,
    opts: &EnumOptions,
    sink: &mut SolutionSink,
) -> Result<EnumOutcome> {
    if q == 0 {
        return Err(Error::ZeroThreshold);
    }
    if opts.decompose && q < k + 2 {
        return Err(Error::ThresholdTooSmall { k, q });
    }
    let mut outcome = EnumOutcome::default();

    let start = Instant::now();
    let ord = degeneracy_ordering(g);
    let chi = greedy_coloring(g, &ord);
    outcome.time_build_ms = start.elapsed().as_millis() as u64;

    let start = Instant::now();
    let reduced = opts.reduce.then(|| reduce_pipeline(g, k, q, &chi));
    outcome.stats.time_reduce_ms = start.elapsed().as_millis() as u64;

    if opts.verify {
        let original = g.clone();
        sink.set_check(Box::new(move |sol: &[u32]| {
            sol.len() >= q && is_maximal_defective(&original, k, sol)
        }));
    }

    let start = Instant::now();
    let bnb = BnbOptions { pivot: opts.pivot };
    let (work, work_chi, work_ord) = match &reduced {
        Some(r) => {
            sink.set_origin(Some(r.origin.clone()));
            (&r.graph, r.coloring.clone(), degeneracy_ordering(&r.graph))
        }
        None => (g, chi, ord),
    };
    let mut stats = SearchStats::default();
    if opts.decompose {
        let decomp = DecompOptions {
            bnb,
            threads: opts.threads,
        };
        enumerate_decomposed(work, &work_chi, &work_ord, k, q, &decomp, sink, &mut stats)?;
    } else if work.n() > 0 {
        Instance::root(work, &work_chi, k).enumerate(q, &bnb, sink, &mut stats);
    }
    sink.set_origin(None);
    stats.time_reduce_ms = outcome.stats.time_reduce_ms;
    stats.time_search_ms = start.elapsed().as_millis() as u64;
    outcome.stats = stats;
    outcome.n_reduced = work.n();
    outcome.m_reduced = work.m();
    outcome.reduction = reduced.map(|r| r.report);

    if sink.rejected() > 0 {
        return Err(Error::Verification {
            rejected: sink.rejected(),
        });
    }
    sink.flush()?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_graph, gnp, moon_moser, ExampleGraph};
    use crate::oracle::brute_maximal;

    fn configs() -> Vec<EnumOptions> {
        let mut out = Vec::new();
        for pivot in [true, false] {
            for reduce in [true, false] {
                for decompose in [true, false] {
                    out.push(EnumOptions {
                        pivot,
                        reduce,
                        decompose,
                        threads: 1,
                        verify: true,
                    });
                }
            }
        }
        out
    }

    fn solve(g: &Graph, k: usize, q: usize, opts: &EnumOptions) -> Vec<Vec<u32>> {
        let mut sink = SolutionSink::collect();
        enumerate(g, k, q, opts, &mut sink).unwrap();
        sink.into_sorted()
    }

    #[test]
    fn all_configurations_agree() {
        let fig = example_graph(ExampleGraph::Fig2a);
        let expected = brute_maximal(&fig, 1, 4).unwrap();
        assert_eq!(expected.len(), 5);
        for opts in configs() {
            assert_eq!(solve(&fig, 1, 4, &opts), expected);
        }
        for seed in 0..25 {
            let n = 6 + seed as usize % 11;
            let g = gnp(n, [0.3, 0.5, 0.7][seed as usize % 3], seed);
            for k in 0..=3 {
                for q in (k + 2)..=n {
                    let expected = brute_maximal(&g, k, q).unwrap();
                    for opts in configs() {
                        assert_eq!(
                            solve(&g, k, q, &opts),
                            expected,
                            "seed {seed} k {k} q {q} {opts:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn threshold_rules() {
        let g = moon_moser(2);
        let mut sink = SolutionSink::count_only();
        assert!(matches!(
            enumerate(&g, 1, 2, &EnumOptions::default(), &mut sink),
            Err(Error::ThresholdTooSmall { .. })
        ));
        assert!(matches!(
            enumerate(&g, 0, 0, &EnumOptions::default(), &mut sink),
            Err(Error::ZeroThreshold)
        ));
        let opts = EnumOptions {
            decompose: false,
            ..Default::default()
        };
        assert_eq!(solve(&g, 1, 1, &opts).len(), 18);
    }

    #[test]
    fn parallel_matches_serial() {
        let g = moon_moser(4);
        let mut base = SolutionSink::count_only();
        let serial = enumerate(&g, 2, 4, &EnumOptions::default(), &mut base).unwrap();
        for threads in [2, 8] {
            let mut sink = SolutionSink::count_only();
            let par = enumerate(
                &g,
                2,
                4,
                &EnumOptions {
                    threads,
                    ..Default::default()
                },
                &mut sink,
            )
            .unwrap();
            assert_eq!(sink.count(), base.count());
            assert_eq!(par.stats.tree_nodes, serial.stats.tree_nodes);
        }
    }

    #[test]
    fn empty_graph() {
        let mut sink = SolutionSink::collect();
        let out = enumerate(&Graph::empty(), 1, 3, &EnumOptions::default(), &mut sink).unwrap();
        assert_eq!(sink.count(), 0);
        assert_eq!(out.n_reduced, 0);
    }
}
