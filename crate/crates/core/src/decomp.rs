//! Per-vertex decomposition of the search.
//!
//! With `q ≥ k + 2` every solution has diameter at most two, so it lies in
//! the two-hop neighborhood of its first vertex in a degeneracy ordering.
//! Subtask `i` anchors `S = {v_i}` and searches that neighborhood, taking
//! later vertices as candidates and earlier ones as exclusions. Each
//! solution is found by exactly one subtask.

use rayon::prelude::*;

use crate::bnb::{BestCell, BnbOptions, Instance, NoProbe, SearchProbe};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order::{Coloring, DegeneracyOrdering};
use crate::sink::{SearchStats, SolutionSink};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtask {
    pub anchor: u32,
    /// `V_i`: neighbors of the anchor and of its forward neighbors, without
    /// the anchor itself. Sorted.
    pub universe: Vec<u32>,
    /// Members of `V_i` after the anchor in the ordering. Sorted.
    pub later: Vec<u32>,
    /// Members of `V_i` before the anchor in the ordering. Sorted.
    pub earlier: Vec<u32>,
}

#[derive(Debug, Clone, Copy)]
pub struct DecompOptions {
    pub bnb: BnbOptions,
    /// Worker threads; `1` runs on the calling thread.
    pub threads: usize,
}

impl Default for DecompOptions {
    fn default() -> Self {
        DecompOptions {
            bnb: BnbOptions::default(),
            threads: 1,
        }
    }
}

/// Reusable marks for building subtasks.
pub struct SubtaskBuilder {
    mark: Vec<bool>,
    index: Vec<u32>,
}

impl SubtaskBuilder {
    pub fn new(n: usize) -> SubtaskBuilder {
        SubtaskBuilder {
            mark: vec![false; n],
            index: vec![u32::MAX; n],
        }
    }

    /// Subtask for the vertex at position `i` of the ordering.
    pub fn build(&mut self, g: &Graph, ord: &DegeneracyOrdering, i: usize) -> Subtask {
        let anchor = ord.order[i];
        let mut universe = Vec::new();
        self.mark[anchor as usize] = true;
        let mut visit = |w: u32, universe: &mut Vec<u32>| {
            if !self.mark[w as usize] {
                self.mark[w as usize] = true;
                universe.push(w);
            }
        };
        for &w in g.neighbors(anchor) {
            visit(w, &mut universe);
        }
        for v in ord.forward_neighbors(g, anchor) {
            for &w in g.neighbors(v) {
                visit(w, &mut universe);
            }
        }
        self.mark[anchor as usize] = false;
        for &w in &universe {
            self.mark[w as usize] = false;
        }
        universe.sort_unstable();
        let rank = ord.rank[anchor as usize];
        let (later, earlier) = universe.iter().partition(|&&w| ord.rank[w as usize] > rank);
        Subtask {
            anchor,
            universe,
            later,
            earlier,
        }
    }

    /// Root instance of a subtask, candidates filtered to those that fit
    /// next to the anchor.
    pub fn instance(&mut self, g: &Graph, chi: &Coloring, k: usize, task: &Subtask) -> Instance {
        Instance::for_anchor(
            g,
            chi,
            k,
            task.anchor,
            &task.later,
            &task.earlier,
            &mut self.index,
        )
    }
}

/// Subtask for the vertex at position `i` (0-based) of the ordering.
pub fn build_subtask(g: &Graph, ord: &DegeneracyOrdering, i: usize) -> Subtask {
    SubtaskBuilder::new(g.n()).build(g, ord, i)
}

fn check_threshold(k: usize, q: usize) -> Result<()> {
    if q == 0 {
        Err(Error::ZeroThreshold)
    } else if q < k + 2 {
        Err(Error::ThresholdTooSmall { k, q })
    } else {
        Ok(())
    }
}

/// Enumerates one subtask into `sink`. Returns its counters.
#[allow(clippy::too_many_arguments)]
pub fn run_subtask(
    g: &Graph,
    chi: &Coloring,
    k: usize,
    q: usize,
    task: &Subtask,
    builder: &mut SubtaskBuilder,
    opts: &BnbOptions,
    sink: &mut SolutionSink,
) -> SearchStats {
    let mut stats = SearchStats::default();
    if 1 + task.later.len() >= q {
        builder
            .instance(g, chi, k, task)
            .enumerate(q, opts, sink, &mut stats);
    }
    stats
}

fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    Ok(pool.install(job))
}

/// All maximal `k`-defective cliques with at least `q` vertices, one
/// subtask per vertex of `ord`. Requires `q ≥ k + 2`.
#[allow(clippy::too_many_arguments)]
pub fn enumerate_decomposed(
    g: &Graph,
    chi: &Coloring,
    ord: &DegeneracyOrdering,
    k: usize,
    q: usize,
    opts: &DecompOptions,
    sink: &mut SolutionSink,
    stats: &mut SearchStats,
) -> Result<()> {
    check_threshold(k, q)?;
    let n = g.n();
    if opts.threads <= 1 {
        let mut builder = SubtaskBuilder::new(n);
        for i in 0..n {
            let task = builder.build(g, ord, i);
            stats.merge(&run_subtask(
                g,
                chi,
                k,
                q,
                &task,
                &mut builder,
                &opts.bnb,
                sink,
            ));
        }
        return Ok(());
    }

    let count_only = sink.is_count_only();
    let shards: Vec<(SolutionSink, SearchStats)> = with_pool(opts.threads, || {
        (0..n)
            .into_par_iter()
            .with_max_len(1)
            .fold(
                || {
                    let shard = if count_only {
                        SolutionSink::count_only()
                    } else {
                        SolutionSink::collect()
                    };
                    (SubtaskBuilder::new(n), shard, SearchStats::default())
                },
                |(mut builder, mut shard, mut acc), i| {
                    let task = builder.build(g, ord, i);
                    acc.merge(&run_subtask(
                        g,
                        chi,
                        k,
                        q,
                        &task,
                        &mut builder,
                        &opts.bnb,
                        &mut shard,
                    ));
                    (builder, shard, acc)
                },
            )
            .map(|(_, shard, acc)| (shard, acc))
            .collect()
    })?;
    for (shard, acc) in shards {
        sink.absorb(shard);
        stats.merge(&acc);
    }
    Ok(())
}

/// Grows `best` to a largest `k`-defective clique using the subtasks of
/// `ord`. Requires `best.threshold() ≥ k + 2` on entry. `probe` only
/// observes single-threaded runs.
#[allow(clippy::too_many_arguments)]
pub fn maximize_decomposed(
    g: &Graph,
    chi: &Coloring,
    ord: &DegeneracyOrdering,
    k: usize,
    best: &BestCell,
    frozen_q: Option<usize>,
    opts: &DecompOptions,
    stats: &mut SearchStats,
    probe: &mut dyn SearchProbe,
) -> Result<()> {
    check_threshold(k, frozen_q.unwrap_or_else(|| best.threshold()))?;
    let n = g.n();
    let run = |builder: &mut SubtaskBuilder,
               i: usize,
               stats: &mut SearchStats,
               probe: &mut dyn SearchProbe| {
        let task = builder.build(g, ord, i);
        let threshold = frozen_q.unwrap_or_else(|| best.threshold());
        if 1 + task.later.len() >= threshold {
            builder
                .instance(g, chi, k, &task)
                .maximize(best, frozen_q, &opts.bnb, stats, probe);
        }
    };
    if opts.threads <= 1 {
        let mut builder = SubtaskBuilder::new(n);
        for i in 0..n {
            run(&mut builder, i, stats, probe);
        }
        return Ok(());
    }

    let shards: Vec<SearchStats> = with_pool(opts.threads, || {
        (0..n)
            .into_par_iter()
            .with_max_len(1)
            .fold(
                || (SubtaskBuilder::new(n), SearchStats::default()),
                |(mut builder, mut acc), i| {
                    run(&mut builder, i, &mut acc, &mut NoProbe);
                    (builder, acc)
                },
            )
            .map(|(_, acc)| acc)
            .collect()
    })?;
    for acc in &shards {
        stats.merge(acc);
    }
    Ok(())
}
