//! Clique-first branch and bound for k-defective cliques.
//!
//! An [`Instance`] is the state `(S, C, X)`: a partial solution `S`, the
//! unexplored candidates `C` and the excluded candidates `X`. Every
//! candidate `u` keeps `S ∪ {u}` within the defect budget `k`.
//!
//! The search works on a local copy of the subproblem's vertices, numbered
//! in ascending order of their ids in the searched graph, so id-based tie
//! breaking is the same locally and globally. `C` and `X` share one array:
//! `X` occupies `[xb, cb)` and `C` occupies `[cb, ce)`. Refinement
//! partitions both regions in place, so a child's window is a sub-range of
//! its parent's. On backtrack a call moves the vertices it excluded back
//! into `C` and undoes its non-neighbor counter updates.

use std::mem;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order::Coloring;
use crate::sink::{SearchStats, SolutionSink};

/// Above this many vertices a subproblem uses sorted neighbor lists
/// instead of a bit matrix.
const BITSET_LIMIT: usize = 8192;

#[derive(Debug, Clone, Copy)]
pub struct BnbOptions {
    pub pivot: bool,
}

impl Default for BnbOptions {
    fn default() -> Self {
        BnbOptions { pivot: true }
    }
}

/// `total = base + clique_extension + defective_extension`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundBreakdown {
    pub base: usize,
    pub clique_extension: usize,
    pub defective_extension: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotChoice {
    pub pivot: Option<u32>,
    /// Branching vertices, ascending.
    pub branch: Vec<u32>,
    /// `|N̄_C[u] ∩ N_C(S)|` for each `u ∈ N_C(S)`, by ascending `u`.
    pub scores: Vec<(u32, usize)>,
}

/// Hooks for tests that watch the search from inside.
pub trait SearchProbe {
    /// A branching vertex was picked. `missing` is how many members of `S`
    /// it is not adjacent to; `clique_available` tells whether the branch
    /// set still held a vertex adjacent to all of `S`.
    fn on_branch(&mut self, _missing: u32, _clique_available: bool) {}

    /// The best solution grew from `old` to `new` vertices.
    fn on_best_update(&mut self, _old: usize, _new: usize) {}
}

pub struct NoProbe;

impl SearchProbe for NoProbe {}

/// Best solution shared between concurrent searches. Installs only
/// strictly larger sets; `threshold` is always `size + 1`, possibly stale
/// for a concurrent reader.
#[derive(Debug)]
pub struct BestCell {
    threshold: AtomicUsize,
    members: Mutex<Vec<u32>>,
}

impl BestCell {
    pub fn new(initial: Vec<u32>) -> BestCell {
        BestCell {
            threshold: AtomicUsize::new(initial.len() + 1),
            members: Mutex::new(initial),
        }
    }

    #[inline]
    pub fn threshold(&self) -> usize {
        self.threshold.load(Ordering::Acquire)
    }

    pub fn size(&self) -> usize {
        self.threshold() - 1
    }

    /// Returns `(old_size, new_size)` if `candidate` was installed.
    pub fn offer(&self, candidate: &[u32]) -> Option<(usize, usize)> {
        let mut members = self.members.lock().unwrap();
        if candidate.len() <= members.len() {
            return None;
        }
        let old = members.len();
        members.clear();
        members.extend_from_slice(candidate);
        members.sort_unstable();
        self.threshold.store(candidate.len() + 1, Ordering::Release);
        Some((old, candidate.len()))
    }

    pub fn snapshot(&self) -> Vec<u32> {
        self.members.lock().unwrap().clone()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.members.into_inner().unwrap()
    }
}

enum Rows {
    Bits { words: usize, bits: Vec<u64> },
    Lists(Vec<Vec<u32>>),
}

/// Induced subgraph on the vertices of one subproblem.
struct LocalGraph {
    global: Vec<u32>,
    rows: Rows,
    color: Vec<u32>,
    num_colors: usize,
}

impl LocalGraph {
    /// `vertices` must be sorted and distinct. `index` is scratch of length
    /// `g.n()` filled with `u32::MAX`; it is left that way on return.
    fn build(g: &Graph, chi: &Coloring, vertices: Vec<u32>, index: &mut [u32]) -> LocalGraph {
        let len = vertices.len();
        for (i, &v) in vertices.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let rows = if len <= BITSET_LIMIT {
            let words = len.div_ceil(64);
            let mut bits = vec![0u64; words * len];
            for (i, &v) in vertices.iter().enumerate() {
                for &w in g.neighbors(v) {
                    let j = index[w as usize];
                    if j != u32::MAX {
                        bits[i * words + j as usize / 64] |= 1 << (j % 64);
                    }
                }
            }
            Rows::Bits { words, bits }
        } else {
            Rows::Lists(
                vertices
                    .iter()
                    .map(|&v| {
                        g.neighbors(v)
                            .iter()
                            .map(|&w| index[w as usize])
                            .filter(|&j| j != u32::MAX)
                            .collect()
                    })
                    .collect(),
            )
        };
        for &v in &vertices {
            index[v as usize] = u32::MAX;
        }
        let color = vertices.iter().map(|&v| chi.of(v)).collect();
        LocalGraph {
            global: vertices,
            rows,
            color,
            num_colors: chi.num_colors,
        }
    }

    #[inline]
    fn adj(&self, a: u32, b: u32) -> bool {
        match &self.rows {
            Rows::Bits { words, bits } => {
                bits[a as usize * words + b as usize / 64] & (1 << (b % 64)) != 0
            }
            Rows::Lists(lists) => lists[a as usize].binary_search(&b).is_ok(),
        }
    }

    fn local(&self, v: u32) -> Option<u32> {
        self.global.binary_search(&v).ok().map(|i| i as u32)
    }
}

#[derive(Debug, Clone, Copy)]
struct Window {
    xb: usize,
    cb: usize,
    ce: usize,
}

enum Goal<'a> {
    Enumerate {
        q: usize,
        sink: &'a mut SolutionSink,
    },
    Maximum {
        best: &'a BestCell,
        /// Prune against this instead of the live threshold.
        frozen_q: Option<usize>,
    },
}

impl Goal<'_> {
    #[inline]
    fn threshold(&self) -> usize {
        match self {
            Goal::Enumerate { q, .. } => *q,
            Goal::Maximum { best, frozen_q } => frozen_q.unwrap_or_else(|| best.threshold()),
        }
    }
}

pub struct Instance {
    local: LocalGraph,
    k: usize,
    s: Vec<u32>,
    missing: usize,
    /// Non-neighbors in `S`, valid for vertices of the current window.
    nn: Vec<u32>,
    cand: Vec<u32>,
    pos: Vec<u32>,
    top: Window,
    branch_pool: Vec<Vec<u32>>,
    moved_pool: Vec<Vec<u32>>,
    scratch: Vec<u32>,
    color_count: Vec<u32>,
    touched: Vec<u32>,
    hist_clique: Vec<usize>,
    hist_defect: Vec<usize>,
}

impl Instance {
    /// Root instance `(∅, V, ∅)`.
    pub fn root(g: &Graph, chi: &Coloring, k: usize) -> Instance {
        let mut index = vec![u32::MAX; g.n()];
        let all: Vec<u32> = g.vertices().collect();
        Self::assemble(g, chi, k, &[], &all, &[], &mut index)
    }

    /// Instance from explicit sets of vertex ids of `g`. Fails unless the
    /// sets are disjoint, `S` is `k`-defective and every member `u` of
    /// `C ∪ X` keeps `S ∪ {u}` `k`-defective.
    pub fn new(
        g: &Graph,
        chi: &Coloring,
        k: usize,
        s: &[u32],
        c: &[u32],
        x: &[u32],
    ) -> Result<Instance> {
        let mut all: Vec<u32> = s.iter().chain(c).chain(x).copied().collect();
        if let Some(&v) = all.iter().find(|&&v| v as usize >= g.n()) {
            return Err(Error::InvalidInstance(format!("vertex {v} out of range")));
        }
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != total {
            return Err(Error::InvalidInstance(
                "S, C and X must be disjoint sets".into(),
            ));
        }
        let mut index = vec![u32::MAX; g.n()];
        let inst = Self::assemble(g, chi, k, s, c, x, &mut index);
        if inst.missing > k {
            return Err(Error::InvalidInstance(format!(
                "S misses {} edges, more than k = {k}",
                inst.missing
            )));
        }
        let w = inst.top;
        if let Some(&u) = inst.cand[w.xb..w.ce]
            .iter()
            .find(|&&u| inst.missing + inst.nn[u as usize] as usize > k)
        {
            return Err(Error::InvalidInstance(format!(
                "vertex {} is not a candidate",
                inst.local.global[u as usize]
            )));
        }
        Ok(inst)
    }

    /// Root of one decomposed subproblem: `S = {anchor}`, with `later` and
    /// `earlier` filtered down to actual candidates.
    pub(crate) fn for_anchor(
        g: &Graph,
        chi: &Coloring,
        k: usize,
        anchor: u32,
        later: &[u32],
        earlier: &[u32],
        index: &mut [u32],
    ) -> Instance {
        let fits = |&u: &u32| k >= 1 || g.has_edge(anchor, u);
        let c: Vec<u32> = later.iter().copied().filter(fits).collect();
        let x: Vec<u32> = earlier.iter().copied().filter(fits).collect();
        Self::assemble(g, chi, k, &[anchor], &c, &x, index)
    }

    fn assemble(
        g: &Graph,
        chi: &Coloring,
        k: usize,
        s: &[u32],
        c: &[u32],
        x: &[u32],
        index: &mut [u32],
    ) -> Instance {
        let mut vertices: Vec<u32> = s.iter().chain(c).chain(x).copied().collect();
        vertices.sort_unstable();
        let local = LocalGraph::build(g, chi, vertices, index);
        let len = local.global.len();
        let to_local = |v: &u32| local.local(*v).unwrap();
        let s_local: Vec<u32> = s.iter().map(to_local).collect();
        let mut cand: Vec<u32> = x.iter().map(to_local).collect();
        cand.extend(c.iter().map(to_local));
        let mut pos = vec![u32::MAX; len];
        for (i, &u) in cand.iter().enumerate() {
            pos[u as usize] = i as u32;
        }
        let mut nn = vec![0u32; len];
        let mut missing = 0;
        for (i, &a) in s_local.iter().enumerate() {
            for &b in &s_local[..i] {
                if !local.adj(a, b) {
                    missing += 1;
                }
            }
        }
        for &u in &cand {
            nn[u as usize] = s_local.iter().filter(|&&a| !local.adj(a, u)).count() as u32;
        }
        let num_colors = local.num_colors;
        let top = Window {
            xb: 0,
            cb: x.len(),
            ce: x.len() + c.len(),
        };
        Instance {
            local,
            k,
            s: s_local,
            missing,
            nn,
            cand,
            pos,
            top,
            branch_pool: Vec::new(),
            moved_pool: Vec::new(),
            scratch: Vec::new(),
            color_count: vec![0; num_colors + 1],
            touched: Vec::new(),
            hist_clique: vec![0; k + 1],
            hist_defect: vec![0; k + 1],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Remaining defect budget `k - |Ē(S)|`.
    pub fn kappa(&self) -> usize {
        self.k - self.missing
    }

    pub fn missing_in_s(&self) -> usize {
        self.missing
    }

    fn to_global(&self, locals: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = locals
            .iter()
            .map(|&u| self.local.global[u as usize])
            .collect();
        out.sort_unstable();
        out
    }

    pub fn partial(&self) -> Vec<u32> {
        self.to_global(&self.s)
    }

    pub fn candidates(&self) -> Vec<u32> {
        self.to_global(&self.cand[self.top.cb..self.top.ce])
    }

    pub fn excluded(&self) -> Vec<u32> {
        self.to_global(&self.cand[self.top.xb..self.top.cb])
    }

    /// `|N̄_S(v)|` for a vertex of `C ∪ X`.
    pub fn nonneighbor_count(&self, v: u32) -> Option<u32> {
        let u = self.local.local(v)?;
        let p = self.pos[u as usize];
        (p != u32::MAX && (p as usize) < self.top.ce).then(|| self.nn[u as usize])
    }

    /// `C_i = {u ∈ C : |N̄_S(u)| ≤ i}` for `i = 0..=κ`.
    pub fn partition_by_defect(&self) -> Vec<Vec<u32>> {
        let c = &self.cand[self.top.cb..self.top.ce];
        (0..=self.kappa())
            .map(|i| {
                let members: Vec<u32> = c
                    .iter()
                    .copied()
                    .filter(|&u| self.nn[u as usize] as usize <= i)
                    .collect();
                self.to_global(&members)
            })
            .collect()
    }

    /// Search-tree size bound for this instance with pivoting:
    /// `2 · ⌈3^{|C_0|/3}⌉ · f_κ(|C_1|, …, |C_κ|)`.
    pub fn node_bound(&self) -> u128 {
        let parts = self.partition_by_defect();
        let higher: Vec<u64> = parts[1..].iter().map(|c| c.len() as u64).collect();
        node_bound(parts[0].len(), &higher)
    }

    pub fn ub1(&mut self) -> BoundBreakdown {
        self.bound(self.top)
    }

    pub fn select_pivot(&mut self) -> PivotChoice {
        let mut branch = Vec::new();
        let pivot = self.fill_branch_set(self.top, true, &mut branch);
        let common: Vec<u32> = self.cand[self.top.cb..self.top.ce]
            .iter()
            .copied()
            .filter(|&u| self.nn[u as usize] == 0)
            .collect();
        let mut scores: Vec<(u32, usize)> = common
            .iter()
            .map(|&u| {
                let score = common
                    .iter()
                    .filter(|&&v| v == u || !self.local.adj(u, v))
                    .count();
                (self.local.global[u as usize], score)
            })
            .collect();
        scores.sort_unstable();
        PivotChoice {
            pivot: pivot.map(|p| self.local.global[p as usize]),
            branch: self.to_global(&branch),
            scores,
        }
    }

    /// Candidates `(C', X')` of `S ∪ {b}` for `b ∈ C`.
    pub fn refine(&mut self, b: u32) -> Result<(Vec<u32>, Vec<u32>)> {
        let not_candidate = || Error::InvalidInstance(format!("{b} is not in C"));
        let u = self.local.local(b).ok_or_else(not_candidate)?;
        let p = self.pos[u as usize] as usize;
        let w = self.top;
        if p == u32::MAX as usize || p < w.cb || p >= w.ce {
            return Err(not_candidate());
        }
        self.swap_pos(p, w.ce - 1);
        let mut stats = SearchStats::default();
        let child = self.refine_window(Window { ce: w.ce - 1, ..w }, u, &mut stats);
        Ok((
            self.to_global(&self.cand[child.cb..child.ce]),
            self.to_global(&self.cand[child.xb..child.cb]),
        ))
    }

    /// Reports every maximal `k`-defective clique `D` with
    /// `S ⊆ D ⊆ S ∪ C` and `|D| ≥ q` exactly once.
    pub fn enumerate(
        &mut self,
        q: usize,
        opts: &BnbOptions,
        sink: &mut SolutionSink,
        stats: &mut SearchStats,
    ) {
        self.enumerate_probed(q, opts, sink, stats, &mut NoProbe);
    }

    pub fn enumerate_probed(
        &mut self,
        q: usize,
        opts: &BnbOptions,
        sink: &mut SolutionSink,
        stats: &mut SearchStats,
        probe: &mut dyn SearchProbe,
    ) {
        let mut goal = Goal::Enumerate { q, sink };
        self.search(self.top, 0, &mut goal, opts, stats, probe);
    }

    /// Grows `best` to the largest `k`-defective clique between `S` and
    /// `S ∪ C` if that beats it. With `frozen_q`, pruning ignores updates
    /// to `best` and compares against the fixed value instead.
    pub fn maximize(
        &mut self,
        best: &BestCell,
        frozen_q: Option<usize>,
        opts: &BnbOptions,
        stats: &mut SearchStats,
        probe: &mut dyn SearchProbe,
    ) {
        let mut goal = Goal::Maximum { best, frozen_q };
        self.search(self.top, 0, &mut goal, opts, stats, probe);
    }

    #[inline]
    fn swap_pos(&mut self, i: usize, j: usize) {
        if i != j {
            self.cand.swap(i, j);
            self.pos[self.cand[i] as usize] = i as u32;
            self.pos[self.cand[j] as usize] = j as u32;
        }
    }

    fn search(
        &mut self,
        w: Window,
        depth: usize,
        goal: &mut Goal<'_>,
        opts: &BnbOptions,
        stats: &mut SearchStats,
        probe: &mut dyn SearchProbe,
    ) {
        stats.tree_nodes += 1;
        match goal {
            Goal::Enumerate { q, sink } => {
                if w.xb == w.ce && self.s.len() >= *q {
                    let members = self.to_global(&self.s);
                    sink.emit(&members);
                    stats.solutions += 1;
                }
            }
            Goal::Maximum { best, .. } => {
                if self.s.len() >= best.threshold() {
                    let members = self.to_global(&self.s);
                    if let Some((old, new)) = best.offer(&members) {
                        probe.on_best_update(old, new);
                    }
                }
            }
        }
        if w.cb == w.ce {
            return;
        }

        if self.branch_pool.len() <= depth {
            self.branch_pool.resize_with(depth + 1, Vec::new);
            self.moved_pool.resize_with(depth + 1, Vec::new);
        }
        let mut branch = mem::take(&mut self.branch_pool[depth]);
        let mut moved = mem::take(&mut self.moved_pool[depth]);
        moved.clear();
        self.fill_branch_set(w, opts.pivot, &mut branch);

        let mut cb = w.cb;
        while !branch.is_empty() {
            let current = Window { cb, ..w };
            if self.bound(current).total < goal.threshold() {
                stats.ub_prunes += 1;
                break;
            }

            // clique-first: a vertex adjacent to all of S if there is one,
            // smallest id within each group
            let mut pick = 0;
            for i in 1..branch.len() {
                let (a, b) = (branch[i], branch[pick]);
                if (self.nn[a as usize] > 0, a) < (self.nn[b as usize] > 0, b) {
                    pick = i;
                }
            }
            let clique_available = branch.iter().any(|&u| self.nn[u as usize] == 0);
            let b = branch.swap_remove(pick);
            let b_nn = self.nn[b as usize];
            probe.on_branch(b_nn, clique_available);

            self.swap_pos(self.pos[b as usize] as usize, w.ce - 1);
            let child = self.refine_window(
                Window {
                    ce: w.ce - 1,
                    ..current
                },
                b,
                stats,
            );

            self.missing += b_nn as usize;
            self.s.push(b);
            for i in child.xb..child.ce {
                let u = self.cand[i];
                if !self.local.adj(b, u) {
                    self.nn[u as usize] += 1;
                }
            }

            self.search(child, depth + 1, goal, opts, stats, probe);

            for i in child.xb..child.ce {
                let u = self.cand[i];
                if !self.local.adj(b, u) {
                    self.nn[u as usize] -= 1;
                }
            }
            self.s.pop();
            self.missing -= b_nn as usize;

            // b leaves C for X
            self.swap_pos(w.ce - 1, cb);
            cb += 1;
            moved.push(b);
        }

        // return the excluded vertices to C
        for &b in moved.iter().rev() {
            cb -= 1;
            self.swap_pos(self.pos[b as usize] as usize, cb);
        }
        self.branch_pool[depth] = branch;
        self.moved_pool[depth] = moved;
    }

    /// Fills `branch` with `B` and returns the pivot, if one was used.
    fn fill_branch_set(&mut self, w: Window, pivot: bool, branch: &mut Vec<u32>) -> Option<u32> {
        branch.clear();
        let c = w.cb..w.ce;
        if pivot {
            let mut common = mem::take(&mut self.scratch);
            common.clear();
            common.extend(
                self.cand[c.clone()]
                    .iter()
                    .copied()
                    .filter(|&u| self.nn[u as usize] == 0),
            );
            let mut chosen: Option<(usize, u32)> = None;
            for &u in &common {
                let non_neighbors = common
                    .iter()
                    .filter(|&&v| v == u || !self.local.adj(u, v))
                    .count();
                // fewest non-neighbors, ties to the largest id
                let better = match chosen {
                    None => true,
                    Some((best, p)) => non_neighbors < best || (non_neighbors == best && u > p),
                };
                if better {
                    chosen = Some((non_neighbors, u));
                }
            }
            self.scratch = common;
            if let Some((_, p)) = chosen {
                branch.extend(
                    self.cand[c]
                        .iter()
                        .copied()
                        .filter(|&u| u == p || !self.local.adj(p, u)),
                );
                return Some(p);
            }
        }
        branch.extend_from_slice(&self.cand[c]);
        None
    }

    /// Coloring bound on `|D|` over `S ⊆ D ⊆ S ∪ C`. Vertices of `N_C(S)`
    /// that share a color are pairwise non-adjacent, so the `i`-th extra
    /// pick from one color class costs at least `i` missing edges; every
    /// other candidate costs its non-neighbor count in `S`. Taking the
    /// cheapest increments within the budget maximizes the count.
    fn bound(&mut self, w: Window) -> BoundBreakdown {
        let kappa = self.k - self.missing;
        self.hist_clique[..=kappa].fill(0);
        self.hist_defect[..=kappa].fill(0);
        for i in w.cb..w.ce {
            let u = self.cand[i] as usize;
            let cost = self.nn[u] as usize;
            if cost == 0 {
                let c = self.local.color[u] as usize;
                if self.color_count[c] == 0 {
                    self.touched.push(c as u32);
                }
                self.color_count[c] += 1;
            } else if cost <= kappa {
                self.hist_defect[cost] += 1;
            }
        }
        for &c in &self.touched {
            let t = mem::take(&mut self.color_count[c as usize]) as usize;
            for slot in &mut self.hist_clique[..t.min(kappa + 1)] {
                *slot += 1;
            }
        }
        self.touched.clear();

        let mut clique_extension = self.hist_clique[0];
        let mut defective_extension = 0;
        let mut budget = kappa;
        for cost in 1..=kappa {
            if budget < cost {
                break;
            }
            let affordable = budget / cost;
            let from_clique = self.hist_clique[cost].min(affordable);
            let from_defect = self.hist_defect[cost].min(affordable - from_clique);
            clique_extension += from_clique;
            defective_extension += from_defect;
            budget -= (from_clique + from_defect) * cost;
        }
        let base = self.s.len();
        BoundBreakdown {
            base,
            clique_extension,
            defective_extension,
            total: base + clique_extension + defective_extension,
        }
    }

    /// `b` sits just past `w.ce`. Partitions the survivors of `C` to the
    /// front of `[cb, ce)` and those of `X` to the back of `[xb, cb)`.
    fn refine_window(&mut self, w: Window, b: u32, stats: &mut SearchStats) -> Window {
        let empty = Window {
            xb: w.cb,
            cb: w.cb,
            ce: w.cb,
        };
        let Some(min_nn) = self.cand[w.xb..w.ce]
            .iter()
            .map(|&u| self.nn[u as usize])
            .min()
        else {
            return empty;
        };
        let b_nn = self.nn[b as usize] as usize;
        if min_nn as usize + b_nn + self.missing > self.k {
            stats.refine_fastpath += 1;
            return empty;
        }
        let limit = self.k - self.missing - b_nn;
        let fits = |this: &Self, u: u32| {
            this.nn[u as usize] as usize + usize::from(!this.local.adj(b, u)) <= limit
        };

        let mut c_end = w.cb;
        for i in w.cb..w.ce {
            if fits(self, self.cand[i]) {
                self.swap_pos(i, c_end);
                c_end += 1;
            }
        }
        let mut x_begin = w.cb;
        for i in (w.xb..w.cb).rev() {
            if fits(self, self.cand[i]) {
                x_begin -= 1;
                self.swap_pos(i, x_begin);
            }
        }
        Window {
            xb: x_begin,
            cb: w.cb,
            ce: c_end,
        }
    }
}

/// `1 + Σ_{i=1..κ} Π_{j=i..κ} n_j`, saturating at `u128::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FKappa {
    pub value: u128,
    pub saturated: bool,
}

pub fn f_kappa(values: &[u64]) -> FKappa {
    let mut saturated = false;
    let mut sum: u128 = 1;
    let mut product: u128 = 1;
    for &n in values.iter().rev() {
        product = product.checked_mul(n as u128).unwrap_or_else(|| {
            saturated = true;
            u128::MAX
        });
        sum = sum.checked_add(product).unwrap_or_else(|| {
            saturated = true;
            u128::MAX
        });
    }
    FKappa {
        value: sum,
        saturated,
    }
}

/// Smallest integer `c` with `c³ ≥ 3^x`, i.e. `⌈3^{x/3}⌉`. `None` past
/// `u128` range.
pub fn ceil_cbrt_pow3(x: u32) -> Option<u128> {
    let target = 3u128.checked_pow(x)?;
    let cube_at_least = |c: u128| match c.checked_mul(c).and_then(|c2| c2.checked_mul(c)) {
        Some(v) => v >= target,
        None => true,
    };
    let (mut lo, mut hi) = (1u128, 3u128.checked_pow(x / 3 + 1)?);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if cube_at_least(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

/// Upper bound on the search tree below an instance:
/// `2 · ⌈3^{|C_0|/3}⌉ · f_κ(|C_1|, …, |C_κ|)`. Saturates.
pub fn node_bound(c0: usize, higher: &[u64]) -> u128 {
    let f = f_kappa(higher);
    match ceil_cbrt_pow3(c0 as u32) {
        Some(c) => c.saturating_mul(2).saturating_mul(f.value),
        None => u128::MAX,
    }
}

/// Node bound for a full run from the root on `n` vertices.
pub fn root_node_bound(n: usize, k: usize) -> u128 {
    node_bound(n, &vec![n as u64; k])
}

/// Runs the monolithic search from the root.
pub fn enumerate_root(
    g: &Graph,
    chi: &Coloring,
    k: usize,
    q: usize,
    opts: &BnbOptions,
    sink: &mut SolutionSink,
    stats: &mut SearchStats,
) -> Result<()> {
    if q == 0 {
        return Err(Error::ZeroThreshold);
    }
    Instance::root(g, chi, k).enumerate(q, opts, sink, stats);
    Ok(())
}
