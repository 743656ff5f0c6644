//! Undirected simple graphs in compressed adjacency form, plus edge-list I/O.
//!
//! Vertices are dense ids `0..n`. Each vertex keeps the label it had in the
//! input file so that results can be reported in the caller's namespace.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<u64>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `0..n`. Duplicate edges are
    /// merged and self-loops dropped. Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        Self::from_edges_labelled((0..n as u64).collect(), edges)
    }

    /// Same as [`Graph::from_edges`] with explicit labels (`labels.len()` is `n`).
    pub fn from_edges_labelled<I>(labels: Vec<u64>, edges: I) -> Graph
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let n = labels.len();
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) out of range"
            );
            if u != v {
                lists[u as usize].push(v);
                lists[v as usize].push(u);
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        let mut max_degree = 0;
        offsets.push(0);
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
            max_degree = max_degree.max(list.len());
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Graph {
            offsets,
            targets,
            labels,
            max_degree,
        }
    }

    pub fn empty() -> Graph {
        Graph::from_edges(0, std::iter::empty())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Sorted neighbor list of `u`.
    #[inline]
    pub fn neighbors(&self, u: u32) -> &[u32] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: u32) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    #[inline]
    pub fn label(&self, u: u32) -> u64 {
        self.labels[u as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n() as u32
    }

    /// Every edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// Subgraph induced by `keep`, relabelled densely in ascending order of
    /// `keep`. Returns the subgraph and the map from its ids to ours.
    /// Labels are carried over.
    pub fn induced(&self, keep: &[u32]) -> (Graph, Vec<u32>) {
        let mut origin = keep.to_vec();
        origin.sort_unstable();
        origin.dedup();
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in origin.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let labels = origin.iter().map(|&v| self.label(v)).collect();
        let edges = origin.iter().enumerate().flat_map(|(i, &v)| {
            let local = &local;
            self.neighbors(v).iter().filter_map(move |&w| {
                let j = local[w as usize];
                (j != u32::MAX && j > i as u32).then_some((i as u32, j))
            })
        });
        let g = Graph::from_edges_labelled(labels, edges.collect::<Vec<_>>());
        (g, origin)
    }

    /// Copy of this graph without the given edges (either orientation).
    pub fn without_edges(&self, removed: &[(u32, u32)]) -> Graph {
        let mut drop: Vec<(u32, u32)> =
            removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        drop.sort_unstable();
        let kept: Vec<(u32, u32)> = self
            .edges()
            .filter(|e| drop.binary_search(e).is_err())
            .collect();
        Graph::from_edges_labelled(self.labels.clone(), kept)
    }
}

/// A set of vertex ids with constant-time membership and ascending iteration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    members: Vec<u32>,
    present: Vec<bool>,
}

impl VertexSet {
    /// `universe` is the vertex count `n`; members must lie in `0..n`.
    pub fn new(universe: usize) -> VertexSet {
        VertexSet {
            members: Vec::new(),
            present: vec![false; universe],
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = u32>>(universe: usize, vertices: I) -> VertexSet {
        let mut set = VertexSet::new(universe);
        for v in vertices {
            set.present[v as usize] = true;
        }
        set.members = (0..universe as u32)
            .filter(|&v| set.present[v as usize])
            .collect();
        set
    }

    pub fn full(universe: usize) -> VertexSet {
        VertexSet::from_vertices(universe, 0..universe as u32)
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        self.present.get(v as usize).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.members
    }

    pub fn universe(&self) -> usize {
        self.present.len()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

/// Number of non-adjacent pairs inside `set`.
pub fn missing_edges(g: &Graph, set: &VertexSet) -> usize {
    let s = set.len();
    let inside: usize = set
        .iter()
        .map(|u| g.neighbors(u).iter().filter(|&&v| set.contains(v)).count())
        .sum();
    s * s.saturating_sub(1) / 2 - inside / 2
}

/// [`missing_edges`] for a plain slice of distinct vertices.
pub fn missing_edges_of(g: &Graph, vertices: &[u32]) -> usize {
    missing_edges(
        g,
        &VertexSet::from_vertices(g.n(), vertices.iter().copied()),
    )
}

/// True when `vertices` is a `k`-defective clique that no single outside
/// vertex extends.
pub fn is_maximal_defective(g: &Graph, k: usize, vertices: &[u32]) -> bool {
    let set = VertexSet::from_vertices(g.n(), vertices.iter().copied());
    let missing = missing_edges(g, &set);
    if missing > k {
        return false;
    }
    let mut adjacent = vec![0usize; g.n()];
    for v in set.iter() {
        for &w in g.neighbors(v) {
            adjacent[w as usize] += 1;
        }
    }
    g.vertices()
        .filter(|&u| !set.contains(u))
        .all(|u| missing + set.len() - adjacent[u as usize] > k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    /// Every data line is an edge; ids are remapped by first appearance.
    #[default]
    Edges,
    /// First data line is `n m`, followed by exactly `m` edge lines.
    NmHeader,
}

/// What the loader had to clean up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadReport {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

/// Reads an edge list. Lines starting with `#` or `%` are comments, blank
/// lines are skipped. In `Edges` format a leading `# n=<n> m=<m>` comment,
/// as written by [`write_edge_list`], declares dense 0-based ids so that
/// isolated vertices and id order survive a round trip.
pub fn load_edge_list<R: BufRead>(source: R, format: InputFormat) -> Result<(Graph, LoadReport)> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut seen_data = false;
    let mut nm_header: Option<(usize, usize)> = None;

    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') || trimmed.starts_with('%') {
            if !seen_data && header.is_none() && format == InputFormat::Edges {
                header = parse_size_comment(trimmed);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let a = parse_token(tokens.next(), lineno)?;
        let b = parse_token(tokens.next(), lineno)?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("unexpected extra token {extra:?}"),
            });
        }
        if format == InputFormat::NmHeader && nm_header.is_none() {
            nm_header = Some((a as usize, b as usize));
        } else {
            pairs.push((a, b));
        }
        seen_data = true;
    }

    match format {
        InputFormat::Edges => match header {
            Some((n, m)) => build_dense(n, Some(m), 0, &pairs),
            None => build_by_appearance(&pairs),
        },
        InputFormat::NmHeader => {
            let Some((n, m)) = nm_header else {
                return Ok((Graph::empty(), LoadReport::default()));
            };
            if pairs.len() != m {
                return Err(Error::Format(format!(
                    "header declares {m} edges but body has {}",
                    pairs.len()
                )));
            }
            let base = match pairs.iter().map(|&(a, b)| a.min(b)).min() {
                Some(0) | None => 0,
                Some(_) => 1,
            };
            build_dense(n, None, base, &pairs)
        }
    }
}

fn parse_token(token: Option<&str>, line: usize) -> Result<u64> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        msg: "expected two vertex ids".into(),
    })?;
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid vertex id {token:?}"),
    })
}

fn parse_size_comment(line: &str) -> Option<(usize, usize)> {
    let rest = line.trim_start_matches('#').trim();
    let mut n = None;
    let mut m = None;
    for part in rest.split_whitespace() {
        if let Some(v) = part.strip_prefix("n=") {
            n = v.parse().ok();
        } else {
            m = part.strip_prefix("m=")?.parse().ok();
        }
    }
    Some((n?, m?))
}

fn build_by_appearance(pairs: &[(u64, u64)]) -> Result<(Graph, LoadReport)> {
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut labels = Vec::new();
    let mut intern = |label: u64| {
        *ids.entry(label).or_insert_with(|| {
            labels.push(label);
            (labels.len() - 1) as u32
        })
    };
    let edges: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (intern(a), intern(b))).collect();
    Ok(finish(labels, edges))
}

fn build_dense(
    n: usize,
    m: Option<usize>,
    base: u64,
    pairs: &[(u64, u64)],
) -> Result<(Graph, LoadReport)> {
    let mut edges = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        let (Some(u), Some(v)) = (a.checked_sub(base), b.checked_sub(base)) else {
            return Err(Error::Format(format!("vertex id below base {base}")));
        };
        if u >= n as u64 || v >= n as u64 {
            return Err(Error::Format(format!(
                "edge ({a}, {b}) exceeds declared vertex count {n}"
            )));
        }
        edges.push((u as u32, v as u32));
    }
    let labels = (0..n as u64).map(|v| v + base).collect();
    let (g, report) = finish(labels, edges);
    if let Some(m) = m {
        if g.m() != m {
            return Err(Error::Format(format!(
                "header declares {m} edges but body has {}",
                g.m()
            )));
        }
    }
    Ok((g, report))
}

fn finish(labels: Vec<u64>, edges: Vec<(u32, u32)>) -> (Graph, LoadReport) {
    let self_loops = edges.iter().filter(|(u, v)| u == v).count();
    let listed = edges.len() - self_loops;
    let g = Graph::from_edges_labelled(labels, edges);
    let report = LoadReport {
        self_loops,
        duplicate_edges: listed - g.m(),
    };
    (g, report)
}

/// Writes `# n=<n> m=<m>` followed by one `u v` line per edge (`u < v`,
/// internal ids, ascending).
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# n={} m={}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximality_check() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(is_maximal_defective(&g, 0, &[0, 1, 2]));
        assert!(!is_maximal_defective(&g, 0, &[0, 1]));
        assert!(is_maximal_defective(&g, 1, &[0, 1, 2]));
        assert!(!is_maximal_defective(&g, 1, &[0, 2]));
        assert!(!is_maximal_defective(&g, 1, &[0, 1, 2, 3]));
        assert!(is_maximal_defective(&g, 2, &[0, 1, 2, 3]));
        assert!(!is_maximal_defective(&g, 0, &[0, 3]));
    }

    fn load(text: &str) -> Result<(Graph, LoadReport)> {
        load_edge_list(text.as_bytes(), InputFormat::Edges)
    }

    #[test]
    fn empty_input() {
        let (g, _) = load("").unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
        let (g, _) = load("# only a comment\n% another\n\n").unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
    }

    #[test]
    fn duplicate_edge_and_self_loop() {
        let (g, report) = load("1 2\n2 1\n1 2\n3 3\n2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(report.self_loops, 1);
        assert_eq!(report.duplicate_edges, 2);
        assert!(!g.has_edge(2, 2));
    }

    #[test]
    fn first_appearance_relabelling() {
        let (g, _) = load("10 5\n5 7\n").unwrap();
        assert_eq!(g.labels(), &[10, 5, 7]);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 2));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn malformed_token_reports_line() {
        let err = load("1 2\n# c\n3 x\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("1 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("-1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn nm_header_one_based_and_zero_based() {
        let (g, _) = load_edge_list("3 2\n1 2\n2 3\n".as_bytes(), InputFormat::NmHeader).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.labels(), &[1, 2, 3]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));

        let (g, _) = load_edge_list("4 1\n0 3\n".as_bytes(), InputFormat::NmHeader).unwrap();
        assert_eq!((g.n(), g.m()), (4, 1));
        assert!(g.has_edge(0, 3));
    }

    #[test]
    fn nm_header_inconsistent() {
        let err = load_edge_list("3 3\n1 2\n2 3\n".as_bytes(), InputFormat::NmHeader).unwrap_err();
        assert!(matches!(err, Error::Format(_)));
        let err = load_edge_list("2 1\n1 5\n".as_bytes(), InputFormat::NmHeader).unwrap_err();
        assert!(matches!(err, Error::Format(_)));
    }

    #[test]
    fn size_comment_keeps_isolated_vertices() {
        let g = Graph::from_edges(5, [(0, 3), (3, 4)]);
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "# n=5 m=2\n0 3\n3 4\n"
        );
        let (back, _) = load(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn missing_edge_counts() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)]);
        assert_eq!(missing_edges_of(&g, &[]), 0);
        assert_eq!(missing_edges_of(&g, &[3]), 0);
        assert_eq!(missing_edges_of(&g, &[0, 1, 2]), 0);
        assert_eq!(missing_edges_of(&g, &[0, 1, 2, 3]), 2);
        assert_eq!(missing_edges_of(&g, &[0, 3]), 1);
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4)]);
        let (h, origin) = g.induced(&[4, 1, 2]);
        assert_eq!(origin, vec![1, 2, 4]);
        assert_eq!(h.m(), 2);
        assert!(h.has_edge(0, 1));
        assert!(h.has_edge(0, 2));
        assert_eq!(h.labels(), &[1, 2, 4]);
    }
}
