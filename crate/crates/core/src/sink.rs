//! Search counters and the destination for enumerated solutions.

use std::io::{self, Write};

use serde::Serialize;

/// Counters from one or more searches. Merging is a field-wise sum, so
/// shards from concurrent subtasks combine in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Recursive calls, the root call included.
    pub tree_nodes: u64,
    pub solutions: u64,
    /// Loops cut off because the upper bound fell below the threshold.
    pub ub_prunes: u64,
    /// Refinements answered by the minimum-non-neighbor shortcut.
    pub refine_fastpath: u64,
    pub time_reduce_ms: u64,
    pub time_search_ms: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.tree_nodes += other.tree_nodes;
        self.solutions += other.solutions;
        self.ub_prunes += other.ub_prunes;
        self.refine_fastpath += other.refine_fastpath;
        self.time_reduce_ms += other.time_reduce_ms;
        self.time_search_ms += other.time_search_ms;
    }
}

pub enum SinkMode {
    CountOnly,
    Collect,
    /// One line per solution as it is found, space separated, written
    /// through `labels` when given.
    Stream {
        out: Box<dyn Write + Send>,
        labels: Option<Vec<u64>>,
    },
}

/// Predicate applied to each solution before it is accepted.
pub type SolutionCheck = Box<dyn Fn(&[u32]) -> bool + Send>;

/// Receives solutions from the engine.
///
/// The engine reports ids of the graph it searched. When that graph is a
/// reduced copy, [`SolutionSink::set_origin`] maps them back to the caller's
/// ids before anything is counted or stored.
pub struct SolutionSink {
    mode: SinkMode,
    origin: Option<Vec<u32>>,
    count: u64,
    max_size: usize,
    solutions: Vec<Vec<u32>>,
    write_error: Option<io::Error>,
    check: Option<SolutionCheck>,
    rejected: u64,
}

impl SolutionSink {
    fn with_mode(mode: SinkMode) -> SolutionSink {
        SolutionSink {
            mode,
            origin: None,
            count: 0,
            max_size: 0,
            solutions: Vec::new(),
            write_error: None,
            check: None,
            rejected: 0,
        }
    }

    pub fn count_only() -> SolutionSink {
        Self::with_mode(SinkMode::CountOnly)
    }

    pub fn collect() -> SolutionSink {
        Self::with_mode(SinkMode::Collect)
    }

    pub fn stream(out: Box<dyn Write + Send>, labels: Option<Vec<u64>>) -> SolutionSink {
        Self::with_mode(SinkMode::Stream { out, labels })
    }

    pub fn set_origin(&mut self, origin: Option<Vec<u32>>) {
        self.origin = origin;
    }

    /// Runs `check` on every solution after translation and counts the
    /// ones it rejects. Shards hand their solutions back for checking.
    pub fn set_check(&mut self, check: SolutionCheck) {
        self.check = Some(check);
    }

    /// Solutions that failed the check.
    pub fn rejected(&self) -> u64 {
        self.rejected
    }

    pub fn emit(&mut self, members: &[u32]) {
        let mut sol: Vec<u32> = match &self.origin {
            Some(origin) => members.iter().map(|&v| origin[v as usize]).collect(),
            None => members.to_vec(),
        };
        sol.sort_unstable();
        if let Some(check) = &self.check {
            if !check(&sol) {
                self.rejected += 1;
            }
        }
        self.count += 1;
        self.max_size = self.max_size.max(sol.len());
        match &mut self.mode {
            SinkMode::CountOnly => {}
            SinkMode::Collect => self.solutions.push(sol),
            SinkMode::Stream { out, labels } => {
                if self.write_error.is_none() {
                    let line = format_solution(&sol, labels.as_deref());
                    if let Err(e) = writeln!(out, "{line}") {
                        self.write_error = Some(e);
                    }
                }
            }
        }
    }

    /// True when shards only need to count.
    pub fn is_count_only(&self) -> bool {
        matches!(self.mode, SinkMode::CountOnly) && self.check.is_none()
    }

    /// An empty buffer for one subtask: counts only if we count only,
    /// collects otherwise. Feed it back through [`SolutionSink::absorb`].
    pub fn shard(&self) -> SolutionSink {
        if self.is_count_only() {
            SolutionSink::count_only()
        } else {
            SolutionSink::collect()
        }
    }

    pub fn absorb(&mut self, shard: SolutionSink) {
        if shard.is_count_only() {
            self.count += shard.count;
            self.max_size = self.max_size.max(shard.max_size);
        } else {
            for sol in shard.solutions {
                self.emit(&sol);
            }
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Collected solutions in canonical order: members ascending, list
    /// lexicographic.
    pub fn into_sorted(mut self) -> Vec<Vec<u32>> {
        self.solutions.sort();
        self.solutions
    }

    pub fn flush(&mut self) -> io::Result<()> {
        if let Some(e) = self.write_error.take() {
            return Err(e);
        }
        if let SinkMode::Stream { out, .. } = &mut self.mode {
            out.flush()?;
        }
        Ok(())
    }
}

fn format_solution(sol: &[u32], labels: Option<&[u64]>) -> String {
    let words: Vec<String> = match labels {
        Some(labels) => sol
            .iter()
            .map(|&v| labels[v as usize].to_string())
            .collect(),
        None => sol.iter().map(u32::to_string).collect(),
    };
    words.join(" ")
}

/// Canonical solution file: one line per solution with labels ascending,
/// lines in lexicographic order of the label sequences.
pub fn format_solutions(solutions: &[Vec<u32>], labels: &[u64]) -> String {
    let mut rows: Vec<Vec<u64>> = solutions
        .iter()
        .map(|s| {
            let mut row: Vec<u64> = s.iter().map(|&v| labels[v as usize]).collect();
            row.sort_unstable();
            row
        })
        .collect();
    rows.sort();
    let mut out = String::new();
    for row in rows {
        let words: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::{Arc, Mutex};

    #[derive(Clone, Default)]
    struct Shared(Arc<Mutex<Vec<u8>>>);

    impl Write for Shared {
        fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
            self.0.lock().unwrap().extend_from_slice(buf);
            Ok(buf.len())
        }
        fn flush(&mut self) -> io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn collect_translates_and_sorts() {
        let mut sink = SolutionSink::collect();
        sink.set_origin(Some(vec![10, 4, 7]));
        sink.emit(&[2, 0]);
        sink.emit(&[1]);
        assert_eq!(sink.count(), 2);
        assert_eq!(sink.max_size(), 2);
        assert_eq!(sink.into_sorted(), vec![vec![4], vec![7, 10]]);
    }

    #[test]
    fn stream_writes_labels() {
        let buf = Shared::default();
        let mut sink = SolutionSink::stream(Box::new(buf.clone()), Some(vec![5, 6, 7]));
        sink.emit(&[2, 0]);
        sink.flush().unwrap();
        assert_eq!(
            String::from_utf8(buf.0.lock().unwrap().clone()).unwrap(),
            "5 7\n"
        );
    }

    #[test]
    fn shards_merge() {
        let mut total = SolutionSink::count_only();
        let mut a = total.shard();
        a.emit(&[1, 2, 3]);
        let mut b = total.shard();
        b.emit(&[4]);
        b.emit(&[5]);
        total.absorb(a);
        total.absorb(b);
        assert_eq!((total.count(), total.max_size()), (3, 3));

        let mut stats = SearchStats {
            tree_nodes: 3,
            ..Default::default()
        };
        stats.merge(&SearchStats {
            tree_nodes: 4,
            ub_prunes: 1,
            ..Default::default()
        });
        assert_eq!((stats.tree_nodes, stats.ub_prunes), (7, 1));
    }

    #[test]
    fn check_counts_rejections() {
        let mut sink = SolutionSink::count_only();
        sink.set_check(Box::new(|s: &[u32]| s.len() > 1));
        let mut shard = sink.shard();
        shard.emit(&[1]);
        shard.emit(&[1, 2]);
        sink.absorb(shard);
        assert_eq!((sink.count(), sink.rejected()), (2, 1));
    }

    #[test]
    fn solution_file_format() {
        let text = format_solutions(&[vec![2, 1], vec![0, 2]], &[30, 20, 10]);
        assert_eq!(text, "10 20\n10 30\n");
    }
}
