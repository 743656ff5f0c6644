use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wodc::generators::{example_graph, gnp, moon_moser, ExampleGraph};
use wodc::graph::{load_edge_list, write_edge_list, InputFormat};
use wodc::oracle::{bk_maximal_cliques, brute_maximal, brute_maximum};
use wodc::sink::format_solutions;
use wodc::{enumerate, find_maximum, EnumOptions, Error, Graph, MaxOptions, SolutionSink};

#[derive(Parser)]
#[command(
    name = "wodc",
    version,
    about = "Maximal and maximum k-defective clique search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate maximal k-defective cliques with at least q vertices.
    Enum(EnumArgs),
    /// Find a largest k-defective clique.
    Max(MaxArgs),
    /// Write a generated graph as an edge list.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Brute-force reference answers for small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct InputArgs {
    /// Edge list, one `u v` pair per line.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Edges)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Plain pairs; a leading `# n=<n> m=<m>` comment fixes dense 0-based ids.
    Edges,
    /// First line `n m`, then exactly m pairs.
    NmHeader,
}

#[derive(Args)]
struct EnumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of missing edges allowed inside a solution.
    #[arg(long)]
    k: usize,
    /// Smallest solution size reported.
    #[arg(long)]
    q: usize,
    /// Branch on every candidate instead of pivoting.
    #[arg(long)]
    no_pivot: bool,
    /// Search the input graph without core and truss reductions.
    #[arg(long)]
    no_reduce: bool,
    /// Search the whole graph in one branch-and-bound tree.
    #[arg(long)]
    no_decompose: bool,
    /// Count solutions without listing them.
    #[arg(long)]
    count_only: bool,
    /// Write the sorted solution list here instead of standard output.
    #[arg(long)]
    solutions_out: Option<PathBuf>,
    /// Write run statistics as JSON to this file.
    #[arg(long)]
    stats_json: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, env = "WODC_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    /// Re-check every solution against the input graph.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct MaxArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of missing edges allowed inside a solution.
    #[arg(long)]
    k: usize,
    /// Branch on every candidate instead of pivoting.
    #[arg(long)]
    no_pivot: bool,
    /// Write run statistics as JSON to this file.
    #[arg(long)]
    stats_json: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, env = "WODC_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Complement of t disjoint triangles.
    MoonMoser {
        /// Number of triangles; the graph has 3t vertices.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Erdős–Rényi G(n, p).
    Gnp {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Edge probability in [0, 1].
        #[arg(long, value_parser = probability)]
        p: f64,
        /// Seed for the SplitMix64 generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One of the built-in example graphs, with vertices labelled 1..n.
    Example {
        #[arg(value_enum)]
        which: Example,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Fig2a,
    Fig6,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// All maximal k-defective cliques with at least q vertices.
    Enum {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
    },
    /// Size of a largest k-defective clique.
    Max {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
    },
    /// All maximal cliques.
    Cliques {
        #[command(flatten)]
        input: InputArgs,
    },
}

fn probability(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is not in [0, 1]"))
    }
}

enum Failure {
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ThresholdTooSmall { .. }
            | Error::ZeroThreshold
            | Error::OracleTooLarge { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Io(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Serialize)]
struct StatsJson {
    mode: &'static str,
    k: usize,
    q: usize,
    n: usize,
    m: usize,
    n_reduced: usize,
    m_reduced: usize,
    num_solutions: u64,
    max_size: usize,
    tree_nodes: u64,
    ub_prunes: u64,
    time_build_ms: u64,
    time_reduce_ms: u64,
    time_search_ms: u64,
    pivot_enabled: bool,
    reduce_enabled: bool,
    decompose_enabled: bool,
    threads: usize,
}

fn load(input: &InputArgs) -> Result<Graph, Failure> {
    let file = File::open(&input.input)
        .map_err(|e| Failure::Io(format!("{}: {e}", input.input.display())))?;
    let format = match input.format {
        Format::Edges => InputFormat::Edges,
        Format::NmHeader => InputFormat::NmHeader,
    };
    let (g, report) = load_edge_list(BufReader::new(file), format)
        .map_err(|e| Failure::Io(format!("{}: {e}", input.input.display())))?;
    if report.self_loops > 0 || report.duplicate_edges > 0 {
        eprintln!(
            "note: ignored {} self-loops and {} duplicate edges",
            report.self_loops, report.duplicate_edges
        );
    }
    Ok(g)
}

fn write_text(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(path) => std::fs::write(path, text),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            other => other,
        },
    }
}

macro_rules! push_line {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn write_json(path: &Path, stats: &StatsJson) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, stats)?;
    writeln!(out)?;
    out.flush()
}

fn cmd_enum(args: &EnumArgs) -> CmdResult {
    if args.q < args.k + 2 {
        return Err(Failure::Usage(format!(
            "--q must be at least k + 2 = {}",
            args.k + 2
        )));
    }
    let start = Instant::now();
    let g = load(&args.input)?;
    let load_ms = start.elapsed().as_millis() as u64;

    let opts = EnumOptions {
        pivot: !args.no_pivot,
        reduce: !args.no_reduce,
        decompose: !args.no_decompose,
        threads: args.threads as usize,
        verify: args.verify || cfg!(debug_assertions),
    };
    let mut sink = if args.count_only {
        SolutionSink::count_only()
    } else {
        SolutionSink::collect()
    };
    let outcome = enumerate(&g, args.k, args.q, &opts, &mut sink)?;
    let count = sink.count();
    let max_size = sink.max_size();
    if !args.count_only {
        let text = format_solutions(&sink.into_sorted(), g.labels());
        write_text(args.solutions_out.as_deref(), &text)?;
    }

    let time_build_ms = load_ms + outcome.time_build_ms;
    let mut report = String::new();
    push_line!(report, "solutions: {count}");
    push_line!(report, "max_size: {max_size}");
    push_line!(report, "tree_nodes: {}", outcome.stats.tree_nodes);
    push_line!(report, "n_reduced: {}", outcome.n_reduced);
    push_line!(report, "m_reduced: {}", outcome.m_reduced);
    push_line!(report, "time_build_ms: {time_build_ms}");
    push_line!(report, "time_reduce_ms: {}", outcome.stats.time_reduce_ms);
    push_line!(report, "time_search_ms: {}", outcome.stats.time_search_ms);
    write_text(None, &report)?;

    if let Some(path) = &args.stats_json {
        let stats = StatsJson {
            mode: "enum",
            k: args.k,
            q: args.q,
            n: g.n(),
            m: g.m(),
            n_reduced: outcome.n_reduced,
            m_reduced: outcome.m_reduced,
            num_solutions: count,
            max_size,
            tree_nodes: outcome.stats.tree_nodes,
            ub_prunes: outcome.stats.ub_prunes,
            time_build_ms,
            time_reduce_ms: outcome.stats.time_reduce_ms,
            time_search_ms: outcome.stats.time_search_ms,
            pivot_enabled: opts.pivot,
            reduce_enabled: opts.reduce,
            decompose_enabled: opts.decompose,
            threads: opts.threads,
        };
        write_json(path, &stats)?;
    }
    Ok(())
}

fn cmd_max(args: &MaxArgs) -> CmdResult {
    let start = Instant::now();
    let g = load(&args.input)?;
    let load_ms = start.elapsed().as_millis() as u64;
    let opts = MaxOptions {
        pivot: !args.no_pivot,
        threads: args.threads as usize,
        dynamic_q: true,
    };
    let out = find_maximum(&g, args.k, &opts)?;
    let size = out.solution.vertices.len();
    let mut labels: Vec<u64> = out.solution.vertices.iter().map(|&v| g.label(v)).collect();
    labels.sort_unstable();
    let words: Vec<String> = labels.iter().map(u64::to_string).collect();
    let time_build_ms = load_ms + out.time_build_ms;

    let mut report = String::new();
    push_line!(report, "size: {size}");
    push_line!(report, "solution: {}", words.join(" "));
    push_line!(report, "missing_edges: {}", out.solution.missing_edges);
    push_line!(report, "initial_size: {}", out.initial_size);
    push_line!(report, "n_reduced: {}", out.n_reduced);
    push_line!(report, "m_reduced: {}", out.m_reduced);
    push_line!(report, "reduction_rounds: {}", out.reduction.rounds);
    push_line!(report, "tree_nodes: {}", out.stats.tree_nodes);
    push_line!(report, "time_build_ms: {time_build_ms}");
    push_line!(report, "time_reduce_ms: {}", out.stats.time_reduce_ms);
    push_line!(report, "time_search_ms: {}", out.stats.time_search_ms);
    write_text(None, &report)?;

    if let Some(path) = &args.stats_json {
        let stats = StatsJson {
            mode: "max",
            k: args.k,
            q: size + 1,
            n: g.n(),
            m: g.m(),
            n_reduced: out.n_reduced,
            m_reduced: out.m_reduced,
            num_solutions: 1,
            max_size: size,
            tree_nodes: out.stats.tree_nodes,
            ub_prunes: out.stats.ub_prunes,
            time_build_ms,
            time_reduce_ms: out.stats.time_reduce_ms,
            time_search_ms: out.stats.time_search_ms,
            pivot_enabled: opts.pivot,
            reduce_enabled: true,
            decompose_enabled: out.initial_size + 1 >= args.k + 2,
            threads: opts.threads,
        };
        write_json(path, &stats)?;
    }
    Ok(())
}

fn write_graph(g: &Graph, output: Option<&Path>, labelled: bool) -> io::Result<()> {
    let mut buf = Vec::new();
    if labelled {
        for (u, v) in g.edges() {
            writeln!(buf, "{} {}", g.label(u), g.label(v))?;
        }
    } else {
        write_edge_list(g, &mut buf)?;
    }
    match output {
        Some(path) => std::fs::write(path, buf),
        None => io::stdout().lock().write_all(&buf),
    }
}

fn cmd_gen(cmd: &GenCommand) -> CmdResult {
    match cmd {
        GenCommand::MoonMoser { t, output } => {
            write_graph(&moon_moser(*t as usize), output.as_deref(), false)?
        }
        GenCommand::Gnp { n, p, seed, output } => {
            write_graph(&gnp(*n, *p, *seed), output.as_deref(), false)?
        }
        GenCommand::Example { which, output } => {
            let which = match which {
                Example::Fig2a => ExampleGraph::Fig2a,
                Example::Fig6 => ExampleGraph::Fig6,
            };
            write_graph(&example_graph(which), output.as_deref(), true)?
        }
    }
    Ok(())
}

fn cmd_oracle(cmd: &OracleCommand) -> CmdResult {
    let mut report = String::new();
    match cmd {
        OracleCommand::Enum { input, k, q } => {
            let g = load(input)?;
            let sols = brute_maximal(&g, *k, *q)?;
            report = format_solutions(&sols, g.labels());
            push_line!(report, "solutions: {}", sols.len());
        }
        OracleCommand::Max { input, k } => {
            let g = load(input)?;
            push_line!(report, "size: {}", brute_maximum(&g, *k)?);
        }
        OracleCommand::Cliques { input } => {
            let g = load(input)?;
            if g.n() > wodc::oracle::ORACLE_LIMIT {
                return Err(Error::OracleTooLarge {
                    n: g.n(),
                    limit: wodc::oracle::ORACLE_LIMIT,
                }
                .into());
            }
            let cliques = bk_maximal_cliques(&g);
            report = format_solutions(&cliques, g.labels());
            push_line!(report, "cliques: {}", cliques.len());
        }
    }
    write_text(None, &report)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enum(args) => cmd_enum(args),
        Command::Max(args) => cmd_max(args),
        Command::Gen(cmd) => cmd_gen(cmd),
        Command::Oracle(cmd) => cmd_oracle(cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
