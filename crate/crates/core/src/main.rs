use std::fs::File;
use std::io::{self, BufRead, BufReader, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lexgraph::analytics::{cooccurrence_stats, random_walks, WalkConfig};
use lexgraph::config::{PipelineConfig, CONFIG_ENV};
use lexgraph::kgraph::{EdgeKind, KnowledgeGraph};
use lexgraph::pipeline::Pipeline;
use lexgraph::query::{find_paths, render_phrase_debug, Query, QueryError, Selector};

#[derive(Parser)]
#[command(name = "lexgraph", version, about = "Build and query knowledge graphs from parsed legal text")]
struct Cli {
    /// TOML config file.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse CoNLL-U files and write a graph file.
    Ingest {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Graph file to write (defaults to `graph` from the config).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Answer one query expression, e.g. `from=use to=employment max=4`.
    Query {
        graph: PathBuf,
        #[arg(required = true, num_args = 1..)]
        expression: Vec<String>,
        /// Append node ids to each phrase.
        #[arg(long)]
        debug: bool,
    },
    /// Read query expressions from stdin, one per line; an empty line exits.
    Repl {
        graph: PathBuf,
        #[arg(long)]
        debug: bool,
    },
    /// Print the graph as Cypher statements or as the graph file itself.
    Export {
        graph: PathBuf,
        #[command(flatten)]
        format: ExportFormat,
    },
    /// Seeded random walks, one tab-separated walk per line.
    Walk {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        walks: usize,
        /// Start node selector; repeatable. Defaults to every node.
        #[arg(long)]
        start: Vec<String>,
        /// Comma-separated edge kinds to follow. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        edge: Vec<String>,
        /// Print co-occurrence counts after the walks.
        #[arg(long)]
        cooccurrence: bool,
    },
    /// Promote characteristics shared by the children of a class.
    Promote {
        graph: PathBuf,
        class: String,
        /// Write the updated graph back.
        #[arg(long)]
        save: bool,
    },
    /// List contradicting statement pairs.
    Contradictions { graph: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExportFormat {
    #[arg(long)]
    cypher: bool,
    #[arg(long)]
    jsonl: bool,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Data(e.to_string())
    }
}

fn load_graph(path: &Path) -> Result<KnowledgeGraph, Failure> {
    let file = File::open(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    KnowledgeGraph::deserialize(BufReader::new(file)).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory so a failed run
/// never leaves a partial file behind.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Failure::Data(e.to_string()))?;
    Ok(())
}

fn print_paths(out: &mut impl Write, graph: &KnowledgeGraph, expr: &str, debug: bool) -> Result<(), QueryError> {
    let query = Query::parse(expr)?;
    for p in find_paths(graph, &query)? {
        let phrase = if debug { render_phrase_debug(graph, &p) } else { p.rendered_phrase.clone() };
        let _ = writeln!(out, "{phrase}\t{}\t{}", p.min_authority, p.length());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = PipelineConfig::load(cli.config.as_deref())?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Ingest { inputs, output } => {
            let output = output
                .or_else(|| config.graph.clone())
                .ok_or_else(|| Failure::Usage("no output path: pass --output or set `graph` in the config".into()))?;
            let pipeline = Pipeline::new(config);
            let (graph, stats) = pipeline.build_from_paths(&inputs)?;
            write_atomic(&output, &graph.serialize())?;
            writeln!(out, "documents\t{}", stats.documents)?;
            writeln!(out, "sentences\t{}", stats.sentences)?;
            writeln!(out, "svos\t{}", stats.svos)?;
            writeln!(out, "assertions\t{}", stats.assertions)?;
            writeln!(out, "nodes\t{}", stats.nodes)?;
            writeln!(out, "edges\t{}", stats.edges)?;
        }
        Command::Query { graph, expression, debug } => {
            let expr = expression.join(" ");
            Query::parse(&expr).map_err(|e| Failure::Usage(e.to_string()))?;
            let g = load_graph(&graph)?;
            print_paths(&mut out, &g, &expr, debug)?;
        }
        Command::Repl { graph, debug } => {
            let g = load_graph(&graph)?;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            loop {
                if prompt {
                    eprint!("> ");
                }
                let mut line = String::new();
                if stdin.lock().read_line(&mut line)? == 0 || line.trim().is_empty() {
                    break;
                }
                if let Err(e) = print_paths(&mut out, &g, line.trim(), debug) {
                    eprintln!("error: {e}");
                }
                out.flush()?;
            }
        }
        Command::Export { graph, format } => {
            let g = load_graph(&graph)?;
            let text = if format.cypher { g.export_cypher() } else { g.serialize() };
            out.write_all(text.as_bytes())?;
        }
        Command::Walk { graph, seed, length, walks, start, edge, cooccurrence } => {
            let g = load_graph(&graph)?;
            let mut starts = Vec::new();
            for s in &start {
                starts.push(s.parse::<Selector>().map_err(|e| Failure::Usage(e.to_string()))?);
            }
            if starts.is_empty() {
                starts = g.nodes().map(|n| Selector::Node(n.id.clone())).collect();
            }
            let mut cfg = WalkConfig::new(seed, length, walks, starts);
            if !edge.is_empty() {
                cfg.edge_kinds = edge
                    .iter()
                    .map(|k| k.parse::<EdgeKind>())
                    .collect::<Result<_, _>>()
                    .map_err(Failure::Usage)?;
            }
            if length == 0 || walks == 0 {
                return Err(Failure::Usage("--length and --walks must be at least 1".into()));
            }
            let result = random_walks(&g, &cfg)?;
            for w in &result {
                writeln!(out, "{}", w.to_line())?;
            }
            if cooccurrence {
                let seqs: Vec<_> = result.into_iter().map(|w| w.nodes).collect();
                for ((a, b), n) in cooccurrence_stats(&seqs) {
                    writeln!(out, "{a}\t{b}\t{n}")?;
                }
            }
        }
        Command::Promote { graph, class, save } => {
            let mut g = load_graph(&graph)?;
            let sel: Selector = class.parse().map_err(|e: QueryError| Failure::Usage(e.to_string()))?;
            for id in sel.resolve(&g)? {
                for a in g.promote_characteristics(&id)? {
                    let polarity = if a.negated { "not " } else { "" };
                    let ratio = a.occurrence_ratio.unwrap_or_default();
                    writeln!(out, "{}\t{polarity}{}\t{ratio}", a.class_or_entity, a.characteristic)?;
                }
            }
            if save {
                write_atomic(&graph, &g.serialize())?;
            }
        }
        Command::Contradictions { graph } => {
            let mut g = load_graph(&graph)?;
            g.detect_contradictions()?;
            for (aff, neg) in g.contradiction_pairs() {
                let (a, n) = (g.svo(&aff).expect("pair svo"), g.svo(&neg).expect("pair svo"));
                writeln!(
                    out,
                    "{aff}\t{neg}\t{}\t{}\t{}\t{}",
                    a.authority, n.authority, a.opinion_kind, n.opinion_kind
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
