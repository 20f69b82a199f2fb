use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rankforge::codec::{self, Record};
use rankforge::enumerate::{maximal_graphs, EnumerationOptions, Strategy};
use rankforge::extension::maximality_witness;
use rankforge::friendship::{self, GfgInstance};
use rankforge::graph::{adjacency_rank, is_reduced};
use rankforge::trees;

#[derive(Parser)]
#[command(name = "rankforge", version, about = "Exact rank, maximality and enumeration of graphs by adjacency rank")]
struct Cli {
    /// Worker threads; defaults to available parallelism.
    #[arg(long, global = true, env = "RANKFORGE_THREADS")]
    threads: Option<usize>,

    /// Run the small exhaustive oracle checks before the command.
    #[arg(long, global = true)]
    self_check: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Graph6,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Closure,
    Cliques,
}

#[derive(Subcommand)]
enum Command {
    /// Rank and reducedness of each graph, one JSON object per line.
    Rank(GraphInput),
    /// Maximality verdict and a witness extension for each reduced graph.
    Maximal(GraphInput),
    /// Every maximal graph of one rank.
    Enumerate {
        #[arg(long)]
        rank: usize,
        /// Do not grow past this order; the report is then marked incomplete.
        #[arg(long)]
        max_order: Option<usize>,
        /// Directory for the JSON and CSV reports; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the maximal graphs as graph6.
        #[arg(long)]
        certificates: bool,
        /// Stdout format when no output directory is given.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "closure")]
        strategy: StrategyArg,
        /// Save each layer here and resume from the latest one.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Report layer sizes on stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// Every maximal tree of one (even) rank.
    Trees {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Maximality of generalized friendship graphs F(k, m).
    Friendship {
        #[arg(short, long, requires = "m", conflicts_with_all = ["kmax", "mmax"])]
        k: Option<u64>,
        #[arg(short, long, requires = "k")]
        m: Option<u64>,
        /// Scan every 2 <= k <= kmax.
        #[arg(long, requires = "mmax")]
        kmax: Option<u64>,
        /// Scan every 1 <= m <= mmax.
        #[arg(long, requires = "kmax")]
        mmax: Option<u64>,
        /// Scan output: one row per instance (csv) or a summary with the
        /// exceptional values of m (json).
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct GraphInput {
    /// graph6 file, or `-` for stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline graph6 strings.
    graphs: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl GraphInput {
    fn records(&self) -> Result<Vec<Record>> {
        let mut text = String::new();
        match &self.input {
            Some(p) if p.as_os_str() == "-" => {
                io::stdin().read_to_string(&mut text)?;
            }
            Some(p) => {
                text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            }
            None => {}
        }
        for g in &self.graphs {
            text.push_str(g);
            text.push('\n');
        }
        if text.trim().is_empty() {
            bail!("no input graphs: pass graph6 strings or --input");
        }
        Ok(codec::read_graph6_text(&text))
    }
}

fn check_output_path(p: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = p {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            bail!("output directory {} does not exist", parent.display());
        }
    }
    Ok(())
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Runs `f` on each parsed record; failures go to stderr and are counted.
fn per_graph(
    input: &GraphInput,
    f: impl Fn(&rankforge::Graph) -> rankforge::Result<serde_json::Value>,
) -> Result<Vec<usize>> {
    check_output_path(&input.output)?;
    let mut out = String::new();
    let mut failed = Vec::new();
    for rec in input.records()? {
        let result = rec.graph.and_then(|g| f(&g));
        match result {
            Ok(mut v) => {
                v["line"] = rec.line_no.into();
                v["graph6"] = rec.text.into();
                out.push_str(&v.to_string());
                out.push('\n');
            }
            Err(e) => {
                eprintln!("line {}: {e}", rec.line_no);
                failed.push(rec.line_no);
            }
        }
    }
    write_out(&input.output, &out)?;
    Ok(failed)
}

fn rank_report(g: &rankforge::Graph) -> rankforge::Result<serde_json::Value> {
    Ok(json!({"n": g.order(), "rank": adjacency_rank(g), "reduced": is_reduced(g)}))
}

fn maximal_report(g: &rankforge::Graph) -> rankforge::Result<serde_json::Value> {
    let witness = maximality_witness(g)?;
    Ok(json!({
        "n": g.order(),
        "rank": adjacency_rank(g),
        "maximal": witness.is_none(),
        "witness_extension": witness.map(|y| y.iter().map(|&b| b as u8).collect::<Vec<_>>()),
    }))
}

fn print_layer(order: usize, size: usize) {
    eprintln!("order {order}: {size} reduced graphs");
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    rank: usize,
    max_order: Option<usize>,
    output: Option<PathBuf>,
    certificates: bool,
    format: Format,
    strategy: StrategyArg,
    checkpoint: Option<PathBuf>,
    verbose: bool,
) -> Result<()> {
    if !(2..=9).contains(&rank) {
        bail!("rank must be between 2 and 9, got {rank}");
    }
    if let Some(dir) = &output {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let opts = EnumerationOptions {
        strategy: match strategy {
            StrategyArg::Closure => Strategy::Closure,
            StrategyArg::Cliques => Strategy::Cliques,
        },
        max_order,
        checkpoint_dir: checkpoint,
        progress: verbose.then_some(print_layer as fn(usize, usize)),
        ..Default::default()
    };
    let report = maximal_graphs(rank, &opts)?;
    let json = serde_json::to_string_pretty(&report.to_json())? + "\n";
    match output {
        Some(dir) => {
            fs::write(dir.join(format!("rank{rank}.json")), json)?;
            fs::write(dir.join(format!("rank{rank}_by_order.csv")), report.by_order_csv())?;
            if certificates {
                fs::write(dir.join(format!("rank{rank}_maximal.g6")), report.certificates_graph6()?)?;
            }
        }
        None => match format {
            Format::Json => write_out(&None, &json)?,
            Format::Csv => write_out(&None, &report.by_order_csv())?,
            Format::Graph6 => write_out(&None, &report.certificates_graph6()?)?,
            Format::Dot => bail!("dot output is only available for trees"),
        },
    }
    if !report.complete {
        eprintln!("stopped at the order cap; counts cover smaller orders only");
    }
    Ok(())
}

fn cmd_trees(rank: usize, format: Format, output: Option<PathBuf>) -> Result<()> {
    check_output_path(&output)?;
    let ts = trees::generate_maximal_trees(rank)?;
    let text = match format {
        Format::Graph6 => codec::write_graph6_lines(ts.iter().map(|t| t.graph()))?,
        Format::Dot => ts
            .iter()
            .enumerate()
            .map(|(i, t)| codec::emit_dot(t.graph(), &format!("tree{i}")))
            .collect(),
        Format::Json => {
            let list = ts
                .iter()
                .map(|t| codec::emit_graph6(t.graph()))
                .collect::<rankforge::Result<Vec<_>>>()?;
            serde_json::to_string_pretty(&json!({"rank": rank, "count": ts.len(), "trees": list}))? + "\n"
        }
        Format::Csv => bail!("csv output is not available for trees"),
    };
    write_out(&output, &text)?;
    eprintln!("{} maximal trees of rank {rank}", ts.len());
    Ok(())
}

fn cmd_friendship(
    single: Option<(u64, u64)>,
    scan: Option<(u64, u64)>,
    format: Format,
    output: Option<PathBuf>,
) -> Result<()> {
    check_output_path(&output)?;
    if let Some((k, m)) = single {
        let inst = GfgInstance::new(k, m)?;
        let verdict = friendship::is_maximal_fkm(inst)?;
        return write_out(&output, &(serde_json::to_string_pretty(&verdict)? + "\n"));
    }
    let Some((kmax, mmax)) = scan else {
        bail!("pass either -k and -m or --kmax and --mmax");
    };
    if kmax < 2 || mmax < 1 {
        bail!("scan needs kmax >= 2 and mmax >= 1");
    }
    let instances: Vec<GfgInstance> = (2..=kmax)
        .flat_map(|k| (1..=mmax).map(move |m| GfgInstance { k, m }))
        .collect();
    let verdicts = {
        use rayon::prelude::*;
        instances
            .par_iter()
            .map(|&i| friendship::is_maximal_fkm(i))
            .collect::<rankforge::Result<Vec<_>>>()?
    };
    let text = match format {
        Format::Csv => {
            let mut s = String::from("k,m,square_free_condition_fails,theorem_verdict,maximal,decided_by,witness\n");
            for (inst, v) in instances.iter().zip(&verdicts) {
                let witness = v
                    .witness
                    .as_ref()
                    .map(|w| {
                        let g: Vec<String> = w.gamma.iter().map(i64::to_string).collect();
                        format!("y0={};gamma={}", w.y0, g.join(" "))
                    })
                    .unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{:?},{},{:?},{}\n",
                    inst.k,
                    inst.m,
                    friendship::square_free_condition_fails(*inst),
                    v.theorem_verdict,
                    v.maximal,
                    v.decided_by,
                    witness
                ));
            }
            s
        }
        Format::Json => {
            let exceptional = friendship::exceptional_scan(kmax, mmax);
            serde_json::to_string_pretty(&json!({
                "kmax": kmax,
                "mmax": mmax,
                "exceptional": exceptional,
                "instances": verdicts,
            }))? + "\n"
        }
        _ => bail!("friendship scans support csv and json"),
    };
    write_out(&output, &text)
}

/// Small exhaustive oracles: the bordered rank rule against direct rank
/// computation on every graph up to 6 vertices, and the tree generator
/// against brute force up to rank 6.
fn self_check() -> Result<()> {
    for n in 1..=6 {
        for g in rankforge::generate::generate_all_graphs(n)? {
            let r = adjacency_rank(&g);
            for y in 0u64..1 << n {
                let yb = rankforge::graph::bools_of(y, n);
                let delta = rankforge::extension::classify_extension(&g, &yb)?.delta;
                let direct = adjacency_rank(&rankforge::graph::add_vertex_mask(&g, y)?) - r;
                if delta.value() != direct {
                    bail!("self-check: rank rule mismatch on n = {n}, y = {y:b} ({delta:?} vs {direct})");
                }
            }
        }
    }
    for r in [2, 4, 6] {
        let gen: Vec<String> = trees::generate_maximal_trees(r)?.iter().map(trees::tree_canonical_form).collect();
        let brute: Vec<String> = trees::brute_force_maximal_trees(r, 12)?
            .iter()
            .map(trees::tree_canonical_form)
            .collect();
        if gen != brute {
            bail!("self-check: maximal trees of rank {r} disagree with brute force");
        }
    }
    eprintln!("self-check passed");
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .context("configuring thread pool")?;
    }
    if cli.self_check {
        self_check()?;
    }
    let failed = match cli.command {
        Command::Rank(input) => per_graph(&input, rank_report)?,
        Command::Maximal(input) => per_graph(&input, maximal_report)?,
        Command::Enumerate {
            rank,
            max_order,
            output,
            certificates,
            format,
            strategy,
            checkpoint,
            verbose,
        } => {
            cmd_enumerate(rank, max_order, output, certificates, format, strategy, checkpoint, verbose)?;
            Vec::new()
        }
        Command::Trees { rank, format, output } => {
            cmd_trees(rank, format, output)?;
            Vec::new()
        }
        Command::Friendship {
            k,
            m,
            kmax,
            mmax,
            format,
            output,
        } => {
            cmd_friendship(k.zip(m), kmax.zip(mmax), format, output)?;
            Vec::new()
        }
    };
    if !failed.is_empty() {
        let lines: Vec<String> = failed.iter().map(usize::to_string).collect();
        eprintln!("failed lines: {}", lines.join(", "));
    }
    Ok(failed.is_empty())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
