//! qelab: index TREC collections, run ranked retrieval with optional
//! query expansion, and evaluate runs against relevance judgments.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qelab::config::{ExperimentConfig, MethodChoice};
use qelab::error::CliError;
use qelab::experiment::{self, Workbench};
use qelab::report;
use qelab_core::corpus;
use qelab_core::index::build_index;
use qelab_core::Analyzer;

#[derive(Parser)]
#[command(name = "qelab", version, about = "retrieval and query-expansion laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an inverted index from TREC SGML collection files.
    Index(IndexArgs),
    /// Rank documents for unexpanded title queries.
    Search(SearchArgs),
    /// Write expanded queries as topic/term/weight TSV.
    Expand(RunArgs),
    /// Expand, search, and evaluate in one pass.
    Run(RunArgs),
    /// Score a run file against qrels.
    Eval(EvalArgs),
    /// Compare two run files over shared qrels.
    Compare(CompareArgs),
}

#[derive(Args)]
struct IndexArgs {
    /// Collection files or directories (gzip-compressed files allowed).
    #[arg(long, required = true, num_args = 1..)]
    corpus: Vec<PathBuf>,
    /// Output index file.
    #[arg(long)]
    out: PathBuf,
    /// Stopword list file (one word per line); bundled list by default.
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    topics: PathBuf,
    /// Ranking depth.
    #[arg(long, default_value_t = 1000)]
    k: usize,
    /// Run file destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run tag written in the sixth column.
    #[arg(long, default_value = "baseline")]
    tag: String,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct RunArgs {
    /// Expansion method.
    #[arg(long)]
    method: String,
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    topics: Option<PathBuf>,
    #[arg(long)]
    qrels: Option<PathBuf>,
    /// WordNet database directory (index.* / data.* files).
    #[arg(long)]
    wordnet_dir: Option<PathBuf>,
    /// Tab-separated lemma/gloss lexicon.
    #[arg(long)]
    gloss_tsv: Option<PathBuf>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Run depth.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// Flat key=value config file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra config overrides, e.g. --set pwnet.t=30 --set alpha=0.5.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Output path (run file for `run`, TSV for `expand`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run tag.
    #[arg(long)]
    tag: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    run: PathBuf,
    #[arg(long)]
    qrels: PathBuf,
    /// Optional baseline for deltas, robustness, and the t-test.
    #[arg(long)]
    baseline_run: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    run_a: PathBuf,
    #[arg(long)]
    run_b: PathBuf,
    #[arg(long)]
    qrels: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qelab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Index(args) => cmd_index(args),
        Command::Search(args) => cmd_search(args),
        Command::Expand(args) => cmd_expand(args),
        Command::Run(args) => cmd_run(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Compare(args) => cmd_compare(args),
    }
}

/// Collection files under the given paths, in sorted order.
fn collect_corpus_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut stack = vec![path.clone()];
            while let Some(dir) = stack.pop() {
                for entry in fs::read_dir(&dir)? {
                    let p = entry?.path();
                    if p.is_dir() {
                        stack.push(p);
                    } else {
                        files.push(p);
                    }
                }
            }
        } else if path.is_file() {
            files.push(path.clone());
        } else {
            return Err(CliError::Data(format!(
                "corpus path {} does not exist",
                path.display()
            )));
        }
    }
    files.sort();
    Ok(files)
}

fn analyzer_from(stopwords: &Option<PathBuf>) -> Result<Analyzer, CliError> {
    Ok(match stopwords {
        Some(path) => Analyzer::from_stopword_file(path)?,
        None => Analyzer::default(),
    })
}

fn cmd_index(args: IndexArgs) -> Result<(), CliError> {
    let analyzer = analyzer_from(&args.stopwords)?;
    let files = collect_corpus_files(&args.corpus)?;
    if files.is_empty() {
        return Err(CliError::Data("no corpus files found".into()));
    }
    let mut docs = Vec::new();
    for file in &files {
        docs.extend(corpus::read_trec_docs_file(file)?);
    }
    let index = build_index(&docs, &analyzer).map_err(|e| CliError::Data(e.to_string()))?;
    index.save(&args.out)?;
    eprintln!(
        "indexed {} documents, {} terms, {} tokens -> {}",
        index.n_docs(),
        index.vocab_size(),
        index.total_tokens(),
        args.out.display()
    );
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), CliError> {
    let cfg = ExperimentConfig {
        index_path: Some(args.index),
        topics: Some(args.topics),
        stopwords: args.stopwords,
        depth: args.k,
        threads: args.threads,
        method: MethodChoice::Baseline,
        ..ExperimentConfig::default()
    };
    let bench = Workbench::load(&cfg, false)?;
    let run = experiment::produce_run(&bench, &cfg)?;
    write_run_output(&run, &args.tag, &args.out)
}

fn build_config(args: &RunArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::parse(&fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    // flags win over the file
    cfg.method = MethodChoice::parse(&args.method).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown method {:?}; expected one of {}",
            args.method,
            MethodChoice::all_names().join("|")
        ))
    })?;
    if let Some(p) = &args.index {
        cfg.index_path = Some(p.clone());
    }
    if let Some(p) = &args.topics {
        cfg.topics = Some(p.clone());
    }
    if let Some(p) = &args.qrels {
        cfg.qrels = Some(p.clone());
    }
    if let Some(p) = &args.wordnet_dir {
        cfg.wordnet_dir = Some(p.clone());
    }
    if let Some(p) = &args.gloss_tsv {
        cfg.gloss_tsv = Some(p.clone());
    }
    if let Some(p) = &args.stopwords {
        cfg.stopwords = Some(p.clone());
    }
    if let Some(k) = args.k {
        cfg.depth = k;
    }
    if let Some(n) = args.threads {
        cfg.threads = n;
    }
    for setting in &args.sets {
        let (key, value) = setting.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--set expects KEY=VALUE, got {setting:?}"))
        })?;
        cfg.apply(key.trim(), value.trim())?;
    }
    Ok(cfg)
}

fn cmd_expand(args: RunArgs) -> Result<(), CliError> {
    let cfg = build_config(&args)?;
    let MethodChoice::Expansion(method) = cfg.method else {
        return Err(CliError::Usage(
            "expand needs an expansion method, not baseline".into(),
        ));
    };
    let bench = Workbench::load(&cfg, false)?;
    let expanded = experiment::expand_all(&bench, &cfg, method)?;
    let mut out = String::new();
    for eq in &expanded {
        out.push_str(&eq.to_tsv());
    }
    match &args.out {
        Some(path) => fs::write(path, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let cfg = build_config(&args)?;
    let tag = args
        .tag
        .clone()
        .unwrap_or_else(|| cfg.method.as_str().to_owned());
    let (run, report) = experiment::run_experiment(&cfg)?;
    if let Some(path) = &args.out {
        fs::write(path, run.to_trec_string(&tag))?;
    }
    print!("{}", report::render_report(cfg.method.as_str(), &report));
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let run = experiment::read_run(&args.run)?;
    let qrels = corpus::parse_qrels(fs::File::open(&args.qrels)?)?;
    match &args.baseline_run {
        None => {
            let report = qelab_core::eval::evaluate_run(&run, &qrels)?;
            print!("{}", report::render_report("run", &report));
        }
        Some(base_path) => {
            let base = experiment::read_run(base_path)?;
            let cmp = experiment::compare_runs(&base, &run, &qrels)?;
            print!("{}", report::render_comparison("baseline", "run", &cmp));
        }
    }
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let run_a = experiment::read_run(&args.run_a)?;
    let run_b = experiment::read_run(&args.run_b)?;
    let qrels = corpus::parse_qrels(fs::File::open(&args.qrels)?)?;
    let cmp = experiment::compare_runs(&run_a, &run_b, &qrels)?;
    print!("{}", report::render_comparison("run_a", "run_b", &cmp));
    Ok(())
}

fn write_run_output(
    run: &corpus::RunFile,
    tag: &str,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let text = run.to_trec_string(tag);
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
