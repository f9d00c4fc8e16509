//! The `umst` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use umst_core::eval::{head_to_head, oracle_combine, score};
use umst_core::inference::{Models, Pruner, System};
use umst_core::training::{train, train_suite, TrainOutcome, TrainedModel};
use umst_core::{DependencyTree, Sentence};

use crate::bench::{
    bench_graph, loglog_slope, median_times, run_bench, write_bench_csv, Algorithm, BenchRow, BenchSpec,
};
use crate::config::{ConfigFile, Settings, SystemChoice};
use crate::conll::{read_conll_file, write_conll_file};
use crate::error::{at, Error, Result};
use crate::graph_dump::{read_graph, write_graph};
use crate::model_file::{read_model_file, write_model_file};
use crate::pipeline::{parse_corpus, prune_stats};
use crate::report::{eval_csv, eval_text, per_sentence_csv, prune_stats_text, training_log_csv, Comparison};

#[derive(Debug, Parser)]
#[command(name = "umst", version, about = "Undirected MST dependency parsing")]
pub struct Cli {
    #[command(flatten)]
    pub shared: SharedArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SharedArgs {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for shuffling and the randomized MST backend.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// d-mst, u-mst-uf, u-mst-uf-lep, u-mst-df, or `all` (train only).
    #[arg(long, global = true)]
    pub system: Option<String>,
    /// Worker threads for parsing.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Score punctuation tokens too.
    #[arg(long, global = true)]
    pub no_punct_filter: bool,
    /// mean or product.
    #[arg(long, global = true)]
    pub combiner: Option<String>,
    /// randomized or boruvka.
    #[arg(long, global = true)]
    pub mst_backend: Option<String>,
    /// none or length-dictionary.
    #[arg(long, global = true)]
    pub pruning: Option<String>,
    /// Local enhancement rounds for u-mst-uf-lep (default 5).
    #[arg(long, global = true)]
    pub enhancement_rounds: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train one system, or all four with `--system all`.
    Train(TrainArgs),
    /// Parse a CoNLL file with a trained model.
    Parse(ParseArgs),
    /// Score predictions against gold trees.
    Eval(EvalArgs),
    /// Time the MST algorithms on random graphs.
    Bench(BenchArgs),
    /// Report how much length-dictionary pruning removes.
    PruneStats(PruneStatsArgs),
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Training treebank (CoNLL-X).
    #[arg(long)]
    pub input: PathBuf,
    /// Model file to write (single system).
    #[arg(long, conflicts_with = "out_dir")]
    pub out: Option<PathBuf>,
    /// Directory receiving `<system>.model` and `<system>.log.csv`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Training log CSV (single system with `--out`).
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Trained d-mst model; `u-mst-uf-lep` needs one at parse time.
    #[arg(long)]
    pub directed_model: Option<PathBuf>,
    /// Training epochs (default 10).
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Feature space size as a power of two (default 22).
    #[arg(long)]
    pub hash_bits: Option<u8>,
    /// Shuffle sentences between epochs.
    #[arg(long)]
    pub shuffle: bool,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// d-mst model supplying enhancement scores for `u-mst-uf-lep`.
    #[arg(long)]
    pub directed_model: Option<PathBuf>,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub gold: PathBuf,
    /// Predictions of system A.
    #[arg(long)]
    pub pred: PathBuf,
    /// Predictions of system B; adds head-to-head and oracle rows.
    #[arg(long)]
    pub pred_b: Option<PathBuf>,
    /// Text report destination (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// `metric,value` CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Per-sentence CSV.
    #[arg(long)]
    pub sentences_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Edge counts.
    #[arg(long, value_delimiter = ',', default_values_t = vec![10_000usize, 100_000, 1_000_000])]
    pub sizes: Vec<usize>,
    /// Average vertex degrees.
    #[arg(long, value_delimiter = ',', default_values_t = vec![8.0f64])]
    pub densities: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0u64, 1, 2])]
    pub seeds: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec!["kruskal".to_string(), "boruvka".into(), "randomized".into()])]
    pub algorithms: Vec<String>,
    /// Benchmark these graph dumps instead of random graphs.
    #[arg(long)]
    pub graph: Vec<PathBuf>,
    /// Also write every generated graph as a dump into this directory.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
    /// CSV destination (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PruneStatsArgs {
    /// Treebank the pruner is built from.
    #[arg(long)]
    pub train: PathBuf,
    /// Treebank the pruner is applied to.
    #[arg(long)]
    pub dev: PathBuf,
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn settings(shared: &SharedArgs, train: Option<&TrainArgs>) -> Result<Settings> {
    let file = match &shared.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = ConfigFile {
        system: shared.system.clone(),
        combiner: shared.combiner.clone(),
        enhancement_rounds: shared.enhancement_rounds,
        mst_backend: shared.mst_backend.clone(),
        seed: shared.seed,
        pruning: shared.pruning.clone(),
        epochs: train.and_then(|t| t.epochs),
        hash_bits: train.and_then(|t| t.hash_bits),
        shuffle: train.and_then(|t| t.shuffle.then_some(true)),
        threads: shared.threads,
        punct_filter: shared.no_punct_filter.then_some(false),
    };
    Settings::resolve(&file.merge(flags))
}

pub fn execute(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Train(args) => cmd_train(&settings(&cli.shared, Some(args))?, args),
        Command::Parse(args) => cmd_parse(&settings(&cli.shared, None)?, args),
        Command::Eval(args) => cmd_eval(&settings(&cli.shared, None)?, args),
        Command::Bench(args) => cmd_bench(&settings(&cli.shared, None)?, args),
        Command::PruneStats(args) => cmd_prune_stats(args),
    }
}

fn require_file(path: &Path) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::File { path: path.to_path_buf(), source: io::Error::new(io::ErrorKind::NotFound, "no such file") })
    }
}

fn read_corpus(path: &Path) -> Result<Vec<Sentence>> {
    let (sentences, warnings) = read_conll_file(path)?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(sentences)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(at(path))
}

fn load_directed_model(path: &Path) -> Result<TrainedModel> {
    let m = read_model_file(path)?;
    if m.system != System::DMst {
        return Err(Error::Config(format!(
            "{} holds a {} model; enhancement scores come from a d-mst model",
            path.display(),
            m.system
        )));
    }
    Ok(m)
}

fn cmd_train(settings: &Settings, args: &TrainArgs) -> Result<()> {
    let choice = settings
        .system
        .clone()
        .ok_or_else(|| Error::Config("train needs --system (or `system` in the config file)".into()))?;
    if let SystemChoice::One(System::UMstUfLep) = choice {
        match &args.directed_model {
            None => {
                return Err(Error::Config(
                    "u-mst-uf-lep scores its local enhancement with a trained d-mst model: train one \
                     first and pass it with --directed-model, or use --system all"
                        .into(),
                ))
            }
            Some(path) => {
                load_directed_model(path)?;
            }
        }
    }
    require_file(&args.input)?;
    match (&choice, &args.out, &args.out_dir) {
        (SystemChoice::All, _, None) => {
            return Err(Error::Config("--system all writes several models and needs --out-dir".into()))
        }
        (SystemChoice::One(_), None, None) => return Err(Error::Config("train needs --out or --out-dir".into())),
        _ => {}
    }
    let corpus = read_corpus(&args.input)?;
    let systems: Vec<System> = match choice {
        SystemChoice::All => System::ALL.to_vec(),
        SystemChoice::One(s) => vec![s],
    };
    let base = settings.train_config(systems[0]);
    let outcomes = if systems.len() == 1 {
        let mut map = std::collections::BTreeMap::new();
        map.insert(systems[0], train(&corpus, &base)?);
        map
    } else {
        train_suite(&corpus, &systems, &base)?
    };

    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(at(dir))?;
    }
    for (system, outcome) in &outcomes {
        report_epochs(*system, outcome);
        let (model_path, log_path) = match (&args.out_dir, &args.out) {
            (Some(dir), _) => (dir.join(format!("{system}.model")), Some(dir.join(format!("{system}.log.csv")))),
            (None, Some(out)) => (out.clone(), args.log.clone()),
            (None, None) => unreachable!("checked above"),
        };
        write_model_file(&model_path, &outcome.trained)?;
        if let Some(log) = log_path {
            write_text(&log, &training_log_csv(&outcome.log))?;
        }
    }
    Ok(())
}

fn report_epochs(system: System, outcome: &TrainOutcome) {
    for e in &outcome.log {
        eprintln!("{system}: epoch {} train D-UAS {:.2} ({} sentences updated)", e.epoch, e.train_uas, e.updates);
    }
}

fn cmd_parse(settings: &Settings, args: &ParseArgs) -> Result<()> {
    require_file(&args.model)?;
    require_file(&args.input)?;
    let trained = read_model_file(&args.model)?;
    if let Some(SystemChoice::One(s)) = &settings.system {
        if *s != trained.system {
            return Err(Error::Config(format!(
                "--system {s} does not match the {} model in {}",
                trained.system,
                args.model.display()
            )));
        }
    }
    let directed = match (&args.directed_model, trained.system.needs_directed_model()) {
        (Some(path), true) => Some(load_directed_model(path)?),
        (None, true) => {
            return Err(Error::Config(format!(
                "{} needs the trained d-mst model for its enhancement scores; pass --directed-model",
                trained.system
            )))
        }
        (_, false) => None,
    };
    let sentences = read_corpus(&args.input)?;
    let models = Models {
        primary: &trained.model,
        enhancement: directed.as_ref().map(|d| &d.model),
        pruner: trained.pruner.as_ref(),
    };
    let config = settings.parse_config(trained.system);
    let predicted = parse_corpus(&sentences, &models, &config, settings.threads)?;
    write_conll_file(&args.output, &sentences, &predicted)
}

fn trees(sentences: &[Sentence]) -> Vec<DependencyTree> {
    sentences.iter().map(Sentence::gold_tree).collect()
}

fn cmd_eval(settings: &Settings, args: &EvalArgs) -> Result<()> {
    for p in [Some(&args.gold), Some(&args.pred), args.pred_b.as_ref()].into_iter().flatten() {
        require_file(p)?;
    }
    let gold = read_corpus(&args.gold)?;
    let pred_a = trees(&read_corpus(&args.pred)?);
    let exclude = settings.exclude_punct;
    let a = score(&gold, &pred_a, exclude)?;
    let cmp = match &args.pred_b {
        None => None,
        Some(path) => {
            let pred_b = trees(&read_corpus(path)?);
            Some(Comparison {
                b: score(&gold, &pred_b, exclude)?,
                head_to_head: head_to_head(&gold, &pred_a, &pred_b, exclude)?,
                oracle: oracle_combine(&gold, &pred_a, &pred_b, exclude)?,
            })
        }
    };
    let text = eval_text(&a, cmp.as_ref());
    match &args.output {
        Some(path) => write_text(path, &text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    if let Some(path) = &args.csv {
        write_text(path, &eval_csv(&a, cmp.as_ref()))?;
    }
    if let Some(path) = &args.sentences_csv {
        write_text(path, &per_sentence_csv(&a, cmp.as_ref().map(|c| &c.b)))?;
    }
    Ok(())
}

fn cmd_bench(settings: &Settings, args: &BenchArgs) -> Result<()> {
    let algorithms = args
        .algorithms
        .iter()
        .map(|a| Algorithm::from_name(a).ok_or_else(|| Error::Config(format!("unknown algorithm {a:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<BenchRow> = if args.graph.is_empty() {
        let spec = BenchSpec {
            sizes: args.sizes.clone(),
            densities: args.densities.clone(),
            seeds: args.seeds.clone(),
            algorithms: algorithms.clone(),
        };
        if let Some(dir) = &args.dump_dir {
            dump_graphs(&spec, dir)?;
        }
        run_bench(&spec, |r| eprintln!("{} n={} m={} seed={} {} ns", r.algorithm, r.n, r.m, r.seed, r.wall_time_ns))?
    } else {
        let mut rows = Vec::new();
        for path in &args.graph {
            let file = fs::File::open(path).map_err(at(path))?;
            let graph = read_graph(BufReader::new(file))?;
            rows.extend(bench_graph(&graph, settings.seed, &algorithms)?);
        }
        rows
    };
    match &args.output {
        Some(path) => {
            let file = fs::File::create(path).map_err(at(path))?;
            write_bench_csv(io::BufWriter::new(file), &rows)?;
        }
        None => write_bench_csv(io::stdout().lock(), &rows)?,
    }
    if let Some(slope) = loglog_slope(&median_times(&rows, Algorithm::Randomized)) {
        eprintln!("log-log slope of median randomized time against m: {slope:.3}");
    }
    Ok(())
}

fn dump_graphs(spec: &BenchSpec, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(at(dir))?;
    for &m in &spec.sizes {
        for &density in &spec.densities {
            for &seed in &spec.seeds {
                let n = crate::bench::vertices_for(m, density);
                let mut rng = umst_core::RandomSource::for_item(seed, m as u64);
                let graph = crate::bench::random_connected_graph(n, m, &mut rng);
                let path = dir.join(format!("graph-m{m}-d{density}-s{seed}.txt"));
                let file = fs::File::create(&path).map_err(at(&path))?;
                write_graph(io::BufWriter::new(file), &graph)?;
            }
        }
    }
    Ok(())
}

fn cmd_prune_stats(args: &PruneStatsArgs) -> Result<()> {
    require_file(&args.train)?;
    require_file(&args.dev)?;
    let pruner = Pruner::build(&read_corpus(&args.train)?);
    let stats = prune_stats(&pruner, &read_corpus(&args.dev)?);
    io::stdout().write_all(prune_stats_text(&stats).as_bytes())?;
    Ok(())
}
