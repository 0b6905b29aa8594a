//! Batch experiment driver: expand every topic (or pass it through for
//! the baseline), search at the configured depth, collate a run in
//! topic order, and evaluate it.
//!
//! Topics run in parallel on a dedicated thread pool; output collation
//! is ordered, so the thread count never changes the result.

use std::fs;
use std::path::Path;

use qelab_core::corpus::{self, QrelSet, RunFile, Topic};
use qelab_core::eval::{self, EvalReport};
use qelab_core::expand::{
    fnpw_expand, kld_expand, kldlca_expand, klwnet_expand, nownet_expand, pwnet_expand,
    rm3_expand, ExpandedQuery, Method,
};
use qelab_core::index::InvertedIndex;
use qelab_core::retrieval::{search, WeightedQuery};
use qelab_core::wordnet::GlossLexicon;
use qelab_core::Analyzer;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, MethodChoice};
use crate::error::CliError;

/// Everything an experiment needs in memory.
pub struct Workbench {
    pub index: InvertedIndex,
    pub topics: Vec<Topic>,
    pub qrels: Option<QrelSet>,
    pub lexicon: Option<GlossLexicon>,
    pub analyzer: Analyzer,
}

impl Workbench {
    /// Load index, topics, optional qrels, and the lexicon when the
    /// configured method needs one.
    pub fn load(cfg: &ExperimentConfig, require_qrels: bool) -> Result<Workbench, CliError> {
        let index_path = cfg
            .index_path
            .as_ref()
            .ok_or_else(|| CliError::Usage("an index path is required".into()))?;
        let index = InvertedIndex::load(index_path)?;

        let topics_path = cfg
            .topics
            .as_ref()
            .ok_or_else(|| CliError::Usage("a topics path is required".into()))?;
        let topics = corpus::parse_topics(fs::File::open(topics_path)?)?;

        let qrels = match (&cfg.qrels, require_qrels) {
            (Some(path), _) => Some(corpus::parse_qrels(fs::File::open(path)?)?),
            (None, true) => return Err(CliError::Usage("a qrels path is required".into())),
            (None, false) => None,
        };

        let lexicon = load_lexicon(cfg)?;
        if let MethodChoice::Expansion(m) = cfg.method {
            if m.needs_lexicon() && lexicon.is_none() {
                return Err(CliError::Usage(format!(
                    "method {} needs --wordnet-dir or --gloss-tsv",
                    m.as_str()
                )));
            }
        }

        let analyzer = match &cfg.stopwords {
            Some(path) => Analyzer::from_stopword_file(path)?,
            None => Analyzer::default(),
        };

        Ok(Workbench {
            index,
            topics,
            qrels,
            lexicon,
            analyzer,
        })
    }
}

pub fn load_lexicon(cfg: &ExperimentConfig) -> Result<Option<GlossLexicon>, CliError> {
    match (&cfg.wordnet_dir, &cfg.gloss_tsv) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--wordnet-dir and --gloss-tsv are mutually exclusive".into(),
        )),
        (Some(dir), None) => Ok(Some(GlossLexicon::load_wordnet(dir)?)),
        (None, Some(tsv)) => Ok(Some(GlossLexicon::load_tsv(tsv)?)),
        (None, None) => Ok(None),
    }
}

/// The baseline "expansion": the analyzed title with tf weights.
fn baseline_query(analyzer: &Analyzer, topic: &Topic) -> WeightedQuery {
    let mut tfs: std::collections::BTreeMap<String, u32> = std::collections::BTreeMap::new();
    for term in analyzer.analyze(&topic.title) {
        *tfs.entry(term).or_insert(0) += 1;
    }
    WeightedQuery::new(
        topic.id,
        tfs.into_iter().map(|(t, tf)| (t, tf as f64)).collect(),
    )
}

/// Expand one topic with the configured method.
pub fn expand_topic(
    bench: &Workbench,
    cfg: &ExperimentConfig,
    method: Method,
    topic: &Topic,
) -> Result<ExpandedQuery, CliError> {
    let expansion = cfg.expansion_config(method);
    expansion.validate()?;
    let lexicon = |m: Method| {
        bench
            .lexicon
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("method {} needs a lexicon", m.as_str())))
    };
    Ok(match method {
        Method::Pwnet => pwnet_expand(
            &bench.index,
            topic,
            lexicon(method)?,
            &bench.analyzer,
            &expansion,
        ),
        Method::Nownet => nownet_expand(&bench.index, topic, &bench.analyzer, &expansion),
        Method::Fnpw => fnpw_expand(
            &bench.index,
            topic,
            lexicon(method)?,
            &bench.analyzer,
            &expansion,
        ),
        Method::Kld => kld_expand(&bench.index, topic, &bench.analyzer, &expansion),
        Method::Rm3 => rm3_expand(&bench.index, topic, &bench.analyzer, &expansion),
        Method::Kldlca => kldlca_expand(&bench.index, topic, &bench.analyzer, &expansion),
        Method::Klwnet => klwnet_expand(
            &bench.index,
            topic,
            lexicon(method)?,
            &bench.analyzer,
            &cfg.expansion_config(Method::Pwnet),
            &cfg.expansion_config(Method::Kldlca),
            cfg.alpha,
        ),
    })
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))
}

/// Expand every topic; results in topic order.
pub fn expand_all(
    bench: &Workbench,
    cfg: &ExperimentConfig,
    method: Method,
) -> Result<Vec<ExpandedQuery>, CliError> {
    let pool = thread_pool(cfg.threads)?;
    let mut expanded = pool.install(|| {
        bench
            .topics
            .par_iter()
            .map(|topic| expand_topic(bench, cfg, method, topic))
            .collect::<Result<Vec<_>, _>>()
    })?;
    expanded.sort_by_key(|eq| eq.topic);
    Ok(expanded)
}

/// Full experiment: (run file, evaluation report).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<(RunFile, EvalReport), CliError> {
    let bench = Workbench::load(cfg, true)?;
    let run = produce_run(&bench, cfg)?;
    let qrels = bench.qrels.as_ref().expect("qrels required above");
    let report = eval::evaluate_run(&run, qrels)?;
    Ok((run, report))
}

/// Produce the run file only (no evaluation).
pub fn produce_run(bench: &Workbench, cfg: &ExperimentConfig) -> Result<RunFile, CliError> {
    let pool = thread_pool(cfg.threads)?;
    let rankings: Vec<(u32, qelab_core::retrieval::Ranking)> = match cfg.method {
        MethodChoice::Baseline => pool.install(|| {
            bench
                .topics
                .par_iter()
                .map(|topic| {
                    let query = baseline_query(&bench.analyzer, topic);
                    (topic.id, search(&bench.index, &query, cfg.depth))
                })
                .collect()
        }),
        MethodChoice::Expansion(method) => {
            let expanded = pool.install(|| {
                bench
                    .topics
                    .par_iter()
                    .map(|topic| expand_topic(bench, cfg, method, topic))
                    .collect::<Result<Vec<_>, _>>()
            })?;
            pool.install(|| {
                expanded
                    .par_iter()
                    .map(|eq| {
                        (
                            eq.topic,
                            search(&bench.index, &eq.to_weighted_query(), cfg.depth),
                        )
                    })
                    .collect()
            })
        }
    };
    let mut sorted = rankings;
    sorted.sort_by_key(|&(topic, _)| topic);
    let mut run = RunFile::new();
    for (topic, ranking) in sorted {
        if ranking.is_empty() {
            continue;
        }
        run.insert_topic(topic, ranking.to_run_entries())
            .map_err(|e| CliError::Internal(format!("search produced an invalid run: {e}")))?;
    }
    Ok(run)
}

/// Side-by-side comparison of two runs over shared judgments.
pub struct Comparison {
    pub report_a: EvalReport,
    pub report_b: EvalReport,
    /// Percent of topics where B beats A by more than 5% AP.
    pub pct_improved: f64,
    pub t_stat: f64,
    pub p_value: f64,
}

pub fn compare_runs(
    run_a: &RunFile,
    run_b: &RunFile,
    qrels: &QrelSet,
) -> Result<Comparison, CliError> {
    let report_a = eval::evaluate_run(run_a, qrels)?;
    let report_b = eval::evaluate_run(run_b, qrels)?;
    let aps_a: std::collections::BTreeMap<u32, f64> = report_a
        .per_topic
        .iter()
        .map(|(&t, e)| (t, e.ap))
        .collect();
    let aps_b: std::collections::BTreeMap<u32, f64> = report_b
        .per_topic
        .iter()
        .map(|(&t, e)| (t, e.ap))
        .collect();
    let pct_improved = eval::pct_improved(&aps_a, &aps_b, eval::IMPROVEMENT_THRESHOLD)?;
    let a_vals: Vec<f64> = aps_a.values().copied().collect();
    let b_vals: Vec<f64> = aps_b.values().copied().collect();
    let (t_stat, p_value) = eval::paired_t(&b_vals, &a_vals)?;
    Ok(Comparison {
        report_a,
        report_b,
        pct_improved,
        t_stat,
        p_value,
    })
}

/// Read a run file from disk.
pub fn read_run(path: &Path) -> Result<RunFile, CliError> {
    Ok(corpus::parse_run(fs::File::open(path)?)?)
}
