//! trec_eval-style effectiveness metrics: average precision, MAP,
//! GM_MAP, P@10, relevant-retrieved counts, the >5%-improved robustness
//! measure, and the two-tailed paired t-test.
//!
//! Topics with no judged-relevant documents are excluded from all
//! aggregates; topics judged but absent from a run score zero.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::corpus::{QrelSet, RunFile};

mod stat;

pub use stat::{incbeta_reg, t_two_tailed_p};

/// AP floor used for the geometric mean, matching trec_eval.
pub const GM_MAP_FLOOR: f64 = 1e-5;

/// Default "method beats baseline" margin for `pct_improved`.
pub const IMPROVEMENT_THRESHOLD: f64 = 0.05;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no topics with relevant judgments to evaluate")]
    NoTopics,
    #[error("paired test needs at least 2 pairs, got {0}")]
    TooFewPairs(usize),
    #[error("per-topic value lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("topic sets differ; only in first: {only_a:?}, only in second: {only_b:?}")]
    TopicMismatch { only_a: Vec<u32>, only_b: Vec<u32> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopicEval {
    pub ap: f64,
    pub p10: f64,
    pub rel_ret: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Per-topic scores for every topic with at least one relevant
    /// document in the qrels.
    pub per_topic: BTreeMap<u32, TopicEval>,
    pub map: f64,
    pub gm_map: f64,
    pub p10: f64,
    pub rel_ret: u64,
    /// Judged-relevant documents across evaluated topics.
    pub total_relevant: u64,
    /// Topics present in the qrels but skipped (no relevant documents).
    pub skipped: Vec<u32>,
}

impl EvalReport {
    pub fn ap_values(&self) -> Vec<f64> {
        self.per_topic.values().map(|t| t.ap).collect()
    }
}

/// Average precision of one ranked list: mean over all judged-relevant
/// documents of the precision at each relevant retrieved rank.
/// `None` when the topic has no judged-relevant document.
pub fn average_precision<'a>(
    ranking: impl IntoIterator<Item = &'a str>,
    qrels: &QrelSet,
    topic: u32,
) -> Option<f64> {
    let total_relevant = qrels.relevant_count(topic);
    if total_relevant == 0 {
        return None;
    }
    let mut found = 0u64;
    let mut sum = 0.0;
    for (i, docno) in ranking.into_iter().enumerate() {
        if qrels.is_relevant(topic, docno) {
            found += 1;
            sum += found as f64 / (i + 1) as f64;
        }
    }
    Some(sum / total_relevant as f64)
}

/// Precision at rank `k`; unretrieved ranks count as non-relevant.
pub fn precision_at<'a>(
    ranking: impl IntoIterator<Item = &'a str>,
    qrels: &QrelSet,
    topic: u32,
    k: usize,
) -> f64 {
    let relevant = ranking
        .into_iter()
        .take(k)
        .filter(|d| qrels.is_relevant(topic, d))
        .count();
    relevant as f64 / k as f64
}

/// Evaluate a run against judgments.
///
/// Every topic in the qrels with at least one relevant document is
/// scored; a topic missing from the run contributes zeros.
pub fn evaluate_run(run: &RunFile, qrels: &QrelSet) -> Result<EvalReport, EvalError> {
    let mut per_topic = BTreeMap::new();
    let mut skipped = Vec::new();
    let mut total_relevant = 0u64;
    let empty: &[crate::corpus::RunEntry] = &[];

    for topic in qrels.topics() {
        if qrels.relevant_count(topic) == 0 {
            skipped.push(topic);
            continue;
        }
        total_relevant += qrels.relevant_count(topic) as u64;
        let entries = run.entries(topic).unwrap_or(empty);
        let docnos = || entries.iter().map(|e| e.docno.as_str());
        let ap = average_precision(docnos(), qrels, topic).expect("relevant_count checked above");
        let p10 = precision_at(docnos(), qrels, topic, 10);
        let rel_ret = docnos().filter(|d| qrels.is_relevant(topic, d)).count() as u64;
        per_topic.insert(topic, TopicEval { ap, p10, rel_ret });
    }

    if per_topic.is_empty() {
        return Err(EvalError::NoTopics);
    }
    let n = per_topic.len() as f64;
    let map = per_topic.values().map(|t| t.ap).sum::<f64>() / n;
    let gm_map = (per_topic
        .values()
        .map(|t| t.ap.max(GM_MAP_FLOOR).ln())
        .sum::<f64>()
        / n)
        .exp();
    let p10 = per_topic.values().map(|t| t.p10).sum::<f64>() / n;
    let rel_ret = per_topic.values().map(|t| t.rel_ret).sum();

    Ok(EvalReport {
        per_topic,
        map,
        gm_map,
        p10,
        rel_ret,
        total_relevant,
        skipped,
    })
}

/// Percentage of topics where the method improves on the baseline by
/// more than `threshold` (e.g. 0.05 for the ">5%" robustness measure).
pub fn pct_improved(
    baseline: &BTreeMap<u32, f64>,
    method: &BTreeMap<u32, f64>,
    threshold: f64,
) -> Result<f64, EvalError> {
    let only_a: Vec<u32> = baseline
        .keys()
        .filter(|t| !method.contains_key(t))
        .copied()
        .collect();
    let only_b: Vec<u32> = method
        .keys()
        .filter(|t| !baseline.contains_key(t))
        .copied()
        .collect();
    if !only_a.is_empty() || !only_b.is_empty() {
        return Err(EvalError::TopicMismatch { only_a, only_b });
    }
    if baseline.is_empty() {
        return Err(EvalError::NoTopics);
    }
    let improved = baseline
        .iter()
        .filter(|(topic, base_ap)| method[topic] > **base_ap * (1.0 + threshold))
        .count();
    Ok(100.0 * improved as f64 / baseline.len() as f64)
}

/// Two-tailed paired t-test over per-topic values.
///
/// Returns `(t, p)` with `t = mean(d) / (sd(d) / sqrt(n))` over the
/// differences `d = a - b` (sample standard deviation, n-1 denominator).
/// All-zero differences give `(0, 1)`.
pub fn paired_t(a: &[f64], b: &[f64]) -> Result<(f64, f64), EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(EvalError::TooFewPairs(n));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = diffs.iter().sum::<f64>() / n as f64;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n as f64 - 1.0);
    let sd = var.sqrt();
    if sd == 0.0 {
        if mean == 0.0 {
            return Ok((0.0, 1.0));
        }
        // identical nonzero differences: unbounded evidence
        return Ok((f64::INFINITY.copysign(mean), 0.0));
    }
    let t = mean / (sd / (n as f64).sqrt());
    Ok((t, stat::t_two_tailed_p(t, n as f64 - 1.0)))
}
