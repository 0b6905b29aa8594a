//! Experiment configuration: flat `key = value` files plus flag
//! overrides, with stock per-method parameter defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use qelab_core::expand::{ExpansionConfig, Method};
use qelab_core::wordnet::RelMode;

use crate::error::CliError;

/// What `run` executes: unexpanded retrieval or one expansion method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Baseline,
    Expansion(Method),
}

impl MethodChoice {
    pub fn parse(s: &str) -> Option<MethodChoice> {
        if s == "baseline" {
            return Some(MethodChoice::Baseline);
        }
        Method::parse(s).map(MethodChoice::Expansion)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            MethodChoice::Baseline => "baseline",
            MethodChoice::Expansion(m) => m.as_str(),
        }
    }

    pub fn all_names() -> [&'static str; 8] {
        [
            "baseline", "pwnet", "nownet", "fnpw", "kld", "rm3", "kldlca", "klwnet",
        ]
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// D/T/beta knobs of one expansion method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodParams {
    pub d: usize,
    pub t: usize,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rm3Params {
    pub d: usize,
    pub t: usize,
    pub mu: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub index_path: Option<PathBuf>,
    pub topics: Option<PathBuf>,
    pub qrels: Option<PathBuf>,
    pub wordnet_dir: Option<PathBuf>,
    pub gloss_tsv: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub method: MethodChoice,
    /// Run depth k.
    pub depth: usize,
    /// Worker threads; 0 means one per core. No effect on results.
    pub threads: usize,
    pub rel_mode: RelMode,
    pub pwnet: MethodParams,
    pub nownet: MethodParams,
    pub fnpw: MethodParams,
    pub kld: MethodParams,
    pub rm3: Rm3Params,
    pub kldlca: MethodParams,
    /// pwnet share in the klwnet combination.
    pub alpha: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            index_path: None,
            topics: None,
            qrels: None,
            wordnet_dir: None,
            gloss_tsv: None,
            stopwords: None,
            method: MethodChoice::Baseline,
            depth: 1000,
            threads: 0,
            rel_mode: RelMode::Dice,
            pwnet: MethodParams {
                d: 10,
                t: 60,
                beta: 2.0,
            },
            nownet: MethodParams {
                d: 10,
                t: 60,
                beta: 2.0,
            },
            fnpw: MethodParams {
                d: 10,
                t: 60,
                beta: 2.0,
            },
            kld: MethodParams {
                d: 10,
                t: 40,
                beta: 1.0,
            },
            rm3: Rm3Params {
                d: 50,
                t: 50,
                mu: 2500.0,
                lambda: 0.5,
            },
            kldlca: MethodParams {
                d: 50,
                t: 40,
                beta: 1.0,
            },
            alpha: 0.3,
        }
    }
}

impl ExperimentConfig {
    /// Expansion settings for a method, assembled from the per-method
    /// blocks plus the shared rel mode and rm3/alpha knobs.
    pub fn expansion_config(&self, method: Method) -> ExpansionConfig {
        let (d, t, beta) = match method {
            Method::Pwnet => (self.pwnet.d, self.pwnet.t, self.pwnet.beta),
            Method::Nownet => (self.nownet.d, self.nownet.t, self.nownet.beta),
            Method::Fnpw => (self.fnpw.d, self.fnpw.t, self.fnpw.beta),
            Method::Kld => (self.kld.d, self.kld.t, self.kld.beta),
            Method::Rm3 => (self.rm3.d, self.rm3.t, 0.0),
            Method::Kldlca | Method::Klwnet => (self.kldlca.d, self.kldlca.t, self.kldlca.beta),
        };
        let mut cfg = ExpansionConfig::for_method(method);
        cfg.d = d;
        cfg.t = t;
        if !matches!(method, Method::Rm3) {
            cfg.beta = beta;
        }
        cfg.alpha = self.alpha;
        cfg.mode = self.rel_mode;
        cfg.mu = self.rm3.mu;
        cfg.lambda = self.rm3.lambda;
        cfg
    }

    /// Flat `key = value` rendering; parse(serialize(cfg)) is the
    /// identity.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        if let Some(p) = &self.index_path {
            push("index", p.display().to_string());
        }
        if let Some(p) = &self.topics {
            push("topics", p.display().to_string());
        }
        if let Some(p) = &self.qrels {
            push("qrels", p.display().to_string());
        }
        if let Some(p) = &self.wordnet_dir {
            push("wordnet_dir", p.display().to_string());
        }
        if let Some(p) = &self.gloss_tsv {
            push("gloss_tsv", p.display().to_string());
        }
        if let Some(p) = &self.stopwords {
            push("stopwords", p.display().to_string());
        }
        push("method", self.method.to_string());
        push("depth", self.depth.to_string());
        push("threads", self.threads.to_string());
        push("rel_mode", self.rel_mode.as_str().to_string());
        push("alpha", self.alpha.to_string());
        for (name, p) in [
            ("pwnet", &self.pwnet),
            ("nownet", &self.nownet),
            ("fnpw", &self.fnpw),
            ("kld", &self.kld),
            ("kldlca", &self.kldlca),
        ] {
            push(&format!("{name}.d"), p.d.to_string());
            push(&format!("{name}.t"), p.t.to_string());
            push(&format!("{name}.beta"), p.beta.to_string());
        }
        push("rm3.d", self.rm3.d.to_string());
        push("rm3.t", self.rm3.t.to_string());
        push("rm3.mu", self.rm3.mu.to_string());
        push("rm3.lambda", self.rm3.lambda.to_string());
        out
    }

    pub fn parse(content: &str) -> Result<ExperimentConfig, CliError> {
        let mut cfg = ExperimentConfig::default();
        let mut seen: BTreeMap<String, String> = BTreeMap::new();
        for (i, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Data(format!("config line {}: expected key = value", i + 1))
            })?;
            seen.insert(key.trim().to_owned(), value.trim().to_owned());
        }
        for (key, value) in seen {
            cfg.apply(&key, &value)?;
        }
        Ok(cfg)
    }

    /// Set one key; used both by the file parser and by flag overrides.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |what: &str| CliError::Data(format!("config key {key}: invalid {what} {value:?}"));
        let parse_usize = |v: &str| v.parse::<usize>().map_err(|_| bad("integer"));
        let parse_f64 = |v: &str| v.parse::<f64>().map_err(|_| bad("number"));
        match key {
            "index" => self.index_path = Some(PathBuf::from(value)),
            "topics" => self.topics = Some(PathBuf::from(value)),
            "qrels" => self.qrels = Some(PathBuf::from(value)),
            "wordnet_dir" => self.wordnet_dir = Some(PathBuf::from(value)),
            "gloss_tsv" => self.gloss_tsv = Some(PathBuf::from(value)),
            "stopwords" => self.stopwords = Some(PathBuf::from(value)),
            "method" => {
                self.method = MethodChoice::parse(value)
                    .ok_or_else(|| CliError::Usage(format!("unknown method {value:?}")))?;
            }
            "depth" => self.depth = parse_usize(value)?,
            "threads" => self.threads = parse_usize(value)?,
            "rel_mode" => {
                self.rel_mode = RelMode::parse(value)
                    .ok_or_else(|| CliError::Usage(format!("unknown rel mode {value:?}")))?;
            }
            "alpha" => self.alpha = parse_f64(value)?,
            "rm3.d" => self.rm3.d = parse_usize(value)?,
            "rm3.t" => self.rm3.t = parse_usize(value)?,
            "rm3.mu" => self.rm3.mu = parse_f64(value)?,
            "rm3.lambda" => self.rm3.lambda = parse_f64(value)?,
            _ => {
                let (name, field) = key
                    .split_once('.')
                    .ok_or_else(|| CliError::Data(format!("unknown config key {key:?}")))?;
                let params = match name {
                    "pwnet" => &mut self.pwnet,
                    "nownet" => &mut self.nownet,
                    "fnpw" => &mut self.fnpw,
                    "kld" => &mut self.kld,
                    "kldlca" => &mut self.kldlca,
                    _ => return Err(CliError::Data(format!("unknown config key {key:?}"))),
                };
                match field {
                    "d" => params.d = parse_usize(value)?,
                    "t" => params.t = parse_usize(value)?,
                    "beta" => params.beta = parse_f64(value)?,
                    _ => return Err(CliError::Data(format!("unknown config key {key:?}"))),
                }
            }
        }
        Ok(())
    }
}
