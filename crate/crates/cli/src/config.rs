use std::path::Path;
use std::time::Duration;

use genset_core::Limits;

use crate::args::GlobalOpts;
use crate::CliError;

/// Resolved run settings: config file values overlaid by flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub limits: Limits,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub meta: bool,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value '{value}' for {key}")))
}

fn parse_budget(key: &str, value: &str, line: usize) -> Result<u64, CliError> {
    crate::args::parse_count(value).map_err(|e| CliError::Usage(format!("config line {line}: {e} for {key}")))
}

fn apply_file(cfg: &mut RunConfig, text: &str) -> Result<(), CliError> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let (key, value, no) = (key.trim(), value.trim(), i + 1);
        let l = &mut cfg.limits;
        match key {
            "dp_n" => l.dp_n = parse_value(key, value, no)?,
            "base_n" => l.base_n = parse_value(key, value, no)?,
            "graph_m" => l.graph_m = parse_value(key, value, no)?,
            "blowup_m" => l.blowup_m = parse_value(key, value, no)?,
            "erdos_l" => l.erdos_l = parse_value(key, value, no)?,
            "work_budget" => l.work_budget = parse_budget(key, value, no)?,
            "enumeration_budget" => l.enumeration_budget = parse_budget(key, value, no)?,
            "node_budget" => l.node_budget = parse_budget(key, value, no)?,
            "time_budget" => l.time_budget = Duration::from_secs(parse_value(key, value, no)?),
            "search_n_k2" => l.search_n_k2 = parse_value(key, value, no)?,
            "search_n_other" => l.search_n_other = parse_value(key, value, no)?,
            "threads" => cfg.threads = Some(parse_value(key, value, no)?),
            "seed" => cfg.seed = Some(parse_value(key, value, no)?),
            _ => return Err(CliError::Usage(format!("config line {no}: unknown key '{key}'"))),
        }
    }
    Ok(())
}

impl RunConfig {
    pub fn resolve(opts: &GlobalOpts) -> Result<Self, CliError> {
        let mut cfg = RunConfig {
            limits: Limits::default(),
            seed: None,
            threads: None,
            meta: !opts.no_meta,
        };
        if let Some(path) = &opts.config {
            cfg.apply_path(path)?;
        }
        let l = &mut cfg.limits;
        if let Some(v) = opts.dp_n {
            l.dp_n = v;
        }
        if let Some(v) = opts.base_n {
            l.base_n = v;
        }
        if let Some(v) = opts.graph_m {
            l.graph_m = v;
        }
        if let Some(v) = opts.blowup_m {
            l.blowup_m = v;
        }
        if let Some(v) = opts.work_budget {
            l.work_budget = v;
        }
        if let Some(v) = opts.enumeration_budget {
            l.enumeration_budget = v;
        }
        if let Some(v) = opts.node_budget {
            l.node_budget = v;
        }
        if let Some(v) = opts.time_budget {
            l.time_budget = Duration::from_secs(v);
        }
        if opts.seed.is_some() {
            cfg.seed = opts.seed;
        }
        if opts.threads.is_some() {
            cfg.threads = opts.threads;
        }
        Ok(cfg)
    }

    fn apply_path(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        apply_file(self, &text)
    }

    pub fn require_seed(&self, what: &str) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::Usage(format!("{what} needs --seed")))
    }
}
