//! Shared parameters, merged from flags and an optional `key=value` file.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    JsonLines,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    /// Peeling: least offending subset first. Packing: lexicographic candidates.
    Canonical,
    /// Seeded random order.
    Random,
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Order as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Known limit values of f_r(n, er-(e-1)k, e) / n^k.
    Limits,
    /// Growth exponents of f_r(n, v, e).
    Exponents,
    /// Constants of the density-increment loop.
    Constants,
}

impl FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Table as ValueEnum>::from_str(s, false)
    }
}

/// Flags accepted by every subcommand. Unset flags fall back to the config
/// file, then to the documented default.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    /// Input hypergraph in the `n r m` text format.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the resulting or witness hypergraph.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Number of vertices.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Uniformity (default 3).
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Vertex threshold of a G(v, e) constraint.
    #[arg(long, global = true)]
    pub v: Option<usize>,
    /// Number of edges in a configuration.
    #[arg(long, global = true)]
    pub e: Option<usize>,
    /// Degeneracy parameter k.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Smallest strict level t.
    #[arg(long, global = true)]
    pub t: Option<usize>,
    /// RNG seed (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Search budget in nodes, per search (default 10000000).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Output format (default text).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Candidate or removal order (default canonical).
    #[arg(long, global = true, value_enum)]
    pub order: Option<Order>,
    /// Which table `limits` prints (default limits).
    #[arg(long, global = true, value_enum)]
    pub table: Option<Table>,
    /// Solver threads (default 1). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Suppress progress messages.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// File of `key=value` lines using the long flag names; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn fill<T: FromStr>(slot: &mut Option<T>, values: &mut HashMap<String, String>, key: &str) -> Result<(), UsageError>
where
    T::Err: fmt::Display,
{
    if let Some(raw) = values.remove(key) {
        if slot.is_none() {
            *slot = Some(
                raw.parse()
                    .map_err(|e| UsageError(format!("config key {key}: {e}")))?,
            );
        }
    }
    Ok(())
}

pub fn parse_config(text: &str) -> Result<HashMap<String, String>, UsageError> {
    let mut values = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| UsageError(format!("config line {}: expected key=value", i + 1)))?;
        values.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(values)
}

impl Params {
    /// Fills unset fields from the config file, if any.
    pub fn merge_config(&mut self) -> Result<(), UsageError> {
        let Some(path) = &self.config else {
            return Ok(());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        let mut values = parse_config(&text)?;
        fill(&mut self.input, &mut values, "input")?;
        fill(&mut self.output, &mut values, "output")?;
        fill(&mut self.n, &mut values, "n")?;
        fill(&mut self.r, &mut values, "r")?;
        fill(&mut self.v, &mut values, "v")?;
        fill(&mut self.e, &mut values, "e")?;
        fill(&mut self.k, &mut values, "k")?;
        fill(&mut self.t, &mut values, "t")?;
        fill(&mut self.seed, &mut values, "seed")?;
        fill(&mut self.budget, &mut values, "budget")?;
        fill(&mut self.format, &mut values, "format")?;
        fill(&mut self.order, &mut values, "order")?;
        fill(&mut self.table, &mut values, "table")?;
        fill(&mut self.threads, &mut values, "threads")?;
        if let Some(raw) = values.remove("quiet") {
            let quiet: bool = raw.parse().map_err(|e| UsageError(format!("config key quiet: {e}")))?;
            self.quiet |= quiet;
        }
        let mut unknown: Vec<_> = values.into_keys().collect();
        if !unknown.is_empty() {
            unknown.sort();
            return Err(UsageError(format!("unknown config keys: {}", unknown.join(", "))));
        }
        Ok(())
    }

    pub fn require<T: Copy>(value: Option<T>, flag: &str) -> Result<T, UsageError> {
        value.ok_or_else(|| UsageError(format!("missing --{flag}")))
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Text)
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or(sparse_hyper::DEFAULT_BUDGET)
    }

    pub fn r(&self) -> usize {
        self.r.unwrap_or(3)
    }
}
