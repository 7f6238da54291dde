//! Command-line front end: table dumps with an on-disk cache, verification
//! suites, Verlinde tables and plumbing invariants.

mod cache;
mod output;
mod verify;

use std::io::Read;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::roots::{CatSpec, Family};

pub use cache::TableCache;
pub use verify::{run_suite, SuiteCheck, SuiteReport};

/// Version tag of every JSON document the tool emits.
pub const SCHEMA: &str = "orthocat/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "orthocat", version, about = "Exact modular data of quantum B and D categories with spinors")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Directory for cached category tables.
    #[arg(long, env = "OC_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct SpecArgs {
    /// B or D.
    #[arg(value_parser = parse_family)]
    pub family: Family,
    /// Rank.
    pub n: usize,
    /// Level.
    pub k: usize,
}

impl SpecArgs {
    pub fn spec(&self) -> Result<CatSpec, Error> {
        CatSpec::new(self.family, self.n, self.k)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump simples, dimensions, twists, S-matrix, <Omega> and F(U_+-).
    Table(SpecArgs),
    /// Run the identity checks for one category.
    Verify(SpecArgs),
    /// Ordinary and refined Verlinde dimensions.
    Verlinde {
        #[command(flatten)]
        spec: SpecArgs,
        /// Genus or inclusive range `A..B`.
        #[arg(long, default_value = "1..3", value_parser = parse_genus)]
        genus: RangeInclusive<u32>,
    },
    /// Invariants of the 3-manifold given by a plumbing graph (JSON file, `-` for stdin).
    Plumbing {
        #[command(flatten)]
        spec: SpecArgs,
        /// Graph as JSON: {"vertices": [{"id", "framing"}], "edges": [[id, id]]}.
        input: PathBuf,
    },
    /// Remove cached tables.
    CacheClear,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `"3"` or `"1..3"`, both ends inclusive.
pub fn parse_genus(s: &str) -> Result<RangeInclusive<u32>, String> {
    let bound = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad genus {t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (bound(a)?, bound(b.trim_start_matches('='))?),
        None => {
            let g = bound(s)?;
            (g, g)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("genus range {s:?} must satisfy 1 <= A <= B"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_guard_rail() => 2,
            _ => 1,
        }
    }
}

/// Parsed command plus the resolved spec, cache and output settings.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub cache: TableCache,
    pub out: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig { command: cli.command, format: cli.format, cache: TableCache::new(cli.cache_dir), out: cli.out }
    }
}

/// Runs one command; returns whether every hard check passed.
pub fn execute(config: &RunConfig) -> Result<bool, CliError> {
    let (text, ok) = match &config.command {
        Command::Table(args) => {
            let table = config.cache.load_or_build(args.spec()?)?;
            (output::table(&table, config.format)?, true)
        }
        Command::Verify(args) => {
            let table = config.cache.load_or_build(args.spec()?)?;
            let report = run_suite(&table)?;
            (output::suite(&report, config.format)?, report.passed())
        }
        Command::Verlinde { spec, genus } => {
            let table = config.cache.load_or_build(spec.spec()?)?;
            let rows = output::verlinde_rows(&table, genus.clone())?;
            let ok = rows.iter().all(|r| r.sum_check == "ok");
            (output::verlinde(&table, &rows, config.format)?, ok)
        }
        Command::Plumbing { spec, input } => {
            let spec = spec.spec()?;
            let text = read_input(input)?;
            let graph = crate::surgery::PlumbingGraph::from_json(&text)?;
            let table = config.cache.load_or_build(spec)?;
            let result = output::plumbing(&table, &graph, config.format)?;
            (result.0, result.1)
        }
        Command::CacheClear => {
            let removed = config.cache.clear()?;
            (format!("removed {removed} cached table(s)\n"), true)
        }
    };
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e))?,
        None => print!("{text}"),
    }
    Ok(ok)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::io(path, e))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&RunConfig::from(cli)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_ranges() {
        assert_eq!(parse_genus("1..3").unwrap(), 1..=3);
        assert_eq!(parse_genus("2").unwrap(), 2..=2);
        assert_eq!(parse_genus("1..=2").unwrap(), 1..=2);
        assert!(parse_genus("0..2").is_err());
        assert!(parse_genus("3..1").is_err());
        assert!(parse_genus("x").is_err());
    }

    #[test]
    fn guard_rail_exit_code() {
        assert_eq!(run(["orthocat", "verify", "B", "9", "1"]), 2);
        assert_eq!(run(["orthocat", "table", "Q", "1", "1"]), 1);
    }
}
