//! Command-line front end for the annular Khovanov computations.
//!
//! [`run`] takes a parsed [`RunConfig`] and returns the rendered report
//! together with whether every check passed. The binary only parses flags,
//! prints, and picks the exit status.

mod cache;
mod render;

pub use cache::Cache;

use std::path::PathBuf;

use anyhow::{Context, Result};
use bimodule::BraidWord;
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use skh::{Route, Skh};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// SKh of the closure in the next-to-top winding grading.
    Skh,
    /// Tate spectral sequence from the squared closure to the closure.
    Pages,
    /// Mod-2 comparison of the Euler characteristics of both closures.
    Decat,
    /// Replay of the computation that the class of 1 survives.
    PiFormal,
    /// Algebra bases and complexes with gradings and differentials.
    Dump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Koszul,
    Free,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Auto => Route::Auto,
            RouteArg::Koszul => Route::Koszul,
            RouteArg::Free => Route::Free,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpLevel {
    /// Bases of `A_n` and `B_n`.
    Algebra,
    /// Also the Hochschild complex of the mirrored braid bimodule.
    Complex,
    /// Also the doubled complex, i.e. the Tate `E⁰` column.
    Doubled,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "skh-cli",
    version,
    about = "Sutured annular Khovanov homology of braid closures"
)]
pub struct RunConfig {
    /// Number of strands.
    #[arg(long, default_value_t = 2)]
    pub strands: usize,
    /// Braid word such as "s1 S2 s1" (s = positive, S = negative crossing).
    /// Repeat the flag for a batch.
    #[arg(long = "braid", allow_hyphen_values = true)]
    pub braids: Vec<String>,
    #[arg(long, value_enum, default_value_t = Mode::Skh)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Where to cache constructed complexes.
    #[arg(long, env = "SKH_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Page cap for the spectral sequence (default: quantum spread + 2).
    #[arg(long)]
    pub max_pages: Option<usize>,
    /// Worker threads for a batch of braids.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = DumpLevel::Complex)]
    pub dump_level: DumpLevel,
    /// Algebra index for pi-formal (default: strands − 1).
    #[arg(long)]
    pub n: Option<usize>,
    /// Step cap for pi-formal.
    #[arg(long, default_value_t = 16)]
    pub max_iter: usize,
    /// How braid bimodules are modelled.
    #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
    pub route: RouteArg,
}

impl RunConfig {
    /// A config with every option at its default.
    pub fn new(strands: usize, braid: &str, mode: Mode) -> Self {
        let mut cfg = Self::parse_from(["skh-cli"]);
        cfg.strands = strands;
        cfg.braids = vec![braid.to_string()];
        cfg.mode = mode;
        cfg
    }
}

/// The rendered report of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    /// False if any check failed. The output then says which.
    pub passed: bool,
    pub warnings: Vec<String>,
}

/// One word's contribution to a report.
pub(crate) struct Section {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

pub(crate) struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub cache: Option<&'a Cache>,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let cache = cfg.cache_dir.as_ref().map(Cache::new).transpose()?;
    let ctx = Ctx {
        cfg,
        cache: cache.as_ref(),
    };
    if cfg.mode == Mode::PiFormal {
        let n = match cfg.n {
            Some(n) => n,
            None => cfg.strands.checked_sub(1).context("--strands must be at least 2")?,
        };
        let s = render::pi_formal(n, cfg.max_iter)?;
        return Ok(finish(cfg, vec![s], Vec::new()));
    }
    if cfg.mode == Mode::Dump && cfg.dump_level == DumpLevel::Algebra {
        let s = render::dump_algebra(cfg.strands)?;
        return Ok(finish(cfg, vec![s], Vec::new()));
    }
    let words = if cfg.braids.is_empty() {
        vec![String::new()]
    } else {
        cfg.braids.clone()
    };
    let words: Vec<BraidWord> = words
        .iter()
        .map(|s| BraidWord::parse(s, cfg.strands).with_context(|| format!("parsing braid {s:?}")))
        .collect::<Result<_>>()?;
    let one = |w: &BraidWord| -> Result<(Section, Vec<String>)> {
        let mut engine = Skh::new(cfg.strands)?;
        let mut warnings = Vec::new();
        let s = render::word(&ctx, &mut engine, w, &mut warnings)?;
        Ok((s, warnings))
    };
    let results: Vec<(Section, Vec<String>)> = if cfg.jobs > 1 && words.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
        pool.install(|| words.par_iter().map(one).collect::<Result<_>>())?
    } else {
        words.iter().map(one).collect::<Result<_>>()?
    };
    let (sections, warnings): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok(finish(cfg, sections, warnings.concat()))
}

fn finish(cfg: &RunConfig, sections: Vec<Section>, warnings: Vec<String>) -> Outcome {
    let passed = sections.iter().all(|s| s.passed);
    let output = match cfg.output {
        OutputFormat::Json => {
            let mut doc = if sections.len() == 1 {
                sections.into_iter().next().map(|s| s.json).unwrap_or_default()
            } else {
                json!({ "results": sections.into_iter().map(|s| s.json).collect::<Vec<_>>() })
            };
            if let Value::Object(m) = &mut doc {
                m.insert("schema".into(), json!(1));
            }
            serde_json::to_string_pretty(&doc).expect("JSON values always serialize") + "\n"
        }
        OutputFormat::Text => sections.into_iter().map(|s| s.text).collect::<Vec<_>>().join("\n"),
    };
    Outcome {
        output,
        passed,
        warnings,
    }
}
