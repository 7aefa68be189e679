//! Suite runner over the group corpus, shared by the `nilcheck` binary and
//! the acceptance tests.

pub mod report;
pub mod suites;

use std::path::Path;
use std::time::Instant;

use anyhow::{Context as _, Result};
use nilpotentizer::catalog::{self, BuiltGroup};
use nilpotentizer::BuildOptions;

pub use report::{strip_timing, RunReport, SuiteReport, SuiteVerdict};
pub use suites::{registry, select, Context, RunOptions, Suite};

/// Builds the corpus from a directory, or the built-in entries whose
/// expected order fits the cap.
pub fn load_corpus(dir: Option<&Path>, opts: &BuildOptions) -> Result<Vec<BuiltGroup>> {
    match dir {
        Some(dir) => catalog::load_corpus_dir(dir, opts).with_context(|| format!("loading corpus {}", dir.display())),
        None => {
            let entries: Vec<_> = catalog::builtin_corpus()
                .into_iter()
                .filter(|e| e.order <= opts.max_order)
                .collect();
            Ok(catalog::build_all(&entries, opts)?)
        }
    }
}

/// Looks a group up by corpus name, falling back to a group file path.
pub fn resolve_group(name: &str, opts: &BuildOptions) -> Result<BuiltGroup> {
    if let Some(entry) = catalog::find_builtin(name) {
        return Ok(entry.build(opts)?);
    }
    let path = Path::new(name);
    if path.exists() {
        return Ok(catalog::ingest(path, opts)?);
    }
    anyhow::bail!("unknown group {name:?}: not a corpus name or a readable file")
}

pub fn verify(corpus: &[BuiltGroup], selector: &str, opts: &RunOptions, seed: u64) -> Result<RunReport> {
    let chosen = select(selector)?;
    let start = Instant::now();
    let ctx = Context { corpus, opts };
    let reports = suites::run_suites(&chosen, &ctx);
    Ok(RunReport::new(
        catalog::corpus_hash(corpus),
        seed,
        opts.deep,
        reports,
        start.elapsed().as_millis() as u64,
    ))
}
