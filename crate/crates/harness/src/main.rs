use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nilpotentizer::catalog::{BuiltGroup, Tag};
use nilpotentizer::store::ProfileStore;
use nilpotentizer::{BuildOptions, NilProfile, StructureProfile, DEFAULT_ORDER_CAP, DEFAULT_SEED, DEFAULT_WORK_CAP};
use nilpotentizer_harness::{load_corpus, resolve_group, verify, RunOptions, RunReport};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "nilcheck", version, about = "Nilpotentizers of finite groups and checks of their laws")]
struct Cli {
    /// Directory for cached profiles.
    #[arg(long, global = true, env = "NILPOTENTIZER_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Refuse to build groups above this order.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled associativity checks of large tables.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Order and structure profile of a group.
    Info { group: String },
    /// Nilpotentizer profile of one element.
    Nil {
        group: String,
        /// Element index, generator word (`g1 g2^-1`) or cycle notation.
        #[arg(long)]
        element: String,
    },
    /// Nilpotentizer profiles of every element.
    NilAll { group: String },
    /// Run verification suites over the corpus.
    Verify {
        /// Suite id, id prefix, or `all`.
        #[arg(long)]
        suite: String,
        /// Corpus directory (manifest or group files) instead of the built-ins.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Include the largest groups in every sweep.
        #[arg(long)]
        deep: bool,
        /// Cap on commutator evaluations per instance.
        #[arg(long, default_value_t = DEFAULT_WORK_CAP)]
        work_cap: u128,
    },
    /// Search the non-solvable corpus for elements with |nil(x)| = size and <nil(x)> maximal.
    Conjecture {
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct Info<'a> {
    name: &'a str,
    tags: Vec<String>,
    #[serde(flatten)]
    profile: StructureProfile,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let opts = BuildOptions { max_order: cli.max_order, seed: cli.seed };
    let store = cli.cache_dir.as_ref().map(ProfileStore::new);
    match &cli.command {
        Command::Info { group } => {
            let b = resolve_group(group, &opts)?;
            let profile = cached(&store, &b, "structure", "all", || b.analysis.structure_profile())?;
            let info = Info { name: &b.name, tags: tag_names(&b), profile };
            print!("{}", render_info(&info, cli.format)?);
        }
        Command::Nil { group, element } => {
            let b = resolve_group(group, &opts)?;
            let x = b.group().resolve_element(element)?;
            let profile = cached(&store, &b, "nil", &format!("x{x}"), || {
                b.analysis.nil_profile(x).expect("resolved element")
            })?;
            print!("{}", render_profiles(std::slice::from_ref(&profile), cli.format)?);
        }
        Command::NilAll { group } => {
            let b = resolve_group(group, &opts)?;
            let profiles = cached(&store, &b, "nil-all", "all", || {
                b.analysis.nil_all();
                (0..b.group().order())
                    .map(|x| b.analysis.nil_profile(x).expect("in range"))
                    .collect::<Vec<_>>()
            })?;
            print!("{}", render_profiles(&profiles, cli.format)?);
        }
        Command::Verify { suite, corpus, deep, work_cap } => {
            let groups = load_corpus(corpus.as_deref(), &opts)?;
            let run_opts = RunOptions { deep: *deep, work_cap: *work_cap, ..RunOptions::default() };
            let report = verify(&groups, suite, &run_opts, cli.seed)?;
            return emit_report(&report, cli.format);
        }
        Command::Conjecture { size, corpus } => {
            let groups = load_corpus(corpus.as_deref(), &opts)?;
            let run_opts = RunOptions { conjecture_size: *size, ..RunOptions::default() };
            let report = verify(&groups, "conjecture", &run_opts, cli.seed)?;
            return emit_report(&report, cli.format);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cached<T, F>(store: &Option<ProfileStore>, b: &BuiltGroup, kind: &str, params: &str, compute: F) -> Result<T>
where
    T: Serialize + serde::de::DeserializeOwned,
    F: FnOnce() -> T,
{
    match store {
        Some(s) => Ok(s.get_or_compute(b.group().fingerprint(), kind, params, || Ok(compute()))?),
        None => Ok(compute()),
    }
}

fn tag_names(b: &BuiltGroup) -> Vec<String> {
    b.tags.iter().map(Tag::to_string).collect()
}

fn emit_report(report: &RunReport, format: Format) -> Result<ExitCode> {
    match format {
        Format::Json => println!("{}", report.to_json()?),
        Format::Csv => print!("{}", report.to_csv()?),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(if report.has_failures() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn render_info(info: &Info, format: Format) -> Result<String> {
    let p = &info.profile;
    let rows = [
        ("name", info.name.to_string()),
        ("order", p.order.to_string()),
        ("tags", info.tags.join(" ")),
        ("abelian", p.is_abelian.to_string()),
        ("nilpotent", p.is_nilpotent.to_string()),
        ("nilpotency_class", opt(p.nilpotency_class)),
        ("solvable", p.is_solvable.to_string()),
        ("derived_length", opt(p.derived_length)),
        ("simple", p.is_simple.to_string()),
        ("center_size", p.center_size.to_string()),
        ("hypercenter_size", p.hypercenter_size.to_string()),
        ("fitting_size", p.fitting.order().to_string()),
        (
            "sylow",
            p.sylow.iter().map(|s| format!("{}:{}x{}", s.prime, s.order, s.count)).collect::<Vec<_>>().join(" "),
        ),
        ("fingerprint", p.fingerprint.clone()),
    ];
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(info)? + "\n",
        Format::Text => rows.iter().fold(String::new(), |mut out, (k, v)| {
            let _ = writeln!(out, "{k:<18} {v}");
            out
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"])?;
            for (k, v) in &rows {
                w.write_record([*k, v.as_str()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |c| c.to_string())
}

fn render_profiles(profiles: &[NilProfile], format: Format) -> Result<String> {
    let header = ["element", "label", "order", "size", "is_subgroup", "generated_order", "generated_is_maximal", "equals_centralizer", "class"];
    let row = |p: &NilProfile| {
        [
            p.element.to_string(),
            p.label.clone(),
            p.element_order.to_string(),
            p.size.to_string(),
            p.is_subgroup.to_string(),
            p.generated.order().to_string(),
            p.generated_is_maximal.to_string(),
            p.equals_centralizer.to_string(),
            opt(p.nilpotency_class),
        ]
    };
    Ok(match format {
        Format::Json if profiles.len() == 1 => serde_json::to_string_pretty(&profiles[0])? + "\n",
        Format::Json => serde_json::to_string_pretty(profiles)? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for p in profiles {
                w.write_record(row(p))?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut out = String::new();
            for p in profiles {
                let fields = row(p);
                let line: Vec<String> = header.iter().zip(&fields).map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
            out
        }
    })
}
