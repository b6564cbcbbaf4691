//! chainlint: a determinism linter for Cosmos-SDK-style Go chains.
//!
//! Exit codes: 0 no actionable findings, 1 actionable findings,
//! 2 usage/config error, 3 fatal analysis error.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chainlint_core::callgraph::{build_call_graph, dump_graph};
use chainlint_core::config::{load, FailOn, Overrides, OutputFormat, RunConfig};
use chainlint_core::driver::{analyze, Analysis};
use chainlint_core::metrics::{
    compare, compute_metrics, render_comparison, render_metrics, LabelSet, LabeledItem,
    MetricsReport,
};
use chainlint_core::report::{emit_sarif, emit_text, load_baseline, write_baseline};
use chainlint_core::scope::{compute_scope, dump_scope, find_entry_points, legacy_blacklist_scope};
use chainlint_core::source::{bind_types, parse_tree};
use chainlint_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "chainlint",
    version,
    about = "Static analysis for consensus determinism in Cosmos-SDK-style chains"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a Go source tree and report determinism findings.
    Analyze(AnalyzeArgs),
    /// Print the consensus-critical function set (or the call graph).
    Scope(ScopeArgs),
    /// Score a findings file against a manual label file.
    Eval(EvalArgs),
    /// Diff two metrics reports produced by `eval --json`.
    Compare(CompareArgs),
    /// Baseline management.
    Baseline(BaselineCmd),
}

/// Flags shared by every command that walks a source tree.
#[derive(Args)]
struct TreeArgs {
    /// Root of the Go source tree.
    #[arg(default_value = ".")]
    root: PathBuf,
    /// Config file (default: `<root>/.chainlint` when present).
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Scope strategy: whitelist or blacklist.
    #[arg(long, value_name = "MODE")]
    mode: Option<String>,
    /// Include glob, relative to the root (repeatable; default `**/*.go`).
    #[arg(long, value_name = "GLOB")]
    include: Vec<String>,
    /// Exclude glob (repeatable).
    #[arg(long, value_name = "GLOB")]
    exclude: Vec<String>,
    /// Enable only these rules, by name (repeatable).
    #[arg(long = "rule", value_name = "RULE")]
    rules: Vec<String>,
    /// Block-lifecycle entry method name (repeatable; default BeginBlock and
    /// EndBlock).
    #[arg(long = "entry-method", value_name = "NAME")]
    entry_methods: Vec<String>,
    /// Message-server interface name suffix (repeatable; default MsgServer).
    #[arg(long = "server-suffix", value_name = "SUFFIX")]
    server_suffixes: Vec<String>,
    /// Additional entry point name, `*` wildcards allowed (repeatable).
    #[arg(long = "extra-entry", value_name = "NAME")]
    extra_entries: Vec<String>,
    /// Package-name pattern to exclude in blacklist mode (repeatable).
    #[arg(long, value_name = "PATTERN")]
    blacklist: Vec<String>,
}

impl TreeArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            config_path: self.config.clone(),
            mode: self.mode.clone(),
            include: self.include.clone(),
            exclude: self.exclude.clone(),
            entry_methods: self.entry_methods.clone(),
            server_suffixes: self.server_suffixes.clone(),
            extra_entries: self.extra_entries.clone(),
            blacklist: self.blacklist.clone(),
            rules_enabled: self.rules.clone(),
            output: None,
            baseline: None,
            fail_on: None,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    tree: TreeArgs,
    /// Output format: text or sarif.
    #[arg(long, value_name = "FORMAT")]
    output: Option<String>,
    /// Write results to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Baseline file of acknowledged fingerprints.
    #[arg(long, value_name = "FILE")]
    baseline: Option<PathBuf>,
    /// Failure policy: any, none, or new-only.
    #[arg(long = "fail-on", value_name = "POLICY")]
    fail_on: Option<String>,
}

#[derive(Args)]
struct ScopeArgs {
    #[command(flatten)]
    tree: TreeArgs,
    /// Print the resolved call graph edge list instead of the scope.
    #[arg(long = "dump-graph")]
    dump_graph: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Findings file in the analyzer's text output format.
    #[arg(long, value_name = "FILE")]
    findings: PathBuf,
    /// Label file: `fingerprint,label[,canonical]` lines under a header.
    #[arg(long, value_name = "FILE")]
    labels: PathBuf,
    /// Group rows by `rule` or `project` (first path segment).
    #[arg(long = "group-by", value_name = "KEY", default_value = "rule")]
    group_by: String,
    /// Exclude unlabeled findings instead of failing on them.
    #[arg(long = "allow-unlabeled")]
    allow_unlabeled: bool,
    /// Emit the machine-readable report instead of the text table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// First (earlier) report, as written by `eval --json`.
    first: PathBuf,
    /// Second (later) report.
    second: PathBuf,
    /// Report a 100% precision gain for groups the second run cleared
    /// entirely and the first run filled with false positives only.
    #[arg(long = "fp-only-gain")]
    fp_only_gain: bool,
    /// Emit the machine-readable report instead of the text table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BaselineCmd {
    #[command(subcommand)]
    cmd: BaselineSub,
}

#[derive(Subcommand)]
enum BaselineSub {
    /// Analyze the tree and freeze every current fingerprint.
    Write(BaselineWriteArgs),
}

#[derive(Args)]
struct BaselineWriteArgs {
    #[command(flatten)]
    tree: TreeArgs,
    /// Where to write the baseline (default: the configured baseline path).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.cmd {
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Scope(a) => cmd_scope(a),
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Compare(a) => cmd_compare(a),
        Cmd::Baseline(b) => match b.cmd {
            BaselineSub::Write(a) => cmd_baseline_write(a),
        },
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("chainlint: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 3 })
        }
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8> {
    let mut overrides = args.tree.overrides();
    overrides.output = args.output.clone();
    overrides.baseline = args.baseline.clone();
    overrides.fail_on = args.fail_on.clone();
    let cfg = load(&args.tree.root, &overrides)?;

    let analysis = analyze(&cfg)?;
    report_diagnostics(&analysis);

    let rendered = match cfg.output {
        OutputFormat::Text => emit_text(&analysis.findings),
        OutputFormat::Sarif => emit_sarif(&analysis.findings),
    };
    match &args.out {
        Some(p) => {
            std::fs::write(p, rendered).map_err(|e| Error::io(p.display().to_string(), e))?
        }
        None => print!("{rendered}"),
    }

    let unsuppressed: Vec<&str> = analysis
        .unsuppressed()
        .map(|f| f.fingerprint.as_str())
        .collect();
    eprintln!(
        "chainlint: {} finding(s), {} suppressed",
        analysis.findings.len(),
        analysis.findings.len() - unsuppressed.len()
    );

    let actionable = match cfg.fail_on {
        FailOn::None => false,
        FailOn::Any => !unsuppressed.is_empty(),
        FailOn::NewOnly => {
            let new = new_against_baseline(&cfg, &unsuppressed)?;
            !new.is_empty()
        }
    };
    Ok(if actionable { 1 } else { 0 })
}

/// Fingerprints of unsuppressed findings absent from the configured baseline.
/// The fixed-entry count goes to stderr as a courtesy.
fn new_against_baseline<'a>(cfg: &RunConfig, unsuppressed: &[&'a str]) -> Result<Vec<&'a str>> {
    let path = cfg
        .baseline
        .as_ref()
        .expect("config loading validated new-only implies baseline");
    let known = load_baseline(path)?;
    let current: BTreeSet<&str> = unsuppressed.iter().copied().collect();
    let new: Vec<&str> = unsuppressed
        .iter()
        .copied()
        .filter(|fp| !known.contains(*fp))
        .collect();
    let fixed = known.iter().filter(|fp| !current.contains(fp.as_str())).count();
    eprintln!(
        "chainlint: baseline {}: {} new, {} fixed",
        path.display(),
        new.len(),
        fixed
    );
    Ok(new)
}

fn report_diagnostics(analysis: &Analysis) {
    for d in &analysis.model.tree.diagnostics {
        eprintln!("chainlint: {}:{}:{}: {}", d.path, d.line, d.col, d.message);
    }
    for d in &analysis.directive_diagnostics {
        eprintln!("chainlint: {}:{}: {}", d.path, d.line, d.message);
    }
    let unresolved = analysis.graph.unresolved().count();
    if unresolved > 0 {
        eprintln!(
            "chainlint: {unresolved} call site(s) could not be resolved and are treated as leaf calls"
        );
    }
}

// ---------------------------------------------------------------------------
// scope
// ---------------------------------------------------------------------------

fn cmd_scope(args: ScopeArgs) -> Result<u8> {
    let cfg = load(&args.tree.root, &args.tree.overrides())?;
    let tree = parse_tree(&cfg.root, &cfg.include, &cfg.exclude)?;
    let model = bind_types(tree);
    let graph = build_call_graph(&model);
    if args.dump_graph {
        print!("{}", dump_graph(&model, &graph));
        return Ok(0);
    }
    let scope = match cfg.mode {
        chainlint_core::scope::ScopeMode::Whitelist => {
            compute_scope(&graph, &find_entry_points(&model, &cfg.entries))?
        }
        chainlint_core::scope::ScopeMode::Blacklist => {
            legacy_blacklist_scope(&model, &cfg.blacklist)
        }
    };
    print!("{}", dump_scope(&model, &scope));
    Ok(0)
}

// ---------------------------------------------------------------------------
// eval / compare
// ---------------------------------------------------------------------------

/// Parse the text-format findings file into evaluation items.
///
/// Lines are `path:line:col<TAB>rule<TAB>message<TAB>fingerprint`; `#`
/// comments and blank lines are skipped. The `project` group is the first
/// path segment, matching a layout of one subject project per directory.
fn parse_findings_file(path: &PathBuf, group_by: &str) -> Result<Vec<LabeledItem>> {
    if group_by != "rule" && group_by != "project" {
        return Err(Error::Config(format!(
            "unknown group key `{group_by}` (expected `rule` or `project`)"
        )));
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut items = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: &str| Error::BadRecord {
            path: path.display().to_string(),
            line: i + 1,
            message: message.to_string(),
        };
        let cols: Vec<&str> = line.split('\t').collect();
        let [location, rule, _message, fingerprint] = cols[..] else {
            return Err(bad("expected 4 tab-separated columns"));
        };
        if fingerprint.is_empty() {
            return Err(bad("empty fingerprint"));
        }
        let group = match group_by {
            "rule" => rule.to_string(),
            _ => {
                let file = location.split(':').next().unwrap_or(location);
                file.split('/').next().unwrap_or(file).to_string()
            }
        };
        items.push(LabeledItem {
            group,
            fingerprint: fingerprint.to_string(),
        });
    }
    Ok(items)
}

fn cmd_eval(args: EvalArgs) -> Result<u8> {
    let items = parse_findings_file(&args.findings, &args.group_by)?;
    let labels_text = std::fs::read_to_string(&args.labels)
        .map_err(|e| Error::io(args.labels.display().to_string(), e))?;
    let labels = LabelSet::parse(&labels_text)?;
    let report = compute_metrics(&items, &labels, &args.group_by, args.allow_unlabeled)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", render_metrics(&report));
    }
    Ok(0)
}

fn read_report(path: &PathBuf) -> Result<MetricsReport> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::Analysis(format!(
            "cannot parse metrics report {}: {e}",
            path.display()
        ))
    })
}

fn cmd_compare(args: CompareArgs) -> Result<u8> {
    let first = read_report(&args.first)?;
    let second = read_report(&args.second)?;
    let report = compare(&first, &second, args.fp_only_gain)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", render_comparison(&report));
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// baseline write
// ---------------------------------------------------------------------------

fn cmd_baseline_write(args: BaselineWriteArgs) -> Result<u8> {
    let cfg = load(&args.tree.root, &args.tree.overrides())?;
    let path = args
        .out
        .clone()
        .or_else(|| cfg.baseline.clone())
        .ok_or_else(|| {
            Error::Config("baseline write needs --out or a configured baseline path".to_string())
        })?;
    let analysis = analyze(&cfg)?;
    report_diagnostics(&analysis);
    let text = write_baseline(&analysis.findings);
    std::fs::write(&path, &text).map_err(|e| Error::io(path.display().to_string(), e))?;
    eprintln!(
        "chainlint: wrote {} fingerprint(s) to {}",
        analysis.findings.len(),
        path.display()
    );
    Ok(0)
}
