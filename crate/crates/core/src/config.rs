//! Run configuration with flag > file > default precedence.
//!
//! The file lives at `<root>/.chainlint` (TOML). Every key is optional; an
//! absent file means pure defaults. Unknown keys are configuration errors so
//! typos fail loudly instead of silently reverting to defaults.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::rules::{RuleConfig, RuleId};
use crate::scope::{default_blacklist, EntryPointSpec, NamePattern, ScopeMode};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Text,
    Sarif,
}

/// When the analyze exit code should signal findings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FailOn {
    /// Any unsuppressed finding.
    Any,
    /// Never (report only).
    None,
    /// Only unsuppressed findings missing from the baseline.
    NewOnly,
}

/// Fully resolved configuration for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub root: PathBuf,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    pub mode: ScopeMode,
    pub entries: EntryPointSpec,
    pub blacklist: Vec<String>,
    pub rules: RuleConfig,
    pub output: OutputFormat,
    pub baseline: Option<PathBuf>,
    pub fail_on: FailOn,
}

/// Command-line overrides (highest precedence). Empty vectors and `None`
/// mean "not given".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    /// Explicit config file path (default: `<root>/.chainlint` if present).
    pub config_path: Option<PathBuf>,
    pub mode: Option<String>,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    pub entry_methods: Vec<String>,
    pub server_suffixes: Vec<String>,
    pub extra_entries: Vec<String>,
    pub blacklist: Vec<String>,
    pub rules_enabled: Vec<String>,
    pub output: Option<String>,
    pub baseline: Option<PathBuf>,
    pub fail_on: Option<String>,
}

// --- file schema -----------------------------------------------------------

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    mode: Option<String>,
    include: Option<Vec<String>>,
    exclude: Option<Vec<String>>,
    blacklist: Option<Vec<String>>,
    entries: Option<FileEntries>,
    rules: Option<FileRules>,
    output: Option<FileOutput>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileEntries {
    methods: Option<Vec<String>>,
    server_suffixes: Option<Vec<String>>,
    extra: Option<Vec<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileRules {
    enabled: Option<Vec<String>>,
    time_deny: Option<Vec<String>>,
    unsafe_packages: Option<Vec<String>>,
    bech32_setters: Option<Vec<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileOutput {
    format: Option<String>,
    baseline: Option<String>,
    fail_on: Option<String>,
}

// --- resolution ------------------------------------------------------------

fn parse_mode(s: &str) -> Result<ScopeMode> {
    match s {
        "whitelist" => Ok(ScopeMode::Whitelist),
        "blacklist" => Ok(ScopeMode::Blacklist),
        other => Err(Error::Config(format!(
            "mode must be `whitelist` or `blacklist`, not `{other}`"
        ))),
    }
}

fn parse_output(s: &str) -> Result<OutputFormat> {
    match s {
        "text" => Ok(OutputFormat::Text),
        "sarif" => Ok(OutputFormat::Sarif),
        other => Err(Error::Config(format!(
            "output format must be `text` or `sarif`, not `{other}`"
        ))),
    }
}

fn parse_fail_on(s: &str) -> Result<FailOn> {
    match s {
        "any" => Ok(FailOn::Any),
        "none" => Ok(FailOn::None),
        "new-only" => Ok(FailOn::NewOnly),
        other => Err(Error::Config(format!(
            "fail-on must be `any`, `none`, or `new-only`, not `{other}`"
        ))),
    }
}

fn parse_rule_names(names: &[String]) -> Result<BTreeSet<RuleId>> {
    let mut out = BTreeSet::new();
    for n in names {
        let Some(r) = RuleId::from_name(n) else {
            let known: Vec<&str> = RuleId::ALL.iter().map(|r| r.name()).collect();
            return Err(Error::Config(format!(
                "unknown rule `{n}`; known rules: {}",
                known.join(", ")
            )));
        };
        out.insert(r);
    }
    Ok(out)
}

fn parse_patterns(specs: &[String]) -> Result<Vec<NamePattern>> {
    specs.iter().map(|s| NamePattern::parse(s)).collect()
}

/// Load `<root>/.chainlint` (or the explicit path) and fold in overrides.
pub fn load(root: &Path, ov: &Overrides) -> Result<RunConfig> {
    let file: FileConfig = {
        let (path, required) = match &ov.config_path {
            Some(p) => (p.clone(), true),
            None => (root.join(".chainlint"), false),
        };
        match std::fs::read_to_string(&path) {
            Ok(text) => toml::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
            Err(e) if required => {
                return Err(Error::Config(format!(
                    "cannot read config {}: {e}",
                    path.display()
                )))
            }
            Err(_) => FileConfig::default(),
        }
    };

    let mode = match (&ov.mode, &file.mode) {
        (Some(s), _) => parse_mode(s)?,
        (None, Some(s)) => parse_mode(s)?,
        (None, None) => ScopeMode::Whitelist,
    };

    // Entry-point spec. Track whether anything overrode the default: the
    // blacklist strategy has no entry points, so overriding them there is a
    // contradiction we refuse rather than ignore.
    let file_entries = file.entries.unwrap_or_default();
    let entries_overridden = !ov.entry_methods.is_empty()
        || !ov.server_suffixes.is_empty()
        || !ov.extra_entries.is_empty()
        || file_entries.methods.is_some()
        || file_entries.server_suffixes.is_some()
        || file_entries.extra.is_some();
    if mode == ScopeMode::Blacklist && entries_overridden {
        return Err(Error::Config(
            "blacklist mode does not use entry points; remove the entry-point overrides"
                .to_string(),
        ));
    }
    let default_entries = EntryPointSpec::default();
    let entries = EntryPointSpec {
        method_names: if !ov.entry_methods.is_empty() {
            parse_patterns(&ov.entry_methods)?
        } else if let Some(m) = &file_entries.methods {
            parse_patterns(m)?
        } else {
            default_entries.method_names
        },
        server_suffixes: if !ov.server_suffixes.is_empty() {
            ov.server_suffixes.clone()
        } else {
            file_entries
                .server_suffixes
                .unwrap_or(default_entries.server_suffixes)
        },
        extra_entry_names: if !ov.extra_entries.is_empty() {
            ov.extra_entries.clone()
        } else {
            file_entries.extra.unwrap_or(default_entries.extra_entry_names)
        },
    };

    let blacklist = if !ov.blacklist.is_empty() {
        ov.blacklist.clone()
    } else {
        file.blacklist.unwrap_or_else(default_blacklist)
    };

    let file_rules = file.rules.unwrap_or_default();
    let default_rules = RuleConfig::default();
    let rules = RuleConfig {
        enabled: if !ov.rules_enabled.is_empty() {
            parse_rule_names(&ov.rules_enabled)?
        } else if let Some(e) = &file_rules.enabled {
            parse_rule_names(e)?
        } else {
            default_rules.enabled
        },
        time_deny: file_rules.time_deny.unwrap_or(default_rules.time_deny),
        unsafe_packages: file_rules
            .unsafe_packages
            .unwrap_or(default_rules.unsafe_packages),
        bech32_setters: file_rules
            .bech32_setters
            .unwrap_or(default_rules.bech32_setters),
    };
    for (rule, list, key) in [
        (RuleId::SystemTime, &rules.time_deny, "rules.time_deny"),
        (
            RuleId::UnsafePackage,
            &rules.unsafe_packages,
            "rules.unsafe_packages",
        ),
        (
            RuleId::HardcodedBech32,
            &rules.bech32_setters,
            "rules.bech32_setters",
        ),
    ] {
        if rules.enabled.contains(&rule) && list.is_empty() {
            return Err(Error::Config(format!(
                "{key} must be non-empty while {} is enabled",
                rule.name()
            )));
        }
    }

    let file_output = file.output.unwrap_or_default();
    let output = match (&ov.output, &file_output.format) {
        (Some(s), _) => parse_output(s)?,
        (None, Some(s)) => parse_output(s)?,
        (None, None) => OutputFormat::Text,
    };
    let fail_on = match (&ov.fail_on, &file_output.fail_on) {
        (Some(s), _) => parse_fail_on(s)?,
        (None, Some(s)) => parse_fail_on(s)?,
        (None, None) => FailOn::Any,
    };
    // Relative baseline paths resolve against the analysis root, keeping the
    // config file meaningful from any working directory.
    let baseline = ov
        .baseline
        .clone()
        .or_else(|| file_output.baseline.as_ref().map(PathBuf::from))
        .map(|p| if p.is_absolute() { p } else { root.join(p) });
    if fail_on == FailOn::NewOnly && baseline.is_none() {
        return Err(Error::Config(
            "fail-on=new-only requires a baseline file".to_string(),
        ));
    }

    Ok(RunConfig {
        root: root.to_path_buf(),
        include: if !ov.include.is_empty() {
            ov.include.clone()
        } else {
            file.include.unwrap_or_default()
        },
        exclude: if !ov.exclude.is_empty() {
            ov.exclude.clone()
        } else {
            file.exclude.unwrap_or_default()
        },
        mode,
        entries,
        blacklist,
        rules,
        output,
        baseline,
        fail_on,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root_with(config: Option<&str>) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        if let Some(text) = config {
            std::fs::write(dir.path().join(".chainlint"), text).unwrap();
        }
        dir
    }

    #[test]
    fn defaults_without_file() {
        let dir = root_with(None);
        let cfg = load(dir.path(), &Overrides::default()).unwrap();
        assert_eq!(cfg.mode, ScopeMode::Whitelist);
        assert_eq!(cfg.rules.enabled.len(), 8);
        assert_eq!(cfg.output, OutputFormat::Text);
        assert!(cfg.baseline.is_none());
    }

    #[test]
    fn flag_beats_file_beats_default() {
        let dir = root_with(Some("mode = \"blacklist\"\n"));
        let cfg = load(dir.path(), &Overrides::default()).unwrap();
        assert_eq!(cfg.mode, ScopeMode::Blacklist);
        let cfg = load(
            dir.path(),
            &Overrides {
                mode: Some("whitelist".into()),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(cfg.mode, ScopeMode::Whitelist);
    }

    #[test]
    fn blacklist_mode_rejects_entry_overrides() {
        let dir = root_with(Some(
            "mode = \"blacklist\"\n[entries]\nextra = [\"PrepareProposal\"]\n",
        ));
        let err = load(dir.path(), &Overrides::default()).unwrap_err();
        assert!(err.is_usage());
        let dir = root_with(None);
        let err = load(
            dir.path(),
            &Overrides {
                mode: Some("blacklist".into()),
                extra_entries: vec!["X".into()],
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(err.is_usage());
    }

    #[test]
    fn new_only_requires_baseline() {
        let dir = root_with(None);
        let err = load(
            dir.path(),
            &Overrides {
                fail_on: Some("new-only".into()),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(err.is_usage());
        let ok = load(
            dir.path(),
            &Overrides {
                fail_on: Some("new-only".into()),
                baseline: Some(PathBuf::from("b.txt")),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(ok.fail_on, FailOn::NewOnly);
        assert_eq!(ok.baseline.unwrap(), dir.path().join("b.txt"));
    }

    #[test]
    fn enabled_rule_with_empty_list_is_rejected() {
        let dir = root_with(Some("[rules]\ntime_deny = []\n"));
        let err = load(dir.path(), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("time_deny"));
        // Disabling the rule makes the empty list legal.
        let dir = root_with(Some(
            "[rules]\nenabled = [\"cosmos/map-iteration\"]\ntime_deny = []\n",
        ));
        assert!(load(dir.path(), &Overrides::default()).is_ok());
    }

    #[test]
    fn unknown_keys_and_rules_fail_loudly() {
        let dir = root_with(Some("modee = \"whitelist\"\n"));
        assert!(load(dir.path(), &Overrides::default()).is_err());
        let dir = root_with(Some("[rules]\nenabled = [\"cosmos/bogus\"]\n"));
        let err = load(dir.path(), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("cosmos/bogus"));
    }

    #[test]
    fn explicit_config_path_must_exist() {
        let dir = root_with(None);
        let err = load(
            dir.path(),
            &Overrides {
                config_path: Some(dir.path().join("nope.toml")),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(err.is_usage());
    }
}
