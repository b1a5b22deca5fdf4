//! Flat `key = value` configuration files.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! line    = blank | comment | entry
//! comment = "#" any*
//! entry   = key "=" value
//! key     = [a-z0-9_-]+        (underscores and hyphens are interchangeable)
//! value   = any non-empty text, surrounding whitespace trimmed
//! ```
//!
//! Each key names a long flag of the chosen subcommand. A flag given on the
//! command line wins over the file; `true`/`false` switch boolean flags.
//! Repeating a key repeats the flag.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Command;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

pub fn parse(text: &str) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected `key = value`, got {raw:?}", i + 1);
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-') {
            bail!("config line {}: invalid key {key:?}", i + 1);
        }
        if value.is_empty() {
            bail!("config line {}: empty value for `{key}`", i + 1);
        }
        out.push(Entry { line: i + 1, key, value: value.to_string() });
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<Entry>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config file {}", path.display()))?;
    parse(&text).with_context(|| format!("in config file {}", path.display()))
}

/// Appends config entries to `argv` as flags of `subcommand`, skipping any
/// flag the user already passed.
pub fn inject(argv: &mut Vec<String>, entries: &[Entry], root: &Command, subcommand: &str) -> Result<()> {
    let Some(cmd) = root.find_subcommand(subcommand) else {
        bail!("a config file needs a subcommand");
    };
    let flags: Vec<(String, bool)> = cmd
        .get_arguments()
        .filter_map(|a| a.get_long().map(|l| (l.to_string(), !a.get_action().takes_values())))
        .collect();
    let given: Vec<String> = argv
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let mut extra = Vec::new();
    for e in entries {
        let Some((_, is_switch)) = flags.iter().find(|(l, _)| *l == e.key) else {
            bail!("config line {}: unknown key `{}` for subcommand `{subcommand}`", e.line, e.key);
        };
        if e.key == "config" {
            bail!("config line {}: `config` cannot be set from a config file", e.line);
        }
        if given.contains(&e.key) {
            continue;
        }
        if *is_switch {
            match e.value.as_str() {
                "true" => extra.push(format!("--{}", e.key)),
                "false" => {}
                v => bail!("config line {}: `{}` takes true or false, got {v:?}", e.line, e.key),
            }
        } else {
            extra.push(format!("--{}={}", e.key, e.value));
        }
    }
    argv.extend(extra);
    Ok(())
}

/// The config path and the subcommand name, read from raw arguments.
pub fn scan(argv: &[String]) -> (Option<String>, Option<String>) {
    let mut config = None;
    let mut subcommand = None;
    let mut i = 1;
    while i < argv.len() {
        let a = &argv[i];
        if a == "--config" {
            config = argv.get(i + 1).cloned();
            i += 2;
            continue;
        }
        if let Some(p) = a.strip_prefix("--config=") {
            config = Some(p.to_string());
        } else if subcommand.is_none() && !a.starts_with('-') {
            subcommand = Some(a.clone());
        }
        i += 1;
    }
    (config, subcommand)
}
