//! `key = value` configuration files mirroring command-line flags.
//!
//! Keys are flag names without the leading dashes (`test-fraction` or
//! `test_fraction`). `true` switches a boolean flag on, `false` leaves it
//! off. Flags given on the command line take precedence.

use std::ffi::OsString;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str, origin: &Path) -> Result<Vec<ConfigEntry>> {
    let mut out: Vec<ConfigEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::parse(origin, Some(idx + 1), "expected `key = value`"));
        };
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(Error::parse(origin, Some(idx + 1), "empty key"));
        }
        if out.iter().any(|e| e.key == key) {
            return Err(Error::parse(origin, Some(idx + 1), format!("duplicate key {key:?}")));
        }
        out.push(ConfigEntry {
            key,
            value: value.trim().trim_matches('"').to_string(),
            line: idx + 1,
        });
    }
    Ok(out)
}

/// How a flag of the selected subcommand takes its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagKind {
    Switch,
    Value,
}

/// Splices config entries into `args` right after the subcommand name.
///
/// `lookup(key)` reports whether the subcommand accepts the flag and
/// `known(key)` whether any subcommand does. Keys known elsewhere are
/// skipped, unknown keys are an error. Keys for which `given(key)` holds
/// were set on the command line and are left out.
pub fn splice(
    args: &[OsString],
    subcommand_index: usize,
    entries: &[ConfigEntry],
    origin: &Path,
    lookup: impl Fn(&str) -> Option<FlagKind>,
    known: impl Fn(&str) -> bool,
    given: impl Fn(&str) -> bool,
) -> Result<Vec<OsString>> {
    let mut injected: Vec<OsString> = Vec::new();
    for e in entries {
        if given(&e.key) && lookup(&e.key).is_some() {
            continue;
        }
        match lookup(&e.key) {
            Some(FlagKind::Switch) => match e.value.as_str() {
                "true" => injected.push(format!("--{}", e.key).into()),
                "false" => {}
                other => {
                    return Err(Error::parse(
                        origin,
                        Some(e.line),
                        format!("{} expects true or false, got {other:?}", e.key),
                    ))
                }
            },
            Some(FlagKind::Value) => {
                injected.push(format!("--{}", e.key).into());
                injected.push(e.value.clone().into());
            }
            None if known(&e.key) => {}
            None => return Err(Error::parse(origin, Some(e.line), format!("unknown key {:?}", e.key))),
        }
    }
    let mut out = args[..=subcommand_index].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[subcommand_index + 1..]);
    Ok(out)
}
