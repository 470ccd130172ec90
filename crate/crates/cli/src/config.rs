//! `--config` support: config entries become extra flags placed right after
//! the subcommand, so anything on the real command line overrides them.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::CommandFactory;

use crate::args::Cli;
use crate::Failure;

/// Finds the `--config` path and the subcommand position without a full
/// parse, since required flags may still be missing.
fn prescan(argv: &[OsString]) -> (Option<PathBuf>, Option<usize>) {
    let mut config = None;
    let mut sub = None;
    let mut i = 1;
    while i < argv.len() {
        let a = argv[i].to_string_lossy();
        if a == "--config" {
            config = argv.get(i + 1).map(PathBuf::from);
            i += 2;
            continue;
        }
        if let Some(v) = a.strip_prefix("--config=") {
            config = Some(PathBuf::from(v));
        } else if sub.is_none() && !a.starts_with('-') {
            sub = Some(i);
        }
        i += 1;
    }
    (config, sub)
}

fn flag_value(key: &str, v: &toml::Value) -> anyhow::Result<Option<String>> {
    Ok(Some(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(n) => n.to_string(),
        toml::Value::Float(x) => x.to_string(),
        toml::Value::Boolean(_) => return Ok(None),
        toml::Value::Array(items) => items
            .iter()
            .map(|it| match it {
                toml::Value::Integer(n) => Ok(n.to_string()),
                toml::Value::Float(x) => Ok(x.to_string()),
                toml::Value::String(s) => Ok(s.clone()),
                _ => bail!("config key '{key}': unsupported array element"),
            })
            .collect::<anyhow::Result<Vec<_>>>()?
            .join(","),
        _ => bail!("config key '{key}': unsupported value"),
    }))
}

/// Returns `argv` with config-file entries spliced in.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let (Some(path), Some(pos)) = prescan(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("cannot read config {}", path.display()))
        .map_err(Failure::io)?;
    let table: toml::Table = text
        .parse()
        .with_context(|| format!("malformed config {}", path.display()))
        .map_err(Failure::usage)?;

    let sub_name = argv[pos].to_string_lossy().into_owned();
    let cmd = Cli::command();
    let Some(sub) = cmd.find_subcommand(&sub_name) else {
        return Ok(argv);
    };
    let known = |long: &str| {
        sub.get_arguments()
            .find(|a| a.get_long() == Some(long))
            .map(|a| a.get_action().takes_values())
    };

    let mut entries: Vec<(String, &toml::Value, bool)> = Vec::new();
    for (k, v) in &table {
        match v {
            toml::Value::Table(t) if k == &sub_name => {
                entries.extend(t.iter().map(|(k, v)| (k.clone(), v, true)));
            }
            toml::Value::Table(_) => {}
            _ => entries.push((k.clone(), v, false)),
        }
    }

    let mut extra: Vec<OsString> = Vec::new();
    for (key, value, scoped) in entries {
        let long = key.replace('_', "-");
        if long == "config" {
            continue;
        }
        let Some(takes_value) = known(&long) else {
            if scoped {
                return Err(Failure::usage(anyhow::anyhow!(
                    "config key '{key}' is not a flag of '{sub_name}'"
                )));
            }
            continue;
        };
        match (
            takes_value,
            flag_value(&key, value).map_err(Failure::usage)?,
        ) {
            (true, Some(v)) => {
                extra.push(format!("--{long}").into());
                extra.push(v.into());
            }
            (false, None) => {
                if value.as_bool() == Some(true) {
                    extra.push(format!("--{long}").into());
                }
            }
            _ => {
                return Err(Failure::usage(anyhow::anyhow!(
                    "config key '{key}' has the wrong type"
                )))
            }
        }
    }

    let mut out = argv[..=pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&argv[pos + 1..]);
    Ok(out)
}
