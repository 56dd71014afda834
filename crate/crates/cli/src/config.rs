//! Flat TOML configuration: each key is a flag name of the invoked
//! subcommand. Flags given on the command line take precedence.

use clap::CommandFactory;

use crate::args::Cli;

#[derive(Debug)]
pub struct ConfigError(pub String);

fn subcommand_path(argv: &[String]) -> clap::Command {
    let mut cmd = Cli::command();
    for token in argv.iter().skip(1) {
        if token.starts_with('-') {
            continue;
        }
        match cmd.find_subcommand(token) {
            Some(sub) => cmd = sub.clone(),
            None => continue,
        }
    }
    cmd
}

fn allowed_flags(argv: &[String]) -> Vec<String> {
    let mut names: Vec<String> = subcommand_path(argv)
        .get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .collect();
    names.extend(Cli::command().get_arguments().filter_map(|a| a.get_long().map(str::to_string)));
    names.retain(|n| n != "config" && n != "help" && n != "version");
    names
}

fn config_path(argv: &[String]) -> Result<Option<String>, ConfigError> {
    for (i, a) in argv.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            return Ok(Some(p.to_string()));
        }
        if a == "--config" {
            return argv
                .get(i + 1)
                .cloned()
                .map(Some)
                .ok_or_else(|| ConfigError("--config needs a path".into()));
        }
    }
    Ok(None)
}

fn given(argv: &[String], flag: &str) -> bool {
    let long = format!("--{flag}");
    argv.iter().any(|a| *a == long || a.starts_with(&format!("{long}=")))
}

fn render(key: &str, v: &toml::Value) -> Result<Option<String>, ConfigError> {
    Ok(Some(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::Boolean(true) => return Ok(None),
        toml::Value::Boolean(false) => return Ok(Some(String::new())),
        toml::Value::Array(items) => items
            .iter()
            .map(|x| match x {
                toml::Value::Integer(i) => Ok(i.to_string()),
                toml::Value::Float(f) => Ok(f.to_string()),
                toml::Value::String(s) => Ok(s.clone()),
                _ => Err(ConfigError(format!("key '{key}': arrays may hold only numbers or strings"))),
            })
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
        _ => return Err(ConfigError(format!("key '{key}': nested tables are not supported"))),
    }))
}

/// Returns `argv` with config entries appended as flags.
pub fn merge_config(argv: Vec<String>) -> Result<Vec<String>, ConfigError> {
    let Some(path) = config_path(&argv)? else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| ConfigError(format!("cannot read {path}: {e}")))?;
    let table: toml::Table = text.parse().map_err(|e| ConfigError(format!("{path}: {e}")))?;
    let allowed = allowed_flags(&argv);
    let mut out = argv.clone();
    for (key, value) in &table {
        if !allowed.contains(key) {
            return Err(ConfigError(format!("unknown config key '{key}'")));
        }
        if given(&argv, key) {
            continue;
        }
        match render(key, value)? {
            None => out.push(format!("--{key}")),
            Some(s) if s.is_empty() => {}
            Some(s) => out.push(format!("--{key}={s}")),
        }
    }
    Ok(out)
}
