//! `--config FILE`: plain `key = value` lines, `#` comments. Each key names
//! a long flag of the chosen subcommand (or a global flag) and is appended
//! to the arguments unless the command line already sets it.

use std::ffi::OsString;
use std::path::Path;

use clap::{ArgAction, Command};

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", no + 1))?;
        out.push((k.trim().to_owned(), v.trim().to_owned()));
    }
    Ok(out)
}

fn given(args: &[OsString], long: &str) -> bool {
    let flag = format!("--{long}");
    let prefix = format!("--{long}=");
    args.iter().map(|a| a.to_string_lossy()).any(|a| a == flag || a.starts_with(&prefix))
}

/// Returns `args` with config entries appended, or a usage message.
pub fn inject(args: Vec<OsString>, cmd: &Command) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let entries = parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;

    let sub = args.iter().skip(1).filter_map(|a| a.to_str()).find_map(|a| cmd.find_subcommand(a));
    let mut out = args.clone();
    for (key, value) in entries {
        let arg = sub
            .and_then(|s| s.get_arguments().find(|a| a.get_long() == Some(key.as_str())))
            .or_else(|| cmd.get_arguments().find(|a| a.get_long() == Some(key.as_str())))
            .ok_or_else(|| format!("{}: unknown key {key:?}", path.display()))?;
        if key == "config" || given(&args, &key) {
            continue;
        }
        match arg.get_action() {
            ArgAction::SetTrue => match value.as_str() {
                "true" => out.push(format!("--{key}").into()),
                "false" => {}
                _ => return Err(format!("{}: {key} expects true or false", path.display())),
            },
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let kv = parse("# c\n\nk = 5\n x=y \n").unwrap();
        assert_eq!(kv, [("k".into(), "5".into()), ("x".into(), "y".into())]);
        assert!(parse("novalue\n").is_err());
    }
}
