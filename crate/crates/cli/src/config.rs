//! Global options, merged from flags and an optional `key=value` file.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use nbessel::{Error, ReportFormat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Text => ReportFormat::Text,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Degree or length bound.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Truncation order in q.
    #[arg(long, global = true)]
    pub q_order: Option<u16>,
    /// Truncation order in p.
    #[arg(long, global = true)]
    pub p_order: Option<u16>,
    /// Seed for random relations and random test elements.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// File of `key=value` lines using the long flag names.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Resolved options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub max_n: Option<usize>,
    pub q_order: Option<u16>,
    pub p_order: Option<u16>,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("bad value for {key}: {value:?}")))
}

impl RunConfig {
    /// Flags take precedence over the config file.
    pub fn resolve(args: &GlobalArgs) -> Result<Self> {
        let mut merged = args.clone();
        if let Some(path) = &args.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            apply_file(&mut merged, &text, path)?;
        }
        Ok(RunConfig {
            max_n: merged.max_n,
            q_order: merged.q_order,
            p_order: merged.p_order,
            seed: merged.seed.unwrap_or(42),
            format: merged.format.unwrap_or(Format::Text),
            out: merged.out,
        })
    }
}

fn apply_file(args: &mut GlobalArgs, text: &str, path: &Path) -> Result<()> {
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "{}:{}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim().trim_start_matches("--"), value.trim());
        match key {
            "max-n" => {
                args.max_n.get_or_insert(parse_value(key, value)?);
            }
            "q-order" => {
                args.q_order.get_or_insert(parse_value(key, value)?);
            }
            "p-order" => {
                args.p_order.get_or_insert(parse_value(key, value)?);
            }
            "seed" => {
                args.seed.get_or_insert(parse_value(key, value)?);
            }
            "format" => {
                let f = Format::from_str(value, true)
                    .map_err(|_| Error::Parse(format!("bad value for format: {value:?}")))?;
                args.format.get_or_insert(f);
            }
            "out" => {
                args.out.get_or_insert(PathBuf::from(value));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "{}:{}: unknown key {key:?}",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let mut args = GlobalArgs {
            seed: Some(7),
            ..GlobalArgs::default()
        };
        apply_file(
            &mut args,
            "# comment\nseed = 9\nmax-n=5\nformat=json\n",
            Path::new("f"),
        )
        .unwrap();
        assert_eq!(args.seed, Some(7));
        assert_eq!(args.max_n, Some(5));
        assert_eq!(args.format, Some(Format::Json));
    }

    #[test]
    fn unknown_key_rejected() {
        let mut args = GlobalArgs::default();
        let err = apply_file(&mut args, "colour=red", Path::new("f")).unwrap_err();
        assert_eq!(err.kind(), "parse");
    }
}
