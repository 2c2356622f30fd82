//! `key = value` preset files. Blank lines and `#` comments are ignored;
//! command-line flags take precedence over anything set here.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use crate::output::Format;

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Preset {
    pub tol: Option<f64>,
    pub truncation: Option<usize>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl Preset {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config file {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut preset = Preset::default();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", number + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("line {}: invalid {what} `{value}`", number + 1);
            match key {
                "tol" => preset.tol = Some(value.parse().with_context(|| bad("tol"))?),
                "K" => preset.truncation = Some(value.parse().with_context(|| bad("K"))?),
                "format" => {
                    preset.format = Some(
                        value
                            .parse()
                            .map_err(anyhow::Error::msg)
                            .with_context(|| bad("format"))?,
                    )
                }
                "output" => preset.output = Some(PathBuf::from(value)),
                other => bail!(
                    "line {}: unknown key `{other}` (expected tol, K, format, output)",
                    number + 1
                ),
            }
        }
        Ok(preset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let p = Preset::parse(
            "# presets\ntol = 1e-10\nK=64\n\nformat = csv  # trailing\noutput = out.csv\n",
        )
        .unwrap();
        assert_eq!(p.tol, Some(1e-10));
        assert_eq!(p.truncation, Some(64));
        assert_eq!(p.format, Some(Format::Csv));
        assert_eq!(p.output, Some(PathBuf::from("out.csv")));
    }

    #[test]
    fn rejects_garbage() {
        assert!(Preset::parse("tol 1e-10").is_err());
        assert!(Preset::parse("colour = red").is_err());
        assert!(Preset::parse("K = -3").is_err());
        assert!(Preset::parse("format = xml").is_err());
    }
}
