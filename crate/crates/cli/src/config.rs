//! Runtime configuration: flags override the `NLKG_CONFIG` key=value file,
//! which overrides built-in defaults.

use std::path::{Path, PathBuf};

use crate::CliError;

pub const CONFIG_ENV: &str = "NLKG_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub output_dir: PathBuf,
    /// Significant digits in CSV output, 6..=17. 17 means shortest round-trip.
    pub csv_precision: usize,
    pub default_tol: f64,
    pub grid_points: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            output_dir: PathBuf::from("."),
            csv_precision: 17,
            default_tol: 1e-12,
            grid_points: 200,
        }
    }
}

impl CliConfig {
    /// Defaults, overlaid with the file named by `NLKG_CONFIG` if set.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Self::from_file(Path::new(&path)),
            None => Ok(Self::default()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                CliError::Usage(format!(
                    "config line {}: invalid {what}: {value}",
                    lineno + 1
                ))
            };
            match key {
                "output_dir" => cfg.output_dir = PathBuf::from(value),
                "csv_precision" => cfg.csv_precision = value.parse().map_err(|_| bad(key))?,
                "default_tol" => cfg.default_tol = value.parse().map_err(|_| bad(key))?,
                "grid_points" => cfg.grid_points = value.parse().map_err(|_| bad(key))?,
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {}: unknown key {other}",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(6..=17).contains(&self.csv_precision) {
            return Err(CliError::Usage(format!(
                "csv_precision must be in 6..=17, got {}",
                self.csv_precision
            )));
        }
        if !(self.default_tol > 0.0) {
            return Err(CliError::Usage("default_tol must be > 0".into()));
        }
        if self.grid_points < 1 {
            return Err(CliError::Usage("grid_points must be >= 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides_defaults() {
        let cfg =
            CliConfig::parse("# comment\noutput_dir = out\ncsv_precision=12\n\ngrid_points = 50\n")
                .unwrap();
        assert_eq!(cfg.output_dir, PathBuf::from("out"));
        assert_eq!(cfg.csv_precision, 12);
        assert_eq!(cfg.grid_points, 50);
        assert_eq!(cfg.default_tol, 1e-12);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(CliConfig::parse("csv_precision = 20").is_err());
        assert!(CliConfig::parse("colour = red").is_err());
        assert!(CliConfig::parse("grid_points").is_err());
        assert!(CliConfig::parse("default_tol = -1").is_err());
    }
}
