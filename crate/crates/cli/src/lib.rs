//! Batch front end for the heckext algebras and the finite-quotient oracle:
//! multiplication tables, named verifications and oracle reports.

pub mod checks;
pub mod render;
pub mod table;

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use heckext::exec::Exec;
use heckext::Fp;

/// Output encoding for reports and tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "json" => Format::Json,
            "csv" => Format::Csv,
            "text" => Format::Text,
            _ => bail!("unknown format {s:?} (expected json, csv or text)"),
        })
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Parameters shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Residue characteristic, at least 5.
    pub p: u32,
    /// Unramified degree for oracle commands.
    pub f: usize,
    pub max_len: u64,
    /// Oracle precision m (working modulo 𝔐ᵐ).
    pub precision: u32,
    pub format: Format,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { p: 5, f: 1, max_len: 6, precision: 3, format: Format::Json, seed: 0, exec: Exec::default() }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p < 5 || !heckext::field::is_prime(self.p as u64) {
            bail!("p must be a prime at least 5, got {}", self.p);
        }
        if self.f == 0 || self.f > heckext_oracle::ring::MAX_F {
            bail!("f must lie in 1..={}, got {}", heckext_oracle::ring::MAX_F, self.f);
        }
        if self.precision == 0 {
            bail!("precision must be positive");
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    /// A stable tag identifying the configuration, used in output file names.
    pub fn tag(&self) -> String {
        format!("p{}-f{}-l{}-m{}-s{}", self.p, self.f, self.max_len, self.precision, self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trips() {
        for f in [Format::Json, Format::Csv, Format::Text] {
            assert_eq!(f.to_string().parse::<Format>().unwrap(), f);
        }
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        for bad in [
            RunConfig { p: 3, ..Default::default() },
            RunConfig { p: 9, ..Default::default() },
            RunConfig { f: 3, ..Default::default() },
            RunConfig { precision: 0, ..Default::default() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn tag_names_every_parameter() {
        let cfg = RunConfig { p: 7, f: 2, max_len: 4, precision: 5, seed: 11, ..Default::default() };
        assert_eq!(cfg.tag(), "p7-f2-l4-m5-s11");
    }
}
