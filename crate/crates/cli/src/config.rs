//! Experiment configuration: JSON with `"schema": 1`, every other field optional.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qha::quantize::OperatorSpec;
use qha::suite::Tolerances;
use qha::{make_grid, AtomKind, MaskKind};

pub const SCHEMA: u32 = 1;

/// Config as written by the user; absent fields take per-command defaults.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema: u32,
    pub ns: Option<Vec<usize>>,
    pub masks: Option<Vec<String>>,
    pub windows: Option<Vec<String>>,
    pub signals: Option<Vec<String>>,
    pub quantizers: Option<Vec<String>>,
    /// `A` as `[re, im]`.
    pub a: Option<[f64; 2]>,
    pub tolerances: Option<Tolerances>,
    pub seed: Option<u64>,
    pub eps: Option<f64>,
    pub r_freq: Option<f64>,
    pub bj_nodes: Option<usize>,
    pub out: Option<String>,
    pub format: Option<String>,
}

/// Fully resolved configuration of one run; this is what gets hashed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub command: String,
    pub ns: Vec<usize>,
    pub masks: Vec<String>,
    pub windows: Vec<String>,
    pub signals: Vec<String>,
    pub quantizers: Vec<String>,
    pub a: [f64; 2],
    pub tolerances: Tolerances,
    pub seed: u64,
    pub eps: f64,
    pub r_freq: f64,
    pub bj_nodes: usize,
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (expected json or csv)")),
        }
    }
}

/// Command-line overrides applied on top of the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub ns: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

struct Defaults {
    ns: &'static [usize],
    masks: &'static [&'static str],
}

fn defaults(command: &str) -> Defaults {
    match command {
        "verify" => Defaults {
            ns: &[8, 16],
            masks: &[],
        },
        "tauber" => Defaults {
            ns: &[16, 32],
            masks: &["chirp"],
        },
        "quantize" => Defaults {
            ns: &[16, 32],
            masks: &["gaussian_env", "indicator_disk:1"],
        },
        "iso" => Defaults {
            ns: &[32, 48, 64],
            masks: &["indicator_disk_complement:1"],
        },
        "fg" => Defaults {
            ns: &[32],
            masks: &["chirp"],
        },
        "berezin" => Defaults {
            ns: &[16],
            masks: &["gaussian_env"],
        },
        _ => Defaults {
            ns: &[16],
            masks: &[],
        },
    }
}

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn read_raw(path: &Path) -> Result<RawConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_raw(&text)
}

pub fn parse_raw(text: &str) -> Result<RawConfig, String> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| format!("malformed config: {e}"))?;
    if raw.schema != SCHEMA {
        return Err(format!(
            "unsupported config schema {} (expected {SCHEMA})",
            raw.schema
        ));
    }
    Ok(raw)
}

impl ExperimentConfig {
    /// Merges file values, overrides and command defaults, then validates.
    pub fn resolve(command: &str, raw: Option<RawConfig>, ov: &Overrides) -> Result<Self, String> {
        let raw = raw.unwrap_or(RawConfig {
            schema: SCHEMA,
            ..RawConfig::default()
        });
        let d = defaults(command);
        let format = match (ov.format, raw.format.as_deref()) {
            (Some(f), _) => f,
            (None, Some(s)) => s.parse()?,
            (None, None) => Format::Json,
        };
        let cfg = ExperimentConfig {
            schema: SCHEMA,
            command: command.to_string(),
            ns: ov.ns.clone().or(raw.ns).unwrap_or_else(|| d.ns.to_vec()),
            masks: raw.masks.unwrap_or_else(|| owned(d.masks)),
            windows: raw.windows.unwrap_or_else(|| owned(&["gaussian"])),
            signals: raw
                .signals
                .unwrap_or_else(|| owned(&["gaussian", "hermite:1"])),
            quantizers: raw
                .quantizers
                .unwrap_or_else(|| owned(&["tau:0.3", "born_jordan", "tf_shift:0.5,0.25"])),
            a: raw.a.unwrap_or([0.0, 0.0]),
            tolerances: raw.tolerances.unwrap_or_default(),
            seed: ov.seed.or(raw.seed).unwrap_or(1),
            eps: raw.eps.unwrap_or(0.01),
            r_freq: raw.r_freq.unwrap_or(1.0),
            bj_nodes: raw.bj_nodes.unwrap_or(qha::quantize::BJ_NODES),
            format,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        if self.ns.is_empty() {
            return Err("no grid sizes given".into());
        }
        for &n in &self.ns {
            make_grid(n).map_err(|e| e.to_string())?;
        }
        self.tolerances.validate().map_err(|e| e.to_string())?;
        self.mask_kinds()?;
        self.window_kinds()?;
        self.signal_kinds()?;
        self.operator_specs()?;
        let valid = self.eps > 0.0 && self.r_freq >= 0.0 && self.a.iter().all(|v| v.is_finite());
        if !valid {
            return Err("eps must be positive, r_freq non-negative and A finite".into());
        }
        if self.bj_nodes == 0 {
            return Err("bj_nodes must be positive".into());
        }
        Ok(())
    }

    pub fn mask_kinds(&self) -> Result<Vec<MaskKind>, String> {
        self.masks
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|e: qha::Error| format!("mask `{s}`: {e}"))
            })
            .collect()
    }

    pub fn window_kinds(&self) -> Result<Vec<AtomKind>, String> {
        self.windows
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|e: qha::Error| format!("window `{s}`: {e}"))
            })
            .collect()
    }

    pub fn signal_kinds(&self) -> Result<Vec<AtomKind>, String> {
        self.signals
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|e: qha::Error| format!("signal `{s}`: {e}"))
            })
            .collect()
    }

    pub fn operator_specs(&self) -> Result<Vec<OperatorSpec>, String> {
        self.quantizers
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|e: qha::Error| format!("quantizer `{s}`: {e}"))
            })
            .collect()
    }

    /// SHA-256 of the canonical JSON of the resolved config.
    pub fn hash(&self) -> String {
        let text = qha::io::to_json(self).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_is_required_and_checked() {
        assert!(parse_raw("{}").is_err());
        assert!(parse_raw(r#"{"schema": 2}"#).is_err());
        assert!(parse_raw(r#"{"schema": 1, "bogus": 3}"#).is_err());
        assert!(parse_raw(r#"{"schema": 1, "ns": [8]}"#).is_ok());
    }

    #[test]
    fn overrides_and_defaults() {
        let raw = parse_raw(r#"{"schema": 1, "ns": [8], "seed": 4, "format": "csv"}"#).unwrap();
        let ov = Overrides {
            ns: Some(vec![16]),
            ..Overrides::default()
        };
        let cfg = ExperimentConfig::resolve("tauber", Some(raw), &ov).unwrap();
        assert_eq!(cfg.ns, vec![16]);
        assert_eq!(cfg.seed, 4);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.masks, vec!["chirp"]);
        let iso = ExperimentConfig::resolve("iso", None, &Overrides::default()).unwrap();
        assert_eq!(iso.ns, vec![32, 48, 64]);
    }

    #[test]
    fn invalid_values_are_rejected() {
        let bad = |text: &str| {
            ExperimentConfig::resolve(
                "tauber",
                Some(parse_raw(text).unwrap()),
                &Overrides::default(),
            )
        };
        assert!(bad(r#"{"schema": 1, "ns": [9]}"#).is_err());
        assert!(bad(r#"{"schema": 1, "masks": ["nope"]}"#).is_err());
        assert!(bad(r#"{"schema": 1, "tolerances": {"identity": -1}}"#).is_err());
        assert!(bad(r#"{"schema": 1, "quantizers": ["tau:1"]}"#).is_err());
        assert!(bad(r#"{"schema": 1, "format": "xml"}"#).is_err());
    }

    #[test]
    fn hash_depends_on_content_only() {
        let a = ExperimentConfig::resolve("verify", None, &Overrides::default()).unwrap();
        let b = ExperimentConfig::resolve("verify", None, &Overrides::default()).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
        let c = ExperimentConfig::resolve(
            "verify",
            None,
            &Overrides {
                seed: Some(2),
                ..Overrides::default()
            },
        )
        .unwrap();
        assert_ne!(a.hash(), c.hash());
    }
}
