//! Report envelope: schema, command, config hash and tolerance table ahead of
//! the results, written deterministically.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use qha::io::{cell, to_json, Csv};

use crate::config::{ExperimentConfig, Format};

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    command: &'a str,
    config_hash: String,
    tolerances: &'a qha::suite::Tolerances,
    config: &'a ExperimentConfig,
    status: &'a str,
    results: &'a Value,
}

/// Output of one command before it is written.
pub struct Outcome {
    pub results: Value,
    pub table: Csv,
    pub pass: bool,
    /// Human summary lines for stdout.
    pub summary: Vec<String>,
}

pub fn render_json(cfg: &ExperimentConfig, out: &Outcome) -> String {
    let env = Envelope {
        schema: cfg.schema,
        command: &cfg.command,
        config_hash: cfg.hash(),
        tolerances: &cfg.tolerances,
        config: cfg,
        status: if out.pass { "pass" } else { "fail" },
        results: &out.results,
    };
    to_json(&env).expect("report serializes")
}

/// CSV with `#` header lines carrying the same envelope fields.
pub fn render_csv(cfg: &ExperimentConfig, table: Csv) -> String {
    let mut text = format!(
        "# schema={}\n# command={}\n# config_hash={}\n",
        cfg.schema,
        cfg.command,
        cfg.hash()
    );
    let tol = serde_json::to_value(&cfg.tolerances).expect("tolerances serialize");
    for (name, v) in tol.as_object().expect("struct").iter() {
        text.push_str(&format!(
            "# tolerance.{name}={}\n",
            cell(v.as_f64().unwrap_or(f64::NAN))
        ));
    }
    text.push_str(&table.render());
    text
}

/// Writes `<dir>/<command>.json`, plus `<dir>/<command>.csv` for the CSV format.
pub fn write(dir: &Path, cfg: &ExperimentConfig, out: Outcome) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let json_path = dir.join(format!("{}.json", cfg.command));
    std::fs::write(&json_path, render_json(cfg, &out))?;
    let mut written = vec![json_path];
    if cfg.format == Format::Csv {
        let csv_path = dir.join(format!("{}.csv", cfg.command));
        std::fs::write(&csv_path, render_csv(cfg, out.table))?;
        written.push(csv_path);
    }
    Ok(written)
}
