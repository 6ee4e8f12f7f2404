//! Channel and distribution files, trace CSVs.
//!
//! Channels travel as JSON objects with explicit sizes and row-major
//! probabilities, or as bare CSV matrices picked by file extension.

use ainfo_core::{AOTrace, Channel, Distribution};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;

/// On-disk channel representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelFile {
    pub x_size: usize,
    pub y_size: usize,
    pub rows: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ChannelFile {
    pub fn from_channel(channel: &Channel, name: Option<String>) -> Self {
        Self {
            x_size: channel.x_size(),
            y_size: channel.y_size(),
            rows: (0..channel.x_size()).map(|x| channel.row(x).to_vec()).collect(),
            name,
        }
    }

    pub fn into_channel(self) -> Result<Channel, String> {
        if self.rows.len() != self.x_size {
            return Err(format!(
                "channel file declares x_size={} but has {} rows",
                self.x_size,
                self.rows.len()
            ));
        }
        if self.rows.iter().any(|r| r.len() != self.y_size) {
            return Err(format!(
                "channel file declares y_size={} but a row disagrees",
                self.y_size
            ));
        }
        Channel::new(self.rows).map_err(|e| e.to_string())
    }
}

pub fn read_channel(path: &Path) -> Result<Channel, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        let rows: Vec<Vec<f64>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_float_row)
            .collect::<Result<_, _>>()?;
        if rows.is_empty() {
            return Err(format!("{}: no rows", path.display()));
        }
        Channel::new(rows).map_err(|e| format!("{}: {e}", path.display()))
    } else {
        let file: ChannelFile = serde_json::from_str(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        file.into_channel().map_err(|e| format!("{}: {e}", path.display()))
    }
}

pub fn write_channel(path: &Path, channel: &Channel, name: Option<String>) -> Result<(), String> {
    let file = ChannelFile::from_channel(channel, name);
    let mut text = serde_json::to_string_pretty(&file)
        .map_err(|e| format!("cannot encode channel: {e}"))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn parse_float_row(line: &str) -> Result<Vec<f64>, String> {
    line.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("bad number '{t}': {e}")))
        .collect()
}

/// Parses `--input`: the literal `uniform`, an inline comma list, or a
/// file holding a JSON array or one CSV line.
pub fn resolve_input(spec: &str, x_size: usize) -> Result<Distribution, String> {
    if spec == "uniform" {
        return Ok(Distribution::uniform(x_size));
    }
    if let Ok(values) = parse_float_row(spec) {
        if !values.is_empty() {
            return build_input(values, x_size);
        }
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path)
        .map_err(|e| format!("--input is neither 'uniform', a number list, nor a readable file ({e})"))?;
    let values: Vec<f64> = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?
    } else {
        parse_float_row(text.trim())?
    };
    build_input(values, x_size)
}

fn build_input(values: Vec<f64>, x_size: usize) -> Result<Distribution, String> {
    if values.len() != x_size {
        return Err(format!(
            "input distribution has {} entries but the channel has {x_size} inputs",
            values.len()
        ));
    }
    Distribution::new(values).map_err(|e| e.to_string())
}

/// Writes a trace as `k,objective,delta` rows, `delta` being the change
/// from the previous cycle (zero on the first row).
pub fn write_trace(path: &Path, trace: &AOTrace) -> Result<(), String> {
    let file = fs::File::create(path)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut out = std::io::BufWriter::new(file);
    let mut emit = || -> std::io::Result<()> {
        writeln!(out, "k,objective,delta")?;
        let mut previous = None;
        for (i, &objective) in trace.objectives.iter().enumerate() {
            let delta = previous.map_or(0.0, |p: f64| objective - p);
            writeln!(out, "{},{},{}", i + 1, objective, delta)?;
            previous = Some(objective);
        }
        out.flush()
    };
    emit().map_err(|e| format!("cannot write {}: {e}", path.display()))
}
