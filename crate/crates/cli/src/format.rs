//! Text and JSON encodings of set systems and hypergraphs.
//!
//! Set-system text: the first non-comment line is `n <size>`, each following
//! non-comment line is one member as space-separated labels in `1..=n`, and
//! `#` starts a comment that runs to the end of the line.

use std::collections::HashMap;
use std::fmt::Write as _;

use kneser_core::{Hypergraph, SetSystem, Subset};

use crate::error::CliError;

/// A parsed set system plus non-fatal diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub system: SetSystem,
    pub warnings: Vec<String>,
}

pub fn parse_set_system(text: &str) -> Result<Parsed, CliError> {
    let mut n = None;
    let mut members = Vec::new();
    let mut first_line: HashMap<Subset, usize> = HashMap::new();
    let mut warnings = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(size) = n else {
            let mut parts = line.split_whitespace();
            let value = match (parts.next(), parts.next(), parts.next()) {
                (Some("n"), Some(v), None) => v.parse::<usize>().ok(),
                _ => None,
            };
            let v = value.ok_or_else(|| CliError::parse(line_no, "expected header `n <size>`"))?;
            SetSystem::empty(v).map_err(|e| CliError::parse(line_no, e.to_string()))?;
            n = Some(v);
            continue;
        };
        let labels = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| CliError::parse(line_no, format!("`{t}` is not a label")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let member = Subset::new(&labels, size, members.len()).map_err(|e| CliError::parse(line_no, e.to_string()))?;
        if let Some(&earlier) = first_line.get(&member) {
            warnings.push(format!(
                "line {line_no}: duplicate of the member on line {earlier}, dropped"
            ));
            continue;
        }
        first_line.insert(member, line_no);
        members.push(member);
    }
    let n = n.ok_or_else(|| CliError::parse(text.lines().count().max(1), "missing header `n <size>`"))?;
    let system = SetSystem::from_subsets(n, members).map_err(|e| CliError::parse(1, e.to_string()))?;
    Ok(Parsed { system, warnings })
}

/// Canonical text form; parsing it gives back the same system.
pub fn serialize_set_system(f: &SetSystem) -> String {
    let mut out = format!("n {}\n", f.ground_size());
    for m in f.members() {
        let labels: Vec<String> = m.elements().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

/// Any input the commands accept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    SetSystem(SetSystem),
    Hypergraph(Hypergraph),
}

/// Reads JSON (set system or hypergraph) or the set-system text format.
pub fn parse_input(text: &str) -> Result<(Input, Vec<String>), CliError> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::parse(e.line(), e.to_string()))?;
        if value.get("vertex_count").is_some() {
            let h = serde_json::from_value(value).map_err(|e| CliError::parse(1, e.to_string()))?;
            return Ok((Input::Hypergraph(h), Vec::new()));
        }
        let f = serde_json::from_value(value).map_err(|e| CliError::parse(1, e.to_string()))?;
        return Ok((Input::SetSystem(f), Vec::new()));
    }
    let parsed = parse_set_system(text)?;
    Ok((Input::SetSystem(parsed.system), parsed.warnings))
}
