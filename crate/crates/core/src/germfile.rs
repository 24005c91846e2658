//! Text format for a single germ.
//!
//! ```text
//! # swallowtail
//! params = 1
//! order = 10
//! phi1 = 3*x^4 + x^2*y1
//! phi2 = -4*x^3 - 2*x*y1
//! ```
//!
//! Pedal-type input may use `np` and `p` instead of `phi1` and `phi2`; `np`
//! is the first component `n p` and `p` the second.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::germ::MapGerm;
use crate::jet::parse_jet;

pub const DEFAULT_ORDER: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct GermFileError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> GermFileError {
    GermFileError {
        line,
        column,
        message: message.into(),
    }
}

/// Which pair of keys carried the components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKeys {
    Phi,
    Pedal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermFile {
    pub keys: ComponentKeys,
    pub germ: MapGerm,
}

const KEYS: [&str; 6] = ["params", "order", "phi1", "phi2", "np", "p"];

struct Entry {
    line: usize,
    value_column: usize,
    value: String,
}

pub fn parse_germ_file(src: &str) -> Result<GermFile, GermFileError> {
    let mut entries: BTreeMap<&'static str, Entry> = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(err(line, col, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(err(line, key_col, format!("unknown key `{key}`")));
        };
        if let Some(prev) = entries.get(known) {
            return Err(err(line, key_col, format!("duplicate key `{key}` (first on line {})", prev.line)));
        }
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let value_column = content[..eq + 1 + lead].chars().count() + 1;
        entries.insert(
            known,
            Entry {
                line,
                value_column,
                value: after.trim().to_string(),
            },
        );
    }

    let uint = |key: &str, e: &Entry| -> Result<u64, GermFileError> {
        e.value
            .parse::<u64>()
            .map_err(|_| err(e.line, e.value_column, format!("`{key}` must be a non-negative integer")))
    };
    let params = match entries.get("params") {
        Some(e) => {
            let v = uint("params", e)?;
            if v == 0 || v > 64 {
                return Err(err(e.line, e.value_column, "`params` must be between 1 and 64"));
            }
            v as usize
        }
        None => return Err(err(last_line.max(1), 1, "missing key `params`")),
    };
    let order = match entries.get("order") {
        Some(e) => u32::try_from(uint("order", e)?)
            .map_err(|_| err(e.line, e.value_column, "`order` is too large"))?,
        None => DEFAULT_ORDER,
    };

    let has_phi = entries.contains_key("phi1") || entries.contains_key("phi2");
    let has_pedal = entries.contains_key("np") || entries.contains_key("p");
    let (keys, first, second) = match (has_phi, has_pedal) {
        (true, true) => {
            let e = entries.get("np").or(entries.get("p")).unwrap();
            return Err(err(e.line, 1, "use either phi1/phi2 or np/p, not both"));
        }
        (false, false) => return Err(err(last_line.max(1), 1, "missing components: phi1/phi2 or np/p")),
        (true, false) => (ComponentKeys::Phi, "phi1", "phi2"),
        (false, true) => (ComponentKeys::Pedal, "np", "p"),
    };
    let component = |key: &str| {
        let e = entries
            .get(key)
            .ok_or_else(|| err(last_line.max(1), 1, format!("missing key `{key}`")))?;
        if e.value.is_empty() {
            return Err(err(e.line, e.value_column, format!("`{key}` has no value")));
        }
        parse_jet(&e.value, params, order).map_err(|pe| err(e.line, e.value_column + pe.column - 1, pe.message))
    };
    let phi1 = component(first)?;
    let phi2 = component(second)?;
    let germ = MapGerm::new(phi1, phi2).map_err(|e| err(entries[first].line, 1, e.to_string()))?;
    Ok(GermFile { keys, germ })
}

/// Canonical text for a germ; parsing it back gives the same germ.
pub fn emit_germ_file(germ: &MapGerm) -> String {
    GermFile {
        keys: ComponentKeys::Phi,
        germ: germ.clone(),
    }
    .to_string()
}

impl fmt::Display for GermFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k1, k2) = match self.keys {
            ComponentKeys::Phi => ("phi1", "phi2"),
            ComponentKeys::Pedal => ("np", "p"),
        };
        writeln!(f, "params = {}", self.germ.num_params())?;
        writeln!(f, "order = {}", self.germ.order())?;
        writeln!(f, "{k1} = {}", self.germ.phi1())?;
        writeln!(f, "{k2} = {}", self.germ.phi2())
    }
}
