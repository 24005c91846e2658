use std::fmt::Write as _;

use pedalfront::classify::{classify_legendrian, classify_pedal_type, ClassificationReport};
use pedalfront::germ::MapGerm;

use crate::{Failure, Mode};

pub const BLOCK_BEGIN: &str = "--- report (json) ---";
pub const BLOCK_END: &str = "--- end report ---";

/// Human-readable report followed by the JSON block.
pub fn render(pipeline: &str, report: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pipeline: {pipeline}");
    let _ = writeln!(out, "verdict: {}", report.verdict);
    if let Some(route) = report.pedal_route {
        let _ = writeln!(out, "route: {route:?}");
    }
    for ev in &report.evidence {
        let _ = writeln!(out, "evidence: {}", ev.criterion);
        for (k, v) in &ev.values {
            let _ = writeln!(out, "  {k} = {v}");
        }
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    let _ = writeln!(out, "{BLOCK_BEGIN}");
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    let _ = writeln!(out, "{BLOCK_END}");
    out
}

/// Extracts and parses the JSON block of a rendered report.
#[cfg_attr(not(test), allow(dead_code))]
pub fn parse_block(text: &str) -> Option<ClassificationReport> {
    let start = text.find(BLOCK_BEGIN)? + BLOCK_BEGIN.len();
    let end = text[start..].find(BLOCK_END)? + start;
    serde_json::from_str(text[start..end].trim()).ok()
}

pub fn classify(germ: &MapGerm, mode: Mode) -> Result<String, Failure> {
    if germ.phi1().is_zero() && germ.phi2().is_zero() {
        return Err(Failure::Usage(
            "germ has identically zero components; nothing to classify".into(),
        ));
    }
    match mode {
        Mode::Pedal => classify_pedal_type(germ)
            .map(|r| render("pedal", &r))
            .map_err(|e| Failure::Check(e.to_string())),
        Mode::Legendrian => classify_legendrian(germ)
            .map(|r| render("legendrian", &r))
            .map_err(|e| Failure::Check(e.to_string())),
        Mode::Auto => match classify_pedal_type(germ) {
            Ok(r) => Ok(render("pedal", &r)),
            Err(pedal_err) => match classify_legendrian(germ) {
                Ok(r) => {
                    let mut out = format!("note: pedal pipeline rejected the germ: {pedal_err}\n");
                    out.push_str(&render("legendrian", &r));
                    Ok(out)
                }
                Err(leg_err) => Err(Failure::Check(format!(
                    "no pipeline applies\n  pedal: {pedal_err}\n  legendrian: {leg_err}"
                ))),
            },
        },
    }
}
