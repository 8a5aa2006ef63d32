//! Report directories: `graph.lgf`, `replay.rpf` (embedder targets only) and
//! `report.txt`, which holds `key value` lines followed by a line reading
//! `evidence` and the evidence text.

use std::fs;
use std::path::Path;

use super::{FailureReport, LabError};
use crate::format::{parse_lgf, parse_rpf, write_lgf, write_rpf};
use crate::graph::ProperLevelGraph;

/// Stable directory name: `<target>-<iteration>-<seed>`.
pub fn report_dir_name(report: &FailureReport) -> String {
    format!(
        "{}-{:06}-{:016x}",
        report.target, report.iteration, report.seed
    )
}

fn report_text(report: &FailureReport) -> String {
    format!(
        "target {}\nkind {}\noracle {}\nseed {}\niteration {}\nevidence\n{}\n",
        report.target,
        report.kind,
        if report.oracle_planar {
            "planar"
        } else {
            "not-planar"
        },
        report.seed,
        report.iteration,
        report.evidence
    )
}

pub fn write_report_dir(dir: &Path, report: &FailureReport) -> Result<(), LabError> {
    fs::create_dir_all(dir)?;
    fs::write(
        dir.join("graph.lgf"),
        write_lgf(&report.graph.to_level_graph()),
    )?;
    match &report.replay {
        Some(r) => fs::write(dir.join("replay.rpf"), write_rpf(r))?,
        None => {
            if dir.join("replay.rpf").exists() {
                fs::remove_file(dir.join("replay.rpf"))?;
            }
        }
    }
    fs::write(dir.join("report.txt"), report_text(report))?;
    Ok(())
}

pub fn read_report_dir(dir: &Path) -> Result<FailureReport, LabError> {
    let read = |name: &str| fs::read_to_string(dir.join(name));
    let format_err = |file: &str| {
        let file = file.to_string();
        move |source| LabError::Format { file, source }
    };
    let graph = parse_lgf(&read("graph.lgf")?).map_err(format_err("graph.lgf"))?;
    let graph = ProperLevelGraph::new(&graph)?;
    let replay = match read("replay.rpf") {
        Ok(text) => Some(parse_rpf(&text).map_err(format_err("replay.rpf"))?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(e.into()),
    };
    let text = read("report.txt")?;
    let (header, evidence) = text
        .split_once("\nevidence\n")
        .ok_or_else(|| LabError::Report("report.txt has no evidence section".into()))?;
    let field = |key: &str| {
        header
            .lines()
            .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
            .ok_or_else(|| LabError::Report(format!("report.txt lacks {key}")))
    };
    let bad = |key: &str| LabError::Report(format!("report.txt has a malformed {key}"));
    Ok(FailureReport {
        graph,
        oracle_planar: match field("oracle")? {
            "planar" => true,
            "not-planar" => false,
            _ => return Err(bad("oracle")),
        },
        target: field("target")?.parse().map_err(|_| bad("target"))?,
        replay,
        kind: field("kind")?.parse().map_err(|_| bad("kind"))?,
        evidence: evidence.strip_suffix('\n').unwrap_or(evidence).to_string(),
        seed: field("seed")?.parse().map_err(|_| bad("seed"))?,
        iteration: field("iteration")?.parse().map_err(|_| bad("iteration"))?,
    })
}
