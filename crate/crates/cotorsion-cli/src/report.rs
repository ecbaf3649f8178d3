//! Report rendering. The human-readable form carries timings and is as
//! verbose as requested; the machine-readable form is canonical — fixed
//! field order, no timings, no environment-dependent content — so two runs
//! of the same configuration produce byte-identical documents.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

use crate::engine::{exit_code, Session, Status, TaskReport};

/// Canonical machine document. Field order is the serialization order.
#[derive(Serialize)]
pub struct MachineReport {
    pub engine_version: &'static str,
    pub config: String,
    /// SHA-256 of the raw configuration text, hex.
    pub config_hash: String,
    pub modulus: u64,
    pub window: usize,
    pub budget: u64,
    pub base_classes: Option<usize>,
    pub extension_classes: Option<usize>,
    pub outcome: &'static str,
    pub tasks: Vec<MachineTask>,
}

#[derive(Serialize)]
pub struct MachineTask {
    pub name: String,
    pub kind: &'static str,
    pub status: &'static str,
    pub details: Vec<[String; 2]>,
    pub witnesses: Vec<String>,
}

pub fn config_hash(raw: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(raw.as_bytes());
    let digest = hasher.finalize();
    digest.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn outcome_word(tasks: &[TaskReport]) -> &'static str {
    match exit_code(tasks) {
        0 => "pass",
        2 => "inconclusive",
        _ => "fail",
    }
}

pub fn machine_report(
    session: &Session,
    config_name: &str,
    raw_config: &str,
    tasks: &[TaskReport],
) -> MachineReport {
    let (base_classes, extension_classes) = match session.universe_sizes() {
        Some((b, e)) => (Some(b), Some(e)),
        None => (None, None),
    };
    MachineReport {
        engine_version: cotorsion::ENGINE_VERSION,
        config: config_name.to_string(),
        config_hash: config_hash(raw_config),
        modulus: session.modulus,
        window: session.window,
        budget: session.budget,
        base_classes,
        extension_classes,
        outcome: outcome_word(tasks),
        tasks: tasks
            .iter()
            .map(|t| MachineTask {
                name: t.name.clone(),
                kind: t.kind,
                status: t.status.word(),
                details: t
                    .details
                    .iter()
                    .map(|(k, v)| [k.clone(), v.clone()])
                    .collect(),
                witnesses: t.witnesses.clone(),
            })
            .collect(),
    }
}

pub fn render_machine(report: &MachineReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Verbosity of the text report: 0 quiet (headline + failures), 1 normal,
/// 2 and above full detail including witnesses for passing tasks.
pub fn render_text(
    session: &Session,
    config_name: &str,
    tasks: &[TaskReport],
    verbosity: u8,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "configuration: {config_name}");
    let _ = writeln!(
        out,
        "field: F_{}   window: {}   budget: {}",
        session.modulus, session.window, session.budget
    );
    if let Some((b, e)) = session.universe_sizes() {
        let _ = writeln!(
            out,
            "universe: {b} base classes, {e} extension classes"
        );
    }
    let total: f64 = tasks.iter().map(|t| t.seconds).sum();
    for t in tasks {
        let interesting = t.status != Status::Pass;
        if verbosity == 0 && !interesting {
            continue;
        }
        let _ = writeln!(
            out,
            "[{}] {} ({:.2}s)",
            t.status.word().to_uppercase(),
            t.name,
            t.seconds
        );
        if verbosity >= 1 || interesting {
            for (k, v) in &t.details {
                let _ = writeln!(out, "    {k}: {v}");
            }
        }
        if interesting || verbosity >= 2 {
            for w in &t.witnesses {
                for (i, line) in w.lines().enumerate() {
                    let bullet = if i == 0 { "  * " } else { "    " };
                    let _ = writeln!(out, "{bullet}{line}");
                }
            }
        }
    }
    let n_pass = tasks.iter().filter(|t| t.status == Status::Pass).count();
    let n_fail = tasks.iter().filter(|t| t.status == Status::Fail).count();
    let n_inc = tasks
        .iter()
        .filter(|t| t.status == Status::Inconclusive)
        .count();
    let _ = writeln!(
        out,
        "outcome: {} ({n_pass} pass, {n_fail} fail, {n_inc} inconclusive) in {total:.2}s",
        outcome_word(tasks)
    );
    out
}
