//! Command reports: a single value object serialized to JSON or rendered as a
//! text table.
//!
//! The JSON field order is part of the output contract and follows the struct
//! declaration order. For fixed inputs and caps the bytes are stable except
//! for the `millis` fields, which carry wall-clock timings.

use serde::Serialize;

use crate::suite::{SkipKind, SuiteEntry, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// A witness subset under a role name, rendered with element labels rather
/// than indices so the output reads in the group's own notation.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessSet {
    pub kind: &'static str,
    pub labels: Vec<String>,
}

/// One command's result.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub descriptor: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<usize>,
    /// Caps that left a result incomplete or bounded, empty when every number
    /// reported here is exact.
    pub capped_flags: Vec<String>,
    pub witnesses: Vec<WitnessSet>,
    pub nodes: u64,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite_entries: Option<Vec<SuiteEntry>>,
    /// Extra text-mode rows; never serialized.
    #[serde(skip)]
    pub extras: Vec<(String, String)>,
}

impl Report {
    pub fn new(descriptor: impl Into<String>, order: usize) -> Report {
        Report {
            descriptor: descriptor.into(),
            order,
            alpha: None,
            gamma: None,
            aut_order: None,
            capped_flags: Vec::new(),
            witnesses: Vec::new(),
            nodes: 0,
            millis: 0,
            suite_entries: None,
            extras: Vec::new(),
        }
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .expect("report serialization has no fallible fields");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(report: &Report) -> String {
    let mut rows: Vec<(String, String)> = Vec::new();
    rows.push(("group".into(), report.descriptor.clone()));
    rows.push(("order".into(), report.order.to_string()));
    if let Some(a) = report.alpha {
        rows.push(("alpha".into(), a.to_string()));
    }
    if let Some(g) = report.gamma {
        rows.push(("gamma".into(), g.to_string()));
    }
    if let (Some(a), Some(g)) = (report.alpha, report.gamma) {
        rows.push(("deg".into(), (a == g).to_string()));
    }
    if let Some(k) = report.aut_order {
        rows.push(("aut order".into(), k.to_string()));
    }
    for w in &report.witnesses {
        rows.push((format!("{} witness", w.kind), format!("{{{}}}", w.labels.join(", "))));
    }
    for (k, v) in &report.extras {
        rows.push((k.clone(), v.clone()));
    }
    if !report.capped_flags.is_empty() {
        rows.push(("capped".into(), report.capped_flags.join("; ")));
    }
    rows.push(("nodes".into(), report.nodes.to_string()));
    rows.push(("time".into(), format!("{} ms", report.millis)));

    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    if let Some(entries) = &report.suite_entries {
        out.push_str(&render_suite(entries));
    }
    out
}

/// Summary line plus one detail line per non-pass entry; a fully green run
/// stays short no matter how large the catalog is.
fn render_suite(entries: &[SuiteEntry]) -> String {
    let count = |v: Verdict| entries.iter().filter(|e| e.verdict == v).count();
    let skips = |k: SkipKind| entries.iter().filter(|e| e.skip_kind == Some(k)).count();
    let mut out = format!(
        "checks  {} total: {} pass, {} fail, {} skipped ({} policy, {} resource)\n",
        entries.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Skip),
        skips(SkipKind::Policy),
        skips(SkipKind::Resource),
    );
    for e in entries {
        let tag = match (e.verdict, e.skip_kind) {
            (Verdict::Pass, _) => continue,
            (Verdict::Fail, _) => "FAIL",
            (Verdict::Skip, Some(SkipKind::Resource)) => "skip(resource)",
            (Verdict::Skip, _) => "skip(policy)",
        };
        let detail = e.detail.as_deref().unwrap_or("");
        out.push_str(&format!("  {tag}  {}  {}  {detail}\n", e.descriptor, e.check));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_report() -> Report {
        let mut r = Report::new("Z(6)", 6);
        r.alpha = Some(1);
        r.gamma = Some(1);
        r.aut_order = Some(2);
        r.capped_flags = vec!["aut enumeration capped".into()];
        r.witnesses = vec![
            WitnessSet { kind: "determining", labels: vec!["1".into()] },
            WitnessSet { kind: "generating", labels: vec!["1".into()] },
        ];
        r.nodes = 12;
        r.millis = 3;
        r.suite_entries = Some(vec![entry("Z(6)", "alpha_le_gamma", Verdict::Pass, None, None)]);
        r
    }

    fn entry(
        descriptor: &str,
        check: &'static str,
        verdict: Verdict,
        skip_kind: Option<SkipKind>,
        detail: Option<&str>,
    ) -> SuiteEntry {
        SuiteEntry {
            descriptor: descriptor.into(),
            check,
            verdict,
            skip_kind,
            detail: detail.map(String::from),
            witness: None,
            millis: 0,
        }
    }

    #[test]
    fn json_keeps_the_declared_field_order() {
        let out = emit_report(&full_report(), Format::Json);
        let keys = [
            "\"descriptor\"",
            "\"order\"",
            "\"alpha\"",
            "\"gamma\"",
            "\"aut_order\"",
            "\"capped_flags\"",
            "\"witnesses\"",
            "\"nodes\"",
            "\"millis\"",
            "\"suite_entries\"",
        ];
        let positions: Vec<usize> =
            keys.iter().map(|k| out.find(k).unwrap_or_else(|| panic!("missing {k}"))).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "field order drifted: {out}");
    }

    #[test]
    fn json_omits_absent_optionals() {
        let out = emit_report(&Report::new("Z(2)", 2), Format::Json);
        for k in ["\"alpha\"", "\"gamma\"", "\"aut_order\"", "\"suite_entries\""] {
            assert!(!out.contains(k), "unset {k} leaked into {out}");
        }
        assert!(out.contains("\"capped_flags\": []"));
    }

    #[test]
    fn text_mode_renders_witness_labels_and_derives_deg() {
        let mut r = full_report();
        r.suite_entries = None;
        let out = emit_report(&r, Format::Text);
        assert!(out.contains("determining witness"));
        assert!(out.contains("{1}"));
        assert!(out.lines().any(|l| l.starts_with("deg") && l.ends_with("true")));
        assert!(out.contains("aut enumeration capped"));
    }

    #[test]
    fn suite_text_lists_only_non_pass_entries() {
        let mut r = Report::new("catalog", 3);
        r.suite_entries = Some(vec![
            entry("Z(2)", "alpha_le_gamma", Verdict::Pass, None, None),
            entry("D(4)", "deg_nilpotent", Verdict::Fail, None, Some("alpha 2, gamma 3")),
            entry("S(5)", "aut_complete", Verdict::Skip, Some(SkipKind::Policy), Some("info-only")),
            entry("A(5)", "oracle_alpha", Verdict::Skip, Some(SkipKind::Resource), Some("budget")),
        ]);
        let out = emit_report(&r, Format::Text);
        assert!(out.contains("4 total: 1 pass, 1 fail, 2 skipped (1 policy, 1 resource)"));
        assert!(out.contains("FAIL  D(4)  deg_nilpotent  alpha 2, gamma 3"));
        assert!(out.contains("skip(policy)  S(5)"));
        assert!(out.contains("skip(resource)  A(5)"));
        assert!(!out.contains("alpha_le_gamma\n"), "pass entries must not be listed");
    }

    #[test]
    fn empty_suite_renders_a_zero_summary() {
        let mut r = Report::new("catalog", 0);
        r.suite_entries = Some(Vec::new());
        let out = emit_report(&r, Format::Text);
        assert!(out.contains("checks  0 total: 0 pass, 0 fail, 0 skipped"));
        let json = emit_report(&r, Format::Json);
        assert!(json.contains("\"suite_entries\": []"));
    }
}
