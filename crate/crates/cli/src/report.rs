//! Fixed-width result tables: MAP, GM_MAP, P@10, #rel_ret, the
//! >5%-improved robustness row, and t-test significance markers.

use std::fmt::Write;

use qelab_core::eval::EvalReport;

use crate::experiment::Comparison;

const SIGNIFICANCE_LEVEL: f64 = 0.05;

pub fn render_report(name: &str, report: &EvalReport) -> String {
    let mut out = String::new();
    writeln!(out, "{:<14} {:>10}", "Metric", name).unwrap();
    writeln!(out, "{:<14} {:>10.4}", "MAP", report.map).unwrap();
    writeln!(out, "{:<14} {:>10.4}", "GM_MAP", report.gm_map).unwrap();
    writeln!(out, "{:<14} {:>10.4}", "P@10", report.p10).unwrap();
    writeln!(out, "{:<14} {:>10}", "#rel_ret", report.rel_ret).unwrap();
    writeln!(out, "{:<14} {:>10}", "topics", report.per_topic.len()).unwrap();
    if !report.skipped.is_empty() {
        writeln!(
            out,
            "warning: {} topic(s) without relevant judgments skipped: {:?}",
            report.skipped.len(),
            report.skipped
        )
        .unwrap();
    }
    out
}

fn pct_delta(a: f64, b: f64) -> String {
    if a == 0.0 {
        return String::from("   (n/a)");
    }
    format!("({:+.1}%)", 100.0 * (b - a) / a)
}

/// Two-column table in the style of the result tables: baseline values,
/// method values with percent deltas, the robustness row, and the
/// paired-t verdict on per-topic AP.
pub fn render_comparison(name_a: &str, name_b: &str, cmp: &Comparison) -> String {
    let a = &cmp.report_a;
    let b = &cmp.report_b;
    let mut out = String::new();
    writeln!(out, "{:<14} {:>10} {:>10} {:>10}", "Metric", name_a, name_b, "delta").unwrap();
    writeln!(
        out,
        "{:<14} {:>10.4} {:>10.4} {:>10}",
        "MAP",
        a.map,
        b.map,
        pct_delta(a.map, b.map)
    )
    .unwrap();
    writeln!(
        out,
        "{:<14} {:>10.4} {:>10.4} {:>10}",
        "GM_MAP",
        a.gm_map,
        b.gm_map,
        pct_delta(a.gm_map, b.gm_map)
    )
    .unwrap();
    writeln!(
        out,
        "{:<14} {:>10.4} {:>10.4} {:>10}",
        "P@10",
        a.p10,
        b.p10,
        pct_delta(a.p10, b.p10)
    )
    .unwrap();
    writeln!(
        out,
        "{:<14} {:>10} {:>10} {:>10}",
        "#rel_ret",
        a.rel_ret,
        b.rel_ret,
        pct_delta(a.rel_ret as f64, b.rel_ret as f64)
    )
    .unwrap();
    writeln!(out, "{:<14} {:>21.0}%", "> baseline on", cmp.pct_improved).unwrap();
    let marker = if cmp.p_value < SIGNIFICANCE_LEVEL { " *" } else { "" };
    writeln!(
        out,
        "{:<14} t = {:+.4}, p = {:.4}{}",
        "t-test (AP)", cmp.t_stat, cmp.p_value, marker
    )
    .unwrap();
    out
}
