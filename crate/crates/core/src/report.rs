//! Report serialization. All floats carry 12 significant digits.

use crate::claims::{ClaimResult, Verdict};
use crate::format::{fmt_sig, REPORT_DIGITS};

fn cell(x: Option<f64>) -> String {
    x.map(|v| fmt_sig(v, REPORT_DIGITS)).unwrap_or_default()
}

/// JSON array of result objects.
pub fn to_json(results: &[ClaimResult]) -> String {
    let mut out = serde_json::to_string_pretty(results).expect("results serialize");
    out.push('\n');
    out
}

pub const CSV_HEADER: [&str; 9] = [
    "claim_id",
    "spec",
    "m",
    "convention",
    "formula_value",
    "direct_value",
    "abs_dev",
    "rel_dev",
    "verdict",
];

/// CSV with the instance flattened into `spec`, `m` and `convention`.
pub fn to_csv(results: &[ClaimResult]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in results {
        writer
            .write_record([
                r.claim_id.clone(),
                r.instance.spec.to_string(),
                r.instance.m.map(|m| m.to_string()).unwrap_or_default(),
                r.instance
                    .convention
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
                cell(r.formula_value),
                cell(r.direct_value),
                cell(r.abs_dev),
                cell(r.rel_dev),
                r.verdict.to_string(),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush to Vec")).expect("CSV is UTF-8")
}

pub fn to_markdown(results: &[ClaimResult]) -> String {
    let dash = |x: Option<f64>| {
        x.map(|v| fmt_sig(v, REPORT_DIGITS))
            .unwrap_or_else(|| "-".into())
    };
    let mut out = String::from(
        "| claim | spec | m | convention | formula | direct | abs dev | rel dev | verdict |\n\
         |---|---|---|---|---:|---:|---:|---:|---|\n",
    );
    for r in results {
        out.push_str(&format!(
            "| {} | `{}` | {} | {} | {} | {} | {} | {} | {} |\n",
            r.claim_id,
            r.instance.spec,
            r.instance
                .m
                .map(|m| m.to_string())
                .unwrap_or_else(|| "-".into()),
            r.instance
                .convention
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into()),
            dash(r.formula_value),
            dash(r.direct_value),
            dash(r.abs_dev),
            dash(r.rel_dev),
            r.verdict,
        ));
    }
    let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
    out.push_str(&format!(
        "\n{} match, {} mismatch, {} inapplicable\n",
        count(Verdict::Match),
        count(Verdict::Mismatch),
        count(Verdict::Inapplicable)
    ));
    out
}
