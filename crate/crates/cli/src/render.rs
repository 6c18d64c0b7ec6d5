//! Markdown views of the JSON documents. Every number comes from the document itself.

use std::fmt::Write;

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "n/a".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn table(out: &mut String, rows: &[(&str, &Value)]) {
    out.push_str("| quantity | value |\n|---|---|\n");
    for (k, v) in rows {
        let _ = writeln!(out, "| {k} | {} |", cell(v));
    }
    out.push('\n');
}

fn section(out: &mut String, title: &str, obj: &Value, keys: &[&str]) {
    if obj.is_null() {
        let _ = writeln!(out, "## {title}\n\nnot applicable\n");
        return;
    }
    let _ = writeln!(out, "## {title}\n");
    let rows: Vec<(&str, &Value)> = keys
        .iter()
        .filter_map(|k| obj.get(*k).map(|v| (*k, v)))
        .collect();
    table(out, &rows);
}

fn header(out: &mut String, doc: &Value) {
    let _ = writeln!(
        out,
        "# wphodge {}\n\n_{} {}_\n",
        cell(&doc["command"]),
        cell(&doc["tool"]["name"]),
        cell(&doc["tool"]["version"])
    );
}

const INPUT: [&str; 5] = ["weights", "degree", "polynomial", "mode", "seed"];
const HODGE: [&str; 5] = ["h20", "h11_prim", "h02", "source_degrees", "symmetric"];
const GEOMETRY: [&str; 10] = [
    "p",
    "q",
    "dim_domain",
    "dim_horizontal",
    "is_contact",
    "max_integral_dim",
    "geodesic_orbit_dim",
    "lagrangian_grassmannian_dim",
    "complex_structure_space_dim_real",
    "complex_structure_space_dim_complex",
];
const NON_GEODESY: [&str; 6] = [
    "min_wv_dim",
    "generic_wv_dim",
    "threshold",
    "verdict",
    "span_full",
    "mode",
];

fn certificate(out: &mut String, doc: &Value) {
    section(out, "Input", &doc["input"], &INPUT);
    if let Some(ring) = doc.get("ring") {
        section(
            out,
            "Jacobian ring",
            ring,
            &[
                "socle_degree",
                "socle_monomial",
                "total_dimension",
                "hilbert",
            ],
        );
    }
    section(out, "Hodge numbers", &doc["hodge"], &HODGE);
    if let Some(g) = doc.get("geometry") {
        section(out, "Period domain", g, &GEOMETRY);
    }
    if let Some(pd) = doc.get("period_differential") {
        section(
            out,
            "Period differential",
            pd,
            &[
                "shape",
                "rank_m",
                "p",
                "q",
                "rank_a",
                "rank_b",
                "span_rank",
                "isotropy_ok",
            ],
        );
        let pencil = &pd["pencil"];
        section(
            out,
            "Pencil",
            pencil,
            &[
                "generic_rank",
                "min_rank",
                "mode",
                "seed",
                "points_evaluated",
            ],
        );
        if let Some(drops) = pencil.get("drop_points").and_then(Value::as_array) {
            if !drops.is_empty() {
                out.push_str("| drop form | rank |\n|---|---|\n");
                for d in drops {
                    let _ = writeln!(out, "| {} | {} |", cell(&d["form"]), cell(&d["rank"]));
                }
                out.push('\n');
            }
        }
    }
    section(out, "Non-geodesy", &doc["non_geodesy"], &NON_GEODESY);
}

fn search(out: &mut String, doc: &Value) {
    section(
        out,
        "Input",
        &doc["input"],
        &["max_weights", "max_degree", "mode", "seed"],
    );
    out.push_str("## Rows\n\n");
    out.push_str(
        "| weights | degree | status | h20 | h11_prim | h02 | dim D | dim H | rank m | span | min W_v | verdict | maximal |\n",
    );
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|---|\n");
    let empty = Vec::new();
    for r in doc["rows"].as_array().unwrap_or(&empty) {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            cell(&r["weights"]),
            cell(&r["degree"]),
            cell(&r["status"]),
            cell(&r["hodge"]["h20"]),
            cell(&r["hodge"]["h11_prim"]),
            cell(&r["hodge"]["h02"]),
            cell(&r["geometry"]["dim_domain"]),
            cell(&r["geometry"]["dim_horizontal"]),
            cell(&r["rank_m"]),
            cell(&r["span_rank"]),
            cell(&r["non_geodesy"]["min_wv_dim"]),
            cell(&r["non_geodesy"]["verdict"]),
            cell(&r["maximal"]),
        );
    }
    out.push('\n');
}

/// Renders any document produced by the CLI.
pub fn markdown(doc: &Value) -> String {
    let mut out = String::new();
    header(&mut out, doc);
    if doc["command"] == "search" {
        search(&mut out, doc);
    } else {
        certificate(&mut out, doc);
    }
    if let Some(t) = doc.get("timing_ms") {
        let _ = writeln!(out, "_elapsed: {} ms_", cell(t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn null_sections_are_marked() {
        let doc = json!({
            "command": "certify",
            "tool": {"name": "wphodge", "version": "0"},
            "input": {"weights": [1, 1, 1, 1], "degree": 4},
            "hodge": {"h20": 1},
            "non_geodesy": null,
        });
        let md = markdown(&doc);
        assert!(md.contains("| weights | 1,1,1,1 |"));
        assert!(md.contains("## Non-geodesy\n\nnot applicable"));
        assert!(!md.contains("Pencil"));
    }

    #[test]
    fn search_rows_render_missing_values() {
        let doc = json!({
            "command": "search",
            "tool": {"name": "wphodge", "version": "0"},
            "input": {"max_weights": [1, 1, 2, 5], "max_degree": 10},
            "rows": [{"weights": [1, 1, 2, 5], "degree": 4, "status": "failed", "maximal": false}],
        });
        assert!(markdown(&doc).contains("| 1,1,2,5 | 4 | failed | n/a |"));
    }
}
