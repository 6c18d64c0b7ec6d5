//! Building the JSON documents every command emits.

use std::path::Path;

use serde_json::{json, Map, Value};

use wphodge::hodge::{
    domain_geometry, hodge_numbers, non_geodesy_certificate, period_differential,
    search as run_search, DomainGeometry, HodgeProfile, NonGeodesyCertificate,
    PeriodDifferentialReport, RowStatus, SearchBounds,
};
use wphodge::jacring::jacobian_ring;
use wphodge::polyalg::{fermat_polynomial, format_rational, parse_polynomial};
use wphodge::{
    JacobianRingModel, PencilRankCertificate, RationalMatrix, WeightSystem, WeightedPolynomial,
};

use crate::args::{FermatArgs, PolyArgs, RunArgs, SearchArgs, WeightArgs};
use crate::CliError;

pub const COMMANDS: [&str; 4] = ["analyze", "certify", "fermat", "search"];

/// Pretty JSON with object keys sorted at every level, newline-terminated.
pub fn canonical_json(v: &Value) -> String {
    fn sorted(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let mut keys: Vec<&String> = m.keys().collect();
                keys.sort();
                let mut out = Map::new();
                for k in keys {
                    out.insert(k.clone(), sorted(&m[k]));
                }
                Value::Object(out)
            }
            Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
            other => other.clone(),
        }
    }
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn tool() -> Value {
    json!({ "name": "wphodge", "version": env!("CARGO_PKG_VERSION") })
}

fn weight_system(w: &WeightArgs) -> Result<WeightSystem, CliError> {
    let weights: [u32; 4] =
        w.weights.as_slice().try_into().map_err(|_| {
            CliError::Invalid(format!("expected 4 weights, got {}", w.weights.len()))
        })?;
    Ok(WeightSystem::new(weights, w.degree)?)
}

fn polynomial_text(a: &PolyArgs) -> Result<Option<String>, CliError> {
    match (&a.poly, &a.poly_file) {
        (Some(p), _) => Ok(Some(p.clone())),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| Some(s.trim().to_string()))
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display()))),
        (None, None) => Ok(None),
    }
}

struct Analysis {
    ws: WeightSystem,
    f: WeightedPolynomial,
    model: JacobianRingModel,
    profile: HodgeProfile,
    geometry: Option<DomainGeometry>,
    report: PeriodDifferentialReport,
    certificate: Option<NonGeodesyCertificate>,
}

fn analyze_polynomial(
    ws: WeightSystem,
    f: WeightedPolynomial,
    run: &RunArgs,
) -> Result<Analysis, CliError> {
    let model = jacobian_ring(&f)?;
    let profile = hodge_numbers(&model);
    let geometry = (profile.h20 >= 1 && profile.h11_prim >= 1)
        .then(|| domain_geometry(profile.h20, profile.h11_prim));
    let report = period_differential(&model, run.pencil_options())?;
    let certificate = match &geometry {
        Some(g) if g.is_contact && report.pencil.is_some() => {
            Some(non_geodesy_certificate(&report, g)?)
        }
        _ => None,
    };
    Ok(Analysis {
        ws,
        f,
        model,
        profile,
        geometry,
        report,
        certificate,
    })
}

fn input_echo(a: &Analysis, run: &RunArgs) -> Value {
    json!({
        "weights": a.ws.weights(),
        "degree": a.ws.degree(),
        "polynomial": a.f.to_string(),
        "mode": run.mode_name(),
        "seed": run.seed,
    })
}

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|c| Value::String(format_rational(c)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn pencil_json(p: &PencilRankCertificate) -> Value {
    json!({
        "generic_rank": p.generic_rank,
        "min_rank": p.min_rank,
        "drop_points": p.drop_points.iter().map(|d| json!({"form": d.form.to_string(), "rank": d.rank})).collect::<Vec<_>>(),
        "mode": if p.is_certifying() { "exact" } else { "sampled" },
        "seed": p.seed,
        "points_evaluated": p.points_evaluated,
    })
}

fn hodge_json(p: &HodgeProfile) -> Value {
    json!({
        "h20": p.h20,
        "h11_prim": p.h11_prim,
        "h02": p.h02,
        "source_degrees": p.source_degrees,
        "symmetric": p.is_symmetric(),
    })
}

fn geometry_json(g: &DomainGeometry) -> Value {
    json!({
        "p": g.p,
        "q": g.q,
        "dim_domain": g.dim_domain,
        "dim_horizontal": g.dim_horizontal,
        "is_contact": g.is_contact,
        "max_integral_dim": g.max_integral_dim,
        "geodesic_orbit_dim": g.geodesic_orbit_dim,
        "lagrangian_grassmannian_dim": g.lagrangian_grassmannian_dim,
        "complex_structure_space_dim_real": g.complex_structure_space_dim_real,
        "complex_structure_space_dim_complex": g.complex_structure_space_dim_complex,
    })
}

fn non_geodesy_json(c: &NonGeodesyCertificate) -> Value {
    json!({
        "min_wv_dim": c.min_wv_dim,
        "generic_wv_dim": c.generic_wv_dim,
        "threshold": c.threshold,
        "verdict": c.verdict,
        "span_full": c.span_full,
        "mode": if c.mode == wphodge::PencilMode::Exact { "exact" } else { "sampled" },
    })
}

fn period_json(r: &PeriodDifferentialReport, include_matrices: bool) -> Value {
    let mut v = json!({
        "shape": [r.shape.0, r.shape.1],
        "rank_m": r.rank_m,
        "p": r.p,
        "q": r.q,
        "rank_a": r.rank_a,
        "rank_b": r.rank_b,
        "span_rank": r.span_rank,
        "isotropy_ok": r.isotropy_ok,
        "pencil": r.pencil.as_ref().map(pencil_json),
    });
    if include_matrices {
        v["matrices"] = json!({
            "m": matrix_json(&r.matrix_m),
            "a": r.a.as_ref().map(matrix_json),
            "b": r.b.as_ref().map(matrix_json),
        });
    }
    v
}

fn ring_json(m: &JacobianRingModel) -> Value {
    let n = m.socle_degree();
    json!({
        "socle_degree": n,
        "socle_monomial": m.socle_monomial().to_string(),
        "hilbert": (0..=i64::from(n)).map(|k| m.hilbert(k)).collect::<Vec<_>>(),
        "total_dimension": m.total_dimension(),
    })
}

fn full_certificate(command: &str, a: &Analysis, run: &RunArgs, include_matrices: bool) -> Value {
    json!({
        "command": command,
        "tool": tool(),
        "input": input_echo(a, run),
        "ring": ring_json(&a.model),
        "hodge": hodge_json(&a.profile),
        "geometry": a.geometry.as_ref().map(geometry_json),
        "period_differential": period_json(&a.report, include_matrices),
        "non_geodesy": a.certificate.as_ref().map(non_geodesy_json),
    })
}

pub fn analyze(a: &PolyArgs, command: &str) -> Result<Value, CliError> {
    let ws = weight_system(&a.weights)?;
    let text = polynomial_text(a)?
        .ok_or_else(|| CliError::Invalid("give --poly or --poly-file".into()))?;
    let f = parse_polynomial(&text, &ws)?;
    let analysis = analyze_polynomial(ws, f, &a.run)?;
    Ok(full_certificate(
        command,
        &analysis,
        &a.run,
        a.include_matrices,
    ))
}

pub fn fermat(a: &FermatArgs) -> Result<Value, CliError> {
    let ws = weight_system(&a.weights)?;
    let f = fermat_polynomial(&ws)?;
    let analysis = analyze_polynomial(ws, f, &a.run)?;
    Ok(full_certificate(
        "fermat",
        &analysis,
        &a.run,
        a.include_matrices,
    ))
}

pub fn certify(a: &PolyArgs) -> Result<Value, CliError> {
    let ws = weight_system(&a.weights)?;
    let f = match polynomial_text(a)? {
        Some(text) => parse_polynomial(&text, &ws)?,
        None => fermat_polynomial(&ws)?,
    };
    let analysis = analyze_polynomial(ws, f, &a.run)?;
    let cert = analysis.certificate.as_ref().ok_or_else(|| {
        CliError::Invalid(format!(
            "the non-geodesy certificate needs h20 = 2, found h20 = {}",
            analysis.profile.h20
        ))
    })?;
    Ok(json!({
        "command": "certify",
        "tool": tool(),
        "input": input_echo(&analysis, &a.run),
        "hodge": hodge_json(&analysis.profile),
        "non_geodesy": non_geodesy_json(cert),
    }))
}

pub fn search(a: &SearchArgs) -> Result<Value, CliError> {
    let max_weights: [u32; 4] = a.max_weights.as_slice().try_into().map_err(|_| {
        CliError::Invalid(format!(
            "expected 4 weight bounds, got {}",
            a.max_weights.len()
        ))
    })?;
    if max_weights.contains(&0) {
        return Err(CliError::Invalid("weight bounds must be positive".into()));
    }
    let report = run_search(
        SearchBounds {
            max_weights,
            max_degree: a.max_degree,
        },
        a.run.pencil_options(),
    );
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            let (status, error) = match &r.status {
                RowStatus::Analyzed => ("analyzed", None),
                RowStatus::NoQuasiSmoothFermatMember => ("no quasi-smooth Fermat member", None),
                RowStatus::Failed(e) => ("failed", Some(e.clone())),
            };
            json!({
                "weights": r.ws.weights(),
                "degree": r.ws.degree(),
                "status": status,
                "error": error,
                "hodge": r.profile.as_ref().map(hodge_json),
                "geometry": r.geometry.as_ref().map(geometry_json),
                "rank_m": r.rank_m,
                "span_rank": r.span_rank,
                "isotropy_ok": r.isotropy_ok,
                "non_geodesy": r.certificate.as_ref().map(non_geodesy_json),
                "maximal": r.maximal,
                "anomalies": r.anomalies,
            })
        })
        .collect();
    Ok(json!({
        "command": "search",
        "tool": tool(),
        "input": {
            "max_weights": max_weights,
            "max_degree": a.max_degree,
            "mode": a.run.mode_name(),
            "seed": a.run.seed,
        },
        "rows": rows,
    }))
}

/// Reads a document written by another command.
pub fn load(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{} is not JSON: {e}", path.display())))?;
    match v.get("command").and_then(Value::as_str) {
        Some(c) if COMMANDS.contains(&c) => Ok(v),
        _ => Err(CliError::Invalid(format!(
            "{} is not a wphodge document",
            path.display()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_sorts_nested_keys() {
        let v = json!({"b": 1, "a": {"z": [{"y": 0, "x": 1}], "c": null}});
        assert_eq!(
            canonical_json(&v),
            "{\n  \"a\": {\n    \"c\": null,\n    \"z\": [\n      {\n        \"x\": 1,\n        \"y\": 0\n      }\n    ]\n  },\n  \"b\": 1\n}\n"
        );
    }

    #[test]
    fn load_rejects_foreign_documents() {
        let path = std::env::temp_dir().join(format!("wphodge-load-{}.json", std::process::id()));
        std::fs::write(&path, "{\"command\": \"other\"}").unwrap();
        assert!(matches!(load(&path), Err(CliError::Invalid(_))));
        std::fs::write(&path, "{\"command\": \"search\", \"rows\": []}").unwrap();
        assert!(load(&path).is_ok());
        std::fs::remove_file(&path).unwrap();
    }
}
