use std::cmp::Reverse;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::{domain_geometry, hodge_numbers, non_geodesy_certificate, period_differential};
use super::{DomainGeometry, HodgeProfile, NonGeodesyCertificate};
use crate::exactla::PencilOptions;
use crate::jacring::jacobian_ring;
use crate::polyalg::{fermat_polynomial, WeightSystem, NVARS};

/// Nondecreasing weight tuples bounded componentwise by `max_weights`, degrees 1..=max_degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_weights: [u32; NVARS],
    pub max_degree: u32,
}

impl SearchBounds {
    /// Reduced weight systems (gcd 1) in range.
    pub fn weight_systems(&self) -> Vec<WeightSystem> {
        let mut out = Vec::new();
        let mut w = [0u32; NVARS];
        self.fill(0, 1, &mut w, &mut out);
        out
    }

    fn fill(&self, i: usize, lo: u32, w: &mut [u32; NVARS], out: &mut Vec<WeightSystem>) {
        if i == NVARS {
            if w.iter().fold(0, |g, &x| g.gcd(&x)) == 1 {
                out.extend((1..=self.max_degree).filter_map(|d| WeightSystem::new(*w, d).ok()));
            }
            return;
        }
        for x in lo..=self.max_weights[i] {
            w[i] = x;
            self.fill(i + 1, x, w, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Analyzed,
    /// Some weight does not divide the degree.
    NoQuasiSmoothFermatMember,
    /// The Fermat member exists but the ring could not be built.
    Failed(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRow {
    pub ws: WeightSystem,
    pub status: RowStatus,
    pub profile: Option<HodgeProfile>,
    pub geometry: Option<DomainGeometry>,
    pub rank_m: Option<usize>,
    pub span_rank: Option<usize>,
    pub isotropy_ok: Option<bool>,
    pub certificate: Option<NonGeodesyCertificate>,
    /// h20 = 2 and rank_m = h11.
    pub maximal: bool,
    /// Reported irregularities such as h20 ≠ h02.
    pub anomalies: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub bounds: SearchBounds,
    pub rows: Vec<SearchRow>,
}

impl SearchReport {
    pub fn maximal_rows(&self) -> impl Iterator<Item = &SearchRow> {
        self.rows.iter().filter(|r| r.maximal)
    }
}

pub fn search(bounds: SearchBounds, opts: PencilOptions) -> SearchReport {
    let mut rows: Vec<SearchRow> = bounds
        .weight_systems()
        .into_par_iter()
        .map(|ws| analyze_row(ws, opts))
        .collect();
    rows.sort_by_key(|r| {
        let h11 = r.profile.as_ref().map(|p| p.h11_prim);
        (h11.is_none(), Reverse(h11), r.ws.degree(), r.ws.weights())
    });
    SearchReport { bounds, rows }
}

fn analyze_row(ws: WeightSystem, opts: PencilOptions) -> SearchRow {
    let mut row = SearchRow {
        ws,
        status: RowStatus::Analyzed,
        profile: None,
        geometry: None,
        rank_m: None,
        span_rank: None,
        isotropy_ok: None,
        certificate: None,
        maximal: false,
        anomalies: Vec::new(),
    };
    let Ok(f) = fermat_polynomial(&ws) else {
        row.status = RowStatus::NoQuasiSmoothFermatMember;
        return row;
    };
    let model = match jacobian_ring(&f) {
        Ok(m) => m,
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    let profile = hodge_numbers(&model);
    if !profile.is_symmetric() {
        row.anomalies.push(format!(
            "h20 = {} differs from h02 = {}",
            profile.h20, profile.h02
        ));
    }
    if model.socle_degree() as i64 != model.socle_bound() {
        row.anomalies.push(format!(
            "socle in degree {}, expected {}",
            model.socle_degree(),
            model.socle_bound()
        ));
    }
    if profile.h20 >= 1 && profile.h11_prim >= 1 {
        row.geometry = Some(domain_geometry(profile.h20, profile.h11_prim));
    }
    if profile.h20 == 2 {
        match period_differential(&model, opts) {
            Ok(report) => {
                row.rank_m = Some(report.rank_m);
                row.span_rank = report.span_rank;
                row.isotropy_ok = report.isotropy_ok;
                row.maximal = report.rank_m == profile.h11_prim;
                if let Some(g) = &row.geometry {
                    row.certificate = non_geodesy_certificate(&report, g).ok();
                }
            }
            Err(e) => row.status = RowStatus::Failed(e.to_string()),
        }
    }
    row.profile = Some(profile);
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        let b = SearchBounds {
            max_weights: [1, 1, 2, 2],
            max_degree: 2,
        };
        let got: Vec<String> = b.weight_systems().iter().map(ToString::to_string).collect();
        assert_eq!(
            got,
            [
                "(1,1,1,1;1)",
                "(1,1,1,1;2)",
                "(1,1,1,2;1)",
                "(1,1,1,2;2)",
                "(1,1,2,2;1)",
                "(1,1,2,2;2)"
            ]
        );
        let empty = SearchBounds {
            max_weights: [1, 1, 1, 1],
            max_degree: 0,
        };
        assert!(empty.weight_systems().is_empty());
    }

    #[test]
    fn small_search_rows() {
        let b = SearchBounds {
            max_weights: [1, 1, 1, 1],
            max_degree: 4,
        };
        let r = search(b, PencilOptions::exact());
        assert_eq!(r.rows.len(), 4);
        // Sorted by h11 descending: the quartic first.
        let quartic = &r.rows[0];
        assert_eq!(quartic.ws.degree(), 4);
        let p = quartic.profile.as_ref().unwrap();
        assert_eq!((p.h20, p.h11_prim), (1, 19));
        assert!(quartic.rank_m.is_none() && !quartic.maximal);
        // A linear form has a unit partial.
        let linear = r.rows.iter().find(|x| x.ws.degree() == 1).unwrap();
        assert!(matches!(linear.status, RowStatus::Failed(_)));
    }

    #[test]
    fn missing_fermat_member() {
        let b = SearchBounds {
            max_weights: [1, 1, 2, 5],
            max_degree: 4,
        };
        let r = search(b, PencilOptions::exact());
        let row = r
            .rows
            .iter()
            .find(|x| x.ws.weights() == [1, 1, 2, 5] && x.ws.degree() == 4)
            .unwrap();
        assert_eq!(row.status, RowStatus::NoQuasiSmoothFermatMember);
    }
}
