//! Hodge numbers from graded slices of R(f), period-domain dimensions, the
//! period differential, geodesic tangent spaces and the weight-system search.

mod geodesic;
mod period;
mod search;

use serde::Serialize;

use crate::jacring::JacobianRingModel;
use crate::polyalg::WeightSystem;

pub use geodesic::{
    check_complex_structure, geodesic_tangent_space, random_complex_structure,
    standard_complex_structure, GeodesicTangentSpace,
};
pub use period::{
    fiber_pairing, non_geodesy_certificate, non_geodesy_of_tangent, omega, period_differential,
    symplectic_form, NonGeodesyCertificate, PeriodDifferentialReport,
};
pub use search::{search, RowStatus, SearchBounds, SearchReport, SearchRow};

/// Primitive Hodge numbers of the weight-2 piece, read from R_{d-σ}, R_{2d-σ}, R_{3d-σ}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeProfile {
    pub ws: WeightSystem,
    pub h20: usize,
    pub h11_prim: usize,
    pub h02: usize,
    pub source_degrees: [i64; 3],
}

impl HodgeProfile {
    /// h20 and h02 are measured independently and should agree.
    pub fn is_symmetric(&self) -> bool {
        self.h20 == self.h02
    }
}

pub fn hodge_numbers(model: &JacobianRingModel) -> HodgeProfile {
    let ws = *model.weight_system();
    let d = i64::from(ws.degree());
    let sigma = i64::from(ws.sigma());
    let source_degrees = [d - sigma, 2 * d - sigma, 3 * d - sigma];
    let [h20, h11_prim, h02] = source_degrees.map(|k| model.hilbert(k));
    HodgeProfile {
        ws,
        h20,
        h11_prim,
        h02,
        source_degrees,
    }
}

/// Dimensions attached to the period domain with Hodge numbers (p, q, p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainGeometry {
    pub p: usize,
    pub q: usize,
    pub dim_domain: usize,
    pub dim_horizontal: usize,
    pub is_contact: bool,
    /// pq/2 in the contact case; otherwise the geodesic-orbit dimension as a lower bound.
    pub max_integral_dim: Option<usize>,
    /// p·q/2, defined for even q.
    pub geodesic_orbit_dim: Option<usize>,
    pub lagrangian_grassmannian_dim: Option<usize>,
    /// q(q-1)/2 - (q/2)^2 for even q.
    pub complex_structure_space_dim_real: Option<usize>,
    pub complex_structure_space_dim_complex: Option<usize>,
}

/// Panics unless p, q ≥ 1.
pub fn domain_geometry(p: usize, q: usize) -> DomainGeometry {
    assert!(p >= 1 && q >= 1, "domain_geometry needs p, q >= 1");
    let is_contact = p == 2;
    let even_q = q % 2 == 0;
    let geodesic_orbit_dim = even_q.then_some(p * q / 2);
    let max_integral_dim = if is_contact {
        Some(p * q / 2)
    } else {
        geodesic_orbit_dim
    };
    let lagrangian_grassmannian_dim = is_contact.then(|| {
        let g = p * q / 2;
        g * (g + 1) / 2
    });
    let cs_real = even_q.then(|| q * (q - 1) / 2 - (q / 2) * (q / 2));
    DomainGeometry {
        p,
        q,
        dim_domain: p * (p - 1) / 2 + p * q,
        dim_horizontal: p * q,
        is_contact,
        max_integral_dim,
        geodesic_orbit_dim,
        lagrangian_grassmannian_dim,
        complex_structure_space_dim_real: cs_real,
        complex_structure_space_dim_complex: cs_real.map(|r| r / 2),
    }
}

/// The quaternionic contact model of complex dimension 2n + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternionicGeometry {
    pub n: usize,
    pub dim_domain: usize,
    pub dim_horizontal: usize,
    /// Dimension of Sp(n)/U(n), the space of Lagrangian integral elements.
    pub lagrangian_dim: usize,
    /// Complex-hyperbolic geodesic orbits.
    pub geodesic_orbit_dim: usize,
}

/// Panics unless n ≥ 1.
pub fn quaternionic_domain_geometry(n: usize) -> QuaternionicGeometry {
    assert!(n >= 1, "quaternionic_domain_geometry needs n >= 1");
    QuaternionicGeometry {
        n,
        dim_domain: 2 * n + 1,
        dim_horizontal: 2 * n,
        lagrangian_dim: n * (n + 1) / 2,
        geodesic_orbit_dim: n,
    }
}
