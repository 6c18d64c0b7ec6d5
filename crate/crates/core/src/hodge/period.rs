use num_traits::Zero;
use serde::Serialize;

use super::DomainGeometry;
use crate::error::HodgeError;
use crate::exactla::{
    pencil_min_rank, PencilMode, PencilOptions, PencilRankCertificate, RationalMatrix,
};
use crate::jacring::{multiplication_matrix, JacobianRingModel};
use crate::polyalg::{Rational, WeightedPolynomial};

/// The differential of the period map at f, as R_d → Hom(R_{d-σ}, R_{2d-σ}).
#[derive(Clone, Debug, Serialize)]
pub struct PeriodDifferentialReport {
    /// Rows: one block of dim R_{2d-σ} per basis vector v_i of R_{d-σ}. Columns: basis of R_d.
    #[serde(skip)]
    pub matrix_m: RationalMatrix,
    pub shape: (usize, usize),
    pub rank_m: usize,
    pub p: usize,
    pub q: usize,
    /// Multiplication by the two basis monomials of R_{d-σ}; present when p = 2.
    #[serde(skip)]
    pub a: Option<RationalMatrix>,
    #[serde(skip)]
    pub b: Option<RationalMatrix>,
    pub rank_a: Option<usize>,
    pub rank_b: Option<usize>,
    pub pencil: Option<PencilRankCertificate>,
    /// Rank of [A | B].
    pub span_rank: Option<usize>,
    /// ω vanishes on the image of m.
    pub isotropy_ok: Option<bool>,
}

pub fn period_differential(
    model: &JacobianRingModel,
    opts: PencilOptions,
) -> Result<PeriodDifferentialReport, HodgeError> {
    let ws = *model.weight_system();
    let d = i64::from(ws.degree());
    let sigma = i64::from(ws.sigma());
    let k0 = d - sigma;
    let q = model.hilbert(2 * d - sigma);
    let dim_rd = model.hilbert(d);
    let vs = model.basis(k0).to_vec();
    let p = vs.len();

    let mut blocks = Vec::with_capacity(p);
    for v in &vs {
        blocks.push(multiplication_matrix(
            model,
            &WeightedPolynomial::monomial(ws, *v),
            ws.degree(),
        )?);
    }
    let mut matrix_m = RationalMatrix::zeros(0, dim_rd);
    for blk in &blocks {
        matrix_m = matrix_m.vstack(blk)?;
    }
    let rank_m = matrix_m.rank();
    if rank_m > dim_rd.min(p * q) {
        return Err(HodgeError::Consistency(format!(
            "rank {rank_m} exceeds min(dim R_d, pq) = {}",
            dim_rd.min(p * q)
        )));
    }

    let mut report = PeriodDifferentialReport {
        shape: matrix_m.shape(),
        matrix_m,
        rank_m,
        p,
        q,
        a: None,
        b: None,
        rank_a: None,
        rank_b: None,
        pencil: None,
        span_rank: None,
        isotropy_ok: None,
    };
    if p != 2 {
        return Ok(report);
    }
    if rank_m > q {
        return Err(HodgeError::Consistency(format!(
            "rank {rank_m} exceeds the Lagrangian bound pq/2 = {q}"
        )));
    }
    let (a, b) = (blocks[0].clone(), blocks[1].clone());
    let pencil = pencil_min_rank(&a, &b, opts)?;
    let rank_a = a.rank();
    let rank_b = b.rank();
    let span_rank = a.hstack(&b)?.rank();
    // A and B are the pencil at (1:0) and (0:1); every member maps into span(A, B).
    let low = rank_a.max(rank_b);
    if pencil.mode == PencilMode::Exact && !(low <= pencil.generic_rank && pencil.generic_rank <= span_rank) {
        return Err(HodgeError::Consistency(format!(
            "generic pencil rank {} outside [max(rank A, rank B), span rank] = [{low}, {span_rank}]",
            pencil.generic_rank
        )));
    }
    if pencil.mode == PencilMode::Exact && pencil.min_rank > rank_a.min(rank_b) {
        return Err(HodgeError::Consistency(format!(
            "pencil minimum {} above rank(A) = {rank_a} or rank(B) = {rank_b}",
            pencil.min_rank
        )));
    }
    if span_rank < low {
        return Err(HodgeError::Consistency("span rank below rank(A) or rank(B)".into()));
    }
    let pairing = fiber_pairing(model);
    let isotropy_ok = is_isotropic(&pairing, &report.matrix_m);
    report.a = Some(a);
    report.b = Some(b);
    report.rank_a = Some(rank_a);
    report.rank_b = Some(rank_b);
    report.pencil = Some(pencil);
    report.span_rank = Some(span_rank);
    report.isotropy_ok = Some(isotropy_ok);
    Ok(report)
}

/// Gram matrix of R_{2d-σ} x R_{2d-σ} → R_N, read off the socle coefficient.
pub fn fiber_pairing(model: &JacobianRingModel) -> RationalMatrix {
    let ws = *model.weight_system();
    let k = 2 * i64::from(ws.degree()) - i64::from(ws.sigma());
    let basis = model.basis(k);
    RationalMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        model.socle_coefficient(&WeightedPolynomial::monomial(ws, basis[i].mul(&basis[j])))
    })
}

/// ω(X, Y) = <X v₁, Y v₂> - <Y v₁, X v₂> for stacked vectors X = [X v₁; X v₂].
pub fn omega(pairing: &RationalMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    let q = pairing.rows();
    assert!(
        x.len() == 2 * q && y.len() == 2 * q,
        "omega needs vectors of length 2q"
    );
    let bil = |u: &[Rational], w: &[Rational]| -> Rational {
        let pw = pairing.mul_vec(w);
        u.iter().zip(&pw).map(|(a, b)| a * b).sum()
    };
    bil(&x[..q], &y[q..]) - bil(&y[..q], &x[q..])
}

/// Every pair of columns of `m` is ω-orthogonal.
fn is_isotropic(pairing: &RationalMatrix, m: &RationalMatrix) -> bool {
    let q = pairing.rows();
    let top = m.row_block(0, q);
    let bottom = m.row_block(q, 2 * q);
    let gram = |u: &RationalMatrix, w: &RationalMatrix| {
        u.transpose()
            .mul(pairing)
            .and_then(|t| t.mul(w))
            .expect("shapes agree")
    };
    gram(&top, &bottom)
        .sub(&gram(&bottom, &top))
        .expect("shapes agree")
        .is_zero()
}

/// ω(m(φ), m(ψ)) computed with ring arithmetic: the socle coefficient of
/// (φ v₁)(ψ v₂) - (ψ v₁)(φ v₂).
pub fn symplectic_form(
    model: &JacobianRingModel,
    phi: &WeightedPolynomial,
    psi: &WeightedPolynomial,
) -> Result<Rational, HodgeError> {
    let ws = *model.weight_system();
    let k0 = i64::from(ws.degree()) - i64::from(ws.sigma());
    let vs = model.basis(k0);
    if vs.len() != 2 {
        return Err(HodgeError::NotContact(vs.len()));
    }
    for (name, g) in [("phi", phi), ("psi", psi)] {
        if g.is_zero() {
            return Ok(Rational::zero());
        }
        if g.homogeneous_degree() != Some(ws.degree()) {
            return Err(HodgeError::DegreeMismatch(format!(
                "{name} must be homogeneous of degree {}",
                ws.degree()
            )));
        }
    }
    let times = |g: &WeightedPolynomial, i: usize| model.reduce(&g.mul_monomial(&vs[i]));
    let first = &times(phi, 0) * &times(psi, 1);
    let second = &times(psi, 0) * &times(phi, 1);
    Ok(model.socle_coefficient(&(&first - &second)))
}

/// Whether the tangent space's pencil of images W·v can fit inside a geodesic orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonGeodesyCertificate {
    /// Minimum over v ∈ P^1 of dim W·v.
    pub min_wv_dim: usize,
    pub generic_wv_dim: usize,
    /// q/2: the largest dim W·v a geodesic-orbit tangent space allows.
    pub threshold: usize,
    /// min_wv_dim > threshold.
    pub verdict: bool,
    /// span_rank = q.
    pub span_full: bool,
    pub mode: PencilMode,
}

pub fn non_geodesy_certificate(
    report: &PeriodDifferentialReport,
    geometry: &DomainGeometry,
) -> Result<NonGeodesyCertificate, HodgeError> {
    if !geometry.is_contact {
        return Err(HodgeError::NotContact(geometry.p));
    }
    let (Some(pencil), Some(span_rank)) = (&report.pencil, report.span_rank) else {
        return Err(HodgeError::NotContact(report.p));
    };
    if report.q != geometry.q {
        return Err(HodgeError::DegreeMismatch(format!(
            "report has q = {}, geometry has q = {}",
            report.q, geometry.q
        )));
    }
    Ok(certificate(pencil, span_rank, geometry.q))
}

/// Certificate for an arbitrary tangent subspace given by its stacked basis columns (2q rows).
pub fn non_geodesy_of_tangent(
    w: &RationalMatrix,
    opts: PencilOptions,
) -> Result<NonGeodesyCertificate, HodgeError> {
    if w.rows() % 2 != 0 {
        return Err(HodgeError::DegreeMismatch(
            "stacked tangent needs an even row count".into(),
        ));
    }
    let q = w.rows() / 2;
    let a = w.row_block(0, q);
    let b = w.row_block(q, 2 * q);
    let pencil = pencil_min_rank(&a, &b, opts)?;
    let span_rank = a.hstack(&b)?.rank();
    Ok(certificate(&pencil, span_rank, q))
}

fn certificate(
    pencil: &PencilRankCertificate,
    span_rank: usize,
    q: usize,
) -> NonGeodesyCertificate {
    let threshold = q / 2;
    NonGeodesyCertificate {
        min_wv_dim: pencil.min_rank,
        generic_wv_dim: pencil.generic_rank,
        threshold,
        verdict: pencil.min_rank > threshold,
        span_full: span_rank == q,
        mode: pencil.mode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::domain_geometry;
    use crate::jacring::jacobian_ring;
    use crate::polyalg::{fermat_polynomial, parse_polynomial, rat, WeightSystem};

    fn model() -> JacobianRingModel {
        let ws = WeightSystem::new([1, 1, 2, 5], 10).unwrap();
        jacobian_ring(&fermat_polynomial(&ws).unwrap()).unwrap()
    }

    #[test]
    fn fermat_differential() {
        let m = model();
        let r = period_differential(&m, PencilOptions::sampled(3)).unwrap();
        assert_eq!(r.shape, (56, 28));
        assert_eq!(r.rank_m, 28);
        assert_eq!((r.rank_a, r.rank_b), (Some(26), Some(26)));
        assert_eq!(r.span_rank, Some(28));
        assert_eq!(r.isotropy_ok, Some(true));
        let cert = non_geodesy_certificate(&r, &domain_geometry(2, 28)).unwrap();
        assert!(cert.verdict && cert.span_full);
        assert_eq!((cert.min_wv_dim, cert.threshold), (26, 14));
        assert_eq!(cert.mode, PencilMode::Sampled);
        assert!(non_geodesy_certificate(&r, &domain_geometry(4, 44)).is_err());
    }

    #[test]
    fn symplectic_form_on_image_and_off_it() {
        let m = model();
        let ws = *m.weight_system();
        let r10 = m.basis(10).to_vec();
        let phi = WeightedPolynomial::monomial(ws, r10[0]);
        let psi = WeightedPolynomial::monomial(ws, r10[5]);
        assert!(symplectic_form(&m, &phi, &psi).unwrap().is_zero());
        assert!(symplectic_form(&m, &phi, &phi).unwrap().is_zero());
        let mixed = parse_polynomial("x1^9*x2 - 3*x3^5 + x4^2", &ws).unwrap();
        assert!(symplectic_form(&m, &mixed, &psi).unwrap().is_zero());
        let wrong = parse_polynomial("x1^9", &ws).unwrap();
        assert!(matches!(
            symplectic_form(&m, &wrong, &psi),
            Err(HodgeError::DegreeMismatch(_))
        ));

        // Elementary homomorphisms: X = (e_a, 0) and Y = (0, e_b) with <e_a, e_b> ≠ 0.
        let pairing = fiber_pairing(&m);
        let q = pairing.rows();
        let (a, b) = (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .find(|&(a, b)| !pairing.get(a, b).is_zero())
            .unwrap();
        let mut x = vec![rat(0); 2 * q];
        let mut y = vec![rat(0); 2 * q];
        x[a] = rat(1);
        y[q + b] = rat(1);
        assert!(!omega(&pairing, &x, &y).is_zero());
        assert_eq!(omega(&pairing, &x, &y), -omega(&pairing, &y, &x));
    }

    #[test]
    fn omega_agrees_with_ring_arithmetic() {
        let m = model();
        let r = period_differential(&m, PencilOptions::sampled(0)).unwrap();
        let pairing = fiber_pairing(&m);
        let ws = *m.weight_system();
        let phi = parse_polynomial("x1^9*x2 + x3^5", &ws).unwrap();
        let coords = m.coordinates(&phi, 10).unwrap();
        let x = r.matrix_m.mul_vec(&coords);
        let mut e = vec![rat(0); 56];
        e[3] = rat(1);
        e[40] = rat(-2);
        let val = omega(&pairing, &x, &e);
        // Direct: <φ v₁, e_{v₂}> - <e_{v₁}, φ v₂> with the Gram matrix.
        let q = 28;
        let direct: Rational = (0..q)
            .map(|i| &x[i] * pairing.get(i, 12) * rat(-2) - &x[q + i] * pairing.get(3, i))
            .sum();
        assert_eq!(val, direct);
    }
}
