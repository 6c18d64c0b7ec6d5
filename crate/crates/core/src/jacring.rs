//! The Jacobian ring R(f) = S/J(f) as a graded, computable object.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RingError;
use crate::exactla::RationalMatrix;
use crate::groebner::{
    buchberger, is_zero_dimensional, normal_form, standard_monomials, GroebnerBasis, MonomialOrder,
};
use crate::polyalg::{
    monomials_of_degree, rat, Monomial, Rational, WeightSystem, WeightedPolynomial, NVARS,
};

/// Number of random polynomials tried by [`random_quasi_smooth`] before giving up.
pub const RANDOM_RETRIES: usize = 20;

/// The four partial derivatives of `f`.
pub fn jacobian_ideal(f: &WeightedPolynomial) -> Vec<WeightedPolynomial> {
    (0..NVARS).map(|i| f.partial_derivative(i)).collect()
}

fn jacobian_basis(f: &WeightedPolynomial) -> GroebnerBasis {
    buchberger(
        &jacobian_ideal(f),
        MonomialOrder::weighted_degrevlex(*f.weight_system()),
    )
}

/// The partials have no common zero besides the origin.
pub fn is_quasi_smooth(f: &WeightedPolynomial) -> bool {
    if f.is_zero() || !f.is_homogeneous() {
        return false;
    }
    let partials = jacobian_ideal(f);
    if partials.iter().any(WeightedPolynomial::is_zero) {
        return false;
    }
    is_zero_dimensional(&jacobian_basis(f))
}

/// (n+2)d - 2σ for surfaces (n = 2): the expected socle degree.
pub fn socle_bound(ws: &WeightSystem) -> i64 {
    4 * i64::from(ws.degree()) - 2 * i64::from(ws.sigma())
}

#[derive(Clone, Debug)]
pub struct JacobianRingModel {
    f: WeightedPolynomial,
    gb: GroebnerBasis,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    socle_degree: u32,
    socle_monomial: Monomial,
    /// Normal forms of monomials seen so far; reduction is linear, so these suffice.
    nf_cache: Arc<RwLock<HashMap<Monomial, WeightedPolynomial>>>,
}

impl JacobianRingModel {
    pub fn polynomial(&self) -> &WeightedPolynomial {
        &self.f
    }

    pub fn weight_system(&self) -> &WeightSystem {
        self.f.weight_system()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Highest cached degree; the Hilbert function is verified to vanish from
    /// the socle degree up to here.
    pub fn band_top(&self) -> u32 {
        (self.bases.len() - 1) as u32
    }

    /// Standard-monomial basis of R_k; empty outside the cached band or for k < 0.
    pub fn basis(&self, k: i64) -> &[Monomial] {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.bases.get(k))
            .map_or(&[], Vec::as_slice)
    }

    pub fn hilbert(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    /// dim R_k for k = 0..=band_top.
    pub fn hilbert_vector(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    pub fn socle_monomial(&self) -> Monomial {
        self.socle_monomial
    }

    pub fn socle_bound(&self) -> i64 {
        socle_bound(self.weight_system())
    }

    pub fn total_dimension(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    pub fn reduce(&self, p: &WeightedPolynomial) -> WeightedPolynomial {
        let mut out = WeightedPolynomial::zero(*self.weight_system());
        for (m, c) in p.terms() {
            if self.gb.is_standard(m) {
                out.add_term(*m, c.clone());
                continue;
            }
            let nf = self.monomial_normal_form(m);
            for (n, d) in nf.terms() {
                out.add_term(*n, c * d);
            }
        }
        out
    }

    fn monomial_normal_form(&self, m: &Monomial) -> WeightedPolynomial {
        if let Some(nf) = self.nf_cache.read().expect("cache lock").get(m) {
            return nf.clone();
        }
        let nf = normal_form(
            &WeightedPolynomial::monomial(*self.weight_system(), *m),
            &self.gb,
        );
        self.nf_cache
            .write()
            .expect("cache lock")
            .insert(*m, nf.clone());
        nf
    }

    /// Coordinates of the class of `p` (homogeneous of degree k) in the basis of R_k.
    pub fn coordinates(&self, p: &WeightedPolynomial, k: u32) -> Result<Vec<Rational>, RingError> {
        let idx = self
            .index
            .get(k as usize)
            .ok_or(RingError::DegreeOutOfBand {
                degree: i64::from(k),
                top: self.band_top(),
            })?;
        let mut v = vec![Rational::zero(); idx.len()];
        let nf = self.reduce(p);
        for (m, c) in nf.terms() {
            match idx.get(m) {
                Some(&i) => v[i] = c.clone(),
                None => {
                    return Err(RingError::WrongDegree {
                        expected: k,
                        found: m.weighted_degree(self.weight_system()),
                    })
                }
            }
        }
        Ok(v)
    }

    /// Element of R_k with the given coordinates.
    pub fn element(&self, k: u32, coords: &[Rational]) -> WeightedPolynomial {
        WeightedPolynomial::from_terms(
            *self.weight_system(),
            self.basis(i64::from(k))
                .iter()
                .copied()
                .zip(coords.iter().cloned()),
        )
    }

    /// Coefficient of the socle monomial in the normal form of `p`; this fixes R_N ≅ Q.
    pub fn socle_coefficient(&self, p: &WeightedPolynomial) -> Rational {
        self.reduce(p).coefficient(&self.socle_monomial)
    }
}

/// Builds R(f) for quasi-smooth `f`, with bases through twice the socle bound.
pub fn jacobian_ring(f: &WeightedPolynomial) -> Result<JacobianRingModel, RingError> {
    let ws = *f.weight_system();
    let d = f.homogeneous_degree().ok_or(RingError::NotHomogeneous)?;
    if d != ws.degree() {
        return Err(RingError::WrongDegree {
            expected: ws.degree(),
            found: d,
        });
    }
    if jacobian_ideal(f).iter().any(WeightedPolynomial::is_zero) {
        return Err(RingError::NotQuasiSmooth);
    }
    ring_from_basis(f, jacobian_basis(f))
}

fn ring_from_basis(
    f: &WeightedPolynomial,
    gb: GroebnerBasis,
) -> Result<JacobianRingModel, RingError> {
    let ws = *f.weight_system();
    let d = ws.degree();
    if !is_zero_dimensional(&gb) {
        return Err(RingError::NotQuasiSmooth);
    }
    if gb.is_unit_ideal() {
        return Err(RingError::ZeroRing);
    }

    // Largest degree any standard monomial can have, from the pure-power caps.
    let mut box_top = 0u32;
    for i in 0..NVARS {
        let cap = gb
            .leading_monomials()
            .iter()
            .filter_map(Monomial::pure_power)
            .filter(|&(v, _)| v == i)
            .map(|(_, k)| k)
            .min()
            .expect("zero-dimensional");
        box_top += (cap - 1) * ws.weight(i);
    }
    let n_bound = socle_bound(&ws);
    let d = i64::from(d);
    let sigma = i64::from(ws.sigma());
    let top = [2 * n_bound, 3 * d - sigma, d, i64::from(box_top)]
        .into_iter()
        .max()
        .unwrap()
        .max(0) as u32;

    let bases: Vec<Vec<Monomial>> = (0..=top).map(|k| standard_monomials(&gb, k)).collect();
    let index = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect())
        .collect();
    let socle_degree = bases
        .iter()
        .rposition(|b| !b.is_empty())
        .expect("nonzero ring") as u32;
    let top_basis = &bases[socle_degree as usize];
    if top_basis.len() != 1 {
        return Err(RingError::SocleNotOneDimensional {
            degree: socle_degree,
            dim: top_basis.len(),
        });
    }
    let socle_monomial = top_basis[0];
    Ok(JacobianRingModel {
        f: f.clone(),
        gb,
        bases,
        index,
        socle_degree,
        socle_monomial,
        nf_cache: Arc::default(),
    })
}

/// Matrix of R_a -> R_{a+b}, v ↦ g·v, in the standard-monomial bases.
pub fn multiplication_matrix(
    model: &JacobianRingModel,
    g: &WeightedPolynomial,
    from_degree: u32,
) -> Result<RationalMatrix, RingError> {
    let b = g.homogeneous_degree().ok_or(RingError::NotHomogeneous)?;
    let target = from_degree + b;
    if target > model.band_top() {
        return Err(RingError::DegreeOutOfBand {
            degree: i64::from(target),
            top: model.band_top(),
        });
    }
    let src = model.basis(i64::from(from_degree));
    let dst_dim = model.hilbert(i64::from(target));
    let mut m = RationalMatrix::zeros(dst_dim, src.len());
    for (j, v) in src.iter().enumerate() {
        let col = model.coordinates(&g.mul_monomial(v), target)?;
        for (i, c) in col.into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c);
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub degree: u32,
    /// Rows indexed by the basis of R_i, columns by the basis of R_{N-i}.
    pub pairing_matrix: RationalMatrix,
    pub nondegenerate: bool,
}

/// Pairing R_i x R_{N-i} -> R_N ≅ Q.
pub fn duality_check(model: &JacobianRingModel, i: u32) -> DualityReport {
    let n = model.socle_degree();
    assert!(i <= n, "degree {i} above the socle degree {n}");
    let left = model.basis(i64::from(i));
    let right = model.basis(i64::from(n - i));
    let ws = *model.weight_system();
    let pairing = RationalMatrix::from_fn(left.len(), right.len(), |a, b| {
        model.socle_coefficient(&WeightedPolynomial::monomial(ws, left[a].mul(&right[b])))
    });
    let nondegenerate = left.len() == right.len() && pairing.rank() == left.len();
    DualityReport {
        degree: i,
        pairing_matrix: pairing,
        nondegenerate,
    }
}

/// Random members of S_d with every monomial present, coefficients in ±{1..9}.
fn random_members(ws: &WeightSystem, seed: u64) -> impl Iterator<Item = WeightedPolynomial> {
    let ws = *ws;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monomials = monomials_of_degree(&ws, ws.degree());
    (0..RANDOM_RETRIES).map(move |_| {
        WeightedPolynomial::from_terms(
            ws,
            monomials.iter().map(|m| {
                let mut c = 0i64;
                while c == 0 {
                    c = rng.random_range(-9..=9);
                }
                (*m, rat(c))
            }),
        )
    })
}

/// A quasi-smooth member of S_d with every monomial present, coefficients in ±{1..9}.
pub fn random_quasi_smooth(ws: &WeightSystem, seed: u64) -> Result<WeightedPolynomial, RingError> {
    random_members(ws, seed)
        .find(is_quasi_smooth)
        .ok_or(RingError::Exhausted {
            ws: *ws,
            attempts: RANDOM_RETRIES,
        })
}

/// The ring of [`random_quasi_smooth`]`(ws, seed)`, reusing the Gröbner basis from the check.
pub fn random_quasi_smooth_ring(
    ws: &WeightSystem,
    seed: u64,
) -> Result<JacobianRingModel, RingError> {
    for f in random_members(ws, seed) {
        if jacobian_ideal(&f).iter().any(WeightedPolynomial::is_zero) {
            continue;
        }
        let gb = jacobian_basis(&f);
        if is_zero_dimensional(&gb) {
            return ring_from_basis(&f, gb);
        }
    }
    Err(RingError::Exhausted {
        ws: *ws,
        attempts: RANDOM_RETRIES,
    })
}
