use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::HodgeError;
use crate::exactla::{kernel_basis, RationalMatrix};
use crate::polyalg::{rat, Rational};

/// Block-diagonal rotation diag([[0,-1],[1,0]], ...) on Q^q.
pub fn standard_complex_structure(q: usize) -> Result<RationalMatrix, HodgeError> {
    if q == 0 || q % 2 != 0 {
        return Err(HodgeError::InvalidComplexStructure(format!(
            "dimension {q} is not positive and even"
        )));
    }
    let mut j = RationalMatrix::zeros(q, q);
    for k in (0..q).step_by(2) {
        j.set(k, k + 1, rat(-1));
        j.set(k + 1, k, rat(1));
    }
    Ok(j)
}

/// Q J₀ Qᵀ where Q is a product of three Householder reflections with small random integer vectors.
pub fn random_complex_structure(q: usize, seed: u64) -> Result<RationalMatrix, HodgeError> {
    let j0 = standard_complex_structure(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut qm = RationalMatrix::identity(q);
    for _ in 0..3 {
        let v: Vec<Rational> = loop {
            let v: Vec<i64> = (0..q).map(|_| rng.random_range(-9..=9)).collect();
            if v.iter().any(|&x| x != 0) {
                break v.into_iter().map(rat).collect();
            }
        };
        qm = qm.mul(&householder(&v))?;
    }
    Ok(qm.mul(&j0)?.mul(&qm.transpose())?)
}

/// I - 2 v vᵀ / (vᵀ v).
fn householder(v: &[Rational]) -> RationalMatrix {
    let n = v.len();
    let norm: Rational = v.iter().map(|x| x * x).sum();
    let c = rat(2) / norm;
    RationalMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j {
            Rational::one()
        } else {
            Rational::zero()
        };
        delta - &c * &v[i] * &v[j]
    })
}

/// Checks J² = -I and JᵀJ = I.
pub fn check_complex_structure(j: &RationalMatrix) -> Result<(), HodgeError> {
    let (r, c) = j.shape();
    if r != c || r == 0 || r % 2 != 0 {
        return Err(HodgeError::InvalidComplexStructure(format!(
            "shape {r}x{c} is not square of even size"
        )));
    }
    let id = RationalMatrix::identity(r);
    if j.mul(j)? != id.scale(&rat(-1)) {
        return Err(HodgeError::InvalidComplexStructure("J^2 != -I".into()));
    }
    if j.transpose().mul(j)? != id {
        return Err(HodgeError::InvalidComplexStructure(
            "J is not orthogonal".into(),
        ));
    }
    Ok(())
}

/// {X ∈ Hom(Q², Q^q) : J X = X ı̂}, with X stored as the stacked column [X e₁; X e₂].
#[derive(Clone, Debug)]
pub struct GeodesicTangentSpace {
    pub q: usize,
    /// 2q rows; columns span the space.
    pub basis: RationalMatrix,
}

impl GeodesicTangentSpace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Whether every column of `w` (2q rows) lies in the space.
    pub fn contains(&self, w: &RationalMatrix) -> Result<bool, HodgeError> {
        let joint = self.basis.hstack(w)?;
        Ok(joint.rank() == self.basis.rank())
    }
}

/// Solves J X = X ı̂ for p = 2, where ı̂ = [[0,-1],[1,0]].
pub fn geodesic_tangent_space(j: &RationalMatrix) -> Result<GeodesicTangentSpace, HodgeError> {
    check_complex_structure(j)?;
    let q = j.rows();
    // J X - X ı̂ = [J x - y; J y + x] for X = [x | y].
    let id = RationalMatrix::identity(q);
    let top = j.hstack(&id.scale(&rat(-1)))?;
    let bottom = id.hstack(j)?;
    let constraints = top.vstack(&bottom)?;
    let kernel = kernel_basis(&constraints);
    let basis = RationalMatrix::from_fn(2 * q, kernel.len(), |r, c| kernel[c][r].clone());
    Ok(GeodesicTangentSpace { q, basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_structures() {
        for q in [2, 28] {
            let j = standard_complex_structure(q).unwrap();
            check_complex_structure(&j).unwrap();
            assert_eq!(geodesic_tangent_space(&j).unwrap().dim(), q);
        }
        assert!(standard_complex_structure(3).is_err());
    }

    #[test]
    fn random_structures_are_valid() {
        for seed in 0..3 {
            let j = random_complex_structure(8, seed).unwrap();
            check_complex_structure(&j).unwrap();
            let t = geodesic_tangent_space(&j).unwrap();
            assert_eq!(t.dim(), 8);
            assert!(t.contains(&t.basis).unwrap());
        }
        assert_ne!(
            random_complex_structure(8, 0).unwrap(),
            random_complex_structure(8, 1).unwrap()
        );
    }

    #[test]
    fn rejects_non_structures() {
        let id = RationalMatrix::identity(4);
        assert!(geodesic_tangent_space(&id).is_err());
        // Squares to -I but is not orthogonal.
        let skewed = RationalMatrix::from_i64(&[vec![1, -2], vec![1, -1]]);
        assert_eq!(
            skewed.mul(&skewed).unwrap(),
            RationalMatrix::identity(2).scale(&rat(-1))
        );
        assert!(matches!(
            check_complex_structure(&skewed),
            Err(HodgeError::InvalidComplexStructure(_))
        ));
    }
}
