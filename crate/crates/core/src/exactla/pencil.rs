//! Minimum rank of a matrix pencil a*A + b*B over the whole projective line.
//!
//! Exact mode works over Q(t) with t = a/b. A rank drop at (a:b) forces every
//! maximal nonvanishing minor to vanish there, so the roots of (a gcd of) such
//! minors, together with (1:0) when the homogenized minor is divisible by b,
//! are the only candidates. Candidates that are not rational are handled
//! without root isolation: the rank is recomputed over Q[t]/(g) for the
//! squarefree candidate polynomial g, splitting g whenever a pivot turns out to
//! be a zero divisor.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::upoly::UniPoly;
use super::{bareiss, rank, RationalMatrix};
use crate::error::LinalgError;
use crate::polyalg::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PencilMode {
    #[default]
    Exact,
    Sampled,
}

impl fmt::Display for PencilMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilMode::Exact => write!(f, "exact"),
            PencilMode::Sampled => write!(f, "sampled"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PencilOptions {
    pub mode: PencilMode,
    pub seed: u64,
    /// Random points in sampled mode, besides (1:0) and (0:1).
    pub samples: usize,
}

impl PencilOptions {
    pub const DEFAULT_SAMPLES: usize = 16;

    pub fn exact() -> Self {
        PencilOptions {
            mode: PencilMode::Exact,
            seed: 0,
            samples: Self::DEFAULT_SAMPLES,
        }
    }

    pub fn sampled(seed: u64) -> Self {
        PencilOptions {
            mode: PencilMode::Sampled,
            seed,
            samples: Self::DEFAULT_SAMPLES,
        }
    }
}

impl Default for PencilOptions {
    fn default() -> Self {
        Self::exact()
    }
}

/// Binary form with integer coefficients; `coeffs[i]` multiplies a^i * b^(deg - i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        BinaryForm { coeffs }
    }

    /// Homogenization of g(t), t = a/b.
    fn from_affine(g: &UniPoly) -> Self {
        BinaryForm {
            coeffs: g.primitive_integer_coeffs(),
        }
    }

    /// The form `b`, vanishing exactly at (1:0).
    fn at_infinity() -> Self {
        BinaryForm {
            coeffs: vec![BigInt::one(), BigInt::zero()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Rational::from_integer(c.clone()) * pow(a, i) * pow(b, d - i);
            acc += term;
        }
        acc
    }

    pub fn vanishes_at(&self, a: &Rational, b: &Rational) -> bool {
        self.eval(a, b).is_zero()
    }
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mut vars = Vec::new();
            match i {
                0 => {}
                1 => vars.push("a".to_string()),
                _ => vars.push(format!("a^{i}")),
            }
            match d - i {
                0 => {}
                1 => vars.push("b".to_string()),
                k => vars.push(format!("b^{k}")),
            }
            let abs = c.abs();
            let body = match (vars.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => vars.join("*"),
                (false, false) => format!("{abs}*{}", vars.join("*")),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All points of P^1 where `form` vanishes share the rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DropPoint {
    pub form: BinaryForm,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilRankCertificate {
    pub generic_rank: usize,
    pub min_rank: usize,
    pub drop_points: Vec<DropPoint>,
    pub mode: PencilMode,
    /// Sampled mode only.
    pub seed: Option<u64>,
    /// Number of points evaluated in sampled mode; zero in exact mode.
    pub points_evaluated: usize,
}

impl PencilRankCertificate {
    pub fn is_certifying(&self) -> bool {
        self.mode == PencilMode::Exact
    }
}

/// a*A + b*B
pub fn pencil_at(
    a_mat: &RationalMatrix,
    b_mat: &RationalMatrix,
    a: &Rational,
    b: &Rational,
) -> RationalMatrix {
    RationalMatrix::from_fn(a_mat.rows(), a_mat.cols(), |i, j| {
        a * a_mat.get(i, j) + b * b_mat.get(i, j)
    })
}

pub fn pencil_min_rank(
    a_mat: &RationalMatrix,
    b_mat: &RationalMatrix,
    opts: PencilOptions,
) -> Result<PencilRankCertificate, LinalgError> {
    if a_mat.shape() != b_mat.shape() {
        return Err(LinalgError::ShapeMismatch {
            left: a_mat.shape(),
            right: b_mat.shape(),
        });
    }
    Ok(match opts.mode {
        PencilMode::Exact => exact(a_mat, b_mat),
        PencilMode::Sampled => sampled(a_mat, b_mat, opts.seed, opts.samples),
    })
}

/// Entries t*A_ij + B_ij.
fn poly_matrix(a_mat: &RationalMatrix, b_mat: &RationalMatrix) -> Vec<Vec<UniPoly>> {
    (0..a_mat.rows())
        .map(|i| {
            (0..a_mat.cols())
                .map(|j| UniPoly::linear(a_mat.get(i, j).clone(), b_mat.get(i, j).clone()))
                .collect()
        })
        .collect()
}

fn exact(a_mat: &RationalMatrix, b_mat: &RationalMatrix) -> PencilRankCertificate {
    let m = poly_matrix(a_mat, b_mat);
    let elim = bareiss(m.clone());
    let r = elim.rank;
    let mut cert = PencilRankCertificate {
        generic_rank: r,
        min_rank: r,
        drop_points: Vec::new(),
        mode: PencilMode::Exact,
        seed: None,
        points_evaluated: 0,
    };
    if r == 0 {
        return cert;
    }

    // Candidates: common zeros of a few maximal minors.
    let minor_degree_drops = |p: &UniPoly| p.degree().is_none_or(|d| d < r);
    let mut candidate = elim.last_pivot.clone();
    let mut at_infinity = minor_degree_drops(&candidate);
    let variants: [(bool, bool); 3] = [(true, false), (false, true), (true, true)];
    for (rev_rows, rev_cols) in variants {
        if candidate.is_constant() && !at_infinity {
            break;
        }
        let permuted: Vec<Vec<UniPoly>> = reorder(&m, rev_rows, rev_cols);
        let e = bareiss(permuted);
        debug_assert_eq!(e.rank, r);
        candidate = candidate.gcd(&e.last_pivot);
        at_infinity &= minor_degree_drops(&e.last_pivot);
    }

    if at_infinity {
        let rk = rank(a_mat);
        if rk < r {
            cert.drop_points.push(DropPoint {
                form: BinaryForm::at_infinity(),
                rank: rk,
            });
        }
    }
    let g = candidate.squarefree_part();
    if !g.is_constant() {
        let reduced: Vec<Vec<UniPoly>> = m
            .iter()
            .map(|row| row.iter().map(|e| e.rem(&g)).collect())
            .collect();
        let mut parts = Vec::new();
        rank_over_quotient(reduced, g, 0, 0, &mut parts);
        for (component, rk) in parts {
            if rk < r {
                cert.drop_points.push(DropPoint {
                    form: BinaryForm::from_affine(&component),
                    rank: rk,
                });
            }
        }
    }
    cert.drop_points
        .sort_by_key(|x| (x.form.degree(), x.form.to_string()));
    cert.min_rank = cert.drop_points.iter().map(|d| d.rank).fold(r, usize::min);
    cert
}

fn reorder(m: &[Vec<UniPoly>], rev_rows: bool, rev_cols: bool) -> Vec<Vec<UniPoly>> {
    let mut out: Vec<Vec<UniPoly>> = m.to_vec();
    if rev_rows {
        out.reverse();
    }
    if rev_cols {
        for row in &mut out {
            row.reverse();
        }
    }
    out
}

/// Gaussian elimination over Q[t]/(g), g squarefree, continuing from pivot
/// position (r, c). Emits (component, rank) pairs whose components multiply to g.
fn rank_over_quotient(
    mut m: Vec<Vec<UniPoly>>,
    g: UniPoly,
    mut r: usize,
    mut c: usize,
    out: &mut Vec<(UniPoly, usize)>,
) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    while r < rows && c < cols {
        let mut pivot = None;
        for i in r..rows {
            let e = &m[i][c];
            if e.is_zero() {
                continue;
            }
            let h = e.gcd(&g);
            if h.is_constant() {
                pivot = Some(i);
                break;
            }
            // e is a zero divisor: it vanishes modulo h and is a unit modulo g/h.
            let rest = g.div_rem(&h).0.monic();
            let modulo = |p: &UniPoly| -> Vec<Vec<UniPoly>> {
                m.iter()
                    .map(|row| row.iter().map(|x| x.rem(p)).collect())
                    .collect()
            };
            let (mh, mr) = (modulo(&h), modulo(&rest));
            rank_over_quotient(mh, h, r, c, out);
            rank_over_quotient(mr, rest, r, c, out);
            return;
        }
        let Some(p) = pivot else {
            c += 1;
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse_mod(&g).expect("unit");
        let pivot_row: Vec<UniPoly> = m[r].iter().map(|x| x.mul(&inv).rem(&g)).collect();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                if pivot_row[j].is_zero() {
                    continue;
                }
                row[j] = row[j].sub(&f.mul(&pivot_row[j])).rem(&g);
            }
        }
        m[r] = pivot_row;
        r += 1;
        c += 1;
    }
    out.push((g, r));
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.random_range(-99..=99);
    let mut d: i64 = 0;
    while d == 0 {
        d = rng.random_range(-99..=99);
    }
    Rational::new(n.into(), d.into())
}

fn sampled(
    a_mat: &RationalMatrix,
    b_mat: &RationalMatrix,
    seed: u64,
    samples: usize,
) -> PencilRankCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = vec![
        (Rational::one(), Rational::zero()),
        (Rational::zero(), Rational::one()),
    ];
    while points.len() < samples + 2 {
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        points.push((a, b));
    }
    let ranks: Vec<usize> = points
        .par_iter()
        .map(|(a, b)| rank(&pencil_at(a_mat, b_mat, a, b)))
        .collect();
    let generic = ranks.iter().copied().max().unwrap_or(0);
    let mut drop_points: Vec<DropPoint> = points
        .iter()
        .zip(&ranks)
        .filter(|(_, &rk)| rk < generic)
        .map(|((a, b), &rk)| {
            // vanishing at (a:b): b*A - a*B in the variables (A, B) = (a, b)
            let g = UniPoly::linear(b.clone(), -a.clone());
            let form = if b.is_zero() {
                BinaryForm::at_infinity()
            } else {
                BinaryForm::from_affine(&g)
            };
            DropPoint { form, rank: rk }
        })
        .collect();
    drop_points.sort_by_key(|x| x.form.to_string());
    drop_points.dedup();
    PencilRankCertificate {
        generic_rank: generic,
        min_rank: ranks.iter().copied().min().unwrap_or(0),
        drop_points,
        mode: PencilMode::Sampled,
        seed: Some(seed),
        points_evaluated: points.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn identity_pencil_drops_on_a_plus_b() {
        let i = RationalMatrix::identity(4);
        let c = pencil_min_rank(&i, &i, PencilOptions::exact()).unwrap();
        assert_eq!(c.generic_rank, 4);
        assert_eq!(c.min_rank, 0);
        assert_eq!(c.drop_points.len(), 1);
        assert_eq!(c.drop_points[0].form.to_string(), "a + b");
        assert_eq!(c.drop_points[0].rank, 0);
    }

    #[test]
    fn diagonal_pencil_drops_at_both_ends() {
        let a = RationalMatrix::from_i64(&[vec![1, 0], vec![0, 0]]);
        let b = RationalMatrix::from_i64(&[vec![0, 0], vec![0, 1]]);
        let c = pencil_min_rank(&a, &b, PencilOptions::exact()).unwrap();
        assert_eq!(c.generic_rank, 2);
        assert_eq!(c.min_rank, 1);
        let forms: Vec<String> = c.drop_points.iter().map(|d| d.form.to_string()).collect();
        assert_eq!(forms, vec!["a", "b"]);
        assert!(c.drop_points.iter().all(|d| d.rank == 1));
    }

    #[test]
    fn rotation_drops_only_at_complex_points() {
        // a*I + b*J with J^2 = -1 is singular only where a^2 + b^2 = 0.
        let i = RationalMatrix::identity(2);
        let j = RationalMatrix::from_i64(&[vec![0, -1], vec![1, 0]]);
        let c = pencil_min_rank(&i, &j, PencilOptions::exact()).unwrap();
        assert_eq!(c.generic_rank, 2);
        assert_eq!(c.min_rank, 1);
        assert_eq!(c.drop_points.len(), 1);
        assert_eq!(c.drop_points[0].form.to_string(), "a^2 + b^2");
        // sampling over the rationals cannot see it
        let s = pencil_min_rank(&i, &j, PencilOptions::sampled(3)).unwrap();
        assert_eq!(s.min_rank, 2);
        assert!(!s.is_certifying());
    }

    #[test]
    fn splitting_separates_ranks() {
        // diag(t - 1, t - 1, t - 2): the minor's squarefree part t^2 - 3t + 2 splits.
        let a = RationalMatrix::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let b = RationalMatrix::from_i64(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -2]]);
        let c = pencil_min_rank(&a, &b, PencilOptions::exact()).unwrap();
        assert_eq!(c.generic_rank, 3);
        assert_eq!(c.min_rank, 1);
        let mut got: Vec<(String, usize)> = c
            .drop_points
            .iter()
            .map(|d| (d.form.to_string(), d.rank))
            .collect();
        got.sort();
        assert_eq!(
            got,
            vec![("a - 2*b".to_string(), 2), ("a - b".to_string(), 1)]
        );
        for d in &c.drop_points {
            // the recorded rank is attained at the rational root
            let root = match d.form.coefficients() {
                [c0, c1] => Rational::new(-c0.clone(), c1.clone()),
                _ => unreachable!(),
            };
            assert_eq!(rank(&pencil_at(&a, &b, &root, &rat(1))), d.rank);
        }
    }

    #[test]
    fn shape_mismatch() {
        let a = RationalMatrix::identity(2);
        let b = RationalMatrix::identity(3);
        assert!(pencil_min_rank(&a, &b, PencilOptions::exact()).is_err());
    }

    #[test]
    fn zero_pencil() {
        let z = RationalMatrix::zeros(3, 2);
        let c = pencil_min_rank(&z, &z, PencilOptions::exact()).unwrap();
        assert_eq!((c.generic_rank, c.min_rank), (0, 0));
    }

    #[test]
    fn form_rendering() {
        let f = BinaryForm::new(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(f.to_string(), "3*a^2 - 2*b^2");
        assert!(!f.vanishes_at(&rat(1), &rat(1)));
        assert!(BinaryForm::at_infinity().vanishes_at(&rat(1), &rat(0)));
    }
}
