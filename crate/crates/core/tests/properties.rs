// Oracles index explicitly to mirror textbook elimination.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use wphodge::exactla::{kernel_basis, pencil_at, pencil_min_rank, rank};
use wphodge::groebner::{buchberger, normal_form, standard_monomials};
use wphodge::jacring::{duality_check, jacobian_ring, multiplication_matrix};
use wphodge::polyalg::{fermat_polynomial, monomials_of_degree, parse_polynomial};
use wphodge::{
    GroebnerBasis, Monomial, MonomialOrder, PencilOptions, RationalMatrix, WeightSystem,
    WeightedPolynomial,
};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn decic() -> WeightSystem {
    WeightSystem::new([1, 1, 2, 5], 10).unwrap()
}

/// The leading weight 1 keeps every system reduced.
fn weights() -> impl Strategy<Value = [u32; 4]> {
    (1u32..=3, 1u32..=4, 1u32..=6).prop_map(|(a, b, c)| [1, a, b, c])
}

/// A homogeneous polynomial of degree k with coefficients drawn from `coeffs`, cycling.
fn homogeneous(ws: WeightSystem, k: u32, coeffs: &[(i64, i64)]) -> WeightedPolynomial {
    let mons = monomials_of_degree(&ws, k);
    WeightedPolynomial::from_terms(
        ws,
        mons.iter()
            .zip(coeffs.iter().cycle())
            .map(|(m, &(n, d))| (*m, Q::new(n.into(), d.into()))),
    )
}

fn coeff_list() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..12)
}

/// Number of degree-k monomials from the product of 1/(1 - t^w).
fn series_count(w: [u32; 4], k: u32) -> usize {
    let mut c = vec![0usize; k as usize + 1];
    c[0] = 1;
    for wi in w {
        for n in wi as usize..=k as usize {
            c[n] += c[n - wi as usize];
        }
    }
    c[k as usize]
}

/// Plain Gaussian elimination over Q.
fn oracle_rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<Q>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let f = &rows[i][c] / &rows[r][c];
            for j in c..m.cols() {
                let v = &f * &rows[r][j];
                rows[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| {
            // Repeat a row now and then so deficient ranks show up.
            let mut rows = rows;
            if rows.len() > 2 {
                rows[1] = rows[0]
                    .iter()
                    .zip(&rows[2])
                    .map(|(a, b)| a - 2 * b)
                    .collect();
            }
            RationalMatrix::from_i64(&rows)
        })
    })
}

/// Three quadrics in P^3 plus a cubic; small enough for quick bases.
fn small_ideal() -> impl Strategy<Value = Vec<WeightedPolynomial>> {
    let ws = WeightSystem::new([1, 1, 1, 1], 2).unwrap();
    (coeff_list(), coeff_list(), coeff_list()).prop_map(move |(a, b, c)| {
        vec![
            homogeneous(ws, 2, &a),
            homogeneous(ws, 2, &b),
            homogeneous(ws, 3, &c),
        ]
    })
}

fn gb_of(gens: &[WeightedPolynomial]) -> GroebnerBasis {
    buchberger(
        gens,
        MonomialOrder::weighted_degrevlex(*gens[0].weight_system()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(w in weights(), k in 1u32..=10, coeffs in coeff_list()) {
        let ws = WeightSystem::new(w, k).unwrap();
        let f = homogeneous(ws, k, &coeffs);
        let back = parse_polynomial(&f.to_string(), &ws).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn euler_relation(w in weights(), k in 1u32..=10, coeffs in coeff_list()) {
        let ws = WeightSystem::new(w, k).unwrap();
        let f = homogeneous(ws, k, &coeffs);
        let mut lhs = WeightedPolynomial::zero(ws);
        for i in 0..4 {
            let xi = WeightedPolynomial::monomial(ws, Monomial::var(i));
            let t = (&xi * &f.partial_derivative(i)).scale(&q(i64::from(w[i])));
            lhs = &lhs + &t;
        }
        prop_assert_eq!(lhs, f.scale(&q(i64::from(k))));
    }

    #[test]
    fn monomial_counts_match_series(w in weights(), k in 0u32..=30) {
        let ws = WeightSystem::new(w, 1).unwrap();
        let mons = monomials_of_degree(&ws, k);
        prop_assert_eq!(mons.len(), series_count(w, k));
        prop_assert!(mons.iter().all(|m| m.weighted_degree(&ws) == k));
    }

    #[test]
    fn rank_implementations_agree(m in small_matrix()) {
        let r = rank(&m);
        prop_assert_eq!(r, oracle_rank(&m));
        prop_assert_eq!(m.cols() - kernel_basis(&m).len(), r);
        prop_assert_eq!(rank(&m.transpose()), r);
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pencil_certificate_bounds_sampled_ranks(
        diag_a in prop::collection::vec(-3i64..=3, 1..6),
        diag_b in prop::collection::vec(-3i64..=3, 1..6),
        seed in 0u64..1000,
    ) {
        let n = diag_a.len().min(diag_b.len());
        let a = RationalMatrix::from_fn(n, n, |i, j| if i == j { q(diag_a[i]) } else { q(0) });
        let b = RationalMatrix::from_fn(n, n, |i, j| if i == j { q(diag_b[i]) } else { q(0) });
        let exact = pencil_min_rank(&a, &b, PencilOptions::exact()).unwrap();
        let sampled = pencil_min_rank(&a, &b, PencilOptions::sampled(seed)).unwrap();
        prop_assert!(sampled.min_rank >= exact.min_rank);
        prop_assert!(sampled.min_rank <= exact.generic_rank);
        // Every rational zero of a drop form has exactly the recorded rank.
        for dp in &exact.drop_points {
            if dp.form.degree() == 1 {
                let c = dp.form.coefficients();
                // c0*b + c1*a = 0 at (a : b) = (-c0 : c1).
                let (pa, pb) = (Q::from_integer(-c[0].clone()), Q::from_integer(c[1].clone()));
                prop_assert_eq!(rank(&pencil_at(&a, &b, &pa, &pb)), dp.rank);
            }
        }
    }

    #[test]
    fn normal_form_properties(gens in small_ideal(), c1 in coeff_list(), c2 in coeff_list(), s in -5i64..=5) {
        let gb = gb_of(&gens);
        let ws = *gens[0].weight_system();
        let p = homogeneous(ws, 4, &c1);
        let r = homogeneous(ws, 4, &c2);
        let np = normal_form(&p, &gb);
        prop_assert_eq!(normal_form(&np, &gb), np.clone());
        let combo = &p.scale(&q(s)) + &r;
        let lin = &np.scale(&q(s)) + &normal_form(&r, &gb);
        prop_assert_eq!(normal_form(&combo, &gb), lin);
        // Explicit ideal members reduce to zero.
        let member = &(&gens[0] * &homogeneous(ws, 2, &c1)) + &(&gens[2] * &homogeneous(ws, 1, &c2));
        prop_assert!(normal_form(&member, &gb).is_zero());
        prop_assert!(gb.satisfies_buchberger_criterion());
        prop_assert!(gb.is_reduced());
    }

    #[test]
    fn groebner_is_permutation_independent(gens in small_ideal(), rot in 0usize..3) {
        let mut perm = gens.clone();
        perm.rotate_left(rot);
        perm.reverse();
        let (g1, g2) = (gb_of(&gens), gb_of(&perm));
        prop_assert_eq!(g1.generators(), g2.generators());
    }
}

#[test]
fn fermat_standard_monomials_match_exclusion_count() {
    let ws = decic();
    let f = fermat_polynomial(&ws).unwrap();
    let gens: Vec<_> = (0..4).map(|i| f.partial_derivative(i)).collect();
    let gb = gb_of(&gens);
    for k in 0..25u32 {
        let mut count = 0;
        for a in 0..=8u32 {
            for b in 0..=8u32 {
                for c in 0..=3u32 {
                    if a + b + 2 * c == k {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(standard_monomials(&gb, k).len(), count, "degree {k}");
    }
}

#[test]
fn fermat_ring_duality_and_symmetry() {
    let m = jacobian_ring(&fermat_polynomial(&decic()).unwrap()).unwrap();
    let n = m.socle_degree();
    assert_eq!(n, 22);
    for i in 0..=n {
        assert_eq!(
            m.hilbert(i64::from(i)),
            m.hilbert(i64::from(n - i)),
            "degree {i}"
        );
        let d = duality_check(&m, i);
        assert!(d.nondegenerate, "degree {i}");
        assert_eq!(
            d.pairing_matrix.transpose(),
            duality_check(&m, n - i).pairing_matrix
        );
    }
    assert_eq!(
        duality_check(&m, n).pairing_matrix,
        RationalMatrix::identity(1)
    );
}

#[test]
fn multiplication_matrices_compose() {
    let ws = decic();
    let m = jacobian_ring(&fermat_polynomial(&ws).unwrap()).unwrap();
    let g = parse_polynomial("x1 - 2*x2", &ws).unwrap();
    let h = parse_polynomial("x3 + x1*x2 - 3*x2^2", &ws).unwrap();
    for a in [0u32, 5, 9, 12] {
        let gh = multiplication_matrix(&m, &(&g * &h), a).unwrap();
        let mh = multiplication_matrix(&m, &h, a).unwrap();
        let mg = multiplication_matrix(&m, &g, a + 2).unwrap();
        assert_eq!(gh, mg.mul(&mh).unwrap(), "from degree {a}");
    }
}
