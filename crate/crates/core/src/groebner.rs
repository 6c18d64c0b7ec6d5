//! Buchberger's algorithm for homogeneous ideals of the weighted-graded ring,
//! plus normal forms and standard monomials of the quotient.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::polyalg::{
    canonical_cmp, monomials_in_box, monomials_of_degree, weighted_degree, Monomial, Rational,
    WeightSystem, WeightedPolynomial, NVARS,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Weighted degree, ties broken by reverse lexicographic order.
    #[default]
    WeightedDegRevLex,
    /// Weighted degree, ties broken by lexicographic order.
    WeightedDegLex,
}

/// Key whose lexicographic comparison realizes the order. Keys are additive:
/// key(u * v) = key(u) + key(v).
type OrderKey = (u32, [i64; NVARS]);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    ws: WeightSystem,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ws: WeightSystem) -> Self {
        MonomialOrder { kind, ws }
    }

    pub fn weighted_degrevlex(ws: WeightSystem) -> Self {
        Self::new(OrderKind::WeightedDegRevLex, ws)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn weight_system(&self) -> &WeightSystem {
        &self.ws
    }

    fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.0;
        let tail = match self.kind {
            OrderKind::WeightedDegRevLex => [
                -i64::from(e[3]),
                -i64::from(e[2]),
                -i64::from(e[1]),
                -i64::from(e[0]),
            ],
            OrderKind::WeightedDegLex => e.map(i64::from),
        };
        (weighted_degree(m, &self.ws), tail)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

fn add_keys(a: &OrderKey, b: &OrderKey) -> OrderKey {
    let mut t = a.1;
    for (x, y) in t.iter_mut().zip(b.1) {
        *x += y;
    }
    (a.0 + b.0, t)
}

/// Polynomial with terms sorted ascending in the monomial order; the leading term is last.
/// Coefficients are integers; ideal computations only care about the polynomial up to scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SortedPoly {
    terms: Vec<(OrderKey, Monomial, BigInt)>,
}

impl SortedPoly {
    /// Integer polynomial `q` and scale `s` with `q = s * p`.
    fn from_poly(p: &WeightedPolynomial, order: &MonomialOrder) -> (Self, Rational) {
        let den = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<_> = p
            .terms()
            .map(|(m, c)| (order.key(m), *m, c.numer() * (&den / c.denom())))
            .collect();
        terms.sort_by_key(|a| a.0);
        (SortedPoly { terms }, Rational::from_integer(den))
    }

    /// The rational polynomial `self * scale`.
    fn to_poly(&self, ws: WeightSystem, scale: &Rational) -> WeightedPolynomial {
        WeightedPolynomial::from_terms(
            ws,
            self.terms
                .iter()
                .map(|(_, m, c)| (*m, Rational::from_integer(c.clone()) * scale)),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").1
    }

    fn lc(&self) -> &BigInt {
        &self.terms.last().expect("nonzero").2
    }

    /// Divide out the content and make the leading coefficient positive.
    fn make_primitive(&mut self) {
        if self.is_zero() {
            return;
        }
        let mut g = content(self.terms.iter().map(|t| &t.2));
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.2 = &t.2 / &g;
            }
        }
    }

    /// Monic rational form.
    fn to_monic(&self, ws: WeightSystem) -> WeightedPolynomial {
        self.to_poly(ws, &Rational::new(BigInt::one(), self.lc().clone()))
    }

    /// self = a * self - b * m * g.
    fn scale_sub(
        &mut self,
        a: &BigInt,
        b: &BigInt,
        m: &Monomial,
        g: &SortedPoly,
        order: &MonomialOrder,
    ) {
        let mk = order.key(m);
        let a_one = a.is_one();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut x = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut y = g.terms.iter().peekable();
        loop {
            let ord = match (x.peek(), y.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(u), Some(v)) => u.0.cmp(&add_keys(&v.0, &mk)),
            };
            match ord {
                Ordering::Less => {
                    let (k, t, c) = x.next().unwrap();
                    out.push((k, t, if a_one { c } else { c * a }));
                }
                Ordering::Greater => {
                    let (k, t, c) = y.next().unwrap();
                    out.push((add_keys(k, &mk), t.mul(m), -(c * b)));
                }
                Ordering::Equal => {
                    let (k, t, c) = x.next().unwrap();
                    let (_, _, d) = y.next().unwrap();
                    let v = if a_one { c } else { c * a } - d * b;
                    if !v.is_zero() {
                        out.push((k, t, v));
                    }
                }
            }
        }
        self.terms = out;
    }
}

/// Gcd of the values, stopping early once it reaches one.
fn content<'a>(vals: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in vals {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Full reduction of `p` modulo `basis`. Returns `(r, s)` with `r` the remainder of `s * p`.
fn reduce(
    mut p: SortedPoly,
    basis: &[SortedPoly],
    order: &MonomialOrder,
) -> (SortedPoly, Rational) {
    let mut rem: Vec<(OrderKey, Monomial, BigInt)> = Vec::new();
    let mut scale = Rational::one();
    while let Some((_, m, c)) = p.terms.last() {
        let m = *m;
        let Some(g) = basis.iter().find(|g| g.lm().divides(&m)) else {
            rem.push(p.terms.pop().unwrap());
            continue;
        };
        let q = g.lm().quotient_of(&m).expect("divides");
        let h = c.gcd(g.lc());
        let a = g.lc() / &h;
        let b = c / &h;
        p.scale_sub(&a, &b, &q, g, order);
        if !a.is_one() {
            for t in &mut rem {
                t.2 *= &a;
            }
            scale *= Rational::from_integer(a);
        }
        let k = content(rem.iter().chain(p.terms.iter()).map(|t| &t.2));
        if !k.is_one() && !k.is_zero() {
            for t in rem.iter_mut().chain(p.terms.iter_mut()) {
                t.2 = &t.2 / &k;
            }
            scale /= Rational::from_integer(k);
        }
    }
    rem.reverse();
    (SortedPoly { terms: rem }, scale)
}

fn s_poly(f: &SortedPoly, g: &SortedPoly, order: &MonomialOrder) -> SortedPoly {
    let l = f.lm().lcm(g.lm());
    let uf = f.lm().quotient_of(&l).unwrap();
    let ug = g.lm().quotient_of(&l).unwrap();
    let h = f.lc().gcd(g.lc());
    let (cf, cg) = (g.lc() / &h, f.lc() / &h);
    let mut s = SortedPoly { terms: Vec::new() };
    s.scale_sub(&BigInt::one(), &-cf, &uf, f, order);
    s.scale_sub(&BigInt::one(), &cg, &ug, g, order);
    s
}

/// Reduced, monic Gröbner basis of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<SortedPoly>,
    generators: Vec<WeightedPolynomial>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    fn from_sorted(order: MonomialOrder, polys: Vec<SortedPoly>) -> Self {
        let ws = order.ws;
        let generators = polys.iter().map(|p| p.to_monic(ws)).collect();
        let leading = polys.iter().map(|p| *p.lm()).collect();
        GroebnerBasis {
            order,
            polys,
            generators,
            leading,
        }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Generators sorted ascending by leading monomial.
    pub fn generators(&self) -> &[WeightedPolynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    /// True when `m` lies outside the leading-term ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading.iter().any(|l| l.divides(m))
    }

    /// Every pairwise S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let s = s_poly(&self.polys[i], &self.polys[j], &self.order);
                if !reduce(s, &self.polys, &self.order).0.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Monic, and no term of any generator is divisible by another generator's leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.polys
            .iter()
            .zip(&self.generators)
            .enumerate()
            .all(|(i, (p, gen))| {
                gen.coefficient(&self.leading[i]).is_one()
                    && p.terms.iter().all(|(_, m, _)| {
                        self.leading
                            .iter()
                            .enumerate()
                            .all(|(j, l)| j == i || !l.divides(m))
                    })
            })
    }

    /// Exponent caps from pure-power leading monomials: standard monomials satisfy k_i < caps[i].
    fn caps(&self) -> Option<[u32; NVARS]> {
        if self.is_unit_ideal() {
            return Some([0; NVARS]);
        }
        let mut caps = [u32::MAX; NVARS];
        for l in &self.leading {
            if let Some((i, k)) = l.pure_power() {
                caps[i] = caps[i].min(k);
            }
        }
        caps.iter().all(|&c| c != u32::MAX).then_some(caps)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, all of which must be homogeneous.
pub fn buchberger(gens: &[WeightedPolynomial], order: MonomialOrder) -> GroebnerBasis {
    assert!(
        gens.iter().all(WeightedPolynomial::is_homogeneous),
        "buchberger requires homogeneous generators"
    );
    let mut basis: Vec<SortedPoly> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut s = SortedPoly::from_poly(g, &order).0;
        s.make_primitive();
        if !basis.contains(&s) {
            basis.push(s);
        }
    }
    if basis.iter().any(|g| g.lm().is_one()) {
        let one = SortedPoly::from_poly(
            &WeightedPolynomial::monomial(order.ws, Monomial::ONE),
            &order,
        )
        .0;
        return GroebnerBasis::from_sorted(order, vec![one]);
    }

    // Pairs keyed by (lcm key, i, j) so the lowest-degree pair is processed first.
    let mut queue: BTreeSet<(OrderKey, usize, usize)> = BTreeSet::new();
    let mut polys: Vec<SortedPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    for g in basis {
        gebauer_moeller(&mut polys, &mut active, &mut queue, g, &order);
    }

    while let Some((_, i, j)) = queue.pop_first() {
        let s = s_poly(&polys[i], &polys[j], &order);
        let mut h = reduce(s, &polys, &order).0;
        if h.is_zero() {
            continue;
        }
        h.make_primitive();
        if h.lm().is_one() {
            let one = SortedPoly::from_poly(
                &WeightedPolynomial::monomial(order.ws, Monomial::ONE),
                &order,
            )
            .0;
            return GroebnerBasis::from_sorted(order, vec![one]);
        }
        gebauer_moeller(&mut polys, &mut active, &mut queue, h, &order);
    }
    let mut basis: Vec<SortedPoly> = polys
        .into_iter()
        .zip(active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();

    // Minimize, then inter-reduce.
    basis.sort_by_key(|a| a.lm_key(&order));
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| m.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = reduce(minimal[i].clone(), &others, &order).0;
        r.make_primitive();
        reduced.push(r);
    }
    reduced.sort_by_key(|a| a.lm_key(&order));
    GroebnerBasis::from_sorted(order, reduced)
}

/// Add `h` to the basis, updating the pair queue with the Gebauer–Möller criteria.
fn gebauer_moeller(
    polys: &mut Vec<SortedPoly>,
    active: &mut Vec<bool>,
    queue: &mut BTreeSet<(OrderKey, usize, usize)>,
    h: SortedPoly,
    order: &MonomialOrder,
) {
    let n = polys.len();
    let lh = *h.lm();
    // Candidate new pairs (lcm, index, coprime).
    let cands: Vec<(Monomial, usize, bool)> = (0..n)
        .filter(|&i| active[i])
        .map(|i| {
            let li = polys[i].lm();
            (li.lcm(&lh), i, li.is_coprime(&lh))
        })
        .collect();
    // Drop a candidate whose lcm is a multiple of another's; among equal lcms keep one,
    // and none at all if any of them is coprime.
    let mut kept: Vec<(Monomial, usize, bool)> = Vec::new();
    for c in &cands {
        let properly = |o: &(Monomial, usize, bool)| o.0.divides(&c.0) && o.0 != c.0;
        if cands.iter().any(properly) {
            continue;
        }
        let equal_earlier_kept = kept.iter().any(|o| o.0 == c.0);
        let equal_coprime = cands.iter().any(|o| o.0 == c.0 && o.2);
        if !equal_earlier_kept && !equal_coprime {
            kept.push(*c);
        }
    }
    // Old pairs made redundant by h.
    queue.retain(|&(_, i, j)| {
        let l = polys[i].lm().lcm(polys[j].lm());
        !(lh.divides(&l) && polys[i].lm().lcm(&lh) != l && polys[j].lm().lcm(&lh) != l)
    });
    for (l, i, _) in kept {
        queue.insert((order.key(&l), i, n));
    }
    for i in 0..n {
        if active[i] && lh.divides(polys[i].lm()) {
            active[i] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

impl SortedPoly {
    fn lm_key(&self, order: &MonomialOrder) -> OrderKey {
        order.key(self.lm())
    }
}

/// Remainder of `p` on division by `gb`: no term is divisible by a leading monomial.
pub fn normal_form(p: &WeightedPolynomial, gb: &GroebnerBasis) -> WeightedPolynomial {
    let (sp, s0) = SortedPoly::from_poly(p, &gb.order);
    let (r, s) = reduce(sp, &gb.polys, &gb.order);
    if r.is_zero() {
        return WeightedPolynomial::zero(*p.weight_system());
    }
    r.to_poly(*p.weight_system(), &(s * s0).recip())
}

/// Every variable has a pure power among the leading monomials.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    gb.caps().is_some()
}

/// Degree-`k` monomials outside the leading-term ideal, in canonical order.
pub fn standard_monomials(gb: &GroebnerBasis, k: u32) -> Vec<Monomial> {
    let ws = gb.order.ws;
    let candidates = match gb.caps() {
        Some(caps) => monomials_in_box(&ws, k, caps),
        None => monomials_of_degree(&ws, k),
    };
    let mut out: Vec<Monomial> = candidates
        .into_iter()
        .filter(|m| gb.is_standard(m))
        .collect();
    out.sort_by(|a, b| canonical_cmp(a, b, &ws));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{fermat_polynomial, parse_polynomial, rat};

    fn ws() -> WeightSystem {
        WeightSystem::new([1, 1, 2, 5], 10).unwrap()
    }

    fn p(s: &str) -> WeightedPolynomial {
        parse_polynomial(s, &ws()).unwrap()
    }

    fn fermat_gb() -> GroebnerBasis {
        let f = fermat_polynomial(&ws()).unwrap();
        let gens: Vec<_> = (0..4).map(|i| f.partial_derivative(i)).collect();
        buchberger(&gens, MonomialOrder::weighted_degrevlex(ws()))
    }

    #[test]
    fn order_is_degree_compatible_revlex() {
        let o = MonomialOrder::weighted_degrevlex(ws());
        // x4 (deg 5) > x1^4 (deg 4)
        assert_eq!(
            o.cmp(&Monomial([0, 0, 0, 1]), &Monomial([4, 0, 0, 0])),
            Ordering::Greater
        );
        // same degree: revlex prefers smaller power of the last variable
        assert_eq!(
            o.cmp(&Monomial([1, 0, 0, 1]), &Monomial([0, 2, 2, 0])),
            Ordering::Less
        );
        assert_eq!(
            o.cmp(&Monomial([2, 0, 0, 0]), &Monomial([1, 1, 0, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn fermat_basis_is_monomial() {
        let gb = fermat_gb();
        let mut lms: Vec<_> = gb.leading_monomials().to_vec();
        lms.sort();
        assert_eq!(
            lms,
            vec![
                Monomial([0, 0, 0, 1]),
                Monomial([0, 0, 4, 0]),
                Monomial([0, 9, 0, 0]),
                Monomial([9, 0, 0, 0])
            ]
        );
        assert!(gb.generators().iter().all(|g| g.len() == 1));
        assert!(gb.is_reduced());
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn principal_monomial_ideal() {
        let gb = buchberger(&[p("x1")], MonomialOrder::weighted_degrevlex(ws()));
        assert_eq!(gb.generators(), &[p("x1")]);
        assert!(!is_zero_dimensional(&gb));
    }

    #[test]
    fn normal_forms_modulo_fermat() {
        let gb = fermat_gb();
        assert!(normal_form(&p("x4*x1"), &gb).is_zero());
        let socle = p("x1^8*x2^8*x3^3");
        assert_eq!(normal_form(&socle, &gb), socle);
        assert!(normal_form(&WeightedPolynomial::zero(ws()), &gb).is_zero());
    }

    #[test]
    fn zero_dimensionality() {
        assert!(is_zero_dimensional(&fermat_gb()));
        let gb = buchberger(&[p("x1^9")], MonomialOrder::weighted_degrevlex(ws()));
        assert!(!is_zero_dimensional(&gb));
    }

    #[test]
    fn standard_monomials_of_fermat() {
        let gb = fermat_gb();
        let r11 = standard_monomials(&gb, 11);
        assert_eq!(r11.len(), 28);
        let blocks: Vec<usize> = (0..4)
            .rev()
            .map(|c| r11.iter().filter(|m| m.0[2] == c).count())
            .collect();
        assert_eq!(blocks, vec![6, 8, 8, 6]);
        let r10 = standard_monomials(&gb, 10);
        let blocks: Vec<usize> = (0..4)
            .rev()
            .map(|c| r10.iter().filter(|m| m.0[2] == c).count())
            .collect();
        assert_eq!(blocks, vec![5, 7, 9, 7]);
        assert!(standard_monomials(&gb, 23).is_empty());
    }

    #[test]
    fn non_monomial_ideal() {
        // (x1^2 - x2^2, x1*x2) in P(1,1,2,5): basis gains x2^3.
        let gb = buchberger(
            &[p("x1^2 - x2^2"), p("x1*x2")],
            MonomialOrder::weighted_degrevlex(ws()),
        );
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.is_reduced());
        assert!(normal_form(&p("x2^3"), &gb).is_zero());
        assert_eq!(normal_form(&p("x1^2"), &gb), p("x2^2"));
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(
            &[p("x1 + x2"), WeightedPolynomial::constant(ws(), rat(3))],
            MonomialOrder::weighted_degrevlex(ws()),
        );
        assert!(gb.is_unit_ideal());
        assert!(is_zero_dimensional(&gb));
        assert!(standard_monomials(&gb, 0).is_empty());
    }
}
