use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use permucell_core::brackets::{
    gerstenhaber_bracket, schouten_bracket, schouten_bracket_grafted, schouten_bracket_odd, Cochain,
    PolyVecLabel, PolyVector,
};
use permucell_core::hoch::{full_hoch_labels, FullHochLabel};
use permucell_core::polyalg::{monomials, poly_derivative, squarefree_monomials, Monomial, Poly};
use proptest::prelude::*;

type Q = BigRational;

fn coeff() -> impl Strategy<Value = Q> {
    prop_oneof![-3i64..=-1, 1i64..=3].prop_map(|n| Q::from_integer(n.into()))
}

fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

fn cochain(arity: usize) -> impl Strategy<Value = Cochain<Q>> {
    let labels: Vec<FullHochLabel> = [-1i64, 0].iter().flat_map(|&w| full_hoch_labels(1, w, 3, arity)).collect();
    prop::collection::vec((prop::sample::select(labels), coeff()), 1..=3)
        .prop_map(|terms| Cochain::new(1, 3, terms).unwrap())
}

fn any_cochain() -> impl Strategy<Value = (usize, Cochain<Q>)> {
    (1usize..=2).prop_flat_map(|k| (Just(k), cochain(k)))
}

fn polyvector(dim: usize, degree: usize) -> impl Strategy<Value = PolyVector<Q>> {
    let exts = squarefree_monomials(dim, degree);
    let syms: Vec<Monomial> = (0..=2).flat_map(|w| monomials(dim, w)).collect();
    prop::collection::vec((prop::sample::select(exts), prop::sample::select(syms), coeff()), 1..=3)
        .prop_map(move |ts| PolyVector::new(dim, ts.into_iter().map(|(ext, sym, c)| (PolyVecLabel { ext, sym }, c))).unwrap())
}

fn any_polyvector(dim: usize) -> impl Strategy<Value = (usize, PolyVector<Q>)> {
    (1..=dim).prop_flat_map(move |p| (Just(p), polyvector(dim, p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gerstenhaber_antisymmetry_and_jacobi((p, a) in any_cochain(), (q, b) in any_cochain(), (_, c) in any_cochain()) {
        let s = sign((p - 1) * (q - 1) % 2 == 1);
        let ab = gerstenhaber_bracket(&a, &b).unwrap();
        let ba = gerstenhaber_bracket(&b, &a).unwrap();
        prop_assert!(ab.add(&ba.scale(&s)).unwrap().is_zero());
        let lhs = gerstenhaber_bracket(&a, &gerstenhaber_bracket(&b, &c).unwrap()).unwrap();
        let rhs = gerstenhaber_bracket(&ab, &c).unwrap()
            .add(&gerstenhaber_bracket(&b, &gerstenhaber_bracket(&a, &c).unwrap()).unwrap().scale(&s)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn schouten_routes_agree((_, p) in any_polyvector(2), (_, q) in any_polyvector(2)) {
        let b = schouten_bracket(&p, &q).unwrap();
        prop_assert_eq!(&b, &schouten_bracket_odd(&p, &q).unwrap());
        prop_assert_eq!(&b, &schouten_bracket_grafted(&p, &q).unwrap());
    }

    #[test]
    fn schouten_jacobi((p, x) in any_polyvector(2), (q, y) in any_polyvector(2), (_, z) in any_polyvector(2)) {
        let s = sign((p + 1) * (q + 1) % 2 == 1);
        let xy = schouten_bracket(&x, &y).unwrap();
        let yx = schouten_bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx.scale(&s)).unwrap().is_zero());
        let lhs = schouten_bracket(&x, &schouten_bracket(&y, &z).unwrap()).unwrap();
        let rhs = schouten_bracket(&xy, &z).unwrap()
            .add(&schouten_bracket(&y, &schouten_bracket(&x, &z).unwrap()).unwrap().scale(&s)).unwrap();
        prop_assert!(lhs.add(&rhs.scale(&-Q::one())).unwrap().is_zero());
    }

    /// [p, q∧r] = [p, q]∧r + (−1)^{(|p|−1)|q|} q∧[p, r].
    #[test]
    fn schouten_is_a_biderivation((p, x) in any_polyvector(3), (q, y) in any_polyvector(3), (_, z) in any_polyvector(3)) {
        let lhs = schouten_bracket(&x, &y.wedge(&z).unwrap()).unwrap();
        let s = sign((p + 1) * q % 2 == 1);
        let rhs = schouten_bracket(&x, &y).unwrap().wedge(&z).unwrap()
            .add(&y.wedge(&schouten_bracket(&x, &z).unwrap()).unwrap().scale(&s)).unwrap();
        prop_assert!(lhs.add(&rhs.scale(&-Q::one())).unwrap().is_zero());
    }

    #[test]
    fn vector_fields_bracket_as_commutators(x in polyvector(2, 1), y in polyvector(2, 1)) {
        prop_assert_eq!(schouten_bracket(&x, &y).unwrap(), commutator(&x, &y));
    }
}

/// Components `f_i` of a vector field `Σ f_i ∂_i`.
fn components(v: &PolyVector<Q>) -> BTreeMap<usize, Poly<Q>> {
    let mut out: BTreeMap<usize, Poly<Q>> = BTreeMap::new();
    for (l, c) in v.terms() {
        let i = l.ext.vars()[0];
        *out.entry(i).or_default().entry(l.sym.clone()).or_insert_with(Q::zero) += c.clone();
    }
    out
}

/// `X(g_j) − Y(f_j)` computed from derivatives of the components.
fn commutator(x: &PolyVector<Q>, y: &PolyVector<Q>) -> PolyVector<Q> {
    let dim = x.dim();
    let (f, g) = (components(x), components(y));
    let apply = |field: &BTreeMap<usize, Poly<Q>>, h: &Poly<Q>| {
        let mut out: Poly<Q> = Poly::new();
        for (&i, fi) in field {
            let dh = poly_derivative(h, &Monomial::var(dim, i).unwrap());
            for (a, u) in fi {
                for (b, v) in &dh {
                    *out.entry(a.times(b)).or_insert_with(Q::zero) += u.clone() * v.clone();
                }
            }
        }
        out
    };
    let mut terms = Vec::new();
    for j in 1..=dim {
        let e = Poly::new();
        for (m, c) in apply(&f, g.get(&j).unwrap_or(&e)) {
            terms.push((PolyVecLabel { ext: Monomial::var(dim, j).unwrap(), sym: m }, c));
        }
        for (m, c) in apply(&g, f.get(&j).unwrap_or(&e)) {
            terms.push((PolyVecLabel { ext: Monomial::var(dim, j).unwrap(), sym: m }, -c));
        }
    }
    PolyVector::new(dim, terms.into_iter().filter(|(_, c)| !c.is_zero())).unwrap()
}
