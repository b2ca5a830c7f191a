use num_rational::BigRational;
use num_traits::One;
use permucell_core::polyalg::{
    as_tensor, binomial, coproduct_at, coproduct_splits, enumerate_tuples, monomials, poly_derivative,
    splits_into, Monomial, Poly, TensorPoly,
};
use proptest::prelude::*;

type Q = BigRational;

fn monomial(max_dim: usize, max_weight: usize) -> impl Strategy<Value = Monomial> {
    (1..=max_dim, 0..=max_weight).prop_flat_map(|(d, w)| prop::sample::select(monomials(d, w)))
}

fn delta(m: &Monomial) -> TensorPoly<Q> {
    coproduct_at(&as_tensor(&Poly::from([(m.clone(), Q::one())])), 0)
}

fn add(t: &mut TensorPoly<Q>, k: Vec<Monomial>, v: Q) {
    let e = t.entry(k).or_insert_with(|| Q::from_integer(0.into()));
    *e += v;
}

fn clean(mut t: TensorPoly<Q>) -> TensorPoly<Q> {
    t.retain(|_, v| *v != Q::from_integer(0.into()));
    t
}

proptest! {
    #[test]
    fn coproduct_is_coassociative(m in monomial(2, 5)) {
        let d = delta(&m);
        let left = coproduct_at(&d, 0);
        let right = coproduct_at(&d, 1);
        prop_assert_eq!(&left, &right);
        let mut three = TensorPoly::new();
        for (parts, mu) in splits_into(&m, 3) {
            add(&mut three, parts, Q::from_integer(mu.into()));
        }
        prop_assert_eq!(left, clean(three));
    }

    #[test]
    fn coproduct_is_multiplicative((a, b) in (1usize..=2).prop_flat_map(|d| {
        (prop::sample::select((0..=3).flat_map(|w| monomials(d, w)).collect::<Vec<_>>()),
         prop::sample::select((0..=3).flat_map(|w| monomials(d, w)).collect::<Vec<_>>()))
    })) {
        let mut prod = TensorPoly::new();
        for (a1, a2, x) in coproduct_splits(&a) {
            for (b1, b2, y) in coproduct_splits(&b) {
                add(&mut prod, vec![a1.times(&b1), a2.times(&b2)], Q::from_integer((x * y).into()));
            }
        }
        prop_assert_eq!(delta(&a.times(&b)), clean(prod));
    }

    /// Δ²(∂^I f) = Σ f′ ⊗ Δ(∂^I f″).
    #[test]
    fn iterated_coproduct_of_a_derivative((f, by) in (1usize..=2).prop_flat_map(|d| {
        (prop::sample::select((0..=4).flat_map(|w| monomials(d, w)).collect::<Vec<_>>()),
         prop::sample::select((0..=3).flat_map(|w| monomials(d, w)).collect::<Vec<_>>()))
    })) {
        let df = poly_derivative(&Poly::from([(f.clone(), Q::one())]), &by);
        let lhs = coproduct_at(&coproduct_at(&as_tensor(&df), 0), 0);
        let mut rhs = TensorPoly::new();
        for (f1, f2, mu) in coproduct_splits(&f) {
            let inner = poly_derivative(&Poly::from([(f2, Q::from_integer(mu.into()))]), &by);
            for (word, v) in coproduct_at(&as_tensor(&inner), 0) {
                let mut w = vec![f1.clone()];
                w.extend(word);
                add(&mut rhs, w, v);
            }
        }
        prop_assert_eq!(lhs, clean(rhs));
    }
}

/// Coefficient of `t^w` in `p(t)^parts`, with `p` given by its coefficients.
fn power_coefficient(p: &[u64], parts: usize, w: usize) -> u64 {
    let mut acc = vec![0u64; w + 1];
    acc[0] = 1;
    for _ in 0..parts {
        let mut next = vec![0u64; w + 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in p.iter().enumerate().take(w + 1 - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc[w]
}

#[test]
fn tuple_counts_match_generating_functions() {
    for dim in 1..=3usize {
        for parts in 1..=4 {
            for w in 0..=6 {
                let mut hilbert: Vec<u64> = (0..=w).map(|j| binomial(dim + j - 1, j)).collect();
                let all = power_coefficient(&hilbert, parts, w);
                assert_eq!(enumerate_tuples(dim, w, parts, true).len() as u64, all);
                assert_eq!(all, binomial(dim * parts + w - 1, w));
                hilbert[0] = 0;
                let nonempty = power_coefficient(&hilbert, parts, w);
                assert_eq!(enumerate_tuples(dim, w, parts, false).len() as u64, nonempty, "dim {dim}, {parts} parts, weight {w}");
            }
        }
    }
}
