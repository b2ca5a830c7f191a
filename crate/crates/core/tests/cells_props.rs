use num_rational::BigRational;
use num_traits::One;
use permucell_core::cells::{
    act_on_sum, boundary_of_sum, perm_cells, simplex_cells, Cell, PermCell, Permutation, SignedCellSum,
    SimplexCell,
};
use permucell_core::cells::{build_perm_complex, build_simplex_complex};
use proptest::prelude::*;

type Q = BigRational;

/// Stirling numbers of the second kind by inclusion-exclusion.
fn stirling2(n: u64, k: u64) -> u64 {
    let mut s: i128 = 0;
    for j in 0..=k {
        let term = binom(k, j) as i128 * (j as i128).pow(n as u32);
        s += if (k - j).is_multiple_of(2) { term } else { -term };
    }
    (s / (1..=k as i128).product::<i128>()) as u64
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

#[test]
fn face_counts() {
    for n in 1..=6usize {
        let c = build_perm_complex::<Q>(n).unwrap();
        for k in 1..=n {
            let expect = factorial(k as u64) * stirling2(n as u64, k as u64);
            assert_eq!(c.dim(-((n - k) as i64)) as u64, expect, "P_{}, {k} blocks", n - 1);
        }
    }
    for n in 1..=8usize {
        let c = build_simplex_complex::<Q>(n).unwrap();
        for k in 0..n {
            assert_eq!(c.dim(-(k as i64)) as u64, binom(n as u64, (n - k - 1) as u64), "Δ_{}, dim {k}", n - 1);
        }
    }
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn compose(g: &Permutation, h: &Permutation) -> Permutation {
    Permutation::new((1..=g.n()).map(|i| g.apply(h.apply(i))).collect()).unwrap()
}

fn single<C: Cell>(c: &C) -> SignedCellSum<C, Q> {
    [(c.clone(), Q::one())].into_iter().collect()
}

fn check_cell<C: Cell + std::fmt::Debug>(c: &C, g: &Permutation, h: &Permutation) -> Result<(), TestCaseError> {
    let s = single(c);
    let lhs = boundary_of_sum(&act_on_sum(g, &s).unwrap());
    let rhs = act_on_sum(g, &boundary_of_sum(&s)).unwrap();
    prop_assert_eq!(lhs, rhs, "equivariance at {}", c);
    let gh = act_on_sum(&compose(g, h), &s).unwrap();
    let g_h = act_on_sum(g, &act_on_sum(h, &s).unwrap()).unwrap();
    prop_assert_eq!(gh, g_h, "action at {}", c);
    prop_assert!(boundary_of_sum(&boundary_of_sum(&s)).is_empty());
    Ok(())
}

proptest! {
    #[test]
    fn perm_boundary_is_equivariant(
        (cell, g, h) in (1usize..=6).prop_flat_map(|n| {
            let cells: Vec<PermCell> = perm_cells(n);
            (prop::sample::select(cells), permutation(n), permutation(n))
        })
    ) {
        check_cell(&cell, &g, &h)?;
    }

    #[test]
    fn simplex_boundary_is_equivariant(
        (cell, g, h) in (1usize..=8).prop_flat_map(|n| {
            let cells: Vec<SimplexCell> = simplex_cells(n);
            (prop::sample::select(cells), permutation(n), permutation(n))
        })
    ) {
        check_cell(&cell, &g, &h)?;
    }
}
