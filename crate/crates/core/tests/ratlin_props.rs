use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use permucell_core::ratlin::{bareiss_rank, nullspace, rank, solve, SparseMatrix};
use proptest::prelude::*;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Small matrices with many zeros and a few fractions.
fn matrix(max: usize) -> impl Strategy<Value = SparseMatrix<Q>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-3i64..=3, 1i64..=3, prop::bool::weighted(0.4)), r * c).prop_map(move |cells| {
            let triplets = cells
                .into_iter()
                .enumerate()
                .filter(|(_, (_, _, keep))| *keep)
                .map(|(i, (n, d, _))| (i / c, i % c, q(n, d)));
            SparseMatrix::from_triplets(r, c, triplets).unwrap()
        })
    })
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn sparse_rank_matches_dense_bareiss(m in matrix(7)) {
        prop_assert_eq!(rank(&m), bareiss_rank(&m));
    }

    #[test]
    fn rank_of_transpose(m in matrix(7)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_of_product_is_bounded(a in matrix(6), b in matrix(6)) {
        let b = SparseMatrix::from_triplets(a.cols(), b.cols(), b.iter().filter(|(r, _, _)| *r < a.cols()).map(|(r, c, v)| (r, c, v.clone()))).unwrap();
        let ab = a.compose(&b).unwrap();
        prop_assert!(rank(&ab) <= rank(&a).min(rank(&b)));
    }

    #[test]
    fn rank_ignores_pivot_order((m, rp, cp) in matrix(7).prop_flat_map(|m| {
        let (r, c) = (m.rows(), m.cols());
        (Just(m), shuffled(r), shuffled(c))
    })) {
        prop_assert_eq!(rank(&m.permute(&rp, &cp).unwrap()), rank(&m));
    }

    #[test]
    fn nullspace_has_complementary_dimension(m in matrix(6)) {
        let ns = nullspace(&m);
        prop_assert_eq!(ns.len() + rank(&m), m.cols());
        for v in &ns {
            prop_assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solutions_solve(m in matrix(6), x in prop::collection::vec(-4i64..=4, 6)) {
        let x: Vec<Q> = x.into_iter().take(m.cols()).map(|v| q(v, 1)).collect();
        let b = m.apply(&x).unwrap();
        let y = solve(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.apply(&y).unwrap(), b);
    }
}
