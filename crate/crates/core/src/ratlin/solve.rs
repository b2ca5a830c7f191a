//! Exact linear solving by sparse Gauss-Jordan elimination over the field.

use std::collections::BTreeMap;

use super::SparseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

type Row<T> = BTreeMap<usize, T>;

/// Row echelon form built incrementally. Each stored row has leading entry 1.
struct Echelon<T> {
    pivots: BTreeMap<usize, Row<T>>,
}

impl<T: Scalar> Echelon<T> {
    fn new() -> Self {
        Self { pivots: BTreeMap::new() }
    }

    /// Reduces `row` against the stored pivots; adds it if anything remains.
    /// Returns the leading column of the remainder.
    fn insert(&mut self, mut row: Row<T>) -> Option<usize> {
        let mut from = 0;
        loop {
            let next = row.range(from..).find(|(c, _)| self.pivots.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = next else { break };
            for (cc, pv) in &self.pivots[&c] {
                let slot = row.entry(*cc).or_insert_with(T::zero);
                *slot = slot.clone() - v.clone() * pv.clone();
                if slot.is_zero() {
                    row.remove(cc);
                }
            }
            from = c + 1;
        }
        let (&lead, lv) = row.iter().next()?;
        let inv = T::one() / lv.clone();
        for v in row.values_mut() {
            *v = v.clone() * inv.clone();
        }
        self.pivots.insert(lead, row);
        Some(lead)
    }

    /// Clears every pivot column above its pivot, giving reduced row echelon form.
    fn back_reduce(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let prow = self.pivots[&c].clone();
            for (&other, row) in self.pivots.range_mut(..c) {
                debug_assert!(other < c);
                if let Some(v) = row.get(&c).cloned() {
                    for (cc, pv) in &prow {
                        let slot = row.entry(*cc).or_insert_with(T::zero);
                        *slot = slot.clone() - v.clone() * pv.clone();
                        if slot.is_zero() {
                            row.remove(cc);
                        }
                    }
                }
            }
        }
    }
}

/// Some `x` with `a·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve<T: Scalar>(a: &SparseMatrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    let mut ech = Echelon::new();
    for (r, rhs) in b.iter().enumerate() {
        let mut row: Row<T> = a.row(r).iter().cloned().collect();
        if !rhs.is_zero() {
            row.insert(n, rhs.clone());
        }
        if ech.insert(row) == Some(n) {
            return Ok(None);
        }
    }
    ech.back_reduce();
    let mut x = vec![T::zero(); n];
    for (&c, row) in &ech.pivots {
        if let Some(v) = row.get(&n) {
            x[c] = v.clone();
        }
    }
    Ok(Some(x))
}

/// A basis of `{x : a·x = 0}`.
pub fn nullspace<T: Scalar>(a: &SparseMatrix<T>) -> Vec<Vec<T>> {
    let n = a.cols();
    let mut ech = Echelon::new();
    for r in 0..a.rows() {
        ech.insert(a.row(r).iter().cloned().collect());
    }
    ech.back_reduce();
    (0..n)
        .filter(|c| !ech.pivots.contains_key(c))
        .map(|free| {
            let mut v = vec![T::zero(); n];
            v[free] = T::one();
            for (&c, row) in &ech.pivots {
                if let Some(x) = row.get(&free) {
                    v[c] = -x.clone();
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn m(rows: &[&[i64]]) -> SparseMatrix<Q> {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_int(x)).collect()
    }

    #[test]
    fn solves_consistent_system() {
        let a = m(&[&[2, 1, 0], &[0, 1, 1], &[2, 2, 1]]);
        let b = qs(&[3, 5, 8]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(a.apply(&x).unwrap(), b);
    }

    #[test]
    fn detects_inconsistency() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &qs(&[1, 3])).unwrap(), None);
        assert!(solve(&a, &qs(&[1])).is_err());
    }

    #[test]
    fn nullspace_is_killed_and_has_right_size() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.apply(v).unwrap().iter().all(|x| x == &Q::from_int(0)));
        }
    }
}
