//! Rank over Q by fraction-free elimination.
//!
//! Rows are first scaled to primitive integer vectors. Elimination then
//! replaces a row `r` by `p·r − a·P` where `P` is the pivot row with pivot
//! entry `p` and `a` is the entry of `r` in the pivot column, and divides the
//! result by its content. No fractions are ever formed. Pivots are chosen
//! Markowitz-style: shortest row first, then the sparsest column of that row,
//! preferring unit entries. The elimination runs on `i64` with checked
//! arithmetic and restarts on `BigInt` if anything overflows.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SparseMatrix;
use crate::scalar::Scalar;

trait ElimRing: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
}

impl ElimRing for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl ElimRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

type Row<R> = Vec<(usize, R)>;

fn make_primitive<R: ElimRing>(row: &mut Row<R>) {
    let mut g = R::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_unit() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// `p·target − a·pivot`, or `None` on overflow.
fn eliminate<R: ElimRing>(target: &Row<R>, pivot: &Row<R>, p: &R, a: &R) -> Option<Row<R>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, p.mul(&target[i - 1].1)?)
        } else if cj < ci {
            j += 1;
            (cj, R::zero().sub(&a.mul(&pivot[j - 1].1)?)?)
        } else {
            i += 1;
            j += 1;
            (ci, p.mul(&target[i - 1].1)?.sub(&a.mul(&pivot[j - 1].1)?)?)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    make_primitive(&mut out);
    Some(out)
}

fn sparse_rank<R: ElimRing>(mut rows: Vec<Row<R>>, ncols: usize) -> Option<usize> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (id, row) in rows.iter_mut().enumerate() {
        make_primitive(row);
        for (c, _) in row.iter() {
            col_rows[*c].insert(id);
        }
        if !row.is_empty() {
            queue.insert((row.len(), id));
        }
    }

    let mut rank = 0;
    while let Some((_, pid)) = queue.pop_first() {
        let prow = std::mem::take(&mut rows[pid]);
        for (c, _) in &prow {
            col_rows[*c].remove(&pid);
        }
        let (pc, pv) = prow
            .iter()
            .min_by_key(|(c, v)| (!v.is_unit(), col_rows[*c].len(), *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("queued rows are nonempty");
        rank += 1;

        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            queue.remove(&(rows[t].len(), t));
            let old = std::mem::take(&mut rows[t]);
            let a = old
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone())
                .expect("column index is consistent");
            let new = eliminate(&old, &prow, &pv, &a)?;
            for (c, _) in &old {
                col_rows[*c].remove(&t);
            }
            for (c, _) in &new {
                col_rows[*c].insert(t);
            }
            if !new.is_empty() {
                queue.insert((new.len(), t));
            }
            rows[t] = new;
        }
    }
    Some(rank)
}

/// Each row of `m` scaled by the lcm of its denominators.
fn integer_rows<T: Scalar>(m: &SparseMatrix<T>) -> Vec<Row<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let entries: Vec<(usize, BigInt, BigInt)> = m
                .row(r)
                .iter()
                .map(|(c, v)| {
                    let (n, d) = v.to_num_den();
                    (*c, n, d)
                })
                .collect();
            let l = entries.iter().fold(BigInt::one(), |acc, (_, _, d)| acc.lcm(d));
            entries.into_iter().map(|(c, n, d)| (c, n * (&l / d))).collect()
        })
        .collect()
}

/// Rank over the field of fractions.
pub fn rank<T: Scalar>(m: &SparseMatrix<T>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let big = integer_rows(m);
    let small: Option<Vec<Row<i64>>> = big
        .iter()
        .map(|row| row.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect())
        .collect();
    if let Some(rows) = small {
        if let Some(r) = sparse_rank(rows, m.cols()) {
            return r;
        }
    }
    sparse_rank(big, m.cols()).expect("BigInt elimination cannot overflow")
}

/// Textbook dense Bareiss elimination over the scalar field.
///
/// Quadratic memory; kept as an independent reference for [`rank`].
pub fn bareiss_rank<T: Scalar>(m: &SparseMatrix<T>) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = T::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let v = (a[r][col].clone() * a[i][j].clone() - a[i][col].clone() * a[r][j].clone())
                    / prev.clone();
                a[i][j] = v;
            }
            a[i][col] = T::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    type Q = BigRational;

    fn dense(rows: &[&[i64]]) -> SparseMatrix<Q> {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn empty_identity_proportional() {
        assert_eq!(rank(&SparseMatrix::<Q>::zeros(0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::<Q>::identity(3)), 3);
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(&dense(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn fractional_entries() {
        let m = SparseMatrix::from_dense(&[
            vec![Q::new(1.into(), 2.into()), Q::new(1.into(), 3.into())],
            vec![Q::new(3.into(), 2.into()), Q::from_int(1)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn overflowing_entries_fall_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = dense(&[&[big, big - 1, 3], &[big - 7, big, 1], &[2 * (big / 3), 5, big]]);
        assert_eq!(rank(&m), bareiss_rank(&m));
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn machine_ratio_scalars() {
        let m: SparseMatrix<Ratio<i64>> = SparseMatrix::from_dense(&[
            vec![Ratio::from_int(1), Ratio::from_int(-1), Ratio::from_int(0)],
            vec![Ratio::from_int(0), Ratio::from_int(1), Ratio::from_int(-1)],
            vec![Ratio::from_int(1), Ratio::from_int(0), Ratio::from_int(-1)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 2);
    }
}
