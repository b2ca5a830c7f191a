//! Plain-text matrix files.
//!
//! ```text
//! rows cols nnz
//! row col num den
//! ...
//! ```
//! Entries are sorted by `(row, col)` so equal matrices give equal files.

use std::fmt::Write as _;
use std::path::Path;

use super::SparseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn matrix_to_string<T: Scalar>(m: &SparseMatrix<T>) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.iter() {
        let (n, d) = v.to_num_den();
        writeln!(out, "{r} {c} {n} {d}").expect("writing to a String cannot fail");
    }
    out
}

pub fn matrix_from_str<T: Scalar>(s: &str) -> Result<SparseMatrix<T>> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let h: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header `{header}`"))))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = h[..] else {
        return Err(Error::Parse(format!("bad header `{header}`")));
    };
    let mut triplets = Vec::with_capacity(nnz);
    for line in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad entry `{line}`"));
        let [r, c, n, d] = f[..] else { return Err(bad()) };
        let r: usize = r.parse().map_err(|_| bad())?;
        let c: usize = c.parse().map_err(|_| bad())?;
        let v = T::from_num_den(n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?).ok_or_else(bad)?;
        triplets.push((r, c, v));
    }
    if triplets.len() != nnz {
        return Err(Error::Parse(format!("header promises {nnz} entries, found {}", triplets.len())));
    }
    SparseMatrix::from_triplets(rows, cols, triplets)
}

pub fn write_matrix<T: Scalar>(path: &Path, m: &SparseMatrix<T>) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, matrix_to_string(m))?;
    Ok(())
}

pub fn read_matrix<T: Scalar>(path: &Path) -> Result<SparseMatrix<T>> {
    matrix_from_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn round_trip() {
        let m = SparseMatrix::from_triplets(
            2,
            3,
            vec![(1, 2, BigRational::new((-3).into(), 4.into())), (0, 0, BigRational::from_int(1))],
        )
        .unwrap();
        let s = matrix_to_string(&m);
        assert_eq!(s, "2 3 2\n0 0 1 1\n1 2 -3 4\n");
        assert_eq!(matrix_from_str::<BigRational>(&s).unwrap(), m);
    }

    #[test]
    fn rejects_truncated_file() {
        assert!(matrix_from_str::<BigRational>("2 2 2\n0 0 1 1\n").is_err());
        assert!(matrix_from_str::<BigRational>("").is_err());
    }
}
