//! Finite cochain complexes over an exact field.
//!
//! A complex occupies a contiguous range of degrees. The differential leaving
//! degree `d` is a matrix with `|basis(d+1)|` rows and `|basis(d)|` columns.
//! Degrees with no basis elements are kept, so Betti tables show explicit
//! zeros over the whole range.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratlin::{rank, SparseMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct FinChainComplex<T> {
    lo: i64,
    basis: Vec<Vec<String>>,
    diff: Vec<SparseMatrix<T>>,
}

/// One nonzero entry of `d∘d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub degree: i64,
    pub source: String,
    pub target: String,
    pub coefficient: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<T> {
    pub shape_errors: Vec<String>,
    pub violations: Vec<Violation<T>>,
}

impl<T> ValidationReport<T> {
    pub fn passed(&self) -> bool {
        self.shape_errors.is_empty() && self.violations.is_empty()
    }
}

/// Cohomology dimension in each degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable(pub BTreeMap<i64, usize>);

impl BettiTable {
    pub fn get(&self, d: i64) -> usize {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Alternating sum `Σ (−1)^d b_d`.
    pub fn euler(&self) -> i64 {
        self.0.iter().map(|(d, b)| if d % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum()
    }

    /// Nonzero entries only.
    pub fn support(&self) -> BTreeMap<i64, usize> {
        self.0.iter().filter(|(_, b)| **b > 0).map(|(d, b)| (*d, *b)).collect()
    }
}

impl<T: Scalar> FinChainComplex<T> {
    /// The complex with no degrees at all.
    pub fn empty() -> Self {
        Self { lo: 0, basis: Vec::new(), diff: Vec::new() }
    }

    /// Builds a complex on degrees `lo, lo+1, …`. `diff[i]` leaves degree
    /// `lo + i`; there must be exactly one fewer differential than degrees.
    pub fn new(lo: i64, basis: Vec<Vec<String>>, diff: Vec<SparseMatrix<T>>) -> Result<Self> {
        if basis.is_empty() && diff.is_empty() {
            return Ok(Self { lo, basis, diff });
        }
        if diff.len() + 1 != basis.len() {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                basis.len(),
                basis.len() - 1,
                diff.len()
            )));
        }
        let c = Self { lo, basis, diff };
        if let Some(e) = c.shape_errors().into_iter().next() {
            return Err(Error::InvalidComplex(e));
        }
        Ok(c)
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.basis.len() as i64).map(|i| self.lo + i).collect()
    }

    pub fn min_degree(&self) -> Option<i64> {
        (!self.basis.is_empty()).then_some(self.lo)
    }

    pub fn max_degree(&self) -> Option<i64> {
        (!self.basis.is_empty()).then(|| self.lo + self.basis.len() as i64 - 1)
    }

    fn slot(&self, d: i64) -> Option<usize> {
        let i = d - self.lo;
        (i >= 0 && (i as usize) < self.basis.len()).then_some(i as usize)
    }

    /// Basis labels in degree `d` (empty outside the range).
    pub fn basis(&self, d: i64) -> &[String] {
        self.slot(d).map_or(&[], |i| &self.basis[i])
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis(d).len()
    }

    /// Total number of basis elements.
    pub fn size(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// The differential leaving degree `d`, if both `d` and `d+1` are in range.
    pub fn diff(&self, d: i64) -> Option<&SparseMatrix<T>> {
        self.slot(d).and_then(|i| self.diff.get(i))
    }

    /// Mutable access, used to corrupt complexes in tests.
    pub fn diff_mut(&mut self, d: i64) -> Option<&mut SparseMatrix<T>> {
        let i = self.slot(d)?;
        self.diff.get_mut(i)
    }

    /// Position of a label within its degree.
    pub fn index_of(&self, d: i64, label: &str) -> Option<usize> {
        self.basis(d).iter().position(|l| l == label)
    }

    fn shape_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        for (i, m) in self.diff.iter().enumerate() {
            let (src, tgt) = (self.basis[i].len(), self.basis[i + 1].len());
            if m.rows() != tgt || m.cols() != src {
                errs.push(format!(
                    "differential at degree {} is {}x{}, expected {}x{}",
                    self.lo + i as i64,
                    m.rows(),
                    m.cols(),
                    tgt,
                    src
                ));
            }
        }
        errs
    }

    /// Checks matrix shapes and `d∘d = 0`, listing every nonzero entry.
    pub fn validate(&self) -> ValidationReport<T> {
        let shape_errors = self.shape_errors();
        if !shape_errors.is_empty() {
            return ValidationReport { shape_errors, violations: Vec::new() };
        }
        let violations = (0..self.diff.len().saturating_sub(1))
            .into_par_iter()
            .flat_map_iter(|i| {
                let dd = self.diff[i + 1].compose(&self.diff[i]).expect("shapes checked");
                let d = self.lo + i as i64;
                dd.iter()
                    .map(|(r, c, v)| Violation {
                        degree: d,
                        source: self.basis[i][c].clone(),
                        target: self.basis[i + 2][r].clone(),
                        coefficient: v.clone(),
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        ValidationReport { shape_errors, violations }
    }

    /// Ranks of all differentials, computed in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        self.diff.par_iter().map(rank).collect()
    }

    /// Cohomology dimensions. Fails if the complex does not validate.
    pub fn betti(&self) -> Result<BettiTable> {
        let report = self.validate();
        if !report.passed() {
            let msg = match (report.shape_errors.first(), report.violations.first()) {
                (Some(e), _) => e.clone(),
                (None, Some(v)) => format!(
                    "d∘d nonzero at degree {}: {} → {} with coefficient {}",
                    v.degree, v.source, v.target, v.coefficient
                ),
                (None, None) => unreachable!(),
            };
            return Err(Error::InvalidComplex(msg));
        }
        Ok(self.betti_from_ranks(&self.ranks()))
    }

    fn betti_from_ranks(&self, ranks: &[usize]) -> BettiTable {
        let mut out = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            let out_rank = ranks.get(i).copied().unwrap_or(0);
            let in_rank = if i > 0 { ranks[i - 1] } else { 0 };
            out.insert(self.lo + i as i64, b.len() - out_rank - in_rank);
        }
        BettiTable(out)
    }

    /// `Σ_d (−1)^d |basis(d)|`.
    pub fn euler(&self) -> i64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let d = self.lo + i as i64;
                if d % 2 == 0 {
                    b.len() as i64
                } else {
                    -(b.len() as i64)
                }
            })
            .sum()
    }

    /// Reorders each degree's basis: element `j` of degree `lo+i` moves to
    /// position `perms[i][j]`. Matrices are conjugated to match.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != self.basis.len() {
            return Err(Error::Dimension("one permutation per degree required".into()));
        }
        let mut basis = Vec::with_capacity(self.basis.len());
        for (b, p) in self.basis.iter().zip(perms) {
            if p.len() != b.len() {
                return Err(Error::Dimension("permutation length mismatch".into()));
            }
            let mut nb = vec![String::new(); b.len()];
            for (j, l) in b.iter().enumerate() {
                nb[p[j]] = l.clone();
            }
            basis.push(nb);
        }
        let diff = self
            .diff
            .iter()
            .enumerate()
            .map(|(i, m)| m.permute(&perms[i + 1], &perms[i]))
            .collect::<Result<_>>()?;
        Ok(Self { lo: self.lo, basis, diff })
    }
}

/// Checks that `maps[d]: src(d) → tgt(d)` commute with the differentials.
///
/// Every degree of `src` must have a map. Returns the degrees where
/// `f∘d_src ≠ d_tgt∘f`.
pub fn chain_map_failures<T: Scalar>(
    src: &FinChainComplex<T>,
    tgt: &FinChainComplex<T>,
    maps: &BTreeMap<i64, SparseMatrix<T>>,
) -> Result<Vec<i64>> {
    let mut bad = Vec::new();
    for d in src.degrees() {
        let f = maps.get(&d).ok_or_else(|| Error::InvalidParameter(format!("no map in degree {d}")))?;
        if f.rows() != tgt.dim(d) || f.cols() != src.dim(d) {
            return Err(Error::Dimension(format!("chain map in degree {d} has the wrong shape")));
        }
        let left = match (maps.get(&(d + 1)), src.diff(d)) {
            (Some(f1), Some(ds)) => f1.compose(ds)?,
            _ => SparseMatrix::zeros(tgt.dim(d + 1), src.dim(d)),
        };
        let right = match tgt.diff(d) {
            Some(dt) => dt.compose(f)?,
            None => SparseMatrix::zeros(tgt.dim(d + 1), src.dim(d)),
        };
        if left != right {
            bad.push(d);
        }
    }
    Ok(bad)
}

/// What to do with differential terms whose target is not in the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetPolicy {
    /// Every target must be a basis element.
    Strict,
    /// Targets outside the basis are dropped (a quotient complex).
    Truncate,
}

/// A complex together with the typed keys its string labels came from.
#[derive(Clone, Debug)]
pub struct LabeledComplex<K, T> {
    pub complex: FinChainComplex<T>,
    lo: i64,
    keys: Vec<Vec<K>>,
    index: Vec<HashMap<K, usize>>,
}

impl<K, T> LabeledComplex<K, T>
where
    K: Clone + Ord + Hash + Display + Send + Sync,
    T: Scalar,
{
    /// Assembles a complex on degrees `lo..lo+keys.len()`. Each degree's keys
    /// are sorted, and `diff(key, degree)` lists the image of a basis element
    /// as `(target key, coefficient)` pairs in degree `degree + 1`.
    pub fn assemble<F>(lo: i64, mut keys: Vec<Vec<K>>, policy: TargetPolicy, diff: F) -> Result<Self>
    where
        F: Fn(&K, i64) -> Vec<(K, T)> + Sync,
    {
        for k in &mut keys {
            k.sort();
            k.dedup();
        }
        let index: Vec<HashMap<K, usize>> = keys
            .iter()
            .map(|ks| ks.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let mut mats = Vec::new();
        for i in 0..keys.len().saturating_sub(1) {
            let d = lo + i as i64;
            let tgt = &index[i + 1];
            let cols: Vec<Vec<(usize, usize, T)>> = keys[i]
                .par_iter()
                .enumerate()
                .map(|(c, k)| {
                    let mut out = Vec::new();
                    for (t, v) in diff(k, d) {
                        match tgt.get(&t) {
                            Some(&r) => out.push((r, c, v)),
                            None if policy == TargetPolicy::Truncate => {}
                            None => {
                                return Err(Error::InvalidComplex(format!(
                                    "differential of {k} in degree {d} leaves the basis at {t}"
                                )))
                            }
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<_>>()?;
            mats.push(SparseMatrix::from_triplets(
                keys[i + 1].len(),
                keys[i].len(),
                cols.into_iter().flatten(),
            )?);
        }
        let basis = keys.iter().map(|ks| ks.iter().map(ToString::to_string).collect()).collect();
        let complex = FinChainComplex::new(lo, basis, mats)?;
        Ok(Self { complex, lo, keys, index })
    }

    pub fn keys(&self, d: i64) -> &[K] {
        let i = d - self.lo;
        if i < 0 || i as usize >= self.keys.len() {
            return &[];
        }
        &self.keys[i as usize]
    }

    pub fn position(&self, d: i64, key: &K) -> Option<usize> {
        let i = d - self.lo;
        if i < 0 || i as usize >= self.index.len() {
            return None;
        }
        self.index[i as usize].get(key).copied()
    }

    pub fn into_complex(self) -> FinChainComplex<T> {
        self.complex
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    /// The interval: two vertices in degree 0, one edge in degree −1.
    fn interval() -> FinChainComplex<Q> {
        let d = SparseMatrix::from_triplets(2, 1, vec![(0, 0, Q::from_int(1)), (1, 0, Q::from_int(-1))]).unwrap();
        FinChainComplex::new(-1, vec![vec!["e".into()], vec!["a".into(), "b".into()]], vec![d]).unwrap()
    }

    #[test]
    fn interval_is_contractible() {
        let c = interval();
        assert!(c.validate().passed());
        let b = c.betti().unwrap();
        assert_eq!(b.0, BTreeMap::from([(-1, 0), (0, 1)]));
        assert_eq!(c.euler(), 1);
        assert_eq!(b.euler(), c.euler());
    }

    #[test]
    fn empty_complex_has_empty_table() {
        let c = FinChainComplex::<Q>::empty();
        assert!(c.betti().unwrap().0.is_empty());
        assert_eq!(c.euler(), 0);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let d = SparseMatrix::<Q>::zeros(1, 1);
        assert!(FinChainComplex::new(0, vec![vec!["a".into()], vec!["b".into(), "c".into()]], vec![d]).is_err());
    }

    #[test]
    fn nonzero_square_is_reported() {
        let one = |r, c| SparseMatrix::from_triplets(r, c, (0..r.min(c)).map(|i| (i, i, Q::from_int(1)))).unwrap();
        let c = FinChainComplex::new(0, vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]], vec![one(1, 1), one(1, 1)])
            .unwrap();
        let rep = c.validate();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].source, "a");
        assert_eq!(rep.violations[0].target, "c");
        assert!(c.betti().is_err());
    }

    #[test]
    fn relabeling_preserves_betti() {
        let c = interval();
        let r = c.relabel(&[vec![0], vec![1, 0]]).unwrap();
        assert_eq!(r.basis(0), ["b", "a"]);
        assert_eq!(r.betti().unwrap(), c.betti().unwrap());
    }

    #[test]
    fn assemble_truncates_or_rejects() {
        let keys = vec![vec![2u32], vec![1u32]];
        let f = |k: &u32, _d: i64| vec![(k - 1, Q::from_int(1)), (k + 5, Q::from_int(1))];
        assert!(LabeledComplex::assemble(0, keys.clone(), TargetPolicy::Strict, f).is_err());
        let lc = LabeledComplex::assemble(0, keys, TargetPolicy::Truncate, f).unwrap();
        assert_eq!(lc.complex.diff(0).unwrap().nnz(), 1);
        assert_eq!(lc.position(1, &1), Some(0));
    }
}
