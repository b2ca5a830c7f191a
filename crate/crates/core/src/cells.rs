//! Cellular chains of the simplex and of the permutahedron.
//!
//! Cells of the simplex `Δ_{n−1}` are indexed by their vanishing set
//! `I ⊂ [n]`, and cells of the permutahedron `P_{n−1}` by ordered set
//! partitions `[n] = I_1 ⊔ … ⊔ I_k`. Both complexes are graded by minus the
//! geometric dimension, so the boundary raises degree by one and fits the
//! cochain convention of [`crate::chain`].
//!
//! The symmetric group acts by relabeling. Blocks are stored sorted, and the
//! sign of the sort is carried by the coefficient: each permutahedron block
//! transforms by the sign representation, and for the simplex only the
//! complement `[n]∖I` does.

use std::collections::BTreeMap;
use std::fmt;

use crate::chain::{FinChainComplex, LabeledComplex, TargetPolicy};
use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};

/// A bijection of `{1, …, n}`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i-1]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The transposition of `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidParameter(format!("({a} {b}) is not in S_{n}")));
        }
        images.swap(a - 1, b - 1);
        Ok(Self { images })
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for x in 1..=n {
                if !used[x - 1] {
                    used[x - 1] = true;
                    prefix.push(x);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[x - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_odd(&self) -> bool {
        inversions(&self.images) % 2 == 1
    }
}

/// Number of out-of-order pairs; its parity is the sign of the sort.
pub fn inversions(xs: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                count += 1;
            }
        }
    }
    count
}

/// A linear combination of cells. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedCellSum<C, T> {
    terms: BTreeMap<C, T>,
}

impl<C: Ord + Clone, T: Scalar> SignedCellSum<C, T> {
    pub fn new() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn add(&mut self, cell: C, coeff: T) {
        let slot = self.terms.entry(cell.clone()).or_insert_with(T::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&cell);
        }
    }

    pub fn terms(&self) -> &BTreeMap<C, T> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, cell: &C) -> T {
        self.terms.get(cell).cloned().unwrap_or_else(T::zero)
    }
}

impl<C: Ord + Clone, T: Scalar> Default for SignedCellSum<C, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Ord + Clone, T: Scalar> FromIterator<(C, T)> for SignedCellSum<C, T> {
    fn from_iter<I: IntoIterator<Item = (C, T)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (c, v) in iter {
            s.add(c, v);
        }
        s
    }
}

/// Behaviour shared by simplex and permutahedron cells.
pub trait Cell: Clone + Ord + fmt::Display + std::hash::Hash + Send + Sync {
    fn n(&self) -> usize;
    fn dimension(&self) -> usize;
    /// Boundary as `(cell, ±1)` terms.
    fn boundary_terms(&self) -> Vec<(Self, bool)>;
    /// Relabels by `g`, returning the normal form and whether the sign is −1.
    fn act(&self, g: &Permutation) -> Result<(Self, bool)>;

    fn degree(&self) -> i64 {
        -(self.dimension() as i64)
    }
}

fn check_action(n: usize, g: &Permutation) -> Result<()> {
    if g.n() != n {
        return Err(Error::InvalidParameter(format!("permutation of {} letters acting on [{n}]", g.n())));
    }
    Ok(())
}

fn fmt_set(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "}}")
}

/// The face of `Δ_{n−1}` where the coordinates in `vanishing` are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexCell {
    n: usize,
    vanishing: Vec<usize>,
}

impl SimplexCell {
    pub fn new(n: usize, mut vanishing: Vec<usize>) -> Result<Self> {
        vanishing.sort_unstable();
        let dup = vanishing.windows(2).any(|w| w[0] == w[1]);
        if n == 0 || dup || vanishing.iter().any(|&i| i == 0 || i > n) || vanishing.len() >= n {
            return Err(Error::InvalidParameter(format!("{vanishing:?} is not a proper subset of [{n}]")));
        }
        Ok(Self { n, vanishing })
    }

    pub fn vanishing(&self) -> &[usize] {
        &self.vanishing
    }

    /// The skew part `[n]∖I`, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| self.vanishing.binary_search(i).is_err()).collect()
    }
}

impl fmt::Display for SimplexCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({};", self.n)?;
        fmt_set(f, &self.vanishing)?;
        write!(f, ")")
    }
}

impl Cell for SimplexCell {
    fn n(&self) -> usize {
        self.n
    }

    fn dimension(&self) -> usize {
        self.n - self.vanishing.len() - 1
    }

    fn boundary_terms(&self) -> Vec<(Self, bool)> {
        if self.dimension() == 0 {
            return Vec::new();
        }
        self.support()
            .into_iter()
            .enumerate()
            .map(|(p, j)| {
                let mut v = self.vanishing.clone();
                v.push(j);
                v.sort_unstable();
                // p is 0-based here, so (−1)^{p+1} with 1-based p is (−1)^p.
                (Self { n: self.n, vanishing: v }, p % 2 == 1)
            })
            .collect()
    }

    fn act(&self, g: &Permutation) -> Result<(Self, bool)> {
        check_action(self.n, g)?;
        let image: Vec<usize> = self.support().iter().map(|&i| g.apply(i)).collect();
        let mut v: Vec<usize> = self.vanishing.iter().map(|&i| g.apply(i)).collect();
        v.sort_unstable();
        Ok((Self { n: self.n, vanishing: v }, inversions(&image) % 2 == 1))
    }
}

/// An ordered set partition of `[n]`, a cell of `P_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermCell {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl PermCell {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &mut blocks {
            b.sort_unstable();
            if b.is_empty() {
                return Err(Error::InvalidParameter("empty block".into()));
            }
            for &x in b.iter() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidParameter(format!("{blocks:?} is not a partition of [{n}]")));
                }
                seen[x] = true;
            }
        }
        if n == 0 || seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidParameter(format!("blocks do not cover [{n}]")));
        }
        Ok(Self { n, blocks })
    }

    pub fn top(n: usize) -> Result<Self> {
        Self::new(n, vec![(1..=n).collect()])
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

impl fmt::Display for PermCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({};", self.n)?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            fmt_set(f, b)?;
        }
        write!(f, ")")
    }
}

impl Cell for PermCell {
    fn n(&self) -> usize {
        self.n
    }

    fn dimension(&self) -> usize {
        self.n - self.blocks.len()
    }

    fn boundary_terms(&self) -> Vec<(Self, bool)> {
        let mut out = Vec::new();
        let mut before = 0;
        for (i0, block) in self.blocks.iter().enumerate() {
            let i = i0 + 1;
            let m = block.len();
            for mask in 1..(1u64 << m) - 1 {
                let (mut left, mut right) = (Vec::new(), Vec::new());
                for (t, &x) in block.iter().enumerate() {
                    if mask >> t & 1 == 1 {
                        left.push(x);
                    } else {
                        right.push(x);
                    }
                }
                let mut concat = left.clone();
                concat.extend(&right);
                let e = i + 1 + before + left.len() + inversions(&concat);
                let mut blocks = self.blocks[..i0].to_vec();
                blocks.push(left);
                blocks.push(right);
                blocks.extend_from_slice(&self.blocks[i0 + 1..]);
                out.push((Self { n: self.n, blocks }, e % 2 == 1));
            }
            before += m;
        }
        out
    }

    fn act(&self, g: &Permutation) -> Result<(Self, bool)> {
        check_action(self.n, g)?;
        let mut odd = false;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut image: Vec<usize> = b.iter().map(|&i| g.apply(i)).collect();
                odd ^= inversions(&image) % 2 == 1;
                image.sort_unstable();
                image
            })
            .collect();
        Ok((Self { n: self.n, blocks }, odd))
    }
}

pub fn simplex_boundary<T: Scalar>(c: &SimplexCell) -> SignedCellSum<SimplexCell, T> {
    c.boundary_terms().into_iter().map(|(c, s)| (c, sign(s))).collect()
}

pub fn perm_boundary<T: Scalar>(c: &PermCell) -> SignedCellSum<PermCell, T> {
    c.boundary_terms().into_iter().map(|(c, s)| (c, sign(s))).collect()
}

/// `g·c` as a signed cell.
pub fn sn_action<C: Cell, T: Scalar>(g: &Permutation, c: &C) -> Result<(C, T)> {
    let (d, s) = c.act(g)?;
    Ok((d, sign(s)))
}

/// `g` applied termwise to a sum.
pub fn act_on_sum<C: Cell, T: Scalar>(g: &Permutation, s: &SignedCellSum<C, T>) -> Result<SignedCellSum<C, T>> {
    let mut out = SignedCellSum::new();
    for (c, v) in s.terms() {
        let (d, e): (C, T) = sn_action(g, c)?;
        out.add(d, e * v.clone());
    }
    Ok(out)
}

/// The boundary extended linearly.
pub fn boundary_of_sum<C: Cell, T: Scalar>(s: &SignedCellSum<C, T>) -> SignedCellSum<C, T> {
    let mut out = SignedCellSum::new();
    for (c, v) in s.terms() {
        for (d, neg) in c.boundary_terms() {
            out.add(d, sign::<T>(neg) * v.clone());
        }
    }
    out
}

/// All proper vanishing sets, i.e. all cells of `Δ_{n−1}`.
pub fn simplex_cells(n: usize) -> Vec<SimplexCell> {
    if n == 0 {
        return Vec::new();
    }
    (0u64..(1 << n) - 1)
        .map(|mask| SimplexCell { n, vanishing: (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect() })
        .collect()
}

/// All ordered set partitions of `[n]`.
pub fn perm_cells(n: usize) -> Vec<PermCell> {
    fn rec(rest: &[usize], prefix: &mut Vec<Vec<usize>>, n: usize, out: &mut Vec<PermCell>) {
        if rest.is_empty() {
            out.push(PermCell { n, blocks: prefix.clone() });
            return;
        }
        let m = rest.len();
        for mask in 1u64..1 << m {
            let (block, remaining): (Vec<usize>, Vec<usize>) = {
                let mut b = Vec::new();
                let mut r = Vec::new();
                for (t, &x) in rest.iter().enumerate() {
                    if mask >> t & 1 == 1 {
                        b.push(x);
                    } else {
                        r.push(x);
                    }
                }
                (b, r)
            };
            prefix.push(block);
            rec(&remaining, prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(&(1..=n).collect::<Vec<_>>(), &mut Vec::new(), n, &mut out);
    }
    out
}

fn build<C: Cell, T: Scalar>(n: usize, cells: Vec<C>) -> Result<LabeledComplex<C, T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let lo = -(n as i64 - 1);
    let mut keys = vec![Vec::new(); n];
    for c in cells {
        keys[(c.degree() - lo) as usize].push(c);
    }
    LabeledComplex::assemble(lo, keys, TargetPolicy::Strict, |c: &C, _| {
        c.boundary_terms().into_iter().map(|(d, s)| (d, sign(s))).collect()
    })
}

/// Cellular chains of `Δ_{n−1}` with the cell keys.
pub fn simplex_complex<T: Scalar>(n: usize) -> Result<LabeledComplex<SimplexCell, T>> {
    build(n, simplex_cells(n))
}

/// Cellular chains of `P_{n−1}` with the cell keys.
pub fn perm_complex<T: Scalar>(n: usize) -> Result<LabeledComplex<PermCell, T>> {
    build(n, perm_cells(n))
}

pub fn build_simplex_complex<T: Scalar>(n: usize) -> Result<FinChainComplex<T>> {
    Ok(simplex_complex(n)?.into_complex())
}

pub fn build_perm_complex<T: Scalar>(n: usize) -> Result<FinChainComplex<T>> {
    Ok(perm_complex(n)?.into_complex())
}
