//! Monomials in `dim` commuting variables and their combinatorics.
//!
//! A monomial is a multiset over `{1, …, dim}` stored as a sorted vector, so
//! `x1^2*x3` is `[1, 1, 3]` and the empty vector is the constant `1`. The same
//! type serves for `⊙V` and `⊙V*`. Products are multiset unions, and the
//! coproduct is the cocommutative one with `Δx = x⊗1 + 1⊗x` on generators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    dim: usize,
    vars: Vec<usize>,
}

impl Monomial {
    pub fn new(dim: usize, mut vars: Vec<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if let Some(v) = vars.iter().find(|&&v| v == 0 || v > dim) {
            return Err(Error::InvalidParameter(format!("variable x{v} outside 1..{dim}")));
        }
        vars.sort_unstable();
        Ok(Self { dim, vars })
    }

    pub fn one(dim: usize) -> Self {
        Self { dim, vars: Vec::new() }
    }

    pub fn var(dim: usize, i: usize) -> Result<Self> {
        Self::new(dim, vec![i])
    }

    /// Builds `x1^e1 * … * xd^ed`.
    pub fn from_exponents(exps: &[usize]) -> Result<Self> {
        let vars = exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e)).collect();
        Self::new(exps.len(), vars)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self) -> usize {
        self.vars.len()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn exponents(&self) -> Vec<usize> {
        let mut e = vec![0; self.dim];
        for &v in &self.vars {
            e[v - 1] += 1;
        }
        e
    }

    /// Whether the variables are pairwise distinct (an exterior basis word).
    pub fn is_squarefree(&self) -> bool {
        self.vars.windows(2).all(|w| w[0] < w[1])
    }

    /// Product without the dimension check.
    pub fn times(&self, other: &Self) -> Self {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            if self.vars[i] <= other.vars[j] {
                vars.push(self.vars[i]);
                i += 1;
            } else {
                vars.push(other.vars[j]);
                j += 1;
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        Self { dim: self.dim, vars }
    }

    /// Whether `other` divides `self`.
    pub fn contains(&self, other: &Self) -> bool {
        let (a, b) = (self.exponents(), other.exponents());
        a.iter().zip(&b).all(|(x, y)| x >= y)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn quotient(&self, other: &Self) -> Option<Self> {
        let (a, b) = (self.exponents(), other.exponents());
        if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x < y) {
            return None;
        }
        let e: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Self::from_exponents(&e).ok()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.exponents().into_iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `x1^2*x3`, `x1^2x3` or `1`.
pub fn parse_monomial(dim: usize, s: &str) -> Result<Monomial> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid monomial `{s}`"));
    if s == "1" {
        return Ok(Monomial::one(dim));
    }
    if !s.starts_with('x') {
        return Err(bad());
    }
    let mut vars = Vec::new();
    for body in s.split('x').skip(1) {
        let body = body.trim().trim_end_matches('*').trim();
        let (v, e) = match body.split_once('^') {
            Some((v, e)) => (v.parse::<usize>().map_err(|_| bad())?, e.parse::<usize>().map_err(|_| bad())?),
            None => (body.parse::<usize>().map_err(|_| bad())?, 1),
        };
        vars.extend(std::iter::repeat_n(v, e));
    }
    Monomial::new(dim, vars)
}

/// An ordered sequence of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndexTuple(pub Vec<Monomial>);

impl MultiIndexTuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(Monomial::weight).sum()
    }

    pub fn parts(&self) -> &[Monomial] {
        &self.0
    }
}

impl fmt::Display for MultiIndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// Parses `[x1, x1^2]`.
pub fn parse_tuple(dim: usize, s: &str) -> Result<MultiIndexTuple> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("invalid tuple `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(MultiIndexTuple(Vec::new()));
    }
    inner.split(',').map(|p| parse_monomial(dim, p)).collect::<Result<_>>().map(MultiIndexTuple)
}

pub fn merge(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    if a.dim != b.dim {
        return Err(Error::Dimension(format!("monomials in {} and {} variables", a.dim, b.dim)));
    }
    Ok(a.times(b))
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Ordered splittings `m = a·b` with multiplicity `Π_j C(e_j, a_j)`, empty
/// parts included. Every distinct `(a, b)` appears once.
pub fn coproduct_splits(m: &Monomial) -> Vec<(Monomial, Monomial, u64)> {
    let e = m.exponents();
    let mut out = Vec::new();
    let mut choice = vec![0usize; e.len()];
    loop {
        let rest: Vec<usize> = e.iter().zip(&choice).map(|(x, a)| x - a).collect();
        let mult = e.iter().zip(&choice).map(|(&x, &a)| binomial(x, a)).product();
        out.push((
            Monomial::from_exponents(&choice).expect("dim is positive"),
            Monomial::from_exponents(&rest).expect("dim is positive"),
            mult,
        ));
        let mut i = 0;
        loop {
            if i == e.len() {
                return out;
            }
            if choice[i] < e[i] {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Splittings with both halves nonconstant.
pub fn reduced_splits(m: &Monomial) -> Vec<(Monomial, Monomial, u64)> {
    coproduct_splits(m).into_iter().filter(|(a, b, _)| !a.is_one() && !b.is_one()).collect()
}

/// Ordered `l`-part splittings with multinomial multiplicity, i.e. the
/// terms of the iterated coproduct `Δ^{l−1}` applied to `m`.
pub fn splits_into(m: &Monomial, l: usize) -> Vec<(Vec<Monomial>, u64)> {
    if l == 0 {
        return Vec::new();
    }
    if l == 1 {
        return vec![(vec![m.clone()], 1)];
    }
    let mut out = Vec::new();
    for (a, b, mu) in coproduct_splits(m) {
        for (mut rest, mu2) in splits_into(&b, l - 1) {
            rest.insert(0, a.clone());
            out.push((rest, mu * mu2));
        }
    }
    out
}

/// `∂^{|by|} x^m / ∂x^{by}` as `(coefficient, monomial)`, or `None` when zero.
pub fn derivative(m: &Monomial, by: &Monomial) -> Option<(u64, Monomial)> {
    let (a, b) = (m.exponents(), by.exponents());
    if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x < y) {
        return None;
    }
    let coeff = a
        .iter()
        .zip(&b)
        .map(|(&x, &y)| ((x - y + 1)..=x).map(|t| t as u64).product::<u64>())
        .product();
    Some((coeff, m.quotient(by)?))
}

/// All monomials of weight `w`, ascending.
pub fn monomials(dim: usize, w: usize) -> Vec<Monomial> {
    fn rec(dim: usize, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial { dim, vars: cur.clone() });
            return;
        }
        for v in start..=dim {
            cur.push(v);
            rec(dim, v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        rec(dim, 1, w, &mut Vec::new(), &mut out);
    }
    out
}

/// All squarefree monomials of weight `w` (exterior basis words), ascending.
pub fn squarefree_monomials(dim: usize, w: usize) -> Vec<Monomial> {
    monomials(dim, w).into_iter().filter(Monomial::is_squarefree).collect()
}

/// Ordered weight vectors of length `parts` summing to `total`.
pub fn compositions(total: usize, parts: usize, allow_zero: bool) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in min..=left {
            cur.push(a);
            rec(left - a, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, usize::from(!allow_zero), &mut Vec::new(), &mut out);
    out
}

/// All tuples of `parts` monomials with weights summing to `total_weight`,
/// in lexicographic order.
pub fn enumerate_tuples(dim: usize, total_weight: usize, parts: usize, allow_empty: bool) -> Vec<MultiIndexTuple> {
    let mut out = Vec::new();
    for comp in compositions(total_weight, parts, allow_empty) {
        let mut acc: Vec<Vec<Monomial>> = vec![Vec::new()];
        for &w in &comp {
            let ms = monomials(dim, w);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    ms.iter().map(move |m| {
                        let mut p = prefix.clone();
                        p.push(m.clone());
                        p
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(MultiIndexTuple));
    }
    out.sort();
    out
}

/// A polynomial: monomial to coefficient, no zeros stored.
pub type Poly<T> = BTreeMap<Monomial, T>;

/// An element of a tensor power of the polynomial algebra.
pub type TensorPoly<T> = BTreeMap<Vec<Monomial>, T>;

pub(crate) fn add_term<K: Ord, T: Scalar>(map: &mut BTreeMap<K, T>, key: K, v: T) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get().clone() + v;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

pub fn poly_derivative<T: Scalar>(p: &Poly<T>, by: &Monomial) -> Poly<T> {
    let mut out = Poly::new();
    for (m, c) in p {
        if let Some((k, r)) = derivative(m, by) {
            add_term(&mut out, r, c.clone() * T::from_count(k));
        }
    }
    out
}

/// Applies the coproduct to tensor factor `i`.
pub fn coproduct_at<T: Scalar>(t: &TensorPoly<T>, i: usize) -> TensorPoly<T> {
    let mut out = TensorPoly::new();
    for (word, c) in t {
        for (a, b, mu) in coproduct_splits(&word[i]) {
            let mut w = word[..i].to_vec();
            w.push(a);
            w.push(b);
            w.extend_from_slice(&word[i + 1..]);
            add_term(&mut out, w, c.clone() * T::from_count(mu));
        }
    }
    out
}

/// A polynomial as a one-factor tensor.
pub fn as_tensor<T: Scalar>(p: &Poly<T>) -> TensorPoly<T> {
    p.iter().map(|(m, c)| (vec![m.clone()], c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(dim: usize, v: &[usize]) -> Monomial {
        Monomial::new(dim, v.to_vec()).unwrap()
    }

    #[test]
    fn merge_examples() {
        assert_eq!(merge(&m(2, &[1]), &m(2, &[2])).unwrap(), m(2, &[1, 2]));
        assert_eq!(merge(&Monomial::one(2), &m(2, &[2, 2])).unwrap(), m(2, &[2, 2]));
        assert_eq!(merge(&m(1, &[1, 1]), &m(1, &[1])).unwrap(), m(1, &[1, 1, 1]));
        assert!(merge(&m(1, &[1]), &m(2, &[1])).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let s = coproduct_splits(&m(1, &[1]));
        assert_eq!(s, vec![(m(1, &[]), m(1, &[1]), 1), (m(1, &[1]), m(1, &[]), 1)]);
        let s = coproduct_splits(&m(1, &[1, 1]));
        assert_eq!(s.iter().map(|t| t.2).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(coproduct_splits(&Monomial::one(3)), vec![(Monomial::one(3), Monomial::one(3), 1)]);
    }

    #[test]
    fn display_and_parse() {
        let x = m(3, &[3, 1, 1]);
        assert_eq!(x.to_string(), "x1^2*x3");
        assert_eq!(parse_monomial(3, "x1^2*x3").unwrap(), x);
        assert_eq!(Monomial::one(2).to_string(), "1");
        assert_eq!(parse_monomial(2, "1").unwrap(), Monomial::one(2));
        assert!(parse_monomial(2, "x3").is_err());
        let t = parse_tuple(2, "[x1, x1*x2]").unwrap();
        assert_eq!(t.to_string(), "[x1, x1*x2]");
    }

    #[test]
    fn enumerate_examples() {
        let t = enumerate_tuples(1, 3, 2, false);
        let w: Vec<Vec<usize>> = t.iter().map(|t| t.0.iter().map(Monomial::weight).collect()).collect();
        assert_eq!(w, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(enumerate_tuples(2, 1, 1, false).len(), 2);
        assert!(enumerate_tuples(1, 0, 1, false).is_empty());
        assert_eq!(enumerate_tuples(1, 0, 2, true).len(), 1);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative(&m(1, &[1, 1, 1]), &m(1, &[1, 1])), Some((6, m(1, &[1]))));
        assert_eq!(derivative(&m(2, &[1]), &m(2, &[2])), None);
        assert_eq!(derivative(&m(2, &[1, 2]), &Monomial::one(2)), Some((1, m(2, &[1, 2]))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
