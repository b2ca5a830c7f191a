//! Gerstenhaber–Schack complexes of the polynomial bialgebra.
//!
//! The polydifferential model has a basis element `(I_1, …, I_k; J_1, …, J_l)`
//! for each operator
//! `f_1⊗…⊗f_k ↦ (x^{J_1}⊗…⊗x^{J_l}) · Π_a Δ^{l−1}(∂^{|I_a|} f_a / ∂x^{I_a})`
//! and sits in bidegree `(k, l)`. The full model uses matrix elements
//! `(M_1, …, M_k; P_1, …, P_l)` of `Hom(Ō^{⊗k}, Ō^{⊗l})`, with all monomials
//! nonconstant. It carries the two Gerstenhaber–Schack differentials: `d¹`
//! built from the product and the iterated coproduct `Δ^{l−1}`, and `d²`
//! built from the coproduct on the outputs. Both square to zero and they
//! commute, so the total differential is `d¹ + (−1)^k d²`.
//!
//! The full complex is taken at fixed weight `w = Σ|P| − Σ|M|` and truncated
//! to total input degree at most `D` (quotient semantics).

use std::collections::BTreeMap;
use std::fmt;

use crate::chain::{FinChainComplex, LabeledComplex, TargetPolicy};
use crate::error::{Error, Result};
use crate::polyalg::{
    add_term, binomial, derivative, enumerate_tuples, monomials, reduced_splits, splits_into, Monomial, MultiIndexTuple,
};
use crate::ratlin::SparseMatrix;
use crate::scalar::{sign, Scalar};

/// Basis of the polydifferential GS complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GsOpLabel {
    pub out_bunches: MultiIndexTuple,
    pub in_bunches: MultiIndexTuple,
}

impl GsOpLabel {
    /// `(k, l)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.out_bunches.len(), self.in_bunches.len())
    }

    /// `(m, n) = (Σ|I_a|, Σ|J_b|)`.
    pub fn bigrade(&self) -> (usize, usize) {
        (self.out_bunches.weight(), self.in_bunches.weight())
    }
}

impl fmt::Display for GsOpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(I={}; J={})", self.out_bunches, self.in_bunches)
    }
}

/// Matrix-element basis of `Hom(Ō^{⊗k}, Ō^{⊗l})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullGsLabel {
    pub inputs: MultiIndexTuple,
    pub outputs: MultiIndexTuple,
}

impl FullGsLabel {
    pub fn bidegree(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    pub fn total_degree(&self) -> i64 {
        (self.inputs.len() + self.outputs.len()) as i64
    }

    pub fn weight(&self) -> i64 {
        self.outputs.weight() as i64 - self.inputs.weight() as i64
    }
}

impl fmt::Display for FullGsLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(in={}; out={})", self.inputs, self.outputs)
    }
}

pub type GsVector<T> = BTreeMap<FullGsLabel, T>;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dim must be at least 1".into()));
    }
    Ok(())
}

fn split_at(parts: &[Monomial], i: usize, a: Monomial, b: Monomial) -> MultiIndexTuple {
    let mut out = parts[..i].to_vec();
    out.push(a);
    out.push(b);
    out.extend_from_slice(&parts[i + 1..]);
    MultiIndexTuple(out)
}

pub fn poly_gs_labels(dim: usize, m: usize, n: usize, k: usize, l: usize) -> Vec<GsOpLabel> {
    let ins = enumerate_tuples(dim, n, l, false);
    enumerate_tuples(dim, m, k, false)
        .into_iter()
        .flat_map(|o| ins.iter().map(move |i| GsOpLabel { out_bunches: o.clone(), in_bunches: i.clone() }))
        .collect()
}

/// Splits an output bunch `I_a` with sign `(−1)^{a+1}` and multiplicity.
pub fn poly_gs_delta_out<T: Scalar>(l: &GsOpLabel) -> Vec<(GsOpLabel, T)> {
    let p = l.out_bunches.parts();
    let mut out = Vec::new();
    for (i, bunch) in p.iter().enumerate() {
        for (a, b, mu) in reduced_splits(bunch) {
            let s: T = sign(i % 2 == 1);
            out.push((GsOpLabel { out_bunches: split_at(p, i, a, b), in_bunches: l.in_bunches.clone() }, s * T::from_count(mu)));
        }
    }
    out
}

/// Splits an input bunch `J_b` with sign `(−1)^{b+1}` and multiplicity.
pub fn poly_gs_delta_in<T: Scalar>(l: &GsOpLabel) -> Vec<(GsOpLabel, T)> {
    let p = l.in_bunches.parts();
    let mut out = Vec::new();
    for (i, bunch) in p.iter().enumerate() {
        for (a, b, mu) in reduced_splits(bunch) {
            let s: T = sign(i % 2 == 1);
            out.push((GsOpLabel { out_bunches: l.out_bunches.clone(), in_bunches: split_at(p, i, a, b) }, s * T::from_count(mu)));
        }
    }
    out
}

/// The total polydifferential differential `δ_out + (−1)^k δ_in`.
pub fn poly_gs_differential<T: Scalar>(l: &GsOpLabel) -> Vec<(GsOpLabel, T)> {
    let twist: T = sign(l.out_bunches.len() % 2 == 1);
    let mut out = poly_gs_delta_out(l);
    out.extend(poly_gs_delta_in::<T>(l).into_iter().map(|(t, v)| (t, v * twist.clone())));
    out
}

fn poly_gs_keys(dim: usize, m: usize, n: usize) -> Vec<Vec<GsOpLabel>> {
    (2..=m + n)
        .map(|d| {
            (1..=m)
                .filter(|&k| d > k && d - k <= n)
                .flat_map(|k| poly_gs_labels(dim, m, n, k, d - k))
                .collect()
        })
        .collect()
}

fn check_bigrade(dim: usize, m: usize, n: usize) -> Result<()> {
    check_dim(dim)?;
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("m and n must be at least 1".into()));
    }
    Ok(())
}

/// Total complex of the polydifferential GS bicomplex at bigrade `(m, n)`;
/// bidegree `(k, l)` sits in degree `k + l`.
pub fn poly_gs_complex<T: Scalar>(dim: usize, m: usize, n: usize) -> Result<LabeledComplex<GsOpLabel, T>> {
    check_bigrade(dim, m, n)?;
    LabeledComplex::assemble(2, poly_gs_keys(dim, m, n), TargetPolicy::Strict, |l: &GsOpLabel, _| {
        poly_gs_differential(l)
    })
}

/// The same basis with only one of the two partial differentials, the input
/// side already carrying its `(−1)^k`.
pub fn poly_gs_partial<T: Scalar>(dim: usize, m: usize, n: usize, output_side: bool) -> Result<LabeledComplex<GsOpLabel, T>> {
    check_bigrade(dim, m, n)?;
    LabeledComplex::assemble(2, poly_gs_keys(dim, m, n), TargetPolicy::Strict, move |l: &GsOpLabel, _| {
        if output_side {
            poly_gs_delta_out(l)
        } else {
            let twist: T = sign(l.out_bunches.len() % 2 == 1);
            poly_gs_delta_in::<T>(l).into_iter().map(|(t, v)| (t, v * twist.clone())).collect()
        }
    })
}

pub fn build_polydiff_gs_complex<T: Scalar>(dim: usize, m: usize, n: usize) -> Result<FinChainComplex<T>> {
    Ok(poly_gs_complex(dim, m, n)?.into_complex())
}

/// Which terms of the full differential to keep. Everything is on by
/// default; switching a term off is how the tests check that it matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GsTerms {
    /// `−Δ^{l−1}(f_0)·Φ(f_1, …)` in `d¹`.
    pub left_coaction: bool,
    /// `(−1)^k Φ(…)·Δ^{l−1}(f_k)` in `d¹`.
    pub right_coaction: bool,
    /// The product terms of `d¹`.
    pub merges: bool,
    /// The whole of `d²`.
    pub d2: bool,
}

impl Default for GsTerms {
    fn default() -> Self {
        Self { left_coaction: true, right_coaction: true, merges: true, d2: true }
    }
}

/// `d¹` on a basis cochain, restricted to input degree `≤ max_deg`.
pub fn full_gs_d1<T: Scalar>(l: &FullGsLabel, max_deg: usize, terms: GsTerms) -> Vec<(FullGsLabel, T)> {
    let dim = match l.inputs.parts().first() {
        Some(m) => m.dim(),
        None => return Vec::new(),
    };
    let ms = l.inputs.parts();
    let ps = l.outputs.parts();
    let (k, nl) = (ms.len(), ps.len());
    let tin = l.inputs.weight();
    let mut out = Vec::new();
    for d0 in 1..=max_deg.saturating_sub(tin) {
        for n0 in monomials(dim, d0) {
            for (parts, mu) in splits_into(&n0, nl) {
                let q = MultiIndexTuple(ps.iter().zip(&parts).map(|(p, x)| p.times(x)).collect());
                let mu = T::from_count(mu);
                if terms.left_coaction {
                    let mut left = vec![n0.clone()];
                    left.extend_from_slice(ms);
                    out.push((FullGsLabel { inputs: MultiIndexTuple(left), outputs: q.clone() }, -mu.clone()));
                }
                if terms.right_coaction {
                    let mut right = ms.to_vec();
                    right.push(n0.clone());
                    out.push((FullGsLabel { inputs: MultiIndexTuple(right), outputs: q }, sign::<T>(k % 2 == 1) * mu));
                }
            }
        }
    }
    if terms.merges {
        for (i, mi) in ms.iter().enumerate() {
            for (a, b, _) in reduced_splits(mi) {
                out.push((FullGsLabel { inputs: split_at(ms, i, a, b), outputs: l.outputs.clone() }, sign(i % 2 == 1)));
            }
        }
    }
    out
}

/// `d²` on a basis cochain, restricted to input degree `≤ max_deg`. Terms
/// with a constant output factor lie outside `Ō^{⊗l}` and are dropped.
pub fn full_gs_d2<T: Scalar>(l: &FullGsLabel, max_deg: usize) -> Vec<(FullGsLabel, T)> {
    let dim = match l.inputs.parts().first() {
        Some(m) => m.dim(),
        None => return Vec::new(),
    };
    let ms = l.inputs.parts();
    let ps = l.outputs.parts();
    let (k, nl) = (ms.len(), ps.len());
    let tin = l.inputs.weight();
    let mut out = Vec::new();
    for extra in 1..=max_deg.saturating_sub(tin) {
        for rs in enumerate_tuples(dim, extra, k, true) {
            let mut mult = 1u64;
            let mut total = Monomial::one(dim);
            let mut ns = Vec::with_capacity(k);
            for (r, m) in rs.parts().iter().zip(ms) {
                for (re, me) in r.exponents().into_iter().zip(m.exponents()) {
                    mult *= binomial(re + me, re);
                }
                total = total.times(r);
                ns.push(r.times(m));
            }
            let ns = MultiIndexTuple(ns);
            let mult = T::from_count(mult);
            let mut front = vec![total.clone()];
            front.extend_from_slice(ps);
            out.push((FullGsLabel { inputs: ns.clone(), outputs: MultiIndexTuple(front) }, -mult.clone()));
            let mut back = ps.to_vec();
            back.push(total);
            out.push((FullGsLabel { inputs: ns, outputs: MultiIndexTuple(back) }, sign::<T>(nl % 2 == 1) * mult));
        }
    }
    for (i, p) in ps.iter().enumerate() {
        for (a, b, mu) in reduced_splits(p) {
            // −(−1)^i with i 1-based.
            let s: T = sign(i % 2 == 1);
            out.push((FullGsLabel { inputs: l.inputs.clone(), outputs: split_at(ps, i, a, b) }, s * T::from_count(mu)));
        }
    }
    out
}

/// `d¹ + (−1)^k d²`.
pub fn full_gs_differential<T: Scalar>(l: &FullGsLabel, max_deg: usize, terms: GsTerms) -> Vec<(FullGsLabel, T)> {
    let mut out = full_gs_d1(l, max_deg, terms);
    if terms.d2 {
        let twist: T = sign(l.inputs.len() % 2 == 1);
        out.extend(full_gs_d2::<T>(l, max_deg).into_iter().map(|(t, v)| (t, v * twist.clone())));
    }
    out
}

/// Full GS labels of weight `w` and input degree at most `max_deg`, grouped
/// by total degree starting at 2.
pub fn full_gs_keys(dim: usize, w: i64, max_deg: usize) -> Vec<Vec<FullGsLabel>> {
    let mut by_degree: BTreeMap<usize, Vec<FullGsLabel>> = BTreeMap::new();
    for tin in 1..=max_deg {
        let tout = tin as i64 + w;
        if tout < 1 {
            continue;
        }
        let tout = tout as usize;
        for k in 1..=tin {
            let ins = enumerate_tuples(dim, tin, k, false);
            for l in 1..=tout {
                let outs = enumerate_tuples(dim, tout, l, false);
                let slot = by_degree.entry(k + l).or_default();
                for i in &ins {
                    for o in &outs {
                        slot.push(FullGsLabel { inputs: i.clone(), outputs: o.clone() });
                    }
                }
            }
        }
    }
    let top = by_degree.keys().next_back().copied().unwrap_or(1);
    (2..=top.max(2)).map(|d| by_degree.remove(&d).unwrap_or_default()).collect()
}

/// The total complex of the truncated full GS complex together with the
/// two partial differentials on the same basis (the `d²` part already
/// multiplied by `(−1)^k`).
pub struct FullGsComplex<T> {
    pub total: LabeledComplex<FullGsLabel, T>,
    pub horizontal: FinChainComplex<T>,
    pub vertical: FinChainComplex<T>,
}

impl<T: Scalar> FullGsComplex<T> {
    /// Degrees where `h∘h`, `v∘v` or `h∘v + v∘h` is nonzero.
    pub fn identity_failures(&self) -> Result<(Vec<i64>, Vec<i64>, Vec<i64>)> {
        let (mut hh, mut vv, mut anti) = (Vec::new(), Vec::new(), Vec::new());
        for d in self.horizontal.degrees() {
            let (Some(h0), Some(h1), Some(v0), Some(v1)) =
                (self.horizontal.diff(d), self.horizontal.diff(d + 1), self.vertical.diff(d), self.vertical.diff(d + 1))
            else {
                continue;
            };
            if !h1.compose(h0)?.is_zero() {
                hh.push(d);
            }
            if !v1.compose(v0)?.is_zero() {
                vv.push(d);
            }
            if !h1.compose(v0)?.add(&v1.compose(h0)?)?.is_zero() {
                anti.push(d);
            }
        }
        Ok((hh, vv, anti))
    }
}

pub fn full_gs_complex_with<T: Scalar>(
    dim: usize,
    weight: i64,
    max_input_degree: usize,
    terms: GsTerms,
) -> Result<FullGsComplex<T>> {
    check_dim(dim)?;
    if max_input_degree == 0 {
        return Err(Error::InvalidParameter("max input degree must be at least 1".into()));
    }
    let keys = full_gs_keys(dim, weight, max_input_degree);
    let total = LabeledComplex::assemble(2, keys.clone(), TargetPolicy::Strict, |l: &FullGsLabel, _| {
        full_gs_differential(l, max_input_degree, terms)
    })?;
    let horizontal = LabeledComplex::assemble(2, keys.clone(), TargetPolicy::Strict, |l: &FullGsLabel, _| {
        full_gs_d1(l, max_input_degree, terms)
    })?
    .into_complex();
    let vertical = LabeledComplex::assemble(2, keys, TargetPolicy::Strict, |l: &FullGsLabel, _| {
        if !terms.d2 {
            return Vec::new();
        }
        let twist: T = sign(l.inputs.len() % 2 == 1);
        full_gs_d2::<T>(l, max_input_degree).into_iter().map(|(t, v)| (t, v * twist.clone())).collect()
    })?
    .into_complex();
    Ok(FullGsComplex { total, horizontal, vertical })
}

pub fn full_gs_complex<T: Scalar>(dim: usize, weight: i64, max_input_degree: usize) -> Result<FullGsComplex<T>> {
    full_gs_complex_with(dim, weight, max_input_degree, GsTerms::default())
}

pub fn build_full_gs_complex<T: Scalar>(dim: usize, weight: i64, max_input_degree: usize) -> Result<FinChainComplex<T>> {
    Ok(full_gs_complex(dim, weight, max_input_degree)?.total.into_complex())
}

/// Applies `d¹`, the signed `d²`, or their sum to a vector.
pub fn apply_full_gs<T: Scalar>(v: &GsVector<T>, max_deg: usize, part: GsPart) -> GsVector<T> {
    let mut out = GsVector::new();
    for (l, c) in v {
        let terms = match part {
            GsPart::D1 => full_gs_d1::<T>(l, max_deg, GsTerms::default()),
            GsPart::D2 => full_gs_d2(l, max_deg),
            GsPart::Total => full_gs_differential(l, max_deg, GsTerms::default()),
        };
        for (t, x) in terms {
            add_term(&mut out, t, x * c.clone());
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsPart {
    D1,
    /// `d²` without the `(−1)^k` of the total complex.
    D2,
    Total,
}

/// The operator of a polydifferential GS label on all arguments of total
/// degree at most `max_deg`.
pub fn include_polydiff_gs<T: Scalar>(l: &GsOpLabel, max_deg: usize) -> Result<GsVector<T>> {
    let (m, _) = l.bigrade();
    if max_deg < m {
        return Err(Error::Window(format!("{l} needs input degree bound at least {m}, got {max_deg}")));
    }
    let is = l.out_bunches.parts();
    let nl = l.in_bunches.len();
    let dim = is[0].dim();
    let mut out = GsVector::new();
    for extra in 0..=max_deg - m {
        for rs in enumerate_tuples(dim, extra, is.len(), true) {
            let mut acc: BTreeMap<Vec<Monomial>, u64> = BTreeMap::from([(l.in_bunches.0.clone(), 1)]);
            let mut inputs = Vec::with_capacity(is.len());
            for (r, i) in rs.parts().iter().zip(is) {
                let full = r.times(i);
                let (c, rest) = derivative(&full, i).expect("bunch divides its own multiple");
                inputs.push(full);
                let mut next = BTreeMap::new();
                for (q, v) in &acc {
                    for (parts, mu) in splits_into(&rest, nl) {
                        let q2: Vec<Monomial> = q.iter().zip(&parts).map(|(a, b)| a.times(b)).collect();
                        *next.entry(q2).or_insert(0) += v * c * mu;
                    }
                }
                acc = next;
            }
            let inputs = MultiIndexTuple(inputs);
            for (q, v) in acc {
                add_term(&mut out, FullGsLabel { inputs: inputs.clone(), outputs: MultiIndexTuple(q) }, T::from_count(v));
            }
        }
    }
    Ok(out)
}

fn apply_poly<T: Scalar>(l: &GsOpLabel, f: fn(&GsOpLabel) -> Vec<(GsOpLabel, T)>, max_deg: usize) -> Result<GsVector<T>> {
    let mut out = GsVector::new();
    for (t, c) in f(l) {
        for (x, v) in include_polydiff_gs::<T>(&t, max_deg)? {
            add_term(&mut out, x, v * c.clone());
        }
    }
    Ok(out)
}

/// Labels at bigrade `(m, n)` where the inclusion fails to intertwine
/// `δ_out` with `d¹`, `δ_in` with `d²`, or the two total differentials.
pub fn gs_inclusion_failures<T: Scalar>(dim: usize, m: usize, n: usize, max_deg: usize) -> Result<Vec<GsOpLabel>> {
    check_bigrade(dim, m, n)?;
    let mut bad = Vec::new();
    for k in 1..=m {
        for nl in 1..=n {
            for l in poly_gs_labels(dim, m, n, k, nl) {
                let inc = include_polydiff_gs::<T>(&l, max_deg)?;
                let ok1 = apply_poly(&l, poly_gs_delta_out::<T>, max_deg)? == apply_full_gs(&inc, max_deg, GsPart::D1);
                let ok2 = apply_poly(&l, poly_gs_delta_in::<T>, max_deg)? == apply_full_gs(&inc, max_deg, GsPart::D2);
                let ok3 = apply_poly(&l, poly_gs_differential::<T>, max_deg)? == apply_full_gs(&inc, max_deg, GsPart::Total);
                if !(ok1 && ok2 && ok3) {
                    bad.push(l);
                }
            }
        }
    }
    Ok(bad)
}

/// The inclusion as one matrix per total degree.
pub fn gs_inclusion_matrices<T: Scalar>(
    poly: &LabeledComplex<GsOpLabel, T>,
    full: &LabeledComplex<FullGsLabel, T>,
    max_deg: usize,
) -> Result<BTreeMap<i64, SparseMatrix<T>>> {
    let mut maps = BTreeMap::new();
    for d in poly.complex.degrees() {
        let mut triplets = Vec::new();
        for (c, l) in poly.keys(d).iter().enumerate() {
            for (t, v) in include_polydiff_gs::<T>(l, max_deg)? {
                let r = full
                    .position(d, &t)
                    .ok_or_else(|| Error::Window(format!("{t} is not in the full complex")))?;
                triplets.push((r, c, v));
            }
        }
        maps.insert(d, SparseMatrix::from_triplets(full.complex.dim(d), poly.complex.dim(d), triplets)?);
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_tuple;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn poly_small_cases() {
        let c = build_polydiff_gs_complex::<Q>(1, 2, 2).unwrap();
        assert_eq!(c.size(), 4);
        assert_eq!(c.betti().unwrap().total(), 0);
        let c = build_polydiff_gs_complex::<Q>(2, 2, 1).unwrap();
        let b = c.betti().unwrap();
        assert_eq!(b.support(), BTreeMap::from([(3, 2)]));
        let c = build_polydiff_gs_complex::<Q>(1, 1, 1).unwrap();
        assert_eq!(c.betti().unwrap().support(), BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn euler_field_inclusion() {
        let l = GsOpLabel { out_bunches: parse_tuple(1, "[x1]").unwrap(), in_bunches: parse_tuple(1, "[x1]").unwrap() };
        let v = include_polydiff_gs::<Q>(&l, 3).unwrap();
        for (label, c) in &v {
            let d = label.inputs.weight();
            assert_eq!(label.outputs.weight(), d);
            assert_eq!(c, &Q::from_int(d as i64));
        }
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn full_identities_small() {
        let c = full_gs_complex::<Q>(1, 0, 3).unwrap();
        let (hh, vv, anti) = c.identity_failures().unwrap();
        assert!(hh.is_empty() && vv.is_empty() && anti.is_empty());
        assert!(c.total.complex.validate().passed());
    }

    #[test]
    fn dropping_left_coaction_breaks_d_squared() {
        let terms = GsTerms { left_coaction: false, ..GsTerms::default() };
        let c = full_gs_complex_with::<Q>(1, 0, 3, terms).unwrap();
        assert!(!c.total.complex.validate().passed());
    }

    #[test]
    fn inclusion_commutes() {
        assert!(gs_inclusion_failures::<Q>(1, 2, 2, 5).unwrap().is_empty());
        assert!(gs_inclusion_failures::<Q>(2, 1, 2, 3).unwrap().is_empty());
    }
}
