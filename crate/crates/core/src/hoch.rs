//! Hochschild complexes of the polynomial algebra.
//!
//! Two models are built. The polydifferential complex has one basis element
//! `(J; I_1, …, I_k)` for each operator
//! `f_1⊗…⊗f_k ↦ x^J · Π_a ∂^{|I_a|} f_a / ∂x^{I_a}`, and its differential
//! splits one bunch `I_a` into two nonempty halves. The full complex uses the
//! matrix-element basis `(M_1, …, M_k; O)`, the cochain sending the monomial
//! arguments `(x^{M_1}, …, x^{M_k})` to `x^O` and every other monomial tuple
//! to zero, with the Hochschild differential
//!
//! ```text
//! (dΦ)(f_0, …, f_k) = f_0·Φ(f_1, …, f_k)
//!                   + Σ_i (−1)^{i+1} Φ(…, f_i f_{i+1}, …)
//!                   + (−1)^{k+1} Φ(f_0, …, f_{k−1})·f_k.
//! ```
//!
//! Arguments range over nonconstant monomials. The full complex splits by
//! weight `w = |O| − Σ|M_a|` and is truncated to total input degree at most
//! `D`, keeping the quotient by cochains supported in higher input degree.
//! Inclusion uses the operator with coefficient one, without factorials.

use std::collections::BTreeMap;
use std::fmt;

use crate::chain::{FinChainComplex, LabeledComplex, TargetPolicy};
use crate::error::{Error, Result};
use crate::polyalg::{add_term, derivative, enumerate_tuples, monomials, reduced_splits, Monomial, MultiIndexTuple};
use crate::ratlin::SparseMatrix;
use crate::scalar::{sign, Scalar};

/// Basis of the polydifferential complex: coefficient `J`, bunches `I_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyOpLabel {
    pub coeff: Monomial,
    pub bunches: MultiIndexTuple,
}

impl PolyOpLabel {
    pub fn arity(&self) -> usize {
        self.bunches.len()
    }

    /// `(m, n) = (Σ|I_a|, |J|)`.
    pub fn bigrade(&self) -> (usize, usize) {
        (self.bunches.weight(), self.coeff.weight())
    }
}

impl fmt::Display for PolyOpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(J={}; I={})", self.coeff, self.bunches)
    }
}

/// Matrix-element basis of `Hom(Ō^{⊗k}, O)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullHochLabel {
    pub inputs: MultiIndexTuple,
    pub output: Monomial,
}

impl FullHochLabel {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_degree(&self) -> usize {
        self.inputs.weight()
    }

    pub fn weight(&self) -> i64 {
        self.output.weight() as i64 - self.input_degree() as i64
    }
}

impl fmt::Display for FullHochLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F(in={}; out={})", self.inputs, self.output)
    }
}

/// A cochain of the full complex in the matrix-element basis.
pub type HochVector<T> = BTreeMap<FullHochLabel, T>;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dim must be at least 1".into()));
    }
    Ok(())
}

/// Polydifferential labels of bigrade `(m, n)` and arity `k`.
pub fn polydiff_labels(dim: usize, m: usize, n: usize, k: usize) -> Vec<PolyOpLabel> {
    let bunches = enumerate_tuples(dim, m, k, false);
    monomials(dim, n)
        .into_iter()
        .flat_map(|coeff| bunches.iter().map(move |b| PolyOpLabel { coeff: coeff.clone(), bunches: b.clone() }))
        .collect()
}

/// Splits bunch `a` (1-based) with sign `(−1)^a` and the multiset-splitting
/// multiplicity.
pub fn polydiff_differential<T: Scalar>(l: &PolyOpLabel) -> Vec<(PolyOpLabel, T)> {
    let b = l.bunches.parts();
    let mut out = Vec::new();
    for (i, bunch) in b.iter().enumerate() {
        for (x, y, mu) in reduced_splits(bunch) {
            let mut parts = b[..i].to_vec();
            parts.push(x);
            parts.push(y);
            parts.extend_from_slice(&b[i + 1..]);
            let s: T = sign(i % 2 == 0);
            out.push((PolyOpLabel { coeff: l.coeff.clone(), bunches: MultiIndexTuple(parts) }, s * T::from_count(mu)));
        }
    }
    out
}

/// The polydifferential complex at bigrade `(m, n)`, arity `k` in degree `k`.
pub fn polydiff_complex<T: Scalar>(dim: usize, m: usize, n: usize) -> Result<LabeledComplex<PolyOpLabel, T>> {
    check_dim(dim)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let keys = (1..=m).map(|k| polydiff_labels(dim, m, n, k)).collect();
    LabeledComplex::assemble(1, keys, TargetPolicy::Strict, |l: &PolyOpLabel, _| polydiff_differential(l))
}

pub fn build_polydiff_complex<T: Scalar>(dim: usize, m: usize, n: usize) -> Result<FinChainComplex<T>> {
    Ok(polydiff_complex(dim, m, n)?.into_complex())
}

/// Full-complex labels of weight `w`, arity `k`, input degree at most `max_deg`.
pub fn full_hoch_labels(dim: usize, w: i64, max_deg: usize, k: usize) -> Vec<FullHochLabel> {
    let mut out = Vec::new();
    for tot in k..=max_deg {
        let out_w = tot as i64 + w;
        if out_w < 0 {
            continue;
        }
        let outs = monomials(dim, out_w as usize);
        for inputs in enumerate_tuples(dim, tot, k, false) {
            for o in &outs {
                out.push(FullHochLabel { inputs: inputs.clone(), output: o.clone() });
            }
        }
    }
    out
}

/// Image of one basis cochain under the Hochschild differential, keeping
/// only targets with input degree at most `max_deg`.
///
/// The dual-basis cochain `(M; O)` picks up `(N, M; N·O)` from the left
/// multiplication, `(M, N; O·N)` from the right one, and `(…, A, B, …; O)`
/// once for every way of writing `M_a = A·B` from the merge terms.
pub fn full_hoch_differential<T: Scalar>(l: &FullHochLabel, max_deg: usize) -> Vec<(FullHochLabel, T)> {
    let dim = l.output.dim();
    let m = l.inputs.parts();
    let k = m.len();
    let tot = l.input_degree();
    let mut out = Vec::new();
    for d0 in 1..=max_deg.saturating_sub(tot) {
        for n0 in monomials(dim, d0) {
            let mut left = vec![n0.clone()];
            left.extend_from_slice(m);
            out.push((FullHochLabel { inputs: MultiIndexTuple(left), output: n0.times(&l.output) }, T::one()));
            let mut right = m.to_vec();
            right.push(n0.clone());
            out.push((FullHochLabel { inputs: MultiIndexTuple(right), output: l.output.times(&n0) }, sign(k.is_multiple_of(2))));
        }
    }
    for (i, mi) in m.iter().enumerate() {
        for (a, b, _) in reduced_splits(mi) {
            let mut parts = m[..i].to_vec();
            parts.push(a);
            parts.push(b);
            parts.extend_from_slice(&m[i + 1..]);
            out.push((FullHochLabel { inputs: MultiIndexTuple(parts), output: l.output.clone() }, sign(i % 2 == 0)));
        }
    }
    out
}

/// The truncated full Hochschild complex of weight `w`, arity `k` in degree `k`.
pub fn full_hochschild_complex<T: Scalar>(
    dim: usize,
    weight: i64,
    max_input_degree: usize,
) -> Result<LabeledComplex<FullHochLabel, T>> {
    check_dim(dim)?;
    if max_input_degree == 0 {
        return Err(Error::InvalidParameter("max input degree must be at least 1".into()));
    }
    let keys = (1..=max_input_degree).map(|k| full_hoch_labels(dim, weight, max_input_degree, k)).collect();
    LabeledComplex::assemble(1, keys, TargetPolicy::Strict, |l: &FullHochLabel, _| {
        full_hoch_differential(l, max_input_degree)
    })
}

pub fn build_full_hochschild_complex<T: Scalar>(
    dim: usize,
    weight: i64,
    max_input_degree: usize,
) -> Result<FinChainComplex<T>> {
    Ok(full_hochschild_complex(dim, weight, max_input_degree)?.into_complex())
}

/// Applies the truncated Hochschild differential to a vector.
pub fn apply_full_differential<T: Scalar>(v: &HochVector<T>, max_deg: usize) -> HochVector<T> {
    let mut out = HochVector::new();
    for (l, c) in v {
        for (t, x) in full_hoch_differential::<T>(l, max_deg) {
            add_term(&mut out, t, x * c.clone());
        }
    }
    out
}

/// The operator of a polydifferential label on all monomial arguments of
/// total degree at most `max_deg`.
pub fn include_polydiff<T: Scalar>(l: &PolyOpLabel, max_deg: usize) -> Result<HochVector<T>> {
    let (m, _) = l.bigrade();
    if max_deg < m {
        return Err(Error::Window(format!("{l} needs input degree bound at least {m}, got {max_deg}")));
    }
    let dim = l.coeff.dim();
    let k = l.arity();
    let mut out = HochVector::new();
    for extra in 0..=max_deg - m {
        for rs in enumerate_tuples(dim, extra, k, true) {
            let mut coeff = 1u64;
            let mut output = l.coeff.clone();
            let mut inputs = Vec::with_capacity(k);
            for (r, i) in rs.parts().iter().zip(l.bunches.parts()) {
                let full = r.times(i);
                let (c, rest) = derivative(&full, i).expect("bunch divides its own multiple");
                coeff *= c;
                output = output.times(&rest);
                inputs.push(full);
            }
            add_term(&mut out, FullHochLabel { inputs: MultiIndexTuple(inputs), output }, T::from_count(coeff));
        }
    }
    Ok(out)
}

/// Applies the polydifferential differential to a vector of labels.
pub fn apply_polydiff_differential<T: Scalar>(v: &BTreeMap<PolyOpLabel, T>) -> BTreeMap<PolyOpLabel, T> {
    let mut out = BTreeMap::new();
    for (l, c) in v {
        for (t, x) in polydiff_differential::<T>(l) {
            add_term(&mut out, t, x * c.clone());
        }
    }
    out
}

/// Includes a linear combination of labels.
pub fn include_vector<T: Scalar>(v: &BTreeMap<PolyOpLabel, T>, max_deg: usize) -> Result<HochVector<T>> {
    let mut out = HochVector::new();
    for (l, c) in v {
        for (t, x) in include_polydiff::<T>(l, max_deg)? {
            add_term(&mut out, t, x * c.clone());
        }
    }
    Ok(out)
}

/// Labels at bigrade `(m, n)` for which `include∘δ ≠ d_H∘include`.
pub fn inclusion_failures<T: Scalar>(dim: usize, m: usize, n: usize, max_deg: usize) -> Result<Vec<PolyOpLabel>> {
    check_dim(dim)?;
    let mut bad = Vec::new();
    for k in 1..=m {
        for l in polydiff_labels(dim, m, n, k) {
            let single = BTreeMap::from([(l.clone(), T::one())]);
            let lhs = include_vector(&apply_polydiff_differential(&single), max_deg)?;
            let rhs = apply_full_differential(&include_polydiff::<T>(&l, max_deg)?, max_deg);
            if lhs != rhs {
                bad.push(l);
            }
        }
    }
    Ok(bad)
}

/// The inclusion as one matrix per arity, between assembled complexes.
pub fn inclusion_matrices<T: Scalar>(
    poly: &LabeledComplex<PolyOpLabel, T>,
    full: &LabeledComplex<FullHochLabel, T>,
    max_deg: usize,
) -> Result<BTreeMap<i64, SparseMatrix<T>>> {
    let mut maps = BTreeMap::new();
    for d in poly.complex.degrees() {
        let mut triplets = Vec::new();
        for (c, l) in poly.keys(d).iter().enumerate() {
            for (t, v) in include_polydiff::<T>(l, max_deg)? {
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
    use crate::chain::chain_map_failures;
    use crate::polyalg::parse_monomial;
    use num_rational::BigRational;

    type Q = BigRational;

    fn mono(dim: usize, s: &str) -> Monomial {
        parse_monomial(dim, s).unwrap()
    }

    #[test]
    fn polydiff_dim2_m2_n0() {
        let c = build_polydiff_complex::<Q>(2, 2, 0).unwrap();
        assert_eq!((c.dim(1), c.dim(2)), (3, 4));
        let b = c.betti().unwrap();
        assert_eq!((b.get(1), b.get(2)), (0, 1));
    }

    #[test]
    fn polydiff_single_label() {
        let c = build_polydiff_complex::<Q>(1, 1, 5).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.betti().unwrap().get(1), 1);
    }

    #[test]
    fn splitting_multiplicities_sum_to_two_power() {
        for m in 2..=4 {
            let l = PolyOpLabel { coeff: Monomial::one(1), bunches: MultiIndexTuple(vec![mono(1, &format!("x1^{m}"))]) };
            let total: Q = polydiff_differential::<Q>(&l).into_iter().map(|(_, v)| num_traits::Signed::abs(&v)).sum();
            assert_eq!(total, Q::from_int((1 << m) - 2));
        }
    }

    #[test]
    fn derivation_inclusion() {
        let l = PolyOpLabel { coeff: Monomial::one(1), bunches: MultiIndexTuple(vec![mono(1, "x1")]) };
        let v = include_polydiff::<Q>(&l, 3).unwrap();
        assert_eq!(v.len(), 3);
        let key = FullHochLabel { inputs: MultiIndexTuple(vec![mono(1, "x1^3")]), output: mono(1, "x1^2") };
        assert_eq!(v[&key], Q::from_int(3));
        let euler = PolyOpLabel { coeff: mono(1, "x1"), bunches: MultiIndexTuple(vec![mono(1, "x1")]) };
        let v = include_polydiff::<Q>(&euler, 1).unwrap();
        let key = FullHochLabel { inputs: MultiIndexTuple(vec![mono(1, "x1")]), output: mono(1, "x1") };
        assert_eq!(v.get(&key), Some(&Q::from_int(1)));
        assert!(include_polydiff::<Q>(&l, 0).is_err());
    }

    #[test]
    fn full_dim1_weight0() {
        let c = build_full_hochschild_complex::<Q>(1, 0, 3).unwrap();
        assert_eq!(c.betti().unwrap().get(1), 1);
    }

    #[test]
    fn inclusion_is_chain_map_as_matrices() {
        let poly = polydiff_complex::<Q>(2, 2, 1).unwrap();
        let full = full_hochschild_complex::<Q>(2, -1, 4).unwrap();
        let maps = inclusion_matrices(&poly, &full, 4).unwrap();
        assert!(chain_map_failures(&poly.complex, &full.complex, &maps).unwrap().is_empty());
        assert!(inclusion_failures::<Q>(2, 2, 1, 4).unwrap().is_empty());
    }

    #[test]
    fn labels() {
        let l = PolyOpLabel {
            coeff: mono(2, "x1"),
            bunches: MultiIndexTuple(vec![mono(2, "x1*x2"), mono(2, "x2")]),
        };
        assert_eq!(l.to_string(), "H(J=x1; I=[x1*x2, x2])");
        let f = FullHochLabel { inputs: MultiIndexTuple(vec![mono(1, "x1"), mono(1, "x1^2")]), output: mono(1, "x1^3") };
        assert_eq!(f.to_string(), "F(in=[x1, x1^2]; out=x1^3)");
    }
}
