//! Maurer–Cartan residuals for deformations of the product.
//!
//! A deformation `g` (arity two, no constant arguments) is Maurer–Cartan when
//! `d_H g + ½[g, g] = 0`, which with `d_H = −[·, μ]` says exactly that
//! `μ − g` is associative.

use std::collections::BTreeMap;

use super::gerstenhaber::{bracket_window, gerstenhaber_bracket, mu, Cochain};
use crate::error::{Error, Result};
use crate::hoch::{apply_full_differential, FullHochLabel};
use crate::polyalg::{add_term, monomials, Monomial, MultiIndexTuple};
use crate::ratlin::{solve, SparseMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct McReport<T> {
    /// Input degree bound on which the residual is exact.
    pub window: usize,
    pub residual: Cochain<T>,
}

impl<T: Scalar> McReport<T> {
    pub fn is_mc(&self) -> bool {
        self.residual.is_zero()
    }

    /// Arities where the residual is supported.
    pub fn arities(&self) -> Vec<usize> {
        self.residual.arities()
    }
}

/// Computes `d_H g + ½[g, g]` on the largest window where both are known.
pub fn mc_check<T: Scalar>(g: &Cochain<T>) -> Result<McReport<T>> {
    if let Some(l) = g.terms().keys().find(|l| l.arity() != 2) {
        return Err(Error::InvalidParameter(format!("{l} is not of degree 1")));
    }
    if let Some(l) = g.terms().keys().find(|l| l.inputs.parts().iter().any(Monomial::is_one)) {
        return Err(Error::InvalidParameter(format!("{l} has a constant argument")));
    }
    let window = bracket_window(g, g)?;
    let dg = Cochain::new(g.dim(), window, {
        let full = apply_full_differential(g.terms(), g.max_input_degree());
        full.into_iter().filter(|(l, _)| l.input_degree() <= window).collect::<Vec<_>>()
    })?;
    let half = T::one() / T::from_int(2);
    let residual = dg.add(&gerstenhaber_bracket(g, g)?.scale(&half))?;
    Ok(McReport { window, residual })
}

/// `g = μ − μ_φ` for `φ = id + h`, where `μ_φ(a, b) = φ⁻¹(φ(a)·φ(b))`.
/// `h` maps `x^M` to `Σ h[(M, N)] x^N` and must preserve degree and kill
/// constants, so `μ_φ` is again unital and associative.
pub fn gauge_deformation<T: Scalar>(
    dim: usize,
    max_input_degree: usize,
    h: &BTreeMap<(Monomial, Monomial), T>,
) -> Result<Cochain<T>> {
    for (m, n) in h.keys() {
        if m.weight() != n.weight() || m.is_one() || m.dim() != dim || n.dim() != dim {
            return Err(Error::InvalidParameter(format!("h({m}) ∋ {n} is not a weight-0 map on Ō")));
        }
    }
    let d = max_input_degree;
    // φ and φ⁻¹ degree by degree, as maps monomial → combination.
    let mut phi: BTreeMap<Monomial, BTreeMap<Monomial, T>> = BTreeMap::new();
    let mut inv: BTreeMap<Monomial, BTreeMap<Monomial, T>> = BTreeMap::new();
    for deg in 0..=d {
        let basis = monomials(dim, deg);
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut triplets = Vec::new();
        for (c, m) in basis.iter().enumerate() {
            let mut img = BTreeMap::from([(m.clone(), T::one())]);
            for ((src, tgt), v) in h.range((m.clone(), Monomial::one(dim))..) {
                if src != m {
                    break;
                }
                add_term(&mut img, tgt.clone(), v.clone());
            }
            for (t, v) in &img {
                triplets.push((index[t], c, v.clone()));
            }
            phi.insert(m.clone(), img);
        }
        let mat = SparseMatrix::from_triplets(basis.len(), basis.len(), triplets)?;
        for (r, m) in basis.iter().enumerate() {
            let mut e = vec![T::zero(); basis.len()];
            e[r] = T::one();
            let x = solve(&mat, &e)?.ok_or_else(|| Error::InvalidParameter("id + h is not invertible".into()))?;
            let col: BTreeMap<Monomial, T> =
                basis.iter().zip(x).filter(|(_, v)| !v.is_zero()).map(|(b, v)| (b.clone(), v)).collect();
            inv.insert(m.clone(), col);
        }
    }
    let mut terms = BTreeMap::new();
    for (l, v) in mu::<T>(dim, d).into_terms() {
        if !l.inputs.parts().iter().any(Monomial::is_one) {
            add_term(&mut terms, l, v);
        }
    }
    for total in 2..=d {
        for da in 1..total {
            for a in monomials(dim, da) {
                for b in monomials(dim, total - da) {
                    let mut prod: BTreeMap<Monomial, T> = BTreeMap::new();
                    for (pa, va) in &phi[&a] {
                        for (pb, vb) in &phi[&b] {
                            for (o, vo) in &inv[&pa.times(pb)] {
                                add_term(&mut prod, o.clone(), va.clone() * vb.clone() * vo.clone());
                            }
                        }
                    }
                    for (o, v) in prod {
                        let label = FullHochLabel { inputs: MultiIndexTuple(vec![a.clone(), b.clone()]), output: o };
                        add_term(&mut terms, label, -v);
                    }
                }
            }
        }
    }
    Cochain::new(dim, d, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_monomial;
    use num_rational::BigRational;

    type Q = BigRational;

    fn mono(s: &str) -> Monomial {
        parse_monomial(2, s).unwrap()
    }

    #[test]
    fn zero_is_mc() {
        let r = mc_check(&Cochain::<Q>::zero(2, 3)).unwrap();
        assert!(r.is_mc());
        assert_eq!(r.window, 3);
    }

    #[test]
    fn gauge_trivial_deformation_is_mc() {
        let h = BTreeMap::from([
            ((mono("x1"), mono("x2")), Q::from_int(2)),
            ((mono("x1^2"), mono("x1*x2")), Q::from_int(-1)),
            ((mono("x1*x2"), mono("x2^2")), Q::from_int(3)),
        ]);
        let g = gauge_deformation(2, 4, &h).unwrap();
        assert!(!g.is_zero());
        assert!(mc_check(&g).unwrap().is_mc());
    }

    #[test]
    fn non_associative_perturbation_fails_in_arity_three() {
        let x = Monomial::var(1, 1).unwrap();
        let x2 = x.times(&x);
        let g = Cochain::new(
            1,
            3,
            [(FullHochLabel { inputs: MultiIndexTuple(vec![x2.clone(), x.clone()]), output: x2.times(&x) }, Q::from_int(1))],
        )
        .unwrap();
        let r = mc_check(&g).unwrap();
        assert!(!r.is_mc());
        assert_eq!(r.arities(), vec![3]);
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let x = Monomial::var(1, 1).unwrap();
        let g = Cochain::new(1, 2, [(FullHochLabel { inputs: MultiIndexTuple(vec![x.clone()]), output: x }, Q::from_int(1))]).unwrap();
        assert!(mc_check(&g).is_err());
    }
}
