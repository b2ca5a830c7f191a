//! Polydifferential cochains, their Gerstenhaber bracket, and the projection
//! of cocycles onto polyvector fields.

use std::collections::BTreeMap;

use super::gerstenhaber::{gerstenhaber_bracket, Cochain};
use super::schouten::{PolyVecLabel, PolyVector};
use crate::cells::inversions;
use crate::error::{Error, Result};
use crate::hoch::{apply_polydiff_differential, include_vector, polydiff_labels, PolyOpLabel};
use crate::polyalg::{add_term, Monomial, MultiIndexTuple};
use crate::ratlin::{solve, SparseMatrix};
use crate::scalar::{sign, Scalar};

pub type PolyCochain<T> = BTreeMap<PolyOpLabel, T>;

/// Global sign in `hkr_project([z₁, z₂]) = ±[hkr_project(z₁), hkr_project(z₂)]`.
pub const HKR_BRACKET_SIGN: i64 = 1;

fn weight(l: &PolyOpLabel) -> i64 {
    let (m, n) = l.bigrade();
    n as i64 - m as i64
}

/// Splits by `(arity, n − m)`, the two gradings the bracket respects.
fn components<T: Scalar>(c: &PolyCochain<T>) -> BTreeMap<(usize, i64), PolyCochain<T>> {
    let mut out: BTreeMap<(usize, i64), PolyCochain<T>> = BTreeMap::new();
    for (l, v) in c {
        out.entry((l.arity(), weight(l))).or_default().insert(l.clone(), v.clone());
    }
    out
}

fn check_dim<T>(dim: usize, c: &PolyCochain<T>) -> Result<()> {
    for l in c.keys() {
        if l.coeff.dim() != dim || l.bunches.parts().iter().any(|b| b.dim() != dim) {
            return Err(Error::Dimension(format!("{l} is not in {dim} variables")));
        }
    }
    Ok(())
}

/// Gerstenhaber bracket of polydifferential cochains, computed on their
/// operators and read back in the polydifferential basis.
pub fn polydiff_bracket<T: Scalar>(dim: usize, a: &PolyCochain<T>, b: &PolyCochain<T>) -> Result<PolyCochain<T>> {
    check_dim(dim, a)?;
    check_dim(dim, b)?;
    let mut out = PolyCochain::new();
    for (&(k1, w1), ca) in &components(a) {
        for (&(k2, w2), cb) in &components(b) {
            let m1 = ca.keys().map(|l| l.bigrade().0).max().unwrap_or(0);
            let m2 = cb.keys().map(|l| l.bigrade().0).max().unwrap_or(0);
            let mtop = m1 + m2;
            let window = mtop + w1.max(0) as usize + w2.max(0) as usize;
            let fa = Cochain::new(dim, window, include_vector(ca, window)?)?;
            let fb = Cochain::new(dim, window, include_vector(cb, window)?)?;
            let r = gerstenhaber_bracket(&fa, &fb)?;
            if r.is_zero() {
                continue;
            }
            let k = k1 + k2 - 1;
            let w = w1 + w2;
            let candidates: Vec<PolyOpLabel> = (k..=mtop)
                .filter(|&m| m as i64 + w >= 0)
                .flat_map(|m| polydiff_labels(dim, m, (m as i64 + w) as usize, k))
                .collect();
            let win = r.max_input_degree();
            let mut rows: BTreeMap<_, usize> = BTreeMap::new();
            let mut triplets = Vec::new();
            for (c, l) in candidates.iter().enumerate() {
                for (t, v) in include_vector(&BTreeMap::from([(l.clone(), T::one())]), win)? {
                    let n = rows.len();
                    let row = *rows.entry(t).or_insert(n);
                    triplets.push((row, c, v));
                }
            }
            let mut rhs = vec![T::zero(); rows.len()];
            for (t, v) in r.terms() {
                let row = rows.get(t).ok_or_else(|| {
                    Error::InvalidParameter(format!("bracket term {t} is not polydifferential"))
                })?;
                rhs[*row] = v.clone();
            }
            let mat = SparseMatrix::from_triplets(rows.len(), candidates.len(), triplets)?;
            let x = solve(&mat, &rhs)?
                .ok_or_else(|| Error::InvalidParameter("bracket is not polydifferential in the window".into()))?;
            for (l, v) in candidates.into_iter().zip(x) {
                add_term(&mut out, l, v);
            }
        }
    }
    Ok(out)
}

/// Polyvector attached to the top-arity part of a cocycle at bigrade
/// `(m, n)`: each `x^J ∂_{i_1}⊗…⊗∂_{i_m}` goes to `sgn · x^J ξ_{sorted i}`.
/// This is a left inverse of the antisymmetrization map with `1/m!`.
pub fn hkr_project<T: Scalar>(dim: usize, z: &PolyCochain<T>, bigrade: (usize, usize)) -> Result<PolyVector<T>> {
    check_dim(dim, z)?;
    let dz = apply_polydiff_differential(z);
    if !dz.is_empty() {
        let shown: Vec<String> = dz.iter().take(4).map(|(l, v)| format!("{} {l}", crate::scalar::format_ratio(v))).collect();
        return Err(Error::NotCocycle(format!("d(z) has {} terms, including {}", dz.len(), shown.join(", "))));
    }
    let (m, n) = bigrade;
    let mut terms = BTreeMap::new();
    for (l, v) in z {
        if l.bigrade() != bigrade || l.arity() != m {
            continue;
        }
        let idx: Vec<usize> = l.bunches.parts().iter().map(|b| b.vars()[0]).collect();
        let ext = Monomial::new(dim, idx.clone())?;
        if !ext.is_squarefree() {
            continue;
        }
        add_term(&mut terms, PolyVecLabel { ext, sym: l.coeff.clone() }, sign::<T>(inversions(&idx) % 2 == 1) * v.clone());
    }
    debug_assert!(terms.keys().all(|l: &PolyVecLabel| l.sym.weight() == n));
    PolyVector::new(dim, terms)
}

/// The antisymmetrized operator `(1/m!) Σ_σ sgn σ · x^J ∂_{i_σ1}⊗…⊗∂_{i_σm}`.
pub fn hkr_embed<T: Scalar>(p: &PolyVector<T>) -> PolyCochain<T> {
    let mut out = PolyCochain::new();
    for (l, v) in p.terms() {
        let idx = l.ext.vars();
        let m = idx.len();
        let fact: u64 = (1..=m as u64).product();
        for perm in permutations(m) {
            let bunches = perm.iter().map(|&k| Monomial::var(p.dim(), idx[k]).expect("valid index")).collect();
            let s: T = sign(inversions(&perm) % 2 == 1);
            add_term(
                &mut out,
                PolyOpLabel { coeff: l.sym.clone(), bunches: MultiIndexTuple(bunches) },
                s * v.clone() / T::from_count(fact),
            );
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for len in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=len).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, len);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::schouten_bracket;
    use crate::polyalg::parse_tuple;
    use num_rational::BigRational;

    type Q = BigRational;

    fn op(dim: usize, coeff: &str, bunches: &str) -> PolyOpLabel {
        PolyOpLabel { coeff: crate::polyalg::parse_monomial(dim, coeff).unwrap(), bunches: parse_tuple(dim, bunches).unwrap() }
    }

    #[test]
    fn projection_of_poisson_bivector() {
        let z = BTreeMap::from([(op(2, "1", "[x1, x2]"), Q::from_int(1)), (op(2, "1", "[x2, x1]"), Q::from_int(-1))]);
        let p = hkr_project(2, &z, (2, 0)).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms().values().next().unwrap(), &Q::from_int(2));
        assert_eq!(hkr_project(2, &hkr_embed(&p), (2, 0)).unwrap(), p);
    }

    #[test]
    fn exact_cocycles_project_to_zero() {
        let c = BTreeMap::from([(op(2, "x1", "[x1*x2]"), Q::from_int(3))]);
        let z = apply_polydiff_differential(&c);
        assert!(!z.is_empty());
        assert!(hkr_project(2, &z, (2, 1)).unwrap().is_zero());
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let c = BTreeMap::from([(op(1, "1", "[x1^2]"), Q::from_int(1))]);
        assert!(matches!(hkr_project(1, &c, (2, 0)), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn bracket_of_vector_fields() {
        // [x1 ∂1, ∂1] as operators
        let a = BTreeMap::from([(op(1, "x1", "[x1]"), Q::from_int(1))]);
        let b = BTreeMap::from([(op(1, "1", "[x1]"), Q::from_int(1))]);
        let r = polydiff_bracket(1, &a, &b).unwrap();
        let pa = hkr_project(1, &a, (1, 1)).unwrap();
        let pb = hkr_project(1, &b, (1, 0)).unwrap();
        let s = schouten_bracket(&pa, &pb).unwrap();
        let pr = hkr_project(1, &r, (1, 0)).unwrap();
        assert!(!s.is_zero());
        assert_eq!(pr, s);
    }
}

