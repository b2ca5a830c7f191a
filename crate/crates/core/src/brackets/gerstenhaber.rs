//! Hochschild cochains in the matrix-element basis and their Gerstenhaber
//! bracket.
//!
//! A cochain is known on monomial arguments of total degree at most its
//! window `D`. Insertions `a ∘_i b` are read off the basis directly: the
//! basis cochain `(M; O)` inserted into slot `i` of `(N; P)` gives
//! `(N_1, …, N_{i−1}, M, N_{i+1}, …; P)` when `O = N_i` and nothing
//! otherwise. Results never contain constant arguments.
//!
//! With `|a| = arity − 1`,
//!
//! ```text
//! a ∘ b   = Σ_i (−1)^{(i−1)(|b|)} a ∘_i b
//! [a, b]  = a ∘ b − (−1)^{|a||b|} b ∘ a
//! d_H a   = −[a, μ]
//! ```
//!
//! where `μ` is the unital product of `O`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::hoch::FullHochLabel;
use crate::polyalg::{add_term, monomials, Monomial, MultiIndexTuple};
use crate::scalar::{sign, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<T> {
    dim: usize,
    max_input_degree: usize,
    terms: BTreeMap<FullHochLabel, T>,
}

impl<T: Scalar> Cochain<T> {
    pub fn zero(dim: usize, max_input_degree: usize) -> Self {
        Self { dim, max_input_degree, terms: BTreeMap::new() }
    }

    /// Builds a cochain, summing repeated labels. Every label must have the
    /// right dimension and input degree at most `max_input_degree`.
    pub fn new<I>(dim: usize, max_input_degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FullHochLabel, T)>,
    {
        let mut c = Self::zero(dim, max_input_degree);
        for (l, v) in terms {
            if l.output.dim() != dim || l.inputs.parts().iter().any(|m| m.dim() != dim) {
                return Err(Error::Dimension(format!("{l} is not in {dim} variables")));
            }
            if l.inputs.is_empty() {
                return Err(Error::InvalidParameter(format!("{l} has no arguments")));
            }
            if l.input_degree() > max_input_degree {
                return Err(Error::Window(format!("{l} exceeds input degree {max_input_degree}")));
            }
            add_term(&mut c.terms, l, v);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_input_degree(&self) -> usize {
        self.max_input_degree
    }

    pub fn terms(&self) -> &BTreeMap<FullHochLabel, T> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<FullHochLabel, T> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest weight `|O| − Σ|M|` among the terms (0 for the zero cochain).
    pub fn max_weight(&self) -> i64 {
        self.terms.keys().map(FullHochLabel::weight).max().unwrap_or(0)
    }

    /// Arities present.
    pub fn arities(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.terms.keys().map(FullHochLabel::arity).collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    /// Drops terms above input degree `d` and shrinks the window.
    pub fn restrict(&self, d: usize) -> Self {
        let terms = self.terms.iter().filter(|(l, _)| l.input_degree() <= d).map(|(l, v)| (l.clone(), v.clone())).collect();
        Self { dim: self.dim, max_input_degree: d.min(self.max_input_degree), terms }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("cochains in {} and {} variables", self.dim, other.dim)));
        }
        Ok(())
    }

    /// Sum on the common window.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let d = self.max_input_degree.min(other.max_input_degree);
        let mut out = self.restrict(d);
        for (l, v) in &other.terms {
            if l.input_degree() <= d {
                add_term(&mut out.terms, l.clone(), v.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let terms = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(l, v)| (l.clone(), v.clone() * s.clone())).collect()
        };
        Self { dim: self.dim, max_input_degree: self.max_input_degree, terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }
}

/// The unital product `x^A ⊗ x^B ↦ x^{A+B}` on arguments of total degree at
/// most `max_input_degree`, constant arguments included.
pub fn mu<T: Scalar>(dim: usize, max_input_degree: usize) -> Cochain<T> {
    let mut terms = BTreeMap::new();
    for total in 0..=max_input_degree {
        for da in 0..=total {
            for a in monomials(dim, da) {
                for b in monomials(dim, total - da) {
                    let out = a.times(&b);
                    terms.insert(FullHochLabel { inputs: MultiIndexTuple(vec![a.clone(), b]), output: out }, T::one());
                }
            }
        }
    }
    Cochain { dim, max_input_degree, terms }
}

/// The identity on nonconstant monomials of degree at most `max_input_degree`.
pub fn identity_cochain<T: Scalar>(dim: usize, max_input_degree: usize) -> Cochain<T> {
    let terms = (1..=max_input_degree)
        .flat_map(|d| monomials(dim, d))
        .map(|m| (FullHochLabel { inputs: MultiIndexTuple(vec![m.clone()]), output: m }, T::one()))
        .collect();
    Cochain { dim, max_input_degree, terms }
}

/// Largest window on which `[a, b]` is determined.
pub fn bracket_window<T: Scalar>(a: &Cochain<T>, b: &Cochain<T>) -> Result<usize> {
    let da = a.max_input_degree as i64 - b.max_weight().max(0);
    let db = b.max_input_degree as i64 - a.max_weight().max(0);
    let d = da.min(db);
    if d < 1 {
        return Err(Error::Window(format!(
            "bracket needs windows of at least {} and {}, got {} and {}",
            1 + b.max_weight().max(0),
            1 + a.max_weight().max(0),
            a.max_input_degree,
            b.max_input_degree
        )));
    }
    Ok(d as usize)
}

/// `a ∘ b` on arguments of degree at most `window`.
pub fn pre_lie<T: Scalar>(a: &Cochain<T>, b: &Cochain<T>, window: usize) -> BTreeMap<FullHochLabel, T> {
    let mut by_slot: HashMap<(usize, &Monomial), Vec<(&FullHochLabel, &T)>> = HashMap::new();
    for (l, v) in &a.terms {
        for (i, m) in l.inputs.parts().iter().enumerate() {
            by_slot.entry((i, m)).or_default().push((l, v));
        }
    }
    let mut out = BTreeMap::new();
    for (lb, vb) in &b.terms {
        if lb.inputs.parts().iter().any(Monomial::is_one) {
            continue;
        }
        let q = lb.arity();
        let max_slot = a.terms.keys().map(FullHochLabel::arity).max().unwrap_or(0);
        for i in 0..max_slot {
            let Some(hits) = by_slot.get(&(i, &lb.output)) else { continue };
            for (la, va) in hits {
                let ins = la.inputs.parts();
                let mut inputs = ins[..i].to_vec();
                inputs.extend_from_slice(lb.inputs.parts());
                inputs.extend_from_slice(&ins[i + 1..]);
                if inputs.iter().any(Monomial::is_one) {
                    continue;
                }
                let label = FullHochLabel { inputs: MultiIndexTuple(inputs), output: la.output.clone() };
                if label.input_degree() > window {
                    continue;
                }
                let s: T = sign(i * (q - 1) % 2 == 1);
                add_term(&mut out, label, s * (*va).clone() * vb.clone());
            }
        }
    }
    out
}

fn homogeneous_parts<T: Scalar>(c: &Cochain<T>) -> BTreeMap<usize, Cochain<T>> {
    let mut out: BTreeMap<usize, Cochain<T>> = BTreeMap::new();
    for (l, v) in &c.terms {
        out.entry(l.arity())
            .or_insert_with(|| Cochain::zero(c.dim, c.max_input_degree))
            .terms
            .insert(l.clone(), v.clone());
    }
    out
}

/// The Gerstenhaber bracket, on the largest window where it is determined.
pub fn gerstenhaber_bracket<T: Scalar>(a: &Cochain<T>, b: &Cochain<T>) -> Result<Cochain<T>> {
    a.same_shape(b)?;
    let window = bracket_window(a, b)?;
    let mut out = Cochain::zero(a.dim, window);
    for (p, ap) in homogeneous_parts(a) {
        for (q, bq) in homogeneous_parts(b) {
            let s: T = sign((p - 1) * (q - 1) % 2 == 1);
            for (l, v) in pre_lie(&ap, &bq, window) {
                add_term(&mut out.terms, l, v);
            }
            for (l, v) in pre_lie(&bq, &ap, window) {
                add_term(&mut out.terms, l, -(s.clone() * v));
            }
        }
    }
    Ok(out)
}

/// `d_H a` computed as `−[a, μ]`, on the window of `a`.
pub fn hochschild_diff_via_bracket<T: Scalar>(a: &Cochain<T>) -> Result<Cochain<T>> {
    let m = mu(a.dim, a.max_input_degree + a.max_weight().max(0) as usize);
    Ok(gerstenhaber_bracket(a, &m)?.scale(&-T::one()))
}
