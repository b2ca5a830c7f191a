//! The Koszul complex, the bar construction of `⊙V` and the cobar
//! construction of `∧V`, one weight at a time.
//!
//! Exterior basis words are squarefree [`Monomial`]s read as ascending index
//! lists; any reordering sign is applied when a term is normalized.

use std::fmt;

use crate::cells::inversions;
use crate::chain::{FinChainComplex, LabeledComplex, TargetPolicy};
use crate::error::{Error, Result};
use crate::polyalg::{enumerate_tuples, monomials, reduced_splits, squarefree_monomials, Monomial, MultiIndexTuple};
use crate::scalar::{sign, Scalar};

/// A basis element `x^sym ⊗ e_ext` of `⊙^k V ⊗ ∧^{m−k} V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KoszulLabel {
    pub sym: Monomial,
    pub ext: Monomial,
}

impl fmt::Display for KoszulLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({}; ", self.sym)?;
        fmt_ext(f, &self.ext)?;
        write!(f, ")")
    }
}

fn fmt_ext(f: &mut fmt::Formatter<'_>, e: &Monomial) -> fmt::Result {
    write!(f, "{{")?;
    for (i, v) in e.vars().iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, "}}")
}

/// A word in the bar construction (symmetric letters) or the cobar
/// construction (exterior letters).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordLabel {
    pub exterior: bool,
    pub letters: MultiIndexTuple,
}

impl WordLabel {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.letters.weight()
    }
}

impl fmt::Display for WordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.exterior {
            return write!(f, "B{}", self.letters);
        }
        write!(f, "C[")?;
        for (i, l) in self.letters.parts().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            fmt_ext(f, l)?;
        }
        write!(f, "]")
    }
}

fn check(dim: usize, what: &str, value: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dim must be at least 1".into()));
    }
    if value == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be at least 1")));
    }
    Ok(())
}

/// The Koszul complex `∧^m V → V⊗∧^{m−1}V → … → ⊙^{m−1}V⊗V` with term
/// `k` in degree `k − (m−1)`.
pub fn koszul_complex<T: Scalar>(dim: usize, m: usize) -> Result<LabeledComplex<KoszulLabel, T>> {
    check(dim, "m", m)?;
    let keys: Vec<Vec<KoszulLabel>> = (0..m)
        .map(|k| {
            let exts = squarefree_monomials(dim, m - k);
            monomials(dim, k)
                .into_iter()
                .flat_map(|sym| exts.iter().map(move |ext| KoszulLabel { sym: sym.clone(), ext: ext.clone() }))
                .collect()
        })
        .collect();
    LabeledComplex::assemble(1 - m as i64, keys, TargetPolicy::Strict, |l: &KoszulLabel, _| {
        l.ext
            .vars()
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                let mut rest = l.ext.vars().to_vec();
                rest.remove(p);
                let ext = Monomial::new(dim, rest).expect("subset of a valid word");
                let sym = l.sym.times(&Monomial::var(dim, v).expect("valid variable"));
                (KoszulLabel { sym, ext }, sign(p % 2 == 1))
            })
            .collect()
    })
}

/// Words in nonempty symmetric monomials of total weight `w`, length `len`.
fn sym_words(dim: usize, w: usize, len: usize) -> Vec<WordLabel> {
    enumerate_tuples(dim, w, len, false)
        .into_iter()
        .map(|letters| WordLabel { exterior: false, letters })
        .collect()
}

fn ext_words(dim: usize, w: usize, len: usize) -> Vec<WordLabel> {
    enumerate_tuples(dim, w, len, false)
        .into_iter()
        .filter(|t| t.parts().iter().all(Monomial::is_squarefree))
        .map(|letters| WordLabel { exterior: true, letters })
        .collect()
}

fn merge_adjacent<T: Scalar>(w: &WordLabel) -> Vec<(WordLabel, T)> {
    let p = w.letters.parts();
    (0..p.len().saturating_sub(1))
        .map(|i| {
            let mut letters = p[..i].to_vec();
            letters.push(p[i].times(&p[i + 1]));
            letters.extend_from_slice(&p[i + 2..]);
            // Position i+1 carries (−1)^{(i+1)+1}.
            (WordLabel { exterior: false, letters: MultiIndexTuple(letters) }, sign(i % 2 == 1))
        })
        .collect()
}

/// The bar construction `B(⊙V)` in weight `w`: words of length `L` sit in
/// degree `−L` and the differential multiplies adjacent letters.
pub fn bar_complex<T: Scalar>(dim: usize, w: usize) -> Result<LabeledComplex<WordLabel, T>> {
    check(dim, "weight", w)?;
    let keys = (1..=w).rev().map(|len| sym_words(dim, w, len)).collect();
    LabeledComplex::assemble(-(w as i64), keys, TargetPolicy::Strict, |l: &WordLabel, _| merge_adjacent(l))
}

/// The weight-`w` symmetric words with the letter-splitting differential of
/// the cofree coalgebra, words of length `L` in degree `L`. Its matrices are
/// the transposes of the bar differential.
pub fn bar_dual_complex<T: Scalar>(dim: usize, w: usize) -> Result<LabeledComplex<WordLabel, T>> {
    check(dim, "weight", w)?;
    let keys = (1..=w).map(|len| sym_words(dim, w, len)).collect();
    LabeledComplex::assemble(1, keys, TargetPolicy::Strict, |l: &WordLabel, _| {
        let p = l.letters.parts();
        let mut out = Vec::new();
        for (i, letter) in p.iter().enumerate() {
            for (a, b, _) in reduced_splits(letter) {
                let mut letters = p[..i].to_vec();
                letters.push(a);
                letters.push(b);
                letters.extend_from_slice(&p[i + 1..]);
                out.push((WordLabel { exterior: false, letters: MultiIndexTuple(letters) }, sign(i % 2 == 1)));
            }
        }
        out
    })
}

/// Splits an exterior letter into two nonempty ascending halves, with the
/// sign of the shuffle that sorts the concatenation.
fn exterior_splits(letter: &Monomial) -> Vec<(Monomial, Monomial, bool)> {
    let v = letter.vars();
    let n = v.len();
    (1u64..(1 << n) - 1)
        .map(|mask| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (t, &x) in v.iter().enumerate() {
                if mask >> t & 1 == 1 {
                    a.push(x);
                } else {
                    b.push(x);
                }
            }
            let mut cat = a.clone();
            cat.extend(&b);
            let odd = inversions(&cat) % 2 == 1;
            let dim = letter.dim();
            (Monomial::new(dim, a).expect("subset"), Monomial::new(dim, b).expect("subset"), odd)
        })
        .collect()
}

/// The cobar construction `Ω(∧V)` in weight `w`: words of length `L` sit in
/// degree `L − w` and the differential splits one letter.
pub fn cobar_complex<T: Scalar>(dim: usize, w: usize) -> Result<LabeledComplex<WordLabel, T>> {
    check(dim, "weight", w)?;
    let keys = (1..=w).map(|len| ext_words(dim, w, len)).collect();
    LabeledComplex::assemble(1 - w as i64, keys, TargetPolicy::Strict, |l: &WordLabel, _| {
        let p = l.letters.parts();
        let mut out = Vec::new();
        for (i, letter) in p.iter().enumerate() {
            for (a, b, odd) in exterior_splits(letter) {
                let mut letters = p[..i].to_vec();
                letters.push(a);
                letters.push(b);
                letters.extend_from_slice(&p[i + 1..]);
                out.push((WordLabel { exterior: true, letters: MultiIndexTuple(letters) }, sign((i % 2 == 1) ^ odd)));
            }
        }
        out
    })
}

pub fn build_koszul_complex<T: Scalar>(dim: usize, m: usize) -> Result<FinChainComplex<T>> {
    Ok(koszul_complex(dim, m)?.into_complex())
}

pub fn build_bar_complex<T: Scalar>(dim: usize, w: usize) -> Result<FinChainComplex<T>> {
    Ok(bar_complex(dim, w)?.into_complex())
}

pub fn build_cobar_complex<T: Scalar>(dim: usize, w: usize) -> Result<FinChainComplex<T>> {
    Ok(cobar_complex(dim, w)?.into_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn koszul_small_cases() {
        let k = build_koszul_complex::<Q>(2, 2).unwrap();
        assert_eq!((k.dim(-1), k.dim(0)), (1, 4));
        let b = k.betti().unwrap();
        assert_eq!((b.get(-1), b.get(0)), (0, 3));
        let k = build_koszul_complex::<Q>(1, 1).unwrap();
        assert_eq!(k.betti().unwrap().get(0), 1);
        let k = build_koszul_complex::<Q>(1, 2).unwrap();
        assert_eq!((k.dim(-1), k.dim(0)), (0, 1));
        assert_eq!(k.betti().unwrap().get(0), 1);
    }

    #[test]
    fn bar_small_cases() {
        let b = build_bar_complex::<Q>(1, 2).unwrap();
        assert_eq!(b.betti().unwrap().total(), 0);
        assert_eq!(build_bar_complex::<Q>(1, 1).unwrap().betti().unwrap().total(), 1);
        let b = build_bar_complex::<Q>(2, 2).unwrap();
        assert_eq!(b.size(), 7);
        assert_eq!(b.betti().unwrap().total(), 1);
    }

    #[test]
    fn cobar_small_cases() {
        assert_eq!(build_cobar_complex::<Q>(2, 2).unwrap().betti().unwrap().total(), 3);
        let c = build_cobar_complex::<Q>(1, 4).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.betti().unwrap().total(), 1);
        assert!(build_cobar_complex::<Q>(3, 3).unwrap().validate().passed());
    }

    #[test]
    fn labels() {
        let w = WordLabel {
            exterior: true,
            letters: MultiIndexTuple(vec![Monomial::new(3, vec![1, 3]).unwrap(), Monomial::new(3, vec![2]).unwrap()]),
        };
        assert_eq!(w.to_string(), "C[{1,3}, {2}]");
        let k = KoszulLabel { sym: Monomial::new(2, vec![1, 1]).unwrap(), ext: Monomial::new(2, vec![2]).unwrap() };
        assert_eq!(k.to_string(), "K(x1^2; {2})");
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(build_bar_complex::<Q>(2, 0).is_err());
        assert!(build_koszul_complex::<Q>(0, 1).is_err());
    }
}
