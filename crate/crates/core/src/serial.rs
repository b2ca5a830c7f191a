//! JSON, Markdown and CSV forms of complexes, degree tables and cochains.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brackets::{parse_polyvec_label, Cochain, PolyCochain, PolyVector};
use crate::chain::{BettiTable, FinChainComplex};
use crate::error::{Error, Result};
use crate::hoch::{FullHochLabel, PolyOpLabel};
use crate::polyalg::{parse_monomial, parse_tuple};
use crate::ratlin::SparseMatrix;
use crate::scalar::{format_ratio, parse_ratio, Scalar};

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    degrees: Vec<i64>,
    basis: BTreeMap<i64, Vec<String>>,
    diff: BTreeMap<i64, Vec<(usize, usize, String)>>,
}

fn to_json_string<S: Serialize>(v: &S) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn from_json<'a, S: Deserialize<'a>>(s: &'a str) -> Result<S> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// `{"degrees": [...], "basis": {deg: [labels]}, "diff": {deg: [[r, c, "n/d"]]}}`,
/// where the matrix in degree `d` maps degree `d` to `d + 1` and is stored
/// with rows indexing the target.
pub fn complex_to_json<T: Scalar>(c: &FinChainComplex<T>) -> String {
    let degrees = c.degrees();
    let basis = degrees.iter().map(|&d| (d, c.basis(d).to_vec())).collect();
    let diff = degrees
        .iter()
        .filter_map(|&d| c.diff(d).map(|m| (d, m.iter().map(|(r, col, v)| (r, col, format_ratio(v))).collect())))
        .collect();
    to_json_string(&ComplexJson { degrees, basis, diff })
}

pub fn complex_from_json<T: Scalar>(s: &str) -> Result<FinChainComplex<T>> {
    let j: ComplexJson = from_json(s)?;
    let Some(&lo) = j.degrees.first() else { return Ok(FinChainComplex::empty()) };
    if j.degrees.iter().enumerate().any(|(i, &d)| d != lo + i as i64) {
        return Err(Error::Parse("degrees must be consecutive".into()));
    }
    let basis: Vec<Vec<String>> = j.degrees.iter().map(|d| j.basis.get(d).cloned().unwrap_or_default()).collect();
    let mut diff = Vec::new();
    for (i, d) in j.degrees.iter().enumerate().take(j.degrees.len().saturating_sub(1)) {
        let entries = j.diff.get(d).cloned().unwrap_or_default();
        let triplets = entries
            .into_iter()
            .map(|(r, c, v)| Ok((r, c, parse_ratio::<T>(&v)?)))
            .collect::<Result<Vec<_>>>()?;
        diff.push(SparseMatrix::from_triplets(basis[i + 1].len(), basis[i].len(), triplets)?);
    }
    FinChainComplex::new(lo, basis, diff)
}

/// Dimensions and Betti numbers per degree under a title.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeTable {
    pub title: String,
    pub rows: Vec<DegreeRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeRow {
    pub degree: i64,
    pub dim: usize,
    pub betti: usize,
}

impl DegreeTable {
    pub fn new<T: Scalar>(title: impl Into<String>, c: &FinChainComplex<T>, betti: &BettiTable) -> Self {
        let rows = c.degrees().into_iter().map(|d| DegreeRow { degree: d, dim: c.dim(d), betti: betti.get(d) }).collect();
        Self { title: title.into(), rows }
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## {}\n\n| degree | dim | betti |\n|---:|---:|---:|\n", self.title);
        for r in &self.rows {
            let _ = writeln!(s, "| {} | {} | {} |", r.degree, r.dim, r.betti);
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("title,degree,dim,betti\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", self.title, r.degree, r.dim, r.betti);
        }
        s
    }
}

/// Parses `F(in=[x1, x1^2]; out=x1^3)`.
pub fn parse_full_label(dim: usize, s: &str) -> Result<FullHochLabel> {
    let bad = || Error::Parse(format!("invalid cochain label `{s}`"));
    let body = s.trim().strip_prefix("F(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (i, o) = body.split_once(';').ok_or_else(bad)?;
    let i = i.trim().strip_prefix("in=").ok_or_else(bad)?;
    let o = o.trim().strip_prefix("out=").ok_or_else(bad)?;
    Ok(FullHochLabel { inputs: parse_tuple(dim, i)?, output: parse_monomial(dim, o)? })
}

/// Parses `H(J=x1; I=[x1*x2, x2])`.
pub fn parse_poly_label(dim: usize, s: &str) -> Result<PolyOpLabel> {
    let bad = || Error::Parse(format!("invalid operator label `{s}`"));
    let body = s.trim().strip_prefix("H(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (j, i) = body.split_once(';').ok_or_else(bad)?;
    let j = j.trim().strip_prefix("J=").ok_or_else(bad)?;
    let i = i.trim().strip_prefix("I=").ok_or_else(bad)?;
    Ok(PolyOpLabel { coeff: parse_monomial(dim, j)?, bunches: parse_tuple(dim, i)? })
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    label: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct CochainJson {
    window: BTreeMap<String, Value>,
    terms: Vec<TermJson>,
}

/// Any of the three element kinds the bracket layer works with.
#[derive(Clone, Debug, PartialEq)]
pub enum Element<T> {
    Full(Cochain<T>),
    Poly { dim: usize, cochain: PolyCochain<T> },
    Polyvector(PolyVector<T>),
}

fn terms_json<L: ToString, T: Scalar>(terms: impl IntoIterator<Item = (L, T)>) -> Vec<TermJson> {
    terms.into_iter().map(|(l, v)| TermJson { label: l.to_string(), coeff: format_ratio(&v) }).collect()
}

pub fn element_to_json<T: Scalar>(e: &Element<T>) -> String {
    let (window, terms) = match e {
        Element::Full(c) => (
            BTreeMap::from([("dim".to_string(), Value::from(c.dim())), ("max_input_degree".to_string(), Value::from(c.max_input_degree()))]),
            terms_json(c.terms().iter().map(|(l, v)| (l, v.clone()))),
        ),
        Element::Poly { dim, cochain } => {
            (BTreeMap::from([("dim".to_string(), Value::from(*dim))]), terms_json(cochain.iter().map(|(l, v)| (l, v.clone()))))
        }
        Element::Polyvector(p) => {
            (BTreeMap::from([("dim".to_string(), Value::from(p.dim()))]), terms_json(p.terms().iter().map(|(l, v)| (l, v.clone()))))
        }
    };
    to_json_string(&CochainJson { window, terms })
}

/// Reads an element; its kind is taken from the label prefix (`F(`, `H(` or
/// `V(`). An element without terms is read as a full cochain.
pub fn element_from_json<T: Scalar>(s: &str) -> Result<Element<T>> {
    let j: CochainJson = from_json(s)?;
    let get = |k: &str| -> Result<usize> {
        j.window
            .get(k)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| Error::Parse(format!("window needs a nonnegative integer `{k}`")))
    };
    let dim = get("dim")?;
    let kind = j.terms.first().map(|t| t.label.trim().chars().next().unwrap_or(' ')).unwrap_or('F');
    if j.terms.iter().any(|t| !t.label.trim().starts_with(kind)) {
        return Err(Error::Parse("terms mix label kinds".into()));
    }
    let coeffs = j.terms.iter().map(|t| parse_ratio::<T>(&t.coeff)).collect::<Result<Vec<_>>>()?;
    match kind {
        'F' => {
            let labels = j.terms.iter().map(|t| parse_full_label(dim, &t.label)).collect::<Result<Vec<_>>>()?;
            Ok(Element::Full(Cochain::new(dim, get("max_input_degree")?, labels.into_iter().zip(coeffs))?))
        }
        'H' => {
            let mut cochain = PolyCochain::new();
            for (t, v) in j.terms.iter().zip(coeffs) {
                let l = parse_poly_label(dim, &t.label)?;
                let slot = cochain.entry(l).or_insert_with(T::zero);
                *slot = slot.clone() + v;
            }
            cochain.retain(|_, v| !v.is_zero());
            Ok(Element::Poly { dim, cochain })
        }
        'V' => {
            let labels = j.terms.iter().map(|t| parse_polyvec_label(dim, &t.label)).collect::<Result<Vec<_>>>()?;
            Ok(Element::Polyvector(PolyVector::new(dim, labels.into_iter().zip(coeffs))?))
        }
        _ => Err(Error::Parse(format!("unknown label kind `{kind}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::build_perm_complex;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn complex_round_trip() {
        let c = build_perm_complex::<Q>(3).unwrap();
        let s = complex_to_json(&c);
        assert_eq!(complex_from_json::<Q>(&s).unwrap(), c);
        assert_eq!(complex_to_json(&complex_from_json::<Q>(&s).unwrap()), s);
    }

    #[test]
    fn labels_parse_both_monomial_forms() {
        let l = parse_poly_label(2, "H(J=x1; I=[x1x2, x2])").unwrap();
        assert_eq!(l.to_string(), "H(J=x1; I=[x1*x2, x2])");
        let f = parse_full_label(1, "F(in=[x1, x1^2]; out=x1^3)").unwrap();
        assert_eq!(f.to_string(), "F(in=[x1, x1^2]; out=x1^3)");
    }

    #[test]
    fn element_round_trip() {
        let s = r#"{"window": {"dim": 1, "max_input_degree": 3}, "terms": [{"label": "F(in=[x1, x1]; out=x1^2)", "coeff": "-3/2"}]}"#;
        let e = element_from_json::<Q>(s).unwrap();
        assert_eq!(element_from_json::<Q>(&element_to_json(&e)).unwrap(), e);
        let v = r#"{"window": {"dim": 2}, "terms": [{"label": "V({1,2}; x1)", "coeff": "1"}]}"#;
        assert!(matches!(element_from_json::<Q>(v).unwrap(), Element::Polyvector(_)));
    }

    #[test]
    fn tables_render() {
        let c = build_perm_complex::<Q>(2).unwrap();
        let t = DegreeTable::new("P_1", &c, &c.betti().unwrap());
        assert!(t.to_markdown().contains("| 0 | 2 | 1 |"));
        assert!(t.to_csv().starts_with("title,degree,dim,betti\n"));
    }
}
