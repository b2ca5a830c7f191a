//! Polyvector fields `∧^{≥1}V ⊗ ⊙V*` and the Schouten bracket.
//!
//! A basis polyvector `f·ξ_{i_1}∧…∧ξ_{i_p}` has `ξ_i = ∂/∂x^i` with
//! ascending indices and carries bracket degree `p − 1`. Two independent
//! implementations are provided. [`schouten_bracket`] expands both arguments
//! into generators and applies the biderivation and antisymmetry rules,
//! starting from `[ξ_i, f] = ∂_i f`. [`schouten_bracket_odd`] uses the
//! formula in odd coordinates
//!
//! ```text
//! [P, Q] = Σ_i (P ←∂_{ξ_i}) ∧ ∂_{x_i}Q − (−1)^{(p−1)(q−1)} (Q ←∂_{ξ_i}) ∧ ∂_{x_i}P.
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::cells::inversions;
use crate::error::{Error, Result};
use crate::polyalg::{add_term, derivative, parse_monomial, Monomial};
use crate::scalar::{sign, Scalar};

/// `x^sym · ξ_ext`, with `ext` a squarefree monomial read as an index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyVecLabel {
    pub ext: Monomial,
    pub sym: Monomial,
}

impl PolyVecLabel {
    pub fn degree(&self) -> usize {
        self.ext.weight()
    }
}

impl fmt::Display for PolyVecLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({{")?;
        for (i, v) in self.ext.vars().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}; {})", self.sym)
    }
}

/// Parses `V({1,2}; x1^2)`.
pub fn parse_polyvec_label(dim: usize, s: &str) -> Result<PolyVecLabel> {
    let bad = || Error::Parse(format!("invalid polyvector label `{s}`"));
    let body = s.trim().strip_prefix("V(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (ext, sym) = body.split_once(';').ok_or_else(bad)?;
    let ext = ext.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
    let vars = if ext.trim().is_empty() {
        Vec::new()
    } else {
        ext.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
    };
    let ext = Monomial::new(dim, vars)?;
    if !ext.is_squarefree() {
        return Err(bad());
    }
    Ok(PolyVecLabel { ext, sym: parse_monomial(dim, sym)? })
}

type Raw<T> = BTreeMap<PolyVecLabel, T>;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector<T> {
    dim: usize,
    terms: Raw<T>,
}

impl<T: Scalar> PolyVector<T> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    /// Every term must have a nonempty exterior part.
    pub fn new<I: IntoIterator<Item = (PolyVecLabel, T)>>(dim: usize, terms: I) -> Result<Self> {
        let mut out = Self::zero(dim);
        for (l, v) in terms {
            if l.ext.dim() != dim || l.sym.dim() != dim {
                return Err(Error::Dimension(format!("{l} is not in {dim} variables")));
            }
            if l.ext.is_one() || !l.ext.is_squarefree() {
                return Err(Error::InvalidParameter(format!("{l} is not a polyvector of positive degree")));
            }
            add_term(&mut out.terms, l, v);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<PolyVecLabel, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("polyvectors in different dimensions".into()));
        }
        let mut out = self.clone();
        for (l, v) in &other.terms {
            add_term(&mut out.terms, l.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.dim);
        for (l, v) in &self.terms {
            add_term(&mut out.terms, l.clone(), v.clone() * s.clone());
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("polyvectors in different dimensions".into()));
        }
        Ok(Self { dim: self.dim, terms: wedge(&self.terms, &other.terms) })
    }
}

fn wedge_labels(a: &PolyVecLabel, b: &PolyVecLabel) -> Option<(PolyVecLabel, bool)> {
    let mut cat = a.ext.vars().to_vec();
    cat.extend_from_slice(b.ext.vars());
    let odd = inversions(&cat) % 2 == 1;
    let ext = a.ext.times(&b.ext);
    if !ext.is_squarefree() {
        return None;
    }
    Some((PolyVecLabel { ext, sym: a.sym.times(&b.sym) }, odd))
}

fn wedge<T: Scalar>(a: &Raw<T>, b: &Raw<T>) -> Raw<T> {
    let mut out = Raw::new();
    for (la, va) in a {
        for (lb, vb) in b {
            if let Some((l, odd)) = wedge_labels(la, lb) {
                add_term(&mut out, l, sign::<T>(odd) * va.clone() * vb.clone());
            }
        }
    }
    out
}

fn add_into<T: Scalar>(acc: &mut Raw<T>, x: Raw<T>, s: &T) {
    for (l, v) in x {
        add_term(acc, l, v * s.clone());
    }
}

/// A generator of the polyvector algebra: a function or a single `ξ_i`.
#[derive(Clone, Debug)]
enum Gen {
    Fun(Monomial),
    Xi(usize),
}

impl Gen {
    fn degree(&self) -> usize {
        match self {
            Gen::Fun(_) => 0,
            Gen::Xi(_) => 1,
        }
    }

    fn value<T: Scalar>(&self, dim: usize) -> Raw<T> {
        let label = match self {
            Gen::Fun(f) => PolyVecLabel { ext: Monomial::one(dim), sym: f.clone() },
            Gen::Xi(i) => PolyVecLabel { ext: Monomial::var(dim, *i).expect("valid index"), sym: Monomial::one(dim) },
        };
        BTreeMap::from([(label, T::one())])
    }
}

fn factors(l: &PolyVecLabel) -> Vec<Gen> {
    let mut out = vec![Gen::Fun(l.sym.clone())];
    out.extend(l.ext.vars().iter().map(|&i| Gen::Xi(i)));
    out
}

fn fun<T: Scalar>(dim: usize, m: Monomial, c: T) -> Raw<T> {
    BTreeMap::from([(PolyVecLabel { ext: Monomial::one(dim), sym: m }, c)])
}

/// `[A, B]` for generators.
fn gen_bracket<T: Scalar>(dim: usize, a: &Gen, b: &Gen) -> Raw<T> {
    let di = |i: usize, f: &Monomial| -> Raw<T> {
        match derivative(f, &Monomial::var(dim, i).expect("valid index")) {
            Some((c, r)) => fun(dim, r, T::from_count(c)),
            None => Raw::new(),
        }
    };
    match (a, b) {
        (Gen::Xi(i), Gen::Fun(f)) => di(*i, f),
        (Gen::Fun(f), Gen::Xi(i)) => {
            let mut out = Raw::new();
            add_into(&mut out, di(*i, f), &-T::one());
            out
        }
        _ => Raw::new(),
    }
}

/// `[A, B_1∧…∧B_s]` by the derivation rule in the second slot.
fn bracket_gen_with<T: Scalar>(dim: usize, a: &Gen, bs: &[Gen]) -> Raw<T> {
    let da = a.degree() as i64 - 1;
    let mut out = Raw::new();
    let mut before = 0i64;
    for u in 0..bs.len() {
        let inner = gen_bracket::<T>(dim, a, &bs[u]);
        if !inner.is_empty() {
            let mut term = fun(dim, Monomial::one(dim), T::one());
            for b in &bs[..u] {
                term = wedge(&term, &b.value(dim));
            }
            term = wedge(&term, &inner);
            for b in &bs[u + 1..] {
                term = wedge(&term, &b.value(dim));
            }
            add_into(&mut out, term, &sign((da * before).rem_euclid(2) == 1));
        }
        before += bs[u].degree() as i64;
    }
    out
}

/// Bracket of two basis polyvectors.
fn bracket_terms<T: Scalar>(dim: usize, p: &PolyVecLabel, q: &PolyVecLabel) -> Raw<T> {
    let pf = factors(p);
    let qf = factors(q);
    let dp = p.degree() as i64 - 1;
    let mut out = Raw::new();
    let mut before = 0i64;
    for t in 0..qf.len() {
        // [P, A] = −(−1)^{|P||A|} [A, P]
        let da = qf[t].degree() as i64 - 1;
        let mut inner = Raw::new();
        add_into(&mut inner, bracket_gen_with::<T>(dim, &qf[t], &pf), &-sign::<T>((dp * da).rem_euclid(2) == 1));
        if !inner.is_empty() {
            let mut term = fun(dim, Monomial::one(dim), T::one());
            for a in &qf[..t] {
                term = wedge(&term, &a.value(dim));
            }
            term = wedge(&term, &inner);
            for a in &qf[t + 1..] {
                term = wedge(&term, &a.value(dim));
            }
            add_into(&mut out, term, &sign((dp * before).rem_euclid(2) == 1));
        }
        before += qf[t].degree() as i64;
    }
    out
}

fn check_pair<T: Scalar>(p: &PolyVector<T>, q: &PolyVector<T>) -> Result<()> {
    if p.dim != q.dim {
        return Err(Error::Dimension(format!("polyvectors in {} and {} variables", p.dim, q.dim)));
    }
    Ok(())
}

/// The Schouten bracket from the biderivation rules.
pub fn schouten_bracket<T: Scalar>(p: &PolyVector<T>, q: &PolyVector<T>) -> Result<PolyVector<T>> {
    check_pair(p, q)?;
    let mut out = Raw::new();
    for (lp, vp) in &p.terms {
        for (lq, vq) in &q.terms {
            add_into(&mut out, bracket_terms::<T>(p.dim, lp, lq), &(vp.clone() * vq.clone()));
        }
    }
    Ok(PolyVector { dim: p.dim, terms: out })
}

/// Right derivative `←∂/∂ξ_i` of a basis polyvector.
fn right_xi_derivative(l: &PolyVecLabel, i: usize) -> Option<(PolyVecLabel, bool)> {
    let v = l.ext.vars();
    let pos = v.iter().position(|&x| x == i)?;
    let mut rest = v.to_vec();
    rest.remove(pos);
    let ext = Monomial::new(l.ext.dim(), rest).expect("subset");
    Some((PolyVecLabel { ext, sym: l.sym.clone() }, (v.len() - 1 - pos) % 2 == 1))
}

fn x_derivative<T: Scalar>(l: &PolyVecLabel, i: usize) -> Option<(PolyVecLabel, T)> {
    let (c, r) = derivative(&l.sym, &Monomial::var(l.sym.dim(), i).ok()?)?;
    Some((PolyVecLabel { ext: l.ext.clone(), sym: r }, T::from_count(c)))
}

/// The Schouten bracket from the odd-coordinate formula.
pub fn schouten_bracket_odd<T: Scalar>(p: &PolyVector<T>, q: &PolyVector<T>) -> Result<PolyVector<T>> {
    check_pair(p, q)?;
    let dim = p.dim;
    let mut out = Raw::new();
    let half = |a: &PolyVecLabel, b: &PolyVecLabel, i: usize| -> Raw<T> {
        let (Some((ra, odd)), Some((db, c))) = (right_xi_derivative(a, i), x_derivative::<T>(b, i)) else {
            return Raw::new();
        };
        match wedge_labels(&ra, &db) {
            Some((l, odd2)) => BTreeMap::from([(l, sign::<T>(odd ^ odd2) * c)]),
            None => Raw::new(),
        }
    };
    for (lp, vp) in &p.terms {
        for (lq, vq) in &q.terms {
            let c = vp.clone() * vq.clone();
            let s: T = sign((lp.degree() + 1) * (lq.degree() + 1) % 2 == 1);
            for i in 1..=dim {
                add_into(&mut out, half(lp, lq, i), &c);
                add_into(&mut out, half(lq, lp, i), &(-(s.clone() * c.clone())));
            }
        }
    }
    Ok(PolyVector { dim, terms: out })
}

/// Taylor components `P^{i_1…i_p}_{j_1…j_n}` of a polyvector, antisymmetric in
/// the upper and symmetric in the lower indices.
type Tensor<T> = HashMap<(Vec<usize>, Vec<usize>), T>;

fn factorial_weight(m: &Monomial) -> u64 {
    m.exponents().iter().map(|&e| (1..=e as u64).product::<u64>()).product()
}

fn to_tensor<T: Scalar>(p: &PolyVector<T>) -> Tensor<T> {
    let mut out = Tensor::new();
    for (l, v) in &p.terms {
        let ext = l.ext.vars();
        let c = v.clone() * T::from_count(factorial_weight(&l.sym));
        let mut ins: Vec<Vec<usize>> = permutations(l.sym.vars());
        ins.sort();
        ins.dedup();
        for perm in permutations(&(0..ext.len()).collect::<Vec<_>>()) {
            let outs: Vec<usize> = perm.iter().map(|&k| ext[k]).collect();
            let s: T = sign(inversions(&perm) % 2 == 1);
            for j in &ins {
                let slot = out.entry((outs.clone(), j.clone())).or_insert_with(T::zero);
                *slot = slot.clone() + s.clone() * c.clone();
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn from_tensor<T: Scalar>(dim: usize, t: &Tensor<T>) -> Raw<T> {
    let mut out = Raw::new();
    for ((outs, ins), v) in t {
        if !outs.windows(2).all(|w| w[0] < w[1]) || !ins.windows(2).all(|w| w[0] <= w[1]) {
            continue;
        }
        let sym = Monomial::new(dim, ins.clone()).expect("valid indices");
        let c = v.clone() / T::from_count(factorial_weight(&sym));
        add_term(&mut out, PolyVecLabel { ext: Monomial::new(dim, outs.clone()).expect("valid indices"), sym }, c);
    }
    out
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn index_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (1..=dim).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Two-vertex composite: the first factor's last output feeds one input of
/// the second, summed over shuffles of outputs with the sign
/// `(−1)^{σ(I_1⊔I_2) + |I_1|(|I_2|+1)}`.
fn graft<T: Scalar>(dim: usize, a: &Tensor<T>, b: &Tensor<T>) -> Tensor<T> {
    let shape = |t: &Tensor<T>| {
        let mut s: Vec<(usize, usize)> = t.keys().map(|(o, i)| (o.len(), i.len())).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let mut out = Tensor::new();
    for (ma, na) in shape(a) {
        for (mb, nb) in shape(b) {
            if ma == 0 || nb == 0 || mb == 0 {
                continue;
            }
            let (i1, i2, j1, j2) = (ma - 1, mb, na, nb - 1);
            let (m, n) = (i1 + i2, j1 + j2);
            for outs in index_tuples(dim, m) {
                for ins in index_tuples(dim, n) {
                    let mut total = T::zero();
                    for s1 in subsets(m, i1) {
                        let s2: Vec<usize> = (0..m).filter(|k| !s1.contains(k)).collect();
                        let order: Vec<usize> = s1.iter().chain(&s2).copied().collect();
                        let sg: T = sign((inversions(&order) + i1 * (i2 + 1)) % 2 == 1);
                        for t1 in subsets(n, j1) {
                            let t2: Vec<usize> = (0..n).filter(|k| !t1.contains(k)).collect();
                            for e in 1..=dim {
                                let mut ao: Vec<usize> = s1.iter().map(|&k| outs[k]).collect();
                                ao.push(e);
                                let ai: Vec<usize> = t1.iter().map(|&k| ins[k]).collect();
                                let Some(x) = a.get(&(ao, ai)) else { continue };
                                let bo: Vec<usize> = s2.iter().map(|&k| outs[k]).collect();
                                let mut bi = vec![e];
                                bi.extend(t2.iter().map(|&k| ins[k]));
                                let Some(y) = b.get(&(bo, bi)) else { continue };
                                total = total + sg.clone() * x.clone() * y.clone();
                            }
                        }
                    }
                    if !total.is_zero() {
                        let slot = out.entry((outs.clone(), ins.clone())).or_insert_with(T::zero);
                        *slot = slot.clone() + total;
                    }
                }
            }
        }
    }
    out
}

/// The bracket induced on Taylor components by the quadratic differential of
/// the polyvector prop: `(−1)^{(p−1)(q−1)} P⋄Q − Q⋄P` for homogeneous `P`, `Q`,
/// where `⋄` is the two-vertex graft. Brute force, meant for small `dim`.
pub fn schouten_bracket_grafted<T: Scalar>(p: &PolyVector<T>, q: &PolyVector<T>) -> Result<PolyVector<T>> {
    check_pair(p, q)?;
    let dim = p.dim;
    let by_degree = |x: &PolyVector<T>| {
        let mut parts: BTreeMap<usize, PolyVector<T>> = BTreeMap::new();
        for (l, v) in &x.terms {
            parts.entry(l.degree()).or_insert_with(|| PolyVector::zero(dim)).terms.insert(l.clone(), v.clone());
        }
        parts
    };
    let mut out = Raw::new();
    for (pd, pp) in by_degree(p) {
        for (qd, qq) in by_degree(q) {
            let (tp, tq) = (to_tensor(&pp), to_tensor(&qq));
            let s: T = sign((pd - 1) * (qd - 1) % 2 == 1);
            add_into(&mut out, from_tensor(dim, &graft(dim, &tp, &tq)), &s);
            add_into(&mut out, from_tensor(dim, &graft(dim, &tq, &tp)), &-T::one());
        }
    }
    Ok(PolyVector { dim, terms: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn pv(dim: usize, terms: &[(&str, i64)]) -> PolyVector<Q> {
        PolyVector::new(dim, terms.iter().map(|(s, c)| (parse_polyvec_label(dim, s).unwrap(), Q::from_int(*c)))).unwrap()
    }

    #[test]
    fn euler_against_constant_field() {
        let p = pv(1, &[("V({1}; x1)", 1)]);
        let q = pv(1, &[("V({1}; 1)", 1)]);
        let expected = pv(1, &[("V({1}; 1)", -1)]);
        assert_eq!(schouten_bracket(&p, &q).unwrap(), expected);
        assert_eq!(schouten_bracket_odd(&p, &q).unwrap(), expected);
        assert!(schouten_bracket(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn vector_fields_bracket_as_commutators() {
        // [x2 ∂1, x1 ∂2] = x2 ∂2 − x1 ∂1
        let p = pv(2, &[("V({1}; x2)", 1)]);
        let q = pv(2, &[("V({2}; x1)", 1)]);
        let expected = pv(2, &[("V({2}; x2)", 1), ("V({1}; x1)", -1)]);
        assert_eq!(schouten_bracket(&p, &q).unwrap(), expected);
        assert_eq!(schouten_bracket_odd(&p, &q).unwrap(), expected);
    }

    #[test]
    fn bivector_routes_agree() {
        let p = pv(2, &[("V({1,2}; x1^2)", 2), ("V({1}; x1*x2)", -1)]);
        let q = pv(2, &[("V({1,2}; x2)", 1), ("V({2}; x1^2)", 3)]);
        assert_eq!(schouten_bracket(&p, &q).unwrap(), schouten_bracket_odd(&p, &q).unwrap());
        assert_eq!(schouten_bracket(&p, &q).unwrap(), schouten_bracket_grafted(&p, &q).unwrap());
    }

    #[test]
    fn grafting_reproduces_commutator() {
        let p = pv(1, &[("V({1}; x1)", 1)]);
        let q = pv(1, &[("V({1}; 1)", 1)]);
        assert_eq!(schouten_bracket_grafted(&p, &q).unwrap(), pv(1, &[("V({1}; 1)", -1)]));
    }

    #[test]
    fn labels_round_trip() {
        let l = parse_polyvec_label(3, "V({1,3}; x2^2)").unwrap();
        assert_eq!(l.to_string(), "V({1,3}; x2^2)");
        assert!(parse_polyvec_label(2, "V({1,1}; 1)").is_err());
        assert!(PolyVector::<Q>::new(2, [(parse_polyvec_label(2, "V({}; x1)").unwrap(), Q::from_int(1))]).is_err());
    }
}
