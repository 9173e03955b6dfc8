//! The free supercommutative algebra over the rationals in commuting
//! variables `x_1..x_n` and anticommuting variables `xi_1..xi_q`.
//!
//! Monomials are stored in the canonical form `xi_q^{i_q} ... xi_1^{i_1} x^m`
//! (odd variables in descending index order), and every product is brought
//! back to that form with the Koszul sign.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

/// A pair `(I, m)` with `I` in `{0,1}^q` and `m` in `N^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiExponent {
    pub odd: Vec<u8>,
    pub even: Vec<u32>,
}

impl MultiExponent {
    pub fn zero(n: usize, q: usize) -> Self {
        Self {
            odd: vec![0; q],
            even: vec![0; n],
        }
    }

    pub fn new(odd: Vec<u8>, even: Vec<u32>) -> Self {
        debug_assert!(odd.iter().all(|&b| b <= 1));
        Self { odd, even }
    }

    pub fn odd_unit(n: usize, q: usize, i: usize) -> Self {
        let mut e = Self::zero(n, q);
        e.odd[i] = 1;
        e
    }

    pub fn even_unit(n: usize, q: usize, i: usize) -> Self {
        let mut e = Self::zero(n, q);
        e.even[i] = 1;
        e
    }

    pub fn n(&self) -> usize {
        self.even.len()
    }

    pub fn q(&self) -> usize {
        self.odd.len()
    }

    /// `|I|`
    pub fn odd_degree(&self) -> u32 {
        self.odd.iter().map(|&b| b as u32).sum()
    }

    /// `|I| + |m|`
    pub fn degree(&self) -> u32 {
        self.odd_degree() + self.even.iter().sum::<u32>()
    }

    pub fn parity(&self) -> u8 {
        (self.odd_degree() % 2) as u8
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 0
    }

    /// Two exponents are compatible when their sum keeps odd entries in `{0,1}`.
    pub fn compatible(&self, other: &MultiExponent) -> bool {
        self.odd.iter().zip(&other.odd).all(|(a, b)| a + b <= 1)
    }

    /// Sum, or `None` if an odd coordinate would reach 2.
    pub fn checked_add(&self, other: &MultiExponent) -> Option<MultiExponent> {
        if !self.compatible(other) {
            return None;
        }
        Some(MultiExponent {
            odd: self.odd.iter().zip(&other.odd).map(|(a, b)| a + b).collect(),
            even: self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect(),
        })
    }

    /// `self - other`, when it stays nonnegative with odd part in `{0,1}`.
    pub fn checked_sub(&self, other: &MultiExponent) -> Option<MultiExponent> {
        let mut out = self.clone();
        for (a, b) in out.odd.iter_mut().zip(&other.odd) {
            *a = a.checked_sub(*b)?;
        }
        for (a, b) in out.even.iter_mut().zip(&other.even) {
            *a = a.checked_sub(*b)?;
        }
        Some(out)
    }

    /// Coordinates in `N^{n+q}`: even block first, then odd block.
    pub fn flat(&self) -> Vec<u32> {
        self.even
            .iter()
            .copied()
            .chain(self.odd.iter().map(|&b| b as u32))
            .collect()
    }

    /// Uncapped coordinatewise sum in `N^{n+q}` (same layout as [`flat`](Self::flat)).
    pub fn raw_sum<'a>(items: impl IntoIterator<Item = &'a MultiExponent>, n: usize, q: usize) -> Vec<u32> {
        let mut acc = vec![0u32; n + q];
        for e in items {
            for (a, b) in acc.iter_mut().zip(e.flat()) {
                *a += b;
            }
        }
        acc
    }

    /// Odd bits as a string, `I_1` first.
    pub fn odd_string(&self) -> String {
        self.odd.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for MultiExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.even.iter().map(u32::to_string).collect();
        write!(f, "I={} m=({})", self.odd_string(), m.join(","))
    }
}

/// `K_{J1,J2} = sum_j sum_{i>j} J1_j * J2_i`.
pub fn koszul_count(j1: &[u8], j2: &[u8]) -> u32 {
    assert_eq!(j1.len(), j2.len(), "odd parts of different length");
    let mut k = 0u32;
    let mut tail: u32 = j2.iter().map(|&b| b as u32).sum();
    for (a, b) in j1.iter().zip(j2) {
        tail -= *b as u32;
        k += *a as u32 * tail;
    }
    k
}

/// `(-1)^{K_{J1,J2}}`
pub fn koszul_sign(j1: &[u8], j2: &[u8]) -> i64 {
    if koszul_count(j1, j2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Product of two canonical monomials: `None` when the odd supports overlap,
/// otherwise the sum exponent and the sign `(-1)^{K_{I,I'}}`.
pub fn monomial_product(a: &MultiExponent, b: &MultiExponent) -> Option<(MultiExponent, i64)> {
    let sum = a.checked_add(b)?;
    Some((sum, koszul_sign(&a.odd, &b.odd)))
}

/// Sparse rational polynomial in the free supercommutative algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperPolynomial {
    n: usize,
    q: usize,
    terms: BTreeMap<MultiExponent, Rational>,
}

impl SuperPolynomial {
    pub fn zero(n: usize, q: usize) -> Self {
        Self {
            n,
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, q: usize) -> Self {
        Self::monomial(MultiExponent::zero(n, q), Rational::one())
    }

    pub fn monomial(exp: MultiExponent, coeff: Rational) -> Self {
        let mut p = Self::zero(exp.n(), exp.q());
        p.add_term(exp, &coeff);
        p
    }

    pub fn even_var(n: usize, q: usize, i: usize) -> Self {
        Self::monomial(MultiExponent::even_unit(n, q, i), Rational::one())
    }

    pub fn odd_var(n: usize, q: usize, i: usize) -> Self {
        Self::monomial(MultiExponent::odd_unit(n, q, i), Rational::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiExponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &MultiExponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: MultiExponent, coeff: &Rational) {
        assert!(exp.n() == self.n && exp.q() == self.q, "ambient mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SuperPolynomial) -> Result<SuperPolynomial> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SuperPolynomial) -> Result<SuperPolynomial> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> SuperPolynomial {
        let mut out = Self::zero(self.n, self.q);
        if !factor.is_zero() {
            for (e, c) in &self.terms {
                out.terms.insert(e.clone(), c * factor);
            }
        }
        out
    }

    fn check_ambient(&self, other: &SuperPolynomial) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::AmbientMismatch {
                left: (self.n, self.q),
                right: (other.n, other.q),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &SuperPolynomial) -> Result<SuperPolynomial> {
        self.check_ambient(other)?;
        let mut out = Self::zero(self.n, self.q);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((e, sign)) = monomial_product(a, b) {
                    out.add_term(e, &(ca * cb * rat(sign)));
                }
            }
        }
        Ok(out)
    }

    /// Homogeneous of a single parity, if so.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(MultiExponent::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Exponents of the terms, in map order.
    pub fn support(&self) -> Vec<MultiExponent> {
        self.terms.keys().cloned().collect()
    }

    /// Renders with custom variable names (`even[i]`, `odd[j]`).
    pub fn format_with(&self, even: &[String], odd: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = format_monomial(e, even, odd);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&abs.to_string()),
                (false, false) => {
                    out.push_str(&abs.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn parse(text: &str, n: usize, q: usize) -> Result<SuperPolynomial> {
        let even: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let odd: Vec<String> = (1..=q).map(|i| format!("xi{i}")).collect();
        Self::parse_with(text, &even, &odd)
    }

    /// Parses `c*v1^a*v2*...` terms joined by `+`/`-` (ASCII or U+2212).
    /// Odd factors may appear in any order; the sign is normalized.
    pub fn parse_with(text: &str, even: &[String], odd: &[String]) -> Result<SuperPolynomial> {
        let (n, q) = (even.len(), odd.len());
        let cleaned = text.replace('\u{2212}', "-");
        let mut out = Self::zero(n, q);
        for (neg, term) in split_terms(&cleaned)? {
            let mut poly = Self::one(n, q);
            let mut coeff = Rational::one();
            for factor in term.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= factor
                        .parse::<Rational>()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((v, p)) => (
                        v,
                        p.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let var = if let Some(i) = even.iter().position(|s| s == name) {
                    Self::even_var(n, q, i)
                } else if let Some(j) = odd.iter().position(|s| s == name) {
                    Self::odd_var(n, q, j)
                } else {
                    return Err(Error::Parse(format!("unknown variable `{name}`")));
                };
                for _ in 0..power {
                    poly = poly.multiply(&var)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out = out.add(&poly.scale(&coeff))?;
        }
        Ok(out)
    }
}

fn split_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    out.push((neg, cur.trim().to_string()));
                    cur.clear();
                    neg = ch == '-';
                } else {
                    if ch == '-' {
                        neg = !neg;
                    }
                }
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        if out.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        return Err(Error::Parse(format!("dangling operator in `{text}`")));
    }
    out.push((neg, cur.trim().to_string()));
    if out.len() == 1 && out[0].1 == "0" {
        return Ok(Vec::new());
    }
    Ok(out)
}

/// `x1^2*xi2*xi1`: even variables ascending, then odd descending.
pub fn format_monomial(e: &MultiExponent, even: &[String], odd: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &m) in e.even.iter().enumerate() {
        match m {
            0 => {}
            1 => parts.push(even[i].clone()),
            _ => parts.push(format!("{}^{}", even[i], m)),
        }
    }
    for j in (0..e.q()).rev() {
        if e.odd[j] == 1 {
            parts.push(odd[j].clone());
        }
    }
    parts.join("*")
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let even: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        let odd: Vec<String> = (1..=self.q).map(|i| format!("xi{i}")).collect();
        f.write_str(&self.format_with(&even, &odd))
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPolynomial({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    GradedLex,
    GradedRevLex,
    /// Weight first, graded-lex tie-break. Weights must be nonnegative.
    Weighted(Vec<i64>),
}

/// Total order on `{0,1}^q x N^n`, the restriction of a monomial order on
/// `N^{n+q}` (coordinates even block first, then odd block).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Coordinates of `N^{n+q}` from highest to lowest priority.
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let len = priority.len();
        let mut seen = vec![false; len];
        for &p in &priority {
            if p >= len || seen[p] {
                return Err(Error::InvalidOrder(format!("priority {priority:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if let OrderKind::Weighted(w) = &kind {
            if w.len() != len {
                return Err(Error::InvalidOrder(format!("weight has length {}, expected {len}", w.len())));
            }
            if w.iter().any(|&x| x < 0) {
                return Err(Error::InvalidOrder("weights must be nonnegative".into()));
            }
        }
        Ok(Self { kind, priority })
    }

    pub fn graded_lex(vars: usize) -> Self {
        Self {
            kind: OrderKind::GradedLex,
            priority: (0..vars).collect(),
        }
    }

    pub fn graded_revlex(vars: usize) -> Self {
        Self {
            kind: OrderKind::GradedRevLex,
            priority: (0..vars).collect(),
        }
    }

    pub fn vars(&self) -> usize {
        self.priority.len()
    }

    pub fn name(&self) -> String {
        let kind = match &self.kind {
            OrderKind::GradedLex => "graded-lex".to_string(),
            OrderKind::GradedRevLex => "graded-revlex".to_string(),
            OrderKind::Weighted(w) => format!("weighted{w:?}"),
        };
        format!("{kind} priority={:?}", self.priority)
    }

    /// Compares flat exponent vectors in `N^{n+q}`.
    pub fn compare_flat(&self, a: &[u32], b: &[u32]) -> Ordering {
        assert_eq!(a.len(), self.vars());
        assert_eq!(b.len(), self.vars());
        let deg = |v: &[u32]| v.iter().map(|&x| x as u64).sum::<u64>();
        let lex = |a: &[u32], b: &[u32]| {
            self.priority
                .iter()
                .map(|&c| a[c].cmp(&b[c]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        };
        match &self.kind {
            OrderKind::GradedLex => deg(a).cmp(&deg(b)).then_with(|| lex(a, b)),
            OrderKind::GradedRevLex => deg(a).cmp(&deg(b)).then_with(|| {
                self.priority
                    .iter()
                    .rev()
                    .map(|&c| b[c].cmp(&a[c]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            }),
            OrderKind::Weighted(w) => {
                let dot = |v: &[u32]| w.iter().zip(v).map(|(&x, &y)| x * y as i64).sum::<i64>();
                dot(a)
                    .cmp(&dot(b))
                    .then_with(|| deg(a).cmp(&deg(b)))
                    .then_with(|| lex(a, b))
            }
        }
    }

    pub fn compare(&self, a: &MultiExponent, b: &MultiExponent) -> Ordering {
        self.compare_flat(&a.flat(), &b.flat())
    }
}

/// All `(I, m)` with `|I| + |m| <= degree_bound`, ascending in `order`.
pub fn enumerate_monomials(n: usize, q: usize, degree_bound: u32, order: &MonomialOrder) -> Vec<MultiExponent> {
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << q) {
        let odd: Vec<u8> = (0..q).map(|j| ((bits >> j) & 1) as u8).collect();
        let used: u32 = odd.iter().map(|&b| b as u32).sum();
        if used > degree_bound {
            continue;
        }
        let mut even = vec![0u32; n];
        push_compositions(&mut even, 0, degree_bound - used, &mut |m| {
            out.push(MultiExponent::new(odd.clone(), m.to_vec()));
        });
    }
    out.sort_by(|a, b| order.compare(a, b));
    out
}

/// Calls `f` on every vector in `N^len` with entry sum at most `budget`.
fn push_compositions(buf: &mut Vec<u32>, pos: usize, budget: u32, f: &mut impl FnMut(&[u32])) {
    if pos == buf.len() {
        f(buf);
        return;
    }
    for v in 0..=budget {
        buf[pos] = v;
        push_compositions(buf, pos + 1, budget - v, f);
    }
    buf[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_count(&[1, 0], &[0, 1]), 1);
        assert_eq!(koszul_sign(&[1, 0], &[0, 1]), -1);
        for j2 in [[0, 0, 0], [1, 0, 1], [1, 1, 1]] {
            assert_eq!(koszul_count(&[0, 0, 0], &j2), 0);
        }
        assert_eq!(koszul_count(&[1, 1, 0], &[0, 1, 1]), 3);
    }

    #[test]
    fn odd_variables_anticommute() {
        let xi1 = SuperPolynomial::odd_var(0, 2, 0);
        let xi2 = SuperPolynomial::odd_var(0, 2, 1);
        assert!(xi1.multiply(&xi1).unwrap().is_zero());
        let a = xi1.multiply(&xi2).unwrap();
        let b = xi2.multiply(&xi1).unwrap();
        assert_eq!(a, b.scale(&rat(-1)));
        // canonical form is xi2*xi1
        assert_eq!(b.to_string(), "xi2*xi1");
    }

    #[test]
    fn cross_terms_cancel() {
        let x1 = SuperPolynomial::even_var(1, 1, 0);
        let xi1 = SuperPolynomial::odd_var(1, 1, 0);
        let p = x1.add(&xi1).unwrap().multiply(&x1.sub(&xi1).unwrap()).unwrap();
        assert_eq!(p, x1.multiply(&x1).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = SuperPolynomial::one(1, 0);
        let b = SuperPolynomial::one(0, 1);
        assert!(matches!(a.multiply(&b), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn parse_normalizes_odd_order() {
        let p = SuperPolynomial::parse("x1^2*xi1*xi2", 1, 2).unwrap();
        assert_eq!(p.to_string(), "-x1^2*xi2*xi1");
        let q = SuperPolynomial::parse("3/2*x1 \u{2212} xi2*xi1 + 1", 1, 2).unwrap();
        assert_eq!(SuperPolynomial::parse(&q.to_string(), 1, 2).unwrap(), q);
        assert!(SuperPolynomial::parse("x3", 1, 2).is_err());
        assert!(SuperPolynomial::parse("0", 1, 2).unwrap().is_zero());
    }

    #[test]
    fn order_examples() {
        let ord = MonomialOrder::graded_lex(2);
        let a = MultiExponent::new(vec![], vec![1, 0]);
        let b = MultiExponent::new(vec![], vec![0, 1]);
        assert_eq!(ord.compare(&a, &b), Ordering::Greater);
        assert_eq!(ord.compare(&a, &a), Ordering::Equal);
        assert!(MonomialOrder::new(OrderKind::Weighted(vec![1, -1]), vec![0, 1]).is_err());
        assert!(MonomialOrder::new(OrderKind::GradedLex, vec![0, 0]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let ord = MonomialOrder::graded_lex(2);
        assert_eq!(enumerate_monomials(1, 1, 0, &ord), vec![MultiExponent::zero(1, 1)]);
        let e = enumerate_monomials(1, 1, 1, &ord);
        assert_eq!(e.len(), 3);
        assert!(e[0].is_zero());
        assert_eq!(ord.compare(&e[1], &e[2]), Ordering::Less);
    }
}
