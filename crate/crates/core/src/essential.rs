//! Essential monomials of a cyclic module, the semigroup they generate,
//! favourability, and a search over a small catalog of orders.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{negative_basis, BorelChoice, LieSuperalgebra, NegativeBasis};
use crate::linalg::{Insertion, Rational, SpanAccumulator, SparseVector};
use crate::module::{HighestWeightRealization, PbwEvaluator};
use crate::superpoly::{MonomialOrder, MultiExponent, OrderKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialSet {
    pub level: usize,
    pub order: String,
    /// Ascending in the order.
    pub monomials: Vec<MultiExponent>,
}

impl EssentialSet {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, e: &MultiExponent) -> bool {
        self.monomials.contains(e)
    }

    /// One line per monomial, `I=0110 m=(2,0,1) k=1`.
    pub fn to_text(&self) -> String {
        self.monomials
            .iter()
            .map(|e| format!("{e} k={}\n", self.level))
            .collect()
    }

    pub fn from_text(text: &str) -> Result<Vec<(MultiExponent, usize)>> {
        text.lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(i, l)| {
                parse_line(l).map_err(|e| match e {
                    Error::Parse(m) => Error::Parse(format!("line {i}: {m}")),
                    other => other,
                })
            })
            .collect()
    }
}

fn parse_line(line: &str) -> Result<(MultiExponent, usize)> {
    let bad = || Error::Parse(format!("bad essential-set line {line:?}"));
    let mut odd = None;
    let mut even = None;
    let mut level = None;
    for tok in line.split_whitespace() {
        if let Some(bits) = tok.strip_prefix("I=") {
            odd = Some(
                bits.chars()
                    .map(|c| match c {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<u8>>>()?,
            );
        } else if let Some(m) = tok.strip_prefix("m=") {
            let inner = m.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
            even = Some(if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<u32>>>()?
            });
        } else if let Some(k) = tok.strip_prefix("k=") {
            level = Some(k.parse::<usize>().map_err(|_| bad())?);
        } else {
            return Err(bad());
        }
    }
    match (odd, even) {
        (Some(o), Some(e)) => Ok((MultiExponent::new(o, e), level.unwrap_or(1))),
        _ => Err(bad()),
    }
}

/// Essential monomials together with the data needed to write any PBW
/// vector of the module in the essential basis.
#[derive(Clone, Debug)]
pub struct EssentialBasis {
    pub set: EssentialSet,
    index: HashMap<MultiExponent, usize>,
    /// Per weight: accumulator whose originals are essential vectors, and
    /// their global indices.
    blocks: BTreeMap<Vec<Rational>, (SpanAccumulator, Vec<usize>)>,
    eval: PbwEvaluator,
}

impl EssentialBasis {
    /// Scans all monomials with nonzero vector in ascending order and keeps
    /// those whose vector is independent of everything smaller.
    pub fn compute(
        alg: &LieSuperalgebra,
        mut eval: PbwEvaluator,
        order: &MonomialOrder,
        level: usize,
        degree_cap: Option<u32>,
    ) -> Result<Self> {
        let basis = eval.basis().clone();
        if order.vars() != basis.len() {
            return Err(Error::InvalidOrder(format!(
                "order on {} variables, negative basis has {}",
                order.vars(),
                basis.len()
            )));
        }
        let cap = degree_cap.unwrap_or(eval.rep_dim() as u32 + 1);
        let mut all: Vec<MultiExponent> = eval
            .nonzero_layers(alg, cap)?
            .into_iter()
            .flatten()
            .map(|p| basis.exponent_of(&p))
            .collect();
        all.sort_by(|a, b| order.compare(a, b));
        let mut blocks: BTreeMap<Vec<Rational>, (SpanAccumulator, Vec<usize>)> = BTreeMap::new();
        let mut monomials = Vec::new();
        for e in all {
            let v = eval.act(&e);
            let w = eval.weight_of(alg, &e);
            let (acc, idx) = blocks.entry(w).or_default();
            if acc.insert(&v) == Insertion::Independent {
                idx.push(monomials.len());
                monomials.push(e);
            }
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Self {
            set: EssentialSet {
                level,
                order: order.name(),
                monomials,
            },
            index,
            blocks,
            eval,
        })
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn index_of(&self, e: &MultiExponent) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn monomial(&self, i: usize) -> &MultiExponent {
        &self.set.monomials[i]
    }

    pub fn evaluator(&mut self) -> &mut PbwEvaluator {
        &mut self.eval
    }

    /// Coordinates of `f^{e} v` over the essential basis (sparse, by index).
    pub fn coordinates(&mut self, alg: &LieSuperalgebra, e: &MultiExponent) -> Result<Vec<(usize, Rational)>> {
        let v = self.eval.act(e);
        if v.is_zero() {
            return Ok(Vec::new());
        }
        let w = self.eval.weight_of(alg, e);
        self.coordinates_in_block(&w, &v)
    }

    pub fn coordinates_in_block(&self, weight: &[Rational], v: &SparseVector) -> Result<Vec<(usize, Rational)>> {
        let (acc, idx) = self
            .blocks
            .get(weight)
            .ok_or_else(|| Error::Internal("vector of a weight absent from the module".into()))?;
        let c = acc
            .express(v)
            .ok_or_else(|| Error::Internal("vector outside the essential span".into()))?;
        Ok(c.into_iter()
            .enumerate()
            .filter(|(_, x)| !num_traits::Zero::is_zero(x))
            .map(|(k, x)| (idx[k], x))
            .collect())
    }
}

pub fn essential_monomials(
    alg: &LieSuperalgebra,
    eval: PbwEvaluator,
    order: &MonomialOrder,
    level: usize,
) -> Result<EssentialSet> {
    Ok(EssentialBasis::compute(alg, eval, order, level, None)?.set)
}

/// An element of the semigroup of essential monomials, with an absorbing
/// bottom for sums that leave `{0,1}^q x N^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SemigroupElement {
    Element { exp: MultiExponent, level: usize },
    Bottom,
}

pub fn semigroup_add(a: &SemigroupElement, b: &SemigroupElement) -> SemigroupElement {
    match (a, b) {
        (SemigroupElement::Element { exp: e1, level: k1 }, SemigroupElement::Element { exp: e2, level: k2 }) => {
            match e1.checked_add(e2) {
                Some(exp) => SemigroupElement::Element { exp, level: k1 + k2 },
                None => SemigroupElement::Bottom,
            }
        }
        _ => SemigroupElement::Bottom,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SemigroupReport {
    pub checked: usize,
    pub bottom: usize,
    pub violations: Vec<(MultiExponent, MultiExponent, MultiExponent)>,
}

impl SemigroupReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every compatible sum of an element of `es_k` and one of `es_k2` must lie
/// in `es_sum`.
pub fn check_semigroup_property(es_k: &EssentialSet, es_k2: &EssentialSet, es_sum: &EssentialSet) -> SemigroupReport {
    let target: BTreeSet<&MultiExponent> = es_sum.monomials.iter().collect();
    let mut report = SemigroupReport::default();
    for a in &es_k.monomials {
        for b in &es_k2.monomials {
            match a.checked_add(b) {
                Some(s) => {
                    report.checked += 1;
                    if !target.contains(&s) {
                        report.violations.push((a.clone(), b.clone(), s));
                    }
                }
                None => report.bottom += 1,
            }
        }
    }
    report
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FavourableReport {
    pub favourable: bool,
    pub max_level: usize,
    /// `(level, monomial)` pairs with no decomposition.
    pub failures: Vec<(usize, MultiExponent)>,
    /// A decomposition into level-one essentials, keyed by `(level, monomial)`.
    #[serde(skip)]
    pub decompositions: BTreeMap<(usize, MultiExponent), Vec<MultiExponent>>,
}

/// Decomposes `target` into `k` elements of `es1` (indices non-decreasing,
/// so partial sums stay inside `{0,1}^q x N^n`).
pub struct Decomposer<'a> {
    es1: &'a [MultiExponent],
    memo: HashMap<(MultiExponent, usize, usize), Option<Vec<usize>>>,
}

impl<'a> Decomposer<'a> {
    pub fn new(es1: &'a [MultiExponent]) -> Self {
        Self {
            es1,
            memo: HashMap::new(),
        }
    }

    pub fn decompose(&mut self, target: &MultiExponent, k: usize) -> Option<Vec<MultiExponent>> {
        self.search(target, k, 0)
            .map(|idx| idx.into_iter().map(|i| self.es1[i].clone()).collect())
    }

    fn search(&mut self, target: &MultiExponent, k: usize, from: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return target.is_zero().then(Vec::new);
        }
        let key = (target.clone(), k, from);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut found = None;
        for i in from..self.es1.len() {
            if let Some(rest) = target.checked_sub(&self.es1[i]) {
                if let Some(mut tail) = self.search(&rest, k - 1, i) {
                    tail.insert(0, i);
                    found = Some(tail);
                    break;
                }
            }
        }
        self.memo.insert(key, found.clone());
        found
    }
}

/// `sets[k-1]` is the essential set at level `k`.
pub fn is_favourable(sets: &[EssentialSet]) -> FavourableReport {
    let mut report = FavourableReport {
        favourable: true,
        max_level: sets.len(),
        ..Default::default()
    };
    let Some(es1) = sets.first() else {
        return report;
    };
    let mut dec = Decomposer::new(&es1.monomials);
    for (i, set) in sets.iter().enumerate() {
        let k = i + 1;
        for e in &set.monomials {
            match dec.decompose(e, k) {
                Some(parts) => {
                    report.decompositions.insert((k, e.clone()), parts);
                }
                None => {
                    report.favourable = false;
                    report.failures.push((k, e.clone()));
                }
            }
        }
    }
    report
}

/// Exponent relabelled by root index: sorted `(root, exponent)` pairs with
/// nonzero exponent.
pub fn root_labelled(e: &MultiExponent, basis: &NegativeBasis) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = basis
        .flat_roots()
        .into_iter()
        .zip(e.flat())
        .filter(|&(_, x)| x > 0)
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogMatch {
    pub order: MonomialOrder,
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CatalogReport {
    pub tried: usize,
    pub matches: Vec<CatalogMatch>,
    /// Sizes of the essential sets seen (they should all equal the module
    /// dimension).
    pub sizes: BTreeSet<usize>,
    /// Largest overlap with the target seen over the catalog.
    pub best_overlap: usize,
}

/// Next permutation in lexicographic order; false after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Tries graded-lex and graded-revlex, each with identity and reversed
/// coordinate priority, over every ordering of the negative basis, and
/// reports which give the target set (as root-labelled exponents).
pub fn search_catalog(
    alg: &LieSuperalgebra,
    borel: &BorelChoice,
    real: &HighestWeightRealization,
    target: &BTreeSet<Vec<(usize, u32)>>,
    divided: bool,
    stop_at_first: bool,
) -> Result<CatalogReport> {
    let len = borel.negative.len();
    let mut perm: Vec<usize> = (0..len).collect();
    let mut report = CatalogReport::default();
    let identity: Vec<usize> = (0..len).collect();
    let reversed: Vec<usize> = (0..len).rev().collect();
    loop {
        let nb = negative_basis(alg, borel, Some(&perm))?;
        let eval = PbwEvaluator::new(alg, real, &nb, divided);
        let mut layers_eval = eval.clone();
        let cap = eval.rep_dim() as u32 + 1;
        layers_eval.nonzero_layers(alg, cap)?;
        for kind in [OrderKind::GradedLex, OrderKind::GradedRevLex] {
            for prio in [&identity, &reversed] {
                let order = MonomialOrder::new(kind.clone(), prio.clone())?;
                let es = EssentialBasis::compute(alg, layers_eval.clone(), &order, 1, Some(cap))?.set;
                report.tried += 1;
                report.sizes.insert(es.len());
                let got: BTreeSet<_> = es.monomials.iter().map(|e| root_labelled(e, &nb)).collect();
                report.best_overlap = report.best_overlap.max(got.intersection(target).count());
                if &got == target {
                    report.matches.push(CatalogMatch {
                        order,
                        permutation: perm.clone(),
                    });
                    if stop_at_first {
                        return Ok(report);
                    }
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(report)
}
