//! Certificates that the monomial superalgebra `C[xi^I x^m v | (I,m) in K]`
//! is a toric supervariety: odd removal, the even Laurent lattice, odd
//! reachability, the supertorus action parameters and closure of the
//! algebra under the odd derivations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rat, rows_generate_full_lattice, smith_normal_form, IntegerMatrix, Rational, SparseVector};
use crate::superpoly::MultiExponent;

/// Finite set of generators `xi^I x^m v^d` (usually `d = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentSet {
    pub n: usize,
    pub q: usize,
    pub elements: Vec<(MultiExponent, u32)>,
}

impl ExponentSet {
    /// Every element with `v`-degree one.
    pub fn from_monomials(n: usize, q: usize, monomials: &[MultiExponent]) -> Result<Self> {
        let mut elements: Vec<(MultiExponent, u32)> = Vec::new();
        for m in monomials {
            if m.n() != n || m.q() != q {
                return Err(Error::AmbientMismatch {
                    left: (n, q),
                    right: (m.n(), m.q()),
                });
            }
            if !elements.iter().any(|(e, _)| e == m) {
                elements.push((m.clone(), 1));
            }
        }
        Ok(Self { n, q, elements })
    }

    pub fn contains(&self, e: &MultiExponent, vdeg: u32) -> bool {
        self.elements.iter().any(|(x, d)| x == e && *d == vdeg)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn even_vectors(&self) -> Vec<Vec<i64>> {
        self.elements
            .iter()
            .filter(|(e, _)| e.odd_degree() == 0)
            .map(|(e, d)| e.even.iter().map(|&x| x as i64).chain([*d as i64]).collect())
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OddRemovalReport {
    pub holds: bool,
    /// `(element, i)` with `I_i = 1` and `(I - e_i, m)` missing.
    pub violations: Vec<(MultiExponent, usize)>,
}

pub fn check_odd_removal(k: &ExponentSet) -> OddRemovalReport {
    let mut violations = Vec::new();
    for (e, d) in &k.elements {
        for i in 0..k.q {
            if e.odd[i] == 1 {
                let mut r = e.clone();
                r.odd[i] = 0;
                if !k.contains(&r, *d) {
                    violations.push((e.clone(), i));
                }
            }
        }
    }
    OddRemovalReport {
        holds: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub holds: bool,
    /// Nonzero invariant factors of the matrix of `(m, d)` rows.
    pub invariant_factors: Vec<String>,
    pub rank: usize,
    pub ambient_rank: usize,
}

/// The `(m, v-degree)` vectors of the purely even elements generate
/// `Z^{n+1}`.
pub fn check_even_laurent(k: &ExponentSet) -> LatticeReport {
    let rows = k.even_vectors();
    let ambient_rank = k.n + 1;
    if rows.is_empty() {
        return LatticeReport {
            holds: false,
            invariant_factors: Vec::new(),
            rank: 0,
            ambient_rank,
        };
    }
    let m = IntegerMatrix::from_rows(&rows);
    let (_, factors) = smith_normal_form(&m);
    LatticeReport {
        holds: rows_generate_full_lattice(&m),
        invariant_factors: factors.iter().map(BigInt::to_string).collect(),
        rank: factors.len(),
        ambient_rank,
    }
}

/// Sums of at most `bound` elements that stay in `{0,1}^q x N^n`, indexed
/// by the number of summands, each with one witness.
pub struct SumSearch {
    pub bound: usize,
    layers: Vec<BTreeMap<MultiExponent, Vec<usize>>>,
}

impl SumSearch {
    pub fn new(k: &ExponentSet, bound: usize) -> Self {
        let (n, q) = (k.n, k.q);
        let mut layers = vec![BTreeMap::from([(MultiExponent::zero(n, q), Vec::new())])];
        for _ in 0..bound {
            let prev = layers.last().unwrap();
            let mut next = BTreeMap::new();
            for (s, w) in prev {
                let start = w.last().copied().unwrap_or(0);
                for (idx, (e, _)) in k.elements.iter().enumerate().skip(start) {
                    if let Some(t) = s.checked_add(e) {
                        next.entry(t).or_insert_with(|| [w.clone(), vec![idx]].concat());
                    }
                }
            }
            layers.push(next);
        }
        Self { bound, layers }
    }

    /// Witness summands for `e` as a sum of exactly `count` elements.
    pub fn find_graded(&self, e: &MultiExponent, count: usize) -> Option<&Vec<usize>> {
        self.layers.get(count)?.get(e)
    }

    /// Witness for `e` as a sum of any number `1..=bound` of elements.
    pub fn find_any(&self, e: &MultiExponent) -> Option<&Vec<usize>> {
        self.layers[1..].iter().find_map(|l| l.get(e))
    }

    /// Witness with odd part exactly `odd`, any even part.
    pub fn find_odd_part(&self, odd: &[u8]) -> Option<(&MultiExponent, &Vec<usize>)> {
        self.layers[1..]
            .iter()
            .flat_map(|l| l.iter())
            .find(|(e, _)| e.odd == odd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Reach {
    /// Summand indices into the exponent set.
    Witness { exponent: MultiExponent, summands: Vec<usize> },
    /// No element has odd part `e_i`; sums never produce it.
    Unreachable,
    Inconclusive { bound: usize },
}

/// A sum has odd part `e_i` only if one summand has odd part `e_i` and the
/// rest are even, so the search settles every case within the bound.
pub fn check_odd_reachable(k: &ExponentSet, bound: usize) -> Vec<Reach> {
    let search = SumSearch::new(k, bound.max(1));
    (0..k.q)
        .map(|i| {
            let target: Vec<u8> = (0..k.q).map(|j| u8::from(j == i)).collect();
            match search.find_odd_part(&target) {
                Some((e, w)) => Reach::Witness {
                    exponent: e.clone(),
                    summands: w.clone(),
                },
                None if !k.elements.iter().any(|(e, _)| e.odd == target) => Reach::Unreachable,
                None => Reach::Inconclusive { bound },
            }
        })
        .collect()
}

/// Which semigroup a raised exponent must belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reading {
    /// `(I + e_j, m)` with `v`-degree one, i.e. an element of `K` itself.
    Graded,
    /// `(I + e_j, m)` as a sum of any number of elements (bounded search).
    Ungraded,
}

/// Per odd direction `j`, the rows `(m, d)` that every `c_{ij}` must be
/// orthogonal to.
pub fn action_constraints(k: &ExponentSet, search: &SumSearch, reading: Reading) -> Vec<Vec<Vec<i64>>> {
    (0..k.q)
        .map(|j| {
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for (e, d) in &k.elements {
                if e.odd[j] == 1 {
                    continue;
                }
                let mut raised = e.clone();
                raised.odd[j] = 1;
                let member = match reading {
                    Reading::Graded => k.contains(&raised, *d),
                    Reading::Ungraded => search.find_any(&raised).is_some(),
                };
                if !member {
                    let row: Vec<i64> = e.even.iter().map(|&x| x as i64).chain([*d as i64]).collect();
                    if !rows.contains(&row) {
                        rows.push(row);
                    }
                }
            }
            rows
        })
        .collect()
}

/// Admissible parameters: for each unordered pair `{i, j}` a basis of the
/// `c` orthogonal to the constraint rows of both directions, so that
/// `c_{ij} = c_{ji}`.
#[derive(Clone, Debug, Serialize)]
pub struct SuperTorusAction {
    pub reading: Reading,
    pub constraints: Vec<Vec<Vec<i64>>>,
    /// Keyed by `(i, j)` with `i <= j`; vectors in `Q^{n+1}`, `v` last.
    #[serde(serialize_with = "pairs_as_list")]
    pub basis: BTreeMap<(usize, usize), Vec<Vec<String>>>,
    #[serde(skip)]
    pub basis_exact: BTreeMap<(usize, usize), Vec<Vec<Rational>>>,
}

fn pairs_as_list<S: serde::Serializer>(
    map: &BTreeMap<(usize, usize), Vec<Vec<String>>>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        pair: (usize, usize),
        vectors: &'a Vec<Vec<String>>,
    }
    ser.collect_seq(map.iter().map(|(&pair, vectors)| Entry { pair, vectors }))
}

impl SuperTorusAction {
    pub fn dimension(&self) -> usize {
        self.basis_exact.values().map(Vec::len).sum()
    }

    /// The parameter `c_{ij}` equal to one basis vector, all others zero.
    pub fn single(&self, n: usize, q: usize, key: (usize, usize), v: &[Rational]) -> Vec<Vec<Vec<Rational>>> {
        let mut c = vec![vec![vec![Rational::zero(); n + 1]; q]; q];
        c[key.0][key.1] = v.to_vec();
        c[key.1][key.0] = v.to_vec();
        c
    }
}

pub fn solve_action(k: &ExponentSet, search: &SumSearch, reading: Reading) -> SuperTorusAction {
    let constraints = action_constraints(k, search, reading);
    let mut basis = BTreeMap::new();
    let mut basis_exact = BTreeMap::new();
    for i in 0..k.q {
        for j in i..k.q {
            let rows: Vec<SparseVector> = constraints[i]
                .iter()
                .chain(&constraints[j])
                .map(|r| SparseVector::from_ints(r))
                .collect();
            let ns: Vec<Vec<Rational>> = nullspace(&rows, k.n + 1).iter().map(|v| v.to_dense(k.n + 1)).collect();
            basis.insert((i, j), ns.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect());
            basis_exact.insert((i, j), ns);
        }
    }
    SuperTorusAction {
        reading,
        constraints,
        basis,
        basis_exact,
    }
}

/// `(-1)^{#{k > i : I_k = 1}}`, the sign of moving `xi_i` to the front of
/// the descending product `xi^I`.
fn front_sign(odd: &[u8], i: usize) -> i64 {
    if odd[i + 1..].iter().filter(|&&b| b == 1).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `theta_i (xi^I x^m v^d) = -d/dxi_i + sum_j <(m,d), c_ij> xi_j xi^I x^m v^d`,
/// as monomial (with `v`-degree) to coefficient.
pub fn apply_derivation(
    e: &MultiExponent,
    vdeg: u32,
    i: usize,
    c: &[Vec<Vec<Rational>>],
) -> BTreeMap<(MultiExponent, u32), Rational> {
    let mut out: BTreeMap<(MultiExponent, u32), Rational> = BTreeMap::new();
    let mut add = |key: (MultiExponent, u32), x: Rational| {
        let entry = out.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += x;
        if entry.is_zero() {
            out.remove(&key);
        }
    };
    if e.odd[i] == 1 {
        let mut r = e.clone();
        r.odd[i] = 0;
        add((r, vdeg), rat(-front_sign(&e.odd, i)));
    }
    let pairing: Vec<Rational> = e.even.iter().map(|&x| rat(x as i64)).chain([rat(vdeg as i64)]).collect();
    for j in 0..e.q() {
        if e.odd[j] == 1 {
            continue;
        }
        let coef: Rational = pairing.iter().zip(&c[i][j]).map(|(a, b)| a * b).sum();
        if coef.is_zero() {
            continue;
        }
        let mut r = e.clone();
        r.odd[j] = 1;
        add((r, vdeg), coef * rat(front_sign(&e.odd, j)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub holds: bool,
    pub checked: usize,
    /// `(direction, generator, monomials of the residual)`.
    pub residuals: Vec<(usize, MultiExponent, Vec<String>)>,
}

/// The derivative of every generator must lie in the algebra; derivatives
/// keep the `v`-degree, and the degree-`d` part of the algebra is spanned
/// by the degree-`d` sums, so the residual is the part outside that span.
pub fn verify_derivation_closure(k: &ExponentSet, search: &SumSearch, c: &[Vec<Vec<Rational>>]) -> ClosureReport {
    let mut residuals = Vec::new();
    let mut checked = 0;
    for i in 0..k.q {
        for (e, d) in &k.elements {
            checked += 1;
            let res: Vec<String> = apply_derivation(e, *d, i, c)
                .into_iter()
                .filter(|((m, deg), _)| search.find_graded(m, *deg as usize).is_none())
                .map(|((m, deg), x)| format!("{x} * [{m} v^{deg}]"))
                .collect();
            if !res.is_empty() {
                residuals.push((i, e.clone(), res));
            }
        }
    }
    ClosureReport {
        holds: residuals.is_empty(),
        checked,
        residuals,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulnessWitness {
    /// `f = prod x^m v` over the purely even generators.
    pub f_exponent: Vec<u32>,
    pub f_vdegree: u32,
    pub invariant_factors: Vec<String>,
    /// For each odd direction, a sum with odd part `e_i` whose even part is
    /// inverted after localizing at `f`.
    pub odd_witnesses: Vec<Reach>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Toric { faithful: bool },
    HypothesesNotMet(Vec<String>),
    Inconclusive(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ToricCertificate {
    pub verdict: Verdict,
    pub odd_removal: OddRemovalReport,
    pub lattice: LatticeReport,
    pub reachability: Vec<Reach>,
    pub action: SuperTorusAction,
    /// Solved with the other reading, reported when the constraints differ.
    pub alternative_action: Option<SuperTorusAction>,
    pub zero_action_closure: ClosureReport,
    /// Closure for every basis vector of every parameter space.
    pub action_closure: ClosureReport,
    pub faithfulness: Option<FaithfulnessWitness>,
    pub search_bound: usize,
}

pub fn default_bound(q: usize) -> usize {
    2 * q + 2
}

pub fn certify(k: &ExponentSet, bound: Option<usize>) -> Result<ToricCertificate> {
    if k.is_empty() {
        return Err(Error::InvalidParameters("empty exponent set".into()));
    }
    let bound = bound.unwrap_or_else(|| default_bound(k.q));
    if bound == 0 {
        return Err(Error::InvalidParameters("search bound must be at least 1".into()));
    }
    let search = SumSearch::new(k, bound);
    let odd_removal = check_odd_removal(k);
    let lattice = check_even_laurent(k);
    let reachability = check_odd_reachable(k, bound);
    let action = solve_action(k, &search, Reading::Graded);
    let ungraded = solve_action(k, &search, Reading::Ungraded);
    let alternative_action = (ungraded.constraints != action.constraints).then_some(ungraded);
    let zero = vec![vec![vec![Rational::zero(); k.n + 1]; k.q]; k.q];
    let zero_action_closure = verify_derivation_closure(k, &search, &zero);
    let mut action_closure = ClosureReport {
        holds: true,
        checked: 0,
        residuals: Vec::new(),
    };
    for (&key, vecs) in &action.basis_exact {
        for v in vecs {
            let r = verify_derivation_closure(k, &search, &action.single(k.n, k.q, key, v));
            action_closure.checked += r.checked;
            action_closure.holds &= r.holds;
            action_closure.residuals.extend(r.residuals);
        }
    }

    let mut failed = Vec::new();
    if !odd_removal.holds {
        failed.push("odd removal".to_string());
    }
    if !lattice.holds {
        failed.push("even Laurent lattice".to_string());
    }
    for (i, r) in reachability.iter().enumerate() {
        if *r == Reach::Unreachable {
            failed.push(format!("odd direction {} unreachable", i + 1));
        }
    }
    let inconclusive = reachability.iter().any(|r| matches!(r, Reach::Inconclusive { .. }));
    let faithfulness = (lattice.holds && reachability.iter().all(|r| matches!(r, Reach::Witness { .. }))).then(|| {
        let mut f = vec![0u32; k.n];
        let mut fd = 0;
        for (e, d) in k.elements.iter().filter(|(e, _)| e.odd_degree() == 0) {
            for (a, b) in f.iter_mut().zip(&e.even) {
                *a += b;
            }
            fd += d;
        }
        FaithfulnessWitness {
            f_exponent: f,
            f_vdegree: fd,
            invariant_factors: lattice.invariant_factors.clone(),
            odd_witnesses: reachability.clone(),
        }
    });
    let verdict = if !failed.is_empty() {
        Verdict::HypothesesNotMet(failed)
    } else if inconclusive {
        Verdict::Inconclusive(format!("odd reachability undecided within {bound} summands"))
    } else if !action_closure.holds || !zero_action_closure.holds {
        return Err(Error::Internal("hypotheses hold but derivation closure fails".into()));
    } else {
        Verdict::Toric {
            faithful: faithfulness.is_some(),
        }
    };
    Ok(ToricCertificate {
        verdict,
        odd_removal,
        lattice,
        reachability,
        action,
        alternative_action,
        zero_action_closure,
        action_closure,
        faithfulness,
        search_bound: bound,
    })
}

/// Classical test for `q = 0`: the semigroup generated by `(m, 1)` spans a
/// full-rank lattice equal to `Z^{n+1}`.
pub fn classical_lattice_full(points: &[Vec<u32>]) -> bool {
    let rows: Vec<Vec<i64>> = points
        .iter()
        .map(|p| p.iter().map(|&x| x as i64).chain([1]).collect())
        .collect();
    !rows.is_empty() && rows_generate_full_lattice(&IntegerMatrix::from_rows(&rows))
}
