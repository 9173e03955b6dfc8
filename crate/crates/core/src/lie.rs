//! Matrix realizations of `gl(m|n)`, `sl(m|n)` and `osp(m|2n)`: homogeneous
//! bases, super brackets, root decomposition over the diagonal Cartan
//! subalgebra, Borel choices and ordered bases of the negative nilradical.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rat, Rational, SpanAccumulator, SparseMatrix, SparseVector};
use crate::superpoly::MultiExponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Gl,
    Sl,
    Osp,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "sl" => Ok(Family::Sl),
            "osp" => Ok(Family::Osp),
            _ => Err(Error::UnsupportedFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::Osp => "osp",
        })
    }
}

/// `gl(m|n)`, `sl(m|n)`, or `osp(m|2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, m: usize, n: usize) -> Self {
        Self { family, m, n }
    }

    /// Block sizes `p|q` of the defining representation.
    pub fn block_sizes(&self) -> (usize, usize) {
        match self.family {
            Family::Gl | Family::Sl => (self.m, self.n),
            Family::Osp => (self.m, 2 * self.n),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Osp => write!(f, "osp({}|{})", self.m, 2 * self.n),
            _ => write!(f, "{}({}|{})", self.family, self.m, self.n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Values `alpha(h_k)` on the Cartan basis.
    pub coords: Vec<Rational>,
    pub parity: u8,
    /// Index of the root vector in the algebra basis.
    pub basis_index: usize,
}

/// A basic Lie superalgebra in a matrix realization. The basis lists the
/// Cartan elements first, then one vector per root space.
#[derive(Clone, Debug)]
pub struct LieSuperalgebra {
    pub spec: AlgebraSpec,
    even_size: usize,
    odd_size: usize,
    basis: Vec<SparseMatrix>,
    parity: Vec<u8>,
    cartan_dim: usize,
    roots: Vec<Root>,
    brackets: Vec<Vec<SparseVector>>,
    pub warnings: Vec<String>,
}

fn unit_matrix(dim: usize, i: usize, j: usize) -> SparseMatrix {
    SparseMatrix::from_entries(dim, [(i, j, Rational::one())])
}

impl LieSuperalgebra {
    pub fn build(spec: AlgebraSpec) -> Result<Self> {
        let (p, q) = spec.block_sizes();
        let dim = p + q;
        let mut warnings = Vec::new();
        let (spanning, cartan) = match spec.family {
            Family::Gl => {
                if dim == 0 {
                    return Err(Error::InvalidParameters("gl(0|0) is empty".into()));
                }
                let span: Vec<_> = (0..dim)
                    .flat_map(|i| (0..dim).map(move |j| (i, j)))
                    .map(|(i, j)| unit_matrix(dim, i, j))
                    .collect();
                let cartan = (0..dim).map(|i| unit_matrix(dim, i, i)).collect();
                (span, cartan)
            }
            Family::Sl => {
                if dim < 2 {
                    return Err(Error::InvalidParameters(format!("{spec} needs m+n >= 2")));
                }
                if p == q {
                    warnings.push(format!("{spec}: identity matrix is central and is not quotiented out"));
                    if p == 2 {
                        warnings.push(format!("{spec}: odd roots coincide in pairs; root spaces are split by matrix position"));
                    }
                }
                let mut cartan = Vec::new();
                for i in 0..dim - 1 {
                    let sign = if i + 1 == p { rat(1) } else { rat(-1) };
                    cartan.push(SparseMatrix::from_entries(
                        dim,
                        [(i, i, rat(1)), (i + 1, i + 1, sign)],
                    ));
                }
                let mut span: Vec<_> = (0..dim)
                    .flat_map(|i| (0..dim).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| unit_matrix(dim, i, j))
                    .collect();
                span.extend(cartan.iter().cloned());
                (span, cartan)
            }
            Family::Osp => {
                if spec.m + spec.n == 0 {
                    return Err(Error::InvalidParameters("osp(0|0) is empty".into()));
                }
                if (spec.m, spec.n) == (2, 1) || (spec.m, spec.n) == (4, 1) {
                    warnings.push(format!("{spec} is excluded from the basic simple list; building anyway"));
                }
                let form = osp_form(spec.m, spec.n);
                let span = osp_spanning_set(&form, p, q);
                (span, osp_cartan(spec.m, spec.n))
            }
        };
        // in sl(n|n) distinct matrix units can share a Cartan weight
        let split_positions = spec.family == Family::Sl && p == q;
        let mut alg = Self::decompose(spec, p, q, spanning, cartan, split_positions)?;
        alg.warnings = warnings;
        Ok(alg)
    }

    fn decompose(
        spec: AlgebraSpec,
        p: usize,
        q: usize,
        spanning: Vec<SparseMatrix>,
        cartan: Vec<SparseMatrix>,
        split_positions: bool,
    ) -> Result<Self> {
        let dim = p + q;
        let par = |i: usize| u8::from(i >= p);
        let mut span_acc = SpanAccumulator::new();
        for x in &spanning {
            span_acc.insert(&x.flatten());
        }
        let total_dim = span_acc.rank();
        for h in &cartan {
            if !span_acc.contains(&h.flatten()) {
                return Err(Error::Internal(format!("Cartan element outside {spec}")));
            }
        }
        let weight_of = |i: usize, j: usize| -> Vec<Rational> {
            cartan.iter().map(|h| h.get(i, i) - h.get(j, j)).collect()
        };
        type Key = (Vec<Rational>, Option<(usize, usize)>);
        let mut groups: BTreeMap<Key, Vec<(usize, usize)>> = BTreeMap::new();
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    let key = (weight_of(i, j), split_positions.then_some((i, j)));
                    groups.entry(key).or_default().push((i, j));
                }
            }
        }
        let mut basis: Vec<SparseMatrix> = cartan.clone();
        let mut parity = vec![0u8; cartan.len()];
        let mut roots = Vec::new();
        for ((weight, _), positions) in &groups {
            let mut acc = SpanAccumulator::new();
            let mut first: Option<SparseMatrix> = None;
            for x in span_acc.originals() {
                let proj = SparseMatrix::from_entries(
                    dim,
                    positions.iter().map(|&(i, j)| (i, j, x.get(i * dim + j))),
                );
                if proj.is_zero() {
                    continue;
                }
                if acc.insert(&proj.flatten()) == crate::linalg::Insertion::Independent && first.is_none() {
                    first = Some(proj);
                }
            }
            if acc.rank() == 0 {
                continue;
            }
            if weight.iter().all(Zero::is_zero) {
                return Err(Error::Internal(format!(
                    "{spec}: off-diagonal zero-weight component; Cartan is not diagonalizable here"
                )));
            }
            if acc.rank() > 1 {
                return Err(Error::Internal(format!("{spec}: root space of dimension {}", acc.rank())));
            }
            let v = first.expect("rank one");
            let parities: Vec<u8> = positions
                .iter()
                .filter(|&&(i, j)| !v.get(i, j).is_zero())
                .map(|&(i, j)| par(i) ^ par(j))
                .collect();
            if parities.iter().any(|&x| x != parities[0]) {
                return Err(Error::Internal(format!("{spec}: inhomogeneous root vector")));
            }
            let lead = v.flatten().iter().next().map(|(_, x)| x.clone()).unwrap();
            let v = v.scaled(&lead.recip());
            roots.push(Root {
                coords: weight.clone(),
                parity: parities[0],
                basis_index: basis.len(),
            });
            parity.push(parities[0]);
            basis.push(v);
        }
        if basis.len() != total_dim {
            return Err(Error::Internal(format!(
                "{spec}: Cartan plus root spaces span {} of {} dimensions",
                basis.len(),
                total_dim
            )));
        }
        let mut alg = LieSuperalgebra {
            spec,
            even_size: p,
            odd_size: q,
            cartan_dim: cartan.len(),
            basis,
            parity,
            roots,
            brackets: Vec::new(),
            warnings: Vec::new(),
        };
        alg.brackets = alg.compute_brackets()?;
        Ok(alg)
    }

    fn compute_brackets(&self) -> Result<Vec<Vec<SparseVector>>> {
        let mut acc = SpanAccumulator::new();
        for b in &self.basis {
            acc.insert(&b.flatten());
        }
        let mut table = Vec::with_capacity(self.dim());
        for a in 0..self.dim() {
            let mut row = Vec::with_capacity(self.dim());
            for b in 0..self.dim() {
                let m = self.matrix_bracket(a, b);
                let coeffs = acc.express(&m.flatten()).ok_or_else(|| {
                    Error::Internal(format!("{}: bracket of basis {a},{b} leaves the algebra", self.spec))
                })?;
                row.push(SparseVector::from_dense(&coeffs));
            }
            table.push(row);
        }
        Ok(table)
    }

    fn matrix_bracket(&self, a: usize, b: usize) -> SparseMatrix {
        let (x, y) = (&self.basis[a], &self.basis[b]);
        let sign = self.bracket_sign(a, b);
        x.compose(y).add_scaled(&rat(-sign), &y.compose(x))
    }

    /// `(-1)^{|a||b|}`
    pub fn bracket_sign(&self, a: usize, b: usize) -> i64 {
        if self.parity[a] & self.parity[b] == 1 {
            -1
        } else {
            1
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(dim g_0, dim g_1)`
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|&&p| p == 1).count();
        (self.dim() - odd, odd)
    }

    pub fn matrix_size(&self) -> (usize, usize) {
        (self.even_size, self.odd_size)
    }

    pub fn basis(&self) -> &[SparseMatrix] {
        &self.basis
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn cartan_dim(&self) -> usize {
        self.cartan_dim
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Structure constants of `[basis_a, basis_b]`.
    pub fn bracket(&self, a: usize, b: usize) -> &SparseVector {
        &self.brackets[a][b]
    }

    /// Bracket of two arbitrary elements given in basis coordinates.
    pub fn bracket_elements(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&(ca * cb), &self.brackets[a][b]);
            }
        }
        out
    }

    /// Matrix of an element given in basis coordinates.
    pub fn element_matrix(&self, x: &SparseVector) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.even_size + self.odd_size);
        for (a, c) in x.iter() {
            m = m.add_scaled(c, &self.basis[a]);
        }
        m
    }

    /// Supertrace of a matrix in the defining realization.
    pub fn supertrace(&self, m: &SparseMatrix) -> Rational {
        m.trace_entries()
            .map(|(i, x)| if i < self.even_size { x } else { -x })
            .sum()
    }

    pub fn root_index_by_coords(&self, coords: &[Rational]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == coords)
    }

    /// Default regular element: positive roots are those of the upper
    /// triangular part for gl/sl and the distinguished system for osp.
    pub fn default_functional(&self) -> Vec<Rational> {
        let (p, q) = (self.even_size, self.odd_size);
        let dim = p + q;
        match self.spec.family {
            Family::Gl => (0..dim).map(|i| rat((dim - i) as i64)).collect(),
            Family::Sl => {
                // diag(d) with d decreasing, shifted (or last entry adjusted) to be supertraceless
                let mut d: Vec<Rational> = (0..dim).map(|i| rat((dim - i) as i64)).collect();
                let str_of = |d: &[Rational]| -> Rational {
                    d.iter()
                        .enumerate()
                        .map(|(i, x)| if i < p { x.clone() } else { -x.clone() })
                        .sum()
                };
                let s = str_of(&d);
                if p != q {
                    let shift = s / rat(q as i64 - p as i64);
                    for x in d.iter_mut() {
                        *x += &shift;
                    }
                } else {
                    d[dim - 1] += s;
                }
                // coordinates in the basis E_ii -/+ E_{i+1,i+1}
                let mut coords = Vec::with_capacity(dim - 1);
                let mut carry = Rational::zero();
                for i in 0..dim - 1 {
                    // diagonal entry i receives c_{i-1} * sign_{i-1} + c_i
                    let c = &d[i] - &carry;
                    let sign = if i + 1 == p { rat(1) } else { rat(-1) };
                    carry = &c * &sign;
                    coords.push(c);
                }
                coords
            }
            Family::Osp => {
                let l = self.spec.m / 2;
                let n = self.spec.n;
                (0..l)
                    .map(|k| rat((l - k) as i64))
                    .chain((0..n).map(|k| rat((l + n - k) as i64)))
                    .collect()
            }
        }
    }

    /// `<functional, alpha> = alpha(H)` with `H = sum functional_k h_k`.
    pub fn pair(functional: &[Rational], coords: &[Rational]) -> Rational {
        functional.iter().zip(coords).map(|(a, b)| a * b).sum()
    }
}

/// Gram matrix of the supersymmetric form: split symmetric form on the even
/// block, standard symplectic form on the odd block.
fn osp_form(m: usize, n: usize) -> SparseMatrix {
    let dim = m + 2 * n;
    let l = m / 2;
    let off = m % 2;
    let mut entries = Vec::new();
    if off == 1 {
        entries.push((0, 0, rat(1)));
    }
    for i in 0..l {
        entries.push((off + i, off + l + i, rat(1)));
        entries.push((off + l + i, off + i, rat(1)));
    }
    for i in 0..n {
        entries.push((m + i, m + n + i, rat(1)));
        entries.push((m + n + i, m + i, rat(-1)));
    }
    SparseMatrix::from_entries(dim, entries)
}

fn osp_cartan(m: usize, n: usize) -> Vec<SparseMatrix> {
    let dim = m + 2 * n;
    let l = m / 2;
    let off = m % 2;
    let mut out = Vec::new();
    for k in 0..l {
        out.push(SparseMatrix::from_entries(
            dim,
            [(off + k, off + k, rat(1)), (off + l + k, off + l + k, rat(-1))],
        ));
    }
    for k in 0..n {
        out.push(SparseMatrix::from_entries(
            dim,
            [(m + k, m + k, rat(1)), (m + n + k, m + n + k, rat(-1))],
        ));
    }
    out
}

/// Homogeneous matrices `X` with `B(Xu, w) + (-1)^{|X||u|} B(u, Xw) = 0`.
fn osp_spanning_set(form: &SparseMatrix, p: usize, q: usize) -> Vec<SparseMatrix> {
    let dim = p + q;
    let par = |i: usize| u8::from(i >= p);
    let mut out = Vec::new();
    for xpar in 0..2u8 {
        let positions: Vec<(usize, usize)> = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .filter(|&(i, j)| par(i) ^ par(j) == xpar)
            .collect();
        let mut rows = Vec::new();
        for u in 0..dim {
            for w in 0..dim {
                // (X^T B)_{uw} + s (B X)_{uw}
                let s = if xpar & par(u) == 1 { rat(-1) } else { rat(1) };
                let mut row = SparseVector::new();
                for (k, &(i, j)) in positions.iter().enumerate() {
                    // X_{ij} contributes to (X^T B)_{uw} when j == u, coefficient B_{iw}
                    if j == u {
                        row.add_at(k, &form.get(i, w));
                    }
                    // and to (B X)_{uw} when j == w, coefficient B_{ui}
                    if j == w {
                        row.add_at(k, &(&s * form.get(u, i)));
                    }
                }
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
        for v in nullspace(&rows, positions.len()) {
            out.push(SparseMatrix::from_entries(
                dim,
                v.iter().map(|(k, x)| (positions[k].0, positions[k].1, x.clone())),
            ));
        }
    }
    out
}

/// A positive system cut out by a regular element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelChoice {
    pub functional: Vec<Rational>,
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub simple: Vec<usize>,
}

pub fn choose_borel(alg: &LieSuperalgebra, functional: &[Rational]) -> Result<BorelChoice> {
    if functional.len() != alg.cartan_dim() {
        return Err(Error::InvalidParameters(format!(
            "functional has {} coordinates, Cartan has dimension {}",
            functional.len(),
            alg.cartan_dim()
        )));
    }
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (i, r) in alg.roots().iter().enumerate() {
        let v = LieSuperalgebra::pair(functional, &r.coords);
        if v.is_zero() {
            return Err(Error::DegenerateFunctional(format!("{:?}", coords_string(&r.coords))));
        }
        if v.is_positive() {
            positive.push(i);
        } else {
            negative.push(i);
        }
    }
    let roots = alg.roots();
    let simple = positive
        .iter()
        .copied()
        .filter(|&a| {
            !positive.iter().any(|&b| {
                positive.iter().any(|&c| {
                    roots[b]
                        .coords
                        .iter()
                        .zip(&roots[c].coords)
                        .map(|(x, y)| x + y)
                        .eq(roots[a].coords.iter().cloned())
                })
            })
        })
        .collect();
    Ok(BorelChoice {
        functional: functional.to_vec(),
        positive,
        negative,
        simple,
    })
}

pub fn coords_string(c: &[Rational]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Ordered basis `f_1, ..., f_{n+q}` of the negative nilradical. Position
/// `k` holds the root vector of `roots[k]` (a negative root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeBasis {
    pub roots: Vec<usize>,
    pub odd_positions: Vec<usize>,
    pub even_positions: Vec<usize>,
}

/// Height of a positive root over the simple roots.
pub fn root_height(alg: &LieSuperalgebra, borel: &BorelChoice, root: usize) -> Result<Rational> {
    let mut acc = SpanAccumulator::new();
    for &s in &borel.simple {
        acc.insert(&SparseVector::from_dense(&alg.roots()[s].coords));
    }
    let c = acc
        .express(&SparseVector::from_dense(&alg.roots()[root].coords))
        .ok_or_else(|| Error::Internal("positive root outside the span of simple roots".into()))?;
    Ok(c.into_iter().sum())
}

/// Default order of the negative roots: descending height of `-alpha`,
/// ties broken lexicographically on the coordinates of `-alpha`.
pub fn default_negative_order(alg: &LieSuperalgebra, borel: &BorelChoice) -> Result<Vec<usize>> {
    let mut keyed = Vec::new();
    for &r in &borel.negative {
        let neg: Vec<Rational> = alg.roots()[r].coords.iter().map(|x| -x).collect();
        let pos = alg
            .root_index_by_coords(&neg)
            .ok_or_else(|| Error::Internal("negative root without positive partner".into()))?;
        keyed.push((root_height(alg, borel, pos)?, neg, r));
    }
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, _, r)| r).collect())
}

/// Orders the negative roots; `permutation[k]` selects which entry of the
/// default order sits at position `k`.
pub fn negative_basis(
    alg: &LieSuperalgebra,
    borel: &BorelChoice,
    permutation: Option<&[usize]>,
) -> Result<NegativeBasis> {
    let default = default_negative_order(alg, borel)?;
    let roots: Vec<usize> = match permutation {
        None => default,
        Some(perm) => {
            let mut seen = vec![false; default.len()];
            if perm.len() != default.len() || perm.iter().any(|&i| i >= default.len() || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidParameters(format!(
                    "basis permutation {perm:?} is not a permutation of 0..{}",
                    default.len()
                )));
            }
            perm.iter().map(|&i| default[i]).collect()
        }
    };
    Ok(NegativeBasis::from_roots(alg, roots))
}

impl NegativeBasis {
    pub fn from_roots(alg: &LieSuperalgebra, roots: Vec<usize>) -> Self {
        let (mut odd_positions, mut even_positions) = (Vec::new(), Vec::new());
        for (k, &r) in roots.iter().enumerate() {
            if alg.roots()[r].parity == 1 {
                odd_positions.push(k);
            } else {
                even_positions.push(k);
            }
        }
        Self {
            roots,
            odd_positions,
            even_positions,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Number of even basis vectors.
    pub fn n(&self) -> usize {
        self.even_positions.len()
    }

    /// Number of odd basis vectors.
    pub fn q(&self) -> usize {
        self.odd_positions.len()
    }

    /// Exponent of `f_k` for every position `k`.
    pub fn positions_of(&self, e: &MultiExponent) -> Vec<u32> {
        let mut out = vec![0u32; self.len()];
        for (s, &k) in self.odd_positions.iter().enumerate() {
            out[k] = e.odd[s] as u32;
        }
        for (t, &k) in self.even_positions.iter().enumerate() {
            out[k] = e.even[t];
        }
        out
    }

    pub fn exponent_of(&self, positions: &[u32]) -> MultiExponent {
        MultiExponent::new(
            self.odd_positions.iter().map(|&k| positions[k] as u8).collect(),
            self.even_positions.iter().map(|&k| positions[k]).collect(),
        )
    }

    /// Root index for each flat coordinate (even block, then odd block).
    pub fn flat_roots(&self) -> Vec<usize> {
        self.even_positions
            .iter()
            .chain(&self.odd_positions)
            .map(|&k| self.roots[k])
            .collect()
    }

    /// Total weight shift `sum e_k * root_k` (a sum of negative roots).
    pub fn weight_shift(&self, alg: &LieSuperalgebra, e: &MultiExponent) -> Vec<Rational> {
        let mut w = vec![Rational::zero(); alg.cartan_dim()];
        for (k, &x) in self.positions_of(e).iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (a, c) in w.iter_mut().zip(&alg.roots()[self.roots[k]].coords) {
                *a += c * rat(x as i64);
            }
        }
        w
    }
}

/// Algebras we recognize by name but cannot realize.
pub fn parse_family(name: &str) -> Result<Family> {
    let lower = name.trim().to_ascii_lowercase();
    if lower.starts_with("d(2,1") || lower == "d21" || lower == "f4" || lower == "f(4)" || lower == "g3" || lower == "g(3)" {
        return Err(Error::UnsupportedFamily(format!("{name} (exceptional basic superalgebras are not realized)")));
    }
    name.parse()
}
