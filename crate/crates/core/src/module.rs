//! Concrete highest-weight modules: representations of a built algebra,
//! graded tensor products, the ordered PBW action on a highest-weight
//! vector, cyclic spans and the signed splitting of PBW monomials across a
//! tensor product.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{BorelChoice, LieSuperalgebra, NegativeBasis};
use crate::linalg::{rat, Insertion, Rational, SpanAccumulator, SparseMatrix, SparseVector};
use crate::superpoly::{koszul_sign, MultiExponent};

/// A finite-dimensional super representation: one action matrix per
/// algebra basis element.
#[derive(Clone, Debug)]
pub struct Representation {
    pub parity: Vec<u8>,
    pub action: Vec<SparseMatrix>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// `(even, odd)` dimensions of the space.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|&&p| p == 1).count();
        (self.dim() - odd, odd)
    }

    pub fn trivial(alg: &LieSuperalgebra) -> Self {
        Self {
            parity: vec![0],
            action: vec![SparseMatrix::zeros(1); alg.dim()],
        }
    }

    pub fn natural(alg: &LieSuperalgebra) -> Self {
        let (p, q) = alg.matrix_size();
        Self {
            parity: (0..p + q).map(|i| u8::from(i >= p)).collect(),
            action: alg.basis().to_vec(),
        }
    }

    /// `rho*(x)_{ij} = -(-1)^{|x||j|} x_{ji}`
    pub fn dual(&self, alg: &LieSuperalgebra) -> Self {
        let dim = self.dim();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let px = alg.parity(a);
                let t = m.transpose();
                let entries: Vec<_> = (0..dim)
                    .flat_map(|j| t.column(j).iter().map(move |(i, x)| (i, j, x.clone())))
                    .map(|(i, j, x)| {
                        let s = if px & self.parity[j] == 1 { x } else { -x };
                        (i, j, s)
                    })
                    .collect();
                SparseMatrix::from_entries(dim, entries)
            })
            .collect();
        Self {
            parity: self.parity.clone(),
            action,
        }
    }

    /// `x(v (x) w) = xv (x) w + (-1)^{|x||v|} v (x) xw`, basis index `i * dim(other) + j`.
    pub fn tensor(&self, other: &Representation, alg: &LieSuperalgebra) -> Self {
        let (d1, d2) = (self.dim(), other.dim());
        let dim = d1 * d2;
        let parity = (0..dim).map(|k| self.parity[k / d2] ^ other.parity[k % d2]).collect();
        let action = (0..alg.dim())
            .map(|a| {
                let px = alg.parity(a);
                let (x1, x2) = (&self.action[a], &other.action[a]);
                let mut cols = Vec::with_capacity(dim);
                for i in 0..d1 {
                    for j in 0..d2 {
                        let mut col = SparseVector::new();
                        for (r, c) in x1.column(i).iter() {
                            col.add_at(r * d2 + j, c);
                        }
                        let sign = if px & self.parity[i] == 1 { rat(-1) } else { rat(1) };
                        for (r, c) in x2.column(j).iter() {
                            col.add_at(i * d2 + r, &(&sign * c));
                        }
                        cols.push(col);
                    }
                }
                SparseMatrix::from_columns(dim, cols)
            })
            .collect();
        Self { parity, action }
    }

    /// Checks `rho([x,y]) = rho(x)rho(y) - (-1)^{|x||y|} rho(y)rho(x)` and
    /// that every action matrix has the parity of its algebra element.
    pub fn check_axiom(&self, alg: &LieSuperalgebra) -> Result<()> {
        for a in 0..alg.dim() {
            for (j, col) in (0..self.dim()).map(|j| (j, self.action[a].column(j))) {
                for (i, _) in col.iter() {
                    if self.parity[i] != self.parity[j] ^ alg.parity(a) {
                        return Err(Error::Internal(format!("action of basis {a} is not homogeneous")));
                    }
                }
            }
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let lhs = self.element_action(alg.bracket(a, b));
                let (x, y) = (&self.action[a], &self.action[b]);
                let rhs = x.compose(y).add_scaled(&rat(-alg.bracket_sign(a, b)), &y.compose(x));
                if lhs != rhs {
                    return Err(Error::Internal(format!("representation axiom fails on basis pair ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    /// Action matrix of an algebra element in basis coordinates.
    pub fn element_action(&self, x: &SparseVector) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim());
        for (a, c) in x.iter() {
            m = m.add_scaled(c, &self.action[a]);
        }
        m
    }

    /// Cartan weight of every basis vector; fails if the Cartan subalgebra
    /// does not act diagonally.
    pub fn weights(&self, alg: &LieSuperalgebra) -> Result<Vec<Vec<Rational>>> {
        let mut out = vec![Vec::with_capacity(alg.cartan_dim()); self.dim()];
        for h in 0..alg.cartan_dim() {
            for (j, w) in out.iter_mut().enumerate() {
                let col = self.action[h].column(j);
                if col.iter().any(|(i, _)| i != j) {
                    return Err(Error::Internal("Cartan acts non-diagonally on the representation".into()));
                }
                w.push(col.get(j));
            }
        }
        Ok(out)
    }

    /// Restriction to an invariant subspace with the given basis.
    pub fn restrict(&self, alg: &LieSuperalgebra, basis: &[SparseVector], parity: Vec<u8>) -> Result<Self> {
        let mut acc = SpanAccumulator::new();
        for v in basis {
            if acc.insert(v) != Insertion::Independent {
                return Err(Error::Internal("restriction basis is dependent".into()));
            }
        }
        let dim = basis.len();
        let mut action = Vec::with_capacity(alg.dim());
        for m in &self.action {
            let mut cols = Vec::with_capacity(dim);
            for v in basis {
                let c = acc
                    .express(&m.apply(v))
                    .ok_or_else(|| Error::Internal("subspace is not invariant".into()))?;
                cols.push(SparseVector::from_dense(&c));
            }
            action.push(SparseMatrix::from_columns(dim, cols));
        }
        Ok(Self { parity, action })
    }
}

/// Tensor product of two coordinate vectors, index `i * dim2 + j`.
pub fn kron(a: &SparseVector, b: &SparseVector, dim2: usize) -> SparseVector {
    let mut out = SparseVector::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.set(i * dim2 + j, x * y);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HighestWeightRealization {
    pub rep: Representation,
    pub hw: SparseVector,
    pub weight: Vec<Rational>,
}

impl HighestWeightRealization {
    pub fn trivial(alg: &LieSuperalgebra) -> Self {
        Self {
            rep: Representation::trivial(alg),
            hw: SparseVector::unit(0),
            weight: vec![Rational::zero(); alg.cartan_dim()],
        }
    }

    /// Validates that `hw` is even, killed by the positive nilradical and a
    /// Cartan eigenvector.
    pub fn from_vector(
        alg: &LieSuperalgebra,
        borel: &BorelChoice,
        rep: Representation,
        hw: SparseVector,
    ) -> Result<Self> {
        if hw.is_zero() {
            return Err(Error::NoHighestWeightVector("zero vector".into()));
        }
        if hw.iter().any(|(i, _)| rep.parity[i] == 1) {
            return Err(Error::NoHighestWeightVector("highest-weight vector must be even".into()));
        }
        for &r in &borel.positive {
            if !rep.action[alg.roots()[r].basis_index].apply(&hw).is_zero() {
                return Err(Error::NoHighestWeightVector("not annihilated by the positive nilradical".into()));
            }
        }
        let pivot = hw.first_index().unwrap();
        let mut weight = Vec::with_capacity(alg.cartan_dim());
        for h in 0..alg.cartan_dim() {
            let hv = rep.action[h].apply(&hw);
            let c = hv.get(pivot) / hw.get(pivot);
            if hv != hw.scaled(&c) {
                return Err(Error::NoHighestWeightVector("not a Cartan eigenvector".into()));
            }
            weight.push(c);
        }
        Ok(Self { rep, hw, weight })
    }

    /// Finds the highest-weight vector of weight `weight` as the kernel of
    /// the positive root vectors on the even part of that weight space.
    pub fn by_weight(
        alg: &LieSuperalgebra,
        borel: &BorelChoice,
        rep: Representation,
        weight: &[Rational],
    ) -> Result<Self> {
        let weights = rep.weights(alg)?;
        let support: Vec<usize> = (0..rep.dim())
            .filter(|&i| rep.parity[i] == 0 && weights[i] == weight)
            .collect();
        if support.is_empty() {
            return Err(Error::NoHighestWeightVector("weight does not occur in the even part".into()));
        }
        // rows of the stacked map sum_j c_j e_{alpha} v_{support_j}
        let mut rows: BTreeMap<(usize, usize), SparseVector> = BTreeMap::new();
        for &r in &borel.positive {
            let m = &rep.action[alg.roots()[r].basis_index];
            for (k, &j) in support.iter().enumerate() {
                for (i, x) in m.column(j).iter() {
                    rows.entry((r, i)).or_default().add_at(k, x);
                }
            }
        }
        let rows: Vec<SparseVector> = rows.into_values().filter(|v| !v.is_zero()).collect();
        let kernel = crate::linalg::nullspace(&rows, support.len());
        if kernel.len() != 1 {
            return Err(Error::NoHighestWeightVector(format!(
                "highest-weight space of the given weight has dimension {}",
                kernel.len()
            )));
        }
        let mut hw = SparseVector::new();
        for (k, x) in kernel[0].iter() {
            hw.set(support[k], x.clone());
        }
        Self::from_vector(alg, borel, rep, hw)
    }

    /// Graded tensor product; the highest-weight vector is the tensor of
    /// the factors' vectors.
    pub fn tensor(&self, other: &Self, alg: &LieSuperalgebra) -> Self {
        Self {
            rep: self.rep.tensor(&other.rep, alg),
            hw: kron(&self.hw, &other.hw, other.rep.dim()),
            weight: self.weight.iter().zip(&other.weight).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn tensor_all(factors: &[Self], alg: &LieSuperalgebra) -> Option<Self> {
        let mut it = factors.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| acc.tensor(f, alg)))
    }

    /// `k`-fold tensor power (`k = 0` gives the trivial module).
    pub fn power(&self, k: usize, alg: &LieSuperalgebra) -> Self {
        let mut acc = Self::trivial(alg);
        for _ in 0..k {
            acc = if acc.rep.dim() == 1 && acc.weight.iter().all(Zero::is_zero) {
                self.clone()
            } else {
                acc.tensor(self, alg)
            };
        }
        acc
    }
}

/// Memoized evaluation of `f^{(I,m)} v` for a fixed realization and
/// negative basis.
#[derive(Clone, Debug)]
pub struct PbwEvaluator {
    hw: SparseVector,
    weight: Vec<Rational>,
    rep_dim: usize,
    basis: NegativeBasis,
    matrices: Vec<SparseMatrix>,
    divided: bool,
    memo: HashMap<Vec<u32>, SparseVector>,
}

impl PbwEvaluator {
    pub fn new(
        alg: &LieSuperalgebra,
        real: &HighestWeightRealization,
        basis: &NegativeBasis,
        divided: bool,
    ) -> Self {
        let matrices = basis
            .roots
            .iter()
            .map(|&r| real.rep.action[alg.roots()[r].basis_index].clone())
            .collect();
        Self {
            hw: real.hw.clone(),
            weight: real.weight.clone(),
            rep_dim: real.rep.dim(),
            basis: basis.clone(),
            matrices,
            divided,
            memo: HashMap::new(),
        }
    }

    pub fn basis(&self) -> &NegativeBasis {
        &self.basis
    }

    pub fn weight(&self) -> &[Rational] {
        &self.weight
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn divided(&self) -> bool {
        self.divided
    }

    /// Weight of `f^{(I,m)} v`.
    pub fn weight_of(&self, alg: &LieSuperalgebra, e: &MultiExponent) -> Vec<Rational> {
        self.basis
            .weight_shift(alg, e)
            .iter()
            .zip(&self.weight)
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn act(&mut self, e: &MultiExponent) -> SparseVector {
        let pos = self.basis.positions_of(e);
        self.act_positions(&pos)
    }

    /// Exponents indexed by basis position; `f_N^{e_N} ... f_1^{e_1} v`.
    pub fn act_positions(&mut self, pos: &[u32]) -> SparseVector {
        let Some(k) = pos.iter().rposition(|&x| x > 0) else {
            return self.hw.clone();
        };
        if let Some(v) = self.memo.get(pos) {
            return v.clone();
        }
        let mut prev = pos.to_vec();
        prev[k] -= 1;
        let inner = self.act_positions(&prev);
        let mut v = self.matrices[k].apply(&inner);
        if self.divided && pos[k] > 1 {
            v = v.scaled(&Rational::new(1.into(), pos[k].into()));
        }
        self.memo.insert(pos.to_vec(), v.clone());
        v
    }

    /// All position vectors with nonzero PBW vector, by degree, up to the
    /// first degree where everything vanishes.
    pub fn nonzero_layers(&mut self, alg: &LieSuperalgebra, cap: u32) -> Result<Vec<Vec<Vec<u32>>>> {
        let mut layers = Vec::new();
        let mut layer = vec![vec![0u32; self.basis.len()]];
        for _ in 0..=cap {
            let nonzero: Vec<Vec<u32>> = layer
                .into_iter()
                .filter(|p| !self.act_positions(p).is_zero())
                .collect();
            if nonzero.is_empty() {
                return Ok(layers);
            }
            layer = next_layer(&nonzero, &self.basis, alg);
            layers.push(nonzero);
        }
        Err(Error::NotConverged { cap })
    }
}

pub fn pbw_act(
    alg: &LieSuperalgebra,
    real: &HighestWeightRealization,
    basis: &NegativeBasis,
    e: &MultiExponent,
    divided: bool,
) -> SparseVector {
    PbwEvaluator::new(alg, real, basis, divided).act(e)
}

/// Span of `U(n^-) v`, built one PBW degree at a time.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    /// PBW exponents (by basis position) whose vectors were independent
    /// when inserted, with those vectors.
    pub basis: Vec<(Vec<u32>, SparseVector)>,
    pub blocks: BTreeMap<Vec<Rational>, Vec<usize>>,
    /// First PBW degree at which every monomial vector vanishes or all
    /// vectors lie in the span of lower degrees.
    pub stable_degree: u32,
    /// First degree whose monomial vectors are all zero, if reached.
    pub zero_degree: Option<u32>,
}

impl CyclicModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Nonzero PBW position vectors of degree `d + 1` obtained by appending one
/// factor to the degree-`d` layer.
fn next_layer(layer: &[Vec<u32>], basis: &NegativeBasis, alg: &LieSuperalgebra) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for p in layer {
        let start = p.iter().rposition(|&x| x > 0).unwrap_or(0);
        for k in start..p.len() {
            if alg.roots()[basis.roots[k]].parity == 1 && p[k] >= 1 {
                continue;
            }
            let mut e = p.clone();
            e[k] += 1;
            out.push(e);
        }
    }
    out
}

pub fn cyclic_span(
    alg: &LieSuperalgebra,
    eval: &mut PbwEvaluator,
    degree_cap: Option<u32>,
) -> Result<CyclicModule> {
    let basis = eval.basis().clone();
    let cap = degree_cap.unwrap_or(eval.rep_dim() as u32 + 1);
    let lambda = eval.weight().to_vec();
    let mut accs: BTreeMap<Vec<Rational>, SpanAccumulator> = BTreeMap::new();
    let mut module = CyclicModule {
        basis: Vec::new(),
        blocks: BTreeMap::new(),
        stable_degree: 0,
        zero_degree: None,
    };
    let mut layer = vec![vec![0u32; basis.len()]];
    for degree in 0..=cap {
        let mut grew = false;
        let mut nonzero = Vec::new();
        for pos in &layer {
            let v = eval.act_positions(pos);
            if v.is_zero() {
                continue;
            }
            nonzero.push(pos.clone());
            let e = basis.exponent_of(pos);
            let w: Vec<Rational> = basis
                .weight_shift(alg, &e)
                .iter()
                .zip(&lambda)
                .map(|(a, b)| a + b)
                .collect();
            let acc = accs.entry(w.clone()).or_default();
            if acc.insert(&v) == Insertion::Independent {
                grew = true;
                module.blocks.entry(w).or_default().push(module.basis.len());
                module.basis.push((pos.clone(), v));
            }
        }
        if nonzero.is_empty() {
            module.zero_degree = Some(degree);
        }
        if !grew {
            module.stable_degree = degree;
            return Ok(module);
        }
        layer = next_layer(&nonzero, &basis, alg);
    }
    Err(Error::NotConverged { cap })
}

/// The cyclic module as a representation in its own right, together with
/// the coordinates of the highest-weight vector (basis vector 0).
pub fn restrict_to_span(
    alg: &LieSuperalgebra,
    real: &HighestWeightRealization,
    module: &CyclicModule,
    basis: &NegativeBasis,
) -> Result<HighestWeightRealization> {
    let vectors: Vec<SparseVector> = module.basis.iter().map(|(_, v)| v.clone()).collect();
    let parity = module
        .basis
        .iter()
        .map(|(p, _)| basis.exponent_of(p).parity())
        .collect();
    let rep = real.rep.restrict(alg, &vectors, parity)?;
    Ok(HighestWeightRealization {
        rep,
        hw: SparseVector::unit(0),
        weight: real.weight.clone(),
    })
}

/// One term `coefficient * f^{J'} v (x) f^{J''} w` of the expansion of
/// `f^{(I,m)} (v (x) w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTerm {
    pub left: MultiExponent,
    pub right: MultiExponent,
    pub coefficient: Rational,
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * rat((n - i) as i64) / rat((i + 1) as i64);
    }
    acc
}

/// All splittings `(J', m') + (J'', m'') = (I, m)` with coefficient
/// `(-1)^{K_{J',J''}}`, times binomials unless divided powers are used.
pub fn cartan_expand(e: &MultiExponent, divided: bool) -> Vec<SplitTerm> {
    let (n, q) = (e.n(), e.q());
    let mut out = Vec::new();
    let odd_choices: Vec<Vec<u8>> = e.odd.iter().map(|&x| (0..=x).collect()).collect();
    let even_choices: Vec<Vec<u32>> = e.even.iter().map(|&x| (0..=x).collect()).collect();
    let mut odd_parts = vec![Vec::with_capacity(q)];
    for c in &odd_choices {
        odd_parts = odd_parts
            .into_iter()
            .flat_map(|p| c.iter().map(move |&x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    let mut even_parts = vec![Vec::with_capacity(n)];
    for c in &even_choices {
        even_parts = even_parts
            .into_iter()
            .flat_map(|p| c.iter().map(move |&x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    for jo in &odd_parts {
        let ko: Vec<u8> = e.odd.iter().zip(jo).map(|(a, b)| a - b).collect();
        let sign = koszul_sign(jo, &ko);
        for je in &even_parts {
            let ke: Vec<u32> = e.even.iter().zip(je).map(|(a, b)| a - b).collect();
            let mut coefficient = rat(sign);
            if !divided {
                for (a, b) in e.even.iter().zip(je) {
                    coefficient *= binomial(*a, *b);
                }
            }
            out.push(SplitTerm {
                left: MultiExponent::new(jo.clone(), je.clone()),
                right: MultiExponent::new(ko.clone(), ke),
                coefficient,
            });
        }
    }
    out
}

/// Evaluates `sum coefficient * f^{J'} v (x) f^{J''} w` in the tensor of two
/// realizations.
pub fn expand_in_tensor(
    terms: &[SplitTerm],
    left: &mut PbwEvaluator,
    right: &mut PbwEvaluator,
) -> SparseVector {
    let dim2 = right.rep_dim();
    let mut out = SparseVector::new();
    for t in terms {
        let a = left.act(&t.left);
        if a.is_zero() {
            continue;
        }
        let b = right.act(&t.right);
        out.add_scaled(&t.coefficient, &kron(&a, &b, dim2));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{choose_borel, negative_basis, AlgebraSpec, Family};

    fn setup(f: Family, m: usize, n: usize) -> (LieSuperalgebra, BorelChoice, NegativeBasis) {
        let g = LieSuperalgebra::build(AlgebraSpec::new(f, m, n)).unwrap();
        let b = choose_borel(&g, &g.default_functional()).unwrap();
        let nb = negative_basis(&g, &b, None).unwrap();
        (g, b, nb)
    }

    #[test]
    fn natural_and_dual_satisfy_axiom() {
        for (f, m, n) in [(Family::Gl, 1, 1), (Family::Sl, 1, 2), (Family::Osp, 1, 1)] {
            let (g, _, _) = setup(f, m, n);
            let nat = Representation::natural(&g);
            nat.check_axiom(&g).unwrap();
            nat.dual(&g).check_axiom(&g).unwrap();
            nat.tensor(&nat.dual(&g), &g).check_axiom(&g).unwrap();
        }
    }

    #[test]
    fn trivial_module_is_one_dimensional() {
        let (g, _, nb) = setup(Family::Osp, 1, 2);
        let t = HighestWeightRealization::trivial(&g);
        let mut ev = PbwEvaluator::new(&g, &t, &nb, true);
        assert_eq!(cyclic_span(&g, &mut ev, None).unwrap().dim(), 1);
    }

    #[test]
    fn gl11_natural_is_two_dimensional() {
        let (g, b, nb) = setup(Family::Gl, 1, 1);
        let r = HighestWeightRealization::from_vector(&g, &b, Representation::natural(&g), SparseVector::unit(0)).unwrap();
        let mut ev = PbwEvaluator::new(&g, &r, &nb, true);
        let m = cyclic_span(&g, &mut ev, None).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.zero_degree, Some(2));
    }

    #[test]
    fn odd_hw_rejected() {
        let (g, b, _) = setup(Family::Gl, 1, 1);
        let r = HighestWeightRealization::from_vector(&g, &b, Representation::natural(&g), SparseVector::unit(1));
        assert!(matches!(r, Err(Error::NoHighestWeightVector(_))));
    }

    #[test]
    fn expansion_small_cases() {
        let e0 = MultiExponent::zero(1, 0);
        assert_eq!(cartan_expand(&e0, false).len(), 1);
        let e = MultiExponent::new(vec![], vec![2]);
        let c: Vec<Rational> = cartan_expand(&e, false).into_iter().map(|t| t.coefficient).collect();
        assert_eq!(c, vec![rat(1), rat(2), rat(1)]);
        let e = MultiExponent::new(vec![1, 1], vec![]);
        let terms = cartan_expand(&e, true);
        let signs: Vec<Rational> = terms.iter().map(|t| t.coefficient.clone()).collect();
        // J' = {}, {2}, {1}, {1,2}: only J'={1}, J''={2} crosses
        assert_eq!(signs, vec![rat(1), rat(1), rat(-1), rat(1)]);
    }

    #[test]
    fn osp14_fundamental_in_tensor_square() {
        let (g, b, nb) = setup(Family::Osp, 1, 2);
        let nat = Representation::natural(&g);
        let sq = nat.tensor(&nat, &g);
        let r = HighestWeightRealization::by_weight(&g, &b, sq, &[rat(1), rat(1)]).unwrap();
        let mut ev = PbwEvaluator::new(&g, &r, &nb, true);
        let m = cyclic_span(&g, &mut ev, None).unwrap();
        assert_eq!(m.dim(), 10);
        let w = restrict_to_span(&g, &r, &m, &nb).unwrap();
        w.rep.check_axiom(&g).unwrap();
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), rat(6));
        assert_eq!(binomial(3, 0), rat(1));
    }
}
