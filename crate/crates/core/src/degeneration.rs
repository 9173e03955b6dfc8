//! The algebra `R(lambda) = sum_k K(k lambda)^*` in the dual essential
//! bases: structure constants, the binomial ideal of its associated graded
//! algebra, lifts of those relations to `R(lambda)`, an integral weight
//! vector and the one-parameter family interpolating between the two.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::essential::{Decomposer, EssentialBasis, EssentialSet};
use crate::lie::{LieSuperalgebra, NegativeBasis};
use crate::linalg::{fourier_motzkin, rat, Insertion, Rational, SpanAccumulator, SparseVector};
use crate::module::{cartan_expand, HighestWeightRealization, PbwEvaluator};
use crate::superpoly::{enumerate_monomials, MonomialOrder, MultiExponent, SuperPolynomial};

/// Products `eta_a * eta_b` for `a` in `es(k1)`, `b` in `es(k2)`, as
/// sparse vectors over `es(k1 + k2)`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    pub k1: usize,
    pub k2: usize,
    pub entries: Vec<Vec<SparseVector>>,
}

/// Essential bases at levels `1..=max_level` on the tensor powers of a
/// level-one realization, with cached multiplication tables.
pub struct RingData {
    pub alg: LieSuperalgebra,
    pub order: MonomialOrder,
    pub n: usize,
    pub q: usize,
    levels: Vec<EssentialBasis>,
    tables: HashMap<(usize, usize), StructureTable>,
}

impl RingData {
    pub fn new(
        alg: &LieSuperalgebra,
        level_one: &HighestWeightRealization,
        basis: &NegativeBasis,
        order: &MonomialOrder,
        max_level: usize,
        divided: bool,
    ) -> Result<Self> {
        let mut levels = Vec::with_capacity(max_level);
        for k in 1..=max_level {
            let real = level_one.power(k, alg);
            let eval = PbwEvaluator::new(alg, &real, basis, divided);
            levels.push(EssentialBasis::compute(alg, eval, order, k, None)?);
        }
        Ok(Self {
            alg: alg.clone(),
            order: order.clone(),
            n: basis.n(),
            q: basis.q(),
            levels,
            tables: HashMap::new(),
        })
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    pub fn essential(&self, k: usize) -> &EssentialSet {
        &self.levels[k - 1].set
    }

    pub fn basis_mut(&mut self, k: usize) -> &mut EssentialBasis {
        &mut self.levels[k - 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(EssentialBasis::len).collect()
    }

    /// `c^{e''}_{a,b} = sum_{J'+J''=e''} (-1)^{K_{J',J''}} eta_b(f^{J'} v_{k2}) eta_a(f^{J''} v_{k1})`
    pub fn structure_constants(&mut self, k1: usize, k2: usize) -> Result<&StructureTable> {
        if k1 + k2 > self.max_level() {
            return Err(Error::InvalidParameters(format!(
                "level {} exceeds the computed range 1..={}",
                k1 + k2,
                self.max_level()
            )));
        }
        if !self.tables.contains_key(&(k1, k2)) {
            let table = self.compute_table(k1, k2)?;
            self.tables.insert((k1, k2), table);
        }
        Ok(&self.tables[&(k1, k2)])
    }

    fn compute_table(&mut self, k1: usize, k2: usize) -> Result<StructureTable> {
        let (d1, d2) = (self.levels[k1 - 1].len(), self.levels[k2 - 1].len());
        let divided = self.levels[k1 - 1].evaluator().divided();
        let mut entries = vec![vec![SparseVector::new(); d2]; d1];
        let targets = self.levels[k1 + k2 - 1].set.monomials.clone();
        let mut left_cache: HashMap<MultiExponent, Vec<(usize, Rational)>> = HashMap::new();
        let mut right_cache: HashMap<MultiExponent, Vec<(usize, Rational)>> = HashMap::new();
        for (t, e) in targets.iter().enumerate() {
            for term in cartan_expand(e, divided) {
                if !left_cache.contains_key(&term.left) {
                    let c = self.levels[k2 - 1].coordinates(&self.alg, &term.left)?;
                    left_cache.insert(term.left.clone(), c);
                }
                if !right_cache.contains_key(&term.right) {
                    let c = self.levels[k1 - 1].coordinates(&self.alg, &term.right)?;
                    right_cache.insert(term.right.clone(), c);
                }
                for (b, x) in &left_cache[&term.left] {
                    for (a, y) in &right_cache[&term.right] {
                        entries[*a][*b].add_at(t, &(&term.coefficient * x * y));
                    }
                }
            }
        }
        Ok(StructureTable { k1, k2, entries })
    }

    /// Product of `u` in `R_{k1}` and `v` in `R_{k2}`.
    pub fn multiply(&mut self, k1: usize, u: &SparseVector, k2: usize, v: &SparseVector) -> Result<SparseVector> {
        let table = self.structure_constants(k1, k2)?;
        let mut out = SparseVector::new();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                out.add_scaled(&(x * y), &table.entries[a][b]);
            }
        }
        Ok(out)
    }
}

/// The polynomial ring on the level-one dual basis. Generator `i` stands for
/// `es(lambda)[i]`; even generators become even variables, odd ones odd
/// variables, each block in essential order.
#[derive(Clone, Debug)]
pub struct GeneratorRing {
    pub exps: Vec<MultiExponent>,
    pub even_gens: Vec<usize>,
    pub odd_gens: Vec<usize>,
    /// `(is_odd, slot)` for every generator.
    slots: Vec<(bool, usize)>,
}

/// `(-1)^{|I|(|I|-1)/2}`, the twist identifying the associated graded
/// algebra with the monomial algebra in descending odd order.
pub fn twist_sign(e: &MultiExponent) -> i64 {
    let d = e.odd_degree() as i64;
    if (d * (d - 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

impl GeneratorRing {
    pub fn new(es1: &EssentialSet) -> Self {
        let mut even_gens = Vec::new();
        let mut odd_gens = Vec::new();
        let mut slots = Vec::new();
        for (i, e) in es1.monomials.iter().enumerate() {
            if e.parity() == 1 {
                slots.push((true, odd_gens.len()));
                odd_gens.push(i);
            } else {
                slots.push((false, even_gens.len()));
                even_gens.push(i);
            }
        }
        Self {
            exps: es1.monomials.clone(),
            even_gens,
            odd_gens,
            slots,
        }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn ns(&self) -> usize {
        self.even_gens.len()
    }

    pub fn qs(&self) -> usize {
        self.odd_gens.len()
    }

    pub fn var(&self, i: usize) -> SuperPolynomial {
        match self.slots[i] {
            (true, s) => SuperPolynomial::odd_var(self.ns(), self.qs(), s),
            (false, s) => SuperPolynomial::even_var(self.ns(), self.qs(), s),
        }
    }

    /// Monomial `x_{g_1} ... x_{g_h}` for generator indices in any order,
    /// as a signed polynomial.
    pub fn product(&self, gens: &[usize]) -> SuperPolynomial {
        let mut p = SuperPolynomial::one(self.ns(), self.qs());
        for &g in gens {
            p = p.multiply(&self.var(g)).expect("same ambient");
        }
        p
    }

    /// Generator indices of a monomial in canonical left-to-right order:
    /// odd variables descending, then even ones with multiplicity.
    pub fn factors(&self, m: &MultiExponent) -> Vec<usize> {
        let mut out = Vec::new();
        for s in (0..self.qs()).rev() {
            if m.odd[s] == 1 {
                out.push(self.odd_gens[s]);
            }
        }
        for (s, &c) in m.even.iter().enumerate() {
            out.extend(std::iter::repeat_n(self.even_gens[s], c as usize));
        }
        out
    }

    /// Uncapped sum of the generator exponents in `N^{n+q}`.
    pub fn raw_sum(&self, m: &MultiExponent) -> Vec<u32> {
        let f = self.factors(m);
        MultiExponent::raw_sum(f.iter().map(|&g| &self.exps[g]), self.exps[0].n(), self.exps[0].q())
    }

    /// Image of a canonical monomial under `x_i -> xi^{I_i} x^{m_i}`: the
    /// target monomial and sign, or `None` when odd parts collide.
    pub fn image(&self, m: &MultiExponent) -> Option<(MultiExponent, i64)> {
        let (n, q) = (self.exps[0].n(), self.exps[0].q());
        let mut acc = MultiExponent::zero(n, q);
        let mut sign = 1i64;
        for g in self.factors(m) {
            let (sum, s) = crate::superpoly::monomial_product(&acc, &self.exps[g])?;
            acc = sum;
            sign *= s;
        }
        Some((acc, sign))
    }

    /// All canonical monomials of total degree `h`.
    pub fn monomials_of_degree(&self, h: u32) -> Vec<MultiExponent> {
        let order = MonomialOrder::graded_lex(self.ns() + self.qs());
        enumerate_monomials(self.ns(), self.qs(), h, &order)
            .into_iter()
            .filter(|m| m.degree() == h)
            .collect()
    }

    pub fn even_names(&self) -> Vec<String> {
        self.even_gens.iter().map(|g| format!("x{}", g + 1)).collect()
    }

    pub fn odd_names(&self) -> Vec<String> {
        self.odd_gens.iter().map(|g| format!("xi{}", g + 1)).collect()
    }

    pub fn format(&self, p: &SuperPolynomial) -> String {
        p.format_with(&self.even_names(), &self.odd_names())
    }

    pub fn parse(&self, text: &str) -> Result<SuperPolynomial> {
        SuperPolynomial::parse_with(text, &self.even_names(), &self.odd_names())
    }

    pub fn is_odd_generator(&self, i: usize) -> bool {
        self.slots[i].0
    }
}

/// Evaluates a polynomial in the generators inside `R(lambda)` under
/// `x_i -> twist_sign(e_i) eta_i`. Returns the degree and the vector over
/// `es(h lambda)`; the polynomial must be homogeneous of positive degree.
pub fn evaluate(ring: &GeneratorRing, data: &mut RingData, p: &SuperPolynomial) -> Result<(usize, SparseVector)> {
    let mut out = SparseVector::new();
    let mut degree = None;
    for (m, c) in p.terms() {
        let (h, v) = evaluate_monomial(ring, data, m)?;
        if *degree.get_or_insert(h) != h {
            return Err(Error::InvalidParameters("polynomial is not homogeneous".into()));
        }
        out.add_scaled(c, &v);
    }
    Ok((degree.unwrap_or(0), out))
}

pub fn evaluate_monomial(ring: &GeneratorRing, data: &mut RingData, m: &MultiExponent) -> Result<(usize, SparseVector)> {
    let factors = ring.factors(m);
    let Some((&first, rest)) = factors.split_first() else {
        return Err(Error::InvalidParameters("cannot evaluate a constant".into()));
    };
    let mut acc = SparseVector::unit(first).scaled(&rat(twist_sign(&ring.exps[first])));
    let mut level = 1;
    for &g in rest {
        let gen = SparseVector::unit(g).scaled(&rat(twist_sign(&ring.exps[g])));
        acc = data.multiply(level, &acc, 1, &gen)?;
        level += 1;
    }
    Ok((level, acc))
}

/// The grading component of a relation: an essential exponent at the
/// relation's degree, or the raw exponent sum for monomials that vanish in
/// the associated graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Component {
    Essential(MultiExponent),
    Bottom(Vec<u32>),
}

impl Component {
    pub fn flat(&self) -> Vec<u32> {
        match self {
            Component::Essential(e) => e.flat(),
            Component::Bottom(raw) => raw.clone(),
        }
    }

    fn is_below(&self, u: &MultiExponent, order: &MonomialOrder) -> bool {
        match self {
            Component::Essential(j) => order.compare(j, u) == Ordering::Less,
            Component::Bottom(raw) => order.compare_flat(raw, &u.flat()) == Ordering::Less,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Correction {
    pub component: MultiExponent,
    pub poly: SuperPolynomial,
}

#[derive(Clone, Debug)]
pub struct GradedRelation {
    pub degree: u32,
    pub lead: SuperPolynomial,
    pub component: Component,
    /// Lead is `M - (-1)^sigma M'`; zero for pure monomials.
    pub sigma: u8,
    pub corrections: Vec<Correction>,
}

impl GradedRelation {
    pub fn is_binomial(&self) -> bool {
        matches!(self.component, Component::Essential(_))
    }

    /// Lead plus all corrections.
    pub fn full(&self) -> SuperPolynomial {
        self.corrections
            .iter()
            .fold(self.lead.clone(), |acc, c| acc.add(&c.poly).expect("same ambient"))
    }
}

/// Degree-`h` kernel of the monomial map, one component at a time: signed
/// binomials within each image, and every monomial whose image vanishes.
pub fn gr_relations_of_degree(ring: &GeneratorRing, h: u32) -> Vec<GradedRelation> {
    let mut by_image: BTreeMap<MultiExponent, Vec<(MultiExponent, i64)>> = BTreeMap::new();
    let mut out = Vec::new();
    for m in ring.monomials_of_degree(h) {
        match ring.image(&m) {
            Some((img, s)) => by_image.entry(img).or_default().push((m, s)),
            None => out.push(GradedRelation {
                degree: h,
                lead: SuperPolynomial::monomial(m.clone(), Rational::one()),
                component: Component::Bottom(ring.raw_sum(&m)),
                sigma: 0,
                corrections: Vec::new(),
            }),
        }
    }
    let mut binomials = Vec::new();
    for (img, fiber) in by_image {
        let (m1, s1) = &fiber[0];
        for (mj, sj) in &fiber[1..] {
            let sign = s1 * sj;
            let lead = SuperPolynomial::monomial(mj.clone(), Rational::one())
                .sub(&SuperPolynomial::monomial(m1.clone(), rat(sign)))
                .expect("same ambient");
            binomials.push(GradedRelation {
                degree: h,
                lead,
                component: Component::Essential(img.clone()),
                sigma: u8::from(sign < 0),
                corrections: Vec::new(),
            });
        }
    }
    binomials.extend(out);
    binomials
}

/// Leads of the associated graded ideal in degrees `2..=degree_bound`.
pub fn gr_ideal(ring: &GeneratorRing, degree_bound: u32) -> Vec<GradedRelation> {
    (2..=degree_bound).flat_map(|h| gr_relations_of_degree(ring, h)).collect()
}

/// Rewrites each lead into an exact relation of `R(lambda)` by repeatedly
/// cancelling the smallest surviving dual basis vector with a product of
/// generators that has it as leading term.
pub fn lift_relations(
    ring: &GeneratorRing,
    data: &mut RingData,
    leads: &[GradedRelation],
) -> Result<Vec<GradedRelation>> {
    let es1 = data.essential(1).monomials.clone();
    let mut dec = Decomposer::new(&es1);
    let mut out = Vec::with_capacity(leads.len());
    for rel in leads {
        let h = rel.degree as usize;
        let (_, mut rem) = evaluate(ring, data, &rel.lead)?;
        let mut corrections: BTreeMap<MultiExponent, SuperPolynomial> = BTreeMap::new();
        while !rem.is_zero() {
            let es_h = data.essential(h).monomials.clone();
            let (j, rj) = rem
                .iter()
                .min_by(|(a, _), (b, _)| data.order.compare(&es_h[*a], &es_h[*b]))
                .map(|(j, x)| (j, x.clone()))
                .unwrap();
            let u = es_h[j].clone();
            if !rel.component.is_below(&u, &data.order) {
                return Err(Error::Internal(format!(
                    "lift of degree-{h} relation meets {u}, not above its component"
                )));
            }
            let parts = dec.decompose(&u, h).ok_or_else(|| {
                Error::Internal(format!("{u} at level {h} is not a sum of level-one essentials"))
            })?;
            let gens: Vec<usize> = parts.iter().map(|p| es1.iter().position(|e| e == p).unwrap()).collect();
            let mono = ring.product(&gens);
            let (_, val) = evaluate(ring, data, &mono)?;
            let lc = val.get(j);
            if lc.is_zero() {
                return Err(Error::Internal(format!("product for {u} has no leading term")));
            }
            for (i, _) in val.iter() {
                if i != j && data.order.compare(&es_h[i], &u) != Ordering::Greater {
                    return Err(Error::Internal(format!("product for {u} has terms below it")));
                }
            }
            let f = -(rj / lc);
            rem.add_scaled(&f, &val);
            let entry = corrections
                .entry(u)
                .or_insert_with(|| SuperPolynomial::zero(ring.ns(), ring.qs()));
            *entry = entry.add(&mono.scale(&f))?;
        }
        let mut lifted = rel.clone();
        lifted.corrections = corrections
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(component, poly)| Correction { component, poly })
            .collect();
        out.push(lifted);
    }
    Ok(out)
}

/// Differences `U - J` (flat) that the weight vector must pair positively with.
pub fn weight_constraints(relations: &[GradedRelation]) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for rel in relations {
        let j = rel.component.flat();
        for c in &rel.corrections {
            let row: Vec<i64> = c
                .component
                .flat()
                .iter()
                .zip(&j)
                .map(|(&u, &v)| u as i64 - v as i64)
                .collect();
            if !rows.contains(&row) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Integral `w` (even block first, then odd) with `w(U) > w(J)` for every
/// correction, primitive and found by Fourier-Motzkin elimination.
pub fn find_weight_vector(relations: &[GradedRelation], vars: usize) -> Result<Vec<i64>> {
    let rows = weight_constraints(relations);
    if rows.is_empty() {
        return Ok(vec![0; vars]);
    }
    let rat_rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let rhs = vec![Rational::one(); rows.len()];
    let sol = fourier_motzkin(&rat_rows, &rhs, vars)
        .ok_or_else(|| Error::Infeasible("no weight vector separates the corrections".into()))?;
    let lcm = sol.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = sol.iter().map(|x| (x * Rational::from(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let w: Vec<i64> = ints
        .iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            y.to_i64().ok_or_else(|| Error::Internal("weight vector overflows i64".into()))
        })
        .collect::<Result<_>>()?;
    for r in &rows {
        if r.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() <= 0 {
            return Err(Error::Internal("weight vector violates a constraint".into()));
        }
    }
    Ok(w)
}

fn pair(w: &[i64], v: &[u32]) -> i64 {
    w.iter().zip(v).map(|(&a, &b)| a * b as i64).sum()
}

/// A generator of the family ideal: `lead + sum t^{e_j} g_j`.
#[derive(Clone, Debug)]
pub struct FamilyGenerator {
    pub degree: u32,
    pub lead: SuperPolynomial,
    /// `w` of the lead's component.
    pub base_weight: i64,
    pub corrections: Vec<(u32, SuperPolynomial)>,
}

impl FamilyGenerator {
    pub fn specialize(&self, a: &Rational) -> SuperPolynomial {
        let mut p = self.lead.clone();
        for (e, g) in &self.corrections {
            p = p.add(&g.scale(&pow(a, *e))).expect("same ambient");
        }
        p
    }

    pub fn format(&self, ring: &GeneratorRing) -> String {
        let mut s = ring.format(&self.lead);
        for (e, g) in &self.corrections {
            let t = if *e == 1 { "t".to_string() } else { format!("t^{e}") };
            s.push_str(&format!(" + {t}*({})", ring.format(g)));
        }
        s
    }
}

pub fn pow(a: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= a;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct DegenerationFamily {
    pub weight: Vec<i64>,
    pub degree_bound: u32,
    pub generators: Vec<FamilyGenerator>,
    /// Binomial relations inside the largest component of each degree.
    pub exchange: BTreeMap<u32, Vec<SuperPolynomial>>,
}

impl DegenerationFamily {
    pub fn all_generators(&self) -> Vec<FamilyGenerator> {
        let mut out = self.generators.clone();
        for (&h, polys) in &self.exchange {
            for p in polys {
                out.push(FamilyGenerator {
                    degree: h,
                    lead: p.clone(),
                    base_weight: 0,
                    corrections: Vec::new(),
                });
            }
        }
        out
    }

    pub fn to_text(&self, ring: &GeneratorRing) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&g.format(ring));
            s.push('\n');
        }
        for (h, polys) in &self.exchange {
            for p in polys {
                s.push_str(&format!("{}  # exchange h={h}\n", ring.format(p)));
            }
        }
        s
    }
}

pub fn family_ideal(
    ring: &GeneratorRing,
    data: &RingData,
    relations: &[GradedRelation],
    weight: &[i64],
    degree_bound: u32,
) -> Result<DegenerationFamily> {
    let mut generators = Vec::with_capacity(relations.len());
    for rel in relations {
        let base = pair(weight, &rel.component.flat());
        let mut corrections = Vec::new();
        for c in &rel.corrections {
            let e = pair(weight, &c.component.flat()) - base;
            if e < 1 {
                return Err(Error::Internal(format!("t-exponent {e} is not positive")));
            }
            corrections.push((e as u32, c.poly.clone()));
        }
        generators.push(FamilyGenerator {
            degree: rel.degree,
            lead: rel.lead.clone(),
            base_weight: base,
            corrections,
        });
    }
    let mut exchange = BTreeMap::new();
    for h in 2..=degree_bound.min(data.max_level() as u32) {
        let top = data.essential(h as usize).monomials.last().cloned();
        let polys: Vec<SuperPolynomial> = gr_relations_of_degree(ring, h)
            .into_iter()
            .filter(|r| matches!(&r.component, Component::Essential(j) if Some(j) == top.as_ref()))
            .map(|r| r.lead)
            .collect();
        exchange.insert(h, polys);
    }
    Ok(DegenerationFamily {
        weight: weight.to_vec(),
        degree_bound,
        generators,
        exchange,
    })
}

#[derive(Clone, Debug)]
pub struct FiberPresentation {
    pub value: Rational,
    pub relations: Vec<SuperPolynomial>,
}

pub fn specialize(family: &DegenerationFamily, a: &Rational) -> FiberPresentation {
    FiberPresentation {
        value: a.clone(),
        relations: family.all_generators().iter().map(|g| g.specialize(a)).collect(),
    }
}

/// Substitutes `x_i -> a^{-w(e_i)} x_i`.
pub fn rescale(ring: &GeneratorRing, weight: &[i64], p: &SuperPolynomial, a: &Rational) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero(ring.ns(), ring.qs());
    for (m, c) in p.terms() {
        let w = pair(weight, &ring.raw_sum(m));
        let f = if w >= 0 {
            pow(a, w as u32).recip()
        } else {
            pow(a, (-w) as u32)
        };
        out.add_term(m.clone(), &(c * f));
    }
    out
}

/// Dimension of the degree-`h` part of the quotient by the given relations.
pub fn fiber_dimension(ring: &GeneratorRing, relations: &[SuperPolynomial], h: u32) -> usize {
    let monos = ring.monomials_of_degree(h);
    let index: HashMap<&MultiExponent, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut acc = SpanAccumulator::new();
    for g in relations {
        let Some((m0, _)) = g.terms().next() else { continue };
        let d = m0.degree();
        if d > h {
            continue;
        }
        for mult in ring.monomials_of_degree(h - d) {
            let prod = SuperPolynomial::monomial(mult, Rational::one())
                .multiply(g)
                .expect("same ambient");
            let mut v = SparseVector::new();
            for (m, c) in prod.terms() {
                v.add_at(index[m], c);
            }
            if !v.is_zero() && acc.insert(&v) == Insertion::Independent && acc.rank() == monos.len() {
                return 0;
            }
        }
    }
    monos.len() - acc.rank()
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertRow {
    pub sample: String,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub expected: Vec<usize>,
    pub rows: Vec<HilbertRow>,
    pub passed: bool,
}

/// Degree-`0..=degree_bound` dimensions of every sampled fiber against
/// `|es(h lambda)|`.
pub fn hilbert_check(
    ring: &GeneratorRing,
    family: &DegenerationFamily,
    samples: &[Rational],
    expected: &[usize],
    degree_bound: u32,
) -> HilbertReport {
    let mut rows = Vec::new();
    let mut passed = true;
    for a in samples {
        let fiber = specialize(family, a);
        let dims: Vec<usize> = (0..=degree_bound)
            .map(|h| if h == 0 { 1 } else { fiber_dimension(ring, &fiber.relations, h) })
            .collect();
        for (h, d) in dims.iter().enumerate() {
            let want = if h == 0 { 1 } else { expected.get(h - 1).copied().unwrap_or(usize::MAX) };
            if *d != want {
                passed = false;
            }
        }
        rows.push(HilbertRow {
            sample: a.to_string(),
            dims,
        });
    }
    let mut exp = vec![1];
    exp.extend(expected.iter().take(degree_bound as usize).copied());
    HilbertReport {
        expected: exp,
        rows,
        passed,
    }
}

/// Lead coefficient check for one table: for every compatible pair the
/// coefficient at the sum is `(-1)^{K_{I',I}}` and everything below it vanishes.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StraighteningReport {
    pub pairs: usize,
    pub failures: Vec<String>,
}

pub fn check_straightening(data: &mut RingData, k1: usize, k2: usize) -> Result<StraighteningReport> {
    let es1 = data.essential(k1).monomials.clone();
    let es2 = data.essential(k2).monomials.clone();
    let es_sum = data.essential(k1 + k2).monomials.clone();
    let order = data.order.clone();
    let table = data.structure_constants(k1, k2)?.clone();
    let mut report = StraighteningReport::default();
    for (a, ea) in es1.iter().enumerate() {
        for (b, eb) in es2.iter().enumerate() {
            let Some(sum) = ea.checked_add(eb) else { continue };
            report.pairs += 1;
            let want = rat(crate::superpoly::koszul_sign(&eb.odd, &ea.odd));
            let v = &table.entries[a][b];
            let Some(t) = es_sum.iter().position(|e| *e == sum) else {
                report.failures.push(format!("{ea} + {eb} is not essential"));
                continue;
            };
            if v.get(t) != want {
                report.failures.push(format!("{ea} * {eb}: lead {} != {want}", v.get(t)));
            }
            for (i, x) in v.iter() {
                if order.compare(&es_sum[i], &sum) == Ordering::Less && !x.is_zero() {
                    report.failures.push(format!("{ea} * {eb}: nonzero below the sum at {}", es_sum[i]));
                }
            }
        }
    }
    Ok(report)
}

/// `eta_a eta_b = (-1)^{|a||b|} eta_b eta_a` on the degree-(k, k) table.
pub fn check_commutativity(data: &mut RingData, k: usize) -> Result<Vec<(usize, usize)>> {
    let es = data.essential(k).monomials.clone();
    let table = data.structure_constants(k, k)?.clone();
    let mut bad = Vec::new();
    for a in 0..es.len() {
        for b in 0..es.len() {
            let s = if es[a].parity() & es[b].parity() == 1 { rat(-1) } else { rat(1) };
            if table.entries[a][b] != table.entries[b][a].scaled(&s) {
                bad.push((a, b));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(monomials: Vec<MultiExponent>) -> EssentialSet {
        EssentialSet {
            level: 1,
            order: String::new(),
            monomials,
        }
    }

    #[test]
    fn free_semigroup_has_no_relations() {
        let free = GeneratorRing::new(&es(vec![
            MultiExponent::new(vec![], vec![1, 0]),
            MultiExponent::new(vec![], vec![0, 1]),
        ]));
        assert!(gr_ideal(&free, 3).is_empty());
    }

    #[test]
    fn classic_binomial() {
        let ring = GeneratorRing::new(&es(vec![
            MultiExponent::new(vec![], vec![0]),
            MultiExponent::new(vec![], vec![1]),
            MultiExponent::new(vec![], vec![2]),
        ]));
        let rels = gr_relations_of_degree(&ring, 2);
        assert_eq!(rels.len(), 1);
        assert_eq!(ring.format(&rels[0].lead), "x1*x3 - x2^2");
    }

    #[test]
    fn odd_overlap_gives_monomial() {
        let ring = GeneratorRing::new(&es(vec![
            MultiExponent::new(vec![1], vec![0]),
            MultiExponent::new(vec![1], vec![1]),
        ]));
        let rels = gr_relations_of_degree(&ring, 2);
        assert_eq!(rels.len(), 1);
        assert!(!rels[0].is_binomial());
    }

    #[test]
    fn single_constraint_weight() {
        let rel = GradedRelation {
            degree: 2,
            lead: SuperPolynomial::zero(0, 0),
            component: Component::Essential(MultiExponent::new(vec![], vec![0, 0])),
            sigma: 0,
            corrections: vec![Correction {
                component: MultiExponent::new(vec![], vec![1, 0]),
                poly: SuperPolynomial::zero(0, 0),
            }],
        };
        assert_eq!(find_weight_vector(&[rel], 2).unwrap(), vec![1, 0]);
        assert_eq!(find_weight_vector(&[], 3).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn twist_signs() {
        let e = |k: usize| MultiExponent::new((0..4).map(|i| u8::from(i < k)).collect(), vec![]);
        let signs: Vec<i64> = (0..5).map(|k| twist_sign(&e(k))).collect();
        assert_eq!(signs, vec![1, 1, -1, -1, 1]);
    }
}
