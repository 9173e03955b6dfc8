//! Shared setup from declarative descriptors: algebra, positive system,
//! negative basis, highest-weight realization and monomial order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{choose_borel, negative_basis, parse_family, AlgebraSpec, BorelChoice, LieSuperalgebra, NegativeBasis};
use crate::linalg::{Rational, SparseVector};
use crate::module::{cyclic_span, kron, restrict_to_span, HighestWeightRealization, PbwEvaluator, Representation};
use crate::superpoly::{MonomialOrder, OrderKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub family: String,
    pub m: usize,
    pub n: usize,
    /// Regular element on the Cartan basis, as rational strings.
    pub functional: Option<Vec<String>>,
    /// Reordering of the default negative basis.
    pub basis_perm: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorConfig {
    /// `natural` or `dual`.
    pub kind: String,
    #[serde(default = "one")]
    pub count: usize,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationConfig {
    /// Empty for the trivial module.
    #[serde(default)]
    pub factors: Vec<FactorConfig>,
    /// Highest weight on the Cartan basis; defaults to the sum of the
    /// factors' highest weights.
    pub weight: Option<Vec<String>>,
    /// Highest-weight basis index in each (expanded) factor.
    pub hw_indices: Option<Vec<usize>>,
    #[serde(default = "yes")]
    pub divided_powers: bool,
    /// Recorded in reports; typicality is not decided here.
    #[serde(default)]
    pub assume_typical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderConfig {
    /// `graded-lex`, `graded-revlex` or `weighted`.
    pub kind: String,
    pub priority: Option<Vec<usize>>,
    pub weights: Option<Vec<i64>>,
}

impl Default for OrderConfig {
    fn default() -> Self {
        Self {
            kind: "graded-lex".into(),
            priority: None,
            weights: None,
        }
    }
}

pub fn parse_rationals(values: &[String]) -> Result<Vec<Rational>> {
    values
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
        })
        .collect()
}

/// Everything downstream computations need, built once.
#[derive(Clone, Debug)]
pub struct Setup {
    pub alg: LieSuperalgebra,
    pub borel: BorelChoice,
    pub basis: NegativeBasis,
    /// The tensor product the module was cut out of.
    pub ambient: HighestWeightRealization,
    /// The cyclic module as a representation on its own basis.
    pub level_one: HighestWeightRealization,
    pub divided: bool,
    pub assume_typical: bool,
    pub warnings: Vec<String>,
}

impl Setup {
    pub fn build(algebra: &AlgebraConfig, realization: &RealizationConfig) -> Result<Self> {
        let family = parse_family(&algebra.family)?;
        let alg = LieSuperalgebra::build(AlgebraSpec::new(family, algebra.m, algebra.n))?;
        let functional = match &algebra.functional {
            Some(f) => parse_rationals(f)?,
            None => alg.default_functional(),
        };
        let borel = choose_borel(&alg, &functional)?;
        let basis = negative_basis(&alg, &borel, algebra.basis_perm.as_deref())?;
        let ambient = Self::ambient(&alg, &borel, realization)?;
        let mut eval = PbwEvaluator::new(&alg, &ambient, &basis, realization.divided_powers);
        let module = cyclic_span(&alg, &mut eval, None)?;
        let level_one = restrict_to_span(&alg, &ambient, &module, &basis)?;
        let warnings = alg.warnings.clone();
        Ok(Self {
            alg,
            borel,
            basis,
            ambient,
            level_one,
            divided: realization.divided_powers,
            assume_typical: realization.assume_typical,
            warnings,
        })
    }

    fn ambient(alg: &LieSuperalgebra, borel: &BorelChoice, cfg: &RealizationConfig) -> Result<HighestWeightRealization> {
        let nat = Representation::natural(alg);
        let mut factors = Vec::new();
        for f in &cfg.factors {
            let rep = match f.kind.as_str() {
                "natural" => nat.clone(),
                "dual" => nat.dual(alg),
                other => return Err(Error::InvalidParameters(format!("unknown representation {other:?}"))),
            };
            factors.extend(std::iter::repeat_n(rep, f.count));
        }
        if factors.is_empty() {
            return Ok(HighestWeightRealization::trivial(alg));
        }
        let rep = factors[1..].iter().fold(factors[0].clone(), |acc, r| acc.tensor(r, alg));
        if let Some(idx) = &cfg.hw_indices {
            if idx.len() != factors.len() {
                return Err(Error::InvalidParameters(format!(
                    "{} highest-weight indices for {} factors",
                    idx.len(),
                    factors.len()
                )));
            }
            let mut hw = SparseVector::unit(idx[0]);
            for (f, &i) in factors.iter().zip(idx).skip(1) {
                hw = kron(&hw, &SparseVector::unit(i), f.dim());
            }
            return HighestWeightRealization::from_vector(alg, borel, rep, hw);
        }
        let weight = match &cfg.weight {
            Some(w) => parse_rationals(w)?,
            None => {
                let mut total = vec![Rational::from_integer(0.into()); alg.cartan_dim()];
                for f in &factors {
                    let top = top_weight(alg, borel, f)?;
                    for (a, b) in total.iter_mut().zip(top) {
                        *a += b;
                    }
                }
                total
            }
        };
        if weight.len() != alg.cartan_dim() {
            return Err(Error::InvalidParameters(format!(
                "weight has {} coordinates, Cartan has dimension {}",
                weight.len(),
                alg.cartan_dim()
            )));
        }
        HighestWeightRealization::by_weight(alg, borel, rep, &weight)
    }

    pub fn module_dim(&self) -> usize {
        self.level_one.rep.dim()
    }

    pub fn vars(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self, cfg: &OrderConfig) -> Result<MonomialOrder> {
        let vars = self.vars();
        let priority = cfg.priority.clone().unwrap_or_else(|| (0..vars).collect());
        let kind = match cfg.kind.as_str() {
            "graded-lex" | "glex" => OrderKind::GradedLex,
            "graded-revlex" | "grevlex" => OrderKind::GradedRevLex,
            "weighted" => OrderKind::Weighted(
                cfg.weights
                    .clone()
                    .ok_or_else(|| Error::InvalidOrder("weighted order needs weights".into()))?,
            ),
            other => return Err(Error::InvalidOrder(format!("unknown order {other:?}"))),
        };
        if priority.len() != vars {
            return Err(Error::InvalidOrder(format!("priority has length {}, expected {vars}", priority.len())));
        }
        MonomialOrder::new(kind, priority)
    }

    pub fn evaluator(&self, level: usize) -> PbwEvaluator {
        let real = self.level_one.power(level, &self.alg);
        PbwEvaluator::new(&self.alg, &real, &self.basis, self.divided)
    }
}

/// Weight of the unique basis vector of `rep` maximizing the functional.
fn top_weight(alg: &LieSuperalgebra, borel: &BorelChoice, rep: &Representation) -> Result<Vec<Rational>> {
    let weights = rep.weights(alg)?;
    let score = |w: &Vec<Rational>| LieSuperalgebra::pair(&borel.functional, w);
    let best = weights.iter().map(score).max().unwrap();
    let tops: Vec<_> = weights.iter().filter(|w| score(w) == best).collect();
    if tops.len() != 1 {
        return Err(Error::NoHighestWeightVector("factor has no unique top weight".into()));
    }
    Ok(tops[0].clone())
}
