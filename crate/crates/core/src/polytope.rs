//! Integer points of inequality-system polytopes whose coordinates are
//! labelled by positive roots, and comparison with essential sets.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{LieSuperalgebra, NegativeBasis};
use crate::linalg::{rat, Rational};
use crate::superpoly::MultiExponent;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub name: String,
    pub odd: bool,
    /// Coordinates of the positive root on the Cartan basis.
    pub root: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    /// A bound `s_odd <= 1` on a single odd variable; left alone by dilation.
    pub odd_cap: bool,
}

/// `a . s <= b` rows, with `s >= 0` and `s_odd <= 1` implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalitySystem {
    pub vars: Vec<Variable>,
    pub rows: Vec<Inequality>,
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational> {
    let bad = || Error::Parse(format!("line {line}: bad number {tok:?}"));
    match tok.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational::new(a.into(), b.into()))
        }
        None => Ok(rat(tok.parse().map_err(|_| bad())?)),
    }
}

impl InequalitySystem {
    /// ```text
    /// var NAME even|odd c1 c2 ...
    /// a1 a2 ... <= b
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut vars = Vec::new();
        let mut raw_rows = Vec::new();
        for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "var" {
                if toks.len() < 3 {
                    return Err(Error::Parse(format!("line {ln}: expected `var NAME even|odd coords...`")));
                }
                let odd = match toks[2] {
                    "odd" => true,
                    "even" => false,
                    other => return Err(Error::Parse(format!("line {ln}: parity {other:?}"))),
                };
                let root = toks[3..].iter().map(|t| parse_rational(t, ln)).collect::<Result<_>>()?;
                if vars.iter().any(|v: &Variable| v.name == toks[1]) {
                    return Err(Error::Parse(format!("line {ln}: duplicate variable {}", toks[1])));
                }
                vars.push(Variable {
                    name: toks[1].to_string(),
                    odd,
                    root,
                });
            } else {
                let pos = toks
                    .iter()
                    .position(|&t| t == "<=")
                    .ok_or_else(|| Error::Parse(format!("line {ln}: expected `a1 ... <= b`")))?;
                if pos + 2 != toks.len() {
                    return Err(Error::Parse(format!("line {ln}: expected a single right-hand side")));
                }
                let coeffs: Vec<Rational> = toks[..pos].iter().map(|t| parse_rational(t, ln)).collect::<Result<_>>()?;
                let rhs = parse_rational(toks[pos + 1], ln)?;
                raw_rows.push((ln, coeffs, rhs));
            }
        }
        let mut rows = Vec::new();
        for (ln, coeffs, rhs) in raw_rows {
            if coeffs.len() != vars.len() {
                return Err(Error::Parse(format!(
                    "line {ln}: {} coefficients for {} variables",
                    coeffs.len(),
                    vars.len()
                )));
            }
            rows.push(Self::make_row(&vars, coeffs, rhs));
        }
        Ok(Self { vars, rows })
    }

    fn make_row(vars: &[Variable], coeffs: Vec<Rational>, rhs: Rational) -> Inequality {
        let support: Vec<usize> = (0..coeffs.len()).filter(|&i| !coeffs[i].is_zero()).collect();
        let odd_cap = support.len() == 1 && vars[support[0]].odd && coeffs[support[0]].is_positive() && rhs == coeffs[support[0]];
        Inequality { coeffs, rhs, odd_cap }
    }

    pub fn new(vars: Vec<Variable>, rows: Vec<(Vec<Rational>, Rational)>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|(c, b)| {
                if c.len() != vars.len() {
                    return Err(Error::InvalidParameters("row length differs from variable count".into()));
                }
                Ok(Self::make_row(&vars, c, b))
            })
            .collect::<Result<_>>()?;
        Ok(Self { vars, rows })
    }

    /// Right-hand sides times `k`, odd caps unchanged.
    pub fn dilate(&self, k: u32) -> Self {
        let mut out = self.clone();
        for r in out.rows.iter_mut().filter(|r| !r.odd_cap) {
            r.rhs *= rat(k as i64);
        }
        out
    }

    /// All rows including `-s_i <= 0` and the odd caps.
    fn full_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        let n = self.vars.len();
        let mut rows: Vec<(Vec<Rational>, Rational)> = self.rows.iter().map(|r| (r.coeffs.clone(), r.rhs.clone())).collect();
        for i in 0..n {
            let mut c = vec![Rational::zero(); n];
            c[i] = rat(-1);
            rows.push((c, Rational::zero()));
            if self.vars[i].odd {
                let mut c = vec![Rational::zero(); n];
                c[i] = rat(1);
                rows.push((c, rat(1)));
            }
        }
        rows
    }

    /// Upper bound of every variable, by eliminating the others.
    pub fn variable_bounds(&self) -> Result<Vec<i64>> {
        let n = self.vars.len();
        let rows = self.full_rows();
        (0..n)
            .map(|keep| {
                let projected = eliminate_except(rows.clone(), keep, n);
                let mut best: Option<Rational> = None;
                for (c, b) in &projected {
                    if c[keep].is_positive() {
                        let ub = b / &c[keep];
                        best = Some(match best {
                            Some(x) if x <= ub => x,
                            _ => ub,
                        });
                    } else if c[keep].is_zero() && b.is_negative() {
                        return Err(Error::Infeasible("inequality system has no real points".into()));
                    }
                }
                let ub = best.ok_or_else(|| Error::Unbounded(self.vars[keep].name.clone()))?;
                Ok(ub.floor().to_integer().try_into().unwrap_or(i64::MAX))
            })
            .collect()
    }

    pub fn satisfies(&self, p: &[u32]) -> bool {
        let val: Vec<Rational> = p.iter().map(|&x| rat(x as i64)).collect();
        self.full_rows()
            .iter()
            .all(|(c, b)| c.iter().zip(&val).map(|(a, x)| a * x).sum::<Rational>() <= *b)
    }

    /// Integer points, as coordinate vectors in variable order.
    pub fn enumerate_raw(&self) -> Result<Vec<Vec<u32>>> {
        let bounds = self.variable_bounds()?;
        if bounds.iter().any(|&b| b < 0) {
            return Ok(Vec::new());
        }
        let rows = self.full_rows();
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.vars.len()];
        self.walk(0, &bounds, &rows, &mut cur, &mut out);
        Ok(out)
    }

    fn walk(&self, pos: usize, bounds: &[i64], rows: &[(Vec<Rational>, Rational)], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        // rows whose remaining coefficients are all nonnegative must already hold
        for (c, b) in rows {
            if c[pos..].iter().all(|x| !x.is_negative()) {
                let partial: Rational = c[..pos].iter().zip(cur.iter()).map(|(a, &x)| a * rat(x as i64)).sum();
                if partial > *b {
                    return;
                }
            }
        }
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=bounds[pos] as u32 {
            cur[pos] = v;
            self.walk(pos + 1, bounds, rows, cur, out);
        }
        cur[pos] = 0;
    }

    /// Points as exponents: odd variables in file order form `I`, even ones `m`.
    pub fn to_exponent(&self, p: &[u32]) -> MultiExponent {
        let odd = self.vars.iter().zip(p).filter(|(v, _)| v.odd).map(|(_, &x)| x as u8).collect();
        let even = self.vars.iter().zip(p).filter(|(v, _)| !v.odd).map(|(_, &x)| x).collect();
        MultiExponent::new(odd, even)
    }

    pub fn enumerate(&self) -> Result<LatticePointSet> {
        let points = self.enumerate_raw()?;
        Ok(LatticePointSet {
            points: points.iter().map(|p| self.to_exponent(p)).collect(),
            raw: points,
        })
    }

    /// Root index (in the algebra) of the negative root `-alpha` for every variable.
    pub fn root_labels(&self, alg: &LieSuperalgebra) -> Result<Vec<usize>> {
        self.vars
            .iter()
            .map(|v| {
                let neg: Vec<Rational> = v.root.iter().map(|x| -x).collect();
                let idx = alg
                    .root_index_by_coords(&neg)
                    .ok_or_else(|| Error::Labeling(format!("{} is not labelled by a root", v.name)))?;
                if (alg.roots()[idx].parity == 1) != v.odd {
                    return Err(Error::Labeling(format!("{} has the wrong parity for its root", v.name)));
                }
                Ok(idx)
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for InequalitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vars {
            let coords: Vec<String> = v.root.iter().map(|x| x.to_string()).collect();
            writeln!(f, "var {} {} {}", v.name, if v.odd { "odd" } else { "even" }, coords.join(" "))?;
        }
        for r in &self.rows {
            let c: Vec<String> = r.coeffs.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{} <= {}", c.join(" "), r.rhs)?;
        }
        Ok(())
    }
}

/// Fourier-Motzkin elimination of every variable except `keep` from `a.x <= b`.
fn eliminate_except(mut rows: Vec<(Vec<Rational>, Rational)>, keep: usize, n: usize) -> Vec<(Vec<Rational>, Rational)> {
    for var in (0..n).filter(|&v| v != keep) {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[var].is_positive() {
                pos.push(r);
            } else if r.0[var].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for (pc, pb) in &pos {
            for (nc, nb) in &neg {
                let (lp, ln) = (-&nc[var], pc[var].clone());
                let c: Vec<Rational> = pc.iter().zip(nc).map(|(a, b)| a * &lp + b * &ln).collect();
                let b = pb * &lp + nb * &ln;
                let row = normalize(c, b);
                if !rest.contains(&row) {
                    rest.push(row);
                }
            }
        }
        rows = rest;
    }
    rows
}

fn normalize(c: Vec<Rational>, b: Rational) -> (Vec<Rational>, Rational) {
    let scale = c.iter().find(|x| !x.is_zero()).map(|x| x.abs());
    match scale {
        Some(s) => (c.iter().map(|x| x / &s).collect(), b / s),
        None => (c, b),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePointSet {
    pub points: Vec<MultiExponent>,
    pub raw: Vec<Vec<u32>>,
}

impl LatticePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sorted `(root index, exponent)` pairs per point.
    pub fn root_labelled(&self, labels: &[usize]) -> BTreeSet<Vec<(usize, u32)>> {
        self.raw
            .iter()
            .map(|p| {
                let mut v: Vec<(usize, u32)> = labels.iter().copied().zip(p.iter().copied()).filter(|&(_, x)| x > 0).collect();
                v.sort();
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PolytopeDiff {
    pub common: usize,
    pub polytope_only: Vec<Vec<(usize, u32)>>,
    pub essential_only: Vec<Vec<(usize, u32)>>,
}

impl PolytopeDiff {
    pub fn is_empty(&self) -> bool {
        self.polytope_only.is_empty() && self.essential_only.is_empty()
    }
}

pub fn compare_labelled(points: &BTreeSet<Vec<(usize, u32)>>, essential: &BTreeSet<Vec<(usize, u32)>>) -> PolytopeDiff {
    PolytopeDiff {
        common: points.intersection(essential).count(),
        polytope_only: points.difference(essential).cloned().collect(),
        essential_only: essential.difference(points).cloned().collect(),
    }
}

/// Symmetric difference between the polytope points and an essential set,
/// matched through root labels.
pub fn compare(
    alg: &LieSuperalgebra,
    system: &InequalitySystem,
    points: &LatticePointSet,
    essential: &[MultiExponent],
    basis: &NegativeBasis,
) -> Result<PolytopeDiff> {
    let labels = system.root_labels(alg)?;
    let mut label_set: Vec<usize> = labels.clone();
    label_set.sort();
    let mut basis_set = basis.roots.clone();
    basis_set.sort();
    if label_set != basis_set {
        return Err(Error::Labeling("polytope variables do not match the negative roots".into()));
    }
    let ess: BTreeSet<_> = essential
        .iter()
        .map(|e| crate::essential::root_labelled(e, basis))
        .collect();
    Ok(compare_labelled(&points.root_labelled(&labels), &ess))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex() -> InequalitySystem {
        InequalitySystem::parse("var a even 1\nvar b even 1\nvar c even 1\n1 1 1 <= 1\n").unwrap()
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(simplex().enumerate().unwrap().len(), 4);
        assert_eq!(simplex().dilate(2).enumerate().unwrap().len(), 10);
        assert_eq!(simplex().dilate(1), simplex());
    }

    #[test]
    fn origin_only() {
        let s = InequalitySystem::parse("var a even 1\n1 <= 0\n").unwrap();
        assert_eq!(s.enumerate().unwrap().raw, vec![vec![0]]);
    }

    #[test]
    fn unbounded_detected() {
        let s = InequalitySystem::parse("var a even 1\nvar b even 1\n1 -1 <= 0\n").unwrap();
        assert!(matches!(s.enumerate(), Err(Error::Unbounded(_))));
    }

    #[test]
    fn odd_caps_survive_dilation() {
        let s = InequalitySystem::parse("var d odd 1\n1 <= 1\n").unwrap();
        assert!(s.rows[0].odd_cap);
        assert_eq!(s.dilate(3).enumerate().unwrap().len(), 2);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = InequalitySystem::parse("var a even 1\n1 2 <= 3\n").unwrap_err();
        assert!(e.to_string().contains("line 2"));
    }
}
