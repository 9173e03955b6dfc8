//! Exact rational linear algebra: sparse vectors, incremental span tracking,
//! kernels and Smith normal form over the integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse vector over the rationals. Zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: BTreeMap<usize, Rational>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        let mut v = Self::new();
        v.set(index, Rational::one());
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let mut v = Self::new();
        for (i, x) in values.iter().enumerate() {
            v.set(i, x.clone());
        }
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        let mut v = Self::new();
        for (i, &x) in values.iter().enumerate() {
            v.set(i, rat(x));
        }
        v
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (&i, x) in &self.entries {
            out[i] = x.clone();
        }
        out
    }

    pub fn get(&self, index: usize) -> Rational {
        self.entries.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, index: usize, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    /// `self[index] += value`
    pub fn add_at(&mut self, index: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry(index).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&index);
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, factor: &Rational, other: &SparseVector) {
        if factor.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_at(i, &(factor * x));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVector {
        if factor.is_zero() {
            return SparseVector::new();
        }
        SparseVector {
            entries: self
                .entries
                .iter()
                .map(|(&i, x)| (i, x * factor))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::zero();
        for (i, x) in small.iter() {
            if let Some(y) = large.entries.get(&i) {
                acc += x * y;
            }
        }
        acc
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, x)| (i, x.to_string())))
            .finish()
    }
}

impl std::ops::Add<&SparseVector> for &SparseVector {
    type Output = SparseVector;
    fn add(self, rhs: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl std::ops::Sub<&SparseVector> for &SparseVector {
    type Output = SparseVector;
    fn sub(self, rhs: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

/// Result of inserting a vector into a [`SpanAccumulator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    Independent,
    /// Coefficients of the inserted vector over the independent vectors
    /// accepted so far, in insertion order.
    Dependent(Vec<Rational>),
}

#[derive(Clone, Debug)]
struct EchelonRow {
    row: SparseVector,
    /// `row` as a combination of the accepted originals.
    combo: SparseVector,
}

/// Incrementally maintained echelon basis of a span.
///
/// Rows are kept keyed by pivot with unit pivot entries; every row remembers
/// how it was obtained from the accepted original vectors so dependent
/// insertions can be expanded over them.
#[derive(Clone, Debug, Default)]
pub struct SpanAccumulator {
    pivots: BTreeMap<usize, EchelonRow>,
    originals: Vec<SparseVector>,
}

impl SpanAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.originals.len()
    }

    /// Independent vectors accepted so far, in insertion order.
    pub fn originals(&self) -> &[SparseVector] {
        &self.originals
    }

    /// Pivot indices in increasing order.
    pub fn pivot_indices(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Reduces `v` against the echelon rows. Returns the residual and the
    /// combination of originals that was subtracted.
    fn reduce(&self, v: &SparseVector) -> (SparseVector, SparseVector) {
        let mut residual = v.clone();
        let mut used = SparseVector::new();
        let pivots: Vec<usize> = self.pivots.keys().copied().collect();
        for p in pivots {
            let c = residual.get(p);
            if c.is_zero() {
                continue;
            }
            let row = &self.pivots[&p];
            residual.add_scaled(&-c.clone(), &row.row);
            used.add_scaled(&c, &row.combo);
        }
        (residual, used)
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coefficients of `v` over the accepted originals, or `None` when `v`
    /// leaves the span.
    pub fn express(&self, v: &SparseVector) -> Option<Vec<Rational>> {
        let (residual, used) = self.reduce(v);
        if !residual.is_zero() {
            return None;
        }
        Some(used.to_dense(self.rank()))
    }

    pub fn insert(&mut self, v: &SparseVector) -> Insertion {
        let (residual, used) = self.reduce(v);
        if residual.is_zero() {
            return Insertion::Dependent(used.to_dense(self.rank()));
        }
        let index = self.originals.len();
        let pivot = residual.first_index().expect("nonzero residual");
        let inv = residual.get(pivot).recip();
        let mut combo = SparseVector::unit(index);
        combo.add_scaled(&-Rational::one(), &used);
        self.pivots.insert(
            pivot,
            EchelonRow {
                row: residual.scaled(&inv),
                combo: combo.scaled(&inv),
            },
        );
        self.originals.push(v.clone());
        Insertion::Independent
    }
}

/// Reduced row echelon form of dense rows; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, dim: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..dim {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right kernel `{x : row · x = 0 for every row}` in `Q^dim`.
pub fn nullspace(rows: &[SparseVector], dim: usize) -> Vec<SparseVector> {
    let mut dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_dense(dim)).collect();
    let pivots = rref(&mut dense, dim);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v = SparseVector::unit(free);
        for (r, &p) in pivots.iter().enumerate() {
            v.set(p, -dense[r][free].clone());
        }
        basis.push(v);
    }
    basis
}

/// Rank of a list of sparse vectors.
pub fn rank(rows: &[SparseVector]) -> usize {
    let mut acc = SpanAccumulator::new();
    for r in rows {
        acc.insert(r);
    }
    acc.rank()
}

/// Square sparse matrix stored by columns: `cols[j]` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            cols: vec![SparseVector::new(); dim],
        }
    }

    pub fn from_columns(dim: usize, cols: Vec<SparseVector>) -> Self {
        assert_eq!(cols.len(), dim);
        Self { dim, cols }
    }

    /// Builds from `(row, col, value)` triples.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut m = Self::zeros(dim);
        for (i, j, x) in entries {
            m.cols[j].add_at(i, &x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &SparseVector {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.cols[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVector::is_zero)
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (j, x) in v.iter() {
            out.add_scaled(x, &self.cols[j]);
        }
        out
    }

    /// `self * other`
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: &Rational, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        for (a, b) in out.cols.iter_mut().zip(&other.cols) {
            a.add_scaled(factor, b);
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            cols: self.cols.iter().map(|c| c.scaled(factor)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = Self::zeros(self.dim);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                out.cols[i].set(j, x.clone());
            }
        }
        out
    }

    /// Row-major flattening, `i * dim + j`.
    pub fn flatten(&self) -> SparseVector {
        let mut v = SparseVector::new();
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                v.set(i * self.dim + j, x.clone());
            }
        }
        v
    }

    pub fn unflatten(dim: usize, v: &SparseVector) -> SparseMatrix {
        SparseMatrix::from_entries(dim, v.iter().map(|(k, x)| (k / dim, k % dim, x.clone())))
    }

    pub fn trace_entries(&self) -> impl Iterator<Item = (usize, Rational)> + '_ {
        (0..self.dim).map(|i| (i, self.get(i, i)))
    }
}

/// Solves `rows[k] . x >= rhs[k]` over the rationals by Fourier-Motzkin
/// elimination. Returns one solution or `None` if the system is infeasible.
pub fn fourier_motzkin(rows: &[Vec<Rational>], rhs: &[Rational], vars: usize) -> Option<Vec<Rational>> {
    type Constraint = (Vec<Rational>, Rational);
    fn normalize(c: Constraint) -> Constraint {
        let scale = c.0.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
        if scale.is_zero() {
            return c;
        }
        (c.0.iter().map(|x| x / &scale).collect(), c.1 / scale)
    }
    fn dedup(cs: Vec<Constraint>) -> Vec<Constraint> {
        let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
        for (a, b) in cs.into_iter().map(normalize) {
            match best.get(&a) {
                Some(old) if *old >= b => {}
                _ => {
                    best.insert(a, b);
                }
            }
        }
        best.into_iter().collect()
    }

    let mut levels: Vec<Vec<Constraint>> = Vec::with_capacity(vars + 1);
    let mut current = dedup(rows.iter().cloned().zip(rhs.iter().cloned()).collect());
    for k in (0..vars).rev() {
        levels.push(current.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            if c.0[k].is_positive() {
                pos.push(c);
            } else if c.0[k].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                // pa/pa_k - na/na_k eliminates x_k
                let fp = pa[k].recip();
                let fnn = -na[k].recip();
                let a: Vec<Rational> = pa.iter().zip(na).map(|(x, y)| x * &fp + y * &fnn).collect();
                rest.push((a, pb * &fp + nb * &fnn));
            }
        }
        current = dedup(rest);
    }
    if current.iter().any(|(_, b)| b.is_positive()) {
        return None;
    }
    // levels[vars - 1 - k] constrains x_0..x_k
    let mut x = vec![Rational::zero(); vars];
    for k in 0..vars {
        let cs = &levels[vars - 1 - k];
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for (a, b) in cs {
            let coef = &a[k];
            if coef.is_zero() {
                continue;
            }
            let partial: Rational = (0..k).map(|i| &a[i] * &x[i]).sum();
            let bound = (b - partial) / coef;
            if coef.is_positive() {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            }
        }
        x[k] = match (lower, upper) {
            (Some(l), Some(u)) => {
                let c = l.ceil();
                if c <= u {
                    c
                } else {
                    l
                }
            }
            (Some(l), None) => l.ceil(),
            (None, Some(u)) => u.floor().min(Rational::zero()),
            (None, None) => Rational::zero(),
        };
    }
    Some(x)
}

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= f * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let d = f * self.get(src, j);
            self.data[dst * self.cols + j] -= d;
        }
    }

    /// col[dst] -= f * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let d = f * self.get(i, src);
            self.data[i * self.cols + dst] -= d;
        }
    }
}

/// Smith normal form. Returns the diagonal matrix and its nonzero invariant
/// factors `d1 | d2 | ...`, all positive.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, Vec<BigInt>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.row_axpy(i, t, &q);
                if !a.get(i, t).is_zero() {
                    a.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.col_axpy(j, t, &q);
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let pivot = a.get(t, t).clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => a.row_axpy(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            let v = -a.get(t, t).clone();
            a.set(t, t, v);
        }
        t += 1;
    }
    let diag = (0..rows.min(cols))
        .map(|i| a.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect();
    (a, diag)
}

/// True when the rows of `m` generate all of `Z^cols`.
pub fn rows_generate_full_lattice(m: &IntegerMatrix) -> bool {
    let (_, diag) = smith_normal_form(m);
    diag.len() == m.cols() && diag.iter().all(|d| d.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(x: &[i64]) -> SparseVector {
        SparseVector::from_ints(x)
    }

    #[test]
    fn span_insert_standard_basis() {
        let mut acc = SpanAccumulator::new();
        assert_eq!(acc.insert(&sv(&[1, 0])), Insertion::Independent);
        assert_eq!(acc.insert(&sv(&[0, 1])), Insertion::Independent);
        assert_eq!(acc.rank(), 2);
        assert_eq!(acc.insert(&sv(&[1, 1])), Insertion::Dependent(vec![rat(1), rat(1)]));
        assert_eq!(acc.insert(&sv(&[0, 0])), Insertion::Dependent(vec![rat(0), rat(0)]));
    }

    #[test]
    fn reinsert_gives_unit_coefficients() {
        let vs = [sv(&[2, 1, 0]), sv(&[0, 3, 1]), sv(&[1, 1, 1])];
        let mut acc = SpanAccumulator::new();
        for v in &vs {
            assert_eq!(acc.insert(v), Insertion::Independent);
        }
        for (k, v) in vs.iter().enumerate() {
            let mut expect = vec![rat(0); 3];
            expect[k] = rat(1);
            assert_eq!(acc.insert(v), Insertion::Dependent(expect));
        }
    }

    #[test]
    fn dependent_expansion_reconstructs() {
        let mut acc = SpanAccumulator::new();
        acc.insert(&sv(&[1, 2, 3]));
        acc.insert(&sv(&[0, 1, 4]));
        let target = sv(&[2, 7, 18]);
        let Insertion::Dependent(c) = acc.insert(&target) else {
            panic!("expected dependent")
        };
        let mut rebuilt = SparseVector::new();
        for (ci, o) in c.iter().zip(acc.originals()) {
            rebuilt.add_scaled(ci, o);
        }
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&[sv(&[1, -1])], 2), vec![sv(&[1, 1])]);
        assert_eq!(nullspace(&[], 3), vec![sv(&[1, 0, 0]), sv(&[0, 1, 0]), sv(&[0, 0, 1])]);
        assert!(nullspace(&[sv(&[1, 0]), sv(&[0, 1])], 2).is_empty());
    }

    #[test]
    fn snf_examples() {
        let (_, d) = smith_normal_form(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        let (_, d) = smith_normal_form(&IntegerMatrix::identity(3));
        assert_eq!(d, vec![BigInt::one(); 3]);
        let (_, d) = smith_normal_form(&IntegerMatrix::from_rows(&[vec![2]]));
        assert_eq!(d, vec![BigInt::from(2)]);
    }

    #[test]
    fn fourier_motzkin_strict_system() {
        // w1 - w0 >= 1, w0 >= 1, w2 - w1 >= 1
        let rows = vec![
            vec![rat(-1), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(-1), rat(1)],
        ];
        let rhs = vec![rat(1); 3];
        let x = fourier_motzkin(&rows, &rhs, 3).unwrap();
        for (r, b) in rows.iter().zip(&rhs) {
            let lhs: Rational = r.iter().zip(&x).map(|(a, b)| a * b).sum();
            assert!(lhs >= *b);
        }
        let bad = vec![vec![rat(1)], vec![rat(-1)]];
        assert!(fourier_motzkin(&bad, &[rat(1), rat(1)], 1).is_none());
    }

    #[test]
    fn lattice_fullness() {
        assert!(rows_generate_full_lattice(&IntegerMatrix::from_rows(&[
            vec![1, 1],
            vec![2, 1],
        ])));
        assert!(!rows_generate_full_lattice(&IntegerMatrix::from_rows(&[
            vec![2, 0],
            vec![0, 2],
            vec![2, 2],
        ])));
    }
}
