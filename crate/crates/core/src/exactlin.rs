//! Exact sparse linear algebra over the rationals.
//!
//! Every dimension the workbench reports is the rank or nullity of some
//! rational matrix, so nothing here ever rounds. Rank uses fraction-free
//! elimination on integer-scaled rows (Bareiss on a dense copy once the fill
//! passes [`EliminationConfig::dense_fill_threshold`]); kernels and solutions
//! come from the reduced row echelon form, which makes them canonical.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

type Row = Vec<(usize, Scalar)>;
type IntRow = Vec<(usize, BigInt)>;

/// Sparse vector of fixed length with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    len: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zeros(len: usize) -> Self {
        Vector {
            len,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a vector from `(index, value)` pairs; repeated indices are summed.
    pub fn from_entries(len: usize, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Vector::zeros(len);
        for (i, x) in entries {
            v.add_to(i, &x);
        }
        v
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Vector::from_entries(values.len(), values.iter().cloned().enumerate())
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Vector::from_entries(values.len(), values.iter().map(|&x| int(x)).enumerate())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, x: Scalar) {
        assert!(i < self.len, "index {i} out of bounds for vector of length {}", self.len);
        if x.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    pub fn add_to(&mut self, i: usize, x: &Scalar) {
        assert!(i < self.len, "index {i} out of bounds for vector of length {}", self.len);
        if x.is_zero() {
            return;
        }
        let slot = self.entries.entry(i).or_insert_with(Scalar::zero);
        *slot += x;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// Sparse rational matrix with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, Scalar::one())))
    }

    /// Repeated coordinates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut m = SparseMatrix::zeros(rows, cols);
        for (r, c, x) in triplets {
            m.add_to(r, c, &x);
        }
        m
    }

    /// Dense row-major constructor; `cols` is needed for the zero-row case.
    pub fn from_dense(cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = SparseMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        SparseMatrix::from_dense(cols, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fraction of stored entries; 0 for an empty shape.
    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.entries.len() as f64 / cells as f64
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.check_index(r, c);
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, x: &Scalar) {
        self.check_index(r, c);
        if x.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_insert_with(Scalar::zero);
        *slot += x;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    fn check_index(&self, r: usize, c: usize) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds for {}x{} matrix",
            self.rows,
            self.cols
        );
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.entries.iter().map(|(&k, x)| (k, x))
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), x)| ((c, r), x.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let right = other.row_lists();
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for (c, b) in &right[k] {
                out.add_to(r, *c, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = Vector::zeros(self.rows);
        for (&(r, c), a) in &self.entries {
            if let Some(b) = v.entries.get(&c) {
                out.add_to(r, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (&(r, c), x) in &other.entries {
            out.add_to(r, c, x);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, x)| (k, x * s)).collect(),
        }
    }

    /// Commutator `AB - BA` of square matrices.
    pub fn commutator(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ab.add(&ba.scale(&int(-1)))
    }

    /// Rows as sorted `(column, value)` lists.
    pub fn row_lists(&self) -> Vec<Row> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), x) in &self.entries {
            rows[r].push((c, x.clone()));
        }
        rows
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector::from_entries(
            self.rows,
            self.entries
                .iter()
                .filter(|((_, cc), _)| *cc == c)
                .map(|(&(r, _), x)| (r, x.clone())),
        )
    }
}

/// Tuning knobs for elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct EliminationConfig {
    /// Switch to dense Bareiss elimination above this fill ratio.
    pub dense_fill_threshold: f64,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        EliminationConfig {
            dense_fill_threshold: 0.30,
        }
    }
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    rank_with(m, &EliminationConfig::default())
}

pub fn rank_with(m: &SparseMatrix, config: &EliminationConfig) -> usize {
    if m.is_zero() {
        return 0;
    }
    let rows: Vec<IntRow> = m
        .row_lists()
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| integer_row(r))
        .collect();
    if m.density() > config.dense_fill_threshold {
        dense_bareiss_rank(m.cols, rows)
    } else {
        sparse_fraction_free_rank(rows)
    }
}

/// Clears denominators and divides out the content, leading coefficient positive.
fn integer_row(row: &[(usize, Scalar)]) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect();
    normalize_int_row(&mut out);
    out
}

fn normalize_int_row(row: &mut IntRow) {
    let content = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if content.is_zero() {
        row.clear();
        return;
    }
    let flip = row[0].1.is_negative();
    for (_, x) in row.iter_mut() {
        *x = &*x / &content;
        if flip {
            *x = -&*x;
        }
    }
}

/// `a * lhs - b * rhs`, dropping zeros. Both inputs sorted by column.
fn int_combine(a: &BigInt, lhs: &IntRow, b: &BigInt, rhs: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(lhs.len() + rhs.len());
    let (mut i, mut j) = (0, 0);
    while i < lhs.len() || j < rhs.len() {
        let take_left = j >= rhs.len() || (i < lhs.len() && lhs[i].0 < rhs[j].0);
        let take_right = i >= lhs.len() || (j < rhs.len() && rhs[j].0 < lhs[i].0);
        if take_left {
            out.push((lhs[i].0, a * &lhs[i].1));
            i += 1;
        } else if take_right {
            out.push((rhs[j].0, -(b * &rhs[j].1)));
            j += 1;
        } else {
            let x = a * &lhs[i].1 - b * &rhs[j].1;
            if !x.is_zero() {
                out.push((lhs[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Fraction-free elimination with Markowitz-style pivoting: among the rows
/// sharing the smallest leading column the shortest one becomes the pivot.
fn sparse_fraction_free_rank(mut rows: Vec<IntRow>) -> usize {
    let mut rank = 0;
    while !rows.is_empty() {
        let lead = rows.iter().map(|r| r[0].0).min().expect("nonempty rows");
        let (group, rest): (Vec<IntRow>, Vec<IntRow>) =
            rows.into_iter().partition(|r| r[0].0 == lead);
        let (pivot_pos, _) = group
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .expect("group contains the leading row");
        rank += 1;
        let pivot = &group[pivot_pos];
        rows = rest;
        for (pos, row) in group.iter().enumerate() {
            if pos == pivot_pos {
                continue;
            }
            let mut reduced = int_combine(&pivot[0].1, row, &row[0].1, pivot);
            if !reduced.is_empty() {
                normalize_int_row(&mut reduced);
                rows.push(reduced);
            }
        }
    }
    rank
}

/// Classical Bareiss elimination on a dense integer copy.
fn dense_bareiss_rank(cols: usize, rows: Vec<IntRow>) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); cols];
            for (c, x) in r {
                dense[c] = x;
            }
            dense
        })
        .collect();
    let n = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// `lhs - coef * rhs`.
fn axpy(lhs: &[(usize, Scalar)], coef: &Scalar, rhs: &[(usize, Scalar)]) -> Row {
    let mut out = Vec::with_capacity(lhs.len() + rhs.len());
    let (mut i, mut j) = (0, 0);
    while i < lhs.len() || j < rhs.len() {
        let take_left = j >= rhs.len() || (i < lhs.len() && lhs[i].0 < rhs[j].0);
        let take_right = i >= lhs.len() || (j < rhs.len() && rhs[j].0 < lhs[i].0);
        if take_left {
            out.push(lhs[i].clone());
            i += 1;
        } else if take_right {
            out.push((rhs[j].0, -(coef * &rhs[j].1)));
            j += 1;
        } else {
            let x = &lhs[i].1 - coef * &rhs[j].1;
            if !x.is_zero() {
                out.push((lhs[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn row_entry(row: &[(usize, Scalar)], col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|pos| &row[pos].1)
}

/// Reduced row echelon form: pivot columns ascending, pivots equal to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedEchelon {
    cols: usize,
    pivots: Vec<(usize, Row)>,
}

impl ReducedEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vector> + '_ {
        self.pivots
            .iter()
            .map(|(_, r)| Vector::from_entries(self.cols, r.iter().cloned()))
    }
}

pub fn reduced_echelon(m: &SparseMatrix) -> ReducedEchelon {
    let mut rows: Vec<Row> = m.row_lists().into_iter().filter(|r| !r.is_empty()).collect();
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    while !rows.is_empty() {
        let lead = rows.iter().map(|r| r[0].0).min().expect("nonempty rows");
        let (group, rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| r[0].0 == lead);
        let (pivot_pos, _) = group
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .expect("group contains the leading row");
        let inv = group[pivot_pos][0].1.recip();
        let pivot: Row = group[pivot_pos]
            .iter()
            .map(|(c, x)| (*c, x * &inv))
            .collect();
        rows = rest;
        for (pos, row) in group.iter().enumerate() {
            if pos == pivot_pos {
                continue;
            }
            let reduced = axpy(row, &row[0].1, &pivot);
            if !reduced.is_empty() {
                rows.push(reduced);
            }
        }
        pivots.push((lead, pivot));
    }
    // back substitution
    for i in (0..pivots.len()).rev() {
        let (col, pivot_row) = pivots[i].clone();
        for j in 0..i {
            if let Some(c) = row_entry(&pivots[j].1, col).cloned() {
                pivots[j].1 = axpy(&pivots[j].1, &c, &pivot_row);
            }
        }
    }
    ReducedEchelon {
        cols: m.cols,
        pivots,
    }
}

/// Basis of the right null space.
///
/// One vector per non-pivot column `f` of the reduced echelon form, with a 1
/// in position `f` and zeros in the other free positions. The basis depends
/// only on the null space itself, so it is reproducible across runs.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vector> {
    let rref = reduced_echelon(m);
    let pivot_cols: std::collections::BTreeSet<usize> =
        rref.pivots.iter().map(|(c, _)| *c).collect();
    (0..m.cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = Vector::zeros(m.cols);
            v.set(free, Scalar::one());
            for (p, row) in &rref.pivots {
                if let Some(x) = row_entry(row, free) {
                    v.set(*p, -x.clone());
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &Vector) -> Result<Option<Vector>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {}x{} system",
            b.len(),
            m.rows,
            m.cols
        )));
    }
    let mut aug = SparseMatrix::zeros(m.rows, m.cols + 1);
    for (&(r, c), x) in &m.entries {
        aug.set(r, c, x.clone());
    }
    for (r, x) in b.iter() {
        aug.set(r, m.cols, x.clone());
    }
    let rref = reduced_echelon(&aug);
    if rref.pivots.iter().any(|(c, _)| *c == m.cols) {
        return Ok(None);
    }
    let mut x = Vector::zeros(m.cols);
    for (p, row) in &rref.pivots {
        if let Some(val) = row_entry(row, m.cols) {
            x.set(*p, val.clone());
        }
    }
    Ok(Some(x))
}

/// Incrementally maintained reduced echelon basis over arbitrary ordered keys.
///
/// Each stored row has its pivot at its smallest key with coefficient one,
/// and no row contains another row's pivot key. Reduction against the basis
/// is therefore a normal form: two vectors are congruent modulo the span iff
/// they reduce to the same map.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Scalar>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.rows.contains_key(key)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &BTreeMap<K, Scalar>)> {
        self.rows.iter()
    }

    /// Normal form of `v` modulo the span.
    pub fn reduce(&self, v: &BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        let hits: Vec<(&K, &Scalar)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .collect();
        let mut out: BTreeMap<K, Scalar> = v
            .iter()
            .filter(|(k, _)| !self.rows.contains_key(*k))
            .map(|(k, x)| (k.clone(), x.clone()))
            .collect();
        for (p, c) in hits {
            for (k, x) in &self.rows[p] {
                if k == p {
                    continue;
                }
                let slot = out.entry(k.clone()).or_insert_with(Scalar::zero);
                *slot -= c * x;
                if slot.is_zero() {
                    out.remove(k);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot key when `v` was independent.
    pub fn insert(&mut self, v: &BTreeMap<K, Scalar>) -> Option<K> {
        let reduced = self.reduce(v);
        let (pivot, lead) = reduced.iter().next()?;
        let pivot = pivot.clone();
        let inv = lead.recip();
        let row: BTreeMap<K, Scalar> = reduced.iter().map(|(k, x)| (k.clone(), x * &inv)).collect();
        for existing in self.rows.values_mut() {
            if let Some(c) = existing.remove(&pivot) {
                for (k, x) in &row {
                    if *k == pivot {
                        continue;
                    }
                    let slot = existing.entry(k.clone()).or_insert_with(Scalar::zero);
                    *slot -= &c * x;
                    if slot.is_zero() {
                        existing.remove(k);
                    }
                }
            }
        }
        self.rows.insert(pivot.clone(), row);
        Some(pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> SparseMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        SparseMatrix::from_i64(cols, rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&m(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        let a = m(&[
            vec![2, 4, 0, 6],
            vec![1, 2, 0, 3],
            vec![0, 0, 5, 1],
            vec![3, 0, 1, 0],
        ]);
        let sparse = rank_with(&a, &EliminationConfig { dense_fill_threshold: 1.1 });
        let dense = rank_with(&a, &EliminationConfig { dense_fill_threshold: 0.0 });
        assert_eq!(sparse, 3);
        assert_eq!(dense, 3);
        assert_eq!(reduced_echelon(&a).rank(), 3);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&m(&[vec![1, 1, 0], vec![0, 0, 1]]));
        assert_eq!(k, vec![Vector::from_i64(&[-1, 1, 0])]);
    }

    #[test]
    fn solve_examples() {
        let b = Vector::from_i64(&[4, -7]);
        assert_eq!(solve(&SparseMatrix::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&SparseMatrix::zeros(2, 2), &b).unwrap(), None);
        let x = solve(&m(&[vec![2]]), &Vector::from_i64(&[3])).unwrap().unwrap();
        assert_eq!(x.get(0), frac(3, 2));
        assert!(matches!(
            solve(&SparseMatrix::identity(2), &Vector::zeros(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rational_entries() {
        let a = SparseMatrix::from_dense(
            2,
            &[vec![frac(1, 2), frac(1, 3)], vec![frac(3, 2), int(1)]],
        );
        assert_eq!(rank(&a), 1);
        assert_eq!(kernel_basis(&a), vec![Vector::from_dense(&[frac(-2, 3), int(1)])]);
    }

    #[test]
    fn echelon_basis_normal_form() {
        let mut e: EchelonBasis<usize> = EchelonBasis::new();
        let v = |xs: &[(usize, i64)]| -> BTreeMap<usize, Scalar> {
            xs.iter().map(|&(k, x)| (k, int(x))).collect()
        };
        assert_eq!(e.insert(&v(&[(1, 2), (2, 2)])), Some(1));
        assert_eq!(e.insert(&v(&[(1, 1), (2, 1)])), None);
        assert_eq!(e.insert(&v(&[(2, 1), (3, 1)])), Some(2));
        // row for pivot 1 must no longer mention key 2
        assert!(!e.rows[&1].contains_key(&2));
        assert_eq!(e.reduce(&v(&[(1, 1)])), v(&[(3, 1)]));
        assert!(e.contains(&v(&[(1, 1), (3, -1)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn matrix_products() {
        let a = m(&[vec![1, 2], vec![0, 1]]);
        let b = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), m(&[vec![2, 1], vec![1, 0]]));
        assert_eq!(
            a.mul_vec(&Vector::from_i64(&[1, 1])).unwrap(),
            Vector::from_i64(&[3, 1])
        );
        assert_eq!(a.transpose().get(1, 0), int(2));
        assert!(a.mul(&SparseMatrix::zeros(3, 1)).is_err());
    }
}
