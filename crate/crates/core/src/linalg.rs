//! Exact linear algebra: dense and sparse elimination over a [`Field`],
//! fraction-free (Bareiss) rank over an integer ring, and integer solving via
//! unimodular column reduction.

use std::collections::BTreeMap;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::Signed;

use crate::scalar::Field;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduces `m` to reduced row echelon form in place and returns the pivot
/// columns. Pivots are taken as the first nonzero entry at or below the
/// current row, so the result is deterministic.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = F::one() / m[(r, c)].clone();
        for j in c..m.cols {
            let v = m[(r, j)].clone() * inv.clone();
            m[(r, j)] = v;
        }
        for i in 0..m.rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..m.cols {
                if m[(r, j)].is_zero() {
                    continue;
                }
                let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                m[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of the right nullspace `{x : m x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut e = m.clone();
    let pivots = rref(&mut e);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![F::zero(); m.cols];
            x[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -e[(r, free)].clone();
            }
            x
        })
        .collect()
}

/// A solution of `m x = b` with all free variables set to zero, or `None` if
/// the system is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let mut aug = Matrix::filled(m.rows, m.cols + 1, F::zero());
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols)] = b[r].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![F::zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[(r, m.cols)].clone();
    }
    Some(x)
}

/// Sparse row, sorted by column, with no stored zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Incremental row echelon form over a field for sparse rows.
///
/// Each stored row is normalized to leading coefficient one. Inserting a row
/// reduces it against the stored pivots; a nonzero remainder becomes a new
/// pivot row.
#[derive(Debug, Clone)]
pub struct SparseEchelon<F> {
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        SparseEchelon { pivots: BTreeMap::new() }
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; the result has no entry in a
    /// pivot column.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut start = 0;
        loop {
            let Some(k) = row[start..]
                .iter()
                .position(|(c, _)| self.pivots.contains_key(c))
                .map(|k| k + start)
            else {
                return row;
            };
            let (col, factor) = row[k].clone();
            let prow = &self.pivots[&col];
            row = axpy(&row, &factor, prow);
            start = k;
        }
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let row = self.reduce(row);
        let Some((lead, coeff)) = row.first().cloned() else {
            return false;
        };
        let inv = F::one() / coeff;
        let row = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
        self.pivots.insert(lead, row);
        true
    }
}

/// `row - factor * other`, merging sorted sparse rows.
fn axpy<F: Field>(row: &[(usize, F)], factor: &F, other: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j == other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i == row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, -(factor.clone() * other[j].1.clone())));
            j += 1;
        } else {
            let v = row[i].1.clone() - factor.clone() * other[j].1.clone();
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact rank over an integer ring by fraction-free Bareiss elimination.
pub fn bareiss_rank<T>(mut m: Matrix<T>) -> usize
where
    T: Integer + Signed + Clone,
{
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, pr);
        let pivot = m[(r, c)].clone();
        for i in r + 1..m.rows {
            let lead = m[(i, c)].clone();
            for j in c + 1..m.cols {
                let v = (pivot.clone() * m[(i, j)].clone() - lead.clone() * m[(r, j)].clone())
                    / prev.clone();
                m[(i, j)] = v;
            }
            m[(i, c)] = T::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Column-echelon form `A U = H` with `U` unimodular.
///
/// `pivots[k] = (row, column k)`: column `k` of `H` has its first nonzero entry
/// in `row`; columns `pivots.len()..` of `H` are zero, so the matching columns
/// of `U` form a lattice basis of the integer kernel of `A`.
#[derive(Debug, Clone)]
pub struct ColumnEchelon<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T> ColumnEchelon<T>
where
    T: Integer + Signed + Clone,
{
    pub fn new(a: &Matrix<T>) -> Self {
        let n = a.cols;
        let mut h = a.clone();
        let mut u = Matrix::filled(n, n, T::zero());
        for i in 0..n {
            u[(i, i)] = T::one();
        }
        let mut pivots = Vec::new();
        let mut k = 0;
        for row in 0..a.rows {
            if k == n {
                break;
            }
            // fold every column right of k into column k by extended gcd steps
            for j in k + 1..n {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let a0 = h[(row, k)].clone();
                let b0 = h[(row, j)].clone();
                let g = a0.extended_gcd(&b0);
                let (s, t) = (g.x, g.y);
                let (ag, bg) = (a0 / g.gcd.clone(), b0 / g.gcd);
                column_combine(&mut h, k, j, &s, &t, &ag, &bg);
                column_combine(&mut u, k, j, &s, &t, &ag, &bg);
            }
            if h[(row, k)].is_zero() {
                continue;
            }
            if h[(row, k)].is_negative() {
                negate_column(&mut h, k);
                negate_column(&mut u, k);
            }
            // keep entries left of the pivot reduced to limit growth
            let piv = h[(row, k)].clone();
            for c in 0..k {
                let q = h[(row, c)].div_floor(&piv);
                if !q.is_zero() {
                    column_sub(&mut h, c, k, &q);
                    column_sub(&mut u, c, k, &q);
                }
            }
            pivots.push(row);
            k += 1;
        }
        ColumnEchelon { h, u, pivots }
    }

    /// Integer solution of `A x = b`, or `None` if none exists.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let n = self.u.cols;
        assert_eq!(b.len(), self.h.rows, "right-hand side length");
        let mut y = vec![T::zero(); n];
        let mut next = 0;
        for (row, target) in b.iter().enumerate() {
            let known = next;
            let mut acc = T::zero();
            for (c, yc) in y.iter().enumerate().take(known) {
                acc = acc + self.h[(row, c)].clone() * yc.clone();
            }
            if next < self.pivots.len() && self.pivots[next] == row {
                let diff = target.clone() - acc;
                let (q, r) = diff.div_rem(&self.h[(row, next)]);
                if !r.is_zero() {
                    return None;
                }
                y[next] = q;
                next += 1;
            } else if acc != *target {
                return None;
            }
        }
        let x = (0..n)
            .map(|i| {
                (0..self.pivots.len())
                    .fold(T::zero(), |s, k| s + self.u[(i, k)].clone() * y[k].clone())
            })
            .collect();
        Some(x)
    }

    /// Lattice basis of `{x in Z^n : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        (self.pivots.len()..self.u.cols)
            .map(|k| (0..self.u.rows).map(|i| self.u[(i, k)].clone()).collect())
            .collect()
    }
}

/// `(col_k, col_j) <- (s col_k + t col_j, -bg col_k + ag col_j)`; unimodular
/// because `s ag + t bg = 1`.
fn column_combine<T: Integer + Clone>(
    m: &mut Matrix<T>,
    k: usize,
    j: usize,
    s: &T,
    t: &T,
    ag: &T,
    bg: &T,
) {
    for r in 0..m.rows {
        let (x, y) = (m[(r, k)].clone(), m[(r, j)].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(r, k)] = s.clone() * x.clone() + t.clone() * y.clone();
        m[(r, j)] = ag.clone() * y - bg.clone() * x;
    }
}

fn column_sub<T: Integer + Clone>(m: &mut Matrix<T>, c: usize, k: usize, q: &T) {
    for r in 0..m.rows {
        if m[(r, k)].is_zero() {
            continue;
        }
        let v = m[(r, c)].clone() - q.clone() * m[(r, k)].clone();
        m[(r, c)] = v;
    }
}

fn negate_column<T: Integer + Signed + Clone>(m: &mut Matrix<T>, k: usize) {
    for r in 0..m.rows {
        let v = -m[(r, k)].clone();
        m[(r, k)] = v;
    }
}
