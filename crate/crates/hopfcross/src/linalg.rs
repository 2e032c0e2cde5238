//! Exact sparse matrices: rank, kernels, solving and composition.
//!
//! Storage is column-major and sparse. Elimination is by column reduction
//! against a pivot table keyed on the "lowest" nonzero row, which doubles
//! as the persistence-style reduction used for filtered ranks.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lin::Lin;
use crate::scalar::{FieldSpec, Scalar};

/// Sparse vector as `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    NoSolution,
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NoSolution => write!(f, "right-hand side not in the column space"),
            LinalgError::ShapeMismatch { expected, found } => {
                write!(f, "shape mismatch: expected {expected:?}, found {found:?}")
            }
        }
    }
}

/// `a - c·b` for sorted sparse vectors.
fn axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -&(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_vec(v: &SparseVec, c: &Scalar) -> SparseVec {
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Incremental column reducer. Vectors are stored keyed by row priority;
/// the pivot of a reduced vector is its largest key.
struct Reducer {
    field: FieldSpec,
    track: bool,
    pivot_of: BTreeMap<usize, usize>,
    stored: Vec<(SparseVec, SparseVec)>,
}

enum Reduced {
    Pivot(usize),
    Zero(SparseVec),
}

impl Reducer {
    fn new(field: FieldSpec, track: bool) -> Self {
        Reducer {
            field,
            track,
            pivot_of: BTreeMap::new(),
            stored: Vec::new(),
        }
    }

    /// Fully reduces `v` (keyed by priority) on its leading terms. `combo`
    /// records the combination of input columns when tracking.
    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((lead, c)) = v.last().cloned() {
            match self.pivot_of.get(&lead) {
                Some(&p) => {
                    let (pv, pc) = &self.stored[p];
                    v = axpy(&v, &c, pv);
                    if self.track {
                        combo = axpy(&combo, &c, pc);
                    }
                }
                None => break,
            }
        }
        (v, combo)
    }

    fn push(&mut self, v: SparseVec, combo: SparseVec) -> Reduced {
        let (v, combo) = self.reduce(v, combo);
        match v.last() {
            None => Reduced::Zero(combo),
            Some((lead, c)) => {
                let lead = *lead;
                let inv = c.inv();
                let v = scale_vec(&v, &inv);
                let combo = if self.track { scale_vec(&combo, &inv) } else { combo };
                self.pivot_of.insert(lead, self.stored.len());
                self.stored.push((v, combo));
                Reduced::Pivot(lead)
            }
        }
    }

    fn rank(&self) -> usize {
        self.stored.len()
    }

}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            data: vec![Vec::new(); cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i].push((i, field.one()));
        }
        m
    }

    /// Builds from row-major integer entries.
    pub fn from_rows_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                let s = field.from_i64(x);
                if !s.is_zero() {
                    m.data[j].push((i, s));
                }
            }
        }
        m
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if !s.is_zero() {
                    m.data[j].push((i, s.clone()));
                }
            }
        }
        m
    }

    /// Columns given as sparse combinations of row indices.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Lin<usize>]) -> Self {
        let data = columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, c)| {
                        assert!(*i < rows, "row index {i} out of range {rows}");
                        (*i, c.clone())
                    })
                    .collect()
            })
            .collect();
        ExactMatrix {
            rows,
            cols: columns.len(),
            field,
            data,
        }
    }

    pub fn from_sparse_columns(field: FieldSpec, rows: usize, data: Vec<SparseVec>) -> Self {
        let cols = data.len();
        ExactMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.data[j]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(p) => self.data[j][p].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, c) in col {
                out[*i][j] = c.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = vec![Vec::new(); self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, c) in col {
                data[*i].push((j, c.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    /// Sparse matrix-vector product.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, x) in v {
            for (i, c) in &self.data[*j] {
                let t = c * x;
                match acc.get_mut(i) {
                    Some(s) => *s += &t,
                    None => {
                        acc.insert(*i, t);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let sv: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        let mut out = vec![self.field.zero(); self.rows];
        for (i, c) in self.apply(&sv) {
            out[i] = c;
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                expected: (self.cols, other.cols),
                found: (other.rows, other.cols),
            });
        }
        let data = other.data.iter().map(|c| self.apply(c)).collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            data,
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.combine(other, &self.field.one())
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.combine(other, &self.field.from_i64(-1))
    }

    fn combine(&self, other: &ExactMatrix, c: &Scalar) -> Result<ExactMatrix, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::ShapeMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            });
        }
        let neg = -c;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(a, &neg, b))
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let data = if c.is_zero() {
            vec![Vec::new(); self.cols]
        } else {
            self.data.iter().map(|v| scale_vec(v, c)).collect()
        };
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let data = cols
            .iter()
            .map(|&j| {
                let mut v: SparseVec = self.data[j]
                    .iter()
                    .filter(|(i, _)| pos[*i] != usize::MAX)
                    .map(|(i, c)| (pos[*i], c.clone()))
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        ExactMatrix {
            rows: rows.len(),
            cols: cols.len(),
            field: self.field,
            data,
        }
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            field: self.field,
            data,
        }
    }

    /// Row keys sorted so that the pivot row (largest key) is the one with
    /// the fewest nonzeros. Cheap fill-in control; any order is exact.
    fn sparse_row_order(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.rows];
        for col in &self.data {
            for (i, _) in col {
                count[*i] += 1;
            }
        }
        let mut idx: Vec<usize> = (0..self.rows).collect();
        idx.sort_by(|a, b| count[*b].cmp(&count[*a]).then(a.cmp(b)));
        let mut key = vec![0; self.rows];
        for (k, &r) in idx.iter().enumerate() {
            key[r] = k;
        }
        key
    }

    fn keyed(col: &SparseVec, key: &[usize]) -> SparseVec {
        let mut v: SparseVec = col.iter().map(|(i, c)| (key[*i], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    fn column_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.cols).collect();
        idx.sort_by_key(|&j| (self.data[j].len(), j));
        idx
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let key = self.sparse_row_order();
        let mut red = Reducer::new(self.field, false);
        for j in self.column_order() {
            if red.rank() == self.rows {
                break;
            }
            red.push(Self::keyed(&self.data[j], &key), Vec::new());
        }
        red.rank()
    }

    /// Columns spanning the kernel; `self · K = 0` and the columns are
    /// independent.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let key: Vec<usize> = (0..self.rows).collect();
        let mut red = Reducer::new(self.field, true);
        let mut ker = Vec::new();
        for j in 0..self.cols {
            let v = Self::keyed(&self.data[j], &key);
            if let Reduced::Zero(combo) = red.push(v, vec![(j, self.field.one())]) {
                let mut combo = combo;
                combo.sort_by_key(|(i, _)| *i);
                ker.push(combo);
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: ker.len(),
            field: self.field,
            data: ker,
        }
    }

    /// Some `x` with `self · x = rhs`.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::ShapeMismatch {
                expected: (self.rows, 1),
                found: (rhs.len(), 1),
            });
        }
        let sol = Solver::new(self);
        let b: SparseVec = rhs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        let x = sol.solve_sparse(&b)?;
        let mut out = vec![self.field.zero(); self.cols];
        for (i, c) in x {
            out[i] = c;
        }
        Ok(out)
    }

    /// Pivot pairs of the filtered reduction: rows ordered by ascending
    /// level, columns processed by ascending level, pivot = highest-level
    /// row. Returns `(column level, row level)` for each pivot. The rank of
    /// the block `rows with level > a, cols with level <= b` equals the
    /// number of pairs with `col <= b` and `row > a`.
    pub fn filtered_pivots(&self, row_levels: &[i64], col_levels: &[i64]) -> Vec<(i64, i64)> {
        assert_eq!(row_levels.len(), self.rows);
        assert_eq!(col_levels.len(), self.cols);
        let mut ridx: Vec<usize> = (0..self.rows).collect();
        ridx.sort_by_key(|&i| (row_levels[i], i));
        let mut key = vec![0; self.rows];
        for (k, &r) in ridx.iter().enumerate() {
            key[r] = k;
        }
        let mut cidx: Vec<usize> = (0..self.cols).collect();
        cidx.sort_by_key(|&j| (col_levels[j], j));
        let mut red = Reducer::new(self.field, false);
        let mut out = Vec::new();
        for j in cidx {
            if let Reduced::Pivot(k) = red.push(Self::keyed(&self.data[j], &key), Vec::new()) {
                out.push((col_levels[j], row_levels[ridx[k]]));
            }
        }
        out
    }
}

/// Reusable solver for many right-hand sides against one matrix.
pub struct Solver {
    red: Reducer,
    cols: usize,
}

impl Solver {
    pub fn new(m: &ExactMatrix) -> Self {
        let mut red = Reducer::new(m.field, true);
        for j in 0..m.cols {
            red.push(m.data[j].clone(), vec![(j, m.field.one())]);
        }
        Solver { red, cols: m.cols }
    }

    /// Solver with no columns yet; columns arrive through [`Solver::push`].
    pub fn empty(field: FieldSpec) -> Self {
        Solver {
            red: Reducer::new(field, true),
            cols: 0,
        }
    }

    /// Appends a column. Returns `false` when it was already in the span.
    pub fn push(&mut self, col: SparseVec) -> bool {
        let j = self.cols;
        self.cols += 1;
        let one = self.red.field.one();
        matches!(self.red.push(col, vec![(j, one)]), Reduced::Pivot(_))
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.red.rank()
    }

    pub fn solve_sparse(&self, b: &SparseVec) -> Result<SparseVec, LinalgError> {
        let (rest, combo) = self.red.reduce(b.clone(), Vec::new());
        if !rest.is_empty() {
            return Err(LinalgError::NoSolution);
        }
        // reduce() subtracts c·combo, so x = -combo.
        let mut x: SparseVec = combo.into_iter().map(|(i, c)| (i, -c)).collect();
        x.sort_by_key(|(i, _)| *i);
        debug_assert!(x.iter().all(|(i, _)| *i < self.cols));
        Ok(x)
    }

    pub fn contains(&self, b: &SparseVec) -> bool {
        self.red.reduce(b.clone(), Vec::new()).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(q(), 2).rank(), 2);
        assert_eq!(ExactMatrix::zeros(q(), 3, 4).rank(), 0);
        let m = ExactMatrix::from_rows_i64(q(), &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(q(), 3).kernel_basis().cols(), 0);
        assert_eq!(ExactMatrix::zeros(q(), 2, 2).kernel_basis().cols(), 2);
        let m = ExactMatrix::from_rows_i64(q(), &[vec![1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        let v = [k.get(0, 0), k.get(1, 0)];
        assert_eq!(&v[0], &-&v[1]);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(q(), 2);
        assert_eq!(id.solve(&[q().one(), q().zero()]).unwrap(), vec![q().one(), q().zero()]);
        let z = ExactMatrix::zeros(q(), 2, 2);
        assert_eq!(z.solve(&[q().one(), q().zero()]), Err(LinalgError::NoSolution));
        let f5 = FieldSpec::prime(5).unwrap();
        let m = ExactMatrix::from_rows_i64(f5, &[vec![2]]);
        assert_eq!(m.solve(&[f5.one()]).unwrap(), vec![f5.from_i64(3)]);
    }

    #[test]
    fn filtered_pivots_count_blocks() {
        // d: C1 -> C0, levels chosen so one pair has gap 1.
        let m = ExactMatrix::from_rows_i64(q(), &[vec![1, 0], vec![1, 1]]);
        let pairs = m.filtered_pivots(&[0, 1], &[1, 2]);
        assert_eq!(pairs.len(), 2);
        for (c, r) in pairs {
            assert!(r <= c);
        }
    }
}
