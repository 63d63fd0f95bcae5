//! Exact matrices over a coefficient field with deterministic elimination.
//!
//! Storage is sparse (sorted rows of `(column, value)` pairs). Elimination
//! switches to a dense working copy once the fill ratio reaches
//! [`DENSE_THRESHOLD`]; both paths use the same pivot rule (leftmost column,
//! first available row) so the reduced matrix is identical either way.

use crate::error::KernelError;
use crate::scalars::field::{Field, FieldElement};

/// Fill ratio at or above which elimination runs on a dense working copy.
pub const DENSE_THRESHOLD: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    nrows: usize,
    ncols: usize,
    field: Field,
    /// Row-major sparse storage; each row is sorted by column and free of zeros.
    rows: Vec<Vec<(usize, FieldElement)>>,
}

/// Result of row reduction: rank, pivot columns in ascending order, and the
/// fully reduced matrix (pivots normalized to 1, pivot columns cleared).
#[derive(Debug, Clone)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub matrix: ExactMatrix,
}

impl ExactMatrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        ExactMatrix { nrows, ncols, field, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            m.rows[i].push((i, field.one()));
        }
        m
    }

    pub fn from_rows(field: Field, ncols: usize, dense_rows: Vec<Vec<FieldElement>>) -> Self {
        let nrows = dense_rows.len();
        let rows = dense_rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "row length mismatch");
                r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        ExactMatrix { nrows, ncols, field, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn density(&self) -> f64 {
        if self.nrows == 0 || self.ncols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.nrows * self.ncols) as f64
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: FieldElement) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if v.is_zero() {
                    self.rows[i].remove(k);
                } else {
                    self.rows[i][k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    self.rows[i].insert(k, (j, v));
                }
            }
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, FieldElement)] {
        &self.rows[i]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zero(self.field, self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                t.rows[*j].push((i, v.clone()));
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in matrix product");
        let mut out = ExactMatrix::zero(self.field, self.nrows, other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: Vec<FieldElement> = vec![self.field.zero(); other.ncols];
            for (k, v) in row {
                for (j, w) in &other.rows[*k] {
                    acc[*j] = acc[*j].add(&v.mul(w));
                }
            }
            out.rows[i] = acc.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn mul_vec(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.ncols, x.len(), "dimension mismatch in matrix-vector product");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (j, v) in row {
                    acc = acc.add(&v.mul(&x[*j]));
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.nrows, other.nrows, "row count mismatch in hstack");
        let ncols = self.ncols + other.ncols;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.ncols, v.clone())));
                r
            })
            .collect();
        ExactMatrix { nrows: self.nrows, ncols, field: self.field, rows }
    }

    pub fn rref(&self) -> Rref {
        if self.density() >= DENSE_THRESHOLD {
            self.rref_dense()
        } else {
            self.rref_sparse()
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn rref_dense(&self) -> Rref {
        let mut a: Vec<Vec<FieldElement>> = (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.entry(i, j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.ncols {
            let Some(pr) = (rank..self.nrows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pr);
            let inv = a[rank][col].inv();
            for j in col..self.ncols {
                a[rank][j] = a[rank][j].mul(&inv);
            }
            for r in 0..self.nrows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..self.ncols {
                        let delta = f.mul(&a[rank][j]);
                        a[r][j] = a[r][j].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.nrows {
                break;
            }
        }
        Rref { rank, pivots, matrix: ExactMatrix::from_rows(self.field, self.ncols, a) }
    }

    fn rref_sparse(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.ncols {
            let found = (rank..rows.len())
                .find(|&r| rows[r].binary_search_by_key(&col, |(c, _)| *c).is_ok());
            let Some(pr) = found else { continue };
            rows.swap(rank, pr);
            let inv = {
                let k = rows[rank].binary_search_by_key(&col, |(c, _)| *c).unwrap();
                rows[rank][k].1.inv()
            };
            rows[rank] = scale_row(&rows[rank], &inv);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank {
                    continue;
                }
                if let Ok(k) = row.binary_search_by_key(&col, |(c, _)| *c) {
                    let f = row[k].1.neg();
                    *row = add_scaled(row, &pivot_row, &f, self.field);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Rref { rank, pivots, matrix: ExactMatrix { nrows: self.nrows, ncols: self.ncols, field: self.field, rows } }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Solve `self * x = b`. Returns `None` when `b` is outside the column
    /// space; the particular solution sets all free variables to zero.
    pub fn solve_linear(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, KernelError> {
        if b.len() != self.nrows {
            return Err(KernelError::DimensionMismatch {
                context: format!(
                    "solve_linear: matrix has {} rows but right-hand side has {} entries",
                    self.nrows,
                    b.len()
                ),
            });
        }
        let mut bcol = ExactMatrix::zero(self.field, self.nrows, 1);
        for (i, v) in b.iter().enumerate() {
            bcol.set_entry(i, 0, v.clone());
        }
        let aug = self.hstack(&bcol);
        let red = aug.rref();
        if red.pivots.last().is_some_and(|&c| c == self.ncols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (r, &c) in red.pivots.iter().enumerate() {
            x[c] = red.matrix.entry(r, self.ncols);
        }
        Ok(Some(x))
    }

    /// Basis of the right nullspace, one vector per non-pivot column, in
    /// ascending column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<FieldElement>> {
        let red = self.rref();
        let pivot_set: Vec<usize> = red.pivots.clone();
        let mut basis = Vec::new();
        for j in 0..self.ncols {
            if pivot_set.contains(&j) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.ncols];
            v[j] = self.field.one();
            for (r, &c) in pivot_set.iter().enumerate() {
                v[c] = red.matrix.entry(r, j).neg();
            }
            basis.push(v);
        }
        basis
    }
}

fn scale_row(row: &[(usize, FieldElement)], f: &FieldElement) -> Vec<(usize, FieldElement)> {
    row.iter().map(|(c, v)| (*c, v.mul(f))).collect()
}

/// `a + f * b` for sparse rows, dropping cancellations.
fn add_scaled(
    a: &[(usize, FieldElement)],
    b: &[(usize, FieldElement)],
    f: &FieldElement,
    field: Field,
) -> Vec<(usize, FieldElement)> {
    let _ = field;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let e = a[i].clone();
            i += 1;
            e
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let e = (b[j].0, b[j].1.mul(f));
            j += 1;
            e
        } else {
            let e = (a[i].0, a[i].1.add(&b[j].1.mul(f)));
            i += 1;
            j += 1;
            e
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElement {
        Field::Rational.from_int(n)
    }

    #[test]
    fn rref_identity_is_fixed() {
        let m = ExactMatrix::identity(Field::Rational, 3);
        let r = m.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.matrix, m);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = ExactMatrix::zero(Field::Rational, 2, 3);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    // Rank of [[1,1],[1,2]] over F2: determinant 2*1 - 1*1 = 1 = 1 mod 2, so
    // the matrix is invertible and the rank is 2.
    #[test]
    fn rank_over_f2_matches_cofactor_determinant() {
        let f = Field::Prime(2);
        let m = ExactMatrix::from_rows(
            f,
            2,
            vec![vec![f.from_int(1), f.from_int(1)], vec![f.from_int(1), f.from_int(2)]],
        );
        assert_eq!(m.rank(), 2);
        // Same matrix over F3: det = 2 - 1 = 1, still full rank.
        let f3 = Field::Prime(3);
        let m3 = ExactMatrix::from_rows(
            f3,
            2,
            vec![vec![f3.from_int(1), f3.from_int(1)], vec![f3.from_int(1), f3.from_int(2)]],
        );
        assert_eq!(m3.rank(), 2);
        // And [[1,1],[1,1]] over F2 drops to rank 1.
        let s = ExactMatrix::from_rows(
            f,
            2,
            vec![vec![f.from_int(1), f.from_int(1)], vec![f.from_int(1), f.from_int(1)]],
        );
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn solve_substitutes_back() {
        let m = ExactMatrix::from_rows(
            Field::Rational,
            3,
            vec![vec![q(1), q(2), q(0)], vec![q(0), q(1), q(3)]],
        );
        let b = vec![q(5), q(7)];
        let x = m.solve_linear(&b).unwrap().expect("consistent system");
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = ExactMatrix::from_rows(Field::Rational, 2, vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        let sol = m.solve_linear(&[q(1), q(3)]).unwrap();
        assert!(sol.is_none());
    }

    #[test]
    fn solve_rejects_bad_dimensions() {
        let m = ExactMatrix::identity(Field::Rational, 2);
        assert!(m.solve_linear(&[q(1)]).is_err());
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // 4x5 matrix exercised through both elimination paths explicitly.
        let rows = vec![
            vec![q(0), q(2), q(0), q(0), q(4)],
            vec![q(1), q(0), q(0), q(3), q(0)],
            vec![q(0), q(2), q(0), q(0), q(5)],
            vec![q(2), q(0), q(0), q(6), q(0)],
        ];
        let m = ExactMatrix::from_rows(Field::Rational, 5, rows);
        let a = m.rref_dense();
        let b = m.rref_sparse();
        assert_eq!(a.rank, b.rank);
        assert_eq!(a.pivots, b.pivots);
        assert_eq!(a.matrix, b.matrix);
    }

    #[test]
    fn nullspace_vectors_are_killed_by_matrix() {
        let m = ExactMatrix::from_rows(
            Field::Rational,
            4,
            vec![vec![q(1), q(2), q(3), q(0)], vec![q(0), q(0), q(1), q(1)]],
        );
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|e| e.is_zero()));
        }
    }
}
