//! Dense matrices over a [`Field`] with exact elimination.
//!
//! Pivoting is always leftmost-nonzero, topmost-row, so every derived basis
//! (echelon forms, kernel bases, particular solutions) is reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Result of [`ExactMatrix::row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub rank: usize,
    /// Reduced row-echelon form, same shape as the input.
    pub echelon: ExactMatrix,
    pub pivot_columns: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from row vectors; every row must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            entries.extend(r);
        }
        ExactMatrix {
            rows: n,
            cols,
            field,
            entries,
        }
    }

    /// Build from column vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        assert_eq!(self.field, other.field, "matrices over different fields");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`, row index `i * other.rows + k`.
    pub fn kron(&self, other: &ExactMatrix) -> Self {
        let mut out = Self::zeros(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form with leftmost pivots.
    pub fn row_reduce(&self) -> RowEchelon {
        let mut rows = self.row_vectors();
        let pivots = reduce_rows(&mut rows, self.cols, true);
        RowEchelon {
            rank: pivots.len(),
            echelon: ExactMatrix::from_rows(self.field, self.cols, rows),
            pivot_columns: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        reduce_rows(&mut rows, self.cols, false).len()
    }

    /// Basis of `{v : Mv = 0}`, one row per non-pivot column of the reduced
    /// echelon form (that coordinate set to 1, other free coordinates 0).
    pub fn kernel_basis(&self) -> ExactMatrix {
        let RowEchelon {
            echelon,
            pivot_columns,
            ..
        } = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_columns {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &p) in pivot_columns.iter().enumerate() {
                v[p] = -echelon.get(r, free);
            }
            basis.push(v);
        }
        ExactMatrix::from_rows(self.field, self.cols, basis)
    }

    /// A particular solution of `Mx = b` with all free coordinates zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = reduce_rows(&mut rows, self.cols + 1, true);
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(x)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        self.field.one()
                    } else {
                        self.field.zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = reduce_rows(&mut rows, 2 * n, true);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(ExactMatrix::from_rows(
            self.field,
            n,
            rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    /// First column index where `self` and `other` differ.
    pub fn first_differing_column(&self, other: &ExactMatrix) -> Option<usize> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        (0..self.cols).find(|&c| (0..self.rows).any(|r| self.get(r, c) != other.get(r, c)))
    }
}

/// Gaussian elimination in place; returns pivot columns. With `full`, the
/// result is reduced (pivots 1, zeros above and below), otherwise only
/// forward elimination is done.
fn reduce_rows(rows: &mut Vec<Vec<Scalar>>, cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let nrows = rows.len();
    let mut lead = 0;
    for col in 0..cols {
        if lead == nrows {
            break;
        }
        let Some(found) = (lead..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, found);
        let inv = rows[lead][col].inverse().expect("nonzero pivot");
        if full {
            for v in rows[lead][col..].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = rows[lead].clone();
        let start = if full { 0 } else { lead + 1 };
        for (r, row) in rows.iter_mut().enumerate().skip(start) {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let factor = if full {
                row[col].clone()
            } else {
                &row[col] * &inv
            };
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    pivots
}

/// An incrementally built subspace of `field^dim`, kept in semi-echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Field, dim: usize) -> Self {
        RowSpace {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for c in p..self.dim {
                if !row[c].is_zero() {
                    v[c] = &v[c] - &(&f * &row[c]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero");
        for x in r[p..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Reduced row-echelon basis of the span.
    pub fn echelon_basis(&self) -> RowEchelon {
        ExactMatrix::from_rows(self.field, self.dim, self.rows.clone()).row_reduce()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_has_full_rank() {
        let r = ExactMatrix::identity(q(), 2).row_reduce();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_columns, vec![0, 1]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let r = ExactMatrix::zeros(q(), 3, 4).row_reduce();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
        assert_eq!(ExactMatrix::zeros(q(), 0, 0).rank(), 0);
    }

    #[test]
    fn rank_one_reduction() {
        let m = ExactMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let r = m.row_reduce();
        assert_eq!(r.rank, 1);
        assert_eq!(r.echelon, ExactMatrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(q(), 3).kernel_basis().rows(), 0);
        let k = ExactMatrix::zeros(q(), 2, 3).kernel_basis();
        assert_eq!(k, ExactMatrix::identity(q(), 3));
    }

    #[test]
    fn kernel_over_gf2_matches_exhaustive_search() {
        let f = Field::prime(2).unwrap();
        let m = ExactMatrix::from_i64(f, &[&[1, 1]]);
        // Exhaustive oracle over GF(2)^2.
        let mut oracle = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                if (a + b) % 2 == 0 && (a, b) != (0, 0) {
                    oracle.push(vec![f.from_i64(a), f.from_i64(b)]);
                }
            }
        }
        let k = m.kernel_basis();
        assert_eq!(k.row_vectors(), oracle);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(q(), 3);
        let b = vec![q().from_i64(4), q().from_i64(-1), q().from_i64(7)];
        assert_eq!(id.solve(&b).unwrap(), b);

        let m = ExactMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert!(matches!(
            m.solve(&[q().from_i64(1), q().from_i64(3)]),
            Err(Error::NoSolution)
        ));
        assert_eq!(
            m.solve(&[q().from_i64(1), q().from_i64(2)]).unwrap(),
            vec![q().from_i64(1), q().from_i64(0)]
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ExactMatrix::from_i64(q(), &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(q(), 2));
        assert!(ExactMatrix::from_i64(q(), &[&[1, 2], &[2, 4]])
            .inverse()
            .is_none());
    }

    #[test]
    fn row_space_tracks_rank() {
        let mut s = RowSpace::new(q(), 3);
        assert!(s.insert(&[q().from_i64(1), q().from_i64(1), q().zero()]));
        assert!(s.insert(&[q().zero(), q().from_i64(1), q().from_i64(1)]));
        assert!(!s.insert(&[q().from_i64(1), q().from_i64(2), q().from_i64(1)]));
        assert!(s.contains(&[q().from_i64(2), q().from_i64(3), q().from_i64(1)]));
        assert!(!s.contains(&[q().zero(), q().zero(), q().from_i64(1)]));
        assert_eq!(s.rank(), 2);
    }
}
