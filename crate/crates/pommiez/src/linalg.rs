//! Exact linear algebra over the Gaussian rationals.
//!
//! Elimination over an exact field produces exact results; every solver
//! here verifies its answer against the original system before returning.

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors, each padded to
    /// `rows` entries.
    pub fn from_columns(rows: usize, columns: &[Vec<GaussianRational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate().take(rows) {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &*out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != row {
                for j in 0..m.cols {
                    m.data.swap(pivot_row * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).inv().expect("pivot nonzero");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in col..m.cols {
                        let v = &*m.get(r, j) - &(&factor * m.get(row, j));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace. Every returned vector satisfies
    /// M v = 0 exactly; rank + returned count = column count.
    pub fn nullspace(&self) -> Vec<Vec<GaussianRational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![GaussianRational::zero(); self.cols];
            vec[free] = GaussianRational::one();
            for (col, maybe_row) in pivot_set.iter().enumerate() {
                if let Some(row) = maybe_row {
                    vec[col] = -r.get(*row, free);
                }
            }
            debug_assert!(self.mul_vec(&vec).iter().all(|c| c.is_zero()));
            basis.push(vec);
        }
        basis
    }

    /// A particular exact solution of M x = rhs (free variables set to 0),
    /// verified by substitution.
    pub fn solve(&self, rhs: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        assert_eq!(rhs.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.cols).clone();
        }
        let residual = self.mul_vec(&x);
        if residual.iter().zip(rhs).any(|(a, b)| a != b) {
            return Err(Error::NoSolution);
        }
        Ok(x)
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> GaussianRational {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return GaussianRational::zero();
            };
            if pivot_row != col {
                for j in 0..n {
                    m.data.swap(pivot_row * n + j, col * n + j);
                }
                det = -&det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot nonzero");
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for j in col..n {
                    let v = &*m.get(r, j) - &(&factor * m.get(col, j));
                    m.set(r, j, v);
                }
            }
        }
        det
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Do two vector lists span the same subspace? Compared via canonical
/// reduced row echelon forms.
pub fn span_equal(a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]) -> bool {
    fn canonical(vectors: &[Vec<GaussianRational>]) -> Option<Vec<Vec<GaussianRational>>> {
        let dim = vectors.iter().map(|v| v.len()).max()?;
        let mut m = Matrix::zeros(vectors.len(), dim);
        for (i, v) in vectors.iter().enumerate() {
            for (j, c) in v.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        let (r, pivots) = m.rref();
        Some(
            (0..pivots.len())
                .map(|i| (0..dim).map(|j| r.get(i, j).clone()).collect())
                .collect(),
        )
    }
    match (canonical(a), canonical(b)) {
        (None, None) => true,
        (Some(ca), Some(cb)) => {
            // pad to common width
            let w = ca
                .iter()
                .chain(cb.iter())
                .map(|v| v.len())
                .max()
                .unwrap_or(0);
            let pad = |rows: Vec<Vec<GaussianRational>>| -> Vec<Vec<GaussianRational>> {
                rows.into_iter()
                    .map(|mut v| {
                        v.resize(w, GaussianRational::zero());
                        v
                    })
                    .collect()
            };
            pad(ca) == pad(cb)
        }
        (Some(ca), None) => ca.is_empty(),
        (None, Some(cb)) => cb.is_empty(),
    }
}

/// Is `v` in the span of `basis`?
pub fn in_span(basis: &[Vec<GaussianRational>], v: &[GaussianRational]) -> bool {
    let rows = basis.iter().map(|b| b.len()).max().unwrap_or(0).max(v.len());
    let m = Matrix::from_columns(rows, basis);
    let mut rhs = v.to_vec();
    rhs.resize(rows, GaussianRational::zero());
    m.solve(&rhs).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn nullspace_of_row() {
        let m = Matrix::from_columns(1, &[vec![gr(1)], vec![gr(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(span_equal(&ns, &[vec![gr(1), gr(-1)]]));
    }

    #[test]
    fn solve_identity() {
        let m = Matrix::identity(3);
        let rhs = vec![gr(3), gr(-1), gr(7)];
        assert_eq!(m.solve(&rhs).unwrap(), rhs);
    }

    #[test]
    fn nullspace_of_zero_matrix() {
        let m = Matrix::zeros(2, 2);
        assert_eq!(m.nullspace().len(), 2);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn rank_nullity() {
        let mut m = Matrix::zeros(3, 4);
        m.set(0, 0, gr(1));
        m.set(0, 1, gr(2));
        m.set(1, 2, gr(5));
        assert_eq!(m.rank() + m.nullspace().len(), 4);
        for v in m.nullspace() {
            assert!(m.mul_vec(&v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn no_solution_detected() {
        let mut m = Matrix::zeros(2, 1);
        m.set(0, 0, gr(1));
        m.set(1, 0, gr(1));
        assert!(m.solve(&[gr(1), gr(2)]).is_err());
    }

    #[test]
    fn determinant() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, gr(1));
        m.set(0, 1, gr(2));
        m.set(1, 0, gr(3));
        m.set(1, 1, gr(4));
        assert_eq!(m.det(), gr(-2));
        assert_eq!(Matrix::zeros(2, 2).det(), gr(0));
    }

    #[test]
    fn span_comparison() {
        let a = vec![vec![gr(1), gr(1)], vec![gr(1), gr(-1)]];
        let b = vec![vec![gr(1), gr(0)], vec![gr(0), gr(1)]];
        assert!(span_equal(&a, &b));
        let c = vec![vec![gr(1), gr(1)]];
        assert!(!span_equal(&a, &c));
        assert!(in_span(&c, &[gr(2), gr(2)]));
        assert!(!in_span(&c, &[gr(1), gr(0)]));
    }
}
