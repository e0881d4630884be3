//! Small dense real matrices: just enough for Newton steps on rank ≤ 8
//! problems and a cyclic Jacobi eigensolver.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.concat() }
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v)).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Frobenius inner product.
    pub fn frobenius_dot(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        dot(&self.data, &other.data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_dot(self).sqrt()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Adds `w · v vᵀ`.
    pub fn add_outer(&mut self, w: f64, v: &[f64]) {
        debug_assert!(self.is_square() && self.rows == v.len());
        for i in 0..v.len() {
            for j in 0..v.len() {
                self[(i, j)] += w * v[i] * v[j];
            }
        }
    }

    /// Lower-triangular `L` with `L Lᵀ = self`, or `None` if not positive definite.
    pub fn cholesky(&self) -> Option<Matrix> {
        let n = self.rows;
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if d <= 0.0 || !d.is_finite() {
                return None;
            }
            let d = d.sqrt();
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / d;
            }
        }
        Some(l)
    }

    /// Solves `self · x = b` for symmetric positive definite `self`.
    pub fn solve_spd(&self, b: &[f64]) -> Option<Vec<f64>> {
        let l = self.cholesky()?;
        let n = self.rows;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let s: f64 = (0..i).map(|k| l[(i, k)] * y[k]).sum();
            y[i] = (b[i] - s) / l[(i, i)];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| l[(k, i)] * x[k]).sum();
            x[i] = (y[i] - s) / l[(i, i)];
        }
        Some(x)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Eigen-decomposition `m = V · diag(values) · Vᵀ` with eigenvalues ascending
/// and eigenvectors stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub sweeps: usize,
}

impl SymEigen {
    pub fn reconstruct(&self) -> Matrix {
        let d = Matrix::diag(&self.values);
        self.vectors.matmul(&d).matmul(&self.vectors.transpose())
    }
}

pub const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi rotations. The input is symmetrized first; asymmetry above
/// `SYMMETRY_TOL · max(1, ‖m‖_F)` is rejected.
pub fn jacobi_eigen(m: &Matrix) -> Result<SymEigen> {
    if !m.is_square() {
        return Err(Error::SingularInput("eigenvalues of a non-square matrix"));
    }
    let n = m.rows;
    let scale = m.frobenius_norm();
    let asymmetry = m.max_asymmetry();
    if asymmetry > SYMMETRY_TOL * scale.max(1.0) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    let mut a = m.clone();
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * scale;
    let mut sweeps = 0;
    while off_diagonal_norm(&a) > threshold && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A ← Jᵀ A J with J the (p, q) rotation
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new_col)] = v[(k, old_col)];
        }
    }
    Ok(SymEigen { values, vectors, sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_unit_eigenvalues() {
        let e = jacobi_eigen(&Matrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn diagonal_input_is_exact_and_sorted() {
        let e = jacobi_eigen(&Matrix::diag(&[6.0, 4.0])).unwrap();
        assert_eq!(e.values, vec![4.0, 6.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = jacobi_eigen(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let m = Matrix::from_rows(&[vec![1.0, 0.5], vec![0.0, 1.0]]);
        assert!(matches!(jacobi_eigen(&m), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn cholesky_solves_spd_system() {
        let m = Matrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 3.0]]);
        let x = m.solve_spd(&[2.0, 1.0]).unwrap();
        let b = m.matvec(&x);
        assert!((b[0] - 2.0).abs() < 1e-15 && (b[1] - 1.0).abs() < 1e-15);
        assert!(Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).cholesky().is_none());
    }

    proptest! {
        #[test]
        fn jacobi_reconstructs_random_symmetric(
            n in 1usize..=8,
            entries in proptest::collection::vec(-10.0f64..10.0, 64),
        ) {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    m[(i, j)] = entries[i * 8 + j];
                    m[(j, i)] = entries[i * 8 + j];
                }
            }
            let e = jacobi_eigen(&m).unwrap();
            let err = e.reconstruct().sub(&m).frobenius_norm();
            prop_assert!(err <= 1e-11 * m.frobenius_norm().max(1.0), "err {}", err);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            let vtv = e.vectors.transpose().matmul(&e.vectors);
            prop_assert!(vtv.sub(&Matrix::identity(n)).frobenius_norm() < 1e-12);
        }
    }
}
