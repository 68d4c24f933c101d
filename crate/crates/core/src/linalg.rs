//! Small dense complex linear algebra.
//!
//! Everything here operates on matrices of size `2d x 2d` or `M x 2d`, so the
//! routines favour simplicity and robustness over blocking or SIMD.

use num_complex::Complex64;

use crate::{Error, Result};

/// Off-diagonal Frobenius tolerance (relative to the full Frobenius norm) at
/// which the Jacobi iteration stops.
pub const JACOBI_TOLERANCE: f64 = 1e-13;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has wrong length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &CMatrix) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let out_row = out.row_mut(i);
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            self.cols,
            x.len(),
            "vector length differs from column count"
        );
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A^H A`, accumulated row by row.
    pub fn gram(&self) -> Self {
        let n = self.cols;
        let mut out = Self::zeros(n, n);
        for r in 0..self.rows {
            let row = self.row(r);
            for p in 0..n {
                let a = row[p].conj();
                for q in 0..n {
                    out.data[p * n + q] += a * row[q];
                }
            }
        }
        out
    }

    /// `x^H A x`, real part only (exact for Hermitian `A`).
    pub fn quadratic_form(&self, x: &[Complex64]) -> f64 {
        let ax = self.mul_vec(x);
        x.iter().zip(&ax).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A_ij - conj(A_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Sum of `|A_ij|` over `j != i`.
    pub fn off_diagonal_row_sum(&self, i: usize) -> f64 {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, z)| z.norm())
            .sum()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn real_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `u^H w`.
pub fn inner(u: &[Complex64], w: &[Complex64]) -> Complex64 {
    u.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Cyclic Jacobi: each sweep annihilates every off-diagonal pair with a
/// complex plane rotation. Iteration stops once the off-diagonal Frobenius
/// norm drops below [`JACOBI_TOLERANCE`] times the matrix norm.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    if a.rows != a.cols {
        return Err(Error::Dimension(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut m = a.clone();
    // Symmetrize so the rotations see an exactly Hermitian input.
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let scale = m.frobenius_norm();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let threshold = JACOBI_TOLERANCE * scale;

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
            eig.sort_by(f64::total_cmp);
            return Ok(eig);
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, p, q);
            }
        }
    }
    if off_diagonal_norm(&m) <= threshold {
        let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
        eig.sort_by(f64::total_cmp);
        return Ok(eig);
    }
    Err(Error::NoConvergence(JACOBI_MAX_SWEEPS))
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
pub fn hermitian_extrema(a: &CMatrix) -> Result<(f64, f64)> {
    let eig = hermitian_eigenvalues(a)?;
    Ok((eig[0], eig[eig.len() - 1]))
}

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

// Zeroes m[p][q] with J = diag-phase * real Givens, applying m <- J^H m J.
fn rotate(m: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J restricted to (p, q): [[c, s], [-s * conj(phase), c * conj(phase)]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = m.rows;
    // columns: m <- m J
    for i in 0..n {
        let mip = m[(i, p)];
        let miq = m[(i, q)];
        m[(i, p)] = mip * jpp + miq * jqp;
        m[(i, q)] = mip * jpq + miq * jqq;
    }
    // rows: m <- J^H m
    for j in 0..n {
        let mpj = m[(p, j)];
        let mqj = m[(q, j)];
        m[(p, j)] = jpp.conj() * mpj + jqp.conj() * mqj;
        m[(q, j)] = jpq.conj() * mpj + jqq.conj() * mqj;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
}

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(a: &CMatrix) -> Result<Complex64> {
    if a.rows != a.cols {
        return Err(Error::Dimension(format!(
            "determinant needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| m[(i, k)].norm().total_cmp(&m[(j, k)].norm()))
            .unwrap_or(k);
        if m[(pivot, k)].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            det = -det;
        }
        let akk = m[(k, k)];
        det *= akk;
        for i in k + 1..n {
            let f = m[(i, k)] / akk;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let mkj = m[(k, j)];
                m[(i, j)] -= f * mkj;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_eigenvalues_sorted() {
        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = c(3.0, 0.0);
        m[(1, 1)] = c(-1.0, 0.0);
        m[(2, 2)] = c(2.0, 0.0);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_hermitian_matches_quadratic_roots() {
        // [[a, b], [b*, d]] -> (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2)
        let (a, d, b) = (2.0, -0.5, c(0.3, -1.2));
        let m = CMatrix::from_row_major(2, 2, vec![c(a, 0.0), b, b.conj(), c(d, 0.0)]);
        let mid = (a + d) / 2.0;
        let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert!((eig[0] - (mid - rad)).abs() < 1e-13);
        assert!((eig[1] - (mid + rad)).abs() < 1e-13);
    }

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let eig = hermitian_eigenvalues(&CMatrix::zeros(4, 4)).unwrap();
        assert_eq!(eig, vec![0.0; 4]);
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(hermitian_eigenvalues(&CMatrix::zeros(2, 3)).is_err());
        assert!(determinant(&CMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn determinant_of_triangular_is_diagonal_product() {
        let m = CMatrix::from_row_major(
            3,
            3,
            vec![
                c(2.0, 1.0),
                c(5.0, 0.0),
                c(-1.0, 3.0),
                c(0.0, 0.0),
                c(0.0, -1.0),
                c(4.0, 4.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(3.0, 0.0),
            ],
        );
        let det = determinant(&m).unwrap();
        let expected = c(2.0, 1.0) * c(0.0, -1.0) * c(3.0, 0.0);
        assert!((det - expected).norm() < 1e-12);
    }

    #[test]
    fn gram_equals_adjoint_product() {
        let a = CMatrix::from_fn(5, 3, |i, j| {
            c((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64).sin())
        });
        let direct = a.adjoint().mul(&a);
        let gram = a.gram();
        for i in 0..3 {
            for j in 0..3 {
                assert!((direct[(i, j)] - gram[(i, j)]).norm() < 1e-14);
            }
        }
    }
}
