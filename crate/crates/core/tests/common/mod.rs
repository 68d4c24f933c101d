#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use takens_lab::linalg::CMatrix;
use takens_lab::rng::{self, Purpose};
use takens_lab::system::{make_gaussian_eigvecs, ClassASystem};
use takens_lab::Complex64;

pub const TABLE_ONE_THETAS: [f64; 3] = [2.3129, 0.1765, 1.4861];

/// Tabulated spectrum of `V^H V`; the middle value is nudged so the trace is exactly 6.
pub const TABLE_THREE_SPECTRUM: [f64; 6] = [1.5316, 1.3059, 1.1294, 0.8372, 0.7644, 0.4315];

/// Eigenvalues (ascending) from nalgebra's Hermitian solver.
pub fn oracle_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let m = DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)]);
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Real symmetric `S` with the given spectrum and unit diagonal, built by
/// Givens rotations that fix one diagonal entry at a time.
pub fn unit_diagonal_with_spectrum(spectrum: &[f64]) -> DMatrix<f64> {
    let n = spectrum.len();
    let mut s = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(spectrum));
    for _ in 0..n {
        let low = (0..n).find(|&i| s[(i, i)] < 1.0 - 1e-15);
        let high = (0..n).find(|&i| s[(i, i)] > 1.0 + 1e-15);
        let (Some(i), Some(j)) = (low, high) else {
            break;
        };
        let (a, b, c) = (s[(i, i)], s[(i, j)], s[(j, j)]);
        let diag = |t: f64| {
            let (sn, cs) = t.sin_cos();
            cs * cs * a + 2.0 * sn * cs * b + sn * sn * c
        };
        // diag(0) = a < 1 and diag(pi/2) = c > 1
        let (mut lo, mut hi) = (0.0, std::f64::consts::FRAC_PI_2);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if diag(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        let (sn, cs) = t.sin_cos();
        let mut g = DMatrix::<f64>::identity(n, n);
        g[(i, i)] = cs;
        g[(j, j)] = cs;
        g[(i, j)] = -sn;
        g[(j, i)] = sn;
        s = g.transpose() * s * g;
    }
    s
}

/// Eigenvectors in `R^n` whose `V^H V` has exactly the Table III spectrum.
///
/// With `v_i = a_i + j b_i` and `W = [a_1 b_1 ...]`, `V^H V` is unitarily
/// similar to `2 W^T W`, so `W^T W = S / 2` for a unit-diagonal `S` fixes
/// both the spectrum and the unit norms.
pub fn table_three_eigvecs(n: usize) -> Vec<Vec<Complex64>> {
    let s = unit_diagonal_with_spectrum(&TABLE_THREE_SPECTRUM);
    let l = (s * 0.5).cholesky().expect("positive definite").l();
    let w = l.transpose();
    (0..3)
        .map(|i| {
            (0..n)
                .map(|r| {
                    if r < 6 {
                        Complex64::new(w[(r, 2 * i)], w[(r, 2 * i + 1)])
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn table_three_system() -> ClassASystem {
    ClassASystem::new(TABLE_ONE_THETAS.to_vec(), table_three_eigvecs(50), 1.0).unwrap()
}

/// Random system for oracle checks: `d` in `1..=max_d`, `N` in `2d..2d+6`,
/// Gaussian eigenvectors, frequencies in `(0.05, pi - 0.05)`.
pub fn random_system(seed: u64, index: u64, max_d: usize) -> ClassASystem {
    let mut r = rng::stream(seed, Purpose::RandomSystem, index);
    loop {
        let d = r.random_range(1..=max_d);
        let n = 2 * d + r.random_range(0..6);
        let thetas: Vec<f64> = (0..d)
            .map(|_| r.random_range(0.05..std::f64::consts::PI - 0.05))
            .collect();
        let vecs = make_gaussian_eigvecs(d, n, r.random()).unwrap();
        let ts = r.random_range(0.5..1.5);
        if let Ok(sys) = ClassASystem::new(thetas, vecs, ts) {
            if takens_lab::bounds::nu(&sys).is_ok() {
                return sys;
            }
        }
    }
}

pub fn random_observation(seed: u64, index: u64, n: usize) -> Vec<f64> {
    let mut r = rng::stream(seed, Purpose::ObservationPerturbation, index);
    (0..n).map(|_| r.sample(StandardNormal)).collect()
}
