//! Class A(d) linear systems in spectral form.
//!
//! A system is described by `d` distinct positive angular frequencies
//! `theta_i`, one unit-norm complex eigenvector `v_i` per frequency and a
//! sampling interval `Ts`. The steady-state attractor lives in the span of
//! `V = (v_1 | conj(v_1) | ... | v_d | conj(v_d))`, so every point is
//! represented by a conjugate-symmetric coefficient vector `alpha` with
//! `x = V alpha`. No `N x N` system or flow matrix is ever formed.
//!
//! Time conventions: `alpha(t) = exp(Lambda t) alpha_0` with
//! `Lambda = diag(j theta_1, -j theta_1, ...)`, and one sample of the flow
//! matrix steps *backward* by `Ts`, acting on coefficients as
//! `D = exp(-Lambda Ts)`.

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{self, CMatrix};
use crate::rng::{self, Purpose};
use crate::{Error, Result};

/// Tolerance on `||v_i|| = 1`.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-12;
/// `lambda_min(V^H V)` must exceed this for `V` to count as full rank.
pub const RANK_TOLERANCE: f64 = 1e-10;
/// Tolerance on `alpha_{2i} = conj(alpha_{2i-1})`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Allowed imaginary residue of `V alpha`, relative to its norm.
pub const REALNESS_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassASystem {
    thetas: Vec<f64>,
    eigvecs: Vec<Vec<Complex64>>,
    ts: f64,
    n: usize,
}

impl ClassASystem {
    /// Validates and builds a system. Fails rather than returning a system
    /// that violates any class A(d) invariant.
    pub fn new(thetas: Vec<f64>, eigvecs: Vec<Vec<Complex64>>, ts: f64) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidSystem("no frequencies given".into()));
        }
        if thetas.len() != eigvecs.len() {
            return Err(Error::InvalidSystem(format!(
                "{} frequencies but {} eigenvectors",
                thetas.len(),
                eigvecs.len()
            )));
        }
        if !(ts.is_finite() && ts > 0.0) {
            return Err(Error::InvalidSystem(format!(
                "sampling interval must be positive, got {ts}"
            )));
        }
        for (i, &t) in thetas.iter().enumerate() {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidSystem(format!(
                    "theta_{} = {t} is not strictly positive",
                    i + 1
                )));
            }
            for (j, &u) in thetas.iter().enumerate().skip(i + 1) {
                if t == u {
                    return Err(Error::InvalidSystem(format!(
                        "duplicate frequency theta_{} = theta_{} = {t}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let n = eigvecs[0].len();
        let d = thetas.len();
        if 2 * d > n {
            return Err(Error::Dimension(format!("2d = {} exceeds N = {n}", 2 * d)));
        }
        for (i, v) in eigvecs.iter().enumerate() {
            if v.len() != n {
                return Err(Error::InvalidSystem(format!(
                    "eigenvector {} has length {} but N = {n}",
                    i + 1,
                    v.len()
                )));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidSystem(format!(
                    "eigenvector {} is not finite",
                    i + 1
                )));
            }
            let norm = linalg::norm(v);
            if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
                return Err(Error::InvalidSystem(format!(
                    "eigenvector {} has norm {norm}, expected 1",
                    i + 1
                )));
            }
        }
        let sys = Self {
            thetas,
            eigvecs,
            ts,
            n,
        };
        let (a1, _) = linalg::hermitian_extrema(&sys.gram())?;
        if a1 <= RANK_TOLERANCE {
            return Err(Error::InvalidSystem(format!(
                "V is rank deficient (smallest eigenvalue of V^H V is {a1:e})"
            )));
        }
        Ok(sys)
    }

    /// Half the attractor dimension: the number of oscillatory modes.
    pub fn d(&self) -> usize {
        self.thetas.len()
    }

    /// Ambient state dimension `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ts(&self) -> f64 {
        self.ts
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn eigvecs(&self) -> &[Vec<Complex64>] {
        &self.eigvecs
    }

    /// `V` with conjugate partners interleaved, `N x 2d`.
    pub fn v_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.n, 2 * self.d(), |r, c| {
            let z = self.eigvecs[c / 2][r];
            if c % 2 == 0 {
                z
            } else {
                z.conj()
            }
        })
    }

    /// `V^H V`, `2d x 2d`.
    pub fn gram(&self) -> CMatrix {
        let k = 2 * self.d();
        let cols: Vec<Vec<Complex64>> = (0..k)
            .map(|c| {
                let v = &self.eigvecs[c / 2];
                if c % 2 == 0 {
                    v.clone()
                } else {
                    v.iter().map(|z| z.conj()).collect()
                }
            })
            .collect();
        CMatrix::from_fn(k, k, |p, q| linalg::inner(&cols[p], &cols[q]))
    }

    /// Signed frequencies `(theta_1, -theta_1, ..., theta_d, -theta_d)`; the
    /// diagonal of `Lambda` is `j` times these.
    pub fn signed_frequencies(&self) -> Vec<f64> {
        self.thetas.iter().flat_map(|&t| [t, -t]).collect()
    }

    /// Diagonal of `D = exp(-Lambda Ts)`, the one-sample backward flow.
    pub fn flow_diagonal(&self) -> Vec<Complex64> {
        self.signed_frequencies()
            .into_iter()
            .map(|w| Complex64::from_polar(1.0, -w * self.ts))
            .collect()
    }

    /// `V^T h` interleaved as `(v_1^T h, v_1^H h, ..., v_d^T h, v_d^H h)`.
    pub fn observation_coefficients(&self, h: &[f64]) -> Result<Vec<Complex64>> {
        self.check_observation(h)?;
        Ok(self
            .eigvecs
            .iter()
            .flat_map(|v| {
                let vt_h: Complex64 = v.iter().zip(h).map(|(z, &x)| z * x).sum();
                [vt_h, vt_h.conj()]
            })
            .collect())
    }

    /// `|v_i^H h|` for each mode.
    pub fn projections(&self, h: &[f64]) -> Result<Vec<f64>> {
        self.check_observation(h)?;
        Ok(self
            .eigvecs
            .iter()
            .map(|v| {
                v.iter()
                    .zip(h)
                    .map(|(z, &x)| z.conj() * x)
                    .sum::<Complex64>()
                    .norm()
            })
            .collect())
    }

    pub(crate) fn check_observation(&self, h: &[f64]) -> Result<()> {
        if h.len() != self.n {
            return Err(Error::Dimension(format!(
                "observation vector has length {} but N = {}",
                h.len(),
                self.n
            )));
        }
        if linalg::real_norm(h) == 0.0 {
            return Err(Error::ZeroObservation);
        }
        Ok(())
    }

    /// Real ambient state `x = V alpha`, after checking the imaginary
    /// residue is below [`REALNESS_TOLERANCE`] relative to `||x||`.
    pub fn state(&self, alpha: &SpectralCoords) -> Result<Vec<f64>> {
        self.check_coords(alpha)?;
        let x = self.v_matrix().mul_vec(alpha.as_slice());
        let scale = linalg::norm(&x);
        let residue = x.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if residue > REALNESS_TOLERANCE * scale.max(f64::MIN_POSITIVE) && residue > 0.0 {
            return Err(Error::NotReal { residue });
        }
        Ok(x.into_iter().map(|z| z.re).collect())
    }

    fn check_coords(&self, alpha: &SpectralCoords) -> Result<()> {
        if alpha.len() != 2 * self.d() {
            return Err(Error::Dimension(format!(
                "spectral coordinates have length {} but 2d = {}",
                alpha.len(),
                2 * self.d()
            )));
        }
        Ok(())
    }
}

/// Conjugate-symmetric coefficients `alpha` with `alpha_{2i} = conj(alpha_{2i-1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoords(Vec<Complex64>);

impl SpectralCoords {
    pub fn new(alpha: Vec<Complex64>) -> Result<Self> {
        if alpha.is_empty() || !alpha.len().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "spectral coordinates need an even, nonzero length, got {}",
                alpha.len()
            )));
        }
        let scale = linalg::norm(&alpha).max(1.0);
        for (i, pair) in alpha.chunks_exact(2).enumerate() {
            let deviation = (pair[1] - pair[0].conj()).norm();
            if deviation > SYMMETRY_TOLERANCE * scale {
                return Err(Error::SymmetryViolation {
                    pair: i + 1,
                    deviation,
                });
            }
        }
        Ok(Self(alpha))
    }

    /// Builds coordinates from the first member of each conjugate pair.
    pub fn from_modes(modes: &[Complex64]) -> Self {
        Self(modes.iter().flat_map(|&z| [z, z.conj()]).collect())
    }

    /// `(1, ..., 1)` of length `2d`, the default initial condition.
    pub fn ones(d: usize) -> Self {
        Self(vec![Complex64::new(1.0, 0.0); 2 * d])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.0)
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self(self.0.iter().map(|z| z * a).collect())
    }

    pub fn difference(&self, other: &SpectralCoords) -> Vec<Complex64> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }
}

/// A scalar observation series with the settings that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub samples: Vec<f64>,
    pub ts: f64,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// `v_i = (e_{2i-1} + j e_{2i}) / sqrt(2)`; gives `V^H V = I`.
pub fn make_canonical_eigvecs(d: usize, n: usize) -> Result<Vec<Vec<Complex64>>> {
    check_dims(d, n)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok((0..d)
        .map(|i| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[2 * i] = Complex64::new(s, 0.0);
            v[2 * i + 1] = Complex64::new(0.0, s);
            v
        })
        .collect())
}

/// `v_i = (a_i + j b_i) / sqrt(||a_i||^2 + ||b_i||^2)` with i.i.d. standard
/// normal entries in `a_i`, `b_i`.
pub fn make_gaussian_eigvecs(d: usize, n: usize, seed: u64) -> Result<Vec<Vec<Complex64>>> {
    check_dims(d, n)?;
    Ok((0..d)
        .map(|i| {
            let mut rng = rng::stream(seed, Purpose::GaussianEigvecs, i as u64);
            let a: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let b: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let scale = (linalg::real_norm(&a).powi(2) + linalg::real_norm(&b).powi(2)).sqrt();
            a.iter()
                .zip(&b)
                .map(|(&re, &im)| Complex64::new(re / scale, im / scale))
                .collect()
        })
        .collect())
}

/// Rescales a complex vector to unit norm.
pub fn unit_normalize(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let norm = linalg::norm(v);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::InvalidArgument(
            "cannot normalize a zero vector".into(),
        ));
    }
    Ok(v.iter().map(|z| z / norm).collect())
}

fn check_dims(d: usize, n: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::Dimension("d must be at least 1".into()));
    }
    if 2 * d > n {
        return Err(Error::Dimension(format!("2d = {} exceeds N = {n}", 2 * d)));
    }
    Ok(())
}

/// Point on the attractor at time `t`: `alpha_t = exp(Lambda t) alpha_0`,
/// `x = V alpha_t`.
pub fn attractor_point(
    sys: &ClassASystem,
    alpha0: &SpectralCoords,
    t: f64,
) -> Result<(Vec<f64>, SpectralCoords)> {
    sys.check_coords(alpha0)?;
    let alpha_t = evolve(sys, alpha0, t);
    let x = sys.state(&alpha_t)?;
    Ok((x, alpha_t))
}

/// `exp(Lambda t) alpha`, computed per conjugate pair so symmetry is exact.
pub fn evolve(sys: &ClassASystem, alpha: &SpectralCoords, t: f64) -> SpectralCoords {
    let modes: Vec<Complex64> = sys
        .thetas
        .iter()
        .zip(alpha.0.chunks_exact(2))
        .map(|(&theta, pair)| pair[0] * Complex64::from_polar(1.0, theta * t))
        .collect();
    SpectralCoords::from_modes(&modes)
}

/// `D^k alpha`. Positive `k` steps backward in time by `k Ts`.
pub fn flow_step(sys: &ClassASystem, alpha: &SpectralCoords, k: i64) -> SpectralCoords {
    evolve(sys, alpha, -(k as f64) * sys.ts)
}

/// `s_k = h^T V D^k alpha_0 + noise_k` for `k = 0..K-1`, with i.i.d.
/// Gaussian noise of standard deviation `noise_sigma`.
pub fn observe_series(
    sys: &ClassASystem,
    h: &[f64],
    alpha0: &SpectralCoords,
    k: usize,
    noise_sigma: f64,
    seed: u64,
) -> Result<TimeSeries> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "series length K must be at least 1".into(),
        ));
    }
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "noise standard deviation must be nonnegative, got {noise_sigma}"
        )));
    }
    sys.check_coords(alpha0)?;
    let coeffs = sys.observation_coefficients(h)?;
    // Each mode contributes 2 Re((v_i^T h) alpha_{2i-1} e^{-j k theta_i Ts}).
    let weights: Vec<Complex64> = coeffs
        .chunks_exact(2)
        .zip(alpha0.0.chunks_exact(2))
        .map(|(c, a)| c[0] * a[0])
        .collect();
    let mut noise = rng::stream(seed, Purpose::MeasurementNoise, 0);
    let samples = (0..k)
        .map(|step| {
            let clean: f64 = weights
                .iter()
                .zip(&sys.thetas)
                .map(|(w, &theta)| {
                    2.0 * (w * Complex64::from_polar(1.0, -(step as f64) * theta * sys.ts)).re
                })
                .sum();
            if noise_sigma > 0.0 {
                let z: f64 = StandardNormal.sample(&mut noise);
                clean + noise_sigma * z
            } else {
                clean
            }
        })
        .collect();
    Ok(TimeSeries {
        samples,
        ts: sys.ts,
        noise_sigma,
        seed,
    })
}
