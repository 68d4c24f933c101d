//! The delay-coordinate map restricted to the attractor.
//!
//! For `x = V alpha` the `k`-th delay coordinate is
//! `h^T Phi^{k-1} x = h^T V D^{k-1} alpha`, so on the attractor the whole map
//! is the complex `M x 2d` frame matrix `G` with rows `h^T V D^{k-1}`:
//! `F(x) = G alpha` and `||F(x) - F(y)||^2 = ||G (alpha_x - alpha_y)||^2`.

use num_complex::Complex64;

use crate::linalg::{self, CMatrix};
use crate::system::{ClassASystem, SpectralCoords, REALNESS_TOLERANCE};
use crate::{Error, Result};

/// Rows are re-synthesized from exact phases at this interval.
const RESYNC_INTERVAL: usize = 64;

/// Points closer than this (relative to `||alpha_x||`) count as coincident.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct FrameMatrix {
    g: CMatrix,
    h: Vec<f64>,
    coefficients: Vec<Complex64>,
    signed_frequencies: Vec<f64>,
    ts: f64,
    state_gram: CMatrix,
}

/// Builds `G` for `M` delays.
///
/// Row `k+1` is obtained from row `k` by multiplying by the diagonal of `D`;
/// every [`RESYNC_INTERVAL`] rows the running row is rebuilt from
/// `exp(-j k w Ts)` so phase error does not accumulate with `M`.
pub fn build_frame(sys: &ClassASystem, h: &[f64], m: usize) -> Result<FrameMatrix> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "number of delays M must be at least 1".into(),
        ));
    }
    let coefficients = sys.observation_coefficients(h)?;
    let freqs = sys.signed_frequencies();
    let ts = sys.ts();
    let step = sys.flow_diagonal();
    let cols = coefficients.len();

    let mut g = CMatrix::zeros(m, cols);
    let mut running = coefficients.clone();
    for k in 0..m {
        if k % RESYNC_INTERVAL == 0 {
            running = exact_row(&coefficients, &freqs, ts, k);
        }
        g.row_mut(k).copy_from_slice(&running);
        for (r, s) in running.iter_mut().zip(&step) {
            *r *= s;
        }
    }
    Ok(FrameMatrix {
        g,
        h: h.to_vec(),
        coefficients,
        signed_frequencies: freqs,
        ts,
        state_gram: sys.gram(),
    })
}

fn exact_row(coefficients: &[Complex64], freqs: &[f64], ts: f64, k: usize) -> Vec<Complex64> {
    coefficients
        .iter()
        .zip(freqs)
        .map(|(c, &w)| c * Complex64::from_polar(1.0, -(k as f64) * w * ts))
        .collect()
}

impl FrameMatrix {
    pub fn g(&self) -> &CMatrix {
        &self.g
    }

    /// Number of delays.
    pub fn m(&self) -> usize {
        self.g.rows()
    }

    pub fn d(&self) -> usize {
        self.g.cols() / 2
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    /// `h^T V`, i.e. the first row of `G`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Row `k` (0-based) recomputed directly from `h^T V D^k`.
    pub fn exact_row(&self, k: usize) -> Vec<Complex64> {
        exact_row(&self.coefficients, &self.signed_frequencies, self.ts, k)
    }

    /// `G^H G`.
    pub fn frame_operator(&self) -> CMatrix {
        self.g.gram()
    }

    /// `V^H V` of the generating system.
    pub fn state_gram(&self) -> &CMatrix {
        &self.state_gram
    }

    /// `F(x)` for `x = V alpha`.
    pub fn apply(&self, alpha: &SpectralCoords) -> Result<Vec<f64>> {
        self.check_len(alpha)?;
        let y = self.g.mul_vec(alpha.as_slice());
        let scale = linalg::norm(&y);
        let residue = y.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if residue > REALNESS_TOLERANCE * scale && residue > 0.0 {
            return Err(Error::NotReal { residue });
        }
        Ok(y.into_iter().map(|z| z.re).collect())
    }

    /// `||G delta||^2` for an arbitrary coefficient difference.
    pub fn squared_image_norm(&self, delta: &[Complex64]) -> f64 {
        let y = self.g.mul_vec(delta);
        y.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Q(x, y) = ||F(x) - F(y)||^2 / ||x - y||^2`, evaluated in spectral
    /// coordinates: `||G delta||^2 / (delta^H V^H V delta)`.
    pub fn distance_ratio(
        &self,
        alpha_x: &SpectralCoords,
        alpha_y: &SpectralCoords,
    ) -> Result<f64> {
        self.check_len(alpha_x)?;
        self.check_len(alpha_y)?;
        let delta = alpha_x.difference(alpha_y);
        if linalg::norm(&delta) <= COINCIDENCE_TOLERANCE * alpha_x.norm() {
            return Err(Error::CoincidentPoints);
        }
        let denom = self.state_gram.quadratic_form(&delta);
        if denom <= 0.0 {
            return Err(Error::CoincidentPoints);
        }
        Ok(self.squared_image_norm(&delta) / denom)
    }

    /// For `M = 2d`, the factorization `G = W^T H` with `W` the Vandermonde
    /// matrix on the nodes `exp(-j w Ts)` and `H = diag(h^T V)`.
    /// Returns `(nodes, diagonal)`, or `None` when `G` is not square.
    pub fn vandermonde_factors(&self) -> Option<(Vec<Complex64>, Vec<Complex64>)> {
        if self.g.rows() != self.g.cols() {
            return None;
        }
        let nodes = self
            .signed_frequencies
            .iter()
            .map(|&w| Complex64::from_polar(1.0, -w * self.ts))
            .collect();
        Some((nodes, self.coefficients.clone()))
    }

    fn check_len(&self, alpha: &SpectralCoords) -> Result<()> {
        if alpha.len() != self.g.cols() {
            return Err(Error::Dimension(format!(
                "spectral coordinates have length {} but 2d = {}",
                alpha.len(),
                self.g.cols()
            )));
        }
        Ok(())
    }
}

/// Applies the delay map: `F(x)` for `x = V alpha`.
pub fn apply_delay_map(fm: &FrameMatrix, alpha: &SpectralCoords) -> Result<Vec<f64>> {
    fm.apply(alpha)
}

/// Squared-distance ratio `Q(x, y)` for two attractor points.
pub fn distance_ratio(
    fm: &FrameMatrix,
    alpha_x: &SpectralCoords,
    alpha_y: &SpectralCoords,
) -> Result<f64> {
    fm.distance_ratio(alpha_x, alpha_y)
}
