//! Correlation-dimension estimation from a scalar series.
//!
//! Delay vectors are formed from the series, the correlation sum
//! `C(eps, K) = 2 / (K (K - 1)) #{ pairs with distance < eps }` is evaluated
//! on a log-spaced grid, and the local slope `d log C / d log eps` is read
//! off where it is flat.

use rayon::prelude::*;
use serde::Serialize;

use crate::system::{observe_series, ClassASystem, SpectralCoords, TimeSeries};
use crate::{Error, Result};

pub const DEFAULT_K: usize = 2000;
pub const DEFAULT_GRID_POINTS: usize = 60;
/// Grid spans `[1e-3, 1e1]` times the median pairwise distance.
pub const DEFAULT_GRID_SPAN: (f64, f64) = (1e-3, 1e1);
pub const DEFAULT_PLATEAU_TOL: f64 = 0.15;
/// Decades of `eps`.
pub const DEFAULT_PLATEAU_MIN_WIDTH: f64 = 0.5;

/// Delay vectors `[s_k, s_{k-1}, ..., s_{k-M+1}]` for `k = M-1, M, ...`.
///
/// At most `max_points` vectors are returned (all feasible ones if `None`).
pub fn reconstruct_delay_vectors(
    series: &[f64],
    m: usize,
    max_points: Option<usize>,
) -> Result<Vec<Vec<f64>>> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    if series.len() < m {
        return Err(Error::InvalidArgument(format!(
            "series of length {} is shorter than M = {m}",
            series.len()
        )));
    }
    let feasible = series.len() - m + 1;
    let k = max_points.map_or(feasible, |p| p.min(feasible));
    Ok((0..k)
        .map(|j| series[j..j + m].iter().rev().copied().collect())
        .collect())
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// All pairwise distances in ascending order. Pairs whose indices differ by
/// `theiler` or less are skipped (0 keeps every distinct pair).
pub fn sorted_pairwise_distances(points: &[Vec<f64>], theiler: usize) -> Vec<f64> {
    let k = points.len();
    let mut all: Vec<f64> = (0..k)
        .into_par_iter()
        .flat_map_iter(|i| {
            let start = (i + 1 + theiler).min(k);
            (start..k).map(move |j| distance(&points[i], &points[j]))
        })
        .collect();
    all.par_sort_unstable_by(f64::total_cmp);
    all
}

/// Brute-force `C(eps, K)` with the strict comparison `distance < eps`.
pub fn correlation_sum(points: &[Vec<f64>], eps: f64) -> Result<f64> {
    let k = points.len();
    if k < 2 {
        return Err(Error::InvalidArgument(
            "correlation sum needs at least 2 points".into(),
        ));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let mut count = 0usize;
    for i in 0..k {
        for j in i + 1..k {
            if distance(&points[i], &points[j]) < eps {
                count += 1;
            }
        }
    }
    Ok(2.0 * count as f64 / (k as f64 * (k as f64 - 1.0)))
}

/// `C(eps)` for every grid point from pre-sorted distances.
pub fn correlation_sums_sorted(sorted: &[f64], eps_grid: &[f64]) -> Vec<f64> {
    let total = sorted.len() as f64;
    eps_grid
        .iter()
        .map(|&eps| {
            if sorted.is_empty() {
                return 0.0;
            }
            sorted.partition_point(|&d| d < eps) as f64 / total
        })
        .collect()
}

/// Median of ascending values.
pub fn median_sorted(sorted: &[f64]) -> Option<f64> {
    let n = sorted.len();
    match n {
        0 => None,
        _ if n % 2 == 1 => Some(sorted[n / 2]),
        _ => Some(0.5 * (sorted[n / 2 - 1] + sorted[n / 2])),
    }
}

/// `points` values log-spaced from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || points < 2 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < lo < hi and at least 2 points, got [{lo}, {hi}] with {points}"
        )));
    }
    let (a, b) = (lo.log10(), hi.log10());
    let step = (b - a) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| 10f64.powf(a + step * i as f64))
        .collect())
}

/// The default grid for a set of sorted distances.
pub fn default_eps_grid(sorted: &[f64]) -> Result<Vec<f64>> {
    let med = median_sorted(sorted)
        .filter(|m| *m > 0.0)
        .ok_or_else(|| Error::InvalidArgument("median pairwise distance is zero".into()))?;
    log_grid(
        DEFAULT_GRID_SPAN.0 * med,
        DEFAULT_GRID_SPAN.1 * med,
        DEFAULT_GRID_POINTS,
    )
}

/// `d log C / d log eps` at each grid point where `C > 0`.
///
/// Differences are central between neighbouring nonzero points and
/// one-sided at the ends; grid points with `C = 0` yield `None`.
pub fn local_gradient(eps_grid: &[f64], corr_sum: &[f64]) -> Result<Vec<Option<f64>>> {
    if eps_grid.len() != corr_sum.len() {
        return Err(Error::Dimension(format!(
            "grid has {} points but {} correlation sums",
            eps_grid.len(),
            corr_sum.len()
        )));
    }
    let idx: Vec<usize> = (0..corr_sum.len()).filter(|&i| corr_sum[i] > 0.0).collect();
    if idx.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 grid points with nonzero correlation sum, found {}",
            idx.len()
        )));
    }
    let lx = |i: usize| eps_grid[i].ln();
    let ly = |i: usize| corr_sum[i].ln();
    let slope = |a: usize, b: usize| (ly(b) - ly(a)) / (lx(b) - lx(a));
    let mut out = vec![None; corr_sum.len()];
    let last = idx.len() - 1;
    for (pos, &i) in idx.iter().enumerate() {
        let g = if pos == 0 {
            slope(idx[0], idx[1])
        } else if pos == last {
            slope(idx[last - 1], idx[last])
        } else {
            slope(idx[pos - 1], idx[pos + 1])
        };
        out[i] = Some(g);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Plateau {
    pub estimate: f64,
    pub eps_low: f64,
    pub eps_high: f64,
    /// `log10(eps_high / eps_low)`.
    pub width: f64,
}

/// Widest contiguous run of defined gradients whose spread is at most `tol`
/// and which spans at least `min_width` decades. The estimate is the mean
/// gradient over the run.
pub fn plateau_estimate(
    d_values: &[Option<f64>],
    eps_grid: &[f64],
    tol: f64,
    min_width: f64,
) -> Option<Plateau> {
    let n = d_values.len().min(eps_grid.len());
    let mut best: Option<Plateau> = None;
    for start in 0..n {
        let Some(first) = d_values[start] else {
            continue;
        };
        let (mut lo, mut hi, mut sum) = (first, first, first);
        for end in start..n {
            if end > start {
                let Some(v) = d_values[end] else { break };
                lo = lo.min(v);
                hi = hi.max(v);
                sum += v;
            }
            if hi - lo > tol {
                break;
            }
            let width = (eps_grid[end] / eps_grid[start]).log10();
            if width >= min_width && best.is_none_or(|b| width > b.width) {
                best = Some(Plateau {
                    estimate: sum / (end - start + 1) as f64,
                    eps_low: eps_grid[start],
                    eps_high: eps_grid[end],
                    width,
                });
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationProfile {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub eps_grid: Vec<f64>,
    pub corr_sum: Vec<f64>,
    pub local_grad: Vec<Option<f64>>,
    pub plateau: Option<Plateau>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateauSettings {
    pub tol: f64,
    pub min_width: f64,
}

impl Default for PlateauSettings {
    fn default() -> Self {
        Self {
            tol: DEFAULT_PLATEAU_TOL,
            min_width: DEFAULT_PLATEAU_MIN_WIDTH,
        }
    }
}

/// Profile of a point cloud. Without a grid, the default grid around the
/// median distance is used.
///
/// Grid points where every pair is already counted (`C = 1`) are left out of
/// the plateau search, since the flat zero slope there says nothing about
/// the attractor.
pub fn correlation_profile(
    points: &[Vec<f64>],
    m: usize,
    eps_grid: Option<&[f64]>,
    plateau: PlateauSettings,
    theiler: usize,
) -> Result<CorrelationProfile> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument(
            "at least 2 delay vectors are required".into(),
        ));
    }
    let sorted = sorted_pairwise_distances(points, theiler);
    if sorted.is_empty() {
        return Err(Error::InvalidArgument(
            "Theiler window excludes every pair".into(),
        ));
    }
    let grid = match eps_grid {
        Some(g) => g.to_vec(),
        None => default_eps_grid(&sorted)?,
    };
    let corr_sum = correlation_sums_sorted(&sorted, &grid);
    let local_grad = local_gradient(&grid, &corr_sum)?;
    let masked: Vec<Option<f64>> = local_grad
        .iter()
        .zip(&corr_sum)
        .map(|(g, &c)| if c < 1.0 { *g } else { None })
        .collect();
    Ok(CorrelationProfile {
        m,
        k: points.len(),
        plateau: plateau_estimate(&masked, &grid, plateau.tol, plateau.min_width),
        eps_grid: grid,
        corr_sum,
        local_grad,
    })
}

#[derive(Debug, Clone)]
pub struct DimensionConfig {
    pub k: usize,
    pub m_list: Vec<usize>,
    pub noise_sigma: f64,
    pub eps_grid: Option<Vec<f64>>,
    pub plateau: PlateauSettings,
    pub theiler: usize,
    pub seed: u64,
}

/// One noisy series of length `K + max(M) - 1`, shared by every `M`, and one
/// profile per `M` built from its first `K` delay vectors.
pub fn dimension_experiment(
    sys: &ClassASystem,
    h: &[f64],
    alpha0: &SpectralCoords,
    cfg: &DimensionConfig,
) -> Result<(TimeSeries, Vec<CorrelationProfile>)> {
    if cfg.k < 2 {
        return Err(Error::InvalidArgument(format!(
            "K must be at least 2, got {}",
            cfg.k
        )));
    }
    let max_m = *cfg
        .m_list
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidArgument("M list is empty".into()))?;
    let series = observe_series(sys, h, alpha0, cfg.k + max_m - 1, cfg.noise_sigma, cfg.seed)?;
    let profiles = cfg
        .m_list
        .iter()
        .map(|&m| {
            let points = reconstruct_delay_vectors(&series.samples, m, Some(cfg.k))?;
            correlation_profile(
                &points,
                m,
                cfg.eps_grid.as_deref(),
                cfg.plateau,
                cfg.theiler,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((series, profiles))
}
