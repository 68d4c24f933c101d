//! Monte Carlo conditioning experiments.
//!
//! A sweep draws random pairs of points on the attractor, maps both through
//! the delay map for each `M` and records the extreme values of
//! `Q(x, y) = ||F(x) - F(y)||^2 / ||x - y||^2`.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    check_conditions, conditioning_bounds, normalize_observation, ConditioningBounds,
};
use crate::embedding::build_frame;
use crate::rng::{self, cell_index, Purpose};
use crate::system::{evolve, ClassASystem, SpectralCoords};
use crate::{Complex64, Error, Result};

/// Pairs closer than this (relative to `||alpha_0||`) are redrawn.
pub const COINCIDENT_PAIR_TOLERANCE: f64 = 1e-12;
pub const MAX_PAIR_ATTEMPTS: usize = 100;
/// Directions with smaller norm are rejected as degenerate.
pub const DEGENERATE_DIRECTION_TOLERANCE: f64 = 1e-14;

pub const DEFAULT_VARIANCE: f64 = 0.1;
pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_T_MAX: f64 = 10_000.0;

#[derive(Debug, Clone, PartialEq)]
pub enum ObservationMode {
    /// `c = sum_i (1 + w) Re(v_i) + (1 + w') Im(v_i)` with `w ~ N(0, variance)`.
    Perturbed { variance: f64 },
    /// `c = V (1, ..., 1)^T`.
    Exact,
    /// A fixed direction, renormalized per `M`.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub system: ClassASystem,
    pub alpha0: SpectralCoords,
    pub observation: ObservationMode,
    pub m_start: usize,
    pub m_stop: usize,
    pub m_step: usize,
    pub trials: usize,
    pub t_max: f64,
    pub seed: u64,
}

impl SweepConfig {
    /// Defaults for everything but the system and seed: perturbed
    /// observation, `M = 1..=200`, 1000 trials, `t_max = 10000`.
    pub fn new(system: ClassASystem, seed: u64) -> Self {
        let d = system.d();
        Self {
            system,
            alpha0: SpectralCoords::ones(d),
            observation: ObservationMode::Perturbed {
                variance: DEFAULT_VARIANCE,
            },
            m_start: 1,
            m_stop: 200,
            m_step: 1,
            trials: DEFAULT_TRIALS,
            t_max: DEFAULT_T_MAX,
            seed,
        }
    }

    /// `M` values `start, start + step, ...` up to and including `stop`.
    pub fn m_values(&self) -> Vec<usize> {
        if self.m_step == 0 || self.m_start == 0 || self.m_start > self.m_stop {
            return Vec::new();
        }
        (self.m_start..=self.m_stop).step_by(self.m_step).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_step == 0 {
            return Err(Error::InvalidArgument("M step must be positive".into()));
        }
        if self.m_start == 0 {
            return Err(Error::InvalidArgument("M must start at 1 or above".into()));
        }
        if self.m_values().is_empty() {
            return Err(Error::InvalidArgument(format!(
                "empty M range {}..={}",
                self.m_start, self.m_stop
            )));
        }
        if self.trials < 2 {
            return Err(Error::InvalidArgument(
                "at least 2 trials per M are required".into(),
            ));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        if let ObservationMode::Perturbed { variance } = self.observation {
            if !(variance >= 0.0 && variance.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "perturbation variance must be nonnegative, got {variance}"
                )));
            }
        }
        if self.alpha0.len() != 2 * self.system.d() {
            return Err(Error::Dimension(format!(
                "alpha0 has length {}, expected {}",
                self.alpha0.len(),
                2 * self.system.d()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "minQ")]
    pub min_q: f64,
    #[serde(rename = "maxQ")]
    pub max_q: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub delta0: f64,
    #[serde(rename = "deltaM")]
    pub delta_m: f64,
    pub lower: f64,
    pub upper: f64,
    pub empirical_delta: f64,
    pub conditions_ok: bool,
}

/// `max(max_q / c - 1, 1 - min_q / c)`.
pub fn empirical_delta(min_q: f64, max_q: f64, c: f64) -> f64 {
    (max_q / c - 1.0).max(1.0 - min_q / c)
}

fn check_direction(c: Vec<f64>) -> Result<Vec<f64>> {
    let norm = crate::linalg::real_norm(&c);
    if !(norm >= DEGENERATE_DIRECTION_TOLERANCE) {
        return Err(Error::ZeroObservation);
    }
    Ok(c)
}

/// The unnormalized perturbed direction, drawn once per seed.
pub fn perturbed_direction(sys: &ClassASystem, variance: f64, seed: u64) -> Result<Vec<f64>> {
    if !(variance >= 0.0 && variance.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "perturbation variance must be nonnegative, got {variance}"
        )));
    }
    let normal =
        Normal::new(0.0, variance.sqrt()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = rng::stream(seed, Purpose::ObservationPerturbation, 0);
    let mut c = vec![0.0; sys.n()];
    for v in sys.eigvecs() {
        let w_re = 1.0 + normal.sample(&mut rng);
        let w_im = 1.0 + normal.sample(&mut rng);
        for (ci, z) in c.iter_mut().zip(v) {
            *ci += w_re * z.re + w_im * z.im;
        }
    }
    check_direction(c)
}

/// `V (1, ..., 1)^T`, unnormalized.
pub fn exact_direction(sys: &ClassASystem) -> Result<Vec<f64>> {
    let mut c = vec![0.0; sys.n()];
    for v in sys.eigvecs() {
        for (ci, z) in c.iter_mut().zip(v) {
            *ci += 2.0 * z.re;
        }
    }
    check_direction(c)
}

pub fn gen_observation_perturbed(
    sys: &ClassASystem,
    variance: f64,
    seed: u64,
    m: usize,
) -> Result<Vec<f64>> {
    normalize_observation(&perturbed_direction(sys, variance, seed)?, sys.d(), m)
}

pub fn gen_observation_exact(sys: &ClassASystem, m: usize) -> Result<Vec<f64>> {
    normalize_observation(&exact_direction(sys)?, sys.d(), m)
}

/// Direction of the observation for a sweep, before per-`M` scaling.
pub fn observation_direction(
    sys: &ClassASystem,
    mode: &ObservationMode,
    seed: u64,
) -> Result<Vec<f64>> {
    match mode {
        ObservationMode::Perturbed { variance } => perturbed_direction(sys, *variance, seed),
        ObservationMode::Exact => exact_direction(sys),
        ObservationMode::Explicit(h) => {
            if h.len() != sys.n() {
                return Err(Error::Dimension(format!(
                    "observation has length {}, expected N = {}",
                    h.len(),
                    sys.n()
                )));
            }
            check_direction(h.clone())
        }
    }
}

/// Draws `(alpha_x, alpha_y)` with times from `draw`, redrawing coincident pairs.
pub fn sample_pair_with(
    sys: &ClassASystem,
    alpha0: &SpectralCoords,
    mut draw: impl FnMut() -> (f64, f64),
) -> Result<(SpectralCoords, SpectralCoords)> {
    let scale = alpha0.norm().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_PAIR_ATTEMPTS {
        let (tx, ty) = draw();
        let ax = evolve(sys, alpha0, tx);
        let ay = evolve(sys, alpha0, ty);
        let gap = crate::linalg::norm(&ax.difference(&ay));
        if gap / scale > COINCIDENT_PAIR_TOLERANCE {
            return Ok((ax, ay));
        }
    }
    Err(Error::CoincidentPoints)
}

/// A random pair of attractor points with `t_x, t_y` uniform on `(0, t_max)`.
pub fn sample_pair(
    sys: &ClassASystem,
    alpha0: &SpectralCoords,
    t_max: f64,
    trial_seed: u64,
    index: u64,
) -> Result<(SpectralCoords, SpectralCoords)> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    let mut rng = rng::stream(trial_seed, Purpose::PairSample, index);
    sample_pair_with(sys, alpha0, || {
        (rng.random_range(0.0..t_max), rng.random_range(0.0..t_max))
    })
}

/// Closed-form bounds for a sweep configuration.
pub fn sweep_bounds(cfg: &SweepConfig) -> Result<ConditioningBounds> {
    let c = observation_direction(&cfg.system, &cfg.observation, cfg.seed)?;
    conditioning_bounds(&cfg.system, &c)
}

/// Runs the sweep; one record per `M`, sorted by `M`.
///
/// Per-`M` hypothesis failures are reported through `conditions_ok`. The
/// sweep aborts only when the constants themselves are undefined.
pub fn conditioning_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let sys = &cfg.system;
    let direction = observation_direction(sys, &cfg.observation, cfg.seed)?;
    let cb = conditioning_bounds(sys, &direction)?;

    cfg.m_values()
        .into_par_iter()
        .map(|m| {
            let h = normalize_observation(&direction, sys.d(), m)?;
            let fm = build_frame(sys, &h, m)?;
            let (min_q, max_q) = (0..cfg.trials)
                .into_par_iter()
                .map(|trial| {
                    let (ax, ay) =
                        sample_pair(sys, &cfg.alpha0, cfg.t_max, cfg.seed, cell_index(m, trial))?;
                    let q = fm.distance_ratio(&ax, &ay)?;
                    Ok((q, q))
                })
                .try_reduce(
                    || (f64::INFINITY, f64::NEG_INFINITY),
                    |a, b| Ok((a.0.min(b.0), a.1.max(b.1))),
                )?;
            let report = check_conditions(sys, &h, m);
            let (_, delta_m) = cb.delta_at(m);
            Ok(SweepRecord {
                m,
                min_q,
                max_q,
                c: cb.c,
                delta0: cb.delta0,
                delta_m,
                lower: cb.c * (1.0 - delta_m),
                upper: cb.c * (1.0 + delta_m),
                empirical_delta: empirical_delta(min_q, max_q, cb.c),
                conditions_ok: report.injective_ok() && report.stable_ok(),
            })
        })
        .collect()
}

/// Smallest `M` in the sweep from which every record (itself included)
/// has empirical conditioning below `delta0 + eps`. `None` if never reached.
pub fn actual_required_measurements(
    records: &[SweepRecord],
    c: f64,
    delta0: f64,
    eps: f64,
) -> Result<Option<usize>> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no sweep records".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let mut best = None;
    for r in records.iter().rev() {
        if empirical_delta(r.min_q, r.max_q, c) < delta0 + eps {
            best = Some(r.m);
        } else {
            break;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DemoRow {
    pub eps: f64,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "Q")]
    pub q: f64,
}

/// The circle `v = (1, j) / sqrt(2)` observed through
/// `h = sqrt(2 / M) (sqrt(eps), sqrt(1 - eps))`, evaluated on an antipodal
/// pair. Small `eps` makes the delay map badly conditioned at small `M`.
pub fn motivating_demo(theta: f64, eps_grid: &[f64], m_grid: &[usize]) -> Result<Vec<DemoRow>> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "theta must be positive, got {theta}"
        )));
    }
    if eps_grid.is_empty() || m_grid.is_empty() {
        return Err(Error::InvalidArgument("demo grids must be nonempty".into()));
    }
    if let Some(e) = eps_grid.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(Error::InvalidArgument(format!(
            "eps must lie in (0, 1), got {e}"
        )));
    }
    if m_grid.contains(&0) {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)];
    let sys = ClassASystem::new(vec![theta], vec![v], 1.0)?;
    let alpha0 = SpectralCoords::ones(1);
    let ax = alpha0.clone();
    let ay = evolve(&sys, &alpha0, std::f64::consts::PI / theta);

    let mut rows = Vec::with_capacity(eps_grid.len() * m_grid.len());
    for &eps in eps_grid {
        for &m in m_grid {
            let scale = (2.0 / m as f64).sqrt();
            let h = [scale * eps.sqrt(), scale * (1.0 - eps).sqrt()];
            let fm = build_frame(&sys, &h, m)?;
            rows.push(DemoRow {
                eps,
                m,
                q: fm.distance_ratio(&ax, &ay)?,
            });
        }
    }
    Ok(rows)
}

/// `d` frequencies drawn uniformly from `(0, pi)` for random test systems.
pub fn random_thetas(d: usize, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = rng::stream(seed, Purpose::RandomSystem, index);
    (0..d)
        .map(|_| rng.random_range(0.0..std::f64::consts::PI))
        .collect()
}

/// Reports whether the theoretical sandwich holds for a record.
pub fn sandwich_holds(record: &SweepRecord, slack: f64) -> bool {
    record.lower - slack <= record.min_q && record.max_q <= record.upper + slack
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{kappa_extrema, table_scaled_projections};
    use crate::linalg::real_norm;
    use crate::system::{make_canonical_eigvecs, make_gaussian_eigvecs};
    use std::f64::consts::PI;

    const TABLE_ONE: [f64; 3] = [2.3129, 0.1765, 1.4861];

    fn table_one() -> ClassASystem {
        ClassASystem::new(
            TABLE_ONE.to_vec(),
            make_canonical_eigvecs(3, 50).unwrap(),
            1.0,
        )
        .unwrap()
    }

    fn circle(theta: f64) -> ClassASystem {
        ClassASystem::new(vec![theta], make_canonical_eigvecs(1, 2).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn zero_variance_is_sum_of_real_and_imaginary_parts() {
        let sys = ClassASystem::new(vec![0.4, 1.1], make_gaussian_eigvecs(2, 6, 3).unwrap(), 1.0)
            .unwrap();
        let c = perturbed_direction(&sys, 0.0, 99).unwrap();
        let mut expect = vec![0.0; 6];
        for v in sys.eigvecs() {
            for (e, z) in expect.iter_mut().zip(v) {
                *e += z.re + z.im;
            }
        }
        for (a, b) in c.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn perturbed_projections_cluster_near_one() {
        let sys = table_one();
        let h = gen_observation_perturbed(&sys, 0.1, 2024, 10).unwrap();
        for p in table_scaled_projections(&sys, &h).unwrap() {
            assert!(p > 0.3 && p < 2.0, "{p}");
        }
        let again = gen_observation_perturbed(&sys, 0.1, 2024, 10).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn generated_observations_are_normalized() {
        let sys = table_one();
        for m in [1, 6, 37, 200] {
            for h in [
                gen_observation_perturbed(&sys, 0.1, 5, m).unwrap(),
                gen_observation_exact(&sys, m).unwrap(),
            ] {
                assert!((real_norm(&h).powi(2) - 6.0 / m as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_observation_equalizes_projections() {
        let sys = table_one();
        let h = gen_observation_exact(&sys, 50).unwrap();
        let (k1, k2) = kappa_extrema(&sys, &h).unwrap();
        assert!((k1 / k2 - 1.0).abs() < 1e-12);
        assert!(conditioning_bounds(&sys, &h).unwrap().delta0.abs() < 1e-12);

        let h = gen_observation_exact(&circle(0.3), 2).unwrap();
        assert!((h[0] - 1.0).abs() < 1e-15 && h[1].abs() < 1e-15);
    }

    #[test]
    fn sample_pair_resamples_coincident_draws() {
        let sys = circle(0.3);
        let alpha0 = SpectralCoords::ones(1);
        let mut calls = 0;
        let (ax, ay) = sample_pair_with(&sys, &alpha0, || {
            calls += 1;
            if calls < 3 {
                (5.0, 5.0)
            } else {
                (1.0, 2.0)
            }
        })
        .unwrap();
        assert_eq!(calls, 3);
        assert!(crate::linalg::norm(&ax.difference(&ay)) > 0.1);

        let stuck = sample_pair_with(&sys, &alpha0, || (4.0, 4.0));
        assert_eq!(stuck.unwrap_err(), Error::CoincidentPoints);
    }

    #[test]
    fn sample_pair_is_deterministic() {
        let sys = table_one();
        let alpha0 = SpectralCoords::ones(3);
        let a = sample_pair(&sys, &alpha0, 10_000.0, 17, cell_index(4, 9)).unwrap();
        let b = sample_pair(&sys, &alpha0, 10_000.0, 17, cell_index(4, 9)).unwrap();
        assert_eq!(a, b);
        let c = sample_pair(&sys, &alpha0, 10_000.0, 17, cell_index(4, 10)).unwrap();
        assert_ne!(a, c);
        assert!(sample_pair(&sys, &alpha0, 0.0, 17, 0).is_err());
    }

    #[test]
    fn circle_chord_length() {
        let theta = 0.37;
        let sys = circle(theta);
        let alpha0 = SpectralCoords::ones(1);
        let mut times = [(12.5, 3.25)].into_iter();
        let (ax, ay) = sample_pair_with(&sys, &alpha0, || times.next().unwrap()).unwrap();
        let x = sys.state(&ax).unwrap();
        let y = sys.state(&ay).unwrap();
        let dist = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let chord = 2.0 * 2f64.sqrt() * (theta * (12.5 - 3.25) / 2.0).sin().abs();
        assert!((dist - chord).abs() < 1e-12);
    }

    fn small_sweep(observation: ObservationMode) -> SweepConfig {
        SweepConfig {
            observation,
            m_start: 2,
            m_stop: 120,
            m_step: 17,
            trials: 50,
            ..SweepConfig::new(table_one(), 7)
        }
    }

    #[test]
    fn sweep_records_are_sorted_and_consistent() {
        let cfg = small_sweep(ObservationMode::Perturbed { variance: 0.1 });
        let cb = sweep_bounds(&cfg).unwrap();
        let records = conditioning_sweep(&cfg).unwrap();
        let ms: Vec<usize> = records.iter().map(|r| r.m).collect();
        assert_eq!(ms, vec![2, 19, 36, 53, 70, 87, 104]);
        for r in &records {
            assert!(r.min_q <= r.max_q);
            assert!(r.min_q > 0.0 && r.max_q.is_finite());
            assert!(r.empirical_delta >= 0.0);
            assert_eq!(r.conditions_ok, r.m as u64 >= cb.m_threshold);
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = small_sweep(ObservationMode::Exact);
        assert_eq!(
            conditioning_sweep(&cfg).unwrap(),
            conditioning_sweep(&cfg).unwrap()
        );
    }

    #[test]
    fn sweep_rejects_bad_configs() {
        let mut cfg = small_sweep(ObservationMode::Exact);
        cfg.m_start = 10;
        cfg.m_stop = 5;
        assert!(conditioning_sweep(&cfg).is_err());
        let mut cfg = small_sweep(ObservationMode::Exact);
        cfg.trials = 1;
        assert!(conditioning_sweep(&cfg).is_err());
        let mut cfg = small_sweep(ObservationMode::Explicit(vec![0.0; 50]));
        cfg.trials = 5;
        assert_eq!(
            conditioning_sweep(&cfg).unwrap_err(),
            Error::ZeroObservation
        );
    }

    #[test]
    fn exact_sweep_respects_delta_one() {
        let records = conditioning_sweep(&SweepConfig {
            observation: ObservationMode::Exact,
            m_start: 41,
            m_stop: 200,
            m_step: 53,
            trials: 200,
            ..SweepConfig::new(table_one(), 11)
        })
        .unwrap();
        for r in &records {
            assert!(r.conditions_ok);
            assert!((r.c - 1.0).abs() < 1e-12);
            assert!(r.empirical_delta <= r.delta_m, "{r:?}");
            assert!(sandwich_holds(r, 1e-9));
        }
    }

    fn record(m: usize, min_q: f64, max_q: f64) -> SweepRecord {
        SweepRecord {
            m,
            min_q,
            max_q,
            c: 1.0,
            delta0: 0.0,
            delta_m: 0.0,
            lower: 1.0,
            upper: 1.0,
            empirical_delta: empirical_delta(min_q, max_q, 1.0),
            conditions_ok: true,
        }
    }

    #[test]
    fn actual_required_measurements_cases() {
        let records = vec![
            record(10, 0.5, 1.6),
            record(20, 0.85, 1.1),
            record(30, 0.7, 1.1),
            record(40, 0.9, 1.05),
            record(50, 0.95, 1.02),
        ];
        assert_eq!(
            actual_required_measurements(&records, 1.0, 0.0, 0.2).unwrap(),
            Some(40)
        );
        assert_eq!(
            actual_required_measurements(&records, 1.0, 0.0, 0.5).unwrap(),
            Some(20)
        );
        assert_eq!(
            actual_required_measurements(&records, 1.0, 0.0, 0.01).unwrap(),
            None
        );
        assert_eq!(
            actual_required_measurements(&records[4..], 1.0, 0.0, 0.1).unwrap(),
            Some(50)
        );
        assert!(actual_required_measurements(&[], 1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn demo_hand_values() {
        // theta = pi/2, M = 3: Q = 2 (1 + eps) / 3
        let rows = motivating_demo(PI / 2.0, &[0.2, 0.5], &[3]).unwrap();
        assert!((rows[0].q - 0.8).abs() < 1e-12);
        assert!((rows[1].q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn demo_oracle_values() {
        let rows = motivating_demo(0.03, &[0.001, 0.01, 0.05, 0.1], &[3]).unwrap();
        let expect = [0.008777, 0.034855, 0.128804, 0.238333];
        for (r, e) in rows.iter().zip(expect) {
            assert!((r.q - e).abs() < 1e-6, "{r:?}");
        }
        let far = motivating_demo(0.03, &[0.1], &[400]).unwrap();
        assert!((far[0].q - 1.04467).abs() < 1e-5);
    }

    #[test]
    fn demo_rejects_bad_inputs() {
        assert!(motivating_demo(0.03, &[1.0], &[3]).is_err());
        assert!(motivating_demo(0.03, &[0.0], &[3]).is_err());
        assert!(motivating_demo(0.03, &[], &[3]).is_err());
        assert!(motivating_demo(-1.0, &[0.1], &[3]).is_err());
        assert_eq!(motivating_demo(0.03, &[0.1], &[3]).unwrap().len(), 1);
    }

    #[test]
    fn random_thetas_in_range() {
        let t = random_thetas(3, 1, 0);
        assert_eq!(t, random_thetas(3, 1, 0));
        assert!(t.iter().all(|x| *x > 0.0 && *x < PI));
        assert_ne!(t, random_thetas(3, 1, 1));
    }
}
