//! Closed-form conditioning bounds for the delay map on a class A(d) attractor.
//!
//! With `kappa_1, kappa_2` the extreme normalized projections `|v_i^H h| / ||h||`,
//! `A_1, A_2` the extreme eigenvalues of `V^H V` and `nu` the largest reciprocal
//! sine over the sampled frequencies, an observation normalized to
//! `||h||^2 = 2d / M` gives, for every pair of attractor points,
//!
//! ```text
//! C (1 - delta(M)) <= ||F(x) - F(y)||^2 / ||x - y||^2 <= C (1 + delta(M))
//! C        = d (kappa_1^2 / A_2 + kappa_2^2 / A_1)
//! delta(M) = delta_0 + delta_1(M)
//! delta_0  = (A_2 kappa_2^2 - A_1 kappa_1^2) / (A_2 kappa_2^2 + A_1 kappa_1^2)
//! delta_1  = (2d - 1) nu / M * 2 A_2 kappa_2^2 / (A_2 kappa_2^2 + A_1 kappa_1^2)
//! ```
//!
//! once `M > (2d - 1) nu A_2 kappa_2^2 / (A_1 kappa_1^2)`. The bounds come
//! from Gershgorin disks of `G^H G`, which are exposed here as well.

use serde::Serialize;

use crate::embedding::FrameMatrix;
use crate::linalg::{self, hermitian_extrema};
use crate::system::ClassASystem;
use crate::{Error, Result};

/// A sine below this magnitude makes `nu` infinite.
pub const DEGENERATE_SINE_TOLERANCE: f64 = 1e-12;
/// `|v_i^H h| / ||h||` must exceed this for the projection condition.
pub const PROJECTION_TOLERANCE: f64 = 1e-12;
/// Relative tolerance on `||h||^2 = 2d / M`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// `(kappa_1, kappa_2)`: min and max of `|v_i^H h| / ||h||`.
pub fn kappa_extrema(sys: &ClassASystem, h: &[f64]) -> Result<(f64, f64)> {
    let proj = sys.projections(h)?;
    let hn = linalg::real_norm(h);
    let k1 = proj.iter().fold(f64::INFINITY, |a, &p| a.min(p / hn));
    let k2 = proj.iter().fold(0.0_f64, |a, &p| a.max(p / hn));
    Ok((k1, k2))
}

/// `2d |v_i^H h|^2 / ||h||^2` per mode.
///
/// Published parameter tables list the projections on this scale (they
/// average to about one), while `kappa` itself is defined without the `2d`
/// factor. `delta_0`, `delta_1` and `M_hat` are unchanged by the scaling.
pub fn table_scaled_projections(sys: &ClassASystem, h: &[f64]) -> Result<Vec<f64>> {
    let proj = sys.projections(h)?;
    let hn2 = linalg::real_norm(h).powi(2);
    let two_d = 2.0 * sys.d() as f64;
    Ok(proj.iter().map(|p| two_d * p * p / hn2).collect())
}

/// `(A_1, A_2)`: extreme eigenvalues of `V^H V`.
pub fn gram_extrema(sys: &ClassASystem) -> Result<(f64, f64)> {
    hermitian_extrema(&sys.gram())
}

/// `nu` for a system. See [`nu_from_angles`].
pub fn nu(sys: &ClassASystem) -> Result<f64> {
    nu_from_angles(sys.thetas(), sys.ts())
}

/// `nu = max { 1/|sin(theta_p Ts)|, 1/|sin((theta_p - theta_q) Ts / 2)|,
/// 1/|sin((theta_p + theta_q) Ts / 2)| }`, the first term over all `p`
/// and the others over `p != q`.
///
/// `nu` is finite exactly when the sampled eigenvalues `exp(+-j theta_i Ts)`
/// are distinct and strictly complex; otherwise this fails and names the
/// offending mode or pair.
pub fn nu_from_angles(thetas: &[f64], ts: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (p, &tp) in thetas.iter().enumerate() {
        let s = (tp * ts).sin().abs();
        if s < DEGENERATE_SINE_TOLERANCE {
            return Err(Error::DegenerateAngle(format!(
                "sin(theta_{} Ts) = 0: exp(j theta_{} Ts) is real",
                p + 1,
                p + 1
            )));
        }
        worst = worst.max(1.0 / s);
        for (q, &tq) in thetas.iter().enumerate().skip(p + 1) {
            let diff = ((tp - tq) * ts / 2.0).sin().abs();
            let sum = ((tp + tq) * ts / 2.0).sin().abs();
            if diff < DEGENERATE_SINE_TOLERANCE || sum < DEGENERATE_SINE_TOLERANCE {
                return Err(Error::DegenerateAngle(format!(
                    "modes {} and {} sample to the same eigenvalue (or its conjugate)",
                    p + 1,
                    q + 1
                )));
            }
            worst = worst.max(1.0 / diff).max(1.0 / sum);
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditioningBounds {
    pub d: usize,
    pub kappa1: f64,
    pub kappa2: f64,
    #[serde(rename = "A1")]
    pub a1: f64,
    #[serde(rename = "A2")]
    pub a2: f64,
    pub nu: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub delta0: f64,
    /// Smallest integer `M` strictly above `(2d - 1) nu A_2 kappa_2^2 / (A_1 kappa_1^2)`.
    #[serde(rename = "M_threshold")]
    pub m_threshold: u64,
}

impl ConditioningBounds {
    /// Builds the bounds from squared projections, Gram extrema and `nu`.
    pub fn from_parts(
        d: usize,
        kappa1_sq: f64,
        kappa2_sq: f64,
        a1: f64,
        a2: f64,
        nu: f64,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dimension("d must be at least 1".into()));
        }
        if !(kappa1_sq > 0.0 && kappa1_sq <= kappa2_sq && kappa2_sq.is_finite()) {
            return Err(Error::Condition(format!(
                "need 0 < kappa_1^2 <= kappa_2^2, got {kappa1_sq} and {kappa2_sq}"
            )));
        }
        if !(a1 > 0.0 && a1 <= a2 && a2.is_finite()) {
            return Err(Error::Condition(format!(
                "need 0 < A_1 <= A_2, got {a1} and {a2}"
            )));
        }
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::Condition(format!(
                "nu must be finite and positive, got {nu}"
            )));
        }
        let lo = a1 * kappa1_sq;
        let hi = a2 * kappa2_sq;
        let df = d as f64;
        let c = df * (kappa1_sq / a2 + kappa2_sq / a1);
        let delta0 = (hi - lo) / (hi + lo);
        let threshold = (2.0 * df - 1.0) * (hi / lo) * nu;
        Ok(Self {
            d,
            kappa1: kappa1_sq.sqrt(),
            kappa2: kappa2_sq.sqrt(),
            a1,
            a2,
            nu,
            c,
            delta0,
            m_threshold: threshold.floor() as u64 + 1,
        })
    }

    fn skew(&self) -> f64 {
        let hi = self.a2 * self.kappa2 * self.kappa2;
        let lo = self.a1 * self.kappa1 * self.kappa1;
        2.0 * hi / (hi + lo)
    }

    /// `(delta_1(M), delta_0 + delta_1(M))`.
    pub fn delta_at(&self, m: usize) -> (f64, f64) {
        let delta1 = (2.0 * self.d as f64 - 1.0) * self.nu / m as f64 * self.skew();
        (delta1, self.delta0 + delta1)
    }

    /// `M_hat(eps)`: the `M` at which `delta_1(M) = eps`.
    pub fn required_measurements(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "eps must be positive, got {eps}"
            )));
        }
        Ok((2.0 * self.d as f64 - 1.0) * self.nu / eps * self.skew())
    }

    /// `ceil(2 (2d - 1) nu / eps)`, valid for `0 < eps < 1 - delta_0`.
    pub fn corollary_min_m(&self, eps: f64) -> Result<u64> {
        corollary_min_m(self.d, self.nu, self.delta0, eps)
    }

    /// Lower and upper sandwich values `C (1 -+ delta(M))`.
    pub fn sandwich(&self, m: usize) -> (f64, f64) {
        let (_, delta) = self.delta_at(m);
        (self.c * (1.0 - delta), self.c * (1.0 + delta))
    }
}

/// Closed-form constants for `(sys, h)`. Fails when `kappa_1 = 0` or `nu`
/// is infinite.
pub fn conditioning_bounds(sys: &ClassASystem, h: &[f64]) -> Result<ConditioningBounds> {
    let (k1, k2) = kappa_extrema(sys, h)?;
    if k1 <= PROJECTION_TOLERANCE {
        return Err(Error::Condition(
            "observation is orthogonal to an eigenvector (kappa_1 = 0)".into(),
        ));
    }
    let (a1, a2) = gram_extrema(sys)?;
    ConditioningBounds::from_parts(sys.d(), k1 * k1, k2 * k2, a1, a2, nu(sys)?)
}

/// `(delta_1(M), delta(M))`.
pub fn delta_of_m(cb: &ConditioningBounds, m: usize) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    Ok(cb.delta_at(m))
}

pub fn required_measurements(cb: &ConditioningBounds, eps: f64) -> Result<f64> {
    cb.required_measurements(eps)
}

/// Smallest `M` with `M >= 2 (2d - 1) nu / eps`.
pub fn corollary_min_m(d: usize, nu: f64, delta0: f64, eps: f64) -> Result<u64> {
    if !(eps > 0.0 && eps < 1.0 - delta0) {
        return Err(Error::InvalidArgument(format!(
            "eps must lie in (0, 1 - delta_0) = (0, {}), got {eps}",
            1.0 - delta0
        )));
    }
    let bound = 2.0 * (2.0 * d as f64 - 1.0) * nu / eps;
    Ok(bound.ceil() as u64)
}

/// `h = sqrt(2d / M) c / ||c||`.
pub fn normalize_observation(c: &[f64], d: usize, m: usize) -> Result<Vec<f64>> {
    let norm = linalg::real_norm(c);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroObservation);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let scale = (2.0 * d as f64 / m as f64).sqrt() / norm;
    Ok(c.iter().map(|x| x * scale).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Needed for injectivity and for the stable-embedding bound.
    Both,
    /// Needed for the stable-embedding bound only.
    StableOnly,
    /// Needed for injectivity only.
    InjectiveOnly,
    /// Informational; never fails a report.
    Advisory,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub scope: Scope,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    #[serde(rename = "M")]
    pub m: usize,
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    fn all(&self, pred: impl Fn(Scope) -> bool) -> bool {
        self.checks
            .iter()
            .filter(|c| pred(c.scope))
            .all(|c| c.passed)
    }

    /// All hypotheses for injectivity of the delay map hold.
    pub fn injective_ok(&self) -> bool {
        self.all(|s| matches!(s, Scope::Both | Scope::InjectiveOnly))
    }

    /// All hypotheses for the stable-embedding bound hold.
    pub fn stable_ok(&self) -> bool {
        self.all(|s| matches!(s, Scope::Both | Scope::StableOnly))
    }

    pub fn get(&self, name: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_MIN_DELAYS: &str = "min_delays";
pub const CHECK_THRESHOLD: &str = "stable_threshold";
pub const CHECK_DISTINCT: &str = "distinct_strictly_complex";
pub const CHECK_PROJECTIONS: &str = "nonzero_projections";
pub const CHECK_NORMALIZED: &str = "normalized_observation";
pub const CHECK_SAMPLING: &str = "sampling_interval";

/// Evaluates every hypothesis of the injectivity and stable-embedding
/// results. Failures are entries in the report, never errors.
pub fn check_conditions(sys: &ClassASystem, h: &[f64], m: usize) -> ConditionReport {
    let d = sys.d();
    let mut checks = Vec::new();

    checks.push(ConditionCheck {
        name: CHECK_MIN_DELAYS,
        scope: Scope::InjectiveOnly,
        passed: m >= 2 * d,
        detail: format!("M = {m}, 2d = {}", 2 * d),
    });

    let nu_result = nu(sys);
    checks.push(ConditionCheck {
        name: CHECK_DISTINCT,
        scope: Scope::Both,
        passed: nu_result.is_ok(),
        detail: match &nu_result {
            Ok(v) => format!("nu = {v}"),
            Err(e) => e.to_string(),
        },
    });

    let kappas = kappa_extrema(sys, h);
    let proj_ok = matches!(kappas, Ok((k1, _)) if k1 > PROJECTION_TOLERANCE);
    checks.push(ConditionCheck {
        name: CHECK_PROJECTIONS,
        scope: Scope::Both,
        passed: proj_ok,
        detail: match &kappas {
            Ok((k1, k2)) => format!("kappa_1 = {k1}, kappa_2 = {k2}"),
            Err(e) => e.to_string(),
        },
    });

    let (threshold_ok, threshold_detail) = match conditioning_bounds(sys, h) {
        Ok(cb) => (
            m as u64 >= cb.m_threshold,
            format!("M = {m}, smallest admissible M = {}", cb.m_threshold),
        ),
        Err(e) => (false, e.to_string()),
    };
    checks.push(ConditionCheck {
        name: CHECK_THRESHOLD,
        scope: Scope::StableOnly,
        passed: threshold_ok,
        detail: threshold_detail,
    });

    let target = 2.0 * d as f64 / m.max(1) as f64;
    let hn2 = linalg::real_norm(h).powi(2);
    checks.push(ConditionCheck {
        name: CHECK_NORMALIZED,
        scope: Scope::StableOnly,
        passed: m > 0 && (hn2 - target).abs() <= NORMALIZATION_TOLERANCE * target,
        detail: format!("||h||^2 = {hn2}, 2d/M = {target}"),
    });

    let max_theta = sys.thetas().iter().cloned().fold(0.0, f64::max);
    let limit = std::f64::consts::PI / max_theta;
    checks.push(ConditionCheck {
        name: CHECK_SAMPLING,
        scope: Scope::Advisory,
        passed: sys.ts() < limit,
        detail: format!(
            "Ts = {} vs pi / max theta = {limit} (sufficient, not necessary)",
            sys.ts()
        ),
    });

    ConditionReport { m, checks }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GershgorinDisk {
    pub index: usize,
    pub center: f64,
    pub radius: f64,
}

impl GershgorinDisk {
    pub fn distance_to(&self, x: f64) -> f64 {
        ((x - self.center).abs() - self.radius).max(0.0)
    }
}

fn dirichlet_ratio(m: usize, x: f64) -> f64 {
    ((m as f64 * x).sin() / x.sin()).abs()
}

/// Gershgorin disks of `G^H G` in closed form.
///
/// Disks `2i-1` and `2i` share the center `M |v_i^H h|^2` and the radius
/// `|v_i^H h|^2 |sin(M theta_i Ts) / sin(theta_i Ts)|` plus, for each other
/// mode `p`, `|v_i^H h| |v_p^H h|` times the Dirichlet ratios at
/// `(theta_i -+ theta_p) Ts / 2`.
pub fn gershgorin_disks(sys: &ClassASystem, h: &[f64], m: usize) -> Result<Vec<GershgorinDisk>> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    nu(sys)?;
    let proj = sys.projections(h)?;
    let ts = sys.ts();
    let thetas = sys.thetas();
    let mut disks = Vec::with_capacity(2 * thetas.len());
    for (i, &ti) in thetas.iter().enumerate() {
        let pi2 = proj[i] * proj[i];
        let mut radius = pi2 * dirichlet_ratio(m, ti * ts);
        for (p, &tp) in thetas.iter().enumerate() {
            if p == i {
                continue;
            }
            let w = proj[i] * proj[p];
            radius += w * dirichlet_ratio(m, (ti - tp) * ts / 2.0);
            radius += w * dirichlet_ratio(m, (ti + tp) * ts / 2.0);
        }
        let center = pi2 * m as f64;
        for index in [2 * i, 2 * i + 1] {
            disks.push(GershgorinDisk {
                index,
                center,
                radius,
            });
        }
    }
    Ok(disks)
}

/// Distance from `x` to the union of disks (zero if inside).
pub fn distance_to_union(disks: &[GershgorinDisk], x: f64) -> f64 {
    disks
        .iter()
        .map(|d| d.distance_to(x))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    pub b1: f64,
    pub b2: f64,
    /// `B_1(M) <= 0`: the lower bound says nothing at this `M`.
    pub vacuous: bool,
}

/// `B_1(M) = 2d (kappa_1^2 - (2d-1) nu kappa_2^2 / M)` and
/// `B_2(M) = 2d (kappa_2^2 + (2d-1) nu kappa_2^2 / M)`, assuming
/// `||h||^2 = 2d / M`. A nonpositive `B_1` is returned as-is and flagged.
pub fn frame_bounds_theoretical(cb: &ConditioningBounds, m: usize) -> FrameBounds {
    let two_d = 2.0 * cb.d as f64;
    let k1 = cb.kappa1 * cb.kappa1;
    let k2 = cb.kappa2 * cb.kappa2;
    let slack = (two_d - 1.0) * cb.nu * k2 / m as f64;
    let b1 = two_d * (k1 - slack);
    let b2 = two_d * (k2 + slack);
    FrameBounds {
        b1,
        b2,
        vacuous: b1 <= 0.0,
    }
}

/// `(lambda_min, lambda_max)` of `G^H G`.
pub fn frame_bounds_empirical(fm: &FrameMatrix) -> Result<(f64, f64)> {
    hermitian_extrema(&fm.frame_operator())
}
