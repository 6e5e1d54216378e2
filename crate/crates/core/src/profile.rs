//! Integration of the fastest-vanishing projection profile.
//!
//! The extremal profile solves, for a cone of dimension `k` with determinant
//! lower bound `q(t)`,
//!
//! ```text
//! h'(t) = k (t h - sqrt(D)) / (1 + t^2),    D = (1 + t^2) q(t)^2 - h^2,
//! ```
//!
//! the minus-branch rearrangement of the equality case of the profile
//! inequality `(h - (t/k) h')^2 + (h'/k)^2 = q(t)^2` with `h(0) = 1`. The
//! vanishing angle is `theta = arctan(t*)` at the first zero of `h`. Failure
//! modes are typed: the discriminant `D` reaching zero with `h` still
//! positive, the domain end of `q` being hit, or a flat profile (`alpha = 0`).
//!
//! At `t = 0` the discriminant vanishes identically and the minus branch is
//! degenerate; integration starts from the series
//! `h = 1 - (k c / 2) t^2 + a3 t^3` where `c` is the larger root of
//! `c^2 - (k - 2) c - 2 q2 = 0` (the fastest-vanishing solution). No real
//! root, i.e. `(k - 2)^2 < 4 alpha^2`, means no descending profile leaves
//! `h = 1` at all and the solve fails immediately.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qmodel::QModel;

/// Environment variable that tightens the integrator tolerance. Values above
/// the built-in default are ignored: overrides may only tighten.
pub const TOL_ENV_VAR: &str = "CONE_CERTIFY_TOL";

#[derive(Debug, Error, PartialEq)]
pub enum ProfileError {
    #[error("cone dimension must be >= 2, got {0}")]
    BadDimension(u32),
    #[error("non-finite state at t = {last_t}")]
    NonFiniteState { last_t: f64 },
    #[error("step limit exceeded at t = {last_t}")]
    StepLimit { last_t: f64 },
    #[error("scaling hypothesis fails: {0}")]
    ScalingHypothesis(String),
}

/// Integrator and event tolerances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverSettings {
    /// Absolute tolerance of the embedded error estimate.
    pub abs_tol: f64,
    /// Relative tolerance of the embedded error estimate.
    pub rel_tol: f64,
    /// Largest accepted step in `t`.
    pub max_step: f64,
    /// `|h|` threshold below which a zero crossing counts as vanishing.
    pub zero_tol: f64,
    /// Width of the bisection bracket when locating the `D = 0` event.
    pub event_tol: f64,
    /// Start abscissa for the series handoff.
    pub series_start: f64,
    /// Record the sampled trajectory in the result.
    pub record_trace: bool,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_step: 1e-3,
            zero_tol: 1e-10,
            event_tol: 1e-12,
            series_start: 1e-4,
            record_trace: false,
        }
    }
}

impl SolverSettings {
    /// Default settings, tightened by `CONE_CERTIFY_TOL` when the variable is
    /// set to something smaller than the built-in tolerance.
    pub fn from_env() -> Self {
        let mut s = Self::default();
        if let Ok(v) = std::env::var(TOL_ENV_VAR) {
            if let Ok(tol) = v.trim().parse::<f64>() {
                if tol > 0.0 && tol < s.abs_tol {
                    s.abs_tol = tol;
                    s.rel_tol = tol;
                }
            }
        }
        s
    }

    /// All step tolerances halved; used for convergence checks.
    pub fn halved(&self) -> Self {
        Self {
            abs_tol: self.abs_tol / 2.0,
            rel_tol: self.rel_tol / 2.0,
            max_step: self.max_step / 2.0,
            ..self.clone()
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

/// Why no vanishing angle was found.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NoVanishing {
    /// The discriminant reached zero with `h` still positive; the profile
    /// touched the envelope `sqrt(1 + t^2) q(t)` and cannot continue.
    DiscriminantNegative { t_fail: f64 },
    /// The validity range of `q` was exhausted with `h` still positive.
    DomainEndReached { t_end: f64 },
    /// `q` is identically 1 (`alpha = 0`) and the profile stays at `h = 1`.
    ProfileStagnant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Outcome {
    /// The profile reached zero at `t_star = tan(theta)`.
    Vanishes { theta: f64, t_star: f64 },
    NoVanishing(NoVanishing),
}

/// Result of a profile solve, with integration diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VanishingAngleResult {
    pub outcome: Outcome,
    /// Sampled `(t, h)` pairs at accepted steps, when requested.
    pub trace: Option<Vec<(f64, f64)>>,
    /// Largest equality-ODE residual observed at accepted steps.
    pub max_residual: f64,
    /// Largest excess of `h` over the envelope `sqrt(1 + t^2) q(t)`.
    pub max_envelope_excess: f64,
    pub steps: usize,
}

impl VanishingAngleResult {
    pub fn theta(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Vanishes { theta, .. } => Some(theta),
            Outcome::NoVanishing(_) => None,
        }
    }
}

// Dormand-Prince 5(4) coefficients.
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A1: [f64; 1] = [1.0 / 5.0];
const A2: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A3: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A4: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A5: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct ProfileOde<'a> {
    model: &'a QModel,
    k: f64,
}

impl ProfileOde<'_> {
    /// Minus-branch slope; the discriminant is clamped at zero so that stage
    /// evaluations just past the envelope stay defined.
    fn rhs(&self, t: f64, h: f64) -> f64 {
        let q = self.model.eval_raw(t);
        let d = ((1.0 + t * t) * q * q - h * h).max(0.0);
        self.k * (t * h - d.sqrt()) / (1.0 + t * t)
    }

    fn discriminant(&self, t: f64, h: f64) -> f64 {
        let q = self.model.eval_raw(t);
        (1.0 + t * t) * q * q - h * h
    }

    /// Residual of the equality form at `(t, h)` with the slope taken from
    /// the minus branch. Zero up to roundoff wherever `D >= 0`.
    fn residual(&self, t: f64, h: f64) -> f64 {
        let q = self.model.eval_raw(t);
        let u = self.rhs(t, h) / self.k;
        ((h - t * u).powi(2) + u * u - q * q).abs()
    }

    /// One embedded step from `(t, h)` of size `dt`; returns the 5th-order
    /// value and the error estimate.
    fn step(&self, t: f64, h: f64, dt: f64) -> (f64, f64) {
        let k1 = self.rhs(t, h);
        let k2 = self.rhs(t + C[0] * dt, h + dt * A1[0] * k1);
        let k3 = self.rhs(t + C[1] * dt, h + dt * (A2[0] * k1 + A2[1] * k2));
        let k4 = self.rhs(
            t + C[2] * dt,
            h + dt * (A3[0] * k1 + A3[1] * k2 + A3[2] * k3),
        );
        let k5 = self.rhs(
            t + C[3] * dt,
            h + dt * (A4[0] * k1 + A4[1] * k2 + A4[2] * k3 + A4[3] * k4),
        );
        let k6 = self.rhs(
            t + dt,
            h + dt * (A5[0] * k1 + A5[1] * k2 + A5[2] * k3 + A5[3] * k4 + A5[4] * k5),
        );
        let h5 = h + dt * (B5[0] * k1 + B5[2] * k3 + B5[3] * k4 + B5[4] * k5 + B5[5] * k6);
        let k7 = self.rhs(t + dt, h5);
        let h4 = h + dt
            * (B4[0] * k1 + B4[2] * k3 + B4[3] * k4 + B4[4] * k5 + B4[5] * k6 + B4[6] * k7);
        (h5, h5 - h4)
    }

    /// Single plain 5th-order step without error control, used to evaluate
    /// the solution inside an accepted step during event bisection.
    fn step_to(&self, t0: f64, h0: f64, t1: f64) -> f64 {
        self.step(t0, h0, t1 - t0).0
    }
}

/// Integrates the fastest-vanishing profile for `model` on a cone of
/// dimension `k`.
pub fn solve_profile(
    model: &QModel,
    k: u32,
    settings: &SolverSettings,
) -> Result<VanishingAngleResult, ProfileError> {
    if k < 2 {
        return Err(ProfileError::BadDimension(k));
    }
    let kf = f64::from(k);
    let alpha_sq = model.alpha_sq();
    let mut trace = settings.record_trace.then(Vec::new);

    if alpha_sq == 0.0 {
        // q = 1 identically; the profile never leaves h = 1.
        return Ok(VanishingAngleResult {
            outcome: Outcome::NoVanishing(NoVanishing::ProfileStagnant),
            trace: trace.take(),
            max_residual: 0.0,
            max_envelope_excess: 0.0,
            steps: 0,
        });
    }

    // Start-up series. The quadratic for the leading coefficient has no real
    // root when (k-2)^2 < 4 alpha^2: the envelope closes faster than any
    // admissible profile can descend.
    let disc0 = (kf - 2.0) * (kf - 2.0) - 4.0 * alpha_sq;
    if disc0 < 0.0 {
        return Ok(VanishingAngleResult {
            outcome: Outcome::NoVanishing(NoVanishing::DiscriminantNegative { t_fail: 0.0 }),
            trace: trace.take(),
            max_residual: 0.0,
            max_envelope_excess: 0.0,
            steps: 0,
        });
    }
    let c = ((kf - 2.0) + disc0.sqrt()) / 2.0;
    let a2 = -kf * c / 2.0;
    let a3 = model.q3() / (1.0 - 3.0 / kf + 6.0 * a2 / (kf * kf));

    let domain_end = model.domain_end();
    debug_assert!(domain_end.is_finite(), "alpha > 0 implies a finite domain");
    let t_stop = domain_end * (1.0 - 1e-12);

    let t1 = settings.series_start.min(domain_end * 1e-3);
    let h1 = 1.0 + a2 * t1 * t1 + a3 * t1 * t1 * t1;

    let ode = ProfileOde { model, k: kf };
    let mut t = t1;
    let mut h = h1;
    let mut dt = (settings.max_step / 10.0).min(t1 / 10.0).min(t_stop - t);
    let mut max_residual: f64 = 0.0;
    let mut max_excess: f64 = f64::NEG_INFINITY;
    let mut steps = 0usize;
    if let Some(tr) = trace.as_mut() {
        tr.push((0.0, 1.0));
        tr.push((t, h));
    }

    const MAX_STEPS: usize = 2_000_000;
    loop {
        if steps >= MAX_STEPS {
            return Err(ProfileError::StepLimit { last_t: t });
        }
        let at_end = t + dt >= t_stop;
        let dt_eff = if at_end { t_stop - t } else { dt };
        let (h_new, err) = ode.step(t, h, dt_eff);
        if !h_new.is_finite() {
            return Err(ProfileError::NonFiniteState { last_t: t });
        }
        // Error per unit step: the profile is badly conditioned near the
        // degenerate start, where accepted steps are small; normalizing by
        // dt keeps the global error at the tolerance level.
        let scale = settings.abs_tol + settings.rel_tol * h.abs().max(h_new.abs());
        let err_norm = (err / (dt_eff * scale)).abs();
        if err_norm > 1.0 {
            // Reject; shrink.
            dt = (dt_eff * (0.9 * err_norm.powf(-0.2)).max(0.2)).max(1e-14);
            steps += 1;
            continue;
        }

        let t_new = t + dt_eff;
        steps += 1;

        // Event: profile reached zero inside the step.
        if h_new <= 0.0 {
            let t_star = bisect_zero(&ode, t, h, t_new, settings);
            let theta = t_star.atan();
            if let Some(tr) = trace.as_mut() {
                tr.push((t_star, 0.0));
            }
            return Ok(VanishingAngleResult {
                outcome: Outcome::Vanishes { theta, t_star },
                trace: trace.take(),
                max_residual,
                max_envelope_excess: max_excess.max(0.0),
                steps,
            });
        }

        // Event: discriminant crossed zero with h still positive.
        let d_new = ode.discriminant(t_new, h_new);
        if d_new < 0.0 {
            let t_fail = bisect_discriminant(&ode, t, h, t_new, settings);
            let h_fail = ode.step_to(t, h, t_fail);
            if let Some(tr) = trace.as_mut() {
                tr.push((t_fail, h_fail));
            }
            if h_fail <= settings.zero_tol {
                // Zero and envelope collapse together only at the domain end;
                // report the vanish since h is already below threshold.
                let theta = t_fail.atan();
                return Ok(VanishingAngleResult {
                    outcome: Outcome::Vanishes { theta, t_star: t_fail },
                    trace: trace.take(),
                    max_residual,
                    max_envelope_excess: max_excess.max(0.0),
                    steps,
                });
            }
            // D = -h^2 < 0 exactly at the domain end, so an event this close
            // to it means q ran out rather than an interior envelope hit.
            let reason = if t_fail >= domain_end * (1.0 - 1e-9) {
                NoVanishing::DomainEndReached { t_end: domain_end }
            } else {
                NoVanishing::DiscriminantNegative { t_fail }
            };
            return Ok(VanishingAngleResult {
                outcome: Outcome::NoVanishing(reason),
                trace: trace.take(),
                max_residual,
                max_envelope_excess: max_excess.max(0.0),
                steps,
            });
        }

        t = t_new;
        h = h_new;
        let residual = ode.residual(t, h);
        debug_assert!(residual < 1e-8, "equality residual {residual} at t = {t}");
        max_residual = max_residual.max(residual);
        let q = model.eval_raw(t);
        max_excess = max_excess.max(h - (1.0 + t * t).sqrt() * q);
        if let Some(tr) = trace.as_mut() {
            tr.push((t, h));
        }

        if at_end {
            return Ok(VanishingAngleResult {
                outcome: Outcome::NoVanishing(NoVanishing::DomainEndReached { t_end: domain_end }),
                trace: trace.take(),
                max_residual,
                max_envelope_excess: max_excess.max(0.0),
                steps,
            });
        }

        dt = (dt_eff * (0.9 * err_norm.max(1e-10).powf(-0.2)).min(5.0)).min(settings.max_step);
    }
}

/// Bisection on the sign of `h` inside an accepted step, refined until the
/// profile value at the returned abscissa is within `zero_tol` of zero.
fn bisect_zero(ode: &ProfileOde, t0: f64, h0: f64, t1: f64, settings: &SolverSettings) -> f64 {
    let (mut a, mut b) = (t0, t1);
    let mut mid = b;
    for _ in 0..200 {
        mid = 0.5 * (a + b);
        let hm = ode.step_to(t0, h0, mid);
        if hm.abs() <= settings.zero_tol * 0.5 || (b - a) < 1e-15 {
            return mid;
        }
        if hm > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    mid
}

/// Bisection on the sign of the discriminant, to a bracket of `event_tol`.
fn bisect_discriminant(
    ode: &ProfileOde,
    t0: f64,
    h0: f64,
    t1: f64,
    settings: &SolverSettings,
) -> f64 {
    let (mut a, mut b) = (t0, t1);
    for _ in 0..200 {
        if (b - a) <= settings.event_tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let hm = ode.step_to(t0, h0, mid);
        if ode.discriminant(mid, hm) >= 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Dimension-reduction bound: for `ell > base_k` and
/// `alpha_ell <= (ell / base_k) base_alpha`,
/// `tan theta_c(ell, alpha_ell) < (base_k / ell) base_tan`.
pub fn chain_bound(
    ell: u32,
    alpha_ell: f64,
    base_k: u32,
    base_alpha: f64,
    base_tan: f64,
) -> Result<f64, ProfileError> {
    if ell <= base_k {
        return Err(ProfileError::ScalingHypothesis(format!(
            "requires ell > base dimension, got ell = {ell}, base = {base_k}"
        )));
    }
    let scale = f64::from(ell) / f64::from(base_k);
    if alpha_ell > scale * base_alpha * (1.0 + 1e-12) {
        return Err(ProfileError::ScalingHypothesis(format!(
            "alpha = {alpha_ell} exceeds scaled base alpha {}",
            scale * base_alpha
        )));
    }
    Ok((f64::from(base_k) / f64::from(ell)) * base_tan)
}

/// Strategy that produced a certified angle bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    ExactSpectrum,
    FBound,
    ExpBound,
    Chain,
}

impl Strategy {
    pub fn tag(&self) -> &'static str {
        match self {
            Strategy::ExactSpectrum => "exact",
            Strategy::FBound => "F",
            Strategy::ExpBound => "exp",
            Strategy::Chain => "chain",
        }
    }
}

/// A certified upper bound on the vanishing angle, in radians, including the
/// conservative padding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaBound {
    pub theta: f64,
    pub strategy: Strategy,
    /// `tan` of the unpadded solver angle, when a solve produced the bound.
    pub tan_theta: f64,
}

#[derive(Debug, Error)]
pub enum ThetaBoundError {
    #[error("no strategy produced a vanishing angle for k = {k}, alpha^2 = {alpha_sq}")]
    NoVanishing {
        k: u32,
        alpha_sq: f64,
        attempts: Vec<(Strategy, NoVanishing)>,
    },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Padding added on top of every solver angle before it is used in a
/// certificate comparison.
pub const THETA_PADDING: f64 = 1e-7;

/// Anchor used by the chain strategy: dimension 12 with `alpha^2 = 44/3`.
const CHAIN_BASE_K: u32 = 12;
const CHAIN_BASE_ALPHA_SQ: f64 = 44.0 / 3.0;

/// Restricts which strategies [`theta_upper_bound`] may try.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyPolicy {
    /// Exact spectrum (when supplied), then F bound, exponential bound and
    /// the chain bound; the smallest successful bound wins.
    Auto,
    /// Exponential bound only.
    ExpOnly,
}

/// Certified vanishing-angle upper bound for a cone of dimension `k` with
/// squared curvature norm `alpha_sq`, using the best applicable strategy.
pub fn theta_upper_bound(
    k: u32,
    alpha_sq: f64,
    spectrum: Option<&crate::qmodel::Spectrum>,
    settings: &SolverSettings,
) -> Result<ThetaBound, ThetaBoundError> {
    theta_upper_bound_with_policy(k, alpha_sq, spectrum, StrategyPolicy::Auto, settings)
}

pub fn theta_upper_bound_with_policy(
    k: u32,
    alpha_sq: f64,
    spectrum: Option<&crate::qmodel::Spectrum>,
    policy: StrategyPolicy,
    settings: &SolverSettings,
) -> Result<ThetaBound, ThetaBoundError> {
    let alpha = alpha_sq.sqrt();
    let mut attempts: Vec<(Strategy, NoVanishing)> = Vec::new();
    let mut best: Option<ThetaBound> = None;

    let consider = |strategy: Strategy,
                        model: &QModel,
                        attempts: &mut Vec<(Strategy, NoVanishing)>,
                        best: &mut Option<ThetaBound>|
     -> Result<(), ProfileError> {
        match solve_profile(model, k, settings)?.outcome {
            Outcome::Vanishes { theta, t_star } => {
                let bound = ThetaBound {
                    theta: theta + THETA_PADDING,
                    strategy,
                    tan_theta: t_star,
                };
                if best.as_ref().is_none_or(|b| bound.theta < b.theta) {
                    *best = Some(bound);
                }
            }
            Outcome::NoVanishing(reason) => attempts.push((strategy, reason)),
        }
        Ok(())
    };

    if policy == StrategyPolicy::Auto {
        if let Some(s) = spectrum {
            let model = QModel::exact(s.clone());
            consider(Strategy::ExactSpectrum, &model, &mut attempts, &mut best)?;
        }
        if k >= 3 {
            let model = QModel::f_bound(alpha, k - 1).expect("validated alpha");
            consider(Strategy::FBound, &model, &mut attempts, &mut best)?;
        }
    }

    let exp_model = QModel::exp_bound(alpha).expect("validated alpha");
    consider(Strategy::ExpBound, &exp_model, &mut attempts, &mut best)?;

    if policy == StrategyPolicy::Auto && k > CHAIN_BASE_K {
        let base_alpha = CHAIN_BASE_ALPHA_SQ.sqrt();
        let scale = f64::from(k) / f64::from(CHAIN_BASE_K);
        if alpha <= scale * base_alpha {
            let base_model = QModel::exp_bound(base_alpha).expect("validated alpha");
            if let Outcome::Vanishes { t_star, .. } =
                solve_profile(&base_model, CHAIN_BASE_K, settings)?.outcome
            {
                let tan =
                    chain_bound(k, alpha, CHAIN_BASE_K, base_alpha, t_star + THETA_PADDING)?;
                let bound = ThetaBound {
                    theta: tan.atan() + THETA_PADDING,
                    strategy: Strategy::Chain,
                    tan_theta: tan,
                };
                if best.as_ref().is_none_or(|b| bound.theta < b.theta) {
                    best = Some(bound);
                }
            }
        }
    }

    best.ok_or(ThetaBoundError::NoVanishing {
        k,
        alpha_sq,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmodel::{equality_spectrum, QModel, Spectrum};

    fn solve(model: &QModel, k: u32) -> VanishingAngleResult {
        solve_profile(model, k, &SolverSettings::default()).unwrap()
    }

    fn theta_deg(model: &QModel, k: u32) -> f64 {
        solve(model, k).theta().expect("vanishes").to_degrees()
    }

    // Reference angles computed with an independent adaptive RK implementation
    // (SciPy solve_ivp, rtol 1e-13) on the same equality ODE.
    const REF_TOL_DEG: f64 = 1e-4;

    #[test]
    fn exp_bound_reference_angles() {
        let m = QModel::exp_bound(10.0f64.sqrt()).unwrap();
        assert!((theta_deg(&m, 12) - 8.73955320).abs() < REF_TOL_DEG);
        let m = QModel::exp_bound((44.0f64 / 3.0).sqrt()).unwrap();
        assert!((theta_deg(&m, 12) - 9.46037866).abs() < REF_TOL_DEG);
    }

    #[test]
    fn f_bound_reference_angles() {
        let cases: [(f64, u32, u32, f64); 4] = [
            (12.0, 9, 10, 12.49960057),
            (40.0 / 3.0, 10, 11, 10.63970588),
            (32.0 / 3.0, 8, 9, 16.70653659),
            (2.0, 4, 5, 26.88451686),
        ];
        for (alpha_sq, ell, k, expect) in cases {
            let m = QModel::f_bound(alpha_sq.sqrt(), ell).unwrap();
            assert!(
                (theta_deg(&m, k) - expect).abs() < REF_TOL_DEG,
                "k={k} alpha^2={alpha_sq}"
            );
        }
    }

    #[test]
    fn exact_spectrum_reference_angles() {
        let s = Spectrum::new(vec![(1.0, 2), (-1.0, 2), (0.0, 1)]).unwrap();
        assert!((theta_deg(&QModel::exact(s), 6) - 24.16846033).abs() < REF_TOL_DEG);
        let s = Spectrum::new(vec![(1.0, 1), (-1.0, 1), (0.0, 2)]).unwrap();
        assert!((theta_deg(&QModel::exact(s), 5) - 25.71138028).abs() < REF_TOL_DEG);
    }

    #[test]
    fn stagnant_profile_for_zero_alpha() {
        for model in [
            QModel::exp_bound(0.0).unwrap(),
            QModel::f_bound(0.0, 5).unwrap(),
            QModel::exact(Spectrum::zero(6)),
        ] {
            let r = solve(&model, 9);
            assert_eq!(
                r.outcome,
                Outcome::NoVanishing(NoVanishing::ProfileStagnant)
            );
        }
    }

    #[test]
    fn f_bound_fails_where_exact_succeeds() {
        // The (6, 4) cone: the F bound collides with the envelope mid-way
        // while the exact determinant carries the profile to zero.
        let m = QModel::f_bound(2.0, 5).unwrap();
        match solve(&m, 6).outcome {
            Outcome::NoVanishing(NoVanishing::DiscriminantNegative { t_fail }) => {
                assert!((t_fail - 0.43890).abs() < 1e-3, "t_fail = {t_fail}");
            }
            other => panic!("expected discriminant failure, got {other:?}"),
        }
    }

    #[test]
    fn immediate_failure_when_start_series_has_no_real_root() {
        // (m1, m2) = (1, 1): k = 4, alpha^2 = 2, (k-2)^2 - 4 alpha^2 < 0.
        let s = Spectrum::new(vec![(1.0, 1), (-1.0, 1), (0.0, 1)]).unwrap();
        match solve(&QModel::exact(s), 4).outcome {
            Outcome::NoVanishing(NoVanishing::DiscriminantNegative { t_fail }) => {
                assert_eq!(t_fail, 0.0);
            }
            other => panic!("expected immediate failure, got {other:?}"),
        }
    }

    #[test]
    fn vanish_inside_domain_and_below_tolerance() {
        let m = QModel::exp_bound(10.0f64.sqrt()).unwrap();
        let r = solve(&m, 12);
        let Outcome::Vanishes { theta, t_star } = r.outcome else {
            panic!("expected vanish");
        };
        assert!(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2);
        assert!((theta.tan() - t_star).abs() < 1e-12);
        assert!(t_star <= m.domain_end());
        // |h| at t_star refined below the zero tolerance.
        let ode = ProfileOde { model: &m, k: 12.0 };
        // Re-integrate crudely up to just before t_star and step across.
        let settings = SolverSettings::default();
        let tr = solve_profile(&m, 12, &settings.clone().with_trace()).unwrap();
        let trace = tr.trace.unwrap();
        let (t_prev, h_prev) = trace[trace.len() - 2];
        let h_at_star = ode.step_to(t_prev, h_prev, t_star);
        assert!(h_at_star.abs() <= 1e-10, "h(t*) = {h_at_star}");
    }

    #[test]
    fn residual_stays_small_along_trajectory() {
        for model in [
            QModel::exp_bound(10.0f64.sqrt()).unwrap(),
            QModel::f_bound(12.0f64.sqrt(), 9).unwrap(),
            QModel::exact(Spectrum::new(vec![(1.0, 2), (-1.0, 2), (0.0, 2)]).unwrap()),
        ] {
            let r = solve(&model, 10);
            assert!(r.max_residual < 1e-8, "residual = {}", r.max_residual);
            assert!(
                r.max_envelope_excess < 1e-9,
                "excess = {}",
                r.max_envelope_excess
            );
        }
    }

    #[test]
    fn halving_tolerances_changes_theta_below_1e8() {
        let settings = SolverSettings::default();
        let m = QModel::f_bound(12.0f64.sqrt(), 9).unwrap();
        let a = solve_profile(&m, 10, &settings).unwrap().theta().unwrap();
        let b = solve_profile(&m, 10, &settings.halved())
            .unwrap()
            .theta()
            .unwrap();
        assert!((a - b).abs() < 1e-8, "delta = {}", (a - b).abs());
    }

    #[test]
    fn equality_spectrum_angle_agrees_with_f_bound() {
        for &(alpha, ell) in &[(2.0f64, 5u32), (1.5, 8), (2.5, 10)] {
            let k = ell + 1;
            let se = equality_spectrum(alpha, ell).unwrap();
            let a = solve(&QModel::exact(se), k).theta();
            let b = solve(&QModel::f_bound(alpha, ell).unwrap(), k).theta();
            match (a, b) {
                (Some(a), Some(b)) => {
                    assert!((a - b).abs() < 1e-7, "alpha={alpha} ell={ell}: {a} vs {b}")
                }
                (None, None) => {}
                other => panic!("outcome mismatch: {other:?}"),
            }
        }
    }

    #[test]
    fn chain_bound_requires_strictly_larger_dimension() {
        assert!(chain_bound(12, 1.0, 12, 1.0, 0.2).is_err());
        assert!(chain_bound(13, 10.0, 12, 1.0, 0.2).is_err());
        let b = chain_bound(13, 16.0f64.sqrt(), 12, (44.0f64 / 3.0).sqrt(), 0.1683).unwrap();
        assert!((b - 12.0 / 13.0 * 0.1683).abs() < 1e-15);
    }

    #[test]
    fn chain_bound_dominates_direct_solve() {
        let base_alpha = (44.0f64 / 3.0).sqrt();
        let base = solve(&QModel::exp_bound(base_alpha).unwrap(), 12);
        let Outcome::Vanishes { t_star: base_tan, .. } = base.outcome else {
            panic!()
        };
        for ell in [13u32, 15, 18, 22, 30, 40, 60, 80, 100, 150] {
            let alpha = f64::from(ell) / 12.0 * base_alpha;
            let direct = solve(&QModel::exp_bound(alpha).unwrap(), ell);
            let Outcome::Vanishes { t_star, .. } = direct.outcome else {
                panic!("no vanish at ell = {ell}");
            };
            let bound = chain_bound(ell, alpha, 12, base_alpha, base_tan).unwrap();
            assert!(t_star < bound, "ell={ell}: {t_star} !< {bound}");
        }
    }

    #[test]
    fn theta_upper_bound_uses_best_strategy() {
        // (6, 4): F and exp both fail; the exact spectrum rescues the bound.
        let s = Spectrum::new(vec![(1.0, 2), (-1.0, 2), (0.0, 1)]).unwrap();
        let b = theta_upper_bound(6, 4.0, Some(&s), &SolverSettings::default()).unwrap();
        assert_eq!(b.strategy, Strategy::ExactSpectrum);
        assert!(b.theta.to_degrees() < 25.0);

        let err = theta_upper_bound(6, 4.0, None, &SolverSettings::default()).unwrap_err();
        assert!(matches!(err, ThetaBoundError::NoVanishing { .. }));
    }

    #[test]
    fn theta_upper_bound_prefers_f_over_exp() {
        let b = theta_upper_bound(10, 6.0, None, &SolverSettings::default()).unwrap();
        assert_eq!(b.strategy, Strategy::FBound);
    }

    #[test]
    fn theta_upper_bound_chain_for_large_dimensions() {
        // alpha^2 scaled so that only exp/chain apply; chain wins for large k.
        let k = 40u32;
        let alpha_sq = (f64::from(k) / 12.0).powi(2) * CHAIN_BASE_ALPHA_SQ;
        let b = theta_upper_bound(k, alpha_sq, None, &SolverSettings::default()).unwrap();
        assert!(b.theta > 0.0);
        // The chain is available; whichever strategy won must not exceed it.
        let base = solve(&QModel::exp_bound(CHAIN_BASE_ALPHA_SQ.sqrt()).unwrap(), 12);
        let Outcome::Vanishes { t_star, .. } = base.outcome else {
            panic!()
        };
        let chain_theta = (12.0 / f64::from(k) * (t_star + THETA_PADDING)).atan() + THETA_PADDING;
        assert!(b.theta <= chain_theta + 1e-15);
    }

    #[test]
    fn exp_exists_up_to_19_at_dim_12() {
        // Mirrors the anchor fact used for products: theta_c exists at
        // (12, alpha^2) exactly for alpha^2 <= 19 on the integer grid.
        for alpha_sq in [18.0f64, 19.0] {
            let m = QModel::exp_bound(alpha_sq.sqrt()).unwrap();
            assert!(solve(&m, 12).theta().is_some(), "alpha^2 = {alpha_sq}");
        }
        for alpha_sq in [20.0f64, 21.0, 25.0] {
            let m = QModel::exp_bound(alpha_sq.sqrt()).unwrap();
            assert!(solve(&m, 12).theta().is_none(), "alpha^2 = {alpha_sq}");
        }
    }

    #[test]
    fn settings_from_env_only_tightens() {
        // Not set: defaults.
        std::env::remove_var(TOL_ENV_VAR);
        assert_eq!(SolverSettings::from_env().abs_tol, 1e-10);
        std::env::set_var(TOL_ENV_VAR, "1e-12");
        assert_eq!(SolverSettings::from_env().abs_tol, 1e-12);
        std::env::set_var(TOL_ENV_VAR, "1e-3");
        assert_eq!(SolverSettings::from_env().abs_tol, 1e-10);
        std::env::remove_var(TOL_ENV_VAR);
    }
}
