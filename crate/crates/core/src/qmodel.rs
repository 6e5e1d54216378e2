//! Lower-bound models `q(t)` for the normal-determinant `inf_nu det(I - t A_nu)`.
//!
//! Three families are supported:
//!
//! * [`QModel::ExactSpectrum`] — the determinant evaluated from an explicit
//!   eigenvalue multiset, `q(t) = prod_i (1 - lambda_i t)^{m_i}`. Valid when
//!   the spectrum is the same for every unit normal, which holds for focal
//!   submanifolds of isoparametric foliations.
//! * [`QModel::FBound`] — the sharp norm-based bound
//!   `F(alpha, t, ell) = (1 - alpha t sqrt((ell-1)/ell)) (1 + alpha t / sqrt(ell (ell-1)))^(ell-1)`,
//!   valid on `[0, (1/alpha) sqrt(ell/(ell-1))]`.
//! * [`QModel::ExpBound`] — the `ell -> inf` limit `(1 - alpha t) e^(alpha t)`,
//!   valid on `[0, 1/alpha]`.
//!
//! Every model satisfies `q(0) = 1` and, for trace-free data,
//! `q(t) = 1 - (alpha^2/2) t^2 + O(t^3)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance accepted when validating that a spectrum is trace-free.
const TRACE_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("eigenvalue {0} is not finite")]
    NonFiniteEigenvalue(f64),
    #[error("multiplicity must be >= 1")]
    ZeroMultiplicity,
    #[error("spectrum is not trace-free: sum m_i lambda_i = {trace}")]
    NotTraceFree { trace: f64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum QModelError {
    #[error("t = {t} is beyond domain end {domain_end}")]
    BeyondDomainEnd { t: f64, domain_end: f64 },
    #[error("alpha must be finite and >= 0, got {0}")]
    InvalidAlpha(f64),
    #[error("ell must be >= 2, got {0}")]
    InvalidEll(u32),
    #[error("alpha must be > 0 for an equality spectrum")]
    NonPositiveAlpha,
}

/// Principal-curvature multiset of a submanifold in a fixed normal direction,
/// stored as `(eigenvalue, multiplicity)` pairs. Always trace-free (the
/// submanifolds under consideration are minimal).
///
/// Serializes as a JSON array of `[eigenvalue, multiplicity]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, u32)>", into = "Vec<(f64, u32)>")]
pub struct Spectrum {
    entries: Vec<(f64, u32)>,
}

impl Spectrum {
    /// Validates finiteness, positive multiplicities and the trace-free
    /// condition `sum m_i lambda_i = 0`.
    pub fn new(entries: Vec<(f64, u32)>) -> Result<Self, SpectrumError> {
        let mut trace = 0.0;
        let mut scale: f64 = 1.0;
        for &(lambda, mult) in &entries {
            if !lambda.is_finite() {
                return Err(SpectrumError::NonFiniteEigenvalue(lambda));
            }
            if mult == 0 {
                return Err(SpectrumError::ZeroMultiplicity);
            }
            trace += f64::from(mult) * lambda;
            scale = scale.max(f64::from(mult) * lambda.abs());
        }
        if trace.abs() > TRACE_TOL * scale {
            return Err(SpectrumError::NotTraceFree { trace });
        }
        Ok(Self { entries })
    }

    /// The all-zero spectrum of a totally geodesic submanifold.
    pub fn zero(dim: u32) -> Self {
        if dim == 0 {
            Self { entries: vec![] }
        } else {
            Self { entries: vec![(0.0, dim)] }
        }
    }

    pub fn entries(&self) -> &[(f64, u32)] {
        &self.entries
    }

    /// Total multiplicity, i.e. the dimension of the submanifold described.
    pub fn dimension(&self) -> u32 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// Squared norm `alpha^2 = sum m_i lambda_i^2`. The empty spectrum is
    /// treated as all-zero.
    pub fn alpha_sq(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(l, m)| f64::from(m) * l * l)
            .sum()
    }

    /// Third moment `sum m_i lambda_i^3`, used by the solver start-up series.
    pub fn third_moment(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(l, m)| f64::from(m) * l * l * l)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&(l, _)| l == 0.0)
    }
}

impl TryFrom<Vec<(f64, u32)>> for Spectrum {
    type Error = SpectrumError;
    fn try_from(entries: Vec<(f64, u32)>) -> Result<Self, Self::Error> {
        Self::new(entries)
    }
}

impl From<Spectrum> for Vec<(f64, u32)> {
    fn from(s: Spectrum) -> Self {
        s.entries
    }
}

/// A lower bound `q(t)` for the normal determinant, with `q(0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum QModel {
    ExactSpectrum(Spectrum),
    FBound { alpha: f64, ell: u32 },
    ExpBound { alpha: f64 },
}

/// The sharp norm bound `F(alpha, t, ell)`.
pub fn f_bound(alpha: f64, t: f64, ell: u32) -> f64 {
    let ell = f64::from(ell);
    let a = alpha * ((ell - 1.0) / ell).sqrt();
    let b = alpha / (ell * (ell - 1.0)).sqrt();
    (1.0 - a * t) * (1.0 + b * t).powi(ell as i32 - 1)
}

/// The exponential bound `(1 - alpha t) e^(alpha t)`.
pub fn exp_bound(alpha: f64, t: f64) -> f64 {
    (1.0 - alpha * t) * (alpha * t).exp()
}

impl QModel {
    pub fn exact(spectrum: Spectrum) -> Self {
        QModel::ExactSpectrum(spectrum)
    }

    pub fn f_bound(alpha: f64, ell: u32) -> Result<Self, QModelError> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(QModelError::InvalidAlpha(alpha));
        }
        if ell < 2 {
            return Err(QModelError::InvalidEll(ell));
        }
        Ok(QModel::FBound { alpha, ell })
    }

    pub fn exp_bound(alpha: f64) -> Result<Self, QModelError> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(QModelError::InvalidAlpha(alpha));
        }
        Ok(QModel::ExpBound { alpha })
    }

    /// Evaluates `q(t)`. Errors when `t` lies outside `[0, domain_end]`.
    pub fn eval(&self, t: f64) -> Result<f64, QModelError> {
        let end = self.domain_end();
        if !(0.0..=end).contains(&t) {
            return Err(QModelError::BeyondDomainEnd { t, domain_end: end });
        }
        Ok(self.eval_raw(t))
    }

    /// Evaluates `q(t)` without the domain check. Used by the solver, which
    /// never steps past the domain end.
    pub(crate) fn eval_raw(&self, t: f64) -> f64 {
        match self {
            QModel::ExactSpectrum(s) => s
                .entries()
                .iter()
                .map(|&(l, m)| (1.0 - l * t).powi(m as i32))
                .product(),
            QModel::FBound { alpha, ell } => f_bound(*alpha, t, *ell),
            QModel::ExpBound { alpha } => exp_bound(*alpha, t),
        }
    }

    /// End of the validity range: the first positive root of `q` for exact
    /// spectra and the exponential bound, `(1/alpha) sqrt(ell/(ell-1))` for
    /// the F bound. `+inf` when the model is identically 1.
    pub fn domain_end(&self) -> f64 {
        match self {
            QModel::ExactSpectrum(s) => s
                .entries()
                .iter()
                .filter(|&&(l, _)| l > 0.0)
                .map(|&(l, _)| 1.0 / l)
                .fold(f64::INFINITY, f64::min),
            QModel::FBound { alpha, ell } => {
                if *alpha == 0.0 {
                    f64::INFINITY
                } else {
                    let ell = f64::from(*ell);
                    (1.0 / alpha) * (ell / (ell - 1.0)).sqrt()
                }
            }
            QModel::ExpBound { alpha } => {
                if *alpha == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / alpha
                }
            }
        }
    }

    /// Squared curvature norm backing the model.
    pub fn alpha_sq(&self) -> f64 {
        match self {
            QModel::ExactSpectrum(s) => s.alpha_sq(),
            QModel::FBound { alpha, .. } | QModel::ExpBound { alpha } => alpha * alpha,
        }
    }

    /// Second-order Taylor coefficient of `q`; equals `-alpha^2/2` for every
    /// variant. Diagnostic only.
    pub fn q2(&self) -> f64 {
        -0.5 * self.alpha_sq()
    }

    /// Third-order Taylor coefficient, `-(sum m_i lambda_i^3)/3` for the
    /// spectrum realizing the model.
    pub(crate) fn q3(&self) -> f64 {
        let p3 = match self {
            QModel::ExactSpectrum(s) => s.third_moment(),
            QModel::FBound { alpha, ell } => {
                let ell = f64::from(*ell);
                let a = alpha * ((ell - 1.0) / ell).sqrt();
                let b = alpha / (ell * (ell - 1.0)).sqrt();
                a * a * a - (ell - 1.0) * b * b * b
            }
            QModel::ExpBound { alpha } => alpha * alpha * alpha,
        };
        -p3 / 3.0
    }

    pub fn tag(&self) -> &'static str {
        match self {
            QModel::ExactSpectrum(_) => "exact",
            QModel::FBound { .. } => "F",
            QModel::ExpBound { .. } => "exp",
        }
    }
}

/// The trace-free spectrum on which the F bound is attained pointwise:
/// one eigenvalue `alpha sqrt((ell-1)/ell)` and `ell - 1` copies of
/// `-alpha / sqrt(ell (ell-1))`.
pub fn equality_spectrum(alpha: f64, ell: u32) -> Result<Spectrum, QModelError> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(QModelError::NonPositiveAlpha);
    }
    if ell < 2 {
        return Err(QModelError::InvalidEll(ell));
    }
    let ell_f = f64::from(ell);
    let big = alpha * ((ell_f - 1.0) / ell_f).sqrt();
    let small = alpha / (ell_f * (ell_f - 1.0)).sqrt();
    Spectrum::new(vec![(big, 1), (-small, ell - 1)])
        .map_err(|_| QModelError::InvalidAlpha(alpha))
}
