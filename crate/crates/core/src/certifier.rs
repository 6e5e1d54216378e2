//! Certification of cones: applies the two-part curvature criterion
//! (a vanishing angle exists, and it clears the normal-radius threshold) to
//! single focal cones, unions of a family's two focal cones, and minimal
//! products.
//!
//! Verdicts are `Minimizing` or `Inconclusive`, never "not minimizing": the
//! criterion is sufficient only. A `Minimizing` verdict requires its
//! inequality to hold with at least [`SOUNDNESS_MARGIN`] radians to spare,
//! and every certificate carries the numbers needed to re-check it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{
    enumerate_g4_families, focal_descriptor, CatalogError, FamilyRecord, FocalDescriptor, Side,
};
use crate::products::{minimal_product, ProductSpec, ProductsError};
use crate::profile::{theta_upper_bound, SolverSettings, ThetaBound, ThetaBoundError};

/// Minimum slack, in radians, a certifying inequality must have.
pub const SOUNDNESS_MARGIN: f64 = 1e-6;

/// Printed constant from the dimension-12 anchor bound
/// `tan theta_c(12, sqrt(44/3)) < 0.1683`, used by the closed-form
/// polynomial condition.
pub const ANCHOR_TAN: f64 = 0.1683;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Products(#[from] ProductsError),
    #[error("angle solve failed: {0}")]
    Theta(#[from] ThetaBoundError),
    #[error("union certificates require g = 4, got g = {0}")]
    UnionRequiresG4(u8),
    #[error("recheck failed: {0}")]
    Recheck(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Minimizing,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Minimizing => write!(f, "Minimizing"),
            Verdict::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Which inequality the certificate asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `theta0 < threshold` (wedges of the single cone or union stay
    /// disjoint below the threshold).
    #[serde(rename = "theta<threshold")]
    ThetaBelowThreshold,
    /// `2 theta0 < phi` with `phi = arctan sqrt(tan_phi_sq_lb)`.
    #[serde(rename = "2theta<phi")]
    DoubleThetaBelowPhi,
}

/// Minimal parameters identifying a factor, enough to rebuild its
/// descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorParams {
    pub g: u8,
    pub m1: u32,
    pub m2: u32,
    pub side: Side,
}

impl From<&FocalDescriptor> for FactorParams {
    fn from(d: &FocalDescriptor) -> Self {
        Self { g: d.g, m1: d.m1, m2: d.m2, side: d.side }
    }
}

impl FactorParams {
    pub fn descriptor(&self) -> Result<FocalDescriptor, CatalogError> {
        focal_descriptor(self.g, self.m1, self.m2, self.side)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Subject {
    Focal { g: u8, m1: u32, m2: u32, side: Side },
    Union { g: u8, m1: u32, m2: u32 },
    Product { factors: Vec<FactorParams> },
}

/// A cone's verdict together with the numbers that justify it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub subject: Subject,
    pub cone_dim: u32,
    pub alpha_sq_used: f64,
    /// Strategy tag of the q model behind `theta0_upper`.
    pub q_model_used: Option<String>,
    /// Certified upper bound on the vanishing angle, radians.
    pub theta0_upper: Option<f64>,
    /// Comparison target, radians. For products this is the certified lower
    /// bound on the normal radius `phi`.
    pub threshold: f64,
    pub condition: Condition,
    pub verdict: Verdict,
    /// Slack of the certifying inequality, radians. Negative or zero when
    /// inconclusive with a known angle; zero when no angle exists.
    pub margin: f64,
    /// For products: the `tan^2 phi` lower bound behind `threshold`.
    pub tan_phi_sq_lb: Option<f64>,
    pub notes: Vec<String>,
}

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[allow(clippy::too_many_arguments)]
fn finish(
    subject: Subject,
    cone_dim: u32,
    alpha_sq_used: f64,
    bound: Result<ThetaBound, ThetaBoundError>,
    threshold: f64,
    condition: Condition,
    tan_phi_sq_lb: Option<f64>,
    mut notes: Vec<String>,
) -> Result<Certificate, CertifyError> {
    let (theta0_upper, q_model_used) = match bound {
        Ok(b) => (Some(b.theta), Some(b.strategy.tag().to_string())),
        Err(ThetaBoundError::NoVanishing { attempts, .. }) => {
            for (s, reason) in &attempts {
                notes.push(format!("{}: {:?}", s.tag(), reason));
            }
            (None, None)
        }
        Err(e) => return Err(e.into()),
    };
    let (verdict, margin) = match theta0_upper {
        None => (Verdict::Inconclusive, 0.0),
        Some(theta) => {
            let lhs = match condition {
                Condition::ThetaBelowThreshold => theta,
                Condition::DoubleThetaBelowPhi => 2.0 * theta,
            };
            let margin = threshold - lhs;
            if margin >= SOUNDNESS_MARGIN {
                (Verdict::Minimizing, margin)
            } else {
                (Verdict::Inconclusive, margin)
            }
        }
    };
    Ok(Certificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        subject,
        cone_dim,
        alpha_sq_used,
        q_model_used,
        theta0_upper,
        threshold,
        condition,
        verdict,
        margin,
        tan_phi_sq_lb,
        notes,
    })
}

/// Certifies the cone over one focal submanifold, using the exact spectrum.
/// Threshold: `pi/4` for `g = 4`, `pi/6` for `g` in {3, 6}.
pub fn certify_focal_cone(
    g: u8,
    m1: u32,
    m2: u32,
    side: Side,
    settings: &SolverSettings,
) -> Result<Certificate, CertifyError> {
    let d = focal_descriptor(g, m1, m2, side)?;
    let threshold = match g {
        4 => std::f64::consts::FRAC_PI_4,
        3 | 6 => std::f64::consts::FRAC_PI_6,
        // Great spheres: conventionally pi/2; the solve is stagnant anyway.
        _ => std::f64::consts::FRAC_PI_2,
    };
    let mut notes = Vec::new();
    if !d.admissible {
        notes.push(format!(
            "family (g={g}, m1={m1}, m2={m2}) is not in the classification; treating parameters as hypothetical"
        ));
    }
    let bound = theta_upper_bound(d.cone_dim(), d.alpha_sq, Some(&d.spectrum), settings);
    finish(
        Subject::Focal { g, m1, m2, side },
        d.cone_dim(),
        d.alpha_sq,
        bound,
        threshold,
        Condition::ThetaBelowThreshold,
        None,
        notes,
    )
}

/// Certifies the union of both focal cones of a `g = 4` family: the maximum
/// of the two vanishing angles must clear `pi/8`.
pub fn certify_focal_union(
    g: u8,
    m1: u32,
    m2: u32,
    settings: &SolverSettings,
) -> Result<Certificate, CertifyError> {
    if g != 4 {
        return Err(CertifyError::UnionRequiresG4(g));
    }
    let plus = focal_descriptor(g, m1, m2, Side::Plus)?;
    let minus = focal_descriptor(g, m1, m2, Side::Minus)?;
    let threshold = std::f64::consts::FRAC_PI_8;
    let mut notes = Vec::new();

    let bp = theta_upper_bound(plus.cone_dim(), plus.alpha_sq, Some(&plus.spectrum), settings);
    let bm = theta_upper_bound(
        minus.cone_dim(),
        minus.alpha_sq,
        Some(&minus.spectrum),
        settings,
    );
    let bound = match (bp, bm) {
        (Ok(p), Ok(m)) => {
            notes.push(format!(
                "side plus: dim {} theta0 <= {:.6} deg; side minus: dim {} theta0 <= {:.6} deg",
                plus.cone_dim(),
                p.theta.to_degrees(),
                minus.cone_dim(),
                m.theta.to_degrees()
            ));
            Ok(if p.theta >= m.theta { p } else { m })
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    };
    finish(
        Subject::Union { g, m1, m2 },
        plus.cone_dim().max(minus.cone_dim()),
        plus.alpha_sq.max(minus.alpha_sq),
        bound,
        threshold,
        Condition::ThetaBelowThreshold,
        None,
        notes,
    )
}

/// Certifies the cone over a minimal product: the vanishing angle of the
/// `S + 1` dimensional cone with the product's shape-norm supremum must
/// satisfy `2 theta0 < phi`.
pub fn certify_product(
    factors: Vec<FocalDescriptor>,
    settings: &SolverSettings,
) -> Result<Certificate, CertifyError> {
    let spec = minimal_product(factors)?;
    certify_product_spec(&spec, settings)
}

pub fn certify_product_spec(
    spec: &ProductSpec,
    settings: &SolverSettings,
) -> Result<Certificate, CertifyError> {
    let phi_lb = spec.tan_phi_sq_lb.sqrt().atan();
    let mut notes = Vec::new();
    if spec.externally_classified {
        notes.push(
            "all factors are spheres; normal radius taken from the external classification"
                .to_string(),
        );
    }
    for entry in &spec.ledger {
        match entry.cos_bound {
            Some(c) => notes.push(format!("{}: |cos phi| <= {:.6}", entry.description, c)),
            None => notes.push(format!("{}: no self-return", entry.description)),
        }
    }

    // Only alpha^2 is known for the product, so the F/exp/chain policy
    // applies; no exact spectrum.
    let bound = theta_upper_bound(spec.cone_dim(), spec.shape_sup_sq, None, settings);

    // Closed-form theorem conditions, recorded as notes.
    let all_focal = spec.factors.iter().all(|f| matches!(f.g, 3 | 4 | 6));
    let k1 = spec.factors.iter().map(|f| f.dim).min().unwrap_or(0);
    let checks = closed_form_checks(spec.total_dim, k1);
    if all_focal && checks.thm3_chain {
        notes.push(format!(
            "closed-form two-factor condition holds (S={}, k1={})",
            spec.total_dim, k1
        ));
    }
    if spec.total_dim >= 11 && checks.thm4_poly {
        notes.push(format!(
            "closed-form polynomial condition holds (S={}, k1={})",
            spec.total_dim, k1
        ));
    }
    if !(all_focal && checks.thm3_chain) && !(spec.total_dim >= 11 && checks.thm4_poly) {
        notes.push("numeric-only: no closed-form condition applies".to_string());
    }

    finish(
        Subject::Product {
            factors: spec.factors.iter().map(FactorParams::from).collect(),
        },
        spec.cone_dim(),
        spec.shape_sup_sq,
        bound,
        phi_lb,
        Condition::DoubleThetaBelowPhi,
        Some(spec.tan_phi_sq_lb),
        notes,
    )
}

/// Closed-form sufficient conditions for products, by total dimension `S`
/// and smallest factor dimension `k1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormChecks {
    /// The chain `tan^2 phi >= 4(S-1)/(S-2)^2 > tan^2 2theta0` with
    /// `tan theta0 < (sqrt3/2)/sqrt(S-1)`; requires `k1 >= 4`, `S >= 8`.
    pub thm3_chain: bool,
    /// Positivity of
    /// `(k1 S - k1^2/4) [(S+1)^2 - (12 c)^2]^2 - (S - k1/2)^2 [24 (S+1) c]^2`
    /// with `c = 0.1683`.
    pub thm4_poly: bool,
}

pub fn closed_form_checks(s: u32, k1: u32) -> ClosedFormChecks {
    let sf = f64::from(s);
    let k1f = f64::from(k1);

    let thm3_chain = if k1 >= 4 && s >= 8 {
        let tan_phi_sq = (1.0 / (1.0 - k1f / (2.0 * sf))).powi(2) - 1.0;
        let mid = 4.0 * (sf - 1.0) / (sf - 2.0).powi(2);
        let tan_two_theta = 4.0 * (3.0 * (sf - 1.0)).sqrt() / (4.0 * sf - 7.0);
        // k1 = 4 makes the first comparison an exact tie; allow roundoff.
        tan_phi_sq >= mid - 1e-12 && mid > tan_two_theta * tan_two_theta
    } else {
        false
    };

    let c = ANCHOR_TAN;
    let a = (sf + 1.0).powi(2) - (12.0 * c).powi(2);
    let b = 24.0 * (sf + 1.0) * c;
    let poly = (k1f * sf - k1f * k1f / 4.0) * a * a - (sf - k1f / 2.0).powi(2) * b * b;
    ClosedFormChecks {
        thm3_chain,
        thm4_poly: poly > 0.0,
    }
}

/// Result of re-deriving a certificate from its subject.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecheckReport {
    pub ok: bool,
    pub details: Vec<String>,
}

/// Re-derives the certificate from its subject and verifies the stored
/// verdict, angle and margin. The soundness gate: a `Minimizing` verdict must
/// re-establish its inequality with margin at least [`SOUNDNESS_MARGIN`].
pub fn recheck_certificate(
    cert: &Certificate,
    settings: &SolverSettings,
) -> Result<RecheckReport, CertifyError> {
    let fresh = match &cert.subject {
        Subject::Focal { g, m1, m2, side } => {
            certify_focal_cone(*g, *m1, *m2, *side, settings)?
        }
        Subject::Union { g, m1, m2 } => certify_focal_union(*g, *m1, *m2, settings)?,
        Subject::Product { factors } => {
            let descriptors: Result<Vec<_>, _> =
                factors.iter().map(|f| f.descriptor()).collect();
            certify_product(descriptors?, settings)?
        }
    };
    let mut details = Vec::new();
    let mut ok = true;
    if fresh.verdict != cert.verdict {
        ok = false;
        details.push(format!(
            "verdict mismatch: stored {}, recomputed {}",
            cert.verdict, fresh.verdict
        ));
    }
    match (cert.theta0_upper, fresh.theta0_upper) {
        (Some(a), Some(b)) if (a - b).abs() > 1e-9 => {
            ok = false;
            details.push(format!("theta0 mismatch: stored {a}, recomputed {b}"));
        }
        (Some(_), None) | (None, Some(_)) => {
            ok = false;
            details.push("vanishing-angle existence mismatch".to_string());
        }
        _ => {}
    }
    if (cert.threshold - fresh.threshold).abs() > 1e-9 {
        ok = false;
        details.push(format!(
            "threshold mismatch: stored {}, recomputed {}",
            cert.threshold, fresh.threshold
        ));
    }
    if cert.verdict == Verdict::Minimizing {
        // Re-evaluate the inequality from the certificate's own numbers.
        let lhs = match cert.condition {
            Condition::ThetaBelowThreshold => cert.theta0_upper.unwrap_or(f64::INFINITY),
            Condition::DoubleThetaBelowPhi => {
                2.0 * cert.theta0_upper.unwrap_or(f64::INFINITY)
            }
        };
        let slack = cert.threshold - lhs;
        if slack.is_nan() || slack < SOUNDNESS_MARGIN {
            ok = false;
            details.push("stored inequality does not clear the soundness margin".to_string());
        }
    }
    if ok {
        details.push("certificate re-derived and consistent".to_string());
    }
    Ok(RecheckReport { ok, details })
}

/// Certificates for both sides of every `g = 4` family with
/// `m1 + m2 <= max_sum`. Computed in parallel; output order is the
/// lexicographic family order, independent of scheduling.
pub fn sweep_g4_families(
    max_sum: u32,
    settings: &SolverSettings,
) -> Result<Vec<(FamilyRecord, Certificate, Certificate)>, CertifyError> {
    enumerate_g4_families(max_sum)
        .into_par_iter()
        .map(|fam| {
            let plus = certify_focal_cone(4, fam.m1, fam.m2, Side::Plus, settings)?;
            let minus = certify_focal_cone(4, fam.m1, fam.m2, Side::Minus, settings)?;
            Ok((fam, plus, minus))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::sphere_factor;

    fn settings() -> SolverSettings {
        SolverSettings::default()
    }

    #[test]
    fn focal_cone_1_2_minus_minimizing_below_27_deg() {
        let c = certify_focal_cone(4, 1, 2, Side::Minus, &settings()).unwrap();
        assert_eq!(c.verdict, Verdict::Minimizing);
        assert_eq!(c.cone_dim, 5);
        assert_eq!(c.alpha_sq_used, 2.0);
        assert!(c.theta0_upper.unwrap().to_degrees() < 27.0);
        assert_eq!(c.q_model_used.as_deref(), Some("exact"));
    }

    #[test]
    fn focal_cone_1_2_plus_minimizing_below_25_deg() {
        let c = certify_focal_cone(4, 1, 2, Side::Plus, &settings()).unwrap();
        assert_eq!(c.verdict, Verdict::Minimizing);
        assert!(c.theta0_upper.unwrap().to_degrees() < 25.0);
    }

    #[test]
    fn focal_cone_1_1_inconclusive() {
        for side in [Side::Plus, Side::Minus] {
            let c = certify_focal_cone(4, 1, 1, side, &settings()).unwrap();
            assert_eq!(c.verdict, Verdict::Inconclusive);
            assert!(c.theta0_upper.is_none());
        }
    }

    #[test]
    fn theorem2_families_minimizing_below_30_deg() {
        for (g, m) in [(3u8, 2u32), (3, 4), (3, 8), (6, 2)] {
            let c = certify_focal_cone(g, m, m, Side::Plus, &settings()).unwrap();
            assert_eq!(c.verdict, Verdict::Minimizing, "(g, m) = ({g}, {m})");
            assert!(c.theta0_upper.unwrap().to_degrees() < 30.0);
        }
    }

    #[test]
    fn g3_m1_and_g6_m1_inconclusive() {
        for (g, m) in [(3u8, 1u32), (6, 1)] {
            let c = certify_focal_cone(g, m, m, Side::Minus, &settings()).unwrap();
            assert_eq!(c.verdict, Verdict::Inconclusive, "(g, m) = ({g}, {m})");
        }
    }

    #[test]
    fn union_2_2_minimizing() {
        let c = certify_focal_union(4, 2, 2, &settings()).unwrap();
        assert_eq!(c.verdict, Verdict::Minimizing);
        assert_eq!(c.cone_dim, 7);
        assert!(c.theta0_upper.unwrap() < std::f64::consts::FRAC_PI_8);
        assert!(certify_focal_union(3, 2, 2, &settings()).is_err());
    }

    #[test]
    fn union_1_1_inconclusive() {
        let c = certify_focal_union(4, 1, 1, &settings()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn product_of_two_g3m2_minimizing() {
        let f = focal_descriptor(3, 2, 2, Side::Plus).unwrap();
        let c = certify_product(vec![f.clone(), f], &settings()).unwrap();
        assert_eq!(c.verdict, Verdict::Minimizing);
        assert_eq!(c.cone_dim, 9);
        assert!(c.tan_phi_sq_lb.is_some());
    }

    #[test]
    fn three_factor_product_minimizing() {
        let f1 = focal_descriptor(3, 1, 1, Side::Plus).unwrap(); // k = 2
        let f2 = focal_descriptor(3, 2, 2, Side::Plus).unwrap(); // k = 4
        let f3 = focal_descriptor(4, 1, 2, Side::Minus).unwrap(); // k = 4
        let c = certify_product(vec![f1, f2, f3], &settings()).unwrap();
        assert_eq!(c.cone_dim, 11);
        assert_eq!(c.verdict, Verdict::Minimizing);
    }

    #[test]
    fn focal_times_sphere_minimizing() {
        let f = focal_descriptor(3, 2, 2, Side::Plus).unwrap();
        let s = sphere_factor(4).unwrap();
        let c = certify_product(vec![f, s], &settings()).unwrap();
        assert_eq!(c.verdict, Verdict::Minimizing);
    }

    #[test]
    fn tiny_product_inconclusive() {
        // Two k = 2 factors: S = 4, the profile cannot descend.
        let f = focal_descriptor(3, 1, 1, Side::Plus).unwrap();
        let c = certify_product(vec![f.clone(), f], &settings()).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn closed_form_check_examples() {
        assert!(closed_form_checks(11, 2).thm4_poly);
        assert!(closed_form_checks(8, 4).thm3_chain);
        assert!(closed_form_checks(1000, 3).thm4_poly);
        assert!(!closed_form_checks(7, 4).thm3_chain);
        assert!(!closed_form_checks(8, 3).thm3_chain);
    }

    #[test]
    fn minimizing_certificates_carry_margin() {
        let c = certify_focal_cone(4, 2, 2, Side::Plus, &settings()).unwrap();
        assert!(c.margin >= SOUNDNESS_MARGIN);
        let r = recheck_certificate(&c, &settings()).unwrap();
        assert!(r.ok, "{:?}", r.details);
    }

    #[test]
    fn recheck_detects_tampering() {
        let mut c = certify_focal_cone(4, 1, 1, Side::Plus, &settings()).unwrap();
        c.verdict = Verdict::Minimizing;
        let r = recheck_certificate(&c, &settings()).unwrap();
        assert!(!r.ok);
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = certify_focal_cone(4, 1, 2, Side::Minus, &settings()).unwrap();
        let j = serde_json::to_string_pretty(&c).unwrap();
        let back: Certificate = serde_json::from_str(&j).unwrap();
        assert_eq!(back.verdict, c.verdict);
        assert_eq!(back.subject, c.subject);
        let r = recheck_certificate(&back, &settings()).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn half_threshold_sides_imply_minimizing_union() {
        // Whenever both sides clear half the single-cone threshold, the
        // union certificate must be Minimizing.
        for (m1, m2) in [(2u32, 2u32), (1, 4), (2, 5), (4, 5), (3, 4)] {
            let s = settings();
            let plus = certify_focal_cone(4, m1, m2, Side::Plus, &s).unwrap();
            let minus = certify_focal_cone(4, m1, m2, Side::Minus, &s).unwrap();
            let half = std::f64::consts::FRAC_PI_8;
            if let (Some(a), Some(b)) = (plus.theta0_upper, minus.theta0_upper) {
                if a < half - SOUNDNESS_MARGIN && b < half - SOUNDNESS_MARGIN {
                    let u = certify_focal_union(4, m1, m2, &s).unwrap();
                    assert_eq!(u.verdict, Verdict::Minimizing, "({m1}, {m2})");
                }
            }
        }
    }

    #[test]
    fn closed_form_implies_numeric_verdict() {
        // The closed forms are weaker than the solver: whenever one holds
        // for an all-focal product, the numeric certificate must agree.
        let s = settings();
        let pool = [
            focal_descriptor(3, 2, 2, Side::Plus).unwrap(),
            focal_descriptor(3, 4, 4, Side::Plus).unwrap(),
            focal_descriptor(4, 1, 2, Side::Minus).unwrap(),
            focal_descriptor(4, 2, 2, Side::Plus).unwrap(),
            focal_descriptor(6, 2, 2, Side::Plus).unwrap(),
        ];
        for i in 0..pool.len() {
            for j in i..pool.len() {
                let factors = vec![pool[i].clone(), pool[j].clone()];
                let total: u32 = factors.iter().map(|f| f.dim).sum();
                let k1 = factors.iter().map(|f| f.dim).min().unwrap();
                let checks = closed_form_checks(total, k1);
                if checks.thm3_chain || (total >= 11 && checks.thm4_poly) {
                    let c = certify_product(factors, &s).unwrap();
                    assert_eq!(c.verdict, Verdict::Minimizing, "({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn sweep_small() {
        let rows = sweep_g4_families(6, &settings()).unwrap();
        assert!(!rows.is_empty());
        for (fam, plus, minus) in &rows {
            if (fam.m1, fam.m2) == (1, 1) {
                assert_eq!(plus.verdict, Verdict::Inconclusive);
                assert_eq!(minus.verdict, Verdict::Inconclusive);
            } else {
                assert_eq!(plus.verdict, Verdict::Minimizing, "{:?}", fam);
                assert_eq!(minus.verdict, Verdict::Minimizing, "{:?}", fam);
            }
        }
    }
}
