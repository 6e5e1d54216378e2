//! Isoparametric-family data: focal-submanifold dimensions, shape-operator
//! spectra, admissible multiplicities and the hypercone classification
//! predicate.
//!
//! A foliation of a unit sphere by parallel isoparametric hypersurfaces has
//! `g` distinct principal curvatures (`g` is 1, 2, 3, 4 or 6) with
//! multiplicities alternating between `m1` and `m2`, and two singular leaves
//! `M_+`, `M_-` of higher codimension, the focal submanifolds. Their shape
//! operators have the same spectrum for every unit normal, which is what the
//! certification pipeline consumes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qmodel::Spectrum;

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("g must be in {{2, 3, 4, 6}}, got {0}")]
    UnsupportedG(u8),
    #[error("g = 1 foliations have point focal sets; no focal cone exists")]
    TrivialFoliation,
    #[error("multiplicities must be >= 1, got ({m1}, {m2})")]
    ZeroMultiplicity { m1: u32, m2: u32 },
    #[error("g = {g} requires m1 = m2, got ({m1}, {m2})")]
    UnequalMultiplicities { g: u8, m1: u32, m2: u32 },
}

/// Which focal submanifold of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Plus => write!(f, "plus"),
            Side::Minus => write!(f, "minus"),
        }
    }
}

/// Dimensional and spectral data of one focal submanifold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FocalDescriptor {
    pub g: u8,
    pub m1: u32,
    pub m2: u32,
    pub side: Side,
    /// Dimension of the focal submanifold.
    pub dim: u32,
    /// Shape-operator spectrum for any unit normal.
    pub spectrum: Spectrum,
    /// Squared norm of the shape operator, `sum m_i lambda_i^2`.
    pub alpha_sq: f64,
    /// Whether `(g, m1, m2)` belongs to a classified family. Advisory:
    /// hypothetical parameter studies still receive a descriptor.
    pub admissible: bool,
}

impl FocalDescriptor {
    pub fn cone_dim(&self) -> u32 {
        self.dim + 1
    }

    /// Short human-readable label, e.g. `g=4 (1,2) minus`.
    pub fn label(&self) -> String {
        if self.g == 2 {
            format!("sphere S^{}", self.dim)
        } else {
            format!("g={} ({},{}) {}", self.g, self.m1, self.m2, self.side)
        }
    }
}

/// Builds the descriptor for one side of the family `(g, m1, m2)`.
///
/// Spectra (with respect to any unit normal):
/// * `g = 4`, side plus: `{+1 x m2, -1 x m2, 0 x m1}`, dimension `m1 + 2 m2`;
///   side minus swaps the roles of `m1` and `m2`.
/// * `g = 3` (`m1 = m2 = m`): `{+1/sqrt3 x m, -1/sqrt3 x m}`, dimension `2m`.
/// * `g = 6` (`m1 = m2 = m`): `{+-sqrt3 x m, +-1/sqrt3 x m, 0 x m}`,
///   dimension `5m`. The `m = 1` spectrum follows the same block pattern as
///   the classified `m = 2` case.
/// * `g = 2`: a great sphere, all-zero spectrum; side plus has dimension
///   `m1`, side minus `m2`.
pub fn focal_descriptor(
    g: u8,
    m1: u32,
    m2: u32,
    side: Side,
) -> Result<FocalDescriptor, CatalogError> {
    if g == 1 {
        return Err(CatalogError::TrivialFoliation);
    }
    if !matches!(g, 2 | 3 | 4 | 6) {
        return Err(CatalogError::UnsupportedG(g));
    }
    if m1 == 0 || m2 == 0 {
        return Err(CatalogError::ZeroMultiplicity { m1, m2 });
    }
    if matches!(g, 3 | 6) && m1 != m2 {
        return Err(CatalogError::UnequalMultiplicities { g, m1, m2 });
    }

    let sqrt3 = 3.0f64.sqrt();
    let (dim, spectrum) = match (g, side) {
        (2, Side::Plus) => (m1, Spectrum::zero(m1)),
        (2, Side::Minus) => (m2, Spectrum::zero(m2)),
        (3, _) => (
            2 * m1,
            Spectrum::new(vec![(1.0 / sqrt3, m1), (-1.0 / sqrt3, m1)]).expect("trace-free"),
        ),
        (4, Side::Plus) => (
            m1 + 2 * m2,
            Spectrum::new(vec![(1.0, m2), (-1.0, m2), (0.0, m1)]).expect("trace-free"),
        ),
        (4, Side::Minus) => (
            m2 + 2 * m1,
            Spectrum::new(vec![(1.0, m1), (-1.0, m1), (0.0, m2)]).expect("trace-free"),
        ),
        (6, _) => (
            5 * m1,
            Spectrum::new(vec![
                (sqrt3, m1),
                (-sqrt3, m1),
                (1.0 / sqrt3, m1),
                (-1.0 / sqrt3, m1),
                (0.0, m1),
            ])
            .expect("trace-free"),
        ),
        _ => unreachable!(),
    };

    let alpha_sq = spectrum.alpha_sq();
    Ok(FocalDescriptor {
        g,
        m1,
        m2,
        side,
        dim,
        spectrum,
        alpha_sq,
        admissible: is_admissible(g, m1, m2),
    })
}

/// Convenience constructor for a great-sphere factor of dimension `l`.
pub fn sphere_factor(l: u32) -> Result<FocalDescriptor, CatalogError> {
    focal_descriptor(2, l, l, Side::Plus)
}

/// Squared shape-operator norm of a spectrum.
pub fn alpha_sq(spectrum: &Spectrum) -> f64 {
    spectrum.alpha_sq()
}

/// Radon-Hurwitz numbers: delta(1..8) = (1, 2, 4, 4, 8, 8, 8, 8) and
/// `delta(m + 8) = 16 delta(m)`. Governs the representation dimensions of
/// Clifford systems.
pub fn clifford_delta(m: u32) -> u64 {
    assert!(m >= 1, "delta is defined for m >= 1");
    const BASE: [u64; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    let idx = ((m - 1) % 8) as usize;
    let octaves = (m - 1) / 8;
    BASE[idx] << (4 * octaves)
}

fn is_admissible(g: u8, m1: u32, m2: u32) -> bool {
    match g {
        2 => true,
        3 => m1 == m2 && matches!(m1, 1 | 2 | 4 | 8),
        4 => is_g4_admissible(m1, m2) || is_g4_admissible(m2, m1),
        6 => m1 == m2 && matches!(m1, 1 | 2),
        _ => false,
    }
}

/// `(m1, m2)` arises as `(m, k delta(m) - m - 1)` for some `k >= 1`, or is
/// one of the homogeneous exceptions (2,2), (4,5).
fn is_g4_admissible(m1: u32, m2: u32) -> bool {
    if (m1, m2) == (2, 2) || (m1, m2) == (4, 5) {
        return true;
    }
    let delta = clifford_delta(m1);
    let l = u64::from(m1) + u64::from(m2) + 1;
    l % delta == 0
}

/// How a family entered the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "OT-FKM")]
    OtFkm,
    #[serde(rename = "homogeneous-exceptional")]
    HomogeneousExceptional,
    #[serde(rename = "g<=3-or-6 family")]
    LowGFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub g: u8,
    pub m1: u32,
    pub m2: u32,
    pub provenance: Provenance,
}

/// All `g = 4` families with `m1 + m2 <= max_sum`: the Clifford-system pairs
/// `(m, k delta(m) - m - 1)` with both multiplicities >= 1, plus the two
/// homogeneous exceptions (2,2) and (4,5). Deduplicated, sorted
/// lexicographically.
pub fn enumerate_g4_families(max_sum: u32) -> Vec<FamilyRecord> {
    let mut out: Vec<FamilyRecord> = Vec::new();
    for m in 1..=max_sum.saturating_sub(1) {
        let delta = clifford_delta(m);
        let mut l = delta;
        while l <= u64::from(max_sum) + 1 {
            if l >= u64::from(m) + 2 {
                let m2 = (l - u64::from(m) - 1) as u32;
                if m2 >= 1 && m + m2 <= max_sum {
                    out.push(FamilyRecord {
                        g: 4,
                        m1: m,
                        m2,
                        provenance: Provenance::OtFkm,
                    });
                }
            }
            l += delta;
        }
    }
    for (m1, m2) in [(2, 2), (4, 5)] {
        if m1 + m2 <= max_sum {
            out.push(FamilyRecord {
                g: 4,
                m1,
                m2,
                provenance: Provenance::HomogeneousExceptional,
            });
        }
    }
    out.sort_by_key(|r| (r.m1, r.m2, r.provenance != Provenance::OtFkm));
    out.dedup_by_key(|r| (r.m1, r.m2));
    out
}

/// Outcome of the hypercone classification predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WangVerdict {
    /// The cone over the minimal isoparametric hypersurface is minimizing.
    pub minimizing: bool,
    /// Minimizing isoparametric hypercones are automatically strictly
    /// area-minimizing.
    pub strictly_minimizing: bool,
}

/// Classification of minimal isoparametric hypercones: the cone over the
/// minimal hypersurface of the family `(g, m1, m2)` in `S^{n-1}` is
/// minimizing iff `n >= 4g` and `(g, m1, m2)` is neither (2,1,5) nor (4,1,6).
///
/// `g = 1` is refused: the focal leaves are points and the hyperplane cone is
/// outside the predicate's scope.
pub fn wang_minimizing(g: u8, m1: u32, m2: u32, n: u32) -> Result<WangVerdict, CatalogError> {
    if g == 1 {
        return Err(CatalogError::TrivialFoliation);
    }
    if !matches!(g, 2 | 3 | 4 | 6) {
        return Err(CatalogError::UnsupportedG(g));
    }
    let minimizing =
        n >= 4 * u32::from(g) && (g, m1, m2) != (2, 1, 5) && (g, m1, m2) != (4, 1, 6);
    Ok(WangVerdict {
        minimizing,
        strictly_minimizing: minimizing,
    })
}

/// Ambient dimension of the family: the hypersurface has dimension
/// `g (m1 + m2) / 2`, so it sits in `S^{n-1}` with this `n`.
pub fn ambient_dim(g: u8, m1: u32, m2: u32) -> u32 {
    g as u32 * (m1 + m2) / 2 + 2
}

/// JSON catalog dump: one record per family with both sides' descriptors.
/// Covers the enumerated `g = 4` families up to `max_sum` plus the fixed
/// `g = 3` and `g = 6` families.
pub fn catalog_json(max_sum: u32) -> serde_json::Value {
    let mut families = Vec::new();
    let mut push = |rec: &FamilyRecord| {
        let plus = focal_descriptor(rec.g, rec.m1, rec.m2, Side::Plus).expect("valid family");
        let minus = focal_descriptor(rec.g, rec.m1, rec.m2, Side::Minus).expect("valid family");
        families.push(serde_json::json!({
            "g": rec.g,
            "m1": rec.m1,
            "m2": rec.m2,
            "provenance": rec.provenance,
            "ambient_dim": ambient_dim(rec.g, rec.m1, rec.m2),
            "plus": plus,
            "minus": minus,
        }));
    };
    for rec in enumerate_g4_families(max_sum) {
        push(&rec);
    }
    for m in [1u32, 2, 4, 8] {
        push(&FamilyRecord { g: 3, m1: m, m2: m, provenance: Provenance::LowGFamily });
    }
    for m in [1u32, 2] {
        push(&FamilyRecord { g: 6, m1: m, m2: m, provenance: Provenance::LowGFamily });
    }
    serde_json::json!({ "schema_version": 1, "families": families })
}
