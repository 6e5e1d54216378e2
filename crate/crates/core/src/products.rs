//! Minimal products of focal submanifolds: the weighted product embedding
//! `(x, y) -> (lambda f1(x), mu f2(y))` with `lambda = sqrt(k1/S)`,
//! `mu = sqrt(k2/S)`, its shape-operator norm supremum, and certified lower
//! bounds on the normal radius.
//!
//! The normal radius analysis distinguishes where a normal great circle
//! through a point can re-enter the cone: with both factor normals active
//! (case I), one active (case II, in either orientation), or neither
//! (case III, the Euler direction). Every candidate is computed from uniform
//! upper bounds on `|cos phi|` of the factors; the minimum over candidates is
//! bounded below by a closed form that folds through multi-factor products
//! unchanged, which is what makes the induction over factors work.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::FocalDescriptor;

#[derive(Debug, Error, PartialEq)]
pub enum ProductsError {
    #[error("a minimal product needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("factor g must be in {{2, 3, 4, 6}}, got {0}")]
    UnsupportedG(u8),
    #[error("the inequality is undefined for a = b")]
    EqualArguments,
    #[error("arguments must be positive, got ({0}, {1})")]
    NonPositiveArguments(f64, f64),
    #[error("candidate minimum {candidate_min} fell below the closed-form bound {closed_form}")]
    BoundViolation { candidate_min: f64, closed_form: f64 },
}

/// A minimal product of focal submanifolds, with the quantities the
/// certification condition needs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductSpec {
    pub factors: Vec<FocalDescriptor>,
    /// Total dimension `S = sum k_i`.
    pub total_dim: u32,
    /// Squared embedding weights `k_i / S`, aligned with `factors`.
    pub weights_sq: Vec<f64>,
    /// Supremum of the squared shape-operator norm over unit normals,
    /// `S max(1, max_i alpha_i^2 / k_i)`.
    pub shape_sup_sq: f64,
    /// Certified lower bound on `tan^2 phi` of the normal radius.
    pub tan_phi_sq_lb: f64,
    /// Cos-bound bookkeeping behind `tan_phi_sq_lb`.
    pub ledger: Vec<LedgerEntry>,
    /// The product consists solely of spheres; its normal radius comes from
    /// the external classification of such products rather than this
    /// machinery.
    pub externally_classified: bool,
}

impl ProductSpec {
    pub fn cone_dim(&self) -> u32 {
        self.total_dim + 1
    }
}

/// One step of the cos-bound ledger: either a factor entering the fold or an
/// accumulated product with its inherited bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub description: String,
    pub dim: u32,
    /// Uniform upper bound for `|cos phi|`; `None` for a factor that cannot
    /// return along its own normals (a single great sphere).
    pub cos_bound: Option<f64>,
}

/// Where the re-entry candidate comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CandidateCase {
    /// Both factor normals active.
    I,
    /// Left factor normal active, right passive.
    IiLeft,
    /// Right factor normal active, left passive.
    IiRight,
    /// Both inactive; the Euler direction.
    Iii,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NormalRadiusCandidate {
    pub case: CandidateCase,
    /// `omega^2 = tan^2` of the candidate re-entry angle; `+inf` when the
    /// case admits no finite solution.
    pub omega_sq: f64,
}

/// Re-entry candidates for a two-block product. Each side is given as
/// `(cos_bound, dim)` where `cos_bound` in `[0, 1)` uniformly bounds
/// `|cos phi|` for that block.
///
/// With `lambda^2 = k1/S`, `mu^2 = k2/S`:
/// * case I: `omega^2 = (1 / (lambda^2 cL + mu^2 cR))^2 - 1`,
/// * case II: `omega^2 = (1 / (lambda^2 cL + mu^2))^2 - 1` and mirrored,
/// * case III: `omega^2 = 4 k1 k2 / (k1 - k2)^2`, infinite for `k1 = k2`.
pub fn normal_radius_candidates(
    left: (f64, u32),
    right: (f64, u32),
) -> Vec<NormalRadiusCandidate> {
    let (c_l, k1) = left;
    let (c_r, k2) = right;
    let s = f64::from(k1 + k2);
    let lam_sq = f64::from(k1) / s;
    let mu_sq = f64::from(k2) / s;

    let from_inner = |inner: f64| {
        if inner > 0.0 {
            (1.0 / inner).powi(2) - 1.0
        } else {
            f64::INFINITY
        }
    };

    vec![
        NormalRadiusCandidate {
            case: CandidateCase::I,
            omega_sq: from_inner(lam_sq * c_l + mu_sq * c_r),
        },
        NormalRadiusCandidate {
            case: CandidateCase::IiLeft,
            omega_sq: from_inner(lam_sq * c_l + mu_sq),
        },
        NormalRadiusCandidate {
            case: CandidateCase::IiRight,
            omega_sq: from_inner(lam_sq + mu_sq * c_r),
        },
        NormalRadiusCandidate {
            case: CandidateCase::Iii,
            omega_sq: if k1 == k2 {
                f64::INFINITY
            } else {
                4.0 * f64::from(k1) * f64::from(k2) / f64::from(k1.abs_diff(k2)).powi(2)
            },
        },
    ]
}

/// Certified normal-radius lower bound for a minimal product.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalRadiusBound {
    /// `tan^2 phi >= tan_phi_sq`; may be `+inf` for products of two equal
    /// spheres.
    pub tan_phi_sq: f64,
    /// The effective minimum dimension in the closed form
    /// `(1 / (1 - k_min / (2S)))^2 - 1`.
    pub k_min: u32,
    pub ledger: Vec<LedgerEntry>,
    pub externally_classified: bool,
}

/// Fold state: an accumulated block with its inherited cos bound.
struct Block {
    cos_bound: f64,
    dim: u32,
    k_min: u32,
}

fn closed_form(k_min: u32, s: u32) -> f64 {
    let inner = 1.0 - f64::from(k_min) / (2.0 * f64::from(s));
    (1.0 / inner).powi(2) - 1.0
}

/// Slack for the candidate-dominance check; the integer-strengthened
/// inequality holds with exact equality when the smallest sphere is a circle.
const DOMINANCE_EPS: f64 = 1e-9;

fn check_dominance(candidates: &[NormalRadiusCandidate], bound: f64) -> Result<(), ProductsError> {
    let min = candidates
        .iter()
        .map(|c| c.omega_sq)
        .fold(f64::INFINITY, f64::min);
    if min < bound - DOMINANCE_EPS {
        return Err(ProductsError::BoundViolation {
            candidate_min: min,
            closed_form: bound,
        });
    }
    Ok(())
}

/// Lower bound on `tan^2 phi` for the minimal product of `factors`.
///
/// Factors with `g` in {3, 4, 6} enter with the uniform cos bound 1/2. A
/// single sphere factor cannot return along its own normals and enters
/// passively; a block of two or more spheres carries `cos phi0 = 1 - 2 l1/L`.
/// Folding blocks left to right, each accumulated product inherits
/// `cos <= 1 - k_min / (2 S)`, which yields the returned closed form. The
/// minimum over re-entry candidates is verified against it at every fold.
pub fn product_normal_radius_lb(
    factors: &[FocalDescriptor],
) -> Result<NormalRadiusBound, ProductsError> {
    if factors.len() < 2 {
        return Err(ProductsError::TooFewFactors(factors.len()));
    }
    for f in factors {
        if !matches!(f.g, 2 | 3 | 4 | 6) {
            return Err(ProductsError::UnsupportedG(f.g));
        }
    }

    let mut focal: Vec<&FocalDescriptor> =
        factors.iter().filter(|f| f.g != 2).collect();
    focal.sort_by_key(|f| f.dim);
    let mut spheres: Vec<&FocalDescriptor> =
        factors.iter().filter(|f| f.g == 2).collect();
    spheres.sort_by_key(|f| f.dim);

    let mut ledger = Vec::new();

    if focal.is_empty() {
        // Product of spheres only: normal radius from the external
        // classification, cos phi0 = 1 - 2 l1 / L.
        let l1 = spheres[0].dim;
        let total: u32 = spheres.iter().map(|f| f.dim).sum();
        let cos0 = 1.0 - 2.0 * f64::from(l1) / f64::from(total);
        for f in &spheres {
            ledger.push(LedgerEntry {
                description: f.label(),
                dim: f.dim,
                cos_bound: None,
            });
        }
        ledger.push(LedgerEntry {
            description: format!("sphere block S={total} (classified externally)"),
            dim: total,
            cos_bound: Some(cos0.abs()),
        });
        let tan_phi_sq = if cos0 == 0.0 {
            f64::INFINITY
        } else {
            (1.0 / cos0.abs()).powi(2) - 1.0
        };
        return Ok(NormalRadiusBound {
            tan_phi_sq,
            k_min: 2 * l1,
            ledger,
            externally_classified: true,
        });
    }

    // Fold the focal factors, smallest first. A single focal factor enters
    // with bound 1/2 = 1 - k1/(2 k1), so the inherited form is uniform.
    let k1 = focal[0].dim;
    let mut acc = Block {
        cos_bound: 0.5,
        dim: k1,
        k_min: k1,
    };
    ledger.push(LedgerEntry {
        description: focal[0].label(),
        dim: focal[0].dim,
        cos_bound: Some(0.5),
    });
    for f in focal.iter().skip(1) {
        ledger.push(LedgerEntry {
            description: f.label(),
            dim: f.dim,
            cos_bound: Some(0.5),
        });
        let s_new = acc.dim + f.dim;
        let candidates = normal_radius_candidates((acc.cos_bound, acc.dim), (0.5, f.dim));
        let bound = closed_form(acc.k_min, s_new);
        check_dominance(&candidates, bound)?;
        acc = Block {
            cos_bound: 1.0 - f64::from(acc.k_min) / (2.0 * f64::from(s_new)),
            dim: s_new,
            k_min: acc.k_min,
        };
        ledger.push(LedgerEntry {
            description: format!("product so far, S={}", acc.dim),
            dim: acc.dim,
            cos_bound: Some(acc.cos_bound),
        });
    }

    match spheres.len() {
        0 => {}
        1 => {
            // One sphere: only the passive case II and the Euler case III
            // exist; the Euler candidate is bounded below via the
            // integer-strengthened inequality by the 2(l1 + 1) form.
            let l1 = spheres[0].dim;
            ledger.push(LedgerEntry {
                description: spheres[0].label(),
                dim: l1,
                cos_bound: None,
            });
            let s_new = acc.dim + l1;
            let mut candidates = vec![NormalRadiusCandidate {
                case: CandidateCase::IiLeft,
                omega_sq: {
                    let s = f64::from(s_new);
                    let inner =
                        f64::from(acc.dim) / s * acc.cos_bound + f64::from(l1) / s;
                    (1.0 / inner).powi(2) - 1.0
                },
            }];
            candidates.push(NormalRadiusCandidate {
                case: CandidateCase::Iii,
                omega_sq: if acc.dim == l1 {
                    f64::INFINITY
                } else {
                    4.0 * f64::from(acc.dim) * f64::from(l1)
                        / f64::from(acc.dim.abs_diff(l1)).powi(2)
                },
            });
            let k_eff = acc.k_min.min(2 * (l1 + 1));
            let bound = closed_form(k_eff, s_new);
            check_dominance(&candidates, bound)?;
            acc = Block {
                cos_bound: 1.0 - f64::from(k_eff) / (2.0 * f64::from(s_new)),
                dim: s_new,
                k_min: k_eff,
            };
            ledger.push(LedgerEntry {
                description: format!("product so far, S={}", acc.dim),
                dim: acc.dim,
                cos_bound: Some(acc.cos_bound),
            });
        }
        _ => {
            // Sphere block: returns exist within the block, with
            // cos phi0 = 1 - 2 l1 / L, uniform over re-entry points.
            let l1 = spheres[0].dim;
            let total: u32 = spheres.iter().map(|f| f.dim).sum();
            let cos0 = (1.0 - 2.0 * f64::from(l1) / f64::from(total)).abs();
            for f in &spheres {
                ledger.push(LedgerEntry {
                    description: f.label(),
                    dim: f.dim,
                    cos_bound: None,
                });
            }
            ledger.push(LedgerEntry {
                description: format!("sphere block, L={total}"),
                dim: total,
                cos_bound: Some(cos0),
            });
            let s_new = acc.dim + total;
            let candidates =
                normal_radius_candidates((acc.cos_bound, acc.dim), (cos0, total));
            let k_eff = acc.k_min.min(4 * l1);
            let bound = closed_form(k_eff, s_new);
            check_dominance(&candidates, bound)?;
            acc = Block {
                cos_bound: 1.0 - f64::from(k_eff) / (2.0 * f64::from(s_new)),
                dim: s_new,
                k_min: k_eff,
            };
            ledger.push(LedgerEntry {
                description: format!("product so far, S={}", acc.dim),
                dim: acc.dim,
                cos_bound: Some(acc.cos_bound),
            });
        }
    }

    Ok(NormalRadiusBound {
        tan_phi_sq: closed_form(acc.k_min, acc.dim),
        k_min: acc.k_min,
        ledger,
        externally_classified: false,
    })
}

/// Builds the minimal product of the given factors.
pub fn minimal_product(factors: Vec<FocalDescriptor>) -> Result<ProductSpec, ProductsError> {
    if factors.len() < 2 {
        return Err(ProductsError::TooFewFactors(factors.len()));
    }
    let total_dim: u32 = factors.iter().map(|f| f.dim).sum();
    let s = f64::from(total_dim);
    let weights_sq: Vec<f64> = factors.iter().map(|f| f64::from(f.dim) / s).collect();
    // sup over unit normals of ||A||^2; the Euler direction contributes the
    // ratio 1, each factor normal alpha_i^2 / k_i. Independent of grouping.
    let max_ratio = factors
        .iter()
        .map(|f| f.alpha_sq / f64::from(f.dim))
        .fold(1.0f64, f64::max);
    let shape_sup_sq = s * max_ratio;
    let radius = product_normal_radius_lb(&factors)?;
    Ok(ProductSpec {
        factors,
        total_dim,
        weights_sq,
        shape_sup_sq,
        tan_phi_sq_lb: radius.tan_phi_sq,
        ledger: radius.ledger,
        externally_classified: radius.externally_classified,
    })
}

/// Trace of the shape operator in the Euler normal direction
/// `eta0 = (mu x, -lambda y)`; identically zero, which is what makes the
/// weighted product embedding minimal.
pub fn euler_normal_shape_trace(k1: u32, k2: u32) -> f64 {
    let (k1, k2) = (f64::from(k1), f64::from(k2));
    let s = k1 + k2;
    let lambda = (k1 / s).sqrt();
    let mu = (k2 / s).sqrt();
    -k1 * mu / lambda + k2 * lambda / mu
}

/// For positive `a != b`:
/// `4ab/(a-b)^2 > min{((a+b)/b)^2 - 1, ((a+b)/a)^2 - 1}`.
pub fn appendix_min_inequality(a: f64, b: f64) -> Result<bool, ProductsError> {
    if a.is_nan() || b.is_nan() || a <= 0.0 || b <= 0.0 {
        return Err(ProductsError::NonPositiveArguments(a, b));
    }
    if a == b {
        return Err(ProductsError::EqualArguments);
    }
    let lhs = 4.0 * a * b / (a - b).powi(2);
    let rhs = (((a + b) / b).powi(2) - 1.0).min(((a + b) / a).powi(2) - 1.0);
    Ok(lhs > rhs)
}

/// Result of the integer-strengthened inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMinInequality {
    pub holds: bool,
    /// The two sides are exactly equal; happens iff `min(p, q) = 1`.
    pub equality: bool,
}

/// For positive integers `p != q`:
/// `4pq/(p-q)^2 >= min{((p+q)/(q-1))^2 - 1, ((p+q)/(p-1))^2 - 1}`,
/// reading a division by zero as infinity. Evaluated in exact integer
/// arithmetic so the equality case is detected without rounding.
pub fn appendix_min_inequality_int(p: u64, q: u64) -> Result<IntMinInequality, ProductsError> {
    if p == 0 || q == 0 {
        return Err(ProductsError::NonPositiveArguments(p as f64, q as f64));
    }
    if p == q {
        return Err(ProductsError::EqualArguments);
    }
    // lhs = 4pq / (p-q)^2 versus rhs = ((p+q)^2 - d^2) / d^2 with d = m - 1
    // for m in {p, q}; cross-multiplied: 4pq d^2 vs ((p+q)^2 - d^2) (p-q)^2.
    let diff_sq = u128::from(p.abs_diff(q)).pow(2);
    let sum_sq = u128::from(p + q).pow(2);
    let four_pq = 4 * u128::from(p) * u128::from(q);
    // Compare against an arm; None encodes an infinite right side.
    let arm = |m: u64| -> Option<(u128, u128)> {
        if m == 1 {
            return None; // (m - 1) = 0: the arm is infinite.
        }
        let d_sq = u128::from(m - 1).pow(2);
        Some((four_pq * d_sq, (sum_sq - d_sq) * diff_sq))
    };
    let mut holds = true;
    let mut equality = false;
    // min of the two arms: the inequality holds iff lhs >= both-arm minimum;
    // an infinite arm never realizes the minimum unless both are infinite.
    let arms: Vec<(u128, u128)> = [arm(q), arm(p)].into_iter().flatten().collect();
    if !arms.is_empty() {
        // rhs arms as fractions num/den with common cross-multiplied compare:
        // the minimum arm is the one with the larger denominator (smaller
        // value); compare lhs against the smaller arm value directly.
        let mut best: Option<(u128, u128)> = None; // (lhs_scaled, rhs_scaled)
        for (l, r) in arms {
            // Arm value is r / (corresponding scale of l); picking the arm
            // with the smaller value means picking the larger r/l ratio is
            // wrong; compare candidate arms pairwise by cross multiplication.
            best = Some(match best {
                None => (l, r),
                Some((bl, br)) => {
                    // arm value: r/l vs br/bl  =>  r * bl vs br * l
                    if r * bl < br * l {
                        (l, r)
                    } else {
                        (bl, br)
                    }
                }
            });
        }
        let (l, r) = best.expect("non-empty arms");
        holds = l >= r;
        equality = l == r;
    }
    Ok(IntMinInequality { holds, equality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{focal_descriptor, sphere_factor, Side};

    fn g3m2() -> FocalDescriptor {
        focal_descriptor(3, 2, 2, Side::Plus).unwrap()
    }

    #[test]
    fn two_g3_factors() {
        let spec = minimal_product(vec![g3m2(), g3m2()]).unwrap();
        assert_eq!(spec.total_dim, 8);
        assert_eq!(spec.cone_dim(), 9);
        assert_eq!(spec.weights_sq, vec![0.5, 0.5]);
        assert_eq!(spec.shape_sup_sq, 8.0);
        assert!(spec.shape_sup_sq <= 4.0 / 3.0 * 8.0);
        // k1 = 4, S = 8: tan^2 phi >= (1/(1 - 4/16))^2 - 1 = 7/9.
        assert!((spec.tan_phi_sq_lb - 7.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn g6_factor_saturates_shape_bound() {
        let g6 = focal_descriptor(6, 2, 2, Side::Plus).unwrap();
        let spec = minimal_product(vec![g3m2(), g6]).unwrap();
        let s = f64::from(spec.total_dim);
        assert!((spec.shape_sup_sq - 4.0 / 3.0 * s).abs() < 1e-9);
    }

    #[test]
    fn weights_normalize() {
        let d1 = focal_descriptor(4, 1, 2, Side::Minus).unwrap();
        let d2 = focal_descriptor(3, 4, 4, Side::Plus).unwrap();
        let spec = minimal_product(vec![d1, d2, g3m2()]).unwrap();
        let sum: f64 = spec.weights_sq.iter().sum();
        assert!((sum - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_factor_rejected() {
        assert_eq!(
            minimal_product(vec![g3m2()]).unwrap_err(),
            ProductsError::TooFewFactors(1)
        );
    }

    #[test]
    fn euler_direction_is_trace_free() {
        for (k1, k2) in [(4u32, 4u32), (2, 10), (7, 3)] {
            assert!(euler_normal_shape_trace(k1, k2).abs() < 1e-12);
        }
    }

    #[test]
    fn candidates_case_values() {
        // Both bounds 1/2: case I gives omega^2 = 3 for any weights.
        let cands = normal_radius_candidates((0.5, 4), (0.5, 12));
        let case_i = cands.iter().find(|c| c.case == CandidateCase::I).unwrap();
        assert!((case_i.omega_sq - 3.0).abs() < 1e-12);

        // Equal dimensions: the Euler case has no finite solution.
        let cands = normal_radius_candidates((0.5, 6), (0.5, 6));
        let iii = cands.iter().find(|c| c.case == CandidateCase::Iii).unwrap();
        assert!(iii.omega_sq.is_infinite());

        // k1 = 4, k2 = 16: omega^2 = 4*4*16/144 = 16/9.
        let cands = normal_radius_candidates((0.5, 4), (0.5, 16));
        let iii = cands.iter().find(|c| c.case == CandidateCase::Iii).unwrap();
        assert!((iii.omega_sq - 16.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn case_i_infinite_for_two_g4_style_zero_bounds() {
        let cands = normal_radius_candidates((0.0, 5), (0.0, 5));
        let case_i = cands.iter().find(|c| c.case == CandidateCase::I).unwrap();
        assert!(case_i.omega_sq.is_infinite());
        // Case II stays finite, which is what keeps the bound meaningful.
        let ii = cands
            .iter()
            .find(|c| c.case == CandidateCase::IiLeft)
            .unwrap();
        assert!(ii.omega_sq.is_finite());
    }

    #[test]
    fn focal_sphere_product_bound() {
        // (g=3, m=2, k=4) x S^4: k_min = min{4, 2*(4+1)} = 4, S = 8,
        // bound (1/(1 - 4/16))^2 - 1 = 7/9.
        let spec = minimal_product(vec![g3m2(), sphere_factor(4).unwrap()]).unwrap();
        assert!((spec.tan_phi_sq_lb - 7.0 / 9.0).abs() < 1e-12);
        assert!(!spec.externally_classified);
    }

    #[test]
    fn sphere_block_bound() {
        // Focal x two spheres: k_min = min{k1, 4 l1}.
        let spec = minimal_product(vec![
            g3m2(),
            sphere_factor(1).unwrap(),
            sphere_factor(3).unwrap(),
        ])
        .unwrap();
        // k1 = 4, l1 = 1 -> k_min = 4 l1 = 4? min{4, 4} = 4; S = 8.
        assert!((spec.tan_phi_sq_lb - closed_form(4, 8)).abs() < 1e-12);

        let spec = minimal_product(vec![
            focal_descriptor(3, 4, 4, Side::Plus).unwrap(),
            sphere_factor(1).unwrap(),
            sphere_factor(5).unwrap(),
        ])
        .unwrap();
        // k1 = 8, l1 = 1 -> k_min = 4; S = 14.
        assert_eq!(
            spec.tan_phi_sq_lb,
            closed_form(4, 14),
        );
    }

    #[test]
    fn all_sphere_product_is_externally_classified() {
        let spec = minimal_product(vec![
            sphere_factor(2).unwrap(),
            sphere_factor(4).unwrap(),
        ])
        .unwrap();
        assert!(spec.externally_classified);
        // cos phi0 = 1 - 2*2/6 = 1/3 -> tan^2 = 9 - 1 = 8.
        assert!((spec.tan_phi_sq_lb - 8.0).abs() < 1e-12);

        let spec = minimal_product(vec![
            sphere_factor(3).unwrap(),
            sphere_factor(3).unwrap(),
        ])
        .unwrap();
        assert!(spec.tan_phi_sq_lb.is_infinite());
    }

    #[test]
    fn two_focal_closed_form_examples() {
        // k1 <= k2, both focal: bound >= (1/(1 - k1/(2S)))^2 - 1.
        let d1 = focal_descriptor(4, 1, 2, Side::Minus).unwrap(); // k=4
        let d2 = focal_descriptor(4, 4, 5, Side::Plus).unwrap(); // k=14
        let spec = minimal_product(vec![d2.clone(), d1.clone()]).unwrap();
        let s = 18.0;
        let expect = (1.0f64 / (1.0 - 4.0 / (2.0 * s))).powi(2) - 1.0;
        assert!((spec.tan_phi_sq_lb - expect).abs() < 1e-12);
        // Input order does not matter.
        let spec2 = minimal_product(vec![d1, d2]).unwrap();
        assert_eq!(spec.tan_phi_sq_lb, spec2.tan_phi_sq_lb);
    }

    #[test]
    fn inherited_bound_matches_closed_form() {
        let spec = minimal_product(vec![
            g3m2(),
            focal_descriptor(3, 4, 4, Side::Plus).unwrap(),
            focal_descriptor(6, 2, 2, Side::Plus).unwrap(),
        ])
        .unwrap();
        let last = spec.ledger.last().unwrap();
        let s = f64::from(spec.total_dim);
        assert!((last.cos_bound.unwrap() - (1.0 - 4.0 / (2.0 * s))).abs() < 1e-12);
    }

    #[test]
    fn appendix_real_inequality() {
        // (1, 2): 8 > min{((3/2))^2 - 1, 3^2 - 1} = 1.25.
        assert!(appendix_min_inequality(1.0, 2.0).unwrap());
        assert!(appendix_min_inequality(10.0, 0.3).unwrap());
        assert_eq!(
            appendix_min_inequality(2.0, 2.0).unwrap_err(),
            ProductsError::EqualArguments
        );
        assert!(appendix_min_inequality(-1.0, 2.0).is_err());
    }

    #[test]
    fn appendix_integer_equality_iff_one() {
        let r = appendix_min_inequality_int(5, 1).unwrap();
        assert!(r.holds && r.equality);
        let r = appendix_min_inequality_int(1, 7).unwrap();
        assert!(r.holds && r.equality);
        let r = appendix_min_inequality_int(5, 2).unwrap();
        assert!(r.holds && !r.equality);
        let r = appendix_min_inequality_int(2, 200).unwrap();
        assert!(r.holds && !r.equality);
        assert!(appendix_min_inequality_int(3, 3).is_err());
    }
}
