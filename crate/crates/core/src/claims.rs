//! Aggregated verification of the reference bounds the toolkit is expected
//! to reproduce, as a structured pass/fail report.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{ambient_dim, focal_descriptor, Side};
use crate::certifier::{
    certify_focal_cone, certify_focal_union, certify_product, closed_form_checks,
    sweep_g4_families, CertifyError, Verdict,
};
use crate::products::{appendix_min_inequality, appendix_min_inequality_int};
use crate::profile::{solve_profile, SolverSettings};
use crate::qmodel::QModel;

/// One verified claim: a computed quantity compared against its reference
/// bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub computed: f64,
    pub bound: f64,
    /// Comparison direction: the claim is `computed <op> bound`.
    pub op: String,
    /// `bound - computed` for `<`/`<=` claims, `computed - bound` for `>`.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimReport {
    pub schema_version: u32,
    pub claims: Vec<ClaimResult>,
    pub all_pass: bool,
}

fn claim_lt(id: &str, description: &str, computed: f64, bound: f64) -> ClaimResult {
    ClaimResult {
        id: id.to_string(),
        description: description.to_string(),
        computed,
        bound,
        op: "<".to_string(),
        margin: bound - computed,
        pass: computed < bound,
    }
}

fn claim_le(id: &str, description: &str, computed: f64, bound: f64) -> ClaimResult {
    ClaimResult {
        id: id.to_string(),
        description: description.to_string(),
        computed,
        bound,
        op: "<=".to_string(),
        margin: bound - computed,
        pass: computed <= bound,
    }
}

fn claim_gt(id: &str, description: &str, computed: f64, bound: f64) -> ClaimResult {
    ClaimResult {
        id: id.to_string(),
        description: description.to_string(),
        computed,
        bound,
        op: ">".to_string(),
        margin: computed - bound,
        pass: computed > bound,
    }
}

fn claim_eq_count(id: &str, description: &str, violations: usize) -> ClaimResult {
    ClaimResult {
        id: id.to_string(),
        description: description.to_string(),
        computed: violations as f64,
        bound: 0.0,
        op: "==".to_string(),
        margin: 0.0,
        pass: violations == 0,
    }
}

fn theta_deg(model: &QModel, k: u32, settings: &SolverSettings) -> Option<f64> {
    solve_profile(model, k, settings)
        .ok()?
        .theta()
        .map(f64::to_degrees)
}

type ClaimJob = Box<dyn Fn(&SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> + Sync>;

/// Runs the full claim list. Claims are evaluated in parallel and assembled
/// in a fixed canonical order.
pub fn verify_claims(settings: &SolverSettings) -> Result<ClaimReport, CertifyError> {
    let jobs: Vec<ClaimJob> = vec![
        Box::new(anchor_angle_claims),
        Box::new(forty_five_degree_row),
        Box::new(family_1_2_claims),
        Box::new(low_g_family_claims),
        Box::new(union_claims),
        Box::new(sweep_claims),
        Box::new(product_claims),
        Box::new(polynomial_claims),
        Box::new(appendix_claims),
    ];
    let groups: Result<Vec<Vec<ClaimResult>>, CertifyError> =
        jobs.par_iter().map(|job| job(settings)).collect();
    let claims: Vec<ClaimResult> = groups?.into_iter().flatten().collect();
    let all_pass = claims.iter().all(|c| c.pass);
    Ok(ClaimReport {
        schema_version: 1,
        claims,
        all_pass,
    })
}

fn anchor_angle_claims(settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let mut out = Vec::new();
    let exp = |a: f64| QModel::exp_bound(a.sqrt()).expect("valid alpha");
    let fb = |a: f64, ell: u32| QModel::f_bound(a.sqrt(), ell).expect("valid alpha");

    let t = theta_deg(&exp(10.0), 12, settings).unwrap_or(f64::INFINITY);
    out.push(claim_lt("C01", "theta_c(12, sqrt(10)) < 9 deg", t, 9.0));

    let t = theta_deg(&fb(32.0 / 3.0, 8), 9, settings).unwrap_or(f64::INFINITY);
    out.push(claim_lt("C02", "theta_F(9, sqrt(32/3)) < 18 deg", t, 18.0));

    let t = theta_deg(&fb(12.0, 9), 10, settings).unwrap_or(f64::INFINITY);
    out.push(claim_le("C03", "theta_F(10, sqrt(12)) <= 13.51 deg", t, 13.51));

    let t = theta_deg(&fb(40.0 / 3.0, 10), 11, settings).unwrap_or(f64::INFINITY);
    out.push(claim_le("C04", "theta_F(11, sqrt(40/3)) <= 11.35 deg", t, 11.35));

    let t = theta_deg(&exp(44.0 / 3.0), 12, settings).unwrap_or(f64::INFINITY);
    out.push(claim_lt(
        "C05",
        "tan theta_c(12, sqrt(44/3)) < 0.1683",
        t.to_radians().tan(),
        0.1683,
    ));
    Ok(out)
}

fn forty_five_degree_row(settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let mut out = Vec::new();
    for k in 7u32..=11 {
        let alpha_sq = f64::from(k) - 2.0;
        let m = QModel::f_bound(alpha_sq.sqrt(), k - 1).expect("valid alpha");
        let t = theta_deg(&m, k, settings).unwrap_or(f64::INFINITY);
        out.push(claim_lt(
            &format!("C{:02}", 5 + k - 6),
            &format!("theta_F({k}, sqrt({k}-2)) < 45 deg"),
            t,
            45.0,
        ));
    }
    Ok(out)
}

fn family_1_2_claims(settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let mut out = Vec::new();
    let minus = certify_focal_cone(4, 1, 2, Side::Minus, settings)?;
    out.push(claim_lt(
        "C11",
        "focal cone (4,1,2) minus: theta0 < 27 deg and Minimizing",
        minus
            .theta0_upper
            .map_or(f64::INFINITY, f64::to_degrees),
        if minus.verdict == Verdict::Minimizing { 27.0 } else { 0.0 },
    ));
    let plus = certify_focal_cone(4, 1, 2, Side::Plus, settings)?;
    out.push(claim_lt(
        "C12",
        "focal cone (4,1,2) plus: theta0 < 25 deg and Minimizing",
        plus.theta0_upper.map_or(f64::INFINITY, f64::to_degrees),
        if plus.verdict == Verdict::Minimizing { 25.0 } else { 0.0 },
    ));
    // The exact determinant of the plus side is (1+t)^2 (1-t)^2.
    let d = focal_descriptor(4, 1, 2, Side::Plus)?;
    let model = QModel::exact(d.spectrum.clone());
    let mut max_diff = 0.0f64;
    for i in 0..=40 {
        let t = i as f64 / 40.0;
        let expect = (1.0 + t).powi(2) * (1.0 - t).powi(2);
        max_diff = max_diff.max((model.eval(t).expect("inside domain") - expect).abs());
    }
    out.push(claim_lt(
        "C13",
        "exact determinant of (4,1,2) plus equals (1+t)^2(1-t)^2 on a grid",
        max_diff,
        1e-12,
    ));
    Ok(out)
}

fn low_g_family_claims(settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let mut out = Vec::new();
    for (i, (g, m, cone_dim)) in [(3u8, 2u32, 5u32), (3, 4, 9), (3, 8, 17), (6, 2, 11)]
        .into_iter()
        .enumerate()
    {
        let c = certify_focal_cone(g, m, m, Side::Plus, settings)?;
        debug_assert_eq!(c.cone_dim, cone_dim);
        out.push(claim_lt(
            &format!("C{:02}", 14 + i),
            &format!("focal cone (g={g}, m={m}): theta0 < 30 deg and Minimizing"),
            c.theta0_upper.map_or(f64::INFINITY, f64::to_degrees),
            if c.verdict == Verdict::Minimizing { 30.0 } else { 0.0 },
        ));
    }
    Ok(out)
}

fn union_claims(settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let mut out = Vec::new();
    let u = certify_focal_union(4, 2, 2, settings)?;
    out.push(claim_lt(
        "C18",
        "union of (4,2,2) cones: max theta0 < pi/8 and Minimizing",
        u.theta0_upper.map_or(f64::INFINITY, f64::to_degrees),
        if u.verdict == Verdict::Minimizing { 22.5 } else { 0.0 },
    ));
    // Dimensional cross-check: both cones have dimension 7 in R^10.
    let viol = usize::from(u.cone_dim != 7) + usize::from(ambient_dim(4, 2, 2) != 10);
    out.push(claim_eq_count(
        "C19",
        "(4,2,2): both focal cones have dimension 7 in R^10",
        viol,
    ));
    let u45 = certify_focal_union(4, 4, 5, settings)?;
    out.push(claim_eq_count(
        "C20",
        "union of (4,4,5) cones: Minimizing",
        usize::from(u45.verdict != Verdict::Minimizing),
    ));
    Ok(out)
}

fn sweep_claims(settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let rows = sweep_g4_families(20, settings)?;
    let mut violations = 0usize;
    let mut open_violations = 0usize;
    for (fam, plus, minus) in &rows {
        if (fam.m1, fam.m2) == (1, 1) {
            open_violations += usize::from(plus.verdict != Verdict::Inconclusive);
            open_violations += usize::from(minus.verdict != Verdict::Inconclusive);
        } else {
            violations += usize::from(plus.verdict != Verdict::Minimizing);
            violations += usize::from(minus.verdict != Verdict::Minimizing);
        }
    }
    Ok(vec![
        claim_eq_count(
            "C21",
            &format!(
                "every g=4 family with m1+m2 <= 20 except (1,1) certifies on both sides ({} families)",
                rows.len()
            ),
            violations,
        ),
        claim_eq_count("C22", "(1,1) is Inconclusive on both sides", open_violations),
    ])
}

fn product_claims(settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let mut out = Vec::new();
    let g3m2 = focal_descriptor(3, 2, 2, Side::Plus)?;
    let c = certify_product(vec![g3m2.clone(), g3m2.clone()], settings)?;
    out.push(claim_eq_count(
        "C23",
        "product (g=3,m=2) x (g=3,m=2): Minimizing",
        usize::from(c.verdict != Verdict::Minimizing),
    ));

    let f1 = focal_descriptor(3, 1, 1, Side::Plus)?;
    let f3 = focal_descriptor(4, 1, 2, Side::Minus)?;
    let c = certify_product(vec![f1, g3m2.clone(), f3], settings)?;
    out.push(claim_eq_count(
        "C24",
        "triple product with S = 10 (cone dim 11): Minimizing",
        usize::from(c.verdict != Verdict::Minimizing),
    ));

    let sph = crate::catalog::sphere_factor(4)?;
    let c = certify_product(vec![g3m2, sph], settings)?;
    out.push(claim_eq_count(
        "C25",
        "product (g=3,m=2) x S^4 (dim 8, k1 = 4): Minimizing",
        usize::from(c.verdict != Verdict::Minimizing),
    ));

    // Edge products at S = 9, 10: tan^2 phi clears tan^2(2 theta_F) with the
    // table anchors 13.51 and 11.35 degrees.
    let tan_phi_sq_9 = (1.0f64 / (1.0 - 1.0 / 9.0)).powi(2) - 1.0;
    out.push(claim_gt(
        "C26",
        "S=9: (1/(1-1/9))^2 - 1 > tan^2(2 * 13.51 deg)",
        tan_phi_sq_9,
        (2.0f64 * 13.51f64.to_radians()).tan().powi(2),
    ));
    let tan_phi_sq_10 = (1.0f64 / (1.0 - 1.0 / 10.0)).powi(2) - 1.0;
    out.push(claim_gt(
        "C27",
        "S=10: (1/(1-1/10))^2 - 1 > tan^2(2 * 11.35 deg)",
        tan_phi_sq_10,
        (2.0f64 * 11.35f64.to_radians()).tan().powi(2),
    ));
    Ok(out)
}

fn polynomial_claims(_settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    // Sign of the closed-form polynomial for k1 in {2, 3} over 11 <= S <= 1000.
    let mut violations = 0usize;
    for k1 in [2u32, 3] {
        for s in 11u32..=1000 {
            if !closed_form_checks(s, k1).thm4_poly {
                violations += 1;
            }
        }
    }
    Ok(vec![claim_eq_count(
        "C28",
        "closed-form polynomial > 0 for k1 in {2,3}, 11 <= S <= 1000",
        violations,
    )])
}

fn appendix_claims(_settings: &SolverSettings) -> Result<Vec<ClaimResult>, CertifyError> {
    let mut out = Vec::new();
    // Real grid a, b in {0.1, 0.2, ..., 10.0}, a != b.
    let mut violations = 0usize;
    for i in 1..=100u32 {
        for j in 1..=100u32 {
            if i == j {
                continue;
            }
            let (a, b) = (f64::from(i) * 0.1, f64::from(j) * 0.1);
            if !appendix_min_inequality(a, b).expect("a != b on the grid") {
                violations += 1;
            }
        }
    }
    out.push(claim_eq_count(
        "C29",
        "min-inequality holds on the real grid a,b in {0.1,...,10}, a != b",
        violations,
    ));

    // Integer-strengthened form for p != q <= 200, equality iff min = 1.
    let mut violations = 0usize;
    for p in 1u64..=200 {
        for q in 1u64..=200 {
            if p == q {
                continue;
            }
            let r = appendix_min_inequality_int(p, q).expect("p != q");
            if !r.holds || (r.equality != (p.min(q) == 1)) {
                violations += 1;
            }
        }
    }
    out.push(claim_eq_count(
        "C30",
        "integer-strengthened form holds for p != q <= 200, equality iff min(p,q) = 1",
        violations,
    ));
    Ok(out)
}

impl ClaimReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Aligned plain-text rendering, one line per claim.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .claims
            .iter()
            .map(|c| c.description.len())
            .max()
            .unwrap_or(0);
        for c in &self.claims {
            out.push_str(&format!(
                "{} {:4} {:<width$}  computed {: >14.8} {} {: <14.8}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.description,
                c.computed,
                c.op,
                c.bound,
                width = width
            ));
        }
        out.push_str(&format!(
            "{} of {} claims pass\n",
            self.claims.iter().filter(|c| c.pass).count(),
            self.claims.len()
        ));
        out
    }
}
