//! Numerical certification of area-minimizing cones.
//!
//! A minimal cone over a submanifold of the unit sphere is area-minimizing if
//! (1) its extremal projection profile reaches zero at a finite vanishing
//! angle and (2) that angle clears the normal radius of the cone. This crate
//! implements both checks for cones over focal submanifolds of isoparametric
//! foliations and over minimal products of several such submanifolds:
//!
//! * [`qmodel`] — the determinant lower bounds `q(t)` fed to the profile ODE;
//! * [`profile`] — the adaptive integration of the fastest-vanishing profile
//!   and certified vanishing-angle upper bounds;
//! * [`catalog`] — spectra and dimensions of the isoparametric families;
//! * [`products`] — minimal products, shape-norm suprema and normal-radius
//!   lower bounds;
//! * [`certifier`] — certificates for focal cones, unions and products;
//! * [`table`] — vanishing-angle tables over a parameter grid;
//! * [`claims`] — the aggregated report of the reference-bound claims;
//! * [`factors`] — the factor-list grammar shared by the CLI and bindings.

pub mod catalog;
pub mod certifier;
pub mod claims;
pub mod factors;
pub mod products;
pub mod profile;
pub mod qmodel;
pub mod table;

pub use catalog::{
    alpha_sq, ambient_dim, catalog_json, clifford_delta, enumerate_g4_families,
    focal_descriptor, sphere_factor, wang_minimizing, CatalogError, FamilyRecord,
    FocalDescriptor, Provenance, Side, WangVerdict,
};
pub use certifier::{
    certify_focal_cone, certify_focal_union, certify_product, closed_form_checks,
    recheck_certificate, sweep_g4_families, Certificate, CertifyError, ClosedFormChecks,
    Condition, RecheckReport, Subject, Verdict, SOUNDNESS_MARGIN,
};
pub use claims::{verify_claims, ClaimReport, ClaimResult};
pub use factors::{parse_factor_list, FactorParseError};
pub use products::{
    appendix_min_inequality, appendix_min_inequality_int, minimal_product,
    normal_radius_candidates, product_normal_radius_lb, NormalRadiusBound,
    NormalRadiusCandidate, ProductSpec, ProductsError,
};
pub use profile::{
    chain_bound, solve_profile, theta_upper_bound, NoVanishing, Outcome, ProfileError,
    SolverSettings, Strategy, ThetaBound, ThetaBoundError, VanishingAngleResult,
};
pub use qmodel::{equality_spectrum, QModel, QModelError, Spectrum, SpectrumError};
pub use table::{generate_angle_table, AngleTable, TableError};
