//! Vanishing-angle upper-bound tables over a `(dim, alpha^2)` grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::{
    theta_upper_bound_with_policy, SolverSettings, StrategyPolicy, ThetaBoundError,
};

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("dims and alpha_sqs must be nonempty")]
    EmptyAxis,
    #[error("alpha^2 must be finite and >= 0, got {0}")]
    BadAlphaSq(f64),
    #[error("cone dimensions must be >= 2, got {0}")]
    BadDim(u32),
}

/// Upper bounds of vanishing angles in degrees; `None` cells mean no
/// vanishing angle was certified (rendered as `***`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngleTable {
    /// Column labels: cone dimensions.
    pub dims: Vec<u32>,
    /// Row labels: squared curvature norms.
    pub alpha_sqs: Vec<f64>,
    /// `cells[row][col]`, row-major over (alpha_sq, dim).
    pub cells: Vec<Vec<Option<f64>>>,
}

/// Fills the grid with [`theta_upper_bound_with_policy`] output in degrees.
/// The dimension-12 column is restricted to the exponential bound; every
/// other column uses the automatic strategy.
pub fn generate_angle_table(
    dims: &[u32],
    alpha_sqs: &[f64],
    settings: &SolverSettings,
) -> Result<AngleTable, TableError> {
    if dims.is_empty() || alpha_sqs.is_empty() {
        return Err(TableError::EmptyAxis);
    }
    for &a in alpha_sqs {
        if !a.is_finite() || a < 0.0 {
            return Err(TableError::BadAlphaSq(a));
        }
    }
    if let Some(&k) = dims.iter().find(|&&k| k < 2) {
        return Err(TableError::BadDim(k));
    }
    let cells: Vec<Vec<Option<f64>>> = alpha_sqs
        .par_iter()
        .map(|&alpha_sq| {
            dims.iter()
                .map(|&k| {
                    let policy = if k == 12 {
                        StrategyPolicy::ExpOnly
                    } else {
                        StrategyPolicy::Auto
                    };
                    match theta_upper_bound_with_policy(k, alpha_sq, None, policy, settings) {
                        Ok(b) => Some(b.theta.to_degrees()),
                        Err(ThetaBoundError::NoVanishing { .. }) => None,
                        // Grid parameters are validated above; solver errors
                        // here would be a bug, not data.
                        Err(e) => panic!("table solve failed at ({k}, {alpha_sq}): {e}"),
                    }
                })
                .collect()
        })
        .collect();
    Ok(AngleTable {
        dims: dims.to_vec(),
        alpha_sqs: alpha_sqs.to_vec(),
        cells,
    })
}

fn cell_text(cell: &Option<f64>) -> String {
    match cell {
        Some(deg) => format!("{deg:.2}"),
        None => "***".to_string(),
    }
}

impl AngleTable {
    /// CSV export: header `alpha_sq,<dim>,...`, one row per alpha^2, cells in
    /// degrees with two decimals or `***`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha_sq");
        for d in &self.dims {
            out.push_str(&format!(",{d}"));
        }
        out.push('\n');
        for (row, &a) in self.alpha_sqs.iter().enumerate() {
            out.push_str(&format_alpha(a));
            for cell in &self.cells[row] {
                out.push(',');
                out.push_str(&cell_text(cell));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "dims": self.dims,
            "alpha_sqs": self.alpha_sqs,
            "cells_deg": self.cells,
        })
    }

    /// Fixed-width text rendering.
    pub fn render_text(&self) -> String {
        let mut out = format!("{:>10} |", "alpha^2");
        for d in &self.dims {
            out.push_str(&format!(" {d:>7}"));
        }
        out.push('\n');
        out.push_str(&"-".repeat(12 + 8 * self.dims.len()));
        out.push('\n');
        for (row, &a) in self.alpha_sqs.iter().enumerate() {
            out.push_str(&format!("{:>10} |", format_alpha(a)));
            for cell in &self.cells[row] {
                out.push_str(&format!(" {:>7}", cell_text(cell)));
            }
            out.push('\n');
        }
        out
    }
}

fn format_alpha(a: f64) -> String {
    if a == a.trunc() && a.abs() < 1e15 {
        format!("{}", a as i64)
    } else {
        format!("{a:.4}")
    }
}
