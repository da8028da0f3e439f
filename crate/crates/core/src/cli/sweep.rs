use std::collections::BTreeMap;

use rayon::prelude::*;

use super::SweepSpec;
use crate::dispersion::{mode_dispersion, SourceGeometry};
use crate::field::{evaluate, FieldError, FieldRequest, Method, CRITICAL_MACH_TOLERANCE};

/// One method's result at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Value(f64),
    /// `M = 1`: the mode field is singular there.
    Gap,
    /// Method not defined in this regime (Airy for `M ≤ 1`).
    NotApplicable,
    Failed(String),
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub y_over_h: f64,
    pub mach: f64,
    pub cells: BTreeMap<Method, Cell>,
    /// Quadrature error of the exact cell, when it has a value.
    pub exact_err: Option<f64>,
}

/// Evaluates every requested method on the `(y/H, M)` grid.
///
/// Cells are computed in parallel and never abort the sweep; rows come back
/// ordered by `(y/H, M)`.
pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    let machs = spec.mach.values();
    let grid: Vec<(f64, f64)> = spec
        .y_over_h
        .iter()
        .flat_map(|&r| machs.iter().map(move |&m| (r, m)))
        .collect();
    let mut rows: Vec<SweepRow> = grid.par_iter().map(|&(r, m)| row(spec, r, m)).collect();
    rows.sort_by(|a, b| {
        a.y_over_h
            .total_cmp(&b.y_over_h)
            .then(a.mach.total_cmp(&b.mach))
    });
    rows
}

fn row(spec: &SweepSpec, y_over_h: f64, mach: f64) -> SweepRow {
    let c = mode_dispersion(&spec.strat, spec.mode).c;
    let geometry = SourceGeometry::new(
        &spec.strat,
        mach * c,
        spec.z0,
        spec.z,
        y_over_h * spec.strat.depth(),
    );
    let mut cells = BTreeMap::new();
    let mut exact_err = None;
    for &method in &spec.methods {
        let cell = match geometry {
            Err(ref e) => Cell::Failed(e.to_string()),
            Ok(_) if (mach - 1.0).abs() <= CRITICAL_MACH_TOLERANCE => Cell::Gap,
            Ok(_) if method == Method::Airy && mach <= 1.0 => Cell::NotApplicable,
            Ok(g) => {
                let req = FieldRequest {
                    strat: spec.strat,
                    mode: spec.mode,
                    geometry: g,
                    method,
                    quad_cfg: spec.quad_cfg,
                    options: spec.options,
                };
                match evaluate(&req) {
                    Ok(eta) => {
                        if method == Method::Exact {
                            exact_err = Some(eta.error_estimate);
                        }
                        Cell::Value(eta.value)
                    }
                    Err(FieldError::CriticalSpeed { .. }) => Cell::Gap,
                    Err(e) => Cell::Failed(e.to_string()),
                }
            }
        };
        cells.insert(method, cell);
    }
    SweepRow {
        y_over_h,
        mach,
        cells,
        exact_err,
    }
}
