//! MLE of θ on `[0, 1]` and likelihood-curve export.
//!
//! Interior candidates are the real roots of `f` inside `(0, 1)` that are
//! not common zeros with `g`; the MLE is whichever of `{0, 1}` and the
//! candidates maximizes the log-likelihood, ties broken toward smaller θ.

use crate::mldeg::MlDegreeReport;
use crate::model::{Dataset, ModelError};
use crate::rational::{rational_from_f64, to_f64};
use crate::roots::{complex_roots, residual_scale};
use num::traits::Signed;
use serde::Serialize;

/// `|Im| ≤ REAL_FILTER · (1 + |Re|)` qualifies a root as real.
const REAL_FILTER: f64 = 1e-8;
/// Log-likelihood ties closer than this resolve toward the smaller θ.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MleResult {
    pub theta_hat: f64,
    pub at_boundary: bool,
    pub interior_candidates: Vec<f64>,
    pub loglik_at_hat: f64,
    pub real_root_count_in_unit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveShape {
    Increasing,
    Decreasing,
    Unimodal,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub theta: f64,
    pub loglik: f64,
    pub likelihood_shape: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSeries {
    pub grid: Vec<CurvePoint>,
    pub shape_flag: CurveShape,
}

/// Finds the MLE from the score-equation roots plus boundary comparison.
pub fn solve_mle(
    ds: &Dataset,
    report: &MlDegreeReport,
    tol: f64,
) -> Result<MleResult, ModelError> {
    let pair = ds.score_pair();
    let roots = complex_roots(&pair.f, tol).expect("f has degree 2n ≥ 2");

    let mut candidates = Vec::new();
    for root in &roots {
        let v = root.value;
        if v.im.abs() > REAL_FILTER * (1.0 + v.re.abs()) {
            continue;
        }
        let theta = v.re;
        if !(0.0 < theta && theta < 1.0) {
            continue;
        }
        // skip points where the score equation is undefined
        if report
            .common_zeros
            .iter()
            .any(|cz| (to_f64(&cz.root_exact) - theta).abs() <= 1e-8 * (1.0 + theta.abs()))
        {
            continue;
        }
        let theta_r = rational_from_f64(theta).expect("finite θ");
        let g_val = to_f64(&pair.g.eval(&theta_r));
        let f_val = to_f64(&pair.f.eval(&theta_r));
        if g_val == 0.0 {
            continue;
        }
        let scale = residual_scale(&pair.f, v);
        if (f_val / g_val).abs() > tol.max(1e-12) * scale / g_val.abs() {
            continue;
        }
        candidates.push(theta);
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup_by(|a, b| (*a - *b).abs() <= 1e-10);

    let mut best_theta = 0.0;
    let mut best_ll = ds.log_likelihood(0.0)?;
    let mut grid: Vec<f64> = candidates.clone();
    grid.push(1.0);
    for theta in grid {
        let ll = ds.log_likelihood(theta)?;
        if ll > best_ll + TIE_TOL {
            best_ll = ll;
            best_theta = theta;
        }
    }
    let at_boundary = best_theta == 0.0 || best_theta == 1.0;
    Ok(MleResult {
        theta_hat: best_theta,
        at_boundary,
        real_root_count_in_unit: candidates.len(),
        interior_candidates: candidates,
        loglik_at_hat: best_ll,
    })
}

/// Uniform likelihood grid on `[0, 1]` with a shape column proportional to
/// `L(θ)`: `exp(−θ Σc_i) · g(θ)`.
pub fn likelihood_curve(ds: &Dataset, points: usize) -> Result<CurveSeries, ModelError> {
    assert!(points >= 2, "need at least the two endpoints");
    let pair = ds.score_pair();
    let sum_c = to_f64(&pair.sum_c);
    let mut grid = Vec::with_capacity(points);
    for k in 0..points {
        let theta = k as f64 / (points - 1) as f64;
        let loglik = ds.log_likelihood(theta)?;
        let theta_r = rational_from_f64(theta).expect("finite θ");
        let g_val = pair.g.eval(&theta_r);
        debug_assert!(g_val.is_positive());
        let likelihood_shape = (-theta * sum_c).exp() * to_f64(&g_val);
        grid.push(CurvePoint { theta, loglik, likelihood_shape });
    }
    let shape_flag = diagnose_shape(&grid);
    Ok(CurveSeries { grid, shape_flag })
}

fn diagnose_shape(grid: &[CurvePoint]) -> CurveShape {
    let diffs: Vec<f64> = grid
        .windows(2)
        .map(|w| w[1].likelihood_shape - w[0].likelihood_shape)
        .collect();
    let increasing = diffs.iter().all(|&d| d >= 0.0);
    let decreasing = diffs.iter().all(|&d| d <= 0.0);
    if increasing {
        return CurveShape::Increasing;
    }
    if decreasing {
        return CurveShape::Decreasing;
    }
    // unimodal: one sign change, + then −
    let first_neg = diffs.iter().position(|&d| d < 0.0);
    if let Some(k) = first_neg {
        if diffs[..k].iter().all(|&d| d >= 0.0) && diffs[k..].iter().all(|&d| d <= 0.0) {
            return CurveShape::Unimodal;
        }
    }
    CurveShape::Other
}
