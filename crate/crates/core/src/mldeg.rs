//! ML-degree of the association parameter, computed two independent ways.
//!
//! The direct route counts, with multiplicity, the roots of `f` that are
//! also roots of `g` via exact gcd chains and subtracts from `2n`. The
//! structural route applies the per-case formulas to the classified
//! zero-sharing configuration. The two must agree; disagreement is a hard
//! internal error, not a data error.

use crate::model::Dataset;
use crate::poly::{Poly, PolyError};
use crate::variety::{
    classify, common_zeros_with_multiplicity, CommonZeroRecord, ConfigCase, VarietyError,
    ZeroConfiguration,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MlDegreeError {
    #[error("direct ML-degree {direct} disagrees with structural {structural} ({case})")]
    Disagreement { direct: usize, structural: usize, case: String },
    #[error("structural bounds violated for l={l}, m={m}, n={n}: {detail}")]
    BoundViolation { l: usize, m: usize, n: usize, detail: String },
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlDegreeReport {
    pub n: usize,
    pub degree_f: usize,
    pub common_zeros: Vec<CommonZeroRecord>,
    pub ml_degree_direct: usize,
    pub ml_degree_structural: usize,
    pub config: ZeroConfiguration,
    pub agreement: bool,
}

/// Direct ML-degree: `2n` minus the total multiplicity in `f` of the
/// distinct common roots of `f` and `g`.
pub fn ml_degree_direct(f: &Poly, g: &Poly) -> Result<usize, PolyError> {
    let deg_f = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    let h = f.gcd(g)?;
    if h.degree() == Some(0) {
        return Ok(deg_f);
    }
    let w = h.squarefree_part()?;
    Ok(deg_f - f.multiplicity_in(&w)?)
}

/// Structural ML-degree from the classified configuration.
pub fn ml_degree_structural(config: &ZeroConfiguration) -> usize {
    let n = config.n;
    match config.case {
        ConfigCase::GenericDisjoint => 2 * n,
        ConfigCase::SimpleDoublesOnly { n1 } => 2 * n - n1,
        ConfigCase::AllPairsShareNoDouble => n + 1,
        ConfigCase::AllPairsShareOneDouble => n,
        ConfigCase::RepeatedGroupsNoDouble { l, m } => 2 * n + l - m,
        ConfigCase::DoubleAnchoredGroups { l: _, m } => 2 * n - m,
        // all pairs share, no double, triple intersection empty: three
        // distinct shared roots, each of multiplicity 1 in f
        ConfigCase::N3Triangle => 3,
        // additive per-root rule, which subsumes the named cases
        ConfigCase::Mixed => {
            2 * n - config.groups.iter().map(|g| g.mult_in_f()).sum::<usize>()
        }
    }
}

/// Consistency bounds for the double-anchored configuration:
/// `m ≤ 2n − l` and `3l ≤ 2n`. A violation signals a classification bug.
pub fn ml_degree_bounds_check(config: &ZeroConfiguration) -> Result<(), MlDegreeError> {
    if let ConfigCase::DoubleAnchoredGroups { l, m } = config.case {
        let n = config.n;
        if m > 2 * n - l {
            return Err(MlDegreeError::BoundViolation {
                l,
                m,
                n,
                detail: format!("m > 2n - l = {}", 2 * n - l),
            });
        }
        if 3 * l > 2 * n {
            return Err(MlDegreeError::BoundViolation {
                l,
                m,
                n,
                detail: format!("l > 2n/3 = {:.4}", 2.0 * n as f64 / 3.0),
            });
        }
    }
    Ok(())
}

impl MlDegreeReport {
    /// Runs the full ML-degree pipeline on a dataset and cross-checks the
    /// two routes.
    pub fn compute(ds: &Dataset) -> Result<Self, MlDegreeError> {
        let pair = ds.score_pair();
        let config = classify(ds)?;
        ml_degree_bounds_check(&config)?;
        let common_zeros = common_zeros_with_multiplicity(&pair.f, &pair.g, &config)?;
        let direct = ml_degree_direct(&pair.f, &pair.g)?;
        let structural = ml_degree_structural(&config);
        if direct != structural {
            return Err(MlDegreeError::Disagreement {
                direct,
                structural,
                case: config.case.label(),
            });
        }
        Ok(MlDegreeReport {
            n: ds.n(),
            degree_f: 2 * ds.n(),
            common_zeros,
            ml_degree_direct: direct,
            ml_degree_structural: structural,
            config,
            agreement: true,
        })
    }
}
