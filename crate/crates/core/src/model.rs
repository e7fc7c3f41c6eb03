//! The GBED-I statistical model: data validation, per-sample coefficient
//! pairs `(c, d) = (xy, x+y−1)`, the score quadratics, the aggregate score
//! polynomials `f`/`g`, and likelihood/score evaluation.
//!
//! The analysis pipeline never needs the coordinates themselves, only the
//! exact `(c, d)` pairs, so datasets may also be constructed directly at
//! the coefficient level (used by fixtures whose coordinates are
//! irrational while their coefficients are rational).

use crate::poly::Poly;
use crate::rational::{rational_from_f64, to_f64, Rational};
use num::traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("empty input: at least one sample is required")]
    EmptyInput,
    #[error("non-positive coordinate in sample {index}")]
    NonPositiveCoordinate { index: usize },
    #[error("samples {first} and {second} are identical")]
    DuplicateSample { first: usize, second: usize },
    #[error("sample {second} is the coordinate swap of sample {first}")]
    SwappedDuplicate { first: usize, second: usize },
    #[error("coefficient pair {index} does not correspond to positive real data")]
    UnrealizableCoeffs { index: usize },
    #[error("g_{index}(θ) ≤ 0 at θ = {theta}: invalid density bracket")]
    NonPositiveBracket { index: usize, theta: f64 },
    #[error("score denominator g(θ) vanishes at θ = {theta}")]
    DenominatorZero { theta: f64 },
}

/// A positive bivariate observation with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub x: Rational,
    pub y: Rational,
}

impl Sample {
    pub fn new(x: Rational, y: Rational) -> Option<Self> {
        (x.is_positive() && y.is_positive()).then_some(Sample { x, y })
    }
}

/// Per-sample coefficients and score quadratics:
/// `f_i = c²θ² + c(d−2)θ + (c−d)`, `g_i = cθ² + dθ + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCoeffs {
    pub c: Rational,
    pub d: Rational,
    pub f_i: Poly,
    pub g_i: Poly,
    /// Original coordinates when the sample was built from them.
    pub coords: Option<(Rational, Rational)>,
}

impl SampleCoeffs {
    pub fn from_sample(s: &Sample) -> Self {
        let c = &s.x * &s.y;
        let d = &s.x + &s.y - Rational::one();
        let mut sc = Self::from_cd(c, d);
        sc.coords = Some((s.x.clone(), s.y.clone()));
        sc
    }

    fn from_cd(c: Rational, d: Rational) -> Self {
        let two = Rational::from_integer(2.into());
        let f_i = Poly::new(vec![&c - &d, &c * (&d - &two), &c * &c]);
        let g_i = Poly::new(vec![Rational::one(), d.clone(), c.clone()]);
        SampleCoeffs { c, d, f_i, g_i, coords: None }
    }

    /// Exact discriminant of `g_i`: zero iff `g_i` has a double zero.
    pub fn discriminant(&self) -> Rational {
        &self.d * &self.d - Rational::from_integer(4.into()) * &self.c
    }
}

/// A validated dataset, held at the coefficient level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    coeffs: Vec<SampleCoeffs>,
}

impl Dataset {
    /// Validates raw samples: positivity, non-emptiness, and the excluded
    /// duplicate/swapped-duplicate forms.
    pub fn validate(samples: &[(Rational, Rational)]) -> Result<Self, ModelError> {
        if samples.is_empty() {
            return Err(ModelError::EmptyInput);
        }
        for (i, (x, y)) in samples.iter().enumerate() {
            if !x.is_positive() || !y.is_positive() {
                return Err(ModelError::NonPositiveCoordinate { index: i });
            }
        }
        for j in 1..samples.len() {
            for i in 0..j {
                let (xi, yi) = &samples[i];
                let (xj, yj) = &samples[j];
                if xi == xj && yi == yj {
                    return Err(ModelError::DuplicateSample { first: i, second: j });
                }
                if xi == yj && yi == xj {
                    return Err(ModelError::SwappedDuplicate { first: i, second: j });
                }
            }
        }
        let coeffs = samples
            .iter()
            .map(|(x, y)| {
                SampleCoeffs::from_sample(&Sample { x: x.clone(), y: y.clone() })
            })
            .collect();
        Ok(Dataset { coeffs })
    }

    /// Builds a dataset directly from exact `(c, d)` pairs. Each pair must
    /// correspond to some positive real `(x, y)`: `c > 0`, `d + 1 > 0`,
    /// `(d+1)² ≥ 4c`. Equality of `(c, d)` pairs means equal-or-swapped
    /// coordinates, which the model excludes.
    pub fn from_coeff_pairs(pairs: &[(Rational, Rational)]) -> Result<Self, ModelError> {
        if pairs.is_empty() {
            return Err(ModelError::EmptyInput);
        }
        for (i, (c, d)) in pairs.iter().enumerate() {
            let s = d + Rational::one();
            if !c.is_positive()
                || !s.is_positive()
                || &s * &s < Rational::from_integer(4.into()) * c
            {
                return Err(ModelError::UnrealizableCoeffs { index: i });
            }
        }
        for j in 1..pairs.len() {
            for i in 0..j {
                if pairs[i] == pairs[j] {
                    return Err(ModelError::DuplicateSample { first: i, second: j });
                }
            }
        }
        let coeffs = pairs
            .iter()
            .map(|(c, d)| SampleCoeffs::from_cd(c.clone(), d.clone()))
            .collect();
        Ok(Dataset { coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[SampleCoeffs] {
        &self.coeffs
    }

    pub fn sum_c(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, s| acc + &s.c)
    }

    /// `Σ (x_i + y_i) = Σ d_i + n`.
    pub fn sum_xy(&self) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::from_integer((self.n() as i64).into()), |acc, s| acc + &s.d)
    }

    /// The aggregate score polynomials of Eqs. 5–6:
    /// `f = Σ_i f_i Π_{j≠i} g_j` and `g = Π_i g_i`.
    pub fn score_pair(&self) -> ScorePair {
        let n = self.n();
        let mut g = Poly::one();
        for s in &self.coeffs {
            g = &g * &s.g_i;
        }
        let mut f = Poly::zero();
        for i in 0..n {
            let mut term = self.coeffs[i].f_i.clone();
            for (j, s) in self.coeffs.iter().enumerate() {
                if j != i {
                    term = &term * &s.g_i;
                }
            }
            f = &f + &term;
        }
        debug_assert_eq!(f.degree(), Some(2 * n));
        debug_assert_eq!(g.degree(), Some(2 * n));
        debug_assert!(g.coeff(0).is_one());
        ScorePair { f, g, sum_c: self.sum_c(), sum_xy: self.sum_xy() }
    }

    /// Log-likelihood `ℓ(θ) = −θ Σc_i + Σ log g_i(θ)` (up to the model's
    /// additive constant). Each `g_i` is evaluated exactly at the dyadic
    /// rational value of `θ` before the float log.
    pub fn log_likelihood(&self, theta: f64) -> Result<f64, ModelError> {
        let theta_r = rational_from_f64(theta)
            .ok_or(ModelError::DenominatorZero { theta })?;
        let mut acc = -theta * to_f64(&self.sum_c());
        for (i, s) in self.coeffs.iter().enumerate() {
            let gi = s.g_i.eval(&theta_r);
            if !gi.is_positive() {
                return Err(ModelError::NonPositiveBracket { index: i, theta });
            }
            acc += to_f64(&gi).ln();
        }
        Ok(acc)
    }

    /// The score value `f(θ)/g(θ) = −ℓ′(θ)`.
    pub fn score(&self, theta: f64) -> Result<f64, ModelError> {
        let theta_r = rational_from_f64(theta)
            .ok_or(ModelError::DenominatorZero { theta })?;
        let pair = self.score_pair();
        let g = pair.g.eval(&theta_r);
        if g.is_zero() {
            return Err(ModelError::DenominatorZero { theta });
        }
        Ok(to_f64(&(pair.f.eval(&theta_r) / g)))
    }
}

/// The numerator/denominator of the score equation plus cached sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScorePair {
    pub f: Poly,
    pub g: Poly,
    pub sum_c: Rational,
    pub sum_xy: Rational,
}
