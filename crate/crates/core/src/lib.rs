//! Exact score-equation algebra for Gumbel's Type-I bivariate exponential
//! model (GBED-I): per-sample quadratics, the aggregate score polynomials
//! `f`/`g`, zero-sharing classification, ML-degree computation (direct and
//! structural, cross-checked), MLE search on `[0, 1]`, and dataset
//! generation (random draws and exact structural fixtures).
//!
//! All symbolic work runs over arbitrary-precision rationals; floating
//! point enters only for root refinement and likelihood evaluation.

pub mod mldeg;
pub mod mle;
pub mod model;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod sampler;
pub mod variety;

pub use mldeg::MlDegreeReport;
pub use mle::{CurveSeries, MleResult};
pub use model::{Dataset, Sample, SampleCoeffs, ScorePair};
pub use poly::Poly;
pub use rational::Rational;
pub use roots::ComplexRoot;
pub use sampler::FixtureSpec;
pub use variety::{ConfigCase, ZeroConfiguration};
