//! Dataset generation: random GBED-I draws and exact structural fixtures.
//!
//! Random sampling uses the exact conditional mixture: given `X = x` with
//! `a = 1 + θx`, the conditional density of `Y` is
//! `e^{−ay}(a−θ) + aθ·y e^{−ay}`, i.e. an `Exp(a)` draw with probability
//! `(a−θ)/a` and a `Gamma(2, rate a)` draw with probability `θ/a`.
//!
//! Fixtures invert `g_i = cθ² + dθ + 1`: prescribed roots `(r₁, r₂)` give
//! `(c, d) = (1/(r₁r₂), −(r₁+r₂)/(r₁r₂))`, and `(x, y)` are the roots of
//! `t² − (d+1)t + c`. Fixtures are held at the coefficient level, so the
//! root structure is exact even when the coordinates are irrational.

use crate::model::{Dataset, ModelError};
use crate::rational::{rational_from_f64, Rational};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use rand::distributions::Distribution;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplerError {
    #[error("θ = {0} is outside [0, 1]")]
    InvalidTheta(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixtureError {
    #[error("unrealizable g-root prescription: {0}")]
    UnrealizableRoots(String),
    #[error("could not avoid sample collisions after repeated retries")]
    ValidationCollision,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Conditional density of `Y` given `X = x` (used by the quadrature
/// oracle that certifies the mixture decomposition).
pub fn conditional_density(y: f64, x: f64, theta: f64) -> f64 {
    let a = 1.0 + theta * x;
    (-a * y).exp() * (a - theta) + a * theta * y * (-a * y).exp()
}

/// Draws `n` raw coordinate pairs from GBED(θ), deterministic under seed.
pub fn draw_gbed(n: usize, theta: f64, seed: u64) -> Result<Vec<(f64, f64)>, SamplerError> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(SamplerError::InvalidTheta(theta));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exp1 = Exp::new(1.0).unwrap();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let x: f64 = exp1.sample(&mut rng);
        let a = 1.0 + theta * x;
        let exp_a = Exp::new(a).unwrap();
        let u: f64 = rng.gen();
        let y = if u < (a - theta) / a {
            exp_a.sample(&mut rng)
        } else {
            // Gamma(shape 2, rate a) as a sum of two exponentials
            exp_a.sample(&mut rng) + exp_a.sample(&mut rng)
        };
        out.push((x, y));
    }
    Ok(out)
}

/// Draws a validated dataset from GBED(θ). Coordinates are carried over
/// exactly (every finite double is rational).
pub fn sample_gbed(n: usize, theta: f64, seed: u64) -> Result<Dataset, SamplerError> {
    let raw = draw_gbed(n, theta, seed)?;
    let pairs: Vec<(Rational, Rational)> = raw
        .into_iter()
        .map(|(x, y)| {
            (
                rational_from_f64(x).expect("finite draw"),
                rational_from_f64(y).expect("finite draw"),
            )
        })
        .collect();
    Ok(Dataset::validate(&pairs)?)
}

/// One fixture group: samples whose `g_i` all vanish at `shared_root`,
/// optionally anchored by a member with a double zero there.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub shared_root: Rational,
    pub member_count: usize,
    pub anchor_double: bool,
}

/// Prescription for a structurally exact dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureSpec {
    pub groups: Vec<GroupSpec>,
    pub singles: usize,
    pub seed: u64,
}

/// `(c, d)` for a sample whose `g_i` has roots `r₁, r₂`; `None` when no
/// positive real `(x, y)` realizes them.
pub fn coeffs_from_g_roots(r1: &Rational, r2: &Rational) -> Option<(Rational, Rational)> {
    if r1.is_zero() || r2.is_zero() {
        return None;
    }
    let prod = r1 * r2;
    if !prod.is_positive() {
        return None;
    }
    let c = prod.recip();
    let d = -(r1 + r2) * &c;
    let s = &d + Rational::one();
    if !s.is_positive() || &s * &s < Rational::from_integer(4.into()) * &c {
        return None;
    }
    Some((c, d))
}

/// Builds a dataset directly from prescribed g-root pairs (the low-level
/// entry used for overlapping structures like the n=3 triangle).
pub fn dataset_from_g_root_pairs(
    pairs: &[(Rational, Rational)],
) -> Result<Dataset, FixtureError> {
    let coeffs: Vec<(Rational, Rational)> = pairs
        .iter()
        .map(|(r1, r2)| {
            coeffs_from_g_roots(r1, r2)
                .ok_or_else(|| FixtureError::UnrealizableRoots(format!("roots ({r1}, {r2})")))
        })
        .collect::<Result<_, _>>()?;
    Dataset::from_coeff_pairs(&coeffs).map_err(FixtureError::from)
}

/// Recovers exact `(x, y)` for a coefficient pair when the discriminant
/// `(d+1)² − 4c` is a rational square; `None` when the coordinates are
/// irrational.
pub fn exact_coordinates(c: &Rational, d: &Rational) -> Option<(Rational, Rational)> {
    let s = d + Rational::one();
    let disc = &s * &s - Rational::from_integer(4.into()) * c;
    if disc.is_negative() {
        return None;
    }
    let sq = rational_sqrt(&disc)?;
    let two = Rational::from_integer(2.into());
    let x = (&s + &sq) / &two;
    let y = (&s - &sq) / &two;
    (x.is_positive() && y.is_positive()).then_some((x, y))
}

/// Approximate `(x, y)` for a coefficient pair, with the square root taken
/// to `digits` decimal digits.
pub fn approx_coordinates(c: &Rational, d: &Rational, digits: u32) -> Option<(Rational, Rational)> {
    let s = d + Rational::one();
    let disc = &s * &s - Rational::from_integer(4.into()) * c;
    if disc.is_negative() {
        return None;
    }
    let sq = rational_sqrt_approx(&disc, digits);
    let two = Rational::from_integer(2.into());
    let x = (&s + &sq) / &two;
    let y = (&s - &sq) / &two;
    (x.is_positive() && y.is_positive()).then_some((x, y))
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let (p, q) = (r.numer(), r.denom());
    if p.is_negative() {
        return None;
    }
    let sp = p.sqrt();
    let sq = q.sqrt();
    (&sp * &sp == *p && &sq * &sq == *q).then(|| Rational::new(sp, sq))
}

/// `sqrt(p/q) = isqrt(p·q·10^{2k}) / (q·10^k)`, exact to ~k digits.
fn rational_sqrt_approx(r: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r.numer() * r.denom() * &scale * &scale;
    Rational::new(scaled.sqrt(), r.denom() * scale)
}

const FIXTURE_RETRIES: usize = 2000;

/// Builds a dataset whose g-root structure realizes `spec` exactly, with
/// disjoint-root singles drawn by rejection.
pub fn build_fixture(spec: &FixtureSpec) -> Result<Dataset, FixtureError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut root_pairs: Vec<(Rational, Rational)> = Vec::new();
    let mut used_roots: Vec<Rational> = Vec::new();
    for g in &spec.groups {
        if g.shared_root.is_zero() {
            return Err(FixtureError::UnrealizableRoots(
                "0 cannot be a g-root: g_i(0) = 1".into(),
            ));
        }
        if g.member_count == 0 {
            return Err(FixtureError::UnrealizableRoots("empty group".into()));
        }
        if used_roots.contains(&g.shared_root) {
            return Err(FixtureError::UnrealizableRoots(format!(
                "group root {} repeated across groups",
                g.shared_root
            )));
        }
        used_roots.push(g.shared_root.clone());
    }
    for g in &spec.groups {
        let rho = &g.shared_root;
        let mut remaining = g.member_count;
        if g.anchor_double {
            if coeffs_from_g_roots(rho, rho).is_none() {
                return Err(FixtureError::UnrealizableRoots(format!(
                    "no positive sample has a double g-zero at {rho} (needs ρ ≥ 4 or ρ < 0)"
                )));
            }
            root_pairs.push((rho.clone(), rho.clone()));
            remaining -= 1;
        }
        for _ in 0..remaining {
            let partner = find_partner(rho, &used_roots, &mut rng).ok_or_else(|| {
                FixtureError::UnrealizableRoots(format!("no feasible partner root for {rho}"))
            })?;
            used_roots.push(partner.clone());
            root_pairs.push((rho.clone(), partner));
        }
    }

    let mut coeff_pairs: Vec<(Rational, Rational)> = root_pairs
        .iter()
        .map(|(r1, r2)| {
            coeffs_from_g_roots(r1, r2)
                .ok_or_else(|| FixtureError::UnrealizableRoots(format!("roots ({r1}, {r2})")))
        })
        .collect::<Result<_, _>>()?;

    // disjoint-root singles: rejection until no unintended coincidence
    for _ in 0..spec.singles {
        let mut placed = false;
        for _ in 0..FIXTURE_RETRIES {
            let x = random_rational(&mut rng);
            let y = random_rational(&mut rng);
            let c = &x * &y;
            let d = &x + &y - Rational::one();
            let candidate = crate::model::SampleCoeffs::from_sample(
                &crate::model::Sample { x, y },
            );
            if candidate.discriminant().is_zero() {
                continue;
            }
            if used_roots.iter().any(|r| candidate.g_i.eval(r).is_zero()) {
                continue;
            }
            let clash = coeff_pairs.iter().any(|(pc, pd)| {
                let other = sample_g(pc, pd);
                candidate.g_i.resultant(&other).map(|r| r.is_zero()).unwrap_or(true)
            });
            if clash || coeff_pairs.contains(&(c.clone(), d.clone())) {
                continue;
            }
            coeff_pairs.push((c, d));
            placed = true;
            break;
        }
        if !placed {
            return Err(FixtureError::ValidationCollision);
        }
    }

    Dataset::from_coeff_pairs(&coeff_pairs).map_err(FixtureError::from)
}

fn sample_g(c: &Rational, d: &Rational) -> crate::poly::Poly {
    crate::poly::Poly::new(vec![Rational::one(), d.clone(), c.clone()])
}

/// Feasible partner root for a shared root ρ: same sign, distinct from all
/// used roots, and `(ρ, s)` realizable by a positive sample.
fn find_partner(
    rho: &Rational,
    used: &[Rational],
    rng: &mut ChaCha8Rng,
) -> Option<Rational> {
    for _ in 0..FIXTURE_RETRIES {
        let num = rng.gen_range(3i64..=60);
        let den = *[1i64, 2, 3].get(rng.gen_range(0usize..3)).unwrap();
        let mut s = Rational::new(num.into(), den.into());
        if rho.is_negative() {
            s = -s;
        }
        if &s == rho || used.contains(&s) {
            continue;
        }
        if coeffs_from_g_roots(rho, &s).is_some() {
            return Some(s);
        }
    }
    None
}

/// Random positive rational in roughly (0, 5] with denominator ≤ 64.
fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(7i64..=64);
    let num = rng.gen_range(1i64..=5 * den);
    Rational::new(num.into(), den.into())
}
