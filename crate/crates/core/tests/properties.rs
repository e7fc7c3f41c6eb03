//! Randomized invariants for the algebra layer and the model layer,
//! checked against independent oracles (synthetic division, finite
//! differences, direct symbolic expansion).

use gbed_core::model::Dataset;
use gbed_core::poly::Poly;
use gbed_core::rational::{is_canonical, rational_from_f64, Rational};
use gbed_core::roots::{complex_roots, residual_scale};
use num::traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=10).prop_map(|(n, d)| rat(n, d))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 1..=max_deg + 1).prop_map(Poly::new)
}

proptest! {
    #[test]
    fn gcd_of_common_multiples_contains_factor(
        a in small_poly(3),
        b in small_poly(3),
        c in small_poly(2),
    ) {
        prop_assume!(!c.is_zero() && c.degree().unwrap() >= 1);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = (&a * &c).gcd(&(&b * &c)).unwrap();
        // c divides gcd(ac, bc) up to a scalar
        let (_, rem) = g.div_rem(&c).unwrap();
        prop_assert!(rem.is_zero(), "gcd {g} not divisible by {c}");
    }

    #[test]
    fn add_sub_mul_keep_canonical_coefficients(a in small_poly(4), b in small_poly(4)) {
        for p in [&a + &b, &a - &b, &a * &b] {
            prop_assert!(p.coeffs().iter().all(is_canonical));
        }
    }

    #[test]
    fn division_reconstructs(a in small_poly(6), b in small_poly(3)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        if let Some(rd) = r.degree() {
            prop_assert!(rd < b.degree().unwrap());
        }
    }
}

#[test]
fn resultant_vanishes_iff_gcd_nonconstant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut shared_seen = 0usize;
    for trial in 0..1000 {
        let (a, b) = if trial % 4 == 0 {
            // constructed shared linear factor
            let r = rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4));
            let lin = Poly::linear_from_root(&r);
            let a = &lin * &random_linear(&mut rng);
            let b = &lin * &random_linear(&mut rng);
            (a, b)
        } else {
            (random_quadratic(&mut rng), random_quadratic(&mut rng))
        };
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let res = a.resultant(&b).unwrap();
        let g = a.gcd(&b).unwrap();
        let gcd_nonconstant = g.degree().unwrap() >= 1;
        assert_eq!(res.is_zero(), gcd_nonconstant, "a={a} b={b}");
        if gcd_nonconstant {
            shared_seen += 1;
        }
    }
    assert!(shared_seen >= 200, "case mix too thin: {shared_seen}");
}

fn random_linear(rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(vec![
        rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)),
        rat(rng.gen_range(1i64..=5), 1),
    ])
}

fn random_quadratic(rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(vec![
        rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)),
        rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)),
        rat(rng.gen_range(1i64..=5), 1),
    ])
}

#[test]
fn complex_roots_account_for_full_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let mut p = Poly::one();
        let deg_target = rng.gen_range(2usize..=8);
        while p.degree().unwrap() < deg_target {
            p = &p * &random_linear(&mut rng);
        }
        let roots = complex_roots(&p, 1e-10).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, p.degree().unwrap());
        for r in &roots {
            let res = p.eval_complex(r.value).norm();
            assert!(
                res <= 1e-8 * residual_scale(&p, r.value),
                "residual {res} for {p} at {}",
                r.value
            );
        }
    }
}

/// Naive oracle: repeated synthetic division by `θ − r`.
fn naive_multiplicity(p: &Poly, root: &Rational) -> usize {
    let lin = Poly::linear_from_root(root);
    let mut p = p.clone();
    let mut m = 0;
    loop {
        let (q, rem) = p.div_rem(&lin).unwrap();
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        p = q;
    }
}

#[test]
fn multiplicity_in_matches_synthetic_division() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let r1 = rat(rng.gen_range(-6i64..=6), 1);
        let mut r2 = rat(rng.gen_range(-6i64..=6), 1);
        if r2 == r1 {
            r2 = &r1 + Rational::one();
        }
        let m1 = rng.gen_range(1usize..=3);
        let m2 = rng.gen_range(0usize..=3);
        let mut p = Poly::from_ints(&[rng.gen_range(1i64..=5), 0, 1]); // rootless over ℚ
        for _ in 0..m1 {
            p = &p * &Poly::linear_from_root(&r1);
        }
        for _ in 0..m2 {
            p = &p * &Poly::linear_from_root(&r2);
        }
        let w1 = Poly::linear_from_root(&r1);
        assert_eq!(p.multiplicity_in(&w1).unwrap(), naive_multiplicity(&p, &r1));
        let w12 = &w1 * &Poly::linear_from_root(&r2);
        assert_eq!(
            p.multiplicity_in(&w12).unwrap(),
            naive_multiplicity(&p, &r1) + naive_multiplicity(&p, &r2)
        );
    }
}

fn random_dataset(rng: &mut ChaCha8Rng, n: usize) -> Dataset {
    loop {
        let pairs: Vec<(Rational, Rational)> = (0..n)
            .map(|_| {
                (
                    rat(rng.gen_range(1i64..=400), rng.gen_range(37i64..=97)),
                    rat(rng.gen_range(1i64..=400), rng.gen_range(37i64..=97)),
                )
            })
            .collect();
        if let Ok(ds) = Dataset::validate(&pairs) {
            return ds;
        }
    }
}

#[test]
fn eq7_identity_holds_for_random_samples() {
    // f_i − c·g_i + 2cθ + d is the zero polynomial, exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let ds = random_dataset(&mut rng, 1);
        let s = &ds.coeffs()[0];
        let correction =
            Poly::new(vec![s.d.clone(), Rational::from_integer(2.into()) * &s.c]);
        let diff = &(&s.f_i - &s.g_i.scale(&s.c)) + &correction;
        assert!(diff.is_zero(), "identity failed for c={}, d={}", s.c, s.d);
    }
}

#[test]
fn score_pair_shape_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let n = rng.gen_range(1usize..=5);
        let ds = random_dataset(&mut rng, n);
        let pair = ds.score_pair();
        assert_eq!(pair.f.degree(), Some(2 * n));
        assert_eq!(pair.g.degree(), Some(2 * n));
        assert!(pair.g.coeff(0).is_one());
        // f(0) = Σ(c_i − d_i)
        let expected = ds
            .coeffs()
            .iter()
            .fold(Rational::zero(), |acc, s| acc + &s.c - &s.d);
        assert_eq!(pair.f.coeff(0), expected);
    }
}

#[test]
fn density_bracket_equals_g_i() {
    // (1+θx)(1+θy) − θ = xy·θ² + (x+y−1)·θ + 1 = g_i(θ), expanded symbolically
    // over random rational (x, y), then positivity spot-checked on [0, 1].
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let ds = random_dataset(&mut rng, 1);
        let s = &ds.coeffs()[0];
        let (x, y) = s.coords.clone().unwrap();
        let lin_x = Poly::new(vec![Rational::one(), x.clone()]);
        let lin_y = Poly::new(vec![Rational::one(), y.clone()]);
        let bracket = &(&lin_x * &lin_y) - &Poly::new(vec![Rational::zero(), Rational::one()]);
        assert_eq!(bracket, s.g_i);
        for k in 0..=10 {
            let theta = rat(k, 10);
            assert!(s.g_i.eval(&theta).is_positive());
        }
    }
}

#[test]
fn score_matches_negative_loglik_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let n = rng.gen_range(1usize..=4);
        let ds = random_dataset(&mut rng, n);
        for _ in 0..20 {
            let theta: f64 = rng.gen_range(0.05..0.95);
            let h = 1e-6;
            let fd = (ds.log_likelihood(theta + h).unwrap()
                - ds.log_likelihood(theta - h).unwrap())
                / (2.0 * h);
            let score = ds.score(theta).unwrap();
            let denom = score.abs().max(fd.abs()).max(1e-8);
            assert!(
                (score + fd).abs() / denom < 1e-4,
                "score {score} vs -ℓ′ {}",
                -fd
            );
        }
    }
}

#[test]
fn loglik_rejects_nonpositive_bracket() {
    // g_1 for (4, 1) vanishes at θ = −1/2; just outside the support of the
    // parameter the bracket goes nonpositive.
    let ds = Dataset::validate(&[(rat(4, 1), rat(1, 1))]).unwrap();
    assert!(ds.log_likelihood(-0.5).is_err());
    assert!(ds.log_likelihood(0.5).is_ok());
}

#[test]
fn f64_ingestion_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(0.001..50.0);
        let r = rational_from_f64(x).unwrap();
        assert!(is_canonical(&r));
        assert_eq!(gbed_core::rational::to_f64(&r), x);
    }
}
