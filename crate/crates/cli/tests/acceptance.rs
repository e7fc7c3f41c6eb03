//! Acceptance gate: one test per criterion, each printing a pass/fail
//! line (run with `--nocapture` to see them on success).

use gbed_core::mle::{likelihood_curve, solve_mle, CurveShape};
use gbed_core::model::Dataset;
use gbed_core::poly::Poly;
use gbed_core::rational::{parse_rational, Rational};
use gbed_core::roots::complex_roots;
use gbed_core::sampler::{
    build_fixture, conditional_density, dataset_from_g_root_pairs, draw_gbed, sample_gbed,
    FixtureSpec, GroupSpec,
};
use gbed_core::variety::ConfigCase;
use gbed_core::MlDegreeReport;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn criterion(number: usize, title: &str, body: impl FnOnce()) {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    match &outcome {
        Ok(()) => println!("criterion {number} ({title}): PASS"),
        Err(_) => println!("criterion {number} ({title}): FAIL"),
    }
    if let Err(e) = outcome {
        resume_unwind(e);
    }
}

fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn gbed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbed"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn workspace_file(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
        .display()
        .to_string()
}

fn example2_exact() -> Dataset {
    Dataset::from_coeff_pairs(&[
        (r("1/21"), r("-10/21")),
        (r("1/18"), r("-1/2")),
        (r("2"), r("2")),
    ])
    .unwrap()
}

fn example3_exact() -> Dataset {
    Dataset::from_coeff_pairs(&[
        (r("1/16"), r("-1/2")),
        (r("1/20"), r("-9/20")),
        (r("0.35"), r("0.2")),
    ])
    .unwrap()
}

#[test]
fn criterion_1_example1_end_to_end() {
    criterion(1, "worked dataset 1 end-to-end from CSV", || {
        let start = Instant::now();
        let out = gbed(&["analyze", &workspace_file("data/example1.csv")]);
        let elapsed = start.elapsed();
        assert!(out.status.success());
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();

        // exact (c, d)
        for (k, (c, d)) in [("9/16", "3/2"), ("3/100", "-3/5"), ("7/20", "1/5")]
            .iter()
            .enumerate()
        {
            assert_eq!(doc["coefficients"][k]["c"], *c);
            assert_eq!(doc["coefficients"][k]["d"], *d);
        }

        // published 4-decimal coefficient renderings, ascending powers
        let f_printed = [-0.1575, 0.5917, 0.3267, 0.5602, 0.3543, -0.1287, 0.0056];
        let g_printed = [1.0, 1.1, 0.2225, -0.039, -0.1492, -0.099, 0.0059];
        for (k, want) in f_printed.iter().enumerate() {
            let got = doc["f"]["coeffs_float"][k].as_f64().unwrap();
            assert!((got - want).abs() < 5e-4, "f[{k}]: {got} vs {want}");
        }
        for (k, want) in g_printed.iter().enumerate() {
            let got = doc["g"]["coeffs_float"][k].as_f64().unwrap();
            assert!((got - want).abs() < 5e-4, "g[{k}]: {got} vs {want}");
        }

        assert_eq!(doc["common_zeros"].as_array().unwrap().len(), 1);
        assert_eq!(doc["common_zeros"][0]["root_exact"], "-4/3");
        let root = doc["common_zeros"][0]["root_float"].as_f64().unwrap();
        assert!((root - (-1.3333)).abs() < 1e-4);
        assert_eq!(doc["common_zeros"][0]["mult_in_f"], 1);
        assert_eq!(doc["common_zeros"][0]["mult_in_g"], 2);
        assert_eq!(doc["ml_degree"]["direct"], 5);
        assert_eq!(doc["ml_degree"]["structural"], 5);
        let theta_hat = doc["mle"]["theta_hat"].as_f64().unwrap();
        assert!((theta_hat - 0.2257).abs() < 1e-3, "θ̂ = {theta_hat}");
        assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    });
}

#[test]
fn criterion_2_example2_variety_and_boundary_mle() {
    criterion(2, "worked dataset 2: V(g), ML-degree, boundary MLE", || {
        let start = Instant::now();
        let ds = example2_exact();
        let pair = ds.score_pair();
        let v_g = complex_roots(&pair.g, 1e-10).unwrap();
        // sorted by (re, im): −0.5 ± 0.5i, 3 (mult 2), 6, 7
        let expected = [
            (-0.5, -0.5, 1usize),
            (-0.5, 0.5, 1),
            (3.0, 0.0, 2),
            (6.0, 0.0, 1),
            (7.0, 0.0, 1),
        ];
        assert_eq!(v_g.len(), expected.len());
        for (root, (re, im, mult)) in v_g.iter().zip(expected) {
            assert!(
                (root.value.re - re).abs() < 1e-6 && (root.value.im - im).abs() < 1e-6,
                "root {} vs ({re}, {im})",
                root.value
            );
            assert_eq!(root.multiplicity, mult);
        }

        let report = MlDegreeReport::compute(&ds).unwrap();
        assert_eq!(
            report.config.case,
            ConfigCase::RepeatedGroupsNoDouble { l: 1, m: 2 }
        );
        assert_eq!(report.ml_degree_structural, 2 * 3 + 1 - 2);
        assert_eq!(report.ml_degree_direct, 5);

        let mle = solve_mle(&ds, &report, 1e-10).unwrap();
        assert_eq!(mle.theta_hat, 0.0);
        assert!(mle.at_boundary);
        let curve = likelihood_curve(&ds, 101).unwrap();
        assert_eq!(curve.shape_flag, CurveShape::Decreasing);
        assert!(start.elapsed() < Duration::from_secs(1));
    });
}

#[test]
fn criterion_3_example3_double_anchored() {
    criterion(3, "worked dataset 3: common zero, ML-degree, boundary MLE", || {
        let start = Instant::now();
        let ds = example3_exact();
        let report = MlDegreeReport::compute(&ds).unwrap();
        assert_eq!(report.common_zeros.len(), 1);
        assert_eq!(report.common_zeros[0].root_exact, r("4"));
        assert_eq!(report.common_zeros[0].mult_in_f, 2);
        assert_eq!(report.common_zeros[0].mult_in_g, 3);
        assert_eq!(
            report.config.case,
            ConfigCase::DoubleAnchoredGroups { l: 1, m: 2 }
        );
        assert_eq!(report.ml_degree_structural, 2 * 3 - 2);
        assert_eq!(report.ml_degree_direct, 4);
        let mle = solve_mle(&ds, &report, 1e-10).unwrap();
        assert_eq!(mle.theta_hat, 0.0);
        assert!(start.elapsed() < Duration::from_secs(1));
    });
}

#[test]
fn criterion_4_generic_data_law() {
    criterion(4, "200 random datasets: gcd constant, ML-degree 2n", || {
        let start = Instant::now();
        let thetas = [0.0, 0.5, 1.0];
        for k in 0..200usize {
            let n = k % 6 + 1;
            let theta = thetas[k % 3];
            let ds = sample_gbed(n, theta, 10_000 + k as u64).unwrap();
            let pair = ds.score_pair();
            let gcd = pair.f.gcd(&pair.g).unwrap();
            assert_eq!(gcd.degree(), Some(0), "dataset {k}: gcd {gcd}");
            let report = MlDegreeReport::compute(&ds).unwrap();
            assert_eq!(report.ml_degree_direct, 2 * n, "dataset {k}");
        }
        assert!(start.elapsed() < Duration::from_secs(30), "took {:?}", start.elapsed());
    });
}

#[test]
fn criterion_5_theorem_equivalence_suite() {
    criterion(5, "fixture matrix: structural = direct everywhere", || {
        let start = Instant::now();
        let mut fixtures: Vec<(Dataset, usize, String)> = Vec::new();

        // Theorem 13: n₁ isolated double zeros, n = 1..5
        let double_roots = ["-1/2", "-2", "-3", "4", "-5"];
        for n in 1..=5usize {
            for n1 in 1..=n {
                let spec = FixtureSpec {
                    groups: double_roots[..n1]
                        .iter()
                        .map(|root| GroupSpec {
                            shared_root: r(root),
                            member_count: 1,
                            anchor_double: true,
                        })
                        .collect(),
                    singles: n - n1,
                    seed: 100 + (n * 10 + n1) as u64,
                };
                fixtures.push((
                    build_fixture(&spec).unwrap(),
                    2 * n - n1,
                    format!("thm13 n={n} n1={n1}"),
                ));
            }
        }

        // Theorem 14: l groups of n_k ≥ 2 members, no doubles
        for l in 1..=2usize {
            for nk in 2..=4usize {
                let m = l * nk;
                if m > 6 {
                    continue;
                }
                let singles = (6 - m).min(1);
                let n = m + singles;
                let spec = FixtureSpec {
                    groups: ["3", "-7"][..l]
                        .iter()
                        .map(|root| GroupSpec {
                            shared_root: r(root),
                            member_count: nk,
                            anchor_double: false,
                        })
                        .collect(),
                    singles,
                    seed: 300 + (l * 10 + nk) as u64,
                };
                fixtures.push((
                    build_fixture(&spec).unwrap(),
                    2 * n + l - m,
                    format!("thm14 l={l} nk={nk}"),
                ));
            }
        }

        // Theorem 15: l double-anchored groups
        for l in 1..=2usize {
            for nk in 2..=3usize {
                let m = l * nk;
                if m > 6 {
                    continue;
                }
                let singles = (6 - m).min(1);
                let n = m + singles;
                let spec = FixtureSpec {
                    groups: ["4", "-2"][..l]
                        .iter()
                        .map(|root| GroupSpec {
                            shared_root: r(root),
                            member_count: nk,
                            anchor_double: true,
                        })
                        .collect(),
                    singles,
                    seed: 500 + (l * 10 + nk) as u64,
                };
                fixtures.push((
                    build_fixture(&spec).unwrap(),
                    2 * n - m,
                    format!("thm15 l={l} nk={nk}"),
                ));
            }
        }

        // Theorems 11 and 12: all pairs share, n = 4, 5
        for n in [4usize, 5] {
            let spec = FixtureSpec {
                groups: vec![GroupSpec {
                    shared_root: r("3"),
                    member_count: n,
                    anchor_double: false,
                }],
                singles: 0,
                seed: 700 + n as u64,
            };
            fixtures.push((build_fixture(&spec).unwrap(), n + 1, format!("thm11 n={n}")));
            let spec = FixtureSpec {
                groups: vec![GroupSpec {
                    shared_root: r("4"),
                    member_count: n,
                    anchor_double: true,
                }],
                singles: 0,
                seed: 800 + n as u64,
            };
            fixtures.push((build_fixture(&spec).unwrap(), n, format!("thm12 n={n}")));
        }

        // n = 3 triangle, both sub-cases
        fixtures.push((
            dataset_from_g_root_pairs(&[(r("3"), r("7")), (r("3"), r("6")), (r("7"), r("6"))])
                .unwrap(),
            3,
            "triangle empty triple intersection".into(),
        ));
        fixtures.push((
            dataset_from_g_root_pairs(&[(r("3"), r("6")), (r("3"), r("7")), (r("3"), r("8"))])
                .unwrap(),
            4,
            "triangle nonempty triple intersection".into(),
        ));

        for (ds, expected, context) in &fixtures {
            let report = MlDegreeReport::compute(ds)
                .unwrap_or_else(|e| panic!("{context}: {e}"));
            assert_eq!(report.ml_degree_direct, *expected, "{context}");
            assert_eq!(report.ml_degree_structural, *expected, "{context}");
            assert!(report.agreement, "{context}");
        }
        assert!(fixtures.len() >= 25);
        assert!(start.elapsed() < Duration::from_secs(60), "took {:?}", start.elapsed());
    });
}

#[test]
fn criterion_6_score_identities() {
    criterion(6, "Eq. 7 identity and score vs −ℓ′", || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(606);

        // coefficientwise identity f_i = c·g_i − 2cθ − d on 1000 samples
        for _ in 0..1000 {
            let pairs = vec![(
                Rational::new(rng.gen_range(1i64..=500).into(), rng.gen_range(41i64..=101).into()),
                Rational::new(rng.gen_range(1i64..=500).into(), rng.gen_range(41i64..=101).into()),
            )];
            let ds = Dataset::validate(&pairs).unwrap();
            let s = &ds.coeffs()[0];
            let rhs = &s.g_i.scale(&s.c)
                - &Poly::new(vec![s.d.clone(), Rational::from_integer(2.into()) * &s.c]);
            assert_eq!(s.f_i, rhs);
        }

        // score(θ) vs central differences on 50 datasets × 20 θ values
        for _ in 0..50 {
            let n = rng.gen_range(1usize..=4);
            let ds = sample_gbed(n, 0.5, rng.gen()).unwrap();
            for _ in 0..20 {
                let theta: f64 = rng.gen_range(0.02..0.98);
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
    });
}

#[test]
fn criterion_7_sampler_correctness() {
    criterion(7, "sampler normalization, marginals, independence", || {
        // quadrature oracle on 5 (x, θ) cases
        for (x, theta) in [(0.1, 0.0), (0.5, 0.3), (1.0, 1.0), (3.0, 0.5), (10.0, 0.9)] {
            let intervals = 20_000usize;
            let upper = 60.0;
            let h = upper / intervals as f64;
            let mut acc = conditional_density(0.0, x, theta)
                + conditional_density(upper, x, theta);
            for k in 1..intervals {
                let w = if k % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * conditional_density(k as f64 * h, x, theta);
            }
            let mass = acc * h / 3.0;
            assert!((mass - 1.0).abs() < 1e-6, "x={x} θ={theta}: {mass}");
        }

        // KS vs Exp(1) at the 1% level for both marginals
        let n = 10_000usize;
        let critical = 1.628 / (n as f64).sqrt();
        let ks = |mut sample: Vec<f64>| -> f64 {
            sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let n = sample.len() as f64;
            sample
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let cdf = 1.0 - (-v).exp();
                    (cdf - k as f64 / n).abs().max(((k + 1) as f64 / n - cdf).abs())
                })
                .fold(0.0, f64::max)
        };
        for (theta, seed) in [(0.0, 71u64), (0.5, 72), (1.0, 73)] {
            let draws = draw_gbed(n, theta, seed).unwrap();
            let dx = ks(draws.iter().map(|p| p.0).collect());
            let dy = ks(draws.iter().map(|p| p.1).collect());
            assert!(dx < critical && dy < critical, "θ={theta}: KS ({dx}, {dy})");
        }

        // θ = 0 independence: sample correlation near zero
        let draws = draw_gbed(n, 0.0, 74).unwrap();
        let nf = draws.len() as f64;
        let mx = draws.iter().map(|p| p.0).sum::<f64>() / nf;
        let my = draws.iter().map(|p| p.1).sum::<f64>() / nf;
        let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
        for (x, y) in &draws {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
            syy += (y - my) * (y - my);
        }
        let corr = sxy / (sxx * syy).sqrt();
        assert!(corr.abs() < 0.03, "correlation {corr}");
    });
}

#[test]
fn criterion_8_determinism() {
    criterion(8, "byte-identical outputs under identical seeds and flags", || {
        let analyze_args = ["analyze", &workspace_file("data/example1.csv")];
        let a1 = gbed(&analyze_args);
        let a2 = gbed(&analyze_args);
        assert!(a1.status.success());
        assert_eq!(a1.stdout, a2.stdout);

        let sim_args =
            ["simulate", "--n", "4", "--theta", "0.5", "--reps", "10", "--seed", "77"];
        let s1 = gbed(&sim_args);
        let s2 = gbed(&sim_args);
        assert!(s1.status.success(), "stderr: {}", String::from_utf8_lossy(&s1.stderr));
        assert_eq!(s1.stdout, s2.stdout);
    });
}
