//! Numeric root extraction with exact multiplicity bookkeeping.
//!
//! Multiplicities come from a squarefree decomposition over the rationals;
//! only the simple roots of each squarefree factor are found numerically
//! (closed forms for degree ≤ 2, Aberth–Ehrlich simultaneous iteration
//! above, followed by Newton polishing).

use crate::poly::{Poly, PolyError};
use crate::rational::to_f64;
use num::complex::Complex64;
use num::traits::Zero;
use std::cmp::Ordering;

pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Squarefree decomposition (Yun): returns `(w_k, k)` with
/// `p = lc · Π w_k^k` and every `w_k` monic squarefree.
pub fn squarefree_decomposition(p: &Poly) -> Result<Vec<(Poly, usize)>, PolyError> {
    if p.degree().is_none() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = p.monic()?;
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp)?;
    let mut b = exact_quot(&p, &a0);
    let mut d = &exact_quot(&dp, &a0) - &b.derivative();
    let mut out = Vec::new();
    let mut k = 1usize;
    while b.degree() != Some(0) {
        let a = b.gcd(&d)?;
        if a.degree() != Some(0) {
            out.push((a.clone(), k));
        }
        b = exact_quot(&b, &a);
        d = &exact_quot(&d, &a) - &b.derivative();
        k += 1;
    }
    Ok(out)
}

fn exact_quot(a: &Poly, b: &Poly) -> Poly {
    let (q, r) = a.div_rem(b).expect("division by zero in squarefree chain");
    debug_assert!(r.is_zero());
    q
}

/// All complex roots of `p` with multiplicities. Roots are sorted by
/// (real part, imaginary part); conjugate pairs are returned symmetrically.
pub fn complex_roots(p: &Poly, tol: f64) -> Result<Vec<ComplexRoot>, PolyError> {
    match p.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(0) => return Err(PolyError::ConstantPolynomial),
        Some(_) => {}
    }
    let mut roots = Vec::new();
    for (factor, mult) in squarefree_decomposition(p)? {
        for value in simple_roots(&factor, tol) {
            roots.push(ComplexRoot { value, multiplicity: mult });
        }
    }
    symmetrize_conjugates(&mut roots, tol);
    roots.sort_by(|a, b| order_complex(a.value, b.value));
    debug_assert_eq!(
        roots.iter().map(|r| r.multiplicity).sum::<usize>(),
        p.degree().unwrap()
    );
    Ok(roots)
}

fn order_complex(a: Complex64, b: Complex64) -> Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Roots of a monic squarefree polynomial.
fn simple_roots(p: &Poly, tol: f64) -> Vec<Complex64> {
    let deg = p.degree().expect("nonzero factor");
    let coeffs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    match deg {
        0 => Vec::new(),
        1 => vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)],
        2 => quadratic_roots(&coeffs),
        _ => aberth(&coeffs, tol),
    }
}

fn quadratic_roots(c: &[f64]) -> Vec<Complex64> {
    let (c0, c1, c2) = (c[0], c[1], c[2]);
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // form that avoids cancellation on the smaller root
        let q = -0.5 * (c1 + c1.signum() * sq);
        let (r1, r2) = if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / c2, c0 / q)
        };
        vec![Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -c1 / (2.0 * c2);
        let im = (-disc).sqrt() / (2.0 * c2);
        vec![Complex64::new(re, im.abs()), Complex64::new(re, -im.abs())]
    }
}

/// Aberth–Ehrlich simultaneous iteration on a monic squarefree polynomial,
/// followed by Newton polishing of every root.
fn aberth(coeffs: &[f64], tol: f64) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius * (0.5 + 0.5 * (k as f64 + 1.0) / deg as f64), angle)
        })
        .collect();

    let eval = |x: Complex64| horner(coeffs, x);
    let dcoeffs: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();

    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let pv = eval(z[i]);
            let dv = horner(&dcoeffs, z[i]);
            if pv.is_zero() {
                continue;
            }
            let newton = if dv.is_zero() {
                Complex64::new(tol, tol)
            } else {
                pv / dv
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    sum += (z[i] - z[j]).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.is_zero() { newton } else { newton / denom };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < tol * 1e-2 {
            break;
        }
    }
    for zi in z.iter_mut() {
        *zi = newton_polish(coeffs, &dcoeffs, *zi);
    }
    z
}

fn newton_polish(coeffs: &[f64], dcoeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..20 {
        let pv = horner(coeffs, z);
        let dv = horner(dcoeffs, z);
        if dv.is_zero() {
            break;
        }
        let step = pv / dv;
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Snaps near-real roots onto the axis and forces conjugate pairs to be
/// exact mirror images (the inputs have real coefficients).
fn symmetrize_conjugates(roots: &mut [ComplexRoot], tol: f64) {
    let snap = tol.max(1e-12);
    for r in roots.iter_mut() {
        if r.value.im.abs() <= snap * (1.0 + r.value.re.abs()) {
            r.value = Complex64::new(r.value.re, 0.0);
        }
    }
    let n = roots.len();
    let mut paired = vec![false; n];
    for i in 0..n {
        if paired[i] || roots[i].value.im <= 0.0 {
            continue;
        }
        let target = roots[i].value.conj();
        let mut best: Option<(usize, f64)> = None;
        for (j, r) in roots.iter().enumerate() {
            if j == i || paired[j] || r.value.im >= 0.0 {
                continue;
            }
            let d = (r.value - target).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            if d <= 1e-6 * (1.0 + target.norm()) {
                let avg = (roots[i].value + roots[j].value.conj()) * 0.5;
                roots[i].value = avg;
                roots[j].value = avg.conj();
                paired[i] = true;
                paired[j] = true;
            }
        }
    }
}

/// Residual scale for judging `|p(root)|`: `Σ |c_k|·|root|^k`.
pub fn residual_scale(p: &Poly, root: Complex64) -> f64 {
    let r = root.norm();
    let mut pw = 1.0;
    let mut acc = 0.0;
    for c in p.coeffs() {
        acc += to_f64(c).abs() * pw;
        pw *= r;
    }
    acc.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn lin(r: i64) -> Poly {
        Poly::from_ints(&[-r, 1])
    }

    #[test]
    fn unit_circle_pair() {
        let roots = complex_roots(&Poly::from_ints(&[1, 0, 1]), 1e-10).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value - Complex64::new(0.0, -1.0)).norm() < 1e-9);
        assert!((roots[1].value - Complex64::new(0.0, 1.0)).norm() < 1e-9);
        assert!(roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn multiplicities_from_structure() {
        // (θ−2)³(θ−5)(θ²+1)
        let p = &(&(&(&lin(2) * &lin(2)) * &lin(2)) * &lin(5)) * &Poly::from_ints(&[1, 0, 1]);
        let roots = complex_roots(&p, 1e-10).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 6);
        let triple = roots
            .iter()
            .find(|r| (r.value - Complex64::new(2.0, 0.0)).norm() < 1e-8)
            .unwrap();
        assert_eq!(triple.multiplicity, 3);
    }

    #[test]
    fn residuals_are_small() {
        // degree-7 with spread-out roots
        let mut p = Poly::from_ints(&[3, 0, 1]);
        for r in [1, -4, 10, 25, 7] {
            p = &p * &lin(r);
        }
        for root in complex_roots(&p, 1e-10).unwrap() {
            let res = p.eval_complex(root.value).norm();
            assert!(res <= 1e-9 * residual_scale(&p, root.value), "residual {res}");
        }
    }

    #[test]
    fn sorted_and_symmetric() {
        let p = &Poly::from_ints(&[2, 1, 1]) * &Poly::from_ints(&[5, -1, 1]);
        let roots = complex_roots(&p, 1e-10).unwrap();
        for w in roots.windows(2) {
            assert!(
                w[0].value.re < w[1].value.re
                    || (w[0].value.re == w[1].value.re && w[0].value.im <= w[1].value.im)
            );
        }
        for r in &roots {
            assert!(roots
                .iter()
                .any(|s| (s.value - r.value.conj()).norm() == 0.0));
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(complex_roots(&Poly::zero(), 1e-10).is_err());
        assert!(complex_roots(&Poly::constant(Rational::from_integer(3.into())), 1e-10).is_err());
    }
}
