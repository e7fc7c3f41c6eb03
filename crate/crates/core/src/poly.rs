//! Dense univariate polynomials over exact rationals.
//!
//! This is the algebra workhorse: ring arithmetic, Euclidean division,
//! gcd, squarefree part, resultants, and exact multiplicity counting.
//! The zero polynomial is the empty coefficient vector and has no degree.

use crate::rational::{to_f64, Rational};
use num::bigint::BigInt;
use num::complex::Complex64;
use num::traits::{One, Zero};
use num::Integer;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for a constant polynomial")]
    ConstantPolynomial,
}

/// Univariate polynomial; `coeffs[k]` is the coefficient of `θ^k`.
/// Invariant: the leading coefficient is nonzero (zero polynomial = empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `θ - root`
    pub fn linear_from_root(root: &Rational) -> Self {
        Poly::new(vec![-root.clone(), Rational::one()])
    }

    /// Builds from integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `θ^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Poly, PolyError> {
        let lead = self.leading_coeff().ok_or(PolyError::ZeroPolynomial)?;
        Ok(self.scale(&lead.recip()))
    }

    /// Euclidean division: returns `(q, r)` with `self = q·d + r` and
    /// `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = d.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                let v = &rem[k + i] - dc * &factor;
                rem[k + i] = v;
            }
            // leading term cancels exactly
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            quot[k] = factor;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d).expect("exact_div by zero");
        assert!(r.is_zero(), "exact_div left a remainder");
        q
    }

    /// Monic greatest common divisor via the primitive Euclidean PRS over
    /// the integers: denominators are cleared once, and the content is
    /// stripped after every pseudo-division, which keeps coefficient
    /// growth bounded where a fraction-based Euclidean chain explodes.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = primitive_int_coeffs(self);
        let mut b = primitive_int_coeffs(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        // fast path: a constant gcd modulo a good prime certifies a
        // constant gcd over the rationals
        if modular_gcd_is_constant(&a, &b) {
            return Ok(Poly::one());
        }
        while !b.is_empty() {
            let r = primitive_part(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        Poly::new(a.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Squarefree part `p / gcd(p, p')`, monic: same distinct roots, all
    /// with multiplicity one.
    pub fn squarefree_part(&self) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(Poly::one());
        }
        let g = self.gcd(&self.derivative())?;
        self.exact_div(&g).monic()
    }

    /// Resultant as the Sylvester-matrix determinant, computed by exact
    /// fraction Gaussian elimination. Zero iff the inputs share a complex
    /// root.
    pub fn resultant(&self, other: &Poly) -> Result<Rational, PolyError> {
        let n = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        let m = other.degree().ok_or(PolyError::ZeroPolynomial)?;
        if n == 0 {
            return Ok(pow_rational(self.leading_coeff().unwrap(), m));
        }
        if m == 0 {
            return Ok(pow_rational(other.leading_coeff().unwrap(), n));
        }
        let size = n + m;
        let mut mat = vec![vec![Rational::zero(); size]; size];
        for (row, item) in mat.iter_mut().enumerate().take(m) {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                item[row + k] = c.clone();
            }
        }
        for row in 0..n {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                mat[m + row][row + k] = c.clone();
            }
        }
        let det = determinant(mat);
        // convention: res(a, b) = lc(b)^deg(a) · Π a(β_j) over roots β_j of b
        Ok(if (n * m) % 2 == 1 { -det } else { det })
    }

    /// Total multiplicity in `self` of the roots of a squarefree,
    /// nonconstant `w`: repeatedly strip `gcd(p_k, w)` and sum the degrees
    /// stripped.
    pub fn multiplicity_in(&self, w: &Poly) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        match w.degree() {
            None => return Err(PolyError::ZeroPolynomial),
            Some(0) => return Err(PolyError::ConstantPolynomial),
            Some(_) => {}
        }
        let mut p = self.clone();
        let mut total = 0usize;
        loop {
            let g = p.gcd(w)?;
            let d = g.degree().unwrap();
            if d == 0 {
                return Ok(total);
            }
            total += d;
            p = p.exact_div(&g);
        }
    }
}

/// Clears denominators and strips the content, giving a primitive integer
/// coefficient vector with the same roots.
fn primitive_int_coeffs(p: &Poly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    primitive_part(
        p.coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect(),
    )
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    v
}

/// 2^61 − 1 (prime).
const MODP: u64 = 2_305_843_009_213_693_951;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODP as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

fn reduce_mod(x: &BigInt) -> u64 {
    let r = x % BigInt::from(MODP);
    let r = if r.sign() == num::bigint::Sign::Minus {
        r + BigInt::from(MODP)
    } else {
        r
    };
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Degree of `gcd(a mod p, b mod p)` is an upper bound for the degree of
/// the rational gcd whenever p divides neither leading coefficient, so a
/// constant modular gcd proves coprimality. Returns `false` (no decision)
/// for bad primes.
fn modular_gcd_is_constant(a: &[BigInt], b: &[BigInt]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let mut am: Vec<u64> = a.iter().map(reduce_mod).collect();
    let mut bm: Vec<u64> = b.iter().map(reduce_mod).collect();
    if am.last() == Some(&0) || bm.last() == Some(&0) {
        return false;
    }
    while !bm.is_empty() {
        let db = bm.len() - 1;
        let inv = powmod(bm[db], MODP - 2);
        while am.len() > db {
            let da = am.len() - 1;
            let factor = mulmod(am[da], inv);
            for (i, &bc) in bm.iter().enumerate() {
                let sub = mulmod(factor, bc);
                let idx = da - db + i;
                am[idx] = (am[idx] + MODP - sub) % MODP;
            }
            while am.last() == Some(&0) {
                am.pop();
            }
        }
        std::mem::swap(&mut am, &mut bm);
    }
    am.len() == 1
}

/// Pseudo-remainder of `a` by `b` over the integers: the remainder of
/// `lc(b)^k · a` divided by `b`, computed without fractions.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let v = &r[dr - db + i] - &lr * bc;
            r[dr - db + i] = v;
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn pow_rational(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Exact determinant by fraction Gaussian elimination with partial
/// pivoting on nonzero entries.
fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let v = &m[r][c] - &m[col][c] * &factor;
                m[r][c] = v;
            }
        }
    }
    det
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + a * b;
                out[i + j] = v;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*θ"),
                _ => format!("{c}*θ^{k}"),
            })
            .collect();
        write!(fm, "{}", terms.join(" + "))
    }
}
