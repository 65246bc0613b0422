//! Exact arithmetic in the cyclotomic field Q(zeta_n).
//!
//! Elements are rational-coefficient polynomials in zeta_n reduced modulo the
//! n-th cyclotomic polynomial Phi_n, so every element has a unique coefficient
//! vector of length phi(n).  This is what makes zero tests and integrality
//! checks trivial, which the character-sum and rank oracles depend on.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::divisors;

pub type Rat = BigRational;

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Dense integer polynomial, coefficients ascending, no trailing zeros.
type IntPoly = Vec<BigInt>;

fn int_poly_trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn int_poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    int_poly_trim(&mut out);
    out
}

/// Exact division of integer polynomials; the divisor must be monic and the
/// division must be remainder-free (guaranteed for cyclotomic factors of x^n - 1).
fn int_poly_div_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, cd) in den.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] = &rem[idx] - &c * cd;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    int_poly_trim(&mut quot);
    quot
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclotomic_arc(n: u64) -> Result<Arc<IntPoly>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return Ok(p.clone());
    }
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut xn_minus_1 = vec![BigInt::zero(); (n + 1) as usize];
    xn_minus_1[0] = BigInt::from(-1);
    xn_minus_1[n as usize] = BigInt::one();
    let mut den: IntPoly = vec![BigInt::one()];
    for &d in &divisors(n)?.divisors {
        if d < n {
            let phi_d = cyclotomic_arc(d)?;
            den = int_poly_mul(&den, &phi_d);
        }
    }
    let phi_n = Arc::new(int_poly_div_exact(&xn_minus_1, &den));
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(n, phi_n.clone());
    Ok(phi_n)
}

/// The n-th cyclotomic polynomial Phi_n as an ascending integer coefficient
/// vector (monic, degree phi(n)).
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    Ok(cyclotomic_arc(n)?.as_ref().clone())
}

/// Dense rational polynomial helpers (ascending coefficients).
fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_deg(p: &[Rat]) -> usize {
    let mut d = p.len();
    while d > 0 && p[d - 1].is_zero() {
        d -= 1;
    }
    d.saturating_sub(1)
}

fn poly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Remainder and quotient of `a` by `b` over the rationals.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = poly_deg(b);
    let lead = b[db].clone();
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    if poly_deg(&rem) < db || poly_is_zero(&rem) {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        quot[i - db] = c.clone();
        for (j, cb) in b.iter().enumerate().take(db + 1) {
            let idx = i - db + j;
            rem[idx] = &rem[idx] - &c * cb;
        }
    }
    poly_trim(&mut quot);
    poly_trim(&mut rem);
    (quot, rem)
}

/// An element of Q(zeta_n), stored as the reduced remainder mod Phi_n.
/// The coefficient vector always has length exactly phi(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    n: u64,
    coeffs: Vec<Rat>,
}

impl CycloPoly {
    pub fn zero(n: u64) -> Result<Self> {
        Self::from_poly(n, &[Rat::zero()])
    }

    pub fn one(n: u64) -> Result<Self> {
        Self::from_rational(n, Rat::one())
    }

    pub fn from_integer(n: u64, v: i64) -> Result<Self> {
        Self::from_rational(n, rat_int(v))
    }

    pub fn from_rational(n: u64, v: Rat) -> Result<Self> {
        Self::from_poly(n, &[v])
    }

    /// Reduce an arbitrary polynomial in zeta_n mod Phi_n.
    pub fn from_poly(n: u64, coeffs: &[Rat]) -> Result<Self> {
        let modulus = cyclotomic_arc(n)?;
        let deg = modulus.len() - 1;
        let modulus_rat: Vec<Rat> = modulus.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let (_, mut rem) = poly_divmod(coeffs, &modulus_rat);
        rem.resize(deg.max(1), Rat::zero());
        // phi(1) = 1: constants still carry one coefficient slot
        rem.truncate(deg.max(1));
        Ok(CycloPoly { n, coeffs: rem })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ConductorMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloPoly { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycloPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Self::from_poly(self.n, &prod)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CycloPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse via extended Euclid against Phi_n.  Phi_n is
    /// irreducible over Q, so every nonzero element is invertible.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision(self.n));
        }
        let modulus = cyclotomic_arc(self.n)?;
        let modulus_rat: Vec<Rat> =
            modulus.iter().map(|c| Rat::from_integer(c.clone())).collect();
        // Invariants: r0 = u0 * a (mod Phi_n), r1 = u1 * a (mod Phi_n).
        let mut r0 = modulus_rat;
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut u0 = vec![Rat::zero()];
        let mut u1 = vec![Rat::one()];
        while !poly_is_zero(&r1) {
            let (q, rem) = poly_divmod(&r0, &r1);
            let qu1 = poly_mul(&q, &u1);
            let mut u2 = u0.clone();
            u2.resize(u2.len().max(qu1.len()), Rat::zero());
            for (i, c) in qu1.iter().enumerate() {
                u2[i] = &u2[i] - c;
            }
            poly_trim(&mut u2);
            r0 = r1;
            r1 = rem;
            u0 = u1;
            u1 = u2;
        }
        // r0 is now a nonzero constant gcd; divide the Bezout coefficient by it.
        debug_assert_eq!(poly_deg(&r0), 0);
        let g = r0[0].clone();
        let inv: Vec<Rat> = u0.iter().map(|c| c / &g).collect();
        Self::from_poly(self.n, &inv)
    }

    /// Interpret as a rational constant, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Interpret as a rational integer; signals with the offending vector or
    /// value otherwise.
    pub fn as_rational_integer(&self) -> Result<BigInt> {
        let c = self.as_rational().ok_or_else(|| {
            let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            Error::NonConstant(format!("[{}]", v.join(", ")))
        })?;
        if !c.is_integer() {
            return Err(Error::NonIntegerConstant(c.to_string()));
        }
        Ok(c.to_integer())
    }

    /// Floating-point embedding at zeta_n = exp(2 pi i / n), as (re, im).
    pub fn eval_complex(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.n as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = rat_to_f64(c);
            re += c * (theta * k as f64).cos();
            im += c * (theta * k as f64).sin();
        }
        (re, im)
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    let num: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    num / den
}

/// The element zeta_n^k, with k taken mod n.
pub fn root_power(n: u64, k: i64) -> Result<CycloPoly> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let k = k.rem_euclid(n as i64) as usize;
    let mut coeffs = vec![Rat::zero(); k + 1];
    coeffs[k] = Rat::one();
    CycloPoly::from_poly(n, &coeffs)
}
