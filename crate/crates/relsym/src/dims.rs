//! Dimension engines for the spaces of relative symmetric polynomials of D_n:
//! the closed-form divisor sums, the exact character-sum trace, and the
//! projection-matrix rank with basis extraction.  The three routes are fully
//! independent and must agree; the verify harness and acceptance suite lean on
//! that redundancy.

use std::collections::HashMap;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloPoly, Rat};
use crate::dihedral::{
    character_value, cycle_type, elements, to_permutation, CharVariant, CharacterId, CycleType,
    Permutation,
};
use crate::error::{Error, Result};
use crate::numtheory::{binomial, composition_count, divisors, euler_phi, ramanujan_sum};

/// Default cap on the monomial-basis size for the rank oracle.
pub const DEFAULT_RANK_CAP: u64 = 300;

/// The graded-lexicographic monomial basis of degree-d forms in n variables.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    pub n: u64,
    pub d: u64,
    pub monomials: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, usize>,
}

impl MonomialBasis {
    pub fn new(n: u64, d: u64) -> Self {
        let mut monomials = Vec::new();
        let mut current = vec![0u64; n as usize];
        gen_monomials(n as usize, d, 0, &mut current, &mut monomials);
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        MonomialBasis { n, d, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &[u64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Size C(n + d - 1, n - 1) without enumerating.
    pub fn size(n: u64, d: u64) -> BigInt {
        binomial(n + d - 1, n - 1)
    }
}

/// Exponent vectors in lexicographic descending order (first variable's
/// exponent largest first); deterministic for a given (n, d).
fn gen_monomials(n: usize, d: u64, pos: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if pos == n - 1 {
        current[pos] = d;
        out.push(current.clone());
        current[pos] = 0;
        return;
    }
    for e in (0..=d).rev() {
        current[pos] = e;
        gen_monomials(n, d - e, pos + 1, current, out);
        current[pos] = 0;
    }
}

/// Which engine produced a dimension value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    CharSum,
    Rank,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::ClosedForm => "closed_form",
            Method::CharSum => "char_sum",
            Method::Rank => "rank",
        };
        write!(f, "{s}")
    }
}

/// A single computed dimension, in the CLI/JSON record shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRecord {
    pub n: u64,
    pub d: u64,
    #[serde(rename = "char")]
    pub character: String,
    pub dim: u64,
    pub method: Method,
}

/// Number of degree-d monomials constant on every cycle of the given cycle
/// type: the coefficient of t^d in the product of 1/(1 - t^c) over the cycle
/// lengths c, by exact dynamic programming.
pub fn fixed_monomial_count(t: &CycleType, d: u64) -> BigInt {
    let d = d as usize;
    let mut dp = vec![BigInt::zero(); d + 1];
    dp[0] = BigInt::one();
    for &c in &t.lengths {
        let c = c as usize;
        for j in c..=d {
            let add = dp[j - c].clone();
            dp[j] += add;
        }
    }
    dp[d].clone()
}

fn rat_u64(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Certify a rational total as a non-negative integer dimension.
fn certify(total: Rat, context: &str) -> Result<BigInt> {
    if !total.is_integer() {
        return Err(Error::Inconsistency(format!(
            "{context}: value {total} is not an integer"
        )));
    }
    let v = total.to_integer();
    if v.is_negative() {
        return Err(Error::Inconsistency(format!("{context}: value {v} is negative")));
    }
    Ok(v)
}

/// dim H_d(D_n, chi) by the closed-form divisor sums.  The two-dimensional
/// cases are unified through the Ramanujan sum (the coprime case is its
/// Moebius specialization); every binomial routes through the
/// zero-on-non-integer composition count.
pub fn dim_closed_form(n: u64, d: u64, chi: &CharacterId) -> Result<BigInt> {
    chi.validate()?;
    if chi.n != n {
        return Err(Error::ConductorMismatch(chi.n, n));
    }
    let divs = divisors(n)?.divisors;
    match chi.variant {
        CharVariant::TwoDim(h) => {
            let mut acc = BigInt::zero();
            for &r in &divs {
                let q = n / r;
                let total = rat_u64(d) / rat_u64(q);
                let cc = composition_count(r, &total)?;
                acc += cc * BigInt::from(ramanujan_sum(q, h as i64)?);
            }
            let total = Rat::new(BigInt::from(2) * acc, BigInt::from(n));
            certify(total, &format!("dim({n}, {d}, {})", chi.name()))
        }
        CharVariant::Linear(i) => {
            let mut rot = BigInt::zero();
            for &r in &divs {
                let q = n / r;
                let total = rat_u64(d) / rat_u64(q);
                let cc = composition_count(r, &total)?;
                let mut w = BigInt::from(euler_phi(q)?);
                if i >= 3 && r % 2 == 1 {
                    w = -w;
                }
                rot += cc * w;
            }
            let refl = if n % 2 == 1 {
                // tau has one fixed point and (n-1)/2 transpositions
                let m = (n - 1) / 2;
                let mut s = BigInt::zero();
                for l in 0..=d / 2 {
                    s += binomial(m + l - 1, l);
                }
                let s = BigInt::from(n) * s;
                match i {
                    1 => s,
                    2 => -s,
                    _ => unreachable!("chi3/chi4 rejected for odd n"),
                }
            } else {
                // free reflections (cycle type 2^{n/2}) vs two-fixed-point ones
                let a = composition_count(n / 2, &(rat_u64(d) / rat_u64(2)))?;
                let m = (n - 2) / 2;
                let mut b = BigInt::zero();
                for l in 0..=d / 2 {
                    b += binomial(m + l - 1, l) * BigInt::from(d - 2 * l + 1);
                }
                let half_n = BigInt::from(n / 2);
                match i {
                    1 => half_n * (a + b),
                    2 => -half_n * (a + b),
                    3 => half_n * (a - b),
                    4 => -half_n * (a - b),
                    _ => unreachable!("validated"),
                }
            };
            let total = Rat::new(rot + refl, BigInt::from(2 * n));
            certify(total, &format!("dim({n}, {d}, {})", chi.name()))
        }
    }
}

/// dim H_d(D_n, chi) as the exact trace of the projection idempotent:
/// (chi(1) / 2n) * sum over all 2n group elements of chi(g) * Tr_d(g),
/// accumulated in Q(zeta_n) and certified to be a rational integer.
pub fn dim_char_sum(n: u64, d: u64, chi: &CharacterId) -> Result<BigInt> {
    chi.validate()?;
    if chi.n != n {
        return Err(Error::ConductorMismatch(chi.n, n));
    }
    let mut acc = CycloPoly::zero(n)?;
    for g in elements(n)? {
        let t = cycle_type(&to_permutation(&g))?;
        let trace = fixed_monomial_count(&t, d);
        let term = character_value(chi, &g)?.scale(&Rat::from_integer(trace));
        acc = acc.add(&term)?;
    }
    let scaled = acc.scale(&Rat::new(BigInt::from(chi.degree()), BigInt::from(2 * n)));
    let v = scaled.as_rational_integer()?;
    if v.is_negative() {
        return Err(Error::Inconsistency(format!(
            "char-sum dim({n}, {d}, {}) = {v} is negative",
            chi.name()
        )));
    }
    Ok(v)
}

/// The matrix of the projection T(D_n, chi) in the monomial basis, with exact
/// cyclotomic entries.
#[derive(Debug, Clone)]
pub struct ProjectionMatrix {
    pub n: u64,
    pub d: u64,
    pub chi: CharacterId,
    pub basis: MonomialBasis,
    /// entries[i][j] = coefficient of m_i in T(m_j)
    pub entries: Vec<Vec<CycloPoly>>,
}

/// Image of a monomial under a variable permutation: x_j -> x_{p(j)}.
fn permute_monomial(p: &Permutation, m: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; m.len()];
    for (j, &e) in m.iter().enumerate() {
        out[p.image[j]] = e;
    }
    out
}

pub fn projection_matrix(n: u64, d: u64, chi: &CharacterId, cap: u64) -> Result<ProjectionMatrix> {
    chi.validate()?;
    if chi.n != n {
        return Err(Error::ConductorMismatch(chi.n, n));
    }
    let size = MonomialBasis::size(n, d);
    if size > BigInt::from(cap) {
        return Err(Error::BasisCapExceeded {
            size: size.try_into().unwrap_or(u64::MAX),
            cap,
        });
    }
    let basis = MonomialBasis::new(n, d);
    let len = basis.len();
    let mut entries = vec![vec![CycloPoly::zero(n)?; len]; len];
    for g in elements(n)? {
        let p = to_permutation(&g);
        let value = character_value(chi, &g)?;
        if value.is_zero() {
            continue;
        }
        for (j, m) in basis.monomials.iter().enumerate() {
            let i = basis
                .index_of(&permute_monomial(&p, m))
                .ok_or_else(|| Error::Inconsistency("permuted monomial left the basis".into()))?;
            entries[i][j] = entries[i][j].add(&value)?;
        }
    }
    let scale = Rat::new(BigInt::from(chi.degree()), BigInt::from(2 * n));
    for row in &mut entries {
        for e in row.iter_mut() {
            *e = e.scale(&scale);
        }
    }
    Ok(ProjectionMatrix { n, d, chi: *chi, basis, entries })
}

impl ProjectionMatrix {
    pub fn trace(&self) -> Result<CycloPoly> {
        let mut acc = CycloPoly::zero(self.n)?;
        for i in 0..self.entries.len() {
            acc = acc.add(&self.entries[i][i])?;
        }
        Ok(acc)
    }

    /// Exact matrix product with another projection-sized matrix.
    pub fn multiply(&self, other: &ProjectionMatrix) -> Result<Vec<Vec<CycloPoly>>> {
        mat_mul(&self.entries, &other.entries, self.n)
    }

    /// Apply the projection to a coefficient vector in the monomial basis.
    pub fn apply(&self, vec: &[CycloPoly]) -> Result<Vec<CycloPoly>> {
        let len = self.entries.len();
        let mut out = vec![CycloPoly::zero(self.n)?; len];
        for i in 0..len {
            for (j, v) in vec.iter().enumerate() {
                if v.is_zero() || self.entries[i][j].is_zero() {
                    continue;
                }
                out[i] = out[i].add(&self.entries[i][j].mul(v)?)?;
            }
        }
        Ok(out)
    }
}

pub fn mat_mul(
    a: &[Vec<CycloPoly>],
    b: &[Vec<CycloPoly>],
    n: u64,
) -> Result<Vec<Vec<CycloPoly>>> {
    let len = a.len();
    let mut out = vec![vec![CycloPoly::zero(n)?; len]; len];
    for i in 0..len {
        for k in 0..len {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..len {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

/// Row-echelon reduction over Q(zeta_n) with first-nonzero pivot choice.
/// Returns (rank, pivot column indices).
fn row_echelon(entries: &mut [Vec<CycloPoly>]) -> Result<(usize, Vec<usize>)> {
    let rows = entries.len();
    if rows == 0 {
        return Ok((0, Vec::new()));
    }
    let cols = entries[0].len();
    let mut rank = 0usize;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !entries[r][col].is_zero()) else {
            continue;
        };
        entries.swap(rank, pivot_row);
        let inv = entries[rank][col].inverse()?;
        for j in col..cols {
            entries[rank][j] = entries[rank][j].mul(&inv)?;
        }
        for r in 0..rows {
            if r == rank || entries[r][col].is_zero() {
                continue;
            }
            let factor = entries[r][col].clone();
            for j in col..cols {
                let sub = factor.mul(&entries[rank][j])?;
                entries[r][j] = entries[r][j].sub(&sub)?;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok((rank, pivots))
}

/// dim H_d(D_n, chi) as the rank of the projection matrix over Q(zeta_n).
pub fn dim_rank(n: u64, d: u64, chi: &CharacterId, cap: u64) -> Result<BigInt> {
    let matrix = projection_matrix(n, d, chi, cap)?;
    let mut work = matrix.entries.clone();
    let (rank, _) = row_echelon(&mut work)?;
    Ok(BigInt::from(rank))
}

/// An explicit polynomial in the image of the projection: monomial exponent
/// vectors with cyclotomic coefficients (rational for linear characters).
#[derive(Debug, Clone)]
pub struct BasisPolynomial {
    pub terms: Vec<(Vec<u64>, CycloPoly)>,
}

/// A spanning set of the chi-isotypic component: the pivot columns of the
/// projection matrix, as explicit polynomials.  Each is fixed by re-applying
/// the projection; the list has exactly dim_rank members.
pub fn basis_extract(n: u64, d: u64, chi: &CharacterId, cap: u64) -> Result<Vec<BasisPolynomial>> {
    let matrix = projection_matrix(n, d, chi, cap)?;
    let mut work = matrix.entries.clone();
    let (_, pivots) = row_echelon(&mut work)?;
    let mut out = Vec::with_capacity(pivots.len());
    for &col in &pivots {
        let terms = matrix
            .basis
            .monomials
            .iter()
            .enumerate()
            .filter(|(i, _)| !matrix.entries[*i][col].is_zero())
            .map(|(i, m)| (m.clone(), matrix.entries[i][col].clone()))
            .collect();
        out.push(BasisPolynomial { terms });
    }
    Ok(out)
}
