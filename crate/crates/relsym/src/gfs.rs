//! Truncated power series with exact rational coefficients, and the dimension
//! generating functions assembled from oracle-verified component series.
//!
//! The printed closed forms for the even-n linear characters carry erroneous
//! reflection factors; the trusted assembly below is derived from the verified
//! divisor-sum formulas, and `paper_discrepancy_report` expands the printed
//! forms verbatim to document exactly where they diverge.

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::cyclo::Rat;
use crate::dihedral::{CharVariant, CharacterId};
use crate::dims::dim_closed_form;
use crate::error::{Error, Result};
use crate::numtheory::{
    binomial, composition_count_int, divisors, euler_phi, gcd, moebius, ramanujan_sum,
};

/// A power series truncated at a fixed order (inclusive); coefficient list has
/// length order + 1 and arithmetic never reads beyond it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// The monomial c * t^k (zero series if k exceeds the order).
    pub fn monomial(c: Rat, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &Rat {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Ok(PowerSeries { coeffs: out })
    }
}

/// The expansion of (1 - t^k)^{-r}: coefficient of t^d is the number of
/// ordered r-compositions of d/k (zero off multiples of k).
pub fn geom_pow(k: u64, r: u64, order: usize) -> PowerSeries {
    assert!(k >= 1 && r >= 1);
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut d = 0u64;
    let mut j = 0u64;
    while d as usize <= order {
        coeffs[d as usize] = Rat::from_integer(composition_count_int(r, j));
        j += 1;
        d += k;
    }
    PowerSeries { coeffs }
}

/// Named component series of the linear-character generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// Rotation sum with totient weights; `alternating` inserts the (-1)^r sign.
    G1 { alternating: bool },
    /// (1 - t^2)^{-n/2}: the free-reflection trace series (even n).
    G2,
    /// The two-fixed-point reflection trace series (even n), as the explicit
    /// double sum over l.
    G3DoubleSum,
    /// The same series as the closed product (1 - t^2)^{-(n-2)/2} (1 - t)^{-2}.
    G3Closed,
}

pub fn component_series(component: Component, n: u64, order: usize) -> Result<PowerSeries> {
    match component {
        Component::G1 { alternating } => {
            let mut acc = PowerSeries::zero(order);
            for &r in &divisors(n)?.divisors {
                let mut w = rat_int(euler_phi(n / r)? as i64);
                if alternating && r % 2 == 1 {
                    w = -w;
                }
                acc = acc.add(&geom_pow(n / r, r, order).scale(&w))?;
            }
            Ok(acc)
        }
        Component::G2 => {
            if n % 2 != 0 {
                return Err(Error::Inconsistency("G2 requires even n".into()));
            }
            Ok(geom_pow(2, n / 2, order))
        }
        Component::G3DoubleSum => {
            if n % 2 != 0 {
                return Err(Error::Inconsistency("G3 requires even n".into()));
            }
            let m = (n - 2) / 2;
            let coeffs = (0..=order as u64)
                .map(|d| {
                    let mut b = BigInt::zero();
                    for l in 0..=d / 2 {
                        b += binomial(m + l - 1, l) * BigInt::from(d - 2 * l + 1);
                    }
                    Rat::from_integer(b)
                })
                .collect();
            Ok(PowerSeries::from_coeffs(coeffs))
        }
        Component::G3Closed => {
            if n % 2 != 0 {
                return Err(Error::Inconsistency("G3 requires even n".into()));
            }
            let sq = geom_pow(1, 2, order);
            if n == 2 {
                return Ok(sq);
            }
            geom_pow(2, (n - 2) / 2, order).mul(&sq)
        }
    }
}

/// The dimension generating function for (n, chi) to the given truncation
/// order: coefficient of t^d equals dim H_d(D_n, chi).
pub fn generating_function(n: u64, chi: &CharacterId, order: usize) -> Result<PowerSeries> {
    chi.validate()?;
    if chi.n != n {
        return Err(Error::ConductorMismatch(chi.n, n));
    }
    match chi.variant {
        CharVariant::TwoDim(h) => {
            let mut acc = PowerSeries::zero(order);
            for &r in &divisors(n)?.divisors {
                let w = rat_int(ramanujan_sum(n / r, h as i64)?);
                acc = acc.add(&geom_pow(n / r, r, order).scale(&w))?;
            }
            Ok(acc.scale(&Rat::new(BigInt::from(2), BigInt::from(n))))
        }
        CharVariant::Linear(i) => {
            let alternating = i >= 3;
            let rot = component_series(Component::G1 { alternating }, n, order)?;
            let refl = if n % 2 == 1 {
                // n (1 - t^2)^{-(n-1)/2} (1 - t)^{-1}
                let base = geom_pow(2, (n - 1) / 2, order).mul(&geom_pow(1, 1, order))?;
                base.scale(&rat_int(n as i64))
            } else {
                // n (1 - t)^{-1} (1 - t^2)^{-n/2}, with an extra t for chi3/chi4
                let base = geom_pow(1, 1, order).mul(&geom_pow(2, n / 2, order))?;
                let base = base.scale(&rat_int(n as i64));
                if alternating {
                    base.mul(&PowerSeries::monomial(Rat::one(), 1, order))?
                } else {
                    base
                }
            };
            let signed = match i {
                1 => rot.add(&refl)?,
                2 => rot.sub(&refl)?,
                3 => rot.sub(&refl)?,
                4 => rot.add(&refl)?,
                _ => unreachable!("validated"),
            };
            Ok(signed.scale(&Rat::new(BigInt::one(), BigInt::from(2 * n))))
        }
    }
}

/// First degree at which a printed closed form departs from the verified
/// dimension values, with both values.
#[derive(Debug, Clone, Serialize)]
pub struct Divergence {
    pub degree: usize,
    /// Printed-form coefficient, exact (may be a non-integer rational).
    pub printed: String,
    /// The oracle-correct dimension.
    pub correct: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterDiff {
    pub character: String,
    pub first_divergence: Option<Divergence>,
}

/// Per-character diff of the published generating functions against the
/// closed-form dimensions, for even n.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub n: u64,
    pub order: usize,
    pub characters: Vec<CharacterDiff>,
}

/// Expand the printed closed forms verbatim and diff their coefficients
/// against `dim_closed_form`.  The two-dimensional printed forms are the
/// Theorem-1 divisor sums (consistent); the even-n linear printed forms carry
/// the erroneous reflection factors (2 + t^2)(1 + t) and (1 + t + t^2) over
/// (1 - t^2)^{(n+2)/2}.
pub fn paper_discrepancy_report(n: u64, order: usize) -> Result<DiscrepancyReport> {
    if n % 2 != 0 {
        return Err(Error::Inconsistency(
            "the printed-form report covers even n".into(),
        ));
    }
    let mut characters = Vec::new();
    for chi in crate::dihedral::irreducible_characters(n)? {
        let printed = printed_form(n, &chi, order)?;
        let mut first_divergence = None;
        for d in 0..=order {
            let correct = dim_closed_form(n, d as u64, &chi)?;
            if printed.coeff(d) != &Rat::from_integer(correct.clone()) {
                first_divergence = Some(Divergence {
                    degree: d,
                    printed: printed.coeff(d).to_string(),
                    correct: correct.try_into().unwrap_or(u64::MAX),
                });
                break;
            }
        }
        characters.push(CharacterDiff {
            character: chi.name(),
            first_divergence,
        });
    }
    Ok(DiscrepancyReport { n, order, characters })
}

/// The published generating function, transcribed as printed.
fn printed_form(n: u64, chi: &CharacterId, order: usize) -> Result<PowerSeries> {
    match chi.variant {
        CharVariant::TwoDim(h) => {
            // Theorem 1 as printed: Moebius weights when gcd(h, n) = 1,
            // otherwise the Moebius-totient ratio with g = gcd(h, n/r).
            let coprime = gcd(h, n) == 1;
            let mut acc = PowerSeries::zero(order);
            for &r in &divisors(n)?.divisors {
                let q = n / r;
                let w = if coprime {
                    rat_int(moebius(q)?)
                } else {
                    let g = gcd(h, q);
                    let mu = moebius(q / g)?;
                    Rat::new(
                        BigInt::from(mu) * BigInt::from(euler_phi(q)?),
                        BigInt::from(euler_phi(q / g)?),
                    )
                };
                acc = acc.add(&geom_pow(q, r, order).scale(&w))?;
            }
            Ok(acc.scale(&Rat::new(BigInt::from(2), BigInt::from(n))))
        }
        CharVariant::Linear(i) => {
            let alternating = i >= 3;
            let rot = component_series(Component::G1 { alternating }, n, order)?;
            // (1 - t^2)^{-(n+2)/2}
            let pole = geom_pow(2, (n + 2) / 2, order);
            let factor = if alternating {
                // (1 + t + t^2)
                PowerSeries::one(order)
                    .add(&PowerSeries::monomial(Rat::one(), 1, order))?
                    .add(&PowerSeries::monomial(Rat::one(), 2, order))?
            } else {
                // (2 + t^2)(1 + t)
                let a = PowerSeries::monomial(rat_int(2), 0, order)
                    .add(&PowerSeries::monomial(Rat::one(), 2, order))?;
                let b = PowerSeries::one(order).add(&PowerSeries::monomial(Rat::one(), 1, order))?;
                a.mul(&b)?
            };
            let refl = pole.mul(&factor)?.scale(&Rat::new(BigInt::from(n), BigInt::from(2)));
            let signed = match i {
                1 => rot.add(&refl)?,
                2 => rot.sub(&refl)?,
                3 => rot.sub(&refl)?,
                4 => rot.add(&refl)?,
                _ => unreachable!("validated"),
            };
            Ok(signed.scale(&Rat::new(BigInt::one(), BigInt::from(2 * n))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::irreducible_characters;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integer coefficient {c}");
                c.to_integer().try_into().unwrap()
            })
            .collect()
    }

    #[test]
    fn geom_pow_examples() {
        assert_eq!(ints(&geom_pow(1, 1, 4)), vec![1, 1, 1, 1, 1]);
        assert_eq!(ints(&geom_pow(2, 5, 4)), vec![1, 0, 5, 0, 15]);
        let mut expect = vec![0i64; 10];
        expect[0] = 1;
        assert_eq!(ints(&geom_pow(10, 1, 9)), expect);
    }

    #[test]
    fn series_arithmetic_examples() {
        let a = PowerSeries::from_coeffs(vec![rat_int(1), rat_int(2)]);
        let b = PowerSeries::from_coeffs(vec![rat_int(0), rat_int(1)]);
        assert_eq!(ints(&a.add(&b).unwrap()), vec![1, 3]);

        let one_minus_t = PowerSeries::one(6)
            .sub(&PowerSeries::monomial(Rat::one(), 1, 6))
            .unwrap();
        let telescoped = one_minus_t.mul(&geom_pow(1, 1, 6)).unwrap();
        assert_eq!(ints(&telescoped), vec![1, 0, 0, 0, 0, 0, 0]);

        let scaled = geom_pow(5, 2, 10).scale(&Rat::new(BigInt::one(), BigInt::from(5)));
        assert_eq!(scaled.coeff(10), &Rat::new(BigInt::from(3), BigInt::from(5)));

        assert!(a.add(&PowerSeries::one(5)).is_err());
    }

    #[test]
    fn geom_pow_inverse_identity() {
        for k in 1..=6u64 {
            for r in 1..=6u64 {
                let order = 24;
                let mut inv = PowerSeries::one(order);
                let factor = PowerSeries::one(order)
                    .sub(&PowerSeries::monomial(Rat::one(), k as usize, order))
                    .unwrap();
                for _ in 0..r {
                    inv = inv.mul(&factor).unwrap();
                }
                let product = geom_pow(k, r, order).mul(&inv).unwrap();
                assert_eq!(product, PowerSeries::one(order), "k = {k}, r = {r}");
            }
        }
    }

    #[test]
    fn generating_function_examples() {
        let psi1 = CharacterId::two_dim(10, 1).unwrap();
        let s = generating_function(10, &psi1, 2).unwrap();
        assert_eq!(ints(&s), vec![0, 2, 10]);

        let chi1 = CharacterId::linear(3, 1).unwrap();
        let s = generating_function(3, &chi1, 2).unwrap();
        assert_eq!(ints(&s), vec![1, 1, 2]);

        let chi3 = CharacterId::linear(4, 3).unwrap();
        let s = generating_function(4, &chi3, 2).unwrap();
        assert_eq!(ints(&s), vec![0, 0, 1]);
    }

    #[test]
    fn generating_function_matches_closed_form() {
        for n in 3..=10u64 {
            for chi in irreducible_characters(n).unwrap() {
                let s = generating_function(n, &chi, 20).unwrap();
                for d in 0..=20usize {
                    let expect = Rat::from_integer(dim_closed_form(n, d as u64, &chi).unwrap());
                    assert_eq!(
                        s.coeff(d),
                        &expect,
                        "n = {n}, d = {d}, chi = {}",
                        chi.name()
                    );
                }
            }
        }
    }

    #[test]
    fn g2_examples() {
        assert_eq!(ints(&component_series(Component::G2, 4, 4).unwrap()), vec![1, 0, 2, 0, 3]);
    }

    #[test]
    fn g3_examples_and_identity() {
        let g3 = component_series(Component::G3DoubleSum, 4, 2).unwrap();
        assert_eq!(ints(&g3), vec![1, 2, 4]);
        for n in (4..=12u64).step_by(2) {
            let a = component_series(Component::G3DoubleSum, n, 20).unwrap();
            let b = component_series(Component::G3Closed, n, 20).unwrap();
            assert_eq!(a, b, "n = {n}");
            // equivalently (1 + t)^2 (1 - t^2)^{-(n+2)/2}
            let one_plus_t = PowerSeries::one(20)
                .add(&PowerSeries::monomial(Rat::one(), 1, 20))
                .unwrap();
            let c = one_plus_t
                .mul(&one_plus_t)
                .unwrap()
                .mul(&geom_pow(2, (n + 2) / 2, 20))
                .unwrap();
            assert_eq!(a, c, "n = {n}");
            // the printed factor (1 + 2t + 2t^2 + t^3) fails the same check
            let printed_factor = PowerSeries::from_coeffs(
                [1, 2, 2, 1]
                    .iter()
                    .map(|&v| rat_int(v))
                    .chain(std::iter::repeat(Rat::zero()).take(17))
                    .collect(),
            );
            let wrong = printed_factor.mul(&geom_pow(2, (n + 2) / 2, 20)).unwrap();
            assert_ne!(a, wrong, "n = {n}");
        }
    }

    #[test]
    fn odd_reflection_identity() {
        for n in (3..=11u64).step_by(2) {
            let m = (n - 1) / 2;
            let series = geom_pow(2, m, 20).mul(&geom_pow(1, 1, 20)).unwrap();
            for d in 0..=20u64 {
                let mut sum = BigInt::zero();
                for l in 0..=d / 2 {
                    sum += binomial(m + l - 1, l);
                }
                assert_eq!(
                    series.coeff(d as usize),
                    &Rat::from_integer(sum),
                    "n = {n}, d = {d}"
                );
            }
        }
    }

    #[test]
    fn discrepancy_report_examples() {
        let report = paper_discrepancy_report(4, 8).unwrap();
        let by_name = |name: &str| {
            report
                .characters
                .iter()
                .find(|c| c.character == name)
                .unwrap()
        };
        let chi1 = by_name("chi1").first_divergence.as_ref().unwrap();
        assert_eq!(chi1.degree, 2);
        assert_eq!(chi1.correct, 3);
        let chi3 = by_name("chi3").first_divergence.as_ref().unwrap();
        assert!(chi3.degree <= 2);
        assert!(by_name("psi:1").first_divergence.is_none());

        let report = paper_discrepancy_report(10, 20).unwrap();
        for name in ["psi:1", "psi:2", "psi:3", "psi:4"] {
            assert!(
                report
                    .characters
                    .iter()
                    .find(|c| c.character == name)
                    .unwrap()
                    .first_divergence
                    .is_none(),
                "{name} printed form should be consistent"
            );
        }
        assert!(paper_discrepancy_report(5, 5).is_err());
    }

    #[test]
    fn printed_chi3_coefficient_at_two_is_nonintegral() {
        let chi3 = CharacterId::linear(4, 3).unwrap();
        let printed = printed_form(4, &chi3, 4).unwrap();
        assert_eq!(printed.coeff(2), &Rat::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(dim_closed_form(4, 2, &chi3).unwrap(), BigInt::one());
    }
}
