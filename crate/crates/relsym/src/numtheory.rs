//! Elementary number theory over exact integers: divisors, totient, Moebius,
//! gcd classes, Ramanujan sums, and the zero-on-non-integer binomial convention
//! used by every dimension formula.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// The divisors of `n` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorList {
    pub n: u64,
    pub divisors: Vec<u64>,
}

/// The set `S_r(n) = { k in [1, n] : gcd(k, n) = r }` for a divisor `r` of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdClass {
    pub n: u64,
    pub r: u64,
    pub members: Vec<u64>,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Prime factorization by trial division, as (prime, multiplicity) pairs.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn divisors(n: u64) -> Result<DivisorList> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    Ok(DivisorList { n, divisors })
}

/// Euler's totient function.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Moebius function: 0 on non-squarefree, otherwise (-1)^(number of prime factors).
pub fn moebius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// The gcd class `S_r(n)`, built via `S_r(n) = r * S_1(n/r)`.
pub fn gcd_class(n: u64, r: u64) -> Result<GcdClass> {
    if n == 0 || r == 0 {
        return Err(Error::ZeroArgument);
    }
    if n % r != 0 {
        return Err(Error::NotADivisor { n, r });
    }
    let q = n / r;
    let members: Vec<u64> = (1..=q).filter(|&a| gcd(a, q) == 1).map(|a| r * a).collect();
    Ok(GcdClass { n, r, members })
}

/// Ramanujan sum `c_n(m)`: the sum of `exp(2 pi i m k / n)` over `k` in `[1, n]`
/// coprime to `n`.  Evaluated exactly as `mu(n/g) * phi(n) / phi(n/g)` with
/// `g = gcd(m mod n, n)`; always an integer.
pub fn ramanujan_sum(n: u64, m: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let m_mod = m.rem_euclid(n as i64) as u64;
    let g = if m_mod == 0 { n } else { gcd(m_mod, n) };
    let q = n / g;
    let mu = moebius(q)?;
    if mu == 0 {
        return Ok(0);
    }
    let ratio = euler_phi(n)? / euler_phi(q)?;
    Ok(mu * ratio as i64)
}

/// Binomial coefficient C(n, k) over exact integers; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of ordered `r`-tuples of non-negative integers summing to `total`,
/// i.e. `C(r + total - 1, r - 1)`.  A non-integer `total` yields 0, which is
/// the convention every binomial in the dimension formulas is routed through.
pub fn composition_count(r: u64, total: &BigRational) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::ZeroArgument);
    }
    if total.is_negative() {
        return Err(Error::NegativeTotal(total.to_string()));
    }
    if !total.is_integer() {
        return Ok(BigInt::zero());
    }
    let t = total.to_integer();
    // Totals stay desk-sized (bounded by the series truncation order).
    let t: u64 = t
        .try_into()
        .map_err(|_| Error::Inconsistency("composition total out of range".into()))?;
    Ok(binomial(r + t - 1, r - 1))
}

/// Convenience wrapper for integer totals.
pub fn composition_count_int(r: u64, total: u64) -> BigInt {
    binomial(r + total - 1, r.saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;
    use proptest::prelude::*;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1).unwrap().divisors, vec![1]);
        assert_eq!(divisors(10).unwrap().divisors, vec![1, 2, 5, 10]);
        assert_eq!(divisors(12).unwrap().divisors, vec![1, 2, 3, 4, 6, 12]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(10).unwrap(), 4);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn gcd_class_examples() {
        assert_eq!(gcd_class(10, 2).unwrap().members, vec![2, 4, 6, 8]);
        assert_eq!(gcd_class(10, 10).unwrap().members, vec![10]);
        // brute-force gcd scan over 1..12
        let brute: Vec<u64> = (1..=12).filter(|&k| gcd(k, 12) == 3).collect();
        assert_eq!(gcd_class(12, 3).unwrap().members, brute);
        assert!(gcd_class(10, 3).is_err());
    }

    #[test]
    fn gcd_class_cardinality_is_phi() {
        for n in 1..=60u64 {
            for &r in &divisors(n).unwrap().divisors {
                let class = gcd_class(n, r).unwrap();
                assert_eq!(class.members.len() as u64, euler_phi(n / r).unwrap());
            }
        }
    }

    #[test]
    fn gcd_classes_partition_range() {
        for n in 1..=40u64 {
            let mut all: Vec<u64> = divisors(n)
                .unwrap()
                .divisors
                .iter()
                .flat_map(|&r| gcd_class(n, r).unwrap().members)
                .collect();
            all.sort_unstable();
            assert_eq!(all, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn totient_divisor_sum() {
        for n in 1..=100u64 {
            let sum: u64 = divisors(n)
                .unwrap()
                .divisors
                .iter()
                .map(|&r| euler_phi(n / r).unwrap())
                .sum();
            assert_eq!(sum, n);
        }
    }

    #[test]
    fn ramanujan_sum_examples() {
        assert_eq!(ramanujan_sum(5, 1).unwrap(), -1);
        // brute force over k in {1, 5}: cos(2pi*2/6) + cos(2pi*10/6) = -1/2 - 1/2
        assert_eq!(ramanujan_sum(6, 2).unwrap(), -1);
        assert_eq!(ramanujan_sum(4, 2).unwrap(), -2);
    }

    #[test]
    fn ramanujan_sum_at_one_is_moebius() {
        for n in 1..=200u64 {
            assert_eq!(ramanujan_sum(n, 1).unwrap(), moebius(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn ramanujan_sum_matches_cosine_sum() {
        for n in 1..=60u64 {
            for m in 0..=n {
                let float: f64 = (1..=n)
                    .filter(|&k| gcd(k, n) == 1)
                    .map(|k| (2.0 * std::f64::consts::PI * (m * k) as f64 / n as f64).cos())
                    .sum();
                let exact = ramanujan_sum(n, m as i64).unwrap();
                assert!(
                    (float - exact as f64).abs() < 1e-9,
                    "n = {n}, m = {m}: {float} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn ramanujan_sum_reduces_m_mod_n() {
        for n in 1..=30u64 {
            for m in 0..=n as i64 {
                assert_eq!(
                    ramanujan_sum(n, m).unwrap(),
                    ramanujan_sum(n, m + n as i64).unwrap()
                );
                assert_eq!(
                    ramanujan_sum(n, m).unwrap(),
                    ramanujan_sum(n, m - 3 * n as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn composition_count_examples() {
        assert_eq!(composition_count(3, &rat(3, 1)).unwrap(), BigInt::from(10));
        assert_eq!(composition_count(1, &rat(1, 2)).unwrap(), BigInt::zero());
        assert_eq!(composition_count(4, &rat(2, 1)).unwrap(), BigInt::from(10));
        assert!(composition_count(2, &rat(-1, 1)).is_err());
    }

    /// Count lattice compositions directly: r-tuples of non-negatives summing to d.
    fn brute_compositions(r: u64, d: u64) -> u64 {
        if r == 1 {
            return 1;
        }
        (0..=d).map(|first| brute_compositions(r - 1, d - first)).sum()
    }

    #[test]
    fn composition_count_matches_enumeration() {
        for r in 1..=6u64 {
            for d in 0..=12u64 {
                let expected = BigInt::from(brute_compositions(r, d));
                assert_eq!(composition_count(r, &rat(d as i64, 1)).unwrap(), expected);
                assert_eq!(composition_count_int(r, d), expected);
            }
        }
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_args(a in 1u64..40, b in 1u64..40) {
            prop_assume!(gcd(a, b) == 1);
            prop_assert_eq!(
                moebius(a * b).unwrap(),
                moebius(a).unwrap() * moebius(b).unwrap()
            );
            prop_assert_eq!(
                euler_phi(a * b).unwrap(),
                euler_phi(a).unwrap() * euler_phi(b).unwrap()
            );
        }

        #[test]
        fn composition_count_rejects_non_integer(r in 1u64..8, num in 0i64..50, den in 2i64..7) {
            let total = BigRational::new(
                BigInt::from_i64(num).unwrap(),
                BigInt::from_i64(den).unwrap(),
            );
            let out = composition_count(r, &total).unwrap();
            if total.is_integer() {
                prop_assert!(out >= BigInt::zero());
            } else {
                prop_assert_eq!(out, BigInt::zero());
            }
        }
    }
}
