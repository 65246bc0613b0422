//! The dihedral group D_n: elements, the fixed embedding into S_n, cycle
//! types, and the irreducible character table with exact cyclotomic values.
//!
//! The embedding is fixed to sigma = (1 2 ... n) and tau = the reversal
//! j -> n + 1 - j; it is unique up to conjugacy, and every trace we take is
//! conjugation-invariant.

use crate::cyclo::{root_power, CycloPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Rotation,
    Reflection,
}

/// An element of D_n: Rotation(k) is sigma^k, Reflection(k) is tau sigma^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub n: u64,
    pub kind: ElementKind,
    pub k: u64,
}

impl GroupElement {
    pub fn rotation(n: u64, k: u64) -> Self {
        GroupElement { n, kind: ElementKind::Rotation, k: k % n }
    }

    pub fn reflection(n: u64, k: u64) -> Self {
        GroupElement { n, kind: ElementKind::Reflection, k: k % n }
    }

    /// Group product self * other (other applied first under the permutation
    /// action), via the dihedral relations sigma^a tau = tau sigma^{-a}.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ConductorMismatch(self.n, other.n));
        }
        let n = self.n;
        let out = match (self.kind, other.kind) {
            (ElementKind::Rotation, ElementKind::Rotation) => {
                Self::rotation(n, self.k + other.k)
            }
            (ElementKind::Rotation, ElementKind::Reflection) => {
                // sigma^a tau sigma^b = tau sigma^{b - a}
                Self::reflection(n, (other.k + n - self.k % n) % n)
            }
            (ElementKind::Reflection, ElementKind::Rotation) => {
                Self::reflection(n, self.k + other.k)
            }
            (ElementKind::Reflection, ElementKind::Reflection) => {
                // tau sigma^a tau sigma^b = sigma^{b - a}
                Self::rotation(n, (other.k + n - self.k % n) % n)
            }
        };
        Ok(out)
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ElementKind::Rotation => write!(f, "s^{}", self.k),
            ElementKind::Reflection => write!(f, "t*s^{}", self.k),
        }
    }
}

/// A permutation of {0, .., n-1}; `image[j]` is the image of symbol j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    pub image: Vec<usize>,
}

impl Permutation {
    /// One-line notation on 1-based symbols.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x + 1).collect()
    }

    pub fn compose(&self, inner: &Permutation) -> Permutation {
        Permutation {
            image: inner.image.iter().map(|&j| self.image[j]).collect(),
        }
    }
}

/// Multiset of cycle lengths of a permutation, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    pub lengths: Vec<u64>,
}

impl CycleType {
    pub fn new(mut lengths: Vec<u64>) -> Self {
        lengths.sort_unstable();
        CycleType { lengths }
    }

    pub fn degree(&self) -> u64 {
        self.lengths.iter().sum()
    }
}

/// All 2n elements of D_n: rotations first by ascending k, then reflections.
pub fn elements(n: u64) -> Result<Vec<GroupElement>> {
    if n < 3 {
        return Err(Error::GroupTooSmall(n));
    }
    let mut out = Vec::with_capacity(2 * n as usize);
    for k in 0..n {
        out.push(GroupElement::rotation(n, k));
    }
    for k in 0..n {
        out.push(GroupElement::reflection(n, k));
    }
    Ok(out)
}

/// The image of g under the fixed embedding into S_n.
pub fn to_permutation(g: &GroupElement) -> Permutation {
    let n = g.n as usize;
    let k = g.k as usize;
    let image = match g.kind {
        // sigma^k : j -> j + k (mod n)
        ElementKind::Rotation => (0..n).map(|j| (j + k) % n).collect(),
        // tau sigma^k : j -> (n - 1) - (j + k mod n)
        ElementKind::Reflection => (0..n).map(|j| n - 1 - (j + k) % n).collect(),
    };
    Permutation { image }
}

/// Cycle type of a permutation; rejects maps that are not bijections.
pub fn cycle_type(p: &Permutation) -> Result<CycleType> {
    let n = p.image.len();
    let mut seen = vec![false; n];
    for &x in &p.image {
        if x >= n || seen[x] {
            return Err(Error::NotAPermutation);
        }
        seen[x] = true;
    }
    let mut visited = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            len += 1;
            j = p.image[j];
        }
        lengths.push(len);
    }
    Ok(CycleType::new(lengths))
}

/// Identifies an irreducible character of D_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharVariant {
    /// chi_i for i in 1..=4 (3 and 4 only when n is even).
    Linear(u8),
    /// psi_h with 1 <= h < n/2.
    TwoDim(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterId {
    pub n: u64,
    pub variant: CharVariant,
}

impl CharacterId {
    pub fn linear(n: u64, i: u8) -> Result<Self> {
        let id = CharacterId { n, variant: CharVariant::Linear(i) };
        id.validate()?;
        Ok(id)
    }

    pub fn two_dim(n: u64, h: u64) -> Result<Self> {
        let id = CharacterId { n, variant: CharVariant::TwoDim(h) };
        id.validate()?;
        Ok(id)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::GroupTooSmall(self.n));
        }
        match self.variant {
            CharVariant::Linear(i) => {
                if !(1..=4).contains(&i) {
                    return Err(Error::InvalidCharacter(format!("chi{i} does not exist")));
                }
                if i >= 3 && self.n % 2 != 0 {
                    return Err(Error::InvalidCharacter(format!(
                        "chi{i} requires even n, got n = {}",
                        self.n
                    )));
                }
                Ok(())
            }
            CharVariant::TwoDim(h) => {
                if h == 0 || 2 * h >= self.n {
                    return Err(Error::InvalidCharacter(format!(
                        "psi:{h} requires 1 <= h < n/2 for n = {}",
                        self.n
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn degree(&self) -> u64 {
        match self.variant {
            CharVariant::Linear(_) => 1,
            CharVariant::TwoDim(_) => 2,
        }
    }

    /// Canonical CLI name: "chi1".."chi4" or "psi:<h>".
    pub fn name(&self) -> String {
        match self.variant {
            CharVariant::Linear(i) => format!("chi{i}"),
            CharVariant::TwoDim(h) => format!("psi:{h}"),
        }
    }

    /// Parse the canonical name for a given n.
    pub fn parse(n: u64, s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("chi") {
            let i: u8 = rest
                .parse()
                .map_err(|_| Error::InvalidCharacter(s.to_string()))?;
            return CharacterId::linear(n, i);
        }
        if let Some(rest) = s.strip_prefix("psi:") {
            let h: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidCharacter(s.to_string()))?;
            return CharacterId::two_dim(n, h);
        }
        Err(Error::InvalidCharacter(s.to_string()))
    }
}

impl std::fmt::Display for CharacterId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exact character value chi(g) as an element of Q(zeta_n).
pub fn character_value(chi: &CharacterId, g: &GroupElement) -> Result<CycloPoly> {
    chi.validate()?;
    if chi.n != g.n {
        return Err(Error::ConductorMismatch(chi.n, g.n));
    }
    let n = chi.n;
    let sign = |b: bool| if b { 1 } else { -1 };
    let value = match chi.variant {
        CharVariant::Linear(i) => {
            let k_even = g.k % 2 == 0;
            let v: i64 = match (i, g.kind) {
                (1, _) => 1,
                (2, ElementKind::Rotation) => 1,
                (2, ElementKind::Reflection) => -1,
                (3, _) => sign(k_even),
                (4, ElementKind::Rotation) => sign(k_even),
                (4, ElementKind::Reflection) => sign(!k_even),
                _ => unreachable!("validated above"),
            };
            CycloPoly::from_integer(n, v)?
        }
        CharVariant::TwoDim(h) => match g.kind {
            ElementKind::Rotation => {
                let hk = (h * g.k) as i64;
                root_power(n, hk)?.add(&root_power(n, -hk)?)?
            }
            ElementKind::Reflection => CycloPoly::zero(n)?,
        },
    };
    Ok(value)
}

/// The full list of irreducible characters of D_n.
pub fn irreducible_characters(n: u64) -> Result<Vec<CharacterId>> {
    if n < 3 {
        return Err(Error::GroupTooSmall(n));
    }
    let mut out = Vec::new();
    let linear_count = if n % 2 == 0 { 4 } else { 2 };
    for i in 1..=linear_count {
        out.push(CharacterId::linear(n, i)?);
    }
    let h_max = if n % 2 == 0 { n / 2 - 1 } else { (n - 1) / 2 };
    for h in 1..=h_max {
        out.push(CharacterId::two_dim(n, h)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Rat;
    use num::{BigInt, One, Zero};

    #[test]
    fn elements_counts() {
        assert_eq!(elements(3).unwrap().len(), 6);
        assert_eq!(elements(4).unwrap().len(), 8);
        assert_eq!(elements(10).unwrap().len(), 20);
        assert!(elements(2).is_err());
    }

    #[test]
    fn embedding_examples() {
        let sigma = to_permutation(&GroupElement::rotation(4, 1));
        assert_eq!(sigma.one_line(), vec![2, 3, 4, 1]);
        let tau = to_permutation(&GroupElement::reflection(4, 0));
        assert_eq!(tau.one_line(), vec![4, 3, 2, 1]);
        let tau_sigma = to_permutation(&GroupElement::reflection(5, 1));
        assert_eq!(tau_sigma.one_line(), vec![4, 3, 2, 1, 5]);
    }

    #[test]
    fn cycle_type_examples() {
        let id = Permutation { image: (0..5).collect() };
        assert_eq!(cycle_type(&id).unwrap().lengths, vec![1, 1, 1, 1, 1]);
        let s2 = to_permutation(&GroupElement::rotation(10, 2));
        assert_eq!(cycle_type(&s2).unwrap().lengths, vec![5, 5]);
        let tau = to_permutation(&GroupElement::reflection(5, 0));
        assert_eq!(cycle_type(&tau).unwrap().lengths, vec![1, 2, 2]);
        let bad = Permutation { image: vec![0, 0, 1] };
        assert!(cycle_type(&bad).is_err());
    }

    #[test]
    fn rotation_cycle_types_follow_gcd() {
        for n in 3..=20u64 {
            for k in 0..n {
                let r = crate::numtheory::gcd(n, k);
                let t = cycle_type(&to_permutation(&GroupElement::rotation(n, k))).unwrap();
                assert_eq!(t.lengths, vec![n / r; r as usize], "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn even_reflections_split_by_parity() {
        for n in (4..=20u64).step_by(2) {
            let free: Vec<u64> = vec![2; (n / 2) as usize];
            let mut fixed: Vec<u64> = vec![1, 1];
            fixed.extend(vec![2; ((n - 2) / 2) as usize]);
            for k in 0..n {
                let t = cycle_type(&to_permutation(&GroupElement::reflection(n, k))).unwrap();
                // tau sigma^k fixes a point iff k is odd (tau itself is free)
                if k % 2 == 0 {
                    assert_eq!(t.lengths, free, "n = {n}, k = {k}");
                } else {
                    assert_eq!(t.lengths, fixed, "n = {n}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn embedding_is_homomorphism() {
        for n in 3..=8u64 {
            let els = elements(n).unwrap();
            for a in &els {
                for b in &els {
                    let prod = a.compose(b).unwrap();
                    let composed = to_permutation(a).compose(&to_permutation(b));
                    assert_eq!(to_permutation(&prod), composed, "n = {n}, a = {a}, b = {b}");
                }
            }
        }
    }

    #[test]
    fn character_value_examples() {
        let chi2 = CharacterId::linear(5, 2).unwrap();
        let g = GroupElement::reflection(5, 3);
        assert_eq!(
            character_value(&chi2, &g).unwrap().as_rational_integer().unwrap(),
            BigInt::from(-1)
        );
        let chi3 = CharacterId::linear(6, 3).unwrap();
        let g = GroupElement::rotation(6, 3);
        assert_eq!(
            character_value(&chi3, &g).unwrap().as_rational_integer().unwrap(),
            BigInt::from(-1)
        );
        let psi1 = CharacterId::two_dim(6, 1).unwrap();
        let g = GroupElement::rotation(6, 1);
        assert_eq!(
            character_value(&psi1, &g).unwrap().as_rational_integer().unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn invalid_characters_rejected() {
        assert!(CharacterId::linear(5, 3).is_err());
        assert!(CharacterId::linear(5, 4).is_err());
        assert!(CharacterId::two_dim(6, 3).is_err());
        assert!(CharacterId::two_dim(6, 0).is_err());
        assert!(CharacterId::linear(6, 5).is_err());
    }

    #[test]
    fn irreducible_character_lists() {
        let names = |n: u64| -> Vec<String> {
            irreducible_characters(n).unwrap().iter().map(|c| c.name()).collect()
        };
        assert_eq!(names(5), vec!["chi1", "chi2", "psi:1", "psi:2"]);
        assert_eq!(
            names(10),
            vec!["chi1", "chi2", "chi3", "chi4", "psi:1", "psi:2", "psi:3", "psi:4"]
        );
        assert_eq!(names(4), vec!["chi1", "chi2", "chi3", "chi4", "psi:1"]);
    }

    #[test]
    fn squared_degrees_sum_to_group_order() {
        for n in 3..=30u64 {
            let sum: u64 = irreducible_characters(n)
                .unwrap()
                .iter()
                .map(|c| c.degree() * c.degree())
                .sum();
            assert_eq!(sum, 2 * n, "n = {n}");
        }
    }

    #[test]
    fn character_orthogonality() {
        for n in 3..=12u64 {
            let chars = irreducible_characters(n).unwrap();
            let els = elements(n).unwrap();
            for (i, ci) in chars.iter().enumerate() {
                for (j, cj) in chars.iter().enumerate() {
                    let mut acc = crate::cyclo::CycloPoly::zero(n).unwrap();
                    for g in &els {
                        let prod = character_value(ci, g)
                            .unwrap()
                            .mul(&character_value(cj, g).unwrap())
                            .unwrap();
                        acc = acc.add(&prod).unwrap();
                    }
                    let scaled = acc.scale(&Rat::new(BigInt::one(), BigInt::from(2 * n)));
                    let val = scaled.as_rational_integer().unwrap();
                    let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(val, expect, "n = {n}, {} vs {}", ci.name(), cj.name());
                }
            }
        }
    }

    #[test]
    fn name_parse_roundtrip() {
        for n in [5u64, 6, 10] {
            for chi in irreducible_characters(n).unwrap() {
                assert_eq!(CharacterId::parse(n, &chi.name()).unwrap(), chi);
            }
        }
        assert!(CharacterId::parse(5, "chi3").is_err());
        assert!(CharacterId::parse(5, "psi:7").is_err());
        assert!(CharacterId::parse(5, "zeta").is_err());
    }
}
