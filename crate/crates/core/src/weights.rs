//! Weight systems `(a1, a2, a3; h)`, regularity and the invariants derived from `χ_W`.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use num_traits::{Signed, ToPrimitive};

use crate::arith::numtheory::{divisors, gcd, gcd_all};
use crate::arith::IntPolynomial;
use crate::error::{Error, Result};

/// Whether the stored weights are in the order the caller supplied or sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightOrder {
    User,
    Canonical,
}

/// A validated tuple `(a1, a2, a3; h)` with `1 <= a_i < h` and `gcd(a1, a2, a3, h) = 1`.
///
/// Equality, ordering and hashing use the canonical (ascending) weights, so two
/// permutations of the same tuple compare equal.
#[derive(Clone, Copy, Debug)]
pub struct WeightSystem {
    weights: [u64; 3],
    h: u64,
    order: WeightOrder,
}

impl WeightSystem {
    pub fn new(weights: [u64; 3], h: u64) -> Result<Self> {
        if h == 0 || weights.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "weights and Coxeter number must be positive, got {}",
                fmt_tuple(weights, h)
            )));
        }
        if let Some(a) = weights.iter().find(|&&a| a >= h) {
            return Err(Error::InvalidInput(format!(
                "weight {a} is not below h = {h}"
            )));
        }
        let g = gcd_all(&[weights[0] as i64, weights[1] as i64, weights[2] as i64, h as i64]);
        if g != 1 {
            return Err(Error::InvalidInput(format!(
                "gcd(a1, a2, a3; h) = {g} for {}",
                fmt_tuple(weights, h)
            )));
        }
        let mut sorted = weights;
        sorted.sort_unstable();
        let order = if sorted == weights {
            WeightOrder::Canonical
        } else {
            WeightOrder::User
        };
        Ok(Self { weights, h, order })
    }

    pub fn weights(&self) -> [u64; 3] {
        self.weights
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn order(&self) -> WeightOrder {
        self.order
    }

    /// Weights sorted ascending.
    pub fn sorted_weights(&self) -> [u64; 3] {
        let mut w = self.weights;
        w.sort_unstable();
        w
    }

    pub fn canonical(&self) -> Self {
        Self {
            weights: self.sorted_weights(),
            h: self.h,
            order: WeightOrder::Canonical,
        }
    }

    /// Reorders the weights: entry `j` of the result is `weights[perm[j]]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let w = [self.weights[perm[0]], self.weights[perm[1]], self.weights[perm[2]]];
        let mut out = Self { weights: w, h: self.h, order: WeightOrder::User };
        if out.sorted_weights() == w {
            out.order = WeightOrder::Canonical;
        }
        out
    }

    pub fn epsilon(&self) -> i64 {
        self.weights.iter().map(|&a| a as i64).sum::<i64>() - self.h as i64
    }

    /// Stable catalog key `a1,a2,a3;h` over the sorted weights.
    pub fn key(&self) -> alloc::string::String {
        let [a, b, c] = self.sorted_weights();
        format!("{a},{b},{c};{}", self.h)
    }

    /// Full invariants when regular, `None` otherwise.
    pub fn exponent_data(&self) -> Result<Option<ExponentData>> {
        exponent_data_of(self)
    }

    /// Exponent data, or a `NotRegular` error.
    pub fn require_regular(&self) -> Result<ExponentData> {
        self.exponent_data()?
            .ok_or_else(|| Error::NotRegular(fmt_tuple(self.weights, self.h)))
    }
}

impl PartialEq for WeightSystem {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.sorted_weights() == other.sorted_weights()
    }
}

impl Eq for WeightSystem {}

impl Hash for WeightSystem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.h.hash(state);
        self.sorted_weights().hash(state);
    }
}

impl PartialOrd for WeightSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeightSystem {
    /// `h` ascending, then sorted weights lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.h, self.sorted_weights()).cmp(&(other.h, other.sorted_weights()))
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tuple(self.weights, self.h))
    }
}

pub(crate) fn fmt_tuple(w: [u64; 3], h: u64) -> alloc::string::String {
    format!("{},{},{};{}", w[0], w[1], w[2], h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentData {
    /// `χ_W(T) = ∏ (1 - T^{h-a_i}) / (1 - T^{a_i})`.
    pub chi: IntPolynomial,
    pub mu: u64,
    pub epsilon: i64,
    /// `m_1 <= … <= m_μ` with `Σ T^{m_i} = T^{ε} χ_W(T)`.
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureData {
    pub genus: u64,
    /// Sorted ascending, every entry `>= 2`.
    pub alphas: Vec<u64>,
}

impl fmt::Display for SignatureData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.genus)?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

fn exponent_data_of(w: &WeightSystem) -> Result<Option<ExponentData>> {
    let h = w.h as usize;
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for &a in &w.weights {
        num = &num * &IntPolynomial::one_minus_power(h - a as usize);
        den = &den * &IntPolynomial::one_minus_power(a as usize);
    }
    let Some(chi) = num.exact_div(&den) else {
        return Ok(None);
    };
    let epsilon = w.epsilon();
    let mut exponents = Vec::new();
    for (deg, c) in chi.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(Error::Structural(format!(
                "χ_W of ({w}) has a negative coefficient at T^{deg}"
            )));
        }
        let mult = c.to_usize().expect("coefficient fits in usize");
        exponents.extend(core::iter::repeat_n(epsilon + deg as i64, mult));
    }
    let mu = exponents.len() as u64;
    Ok(Some(ExponentData { chi, mu, epsilon, exponents }))
}

/// Regularity test by exact polynomial division. Malformed tuples are errors;
/// a well-formed non-regular tuple yields `Ok(None)`.
pub fn is_regular(a1: u64, a2: u64, a3: u64, h: u64) -> Result<Option<ExponentData>> {
    WeightSystem::new([a1, a2, a3], h)?.exponent_data()
}

/// Independent regularity criterion: for every `d >= 2` the cyclotomic factor `Φ_d`
/// occurs in `∏(1 - T^{h-a_i})` at least as often as in `∏(1 - T^{a_i})`.
pub fn chi_is_polynomial_by_roots(weights: [u64; 3], h: u64) -> bool {
    let mut candidates: Vec<u64> = weights.iter().flat_map(|&a| divisors(a)).collect();
    candidates.sort_unstable();
    candidates.dedup();
    candidates.into_iter().filter(|&d| d >= 2).all(|d| {
        let den = weights.iter().filter(|&&a| a % d == 0).count();
        let num = weights.iter().filter(|&&a| (h - a).is_multiple_of(d)).count();
        num >= den
    })
}

pub fn genus(w: &WeightSystem) -> Result<u64> {
    let data = w.require_regular()?;
    Ok(data.exponents.iter().filter(|&&m| m == 0).count() as u64)
}

/// `#{(u, v) in Z≥0² : ai·u + aj·v = h}` by direct enumeration.
pub fn pair_count(ai: u64, aj: u64, h: u64) -> u64 {
    assert!(ai > 0 && aj > 0, "weights must be positive");
    (0..=h / ai).filter(|&u| (h - ai * u).is_multiple_of(aj)).count() as u64
}

pub fn signature(w: &WeightSystem) -> Result<SignatureData> {
    let g = genus(w)?;
    let a = w.weights;
    let h = w.h;
    let mut multiset: Vec<u64> = a.iter().copied().filter(|&ai| !h.is_multiple_of(ai)).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let m = pair_count(a[i], a[j], h);
            let d = gcd(a[i] as i64, a[j] as i64) as u64;
            // m = 0 contributes nothing.
            multiset.extend(core::iter::repeat_n(d, m.saturating_sub(1) as usize));
        }
    }
    multiset.retain(|&x| x > 1);
    multiset.sort_unstable();
    Ok(SignatureData { genus: g, alphas: multiset })
}

/// All regular systems with Coxeter number `h` and sorted weights `a1 <= a2 <= a3 < h`,
/// ordered lexicographically.
pub fn enumerate_regular(h: u64) -> Vec<WeightSystem> {
    let mut out = Vec::new();
    for a1 in 1..h {
        for a2 in a1..h {
            for a3 in a2..h {
                if gcd_all(&[a1 as i64, a2 as i64, a3 as i64, h as i64]) != 1 {
                    continue;
                }
                if !chi_is_polynomial_by_roots([a1, a2, a3], h) {
                    continue;
                }
                let w = WeightSystem::new([a1, a2, a3], h).expect("validated above");
                if matches!(w.exponent_data(), Ok(Some(_))) {
                    out.push(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ws(a: [u64; 3], h: u64) -> WeightSystem {
        WeightSystem::new(a, h).unwrap()
    }

    #[test]
    fn a1_is_regular() {
        let d = is_regular(1, 1, 1, 2).unwrap().unwrap();
        assert_eq!(d.chi, IntPolynomial::one());
        assert_eq!((d.mu, d.epsilon), (1, 1));
        assert_eq!(d.exponents, [1]);
    }

    #[test]
    fn e12_exponents() {
        let d = is_regular(6, 14, 21, 42).unwrap().unwrap();
        assert_eq!(d.mu, 12);
        assert_eq!(d.epsilon, -1);
        assert_eq!(d.exponents, [-1, 5, 11, 13, 17, 19, 23, 25, 29, 31, 37, 43]);
        // χ = (1+T^14)(1+T^6+…+T^30), expanded independently.
        let a = IntPolynomial::from_i64s(&{
            let mut v = vec![0; 15];
            v[0] = 1;
            v[14] = 1;
            v
        });
        let b = IntPolynomial::from_i64s(&{
            let mut v = vec![0; 31];
            for k in (0..=30).step_by(6) {
                v[k] = 1;
            }
            v
        });
        assert_eq!(d.chi, &a * &b);
    }

    #[test]
    fn non_regular_and_invalid() {
        assert_eq!(is_regular(2, 2, 3, 7).unwrap(), None);
        assert!(matches!(is_regular(0, 1, 1, 2), Err(Error::InvalidInput(_))));
        assert!(matches!(is_regular(2, 2, 2, 4), Err(Error::InvalidInput(_))));
        assert!(matches!(is_regular(1, 2, 5, 5), Err(Error::InvalidInput(_))));
        assert!(matches!(genus(&ws([2, 2, 3], 7)), Err(Error::NotRegular(_))));
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(&ws([6, 14, 21], 42)).unwrap(), 0);
        assert_eq!(genus(&ws([1, 1, 1], 2)).unwrap(), 0);
        assert_eq!(genus(&ws([1, 1, 1], 3)).unwrap(), 1);
        assert_eq!(
            ws([1, 1, 1], 3).exponent_data().unwrap().unwrap().exponents,
            [0, 1, 1, 1, 2, 2, 2, 3]
        );
    }

    #[test]
    fn pair_counts() {
        assert_eq!(pair_count(6, 14, 42), 2);
        assert_eq!(pair_count(1, 1, 3), 4);
        assert_eq!(pair_count(2, 3, 1), 0);
    }

    #[test]
    fn signatures() {
        let s = signature(&ws([6, 14, 21], 42)).unwrap();
        assert_eq!((s.genus, s.alphas.as_slice()), (0, &[2, 3, 7][..]));
        let s = signature(&ws([15, 10, 6], 30)).unwrap();
        assert_eq!((s.genus, s.alphas.as_slice()), (0, &[2, 3, 5][..]));
        let s = signature(&ws([1, 1, 1], 3)).unwrap();
        assert_eq!((s.genus, s.alphas.len()), (1, 0));
        assert_eq!(alloc::format!("{}", signature(&ws([6, 14, 21], 42)).unwrap()), "(0;2,3,7)");
    }

    #[test]
    fn signature_is_permutation_invariant() {
        for h in 2..=24 {
            for w in enumerate_regular(h) {
                let base = signature(&w).unwrap();
                for perm in crate::PERMUTATIONS {
                    assert_eq!(signature(&w.permuted(perm)).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_regular(2), [ws([1, 1, 1], 2)]);
        let h3 = enumerate_regular(3);
        assert!(h3.contains(&ws([1, 1, 1], 3)));
        assert!(h3.contains(&ws([1, 1, 2], 3)));
        assert!(is_regular(1, 2, 2, 3).unwrap().is_none());
        assert!(!h3.iter().any(|w| w.sorted_weights() == [1, 2, 2]));
        let h4 = enumerate_regular(4);
        let a3 = h4.iter().find(|w| w.sorted_weights() == [1, 2, 2]).unwrap();
        assert_eq!(a3.exponent_data().unwrap().unwrap().chi, IntPolynomial::from_i64s(&[1, 1, 1]));
    }

    #[test]
    fn root_criterion_agrees_with_division() {
        for h in 2..=30u64 {
            for a1 in 1..h {
                for a2 in a1..h {
                    for a3 in a2..h {
                        let Ok(w) = WeightSystem::new([a1, a2, a3], h) else { continue };
                        let by_division = w.exponent_data().unwrap().is_some();
                        assert_eq!(chi_is_polynomial_by_roots([a1, a2, a3], h), by_division, "{w}");
                    }
                }
            }
        }
    }

    #[test]
    fn equality_ignores_order() {
        assert_eq!(ws([21, 14, 6], 42), ws([6, 14, 21], 42));
        assert_eq!(ws([21, 14, 6], 42).order(), WeightOrder::User);
        assert_eq!(ws([21, 14, 6], 42).canonical().weights(), [6, 14, 21]);
        assert_eq!(ws([21, 14, 6], 42).key(), "6,14,21;42");
    }
}
