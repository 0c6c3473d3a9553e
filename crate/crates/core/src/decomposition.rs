//! The characteristic polynomial `φ_W = ∏ (λ - e[m_i/h])` as a root multiset, and its
//! decomposition `∏_{d | h} (λ^d - 1)^{e(d)}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::numtheory::{divisors, gcd, mobius};
use crate::error::{Error, Result};
use crate::weights::WeightSystem;

/// Multiplicities `c(j)` of the roots `e[j/h]`, indexed by residues `j mod h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMultiset {
    h: u64,
    mult: Vec<u64>,
}

impl RootMultiset {
    pub fn from_exponents(h: u64, exponents: &[i64]) -> Self {
        let mut mult = vec![0u64; h as usize];
        for &m in exponents {
            mult[m.rem_euclid(h as i64) as usize] += 1;
        }
        Self { h, mult }
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn multiplicity(&self, j: i64) -> u64 {
        self.mult[j.rem_euclid(self.h as i64) as usize]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn total(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// Whether `c(j)` depends only on `gcd(j, h)`, i.e. `φ_W` has rational coefficients.
    pub fn is_galois_closed(&self) -> bool {
        let h = self.h as i64;
        (0..h).all(|j| {
            let g = gcd(j, h);
            self.mult[j as usize] == self.mult[(g % h) as usize]
        })
    }

    /// `C(o)`: the common multiplicity of the roots of exact order `o`.
    fn by_order(&self, o: u64) -> u64 {
        // e[j/h] has order o exactly for j = h/o.
        self.mult[((self.h / o) % self.h) as usize]
    }
}

/// Sparse exponents `e(d)` for the divisors `d` of `h`; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicDecomposition {
    h: u64,
    e: BTreeMap<u64, i64>,
}

impl CyclotomicDecomposition {
    pub fn new(h: u64, entries: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut e = BTreeMap::new();
        for (d, x) in entries {
            if d == 0 || !h.is_multiple_of(d) {
                return Err(Error::InvalidInput(format!("{d} does not divide h = {h}")));
            }
            if x != 0 {
                *e.entry(d).or_insert(0) += x;
            }
        }
        e.retain(|_, x| *x != 0);
        Ok(Self { h, e })
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn exponent(&self, d: u64) -> i64 {
        self.e.get(&d).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.e.iter().map(|(&d, &x)| (d, x))
    }

    /// The classifying poset `M(W)`: divisors with nonzero exponent, ascending.
    pub fn classifying_poset(&self) -> Vec<u64> {
        self.e.keys().copied().collect()
    }

    /// `Σ e(d)·d`, the degree of `∏ (λ^d - 1)^{e(d)}`.
    pub fn degree(&self) -> i64 {
        self.e.iter().map(|(&d, &x)| d as i64 * x).sum()
    }

    /// Expands back to root multiplicities: `c(j) = Σ_{ord(j) | d} e(d)`.
    /// Fails if some multiplicity comes out negative.
    pub fn reconstruct(&self) -> Result<RootMultiset> {
        let h = self.h as i64;
        let mut mult = vec![0u64; self.h as usize];
        for j in 0..h {
            let order = (h / gcd(j, h)) as u64;
            let c: i64 = self
                .e
                .iter()
                .filter(|(&d, _)| d % order == 0)
                .map(|(_, &x)| x)
                .sum();
            if c < 0 {
                return Err(Error::Structural(format!(
                    "negative root multiplicity {c} at residue {j} mod {h}"
                )));
            }
            mult[j as usize] = c as u64;
        }
        Ok(RootMultiset { h: self.h, mult })
    }
}

pub fn root_multiset(w: &WeightSystem) -> Result<RootMultiset> {
    let data = w.require_regular()?;
    Ok(RootMultiset::from_exponents(w.h(), &data.exponents))
}

/// Möbius inversion over the divisor lattice of `h`:
/// `e(d) = Σ_{d | d' | h} μ(d'/d) · C(d')`.
pub fn decompose(roots: &RootMultiset) -> Result<CyclotomicDecomposition> {
    if !roots.is_galois_closed() {
        return Err(Error::Structural(format!(
            "root multiset mod {} is not Galois-closed; φ_W would not be rational",
            roots.h
        )));
    }
    let h = roots.h;
    let divs = divisors(h);
    let entries = divs.iter().map(|&d| {
        let e: i64 = divs
            .iter()
            .filter(|&&dp| dp % d == 0)
            .map(|&dp| mobius(dp / d) * roots.by_order(dp) as i64)
            .sum();
        (d, e)
    });
    let out = CyclotomicDecomposition::new(h, entries)?;
    let back = out.reconstruct()?;
    if &back != roots {
        return Err(Error::Structural(format!(
            "cyclotomic decomposition mod {h} does not reproduce the root multiset"
        )));
    }
    Ok(out)
}

pub fn cyclo_decomposition(w: &WeightSystem) -> Result<CyclotomicDecomposition> {
    decompose(&root_multiset(w)?)
}

/// `e*(i) = -e(h/i)` for every divisor `i` of `h`.
pub fn dual_decomposition(d: &CyclotomicDecomposition) -> CyclotomicDecomposition {
    CyclotomicDecomposition {
        h: d.h,
        e: d.e.iter().map(|(&i, &x)| (d.h / i, -x)).collect(),
    }
}
