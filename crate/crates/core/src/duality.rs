//! Classification into the five dual-type families, the dual weight system, the search
//! for duals by characteristic polynomial, and structural checks on dual pairs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::decomposition::{cyclo_decomposition, dual_decomposition, CyclotomicDecomposition};
use crate::error::{Error, Result};
use crate::family::{FamilyParams, TypeTag};
use crate::weights::{enumerate_regular, signature, SignatureData, WeightSystem};
use crate::PERMUTATIONS;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTypeData {
    pub family: FamilyParams,
    /// Family coordinate `j` carries the canonical (sorted) weight at index `perm[j]`.
    pub perm: [usize; 3],
    /// `W` in family order.
    pub family_weights: WeightSystem,
    /// `W*` in family order, from the family formula.
    pub dual_weights: WeightSystem,
}

impl DualTypeData {
    pub fn tag(&self) -> TypeTag {
        self.family.tag()
    }

    pub fn params(&self) -> Vec<u64> {
        self.family.params()
    }
}

/// All family matches of `W`, ordered by type and then by permutation.
pub fn classify(w: &WeightSystem) -> Result<Vec<DualTypeData>> {
    w.require_regular()?;
    let sorted = w.sorted_weights();
    let h = w.h();
    let mut out: Vec<DualTypeData> = Vec::new();
    for tag in TypeTag::ALL {
        for perm in PERMUTATIONS {
            let b = perm.map(|j| sorted[j]);
            for family in FamilyParams::solve(tag, b, h) {
                if out.iter().any(|d| d.family == family) {
                    continue;
                }
                let (dw, dh) = family.dual_weights();
                out.push(DualTypeData {
                    family,
                    perm,
                    family_weights: WeightSystem::new(b, h)?,
                    dual_weights: WeightSystem::new(dw, dh)?,
                });
            }
        }
    }
    Ok(out)
}

/// The first classification of `W`.
pub fn dual_type(w: &WeightSystem) -> Result<DualTypeData> {
    classify(w)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotDualType(format!("{w}")))
}

/// `W*` in canonical order, from the first family match.
pub fn dual_of(w: &WeightSystem) -> Result<WeightSystem> {
    Ok(dual_type(w)?.dual_weights.canonical())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSearchResult {
    /// Regular systems with the same `h` whose characteristic polynomial is `φ*_W`.
    pub candidates: Vec<WeightSystem>,
    pub classified_dual: Option<WeightSystem>,
}

/// Regular systems of one Coxeter number with their decompositions, reusable across
/// searches.
#[derive(Clone, Debug)]
pub struct PhiPool {
    h: u64,
    entries: Vec<(WeightSystem, CyclotomicDecomposition)>,
}

impl PhiPool {
    pub fn new(h: u64) -> Result<Self> {
        let entries = enumerate_regular(h)
            .into_iter()
            .map(|w| cyclo_decomposition(&w).map(|d| (w, d)))
            .collect::<Result<_>>()?;
        Ok(Self { h, entries })
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn matching(&self, target: &CyclotomicDecomposition) -> Vec<WeightSystem> {
        self.entries
            .iter()
            .filter(|(_, d)| d == target)
            .map(|(w, _)| *w)
            .collect()
    }
}

pub fn dual_search(w: &WeightSystem) -> Result<DualSearchResult> {
    dual_search_in(w, &PhiPool::new(w.h())?)
}

pub fn dual_search_in(w: &WeightSystem, pool: &PhiPool) -> Result<DualSearchResult> {
    if pool.h != w.h() {
        return Err(Error::CoxeterMismatch(w.h(), pool.h));
    }
    let target = dual_decomposition(&cyclo_decomposition(w)?);
    let candidates = pool.matching(&target);
    let classified_dual = match dual_of(w) {
        Ok(d) => Some(d),
        Err(Error::NotDualType(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(DualSearchResult {
        candidates,
        classified_dual,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<(String, bool)>,
}

impl VerificationReport {
    pub fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

/// A printed signature row with entries equal to 1 dropped, sorted.
pub fn effective_row(row: [u64; 3]) -> Vec<u64> {
    let mut v: Vec<u64> = row.into_iter().filter(|&a| a > 1).collect();
    v.sort_unstable();
    v
}

fn is_family_signature(s: &SignatureData, row: [u64; 3]) -> bool {
    s.genus == 0 && s.alphas.len() <= 3 && s.alphas == effective_row(row)
}

/// Involution, genus-0 signature matching the family row (for `W` and `W*`),
/// `φ_{W*} = φ*_W`, consistency across multiple family matches, and presence of `W*`
/// among the `φ*`-candidates.
pub fn check_dual_type_props(w: &WeightSystem) -> Result<VerificationReport> {
    check_dual_type_props_in(w, &PhiPool::new(w.h())?)
}

pub fn check_dual_type_props_in(w: &WeightSystem, pool: &PhiPool) -> Result<VerificationReport> {
    let matches = classify(w)?;
    let Some(t) = matches.first() else {
        return Err(Error::NotDualType(format!("{w}")));
    };
    let dual = t.dual_weights.canonical();
    let mut report = VerificationReport::default();

    let back = dual_of(&dual);
    report.push("(W*)* = W", matches!(back, Ok(ref b) if b == w));

    let sig = signature(w)?;
    report.push("signature of W is (0;α1,α2,α3)", sig.genus == 0 && sig.alphas.len() <= 3);
    report.push("signature of W matches the A_W row", is_family_signature(&sig, t.family.signature_row()));
    let dual_sig = signature(&dual)?;
    report.push(
        "signature of W* matches the A_W* row",
        is_family_signature(&dual_sig, t.family.dual_signature_row()),
    );

    let phi_dual = cyclo_decomposition(&dual)?;
    report.push("φ_{W*} = φ*_W", phi_dual == dual_decomposition(&cyclo_decomposition(w)?));

    report.push(
        "all family matches give the same W*",
        matches.iter().all(|m| m.dual_weights == t.dual_weights),
    );

    let search = dual_search_in(w, pool)?;
    report.push("W* is among the φ*-candidates", search.candidates.contains(&dual));
    Ok(report)
}

/// `B_W = A_{W*}`.
pub fn dual_signature(w: &WeightSystem) -> Result<SignatureData> {
    signature(&dual_of(w)?)
}

/// Regular systems with `h <= h_max` that have a `φ*`-matching partner but no family
/// match.
pub fn unclassified_phi_duals(h_max: u64) -> Result<Vec<WeightSystem>> {
    let mut out = Vec::new();
    for h in 2..=h_max {
        let pool = PhiPool::new(h)?;
        for (w, _) in &pool.entries {
            if !classify(w)?.is_empty() {
                continue;
            }
            if !dual_search_in(w, &pool)?.candidates.is_empty() {
                out.push(*w);
            }
        }
    }
    Ok(out)
}

/// All dual-type systems with `h <= h_max`, in catalog order.
pub fn dual_type_systems(h_max: u64) -> Result<Vec<WeightSystem>> {
    let mut out = Vec::new();
    for h in 2..=h_max {
        for w in enumerate_regular(h) {
            if !classify(&w)?.is_empty() {
                out.push(w);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(a: [u64; 3], h: u64) -> WeightSystem {
        WeightSystem::new(a, h).unwrap()
    }

    #[test]
    fn classify_exemplars() {
        let c = classify(&ws([6, 14, 21], 42)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].family, FamilyParams::I { p1: 2, p2: 3, p3: 7 });
        assert_eq!(c[0].family_weights.weights(), [21, 14, 6]);

        let c = classify(&ws([3, 4, 5], 13)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].family, FamilyParams::V { k: 2, l: 2, m: 3 });
        assert_eq!(c[0].family_weights.weights(), [4, 5, 3]);

        assert!(classify(&ws([1, 1, 1], 3)).unwrap().is_empty());
    }

    #[test]
    fn classify_is_permutation_stable() {
        let a = classify(&ws([3, 8, 12], 24)).unwrap();
        let b = classify(&ws([12, 3, 8], 24)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duals() {
        assert_eq!(dual_of(&ws([6, 14, 21], 42)).unwrap(), ws([6, 14, 21], 42));
        assert_eq!(dual_of(&ws([3, 8, 12], 24)).unwrap(), ws([6, 8, 9], 24));
        assert_eq!(dual_of(&ws([3, 4, 5], 13)).unwrap(), ws([3, 4, 5], 13));
        assert!(matches!(dual_of(&ws([1, 1, 1], 3)), Err(Error::NotDualType(_))));
    }

    #[test]
    fn search() {
        let r = dual_search(&ws([6, 14, 21], 42)).unwrap();
        assert!(r.candidates.contains(&ws([6, 14, 21], 42)));
        assert_eq!(r.classified_dual, Some(ws([6, 14, 21], 42)));
        let r = dual_search(&ws([3, 8, 12], 24)).unwrap();
        assert_eq!(r.classified_dual, Some(ws([6, 8, 9], 24)));
        assert!(r.candidates.contains(&ws([6, 8, 9], 24)));
        let r = dual_search(&ws([1, 1, 1], 3)).unwrap();
        assert_eq!(r.classified_dual, None);
    }

    #[test]
    fn props_and_dual_signatures() {
        for (w, b) in [
            (ws([6, 14, 21], 42), [2, 3, 7]),
            (ws([3, 8, 12], 24), [2, 3, 9]),
            (ws([3, 4, 5], 13), [3, 4, 5]),
        ] {
            let r = check_dual_type_props(&w).unwrap();
            assert!(r.passed(), "{w}: {:?}", r.failures());
            assert_eq!(dual_signature(&w).unwrap().alphas, b);
        }
        assert_eq!(signature(&ws([3, 8, 12], 24)).unwrap().alphas, [3, 3, 4]);
    }
}
