//! The five parametric families of dual-type weight systems (Types I–V) and the data
//! attached to each: weights and dual weights, signature rows, principal generators,
//! generator monomials and the relation `f_W`.
//!
//! Everything here is in *family coordinates*: `X1, X2, X3` and the letters `x, y, z`
//! are ordered as in the family tables, which generally differs from sorted weights.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::numtheory::{divisors, gcd, gcd_all};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeTag {
    I,
    II,
    III,
    IV,
    V,
}

impl TypeTag {
    pub const ALL: [TypeTag; 5] = [TypeTag::I, TypeTag::II, TypeTag::III, TypeTag::IV, TypeTag::V];

    pub fn as_str(self) -> &'static str {
        match self {
            TypeTag::I => "I",
            TypeTag::II => "II",
            TypeTag::III => "III",
            TypeTag::IV => "IV",
            TypeTag::V => "V",
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Family parameters. Symmetric parametrizations are normalized: Type I has
/// `p1 < p2 < p3`, Type III has `q2 <= q3`, Type V uses the lexicographically least
/// cyclic rotation of `(k, l, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyParams {
    I { p1: u64, p2: u64, p3: u64 },
    II { p1: u64, p2: u64, p3: u64 },
    III { p1: u64, p2: u64, q2: u64, q3: u64 },
    IV { p1: u64, p2: u64, p3: u64 },
    V { k: u64, l: u64, m: u64 },
}

/// Exponent vector over three variables.
pub type Exp3 = [u32; 3];

fn coprime(a: u64, b: u64) -> bool {
    gcd(a as i64, b as i64) == 1
}

fn exact(a: u64, b: u64) -> Option<u64> {
    (b != 0 && a.is_multiple_of(b)).then(|| a / b)
}

impl FamilyParams {
    pub fn tag(&self) -> TypeTag {
        match self {
            FamilyParams::I { .. } => TypeTag::I,
            FamilyParams::II { .. } => TypeTag::II,
            FamilyParams::III { .. } => TypeTag::III,
            FamilyParams::IV { .. } => TypeTag::IV,
            FamilyParams::V { .. } => TypeTag::V,
        }
    }

    pub fn params(&self) -> Vec<u64> {
        match *self {
            FamilyParams::I { p1, p2, p3 }
            | FamilyParams::II { p1, p2, p3 }
            | FamilyParams::IV { p1, p2, p3 } => vec![p1, p2, p3],
            FamilyParams::III { p1, p2, q2, q3 } => vec![p1, p2, q2, q3],
            FamilyParams::V { k, l, m } => vec![k, l, m],
        }
    }

    /// `(a1, a2, a3; h)` in family order. Callers must have checked the side conditions.
    pub fn weights(&self) -> ([u64; 3], u64) {
        match *self {
            FamilyParams::I { p1, p2, p3 } => ([p2 * p3, p3 * p1, p1 * p2], p1 * p2 * p3),
            FamilyParams::II { p1, p2, p3 } => ([p3, p1 * p3 / p2, (p2 - 1) * p1], p1 * p3),
            FamilyParams::III { p1, p2, q2, q3 } => ([p2, p1 * q2, p1 * q3], p1 * p2),
            FamilyParams::IV { p1, p2, p3 } => {
                ([p3 / p1, (p1 - 1) * p3 / p2, p2 - p1 + 1], p3)
            }
            FamilyParams::V { k, l, m } => {
                ([l * m - m + 1, m * k - k + 1, k * l - l + 1], k * l * m + 1)
            }
        }
    }

    /// `W*` in family order, as printed in the family table.
    pub fn dual_weights(&self) -> ([u64; 3], u64) {
        match *self {
            FamilyParams::I { .. } | FamilyParams::III { .. } => self.weights(),
            FamilyParams::II { p1, p2, p3 } => ([p3, p1 * p2, (p3 / p2 - 1) * p1], p1 * p3),
            FamilyParams::IV { p1, p2, p3 } => {
                ([p2, (p3 / p2 - 1) * p1, p3 / p1 - p3 / p2 + 1], p3)
            }
            FamilyParams::V { k, l, m } => {
                ([l * m - l + 1, m * k - m + 1, k * l - k + 1], k * l * m + 1)
            }
        }
    }

    /// The printed `A_W` row (entries may be 1 in degenerate members).
    pub fn signature_row(&self) -> [u64; 3] {
        match *self {
            FamilyParams::I { p1, p2, p3 } => [p1, p2, p3],
            FamilyParams::II { p1, p2, p3 } => [p1, p3 / p2, (p2 - 1) * p1],
            FamilyParams::III { p1, q2, q3, .. } => [p1, p1 * q2, p1 * q3],
            FamilyParams::IV { p1, p2, p3 } => [p3 / p2, (p1 - 1) * p3 / p2, p2 - p1 + 1],
            FamilyParams::V { k, l, m } => [l * m - m + 1, m * k - k + 1, k * l - l + 1],
        }
    }

    /// The printed `A_{W*}` row.
    pub fn dual_signature_row(&self) -> [u64; 3] {
        match *self {
            FamilyParams::I { .. } | FamilyParams::III { .. } => self.signature_row(),
            FamilyParams::II { p1, p2, p3 } => [p1, p2, (p3 / p2 - 1) * p1],
            FamilyParams::IV { p1, p2, p3 } => {
                [p1, (p3 / p2 - 1) * p1, p3 / p1 - p3 / p2 + 1]
            }
            FamilyParams::V { k, l, m } => [l * m - l + 1, m * k - m + 1, k * l - k + 1],
        }
    }

    /// Coefficients of the principal generators `l1, l2, l3` over `X1, X2, X3`.
    ///
    /// Type IV follows the family table (`l3 = X1 + X2`, matching `z = X1 X2`).
    pub fn principal_generators(&self) -> [[i64; 3]; 3] {
        match *self {
            FamilyParams::I { .. } => [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            FamilyParams::II { p1, .. } => [[1, 0, 1], [0, 0, p1 as i64], [0, 1, 0]],
            FamilyParams::III { p1, .. } => [[1, 1, 1], [0, 0, p1 as i64], [0, p1 as i64, 0]],
            FamilyParams::IV { p1, p2, p3 } => {
                [[0, (p3 / p2) as i64, 1], [0, 0, p1 as i64], [1, 1, 0]]
            }
            FamilyParams::V { k, l, m } => {
                [[0, 1, l as i64], [1, k as i64, 0], [m as i64, 0, 1]]
            }
        }
    }

    /// The monomials `x, y, z` in `X1, X2, X3`.
    pub fn generator_monomials(&self) -> [Exp3; 3] {
        self.principal_generators()
            .map(|l| l.map(|c| u32::try_from(c).expect("principal generators are effective")))
    }

    /// Terms of `f_W(x, y, z)` as letter exponent vectors; every coefficient is 1.
    pub fn relation_terms(&self) -> Vec<Exp3> {
        let c = |v: u64| v as u32;
        match *self {
            FamilyParams::I { p1, p2, p3 } => vec![[c(p1), 0, 0], [0, c(p2), 0], [0, 0, c(p3)]],
            FamilyParams::II { p1, p2, p3 } => {
                vec![[c(p1), 0, 0], [0, c(p2), 0], [0, 1, c(p3 / p2)]]
            }
            FamilyParams::III { p1, q2, q3, .. } => {
                vec![[c(p1), 0, 0], [0, c(q3 + 1), 1], [0, 1, c(q2 + 1)]]
            }
            FamilyParams::IV { p1, p2, p3 } => {
                vec![[c(p1), 0, 0], [1, c(p2 / p1), 0], [0, 1, c(p3 / p2)]]
            }
            FamilyParams::V { k, l, m } => vec![[c(k), 0, 1], [1, c(m), 0], [0, 1, c(l)]],
        }
    }

    /// Every printed side condition of the family, plus well-formedness of the weights.
    pub fn side_conditions_hold(&self) -> bool {
        let structural = match *self {
            FamilyParams::I { p1, p2, p3 } => {
                p1 >= 2 && p2 >= 2 && p3 >= 2 && coprime(p1, p2) && coprime(p2, p3) && coprime(p3, p1)
            }
            FamilyParams::II { p1, p2, p3 } => {
                p1 >= 1
                    && p2 >= 2
                    && p2 != p3
                    && p3 % p2 == 0
                    && (p1 * p3) % p2 == 0
                    && coprime(p1, p3)
                    && coprime(p2 - 1, p3)
                    && coprime(p3 / p2 - 1, p3)
            }
            FamilyParams::III { p1, p2, q2, q3 } => {
                p1 >= 1
                    && q2 >= 1
                    && q3 >= 1
                    && coprime(p1, p2)
                    && p2 + 1 == (q2 + 1) * (q3 + 1)
                    && coprime(q2, q3)
            }
            FamilyParams::IV { p1, p2, p3 } => {
                p1 >= 2
                    && p1 != p2
                    && p2 != p3
                    && p2 % p1 == 0
                    && p3 % p2 == 0
                    && coprime(p1 - 1, p2)
                    && coprime(p2 - p1 + 1, p3)
                    && coprime(p3 / p2 - 1, p3 / p1)
                    && coprime(p3 / p1 - p3 / p2 + 1, p3)
            }
            FamilyParams::V { k, l, m } => {
                k >= 1 && l >= 1 && m >= 1 && {
                    let h = k * l * m + 1;
                    // The printed conditions cover W only; W* is the member (m, l, k)
                    // and needs the same.
                    [l * m - m + 1, m * k - k + 1, k * l - l + 1]
                        .into_iter()
                        .chain([l * m - l + 1, m * k - m + 1, k * l - k + 1])
                        .all(|a| coprime(a, h))
                }
            }
        };
        structural && {
            let (w, h) = self.weights();
            let (d, hd) = self.dual_weights();
            let valid = |a: &[u64; 3]| {
                a.iter().all(|&x| x >= 1 && x < h) && gcd_all(&[a[0] as i64, a[1] as i64, a[2] as i64, h as i64]) == 1
            };
            h == hd && valid(&w) && valid(&d)
        }
    }

    fn is_normalized(&self) -> bool {
        match *self {
            FamilyParams::I { p1, p2, p3 } => p1 < p2 && p2 < p3,
            FamilyParams::III { q2, q3, .. } => q2 <= q3,
            FamilyParams::V { k, l, m } => (k, l, m) <= (l, m, k) && (k, l, m) <= (m, k, l),
            _ => true,
        }
    }

    /// Solves the family equations of `tag` for weights given in family order.
    /// Returns parameters only if they reproduce `(b; h)` exactly, satisfy every side
    /// condition, and are in normalized form.
    pub fn solve(tag: TypeTag, b: [u64; 3], h: u64) -> Vec<FamilyParams> {
        let candidates: Vec<FamilyParams> = match tag {
            TypeTag::I => (|| {
                let p = [exact(h, b[0])?, exact(h, b[1])?, exact(h, b[2])?];
                Some(vec![FamilyParams::I { p1: p[0], p2: p[1], p3: p[2] }])
            })()
            .unwrap_or_default(),
            TypeTag::II => (|| {
                let p3 = b[0];
                let p1 = exact(h, p3)?;
                let p2 = exact(b[2], p1)? + 1;
                Some(vec![FamilyParams::II { p1, p2, p3 }])
            })()
            .unwrap_or_default(),
            TypeTag::III => (|| {
                let p2 = b[0];
                let p1 = exact(h, p2)?;
                let q2 = exact(b[1], p1)?;
                let q3 = exact(b[2], p1)?;
                Some(vec![FamilyParams::III { p1, p2, q2, q3 }])
            })()
            .unwrap_or_default(),
            TypeTag::IV => (|| {
                let p3 = h;
                let p1 = exact(h, b[0])?;
                let p2 = b[2] + p1 - 1;
                Some(vec![FamilyParams::IV { p1, p2, p3 }])
            })()
            .unwrap_or_default(),
            TypeTag::V => {
                // Brute force over k·l·m = h - 1.
                let n = h.saturating_sub(1);
                let mut out = Vec::new();
                if n >= 1 {
                    for k in divisors(n) {
                        for l in divisors(n / k) {
                            let m = n / k / l;
                            out.push(FamilyParams::V { k, l, m });
                        }
                    }
                }
                out
            }
        };
        candidates
            .into_iter()
            .filter(|p| p.is_normalized() && p.side_conditions_hold() && p.weights() == (b, h))
            .collect()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.tag())?;
        for (i, p) in self.params().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exemplar_weights() {
        assert_eq!(FamilyParams::I { p1: 2, p2: 3, p3: 5 }.weights(), ([15, 10, 6], 30));
        assert_eq!(FamilyParams::I { p1: 2, p2: 3, p3: 7 }.weights(), ([21, 14, 6], 42));
        let ii = FamilyParams::II { p1: 3, p2: 2, p3: 8 };
        assert_eq!(ii.weights(), ([8, 12, 3], 24));
        assert_eq!(ii.dual_weights(), ([8, 6, 9], 24));
        assert_eq!(ii.signature_row(), [3, 4, 3]);
        assert_eq!(ii.dual_signature_row(), [3, 2, 9]);
        assert_eq!(FamilyParams::III { p1: 2, p2: 5, q2: 1, q3: 2 }.weights(), ([5, 2, 4], 10));
        assert_eq!(FamilyParams::IV { p1: 2, p2: 4, p3: 8 }.weights(), ([4, 2, 3], 8));
        let v = FamilyParams::V { k: 2, l: 2, m: 3 };
        assert_eq!(v.weights(), ([4, 5, 3], 13));
        assert_eq!(v.dual_weights(), ([5, 4, 3], 13));
    }

    #[test]
    fn all_exemplars_satisfy_side_conditions() {
        for p in [
            FamilyParams::I { p1: 2, p2: 3, p3: 5 },
            FamilyParams::I { p1: 2, p2: 3, p3: 7 },
            FamilyParams::II { p1: 3, p2: 2, p3: 8 },
            FamilyParams::III { p1: 2, p2: 5, q2: 1, q3: 2 },
            FamilyParams::IV { p1: 2, p2: 4, p3: 8 },
            FamilyParams::V { k: 2, l: 2, m: 3 },
        ] {
            assert!(p.side_conditions_hold(), "{p}");
        }
        assert!(!FamilyParams::I { p1: 2, p2: 4, p3: 7 }.side_conditions_hold());
        // W = (9,7,4;25) meets the conditions on W, but W* = (10,5,5;25) is not valid.
        assert!(!FamilyParams::V { k: 2, l: 3, m: 4 }.side_conditions_hold());
    }

    #[test]
    fn solving_recovers_parameters() {
        assert_eq!(
            FamilyParams::solve(TypeTag::I, [21, 14, 6], 42),
            [FamilyParams::I { p1: 2, p2: 3, p3: 7 }]
        );
        // Non-normalized ordering of a symmetric family is rejected.
        assert!(FamilyParams::solve(TypeTag::I, [6, 14, 21], 42).is_empty());
        assert_eq!(
            FamilyParams::solve(TypeTag::II, [8, 12, 3], 24),
            [FamilyParams::II { p1: 3, p2: 2, p3: 8 }]
        );
        assert_eq!(
            FamilyParams::solve(TypeTag::V, [4, 5, 3], 13),
            [FamilyParams::V { k: 2, l: 2, m: 3 }]
        );
        assert_eq!(
            FamilyParams::solve(TypeTag::V, [1, 1, 1], 2),
            [FamilyParams::V { k: 1, l: 1, m: 1 }]
        );
    }

    #[test]
    fn generators_match_principal_generators() {
        let v = FamilyParams::V { k: 2, l: 2, m: 3 };
        assert_eq!(v.principal_generators(), [[0, 1, 2], [1, 2, 0], [3, 0, 1]]);
        assert_eq!(v.generator_monomials(), [[0, 1, 2], [1, 2, 0], [3, 0, 1]]);
        assert_eq!(
            FamilyParams::II { p1: 3, p2: 2, p3: 8 }.principal_generators(),
            [[1, 0, 1], [0, 0, 3], [0, 1, 0]]
        );
    }
}
