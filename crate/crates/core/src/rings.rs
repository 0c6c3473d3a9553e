//! Graded pieces of `R_A = k[X1, X2, X3]/(X1^{α1} + X2^{α2} + X3^{α3})`, the subring
//! generated by the family monomials `x, y, z`, and numerical checks of its
//! presentation, of the Milnor algebra of `f_W`, and of the exceptional-collection count.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::linalg::rank_with_bound;
use crate::arith::{IntPolynomial, MultiPolynomial, Rational};
use crate::duality::{dual_type, DualTypeData};
use crate::error::{Error, Result};
use crate::family::Exp3;
use crate::lattice::{omega, GradingLattice, LatticeElement, PrincipalData};
use crate::weights::{signature, WeightSystem};

/// Normal-form monomials `X^b` (with `b1 < α1`) of class `v`.
pub fn normal_monomials(lat: &GradingLattice, v: &LatticeElement) -> Result<Vec<Exp3>> {
    if lat.arity() != 3 {
        return Err(Error::Unsupported(format!(
            "graded pieces need three generators, got {}",
            lat.arity()
        )));
    }
    let target = lat.degree(v);
    let g = lat.generator_degrees();
    let a1 = lat.alphas()[0] as i64;
    let mut out = Vec::new();
    if target < 0 {
        return Ok(out);
    }
    let mut b1 = 0;
    while b1 < a1 && b1 * g[0] <= target {
        let mut b2 = 0;
        while b1 * g[0] + b2 * g[1] <= target {
            let rest = target - b1 * g[0] - b2 * g[1];
            if rest % g[2] == 0 {
                let b = [b1, b2, rest / g[2]];
                if lat.element(&b) == *v {
                    out.push(b.map(|x| x as u32));
                }
            }
            b2 += 1;
        }
        b1 += 1;
    }
    Ok(out)
}

pub fn graded_dim(lat: &GradingLattice, v: &LatticeElement) -> Result<u64> {
    Ok(normal_monomials(lat, v)?.len() as u64)
}

/// First `n + 1` coefficients of `(1 - T^h) / ∏ (1 - T^{a_i})`.
pub fn hilbert_target(w: &WeightSystem, n: usize) -> Vec<u64> {
    let mut den = IntPolynomial::one();
    for &a in &w.weights() {
        den = &den * &IntPolynomial::one_minus_power(a as usize);
    }
    IntPolynomial::one_minus_power(w.h() as usize)
        .series_div(&den, n + 1)
        .iter()
        .map(|c| c.to_u64().expect("Hilbert coefficients are nonnegative"))
        .collect()
}

/// Letter monomials `x^i y^j z^k` of weighted degree `d`.
pub fn letter_monomials(degrees: [u64; 3], d: i64) -> Vec<Exp3> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let d = d as u64;
    for i in 0..=d / degrees[0] {
        let r1 = d - i * degrees[0];
        for j in 0..=r1 / degrees[1] {
            let r2 = r1 - j * degrees[1];
            if r2.is_multiple_of(degrees[2]) {
                out.push([i as u32, j as u32, (r2 / degrees[2]) as u32]);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub alphas: [u64; 3],
    /// `X1^{α1} + X2^{α2} + X3^{α3}`.
    pub relation: MultiPolynomial,
    /// Images of `x, y, z` as exponent vectors in `X1, X2, X3`.
    pub gens: [Exp3; 3],
    /// `f_W` in the letters `x, y, z`.
    pub fw: MultiPolynomial,
    pub letter_degrees: [u64; 3],
    /// Set when the letter degrees are not the printed weight order.
    pub letters_permuted: bool,
    pub h: u64,
}

fn mono(e: Exp3) -> MultiPolynomial {
    MultiPolynomial::monomial(e.to_vec(), Rational::one())
}

impl RingPresentation {
    pub fn new(t: &DualTypeData, p: &PrincipalData) -> Result<Self> {
        let alphas = t.family.signature_row();
        let relation = MultiPolynomial::from_terms(
            3,
            (0..3).map(|i| {
                let mut e = vec![0u32; 3];
                e[i] = alphas[i] as u32;
                (e, Rational::one())
            }),
        );
        let fw = MultiPolynomial::from_terms(
            3,
            t.family.relation_terms().into_iter().map(|e| (e.to_vec(), Rational::one())),
        );
        let out = Self {
            alphas,
            relation,
            gens: t.family.generator_monomials(),
            fw,
            letter_degrees: p.weights,
            letters_permuted: p.assignment_permuted,
            h: t.family_weights.h(),
        };
        let degs = out.letter_degrees.map(|a| a as i64);
        if out.fw.homogeneous_degree(&degs) != Some(out.h as i64) {
            return Err(Error::Verification(format!(
                "f_W = {} is not homogeneous of degree {} for letter degrees {:?}",
                out.fw, out.h, out.letter_degrees
            )));
        }
        for i in 0..3 {
            let class = p.lattice.element(&out.gens[i].map(i64::from));
            if class != p.lattice.scale(out.letter_degrees[i] as i64, &p.omega) {
                return Err(Error::Verification(format!(
                    "generator {} is not of class a·ω_W",
                    ["x", "y", "z"][i]
                )));
            }
        }
        Ok(out)
    }

    fn gen_images(&self) -> Vec<MultiPolynomial> {
        self.gens.iter().map(|&g| mono(g)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub vanishes: bool,
    /// `f_W(x, y, z) = factor · relation`, when the quotient is a single monomial.
    pub factor: Option<Exp3>,
}

/// `f_W(x, y, z)` reduced modulo the relation by eliminating `X1^{α1}`.
pub fn relation_check(p: &RingPresentation) -> RelationCheck {
    let substituted = p.fw.substitute(&p.gen_images());
    let (q, r) = substituted.div_rem_in(0, &p.relation);
    let factor = q
        .as_monomial()
        .filter(|(_, c)| c.is_one())
        .map(|(e, _)| [e[0], e[1], e[2]]);
    RelationCheck {
        vanishes: r.is_zero(),
        factor,
    }
}

fn binomial_row(q: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for s in 1..=q {
        let next = &row[s as usize - 1] * BigInt::from(q - s + 1) / BigInt::from(s);
        row.push(next);
    }
    row
}

/// Normal form of `X^b` modulo the relation:
/// `X1^{qα1 + r} = X1^r (-X2^{α2} - X3^{α3})^q`.
pub fn monomial_normal_form(alphas: [u64; 3], b: Exp3) -> Vec<(Exp3, BigInt)> {
    let a1 = alphas[0] as u32;
    let (q, r) = (b[0] / a1, b[0] % a1);
    let sign = if q % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    binomial_row(q)
        .into_iter()
        .enumerate()
        .map(|(s, c)| {
            let s = s as u32;
            let e = [
                r,
                b[1] + alphas[1] as u32 * s,
                b[2] + alphas[2] as u32 * (q - s),
            ];
            (e, &sign * c)
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct TheoremReport {
    pub max_degree: usize,
    pub dims: Vec<u64>,
    pub targets: Vec<u64>,
    pub dim_matches: Vec<bool>,
    pub relation_ok: bool,
    pub surjective_ok: Vec<bool>,
    pub kernel_ok: Vec<bool>,
    pub negative_ok: bool,
    pub letters_permuted: bool,
    /// One line per failure, naming the degree and identity.
    pub witnesses: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.relation_ok
            && self.negative_ok
            && self.dim_matches.iter().all(|&b| b)
            && self.surjective_ok.iter().all(|&b| b)
            && self.kernel_ok.iter().all(|&b| b)
    }
}

/// Degree by degree for `0 <= d <= n`: the graded piece of `R_A` at `d·ω_W` has the
/// dimension predicted by `(1 - T^h)/∏(1 - T^{a_i})`, the letter monomials of degree `d`
/// span it, and their relations are exactly the multiples of `f_W`.
pub fn verify_theorem_i(w: &WeightSystem, t: &DualTypeData, n: usize) -> Result<TheoremReport> {
    let p = omega(&t.family_weights, t)?;
    let pres = RingPresentation::new(t, &p)?;
    if *w != t.family_weights {
        return Err(Error::InvalidInput(format!("{w} does not match {}", t.family)));
    }
    let lat = &p.lattice;
    let targets = hilbert_target(w, n);
    let rel = relation_check(&pres);
    let mut report = TheoremReport {
        max_degree: n,
        targets: targets.clone(),
        relation_ok: rel.vanishes,
        letters_permuted: pres.letters_permuted,
        ..TheoremReport::default()
    };
    if !rel.vanishes {
        report.witnesses.push(String::from("f_W(x, y, z) does not vanish in R_A"));
    }

    report.negative_ok = true;
    for d in 1..=n as i64 {
        if graded_dim(lat, &lat.scale(-d, &p.omega))? != 0 {
            report.negative_ok = false;
            report.witnesses.push(format!("nonzero piece in degree {}", -d));
        }
    }

    for d in 0..=n {
        let v = lat.scale(d as i64, &p.omega);
        let basis = normal_monomials(lat, &v)?;
        let dim = basis.len();
        let column: BTreeMap<Exp3, usize> = basis.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let letters = letter_monomials(pres.letter_degrees, d as i64);
        let mut rows = Vec::with_capacity(letters.len());
        let mut misplaced = false;
        for m in &letters {
            let mut x = [0u32; 3];
            for (k, g) in pres.gens.iter().enumerate() {
                for j in 0..3 {
                    x[j] += m[k] * g[j];
                }
            }
            let mut row = vec![BigInt::zero(); dim];
            for (e, c) in monomial_normal_form(pres.alphas, x) {
                match column.get(&e) {
                    Some(&j) => row[j] += c,
                    None => misplaced = true,
                }
            }
            rows.push(row);
        }
        let rank = rank_with_bound(&rows, dim.min(rows.len()));
        let syzygies = letter_monomials(pres.letter_degrees, d as i64 - pres.h as i64).len();
        let dim_ok = dim as u64 == targets[d];
        let surj = rank == dim && !misplaced;
        let kernel = letters.len() - rank == syzygies;
        if !dim_ok {
            report.witnesses.push(format!("degree {d}: dim {dim} vs expected {}", targets[d]));
        }
        if misplaced {
            report.witnesses.push(format!("degree {d}: a generator monomial left the class d·ω_W"));
        } else if !surj {
            report.witnesses.push(format!("degree {d}: letter monomials span {rank} of {dim}"));
        }
        if !kernel {
            report.witnesses.push(format!(
                "degree {d}: kernel {} vs {syzygies} multiples of f_W",
                letters.len() - rank
            ));
        }
        report.dims.push(dim as u64);
        report.dim_matches.push(dim_ok);
        report.surjective_ok.push(surj);
        report.kernel_ok.push(kernel);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorReport {
    /// Graded dimensions of `k[x, y, z]/(∂f)` for `0 <= d <= h - 2ε + max(a)`.
    pub dims: Vec<u64>,
    pub expected: Vec<u64>,
    pub total: u64,
    pub passed: bool,
}

/// Graded Milnor algebra of `f` against the coefficients of `χ_W`, followed by a
/// vanishing window of length `max(a)`.
pub fn milnor_check(f: &MultiPolynomial, letter_degrees: [u64; 3], w: &WeightSystem) -> Result<MilnorReport> {
    let data = w.require_regular()?;
    let degs = letter_degrees.map(|a| a as i64);
    let h = w.h() as i64;
    if f.homogeneous_degree(&degs) != Some(h) {
        return Err(Error::InvalidInput(format!("{f} is not homogeneous of degree {h}")));
    }
    let mut sorted = letter_degrees;
    sorted.sort_unstable();
    if sorted != w.sorted_weights() {
        return Err(Error::InvalidInput(format!(
            "letter degrees {letter_degrees:?} are not the weights of {w}"
        )));
    }
    let top = h - 2 * data.epsilon;
    let window = *letter_degrees.iter().max().unwrap() as i64;
    let partials: Vec<MultiPolynomial> = (0..3).map(|i| f.partial(i)).collect();
    let mut dims = Vec::new();
    let mut expected = Vec::new();
    for d in 0..=top + window {
        let monos = letter_monomials(letter_degrees, d);
        let column: BTreeMap<Exp3, usize> = monos.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, df) in partials.iter().enumerate() {
            for m in letter_monomials(letter_degrees, d - (h - degs[i])) {
                let prod = &mono(m) * df;
                let mut row = vec![BigInt::zero(); monos.len()];
                for (e, c) in prod.terms() {
                    let j = column[&[e[0], e[1], e[2]]];
                    row[j] += c.to_integer();
                }
                rows.push(row);
            }
        }
        let rank = rank_with_bound(&rows, monos.len().min(rows.len()));
        dims.push((monos.len() - rank) as u64);
        expected.push(if d <= top {
            data.chi.coeff(d as usize).to_u64().unwrap_or(0)
        } else {
            0
        });
    }
    let total = dims.iter().sum();
    let passed = dims == expected && total == data.mu;
    Ok(MilnorReport {
        dims,
        expected,
        total,
        passed,
    })
}

pub fn milnor_check_presentation(p: &RingPresentation, w: &WeightSystem) -> Result<MilnorReport> {
    milnor_check(&p.fw, p.letter_degrees, w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub length: u64,
    pub mu_dual: u64,
    pub matches: bool,
}

/// Length of the full exceptional collection: `-ε + 2 + Σ(α_i - 1)` when `ε < 0`,
/// `μ_{W*}` when `ε > 0`; compared with `μ_{W*}`.
pub fn exceptional_length(w: &WeightSystem) -> Result<ExceptionalReport> {
    let t = dual_type(w)?;
    let mu_dual = t.dual_weights.require_regular()?.mu;
    let eps = w.epsilon();
    let length = match eps {
        e if e < 0 => {
            let sig = signature(w)?;
            (-e) as u64 + 2 + sig.alphas.iter().map(|a| a - 1).sum::<u64>()
        }
        e if e > 0 => mu_dual,
        _ => {
            return Err(Error::Unsupported(format!("ε = 0 for {w}")));
        }
    };
    Ok(ExceptionalReport {
        length,
        mu_dual,
        matches: length == mu_dual,
    })
}
