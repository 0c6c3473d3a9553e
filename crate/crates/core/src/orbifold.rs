//! The orbifoldized Poincaré series `χ(W, G)(y, ȳ)` for finite diagonal groups, and the
//! mirror-duality identities built on it.
//!
//! All series use the exponent unit `D = 2h` and coefficients in `Q(ζ_h)`. A group
//! element `diag(e[ω_1 α_1], e[ω_2 α_2], e[ω_3 α_3])` is stored by its numerators
//! `t_i = a_i α_i mod h`, so that the i-th entry is `ζ_h^{t_i}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::numtheory::gcd;
use crate::arith::{BiLaurent, BiRational, CycloField, Exponent, IntPolynomial, Rational};
use crate::error::{Error, Result};
use crate::weights::WeightSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalGroup {
    h: u64,
    generators: Vec<[u64; 3]>,
    /// Sorted, closed under addition mod `h`.
    elements: Vec<[u64; 3]>,
}

impl DiagonalGroup {
    pub fn trivial(h: u64) -> Self {
        Self {
            h,
            generators: Vec::new(),
            elements: vec![[0, 0, 0]],
        }
    }

    /// `G⁰_W`, generated by `(a1, a2, a3) mod h`.
    pub fn principal(w: &WeightSystem) -> Self {
        Self::closure(w.h(), vec![w.weights().map(|a| a % w.h())])
    }

    /// The subgroup generated by `generators`. Each numerator `t_i` must be a multiple of
    /// `gcd(a_i, h)`, i.e. of the form `a_i α_i mod h`.
    pub fn generated(w: &WeightSystem, generators: &[[u64; 3]]) -> Result<Self> {
        let h = w.h();
        for g in generators {
            for i in 0..3 {
                let d = gcd(w.weights()[i] as i64, h as i64) as u64;
                if !(g[i] % h).is_multiple_of(d) {
                    return Err(Error::InvalidGroup(format!(
                        "numerator {} in slot {} is not a multiple of gcd(a_{}, h) = {d}",
                        g[i],
                        i + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Self::closure(h, generators.iter().map(|g| g.map(|t| t % h)).collect()))
    }

    fn closure(h: u64, generators: Vec<[u64; 3]>) -> Self {
        let mut seen = BTreeSet::new();
        seen.insert([0u64, 0, 0]);
        let mut frontier = vec![[0u64, 0, 0]];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = [(x[0] + g[0]) % h, (x[1] + g[1]) % h, (x[2] + g[2]) % h];
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Self {
            h,
            generators,
            elements: seen.into_iter().collect(),
        }
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[[u64; 3]] {
        &self.elements
    }

    pub fn generators(&self) -> &[[u64; 3]] {
        &self.generators
    }

    pub fn contains(&self, t: [u64; 3]) -> bool {
        self.elements.binary_search(&t.map(|x| x % self.h)).is_ok()
    }

    /// Whether `β ↦ ζ^{Σ c_i t_i(β)}` is the trivial character of the group.
    pub fn kills_character(&self, c: [u64; 3]) -> bool {
        self.generators
            .iter()
            .all(|g| (0..3).map(|i| g[i] * c[i]).sum::<u64>() % self.h == 0)
    }

    fn validate_for(&self, w: &WeightSystem) -> Result<()> {
        if self.h != w.h() {
            return Err(Error::CoxeterMismatch(self.h, w.h()));
        }
        for g in &self.generators {
            for i in 0..3 {
                let d = gcd(w.weights()[i] as i64, self.h as i64) as u64;
                if g[i] % d != 0 {
                    return Err(Error::InvalidGroup(format!(
                        "group element {g:?} is not of the form a_i·α_i mod h for {w}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `χ(W, G)` as a quotient of Laurent polynomials in `y^{1/2h}`, `ȳ^{1/2h}`.
#[derive(Clone, Debug)]
pub struct OrbifoldSeries {
    pub h: u64,
    pub value: BiRational,
}

impl OrbifoldSeries {
    pub fn unit(&self) -> u64 {
        2 * self.h
    }

    /// Rational coefficients of the numerator when the denominator is 1.
    pub fn laurent_terms(&self) -> Option<BTreeMap<Exponent, Rational>> {
        let den = self.value.den();
        if *den != BiLaurent::one(den.unit(), den.field()) {
            return None;
        }
        self.value.num().rational_terms()
    }
}

/// Monomial exponent contributed by the slots with `ω_i α_i ∉ Z`:
/// `(yȳ)^{1/2-ω_i} (y/ȳ)^{1/2-{ω_i α_i}}`.
fn twisted_monomial(w: &WeightSystem, alpha: [u64; 3]) -> Exponent {
    let h = w.h() as i64;
    let mut e = (0i64, 0i64);
    for i in 0..3 {
        let n = alpha[i] as i64;
        if n != 0 {
            let a = w.weights()[i] as i64;
            e.0 += 2 * h - 2 * a - 2 * n;
            e.1 += 2 * n - 2 * a;
        }
    }
    e
}

/// The defining double sum evaluated term by term in `Q(ζ_h)`. Intended for small `h`;
/// see [`orbifold_poincare`] for the fast evaluation.
pub fn orbifold_poincare_verbatim(w: &WeightSystem, g: &DiagonalGroup) -> Result<OrbifoldSeries> {
    g.validate_for(w)?;
    let h = w.h();
    let unit = 2 * h;
    let field = CycloField::new(h);
    let weights = w.weights();
    let mut total = BiRational::zero(unit, &field);
    for &alpha in g.elements() {
        let fixed: Vec<usize> = (0..3).filter(|&i| alpha[i] == 0).collect();
        let mut inner = BiRational::zero(unit, &field);
        for &beta in g.elements() {
            let mut term = BiRational::one(unit, &field);
            for &i in &fixed {
                let a = weights[i] as i64;
                let b = beta[i] as i64;
                let hh = h as i64;
                // e[ω β + 1/2] = -ζ^b,  e[1 - ω β] = ζ^{-b}.
                let lead = -&field.root_power(b);
                let mut num = BiLaurent::one(unit, &field);
                num.add_term((2 * (hh - a), 2 * (hh - a)), -&field.root_power(-b));
                let mut den = BiLaurent::one(unit, &field);
                den.add_term((2 * a, 2 * a), -&field.root_power(b));
                let factor = BiRational::new(num, den)?.scale(&lead);
                term = &term * &factor;
            }
            inner = &inner + &term;
        }
        let chi_alpha = inner.shift(twisted_monomial(w, alpha));
        total = &total + &chi_alpha;
    }
    let scale = field.rational(Rational::new(BigInt::from(-1), BigInt::from(g.order())));
    Ok(OrbifoldSeries {
        h,
        value: total.scale(&scale),
    })
}

/// Terms `(character, Q-exponent, coefficient)` of the numerator of
/// `-ζ^b (1 - ζ^{-b} Q^{h-a}) / (1 - ζ^b Q^a)` over the denominator `1 - Q^{ah}`,
/// where `Q = (yȳ)^{1/h}` and the character `c` stands for `ζ^{bc}`.
fn slot_terms(a: u64, h: u64) -> Vec<(u64, u64, i64)> {
    let mut out = Vec::with_capacity(2 * h as usize);
    for k in 0..h {
        out.push(((k + 1) % h, a * k, -1));
        out.push((k % h, a * k + h - a, 1));
    }
    out
}

/// `χ(W, G)` by character orthogonality: expanding each slot factor over
/// `1 - (yȳ)^{a_i}`, the sum over `β` keeps exactly the terms whose character is
/// trivial on `G`. Numerators are integral; when every `y/ȳ`-charge class divides the
/// common denominator the result is returned as a Laurent polynomial.
pub fn orbifold_poincare(w: &WeightSystem, g: &DiagonalGroup) -> Result<OrbifoldSeries> {
    g.validate_for(w)?;
    let h = w.h();
    let weights = w.weights();
    // Numerator over ∏_i (1 - Q^{a_i h}), keyed by exponent in units of 1/2h.
    let mut numerator: BTreeMap<Exponent, i128> = BTreeMap::new();
    let slots: Vec<Vec<(u64, u64, i64)>> = weights.iter().map(|&a| slot_terms(a, h)).collect();

    // Group α by the set of fixed slots; P depends only on that set.
    let mut by_fixed: BTreeMap<[bool; 3], Vec<[u64; 3]>> = BTreeMap::new();
    for &alpha in g.elements() {
        by_fixed.entry(alpha.map(|t| t == 0)).or_default().push(alpha);
    }
    for (fixed, alphas) in by_fixed {
        // P(Q): Σ over trivial characters, times |G| (which cancels the 1/|G|).
        let mut p: BTreeMap<u64, i128> = BTreeMap::new();
        let idx: Vec<usize> = (0..3).filter(|&i| fixed[i]).collect();
        let mut stack: Vec<([u64; 3], u64, i128, usize)> = vec![([0; 3], 0, 1, 0)];
        while let Some((c, e, coef, depth)) = stack.pop() {
            if depth == idx.len() {
                if g.kills_character(c) {
                    *p.entry(e).or_insert(0) += coef;
                }
                continue;
            }
            let i = idx[depth];
            for &(ci, ei, ki) in &slots[i] {
                let mut c2 = c;
                c2[i] = ci;
                stack.push((c2, e + ei, coef * ki as i128, depth + 1));
            }
        }
        // Complete the denominator with the slots that are not fixed.
        let mut poly: BTreeMap<u64, i128> = p;
        for i in (0..3).filter(|&i| !fixed[i]) {
            let shift = weights[i] * h;
            let mut next = poly.clone();
            for (&e, &c) in &poly {
                *next.entry(e + shift).or_insert(0) -= c;
            }
            poly = next;
        }
        for alpha in alphas {
            let m = twisted_monomial(w, alpha);
            for (&e, &c) in &poly {
                if c != 0 {
                    let key = (m.0 + 2 * e as i64, m.1 + 2 * e as i64);
                    *numerator.entry(key).or_insert(0) -= c;
                }
            }
        }
    }
    numerator.retain(|_, c| *c != 0);

    let mut den_poly = IntPolynomial::one();
    for &a in &weights {
        den_poly = &den_poly * &IntPolynomial::one_minus_power((2 * a * h) as usize);
    }
    let field = CycloField::new(h);
    let unit = 2 * h;
    let as_laurent = |terms: &BTreeMap<Exponent, BigInt>| {
        let mut out = BiLaurent::zero(unit, &field);
        for (&e, c) in terms {
            out.add_term(e, field.rational(Rational::from_integer(c.clone())));
        }
        out
    };

    // Divide each charge class u - v by the denominator in the variable (yȳ)^{1/2h}.
    let mut classes: BTreeMap<i64, BTreeMap<i64, i128>> = BTreeMap::new();
    for (&(u, v), &c) in &numerator {
        classes.entry(u - v).or_default().insert(v, c);
    }
    let mut quotient: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    let mut divisible = true;
    for (charge, terms) in &classes {
        let base = *terms.keys().next().expect("classes are nonempty");
        let top = *terms.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (top - base + 1) as usize];
        for (&v, &c) in terms {
            coeffs[(v - base) as usize] = BigInt::from(c);
        }
        match IntPolynomial::new(coeffs).exact_div(&den_poly) {
            Some(q) => {
                for (j, c) in q.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        let v = base + j as i64;
                        quotient.insert((v + charge, v), c.clone());
                    }
                }
            }
            None => {
                divisible = false;
                break;
            }
        }
    }
    let value = if divisible {
        BiRational::from_laurent(as_laurent(&quotient))
    } else {
        let num: BTreeMap<Exponent, BigInt> =
            numerator.iter().map(|(&e, &c)| (e, BigInt::from(c))).collect();
        let den: BTreeMap<Exponent, BigInt> = den_poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| ((j as i64, j as i64), c.clone()))
            .collect();
        BiRational::new(as_laurent(&num), as_laurent(&den))?
    };
    Ok(OrbifoldSeries { h, value })
}

/// `χ_W(T)` with `T = (yȳ)^{1/h}`, in the unit `1/2h`.
pub fn chi_as_series(w: &WeightSystem) -> Result<BiRational> {
    let data = w.require_regular()?;
    let field = CycloField::new(w.h());
    let unit = 2 * w.h();
    let mut out = BiLaurent::zero(unit, &field);
    for (k, c) in data.chi.coeffs().iter().enumerate() {
        out.add_term((2 * k as i64, 2 * k as i64), field.rational(Rational::from_integer(c.clone())));
    }
    Ok(BiRational::from_laurent(out))
}

/// `χ(W, {1}) = χ_W(T)` under `T^h = yȳ`, with the left side evaluated verbatim.
pub fn restriction_identity(w: &WeightSystem) -> Result<bool> {
    let chi = chi_as_series(w)?;
    let orb = orbifold_poincare_verbatim(w, &DiagonalGroup::trivial(w.h()))?;
    Ok(orb.value.try_eq(&chi)?)
}

/// `ĉ_W = 1 - 2ε/h` as an exponent of `ȳ` in the unit `1/2h`.
pub fn c_hat_exponent(w: &WeightSystem) -> i64 {
    2 * w.h() as i64 - 4 * w.epsilon()
}

/// The right side `(-1)^3 ȳ^{ĉ_W} χ(W, G)(y, ȳ^{-1})` of the mirror identity.
pub fn mirror_transform(w: &WeightSystem, chi: &OrbifoldSeries) -> BiRational {
    let field = CycloField::new(w.h());
    chi.value
        .substitute_ybar_inverse()
        .shift((0, c_hat_exponent(w)))
        .scale(&field.integer(-1))
}

/// Whether `(W', G')` is topological mirror dual to `(W, G)`.
pub fn is_tms_dual(
    w: &WeightSystem,
    g: &DiagonalGroup,
    w2: &WeightSystem,
    g2: &DiagonalGroup,
) -> Result<bool> {
    if w.h() != w2.h() {
        return Err(Error::CoxeterMismatch(w.h(), w2.h()));
    }
    let lhs = orbifold_poincare(w2, g2)?;
    let rhs = mirror_transform(w, &orbifold_poincare(w, g)?);
    Ok(lhs.value.try_eq(&rhs)?)
}

/// `χ(W', {1}) = (-1)^3 ȳ^{ĉ_W} χ(W, G⁰_W)(y, ȳ^{-1})`.
pub fn is_dual_pair(w: &WeightSystem, w2: &WeightSystem) -> Result<bool> {
    w.require_regular()?;
    w2.require_regular()?;
    is_tms_dual(w, &DiagonalGroup::principal(w), w2, &DiagonalGroup::trivial(w2.h()))
}

/// Numerical conjugation check: with rational coefficients,
/// `χ(conj y, conj ȳ) = conj χ(y, ȳ)` at the given polar points.
pub fn conjugation_symmetric(s: &OrbifoldSeries, y: (f64, f64), ybar: (f64, f64), tol: f64) -> bool {
    let (a, b) = s.value.eval_polar(y, ybar);
    let (c, d) = s.value.eval_polar((y.0, -y.1), (ybar.0, -ybar.1));
    let scale = 1.0f64.max(libm::sqrt(a * a + b * b));
    libm::fabs(a - c) <= tol * scale && libm::fabs(b + d) <= tol * scale
}

/// Constant value of a series, when it is a rational constant.
pub fn constant_value(s: &OrbifoldSeries) -> Option<Rational> {
    let terms = s.laurent_terms()?;
    match terms.len() {
        0 => Some(Rational::zero()),
        1 => terms.get(&(0, 0)).cloned(),
        _ => None,
    }
}

/// Integer value of a constant series, for display.
pub fn constant_integer(s: &OrbifoldSeries) -> Option<i64> {
    let q = constant_value(s)?;
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}
