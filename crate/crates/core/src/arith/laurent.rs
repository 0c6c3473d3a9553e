//! Laurent polynomials and rational functions in `y`, `ȳ` with fractional exponents.
//!
//! A term with exponent pair `(u, v)` stands for `y^{u/D} ȳ^{v/D}`, where the denominator
//! unit `D` is shared by every value taking part in one computation.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::cyclo::{CycloField, CycloNumber};
use super::Rational;
use crate::error::ArithError;

pub type Exponent = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiLaurent {
    unit: u64,
    field: CycloField,
    terms: BTreeMap<Exponent, CycloNumber>,
}

impl BiLaurent {
    pub fn zero(unit: u64, field: &CycloField) -> Self {
        assert!(unit > 0, "exponent unit must be positive");
        Self {
            unit,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(unit: u64, c: CycloNumber) -> Self {
        let field = c.field().clone();
        Self::monomial(unit, &field, (0, 0), c)
    }

    pub fn one(unit: u64, field: &CycloField) -> Self {
        Self::constant(unit, field.one())
    }

    pub fn monomial(unit: u64, field: &CycloField, exp: Exponent, c: CycloNumber) -> Self {
        let mut out = Self::zero(unit, field);
        out.add_term(exp, c);
        out
    }

    /// `(y ȳ)^{k/D}` as a monomial with coefficient 1.
    pub fn diagonal(unit: u64, field: &CycloField, k: i64) -> Self {
        Self::monomial(unit, field, (k, k), field.one())
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &CycloNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: Exponent) -> Option<&CycloNumber> {
        self.terms.get(&exp)
    }

    pub fn add_term(&mut self, exp: Exponent, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn shift(&self, by: Exponent) -> BiLaurent {
        BiLaurent {
            unit: self.unit,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(u, v), c)| ((u + by.0, v + by.1), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycloNumber) -> BiLaurent {
        let mut out = BiLaurent::zero(self.unit, &self.field);
        for (&e, t) in &self.terms {
            out.add_term(e, t * c);
        }
        out
    }

    /// `ȳ ↦ ȳ^{-1}`: every exponent `(u, v)` becomes `(u, -v)`.
    pub fn substitute_ybar_inverse(&self) -> BiLaurent {
        BiLaurent {
            unit: self.unit,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(u, v), c)| ((u, -v), c.clone()))
                .collect(),
        }
    }

    /// Swaps the roles of `y` and `ȳ`.
    pub fn swap_variables(&self) -> BiLaurent {
        BiLaurent {
            unit: self.unit,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(u, v), c)| ((v, u), c.clone()))
                .collect(),
        }
    }

    /// Numerical value at `y = r1·e^{iθ1}`, `ȳ = r2·e^{iθ2}` with the principal branch
    /// `y^{u/D} = r1^{u/D} e^{iθ1·u/D}`. Float sanity checks only.
    pub fn eval_polar(&self, y: (f64, f64), ybar: (f64, f64)) -> (f64, f64) {
        let d = self.unit as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (&(u, v), c) in &self.terms {
            let (cr, ci) = c.to_complex();
            let modulus = libm::pow(y.0, u as f64 / d) * libm::pow(ybar.0, v as f64 / d);
            let angle = y.1 * u as f64 / d + ybar.1 * v as f64 / d;
            let (mr, mi) = (modulus * libm::cos(angle), modulus * libm::sin(angle));
            re += cr * mr - ci * mi;
            im += cr * mi + ci * mr;
        }
        (re, im)
    }

    /// Rational coefficients, when every coefficient lies in `Q`.
    pub fn rational_terms(&self) -> Option<BTreeMap<Exponent, Rational>> {
        self.terms
            .iter()
            .map(|(&e, c)| c.as_rational().map(|q| (e, q.clone())))
            .collect()
    }

    fn check(&self, other: &BiLaurent) {
        assert_eq!(self.unit, other.unit, "exponent unit mismatch");
        assert_eq!(self.field, other.field, "coefficient field mismatch");
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        self.check(rhs);
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            unit: self.unit,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        self.check(rhs);
        let mut out = BiLaurent::zero(self.unit, &self.field);
        for (&(u1, v1), a) in &self.terms {
            for (&(u2, v2), b) in &rhs.terms {
                out.add_term((u1 + u2, v1 + v2), a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(u, v), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*y^({u}/{d})*yb^({v}/{d})", d = self.unit)?;
        }
        Ok(())
    }
}

/// A quotient `num / den` of two [`BiLaurent`] values. No normal form is kept;
/// equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct BiRational {
    num: BiLaurent,
    den: BiLaurent,
}

impl BiRational {
    pub fn new(num: BiLaurent, den: BiLaurent) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if num.unit != den.unit {
            return Err(ArithError::UnitMismatch(num.unit, den.unit));
        }
        Ok(Self { num, den })
    }

    pub fn from_laurent(num: BiLaurent) -> Self {
        let den = BiLaurent::one(num.unit, &num.field);
        Self { num, den }
    }

    pub fn zero(unit: u64, field: &CycloField) -> Self {
        Self::from_laurent(BiLaurent::zero(unit, field))
    }

    pub fn one(unit: u64, field: &CycloField) -> Self {
        Self::from_laurent(BiLaurent::one(unit, field))
    }

    pub fn num(&self) -> &BiLaurent {
        &self.num
    }

    pub fn den(&self) -> &BiLaurent {
        &self.den
    }

    pub fn unit(&self) -> u64 {
        self.num.unit
    }

    pub fn substitute_ybar_inverse(&self) -> BiRational {
        BiRational {
            num: self.num.substitute_ybar_inverse(),
            den: self.den.substitute_ybar_inverse(),
        }
    }

    pub fn shift(&self, by: Exponent) -> BiRational {
        BiRational {
            num: self.num.shift(by),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &CycloNumber) -> BiRational {
        BiRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact equality `a.num·b.den == b.num·a.den`.
    pub fn try_eq(&self, other: &BiRational) -> Result<bool, ArithError> {
        if self.unit() != other.unit() {
            return Err(ArithError::UnitMismatch(self.unit(), other.unit()));
        }
        if self.num.field != other.num.field {
            return Err(ArithError::FieldMismatch(
                self.num.field.order(),
                other.num.field.order(),
            ));
        }
        if self.den == other.den {
            return Ok(self.num == other.num);
        }
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    pub fn eval_polar(&self, y: (f64, f64), ybar: (f64, f64)) -> (f64, f64) {
        let (a, b) = self.num.eval_polar(y, ybar);
        let (c, d) = self.den.eval_polar(y, ybar);
        let n = c * c + d * d;
        ((a * c + b * d) / n, (b * c - a * d) / n)
    }

    pub fn approx_eq(&self, other: &BiRational, at: ((f64, f64), (f64, f64)), tol: f64) -> bool {
        let (a, b) = self.eval_polar(at.0, at.1);
        let (c, d) = other.eval_polar(at.0, at.1);
        let scale = 1.0f64.max(libm::sqrt(a * a + b * b));
        libm::sqrt((a - c) * (a - c) + (b - d) * (b - d)) <= tol * scale
    }

    /// Evaluates rational-coefficient data; `None` when a coefficient is irrational.
    pub fn rational_parts(
        &self,
    ) -> Option<(BTreeMap<Exponent, Rational>, BTreeMap<Exponent, Rational>)> {
        Some((self.num.rational_terms()?, self.den.rational_terms()?))
    }
}

/// Exact equality of two quotients; a unit mismatch is an error.
pub fn birational_eq(a: &BiRational, b: &BiRational) -> Result<bool, ArithError> {
    a.try_eq(b)
}

impl Add for &BiRational {
    type Output = BiRational;
    fn add(self, rhs: &BiRational) -> BiRational {
        if self.den == rhs.den {
            return BiRational {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        BiRational {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul for &BiRational {
    type Output = BiRational;
    fn mul(self, rhs: &BiRational) -> BiRational {
        BiRational {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &BiRational {
    type Output = BiRational;
    fn neg(self) -> BiRational {
        BiRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for BiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
