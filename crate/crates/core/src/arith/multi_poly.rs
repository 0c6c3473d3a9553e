//! Sparse multivariate polynomials with rational coefficients.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPolynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPolynomial {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(vec![0; arity], Rational::one())
    }

    pub fn monomial(exps: Monomial, coeff: Rational) -> Self {
        let mut out = Self::zero(exps.len());
        out.add_term(exps, coeff);
        out
    }

    pub fn variable(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = Self::zero(arity);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Monomial, coeff: Rational) {
        assert_eq!(exps.len(), self.arity, "exponent vector has the wrong arity");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Weighted degree of a single exponent vector.
    pub fn weighted_degree(exps: &[u32], weights: &[i64]) -> i64 {
        exps.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    /// The common weighted degree of all terms, or `None` if the polynomial is zero
    /// or not homogeneous.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| Self::weighted_degree(e, weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c * Rational::from_integer(e[var].into()));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.arity), |acc, _| &acc * self)
    }

    /// Substitutes polynomial `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[MultiPolynomial]) -> MultiPolynomial {
        assert_eq!(images.len(), self.arity);
        let target = images.first().map_or(0, |p| p.arity);
        let mut out = MultiPolynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = MultiPolynomial::monomial(vec![0; target], c.clone());
            for (img, &k) in images.iter().zip(e) {
                term = &term * &img.pow(k);
            }
            out = &out + &term;
        }
        out
    }

    /// Division by a divisor of the form `c·X_var^e + (terms of lower degree in X_var)`.
    /// Returns `(quotient, remainder)` where no remainder term has `X_var`-degree `>= e`.
    pub fn div_rem_in(&self, var: usize, divisor: &MultiPolynomial) -> (Self, Self) {
        let (lead_exp, lead_coeff) = divisor
            .terms
            .iter()
            .max_by_key(|(e, _)| e[var])
            .expect("division by zero polynomial");
        let e = lead_exp[var];
        assert!(
            lead_exp.iter().enumerate().all(|(i, &k)| i == var || k == 0),
            "divisor must be monic in a pure power of the eliminated variable"
        );
        assert_eq!(
            divisor.terms.keys().filter(|x| x[var] == e).count(),
            1,
            "divisor leading power must be unique"
        );
        let mut rem = self.clone();
        let mut quot = MultiPolynomial::zero(self.arity);
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|(x, _)| x[var] >= e)
                .max_by_key(|(x, _)| x[var])
                .map(|(x, c)| (x.clone(), c.clone()));
            let Some((x, c)) = next else { break };
            let mut qe = x.clone();
            qe[var] -= e;
            let qc = c / lead_coeff;
            let q = MultiPolynomial::monomial(qe, qc);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        (quot, rem)
    }

    /// The single monomial with coefficient, when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

impl Add for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn neg(self) -> MultiPolynomial {
        MultiPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.arity, rhs.arity);
        let mut out = MultiPolynomial::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            if !c.is_one() || is_const {
                write!(f, "{c}")?;
            }
            let mut first = c.is_one();
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "X{}", v + 1)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn reduction_modulo_principal_relation() {
        // X1^3 * X3^3 + X3^6 + X3^3 * X2^4 = X3^3 (X1^3 + X2^4 + X3^3)
        let rel = MultiPolynomial::from_terms(
            3,
            [(vec![3, 0, 0], q(1)), (vec![0, 4, 0], q(1)), (vec![0, 0, 3], q(1))],
        );
        let f = MultiPolynomial::from_terms(
            3,
            [(vec![3, 0, 3], q(1)), (vec![0, 0, 6], q(1)), (vec![0, 4, 3], q(1))],
        );
        let (quot, rem) = f.div_rem_in(0, &rel);
        assert!(rem.is_zero());
        assert_eq!(quot, MultiPolynomial::monomial(vec![0, 0, 3], q(1)));
    }

    #[test]
    fn remainder_is_reduced() {
        let rel = MultiPolynomial::from_terms(2, [(vec![2, 0], q(1)), (vec![0, 3], q(1))]);
        let f = MultiPolynomial::monomial(vec![5, 1], q(1));
        let (quot, rem) = f.div_rem_in(0, &rel);
        assert!(rem.terms().all(|(e, _)| e[0] < 2));
        assert_eq!(&(&quot * &rel) + &rem, f);
    }

    #[test]
    fn derivative_and_homogeneity() {
        let f = MultiPolynomial::from_terms(3, [(vec![2, 0, 0], q(1)), (vec![0, 3, 0], q(1))]);
        assert_eq!(f.homogeneous_degree(&[3, 2, 1]), Some(6));
        assert_eq!(f.homogeneous_degree(&[1, 1, 1]), None);
        assert_eq!(f.partial(1), MultiPolynomial::monomial(vec![0, 2, 0], q(3)));
    }
}
