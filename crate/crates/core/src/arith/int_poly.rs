//! Dense univariate polynomials over the integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::numtheory::divisors;

/// Dense integer polynomial, coefficient `i` belongs to `T^i`.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::from(coeff);
        Self::new(coeffs)
    }

    /// `1 - T^k`.
    pub fn one_minus_power(k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::one();
        coeffs[k] = -BigInt::one();
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Exact division over the integers. Returns `Some(r)` with `r * divisor == self`,
    /// or `None` when `divisor` does not divide `self` in `Z[T]`.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        if n < m {
            return None;
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let top = &rem[i + m - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// First `len` coefficients of the power series `self / denom`; `denom(0)` must be a unit.
    pub fn series_div(&self, denom: &IntPolynomial, len: usize) -> Vec<BigInt> {
        let c0 = denom.coeff(0);
        assert!(c0.abs().is_one(), "series division needs a unit constant term");
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = self.coeff(n);
            for (k, d) in denom.coeffs.iter().enumerate().skip(1) {
                if k > n {
                    break;
                }
                acc -= d * &out[n - k];
            }
            out.push(acc * &c0);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{a}*T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{a}*T^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// The `n`-th cyclotomic polynomial, by exact division of `T^n - 1` by `Φ_d` for the
/// proper divisors `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let divs = divisors(n);
    let mut table: Vec<IntPolynomial> = Vec::with_capacity(divs.len());
    for (idx, &d) in divs.iter().enumerate() {
        let mut p = -&IntPolynomial::one_minus_power(d as usize);
        for (jdx, &e) in divs[..idx].iter().enumerate() {
            if d % e == 0 {
                p = p
                    .exact_div(&table[jdx])
                    .expect("Φ_e divides T^d - 1 for e | d");
            }
        }
        table.push(p);
    }
    table.pop().unwrap()
}
