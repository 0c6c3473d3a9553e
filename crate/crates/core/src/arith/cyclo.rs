//! Elements of the cyclotomic field `Q(ζ_n)`, stored in the power basis
//! `1, ζ, …, ζ^{φ(n)-1}` modulo `Φ_n`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::int_poly::cyclotomic_polynomial;
use super::Rational;

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    order: u64,
    /// Φ_n coefficients, ascending; monic.
    modulus: Vec<BigInt>,
}

/// Handle on `Q(ζ_n)`. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct CycloField {
    inner: Arc<FieldInner>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.order == other.inner.order
    }
}

impl Eq for CycloField {}

impl CycloField {
    pub fn new(order: u64) -> Self {
        let modulus = cyclotomic_polynomial(order).coeffs().to_vec();
        Self {
            inner: Arc::new(FieldInner { order, modulus }),
        }
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// `φ(n)`, the number of coordinates.
    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn zero(&self) -> CycloNumber {
        CycloNumber {
            field: self.clone(),
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CycloNumber {
        self.rational(Rational::one())
    }

    pub fn rational(&self, q: Rational) -> CycloNumber {
        let mut x = self.zero();
        x.coords[0] = q;
        x
    }

    pub fn integer(&self, k: i64) -> CycloNumber {
        self.rational(Rational::from_integer(BigInt::from(k)))
    }

    /// `ζ_n^j` for any integer `j`.
    pub fn root_power(&self, j: i64) -> CycloNumber {
        let n = self.inner.order as i64;
        let e = j.rem_euclid(n) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        self.from_raw(raw)
    }

    /// Reduces an arbitrary coefficient vector modulo `Φ_n`.
    pub fn from_raw(&self, mut raw: Vec<Rational>) -> CycloNumber {
        let m = &self.inner.modulus;
        let d = self.degree();
        while raw.len() > d {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = raw.len() - d;
            for (k, c) in m[..d].iter().enumerate() {
                raw[shift + k] -= &top * Rational::from_integer(c.clone());
            }
        }
        raw.resize(d, Rational::zero());
        CycloNumber {
            field: self.clone(),
            coords: raw,
        }
    }
}

/// An element of `Q(ζ_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloNumber {
    field: CycloField,
    coords: Vec<Rational>,
}

impl CycloNumber {
    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The value as a rational number when it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[T]`.
    pub fn inverse(&self) -> Option<CycloNumber> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<Rational> = self
            .field
            .inner
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (g, s) = qpoly::ext_gcd_left(trim(self.coords.clone()), modulus);
        // g is a nonzero constant since Φ_n is irreducible.
        debug_assert_eq!(g.len(), 1);
        let inv = &g[0];
        Some(self.field.from_raw(s.iter().map(|c| c / inv).collect()))
    }

    /// Complex value under the embedding `ζ_n ↦ e^{2πi/n}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coords.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * PI * k as f64 / n;
            re += v * libm::cos(t);
            im += v * libm::sin(t);
        }
        (re, im)
    }

    fn check_field(&self, other: &CycloNumber) {
        assert_eq!(
            self.order(),
            other.order(),
            "cyclotomic elements from different fields"
        );
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

mod qpoly {
    //! Just enough of `Q[T]` for inverses.
    use super::{trim, Rational};
    use alloc::vec;
    use alloc::vec::Vec;
    use num_traits::Zero;

    fn sub_scaled(a: &[Rational], b: &[Rational], q: &[Rational]) -> Vec<Rational> {
        // a - q*b
        let mut out: Vec<Rational> = a.to_vec();
        let len = (q.len() + b.len()).saturating_sub(1).max(out.len());
        out.resize(len, Rational::zero());
        for (i, qi) in q.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                out[i + j] -= qi * bj;
            }
        }
        trim(out)
    }

    fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = b.last().unwrap();
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + b.len() - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        (trim(q), trim(r))
    }

    /// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g = gcd(a, b)` up to a unit.
    pub fn ext_gcd_left(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (a, b);
        let (mut s0, mut s1) = (vec![Rational::from_integer(1.into())], Vec::new());
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub_scaled(&s0, &s1, &q);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}*z{}^{k}", self.order())?,
            }
        }
        write!(f, ")")
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        CycloNumber {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        CycloNumber {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_field(rhs);
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        let d = self.coords.len();
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        self.field.from_raw(raw)
    }
}
