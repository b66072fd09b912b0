//! One-variable Laurent polynomials with sparse coefficient storage.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

/// `Σ c_k q^k` over a finite set of integer exponents. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Scalar> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(coeff: C, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Dense coefficients `c_0 + c_1 q + ...`.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                let sum = c.clone() + coeff;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c.clone() * s.clone())))
    }

    /// Drop every term with exponent above `max_exp`.
    pub fn truncate(&self, max_exp: i64) -> Self {
        LaurentPoly {
            terms: self.terms.range(..=max_exp).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Multiply the power series by `1 / (1 - q^step)` and keep exponents up to `max_exp`.
    pub fn div_one_minus_power(&self, step: i64, max_exp: i64) -> Self {
        assert!(step > 0);
        let lo = self.min_exp().unwrap_or(0);
        let mut out = Self::zero();
        let mut dense: BTreeMap<i64, C> = BTreeMap::new();
        for e in lo..=max_exp {
            let mut c = self.coeff(e);
            if let Some(prev) = dense.get(&(e - step)) {
                c = c + prev.clone();
            }
            if !c.is_zero() {
                dense.insert(e, c.clone());
                out.add_term(e, c);
            }
        }
        out
    }
}

impl<C: Scalar + PartialOrd> LaurentPoly<C> {
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| *c >= C::zero())
    }
}

impl<C: Scalar> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Scalar> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(mut self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Scalar> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl<C: Scalar> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<C: Scalar> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl<C: Scalar> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for LaurentPoly<C> {
    /// Ascending exponents, e.g. `1 + 3q - q^-1` prints as `-q^-1 + 1 + 3q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mut text = c.to_string();
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = text == "1";
            match e {
                0 => write!(f, "{text}")?,
                _ => {
                    if !unit {
                        write!(f, "{text}")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Scalar + fmt::Display> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Serialized as `[[exponent, "coefficient"], ...]` in ascending exponent order.
impl<C: Scalar + fmt::Display> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<BigInt>;

    fn p(coeffs: &[i64]) -> P {
        P::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)))
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 1, 1]).to_string(), "q + q^2");
        assert_eq!(p(&[1]).to_string(), "1");
        assert_eq!(P::zero().to_string(), "0");
        let mixed = &p(&[1, 3]) - &P::monomial(BigInt::from(1), -1);
        assert_eq!(mixed.to_string(), "-q^-1 + 1 + 3q");
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = p(&[1, 2]);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d, P::zero());
    }

    #[test]
    fn geometric_division() {
        // (1 + q) / (1 - q)^2 = 1 + 3q + 5q^2 + ...
        let s = p(&[1, 1]).div_one_minus_power(1, 5).div_one_minus_power(1, 5);
        assert_eq!(s, p(&[1, 3, 5, 7, 9, 11]));
    }

    #[test]
    fn float_coefficients() {
        let a = LaurentPoly::from_coeffs([1.0f64, 0.5]);
        let sq = &a * &a;
        assert_eq!(sq.coeff(1), 1.0);
        assert_eq!(sq.eval_one(), 2.25);
    }
}
