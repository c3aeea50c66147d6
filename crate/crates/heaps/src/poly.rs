//! Exact integer-coefficient univariate polynomials.
//!
//! Coefficients are arbitrary-precision integers, so evaluation is exact at
//! any integer argument and no overflow can occur anywhere in the crate's
//! counting pipelines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A polynomial with exact integer coefficients; `coeffs[i]` is the
/// coefficient of `x^i` and trailing zeros are trimmed, so two equal
/// polynomials always have equal representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::from_coeffs(vec![c.into()])
    }

    /// The monomial `x^degree`.
    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^r` (zero beyond the degree).
    pub fn coeff(&self, r: usize) -> BigInt {
        self.coeffs.get(r).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `d`, panicking if any division is inexact.
    /// Used where divisibility is a structural invariant of the caller.
    pub fn div_exact(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero(), "division by zero");
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let (q, r) = a.div_rem(d);
                assert!(r.is_zero(), "inexact division of coefficient {a} by {d}");
                q
            })
            .collect();
        IntPolynomial { coeffs }
    }

    /// The falling factorial `x (x-1) … (x-k+1)` as a polynomial (`1` for k = 0).
    pub fn falling_factorial(k: usize) -> Self {
        let mut p = IntPolynomial::one();
        for i in 0..k {
            let factor = IntPolynomial::from_coeffs(vec![BigInt::from(-(i as i64)), BigInt::one()]);
            p = &p * &factor;
        }
        p
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolynomialJson {
            coeffs: self.coeffs.clone(),
        })
        .expect("polynomial serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: PolynomialJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidPolynomial(e.to_string()))?;
        Ok(IntPolynomial::from_coeffs(parsed.coeffs))
    }
}

/// Wire form of a polynomial: `{"coeffs": [a0, a1, ..., an]}`.
#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    #[serde(with = "bigint_vec")]
    coeffs: Vec<BigInt>,
}

/// Serialize BigInt coefficients as plain JSON integers (i128 range).
mod bigint_vec {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let ints: Result<Vec<i128>, _> = v
            .iter()
            .map(|c| {
                i128::try_from(c).map_err(|_| S::Error::custom("coefficient exceeds i128 range"))
            })
            .collect();
        s.collect_seq(ints?)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let ints: Vec<serde_json::Number> = Vec::deserialize(d)?;
        ints.iter()
            .map(|n| {
                n.as_i128()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom(format!("non-integer coefficient {n}")))
            })
            .collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if deg == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(coeffs)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[0]).is_zero());
    }

    #[test]
    fn arithmetic_matches_hand_expansion() {
        // (x - 1)(x - 2) = x^2 - 3x + 2
        let a = p(&[-1, 1]);
        let b = p(&[-2, 1]);
        assert_eq!(&a * &b, p(&[2, -3, 1]));
        assert_eq!(&(&a * &b) - &a, p(&[3, -4, 1]));
        assert_eq!(&a + &b, p(&[-3, 2]));
    }

    #[test]
    fn falling_factorial_small_cases() {
        assert_eq!(IntPolynomial::falling_factorial(0), p(&[1]));
        assert_eq!(IntPolynomial::falling_factorial(1), p(&[0, 1]));
        // x(x-1) = x^2 - x
        assert_eq!(IntPolynomial::falling_factorial(2), p(&[0, -1, 1]));
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x
        assert_eq!(IntPolynomial::falling_factorial(3), p(&[0, 2, -3, 1]));
    }

    #[test]
    fn evaluation_is_exact() {
        let chi = p(&[0, -1, 3, -3, 1]); // x^4 - 3x^3 + 3x^2 - x
        assert_eq!(chi.eval_i64(2), BigInt::from(2));
        assert_eq!(chi.eval_i64(-1), BigInt::from(8));
        assert_eq!(chi.eval_i64(0), BigInt::zero());
    }

    #[test]
    fn json_round_trip() {
        let chi = p(&[0, 2, -3, 1]);
        let text = chi.to_json();
        assert_eq!(text, r#"{"coeffs":[0,2,-3,1]}"#);
        assert_eq!(IntPolynomial::from_json(&text).unwrap(), chi);
        assert!(IntPolynomial::from_json("{\"coeffs\":[1.5]}").is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[0, 2, -3, 1]).to_string(), "x^3 - 3*x^2 + 2*x");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[-5]).to_string(), "-5");
        assert_eq!(p(&[0, 1]).to_string(), "x");
    }

    #[test]
    fn exact_division_by_scalar() {
        let q = p(&[2, -6, 4]).div_exact(&BigInt::from(2));
        assert_eq!(q, p(&[1, -3, 2]));
    }

    #[test]
    #[should_panic(expected = "inexact division")]
    fn inexact_division_panics() {
        let _ = p(&[1, 2]).div_exact(&BigInt::from(2));
    }
}
