//! Dense univariate polynomials with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Coefficients indexed by power of `x`, with trailing zeros stripped.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> IntPolynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<T: Scalar> Add for &IntPolynomial<T> {
    type Output = IntPolynomial<T>;

    fn add(self, rhs: Self) -> IntPolynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &IntPolynomial<T> {
    type Output = IntPolynomial<T>;

    fn sub(self, rhs: Self) -> IntPolynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &IntPolynomial<T> {
    type Output = IntPolynomial<T>;

    fn mul(self, rhs: Self) -> IntPolynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        IntPolynomial::new(out)
    }
}

impl<T: Scalar> Neg for &IntPolynomial<T> {
    type Output = IntPolynomial<T>;

    fn neg(self) -> IntPolynomial<T> {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Display for IntPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}
